#pragma once

#include <cstddef>
#include <utility>

#include "magic_angles/angle.hpp"
#include "magic_angles/errors.hpp"

namespace magic_angles {

// k for theta = p/2^k reduced (0 for theta = 0).
inline std::size_t dyadic_complexity(const Angle& theta) {
    if (!theta.is_dyadic()) throw hypothesis_error("not dyadic");
    Integer d = theta.denominator();
    return d == 1 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(d));
}

// Open arc traversed counterclockwise from start to end; positive
// length, never the full circle.
class CircularInterval {
public:
    CircularInterval(Angle start, Angle end)
        : start_(std::move(start)), end_(std::move(end)) {
        if (start_ == end_) throw hypothesis_error("degenerate interval");
    }

    const Angle& start() const noexcept { return start_; }
    const Angle& end() const noexcept { return end_; }

    Rational length() const {
        Rational d = end_.value() - start_.value();
        return d > 0 ? d : d + 1;
    }

    // Strict interior membership, consistent with wrap-around at 0.
    bool contains(const Angle& x) const {
        if (start_ < end_) return start_ < x && x < end_;
        return x > start_ || x < end_;
    }

    // Image arc under the doubling map, endpoint to endpoint.
    CircularInterval doubled() const {
        return CircularInterval(start_.doubled(), end_.doubled());
    }

private:
    Angle start_;
    Angle end_;
};

// The unique dyadic of minimal complexity strictly inside the arc.
// Scans complexities upward; at the first level with any candidate the
// candidate is unique (two dyadics of equal complexity always have a
// lower-complexity dyadic between them), which is asserted rather
// than tie-broken.
inline Angle pseudocenter(const CircularInterval& I) {
    Rational lo = I.start().value();
    Rational len = I.length();
    Rational hi = lo + len; // unwrapped; may exceed 1

    // 2^m * len > 1 guarantees an integer in the open window, so the
    // scan below terminates at or before that level.
    std::size_t bound = 2;
    {
        Integer steps = floor_rat(Rational(1) / len);
        while (steps > 0) {
            ++bound;
            steps >>= 1;
        }
    }

    for (std::size_t m = 0; m <= bound; ++m) {
        Integer scale = pow2(m);
        Rational lo_s = lo * scale, hi_s = hi * scale;
        Integer k = floor_rat(lo_s) + 1;
        if (Rational(k) >= hi_s) continue; // no integer strictly inside
        if (Rational(k + 1) < hi_s)
            throw internal_error("pseudocenter is not unique at minimal complexity");
        if (m > 0 && (k & 1) == 0)
            throw internal_error("pseudocenter candidate reducible at minimal complexity");
        return Angle(k, scale);
    }
    throw internal_error("pseudocenter scan exceeded its termination bound");
}

} // namespace magic_angles
