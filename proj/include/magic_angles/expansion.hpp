#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "magic_angles/angle.hpp"
#include "magic_angles/errors.hpp"
#include "magic_angles/word.hpp"

namespace magic_angles {

// Smallest t >= 1 with 2^t = 1 (mod m); m must be odd and >= 3.
inline std::size_t multiplicative_order_of_two(const Integer& m) {
    if (m < 3 || (m & 1) == 0)
        throw hypothesis_error("order of 2 requires an odd modulus >= 3");
    Integer pow = 2 % m;
    std::size_t t = 1;
    while (pow != 1) {
        pow = (pow << 1) % m;
        ++t;
    }
    return t;
}

// Smallest t >= 1 with D^t(theta) = theta; requires an odd denominator.
inline std::size_t doubling_period(const Angle& theta) {
    Integer d = theta.denominator();
    if ((d & 1) == 0)
        throw hypothesis_error("angle is not periodic under doubling");
    if (d == 1) return 1; // theta = 0 is the unique fixed point
    return multiplicative_order_of_two(d);
}

// Canonical eventually periodic binary expansion of an angle.  The
// period is always stored nonempty; a period of "0" encodes the
// terminating (dyadic) expansion.  Canonical form: the period is
// primitive and the preperiod is minimal (its last digit differs from
// the period's last digit, or it is empty).
class Expansion {
public:
    Expansion() : period_(BinaryWord("0")) {} // angle 0

    static Expansion of(const Angle& theta) {
        Integer den = theta.denominator();
        std::size_t a = lsb_index(den);       // den = 2^a * m with m odd
        Integer m = den >> a;
        std::size_t L = (m == 1) ? 0 : multiplicative_order_of_two(m);

        std::string pre, per;
        Rational x = theta.value();
        for (std::size_t i = 0; i < a; ++i) digit_step(x, pre);
        if (L == 0) {
            per = "0";
        } else {
            for (std::size_t i = 0; i < L; ++i) digit_step(x, per);
        }
        Expansion e;
        e.preperiod_ = BinaryWord(std::move(pre));
        e.period_ = BinaryWord(std::move(per));
        return e;
    }

    // Canonicalizes arbitrary preperiod/period words by value.  An
    // empty period is read as terminating (trailing zeros).
    static Expansion from_words(const BinaryWord& pre, const BinaryWord& per) {
        std::size_t n = pre.size(), L = per.size();
        Rational v(pre.to_integer(), 1);
        if (L > 0) v += Rational(per.to_integer(), pow2(L) - 1);
        return of(Angle(v / Rational(pow2(n))));
    }

    const BinaryWord& preperiod() const noexcept { return preperiod_; }
    const BinaryWord& period() const noexcept { return period_; }

    bool terminating() const { return period_.bits() == "0"; }

    Angle to_angle() const {
        std::size_t n = preperiod_.size(), L = period_.size();
        Rational v(preperiod_.to_integer(), 1);
        v += Rational(period_.to_integer(), pow2(L) - 1);
        return Angle(v / Rational(pow2(n)));
    }

    // k-th binary digit (0-based) of the represented angle.
    int digit(std::size_t k) const {
        std::size_t n = preperiod_.size();
        if (k < n) return preperiod_.digit(k);
        return period_.digit((k - n) % period_.size());
    }

    // ".pre~per", or the terminating ".pre" for dyadics (".0" for zero).
    std::string str() const {
        if (terminating())
            return preperiod_.empty() ? ".0" : "." + preperiod_.bits();
        return "." + preperiod_.bits() + "~" + period_.bits();
    }

    friend bool operator==(const Expansion& a, const Expansion& b) {
        return a.preperiod_ == b.preperiod_ && a.period_ == b.period_;
    }
    friend bool operator!=(const Expansion& a, const Expansion& b) { return !(a == b); }

private:
    static std::size_t lsb_index(const Integer& v) {
        return v == 1 ? 0 : static_cast<std::size_t>(boost::multiprecision::lsb(v));
    }

    static void digit_step(Rational& x, std::string& out) {
        x *= 2;
        if (x >= 1) {
            out += '1';
            x -= 1;
        } else {
            out += '0';
        }
    }

    BinaryWord preperiod_;
    BinaryWord period_;
};

inline Expansion binary_expansion(const Angle& theta) { return Expansion::of(theta); }

// S . theta = sum s_k 2^{-k} + 2^{-|S|} theta.
inline Angle concat(const BinaryWord& s, const Angle& theta) {
    if (s.empty()) return theta;
    Rational v = (Rational(s.to_integer()) + theta.value()) / Rational(pow2(s.size()));
    return Angle(v);
}

// Substitutes |zero_word| for digit 0 and |one_word| for digit 1
// throughout preperiod and period; dyadics substitute their
// terminating form, so the trailing zeros become copies of
// |zero_word|.  The result is re-canonicalized.
inline Expansion substituted(const Expansion& e, const BinaryWord& zero_word,
                             const BinaryWord& one_word) {
    if (zero_word.empty() || one_word.empty())
        throw hypothesis_error("substitution words must be nonempty");
    auto apply = [&](const BinaryWord& w) {
        BinaryWord out;
        for (std::size_t i = 0; i < w.size(); ++i)
            out = out + (w.digit(i) == 0 ? zero_word : one_word);
        return out;
    };
    return Expansion::from_words(apply(e.preperiod()), apply(e.period()));
}

} // namespace magic_angles
