#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <string>
#include <utility>

#include "magic_angles/errors.hpp"

namespace magic_angles {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer floor_rat(const Rational& x) {
    Integer q = numerator(x) / denominator(x);
    if (x < 0 && q * denominator(x) != numerator(x)) --q;
    return q;
}

inline Integer pow2(std::size_t k) { return Integer(1) << k; }

// A point of the circle R/Z stored as a reduced fraction in [0, 1).
// Immutable after construction; all operations are pure.
class Angle {
public:
    Angle() : value_(0) {}

    explicit Angle(Rational v) : value_(std::move(v)) { normalize(); }

    Angle(const Integer& num, const Integer& den) {
        if (den == 0) throw hypothesis_error("angle denominator must be nonzero");
        value_ = Rational(num, den);
        normalize();
    }

    Angle(long num, long den) : Angle(Integer(num), Integer(den)) {}

    const Rational& value() const noexcept { return value_; }
    Integer numerator() const { return boost::multiprecision::numerator(value_); }
    Integer denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }

    // Denominator a power of two (includes 0/1).
    bool is_dyadic() const {
        Integer d = denominator();
        return (d & (d - 1)) == 0;
    }

    // D^k(theta) = 2^k * theta mod 1.
    Angle doubled(std::size_t k = 1) const {
        Integer d = denominator();
        return Angle(Rational((numerator() << k) % d, d));
    }

    // Distance |theta - 1/2|; the representative lies in [0, 1), so the
    // plain difference already equals the circle distance to 1/2.
    Rational distance_to_half() const {
        Rational d = value_ - Rational(1, 2);
        return d < 0 ? Rational(-d) : d;
    }

    std::string str() const {
        return numerator().str() + "/" + denominator().str();
    }

    friend bool operator==(const Angle& a, const Angle& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Angle& a, const Angle& b) { return a.value_ != b.value_; }
    friend bool operator<(const Angle& a, const Angle& b)  { return a.value_ < b.value_; }
    friend bool operator<=(const Angle& a, const Angle& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Angle& a, const Angle& b)  { return a.value_ > b.value_; }
    friend bool operator>=(const Angle& a, const Angle& b) { return a.value_ >= b.value_; }

private:
    void normalize() {
        Integer f = floor_rat(value_);
        if (f != 0) value_ -= Rational(f);
    }

    Rational value_;
};

} // namespace magic_angles
