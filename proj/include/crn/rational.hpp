#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace crn {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Thin value wrapper around an arbitrary-precision
/// fraction so that Eigen's trait machinery sees a plain arithmetic type.
class Rational {
public:
    using rep_type = boost::multiprecision::cpp_rational;

    Rational() = default;
    Rational(int v) : value_(v) {}
    Rational(long long v) : value_(v) {}
    Rational(long long num, long long den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        value_ = rep_type(num, den);
    }
    explicit Rational(BigInt v) : value_(std::move(v)) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        value_ = rep_type(num, den);
    }
    explicit Rational(rep_type v) : value_(std::move(v)) {}

    /// Accepts "p", "p/q" and plain decimals such as "0.25" (exact).
    static Rational from_string(std::string_view text);

    const rep_type& rep() const { return value_; }

    BigInt num() const { return numerator(value_); }
    BigInt den() const { return denominator(value_); }

    bool is_zero() const { return value_.is_zero(); }
    bool is_integer() const { return denominator(value_) == 1; }
    int sign() const { return value_.sign(); }

    double to_double() const { return value_.template convert_to<double>(); }

    /// Integer power with 0^0 = 1; throws on 0^negative.
    Rational pow(long long e) const;

    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.value_ + b.value_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.value_ - b.value_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.value_ * b.value_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.value_ / b.value_);
    }
    Rational operator-() const { return Rational(-value_); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = a.value_.compare(b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    rep_type value_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

}  // namespace crn
