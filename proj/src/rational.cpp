#include "crn/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <ostream>
#include <sstream>

namespace crn {

Rational Rational::from_string(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();

    const auto slash = text.find('/');
    const auto dot = text.find('.');
    if (slash != std::string_view::npos && dot != std::string_view::npos) throw bad();

    auto parse_int = [&](std::string_view s) -> BigInt {
        if (s.empty()) throw bad();
        size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size()) throw bad();
        for (size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') throw bad();
        return BigInt(std::string(s));
    };

    if (slash != std::string_view::npos) {
        BigInt num = parse_int(text.substr(0, slash));
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(num, den);
    }
    if (dot != std::string_view::npos) {
        std::string_view head = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) throw bad();
        bool neg = !head.empty() && head[0] == '-';
        BigInt whole = head.empty() || head == "-" || head == "+" ? BigInt(0) : parse_int(head);
        for (char c : frac)
            if (c < '0' || c > '9') throw bad();
        BigInt scale = 1;
        for (size_t k = 0; k < frac.size(); ++k) scale *= 10;
        const BigInt digits = BigInt(std::string(frac));
        BigInt num = boost::multiprecision::abs(whole) * scale + digits;
        if (neg) num = -num;
        return Rational(num, scale);
    }
    return Rational(parse_int(text));
}

Rational Rational::pow(long long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
        if (e < 0) throw std::domain_error("Rational: zero to a negative power");
        return Rational(0);
    }
    bool invert = e < 0;
    unsigned long long k = invert ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Rational base = *this;
    Rational acc(1);
    while (k > 0) {
        if (k & 1ULL) acc *= base;
        base *= base;
        k >>= 1;
    }
    if (invert) return Rational(1) / acc;
    return acc;
}

std::string Rational::str() const {
    std::ostringstream os;
    os << value_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.value_;
}

}  // namespace crn
