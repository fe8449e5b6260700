#include "crn/matrix.hpp"

#include <boost/multiprecision/integer.hpp>

namespace crn {

RMat to_rational(const IMat& m) {
    RMat out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
}

RVec to_rational(const IVec& v) {
    RVec out(v.size());
    for (Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
    return out;
}

Eigen::VectorXd to_double(const RVec& v) {
    Eigen::VectorXd out(v.size());
    for (Index i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
    return out;
}

RVec integer_normalized(const RVec& v) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    BigInt den_lcm = 1;
    bool all_zero = true;
    for (Index i = 0; i < v.size(); ++i) {
        if (!v(i).is_zero()) {
            all_zero = false;
            den_lcm = lcm(den_lcm, v(i).den());
        }
    }
    if (all_zero) return v;
    RVec scaled = v * Rational(den_lcm);
    BigInt g = 0;
    for (Index i = 0; i < scaled.size(); ++i) g = gcd(g, scaled(i).num());
    if (g > 1) scaled /= Rational(g);
    for (Index i = 0; i < scaled.size(); ++i) {
        if (scaled(i).is_zero()) continue;
        if (scaled(i) < Rational(0)) scaled = -scaled;
        break;
    }
    return scaled;
}

bool lex_less(const RVec& a, const RVec& b) {
    const Index n = std::min(a.size(), b.size());
    for (Index i = 0; i < n; ++i) {
        if (a(i) != b(i)) return a(i) < b(i);
    }
    return a.size() < b.size();
}

std::vector<int> support(const RVec& v) {
    std::vector<int> out;
    for (Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero()) out.push_back(static_cast<int>(i));
    return out;
}

}  // namespace crn
