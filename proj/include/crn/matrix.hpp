#pragma once

#include <Eigen/Core>

#include <vector>

#include "crn/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<crn::Rational> : GenericNumTraits<crn::Rational> {
    using Real = crn::Rational;
    using NonInteger = crn::Rational;
    using Nested = crn::Rational;
    using Literal = int;
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 60
    };
};

}  // namespace Eigen

namespace crn {

using RMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using IMat = Eigen::MatrixXi;
using IVec = Eigen::VectorXi;
using Index = Eigen::Index;

RMat to_rational(const IMat& m);
RVec to_rational(const IVec& v);

Eigen::VectorXd to_double(const RVec& v);

/// Scales a rational vector to coprime integer entries with the first
/// non-zero entry positive. The zero vector is returned unchanged.
RVec integer_normalized(const RVec& v);

/// Strict lexicographic order on entries; used wherever vector output has
/// to be sorted deterministically.
bool lex_less(const RVec& a, const RVec& b);

std::vector<int> support(const RVec& v);

}  // namespace crn
