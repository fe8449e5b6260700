#pragma once

#include <map>
#include <string>
#include <vector>

#include "crn/matrix.hpp"

namespace crn {

/// Sparse multivariate polynomial over Rational. The variable set is a
/// fixed arity chosen by the caller; exponent vectors index into it.
class Polynomial {
public:
    using Monomial = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(int arity) : arity_(arity) {}

    static Polynomial constant(int arity, const Rational& c);
    static Polynomial variable(int arity, int index);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    int total_degree() const;

    void add_term(const Monomial& mono, const Rational& coeff);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator*(const Rational& c) const;
    Polynomial pow(int e) const;
    bool operator==(const Polynomial& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }

    Polynomial derivative(int var) const;

    /// Replaces variable `var` by the given polynomial (same arity).
    Polynomial substitute(int var, const Polynomial& value) const;

    Rational eval(const RVec& point) const;

    /// True when the polynomial is non-zero and every coefficient has the
    /// same sign.
    bool sign_definite() const;
    bool coefficients_nonnegative() const;
    bool is_monomial() const { return terms_.size() == 1; }

    std::string str(const std::vector<std::string>& names) const;

private:
    int arity_ = 0;
    std::map<Monomial, Rational> terms_;  // no zero coefficients stored
};

/// Dense matrix of polynomials; just enough for determinant work at desk
/// scale.
class PolyMatrix {
public:
    PolyMatrix(Index rows, Index cols, int arity);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    int arity() const { return arity_; }

    Polynomial& operator()(Index i, Index j) { return data_[static_cast<size_t>(i * cols_ + j)]; }
    const Polynomial& operator()(Index i, Index j) const {
        return data_[static_cast<size_t>(i * cols_ + j)];
    }

    Polynomial determinant() const;
    PolyMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

private:
    Index rows_;
    Index cols_;
    int arity_;
    std::vector<Polynomial> data_;
};

/// Coefficient sigma_k of the characteristic polynomial
/// tau^n + sigma_1 tau^{n-1} + ... + sigma_n of a square polynomial matrix,
/// computed as (-1)^k times the sum of principal k x k minors.
Polynomial char_poly_coefficient(const PolyMatrix& M, int k);

}  // namespace crn
