#pragma once

#include <optional>
#include <vector>

#include "crn/matrix.hpp"
#include "crn/polynomial.hpp"

namespace crn {

struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateConstantTerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Index rank(const RMat& M);

/// Basis of the right kernel via fraction-free (Bareiss) elimination.
/// Vectors are scaled to coprime integers, first non-zero entry positive,
/// and ordered by the free column they correspond to.
std::vector<RVec> kernel_basis(const RMat& M);

/// Basis of the left kernel, i.e. kernel_basis of the transpose.
std::vector<RVec> left_kernel_basis(const RMat& M);

/// Indices of the lexicographically first maximal independent row set.
std::vector<int> first_independent_rows(const RMat& M);

/// Coefficients sigma_1..sigma_n of tau^n + sigma_1 tau^{n-1} + ... + sigma_n.
struct CharPoly {
    RVec sigma;

    Index degree() const { return sigma.size(); }
    /// Number of trailing zero coefficients (zero roots counted naively).
    Index trailing_zeros() const;
};

/// Exact characteristic polynomial via the Faddeev-LeVerrier recurrence.
CharPoly char_poly(const RMat& M);

/// Divides out tau^s; throws DegenerateConstantTerm when the constant
/// coefficient of the divided polynomial would be zero, and errors when a
/// dropped coefficient is non-zero.
CharPoly divide_out(const CharPoly& p, Index s);

struct HurwitzResult {
    bool stable = false;
    std::vector<Rational> determinants;  // leading principal Hurwitz minors
};

/// All-roots-negative test for tau^k + a_1 tau^{k-1} + ... + a_k via the
/// Hurwitz determinants, returned exactly. Throws DegenerateConstantTerm
/// when a_k = 0.
HurwitzResult hurwitz_stable(const CharPoly& p);

/// Extreme rays of ker(N) intersected with the non-negative orthant, by the
/// double description method. Columns are coprime-integer rays sorted
/// lexicographically; the matrix may have zero columns. Inputs with more
/// than 24 columns are rejected.
RMat extreme_rays(const RMat& N);

struct MinorPolynomial {
    std::vector<int> columns;  // 0-based column choice, ascending
    Polynomial poly;           // in the ray multipliers lambda_1..lambda_q
    bool sign_definite = false;
};

struct MinorReport {
    std::vector<MinorPolynomial> minors;               // sorted by column tuple
    std::optional<std::vector<int>> witness_columns;   // first sign-definite minor
    bool some_sign_definite = false;
};

/// Maximal minors of N' diag(E lambda) B^T expanded as polynomials in
/// lambda, plus the same-sign sufficiency flag.
MinorReport minor_polynomials(const RMat& Nprime, const RMat& E, const RMat& B);

}  // namespace crn
