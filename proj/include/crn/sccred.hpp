#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crn/exactlin.hpp"
#include "crn/network.hpp"
#include "crn/polynomial.hpp"

namespace crn {

struct SingularSelectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The system restricted to a stoichiometric compatibility class: retained
/// variables x-hat, eliminated variables expressed affinely through the
/// level values theta, and the restricted right-hand side as exact
/// polynomials in [x-hat | kappa | theta].
struct SccRestriction {
    std::vector<int> retained;    // species indices, ascending
    std::vector<int> eliminated;
    RMat integral_basis;          // s* x n, rows are the integrals
    std::vector<Polynomial> eliminated_expr;  // one per eliminated variable
    std::vector<Polynomial> rhs;  // one per retained variable
    Index n = 0;
    Index m = 0;
    Index s_star = 0;

    int arity() const { return static_cast<int>(retained.size() + m + s_star); }
    /// Variable names for printing: retained species, rate labels, theta_k.
    std::vector<std::string> variable_names(const ReactionNetwork& net,
                                            const std::vector<std::string>& theta_names = {}) const;
};

/// Canonical basis of stoichiometric first integrals: greedy support-minimal
/// non-negative integer vectors when they span the left kernel of N, plus
/// elimination-basis fallbacks otherwise.
RMat canonical_integral_basis(const ReactionNetwork& net);

SccRestriction restrict_to_scc(const ReactionNetwork& net, const RMat& integral_basis,
                               const std::vector<int>& retained);

/// Exact characteristic polynomial of the restricted Jacobian at a point.
CharPoly scc_charpoly(const SccRestriction& restriction, const RVec& xhat0,
                      const RateAssignment& k, const RVec& theta);

/// sigma-hat coefficients as polynomials (small systems; used for reports
/// and cross-checks).
std::vector<Polynomial> scc_sigma_symbolic(const SccRestriction& restriction);

struct NearTfpvResult {
    bool stationary = false;
    RVec sigma;                       // sigma-hat values at the point
    Index dim = 0;                    // n - s*
    bool dimension_rule_supported = false;  // dim in {2,3,4}
    bool rule_satisfied = false;      // the explicit low-dimension test
    bool on_critical_set = false;     // trailing sigma-hat vanishes
    bool multiplicity_one = false;    // sigma_{dim}=0 and sigma_{dim-1}!=0
    bool compact_scc = false;         // strictly positive left-kernel vector of N
    std::vector<Rational> hurwitz_determinants;  // of the divided polynomial
    bool hurwitz_all_nonnegative = false;
    std::vector<Index> hurwitz_zero_positions;   // flagged zeros (1-based)
    std::string verdict;              // human-readable outcome
    std::vector<std::string> notes;
};

/// Near-TFPV verdict on the restricted system: the explicit dimension-2/3/4
/// rules, the multiplicity-one criterion, and the sign evidence.
NearTfpvResult near_tfpv_check(const ReactionNetwork& net, const SccRestriction& restriction,
                               const RVec& xhat0, const RateAssignment& k, const RVec& theta_hat);

/// Exact feasibility: does the left kernel of N contain a strictly positive
/// vector (all SCCs compact)?
bool has_positive_left_kernel_vector(const ReactionNetwork& net);

}  // namespace crn
