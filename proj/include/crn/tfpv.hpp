#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crn/exactlin.hpp"
#include "crn/graph.hpp"
#include "crn/network.hpp"

namespace crn {

struct NotWeaklyReversibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFirstOrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Justification {
    DeficiencyZeroWR,    // weakly reversible deficiency-zero subnetwork
    ComplexBalancedWR,   // weakly reversible subnetwork, complex-balancing relations
    FirstOrderTerminal,  // first-order network, extra terminal components
    PointVerified,       // direct verification at a point
};

std::string justification_name(Justification j);

/// A zero-support of rate parameters together with the dimension it
/// certifies and the result justifying it.
struct TfpvCertificate {
    std::vector<int> off_set;           // reaction indices switched off, ascending
    std::vector<std::string> off_labels;
    Index dimension = 0;                // s, with s* < s < n
    Justification justification = Justification::DeficiencyZeroWR;
    StructureSummary sub_summary;
    /// Complex-balancing status for ComplexBalancedWR certificates:
    /// true/false when decided, empty when rate values were unavailable.
    std::optional<bool> cb_verified;
};

struct EnumerationResult {
    std::vector<TfpvCertificate> certificates;
    bool theorem39_mode = false;  // deficiency-zero weakly reversible fast path
    std::vector<std::string> warnings;
};

/// Structural TFPV candidates obtained by switching off reaction subsets of
/// size <= max_off (default m-1). Certificates are minimal: an off-set that
/// strictly contains another with the same component partition is dropped.
EnumerationResult enumerate_structural_tfpv(const ReactionNetwork& net, int max_off = -1);

struct CbRelation {
    RVec exponents;     // integer vector w over the complexes
    Rational product;   // prod_j psi_j^{w_j}
};

struct CbCheckResult {
    bool balanced = false;
    RVec psi;                          // positive kernel vector of A(kappa), per component
    std::vector<CbRelation> relations; // one per deficiency of the subnetwork
};

/// Exact complex-balancing test on the subnetwork supp(k): the tree-based
/// kernel vector of the Laplacian must satisfy the toric relations coming
/// from the left kernel of [Y^T | component indicators].
CbCheckResult cb_check(const ReactionNetwork& net, const RateAssignment& k);

enum class PrecheckVerdict { ExcludedByMinors, ExcludedByInjectivity, Inconclusive };

std::string verdict_name(PrecheckVerdict v);

struct PrecheckResult {
    PrecheckVerdict verdict = PrecheckVerdict::Inconclusive;
    bool lambda_nonempty = false;
    bool lambda_is_positive_orthant = false;
    std::optional<std::vector<int>> witness_columns;  // 0-based species columns
    std::string witness_polynomial;
    bool witness_is_monomial = false;
    Index ray_count = 0;
    bool injectivity_test_ran = false;
    bool injectivity_coefficients_nonnegative = false;
    std::string sigma_polynomial;  // sigma_{n-s*}(x, kappa) when computed
    std::vector<std::string> warnings;
};

/// No-positive-TFPV prechecks: the minor test on N' diag(E lambda) B^T and,
/// for n <= 6, the injectivity coefficient test on sigma_{n-s*}(x, kappa).
PrecheckResult no_positive_tfpv_precheck(const ReactionNetwork& net);

struct PointVerification {
    bool stationary = false;          // h(x0, kappa) = 0 exactly
    Index jacobian_rank = 0;
    bool rank_matches = false;        // rank = n - s
    bool kernel_image_split = false;  // rank(J^2) = rank(J)
    bool divisible = false;           // sigma_n..sigma_{n-s+1} all vanish
    bool hurwitz_applicable = false;
    bool hurwitz_stable = false;
    std::vector<Rational> hurwitz_determinants;
    CharPoly char_polynomial;
    std::optional<CharPoly> divided;
    bool dimension_valid = false;     // s* < s < n
    bool all_pass = false;
    std::vector<std::string> notes;
};

/// Point-wise verification of the TFPV conditions at (x0, kappa-hat) for a
/// proposed dimension s.
PointVerification verify_tfpv_at_point(const ReactionNetwork& net, const RateAssignment& khat,
                                       const RVec& x0, Index s);

/// TFPVs of a first-order network: minimal off-sets whose subnetwork gains
/// terminal strongly connected components (and keeps the zero complex
/// terminal when present). Throws NotFirstOrderError otherwise.
std::vector<TfpvCertificate> first_order_tfpv(const ReactionNetwork& net);

}  // namespace crn
