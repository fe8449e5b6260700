#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crn/network.hpp"

namespace crn {

struct NotLtcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadSupportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A set of species whose simultaneous zero concentration annihilates the
/// vector field, with the witness of Lemma-style certificate omega.
struct LtcSet {
    std::vector<int> species;  // ascending indices
    bool minimal = true;
    IVec omega;                // support = the set, omega * Y^* > 0
};

struct LtcResult {
    std::vector<LtcSet> sets;
    std::vector<std::string> warnings;
};

/// Minimal LTC species sets (hitting sets of the reactant-complex supports).
/// With include_non_minimal, every LTC set up to size_cap is listed.
/// Networks with inflow reactions have no LTC sets; a warning is recorded.
LtcResult enumerate_ltc(const ReactionNetwork& net, bool include_non_minimal = false,
                        int size_cap = -1);

/// True iff zeroing the given species annihilates every reactant monomial
/// of the network (restricted to its present reactions).
bool is_ltc_set(const ReactionNetwork& net, const std::vector<int>& species);

struct IntegralLink {
    RVec alpha;                 // non-negative integer first integral
    std::vector<int> supp;
    bool decomposable = false;  // alpha * Y splits into component indicators
    std::vector<Rational> ell;  // per-component multiples when decomposable
    bool ltc_implied = false;   // all ell_i > 0 and |supp| < n
};

struct IntegralLinkResult {
    std::vector<IntegralLink> links;
    bool one_terminal_per_component = false;
    std::vector<std::string> warnings;
    /// Experimental converse check for single-component networks: for each
    /// minimal LTC set, whether a non-negative integral supported inside it
    /// exists (convex-hull membership).
    struct ConverseEntry {
        std::vector<int> ltc_species;
        bool integral_exists = false;
    };
    std::vector<ConverseEntry> converse;
    bool converse_applicable = false;
};

/// Non-negative integer first integrals found by small-coefficient search
/// over the left kernel of N, with their component decomposition and the
/// LTC implication they certify.
IntegralLinkResult first_integral_links(const ReactionNetwork& net, int coeff_bound = 3);

/// One additive term of a scaled equation: coeff * kappa * x-monomial *
/// eps^eps_power, where the monomial ranges over scaled (starred) and
/// unscaled variables alike.
struct SfTerm {
    Rational coeff;
    int reaction = 0;
    bool kappa_starred = false;  // kappa re-enters at order eps
    IVec expo;                   // exponents over the species
    int eps_power = 0;           // residual grading inside the equation
};

struct SfEquation {
    int species = 0;
    bool starred = false;        // equation for x_i^* (fast block)
    bool eps_prefactor = false;  // whole right-hand side carries a factor eps
    std::vector<SfTerm> terms;
};

struct CarriedIntegral {
    RVec alpha;
    bool fast_attached = false;  // support inside the scaled set: phi-hat carries over
};

/// eps-graded slow-fast split of the mass-action system under a scaling
/// x_i = eps x_i^* (and kappa_j = eps kappa_j^* for switched-off reactions).
/// eps is a formal symbol throughout.
struct SlowFastSystem {
    std::vector<int> scaled_species;    // u1, starred
    std::vector<int> unscaled_species;  // u2
    std::vector<int> eps_reactions;     // reactions re-entering at order eps
    std::vector<SfEquation> equations;  // one per species, species order
    std::vector<CarriedIntegral> integrals;
};

SlowFastSystem scale(const ReactionNetwork& net, const std::vector<int>& ltc_species);

/// Partial scaling: the off reactions re-enter at order eps and the species
/// set must be LTC for the remaining subnetwork.
SlowFastSystem partial_scale(const ReactionNetwork& net, const std::vector<int>& off_reactions,
                             const std::vector<int>& ltc_species);

/// Human-readable listing, one equation per line with eps powers explicit.
std::string system_listing(const SlowFastSystem& sys, const ReactionNetwork& net);

/// Evaluates the scaled system at numeric (x, kappa, eps) and maps back to
/// d x / dt of the original variables; used to check the unscaling identity.
RVec eval_unscaled(const SlowFastSystem& sys, const ReactionNetwork& net,
                   const RateAssignment& k, const RVec& x, const Rational& eps);

}  // namespace crn
