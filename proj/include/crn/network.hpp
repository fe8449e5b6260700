#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crn/matrix.hpp"

namespace crn {

struct NetworkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Reaction {
    int reactant = 0;  // complex index
    int product = 0;   // complex index
    std::string label;
};

/// Mass-action reaction network: species, complexes (non-negative integer
/// vectors over the species) and labelled directed reactions between
/// distinct complexes. Immutable after construction; construction enforces
/// the structural invariants.
class ReactionNetwork {
public:
    ReactionNetwork(std::vector<std::string> species,
                    std::vector<IVec> complexes,
                    std::vector<Reaction> reactions,
                    std::map<std::string, Rational> rate_values = {},
                    std::string name = "network");

    Index species_count() const { return static_cast<Index>(species_.size()); }  // n
    Index complex_count() const { return static_cast<Index>(complexes_.size()); }  // d
    Index reaction_count() const { return static_cast<Index>(reactions_.size()); }  // m

    const std::vector<std::string>& species() const { return species_; }
    const std::vector<IVec>& complexes() const { return complexes_; }
    const std::vector<Reaction>& reactions() const { return reactions_; }
    const std::map<std::string, Rational>& rate_values() const { return rate_values_; }

    const std::string& name() const { return name_; }

    int species_index(const std::string& name) const;   // -1 if absent
    int reaction_index(const std::string& label) const; // -1 if absent

    /// Index of the zero complex, or -1.
    int zero_complex() const;

    bool complex_is_zero(int j) const { return complexes_[static_cast<size_t>(j)].isZero(); }

    std::string complex_text(int j) const;

    ReactionNetwork with_rates(std::map<std::string, Rational> rate_values) const;
    ReactionNetwork with_name(std::string name) const;

private:
    std::vector<std::string> species_;
    std::vector<IVec> complexes_;
    std::vector<Reaction> reactions_;
    std::map<std::string, Rational> rate_values_;
    std::string name_;
};

/// Y (n x d), reactant matrix B (n x m), stoichiometric matrix N (n x m),
/// and the reactant-complex flags defining Y*.
struct NetworkMatrices {
    IMat Y;
    IMat B;
    IMat N;
    std::vector<bool> reactant_flags;
    Index reactant_count = 0;  // d*

    /// Y restricted to reactant complexes, column order preserved.
    IMat reactant_complex_matrix() const;
};

NetworkMatrices build_matrices(const ReactionNetwork& net);

/// Per-reaction rate values ordered as the reaction list; entries >= 0.
struct RateAssignment {
    RVec values;

    static RateAssignment from_vector(const ReactionNetwork& net, RVec values);
    /// Reads the network's label bindings; throws UnboundRateError listing
    /// any missing label.
    static RateAssignment from_bindings(const ReactionNetwork& net);
    static RateAssignment constant(const ReactionNetwork& net, const Rational& value);

    std::vector<int> support_indices() const;
    std::vector<bool> support_mask() const;
};

struct UnboundRateError : NetworkError {
    explicit UnboundRateError(const std::string& what) : NetworkError(what) {}
};

/// Laplacian matrix A(kappa), d x d; off-diagonal (i,j) holds the rate of
/// Y_j -> Y_i, columns sum to zero.
RMat laplacian(const ReactionNetwork& net, const RateAssignment& k);

/// Mass-action monomial x^y with the 0^0 = 1 convention.
Rational monomial_eval(const RVec& x, const IVec& y);

/// Right-hand side N diag(kappa) x^B evaluated exactly.
RVec rhs_eval(const ReactionNetwork& net, const RateAssignment& k, const RVec& x);

/// Exact Jacobian of the right-hand side with respect to x; entries where
/// an exponent is zero vanish term-by-term, so boundary points are fine.
RMat jacobian_eval(const ReactionNetwork& net, const RateAssignment& k, const RVec& x);

}  // namespace crn
