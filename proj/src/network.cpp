#include "crn/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace crn {

ReactionNetwork::ReactionNetwork(std::vector<std::string> species,
                                 std::vector<IVec> complexes,
                                 std::vector<Reaction> reactions,
                                 std::map<std::string, Rational> rate_values,
                                 std::string name)
    : species_(std::move(species)),
      complexes_(std::move(complexes)),
      reactions_(std::move(reactions)),
      rate_values_(std::move(rate_values)),
      name_(std::move(name)) {
    const Index n = species_count();
    const Index d = complex_count();

    {
        std::set<std::string> seen;
        for (const auto& s : species_)
            if (!seen.insert(s).second) throw NetworkError("duplicate species name: " + s);
    }

    for (const auto& c : complexes_) {
        if (c.size() != n) throw NetworkError("complex vector has wrong length");
        if ((c.array() < 0).any()) throw NetworkError("complex has negative coefficient");
    }
    for (Index a = 0; a < d; ++a)
        for (Index b = a + 1; b < d; ++b)
            if (complexes_[static_cast<size_t>(a)] == complexes_[static_cast<size_t>(b)])
                throw NetworkError("complexes must be pairwise distinct");

    std::vector<bool> covered(static_cast<size_t>(n), false);
    for (const auto& c : complexes_)
        for (Index i = 0; i < n; ++i)
            if (c(i) > 0) covered[static_cast<size_t>(i)] = true;
    for (Index i = 0; i < n; ++i)
        if (!covered[static_cast<size_t>(i)])
            throw NetworkError("species " + species_[static_cast<size_t>(i)] +
                               " appears in no complex");

    std::set<std::pair<int, int>> edges;
    std::set<std::string> labels;
    for (const auto& r : reactions_) {
        if (r.reactant < 0 || r.reactant >= d || r.product < 0 || r.product >= d)
            throw NetworkError("reaction references unknown complex");
        if (r.reactant == r.product)
            throw NetworkError("self-edge " + complex_text(r.reactant) + " -> itself");
        if (!edges.insert({r.reactant, r.product}).second)
            throw NetworkError("duplicate reaction " + complex_text(r.reactant) + " -> " +
                               complex_text(r.product));
        if (r.label.empty()) throw NetworkError("reaction without rate label");
        if (!labels.insert(r.label).second)
            throw NetworkError("duplicate rate label: " + r.label);
    }
    for (const auto& [label, value] : rate_values_) {
        if (!labels.count(label)) throw NetworkError("rate binding for unknown label: " + label);
        if (value < Rational(0)) throw NetworkError("negative rate value for " + label);
    }
}

int ReactionNetwork::species_index(const std::string& name) const {
    for (size_t i = 0; i < species_.size(); ++i)
        if (species_[i] == name) return static_cast<int>(i);
    return -1;
}

int ReactionNetwork::reaction_index(const std::string& label) const {
    for (size_t i = 0; i < reactions_.size(); ++i)
        if (reactions_[i].label == label) return static_cast<int>(i);
    return -1;
}

int ReactionNetwork::zero_complex() const {
    for (size_t j = 0; j < complexes_.size(); ++j)
        if (complexes_[j].isZero()) return static_cast<int>(j);
    return -1;
}

std::string ReactionNetwork::complex_text(int j) const {
    const IVec& c = complexes_[static_cast<size_t>(j)];
    if (c.isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (Index i = 0; i < c.size(); ++i) {
        if (c(i) == 0) continue;
        if (!first) os << " + ";
        if (c(i) != 1) os << c(i) << " ";
        os << species_[static_cast<size_t>(i)];
        first = false;
    }
    return os.str();
}

ReactionNetwork ReactionNetwork::with_rates(std::map<std::string, Rational> rate_values) const {
    return ReactionNetwork(species_, complexes_, reactions_, std::move(rate_values), name_);
}

ReactionNetwork ReactionNetwork::with_name(std::string name) const {
    return ReactionNetwork(species_, complexes_, reactions_, rate_values_, std::move(name));
}

IMat NetworkMatrices::reactant_complex_matrix() const {
    IMat out(Y.rows(), reactant_count);
    Index col = 0;
    for (Index j = 0; j < Y.cols(); ++j)
        if (reactant_flags[static_cast<size_t>(j)]) out.col(col++) = Y.col(j);
    return out;
}

NetworkMatrices build_matrices(const ReactionNetwork& net) {
    const Index n = net.species_count();
    const Index d = net.complex_count();
    const Index m = net.reaction_count();

    NetworkMatrices out;
    out.Y.resize(n, d);
    for (Index j = 0; j < d; ++j) out.Y.col(j) = net.complexes()[static_cast<size_t>(j)];

    out.B.resize(n, m);
    out.N.resize(n, m);
    out.reactant_flags.assign(static_cast<size_t>(d), false);
    for (Index j = 0; j < m; ++j) {
        const Reaction& r = net.reactions()[static_cast<size_t>(j)];
        out.B.col(j) = out.Y.col(r.reactant);
        out.N.col(j) = out.Y.col(r.product) - out.Y.col(r.reactant);
        out.reactant_flags[static_cast<size_t>(r.reactant)] = true;
    }
    out.reactant_count = static_cast<Index>(
        std::count(out.reactant_flags.begin(), out.reactant_flags.end(), true));
    return out;
}

RateAssignment RateAssignment::from_vector(const ReactionNetwork& net, RVec values) {
    if (values.size() != net.reaction_count())
        throw NetworkError("rate vector length does not match reaction count");
    for (Index j = 0; j < values.size(); ++j)
        if (values(j) < Rational(0)) throw NetworkError("negative rate value");
    return RateAssignment{std::move(values)};
}

RateAssignment RateAssignment::from_bindings(const ReactionNetwork& net) {
    RVec values(net.reaction_count());
    std::vector<std::string> missing;
    for (Index j = 0; j < net.reaction_count(); ++j) {
        const auto& label = net.reactions()[static_cast<size_t>(j)].label;
        auto it = net.rate_values().find(label);
        if (it == net.rate_values().end()) {
            missing.push_back(label);
            values(j) = Rational(0);
        } else {
            values(j) = it->second;
        }
    }
    if (!missing.empty()) {
        std::string what = "unbound rate label(s):";
        for (const auto& s : missing) what += " " + s;
        throw UnboundRateError(what);
    }
    return RateAssignment{std::move(values)};
}

RateAssignment RateAssignment::constant(const ReactionNetwork& net, const Rational& value) {
    RVec values = RVec::Constant(net.reaction_count(), value);
    return from_vector(net, std::move(values));
}

std::vector<int> RateAssignment::support_indices() const {
    return support(values);
}

std::vector<bool> RateAssignment::support_mask() const {
    std::vector<bool> mask(static_cast<size_t>(values.size()), false);
    for (Index j = 0; j < values.size(); ++j) mask[static_cast<size_t>(j)] = !values(j).is_zero();
    return mask;
}

RMat laplacian(const ReactionNetwork& net, const RateAssignment& k) {
    const Index d = net.complex_count();
    if (k.values.size() != net.reaction_count())
        throw NetworkError("rate vector length does not match reaction count");
    RMat A = RMat::Zero(d, d);
    for (Index j = 0; j < net.reaction_count(); ++j) {
        const Reaction& r = net.reactions()[static_cast<size_t>(j)];
        A(r.product, r.reactant) += k.values(j);
        A(r.reactant, r.reactant) -= k.values(j);
    }
    return A;
}

Rational monomial_eval(const RVec& x, const IVec& y) {
    Rational out(1);
    for (Index i = 0; i < y.size(); ++i) {
        if (y(i) == 0) continue;
        out *= x(i).pow(y(i));
    }
    return out;
}

RVec rhs_eval(const ReactionNetwork& net, const RateAssignment& k, const RVec& x) {
    const auto mats = build_matrices(net);
    RVec out = RVec::Zero(net.species_count());
    for (Index j = 0; j < net.reaction_count(); ++j) {
        if (k.values(j).is_zero()) continue;
        Rational rate = k.values(j) * monomial_eval(x, mats.B.col(j));
        if (rate.is_zero()) continue;
        for (Index i = 0; i < net.species_count(); ++i)
            if (mats.N(i, j) != 0) out(i) += Rational(mats.N(i, j)) * rate;
    }
    return out;
}

RMat jacobian_eval(const ReactionNetwork& net, const RateAssignment& k, const RVec& x) {
    const auto mats = build_matrices(net);
    const Index n = net.species_count();
    RMat J = RMat::Zero(n, n);
    for (Index j = 0; j < net.reaction_count(); ++j) {
        if (k.values(j).is_zero()) continue;
        for (Index l = 0; l < n; ++l) {
            const int e = mats.B(l, j);
            if (e == 0) continue;
            // d/dx_l of kappa_j x^{b_j} = kappa_j * e * x^{b_j - e_l}
            IVec expo = mats.B.col(j);
            expo(l) -= 1;
            Rational deriv = k.values(j) * Rational(e) * monomial_eval(x, expo);
            if (deriv.is_zero()) continue;
            for (Index i = 0; i < n; ++i)
                if (mats.N(i, j) != 0) J(i, l) += Rational(mats.N(i, j)) * deriv;
        }
    }
    return J;
}

}  // namespace crn
