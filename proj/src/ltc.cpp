#include "crn/ltc.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "crn/exactlin.hpp"
#include "crn/graph.hpp"

namespace crn {

namespace {

/// Distinct reactant-complex supports, as sorted species index lists.
std::vector<std::vector<int>> reactant_supports(const ReactionNetwork& net) {
    std::set<std::vector<int>> seen;
    for (const auto& r : net.reactions()) {
        const IVec& c = net.complexes()[static_cast<size_t>(r.reactant)];
        std::vector<int> supp;
        for (Index i = 0; i < c.size(); ++i)
            if (c(i) > 0) supp.push_back(static_cast<int>(i));
        seen.insert(std::move(supp));
    }
    return {seen.begin(), seen.end()};
}

bool hits_all(const std::vector<std::vector<int>>& supports, const std::vector<bool>& chosen) {
    for (const auto& s : supports) {
        bool hit = false;
        for (int i : s)
            if (chosen[static_cast<size_t>(i)]) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

void minimal_hitting_sets(const std::vector<std::vector<int>>& supports, Index n,
                          std::vector<bool>& chosen, size_t next_support,
                          std::vector<std::vector<int>>& out) {
    // Skip supports already hit.
    while (next_support < supports.size()) {
        bool hit = false;
        for (int i : supports[next_support])
            if (chosen[static_cast<size_t>(i)]) hit = true;
        if (!hit) break;
        ++next_support;
    }
    if (next_support == supports.size()) {
        std::vector<int> set;
        for (Index i = 0; i < n; ++i)
            if (chosen[static_cast<size_t>(i)]) set.push_back(static_cast<int>(i));
        // Minimality: removing any chosen element must break coverage.
        for (int i : set) {
            chosen[static_cast<size_t>(i)] = false;
            bool still = hits_all(supports, chosen);
            chosen[static_cast<size_t>(i)] = true;
            if (still) return;
        }
        out.push_back(std::move(set));
        return;
    }
    for (int i : supports[next_support]) {
        if (chosen[static_cast<size_t>(i)]) continue;
        chosen[static_cast<size_t>(i)] = true;
        minimal_hitting_sets(supports, n, chosen, next_support + 1, out);
        chosen[static_cast<size_t>(i)] = false;
    }
}

IVec indicator(Index n, const std::vector<int>& set) {
    IVec v = IVec::Zero(n);
    for (int i : set) v(i) = 1;
    return v;
}

}  // namespace

bool is_ltc_set(const ReactionNetwork& net, const std::vector<int>& species) {
    if (species.empty()) return net.reaction_count() == 0;
    if (species.size() >= static_cast<size_t>(net.species_count())) return false;
    std::vector<bool> chosen(static_cast<size_t>(net.species_count()), false);
    for (int i : species) chosen[static_cast<size_t>(i)] = true;
    return hits_all(reactant_supports(net), chosen);
}

LtcResult enumerate_ltc(const ReactionNetwork& net, bool include_non_minimal, int size_cap) {
    const Index n = net.species_count();
    LtcResult out;

    for (const auto& r : net.reactions()) {
        if (net.complex_is_zero(r.reactant)) {
            out.warnings.push_back(
                "network has inflow reactions: the vector field contains a non-zero constant "
                "monomial, no LTC species sets exist");
            return out;
        }
    }

    const auto supports = reactant_supports(net);
    const auto mats = build_matrices(net);
    const IMat Ystar = mats.reactant_complex_matrix();

    std::vector<std::vector<int>> minimal_sets;
    std::vector<bool> chosen(static_cast<size_t>(n), false);
    minimal_hitting_sets(supports, n, chosen, 0, minimal_sets);
    std::sort(minimal_sets.begin(), minimal_sets.end());
    minimal_sets.erase(std::unique(minimal_sets.begin(), minimal_sets.end()), minimal_sets.end());
    std::sort(minimal_sets.begin(), minimal_sets.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });

    auto push = [&](std::vector<int> set, bool minimal) {
        if (set.size() >= static_cast<size_t>(n)) return;  // LTC sets are proper
        LtcSet ls;
        ls.omega = indicator(n, set);
        ls.species = std::move(set);
        ls.minimal = minimal;
        out.sets.push_back(std::move(ls));
    };

    if (!include_non_minimal) {
        for (auto& s : minimal_sets) push(std::move(s), true);
        return out;
    }

    const size_t cap = size_cap < 0 ? static_cast<size_t>(n) - 1 : static_cast<size_t>(size_cap);
    if (n > 20) throw SizeLimitError("enumerate_ltc --all: more than 20 species");
    std::set<std::vector<int>> minimal_lookup(minimal_sets.begin(), minimal_sets.end());
    std::vector<std::vector<int>> all;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<bool> pick(static_cast<size_t>(n), false);
        std::vector<int> set;
        for (Index i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                pick[static_cast<size_t>(i)] = true;
                set.push_back(static_cast<int>(i));
            }
        if (set.size() > cap || set.size() >= static_cast<size_t>(n)) continue;
        if (hits_all(supports, pick)) all.push_back(std::move(set));
    }
    std::sort(all.begin(), all.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (auto& s : all) {
        const bool minimal = minimal_lookup.count(s) > 0;
        push(std::move(s), minimal);
    }
    return out;
}

IntegralLinkResult first_integral_links(const ReactionNetwork& net, int coeff_bound) {
    const Index n = net.species_count();
    const Index d = net.complex_count();
    IntegralLinkResult out;

    const StructureSummary ss = structure(net);
    out.one_terminal_per_component = ss.one_terminal_per_component;
    if (!ss.one_terminal_per_component)
        out.warnings.push_back(
            "some connected component has several terminal strongly connected components; the "
            "component decomposition of alpha*Y need not exist");

    const auto mats = build_matrices(net);
    const RMat N = to_rational(mats.N);
    const auto basis = left_kernel_basis(N);
    const size_t k = basis.size();
    if (k == 0) return out;
    if (k > 6) throw SizeLimitError("first_integral_links: left kernel dimension above 6");

    // All non-negative integer combinations with coefficients in
    // [-bound, bound]; every fixture integral in range has 0/1 coefficients.
    std::set<std::vector<std::string>> seen;
    std::vector<int> coeff(k, -coeff_bound);
    while (true) {
        RVec alpha = RVec::Zero(n);
        bool nonzero = false;
        for (size_t i = 0; i < k; ++i) {
            if (coeff[i] != 0) nonzero = true;
            alpha += Rational(coeff[i]) * basis[i];
        }
        if (nonzero) {
            bool nonneg = true;
            for (Index i = 0; i < n; ++i) nonneg = nonneg && alpha(i) >= Rational(0);
            if (nonneg) {
                alpha = integer_normalized(alpha);
                std::vector<std::string> key;
                for (Index i = 0; i < n; ++i) key.push_back(alpha(i).str());
                if (seen.insert(key).second) {
                    IntegralLink link;
                    link.alpha = alpha;
                    link.supp = support(alpha);

                    RVec alphaY = RVec::Zero(d);
                    for (Index j = 0; j < d; ++j)
                        for (Index i = 0; i < n; ++i)
                            alphaY(j) += alpha(i) * Rational(mats.Y(i, j));

                    link.decomposable = true;
                    link.ell.assign(ss.component_members.size(), Rational(0));
                    for (size_t c = 0; c < ss.component_members.size(); ++c) {
                        const auto& members = ss.component_members[c];
                        Rational value = alphaY(members.front());
                        for (int j : members)
                            if (alphaY(j) != value) link.decomposable = false;
                        link.ell[c] = value;
                    }
                    if (link.decomposable) {
                        bool all_pos = true;
                        for (const auto& l : link.ell) all_pos = all_pos && l > Rational(0);
                        link.ltc_implied =
                            all_pos && link.supp.size() < static_cast<size_t>(n);
                    }
                    out.links.push_back(std::move(link));
                }
            }
        }
        size_t pos = 0;
        while (pos < k && coeff[pos] == coeff_bound) coeff[pos++] = -coeff_bound;
        if (pos == k) break;
        ++coeff[pos];
    }

    std::sort(out.links.begin(), out.links.end(), [](const IntegralLink& a, const IntegralLink& b) {
        if (a.supp.size() != b.supp.size()) return a.supp.size() < b.supp.size();
        return lex_less(a.alpha, b.alpha);
    });

    // Experimental converse (single component, single terminal SCC): a
    // non-negative integral supported inside an LTC set exists iff the
    // all-ones vector is a positive combination of the LTC rows of Y.
    if (ss.components == 1 && ss.one_terminal_per_component) {
        out.converse_applicable = true;
        const LtcResult ltc = enumerate_ltc(net);
        for (const auto& set : ltc.sets) {
            IntegralLinkResult::ConverseEntry entry;
            entry.ltc_species = set.species;
            // Feasibility of { omega >= 0 on the set : omega^T Y = 1^T }
            // by exhaustive basic-solution enumeration.
            const size_t u = set.species.size();
            RMat A(static_cast<Index>(u), d);  // rows: Y rows of the set
            for (size_t i = 0; i < u; ++i)
                for (Index j = 0; j < d; ++j)
                    A(static_cast<Index>(i), j) = Rational(mats.Y(set.species[i], j));
            // Solve omega^T A = 1 with omega >= 0: enumerate column subsets
            // of A^T of size rank(A^T) and test the basic solutions.
            const RMat At = A.transpose();  // d x u
            const Index ra = rank(At);
            std::vector<int> cols(u);
            for (size_t i = 0; i < u; ++i) cols[i] = static_cast<int>(i);
            bool feasible = false;
            std::vector<int> pick(static_cast<size_t>(ra));
            std::function<void(size_t, int)> try_subsets = [&](size_t depth, int start) {
                if (feasible) return;
                if (depth == static_cast<size_t>(ra)) {
                    // Solve At[:, pick] * w = 1 in least-squares-free exact
                    // form: use kernel trick on the augmented system.
                    RMat sub(d, ra + 1);
                    for (Index c = 0; c < ra; ++c)
                        sub.col(c) = At.col(pick[static_cast<size_t>(c)]);
                    for (Index j = 0; j < d; ++j) sub(j, ra) = Rational(-1);
                    for (const RVec& v : kernel_basis(sub)) {
                        if (v(ra).is_zero()) continue;
                        RVec w = v.head(ra) / v(ra);
                        bool ok = true;
                        for (Index c = 0; c < ra; ++c) ok = ok && w(c) >= Rational(0);
                        if (!ok) continue;
                        // Verify the full system (kernel may be larger).
                        RVec full = RVec::Zero(d);
                        for (Index c = 0; c < ra; ++c) full += w(c) * sub.col(c);
                        bool exact = true;
                        for (Index j = 0; j < d; ++j) exact = exact && full(j) == Rational(1);
                        if (exact) {
                            feasible = true;
                            return;
                        }
                    }
                    return;
                }
                for (int c = start; c < static_cast<int>(u); ++c) {
                    pick[depth] = c;
                    try_subsets(depth + 1, c + 1);
                }
            };
            try_subsets(0, 0);
            entry.integral_exists = feasible;
            out.converse.push_back(std::move(entry));
        }
    }
    return out;
}

namespace {

SlowFastSystem build_slow_fast(const ReactionNetwork& net, const std::vector<int>& off_reactions,
                               const std::vector<int>& ltc_species) {
    const Index n = net.species_count();
    const Index m = net.reaction_count();
    for (int j : off_reactions)
        if (j < 0 || j >= m) throw BadSupportError("unknown reaction index in off set");
    if (static_cast<Index>(off_reactions.size()) >= m && m > 0)
        throw BadSupportError("switching off every reaction leaves a degenerate system");

    std::vector<bool> off(static_cast<size_t>(m), false);
    for (int j : off_reactions) off[static_cast<size_t>(j)] = true;
    std::vector<bool> keep(static_cast<size_t>(m));
    for (Index j = 0; j < m; ++j) keep[static_cast<size_t>(j)] = !off[static_cast<size_t>(j)];

    const ReactionNetwork sub = subnetwork(net, keep);
    if (!is_ltc_set(sub, ltc_species))
        throw NotLtcError("species set is not LTC for the (sub)network");

    std::vector<bool> scaled(static_cast<size_t>(n), false);
    for (int i : ltc_species) scaled[static_cast<size_t>(i)] = true;

    const auto mats = build_matrices(net);
    SlowFastSystem sys;
    sys.scaled_species = ltc_species;
    for (Index i = 0; i < n; ++i)
        if (!scaled[static_cast<size_t>(i)]) sys.unscaled_species.push_back(static_cast<int>(i));
    sys.eps_reactions = off_reactions;

    for (Index i = 0; i < n; ++i) {
        SfEquation eq;
        eq.species = static_cast<int>(i);
        eq.starred = scaled[static_cast<size_t>(i)];
        eq.eps_prefactor = !eq.starred;
        for (Index j = 0; j < m; ++j) {
            if (mats.N(i, j) == 0) continue;
            SfTerm term;
            term.coeff = Rational(mats.N(i, j));
            term.reaction = static_cast<int>(j);
            term.kappa_starred = off[static_cast<size_t>(j)];
            term.expo = mats.B.col(j);
            int power = term.kappa_starred ? 1 : 0;
            for (Index l = 0; l < n; ++l)
                if (scaled[static_cast<size_t>(l)]) power += term.expo(l);
            // One eps is consumed by the scaled left-hand side (fast block)
            // or factored out in front (slow block).
            term.eps_power = power - 1;
            eq.terms.push_back(std::move(term));
        }
        sys.equations.push_back(std::move(eq));
    }

    // Stoichiometric first integrals and their fate under the scaling.
    for (const RVec& alpha : left_kernel_basis(to_rational(mats.N))) {
        CarriedIntegral ci;
        ci.alpha = alpha;
        ci.fast_attached = true;
        for (Index i = 0; i < n; ++i)
            if (!alpha(i).is_zero() && !scaled[static_cast<size_t>(i)]) ci.fast_attached = false;
        sys.integrals.push_back(std::move(ci));
    }
    return sys;
}

}  // namespace

SlowFastSystem scale(const ReactionNetwork& net, const std::vector<int>& ltc_species) {
    return build_slow_fast(net, {}, ltc_species);
}

SlowFastSystem partial_scale(const ReactionNetwork& net, const std::vector<int>& off_reactions,
                             const std::vector<int>& ltc_species) {
    if (off_reactions.empty())
        throw BadSupportError("partial scaling needs a non-empty off set; use scale instead");
    return build_slow_fast(net, off_reactions, ltc_species);
}

std::string system_listing(const SlowFastSystem& sys, const ReactionNetwork& net) {
    std::ostringstream os;
    std::vector<bool> scaled(static_cast<size_t>(net.species_count()), false);
    for (int i : sys.scaled_species) scaled[static_cast<size_t>(i)] = true;

    auto var_name = [&](int i) {
        std::string s = net.species()[static_cast<size_t>(i)];
        if (scaled[static_cast<size_t>(i)]) s += "*";
        return s;
    };

    for (const auto& eq : sys.equations) {
        os << var_name(eq.species) << "' = ";
        if (eq.eps_prefactor) os << "eps * ( ";
        if (eq.terms.empty()) os << "0";
        bool first = true;
        for (const auto& t : eq.terms) {
            Rational c = t.coeff;
            if (first) {
                if (c < Rational(0)) {
                    os << "-";
                    c = -c;
                }
            } else {
                os << (c < Rational(0) ? " - " : " + ");
                c = abs(c);
            }
            first = false;
            if (t.eps_power == 1) os << "eps ";
            if (t.eps_power > 1) os << "eps^" << t.eps_power << " ";
            if (c != Rational(1)) os << c.str() << " ";
            os << net.reactions()[static_cast<size_t>(t.reaction)].label;
            if (t.kappa_starred) os << "*";
            for (Index l = 0; l < t.expo.size(); ++l) {
                if (t.expo(l) == 0) continue;
                os << " " << var_name(static_cast<int>(l));
                if (t.expo(l) > 1) os << "^" << t.expo(l);
            }
        }
        if (eq.eps_prefactor) os << " )";
        os << "\n";
    }
    return os.str();
}

RVec eval_unscaled(const SlowFastSystem& sys, const ReactionNetwork& net, const RateAssignment& k,
                   const RVec& x, const Rational& eps) {
    if (eps.is_zero()) throw std::invalid_argument("eval_unscaled: eps must be non-zero");
    const Index n = net.species_count();
    std::vector<bool> scaled(static_cast<size_t>(n), false);
    for (int i : sys.scaled_species) scaled[static_cast<size_t>(i)] = true;

    RVec out = RVec::Zero(n);
    for (const auto& eq : sys.equations) {
        Rational value(0);
        for (const auto& t : eq.terms) {
            Rational kappa = k.values(t.reaction);
            if (t.kappa_starred) kappa /= eps;  // kappa_j = eps kappa_j^*
            Rational term = t.coeff * kappa * eps.pow(t.eps_power);
            for (Index l = 0; l < n; ++l) {
                if (t.expo(l) == 0) continue;
                Rational xl = x(l);
                if (scaled[static_cast<size_t>(l)]) xl /= eps;  // x_l = eps x_l^*
                term *= xl.pow(t.expo(l));
            }
            value += term;
        }
        // d x_i / dt = eps * d x_i^* / dt for scaled variables, and the slow
        // block carries the factored eps.
        out(eq.species) = value * eps;
    }
    return out;
}

}  // namespace crn
