#include "crn/sccred.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "crn/graph.hpp"

namespace crn {

namespace {

RMat solve_square(const RMat& A, const RMat& B) {
    // Exact solve A X = B for invertible A via kernel of [A | -B] columns.
    const Index k = A.rows();
    const Index cols = B.cols();
    RMat X(k, cols);
    for (Index c = 0; c < cols; ++c) {
        RMat aug(k, k + 1);
        aug.leftCols(k) = A;
        aug.col(k) = -B.col(c);
        auto basis = kernel_basis(aug);
        bool solved = false;
        for (const RVec& v : basis) {
            if (v(k).is_zero()) continue;
            X.col(c) = v.head(k) / v(k);
            solved = true;
            break;
        }
        if (!solved) throw SingularSelectionError("singular system in affine elimination");
    }
    return X;
}

}  // namespace

std::vector<std::string> SccRestriction::variable_names(
    const ReactionNetwork& net, const std::vector<std::string>& theta_names) const {
    std::vector<std::string> names;
    for (int i : retained) names.push_back(net.species()[static_cast<size_t>(i)]);
    for (Index j = 0; j < m; ++j) names.push_back(net.reactions()[static_cast<size_t>(j)].label);
    for (Index t = 0; t < s_star; ++t) {
        if (t < static_cast<Index>(theta_names.size()))
            names.push_back(theta_names[static_cast<size_t>(t)]);
        else
            names.push_back("theta" + std::to_string(t + 1));
    }
    return names;
}

RMat canonical_integral_basis(const ReactionNetwork& net) {
    const Index n = net.species_count();
    const auto mats = build_matrices(net);
    const RMat N = to_rational(mats.N);
    const auto basis = left_kernel_basis(N);
    const Index s_star = static_cast<Index>(basis.size());
    if (s_star == 0) return RMat(0, n);

    // Collect non-negative integer kernel vectors by small-coefficient
    // search and prefer support-minimal ones. Above desk scale skip the
    // search and use the elimination basis directly.
    std::vector<RVec> candidates;
    if (s_star <= 6) {
        std::set<std::vector<std::string>> seen;
        const int bound = 3;
        std::vector<int> coeff(static_cast<size_t>(s_star), -bound);
        while (true) {
            RVec alpha = RVec::Zero(n);
            bool nonzero = false;
            for (Index i = 0; i < s_star; ++i) {
                if (coeff[static_cast<size_t>(i)] != 0) nonzero = true;
                alpha += Rational(coeff[static_cast<size_t>(i)]) * basis[static_cast<size_t>(i)];
            }
            if (nonzero) {
                bool nonneg = true;
                for (Index i = 0; i < n; ++i) nonneg = nonneg && alpha(i) >= Rational(0);
                if (nonneg) {
                    alpha = integer_normalized(alpha);
                    std::vector<std::string> key;
                    for (Index i = 0; i < n; ++i) key.push_back(alpha(i).str());
                    if (seen.insert(key).second) candidates.push_back(alpha);
                }
            }
            size_t pos = 0;
            while (pos < static_cast<size_t>(s_star) && coeff[pos] == bound) coeff[pos++] = -bound;
            if (pos == static_cast<size_t>(s_star)) break;
            ++coeff[pos];
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const RVec& a, const RVec& b) {
        const size_t sa = support(a).size();
        const size_t sb = support(b).size();
        if (sa != sb) return sa < sb;
        return lex_less(a, b);
    });

    std::vector<RVec> chosen;
    RMat stacked(0, n);
    for (const RVec& cand : candidates) {
        if (static_cast<Index>(chosen.size()) == s_star) break;
        RMat trial(static_cast<Index>(chosen.size()) + 1, n);
        for (size_t i = 0; i < chosen.size(); ++i) trial.row(static_cast<Index>(i)) = chosen[i].transpose();
        trial.row(static_cast<Index>(chosen.size())) = cand.transpose();
        if (rank(trial) == static_cast<Index>(chosen.size()) + 1) chosen.push_back(cand);
    }
    // Fallback: fill up with elimination-basis vectors when the non-negative
    // search does not span (mixed-sign integrals do occur).
    for (const RVec& b : basis) {
        if (static_cast<Index>(chosen.size()) == s_star) break;
        RMat trial(static_cast<Index>(chosen.size()) + 1, n);
        for (size_t i = 0; i < chosen.size(); ++i) trial.row(static_cast<Index>(i)) = chosen[i].transpose();
        trial.row(static_cast<Index>(chosen.size())) = b.transpose();
        if (rank(trial) == static_cast<Index>(chosen.size()) + 1) chosen.push_back(b);
    }

    RMat out(s_star, n);
    for (Index i = 0; i < s_star; ++i) out.row(i) = chosen[static_cast<size_t>(i)].transpose();
    return out;
}

SccRestriction restrict_to_scc(const ReactionNetwork& net, const RMat& integral_basis,
                               const std::vector<int>& retained) {
    const Index n = net.species_count();
    const Index m = net.reaction_count();
    const Index s_star = integral_basis.rows();
    if (integral_basis.cols() != n)
        throw std::invalid_argument("restrict_to_scc: basis width mismatch");
    {
        const auto mats = build_matrices(net);
        const RMat check = integral_basis * to_rational(mats.N);
        for (Index i = 0; i < check.rows(); ++i)
            for (Index j = 0; j < check.cols(); ++j)
                if (!check(i, j).is_zero())
                    throw std::invalid_argument(
                        "restrict_to_scc: basis rows are not first integrals");
    }
    if (static_cast<Index>(retained.size()) != n - s_star)
        throw SingularSelectionError("restrict_to_scc: need exactly n - s* retained variables");

    SccRestriction out;
    out.retained = retained;
    std::sort(out.retained.begin(), out.retained.end());
    std::vector<bool> is_retained(static_cast<size_t>(n), false);
    for (int i : out.retained) {
        if (i < 0 || i >= n) throw std::invalid_argument("restrict_to_scc: bad species index");
        is_retained[static_cast<size_t>(i)] = true;
    }
    for (Index i = 0; i < n; ++i)
        if (!is_retained[static_cast<size_t>(i)]) out.eliminated.push_back(static_cast<int>(i));
    out.integral_basis = integral_basis;
    out.n = n;
    out.m = m;
    out.s_star = s_star;

    // Selection submatrix on the eliminated columns must be invertible:
    // the Jacobian of (x-hat, phi_1..phi_{s*}) has full rank exactly then.
    RMat A_elim(s_star, s_star);
    RMat A_ret(s_star, n - s_star);
    for (Index r = 0; r < s_star; ++r) {
        for (size_t c = 0; c < out.eliminated.size(); ++c)
            A_elim(r, static_cast<Index>(c)) = integral_basis(r, out.eliminated[c]);
        for (size_t c = 0; c < out.retained.size(); ++c)
            A_ret(r, static_cast<Index>(c)) = integral_basis(r, out.retained[c]);
    }
    if (rank(A_elim) != s_star)
        throw SingularSelectionError(
            "retained variables do not complement the first integrals");

    // x_e = A_elim^{-1} (theta - A_ret x-hat), entrywise affine.
    const int arity = out.arity();
    const Index nr = n - s_star;
    RMat theta_coeff = solve_square(A_elim, RMat::Identity(s_star, s_star));
    RMat ret_coeff = solve_square(A_elim, RMat(-A_ret));
    for (Index e = 0; e < s_star; ++e) {
        Polynomial expr(arity);
        for (Index t = 0; t < s_star; ++t) {
            if (theta_coeff(e, t).is_zero()) continue;
            Polynomial::Monomial mono(static_cast<size_t>(arity), 0);
            mono[static_cast<size_t>(nr + m + t)] = 1;
            expr.add_term(mono, theta_coeff(e, t));
        }
        for (Index c = 0; c < nr; ++c) {
            if (ret_coeff(e, c).is_zero()) continue;
            Polynomial::Monomial mono(static_cast<size_t>(arity), 0);
            mono[static_cast<size_t>(c)] = 1;
            expr.add_term(mono, ret_coeff(e, c));
        }
        out.eliminated_expr.push_back(std::move(expr));
    }

    // Restricted right-hand side: substitute the affine expressions into the
    // mass-action monomials of the retained equations.
    const auto mats = build_matrices(net);
    std::vector<Polynomial> elim_poly = out.eliminated_expr;
    auto species_poly = [&](Index i) -> Polynomial {
        for (size_t c = 0; c < out.eliminated.size(); ++c)
            if (out.eliminated[c] == static_cast<int>(i)) return elim_poly[c];
        for (size_t c = 0; c < out.retained.size(); ++c)
            if (out.retained[c] == static_cast<int>(i))
                return Polynomial::variable(arity, static_cast<int>(c));
        throw std::logic_error("unreachable species index");
    };

    for (size_t ri = 0; ri < out.retained.size(); ++ri) {
        const Index i = out.retained[ri];
        Polynomial eq(arity);
        for (Index j = 0; j < m; ++j) {
            if (mats.N(i, j) == 0) continue;
            Polynomial term = Polynomial::constant(arity, Rational(mats.N(i, j)));
            {
                Polynomial::Monomial mono(static_cast<size_t>(arity), 0);
                mono[static_cast<size_t>(nr + j)] = 1;  // kappa_j
                Polynomial kappa(arity);
                kappa.add_term(mono, Rational(1));
                term = term * kappa;
            }
            for (Index l = 0; l < n; ++l) {
                const int e = mats.B(l, j);
                if (e == 0) continue;
                term = term * species_poly(l).pow(e);
            }
            eq += term;
        }
        out.rhs.push_back(std::move(eq));
    }
    return out;
}

namespace {

RVec assemble_point(const SccRestriction& r, const RVec& xhat0, const RateAssignment& k,
                    const RVec& theta) {
    const Index nr = static_cast<Index>(r.retained.size());
    if (xhat0.size() != nr) throw std::invalid_argument("point length mismatch");
    if (theta.size() != r.s_star) throw std::invalid_argument("theta length mismatch");
    RVec point(nr + r.m + r.s_star);
    point.head(nr) = xhat0;
    point.segment(nr, r.m) = k.values;
    point.tail(r.s_star) = theta;
    return point;
}

}  // namespace

CharPoly scc_charpoly(const SccRestriction& restriction, const RVec& xhat0,
                      const RateAssignment& k, const RVec& theta) {
    const Index nr = static_cast<Index>(restriction.retained.size());
    const RVec point = assemble_point(restriction, xhat0, k, theta);
    RMat J(nr, nr);
    for (Index i = 0; i < nr; ++i)
        for (Index j = 0; j < nr; ++j)
            J(i, j) = restriction.rhs[static_cast<size_t>(i)]
                          .derivative(static_cast<int>(j))
                          .eval(point);
    return char_poly(J);
}

std::vector<Polynomial> scc_sigma_symbolic(const SccRestriction& restriction) {
    const Index nr = static_cast<Index>(restriction.retained.size());
    PolyMatrix J(nr, nr, restriction.arity());
    for (Index i = 0; i < nr; ++i)
        for (Index j = 0; j < nr; ++j)
            J(i, j) = restriction.rhs[static_cast<size_t>(i)].derivative(static_cast<int>(j));
    std::vector<Polynomial> out;
    for (Index kk = 1; kk <= nr; ++kk)
        out.push_back(char_poly_coefficient(J, static_cast<int>(kk)));
    return out;
}

bool has_positive_left_kernel_vector(const ReactionNetwork& net) {
    const auto mats = build_matrices(net);
    const RMat N = to_rational(mats.N);
    const auto basis = left_kernel_basis(N);
    const Index s_star = static_cast<Index>(basis.size());
    const Index n = net.species_count();
    if (s_star == 0) return false;

    // Feasibility of { t : B^T t >= 1 } where rows of B are the basis; the
    // polyhedron is pointed, so it is non-empty iff some vertex works.
    RMat Bt(n, s_star);
    for (Index i = 0; i < n; ++i)
        for (Index kk = 0; kk < s_star; ++kk) Bt(i, kk) = basis[static_cast<size_t>(kk)](i);

    std::vector<int> pick(static_cast<size_t>(s_star));
    bool feasible = false;
    std::function<void(Index, int)> walk = [&](Index depth, int start) {
        if (feasible) return;
        if (depth == s_star) {
            RMat A(s_star, s_star);
            for (Index r = 0; r < s_star; ++r) A.row(r) = Bt.row(pick[static_cast<size_t>(r)]);
            if (rank(A) != s_star) return;
            RMat rhs = RMat::Constant(s_star, 1, Rational(1));
            RMat t;
            try {
                t = solve_square(A, rhs);
            } catch (const SingularSelectionError&) {
                return;
            }
            for (Index i = 0; i < n; ++i) {
                Rational v(0);
                for (Index kk = 0; kk < s_star; ++kk) v += Bt(i, kk) * t(kk, 0);
                if (v < Rational(1)) return;
            }
            feasible = true;
            return;
        }
        for (int i = start; i < static_cast<int>(n); ++i) {
            pick[static_cast<size_t>(depth)] = i;
            walk(depth + 1, i + 1);
        }
    };
    walk(0, 0);
    return feasible;
}

NearTfpvResult near_tfpv_check(const ReactionNetwork& net, const SccRestriction& restriction,
                               const RVec& xhat0, const RateAssignment& k, const RVec& theta_hat) {
    NearTfpvResult out;
    const Index nr = static_cast<Index>(restriction.retained.size());
    out.dim = nr;

    const RVec point = assemble_point(restriction, xhat0, k, theta_hat);
    out.stationary = true;
    for (const auto& p : restriction.rhs)
        out.stationary = out.stationary && p.eval(point).is_zero();
    if (!out.stationary) {
        out.verdict = "not a stationary point of the restricted system";
        return out;
    }

    const CharPoly chi = scc_charpoly(restriction, xhat0, k, theta_hat);
    out.sigma = chi.sigma;

    const Index zeros = chi.trailing_zeros();
    out.on_critical_set = zeros > 0;
    out.multiplicity_one =
        zeros >= 1 && (nr == 1 || !chi.sigma(nr - 2).is_zero());

    out.compact_scc = has_positive_left_kernel_vector(net);
    if (!out.compact_scc)
        out.notes.push_back(
            "stoichiometric compatibility classes are not compact (no strictly positive "
            "conservation law); the accumulation argument does not apply");

    if (zeros > 0 && zeros < nr) {
        CharPoly divided;
        divided.sigma = chi.sigma.head(nr - zeros);
        try {
            HurwitzResult hw = hurwitz_stable(divided);
            out.hurwitz_all_nonnegative = true;
            out.hurwitz_determinants = hw.determinants;
            for (size_t i = 0; i < hw.determinants.size(); ++i) {
                if (hw.determinants[i] < Rational(0)) out.hurwitz_all_nonnegative = false;
                if (hw.determinants[i].is_zero())
                    out.hurwitz_zero_positions.push_back(static_cast<Index>(i) + 1);
            }
        } catch (const DegenerateConstantTerm&) {
            out.notes.push_back("divided polynomial degenerate; Hurwitz evidence unavailable");
        }
    }

    if (!out.on_critical_set) {
        out.verdict = "not on critical set";
        return out;
    }

    out.dimension_rule_supported = nr >= 2 && nr <= 4;
    if (!out.dimension_rule_supported) {
        out.verdict = "dimension unsupported: only multiplicity and sign evidence reported";
        return out;
    }

    const auto& s = chi.sigma;
    switch (nr) {
        case 2:
            out.rule_satisfied = s(1).is_zero() && !s(0).is_zero();
            break;
        case 3:
            out.rule_satisfied = s(2).is_zero() && !s(0).is_zero() && !s(1).is_zero();
            break;
        case 4:
            out.rule_satisfied =
                s(3).is_zero() && !s(2).is_zero() && (s(0) * s(1) != s(2));
            break;
        default:
            break;
    }
    out.verdict = out.rule_satisfied ? "TFPV for dimension one"
                                     : "critical point, low-dimension rule not satisfied";
    return out;
}

}  // namespace crn
