#include "crn/tfpv.hpp"

#include <algorithm>
#include <bit>

#include "crn/polynomial.hpp"

namespace crn {

std::string justification_name(Justification j) {
    switch (j) {
        case Justification::DeficiencyZeroWR: return "DeficiencyZeroWR";
        case Justification::ComplexBalancedWR: return "ComplexBalancedWR";
        case Justification::FirstOrderTerminal: return "FirstOrderTerminal";
        case Justification::PointVerified: return "PointVerified";
    }
    return "?";
}

std::string verdict_name(PrecheckVerdict v) {
    switch (v) {
        case PrecheckVerdict::ExcludedByMinors: return "ExcludedByMinors";
        case PrecheckVerdict::ExcludedByInjectivity: return "ExcludedByInjectivity";
        case PrecheckVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

std::vector<int> mask_to_offset(unsigned mask, Index m) {
    std::vector<int> out;
    for (Index j = 0; j < m; ++j)
        if (mask & (1u << j)) out.push_back(static_cast<int>(j));
    return out;
}

std::vector<bool> keep_mask(unsigned off_mask, Index m) {
    std::vector<bool> keep(static_cast<size_t>(m), true);
    for (Index j = 0; j < m; ++j)
        if (off_mask & (1u << j)) keep[static_cast<size_t>(j)] = false;
    return keep;
}

bool strict_subset(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() >= b.size()) return false;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void apply_minimality(std::vector<TfpvCertificate>& certs, bool require_same_partition) {
    std::vector<TfpvCertificate> kept;
    for (const auto& c : certs) {
        bool dominated = false;
        for (const auto& other : certs) {
            if (!strict_subset(other.off_set, c.off_set)) continue;
            if (require_same_partition) {
                if (other.sub_summary.component_members == c.sub_summary.component_members) {
                    dominated = true;
                    break;
                }
            } else if (other.dimension == c.dimension) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(c);
    }
    certs = std::move(kept);
}

void sort_certificates(std::vector<TfpvCertificate>& certs) {
    std::sort(certs.begin(), certs.end(), [](const TfpvCertificate& a, const TfpvCertificate& b) {
        if (a.dimension != b.dimension) return a.dimension < b.dimension;
        return a.off_set < b.off_set;
    });
}

std::vector<std::string> off_labels(const ReactionNetwork& net, const std::vector<int>& off) {
    std::vector<std::string> out;
    for (int j : off) out.push_back(net.reactions()[static_cast<size_t>(j)].label);
    return out;
}

/// Rate assignment for the subnetwork complement of `off`, read from the
/// network's bindings; empty when any in-support label is unbound or zero.
std::optional<RateAssignment> bound_rates_for_support(const ReactionNetwork& net,
                                                      const std::vector<bool>& keep) {
    RVec values = RVec::Zero(net.reaction_count());
    for (Index j = 0; j < net.reaction_count(); ++j) {
        if (!keep[static_cast<size_t>(j)]) continue;
        auto it = net.rate_values().find(net.reactions()[static_cast<size_t>(j)].label);
        if (it == net.rate_values().end() || it->second <= Rational(0)) return std::nullopt;
        values(j) = it->second;
    }
    return RateAssignment{std::move(values)};
}

}  // namespace

EnumerationResult enumerate_structural_tfpv(const ReactionNetwork& net, int max_off) {
    const Index m = net.reaction_count();
    const Index n = net.species_count();
    const Index d = net.complex_count();
    if (m > 20) throw SizeLimitError("enumerate_structural_tfpv: more than 20 reactions");
    if (max_off < 0) max_off = static_cast<int>(m) - 1;
    max_off = std::min(max_off, static_cast<int>(m));

    EnumerationResult result;
    const StructureSummary full = structure(net);
    result.theorem39_mode = full.weakly_reversible && full.deficiency == 0;
    if (!result.theorem39_mode)
        result.warnings.push_back(
            "network is not weakly reversible with deficiency zero; certificates require "
            "complex-balancing of the subnetwork");

    const unsigned total = 1u << m;
    for (unsigned mask = 1; mask < total; ++mask) {
        if (std::popcount(mask) > max_off) continue;
        const auto keep = keep_mask(mask, m);
        const ReactionNetwork sub = subnetwork(net, keep);
        const StructureSummary ss = structure(sub);
        if (!ss.weakly_reversible) continue;

        TfpvCertificate cert;
        cert.off_set = mask_to_offset(mask, m);
        cert.off_labels = off_labels(net, cert.off_set);
        cert.sub_summary = ss;

        if (result.theorem39_mode) {
            if (ss.components <= full.components) continue;
            const Index s = n - d + ss.components;
            if (s <= full.codimension || s >= n) continue;
            cert.dimension = s;
            cert.justification = Justification::DeficiencyZeroWR;
            cert.cb_verified = true;  // deficiency zero, relations vacuous
        } else {
            const Index s = ss.codimension;
            if (s <= full.codimension || s >= n) continue;
            cert.dimension = s;
            cert.justification = Justification::ComplexBalancedWR;
            if (ss.deficiency == 0) {
                cert.cb_verified = true;
            } else if (auto k = bound_rates_for_support(net, keep)) {
                cert.cb_verified = cb_check(net, *k).balanced;
            } else {
                cert.cb_verified = std::nullopt;
            }
        }
        result.certificates.push_back(std::move(cert));
    }

    apply_minimality(result.certificates, /*require_same_partition=*/true);
    sort_certificates(result.certificates);
    if (result.certificates.empty()) result.warnings.push_back("nothing found");
    return result;
}

CbCheckResult cb_check(const ReactionNetwork& net, const RateAssignment& k) {
    const Index n = net.species_count();
    const Index d = net.complex_count();
    const ReactionNetwork sub = subnetwork(net, k.support_mask());
    const StructureSummary ss = structure(sub);
    if (!ss.weakly_reversible)
        throw NotWeaklyReversibleError("cb_check: subnetwork is not weakly reversible");

    const RMat A = laplacian(net, k);

    CbCheckResult out;
    out.psi = RVec::Zero(d);
    for (const auto& members : ss.component_members) {
        if (members.size() == 1) {
            out.psi(members[0]) = Rational(1);
            continue;
        }
        RMat block(static_cast<Index>(members.size()), static_cast<Index>(members.size()));
        for (size_t a = 0; a < members.size(); ++a)
            for (size_t b = 0; b < members.size(); ++b)
                block(static_cast<Index>(a), static_cast<Index>(b)) = A(members[a], members[b]);
        auto basis = kernel_basis(block);
        if (basis.size() != 1)
            throw NotWeaklyReversibleError("cb_check: Laplacian block kernel is not 1-dimensional");
        RVec gen = basis[0];
        // Strong connectivity makes the generator totally non-zero of one
        // sign (Matrix-Tree); normalization already fixed the sign positive.
        for (size_t a = 0; a < members.size(); ++a) out.psi(members[a]) = gen(static_cast<Index>(a));
    }

    // Exponent matrix [Y^T | component indicators], d x (n + r').
    const Index r = static_cast<Index>(ss.component_members.size());
    RMat expo(d, n + r);
    const auto mats = build_matrices(net);
    for (Index j = 0; j < d; ++j) {
        for (Index i = 0; i < n; ++i) expo(j, i) = Rational(mats.Y(i, j));
        for (Index c = 0; c < r; ++c)
            expo(j, n + c) =
                Rational(ss.component_of[static_cast<size_t>(j)] == static_cast<int>(c) ? 1 : 0);
    }

    out.balanced = true;
    for (const RVec& w : left_kernel_basis(expo)) {
        Rational product(1);
        for (Index j = 0; j < d; ++j) {
            if (w(j).is_zero()) continue;
            // Integer-normalized basis vectors keep the exponents integral.
            product *= out.psi(j).pow(w(j).num().template convert_to<long long>());
        }
        out.relations.push_back({w, product});
        if (product != Rational(1)) out.balanced = false;
    }
    return out;
}

PrecheckResult no_positive_tfpv_precheck(const ReactionNetwork& net) {
    const Index n = net.species_count();
    const Index m = net.reaction_count();
    const auto mats = build_matrices(net);
    const RMat N = to_rational(mats.N);
    const RMat B = to_rational(mats.B);

    PrecheckResult out;

    const std::vector<int> rows = first_independent_rows(N);
    RMat Nprime(static_cast<Index>(rows.size()), m);
    for (size_t i = 0; i < rows.size(); ++i) Nprime.row(static_cast<Index>(i)) = N.row(rows[i]);

    const RMat E = extreme_rays(N);
    const Index q = E.cols();
    out.ray_count = q;

    bool rows_nonzero = q > 0;
    for (Index j = 0; j < m && rows_nonzero; ++j) {
        bool any = false;
        for (Index t = 0; t < q; ++t) any = any || !E(j, t).is_zero();
        rows_nonzero = any;
    }
    out.lambda_nonempty = rows_nonzero;
    bool all_private = rows_nonzero;
    for (Index t = 0; t < q && all_private; ++t) {
        bool has_private = false;
        for (Index j = 0; j < m && !has_private; ++j) {
            if (E(j, t).is_zero()) continue;
            bool alone = true;
            for (Index t2 = 0; t2 < q; ++t2)
                if (t2 != t && !E(j, t2).is_zero()) alone = false;
            has_private = alone;
        }
        all_private = has_private;
    }
    out.lambda_is_positive_orthant = rows_nonzero && all_private;

    const MinorReport minors = minor_polynomials(Nprime, E, B);
    if (out.lambda_is_positive_orthant && minors.some_sign_definite) {
        out.verdict = PrecheckVerdict::ExcludedByMinors;
        out.witness_columns = minors.witness_columns;
        for (const auto& mp : minors.minors) {
            if (mp.columns == *minors.witness_columns) {
                std::vector<std::string> names;
                for (Index t = 0; t < q; ++t) names.push_back("l" + std::to_string(t + 1));
                out.witness_polynomial = mp.poly.str(names);
                out.witness_is_monomial = mp.poly.is_monomial();
                break;
            }
        }
        return out;
    }

    if (n > 6) {
        out.warnings.push_back("injectivity test skipped: more than 6 species");
        out.verdict = PrecheckVerdict::Inconclusive;
        return out;
    }

    // Symbolic Jacobian in variables [x_1..x_n, kappa_1..kappa_m].
    const int arity = static_cast<int>(n + m);
    PolyMatrix J(n, n, arity);
    for (Index j = 0; j < m; ++j) {
        for (Index l = 0; l < n; ++l) {
            const int e = mats.B(l, j);
            if (e == 0) continue;
            Polynomial::Monomial mono(static_cast<size_t>(arity), 0);
            for (Index i = 0; i < n; ++i) mono[static_cast<size_t>(i)] = mats.B(i, j);
            mono[static_cast<size_t>(l)] -= 1;
            mono[static_cast<size_t>(n + j)] = 1;  // kappa_j
            for (Index i = 0; i < n; ++i) {
                if (mats.N(i, j) == 0) continue;
                J(i, l).add_term(mono, Rational(static_cast<long long>(mats.N(i, j)) * e));
            }
        }
    }
    const Index s_star = n - rank(N);
    const Polynomial sigma = char_poly_coefficient(J, static_cast<int>(n - s_star));
    out.injectivity_test_ran = true;
    out.injectivity_coefficients_nonnegative = !sigma.is_zero() && sigma.coefficients_nonnegative();
    {
        std::vector<std::string> names;
        for (Index i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
        for (Index j = 0; j < m; ++j)
            names.push_back(net.reactions()[static_cast<size_t>(j)].label);
        out.sigma_polynomial = sigma.str(names);
    }
    if (out.injectivity_coefficients_nonnegative) {
        out.verdict = PrecheckVerdict::ExcludedByInjectivity;
        return out;
    }

    out.verdict = PrecheckVerdict::Inconclusive;
    return out;
}

PointVerification verify_tfpv_at_point(const ReactionNetwork& net, const RateAssignment& khat,
                                       const RVec& x0, Index s) {
    const Index n = net.species_count();
    PointVerification out;

    const RVec h = rhs_eval(net, khat, x0);
    out.stationary = true;
    for (Index i = 0; i < n; ++i) out.stationary = out.stationary && h(i).is_zero();

    const RMat J = jacobian_eval(net, khat, x0);
    out.jacobian_rank = rank(J);
    out.rank_matches = out.jacobian_rank == n - s;
    out.kernel_image_split = rank(RMat(J * J)) == out.jacobian_rank;

    out.char_polynomial = char_poly(J);
    out.divisible = true;
    for (Index i = n - s; i < n; ++i)
        if (!out.char_polynomial.sigma(i).is_zero()) out.divisible = false;
    if (out.divisible) {
        try {
            out.divided = divide_out(out.char_polynomial, s);
            HurwitzResult hw = hurwitz_stable(*out.divided);
            out.hurwitz_applicable = true;
            out.hurwitz_stable = hw.stable;
            out.hurwitz_determinants = hw.determinants;
        } catch (const DegenerateConstantTerm&) {
            out.hurwitz_applicable = false;
            out.notes.push_back("eigenvalue-on-axis: inconclusive");
        }
    } else {
        out.notes.push_back("characteristic polynomial is not divisible by tau^s");
    }

    const StructureSummary ss = structure(net);
    out.dimension_valid = s > ss.codimension && s < n;
    if (!out.dimension_valid && s == ss.codimension)
        out.notes.push_back("not a TFPV dimension (s must exceed s*)");

    out.all_pass = out.stationary && out.rank_matches && out.kernel_image_split &&
                   out.divisible && out.hurwitz_applicable && out.hurwitz_stable &&
                   out.dimension_valid;
    return out;
}

std::vector<TfpvCertificate> first_order_tfpv(const ReactionNetwork& net) {
    const Index m = net.reaction_count();
    const Index n = net.species_count();
    for (const auto& c : net.complexes())
        if (c.sum() > 1)
            throw NotFirstOrderError("first_order_tfpv: network has a higher-order complex");
    if (m > 20) throw SizeLimitError("first_order_tfpv: more than 20 reactions");

    const StructureSummary full = structure(net);
    const bool has_zero = full.zero_complex_present;

    std::vector<TfpvCertificate> certs;
    const unsigned total = 1u << m;
    for (unsigned mask = 1; mask < total; ++mask) {
        const auto keep = keep_mask(mask, m);
        const ReactionNetwork sub = subnetwork(net, keep);
        const StructureSummary ss = structure(sub);
        if (ss.terminal_sccs <= full.terminal_sccs) continue;
        if (has_zero && !ss.zero_in_terminal) continue;
        const Index s = ss.terminal_sccs - (has_zero ? 1 : 0);
        if (s <= full.codimension || s >= n) continue;

        TfpvCertificate cert;
        cert.off_set = mask_to_offset(mask, m);
        cert.off_labels = off_labels(net, cert.off_set);
        cert.dimension = s;
        cert.justification = Justification::FirstOrderTerminal;
        cert.sub_summary = ss;
        certs.push_back(std::move(cert));
    }

    apply_minimality(certs, /*require_same_partition=*/false);
    sort_certificates(certs);
    return certs;
}

}  // namespace crn
