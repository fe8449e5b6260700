#include <doctest.h>

#include "crn/ltc.hpp"
#include "crn/polynomial.hpp"
#include "test_helpers.hpp"

using namespace crn;
using crn::testing::load_fixture;
using crn::testing::random_rational;
using crn::testing::random_rational_vector;

namespace {

std::vector<std::vector<int>> set_list(const LtcResult& r) {
    std::vector<std::vector<int>> out;
    for (const auto& s : r.sets) out.push_back(s.species);
    return out;
}

/// Brute-force LTC oracle over the symbolic right-hand side: zeroing the
/// subset must annihilate every polynomial identically (kappa symbolic).
std::vector<std::vector<int>> ltc_oracle(const ReactionNetwork& net) {
    const Index n = net.species_count();
    const Index m = net.reaction_count();
    const auto mats = build_matrices(net);
    const int arity = static_cast<int>(n + m);
    std::vector<Polynomial> rhs(static_cast<size_t>(n), Polynomial(arity));
    for (Index j = 0; j < m; ++j) {
        Polynomial::Monomial mono(static_cast<size_t>(arity), 0);
        for (Index i = 0; i < n; ++i) mono[static_cast<size_t>(i)] = mats.B(i, j);
        mono[static_cast<size_t>(n + j)] = 1;
        for (Index i = 0; i < n; ++i)
            if (mats.N(i, j) != 0)
                rhs[static_cast<size_t>(i)].add_term(mono, Rational(mats.N(i, j)));
    }
    std::vector<std::vector<int>> hits;
    const Polynomial zero(arity);
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {  // proper non-empty subsets
        std::vector<int> subset;
        for (Index i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(static_cast<int>(i));
        bool annihilates = true;
        for (const auto& p : rhs) {
            Polynomial q = p;
            for (int i : subset) q = q.substitute(i, zero);
            if (!q.is_zero()) {
                annihilates = false;
                break;
            }
        }
        if (annihilates) hits.push_back(subset);
    }
    // Keep the minimal ones.
    std::vector<std::vector<int>> minimal;
    for (const auto& s : hits) {
        bool dominated = false;
        for (const auto& o : hits)
            if (o.size() < s.size() && std::includes(s.begin(), s.end(), o.begin(), o.end()))
                dominated = true;
        if (!dominated) minimal.push_back(s);
    }
    std::sort(minimal.begin(), minimal.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    return minimal;
}

}  // namespace

TEST_CASE("mm_rev has the two paper LTC sets") {
    const auto res = enumerate_ltc(load_fixture("mm_rev"));
    CHECK(set_list(res) == std::vector<std::vector<int>>{{1, 2}, {0, 2, 3}});
}

TEST_CASE("mm_irrev LTC sets contain X3 and one of X1, X2") {
    // X3 is a singleton reactant complex, so it sits in every LTC set; the
    // other reactant complex X1 + X2 forces one of its two species.
    const auto res = enumerate_ltc(load_fixture("mm_irrev"));
    CHECK(set_list(res) == std::vector<std::vector<int>>{{0, 2}, {1, 2}});
}

TEST_CASE("futile has the four quadruple LTC sets") {
    const auto res = enumerate_ltc(load_fixture("futile"));
    CHECK(set_list(res) == std::vector<std::vector<int>>{
                               {0, 1, 4, 5}, {0, 3, 4, 5}, {1, 2, 4, 5}, {2, 3, 4, 5}});
}

TEST_CASE("the fully reversible futile cycle keeps only two of them") {
    const auto res = enumerate_ltc(load_fixture("futile_rev"));
    CHECK(set_list(res) == std::vector<std::vector<int>>{{0, 1, 4, 5}, {2, 3, 4, 5}});
}

TEST_CASE("inflow networks admit no LTC sets") {
    const auto res = enumerate_ltc(load_fixture("lin2_inflow"));
    CHECK(res.sets.empty());
    REQUIRE(res.warnings.size() == 1);
    CHECK(res.warnings[0].find("constant monomial") != std::string::npos);
}

TEST_CASE("enumerate_ltc equals the symbolic brute-force oracle") {
    for (const char* name :
         {"mm_rev", "mm_irrev", "futile", "futile_rev", "compinh", "lin3", "minus", "kinase"}) {
        CAPTURE(name);
        const auto net = load_fixture(name);
        CHECK(set_list(enumerate_ltc(net)) == ltc_oracle(net));
    }
}

TEST_CASE("every witness omega certifies its set") {
    for (const char* name : {"mm_rev", "futile", "compinh", "kinase"}) {
        const auto net = load_fixture(name);
        const auto mats = build_matrices(net);
        const IMat Ystar = mats.reactant_complex_matrix();
        for (const auto& set : enumerate_ltc(net).sets) {
            const IVec products = Ystar.transpose() * set.omega;
            for (Index j = 0; j < products.size(); ++j) CHECK(products(j) > 0);
            CHECK(support(to_rational(set.omega)) == set.species);
        }
    }
}

TEST_CASE("non-minimal sets appear only behind the flag") {
    const auto net = load_fixture("mm_rev");
    const auto all = enumerate_ltc(net, true);
    CHECK(all.sets.size() > 2);
    size_t minimal_count = 0;
    for (const auto& s : all.sets) {
        if (s.minimal) ++minimal_count;
        CHECK(is_ltc_set(net, s.species));
        CHECK(s.species.size() < 4);  // proper subsets only
    }
    CHECK(minimal_count == 2);
}

TEST_CASE("first integral links on the futile cycle") {
    const auto net = load_fixture("futile");
    const auto res = first_integral_links(net);
    CHECK(res.one_terminal_per_component);

    RVec alpha_full(6);
    alpha_full << Rational(1), Rational(1), Rational(0), Rational(0), Rational(1), Rational(1);
    bool found_full = false, found_partial = false;
    for (const auto& link : res.links) {
        if (link.alpha == alpha_full) {  // x1 + x2 + x5 + x6
            found_full = true;
            CHECK(link.decomposable);
            REQUIRE(link.ell.size() == 2);
            CHECK(link.ell[0] == Rational(1));
            CHECK(link.ell[1] == Rational(1));
            CHECK(link.ltc_implied);
        }
        if (link.supp == std::vector<int>{0, 4}) {  // x1 + x5
            found_partial = true;
            CHECK(link.decomposable);
            bool has_zero = false;
            for (const auto& l : link.ell) has_zero = has_zero || l.is_zero();
            CHECK(has_zero);
            CHECK_FALSE(link.ltc_implied);
        }
    }
    CHECK(found_full);
    CHECK(found_partial);
}

TEST_CASE("first integral links on mm_rev confirm the enzyme conservation") {
    const auto res = first_integral_links(load_fixture("mm_rev"));
    bool found = false;
    for (const auto& link : res.links) {
        if (link.supp == std::vector<int>{1, 2}) {
            found = true;
            CHECK(link.ltc_implied);
        }
    }
    CHECK(found);
}

TEST_CASE("the experimental converse check finds integrals inside mm_rev LTC sets") {
    // One component, one terminal SCC: the converse question applies, and
    // both minimal LTC sets support a conservation law.
    const auto res = first_integral_links(load_fixture("mm_rev"));
    REQUIRE(res.converse_applicable);
    REQUIRE(res.converse.size() == 2);
    for (const auto& entry : res.converse) CHECK(entry.integral_exists);

    // Two components: not applicable.
    CHECK_FALSE(first_integral_links(load_fixture("compinh")).converse_applicable);

    // With intermediate degradation the only integral is mixed-sign, so the
    // LTC set {X2, X3} supports none.
    const auto degraded = parse(
        "X1 + X2 <-> X3 ; k1, km1\n"
        "X3 <-> X4 + X2 ; k2, km2\n"
        "X3 -> 0 ; k3");
    const auto deg = first_integral_links(degraded);
    REQUIRE(deg.converse_applicable);
    for (const auto& entry : deg.converse)
        if (entry.ltc_species == std::vector<int>{1, 2}) CHECK_FALSE(entry.integral_exists);
}

TEST_CASE("scaling mm_rev by the enzyme set reproduces the slow-fast split") {
    const auto net = load_fixture("mm_rev");
    const auto sys = scale(net, {1, 2});
    CHECK(sys.scaled_species == std::vector<int>{1, 2});
    CHECK(sys.unscaled_species == std::vector<int>{0, 3});
    CHECK(sys.eps_reactions.empty());

    for (const auto& eq : sys.equations) {
        const bool fast = eq.species == 1 || eq.species == 2;
        CHECK(eq.starred == fast);
        CHECK(eq.eps_prefactor == !fast);
        for (const auto& t : eq.terms) CHECK(t.eps_power == 0);  // quadratic kinetics, one eps each
    }

    // phi1 = x2 + x3 transports to the fast block, phi2 = x1 + x3 + x4 does not.
    bool saw_fast = false, saw_slow = false;
    for (const auto& ci : sys.integrals) {
        const auto supp = support(ci.alpha);
        if (ci.fast_attached) {
            saw_fast = true;
            for (int i : supp) CHECK((i == 1 || i == 2));
        } else {
            saw_slow = true;
        }
    }
    CHECK(saw_fast);
    CHECK(saw_slow);
}

TEST_CASE("scaling rejects non-LTC sets") {
    const auto net = load_fixture("mm_rev");
    CHECK_THROWS_AS(scale(net, {}), NotLtcError);
    CHECK_THROWS_AS(scale(net, {0}), NotLtcError);
    CHECK_THROWS_AS(scale(net, {0, 1, 2, 3}), NotLtcError);  // not proper
}

TEST_CASE("partial scaling of mm_rev with slow complex formation") {
    const auto net = load_fixture("mm_rev");
    // k1 and km2 off, x3 scaled: the fast equation keeps all four reactions
    // at order eps^0.
    const auto sys = partial_scale(net, {0, 3}, {2});
    CHECK(sys.eps_reactions == std::vector<int>{0, 3});
    for (const auto& eq : sys.equations) {
        CHECK(eq.starred == (eq.species == 2));
        for (const auto& t : eq.terms) {
            CHECK(t.eps_power == 0);
            CHECK(t.kappa_starred == (t.reaction == 0 || t.reaction == 3));
        }
    }
    const std::string listing = system_listing(sys, net);
    CHECK(listing.find("X3*' = k1* X1 X2 - km1 X3* - k2 X3* + km2* X2 X4") != std::string::npos);
    CHECK(listing.find("X1' = eps * ( -k1* X1 X2 + km1 X3* )") != std::string::npos);
}

TEST_CASE("partial scaling of mm_rev with slow complex degradation") {
    const auto net = load_fixture("mm_rev");
    // km1 and k2 off, x2 scaled.
    const auto sys = partial_scale(net, {1, 2}, {1});
    const std::string listing = system_listing(sys, net);
    CHECK(listing.find("X2*' = -k1 X1 X2* + km1* X3 + k2* X3 - km2 X2* X4") != std::string::npos);
    CHECK(listing.find("X3' = eps * ( k1 X1 X2* - km1* X3 - k2* X3 + km2 X2* X4 )") !=
          std::string::npos);
}

TEST_CASE("degenerate partial scalings are rejected") {
    const auto net = load_fixture("mm_rev");
    CHECK_THROWS_AS(partial_scale(net, {0, 1, 2, 3}, {2}), BadSupportError);
    CHECK_THROWS_AS(partial_scale(net, {}, {1, 2}), BadSupportError);
    CHECK_THROWS_AS(partial_scale(net, {0}, {2}), NotLtcError);  // x3 misses X4+X2 -> X3
}

TEST_CASE("unscaling the slow-fast system reproduces the vector field exactly") {
    std::mt19937_64 rng(83);
    const auto net = load_fixture("mm_rev");
    const std::vector<SlowFastSystem> systems{
        scale(net, {1, 2}),
        scale(net, {0, 2, 3}),
        partial_scale(net, {0, 3}, {2}),
        partial_scale(net, {1, 2}, {1}),
    };
    for (const auto& sys : systems) {
        for (int rep = 0; rep < 10; ++rep) {
            const RateAssignment k{random_rational_vector(rng, 4, true)};
            const RVec x = random_rational_vector(rng, 4, true);
            const Rational eps = random_rational(rng, 6, 4, true);
            const RVec lhs = eval_unscaled(sys, net, k, x, eps);
            const RVec rhs = rhs_eval(net, k, x);
            for (Index i = 0; i < 4; ++i) CHECK(lhs(i) == rhs(i));
        }
    }
}

TEST_CASE("attached first integrals are conserved by the fast subsystem") {
    std::mt19937_64 rng(89);
    const auto net = load_fixture("mm_rev");
    const auto sys = scale(net, {1, 2});
    for (const auto& ci : sys.integrals) {
        if (!ci.fast_attached) continue;
        // d/dt (alpha . u1*) along the eps^0 fast field vanishes at random
        // points, as an exact identity.
        for (int rep = 0; rep < 10; ++rep) {
            const RateAssignment k{random_rational_vector(rng, 4, true)};
            const RVec x = random_rational_vector(rng, 4, true);  // starred values
            Rational derivative(0);
            for (const auto& eq : sys.equations) {
                if (!eq.starred) continue;
                if (ci.alpha(eq.species).is_zero()) continue;
                Rational value(0);
                for (const auto& t : eq.terms) {
                    if (t.eps_power != 0) continue;  // fast field at eps = 0
                    Rational term = t.coeff * k.values(t.reaction);
                    for (Index l = 0; l < 4; ++l)
                        if (t.expo(l) != 0) term *= x(l).pow(t.expo(l));
                    value += term;
                }
                derivative += ci.alpha(eq.species) * value;
            }
            CHECK(derivative == Rational(0));
        }
    }
}
