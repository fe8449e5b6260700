#include <doctest.h>

#include "crn/exactlin.hpp"
#include "crn/graph.hpp"
#include "crn/parser.hpp"
#include "test_helpers.hpp"

using namespace crn;
using crn::testing::load_fixture;
using crn::testing::random_rational_vector;

TEST_CASE("compinh structure summary") {
    const auto s = structure(load_fixture("compinh"));
    CHECK(s.d == 5);
    CHECK(s.components == 2);
    CHECK(s.codimension == 3);
    CHECK(s.deficiency == 0);
    CHECK(s.weakly_reversible);
}

TEST_CASE("net1 has one component and two terminal strong components") {
    const auto net = load_fixture("net1");
    const auto s = structure(net);
    CHECK(s.components == 1);
    CHECK(s.terminal_sccs == 2);
    CHECK_FALSE(s.weakly_reversible);
    CHECK_FALSE(s.one_terminal_per_component);
    // complexes: X1, 2X1, 0, X2 -> terminal SCCs {2X1} and {0}
    CHECK(s.terminal_members == std::vector<std::vector<int>>{{1}, {2}});
    CHECK(s.zero_complex_present);
    CHECK(s.zero_in_terminal);
}

TEST_CASE("lin3 has one terminal component and codimension 1") {
    const auto s = structure(load_fixture("lin3"));
    CHECK(s.terminal_sccs == 1);
    CHECK(s.codimension == 1);
    CHECK(s.weakly_reversible);
}

TEST_CASE("mm_rev subnetwork with the first pair off") {
    const auto net = load_fixture("mm_rev");
    RVec k = RVec::Zero(4);
    k(0) = Rational(1);
    k(1) = Rational(1);
    const auto sub = subnetwork(net, RateAssignment::from_vector(net, k));
    CHECK(sub.complex_count() == net.complex_count());  // isolated nodes stay
    CHECK(sub.reaction_count() == 2);
    const auto s = structure(sub);
    CHECK(s.components == 2);
    // components: {X1+X2, X3} and the isolated {X4+X2}
    CHECK(s.component_members == std::vector<std::vector<int>>{{0, 1}, {2}});
}

TEST_CASE("full-support subnetwork is the identity") {
    const auto net = load_fixture("futile");
    const auto sub = subnetwork(net, RateAssignment::constant(net, Rational(1)));
    CHECK(sub.reaction_count() == net.reaction_count());
    CHECK(sub.complexes() == net.complexes());
    CHECK(sub.species() == net.species());
}

TEST_CASE("futile with the irreversible steps off becomes weakly reversible") {
    const auto net = load_fixture("futile");
    RVec k = RVec::Constant(6, Rational(1));
    k(2) = Rational(0);  // k3
    k(5) = Rational(0);  // k6
    const auto s = structure(subnetwork(net, RateAssignment::from_vector(net, k)));
    CHECK(s.weakly_reversible);
    CHECK(s.components == 4);
    CHECK(s.deficiency == 0);
    CHECK(s.codimension == 4);
}

TEST_CASE("terminal count dominates the component count") {
    for (const char* name :
         {"mm_rev", "mm_irrev", "futile", "compinh", "lin3", "net1", "minus", "kinase"}) {
        const auto s = structure(load_fixture(name));
        CHECK(s.terminal_sccs >= s.components);
        CHECK(s.deficiency >= 0);
        if (s.weakly_reversible) CHECK(s.terminal_sccs == s.components);
    }
}

TEST_CASE("laplacian kernel dimension equals the number of terminal components") {
    std::mt19937_64 rng(53);
    for (const char* name : {"mm_rev", "futile", "compinh", "lin3", "net1", "kinase"}) {
        const auto net = load_fixture(name);
        const auto s = structure(net);
        for (int rep = 0; rep < 20; ++rep) {
            const RateAssignment k{random_rational_vector(rng, net.reaction_count(), true)};
            CHECK(static_cast<int>(kernel_basis(laplacian(net, k)).size()) == s.terminal_sccs);
        }
    }
}

TEST_CASE("positive laplacian kernel vectors exist exactly for weak reversibility") {
    std::mt19937_64 rng(59);
    for (const char* name : {"mm_rev", "compinh", "lin3", "futile", "net1", "kinase"}) {
        const auto net = load_fixture(name);
        const auto s = structure(net);
        const RateAssignment k{random_rational_vector(rng, net.reaction_count(), true)};
        const auto basis = kernel_basis(laplacian(net, k));
        if (s.weakly_reversible) {
            // Assemble a positive vector from per-component kernels.
            RVec psi = RVec::Zero(net.complex_count());
            const RMat A = laplacian(net, k);
            for (const auto& members : s.component_members) {
                if (members.size() == 1) {
                    psi(members[0]) = Rational(1);
                    continue;
                }
                RMat block(static_cast<Index>(members.size()), static_cast<Index>(members.size()));
                for (size_t a = 0; a < members.size(); ++a)
                    for (size_t b = 0; b < members.size(); ++b)
                        block(static_cast<Index>(a), static_cast<Index>(b)) =
                            A(members[a], members[b]);
                const auto gen = kernel_basis(block);
                REQUIRE(gen.size() == 1);
                for (size_t a = 0; a < members.size(); ++a) {
                    CHECK(gen[0](static_cast<Index>(a)) > Rational(0));
                    psi(members[a]) = gen[0](static_cast<Index>(a));
                }
            }
            const RVec im = laplacian(net, k) * psi;
            for (Index j = 0; j < im.size(); ++j) CHECK(im(j) == Rational(0));
        } else {
            // Every kernel vector vanishes outside the terminal SCCs, so some
            // coordinate is zero across the whole basis.
            std::vector<bool> in_terminal(static_cast<size_t>(net.complex_count()), false);
            for (const auto& t : s.terminal_members)
                for (int j : t) in_terminal[static_cast<size_t>(j)] = true;
            bool some_uncovered = false;
            for (Index j = 0; j < net.complex_count(); ++j) {
                if (in_terminal[static_cast<size_t>(j)]) continue;
                some_uncovered = true;
                for (const auto& v : basis) CHECK(v(j) == Rational(0));
            }
            CHECK(some_uncovered);
        }
    }
}

TEST_CASE("subnetwork deficiency never exceeds the network deficiency") {
    std::mt19937_64 rng(61);
    for (const char* name : {"mm_rev", "futile", "compinh", "kinase", "minus"}) {
        const auto net = load_fixture(name);
        const auto s = structure(net);
        const Index m = net.reaction_count();
        for (int rep = 0; rep < 30; ++rep) {
            std::vector<bool> keep(static_cast<size_t>(m));
            for (Index j = 0; j < m; ++j) keep[static_cast<size_t>(j)] = rng() % 2 == 0;
            const auto ss = structure(subnetwork(net, keep));
            CHECK(ss.deficiency <= s.deficiency);
            CHECK(ss.deficiency >= 0);
        }
    }
}
