#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <functional>

#include "crn/exactlin.hpp"
#include "crn/parser.hpp"
#include "test_helpers.hpp"

using namespace crn;
using crn::testing::load_fixture;
using crn::testing::random_rational;

namespace {

RMat random_matrix(std::mt19937_64& rng, Index rows, Index cols, int range = 3) {
    std::uniform_int_distribution<int> dist(-range, range);
    RMat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = Rational(dist(rng));
    return m;
}

/// Independent rank oracle: plain Gauss-Jordan with rational division and
/// largest-absolute-value pivoting (a different code path than Bareiss).
Index rank_oracle(RMat m) {
    Index r = 0;
    for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Index best = -1;
        for (Index i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero() && (best < 0 || abs(m(i, c)) > abs(m(best, c)))) best = i;
        if (best < 0) continue;
        m.row(best).swap(m.row(r));
        const Rational pivot = m(r, c);
        for (Index i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Rational factor = m(i, c) / pivot;
            m.row(i) -= factor * m.row(r);
        }
        ++r;
    }
    return r;
}

bool in_span(const std::vector<RVec>& basis, const RVec& v) {
    RMat stacked(static_cast<Index>(basis.size()) + 1, v.size());
    for (size_t i = 0; i < basis.size(); ++i) stacked.row(static_cast<Index>(i)) = basis[i].transpose();
    stacked.row(static_cast<Index>(basis.size())) = v.transpose();
    return rank(stacked) == static_cast<Index>(basis.size());
}

RVec ratvec(std::initializer_list<long long> values) {
    RVec v(static_cast<Index>(values.size()));
    Index i = 0;
    for (long long x : values) v(i++) = Rational(x);
    return v;
}

}  // namespace

TEST_CASE("left kernel of the mm_rev stoichiometric matrix") {
    const auto net = load_fixture("mm_rev");
    const RMat N = to_rational(build_matrices(net).N);
    const auto basis = left_kernel_basis(N);
    REQUIRE(basis.size() == 2);
    CHECK(in_span(basis, ratvec({0, 1, 1, 0})));
    CHECK(in_span(basis, ratvec({1, 0, 1, 1})));
}

TEST_CASE("identity matrix has an empty kernel") {
    CHECK(kernel_basis(RMat::Identity(4, 4)).empty());
}

TEST_CASE("mm_rev Laplacian kernel at unit rates is one positive ray") {
    const auto net = load_fixture("mm_rev");
    const RMat A = laplacian(net, RateAssignment::constant(net, Rational(1)));
    const auto basis = kernel_basis(A);
    REQUIRE(basis.size() == 1);
    for (Index i = 0; i < 3; ++i) CHECK(basis[0](i) > Rational(0));
    // Hand solve of the 3x3 system: generator (1, 1, 1).
    CHECK(basis[0] == ratvec({1, 1, 1}));
}

TEST_CASE("rank plus kernel dimension equals the column count") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 40; ++rep) {
        const Index rows = 1 + static_cast<Index>(rng() % 6);
        const Index cols = 1 + static_cast<Index>(rng() % 7);
        const RMat m = random_matrix(rng, rows, cols);
        const Index r = rank(m);
        CHECK(r == rank_oracle(m));
        const auto basis = kernel_basis(m);
        CHECK(r + static_cast<Index>(basis.size()) == cols);
        for (const RVec& v : basis) {
            const RVec image = m * v;
            for (Index i = 0; i < rows; ++i) CHECK(image(i) == Rational(0));
        }
    }
}

TEST_CASE("characteristic polynomial basics") {
    RMat m(2, 2);
    m << Rational(0), Rational(1), Rational(-2), Rational(-3);
    const CharPoly p = char_poly(m);
    CHECK(p.sigma == ratvec({3, 2}));

    CHECK(char_poly(RMat::Zero(3, 3)).sigma == RVec::Zero(3));
}

TEST_CASE("char poly of the mm_rev jacobian at the all-ones point") {
    const auto net = load_fixture("mm_rev");
    const RMat J =
        jacobian_eval(net, RateAssignment::constant(net, Rational(1)),
                      RVec::Constant(4, Rational(1)));
    CHECK(char_poly(J).sigma == ratvec({6, 5, 0, 0}));
}

TEST_CASE("char poly of a triangular matrix is the product of diagonal factors") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        const Index n = 2 + static_cast<Index>(rng() % 4);
        RMat m = random_matrix(rng, n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < i; ++j) m(i, j) = Rational(0);
        const CharPoly p = char_poly(m);
        // Expand prod (tau - d_i) independently.
        std::vector<Rational> coeff{Rational(1)};
        for (Index i = 0; i < n; ++i) {
            coeff.push_back(Rational(0));
            for (size_t c = coeff.size() - 1; c > 0; --c)
                coeff[c] -= m(i, i) * coeff[c - 1];
        }
        for (Index i = 0; i < n; ++i) CHECK(p.sigma(i) == coeff[static_cast<size_t>(i) + 1]);
    }
}

TEST_CASE("hurwitz determinants on the worked examples") {
    CharPoly stable;
    stable.sigma = ratvec({3, 2});  // tau^2 + 3 tau + 2
    const auto r1 = hurwitz_stable(stable);
    CHECK(r1.stable);
    REQUIRE(r1.determinants.size() == 2);
    CHECK(r1.determinants[0] == Rational(3));
    CHECK(r1.determinants[1] == Rational(6));

    CharPoly unstable;
    unstable.sigma = ratvec({-1, 2});  // tau^2 - tau + 2
    const auto r2 = hurwitz_stable(unstable);
    CHECK_FALSE(r2.stable);
    CHECK(r2.determinants[0] == Rational(-1));

    CharPoly quartic;
    quartic.sigma = ratvec({6, 5, 0, 0});  // tau^4 + 6 tau^3 + 5 tau^2
    const CharPoly divided = divide_out(quartic, 2);
    CHECK(divided.sigma == ratvec({6, 5}));
    CHECK(hurwitz_stable(divided).stable);

    CharPoly degenerate;
    degenerate.sigma = ratvec({1, 0});
    CHECK_THROWS_AS(hurwitz_stable(degenerate), DegenerateConstantTerm);
    CHECK_THROWS_AS(divide_out(quartic, 1), DegenerateConstantTerm);
    CHECK_THROWS_AS(divide_out(quartic, 3), std::invalid_argument);
}

TEST_CASE("hurwitz agrees with numerical eigenvalues of the companion matrix") {
    std::mt19937_64 rng(29);
    int done = 0;
    while (done < 60) {
        const Index deg = 2 + static_cast<Index>(rng() % 5);
        CharPoly p;
        p.sigma.resize(deg);
        for (Index i = 0; i < deg; ++i) p.sigma(i) = random_rational(rng, 10, 4);
        if (p.sigma(deg - 1).is_zero()) continue;

        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
        for (Index i = 0; i + 1 < deg; ++i) companion(i + 1, i) = 1.0;
        for (Index i = 0; i < deg; ++i) companion(0, i) = -p.sigma(i).to_double();
        const Eigen::VectorXcd roots = Eigen::EigenSolver<Eigen::MatrixXd>(companion).eigenvalues();
        double max_real = -1e300;
        for (Index i = 0; i < deg; ++i) max_real = std::max(max_real, roots(i).real());
        if (std::abs(max_real) < 1e-6) continue;  // too close to the axis to trust doubles

        CHECK(hurwitz_stable(p).stable == (max_real < -1e-9));
        ++done;
    }
}

TEST_CASE("extreme rays of the mm_rev flux cone") {
    const auto net = load_fixture("mm_rev");
    const RMat E = extreme_rays(to_rational(build_matrices(net).N));
    REQUIRE(E.cols() == 2);
    CHECK(E.col(0) == ratvec({0, 0, 1, 1}));
    CHECK(E.col(1) == ratvec({1, 1, 0, 0}));
}

TEST_CASE("a single irreversible reaction has a trivial cone") {
    const auto net = parse("X1 -> X2 ; k");
    const RMat E = extreme_rays(to_rational(build_matrices(net).N));
    CHECK(E.cols() == 0);
}

TEST_CASE("futile cone rays and their supports") {
    const auto net = load_fixture("futile");
    const RMat E = extreme_rays(to_rational(build_matrices(net).N));
    REQUIRE(E.cols() == 3);
    std::vector<std::vector<int>> supports;
    for (Index t = 0; t < 3; ++t) supports.push_back(support(E.col(t)));
    const std::vector<std::vector<int>> expected{{3, 4}, {0, 2, 3, 5}, {0, 1}};
    CHECK(supports == expected);
}

namespace {

/// Support-minimality oracle for extreme rays of {x >= 0 : N x = 0}: a
/// non-zero support is a ray support iff the kernel restricted to it is a
/// single positive line, and no proper sub-support works.
std::vector<RVec> extreme_rays_oracle(const RMat& N) {
    const Index m = N.cols();
    std::vector<RVec> rays;
    std::vector<std::vector<int>> supports;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> supp;
        for (Index j = 0; j < m; ++j)
            if (mask & (1u << j)) supp.push_back(static_cast<int>(j));
        RMat sub(N.rows(), static_cast<Index>(supp.size()));
        for (size_t c = 0; c < supp.size(); ++c) sub.col(static_cast<Index>(c)) = N.col(supp[c]);
        const auto basis = kernel_basis(sub);
        if (basis.size() != 1) continue;
        bool positive = true;
        for (Index c = 0; c < basis[0].size(); ++c) positive = positive && basis[0](c) > Rational(0);
        if (!positive) continue;
        bool minimal = true;
        for (const auto& s : supports)
            if (std::includes(supp.begin(), supp.end(), s.begin(), s.end())) minimal = false;
        if (!minimal) continue;
        supports.push_back(supp);
        RVec ray = RVec::Zero(m);
        for (size_t c = 0; c < supp.size(); ++c) ray(supp[c]) = basis[0](static_cast<Index>(c));
        rays.push_back(integer_normalized(ray));
    }
    std::sort(rays.begin(), rays.end(), lex_less);
    return rays;
}

}  // namespace

TEST_CASE("double description agrees with the support-minimality oracle") {
    std::mt19937_64 rng(37);
    auto check_net = [&](const RMat& N) {
        const RMat E = extreme_rays(N);
        const auto oracle = extreme_rays_oracle(N);
        REQUIRE(static_cast<size_t>(E.cols()) == oracle.size());
        for (Index t = 0; t < E.cols(); ++t) CHECK(E.col(t) == oracle[static_cast<size_t>(t)]);
    };
    for (const char* name : {"mm_rev", "futile", "compinh", "lin3", "net1", "minus"})
        check_net(to_rational(build_matrices(load_fixture(name)).N));
    for (int rep = 0; rep < 25; ++rep) {
        const Index rows = 1 + static_cast<Index>(rng() % 4);
        const Index cols = 1 + static_cast<Index>(rng() % 6);
        check_net(random_matrix(rng, rows, cols, 2));
    }
}

TEST_CASE("extreme rays are irredundant") {
    // No ray is a non-negative combination of the others: drop one ray and
    // show the remaining cone misses it (exhaustive basic solutions).
    const auto net = load_fixture("futile");
    const RMat E = extreme_rays(to_rational(build_matrices(net).N));
    const Index q = E.cols();
    for (Index drop = 0; drop < q; ++drop) {
        RMat rest(E.rows(), q - 1);
        Index c = 0;
        for (Index t = 0; t < q; ++t)
            if (t != drop) rest.col(c++) = E.col(t);
        // Solve rest * c = E.col(drop), c >= 0 via kernel of [rest | -target].
        RMat aug(E.rows(), q);
        aug.leftCols(q - 1) = rest;
        aug.col(q - 1) = -E.col(drop);
        bool representable = false;
        for (const RVec& v : kernel_basis(aug)) {
            if (v(q - 1).is_zero()) continue;
            const RVec coeffs = v.head(q - 1) / v(q - 1);
            bool nonneg = true;
            for (Index t = 0; t < q - 1; ++t) nonneg = nonneg && coeffs(t) >= Rational(0);
            if (nonneg) representable = true;
        }
        CHECK_FALSE(representable);
    }
}

TEST_CASE("minor polynomials of the futile fixture") {
    const auto net = load_fixture("futile");
    const auto mats = build_matrices(net);
    const RMat N = to_rational(mats.N);
    const auto rows = first_independent_rows(N);
    CHECK(rows == std::vector<int>{0, 1, 2});
    RMat Nprime(3, N.cols());
    for (size_t i = 0; i < rows.size(); ++i) Nprime.row(static_cast<Index>(i)) = N.row(rows[i]);
    const RMat E = extreme_rays(N);
    const auto report = minor_polynomials(Nprime, E, to_rational(mats.B));
    CHECK(report.minors.size() == 20);  // C(6,3)
    REQUIRE(report.witness_columns.has_value());
    CHECK(*report.witness_columns == std::vector<int>{0, 1, 4});  // species columns 1,2,5
    CHECK(report.some_sign_definite);
    // With E sorted lexicographically the witness expands to
    // -(l2+l3) l2 (l1+l2): four negative monomials, l1 l2^2 among them.
    for (const auto& mp : report.minors) {
        if (mp.columns == std::vector<int>{0, 1, 4}) {
            CHECK(mp.sign_definite);
            CHECK(mp.poly.term_count() == 4);
            Polynomial::Monomial m{1, 2, 0};
            REQUIRE(mp.poly.terms().count(m) == 1);
            CHECK(mp.poly.terms().at(m) == Rational(-1));
        }
    }
}

TEST_CASE("minor polynomials of a single reversible reaction are monomials") {
    const auto net = parse("X1 <-> X2 ; k1, k2");
    const auto mats = build_matrices(net);
    const RMat N = to_rational(mats.N);
    RMat Nprime(1, 2);
    Nprime.row(0) = N.row(first_independent_rows(N)[0]);
    const auto report = minor_polynomials(Nprime, extreme_rays(N), to_rational(mats.B));
    REQUIRE(report.minors.size() == 2);
    for (const auto& mp : report.minors) {
        CHECK(mp.poly.is_monomial());
        CHECK(mp.poly.total_degree() == 1);
    }
}

TEST_CASE("mm_rev minors include the sign-definite witness in columns 1,2") {
    const auto net = load_fixture("mm_rev");
    const auto mats = build_matrices(net);
    const RMat N = to_rational(mats.N);
    const auto rows = first_independent_rows(N);
    RMat Nprime(static_cast<Index>(rows.size()), N.cols());
    for (size_t i = 0; i < rows.size(); ++i) Nprime.row(static_cast<Index>(i)) = N.row(rows[i]);
    const auto report = minor_polynomials(Nprime, extreme_rays(N), to_rational(mats.B));
    CHECK(report.some_sign_definite);
    REQUIRE(report.witness_columns.has_value());
    CHECK(*report.witness_columns == std::vector<int>{0, 1});
    for (const auto& mp : report.minors)
        if (mp.columns == std::vector<int>{0, 1}) {
            CHECK(mp.poly.is_monomial());  // l1 l2 by direct expansion
        }
}
