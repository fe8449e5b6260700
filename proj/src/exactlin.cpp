#include "crn/exactlin.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace crn {

namespace {

struct Echelon {
    RMat M;                      // row echelon form (fraction-free scaling)
    std::vector<int> pivot_cols; // one per pivot row, ascending
};

// Fraction-free Gaussian elimination (Bareiss). Pivots are the first
// non-zero entries in column order, so the result is deterministic.
Echelon echelonize(RMat M) {
    const Index rows = M.rows();
    const Index cols = M.cols();
    Echelon out;
    out.pivot_cols.reserve(static_cast<size_t>(std::min(rows, cols)));
    Rational prev_pivot(1);
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index pivot_row = -1;
        for (Index i = r; i < rows; ++i) {
            if (!M(i, c).is_zero()) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row < 0) continue;
        if (pivot_row != r) M.row(pivot_row).swap(M.row(r));
        const Rational pivot = M(r, c);
        for (Index i = r + 1; i < rows; ++i) {
            for (Index j = c + 1; j < cols; ++j)
                M(i, j) = (M(i, j) * pivot - M(i, c) * M(r, j)) / prev_pivot;
            M(i, c) = Rational(0);
        }
        prev_pivot = pivot;
        out.pivot_cols.push_back(static_cast<int>(c));
        ++r;
    }
    out.M = std::move(M);
    return out;
}

}  // namespace

Index rank(const RMat& M) {
    return static_cast<Index>(echelonize(M).pivot_cols.size());
}

std::vector<RVec> kernel_basis(const RMat& M) {
    const Index cols = M.cols();
    Echelon e = echelonize(M);
    const auto& pivots = e.pivot_cols;
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;

    std::vector<RVec> basis;
    for (Index free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[static_cast<size_t>(free_col)]) continue;
        RVec v = RVec::Zero(cols);
        v(free_col) = Rational(1);
        // Back substitution over the pivot rows.
        for (Index r = static_cast<Index>(pivots.size()) - 1; r >= 0; --r) {
            const Index pc = pivots[static_cast<size_t>(r)];
            Rational acc(0);
            for (Index j = pc + 1; j < cols; ++j) {
                if (!e.M(r, j).is_zero() && !v(j).is_zero()) acc += e.M(r, j) * v(j);
            }
            v(pc) = -acc / e.M(r, pc);
        }
        basis.push_back(integer_normalized(v));
    }
    return basis;
}

std::vector<RVec> left_kernel_basis(const RMat& M) {
    return kernel_basis(RMat(M.transpose()));
}

std::vector<int> first_independent_rows(const RMat& M) {
    // Pivot rows of the transposed system are exactly the lexicographically
    // first maximal independent row set.
    Echelon e = echelonize(RMat(M.transpose()));
    return e.pivot_cols;
}

Index CharPoly::trailing_zeros() const {
    Index z = 0;
    for (Index i = sigma.size() - 1; i >= 0; --i) {
        if (!sigma(i).is_zero()) break;
        ++z;
    }
    return z;
}

CharPoly char_poly(const RMat& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("char_poly: matrix not square");
    const Index n = M.rows();
    CharPoly out;
    out.sigma = RVec::Zero(n);
    RMat Mk = RMat::Zero(n, n);  // running auxiliary matrix M_k
    for (Index k = 1; k <= n; ++k) {
        if (k == 1) {
            Mk = M;
        } else {
            for (Index i = 0; i < n; ++i) Mk(i, i) += out.sigma(k - 2);
            Mk = RMat(M * Mk);
        }
        Rational trace(0);
        for (Index i = 0; i < n; ++i) trace += Mk(i, i);
        out.sigma(k - 1) = -trace / Rational(static_cast<long long>(k));
    }
    return out;
}

CharPoly divide_out(const CharPoly& p, Index s) {
    const Index n = p.sigma.size();
    if (s < 0 || s > n) throw std::invalid_argument("divide_out: bad power");
    for (Index i = n - s; i < n; ++i)
        if (!p.sigma(i).is_zero())
            throw std::invalid_argument("divide_out: polynomial not divisible by tau^s");
    CharPoly out;
    out.sigma = p.sigma.head(n - s);
    if (out.sigma.size() > 0 && out.sigma(out.sigma.size() - 1).is_zero())
        throw DegenerateConstantTerm("constant term of the divided polynomial is zero");
    return out;
}

HurwitzResult hurwitz_stable(const CharPoly& p) {
    const Index k = p.sigma.size();
    HurwitzResult out;
    if (k == 0) {
        out.stable = true;  // empty product of roots
        return out;
    }
    if (p.sigma(k - 1).is_zero())
        throw DegenerateConstantTerm("Hurwitz test not applicable: zero constant term");

    auto coeff = [&](Index i) -> Rational {  // a_0 = 1, a_1..a_k = sigma
        if (i < 0 || i > k) return Rational(0);
        if (i == 0) return Rational(1);
        return p.sigma(i - 1);
    };
    RMat H(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) H(i, j) = coeff(2 * (j + 1) - (i + 1));

    out.stable = true;
    for (Index t = 1; t <= k; ++t) {
        RMat lead = H.topLeftCorner(t, t);
        // Determinant via the fraction-free echelon form: product of pivots
        // corrected by the Bareiss scaling telescopes to det itself for full
        // rank; compute directly by expansion through char_poly-free route.
        // Small sizes here, Laplace is fine.
        std::function<Rational(const RMat&)> det = [&](const RMat& A) -> Rational {
            const Index d = A.rows();
            if (d == 0) return Rational(1);
            if (d == 1) return A(0, 0);
            if (d == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
            Rational acc(0);
            for (Index j = 0; j < d; ++j) {
                if (A(0, j).is_zero()) continue;
                RMat sub(d - 1, d - 1);
                for (Index r = 1; r < d; ++r) {
                    Index cc = 0;
                    for (Index c = 0; c < d; ++c) {
                        if (c == j) continue;
                        sub(r - 1, cc++) = A(r, c);
                    }
                }
                Rational term = A(0, j) * det(sub);
                if (j % 2 == 1) term = -term;
                acc += term;
            }
            return acc;
        };
        Rational d = det(lead);
        out.determinants.push_back(d);
        if (d <= Rational(0)) out.stable = false;
    }
    return out;
}

namespace {

struct Ray {
    RVec v;                 // non-negative, integer-normalized
    std::set<int> zeros;    // active inequality constraints x_i = 0
};

std::set<int> zero_set(const RVec& v) {
    std::set<int> out;
    for (Index i = 0; i < v.size(); ++i)
        if (v(i).is_zero()) out.insert(static_cast<int>(i));
    return out;
}

}  // namespace

RMat extreme_rays(const RMat& N) {
    const Index m = N.cols();
    if (m > 24) throw SizeLimitError("extreme_rays: more than 24 reactions");

    std::vector<Ray> rays;
    rays.reserve(static_cast<size_t>(m));
    for (Index i = 0; i < m; ++i) {
        RVec e = RVec::Zero(m);
        e(i) = Rational(1);
        rays.push_back({e, zero_set(e)});
    }

    // Process only rank-many independent rows; redundant hyperplanes would
    // just repeat work.
    std::vector<int> rows = first_independent_rows(N);
    for (int row : rows) {
        RVec a = N.row(row).transpose();
        std::vector<Ray> zero, plus, minus;
        std::vector<Rational> plus_val, minus_val;
        for (auto& r : rays) {
            Rational val = a.dot(r.v);
            if (val.is_zero())
                zero.push_back(std::move(r));
            else if (val > Rational(0)) {
                plus.push_back(std::move(r));
                plus_val.push_back(val);
            } else {
                minus.push_back(std::move(r));
                minus_val.push_back(val);
            }
        }
        // Adjacency (Fukuda-Prodon): r+ and r- combine iff no third ray's
        // zero set contains the intersection of theirs.
        auto adjacent = [&](const Ray& r1, const Ray& r2) {
            std::set<int> common;
            std::set_intersection(r1.zeros.begin(), r1.zeros.end(), r2.zeros.begin(),
                                  r2.zeros.end(), std::inserter(common, common.begin()));
            auto contains_common = [&](const Ray& other) {
                if (&other == &r1 || &other == &r2) return false;
                return std::includes(other.zeros.begin(), other.zeros.end(), common.begin(),
                                     common.end());
            };
            for (const auto& r : zero)
                if (contains_common(r)) return false;
            for (const auto& r : plus)
                if (contains_common(r)) return false;
            for (const auto& r : minus)
                if (contains_common(r)) return false;
            return true;
        };
        std::vector<Ray> combined;
        for (size_t p = 0; p < plus.size(); ++p) {
            for (size_t q = 0; q < minus.size(); ++q) {
                if (!adjacent(plus[p], minus[q])) continue;
                RVec combo = plus_val[p] * minus[q].v - minus_val[q] * plus[p].v;
                combo = integer_normalized(combo);
                combined.push_back({combo, zero_set(combo)});
            }
        }
        rays = std::move(zero);
        for (auto& r : combined) rays.push_back(std::move(r));
    }

    std::sort(rays.begin(), rays.end(),
              [](const Ray& a, const Ray& b) { return lex_less(a.v, b.v); });
    RMat E(m, static_cast<Index>(rays.size()));
    for (size_t j = 0; j < rays.size(); ++j) E.col(static_cast<Index>(j)) = rays[j].v;
    return E;
}

MinorReport minor_polynomials(const RMat& Nprime, const RMat& E, const RMat& B) {
    const Index s = Nprime.rows();
    const Index m = Nprime.cols();
    const Index n = B.rows();
    const int q = static_cast<int>(E.cols());
    if (E.rows() != m || B.cols() != m)
        throw std::invalid_argument("minor_polynomials: dimension mismatch");

    // Entries of N' diag(E lambda) B^T are linear in lambda.
    PolyMatrix M(s, n, q);
    for (Index i = 0; i < s; ++i) {
        for (Index l = 0; l < n; ++l) {
            Polynomial entry(q);
            for (Index j = 0; j < m; ++j) {
                Rational c = Nprime(i, j) * B(l, j);
                if (c.is_zero()) continue;
                for (int t = 0; t < q; ++t) {
                    if (E(j, t).is_zero()) continue;
                    Polynomial::Monomial mono(static_cast<size_t>(q), 0);
                    mono[static_cast<size_t>(t)] = 1;
                    entry.add_term(mono, c * E(j, t));
                }
            }
            M(i, l) = std::move(entry);
        }
    }

    MinorReport out;
    if (s == 0 || s > n) return out;
    std::vector<int> idx(static_cast<size_t>(s));
    for (Index i = 0; i < s; ++i) idx[static_cast<size_t>(i)] = static_cast<int>(i);
    std::vector<int> all_rows(static_cast<size_t>(s));
    for (Index i = 0; i < s; ++i) all_rows[static_cast<size_t>(i)] = static_cast<int>(i);
    while (true) {
        MinorPolynomial mp;
        mp.columns = idx;
        mp.poly = M.submatrix(all_rows, idx).determinant();
        mp.sign_definite = mp.poly.sign_definite();
        if (mp.sign_definite && !out.witness_columns) out.witness_columns = idx;
        out.some_sign_definite = out.some_sign_definite || mp.sign_definite;
        out.minors.push_back(std::move(mp));

        int pos = static_cast<int>(s) - 1;
        while (pos >= 0 &&
               idx[static_cast<size_t>(pos)] == static_cast<int>(n) - static_cast<int>(s) + pos)
            --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int i = pos + 1; i < static_cast<int>(s); ++i)
            idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }
    return out;
}

}  // namespace crn
