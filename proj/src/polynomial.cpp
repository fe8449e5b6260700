#include "crn/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace crn {

Polynomial Polynomial::constant(int arity, const Rational& c) {
    Polynomial p(arity);
    p.add_term(Monomial(static_cast<size_t>(arity), 0), c);
    return p;
}

Polynomial Polynomial::variable(int arity, int index) {
    if (index < 0 || index >= arity) throw std::out_of_range("Polynomial::variable index");
    Polynomial p(arity);
    Monomial mono(static_cast<size_t>(arity), 0);
    mono[static_cast<size_t>(index)] = 1;
    p.add_term(mono, Rational(1));
    return p;
}

int Polynomial::total_degree() const {
    int deg = 0;
    for (const auto& [mono, coeff] : terms_)
        deg = std::max(deg, std::accumulate(mono.begin(), mono.end(), 0));
    return deg;
}

void Polynomial::add_term(const Monomial& mono, const Rational& coeff) {
    if (coeff.is_zero()) return;
    if (static_cast<int>(mono.size()) != arity_) throw std::invalid_argument("monomial arity mismatch");
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(mono, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial out = *this;
    out += o;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [mono, coeff] : o.terms_) add_term(mono, coeff);
    return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial out = *this;
    out -= o;
    return out;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [mono, coeff] : o.terms_) add_term(mono, -coeff);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
    Polynomial out(arity_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial mono(ma);
            for (size_t i = 0; i < mono.size(); ++i) mono[i] += mb[i];
            out.add_term(mono, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(arity_);
    for (const auto& [mono, coeff] : terms_) out.add_term(mono, -coeff);
    return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial out(arity_);
    if (c.is_zero()) return out;
    for (const auto& [mono, coeff] : terms_) out.add_term(mono, coeff * c);
    return out;
}

Polynomial Polynomial::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    Polynomial out = constant(arity_, Rational(1));
    for (int i = 0; i < e; ++i) out = out * (*this);
    return out;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial out(arity_);
    for (const auto& [mono, coeff] : terms_) {
        const int e = mono[static_cast<size_t>(var)];
        if (e == 0) continue;
        Monomial m(mono);
        m[static_cast<size_t>(var)] -= 1;
        out.add_term(m, coeff * Rational(e));
    }
    return out;
}

Polynomial Polynomial::substitute(int var, const Polynomial& value) const {
    if (value.arity_ != arity_) throw std::invalid_argument("polynomial arity mismatch");
    Polynomial out(arity_);
    for (const auto& [mono, coeff] : terms_) {
        const int e = mono[static_cast<size_t>(var)];
        Monomial rest(mono);
        rest[static_cast<size_t>(var)] = 0;
        Polynomial factor(arity_);
        factor.add_term(rest, coeff);
        out += factor * value.pow(e);
    }
    return out;
}

Rational Polynomial::eval(const RVec& point) const {
    if (point.size() != arity_) throw std::invalid_argument("evaluation point arity mismatch");
    Rational out(0);
    for (const auto& [mono, coeff] : terms_) {
        Rational term = coeff;
        for (size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0) continue;
            term *= point(static_cast<Index>(i)).pow(mono[i]);
        }
        out += term;
    }
    return out;
}

bool Polynomial::sign_definite() const {
    if (terms_.empty()) return false;
    const int s = terms_.begin()->second.sign();
    for (const auto& [mono, coeff] : terms_)
        if (coeff.sign() != s) return false;
    return true;
}

bool Polynomial::coefficients_nonnegative() const {
    for (const auto& [mono, coeff] : terms_)
        if (coeff.sign() < 0) return false;
    return true;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    // Sorted by total degree descending, lexicographic within a degree.
    std::vector<const std::pair<const Monomial, Rational>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        int da = std::accumulate(a->first.begin(), a->first.end(), 0);
        int db = std::accumulate(b->first.begin(), b->first.end(), 0);
        if (da != db) return da > db;
        return a->first > b->first;
    });

    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        const auto& [mono, coeff] = *t;
        Rational c = coeff;
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
        bool has_vars = std::any_of(mono.begin(), mono.end(), [](int e) { return e > 0; });
        bool printed = false;
        if (c != Rational(1) || !has_vars) {
            os << c.str();
            printed = true;
        }
        for (size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0) continue;
            if (printed) os << "*";
            os << names.at(i);
            if (mono[i] > 1) os << "^" << mono[i];
            printed = true;
        }
    }
    return os.str();
}

PolyMatrix::PolyMatrix(Index rows, Index cols, int arity)
    : rows_(rows), cols_(cols), arity_(arity),
      data_(static_cast<size_t>(rows * cols), Polynomial(arity)) {}

Polynomial PolyMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    const Index k = rows_;
    if (k == 0) return Polynomial::constant(arity_, Rational(1));
    if (k == 1) return (*this)(0, 0);
    // Laplace expansion along the first row; fine at desk scale.
    Polynomial out(arity_);
    for (Index j = 0; j < k; ++j) {
        const Polynomial& entry = (*this)(0, j);
        if (entry.is_zero()) continue;
        std::vector<int> rows_idx, cols_idx;
        for (Index r = 1; r < k; ++r) rows_idx.push_back(static_cast<int>(r));
        for (Index c = 0; c < k; ++c)
            if (c != j) cols_idx.push_back(static_cast<int>(c));
        Polynomial minor = submatrix(rows_idx, cols_idx).determinant();
        Polynomial term = entry * minor;
        if (j % 2 == 1) term = -term;
        out += term;
    }
    return out;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<int>& rows,
                                 const std::vector<int>& cols) const {
    PolyMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()), arity_);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            out(static_cast<Index>(i), static_cast<Index>(j)) = (*this)(rows[i], cols[j]);
    return out;
}

Polynomial char_poly_coefficient(const PolyMatrix& M, int k) {
    if (M.rows() != M.cols()) throw std::invalid_argument("char poly of non-square matrix");
    const int n = static_cast<int>(M.rows());
    if (k < 0 || k > n) throw std::out_of_range("char poly coefficient index");
    if (k == 0) return Polynomial::constant(M.arity(), Rational(1));

    Polynomial sum(M.arity());
    std::vector<int> idx(static_cast<size_t>(k));
    // Iterate over all k-subsets of {0..n-1}.
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        sum += M.submatrix(idx, idx).determinant();
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }
    if (k % 2 == 1) sum = -sum;
    return sum;
}

}  // namespace crn
