#include "selfsim/polynomial.hpp"
#include "selfsim/errors.hpp"

#include <sstream>

namespace selfsim {

unsigned multi_index_total(const MultiIndex& a) {
    unsigned t = 0;
    for (unsigned e : a) t += e;
    return t;
}

IntPolynomial IntPolynomial::constant(std::size_t nvars, Int c) {
    IntPolynomial p(nvars);
    p.add_term(MultiIndex(nvars, 0), c);
    return p;
}

IntPolynomial IntPolynomial::variable(std::size_t nvars, std::size_t j) {
    if (j >= nvars) throw InvalidInputError("variable index out of range");
    IntPolynomial p(nvars);
    MultiIndex a(nvars, 0);
    a[j] = 1;
    p.add_term(a, Int(1));
    return p;
}

IntPolynomial IntPolynomial::monomial(MultiIndex a, Int c) {
    IntPolynomial p(a.size());
    p.add_term(a, c);
    return p;
}

void IntPolynomial::add_term(const MultiIndex& a, const Int& c) {
    if (a.size() != nvars_) throw InvalidInputError("multi-index arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    recompute_norms();
}

void IntPolynomial::recompute_norms() {
    degree_ = kZeroDegree;
    linf_ = 0;
    l1_ = 0;
    for (const auto& [a, c] : terms_) {
        degree_ = std::max(degree_, static_cast<long>(multi_index_total(a)));
        Int ac = abs(c);
        linf_ = std::max(linf_, ac);
        l1_ += ac;
    }
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    if (nvars_ != o.nvars_) throw InvalidInputError("polynomial arity mismatch");
    IntPolynomial r(nvars_);
    r.terms_ = terms_;
    for (const auto& [a, c] : o.terms_) {
        auto [it, inserted] = r.terms_.try_emplace(a, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    r.recompute_norms();
    return r;
}

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial r(nvars_);
    for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
    r.recompute_norms();
    return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + (-o); }

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (nvars_ != o.nvars_) throw InvalidInputError("polynomial arity mismatch");
    IntPolynomial r(nvars_);
    for (const auto& [a, c] : terms_) {
        for (const auto& [b, d] : o.terms_) {
            MultiIndex ab(nvars_);
            for (std::size_t k = 0; k < nvars_; ++k) ab[k] = a[k] + b[k];
            auto [it, inserted] = r.terms_.try_emplace(std::move(ab), Int(c * d));
            if (!inserted) {
                it->second += c * d;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    r.recompute_norms();
    return r;
}

std::string IntPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [a, c] = *it;
        if (!first) out << (c > 0 ? " + " : " - ");
        else if (c < 0) out << "-";
        first = false;
        Int ac = abs(c);
        bool has_var = multi_index_total(a) > 0;
        if (ac != 1 || !has_var) out << ac.str();
        bool star = ac != 1;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0) continue;
            if (star) out << "*";
            out << "X" << j;
            if (a[j] > 1) out << "^" << a[j];
            star = true;
        }
    }
    return out.str();
}

IntPolynomial poly_product(std::span<const IntPolynomial> ps) {
    if (ps.empty()) throw PreconditionError("poly_product requires a nonempty list");
    IntPolynomial r = ps[0];
    for (std::size_t i = 1; i < ps.size(); ++i) r = r * ps[i];
    return r;
}

IntPolynomial poly_determinant(const std::vector<std::vector<IntPolynomial>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw PreconditionError("determinant of empty matrix");
    for (const auto& row : m) {
        if (row.size() != n) throw PreconditionError("determinant requires a square matrix");
    }
    if (n == 1) return m[0][0];
    const std::size_t nvars = m[0][0].nvars();
    IntPolynomial det(nvars);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<IntPolynomial>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<IntPolynomial> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) row.push_back(m[i][k]);
            }
            minor.push_back(std::move(row));
        }
        IntPolynomial term = m[0][j] * poly_determinant(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

}  // namespace selfsim
