#include "selfsim/linalg.hpp"
#include "selfsim/errors.hpp"

#include <functional>

namespace selfsim {

FieldElement field_det(const FieldMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw PreconditionError("determinant of empty matrix");
    for (const auto& row : m) {
        if (row.size() != n) throw PreconditionError("determinant requires a square matrix");
    }
    if (n == 1) return m[0][0];
    const ContextPtr& ctx = m[0][0].context();
    FieldElement det = FieldElement::from_rational(ctx, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        FieldMatrix minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<FieldElement> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) row.push_back(m[i][k]);
            }
            minor.push_back(std::move(row));
        }
        FieldElement term = m[0][j] * field_det(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             const std::function<bool(const std::vector<std::size_t>&)>& fn, bool& stop) {
    if (stop) return;
    if (cur.size() == k) {
        if (fn(cur)) stop = true;
        return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, fn, stop);
        cur.pop_back();
        if (stop) return;
    }
}

}  // namespace

std::size_t rank_by_minors(const FieldMatrix& m) {
    if (m.empty() || m[0].empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    for (std::size_t k = std::min(rows, cols); k >= 1; --k) {
        bool found = false;
        std::vector<std::size_t> ri;
        bool stop = false;
        subsets(rows, k, 0, ri, [&](const std::vector<std::size_t>& rsel) {
            std::vector<std::size_t> ci;
            bool inner_stop = false;
            subsets(cols, k, 0, ci, [&](const std::vector<std::size_t>& csel) {
                FieldMatrix sub(k, std::vector<FieldElement>());
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j) sub[i].push_back(m[rsel[i]][csel[j]]);
                }
                if (field_det(sub).sign() != 0) {
                    found = true;
                    return true;
                }
                return false;
            }, inner_stop);
            return found;
        }, stop);
        if (found) return k;
    }
    return 0;
}

std::size_t rational_row_reduction_rank(std::vector<std::vector<Rat>> m) {
    if (m.empty() || m[0].empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[rank][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

FieldElement gram_det(const FieldMatrix& rows) {
    if (rows.empty()) throw PreconditionError("Gram determinant of empty family");
    const std::size_t k = rows.size(), dim = rows[0].size();
    const ContextPtr& ctx = rows[0][0].context();
    FieldMatrix g(k, std::vector<FieldElement>(k, FieldElement::from_rational(ctx, Rat(0))));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            FieldElement dot = FieldElement::from_rational(ctx, Rat(0));
            for (std::size_t l = 0; l < dim; ++l) dot = dot + rows[i][l] * rows[j][l];
            g[i][j] = dot;
            g[j][i] = std::move(dot);
        }
    }
    return field_det(g);
}

}  // namespace selfsim
