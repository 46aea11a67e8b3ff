#include "selfsim/functionals.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/measure.hpp"

#include <algorithm>
#include <map>

namespace selfsim {

LinearFunctional functional_from_words(const IFSModel& model, const Word& w1, const Word& w2) {
    if (w1.size() != w2.size() || w1.empty()) {
        throw PreconditionError("functional requires nonempty words of equal length");
    }
    const ContextPtr& ctx = model.context();
    const std::size_t nvars = ctx->var_count();
    const std::size_t m = model.m();
    const long n = static_cast<long>(w1.size());
    LinearFunctional fun;
    fun.w1 = w1;
    fun.w2 = w2;
    fun.coeff_polys.assign(m, IntPolynomial(nvars));
    // P^j = sum_k ( X^alpha(prefix_k(w1)) 1{w1_k=j} - X^alpha(prefix_k(w2)) 1{w2_k=j} )
    MultiIndex a1(nvars, 0), a2(nvars, 0);
    for (std::size_t k = 0; k < w1.size(); ++k) {
        unsigned q = w1[k], l = w2[k];
        if (q >= model.map_count() || l >= model.map_count()) {
            throw InvalidInputError("word symbol out of range");
        }
        if (q >= 1) fun.coeff_polys[q - 1].add_term(a1, Int(1));
        if (l >= 1) fun.coeff_polys[l - 1].add_term(a2, Int(-1));
        ++a1[q];
        ++a2[l];
    }
    for (const IntPolynomial& p : fun.coeff_polys) {
        if (!p.in_class(Int(1), n)) {
            throw InternalError("coefficient polynomial escaped P(1,n)");
        }
        fun.coeffs.push_back(FieldElement::from_polynomial(ctx, p));
    }
    return fun;
}

FieldElement functional_value(const LinearFunctional& fun, const std::vector<FieldElement>& x) {
    if (x.size() != fun.coeffs.size()) throw PreconditionError("functional arity mismatch");
    FieldElement acc = FieldElement::from_rational(fun.coeffs[0].context(), Rat(0));
    for (std::size_t j = 0; j < x.size(); ++j) acc = acc + fun.coeffs[j] * x[j];
    return acc;
}

FieldMatrix CandidateSet::coefficient_rows() const {
    FieldMatrix rows;
    rows.reserve(members.size());
    for (const LinearFunctional& f : members) rows.push_back(f.coeffs);
    return rows;
}

namespace {

unsigned ceil_neg_log2(const Rat& delta) {
    unsigned q = 0;
    Rat p(1);
    while (p > delta) {
        p /= 2;
        ++q;
    }
    return q;
}

// Cramer solve of A u = b for square A with the given certified-nonzero
// determinant; u_k = det(A with column k replaced by b) / det(A).
std::vector<FieldElement> cramer_solve(const FieldMatrix& a, const std::vector<FieldElement>& b,
                                       const FieldElement& det_a) {
    const std::size_t k = a.size();
    FieldElement inv = det_a.inverse();
    std::vector<FieldElement> u;
    u.reserve(k);
    for (std::size_t col = 0; col < k; ++col) {
        FieldMatrix replaced = a;
        for (std::size_t i = 0; i < k; ++i) replaced[i][col] = b[i];
        u.push_back(field_det(replaced) * inv);
    }
    return u;
}

FieldMatrix select_columns(const FieldMatrix& rows, const std::vector<std::size_t>& cols) {
    FieldMatrix out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<FieldElement> sel;
        sel.reserve(cols.size());
        for (std::size_t c : cols) sel.push_back(r[c]);
        out.push_back(std::move(sel));
    }
    return out;
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k) {
            fn(cur);
            return;
        }
        for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

std::vector<std::vector<IntPolynomial>> coeff_poly_rows(const CandidateSet& s,
                                                        const std::vector<std::size_t>& row_idx) {
    std::vector<std::vector<IntPolynomial>> out;
    for (std::size_t i : row_idx) out.push_back(s.members[i].coeff_polys);
    return out;
}

std::vector<std::vector<IntPolynomial>> select_poly_columns(
    const std::vector<std::vector<IntPolynomial>>& rows, const std::vector<std::size_t>& cols) {
    std::vector<std::vector<IntPolynomial>> out;
    for (const auto& r : rows) {
        std::vector<IntPolynomial> sel;
        for (std::size_t c : cols) sel.push_back(r[c]);
        out.push_back(std::move(sel));
    }
    return out;
}

}  // namespace

CandidateSet build_candidate_set(const IFSModel& model, const Rat& delta, unsigned n,
                                 std::uint64_t budget) {
    if (!(delta > 0 && delta < 1)) throw PreconditionError("delta must lie in (0,1)");
    if (n < 1) throw PreconditionError("candidate set requires n >= 1");
    if (!model.is_normalized()) throw PreconditionError("candidate set requires a normalized model");
    if (!span_check(model)) throw PreconditionError("candidate set requires spanning translations");
    const ContextPtr& ctx = model.context();
    CandidateSet s{model};
    s.n = n;
    s.delta = delta;
    const Rat delta_n = rpow(delta, n);
    const unsigned q = ceil_neg_log2(delta);
    const Int cell_scale = ipow(Int(2), q * n);

    auto classes = lambda_classes(model, n, budget);
    std::uint64_t pair_count = 0;
    for (const LambdaClass& cls : classes) {
        const std::size_t k = cls.words.size();
        if (k < 2) continue;
        pair_count += static_cast<std::uint64_t>(k) * (k - 1);
        if (pair_count > budget) {
            throw BudgetExceededError("candidate pair enumeration exceeds budget");
        }
        std::vector<std::vector<FieldElement>> values;
        values.reserve(k);
        std::map<std::string, std::size_t> cells;
        for (const Word& w : cls.words) {
            SimilarityMap phi = compose(model, w);
            // joint-partition diagnostic: two words in one dyadic cell of the
            // scaling class force nonemptiness
            std::string key;
            for (const FieldElement& c : phi.translation) {
                key += certified_floor(c * Rat(cell_scale)).str() + "|";
            }
            auto [it, inserted] = cells.try_emplace(std::move(key), values.size());
            if (!inserted) s.entropy_deficit = true;
            values.push_back(std::move(phi.translation));
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                if (i == j) continue;
                bool keep = true;
                for (int l = 0; l < model.dim() && keep; ++l) {
                    FieldElement diff = (values[i][l] - values[j][l]).abs();
                    keep = (diff - FieldElement::from_rational(ctx, delta_n)).sign() <= 0;
                }
                if (keep) s.members.push_back(functional_from_words(model, cls.words[i], cls.words[j]));
            }
        }
    }
    return s;
}

RankReport gram_rank(const FieldMatrix& rows) {
    RankReport report;
    if (rows.empty()) return report;
    const ContextPtr& ctx = rows[0][0].context();
    report.gram_determinant = FieldElement::from_rational(ctx, Rat(1));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        FieldMatrix trial = report.basis_rows;
        trial.push_back(rows[i]);
        FieldElement g = gram_det(trial);
        if (g.sign() != 0) {
            report.basis_rows = std::move(trial);
            report.row_indices.push_back(i);
            report.gram_determinant = std::move(g);
        }
    }
    report.rank = report.basis_rows.size();

    // cross-check against exact row reduction
    bool rational = true;
    for (const auto& r : rows) {
        for (const FieldElement& e : r) rational = rational && e.is_rational();
    }
    std::size_t check;
    if (rational) {
        std::vector<std::vector<Rat>> m;
        for (const auto& r : rows) {
            std::vector<Rat> row;
            for (const FieldElement& e : r) row.push_back(e.rational());
            m.push_back(std::move(row));
        }
        check = rational_row_reduction_rank(std::move(m));
    } else {
        check = rank_by_minors(rows);
    }
    if (check != report.rank) throw InternalError("Gram rank disagrees with row-reduction rank");
    return report;
}

RankReport gram_rank(const CandidateSet& s) { return gram_rank(s.coefficient_rows()); }

FieldElement projection_residual(const RankReport& report, const std::vector<FieldElement>& x) {
    if (report.rank < 1) throw PreconditionError("projection_residual requires rank >= 1");
    if (x.size() != report.basis_rows[0].size()) throw PreconditionError("vector dimension mismatch");
    FieldMatrix extended = report.basis_rows;
    extended.push_back(x);
    FieldElement num = gram_det(extended);
    return num * report.gram_determinant.inverse();
}

std::optional<std::vector<std::vector<FieldElement>>> reconstruct_translations(const CandidateSet& s) {
    const IFSModel& model = s.model;
    const ContextPtr& ctx = model.context();
    const std::size_t m = model.m();
    const std::size_t d = static_cast<std::size_t>(model.dim());
    if (m <= d) throw PreconditionError("reconstruction requires m > d");
    // basis-at-beginning: t_j = e_j for j <= d
    for (std::size_t j = 1; j <= d; ++j) {
        for (std::size_t l = 0; l < d; ++l) {
            Rat expect = (j == l + 1) ? Rat(1) : Rat(0);
            if ((model.translation(j)[l] - FieldElement::from_rational(ctx, expect)).sign() != 0) {
                throw PreconditionError("reconstruction requires t_j = e_j for j <= d; conjugate first");
            }
        }
    }
    RankReport report = gram_rank(s);
    if (report.rank != m - d) {
        throw PreconditionError("reconstruction requires rank m - d, got " + std::to_string(report.rank));
    }
    std::vector<std::size_t> cols_j;
    for (std::size_t c = d; c < m; ++c) cols_j.push_back(c);
    FieldMatrix a_j = select_columns(report.basis_rows, cols_j);
    FieldElement det_j = field_det(a_j);
    if (det_j.sign() == 0) return std::nullopt;

    std::vector<std::vector<FieldElement>> t(m);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t l = 0; l < d; ++l) {
            t[j].push_back(FieldElement::from_rational(ctx, j == l ? Rat(1) : Rat(0)));
        }
        // e_j rows already match the model; kept for the returned matrix
    }
    for (std::size_t c : cols_j) t[c].resize(0);
    for (std::size_t l = 0; l < d; ++l) {
        std::vector<FieldElement> b;
        for (const auto& row : report.basis_rows) b.push_back(-row[l]);
        std::vector<FieldElement> u = cramer_solve(a_j, b, det_j);
        for (std::size_t k = 0; k < cols_j.size(); ++k) t[cols_j[k]].push_back(u[k]);
    }
    return t;
}

bool consistency_check(const CandidateSet& s_n, const CandidateSet& s_n1) {
    const IFSModel& model = s_n.model;
    const ContextPtr& ctx = model.context();
    const std::size_t m = model.m();
    const std::size_t d = static_cast<std::size_t>(model.dim());
    RankReport r1 = gram_rank(s_n);
    RankReport r2 = gram_rank(s_n1);
    if (r1.rank != m - d || r2.rank != m - d) {
        throw PreconditionError("consistency_check requires both sets to have rank m - d");
    }
    std::vector<std::size_t> cols_j;
    for (std::size_t c = d; c < m; ++c) cols_j.push_back(c);
    auto polys_n = coeff_poly_rows(s_n, r1.row_indices);
    auto polys_n1 = coeff_poly_rows(s_n1, r2.row_indices);
    IntPolynomial pj_n = poly_determinant(select_poly_columns(polys_n, cols_j));
    IntPolynomial pj_n1 = poly_determinant(select_poly_columns(polys_n1, cols_j));
    if (ctx->certify_sign(pj_n) == 0 || ctx->certify_sign(pj_n1) == 0) {
        throw PreconditionError("consistency_check requires a certified-nonzero column determinant");
    }
    for (std::size_t k : cols_j) {
        for (std::size_t l = 0; l < d; ++l) {
            std::vector<std::size_t> jkl;
            for (std::size_t c : cols_j) {
                if (c != k) jkl.push_back(c);
            }
            jkl.push_back(l);
            std::sort(jkl.begin(), jkl.end());
            IntPolynomial pkl_n = poly_determinant(select_poly_columns(polys_n, jkl));
            IntPolynomial pkl_n1 = poly_determinant(select_poly_columns(polys_n1, jkl));
            IntPolynomial q = pkl_n * pj_n1 - pkl_n1 * pj_n;
            if (ctx->certify_sign(q) != 0) return false;
        }
    }
    return true;
}

LiftResult lift_to_higher_dim(const CandidateSet& s, std::size_t r) {
    const IFSModel& model = s.model;
    const ContextPtr& ctx = model.context();
    const std::size_t m = model.m();
    const std::size_t d = static_cast<std::size_t>(model.dim());
    if (!(r >= 1 && r + d < m)) {
        throw PreconditionError("lift requires 1 <= r < m - d");
    }
    RankReport report = gram_rank(s);
    if (report.rank != r) {
        throw PreconditionError("candidate set rank " + std::to_string(report.rank) +
                                " does not match requested r = " + std::to_string(r));
    }
    // column set J of size r maximizing |P^J(lambda)|, ties broken
    // lexicographically by keeping the first maximizer
    std::vector<std::size_t> best_j;
    FieldElement best_abs;
    for_each_subset(m, r, [&](const std::vector<std::size_t>& cols) {
        FieldElement det = field_det(select_columns(report.basis_rows, cols));
        FieldElement a = det.abs();
        if (best_j.empty() ? a.sign() != 0 : a.compare(best_abs) > 0) {
            best_j = cols;
            best_abs = std::move(a);
        }
    });
    if (best_j.empty()) throw InternalError("independent rows admit no nonzero minor");

    LiftResult out;
    out.dprime = m - r;
    out.cramer_columns = best_j;
    std::vector<bool> in_j(m, false);
    for (std::size_t c : best_j) in_j[c] = true;
    for (std::size_t c = 0; c < m; ++c) {
        if (!in_j[c]) out.base_columns.push_back(c);
    }

    out.s.assign(m, {});
    for (std::size_t i = 0; i < out.base_columns.size(); ++i) {
        std::vector<FieldElement> e;
        for (std::size_t l = 0; l < out.dprime; ++l) {
            e.push_back(FieldElement::from_rational(ctx, i == l ? Rat(1) : Rat(0)));
        }
        out.s[out.base_columns[i]] = std::move(e);
    }
    FieldMatrix a_j = select_columns(report.basis_rows, best_j);
    FieldElement det_j = field_det(a_j);
    std::vector<std::vector<FieldElement>> solved(best_j.size());
    for (std::size_t l = 0; l < out.dprime; ++l) {
        std::vector<FieldElement> b;
        for (const auto& row : report.basis_rows) b.push_back(-row[out.base_columns[l]]);
        std::vector<FieldElement> u = cramer_solve(a_j, b, det_j);
        for (std::size_t k = 0; k < best_j.size(); ++k) solved[k].push_back(u[k]);
    }
    for (std::size_t k = 0; k < best_j.size(); ++k) out.s[best_j[k]] = std::move(solved[k]);

    // Cramer forces L(s^l) = 0 for every member; re-certify anyway
    for (const LinearFunctional& fun : s.members) {
        for (std::size_t l = 0; l < out.dprime; ++l) {
            FieldElement v = FieldElement::from_rational(ctx, Rat(0));
            for (std::size_t j = 0; j < m; ++j) v = v + fun.coeffs[j] * out.s[j][l];
            if (v.sign() != 0) throw InternalError("lifted translations fail L(s^l) = 0");
        }
    }
    return out;
}

OverlapCertificate transfer_certificate(const IFSModel& model_t, const IFSModel& model_s,
                                        const OverlapCertificate& cert, const LiftResult& record) {
    if (!verify_certificate(model_s, cert)) {
        throw PreconditionError("certificate does not verify for the lifted model");
    }
    const std::size_t m = model_t.m();
    if (record.s.size() != m || model_s.m() != m) {
        throw PreconditionError("combination record arity mismatch");
    }
    // certify t_j = sum_l s_j^l t_(base_l) on model_t
    for (std::size_t j = 1; j <= m; ++j) {
        for (int c = 0; c < model_t.dim(); ++c) {
            FieldElement acc = FieldElement::from_rational(model_t.context(), Rat(0));
            for (std::size_t l = 0; l < record.dprime; ++l) {
                acc = acc + record.s[j - 1][l] * model_t.translation(record.base_columns[l] + 1)[c];
            }
            if ((model_t.translation(j)[c] - acc).sign() != 0) {
                throw PreconditionError("combination record does not hold for the target model");
            }
        }
    }
    if (!verify_certificate(model_t, cert)) {
        throw InternalError("combination record certified but certificate fails on the target model");
    }
    return make_certificate(model_t, cert.w1, cert.w2);
}

}  // namespace selfsim
