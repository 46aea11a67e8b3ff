#include "selfsim/context.hpp"
#include "selfsim/errors.hpp"

#include <set>

namespace selfsim {

std::shared_ptr<const AlgebraicContext> AlgebraicContext::make(std::vector<AlgebraicScalar> lambda) {
    if (lambda.empty()) throw InvalidInputError("context requires at least one value");
    auto ctx = std::shared_ptr<AlgebraicContext>(new AlgebraicContext());
    ctx->lambda_ = std::move(lambda);
    const std::size_t n = ctx->lambda_.size();

    ctx->var_rep_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        ctx->var_rep_[j] = j;
        for (std::size_t i = 0; i < j; ++i) {
            if (ctx->var_rep_[i] == i && ctx->lambda_[i] == ctx->lambda_[j]) {
                ctx->var_rep_[j] = i;
                break;
            }
        }
    }

    ctx->sep_.heights.reserve(n);
    std::set<std::size_t> irrational_reps;
    for (std::size_t j = 0; j < n; ++j) {
        // Weil-height upper bound: exact max(|p|, q) for rationals; for an
        // irrational of degree d the Mahler measure is at most
        // sqrt(d+1) * maxcoeff (Landau), so (d+1) * maxcoeff dominates.
        Int h = ctx->lambda_[j].height();
        if (!ctx->lambda_[j].is_rational()) h *= Int(ctx->lambda_[j].degree()) + 1;
        ctx->sep_.heights.push_back(std::max(Int(1), h));
        if (!ctx->lambda_[j].is_rational()) {
            ctx->all_rational_ = false;
            irrational_reps.insert(ctx->var_rep_[j]);
        }
    }
    ctx->sep_.degree_bound = 1;
    for (std::size_t r : irrational_reps) {
        ctx->sep_.degree_bound *= ctx->lambda_[r].degree();
    }
    ctx->canonical_complete_ = irrational_reps.size() <= 1;
    return ctx;
}

Interval AlgebraicContext::enclosure_at(const IntPolynomial& p, unsigned bits) const {
    std::vector<Interval> vars(lambda_.size());
    for (std::size_t j = 0; j < lambda_.size(); ++j) vars[j] = lambda_[j].enclosure(bits);
    Interval acc = Interval::point(Rat(0));
    for (const auto& [a, c] : p.terms()) {
        Interval term = Interval::point(Rat(1));
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] > 0) term = term * vars[j].pow(a[j]);
        }
        acc = acc + scale(term, Rat(c));
    }
    return acc;
}

Interval AlgebraicContext::eval_enclosure(const IntPolynomial& p, const Rat& width) const {
    if (width <= 0) throw PreconditionError("eval_enclosure requires a positive width");
    if (p.nvars() != lambda_.size()) throw PreconditionError("polynomial arity does not match context");
    if (p.is_zero()) return Interval::point(Rat(0));
    unsigned bits = all_rational_ ? 1 : 32;
    for (;;) {
        Interval iv = enclosure_at(p, bits);
        if (iv.width() <= width) return iv;
        bits += 32;
    }
}

int AlgebraicContext::certify_sign(const IntPolynomial& p) const {
    if (p.nvars() != lambda_.size()) throw PreconditionError("polynomial arity does not match context");
    if (p.is_zero()) return 0;
    if (all_rational_) {
        return enclosure_at(p, 1).definite_sign();
    }
    const unsigned n = static_cast<unsigned>(p.degree() + 1);
    const Rat bound = separation_bound(sep_, std::max(Int(1), p.linf()), n);
    unsigned bits = 16;
    for (;;) {
        Interval iv = enclosure_at(p, bits);
        int s = iv.definite_sign();
        if (s != 0) return s;
        if (iv.width() < bound) return 0;  // certified exact zero
        bits += 32;
    }
}

}  // namespace selfsim
