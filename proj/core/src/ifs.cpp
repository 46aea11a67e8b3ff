#include "selfsim/ifs.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/linalg.hpp"

#include <cmath>
#include <sstream>

namespace selfsim {

std::string word_string(const Word& w) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out << ",";
        out << w[i];
    }
    out << ")";
    return out.str();
}

MultiIndex word_multi_index(const Word& w, std::size_t alphabet) {
    MultiIndex a(alphabet, 0);
    for (unsigned s : w) {
        if (s >= alphabet) throw InvalidInputError("word symbol out of range");
        ++a[s];
    }
    return a;
}

IFSModel IFSModel::make(int dim, std::vector<AlgebraicScalar> lambda,
                        std::vector<std::vector<FieldElement>> translations,
                        std::vector<Rat> probabilities) {
    if (dim < 1) throw InvalidInputError("ambient dimension must be positive");
    if (lambda.empty()) throw InvalidInputError("model needs at least one map");
    if (translations.size() != lambda.size() || probabilities.size() != lambda.size()) {
        throw InvalidInputError("lambdas, translations and probabilities must have equal length");
    }
    IFSModel model;
    model.dim_ = dim;
    model.ctx_ = AlgebraicContext::make(std::move(lambda));
    const ContextPtr& ctx = model.ctx_;
    const FieldElement one = FieldElement::from_rational(ctx, Rat(1));
    for (std::size_t j = 0; j < ctx->var_count(); ++j) {
        FieldElement lj = FieldElement::variable(ctx, j);
        if (lj.sign() == 0) throw InvalidInputError("lambda_" + std::to_string(j) + " must be nonzero");
        if ((one - lj.abs()).sign() <= 0) {
            throw InvalidInputError("lambda_" + std::to_string(j) + " must lie in (-1,1)");
        }
    }
    Rat sum(0);
    for (const Rat& q : probabilities) {
        if (q <= 0) throw InvalidInputError("probabilities must be positive");
        sum += q;
    }
    if (sum != 1) throw InvalidInputError("probabilities must sum to exactly 1");
    for (auto& tv : translations) {
        if (static_cast<int>(tv.size()) != dim) {
            throw InvalidInputError("translation vector dimension mismatch");
        }
    }
    model.t_ = std::move(translations);
    model.p_ = std::move(probabilities);
    return model;
}

FieldElement IFSModel::lambda_element(std::size_t j) const {
    return FieldElement::variable(ctx_, j);
}

bool IFSModel::is_normalized() const {
    for (const FieldElement& c : t_[0]) {
        if (!c.is_zero()) return false;
    }
    return true;
}

IFSModel normalize(const IFSModel& model) {
    if (model.is_normalized()) return model;
    const ContextPtr& ctx = model.context();
    const FieldElement one = FieldElement::from_rational(ctx, Rat(1));
    // shift by the fixed point of phi_0: c = t_0 / (1 - lambda_0)
    FieldElement inv = (one - model.lambda_element(0)).inverse();
    std::vector<FieldElement> c;
    for (const FieldElement& coord : model.translation(0)) c.push_back(coord * inv);
    std::vector<std::vector<FieldElement>> t;
    std::vector<AlgebraicScalar> lambda = ctx->lambdas();
    for (std::size_t j = 0; j < model.map_count(); ++j) {
        FieldElement lj = model.lambda_element(j);
        std::vector<FieldElement> tj;
        for (int l = 0; l < model.dim(); ++l) {
            tj.push_back(model.translation(j)[l] + (lj - one) * c[l]);
        }
        t.push_back(std::move(tj));
    }
    for (const FieldElement& coord : t[0]) {
        if (!coord.is_zero()) throw InternalError("normalize failed to zero t_0");
    }
    return IFSModel::make(model.dim(), std::move(lambda), std::move(t), model.probabilities());
}

SimilarityMap compose(const IFSModel& model, const Word& w) {
    const ContextPtr& ctx = model.context();
    SimilarityMap acc{FieldElement::from_rational(ctx, Rat(1)),
                      std::vector<FieldElement>(model.dim(), FieldElement::from_rational(ctx, Rat(0)))};
    for (unsigned j : w) {
        if (j >= model.map_count()) throw InvalidInputError("word symbol out of range");
        FieldElement lj = model.lambda_element(j);
        for (int l = 0; l < model.dim(); ++l) {
            acc.translation[l] = acc.translation[l] + acc.scale * model.translation(j)[l];
        }
        acc.scale = acc.scale * lj;
    }
    return acc;
}

Interval chi_enclosure(const IFSModel& model, unsigned bits) {
    Interval chi = Interval::point(Rat(0));
    for (std::size_t j = 0; j < model.map_count(); ++j) {
        Interval absl = model.context()->lambda(j).enclosure(bits + 20).abs();
        Interval lg = log2_enclosure(absl, bits);
        chi = chi + scale(-lg, model.probabilities()[j]);
    }
    return chi;
}

RateStats rate_stats(const IFSModel& model) {
    double h = 0;
    for (const Rat& q : model.probabilities()) {
        double pd = to_double(q);
        h -= pd * std::log2(pd);
    }
    Interval chi = chi_enclosure(model);
    double c = to_double(chi.mid());
    return {h, c, std::min(1.0, h / c)};
}

double similarity_dimension(const IFSModel& model) {
    std::vector<long double> mods;
    for (std::size_t j = 0; j < model.map_count(); ++j) {
        Interval iv = model.context()->lambda(j).enclosure(80).abs();
        mods.push_back(static_cast<long double>(to_double(iv.mid())));
    }
    auto f = [&](long double s) {
        long double sum = 0;
        for (long double v : mods) sum += powl(v, s);
        return sum;
    };
    long double lo = 0, hi = 1;
    while (f(hi) > 1 && hi < 1024) hi *= 2;
    for (int it = 0; it < 120 && hi - lo > ldexpl(1, -40); ++it) {
        long double mid = (lo + hi) / 2;
        (f(mid) > 1 ? lo : hi) = mid;
    }
    return static_cast<double>((lo + hi) / 2);
}

bool span_check(const IFSModel& model) {
    if (!model.is_normalized()) throw PreconditionError("span_check requires a normalized model (t_0 = 0)");
    if (model.m() == 0) return false;
    FieldMatrix mat(model.dim());
    for (int l = 0; l < model.dim(); ++l) {
        for (std::size_t j = 1; j < model.map_count(); ++j) {
            mat[l].push_back(model.translation(j)[l]);
        }
    }
    return rank_by_minors(mat) == static_cast<std::size_t>(model.dim());
}

Box attractor_hull(const IFSModel& model) {
    if (!model.is_normalized()) throw PreconditionError("attractor_hull requires a normalized model");
    const Rat width(1, 1 << 20);
    Rat tmax(0);
    for (std::size_t j = 0; j < model.map_count(); ++j) {
        for (const FieldElement& c : model.translation(j)) {
            tmax = std::max(tmax, c.enclosure(width).abs().hi);
        }
    }
    if (tmax == 0) return {model.dim(), Rat(0)};
    Rat lmax(0);
    for (std::size_t j = 0; j < model.map_count(); ++j) {
        lmax = std::max(lmax, model.context()->lambda(j).enclosure(30).abs().hi);
    }
    return {model.dim(), tmax / (1 - lmax)};
}

}  // namespace selfsim
