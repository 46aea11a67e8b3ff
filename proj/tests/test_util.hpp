#ifndef SELFSIM_TEST_UTIL_HPP
#define SELFSIM_TEST_UTIL_HPP

#include "selfsim/config.hpp"
#include "selfsim/ifs.hpp"

#include <random>
#include <vector>

namespace selfsim::testutil {

inline AlgebraicScalar golden_rho() {
    // positive root of X^2 + X - 1
    return AlgebraicScalar::make({Int(-1), Int(1), Int(1)}, Rat(1, 2), Rat(1));
}

inline AlgebraicScalar sqrt2() {
    return AlgebraicScalar::make({Int(-2), Int(0), Int(1)}, Rat(1), Rat(2));
}

inline IFSModel golden_model() { return preset_model("bernoulli-golden"); }
inline IFSModel doubling_model() { return preset_model("doubling"); }
inline IFSModel halves_model() { return preset_model("overlap-halves"); }

inline Rat random_rat(std::mt19937& rng, int num_lo, int num_hi, int den_lo, int den_hi) {
    std::uniform_int_distribution<int> num(num_lo, num_hi);
    std::uniform_int_distribution<int> den(den_lo, den_hi);
    return Rat(num(rng), den(rng));
}

/// Random 1-dimensional all-rational model with 2 or 3 maps.
inline IFSModel random_rational_model(std::mt19937& rng) {
    std::uniform_int_distribution<int> maps_dist(2, 3);
    const int maps = maps_dist(rng);
    std::vector<AlgebraicScalar> lambda;
    std::vector<std::vector<FieldElement>> translations;
    std::vector<Rat> probabilities;
    std::vector<Rat> lam, tra;
    for (int j = 0; j < maps; ++j) {
        std::uniform_int_distribution<int> den(2, 5);
        int b = den(rng);
        std::uniform_int_distribution<int> num(1, b - 1);
        Rat l(num(rng), b);
        std::uniform_int_distribution<int> flip(0, 1);
        if (flip(rng)) l = -l;
        lam.push_back(l);
        tra.push_back(random_rat(rng, -8, 8, 1, 6));
    }
    std::vector<int> weights;
    int total = 0;
    for (int j = 0; j < maps; ++j) {
        std::uniform_int_distribution<int> w(1, 9);
        weights.push_back(w(rng));
        total += weights.back();
    }
    for (int j = 0; j < maps; ++j) lambda.push_back(AlgebraicScalar::from_rational(lam[j]));
    ContextPtr ctx = AlgebraicContext::make(lambda);
    for (int j = 0; j < maps; ++j) {
        translations.push_back({FieldElement::from_rational(ctx, tra[j])});
        probabilities.emplace_back(weights[j], total);
    }
    return IFSModel::make(1, std::move(lambda), std::move(translations), std::move(probabilities));
}

/// 1-d rational model from explicit data.
inline IFSModel rational_model(const Rat& lam, const std::vector<Rat>& t, int dim = 1) {
    std::vector<AlgebraicScalar> lambda(t.size(), AlgebraicScalar::from_rational(lam));
    ContextPtr ctx = AlgebraicContext::make(lambda);
    std::vector<std::vector<FieldElement>> translations;
    for (const Rat& v : t) translations.push_back({FieldElement::from_rational(ctx, v)});
    std::vector<Rat> p(t.size(), Rat(1, static_cast<int>(t.size())));
    (void)dim;
    return IFSModel::make(1, std::move(lambda), std::move(translations), std::move(p));
}

}  // namespace selfsim::testutil

#endif
