#include <doctest.h>

#include "selfsim/errors.hpp"
#include "selfsim/ifs.hpp"
#include "selfsim/overlaps.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace selfsim;
using namespace selfsim::testutil;

TEST_CASE("model construction certifies contraction and weight invariants") {
    auto rational_scalars = [](std::vector<Rat> vals) {
        std::vector<AlgebraicScalar> out;
        for (Rat& v : vals) out.push_back(AlgebraicScalar::from_rational(std::move(v)));
        return out;
    };
    auto make = [&](std::vector<Rat> lam, std::vector<Rat> t, std::vector<Rat> p) {
        auto scalars = rational_scalars(std::move(lam));
        ContextPtr ctx = AlgebraicContext::make(scalars);
        std::vector<std::vector<FieldElement>> tr;
        for (Rat& v : t) tr.push_back({FieldElement::from_rational(ctx, std::move(v))});
        return IFSModel::make(1, std::move(scalars), std::move(tr), std::move(p));
    };

    CHECK_THROWS_AS(make({Rat(3, 2), Rat(1, 2)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)}),
                    InvalidInputError);
    CHECK_THROWS_AS(make({Rat(0), Rat(1, 2)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)}),
                    InvalidInputError);
    CHECK_THROWS_AS(make({Rat(1), Rat(1, 2)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)}),
                    InvalidInputError);
    CHECK_THROWS_AS(make({Rat(1, 2), Rat(1, 2)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 3)}),
                    InvalidInputError);
    CHECK_THROWS_AS(make({Rat(1, 2), Rat(1, 2)}, {Rat(0), Rat(1)}, {Rat(3, 2), Rat(-1, 2)}),
                    InvalidInputError);
    CHECK_NOTHROW(make({Rat(-1, 2), Rat(1, 2)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)}));
}

TEST_CASE("word helpers") {
    CHECK(word_string({0, 2, 1}) == "(0,2,1)");
    MultiIndex a = word_multi_index({0, 2, 2, 1, 2}, 3);
    CHECK(a == MultiIndex{1, 1, 3});
    CHECK_THROWS_AS(word_multi_index({5}, 3), InvalidInputError);
}

TEST_CASE("composition is a monoid action") {
    std::mt19937 rng(41);
    for (int i = 0; i < 10; ++i) {
        IFSModel model = random_rational_model(rng);
        std::uniform_int_distribution<unsigned> sym(0, static_cast<unsigned>(model.m()));
        Word u, v;
        for (int k = 0; k < 3; ++k) u.push_back(sym(rng));
        for (int k = 0; k < 4; ++k) v.push_back(sym(rng));
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        SimilarityMap a = compose(model, u), b = compose(model, v), c = compose(model, uv);
        CHECK((c.scale - a.scale * b.scale).is_zero());
        for (int l = 0; l < model.dim(); ++l) {
            // (phi_u o phi_v)(0) = phi_u(phi_v(0))
            CHECK((c.translation[l] - (a.translation[l] + a.scale * b.translation[l])).is_zero());
        }
    }
    SimilarityMap id = compose(doubling_model(), {});
    CHECK(id.scale.rational() == 1);
    CHECK(id.translation[0].is_zero());
}

TEST_CASE("normalization zeroes t_0 and preserves word-pair coincidences") {
    // overlap-halves shifted away from the origin
    IFSModel shifted = rational_model(Rat(1, 2), {Rat(1, 4), Rat(5, 4), Rat(3, 4)});
    CHECK_FALSE(shifted.is_normalized());
    IFSModel norm = normalize(shifted);
    CHECK(norm.is_normalized());

    // phi_w1 = phi_w2 holds in the shifted model iff it holds after conjugation
    Word w1{0, 1}, w2{2, 0};
    SimilarityMap s1 = compose(shifted, w1), s2 = compose(shifted, w2);
    SimilarityMap n1 = compose(norm, w1), n2 = compose(norm, w2);
    CHECK((s1.translation[0] - s2.translation[0]).is_zero());
    CHECK((n1.translation[0] - n2.translation[0]).is_zero());

    // and the conjugated translations differ from the originals
    CHECK_FALSE((norm.translation(1)[0] - shifted.translation(1)[0]).is_zero());
    CHECK(normalize(norm).is_normalized());
}

TEST_CASE("rate statistics on the presets") {
    RateStats d = rate_stats(doubling_model());
    CHECK(d.entropy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.lyapunov == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.beta == doctest::Approx(1.0).epsilon(1e-12));

    RateStats g = rate_stats(preset_model("gasket-thirds"));
    CHECK(g.lyapunov == doctest::Approx(std::log2(3.0)).epsilon(1e-9));
    CHECK(g.entropy == doctest::Approx(std::log2(3.0)).epsilon(1e-9));

    RateStats rho = rate_stats(golden_model());
    CHECK(rho.lyapunov == doctest::Approx(0.6942419136).epsilon(1e-6));
    CHECK(rho.beta == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chi enclosure is a point for exact powers of two") {
    Interval chi = chi_enclosure(doubling_model());
    CHECK(chi.is_point());
    CHECK(chi.lo == Rat(1));
}

TEST_CASE("similarity dimension satisfies its defining equation") {
    auto residual = [](const IFSModel& model, double s) {
        long double sum = 0;
        for (std::size_t j = 0; j < model.map_count(); ++j) {
            Interval iv = model.context()->lambda(j).enclosure(80).abs();
            sum += powl(static_cast<long double>(to_double(iv.mid())), static_cast<long double>(s));
        }
        return std::fabs(static_cast<double>(sum - 1));
    };
    for (const char* name : {"doubling", "overlap-halves", "gasket-thirds", "bernoulli-golden"}) {
        IFSModel model = preset_model(name);
        double s = similarity_dimension(model);
        CHECK(residual(model, s) <= std::ldexp(1.0, -30));
    }
    CHECK(similarity_dimension(preset_model("overlap-halves")) ==
          doctest::Approx(std::log2(3.0)).epsilon(1e-9));
}

TEST_CASE("span check and attractor hull") {
    CHECK(span_check(doubling_model()));
    CHECK(span_check(halves_model()));
    IFSModel degenerate = rational_model(Rat(1, 2), {Rat(0), Rat(0)});
    CHECK_FALSE(span_check(degenerate));
    CHECK_THROWS_AS(span_check(rational_model(Rat(1, 2), {Rat(1), Rat(2)})), PreconditionError);

    Box hull = attractor_hull(doubling_model());
    CHECK(hull.dim == 1);
    CHECK(hull.radius >= Rat(2));  // attractor is [0, 2]
    CHECK(attractor_hull(degenerate).radius == Rat(0));
}
