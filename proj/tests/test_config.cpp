#include <doctest.h>

#include "selfsim/config.hpp"
#include "selfsim/errors.hpp"
#include "test_util.hpp"

#include <json.hpp>

using namespace selfsim;
using namespace selfsim::testutil;
using nlohmann::json;

TEST_CASE("scalar literals round-trip") {
    AlgebraicScalar half = parse_scalar_literal(json("1/2"));
    CHECK(half.is_rational());
    CHECK(half.rational() == Rat(1, 2));
    CHECK(parse_scalar_literal(scalar_literal(half)).rational() == Rat(1, 2));

    AlgebraicScalar neg = parse_scalar_literal(json("-3/4"));
    CHECK(neg.rational() == Rat(-3, 4));

    json golden = {{"minpoly", {-1, 1, 1}}, {"interval", {"1/2", "1"}}};
    AlgebraicScalar rho = parse_scalar_literal(golden);
    CHECK_FALSE(rho.is_rational());
    CHECK(rho.degree() == 2);
    AlgebraicScalar rho2 = parse_scalar_literal(scalar_literal(rho));
    CHECK(rho == rho2);
    CHECK(rho == golden_rho());
}

TEST_CASE("malformed scalar literals are rejected") {
    CHECK_THROWS_AS(parse_scalar_literal(json("1/0")), InvalidInputError);
    CHECK_THROWS_AS(parse_scalar_literal(json("abc")), InvalidInputError);
    CHECK_THROWS_AS(parse_scalar_literal(json{{"minpoly", {-1, 1, 1}}}), InvalidInputError);
    // interval containing two roots of x^2 - 2
    json ambiguous = {{"minpoly", {-2, 0, 1}}, {"interval", {"-2", "2"}}};
    CHECK_THROWS_AS(parse_scalar_literal(ambiguous), InvalidInputError);
}

TEST_CASE("presets parse into the expected models") {
    auto names = preset_names();
    REQUIRE(names.size() == 4);
    for (const auto& name : names) {
        IFSModel model = preset_model(name);
        CHECK(model.dim() == 1);
        CHECK(model.is_normalized());
    }
    IFSModel d = preset_model("doubling");
    CHECK(d.map_count() == 2);
    CHECK(d.context()->lambda(0).rational() == Rat(1, 2));
    CHECK(d.translation(1)[0].rational() == Rat(1));

    IFSModel g = preset_model("bernoulli-golden");
    CHECK_FALSE(g.context()->lambda(0).is_rational());

    CHECK_THROWS_AS(preset_model("no-such-preset"), InvalidInputError);
}

TEST_CASE("model JSON round-trips under certified equality") {
    for (const auto& name : preset_names()) {
        IFSModel model = preset_model(name);
        IFSModel back = parse_model_json(model_to_json(model));
        REQUIRE(back.map_count() == model.map_count());
        REQUIRE(back.dim() == model.dim());
        for (std::size_t j = 0; j < model.map_count(); ++j) {
            CHECK(model.context()->lambda(j) == back.context()->lambda(j));
        }
        for (std::size_t j = 0; j <= model.m(); ++j) {
            for (int l = 0; l < model.dim(); ++l) {
                CHECK(model.translation(j)[l].approx() ==
                      doctest::Approx(back.translation(j)[l].approx()).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("invalid model configs are rejected") {
    json bad = {{"dimension", 1},
                {"lambdas", {"3/2", "1/2"}},
                {"translations", {{"0"}, {"1"}}},
                {"probabilities", {"1/2", "1/2"}}};
    CHECK_THROWS_AS(parse_model_json(bad), InvalidInputError);

    json missing = {{"dimension", 1}, {"lambdas", {"1/2", "1/2"}}};
    CHECK_THROWS_AS(parse_model_json(missing), InvalidInputError);

    // irrational translation coordinate not among the contraction ratios
    json alien = {{"dimension", 1},
                  {"lambdas", {"1/2", "1/2"}},
                  {"translations", {{"0"}, {json{{"minpoly", {-2, 0, 1}}, {"interval", {"1", "2"}}}}}},
                  {"probabilities", {"1/2", "1/2"}}};
    CHECK_THROWS_AS(parse_model_json(alien), InvalidInputError);
}

TEST_CASE("certificates serialize and still verify") {
    IFSModel model = golden_model();
    OverlapCertificate cert = make_certificate(model, {0, 1, 1}, {1, 0, 0});
    json j = certificate_to_json(cert);
    OverlapCertificate back = certificate_from_json(j, model.map_count());
    CHECK(back.n == cert.n);
    CHECK(back.w1 == cert.w1);
    CHECK(back.w2 == cert.w2);
    CHECK(verify_certificate(model, back));

    json tampered = j;
    tampered["w2"] = {1, 0, 1};
    CHECK_FALSE(verify_certificate(model, certificate_from_json(tampered, model.map_count())));
}
