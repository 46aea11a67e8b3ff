#include <doctest.h>

#include "selfsim/errors.hpp"
#include "selfsim/functionals.hpp"
#include "test_util.hpp"

#include <random>

using namespace selfsim;
using namespace selfsim::testutil;

TEST_CASE("functional values equal the composition difference") {
    std::mt19937 rng(71);
    for (int i = 0; i < 100; ++i) {
        IFSModel model = normalize(random_rational_model(rng));
        std::uniform_int_distribution<unsigned> sym(0, static_cast<unsigned>(model.m()));
        std::uniform_int_distribution<int> len(1, 5);
        int n = len(rng);
        Word w1, w2;
        for (int k = 0; k < n; ++k) {
            w1.push_back(sym(rng));
            w2.push_back(sym(rng));
        }
        LinearFunctional fun = functional_from_words(model, w1, w2);
        for (const IntPolynomial& p : fun.coeff_polys) CHECK(p.in_class(Int(1), n));

        std::vector<FieldElement> t;
        for (std::size_t j = 1; j <= model.m(); ++j) t.push_back(model.translation(j)[0]);
        FieldElement lhs = functional_value(fun, t);
        SimilarityMap a = compose(model, w1), b = compose(model, w2);
        CHECK((lhs - (a.translation[0] - b.translation[0])).is_zero());
    }
}

TEST_CASE("candidate set on the overlap-halves preset") {
    IFSModel model = halves_model();
    CandidateSet s = build_candidate_set(model, Rat(1, 1024), 2);
    CHECK(s.members.size() == 4);  // (01,20) and (10,21) in both orders
    CHECK(s.entropy_deficit);
    RankReport r = gram_rank(s);
    CHECK(r.rank == 1);

    // near miss: perturb t_2 so the gap is 1/1024 > delta^2
    IFSModel near = normalize(rational_model(Rat(1, 2), {Rat(0), Rat(1), Rat(513, 1024)}));
    CandidateSet sn = build_candidate_set(near, Rat(1, 1024), 2);
    CHECK(sn.members.empty());
    CHECK_FALSE(sn.entropy_deficit);
    // a lax threshold readmits the pair
    CandidateSet sl = build_candidate_set(near, Rat(1, 4), 2);
    CHECK(sl.members.size() >= 2);
}

TEST_CASE("candidate set preconditions") {
    CHECK_THROWS_AS(build_candidate_set(halves_model(), Rat(2), 2), PreconditionError);
    CHECK_THROWS_AS(build_candidate_set(halves_model(), Rat(0), 2), PreconditionError);
    IFSModel degenerate = rational_model(Rat(1, 2), {Rat(0), Rat(0)});
    CHECK_THROWS_AS(build_candidate_set(degenerate, Rat(1, 4), 2), PreconditionError);
}

namespace {

FieldMatrix random_rational_matrix(std::mt19937& rng, const ContextPtr& ctx, std::size_t rows,
                                   std::size_t cols, int rank_limit) {
    // build as products of random thin matrices to control rank
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(rank_limit));
    std::vector<std::vector<Rat>> b(rank_limit, std::vector<Rat>(cols));
    for (auto& row : a)
        for (auto& v : row) v = random_rat(rng, -4, 4, 1, 3);
    for (auto& row : b)
        for (auto& v : row) v = random_rat(rng, -4, 4, 1, 3);
    FieldMatrix m(rows, std::vector<FieldElement>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            Rat acc(0);
            for (int k = 0; k < rank_limit; ++k) acc += a[i][k] * b[k][j];
            m[i][j] = FieldElement::from_rational(ctx, acc);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("Gram rank agrees with row reduction on random matrices") {
    std::mt19937 rng(83);
    auto ctx = AlgebraicContext::make({AlgebraicScalar::from_rational(Rat(1, 2))});
    for (int i = 0; i < 25; ++i) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        std::size_t rows = dim(rng), cols = dim(rng);
        std::uniform_int_distribution<int> rl(1, 4);
        FieldMatrix m = random_rational_matrix(rng, ctx, rows, cols, rl(rng));
        RankReport r = gram_rank(m);  // internally cross-checked, throws on mismatch
        CHECK(r.rank <= std::min(rows, cols));
        CHECK(r.row_indices.size() == r.rank);
    }
    CHECK(gram_rank(FieldMatrix{}).rank == 0);
}

TEST_CASE("projection residual vanishes exactly on the row span") {
    auto ctx = AlgebraicContext::make({AlgebraicScalar::from_rational(Rat(1, 2))});
    auto fe = [&](Rat v) { return FieldElement::from_rational(ctx, std::move(v)); };
    FieldMatrix rows{{fe(1), fe(0), fe(1)}, {fe(0), fe(1), fe(1)}};
    RankReport r = gram_rank(rows);
    REQUIRE(r.rank == 2);
    // in span: 2*r1 - 3*r2
    std::vector<FieldElement> in{fe(2), fe(-3), fe(-1)};
    CHECK(projection_residual(r, in).is_zero());
    // out of span
    std::vector<FieldElement> out{fe(0), fe(0), fe(1)};
    FieldElement res = projection_residual(r, out);
    CHECK(res.sign() > 0);

    RankReport empty;
    CHECK_THROWS_AS(projection_residual(empty, in), PreconditionError);
}

TEST_CASE("reconstruction recovers the overlap-halves translations") {
    IFSModel model = halves_model();
    CandidateSet s = build_candidate_set(model, Rat(1, 1024), 2);
    auto t = reconstruct_translations(s);
    REQUIRE(t.has_value());
    REQUIRE(t->size() == 2);
    CHECK((*t)[0][0].rational() == Rat(1));
    CHECK((*t)[1][0].rational() == Rat(1, 2));
    for (std::size_t j = 1; j <= model.m(); ++j) {
        CHECK((*t)[j - 1][0].equals(model.translation(j)[0]));
    }
}

TEST_CASE("planted rank m-d models reconstruct and stay consistent across depths") {
    for (int q = 2; q <= 5; ++q) {
        // relations t_2 = lambda t_1 and t_3 = lambda^2 t_1 with lambda = 1/q
        IFSModel model =
            rational_model(Rat(1, q), {Rat(0), Rat(1), Rat(1, q), Rat(1, q * q)});
        CandidateSet s3 = build_candidate_set(model, Rat(1, 1 << 12), 3);
        RankReport r = gram_rank(s3);
        CHECK(r.rank == 2);  // m - d = 3 - 1
        auto t = reconstruct_translations(s3);
        REQUIRE(t.has_value());
        CHECK((*t)[1][0].rational() == Rat(1, q));
        CHECK((*t)[2][0].rational() == Rat(1, q * q));

        CandidateSet s4 = build_candidate_set(model, Rat(1, 1 << 12), 4);
        CHECK(consistency_check(s3, s4));
    }
}

TEST_CASE("rank-deficient plants lift to a higher-dimensional model and transfer back") {
    for (int q = 2; q <= 4; ++q) {
        // single relation t_2 = lambda t_1; t_3 generic (prime denominator)
        IFSModel model = rational_model(Rat(1, q), {Rat(0), Rat(1), Rat(1, q), Rat(3, 101 + q)});
        CandidateSet s = build_candidate_set(model, Rat(1, 1 << 12), 3);
        RankReport r = gram_rank(s);
        REQUIRE(r.rank == 1);

        LiftResult lift = lift_to_higher_dim(s, 1);
        CHECK(lift.dprime == 2);
        REQUIRE(lift.s.size() == 3);
        // every member functional vanishes on the lifted translations
        for (const LinearFunctional& fun : s.members) {
            for (std::size_t l = 0; l < lift.dprime; ++l) {
                FieldElement v = FieldElement::from_rational(model.context(), Rat(0));
                for (std::size_t j = 0; j < 3; ++j) v = v + fun.coeffs[j] * lift.s[j][l];
                CHECK(v.is_zero());
            }
        }

        // assemble the lifted model and move a planted overlap back down
        std::vector<AlgebraicScalar> lam(4, AlgebraicScalar::from_rational(Rat(1, q)));
        ContextPtr ctx = AlgebraicContext::make(lam);
        std::vector<std::vector<FieldElement>> translations;
        translations.push_back(std::vector<FieldElement>(2, FieldElement::from_rational(ctx, Rat(0))));
        for (std::size_t j = 0; j < 3; ++j) translations.push_back(lift.s[j]);
        IFSModel lifted = IFSModel::make(2, lam, translations, model.probabilities());

        auto cert = find_overlap(lifted, 2);
        REQUIRE(cert.has_value());
        OverlapCertificate back = transfer_certificate(model, lifted, *cert, lift);
        CHECK(verify_certificate(model, back));
    }
}

TEST_CASE("lift rejects mismatched rank requests") {
    IFSModel model = rational_model(Rat(1, 2), {Rat(0), Rat(1), Rat(1, 2), Rat(3, 103)});
    CandidateSet s = build_candidate_set(model, Rat(1, 1 << 12), 3);
    CHECK_THROWS_AS(lift_to_higher_dim(s, 2), PreconditionError);
}
