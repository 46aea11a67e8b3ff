#include <doctest.h>

#include "selfsim/context.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/field.hpp"
#include "selfsim/separation.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace selfsim;
using namespace selfsim::testutil;

TEST_CASE("rational literals parse and round-trip") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-7") == Rat(-7));
    CHECK(parse_rational("6/4") == Rat(3, 2));
    CHECK(rational_string(Rat(3, 2)) == "3/2");
    CHECK(rational_string(Rat(-5)) == "-5");
    CHECK(parse_rational(rational_string(Rat(-22, 7))) == Rat(-22, 7));
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidInputError);
    CHECK_THROWS_AS(parse_rational("abc"), InvalidInputError);
}

TEST_CASE("floor and ceiling on rationals") {
    CHECK(rat_floor(Rat(7, 2)) == 3);
    CHECK(rat_floor(Rat(-7, 2)) == -4);
    CHECK(rat_floor(Rat(4)) == 4);
    CHECK(rat_ceil(Rat(7, 2)) == 4);
    CHECK(rat_ceil(Rat(-7, 2)) == -3);
}

TEST_CASE("interval arithmetic covers sign combinations") {
    Interval a(Rat(-2), Rat(3)), b(Rat(-1), Rat(4));
    Interval p = a * b;
    CHECK(p.lo == Rat(-8));
    CHECK(p.hi == Rat(12));
    CHECK(a.abs().lo == Rat(0));
    CHECK(a.abs().hi == Rat(3));
    CHECK(Interval(Rat(-2), Rat(-1)).abs().lo == Rat(1));
    Interval sq = Interval(Rat(-3), Rat(2)).pow(2);
    CHECK(sq.hi >= Rat(9));
    CHECK(sq.lo <= Rat(0));
    CHECK(Interval(Rat(1, 2), Rat(1, 2)).pow(3).is_point());
}

TEST_CASE("log2 enclosure brackets the float value and is exact on powers of two") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        Rat q = random_rat(rng, 1, 500, 1, 500);
        Interval lg = log2_enclosure(Interval::point(q));
        double ref = std::log2(to_double(q));
        CHECK(to_double(lg.lo) <= ref + 1e-12);
        CHECK(to_double(lg.hi) >= ref - 1e-12);
        CHECK(lg.width() <= Rat(1, ipow(Int(2), 50)));
    }
    CHECK(log2_enclosure(Interval::point(Rat(8))).is_point());
    CHECK(log2_enclosure(Interval::point(Rat(8))).lo == Rat(3));
    CHECK(log2_enclosure(Interval::point(Rat(1, 4))).lo == Rat(-2));
    CHECK_THROWS_AS(log2_enclosure(Interval(Rat(-1), Rat(1))), PreconditionError);
}

TEST_CASE("degree-1 minimal polynomials collapse to rationals") {
    AlgebraicScalar a = AlgebraicScalar::make({Int(-3), Int(2)}, Rat(1), Rat(2));
    CHECK(a.is_rational());
    CHECK(a.rational() == Rat(3, 2));
    CHECK(a.minpoly() == std::vector<Int>{Int(-3), Int(2)});
}

TEST_CASE("golden ratio scalar: enclosure, height, equality") {
    AlgebraicScalar rho = golden_rho();
    CHECK_FALSE(rho.is_rational());
    CHECK(rho.degree() == 2);
    CHECK(rho.height() == 1);
    Interval iv = rho.enclosure(50);
    double ref = (std::sqrt(5.0) - 1) / 2;
    CHECK(to_double(iv.lo) <= ref);
    CHECK(to_double(iv.hi) >= ref);
    CHECK(iv.width() <= Rat(1, ipow(Int(2), 50)));

    CHECK(rho == golden_rho());
    CHECK_FALSE(rho == sqrt2());
    CHECK_FALSE(rho == AlgebraicScalar::from_rational(Rat(1, 2)));
}

TEST_CASE("conjugate roots of one minimal polynomial are distinguished") {
    AlgebraicScalar pos = sqrt2();
    AlgebraicScalar neg = AlgebraicScalar::make({Int(-2), Int(0), Int(1)}, Rat(-2), Rat(-1));
    CHECK_FALSE(pos == neg);
    CHECK(neg == AlgebraicScalar::make({Int(-2), Int(0), Int(1)}, Rat(-3, 2), Rat(-7, 5)));
}

TEST_CASE("polynomial sign at rational points") {
    std::vector<Int> p{Int(-1), Int(1), Int(1)};  // X^2 + X - 1
    CHECK(poly_sign_at(p, Rat(0)) == -1);
    CHECK(poly_sign_at(p, Rat(1)) == 1);
    CHECK(poly_sign_at(p, Rat(1, 2)) == -1);
}

namespace {

Rat eval_at(const IntPolynomial& p, const std::vector<Rat>& x) {
    Rat acc(0);
    for (const auto& [a, c] : p.terms()) {
        Rat term(c);
        for (std::size_t j = 0; j < a.size(); ++j) term *= rpow(x[j], a[j]);
        acc += term;
    }
    return acc;
}

IntPolynomial random_poly(std::mt19937& rng, std::size_t nvars, unsigned max_exp, int max_coeff,
                          int terms) {
    IntPolynomial p(nvars);
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    std::uniform_int_distribution<unsigned> exp(0, max_exp);
    for (int t = 0; t < terms; ++t) {
        MultiIndex a(nvars);
        for (auto& e : a) e = exp(rng);
        p.add_term(a, Int(coeff(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("polynomial ring operations agree with evaluation") {
    std::mt19937 rng(11);
    for (int i = 0; i < 60; ++i) {
        IntPolynomial p = random_poly(rng, 2, 4, 5, 4);
        IntPolynomial q = random_poly(rng, 2, 4, 5, 4);
        std::vector<Rat> x{random_rat(rng, -5, 5, 1, 4), random_rat(rng, -5, 5, 1, 4)};
        CHECK(eval_at(p + q, x) == eval_at(p, x) + eval_at(q, x));
        CHECK(eval_at(p - q, x) == eval_at(p, x) - eval_at(q, x));
        CHECK(eval_at(p * q, x) == eval_at(p, x) * eval_at(q, x));
    }
}

TEST_CASE("polynomial norms and class membership") {
    IntPolynomial p(2);
    p.add_term({2, 1}, Int(-3));
    p.add_term({0, 0}, Int(2));
    CHECK(p.degree() == 3);
    CHECK(p.linf() == 3);
    CHECK(p.l1() == 5);
    CHECK(p.in_class(Int(3), 4));
    CHECK_FALSE(p.in_class(Int(2), 4));
    CHECK_FALSE(p.in_class(Int(3), 3));
    CHECK(IntPolynomial(2).in_class(Int(1), 1));  // zero polynomial is in every class

    // cancellation keeps norms consistent
    IntPolynomial z = p - p;
    CHECK(z.is_zero());
    CHECK(z.degree() == IntPolynomial::kZeroDegree);
    CHECK(z.linf() == 0);
}

TEST_CASE("polynomial determinant matches cofactor expansion by hand") {
    auto c = [](Int v) { return IntPolynomial::constant(1, v); };
    std::vector<std::vector<IntPolynomial>> m{{c(Int(1)), c(Int(2))}, {c(Int(3)), c(Int(4))}};
    IntPolynomial det = poly_determinant(m);
    CHECK(det == c(Int(-2)));
}

TEST_CASE("separation bound shrinks with degree and class size") {
    SeparationContext sep{{Int(3)}, 2};
    Rat b1 = separation_bound(sep, Int(1), 4);
    Rat b2 = separation_bound(sep, Int(1), 8);
    Rat b3 = separation_bound(sep, Int(5), 4);
    CHECK(b1 > 0);
    CHECK(b2 < b1);
    CHECK(b3 < b1);
    CHECK_THROWS_AS(separation_bound(sep, Int(0), 4), PreconditionError);
}

namespace {

// Independent oracle: reduce a univariate integer polynomial mod X^2 + X - 1
// (monic), returning the residue (a, b) with P = a + b X.
std::pair<Int, Int> mod_golden(const IntPolynomial& p) {
    // collect dense coefficients
    std::vector<Int> c;
    for (const auto& [a, v] : p.terms()) {
        if (a[0] >= c.size()) c.resize(a[0] + 1, Int(0));
        c[a[0]] += v;
    }
    for (std::size_t k = c.size(); k-- > 2;) {
        // X^k = X^(k-2) (1 - X) => add c[k] to c[k-2], subtract from c[k-1]
        c[k - 2] += c[k];
        c[k - 1] -= c[k];
        c[k] = 0;
    }
    c.resize(2, Int(0));
    return {c[0], c[1]};
}

}  // namespace

TEST_CASE("certified sign at the golden ratio matches the mod-minpoly oracle") {
    auto ctx = AlgebraicContext::make({golden_rho()});
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> coeff(-1, 1);
    for (int i = 0; i < 200; ++i) {
        IntPolynomial p(1);
        for (unsigned e = 0; e < 8; ++e) {
            int c = coeff(rng);
            if (c != 0) p.add_term({e}, Int(c));
        }
        auto [a, b] = mod_golden(p);
        int s = ctx->certify_sign(p);
        if (a == 0 && b == 0) {
            CHECK(s == 0);
        } else {
            CHECK(s != 0);
            // sign agrees with a float evaluation of the residue
            double val = to_double(Rat(a)) + to_double(Rat(b)) * (std::sqrt(5.0) - 1) / 2;
            CHECK(s == (val > 0 ? 1 : -1));
        }
    }
}

TEST_CASE("exact evaluation enclosures") {
    auto ctx = AlgebraicContext::make(
        {AlgebraicScalar::from_rational(Rat(1, 2)), AlgebraicScalar::from_rational(Rat(1, 3))});
    IntPolynomial p(2);
    p.add_term({1, 1}, Int(1));
    Interval iv = ctx->eval_enclosure(p, Rat(1, 1024));
    CHECK(iv.is_point());
    CHECK(iv.lo == Rat(1, 6));

    auto gctx = AlgebraicContext::make({golden_rho()});
    IntPolynomial q(1);
    q.add_term({2}, Int(1));
    q.add_term({1}, Int(1));
    q.add_term({0}, Int(-1));
    Interval ziv = gctx->eval_enclosure(q, Rat(1, ipow(Int(2), 20)));
    CHECK(ziv.contains_zero());
    CHECK(ziv.width() <= Rat(1, ipow(Int(2), 20)));
    CHECK(gctx->eval_enclosure(IntPolynomial(1), Rat(1)).is_point());
}

TEST_CASE("field elements over the golden ratio") {
    auto ctx = AlgebraicContext::make({golden_rho()});
    FieldElement rho = FieldElement::variable(ctx, 0);
    FieldElement one = FieldElement::from_rational(ctx, Rat(1));

    CHECK((rho * rho + rho - one).is_zero());
    CHECK((rho.inverse() - rho - one).is_zero());  // 1/rho = rho + 1
    CHECK(rho.sign() == 1);
    CHECK((rho - one).sign() == -1);
    CHECK(rho.compare(one) < 0);
    CHECK(FieldElement::from_rational(ctx, Rat(0)).compare(rho) < 0);
    CHECK((rho / rho).equals(one));
    CHECK_THROWS_AS(FieldElement::from_rational(ctx, Rat(0)).inverse(), PreconditionError);

    // canonical keys are complete in a simple extension
    CHECK(ctx->canonical_complete());
    CHECK((rho * rho).canonical_key() == (one - rho).canonical_key());
}

TEST_CASE("field arithmetic matches direct rational evaluation") {
    std::mt19937 rng(31);
    auto ctx = AlgebraicContext::make(
        {AlgebraicScalar::from_rational(Rat(2, 3)), AlgebraicScalar::from_rational(Rat(-1, 2))});
    std::vector<Rat> x{Rat(2, 3), Rat(-1, 2)};
    for (int i = 0; i < 40; ++i) {
        IntPolynomial p = random_poly(rng, 2, 3, 4, 4);
        IntPolynomial q = random_poly(rng, 2, 3, 4, 4);
        FieldElement fp = FieldElement::from_polynomial(ctx, p);
        FieldElement fq = FieldElement::from_polynomial(ctx, q);
        CHECK((fp * fq).rational() == eval_at(p, x) * eval_at(q, x));
        CHECK((fp + fq).rational() == eval_at(p, x) + eval_at(q, x));
        CHECK((fp - fq).rational() == eval_at(p, x) - eval_at(q, x));
    }
}

TEST_CASE("cleared form has a positive denominator and reproduces the value") {
    auto ctx = AlgebraicContext::make({golden_rho()});
    FieldElement v = FieldElement::variable(ctx, 0) * Rat(-3, 4) + FieldElement::from_rational(ctx, Rat(5, 6));
    auto [q, den] = v.cleared();
    CHECK(den > 0);
    // v * den - q(lambda) == 0
    FieldElement back = FieldElement::from_polynomial(ctx, q);
    CHECK((v * Rat(den) - back).is_zero());
}
