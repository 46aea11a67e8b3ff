#include "selfsim/field.hpp"
#include "selfsim/errors.hpp"

#include <set>
#include <sstream>

namespace selfsim {

namespace {

// Coefficients of X^e reduced modulo the (primitive, ascending) minimal
// polynomial p; result has degree < deg(p).
std::vector<Rat> xpow_mod(const std::vector<Int>& p, unsigned e) {
    const std::size_t d = p.size() - 1;
    std::vector<Rat> cur(d, Rat(0));
    cur[0] = 1;
    const Rat lead(p[d]);
    for (unsigned i = 0; i < e; ++i) {
        Rat top = cur[d - 1];
        for (std::size_t k = d - 1; k > 0; --k) cur[k] = cur[k - 1];
        cur[0] = 0;
        if (top != 0) {
            for (std::size_t k = 0; k < d; ++k) cur[k] -= top * Rat(p[k]) / lead;
        }
    }
    return cur;
}

std::vector<Rat> poly_divrem(std::vector<Rat> num, const std::vector<Rat>& den,
                             std::vector<Rat>* quot) {
    auto deg = [](const std::vector<Rat>& v) {
        for (std::size_t i = v.size(); i > 0; --i) {
            if (v[i - 1] != 0) return static_cast<long>(i - 1);
        }
        return -1L;
    };
    long dd = deg(den);
    if (dd < 0) throw InternalError("polynomial division by zero");
    if (quot) quot->assign(std::max<long>(deg(num) - dd + 1, 1), Rat(0));
    while (deg(num) >= dd) {
        long dn = deg(num);
        Rat f = num[dn] / den[dd];
        if (quot) (*quot)[dn - dd] = f;
        for (long k = 0; k <= dd; ++k) num[dn - dd + k] -= f * den[k];
    }
    return num;
}

// Inverse of f modulo the irreducible polynomial p, both over Q.
std::vector<Rat> inverse_mod(const std::vector<Rat>& f, const std::vector<Rat>& p) {
    // extended Euclid: track s with s*f = r (mod p)
    std::vector<Rat> r0 = p, r1 = f;
    std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};
    auto is_zero = [](const std::vector<Rat>& v) {
        for (const Rat& c : v) {
            if (c != 0) return false;
        }
        return true;
    };
    auto degree_of = [](const std::vector<Rat>& v) {
        for (std::size_t i = v.size(); i > 0; --i) {
            if (v[i - 1] != 0) return static_cast<long>(i - 1);
        }
        return -1L;
    };
    while (!is_zero(r1) && degree_of(r1) > 0) {
        std::vector<Rat> q;
        std::vector<Rat> r2 = poly_divrem(r0, r1, &q);
        // s2 = s0 - q * s1
        std::vector<Rat> s2(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (is_zero(r1)) throw InternalError("inverse_mod: element shares a factor with an irreducible modulus");
    const Rat unit = r1[0];
    for (Rat& c : s1) c /= unit;
    return s1;
}

void require_same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return;
    if (a && b && a->lambdas() == b->lambdas()) return;
    throw PreconditionError("field elements belong to different algebraic contexts");
}

}  // namespace

FieldElement::FieldElement(ContextPtr ctx, std::map<MultiIndex, Rat> terms)
    : ctx_(std::move(ctx)), terms_(std::move(terms)) {
    normalize();
}

FieldElement FieldElement::from_rational(ContextPtr ctx, Rat v) {
    std::map<MultiIndex, Rat> t;
    if (v != 0) t.emplace(MultiIndex(ctx->var_count(), 0), std::move(v));
    return FieldElement(std::move(ctx), std::move(t));
}

FieldElement FieldElement::variable(ContextPtr ctx, std::size_t j) {
    if (j >= ctx->var_count()) throw InvalidInputError("variable index out of range");
    MultiIndex a(ctx->var_count(), 0);
    a[j] = 1;
    std::map<MultiIndex, Rat> t;
    t.emplace(std::move(a), Rat(1));
    return FieldElement(std::move(ctx), std::move(t));
}

FieldElement FieldElement::from_polynomial(ContextPtr ctx, const IntPolynomial& p) {
    if (p.nvars() != ctx->var_count()) throw PreconditionError("polynomial arity does not match context");
    std::map<MultiIndex, Rat> t;
    for (const auto& [a, c] : p.terms()) t.emplace(a, Rat(c));
    return FieldElement(std::move(ctx), std::move(t));
}

void FieldElement::normalize() {
    const std::size_t nvars = ctx_->var_count();
    // substitute rationals, fold variables onto class representatives
    std::map<MultiIndex, Rat> folded;
    for (const auto& [a, c] : terms_) {
        if (a.size() != nvars) throw InvalidInputError("multi-index arity mismatch");
        Rat coef = c;
        MultiIndex b(nvars, 0);
        for (std::size_t j = 0; j < nvars; ++j) {
            if (a[j] == 0) continue;
            const AlgebraicScalar& v = ctx_->lambda(j);
            if (v.is_rational()) {
                coef *= rpow(v.rational(), a[j]);
            } else {
                b[ctx_->var_rep(j)] += a[j];
            }
        }
        if (coef == 0) continue;
        auto [it, inserted] = folded.try_emplace(std::move(b), coef);
        if (!inserted) it->second += coef;
    }
    // reduce each irrational representative's exponent modulo its minimal polynomial
    for (std::size_t r = 0; r < nvars; ++r) {
        if (ctx_->lambda(r).is_rational() || ctx_->var_rep(r) != r) continue;
        const std::vector<Int>& mp = ctx_->lambda(r).minpoly();
        const unsigned d = ctx_->lambda(r).degree();
        std::map<MultiIndex, Rat> reduced;
        for (auto& [a, c] : folded) {
            if (a[r] < d) {
                auto [it, inserted] = reduced.try_emplace(a, c);
                if (!inserted) it->second += c;
                continue;
            }
            std::vector<Rat> rem = xpow_mod(mp, a[r]);
            for (unsigned k = 0; k < d; ++k) {
                if (rem[k] == 0) continue;
                MultiIndex b = a;
                b[r] = k;
                auto [it, inserted] = reduced.try_emplace(std::move(b), Rat(c * rem[k]));
                if (!inserted) it->second += c * rem[k];
            }
        }
        folded = std::move(reduced);
    }
    terms_.clear();
    for (auto& [a, c] : folded) {
        if (c != 0) terms_.emplace(a, c);
    }
}

bool FieldElement::is_rational() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && multi_index_total(terms_.begin()->first) == 0;
}

Rat FieldElement::rational() const {
    if (terms_.empty()) return Rat(0);
    if (!is_rational()) throw PreconditionError("field element is not rational");
    return terms_.begin()->second;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_context(ctx_, o.ctx_);
    std::map<MultiIndex, Rat> t = terms_;
    for (const auto& [a, c] : o.terms_) {
        auto [it, inserted] = t.try_emplace(a, c);
        if (!inserted) it->second += c;
    }
    return FieldElement(ctx_, std::move(t));
}

FieldElement FieldElement::operator-() const {
    std::map<MultiIndex, Rat> t;
    for (const auto& [a, c] : terms_) t.emplace(a, -c);
    return FieldElement(ctx_, std::move(t));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_context(ctx_, o.ctx_);
    std::map<MultiIndex, Rat> t;
    const std::size_t nvars = ctx_->var_count();
    for (const auto& [a, c] : terms_) {
        for (const auto& [b, d] : o.terms_) {
            MultiIndex ab(nvars);
            for (std::size_t k = 0; k < nvars; ++k) ab[k] = a[k] + b[k];
            auto [it, inserted] = t.try_emplace(std::move(ab), Rat(c * d));
            if (!inserted) it->second += c * d;
        }
    }
    return FieldElement(ctx_, std::move(t));
}

FieldElement FieldElement::operator*(const Rat& c) const {
    std::map<MultiIndex, Rat> t;
    if (c != 0) {
        for (const auto& [a, v] : terms_) t.emplace(a, v * c);
    }
    return FieldElement(ctx_, std::move(t));
}

std::pair<IntPolynomial, Int> FieldElement::cleared() const {
    Int l(1);
    for (const auto& [a, c] : terms_) l = lcm(l, denominator(c));
    IntPolynomial q(ctx_->var_count());
    for (const auto& [a, c] : terms_) {
        q.add_term(a, numerator(c) * (l / denominator(c)));
    }
    return {std::move(q), l};
}

int FieldElement::sign() const {
    if (terms_.empty()) return 0;
    if (is_rational()) return sign_of(terms_.begin()->second);
    auto [q, den] = cleared();
    return ctx_->certify_sign(q);
}

bool FieldElement::is_zero() const { return terms_.empty(); }

FieldElement FieldElement::abs() const { return sign() >= 0 ? *this : -*this; }

int FieldElement::compare(const FieldElement& o) const {
    if (ctx_ == o.ctx_ && terms_ == o.terms_) return 0;
    if (is_rational() && o.is_rational()) return sign_of(rational() - o.rational());
    return (*this - o).sign();
}

FieldElement FieldElement::inverse() const {
    if (sign() == 0) throw PreconditionError("division by zero field element");
    if (is_rational()) return from_rational(ctx_, 1 / rational());
    std::set<std::size_t> reps;
    for (const auto& [a, c] : terms_) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] > 0) reps.insert(j);
        }
    }
    if (reps.size() != 1) {
        throw UnsupportedFieldError("inverse requires a rational or a simple extension Q(alpha)");
    }
    const std::size_t r = *reps.begin();
    const AlgebraicScalar& alpha = ctx_->lambda(r);
    const unsigned d = alpha.degree();
    std::vector<Rat> f(d, Rat(0));
    for (const auto& [a, c] : terms_) f[a[r]] = c;
    std::vector<Rat> p(alpha.minpoly().size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = Rat(alpha.minpoly()[i]);
    std::vector<Rat> inv = inverse_mod(f, p);
    std::map<MultiIndex, Rat> t;
    for (std::size_t k = 0; k < inv.size(); ++k) {
        if (inv[k] == 0) continue;
        MultiIndex a(ctx_->var_count(), 0);
        a[r] = static_cast<unsigned>(k);
        t.emplace(std::move(a), inv[k]);
    }
    return FieldElement(ctx_, std::move(t));
}

Interval FieldElement::enclosure(const Rat& width) const {
    if (terms_.empty()) return Interval::point(Rat(0));
    if (is_rational()) return Interval::point(rational());
    auto [q, den] = cleared();
    Interval iv = ctx_->eval_enclosure(q, width * den);
    return scale(iv, Rat(1, den));
}

double FieldElement::approx() const {
    return to_double(enclosure(Rat(1, ipow(Int(2), 60))).mid());
}

std::string FieldElement::canonical_key() const {
    std::ostringstream out;
    for (const auto& [a, c] : terms_) {
        for (unsigned e : a) out << e << ",";
        out << ":" << rational_string(c) << ";";
    }
    return out.str();
}

std::string FieldElement::to_string() const {
    if (terms_.empty()) return "0";
    if (is_rational()) return rational_string(rational());
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [a, c] = *it;
        if (!first) out << (c > 0 ? " + " : " - ");
        else if (c < 0) out << "-";
        first = false;
        Rat ac = c < 0 ? Rat(-c) : c;
        bool has_var = multi_index_total(a) > 0;
        if (ac != 1 || !has_var) out << rational_string(ac);
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

}  // namespace selfsim
