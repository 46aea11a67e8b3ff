#include "selfsim/rational.hpp"
#include "selfsim/errors.hpp"

#include <algorithm>

namespace selfsim {

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(s));
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw InvalidInputError("rational literal with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw InvalidInputError("malformed rational literal: " + s);
    }
}

std::string rational_string(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Int rat_floor(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int r;
    mpz_fdiv_q(r.backend().data(), n.backend().data(), d.backend().data());
    return r;
}

Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

Int ipow(const Int& base, unsigned e) {
    Int r;
    mpz_pow_ui(r.backend().data(), base.backend().data(), e);
    return r;
}

Rat rpow(const Rat& base, unsigned e) {
    return Rat(ipow(numerator(base), e), ipow(denominator(base), e));
}

Rat dyadic_floor(const Rat& q, unsigned bits) {
    Int scaled = rat_floor(q * rpow(Rat(2), bits));
    return Rat(scaled, ipow(Int(2), bits));
}

Rat dyadic_ceil(const Rat& q, unsigned bits) {
    Int scaled = rat_ceil(q * rpow(Rat(2), bits));
    return Rat(scaled, ipow(Int(2), bits));
}

int sign_of(const Rat& q) {
    if (q > 0) return 1;
    if (q < 0) return -1;
    return 0;
}

Interval Interval::operator*(const Interval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

Interval Interval::pow(unsigned e) const {
    Interval r = Interval::point(Rat(1));
    Interval base = *this;
    // Square-and-multiply keeps even powers tight around zero-straddling intervals
    // only through the generic product; adequate for the widths used here.
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Interval Interval::abs() const {
    if (lo >= 0) return *this;
    if (hi <= 0) return {-hi, -lo};
    Rat nl = -lo;
    return {Rat(0), nl > hi ? nl : hi};
}

Interval scale(const Interval& iv, const Rat& c) {
    if (c >= 0) return {iv.lo * c, iv.hi * c};
    return {iv.hi * c, iv.lo * c};
}

namespace {

// True when q is an exact power of two; e receives the exponent.
bool exact_pow2(const Rat& q, long& e) {
    const Int& n = numerator(q);
    const Int& d = denominator(q);
    if (n <= 0) return false;
    auto is_p2 = [](const Int& v, long& bit) {
        bit = static_cast<long>(mpz_sizeinbase(v.backend().data(), 2)) - 1;
        return mpz_popcount(v.backend().data()) == 1;
    };
    long nb, db;
    if (!is_p2(n, nb) || !is_p2(d, db)) return false;
    e = nb - db;
    return true;
}

long floor_log2(const Rat& q) {
    long nb = static_cast<long>(mpz_sizeinbase(numerator(q).backend().data(), 2));
    long db = static_cast<long>(mpz_sizeinbase(denominator(q).backend().data(), 2));
    long e = nb - db;
    // candidate is within 1 of the truth; fix up by comparison
    Rat p = (e >= 0) ? Rat(ipow(Int(2), unsigned(e))) : Rat(1, ipow(Int(2), unsigned(-e)));
    if (q < p) { --e; p /= 2; }
    if (q >= 2 * p) ++e;
    return e;
}

// Directed log2 via iterated squaring with outward dyadic rounding.
// round_up == false yields a lower bound, round_up == true an upper bound
// (plus the tail term 2^-bits added by the caller).
Rat log2_directed(const Rat& x, unsigned bits, bool round_up) {
    long e = floor_log2(x);
    Rat m = (e >= 0) ? Rat(x / ipow(Int(2), unsigned(e))) : Rat(x * ipow(Int(2), unsigned(-e)));
    Rat acc(e);
    Rat bit_val(1, 2);
    const unsigned prec = bits + 16;
    for (unsigned k = 0; k < bits; ++k) {
        m = m * m;
        m = round_up ? dyadic_ceil(m, prec) : dyadic_floor(m, prec);
        if (m >= 2) {
            acc += bit_val;
            m /= 2;
        }
        bit_val /= 2;
    }
    return acc;
}

}  // namespace

Interval log2_enclosure(const Interval& pos, unsigned bits) {
    if (!(pos.lo > 0)) throw PreconditionError("log2_enclosure requires a positive interval");
    long e;
    if (pos.is_point() && exact_pow2(pos.lo, e)) return Interval::point(Rat(e));
    Rat lo = log2_directed(pos.lo, bits, /*round_up=*/false);
    Rat hi = log2_directed(pos.hi, bits, /*round_up=*/true) + Rat(1, ipow(Int(2), bits));
    return {lo, hi};
}

double to_double(const Rat& q) { return q.convert_to<double>(); }

}  // namespace selfsim
