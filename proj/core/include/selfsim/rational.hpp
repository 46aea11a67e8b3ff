#ifndef SELFSIM_RATIONAL_HPP
#define SELFSIM_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace selfsim {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// "p/q" or "p"; denominator must be nonzero.
Rat parse_rational(const std::string& s);
std::string rational_string(const Rat& q);

Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);

Int ipow(const Int& base, unsigned e);
Rat rpow(const Rat& base, unsigned e);

// Largest dyadic k/2^bits <= q, and smallest >= q.  Used to keep interval
// endpoints small during iterated log extraction.
Rat dyadic_floor(const Rat& q, unsigned bits);
Rat dyadic_ceil(const Rat& q, unsigned bits);

int sign_of(const Rat& q);

/// Closed rational interval [lo, hi] with exact endpoints.
struct Interval {
    Rat lo, hi;

    Interval() = default;
    Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
    static Interval point(const Rat& v) { return Interval(v, v); }

    Rat width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    // Sign when the interval excludes zero; 0 when it straddles.
    int definite_sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        return 0;
    }
    Rat mid() const { return (lo + hi) / 2; }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
    Interval operator-() const { return {-hi, -lo}; }
    Interval operator*(const Interval& o) const;
    Interval pow(unsigned e) const;
    Interval abs() const;
};

Interval scale(const Interval& iv, const Rat& c);

// Enclosure of log2 over a positive interval, correct to roughly 2^-bits.
// Exact for exact powers of two (zero-width result).
Interval log2_enclosure(const Interval& pos, unsigned bits = 60);

double to_double(const Rat& q);

}  // namespace selfsim

#endif
