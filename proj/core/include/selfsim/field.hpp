#ifndef SELFSIM_FIELD_HPP
#define SELFSIM_FIELD_HPP

#include "selfsim/context.hpp"

#include <map>
#include <string>

namespace selfsim {

/// Exact element of Q[lambda_0, ..., lambda_m], stored as a sparse polynomial
/// with rational coefficients in normal form:
///   - rational variables substituted away,
///   - variables replaced by their certified-equality class representative,
///   - exponents reduced modulo the representative's minimal polynomial.
///
/// When the context has at most one irrational class the normal form is a
/// complete invariant: two elements are equal iff their term maps coincide.
/// Otherwise equality falls back on certified sign evaluation.  Immutable
/// value type; all operations are pure.
class FieldElement {
public:
    FieldElement() = default;
    static FieldElement from_rational(ContextPtr ctx, Rat v);
    static FieldElement variable(ContextPtr ctx, std::size_t j);
    /// P(lambda) as an exact field element.
    static FieldElement from_polynomial(ContextPtr ctx, const IntPolynomial& p);

    const ContextPtr& context() const { return ctx_; }

    bool is_rational() const;
    Rat rational() const;  // requires is_rational()

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator*(const Rat& c) const;
    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

    /// Certified sign: -1 / 0 / +1.
    int sign() const;
    bool is_zero() const;
    FieldElement abs() const;

    /// sign(*this - o); a total order on values.
    int compare(const FieldElement& o) const;
    bool equals(const FieldElement& o) const { return compare(o) == 0; }

    /// Multiplicative inverse.  Supported for rationals and for elements of a
    /// simple extension Q(alpha); throws UnsupportedFieldError otherwise and
    /// PreconditionError on zero.
    FieldElement inverse() const;

    /// Enclosure of width <= width (a point for rational values).
    Interval enclosure(const Rat& width) const;
    double approx() const;

    /// Value as Q(lambda)/den with integer polynomial Q and positive den.
    std::pair<IntPolynomial, Int> cleared() const;

    /// Serialization of the normal form; an equality key whenever
    /// ctx->canonical_complete().
    std::string canonical_key() const;
    std::string to_string() const;

private:
    FieldElement(ContextPtr ctx, std::map<MultiIndex, Rat> terms);
    void normalize();

    ContextPtr ctx_;
    std::map<MultiIndex, Rat> terms_;
};

}  // namespace selfsim

#endif
