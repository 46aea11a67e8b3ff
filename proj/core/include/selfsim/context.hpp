#ifndef SELFSIM_CONTEXT_HPP
#define SELFSIM_CONTEXT_HPP

#include "selfsim/algebraic.hpp"
#include "selfsim/polynomial.hpp"
#include "selfsim/separation.hpp"

#include <memory>
#include <vector>

namespace selfsim {

/// The evaluation point lambda = (lambda_0, ..., lambda_m) together with
/// everything needed to certify signs of integer polynomials at it.
///
/// Construction partitions the variables into certified-equality classes and
/// derives the separation context: per-variable heights and the field-degree
/// upper bound (product of minimal-polynomial degrees over distinct irrational
/// classes).  Immutable after construction.
class AlgebraicContext {
public:
    static std::shared_ptr<const AlgebraicContext> make(std::vector<AlgebraicScalar> lambda);

    std::size_t var_count() const { return lambda_.size(); }
    const AlgebraicScalar& lambda(std::size_t j) const { return lambda_[j]; }
    const std::vector<AlgebraicScalar>& lambdas() const { return lambda_; }
    const SeparationContext& separation() const { return sep_; }

    bool all_rational() const { return all_rational_; }
    /// Representative variable of j's certified-equality class.
    std::size_t var_rep(std::size_t j) const { return var_rep_[j]; }
    /// True when the normal form used by FieldElement is a complete invariant
    /// for value equality (all variables rational, or a single irrational
    /// class so the quotient is the field Q(alpha)).
    bool canonical_complete() const { return canonical_complete_; }

    /// Interval of width <= width provably containing P(lambda); a point for
    /// all-rational lambda.
    Interval eval_enclosure(const IntPolynomial& p, const Rat& width) const;

    /// Exact sign of P(lambda): refine until the enclosure excludes zero or is
    /// narrower than the separation bound for P's class.  -1 / 0 / +1.
    int certify_sign(const IntPolynomial& p) const;

private:
    AlgebraicContext() = default;
    Interval enclosure_at(const IntPolynomial& p, unsigned bits) const;

    std::vector<AlgebraicScalar> lambda_;
    SeparationContext sep_;
    std::vector<std::size_t> var_rep_;
    bool all_rational_ = true;
    bool canonical_complete_ = true;
};

using ContextPtr = std::shared_ptr<const AlgebraicContext>;

}  // namespace selfsim

#endif
