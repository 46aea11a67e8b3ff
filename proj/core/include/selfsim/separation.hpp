#ifndef SELFSIM_SEPARATION_HPP
#define SELFSIM_SEPARATION_HPP

#include "selfsim/rational.hpp"

#include <vector>

namespace selfsim {

/// Data backing the height-based lower bound on nonzero values P(lambda).
///
/// degree_bound is an upper bound on [Q(lambda_0..lambda_m) : Q]; enlarging it
/// only weakens the bound, so the product of the minimal-polynomial degrees is
/// always admissible.
struct SeparationContext {
    std::vector<Int> heights;  // one per variable, each >= 1
    unsigned degree_bound = 1;

    std::size_t var_count() const { return heights.size(); }
};

/// (l * n^(m+1) * H^((m+1)n))^-D with H the max per-variable height.
/// Any P in the class P(l, n) satisfies P(lambda) = 0 or
/// |P(lambda)| >= separation_bound(ctx, l, n).
Rat separation_bound(const SeparationContext& ctx, const Int& l, unsigned n);

}  // namespace selfsim

#endif
