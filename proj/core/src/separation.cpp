#include "selfsim/separation.hpp"
#include "selfsim/errors.hpp"

namespace selfsim {

Rat separation_bound(const SeparationContext& ctx, const Int& l, unsigned n) {
    if (l < 1 || n < 1) throw PreconditionError("separation_bound requires l, n >= 1");
    if (ctx.heights.empty() || ctx.degree_bound < 1) {
        throw PreconditionError("separation context must carry at least one height and a positive degree bound");
    }
    Int h(1);
    for (const Int& v : ctx.heights) {
        if (v < 1) throw PreconditionError("heights must be >= 1");
        h = std::max(h, v);
    }
    const unsigned vars = static_cast<unsigned>(ctx.heights.size());  // m + 1
    // H(P(lambda)) <= l1(P) * prod H(lambda_j)^n <= l n^(m+1) H^((m+1)n)
    Int height_ub = l * ipow(Int(n), vars) * ipow(h, vars * n);
    Int denom = ipow(height_ub, ctx.degree_bound);
    return Rat(1, denom);
}

}  // namespace selfsim
