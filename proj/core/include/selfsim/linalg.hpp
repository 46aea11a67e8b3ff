#ifndef SELFSIM_LINALG_HPP
#define SELFSIM_LINALG_HPP

#include "selfsim/field.hpp"

#include <vector>

namespace selfsim {

using FieldMatrix = std::vector<std::vector<FieldElement>>;

/// Division-free cofactor determinant.  Intended for the small matrices this
/// project produces (coefficient blocks of candidate sets, spans in R^d).
FieldElement field_det(const FieldMatrix& m);

/// Exact rank via certified-nonzero minors; works in any context since it
/// needs no division.
std::size_t rank_by_minors(const FieldMatrix& m);

/// Exact rank by fraction-free row reduction over the rationals.
std::size_t rational_row_reduction_rank(std::vector<std::vector<Rat>> m);

/// Gram determinant G(x_1, ..., x_k) of the given rows.
FieldElement gram_det(const FieldMatrix& rows);

}  // namespace selfsim

#endif
