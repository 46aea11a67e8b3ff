#ifndef SELFSIM_FUNCTIONALS_HPP
#define SELFSIM_FUNCTIONALS_HPP

#include "selfsim/ifs.hpp"
#include "selfsim/linalg.hpp"
#include "selfsim/overlaps.hpp"

#include <optional>

namespace selfsim {

/// L_{w1,w2}(t) = phi_{t,w1}(0) - phi_{t,w2}(0), carried as its coefficient
/// polynomials P^1..P^m in P(1, n) together with their exact evaluations
/// a^j = P^j(lambda).
struct LinearFunctional {
    Word w1, w2;
    std::vector<IntPolynomial> coeff_polys;  // index j-1 holds P^j
    std::vector<FieldElement> coeffs;        // index j-1 holds a^j
};

LinearFunctional functional_from_words(const IFSModel& model, const Word& w1, const Word& w2);

/// sum_j a^j x_j for a vector x of exact coordinates (x_1..x_m).
FieldElement functional_value(const LinearFunctional& fun, const std::vector<FieldElement>& x);

/// A_n(delta): every L in L_n with |L(t^l)| <= delta^n for all coordinates l,
/// membership certified exactly.
struct CandidateSet {
    IFSModel model;
    unsigned n = 0;
    Rat delta;
    std::vector<LinearFunctional> members;
    /// Two distinct words shared an atom of the joint partition
    /// E_(ceil(-log2 delta) n) v F, which forces nonemptiness.
    bool entropy_deficit = false;

    FieldMatrix coefficient_rows() const;
};

CandidateSet build_candidate_set(const IFSModel& model, const Rat& delta, unsigned n,
                                 std::uint64_t budget = kDefaultWordBudget);

/// Rank of the coefficient matrix via greedy Gram-determinant row selection,
/// cross-checked against exact row reduction.
struct RankReport {
    std::size_t rank = 0;
    std::vector<std::size_t> row_indices;  // maximal independent subset
    FieldMatrix basis_rows;
    FieldElement gram_determinant;         // of the selected rows (1 when rank 0)
};

RankReport gram_rank(const FieldMatrix& rows);
RankReport gram_rank(const CandidateSet& s);

/// ||pi_{V_perp} x||^2 = G(rows, x) / G(rows); zero iff x lies in the row span.
FieldElement projection_residual(const RankReport& report, const std::vector<FieldElement>& x);

/// First-case Cramer reconstruction.  Requires rank(S) = m - d and the first
/// d translations equal to the standard basis.  Returns the full translation
/// matrix (t_j = e_j for j <= d) or nullopt when the column determinant
/// vanishes for every admissible choice.
std::optional<std::vector<std::vector<FieldElement>>> reconstruct_translations(const CandidateSet& s);

/// Stationarity of the Cramer ratios across consecutive depths: certifies
/// Q_n(lambda) = 0 for every (k, l), with
/// Q_n = P_n^(Jkl) P_(n+1)^J - P_(n+1)^(Jkl) P_n^J.
bool consistency_check(const CandidateSet& s_n, const CandidateSet& s_n1);

/// Second-case lift: from rank r < m - d, produce translations
/// s in ([-1,1]^d')^m with d' = m - r such that every member functional
/// vanishes on them, plus the linear-combination record
/// t_j = sum_l s_j^l t_(base_columns[l]).
struct LiftResult {
    std::size_t dprime = 0;
    std::vector<std::size_t> base_columns;           // indices into 1..m (0-based: 0..m-1)
    std::vector<std::vector<FieldElement>> s;        // m rows, each of dimension d'
    std::vector<std::size_t> cramer_columns;         // the maximizing column set J
};

LiftResult lift_to_higher_dim(const CandidateSet& s, std::size_t r);

/// Transport an overlap certificate of the lifted model back to the original
/// one, after certifying the combination record on model_t.
OverlapCertificate transfer_certificate(const IFSModel& model_t, const IFSModel& model_s,
                                        const OverlapCertificate& cert, const LiftResult& record);

}  // namespace selfsim

#endif
