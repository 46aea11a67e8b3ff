#ifndef SELFSIM_IFS_HPP
#define SELFSIM_IFS_HPP

#include "selfsim/field.hpp"

#include <vector>

namespace selfsim {

/// Word over the alphabet {0, ..., m}.
using Word = std::vector<unsigned>;

std::string word_string(const Word& w);

/// Occurrence counts of each symbol; |alpha(w)| = |w|.
MultiIndex word_multi_index(const Word& w, std::size_t alphabet);

/// x -> scale * x + translation, with certified nonzero scale.
struct SimilarityMap {
    FieldElement scale;
    std::vector<FieldElement> translation;
};

/// Self-similar IFS phi_j(x) = lambda_j x + t_j on R^d with probability
/// weights.  Immutable after construction; make() certifies the contraction
/// invariants (lambda_j in (-1,1) \ {0}) and that the weights are positive
/// rationals summing to one.
class IFSModel {
public:
    static IFSModel make(int dim, std::vector<AlgebraicScalar> lambda,
                         std::vector<std::vector<FieldElement>> translations,
                         std::vector<Rat> probabilities);

    int dim() const { return dim_; }
    const ContextPtr& context() const { return ctx_; }
    std::size_t map_count() const { return ctx_->var_count(); }  // m + 1
    std::size_t m() const { return map_count() - 1; }
    const std::vector<FieldElement>& translation(std::size_t j) const { return t_[j]; }
    const std::vector<std::vector<FieldElement>>& translations() const { return t_; }
    const std::vector<Rat>& probabilities() const { return p_; }
    FieldElement lambda_element(std::size_t j) const;

    bool is_normalized() const;  // t_0 == 0

private:
    IFSModel() = default;
    int dim_ = 1;
    ContextPtr ctx_;
    std::vector<std::vector<FieldElement>> t_;
    std::vector<Rat> p_;
};

/// Conjugate so that t_0 = 0 (shift by the fixed point of phi_0).  Word-pair
/// equalities, hence exact overlaps, are preserved.
IFSModel normalize(const IFSModel& model);

/// phi_w = phi_{j1} o ... o phi_{jn}; the empty word gives the identity.
SimilarityMap compose(const IFSModel& model, const Word& w);

struct RateStats {
    double entropy;    // H(p), base-2
    double lyapunov;   // chi
    double beta;       // min{1, H(p)/chi}
};
RateStats rate_stats(const IFSModel& model);

/// Certified enclosure of chi = -sum p_j log2 |lambda_j|.
Interval chi_enclosure(const IFSModel& model, unsigned bits = 60);

/// Unique s >= 0 with sum |lambda_j|^s = 1, by bisection to 2^-40.
double similarity_dimension(const IFSModel& model);

/// True iff t_1, ..., t_m span R^d (exact rank; affine irreducibility
/// hypothesis).  Requires a normalized model.
bool span_check(const IFSModel& model);

/// Centered box of rational radius max|t_j| / (1 - max|lambda_j|), forward
/// invariant under every map, hence containing the attractor.
struct Box {
    int dim;
    Rat radius;
};
Box attractor_hull(const IFSModel& model);

}  // namespace selfsim

#endif
