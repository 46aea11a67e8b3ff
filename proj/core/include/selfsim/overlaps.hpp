#ifndef SELFSIM_OVERLAPS_HPP
#define SELFSIM_OVERLAPS_HPP

#include "selfsim/ifs.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace selfsim {

inline constexpr std::uint64_t kDefaultWordBudget = std::uint64_t(1) << 22;

/// Number of length-n words, guarded against the budget.
std::uint64_t word_space_size(std::size_t alphabet, unsigned n, std::uint64_t budget);

/// Equivalence class of words of length n with certified-equal contraction
/// product lambda_w.
struct LambdaClass {
    FieldElement scale;
    std::vector<Word> words;
};

/// Partition of Lambda^n by certified-equal lambda_w.  Words are grouped by
/// multi-index first (lambda_w depends only on alpha(w)) and groups merged
/// when the monomial difference certifies to zero; the class count is at most
/// n^(m+1).
std::vector<LambdaClass> lambda_classes(const IFSModel& model, unsigned n,
                                        std::uint64_t budget = kDefaultWordBudget);

/// Verified pair of distinct equal-length words with phi_w1 = phi_w2,
/// together with the certified-zero integer-polynomial identities backing the
/// equality (scale identity plus one per translation coordinate).
struct OverlapCertificate {
    unsigned n = 0;
    Word w1, w2;
    IntPolynomial scale_identity;
    std::vector<IntPolynomial> translation_identities;
};

OverlapCertificate make_certificate(const IFSModel& model, const Word& w1, const Word& w2);

/// The overlap gap Delta_n: minimal translation distance over distinct
/// word pairs with equal contraction product (sup-norm for d > 1).
/// Undefined when no lambda class has two members.
struct DeltaResult {
    bool defined = false;
    FieldElement value;
};

DeltaResult delta_n(const IFSModel& model, unsigned n, std::uint64_t budget = kDefaultWordBudget);

/// (n, (1/n) log2 Delta_n) for n = 2..n_max; exact overlaps give -inf,
/// undefined entries are skipped.
struct DecayProfile {
    struct Point {
        unsigned n;
        double normalized_log_gap;  // -inf when Delta_n = 0
    };
    std::vector<Point> points;
    bool monotone_nonincreasing = true;
};

DecayProfile decay_profile(const IFSModel& model, unsigned n_max,
                           std::uint64_t budget = kDefaultWordBudget);

/// Search depths 1..n_max for an exact overlap; the returned certificate is
/// the lexicographically smallest (n, w1, w2).  The decision path is exact.
std::optional<OverlapCertificate> find_overlap(const IFSModel& model, unsigned n_max,
                                               std::uint64_t budget = kDefaultWordBudget);

/// Independent re-check: recomposes both words from scratch and certifies
/// every coordinate difference.  False for tampered or trivial (w1 == w2)
/// certificates; throws on malformed words.
bool verify_certificate(const IFSModel& model, const OverlapCertificate& cert);

/// Streaming enumeration of Lambda^n with incrementally composed maps.
void for_each_word(const IFSModel& model, unsigned n,
                   const std::function<void(const Word&, const SimilarityMap&)>& fn,
                   std::uint64_t budget = kDefaultWordBudget);

}  // namespace selfsim

#endif
