#ifndef SELFSIM_MEASURE_HPP
#define SELFSIM_MEASURE_HPP

#include "selfsim/ifs.hpp"
#include "selfsim/overlaps.hpp"

#include <cstdint>
#include <vector>

namespace selfsim {

/// Finitely supported probability measure on similarity maps; atoms are
/// pairwise distinct under certified equality and masses sum to exactly 1.
struct DiscreteAffineMeasure {
    int dim = 0;
    struct Atom {
        SimilarityMap map;
        Rat mass;
    };
    std::vector<Atom> atoms;
};

/// Point mass at the identity map.
DiscreteAffineMeasure delta_identity(const ContextPtr& ctx, int dim);

/// Merge certified-equal maps, add masses, drop nothing else.
DiscreteAffineMeasure merge_atoms(const ContextPtr& ctx, int dim,
                                  std::vector<DiscreteAffineMeasure::Atom> atoms);

/// nu^(n) = sum_w p_w delta_(phi_w) over all length-n words.
DiscreteAffineMeasure nu_n(const IFSModel& model, unsigned n,
                           std::uint64_t budget = kDefaultWordBudget);

/// Group convolution: atom psi1 o psi2 with mass product, merged canonically.
DiscreteAffineMeasure convolve(const ContextPtr& ctx, const DiscreteAffineMeasure& a,
                               const DiscreteAffineMeasure& b);

/// Partition of the similarity group: half-open dyadic translation cells at a
/// floored level, scaling classes, their common refinement, or singletons.
struct PartitionSpec {
    enum class Variant { TranslationDyadic, ScalingClasses, Join, Singletons };
    Variant variant = Variant::Singletons;
    Rat level;  // floored; meaningful for TranslationDyadic and Join

    static PartitionSpec dyadic(Rat level);
    static PartitionSpec scaling();
    static PartitionSpec join(Rat level);
    static PartitionSpec singletons();
};

/// Exact cell masses of the measure under the partition.
std::vector<Rat> partition_masses(const ContextPtr& ctx, const DiscreteAffineMeasure& nu,
                                  const PartitionSpec& spec);

/// H(nu, spec) = -sum theta(D) log2 theta(D); masses exact, logs in double.
double partition_entropy(const ContextPtr& ctx, const DiscreteAffineMeasure& nu,
                         const PartitionSpec& spec);

/// floor(x) decided exactly: interval refinement, boundary cases settled by a
/// certified equality test (half-open convention sends a boundary point to the
/// right cell, i.e. floor(b) = b).
Int certified_floor(const FieldElement& x);

/// floor(chi * n) from a certified enclosure; `warned` is set when chi*n sits
/// within 2^-30 of an integer and the midpoint-round-down convention decided.
struct FlooredLevel {
    Int value;
    bool warned = false;
};
FlooredLevel chi_n_floor(const IFSModel& model, unsigned n);

/// (1/(chi n)) H(nu^(n), E_floor(chi n)) — one element of the estimate
/// sequence converging to dim mu, with no rate claim.
double dim_estimate(const IFSModel& model, unsigned n, std::uint64_t budget = kDefaultWordBudget);

/// (1/(chi n)) H(nu^(n)); a valid upper bound for dim mu at every n.
double dim_upper_bound(const IFSModel& model, unsigned n, std::uint64_t budget = kDefaultWordBudget);

/// (1/(chi n)) H(nu^(n), E_floor(qn) v F): dyadic translation cells refined by
/// certified scaling classes.  Requires q >= chi and spanning translations.
double hochman_diagnostic(const IFSModel& model, unsigned n, const Rat& q,
                          std::uint64_t budget = kDefaultWordBudget);

}  // namespace selfsim

#endif
