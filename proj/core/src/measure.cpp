#include "selfsim/measure.hpp"
#include "selfsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <unordered_map>

namespace selfsim {

namespace {

int compare_maps(const SimilarityMap& a, const SimilarityMap& b) {
    int c = a.scale.compare(b.scale);
    if (c != 0) return c;
    for (std::size_t i = 0; i < a.translation.size(); ++i) {
        c = a.translation[i].compare(b.translation[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string map_key(const SimilarityMap& m) {
    std::string key = m.scale.canonical_key();
    for (const FieldElement& c : m.translation) {
        key += "|";
        key += c.canonical_key();
    }
    return key;
}

}  // namespace

DiscreteAffineMeasure delta_identity(const ContextPtr& ctx, int dim) {
    DiscreteAffineMeasure nu;
    nu.dim = dim;
    nu.atoms.push_back({{FieldElement::from_rational(ctx, Rat(1)),
                         std::vector<FieldElement>(dim, FieldElement::from_rational(ctx, Rat(0)))},
                        Rat(1)});
    return nu;
}

DiscreteAffineMeasure merge_atoms(const ContextPtr& ctx, int dim,
                                  std::vector<DiscreteAffineMeasure::Atom> atoms) {
    DiscreteAffineMeasure nu;
    nu.dim = dim;
    if (ctx->canonical_complete()) {
        std::unordered_map<std::string, std::size_t> seen;
        for (auto& a : atoms) {
            auto [it, inserted] = seen.try_emplace(map_key(a.map), nu.atoms.size());
            if (inserted) {
                nu.atoms.push_back(std::move(a));
            } else {
                nu.atoms[it->second].mass += a.mass;
            }
        }
    } else {
        std::sort(atoms.begin(), atoms.end(),
                  [](const DiscreteAffineMeasure::Atom& a, const DiscreteAffineMeasure::Atom& b) {
                      return compare_maps(a.map, b.map) < 0;
                  });
        for (auto& a : atoms) {
            if (!nu.atoms.empty() && compare_maps(nu.atoms.back().map, a.map) == 0) {
                nu.atoms.back().mass += a.mass;
            } else {
                nu.atoms.push_back(std::move(a));
            }
        }
    }
    return nu;
}

DiscreteAffineMeasure nu_n(const IFSModel& model, unsigned n, std::uint64_t budget) {
    if (n < 1) throw PreconditionError("nu_n requires n >= 1");
    std::vector<DiscreteAffineMeasure::Atom> atoms;
    for_each_word(model, n, [&](const Word& w, const SimilarityMap& m) {
        Rat mass(1);
        for (unsigned j : w) mass *= model.probabilities()[j];
        atoms.push_back({m, std::move(mass)});
    }, budget);
    return merge_atoms(model.context(), model.dim(), std::move(atoms));
}

DiscreteAffineMeasure convolve(const ContextPtr& ctx, const DiscreteAffineMeasure& a,
                               const DiscreteAffineMeasure& b) {
    if (a.dim != b.dim) throw InvalidInputError("convolution requires equal ambient dimension");
    std::vector<DiscreteAffineMeasure::Atom> atoms;
    atoms.reserve(a.atoms.size() * b.atoms.size());
    for (const auto& x : a.atoms) {
        for (const auto& y : b.atoms) {
            // (psi1 o psi2)(v) = s1 s2 v + s1 t2 + t1
            SimilarityMap m;
            m.scale = x.map.scale * y.map.scale;
            m.translation.reserve(a.dim);
            for (int l = 0; l < a.dim; ++l) {
                m.translation.push_back(x.map.translation[l] + x.map.scale * y.map.translation[l]);
            }
            atoms.push_back({std::move(m), x.mass * y.mass});
        }
    }
    return merge_atoms(ctx, a.dim, std::move(atoms));
}

PartitionSpec PartitionSpec::dyadic(Rat level) {
    if (level < 0) throw InvalidInputError("dyadic partition level must be nonnegative");
    return {Variant::TranslationDyadic, std::move(level)};
}
PartitionSpec PartitionSpec::scaling() { return {Variant::ScalingClasses, Rat(0)}; }
PartitionSpec PartitionSpec::join(Rat level) {
    if (level < 0) throw InvalidInputError("dyadic partition level must be nonnegative");
    return {Variant::Join, std::move(level)};
}
PartitionSpec PartitionSpec::singletons() { return {Variant::Singletons, Rat(0)}; }

Int certified_floor(const FieldElement& x) {
    if (x.is_rational()) return rat_floor(x.rational());
    for (unsigned k = 16; k <= 256; k *= 2) {
        Interval iv = x.enclosure(Rat(1, ipow(Int(2), k)));
        Int flo = rat_floor(iv.lo);
        Int fhi = rat_floor(iv.hi);
        if (flo == fhi) return flo;
    }
    // enclosure straddles exactly one integer b; settle by certified equality
    Interval iv = x.enclosure(Rat(1, ipow(Int(2), 256)));
    Int b = rat_ceil(iv.lo);
    int s = (x - FieldElement::from_rational(x.context(), Rat(b))).sign();
    return s < 0 ? Int(b - 1) : b;  // x == b sits in [b, b+1) half-open
}

std::vector<Rat> partition_masses(const ContextPtr& ctx, const DiscreteAffineMeasure& nu,
                                  const PartitionSpec& spec) {
    using Variant = PartitionSpec::Variant;
    if (spec.variant == Variant::Singletons) {
        std::vector<Rat> out;
        for (const auto& a : nu.atoms) out.push_back(a.mass);
        return out;
    }

    // scaling classes: indices into a list of certified-distinct scales
    std::vector<std::size_t> scale_class(nu.atoms.size(), 0);
    if (spec.variant == Variant::ScalingClasses || spec.variant == Variant::Join) {
        std::vector<FieldElement> reps;
        if (ctx->canonical_complete()) {
            std::unordered_map<std::string, std::size_t> seen;
            for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
                auto [it, inserted] = seen.try_emplace(nu.atoms[i].map.scale.canonical_key(), reps.size());
                if (inserted) reps.push_back(nu.atoms[i].map.scale);
                scale_class[i] = it->second;
            }
        } else {
            for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
                std::size_t c = reps.size();
                for (std::size_t r = 0; r < reps.size(); ++r) {
                    if (reps[r].equals(nu.atoms[i].map.scale)) {
                        c = r;
                        break;
                    }
                }
                if (c == reps.size()) reps.push_back(nu.atoms[i].map.scale);
                scale_class[i] = c;
            }
        }
    }

    std::map<std::string, Rat> cells;
    const Int level = rat_floor(spec.level);
    const Rat scale_factor(ipow(Int(2), static_cast<unsigned>(level)));
    for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
        std::string key;
        if (spec.variant == Variant::TranslationDyadic || spec.variant == Variant::Join) {
            for (const FieldElement& c : nu.atoms[i].map.translation) {
                key += certified_floor(c * scale_factor).str() + ",";
            }
        }
        if (spec.variant == Variant::ScalingClasses || spec.variant == Variant::Join) {
            key += "#" + std::to_string(scale_class[i]);
        }
        cells[key] += nu.atoms[i].mass;
    }
    std::vector<Rat> out;
    for (auto& [k, m] : cells) out.push_back(std::move(m));
    return out;
}

double partition_entropy(const ContextPtr& ctx, const DiscreteAffineMeasure& nu,
                         const PartitionSpec& spec) {
    double h = 0;
    for (const Rat& m : partition_masses(ctx, nu, spec)) {
        double p = to_double(m);
        if (p > 0) h -= p * std::log2(p);
    }
    return h;
}

FlooredLevel chi_n_floor(const IFSModel& model, unsigned n) {
    for (unsigned bits = 40; bits <= 160; bits *= 2) {
        Interval cn = scale(chi_enclosure(model, bits), Rat(n));
        Int flo = rat_floor(cn.lo);
        Int fhi = rat_floor(cn.hi);
        if (flo == fhi) return {flo, false};
    }
    // chi*n is numerically indistinguishable from an integer: round the
    // enclosure midpoint down, with a warning
    Interval cn = scale(chi_enclosure(model, 160), Rat(n));
    std::cerr << "warning: chi*n within 2^-30 of an integer; flooring the enclosure midpoint\n";
    return {rat_floor(cn.mid()), true};
}

namespace {

double chi_value(const IFSModel& model) { return to_double(chi_enclosure(model).mid()); }

}  // namespace

double dim_estimate(const IFSModel& model, unsigned n, std::uint64_t budget) {
    if (n < 1) throw PreconditionError("dim_estimate requires n >= 1");
    DiscreteAffineMeasure nu = nu_n(model, n, budget);
    FlooredLevel level = chi_n_floor(model, n);
    if (level.value < 0) level.value = 0;
    double h = partition_entropy(model.context(), nu, PartitionSpec::dyadic(Rat(level.value)));
    return h / (chi_value(model) * n);
}

double dim_upper_bound(const IFSModel& model, unsigned n, std::uint64_t budget) {
    if (n < 1) throw PreconditionError("dim_upper_bound requires n >= 1");
    DiscreteAffineMeasure nu = nu_n(model, n, budget);
    double h = partition_entropy(model.context(), nu, PartitionSpec::singletons());
    return h / (chi_value(model) * n);
}

double hochman_diagnostic(const IFSModel& model, unsigned n, const Rat& q, std::uint64_t budget) {
    if (n < 1) throw PreconditionError("hochman_diagnostic requires n >= 1");
    const IFSModel norm = normalize(model);
    if (!span_check(norm)) {
        throw PreconditionError("hochman_diagnostic requires spanning translations");
    }
    Interval chi = chi_enclosure(model, 120);
    if (q < chi.lo) throw PreconditionError("hochman_diagnostic requires q >= chi");
    DiscreteAffineMeasure nu = nu_n(model, n, budget);
    double h = partition_entropy(model.context(), nu, PartitionSpec::join(q * n));
    return h / (chi_value(model) * n);
}

}  // namespace selfsim
