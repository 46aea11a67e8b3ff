#include "selfsim/overlaps.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace selfsim {

std::uint64_t word_space_size(std::size_t alphabet, unsigned n, std::uint64_t budget) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (count > budget / alphabet + 1) {
            throw BudgetExceededError("word space (" + std::to_string(alphabet) + "^" +
                                      std::to_string(n) + ") exceeds budget " + std::to_string(budget));
        }
        count *= alphabet;
    }
    if (count > budget) {
        throw BudgetExceededError("word space exceeds budget " + std::to_string(budget));
    }
    return count;
}

void for_each_word(const IFSModel& model, unsigned n,
                   const std::function<void(const Word&, const SimilarityMap&)>& fn,
                   std::uint64_t budget) {
    word_space_size(model.map_count(), n, budget);
    const ContextPtr& ctx = model.context();
    Word w;
    w.reserve(n);
    std::vector<SimilarityMap> stack;
    stack.push_back({FieldElement::from_rational(ctx, Rat(1)),
                     std::vector<FieldElement>(model.dim(), FieldElement::from_rational(ctx, Rat(0)))});
    std::function<void()> rec = [&]() {
        if (w.size() == n) {
            fn(w, stack.back());
            return;
        }
        for (unsigned j = 0; j < model.map_count(); ++j) {
            const SimilarityMap& cur = stack.back();
            SimilarityMap next;
            next.translation.reserve(model.dim());
            for (int l = 0; l < model.dim(); ++l) {
                next.translation.push_back(cur.translation[l] + cur.scale * model.translation(j)[l]);
            }
            next.scale = cur.scale * model.lambda_element(j);
            w.push_back(j);
            stack.push_back(std::move(next));
            rec();
            stack.pop_back();
            w.pop_back();
        }
    };
    rec();
}

namespace {

struct EnumClass {
    FieldElement scale;
    std::vector<Word> words;
    std::vector<std::vector<FieldElement>> translations;  // phi_w(0), parallel to words
};

// Partition Lambda^n by certified-equal lambda_w, carrying phi_w(0).
std::vector<EnumClass> enumerate_classes(const IFSModel& model, unsigned n, std::uint64_t budget) {
    const ContextPtr& ctx = model.context();
    // bucket by multi-index first; lambda_w depends only on alpha(w)
    std::map<MultiIndex, std::size_t> alpha_to_class;
    std::vector<EnumClass> classes;
    std::vector<MultiIndex> class_alpha;
    for_each_word(model, n, [&](const Word& w, const SimilarityMap& m) {
        MultiIndex a = word_multi_index(w, model.map_count());
        auto it = alpha_to_class.find(a);
        std::size_t idx;
        if (it != alpha_to_class.end()) {
            idx = it->second;
        } else {
            // merge with an existing class when the monomial difference
            // certifies to zero at lambda
            FieldElement scale = m.scale;
            idx = classes.size();
            if (ctx->canonical_complete()) {
                for (std::size_t c = 0; c < classes.size(); ++c) {
                    if (classes[c].scale.canonical_key() == scale.canonical_key()) {
                        idx = c;
                        break;
                    }
                }
            } else {
                for (std::size_t c = 0; c < classes.size(); ++c) {
                    if (classes[c].scale.equals(scale)) {
                        idx = c;
                        break;
                    }
                }
            }
            if (idx == classes.size()) {
                classes.push_back({scale, {}, {}});
                class_alpha.push_back(a);
            }
            alpha_to_class.emplace(std::move(a), idx);
        }
        classes[idx].words.push_back(w);
        classes[idx].translations.push_back(m.translation);
    }, budget);
    return classes;
}

int compare_vectors(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = a[i].compare(b[i]);
        if (c != 0) return c;
    }
    return 0;
}

}  // namespace

std::vector<LambdaClass> lambda_classes(const IFSModel& model, unsigned n, std::uint64_t budget) {
    if (n < 1) throw PreconditionError("lambda_classes requires n >= 1");
    std::vector<LambdaClass> out;
    for (auto& c : enumerate_classes(model, n, budget)) {
        out.push_back({std::move(c.scale), std::move(c.words)});
    }
    return out;
}

DeltaResult delta_n(const IFSModel& model, unsigned n, std::uint64_t budget) {
    if (n < 1) throw PreconditionError("delta_n requires n >= 1");
    auto classes = enumerate_classes(model, n, budget);
    const ContextPtr& ctx = model.context();
    DeltaResult result;
    auto consider = [&](FieldElement gap) {
        if (!result.defined || gap.compare(result.value) < 0) {
            result.defined = true;
            result.value = std::move(gap);
        }
    };
    for (auto& cls : classes) {
        if (cls.words.size() < 2) continue;
        if (model.dim() == 1) {
            // sorted adjacent-gap scan
            if (ctx->all_rational()) {
                std::vector<Rat> vals;
                vals.reserve(cls.translations.size());
                for (const auto& t : cls.translations) vals.push_back(t[0].rational());
                std::sort(vals.begin(), vals.end());
                for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                    consider(FieldElement::from_rational(ctx, vals[i + 1] - vals[i]));
                }
            } else {
                std::vector<FieldElement> vals;
                vals.reserve(cls.translations.size());
                for (const auto& t : cls.translations) vals.push_back(t[0]);
                std::sort(vals.begin(), vals.end(),
                          [](const FieldElement& a, const FieldElement& b) { return a.compare(b) < 0; });
                for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                    consider(vals[i + 1] - vals[i]);
                }
            }
        } else {
            // sup-norm over all pairs (documented extension for d > 1)
            for (std::size_t i = 0; i < cls.translations.size(); ++i) {
                for (std::size_t j = i + 1; j < cls.translations.size(); ++j) {
                    FieldElement norm = FieldElement::from_rational(ctx, Rat(0));
                    for (int l = 0; l < model.dim(); ++l) {
                        FieldElement diff = (cls.translations[i][l] - cls.translations[j][l]).abs();
                        if (diff.compare(norm) > 0) norm = std::move(diff);
                    }
                    consider(std::move(norm));
                }
            }
        }
        if (result.defined && result.value.is_zero()) return result;
    }
    return result;
}

DecayProfile decay_profile(const IFSModel& model, unsigned n_max, std::uint64_t budget) {
    if (n_max < 2) throw PreconditionError("decay_profile requires n_max >= 2");
    DecayProfile profile;
    double prev = std::numeric_limits<double>::infinity();
    for (unsigned n = 2; n <= n_max; ++n) {
        DeltaResult d = delta_n(model, n, budget);
        if (!d.defined) continue;
        double v;
        if (d.value.sign() == 0) {
            v = -std::numeric_limits<double>::infinity();
        } else {
            v = std::log2(std::fabs(d.value.approx())) / n;
        }
        if (v > prev + 1e-9) profile.monotone_nonincreasing = false;
        prev = v;
        profile.points.push_back({n, v});
    }
    return profile;
}

OverlapCertificate make_certificate(const IFSModel& model, const Word& w1, const Word& w2) {
    if (w1.size() != w2.size() || w1.empty()) {
        throw PreconditionError("certificate words must be nonempty and of equal length");
    }
    const IFSModel norm = normalize(model);
    const ContextPtr& ctx = norm.context();
    const std::size_t nvars = ctx->var_count();
    OverlapCertificate cert;
    cert.n = static_cast<unsigned>(w1.size());
    cert.w1 = w1;
    cert.w2 = w2;
    cert.scale_identity = IntPolynomial::monomial(word_multi_index(w1, nvars), Int(1)) -
                          IntPolynomial::monomial(word_multi_index(w2, nvars), Int(1));
    LinearFunctional fun = functional_from_words(norm, w1, w2);
    for (int l = 0; l < norm.dim(); ++l) {
        // sum_j P^j(X) * t_j^l over a common denominator
        std::vector<std::pair<IntPolynomial, Int>> parts;
        Int den(1);
        for (std::size_t j = 1; j < norm.map_count(); ++j) {
            auto [q, d] = norm.translation(j)[l].cleared();
            den = lcm(den, d);
            parts.emplace_back(std::move(q), d);
        }
        IntPolynomial identity(nvars);
        for (std::size_t j = 1; j < norm.map_count(); ++j) {
            const auto& [q, d] = parts[j - 1];
            identity = identity + fun.coeff_polys[j - 1] * q * IntPolynomial::constant(nvars, den / d);
        }
        cert.translation_identities.push_back(std::move(identity));
    }
    return cert;
}

std::optional<OverlapCertificate> find_overlap(const IFSModel& model, unsigned n_max,
                                               std::uint64_t budget) {
    if (n_max < 1) throw PreconditionError("find_overlap requires n_max >= 1");
    const ContextPtr& ctx = model.context();
    for (unsigned n = 1; n <= n_max; ++n) {
        auto classes = enumerate_classes(model, n, budget);
        const Word* best1 = nullptr;
        const Word* best2 = nullptr;
        auto offer = [&](const Word& a, const Word& b) {
            if (!best1 || a < *best1 || (a == *best1 && b < *best2)) {
                best1 = &a;
                best2 = &b;
            }
        };
        for (auto& cls : classes) {
            if (cls.words.size() < 2) continue;
            if (ctx->canonical_complete()) {
                std::unordered_map<std::string, std::size_t> first_seen;
                std::unordered_map<std::string, std::size_t> second_seen;
                for (std::size_t i = 0; i < cls.words.size(); ++i) {
                    std::string key;
                    for (const FieldElement& c : cls.translations[i]) key += c.canonical_key() + "|";
                    auto it = first_seen.find(key);
                    if (it == first_seen.end()) {
                        first_seen.emplace(std::move(key), i);
                    } else if (!second_seen.count(key)) {
                        // words are enumerated in lexicographic order, so the
                        // first two hits form the minimal pair of this group
                        second_seen.emplace(key, i);
                        offer(cls.words[it->second], cls.words[i]);
                    }
                }
            } else {
                std::vector<std::size_t> idx(cls.words.size());
                for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
                std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                    int c = compare_vectors(cls.translations[a], cls.translations[b]);
                    if (c != 0) return c < 0;
                    return cls.words[a] < cls.words[b];
                });
                for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
                    if (compare_vectors(cls.translations[idx[i]], cls.translations[idx[i + 1]]) == 0) {
                        const Word& a = cls.words[idx[i]];
                        const Word& b = cls.words[idx[i + 1]];
                        offer(std::min(a, b), std::max(a, b));
                    }
                }
            }
        }
        if (best1) return make_certificate(model, *best1, *best2);
    }
    return std::nullopt;
}

bool verify_certificate(const IFSModel& model, const OverlapCertificate& cert) {
    if (cert.w1.size() != cert.w2.size() || cert.w1.size() != cert.n || cert.n == 0) {
        throw InvalidInputError("certificate word lengths are inconsistent");
    }
    for (unsigned s : cert.w1) {
        if (s >= model.map_count()) throw InvalidInputError("certificate symbol out of range");
    }
    for (unsigned s : cert.w2) {
        if (s >= model.map_count()) throw InvalidInputError("certificate symbol out of range");
    }
    if (cert.w1 == cert.w2) return false;  // distinctness is part of the claim
    SimilarityMap a = compose(model, cert.w1);
    SimilarityMap b = compose(model, cert.w2);
    if ((a.scale - b.scale).sign() != 0) return false;
    for (int l = 0; l < model.dim(); ++l) {
        if ((a.translation[l] - b.translation[l]).sign() != 0) return false;
    }
    return true;
}

}  // namespace selfsim
