#include "topecom/boolean_blocking.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>

#include "topecom/binomial.hpp"
#include "topecom/errors.hpp"
#include "topecom/poset.hpp"

namespace topecom {

namespace {

int rank_of(Mask m) { return popcount(m); }

void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

// All size-`take` subsets of `inside`, appended to out. take <= 0 yields
// nothing: a zero layer size never occurs in a gated formula.
void push_layer(Mask inside, int take, std::vector<Mask>& out) {
    if (take <= 0) return;
    for_each_k_subset_of(inside, take, [&](Mask m) { out.push_back(m); });
}

std::vector<Mask> dedup(std::vector<Mask> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Sum over admissible intersection sizes of C(u,h)*C(n-u,k-h), h >= 1; by the
// convolution identity this equals C(n,k) - C(n-u,k), and the explicit sum is
// kept as the evaluation path.
std::int64_t convolution_weight(int n, int k, int u) {
    std::int64_t s = 0;
    for (int h = 1; h <= k; ++h) s += binom(u, h) * binom(n - u, k - h);
    return s;
}

struct DenseEval {
    const BlockingInstance& inst;
    const BlockingBudget& budget;
    std::size_t words;

    DenseEval(const BlockingInstance& i, const BlockingBudget& b)
        : inst(i), budget(b), words(std::size_t{1} << i.n) {}

    // Signed count, grouped by candidate union U, of subfamilies of the
    // generators recognized by `no_generator_inside`; each union is weighted
    // by weight(|U|). Unions above size_limit are skipped when given (their
    // weights vanish for every caller that passes one).
    template <typename Ind, typename Weight>
    Count grouped_sum(Ind&& no_generator_inside, Weight&& weight,
                      std::optional<int> size_limit) const {
        std::vector<std::int64_t> f(words);
        for (Mask v = 0; v < words; ++v) f[v] = no_generator_inside(v) ? 1 : 0;
        signed_subset_transform(f, inst.n);
        Count total = 0;
        for (Mask u = 0; u < words; ++u) {
            if (f[u] == 0) continue;
            int su = rank_of(u);
            if (size_limit && su > *size_limit) continue;
            std::int64_t w = weight(su);
            if (w) total += Count(f[u]) * w;
        }
        return total;
    }
};

void gate_two_sided(const BlockingInstance& inst) {
    if (!check_constraints(inst).rank_window)
        throw ConstraintViolation(
            "threshold does not fit between the member ranks and their complements for k=" +
            std::to_string(inst.k));
}

void gate_lower(const BlockingInstance& inst) {
    if (!check_constraints(inst).rank_floor)
        throw ConstraintViolation("threshold exceeds the smallest member rank for k=" +
                                  std::to_string(inst.k));
}

// Generators of the three alternating sums.

// size (k - floor(rk)) subsets of member complements
std::vector<Mask> complement_layer_generators(const BlockingInstance& inst) {
    const int g = static_cast<int>(inst.k - inst.r.floor_times(inst.k));
    std::vector<Mask> gens;
    Mask full = full_mask(inst.n);
    for (Mask lam : inst.antichain) push_layer(full & ~lam, g, gens);
    return dedup(gens);
}

// minimal elements among the per-member layers of size (rank - floor(rk))
std::vector<Mask> ideal_margin_generators(const BlockingInstance& inst) {
    std::vector<Mask> gens;
    for (Mask lam : inst.antichain)
        push_layer(lam, rank_of(lam) - static_cast<int>(inst.r.floor_times(inst.k)), gens);
    return min_sets(std::move(gens));
}

// nu-subsets inside at least one member
std::vector<Mask> threshold_layer_generators(const BlockingInstance& inst,
                                             const std::vector<Mask>& members) {
    std::vector<Mask> gens;
    for (Mask lam : members) push_layer(lam, static_cast<int>(inst.nu()), gens);
    return dedup(gens);
}

Count mobius_weighted_sum(const BlockingInstance& inst, const std::vector<Mask>& gens,
                          const BlockingBudget& budget, std::optional<int> cap,
                          std::int64_t (*weight)(const BlockingInstance&, int)) {
    auto lattice = union_semilattice(inst.n, gens,
                                     budget.union_size_limit ? budget.union_size_limit : cap,
                                     {}, budget.max_lattice);
    auto mu = mobius_below(lattice);
    Count total = 0;
    for (std::size_t i = 1; i < lattice.size(); ++i) {
        if (mu[i] == 0) continue;
        std::int64_t w = weight(inst, rank_of(lattice.elements[i]));
        if (w) total += Count(mu[i]) * w;
    }
    return total;
}

// Deduplicated generator families of every nonempty sub-antichain, each the
// threshold layer of the ideal of that sub-antichain. Their union-closedness
// makes the inclusion order a join-semilattice.
std::vector<std::vector<Mask>> threshold_layer_families(const BlockingInstance& inst,
                                                        const BlockingBudget& budget) {
    const int q = static_cast<int>(inst.antichain.size());
    require(q <= budget.max_antichain,
            "antichain too large for the sub-antichain loop: " + std::to_string(q));
    std::set<std::vector<Mask>> seen;
    for (Mask c = 1; c < bit(q); ++c) {
        std::vector<Mask> members;
        for (int i = 0; i < q; ++i)
            if (c & bit(i)) members.push_back(inst.antichain[i]);
        auto fam = threshold_layer_generators(inst, members);
        if (!fam.empty()) seen.insert(std::move(fam));
    }
    std::vector<std::vector<Mask>> fams(seen.begin(), seen.end());
    std::sort(fams.begin(), fams.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return fams;
}

} // namespace

BlockingInstance BlockingInstance::make(int n, std::vector<Mask> antichain, Ratio r, int k) {
    require(n >= 3 && n <= 20, "ground size must be between 3 and 20");
    require(k >= 1 && k <= n, "k must be between 1 and the ground size");
    require(r.num < r.den, "threshold ratio must be below 1");
    require(!antichain.empty(), "antichain must be nonempty");
    Mask full = full_mask(n);
    for (Mask lam : antichain) {
        require(lam != 0, "antichain members must be nonempty");
        require((lam & ~full) == 0, "antichain member outside the ground set");
        require(lam != full, "antichain members must be proper subsets");
    }
    for (std::size_t i = 0; i < antichain.size(); ++i)
        for (std::size_t j = 0; j < antichain.size(); ++j)
            if (i != j)
                require(!contains(antichain[j], antichain[i]),
                        "antichain members must be pairwise incomparable");
    BlockingInstance inst;
    inst.n = n;
    inst.antichain = std::move(antichain);
    inst.r = r;
    inst.k = k;
    return inst;
}

ConstraintStatus check_constraints(const BlockingInstance& inst) {
    std::int64_t nu = inst.nu();
    int min_rank = inst.n, max_rank = 0;
    for (Mask lam : inst.antichain) {
        min_rank = std::min(min_rank, rank_of(lam));
        max_rank = std::max(max_rank, rank_of(lam));
    }
    ConstraintStatus st;
    st.rank_floor = nu <= min_rank;
    st.rank_window = st.rank_floor && max_rank <= inst.n + inst.r.floor_times(inst.k) - inst.k;
    return st;
}

Count brute_blockers(const BlockingInstance& inst, std::vector<Mask>* out_blockers,
                     const BlockingBudget& budget) {
    if (binom(inst.n, inst.k) > budget.max_enumeration)
        throw CapExceeded("brute-force enumeration budget exceeded at C(" +
                          std::to_string(inst.n) + "," + std::to_string(inst.k) + ")");
    Count total = 0;
    for_each_k_subset(inst.n, inst.k, [&](Mask b) {
        for (Mask lam : inst.antichain)
            if (!inst.r.strictly_exceeded_by(popcount(b & lam), inst.k)) return;
        ++total;
        if (out_blockers) out_blockers->push_back(b);
    });
    return total;
}

Count count_blockers_ie(const BlockingInstance& inst, IeMethod method,
                        const BlockingBudget& budget) {
    const int n = inst.n, k = inst.k;
    const std::int64_t nu = inst.nu();
    DenseEval ev(inst, budget);

    switch (method) {
    case IeMethod::ComplementIdeal: {
        gate_two_sided(inst);
        const std::int64_t margin = k - inst.r.floor_times(k); // generator size
        auto ind = [&](Mask v) {
            for (Mask lam : inst.antichain)
                if (popcount(v & ~lam & full_mask(n)) >= margin) return false;
            return true;
        };
        auto w = [&](int u) { return binom(n - u, n - k); };
        return ev.grouped_sum(ind, w, budget.union_size_limit ? budget.union_size_limit
                                                              : std::optional<int>(k));
    }
    case IeMethod::Ideal:
    case IeMethod::Vandermonde: {
        gate_two_sided(inst);
        const std::int64_t drop = inst.r.floor_times(k);
        auto ind = [&](Mask v) {
            for (Mask lam : inst.antichain)
                if (popcount(v & lam) >= rank_of(lam) - drop) return false;
            return true;
        };
        if (method == IeMethod::Ideal) {
            auto w = [&](int u) { return binom(n - u, k); };
            return ev.grouped_sum(ind, w, budget.union_size_limit ? budget.union_size_limit
                                                                  : std::optional<int>(n - k));
        }
        // Same generators, weighted through the convolution identity; no term
        // of that weighting vanishes by union size, so no size limit applies.
        auto w = [&](int u) { return convolution_weight(n, k, u); };
        Count signed_sum = ev.grouped_sum(ind, w, std::nullopt);
        // the empty union contributes weight 0 via h >= 1, so negate directly
        return -signed_sum;
    }
    case IeMethod::DoubleIE: {
        gate_lower(inst);
        const int q = static_cast<int>(inst.antichain.size());
        require(q <= budget.max_antichain,
                "antichain too large for the sub-antichain loop: " + std::to_string(q));
        // Regrouped by sub-antichain: the alternating coefficient over
        // sub-antichains whose ideals hold the whole family is resummed, so
        // each sub-antichain C contributes (-1)^|C| times its own grouped sum
        // (with the empty-family term removed; no constant of its own).
        Count total = 0;
        for (Mask c = 1; c < bit(q); ++c) {
            auto ind = [&](Mask v) {
                for (int i = 0; i < q; ++i)
                    if ((c & bit(i)) && popcount(v & inst.antichain[i]) >= nu) return false;
                return true;
            };
            auto w = [&](int u) { return binom(n - u, n - k); };
            Count part = ev.grouped_sum(ind, w, budget.union_size_limit
                                                    ? budget.union_size_limit
                                                    : std::optional<int>(k));
            part -= binom(n, k); // remove the empty-family term of the grouped sum
            if (popcount(c) & 1) total -= part; else total += part;
        }
        return total;
    }
    }
    throw Error("unknown inclusion-exclusion method");
}

namespace {

std::int64_t weight_complement_side(const BlockingInstance& inst, int u) {
    return binom(inst.n - u, inst.n - inst.k);
}
std::int64_t weight_ideal_side(const BlockingInstance& inst, int u) {
    return binom(inst.n - u, inst.k);
}

} // namespace

Count count_blockers_mobius(const BlockingInstance& inst, MobiusMethod method,
                            const BlockingBudget& budget) {
    const int n = inst.n, k = inst.k;
    switch (method) {
    case MobiusMethod::ComplementIdeal: {
        gate_two_sided(inst);
        auto gens = complement_layer_generators(inst);
        return binom(n, k) + mobius_weighted_sum(inst, gens, budget, k, weight_complement_side);
    }
    case MobiusMethod::Ideal: {
        gate_two_sided(inst);
        auto gens = ideal_margin_generators(inst);
        return binom(n, k) + mobius_weighted_sum(inst, gens, budget, n - k, weight_ideal_side);
    }
    case MobiusMethod::Vandermonde: {
        gate_two_sided(inst);
        auto gens = ideal_margin_generators(inst);
        // no union size vanishes under the convolution weighting, so the
        // lattice is never truncated
        auto lattice = union_semilattice(n, gens, std::nullopt, {}, budget.max_lattice);
        auto mu = mobius_below(lattice);
        Count total = 0;
        for (std::size_t i = 1; i < lattice.size(); ++i) {
            if (mu[i] == 0) continue;
            std::int64_t w = convolution_weight(n, k, rank_of(lattice.elements[i]));
            if (w) total += Count(mu[i]) * w;
        }
        return -total;
    }
    case MobiusMethod::DoubleMobius: {
        gate_lower(inst);
        auto fams = threshold_layer_families(inst, budget);
        auto outer_mu = family_inclusion_mobius(fams);
        Count total = 0;
        for (std::size_t i = 0; i < fams.size(); ++i) {
            if (outer_mu[i] == 0) continue;
            total += Count(outer_mu[i]) *
                     mobius_weighted_sum(inst, fams[i], budget, k, weight_complement_side);
        }
        return total;
    }
    }
    throw Error("unknown Mobius method");
}

Count count_blockers_nerve(const BlockingInstance& inst, const BlockingBudget& budget) {
    gate_lower(inst);
    const int n = inst.n;
    const int q = static_cast<int>(inst.antichain.size());
    require(q <= budget.max_antichain,
            "antichain too large for support bookkeeping: " + std::to_string(q));

    auto gens = threshold_layer_generators(inst, inst.antichain);

    // Support of a generator: the members containing it. Distinct supports
    // become classes; only which classes appear below a candidate union
    // matters, since generators sharing a support alternate away to a single
    // signed occurrence.
    std::vector<Mask> class_support;
    std::unordered_map<Mask, int> class_of;
    std::vector<std::uint64_t> cls(std::size_t{1} << n, 0);
    for (Mask d : gens) {
        Mask supp = 0;
        for (int i = 0; i < q; ++i)
            if (contains(inst.antichain[i], d)) supp |= bit(i);
        auto [it, fresh] = class_of.try_emplace(supp, static_cast<int>(class_support.size()));
        if (fresh) {
            if (static_cast<int>(class_support.size()) >= budget.max_support_classes)
                throw CapExceeded("too many distinct generator supports");
            class_support.push_back(supp);
        }
        cls[d] |= std::uint64_t{1} << it->second;
    }

    // classes available inside each subset, by an OR-convolution over subsets
    for (int i = 0; i < n; ++i) {
        const Mask step = bit(i);
        for (Mask v = 0; v < cls.size(); ++v)
            if (v & step) cls[v] |= cls[v ^ step];
    }

    const Mask want = full_mask(q);
    std::map<std::vector<Mask>, std::int64_t> cover_mu; // membership by maximal supports
    std::unordered_map<std::uint64_t, std::int64_t> y_of_classes;

    // Alternating sum over subfamilies of available classes, collapsed to
    // subfamilies of the inclusion-maximal supports: a family whose minimal
    // supports leave some available support strictly above them cancels.
    auto y_value = [&](std::uint64_t avail) -> std::int64_t {
        auto it = y_of_classes.find(avail);
        if (it != y_of_classes.end()) return it->second;
        std::vector<Mask> supports;
        for (std::uint64_t b = avail; b;) {
            int c = std::countr_zero(b);
            b &= b - 1;
            supports.push_back(class_support[c]);
        }
        std::vector<Mask> tops = max_sets(std::move(supports));
        if (tops.size() > 20) throw CapExceeded("too many maximal supports");
        std::int64_t y = 0;
        for (std::uint32_t pick = 1; pick < (1u << tops.size()); ++pick) {
            std::vector<Mask> chosen;
            Mask covered = 0;
            for (std::uint32_t r = pick; r;) {
                int i = std::countr_zero(r);
                r &= r - 1;
                chosen.push_back(tops[i]);
                covered |= tops[i];
            }
            if (covered != want) continue;
            std::sort(chosen.begin(), chosen.end());
            auto mit = cover_mu.find(chosen);
            std::int64_t x;
            if (mit != cover_mu.end()) {
                x = mit->second;
            } else {
                x = union_mobius_number(q, chosen);
                cover_mu.emplace(std::move(chosen), x);
            }
            y += (std::popcount(pick) & 1) ? -x : x;
        }
        y_of_classes.emplace(avail, y);
        return y;
    };

    std::vector<std::int64_t> w(std::size_t{1} << n);
    for (Mask v = 0; v < w.size(); ++v) w[v] = cls[v] ? y_value(cls[v]) : 0;
    signed_subset_transform(w, n);

    const int cap = budget.union_size_limit ? *budget.union_size_limit : inst.k;
    Count total = 0;
    for (Mask u = 0; u < w.size(); ++u) {
        if (w[u] == 0 || rank_of(u) > cap) continue;
        std::int64_t weight = binom(n - rank_of(u), inst.k - rank_of(u));
        if (weight) total += Count(w[u]) * weight;
    }
    return total;
}

std::int64_t ideal_layer_size_direct(const BlockingInstance& inst) {
    const int nu = static_cast<int>(inst.nu());
    std::int64_t count = 0;
    for_each_k_subset(inst.n, nu, [&](Mask d) {
        for (Mask lam : inst.antichain)
            if (contains(lam, d)) { ++count; return; }
    });
    return count;
}

std::int64_t ideal_layer_size_ie(const BlockingInstance& inst) {
    const int nu = static_cast<int>(inst.nu());
    const int q = static_cast<int>(inst.antichain.size());
    if (q > 30) throw CapExceeded("antichain too large for intersection sums");
    std::int64_t total = 0;
    for (std::uint32_t s = 1; s < (1u << q); ++s) {
        Mask common = full_mask(inst.n);
        for (std::uint32_t r = s; r;) {
            int i = std::countr_zero(r);
            r &= r - 1;
            common &= inst.antichain[i];
        }
        std::int64_t term = binom(popcount(common), nu);
        total += (std::popcount(s) & 1) ? term : -term;
    }
    return total;
}

std::vector<Mask> random_antichain(int n, int count, int size, std::uint64_t seed) {
    if (n < 2 || count < 1) throw Error("need a ground set and a positive draw count");
    if (size < 0 || size > n - 1) throw Error("member size must be between 0 and n-1");
    std::mt19937_64 rng(seed);
    std::vector<int> points(n);
    for (int i = 0; i < n; ++i) points[i] = i;
    std::set<Mask> drawn;
    for (int c = 0; c < count; ++c) {
        int s = size > 0 ? size : 1 + static_cast<int>(rng() % (n - 1));
        for (int j = 0; j < s; ++j)
            std::swap(points[j], points[j + rng() % (n - j)]);
        Mask m = 0;
        for (int j = 0; j < s; ++j) m |= bit(points[j]);
        drawn.insert(m);
    }
    return min_sets(std::vector<Mask>(drawn.begin(), drawn.end()));
}

} // namespace topecom
