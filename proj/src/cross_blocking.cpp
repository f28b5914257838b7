#include "topecom/cross_blocking.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "topecom/binomial.hpp"
#include "topecom/errors.hpp"
#include "topecom/poset.hpp"

namespace topecom {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

// weight of a union of size u: sign choices for the remaining axes times the
// axis choices, so that the empty union weighs the whole layer
std::int64_t cross_weight(const CrossInstance& inst, int u) {
    if (inst.k - u < 0) return 0;
    return (std::int64_t{1} << (inst.k - u)) * binom(inst.m - u, inst.m - inst.k);
}

void gate_rank(const CrossInstance& inst) {
    for (Mask lam : inst.antichain)
        if (inst.nu() > popcount(lam))
            throw ConstraintViolation("threshold exceeds a member rank for k=" +
                                      std::to_string(inst.k));
}

// nu-subsets of the chosen members (all free of opposites, as subsets of
// free sets), deduplicated and sorted
std::vector<Mask> threshold_layer(const CrossInstance& inst, Mask chosen) {
    std::vector<Mask> gens;
    for (std::size_t i = 0; i < inst.antichain.size(); ++i)
        if (chosen & bit(static_cast<int>(i)))
            for_each_k_subset_of(inst.antichain[i], static_cast<int>(inst.nu()),
                                 [&](Mask d) { gens.push_back(d); });
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

} // namespace

bool free_of_opposite_pairs(Mask v, int m) {
    return ((v >> m) & v & full_mask(m)) == 0;
}

CrossInstance CrossInstance::make(int m, std::vector<Mask> antichain, Ratio r, int k) {
    require(m >= 2 && m <= 10, "crosspolytope dimension must be between 2 and 10");
    require(k >= 1 && k <= m, "k must be between 1 and the dimension");
    require(r.num < r.den, "threshold ratio must be below 1");
    require(!antichain.empty(), "antichain must be nonempty");
    for (Mask lam : antichain) {
        require(lam != 0, "antichain members must be nonempty");
        require((lam & ~full_mask(2 * m)) == 0, "antichain member outside the ground set");
        require(free_of_opposite_pairs(lam, m), "antichain members must be free of opposites");
    }
    for (std::size_t i = 0; i < antichain.size(); ++i)
        for (std::size_t j = 0; j < antichain.size(); ++j)
            if (i != j)
                require(!contains(antichain[j], antichain[i]),
                        "antichain members must be pairwise incomparable");
    CrossInstance inst;
    inst.m = m;
    inst.antichain = std::move(antichain);
    inst.r = r;
    inst.k = k;
    return inst;
}

Count brute_blockers_cross(const CrossInstance& inst, const BlockingBudget& budget) {
    if (binom(2 * inst.m, inst.k) > budget.max_enumeration)
        throw CapExceeded("brute-force enumeration budget exceeded");
    Count total = 0;
    for_each_k_subset(2 * inst.m, inst.k, [&](Mask b) {
        if (!free_of_opposite_pairs(b, inst.m)) return;
        for (Mask lam : inst.antichain)
            if (!inst.r.strictly_exceeded_by(popcount(b & lam), inst.k)) return;
        ++total;
    });
    return total;
}

Count count_blockers_cross(const CrossInstance& inst, CrossMethod method,
                           const BlockingBudget& budget) {
    gate_rank(inst);
    const int q = static_cast<int>(inst.antichain.size());
    require(q <= budget.max_antichain,
            "antichain too large for the sub-antichain loop: " + std::to_string(q));
    const int bits = 2 * inst.m;
    const std::int64_t nu = inst.nu();

    if (method == CrossMethod::DoubleIE) {
        // Regrouped by sub-antichain exactly as in the Boolean case, with the
        // union loop confined to opposite-free sets: unions with an opposite
        // pair are the deleted top and carry no terms. No constant term: the
        // empty-family contribution is removed from every grouped sum.
        Count total = 0;
        const std::size_t words = std::size_t{1} << bits;
        for (Mask c = 1; c < bit(q); ++c) {
            std::vector<std::int64_t> f(words);
            for (Mask v = 0; v < words; ++v) {
                if (!free_of_opposite_pairs(v, inst.m)) continue;
                bool ok = true;
                for (int i = 0; i < q && ok; ++i)
                    if ((c & bit(i)) && popcount(v & inst.antichain[i]) >= nu) ok = false;
                f[v] = ok ? 1 : 0;
            }
            signed_subset_transform(f, bits);
            Count part = -cross_weight(inst, 0); // remove the empty-family term
            for (Mask u = 0; u < words; ++u) {
                if (f[u] == 0 || !free_of_opposite_pairs(u, inst.m)) continue;
                std::int64_t w = cross_weight(inst, popcount(u));
                if (w) part += Count(f[u]) * w;
            }
            if (popcount(c) & 1) total -= part; else total += part;
        }
        return total;
    }

    // DoubleMobius: families of every nonempty sub-antichain in inclusion
    // order, each evaluated over its opposite-free union semilattice.
    std::set<std::vector<Mask>> seen;
    for (Mask c = 1; c < bit(q); ++c) {
        auto fam = threshold_layer(inst, c);
        if (!fam.empty()) seen.insert(std::move(fam));
    }
    std::vector<std::vector<Mask>> fams(seen.begin(), seen.end());
    std::sort(fams.begin(), fams.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    auto outer_mu = family_inclusion_mobius(fams);

    auto keep_free = [&](Mask v) { return free_of_opposite_pairs(v, inst.m); };
    Count total = 0;
    for (std::size_t i = 0; i < fams.size(); ++i) {
        if (outer_mu[i] == 0) continue;
        auto lattice = union_semilattice(bits, fams[i], std::nullopt, keep_free,
                                         budget.max_lattice);
        auto mu = mobius_below(lattice);
        Count inner = 0;
        for (std::size_t z = 1; z < lattice.size(); ++z) {
            if (mu[z] == 0) continue;
            std::int64_t w = cross_weight(inst, popcount(lattice.elements[z]));
            if (w) inner += Count(mu[z]) * w;
        }
        total += Count(outer_mu[i]) * inner;
    }
    return total;
}

std::int64_t cross_layer_size(int m, int j) {
    std::int64_t count = 0;
    for_each_k_subset(2 * m, j, [&](Mask b) {
        if (free_of_opposite_pairs(b, m)) ++count;
    });
    return count;
}

std::vector<Mask> random_cross_antichain(int m, int count, int size, std::uint64_t seed) {
    if (m < 2 || count < 1) throw Error("need a dimension and a positive draw count");
    if (size < 1 || size > m) throw Error("member size must be between 1 and m");
    std::mt19937_64 rng(seed);
    std::vector<int> axes(m);
    for (int i = 0; i < m; ++i) axes[i] = i;
    std::set<Mask> drawn;
    for (int c = 0; c < count; ++c) {
        for (int j = 0; j < size; ++j)
            std::swap(axes[j], axes[j + rng() % (m - j)]);
        Mask v = 0;
        for (int j = 0; j < size; ++j)
            v |= bit(axes[j] + ((rng() & 1) ? m : 0));
        drawn.insert(v);
    }
    return std::vector<Mask>(drawn.begin(), drawn.end());
}

} // namespace topecom
