#include "topecom/committee_formulas.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topecom/binomial.hpp"
#include "topecom/convexity.hpp"
#include "topecom/errors.hpp"
#include "topecom/parallel.hpp"
#include "topecom/poset.hpp"

namespace topecom {
namespace {

struct Halfspaces {
    int t = 0;
    int N = 0;
    std::vector<Mask> pos;    // tope mask of the positive halfspace, per element
    std::vector<int> partner; // opposite tope index, per tope
};

Halfspaces setup(const OrientedMatroid& om) {
    auto rep = validate(om);
    if (!rep.ok()) throw ValidationFailure("tope set invalid: " + rep.summary());
    Halfspaces hs;
    hs.t = om.ground_size();
    hs.N = om.num_topes();
    if (hs.N > 64) throw CapExceeded("engine handles at most 64 topes");
    hs.pos.resize(hs.t);
    for (int e = 0; e < hs.t; ++e) hs.pos[e] = om.positive_tope_mask(e + 1);
    hs.partner.resize(hs.N);
    for (int i = 0; i < hs.N; ++i) hs.partner[i] = om.negation_of(i);
    return hs;
}

bool free_of_opposites(const Halfspaces& hs, Mask v) {
    for (Mask rem = v; rem;) {
        int i = lowest_bit(rem);
        rem &= rem - 1;
        if (v & bit(hs.partner[i])) return false;
    }
    return true;
}

// Generator size on the side where subsets must stay in the strict minority
// of every halfspace (a set of this many topes in one halfspace breaks it).
int minority_gen_size(int size) { return (size + 1) / 2; }

// Generator size on the side where subsets must reach a strict majority.
int majority_gen_size(int size) { return size / 2 + 1; }

// parallel_chunks with exception transport: the first captured error (in
// chunk order) is rethrown after all workers joined.
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, int threads, Fn&& fn) {
    int workers = resolve_threads(threads);
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
    parallel_chunks(begin, end, workers, [&](std::int64_t lo, std::int64_t hi, int w) {
        try {
            fn(lo, hi, w);
        } catch (...) {
            errs[static_cast<std::size_t>(w)] = std::current_exception();
        }
    });
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

// Tope subsets of size at most cap, ascending by size. Guarded so the
// per-subset inner submask loops stay within the work budget.
std::vector<Mask> small_subsets(const Halfspaces& hs, int cap, const FormulaBudget& b) {
    if (cap < 0) cap = 0;
    if (cap > b.max_union_size)
        throw CapExceeded("union side of size " + std::to_string(cap) +
                          " is beyond the tractable envelope of " +
                          std::to_string(b.max_union_size) +
                          "; pick the other subset side or raise the budget");
    std::int64_t count = 0, work = 0;
    for (int u = 0; u <= cap && u <= hs.N; ++u) {
        std::int64_t c = binom(hs.N, u);
        count += c;
        if (work <= b.max_union_work) work += c << u;
    }
    if (work > b.max_union_work)
        throw CapExceeded("grouped sum needs about " + std::to_string(work) +
                          " subset probes, over the budget");
    std::vector<Mask> subs;
    subs.reserve(static_cast<std::size_t>(count));
    for (int u = 0; u <= cap && u <= hs.N; ++u)
        for_each_k_subset(hs.N, u, [&](Mask m) { subs.push_back(m); });
    return subs;
}

// Signed sum over the submasks of U of the 0/1 indicator.
template <typename IndFn>
std::int64_t signed_indicator_sum(Mask U, IndFn&& ind) {
    const int ubits = popcount(U);
    std::int64_t acc = 0;
    for_each_submask(U, [&](Mask v) {
        if (!ind(v)) return;
        acc += ((ubits - popcount(v)) & 1) ? -1 : 1;
    });
    return acc;
}

bool minority_everywhere(const Halfspaces& hs, Mask v, int m) {
    for (Mask p : hs.pos)
        if (popcount(v & p) >= m) return false;
    return true;
}

bool majority_everywhere(const Halfspaces& hs, Mask v, int m) {
    for (Mask p : hs.pos)
        if (popcount(v & p) < m) return false;
    return true;
}

// All size-m tope subsets of the positive halfspaces, deduplicated.
std::vector<Mask> layer_generators(const Halfspaces& hs, int m, const FormulaBudget& b) {
    std::int64_t bound = 0;
    for (Mask p : hs.pos) bound += binom(popcount(p), m);
    if (bound > b.max_generators)
        throw CapExceeded("halfspace layer would hold " + std::to_string(bound) +
                          " generators, over the budget");
    std::vector<Mask> gens;
    gens.reserve(static_cast<std::size_t>(bound));
    for (Mask p : hs.pos) for_each_k_subset_of(p, m, [&](Mask d) { gens.push_back(d); });
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

// Number of ell-subsets meeting a fixed u-set, by splitting on the overlap.
std::int64_t hit_count(int N, int ell, int u) {
    std::int64_t s = 0;
    int lo = std::max(1, ell - (N - u)), hi = std::min(ell, u);
    for (int h = lo; h <= hi; ++h) s += binom(u, h) * binom(N - u, ell - h);
    return s;
}

// ---- direct-side inclusion-exclusion ----
//
// Committees of size N-ell are in complement bijection with the ell-subsets
// lying in the strict minority of every halfspace, and those are exactly the
// ell-subsets containing no minority-breaking generator. Grouping the
// alternating sum over generator families by their union U leaves one signed
// indicator sum per U; unions larger than ell only multiply vanishing
// binomials, so the size cap loses nothing.
Count halfspace_ie(const Halfspaces& hs, int ell, const FormulaBudget& budget, int threads) {
    const int m = minority_gen_size(ell);
    auto subs = small_subsets(hs, ell, budget);
    const int workers = resolve_threads(threads);
    std::vector<Count> part(static_cast<std::size_t>(workers), Count(0));
    parallel_for(0, static_cast<std::int64_t>(subs.size()), workers,
                 [&](std::int64_t lo, std::int64_t hi, int w) {
                     Count local = 0;
                     for (std::int64_t i = lo; i < hi; ++i) {
                         Mask U = subs[static_cast<std::size_t>(i)];
                         std::int64_t f = signed_indicator_sum(
                             U, [&](Mask v) { return minority_everywhere(hs, v, m); });
                         if (f)
                             local += Count(f) * binom(hs.N - popcount(U), hs.N - ell);
                     }
                     part[static_cast<std::size_t>(w)] = std::move(local);
                 });
    Count total = 0;
    for (auto& p : part) total += p;
    return total;
}

// ---- complement-side alternating sum with convolution weights ----
//
// An ell-subset is a committee exactly when it meets every minority-breaking
// generator of the other side (size N-ell). The alternating sum over
// generator families weights each union U by the number of ell-subsets
// meeting U; splitting off the constant part of that weight leaves the tail
// identity sum over nonempty families, which is -1 whenever generators exist
// at all (halfspaces always hold enough topes for that). No union-size
// truncation is available here: the convolution weight never vanishes.
Count vandermonde(const Halfspaces& hs, int ell, const FormulaBudget& budget, int threads) {
    const int q = hs.N - ell;
    const int m = minority_gen_size(q);
    auto subs = small_subsets(hs, q, budget);
    std::vector<std::int64_t> hits(static_cast<std::size_t>(q) + 1);
    for (int u = 0; u <= q; ++u) hits[static_cast<std::size_t>(u)] = hit_count(hs.N, ell, u);
    const int workers = resolve_threads(threads);
    std::vector<Count> part(static_cast<std::size_t>(workers), Count(0));
    std::vector<std::int64_t> fsum(static_cast<std::size_t>(workers), 0);
    parallel_for(0, static_cast<std::int64_t>(subs.size()), workers,
                 [&](std::int64_t lo, std::int64_t hi, int w) {
                     Count local = 0;
                     std::int64_t fs = 0;
                     for (std::int64_t i = lo; i < hi; ++i) {
                         Mask U = subs[static_cast<std::size_t>(i)];
                         if (!U) continue;
                         std::int64_t f = signed_indicator_sum(
                             U, [&](Mask v) { return minority_everywhere(hs, v, m); });
                         if (!f) continue;
                         fs += f;
                         local += Count(f) * hits[static_cast<std::size_t>(popcount(U))];
                     }
                     part[static_cast<std::size_t>(w)] = std::move(local);
                     fsum[static_cast<std::size_t>(w)] = fs;
                 });
    Count tail = 0, sum_f = 0;
    for (auto& p : part) tail += p;
    for (auto s : fsum) sum_f += s;
    return -tail + Count(binom(hs.N, ell)) * (1 + sum_f);
}

// Mobius-weighted sum over the union semilattice of the given generators,
// with unions capped at `cap` (sound whenever weight(u) = 0 past the cap).
Count mobius_weighted_sum(const Halfspaces& hs, const std::vector<Mask>& gens,
                          std::optional<int> cap, const FormulaBudget& budget, int threads,
                          const std::function<bool(Mask)>& keep,
                          const std::function<Count(int)>& weight) {
    auto L = union_semilattice(hs.N, gens, cap, keep, budget.max_lattice);
    auto mu = mobius_below(L, threads);
    Count total = 0;
    for (std::size_t i = 1; i < L.elements.size(); ++i) {
        if (!mu[i]) continue;
        Count w = weight(popcount(L.elements[i]));
        if (w != 0) total += Count(mu[i]) * w;
    }
    return total;
}

// ---- Mobius function over the union semilattice, direct side ----
Count mobius_union(const Halfspaces& hs, int ell, const FormulaBudget& budget, int threads) {
    const int m = minority_gen_size(ell);
    auto gens = layer_generators(hs, m, budget);
    Count total = binom(hs.N, hs.N - ell); // formal least element
    total += mobius_weighted_sum(hs, gens, ell, budget, threads, {},
                                 [&](int u) { return Count(binom(hs.N - u, hs.N - ell)); });
    return total;
}

// ---- Mobius function with convolution weights, complement side ----
//
// Same tail-identity split as `vandermonde`, with the family sums collapsed
// into Mobius values. The full semilattice has a top, so the uncapped Mobius
// values sum to -1; capping at N-ell is then compensated exactly by the
// C(N, ell) * (1 + sum mu) term, mirroring the grouped evaluation.
Count mobius_vandermonde(const Halfspaces& hs, int ell, const FormulaBudget& budget,
                         int threads) {
    const int q = hs.N - ell;
    const int m = minority_gen_size(q);
    auto gens = layer_generators(hs, m, budget);
    auto L = union_semilattice(hs.N, gens, q, {}, budget.max_lattice);
    auto mu = mobius_below(L, threads);
    Count tail = 0, sum_mu = 0;
    for (std::size_t i = 1; i < L.elements.size(); ++i) {
        if (!mu[i]) continue;
        tail += Count(mu[i]) * hit_count(hs.N, ell, popcount(L.elements[i]));
        sum_mu += mu[i];
    }
    return -tail + Count(binom(hs.N, ell)) * (1 + sum_mu);
}

// Majority layers of the single halfspaces, used as building blocks of the
// per-subfamily generator families.
std::vector<std::vector<Mask>> element_layers(const Halfspaces& hs, int m,
                                              const FormulaBudget& budget) {
    std::int64_t bound = 0;
    for (Mask p : hs.pos) bound += binom(popcount(p), m);
    if (bound > budget.max_generators)
        throw CapExceeded("halfspace layers would hold " + std::to_string(bound) +
                          " generators, over the budget");
    std::vector<std::vector<Mask>> layer(static_cast<std::size_t>(hs.t));
    for (int e = 0; e < hs.t; ++e) {
        for_each_k_subset_of(hs.pos[e], m,
                             [&](Mask d) { layer[static_cast<std::size_t>(e)].push_back(d); });
        std::sort(layer[static_cast<std::size_t>(e)].begin(),
                  layer[static_cast<std::size_t>(e)].end());
    }
    return layer;
}

// Distinct unions of per-element layers over nonempty element subsets,
// sorted by (family size, lexicographic) as the family-inclusion order wants.
std::vector<std::vector<Mask>> layer_families(const Halfspaces& hs,
                                              const std::vector<std::vector<Mask>>& layer) {
    std::set<std::vector<Mask>> seen;
    for (Mask E = 1; E < bit(hs.t); ++E) {
        std::vector<Mask> fam;
        for (Mask rem = E; rem;) {
            int e = lowest_bit(rem);
            rem &= rem - 1;
            fam.insert(fam.end(), layer[static_cast<std::size_t>(e)].begin(),
                       layer[static_cast<std::size_t>(e)].end());
        }
        std::sort(fam.begin(), fam.end());
        fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
        seen.insert(std::move(fam));
    }
    std::vector<std::vector<Mask>> fams(seen.begin(), seen.end());
    std::sort(fams.begin(), fams.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return fams;
}

// ---- double Mobius: outer over halfspace subfamilies, inner over unions ----
//
// The outer poset is the family of per-subfamily generator sets ordered by
// inclusion (union-closed, since the generator set of a union of subfamilies
// is the union of their generator sets), with a formal least element. Each
// family is charged its inner Mobius-weighted union sum; the inner cap at
// ell is sound because larger unions fit in no ell-subset.
Count double_mobius(const Halfspaces& hs, int ell, const FormulaBudget& budget, int threads,
                    const std::function<bool(Mask)>& keep,
                    const std::function<Count(int)>& weight) {
    if (hs.t > 14) throw CapExceeded("too many halfspace subfamilies");
    const int m = majority_gen_size(ell);
    auto layer = element_layers(hs, m, budget);
    auto fams = layer_families(hs, layer);
    auto outer_mu = family_inclusion_mobius(fams);
    std::vector<Count> inner(fams.size(), Count(0));
    parallel_for(0, static_cast<std::int64_t>(fams.size()), threads,
                 [&](std::int64_t lo, std::int64_t hi, int) {
                     for (std::int64_t i = lo; i < hi; ++i) {
                         auto idx = static_cast<std::size_t>(i);
                         if (!outer_mu[idx]) continue;
                         inner[idx] =
                             mobius_weighted_sum(hs, fams[idx], ell, budget, 1, keep, weight);
                     }
                 });
    Count total = 0;
    for (std::size_t i = 0; i < fams.size(); ++i)
        if (outer_mu[i]) total += Count(outer_mu[i]) * inner[i];
    return total;
}

// ---- convex-set / Euler-characteristic machinery ----
//
// For the signed cover sum, families of majority generators are grouped by
// their tope union U. The signed count of families with union exactly V,
// each weighted by the Mobius number of the union semilattice of its minimal
// support images, collapses to a function of the set of support images
// achieved within V: contributions of families sharing the same image set
// telescope, leaving the alternating sum over subsets of the maximal images
// that cover the ground set. The label of V is that achieved-image set.
struct EulerScratch {
    std::vector<std::int64_t> a;          // per-image-mask counters
    std::unordered_map<Mask, int> cls;    // image mask -> class id (<= 64)
    std::vector<Mask> cls_image;          // class id -> image mask
    std::unordered_map<std::uint64_t, std::int64_t> y_memo; // class set -> Y
    std::map<std::vector<Mask>, std::int64_t> x_memo;       // cover family -> Mobius number
};

std::int64_t cover_mobius(EulerScratch& sc, int t, std::vector<Mask> family) {
    std::sort(family.begin(), family.end());
    auto it = sc.x_memo.find(family);
    if (it != sc.x_memo.end()) return it->second;
    std::int64_t x = union_mobius_number(t, family);
    sc.x_memo.emplace(std::move(family), x);
    return x;
}

std::int64_t y_of_classes(EulerScratch& sc, const Halfspaces& hs, std::uint64_t B,
                          const FormulaBudget& budget) {
    auto it = sc.y_memo.find(B);
    if (it != sc.y_memo.end()) return it->second;
    std::vector<Mask> images;
    for (std::uint64_t rem = B; rem;) {
        int id = lowest_bit(rem);
        rem &= rem - 1;
        images.push_back(sc.cls_image[static_cast<std::size_t>(id)]);
    }
    auto maxs = max_sets(images);
    std::int64_t y = 0;
    const Mask full_t = full_mask(hs.t);
    if (static_cast<int>(maxs.size()) > budget.max_cover_family)
        throw CapExceeded("cover family of " + std::to_string(maxs.size()) +
                          " maximal support images, over the budget");
    for (Mask pick = 1; pick < bit(static_cast<int>(maxs.size())); ++pick) {
        Mask un = 0;
        std::vector<Mask> chosen;
        for (Mask rem = pick; rem;) {
            int j = lowest_bit(rem);
            rem &= rem - 1;
            un |= maxs[static_cast<std::size_t>(j)];
            chosen.push_back(maxs[static_cast<std::size_t>(j)]);
        }
        if (un != full_t) continue;
        std::int64_t x = cover_mobius(sc, hs.t, std::move(chosen));
        y += (popcount(pick) & 1) ? -x : x;
    }
    sc.y_memo.emplace(B, y);
    return y;
}

Count convex_euler(const OrientedMatroid& om, const Halfspaces& hs, int ell,
                   const FormulaBudget& budget, int threads, bool free_only,
                   const std::function<Count(int)>& weight) {
    if (hs.t > 20) throw CapExceeded("support table needs 2^t entries, t too large");
    const int m = majority_gen_size(ell);
    const int tbits = hs.t;
    const std::size_t tsize = std::size_t{1} << tbits;
    std::vector<Mask> support(tsize);
    support[0] = om.all_topes_mask();
    for (Mask F = 1; F < static_cast<Mask>(tsize); ++F)
        support[static_cast<std::size_t>(F)] =
            support[static_cast<std::size_t>(F & (F - 1))] &
            hs.pos[static_cast<std::size_t>(lowest_bit(F))];

    auto subs = small_subsets(hs, ell, budget);
    MaskIndex idx(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i)
        idx.insert(subs[i], static_cast<std::int32_t>(i));

    // shared registry of achieved support images; guarded by the 64-class cap
    std::vector<std::int64_t> y(subs.size(), 0);
    const int workers = resolve_threads(threads);
    std::vector<EulerScratch> scratch(static_cast<std::size_t>(workers));
    for (auto& sc : scratch) sc.a.resize(tsize);

    parallel_for(0, static_cast<std::int64_t>(subs.size()), workers,
                 [&](std::int64_t lo, std::int64_t hi, int w) {
                     auto& sc = scratch[static_cast<std::size_t>(w)];
                     for (std::int64_t i = lo; i < hi; ++i) {
                         Mask V = subs[static_cast<std::size_t>(i)];
                         if (popcount(V) < m) continue;
                         if (free_only && !free_of_opposites(hs, V)) continue;
                         // a[F] = number of majority generators inside V whose
                         // support image is exactly F, after the superset pass
                         for (std::size_t F = 0; F < tsize; ++F)
                             sc.a[F] = binom(popcount(V & support[F]), m);
                         for (int b = 0; b < tbits; ++b)
                             for (std::size_t F = 0; F < tsize; ++F)
                                 if (!(F & (std::size_t{1} << b)))
                                     sc.a[F] -= sc.a[F | (std::size_t{1} << b)];
                         std::uint64_t B = 0;
                         for (std::size_t F = 1; F < tsize; ++F) {
                             if (sc.a[F] <= 0) continue;
                             auto [it, fresh] = sc.cls.try_emplace(
                                 static_cast<Mask>(F), static_cast<int>(sc.cls_image.size()));
                             if (fresh) {
                                 if (sc.cls_image.size() >= 64)
                                     throw CapExceeded(
                                         "more than 64 distinct support images");
                                 sc.cls_image.push_back(static_cast<Mask>(F));
                             }
                             B |= std::uint64_t{1} << it->second;
                         }
                         if (B) y[static_cast<std::size_t>(i)] = y_of_classes(sc, hs, B, budget);
                     }
                 });

    std::vector<Count> part(static_cast<std::size_t>(workers), Count(0));
    parallel_for(0, static_cast<std::int64_t>(subs.size()), workers,
                 [&](std::int64_t lo, std::int64_t hi, int w) {
                     Count local = 0;
                     for (std::int64_t i = lo; i < hi; ++i) {
                         Mask U = subs[static_cast<std::size_t>(i)];
                         if (free_only && !free_of_opposites(hs, U)) continue;
                         Count wu = weight(popcount(U));
                         if (wu == 0) continue;
                         const int ubits = popcount(U);
                         std::int64_t W = 0;
                         for_each_submask(U, [&](Mask V) {
                             std::int64_t yv = y[static_cast<std::size_t>(idx.find(V))];
                             if (!yv) return;
                             W += ((ubits - popcount(V)) & 1) ? -yv : yv;
                         });
                         if (W) local += Count(W) * wu;
                     }
                     part[static_cast<std::size_t>(w)] = std::move(local);
                 });
    Count total = 0;
    for (auto& p : part) total += p;
    return total;
}

// ---- unique-facet specialisation ----
//
// Verifies the hypothesis that every majority generator lies in exactly one
// positive halfspace (checked for all of them: a sound overestimate of the
// sets the sum actually visits). Under it every cover Mobius number
// degenerates to a sign, and the signed cover sum collapses to the signed
// indicator transform of "V reaches a majority inside every halfspace".
void check_unique_facet_hypothesis(const Halfspaces& hs, int m, const FormulaBudget& budget) {
    std::int64_t bound = 0;
    for (Mask p : hs.pos) bound += binom(popcount(p), m);
    if (bound > budget.max_generators)
        throw CapExceeded("hypothesis check over " + std::to_string(bound) +
                          " generators, over the budget");
    for (int e = 0; e < hs.t; ++e) {
        bool bad = false;
        for_each_k_subset_of(hs.pos[e], m, [&](Mask d) {
            if (bad) return;
            int cnt = 0;
            for (Mask p : hs.pos)
                if (contains(p, d)) ++cnt;
            if (cnt != 1) bad = true;
        });
        if (bad)
            throw HypothesisFailed(
                "a majority generator lies in more than one positive halfspace");
    }
}

Count unique_facet(const Halfspaces& hs, int ell, const FormulaBudget& budget, int threads,
                   bool free_only, const std::function<Count(int)>& weight) {
    const int m = majority_gen_size(ell);
    check_unique_facet_hypothesis(hs, m, budget);
    auto subs = small_subsets(hs, ell, budget);
    const int workers = resolve_threads(threads);
    std::vector<Count> part(static_cast<std::size_t>(workers), Count(0));
    parallel_for(0, static_cast<std::int64_t>(subs.size()), workers,
                 [&](std::int64_t lo, std::int64_t hi, int w) {
                     Count local = 0;
                     for (std::int64_t i = lo; i < hi; ++i) {
                         Mask U = subs[static_cast<std::size_t>(i)];
                         if (free_only && !free_of_opposites(hs, U)) continue;
                         Count wu = weight(popcount(U));
                         if (wu == 0) continue;
                         std::int64_t f = signed_indicator_sum(
                             U, [&](Mask v) { return majority_everywhere(hs, v, m); });
                         if (f) local += Count(f) * wu;
                     }
                     part[static_cast<std::size_t>(w)] = std::move(local);
                 });
    Count total = 0;
    for (auto& p : part) total += p;
    return total;
}

int resolve_ell_value(int N, int k, bool complement_side, std::optional<EllChoice> ell) {
    const int small = std::min(k, N - k), large = std::max(k, N - k);
    if (!ell) return complement_side ? large : small;
    switch (ell->kind) {
        case EllChoice::Kind::Small: return small;
        case EllChoice::Kind::Large: return large;
        case EllChoice::Kind::Explicit:
            if (ell->value != k && ell->value != N - k)
                throw OutOfRangeK("explicit subset size " + std::to_string(ell->value) +
                                  " is neither k nor N-k");
            return ell->value;
    }
    return small;
}

bool complement_side_method(CommitteeMethod m) {
    return m == CommitteeMethod::Vandermonde || m == CommitteeMethod::MobiusVandermonde;
}

} // namespace

int resolve_ell(const OrientedMatroid& om, int k, CommitteeMethod method,
                std::optional<EllChoice> ell) {
    return resolve_ell_value(om.num_topes(), k, complement_side_method(method), ell);
}

Count count_committees(const OrientedMatroid& om, int k, CommitteeMethod method,
                       std::optional<EllChoice> ell, const FormulaBudget& budget,
                       int threads) {
    auto hs = setup(om);
    if (k < 3 || k > hs.N - 3)
        throw OutOfRangeK("committee size " + std::to_string(k) + " outside [3, " +
                          std::to_string(hs.N - 3) + "]");
    const int L = resolve_ell_value(hs.N, k, complement_side_method(method), ell);
    auto plain_weight = [&](int u) { return Count(binom(hs.N - u, L - u)); };
    switch (method) {
        case CommitteeMethod::HalfspaceIE: return halfspace_ie(hs, L, budget, threads);
        case CommitteeMethod::Vandermonde: return vandermonde(hs, L, budget, threads);
        case CommitteeMethod::MobiusUnion: return mobius_union(hs, L, budget, threads);
        case CommitteeMethod::MobiusVandermonde:
            return mobius_vandermonde(hs, L, budget, threads);
        case CommitteeMethod::DoubleMobius:
            return double_mobius(hs, L, budget, threads, {}, plain_weight);
        case CommitteeMethod::ConvexEuler:
            return convex_euler(om, hs, L, budget, threads, false, plain_weight);
        case CommitteeMethod::UniqueFacet:
            return unique_facet(hs, L, budget, threads, false, plain_weight);
    }
    throw Error("unknown committee method");
}

Count count_free_committees(const OrientedMatroid& om, int k, FreeCommitteeMethod method,
                            const FormulaBudget& budget, int threads) {
    auto hs = setup(om);
    if (k < 3 || 2 * k > hs.N)
        throw OutOfRangeK("opposite-free committee size " + std::to_string(k) +
                          " outside [3, " + std::to_string(hs.N / 2) + "]");
    // unions of opposite-free sets extend to k-sets avoiding both members of
    // every untouched opposite pair: pick the pairs, then a side of each
    auto free_weight = [&](int u) {
        if (u > k) return Count(0);
        return Count(binom(hs.N / 2 - u, k - u)) << (k - u);
    };
    auto keep = [&](Mask v) { return free_of_opposites(hs, v); };
    switch (method) {
        case FreeCommitteeMethod::DoubleMobius:
            return double_mobius(hs, k, budget, threads, keep, free_weight);
        case FreeCommitteeMethod::ConvexEuler:
            return convex_euler(om, hs, k, budget, threads, true, free_weight);
        case FreeCommitteeMethod::UniqueFacet:
            return unique_facet(hs, k, budget, threads, true, free_weight);
    }
    throw Error("unknown free committee method");
}

Count convex_euler_reference(const OrientedMatroid& om, int k, std::optional<EllChoice> ell,
                             ChiRoute route, std::int64_t max_families) {
    auto hs = setup(om);
    if (k < 3 || k > hs.N - 3)
        throw OutOfRangeK("committee size " + std::to_string(k) + " outside [3, " +
                          std::to_string(hs.N - 3) + "]");
    const int L = resolve_ell_value(hs.N, k, false, ell);
    const int m = majority_gen_size(L);
    FormulaBudget wide;
    wide.max_generators = 62;
    auto gens = layer_generators(hs, m, wide);
    const int g = static_cast<int>(gens.size());
    if (g > 62 || (std::int64_t{1} << std::min(g, 62)) > max_families)
        throw CapExceeded("reference evaluation over 2^" + std::to_string(g) +
                          " generator families, over the budget");
    std::vector<Mask> image(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) image[j] = gamma(om, gens[j]);
    const Mask full_t = full_mask(hs.t);
    Count total = 0;
    for (Mask fam = 1; fam < bit(g); ++fam) {
        Mask U = 0;
        for (Mask rem = fam; rem;) {
            int j = lowest_bit(rem);
            rem &= rem - 1;
            U |= gens[static_cast<std::size_t>(j)];
        }
        if (popcount(U) > L) continue;
        std::vector<Mask> imgs;
        for (Mask rem = fam; rem;) {
            int j = lowest_bit(rem);
            rem &= rem - 1;
            imgs.push_back(image[static_cast<std::size_t>(j)]);
        }
        auto bmin = min_sets(std::move(imgs));
        Mask covered = 0;
        for (Mask f : bmin) covered |= f;
        if (covered != full_t) continue;
        std::int64_t chi;
        if (route == ChiRoute::EulerComplex) {
            std::vector<Mask> facets;
            facets.reserve(bmin.size());
            for (Mask f : bmin) facets.push_back(full_t & ~f);
            chi = reduced_euler_characteristic(make_complex(hs.t, std::move(facets)));
        } else {
            chi = union_mobius_number(hs.t, bmin);
        }
        if (!chi) continue;
        Count term = Count(chi) * binom(hs.N - popcount(U), L - popcount(U));
        total += (popcount(fam) & 1) ? -term : term;
    }
    return total;
}

namespace {

const std::vector<std::pair<std::string, CommitteeMethod>>& method_table() {
    static const std::vector<std::pair<std::string, CommitteeMethod>> table = {
        {"hs-ie", CommitteeMethod::HalfspaceIE},
        {"vandermonde", CommitteeMethod::Vandermonde},
        {"mobius-union", CommitteeMethod::MobiusUnion},
        {"mobius-vandermonde", CommitteeMethod::MobiusVandermonde},
        {"double-mobius", CommitteeMethod::DoubleMobius},
        {"convex-euler", CommitteeMethod::ConvexEuler},
        {"unique-facet", CommitteeMethod::UniqueFacet},
    };
    return table;
}

const std::vector<std::pair<std::string, FreeCommitteeMethod>>& free_method_table() {
    static const std::vector<std::pair<std::string, FreeCommitteeMethod>> table = {
        {"free-double-mobius", FreeCommitteeMethod::DoubleMobius},
        {"free-convex-euler", FreeCommitteeMethod::ConvexEuler},
        {"free-unique-facet", FreeCommitteeMethod::UniqueFacet},
    };
    return table;
}

} // namespace

const std::vector<std::string>& all_method_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v{"brute"};
        for (const auto& [n, m] : method_table()) v.push_back(n);
        return v;
    }();
    return names;
}

const std::vector<std::string>& all_free_method_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v{"free-brute"};
        for (const auto& [n, m] : free_method_table()) v.push_back(n);
        return v;
    }();
    return names;
}

std::string method_name(CommitteeMethod method) {
    for (const auto& [n, m] : method_table())
        if (m == method) return n;
    return "?";
}

std::string method_name(FreeCommitteeMethod method) {
    for (const auto& [n, m] : free_method_table())
        if (m == method) return n;
    return "?";
}

std::optional<CommitteeMethod> parse_method(const std::string& name) {
    for (const auto& [n, m] : method_table())
        if (n == name) return m;
    return std::nullopt;
}

std::optional<FreeCommitteeMethod> parse_free_method(const std::string& name) {
    for (const auto& [n, m] : free_method_table())
        if (n == name) return m;
    return std::nullopt;
}

CrosscheckReport crosscheck(const OrientedMatroid& om, KRange range,
                            const std::vector<std::string>& methods,
                            std::optional<EllChoice> ell, const FormulaBudget& budget,
                            int threads) {
    std::vector<std::string> use = methods;
    if (use.empty()) use = all_method_names();
    bool want_free = false;
    for (const auto& name : use)
        if (name.rfind("free-", 0) == 0) want_free = true;

    CrosscheckReport rep;
    rep.t = om.ground_size();
    rep.num_topes = om.num_topes();
    rep.k_lo = range.lo;
    rep.k_hi = range.hi;

    KappaVariants vars;
    vars.free = want_free;
    auto base = kappa_sweep(om, range, vars, {}, threads);
    for (int k = range.lo; k <= range.hi; ++k)
        rep.oracle.push_back(base.kappa[static_cast<std::size_t>(k)]);

    struct Job {
        int k;
        std::string method;
    };
    std::vector<Job> jobs;
    for (int k = range.lo; k <= range.hi; ++k)
        for (const auto& name : use) jobs.push_back({k, name});
    rep.cells.resize(jobs.size());

    parallel_for(0, static_cast<std::int64_t>(jobs.size()), threads,
                 [&](std::int64_t lo, std::int64_t hi, int) {
                     for (std::int64_t i = lo; i < hi; ++i) {
                         const auto& job = jobs[static_cast<std::size_t>(i)];
                         auto& cell = rep.cells[static_cast<std::size_t>(i)];
                         cell.k = job.k;
                         cell.method = job.method;
                         auto t0 = std::chrono::steady_clock::now();
                         try {
                             bool is_free = job.method.rfind("free-", 0) == 0;
                             std::int64_t baseline =
                                 is_free ? (*base.kappa_free)[static_cast<std::size_t>(job.k)]
                                         : base.kappa[static_cast<std::size_t>(job.k)];
                             if (job.method == "brute") {
                                 auto r = kappa_sweep(om, KRange{job.k, job.k}, {}, {}, 1);
                                 cell.value = r.kappa[static_cast<std::size_t>(job.k)];
                             } else if (job.method == "free-brute") {
                                 KappaVariants v;
                                 v.free = true;
                                 auto r = kappa_sweep(om, KRange{job.k, job.k}, v, {}, 1);
                                 cell.value =
                                     (*r.kappa_free)[static_cast<std::size_t>(job.k)];
                             } else if (auto cm = parse_method(job.method)) {
                                 cell.value =
                                     count_committees(om, job.k, *cm, ell, budget, 1);
                             } else if (auto fm = parse_free_method(job.method)) {
                                 cell.value =
                                     count_free_committees(om, job.k, *fm, budget, 1);
                             } else {
                                 throw Error("unknown method name: " + job.method);
                             }
                             cell.ok = true;
                             cell.agrees = (cell.value == baseline);
                         } catch (const std::exception& e) {
                             cell.ok = false;
                             cell.error = e.what();
                         }
                         auto t1 = std::chrono::steady_clock::now();
                         cell.elapsed_ms =
                             std::chrono::duration<double, std::milli>(t1 - t0).count();
                     }
                 });

    for (const auto& cell : rep.cells)
        if (cell.ok && cell.agrees && !*cell.agrees) rep.all_agree = false;
    return rep;
}

} // namespace topecom
