#include "topecom/committee_oracle.hpp"

#include <atomic>
#include <chrono>
#include <sstream>

#include <nlohmann/json.hpp>

#include "topecom/binomial.hpp"
#include "topecom/bits.hpp"
#include "topecom/errors.hpp"
#include "topecom/parallel.hpp"

namespace topecom {

namespace {

bool majority_test(const std::vector<Mask>& half, Mask subset, int k) {
    for (Mask h : half)
        if (2 * popcount(subset & h) <= k) return false;
    return true;
}

std::vector<Mask> positive_masks(const OrientedMatroid& om) {
    std::vector<Mask> pos(static_cast<std::size_t>(om.ground_size()));
    for (int e = 1; e <= om.ground_size(); ++e)
        pos[static_cast<std::size_t>(e - 1)] = om.positive_tope_mask(e);
    return pos;
}

} // namespace

bool is_committee(const OrientedMatroid& om, Mask tope_set) {
    return majority_test(positive_masks(om), tope_set, popcount(tope_set));
}

bool is_free_of_opposites(const OrientedMatroid& om, Mask tope_set) {
    auto ids = mask_to_indices(tope_set);
    for (int i : ids) {
        int j = om.negation_of(i);
        if (contains(tope_set, bit(j))) return false;
    }
    return true;
}

bool is_minimal_committee(const OrientedMatroid& om, Mask tope_set) {
    auto pos = positive_masks(om);
    if (!majority_test(pos, tope_set, popcount(tope_set)))
        throw NotACommittee("minimality is only defined for committees");
    // every proper nonempty subset must fail the majority test
    for (Mask sub = (tope_set - 1) & tope_set; sub != 0; sub = (sub - 1) & tope_set)
        if (majority_test(pos, sub, popcount(sub))) return false;
    return true;
}

std::int64_t KappaReport::total(const std::vector<std::int64_t>& v) const {
    std::int64_t s = 0;
    for (int k = k_lo; k <= k_hi && k < static_cast<int>(v.size()); ++k)
        s += v[static_cast<std::size_t>(k)];
    return s;
}

namespace {

// Internal tope order: topes are permuted so that indices 2j and 2j+1 hold a
// tope and its negation. Opposite-freeness then reads off the subset mask
// alone, and the halfspace masks are rebuilt in the permuted order.
struct PairedInstance {
    int N = 0;
    int t = 0;
    std::vector<Mask> pos, neg;
    Mask maxplus = 0;
};

PairedInstance build_paired(const OrientedMatroid& om) {
    PairedInstance P;
    P.N = om.num_topes();
    P.t = om.ground_size();
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(P.N));
    std::vector<char> placed(static_cast<std::size_t>(P.N), 0);
    for (int i = 0; i < P.N; ++i) {
        if (placed[static_cast<std::size_t>(i)]) continue;
        int j = om.negation_of(i);
        perm.push_back(i);
        perm.push_back(j);
        placed[static_cast<std::size_t>(i)] = 1;
        placed[static_cast<std::size_t>(j)] = 1;
    }
    P.pos.assign(static_cast<std::size_t>(P.t), 0);
    P.neg.assign(static_cast<std::size_t>(P.t), 0);
    for (int ni = 0; ni < P.N; ++ni) {
        const SignVector& sv = om.tope(perm[static_cast<std::size_t>(ni)]);
        for (int e = 1; e <= P.t; ++e) {
            if (sv.is_positive(e))
                P.pos[static_cast<std::size_t>(e - 1)] |= bit(ni);
            else
                P.neg[static_cast<std::size_t>(e - 1)] |= bit(ni);
        }
    }
    std::vector<int> inv(static_cast<std::size_t>(P.N));
    for (int ni = 0; ni < P.N; ++ni) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(ni)])] = ni;
    for (int i : max_positive_topes(om)) P.maxplus |= bit(inv[static_cast<std::size_t>(i)]);
    return P;
}

// pairs live at (2j, 2j+1), so any adjacent pair fully inside the mask
// witnesses an opposite pair
inline bool paired_free(Mask subset) {
    constexpr Mask even = 0x5555555555555555ULL;
    return ((subset >> 1) & subset & even) == 0;
}

struct Accum {
    std::vector<std::int64_t> kappa, free_, min_, maxplus_, anti;
    explicit Accum(int N)
        : kappa(static_cast<std::size_t>(N + 1), 0),
          free_(static_cast<std::size_t>(N + 1), 0),
          min_(static_cast<std::size_t>(N + 1), 0),
          maxplus_(static_cast<std::size_t>(N + 1), 0),
          anti(static_cast<std::size_t>(N + 1), 0) {}
    void add(const Accum& o) {
        for (std::size_t k = 0; k < kappa.size(); ++k) {
            kappa[k] += o.kappa[k];
            free_[k] += o.free_[k];
            min_[k] += o.min_[k];
            maxplus_[k] += o.maxplus_[k];
            anti[k] += o.anti[k];
        }
    }
};

inline bool bitmap_get(const std::vector<std::uint64_t>& bm, Mask x) {
    return (bm[static_cast<std::size_t>(x >> 6)] >> (x & 63)) & 1;
}

// h[x] := OR over all subsets s of x of h[s], done bit position by bit
// position; positions below the word boundary use in-word shifted masks.
void subset_or_transform(std::vector<std::uint64_t>& h, int nbits) {
    static constexpr std::uint64_t low[6] = {
        0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
        0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};
    for (int i = 0; i < nbits && i < 6; ++i)
        for (auto& w : h) w |= (w & low[i]) << (1u << i);
    for (int i = 6; i < nbits; ++i) {
        const std::size_t step = std::size_t{1} << (i - 6);
        for (std::size_t base = 0; base < h.size(); base += 2 * step)
            for (std::size_t off = 0; off < step; ++off)
                h[base + step + off] |= h[base + off];
    }
}

KappaReport sweep_all(const PairedInstance& P, int klo, int khi,
                      KappaVariants v, int threads) {
    const int N = P.N;
    const std::int64_t size = std::int64_t{1} << N;
    const std::int64_t words = std::max<std::int64_t>(size >> 6, 1);
    const bool subword = N < 6; // tiny instance, masks fit in one word

    std::vector<std::uint64_t> committee_bits;
    if (v.minimal) committee_bits.assign(static_cast<std::size_t>(words), 0);

    std::vector<Accum> acc(static_cast<std::size_t>(resolve_threads(threads)), Accum(N));
    parallel_chunks(0, static_cast<std::int64_t>(words), threads,
                    [&](std::int64_t wlo, std::int64_t whi, int chunk) {
        Accum& a = acc[static_cast<std::size_t>(chunk)];
        for (std::int64_t w = wlo; w < whi; ++w) {
            std::uint64_t cw = 0;
            const Mask base = static_cast<Mask>(w) << 6;
            const int nb = subword ? static_cast<int>(size) : 64;
            for (int b = 0; b < nb; ++b) {
                const Mask m = base | static_cast<Mask>(b);
                const int k = popcount(m);
                const bool in_range = k >= klo && k <= khi;
                if (!in_range && !v.minimal) continue;
                if (majority_test(P.pos, m, k)) {
                    cw |= std::uint64_t{1} << b;
                    if (in_range) {
                        a.kappa[static_cast<std::size_t>(k)]++;
                        if (v.free && paired_free(m)) a.free_[static_cast<std::size_t>(k)]++;
                        if (v.maxplus && contains(P.maxplus, m))
                            a.maxplus_[static_cast<std::size_t>(k)]++;
                    }
                } else if (in_range && v.nstar && majority_test(P.neg, m, k)) {
                    a.anti[static_cast<std::size_t>(k)]++;
                }
            }
            if (v.minimal) committee_bits[static_cast<std::size_t>(w)] = cw;
        }
    });
    Accum total(N);
    for (const auto& a : acc) total.add(a);

    if (v.minimal) {
        std::vector<std::uint64_t> reach = committee_bits;
        subset_or_transform(reach, N);
        std::vector<std::vector<std::int64_t>> mins(
            static_cast<std::size_t>(resolve_threads(threads)),
            std::vector<std::int64_t>(static_cast<std::size_t>(N + 1), 0));
        parallel_chunks(0, static_cast<std::int64_t>(words), threads,
                        [&](std::int64_t wlo, std::int64_t whi, int chunk) {
            auto& mc = mins[static_cast<std::size_t>(chunk)];
            for (std::int64_t w = wlo; w < whi; ++w) {
                std::uint64_t cw = committee_bits[static_cast<std::size_t>(w)];
                while (cw) {
                    const int b = lowest_bit(cw);
                    cw &= cw - 1;
                    const Mask m = (static_cast<Mask>(w) << 6) | static_cast<Mask>(b);
                    const int k = popcount(m);
                    if (k < klo || k > khi) continue;
                    bool minimal = true;
                    Mask rest = m;
                    while (rest) {
                        const Mask one = rest & (~rest + 1);
                        rest ^= one;
                        if (bitmap_get(reach, m ^ one)) { minimal = false; break; }
                    }
                    if (minimal) mc[static_cast<std::size_t>(k)]++;
                }
            }
        });
        for (const auto& mc : mins)
            for (std::size_t k = 0; k < mc.size(); ++k) total.min_[k] += mc[k];
    }

    KappaReport rep;
    rep.t = P.t;
    rep.num_topes = N;
    rep.k_lo = klo;
    rep.k_hi = khi;
    rep.method = "sweep";
    rep.kappa = std::move(total.kappa);
    if (v.free) rep.kappa_free = std::move(total.free_);
    if (v.minimal) rep.kappa_min = std::move(total.min_);
    if (v.maxplus) rep.kappa_maxplus = std::move(total.maxplus_);
    if (v.nstar) {
        auto& ns = total.anti;
        for (int k = klo; k <= khi; ++k)
            ns[static_cast<std::size_t>(k)] =
                binom(N, k) - rep.kappa[static_cast<std::size_t>(k)] - ns[static_cast<std::size_t>(k)];
        rep.n_star = std::move(ns);
    }
    return rep;
}

// Pruned enumeration of k-subsets: extend by ascending internal index, cut
// when some halfspace can no longer reach its majority threshold.
struct PerKWorker {
    const PairedInstance& P;
    const std::vector<Mask>& half; // pos for committees, neg for the anti pass
    int k = 0;
    int need = 0; // floor(k/2) + 1
    Accum* out = nullptr;
    bool anti_pass = false;
    KappaVariants v;
    std::atomic<std::int64_t>* minimal_work = nullptr;
    std::int64_t minimal_budget = 0;
    std::atomic<bool>* overflow = nullptr;

    void record(Mask m) {
        if (anti_pass) {
            out->anti[static_cast<std::size_t>(k)]++;
            return;
        }
        out->kappa[static_cast<std::size_t>(k)]++;
        if (v.free && paired_free(m)) out->free_[static_cast<std::size_t>(k)]++;
        if (v.maxplus && contains(P.maxplus, m)) out->maxplus_[static_cast<std::size_t>(k)]++;
        if (v.minimal) {
            std::int64_t steps = 0;
            bool minimal = true;
            for (Mask sub = (m - 1) & m; sub != 0; sub = (sub - 1) & m) {
                ++steps;
                if (majority_test(half, sub, popcount(sub))) { minimal = false; break; }
            }
            if (minimal) out->min_[static_cast<std::size_t>(k)]++;
            if (minimal_work->fetch_add(steps, std::memory_order_relaxed) + steps > minimal_budget)
                overflow->store(true, std::memory_order_relaxed);
        }
    }

    void extend(int next, Mask m, int chosen, std::vector<int>& cnt) {
        if (chosen == k) { record(m); return; }
        const int rem = k - chosen;
        for (int i = next; i <= P.N - rem; ++i) {
            if (overflow && overflow->load(std::memory_order_relaxed)) return;
            bool ok = true;
            for (int e = 0; e < P.t && ok; ++e) {
                const int after = cnt[static_cast<std::size_t>(e)] +
                                  (contains(half[static_cast<std::size_t>(e)], bit(i)) ? 1 : 0);
                // even spending every remaining pick here, can e still reach need?
                if (after + (rem - 1) < need) ok = false;
            }
            if (!ok) continue;
            for (int e = 0; e < P.t; ++e)
                if (contains(half[static_cast<std::size_t>(e)], bit(i))) cnt[static_cast<std::size_t>(e)]++;
            extend(i + 1, m | bit(i), chosen + 1, cnt);
            for (int e = 0; e < P.t; ++e)
                if (contains(half[static_cast<std::size_t>(e)], bit(i))) cnt[static_cast<std::size_t>(e)]--;
        }
    }
};

} // namespace

KappaReport kappa_sweep(const OrientedMatroid& om, std::optional<KRange> range,
                        KappaVariants v, const SweepBudget& budget, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    const PairedInstance P = build_paired(om);
    const int N = P.N;
    int klo = 1, khi = N - 1;
    if (range) {
        klo = std::max(0, range->lo);
        khi = std::min(N, range->hi);
    }
    if (klo > khi) throw Error("empty cardinality range");

    std::int64_t perk_cost = 0;
    for (int k = klo; k <= khi; ++k) perk_cost += binom(N, k);
    const bool full_possible = N <= 40 && (std::int64_t{1} << N) <= budget.max_subsets;
    const bool perk_possible = perk_cost <= budget.max_subsets;
    if (!full_possible && !perk_possible)
        throw CapExceeded("subset census exceeds the configured budget (" +
                          std::to_string(budget.max_subsets) + " subsets)");
    const bool use_full =
        full_possible && (!perk_possible || 4 * perk_cost >= (std::int64_t{1} << N));

    KappaReport rep;
    if (use_full) {
        rep = sweep_all(P, klo, khi, v, threads);
    } else {
        const int T = resolve_threads(threads);
        std::vector<Accum> acc(static_cast<std::size_t>(T), Accum(N));
        std::atomic<std::int64_t> minimal_work{0};
        std::atomic<bool> overflow{false};
        for (int pass = 0; pass < (v.nstar ? 2 : 1); ++pass) {
            const auto& half = pass == 0 ? P.pos : P.neg;
            for (int k = std::max(klo, 1); k <= khi; ++k) {
                parallel_chunks(0, N, threads, [&](std::int64_t ilo, std::int64_t ihi, int chunk) {
                    PerKWorker w{P, half, k, k / 2 + 1, &acc[static_cast<std::size_t>(chunk)],
                                 pass == 1, v, &minimal_work, budget.max_minimal_nodes, &overflow};
                    std::vector<int> cnt(static_cast<std::size_t>(P.t), 0);
                    for (std::int64_t i = ilo; i < ihi; ++i) {
                        if (i > N - k) break;
                        for (int e = 0; e < P.t; ++e)
                            cnt[static_cast<std::size_t>(e)] =
                                contains(half[static_cast<std::size_t>(e)], bit(i)) ? 1 : 0;
                        w.extend(static_cast<int>(i) + 1, bit(i), 1, cnt);
                    }
                });
                if (overflow.load())
                    throw CapExceeded("minimality classification exceeded its work budget");
            }
        }
        Accum total(N);
        for (const auto& a : acc) total.add(a);
        rep.kappa = std::move(total.kappa);
        if (v.free) rep.kappa_free = std::move(total.free_);
        if (v.minimal) rep.kappa_min = std::move(total.min_);
        if (v.maxplus) rep.kappa_maxplus = std::move(total.maxplus_);
        if (v.nstar) {
            auto& ns = total.anti;
            for (int k = klo; k <= khi; ++k)
                ns[static_cast<std::size_t>(k)] =
                    binom(N, k) - rep.kappa[static_cast<std::size_t>(k)] - ns[static_cast<std::size_t>(k)];
            rep.n_star = std::move(ns);
        }
        rep.t = P.t;
        rep.num_topes = N;
        rep.k_lo = klo;
        rep.k_hi = khi;
        rep.method = "per-k";
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

std::string to_json(const KappaReport& rep) {
    nlohmann::json j;
    j["instance"] = {{"t", rep.t}, {"num_topes", rep.num_topes}};
    j["method"] = rep.method;
    j["elapsed_ms"] = rep.elapsed_ms;
    nlohmann::json rows = nlohmann::json::array();
    for (int k = rep.k_lo; k <= rep.k_hi; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        nlohmann::json row{{"k", k}, {"kappa", rep.kappa[ks]}};
        if (rep.kappa_free) row["kappa_free"] = (*rep.kappa_free)[ks];
        if (rep.kappa_min) row["kappa_min"] = (*rep.kappa_min)[ks];
        if (rep.kappa_maxplus) row["kappa_maxplus"] = (*rep.kappa_maxplus)[ks];
        if (rep.n_star) row["n_star"] = (*rep.n_star)[ks];
        rows.push_back(std::move(row));
    }
    j["results"] = std::move(rows);
    nlohmann::json totals{{"kappa", rep.total(rep.kappa)}};
    if (rep.kappa_free) totals["kappa_free"] = rep.total(*rep.kappa_free);
    if (rep.kappa_min) totals["kappa_min"] = rep.total(*rep.kappa_min);
    if (rep.kappa_maxplus) totals["kappa_maxplus"] = rep.total(*rep.kappa_maxplus);
    if (rep.n_star) totals["n_star"] = rep.total(*rep.n_star);
    j["totals"] = std::move(totals);
    return j.dump(2);
}

std::string to_tsv(const KappaReport& rep) {
    std::ostringstream os;
    os << "k\tkappa";
    if (rep.kappa_free) os << "\tkappa_free";
    if (rep.kappa_min) os << "\tkappa_min";
    if (rep.kappa_maxplus) os << "\tkappa_maxplus";
    if (rep.n_star) os << "\tn_star";
    os << '\n';
    for (int k = rep.k_lo; k <= rep.k_hi; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        os << k << '\t' << rep.kappa[ks];
        if (rep.kappa_free) os << '\t' << (*rep.kappa_free)[ks];
        if (rep.kappa_min) os << '\t' << (*rep.kappa_min)[ks];
        if (rep.kappa_maxplus) os << '\t' << (*rep.kappa_maxplus)[ks];
        if (rep.n_star) os << '\t' << (*rep.n_star)[ks];
        os << '\n';
    }
    return os.str();
}

} // namespace topecom
