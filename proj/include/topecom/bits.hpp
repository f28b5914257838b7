#ifndef TOPECOM_BITS_HPP
#define TOPECOM_BITS_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace topecom {

// Subsets of a universe of at most 64 points (topes, ground-set elements,
// signed crosspolytope vertices) are packed into one machine word.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask bit(int i) { return Mask{1} << i; }

inline bool contains(Mask outer, Mask inner) { return (inner & ~outer) == 0; }

// All bits below `n` set; n == 64 gives the full word.
inline Mask full_mask(int n) {
    return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline int lowest_bit(Mask m) { return std::countr_zero(m); }

// Next k-subset in colex order (Gosper's hack). Returns 0 past the last one.
inline Mask next_combination(Mask v, int universe) {
    Mask c = v & (~v + 1);
    Mask r = v + c;
    Mask next = (((r ^ v) >> 2) / c) | r;
    return (next & ~full_mask(universe)) ? 0 : next;
}

inline std::vector<int> mask_to_indices(Mask m) {
    std::vector<int> out;
    while (m) {
        int i = lowest_bit(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

inline Mask indices_to_mask(const std::vector<int>& ix) {
    Mask m = 0;
    for (int i : ix) m |= bit(i);
    return m;
}

// Calls fn(sub) for every submask of m, including 0 and m itself.
template <typename Fn>
void for_each_submask(Mask m, Fn&& fn) {
    Mask sub = m;
    while (true) {
        fn(sub);
        if (sub == 0) break;
        sub = (sub - 1) & m;
    }
}

// Calls fn(sub) for every k-element subset of the set `inside`.
template <typename Fn>
void for_each_k_subset_of(Mask inside, int k, Fn&& fn) {
    if (k < 0 || k > popcount(inside)) return;
    if (k == 0) { fn(Mask{0}); return; }
    std::vector<int> pts = mask_to_indices(inside);
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    const int n = static_cast<int>(pts.size());
    while (true) {
        Mask m = 0;
        for (int i : pick) m |= bit(pts[i]);
        fn(m);
        int at = k - 1;
        while (at >= 0 && pick[at] == n - k + at) --at;
        if (at < 0) break;
        ++pick[at];
        for (int j = at + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

// Calls fn(mask) for every subset of the universe with exactly k elements.
template <typename Fn>
void for_each_k_subset(int universe, int k, Fn&& fn) {
    if (k < 0 || k > universe) return;
    if (k == 0) { fn(Mask{0}); return; }
    Mask v = full_mask(k);
    while (v) {
        fn(v);
        v = next_combination(v, universe);
    }
}

} // namespace topecom

#endif
