#ifndef TOPECOM_CROSS_BLOCKING_HPP
#define TOPECOM_CROSS_BLOCKING_HPP

#include <cstdint>
#include <vector>

#include "topecom/boolean_blocking.hpp"

namespace topecom {

// Relative blocking in the face semilattice of the boundary of an
// m-crosspolytope: the ground set is {1..2m} with i and i+m opposite, faces
// are the subsets free of opposites, and the union of two faces is their
// join when free of opposites and the deleted top element otherwise.
struct CrossInstance {
    int m = 0;
    std::vector<Mask> antichain; // bits 0..2m-1; bit i-1 = +i, bit m+i-1 = -i
    Ratio r;
    int k = 0;

    std::int64_t nu() const { return r.floor_times(k) + 1; }

    // Validates: 2 <= m <= 10, 1 <= k <= m, r < 1, members nonempty, free of
    // opposites and pairwise incomparable.
    static CrossInstance make(int m, std::vector<Mask> antichain, Ratio r, int k);
};

bool free_of_opposite_pairs(Mask v, int m);

// Exhaustive census over the opposite-free k-subsets.
Count brute_blockers_cross(const CrossInstance& inst,
                           const BlockingBudget& budget = {});

enum class CrossMethod { DoubleIE, DoubleMobius };

// Alternating sums over the threshold layer of the antichain ideal, with
// unions containing an opposite pair excluded (they are the deleted top).
// DoubleIE regroups by sub-antichain; DoubleMobius runs over the inclusion
// order of the sub-antichain generator families and their opposite-free
// union semilattices. Requires the threshold to fit below every member rank.
Count count_blockers_cross(const CrossInstance& inst, CrossMethod method,
                           const BlockingBudget& budget = {});

// Number of opposite-free j-subsets, by enumeration; equals 2^j * C(m,j).
std::int64_t cross_layer_size(int m, int j);

// Seeded opposite-free antichain: `count` draws of `size` distinct axes with
// random signs (deduplicated; equal sizes keep the family an antichain).
std::vector<Mask> random_cross_antichain(int m, int count, int size, std::uint64_t seed);

} // namespace topecom

#endif
