#ifndef TOPECOM_BOOLEAN_BLOCKING_HPP
#define TOPECOM_BOOLEAN_BLOCKING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "topecom/bits.hpp"
#include "topecom/count.hpp"
#include "topecom/rational.hpp"

namespace topecom {

// A relative blocking problem in the Boolean lattice of subsets of {1..n}:
// count the k-subsets b with |b meet lambda| > r*k for every member lambda of
// the antichain. Members are masks with bit (i-1) standing for point i.
struct BlockingInstance {
    int n = 0;
    std::vector<Mask> antichain;
    Ratio r;
    int k = 0;

    // threshold: blocked means intersection size >= nu
    std::int64_t nu() const { return r.floor_times(k) + 1; }

    // Validates: 3 <= n <= 20, 1 <= k <= n, r < 1, antichain nonempty with
    // pairwise incomparable members, none empty or full.
    static BlockingInstance make(int n, std::vector<Mask> antichain, Ratio r, int k);
};

struct ConstraintStatus {
    bool rank_window = false; // nu <= min rank and max rank <= n + floor(r k) - k
    bool rank_floor = false;  // nu <= min rank
};

ConstraintStatus check_constraints(const BlockingInstance& inst);

struct BlockingBudget {
    std::int64_t max_enumeration = std::int64_t{1} << 26; // brute-force k-subsets
    std::int64_t max_lattice = std::int64_t{1} << 22;     // join-semilattice elements
    int max_antichain = 16;                               // members, for the 2^|antichain| loops
    int max_support_classes = 64;                         // distinct supports in the nerve method
    // Extra union-size restriction for the grouped sums. Every term it can
    // drop carries a vanishing binomial factor, so results never depend on
    // it; it exists so tests can compare truncated and untruncated
    // evaluation. The Vandermonde weightings ignore it: their terms vanish
    // per convolution index instead of per union size.
    std::optional<int> union_size_limit;
};

// Exhaustive census over all k-subsets. When out_blockers is given, the
// blocking subsets themselves are appended in colex order.
Count brute_blockers(const BlockingInstance& inst,
                     std::vector<Mask>* out_blockers = nullptr,
                     const BlockingBudget& budget = {});

// Alternating-sum formulas. The two enums deliberately mirror each other:
// for the first three entries the Mobius variant regroups the same terms
// through the Mobius function of a generated union-semilattice, and the two
// families are evaluated by different mechanisms (signed subset transforms
// versus explicit lattices) precisely so they can cross-check each other.
enum class IeMethod { ComplementIdeal, Ideal, Vandermonde, DoubleIE };
enum class MobiusMethod { ComplementIdeal, Ideal, Vandermonde, DoubleMobius };

// ComplementIdeal / Ideal / Vandermonde require the two-sided rank
// constraint; DoubleIE only the lower one. ConstraintViolation otherwise.
Count count_blockers_ie(const BlockingInstance& inst, IeMethod method,
                        const BlockingBudget& budget = {});

// Same gating as count_blockers_ie, with DoubleMobius in the role of
// DoubleIE.
Count count_blockers_mobius(const BlockingInstance& inst, MobiusMethod method,
                            const BlockingBudget& budget = {});

// Nerve-of-supports formula: sums over subsets D of the nu-layer of the
// ideal of the antichain whose minimal supports cover the whole index set,
// weighted by the Mobius number of the union lattice of those supports.
// Requires the lower rank constraint.
Count count_blockers_nerve(const BlockingInstance& inst,
                           const BlockingBudget& budget = {});

// Size of the nu-layer of the order ideal generated by the antichain,
// i.e. the number of nu-subsets lying inside at least one member.
std::int64_t ideal_layer_size_direct(const BlockingInstance& inst);
// The same count through inclusion-exclusion over member intersections.
std::int64_t ideal_layer_size_ie(const BlockingInstance& inst);

// Seeded antichain generator. size > 0 draws `count` distinct size-subsets
// (equal sizes are automatically incomparable); size == 0 draws subsets of
// random sizes in [1, n-1] and keeps the inclusion-minimal ones. The result
// may have fewer than `count` members after deduplication; it is never empty.
std::vector<Mask> random_antichain(int n, int count, int size, std::uint64_t seed);

} // namespace topecom

#endif
