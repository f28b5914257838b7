#ifndef TOPECOM_POSET_HPP
#define TOPECOM_POSET_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "topecom/bits.hpp"
#include "topecom/errors.hpp"

namespace topecom {

// Open-addressing map from set masks to dense indices. Lookup of submasks of
// lattice elements is the hot path of every Mobius computation here, so this
// avoids the allocation and chaining costs of the standard containers.
class MaskIndex {
public:
    MaskIndex() = default;
    explicit MaskIndex(std::size_t expected) { rehash_for(expected); }

    void insert(Mask key, std::int32_t value);
    std::int32_t find(Mask key) const; // -1 if absent
    std::size_t size() const { return count_; }

private:
    void rehash_for(std::size_t n);
    static std::uint64_t hash(Mask x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::vector<Mask> keys_;
    std::vector<std::int32_t> vals_;
    std::size_t mask_ = 0;   // capacity - 1
    std::size_t count_ = 0;
};

// Inclusion-minimal members of a family (duplicates collapse).
std::vector<Mask> min_sets(std::vector<Mask> family);

// Inclusion-maximal members of a family (duplicates collapse).
std::vector<Mask> max_sets(std::vector<Mask> family);

// Minimal transversals of a family of nonempty sets. blocker(blocker(F))
// equals min_sets(F); an empty family has blocker {emptyset} by convention
// here represented as a single empty mask is NOT used -- callers pass
// nonempty families. Members must be nonempty (EmptyMember otherwise).
std::vector<Mask> blocker(const std::vector<Mask>& family);

// Finite join-semilattice of subsets of {0..universe-1} ordered by inclusion,
// with a formal least element represented by the empty mask at index 0.
// Elements are sorted by (cardinality, value).
struct JoinSemilattice {
    int universe = 0;
    std::vector<Mask> elements;
    MaskIndex index;

    static JoinSemilattice from_elements(int universe, std::vector<Mask> elements);
    int index_of(Mask m) const { return index.find(m); }
    std::size_t size() const { return elements.size(); }
};

// All unions of nonempty subfamilies of `generators` (plus the formal least
// element), restricted to unions of at most `size_cap` points when given and
// to unions accepted by `keep` when given. Restricting by size is sound
// because every union below a retained union is itself retained; `keep` must
// likewise be downward closed (accept every subset of an accepted set) for
// the filtered closure to be exact. Throws CapExceeded when more than
// max_elements lattice elements appear.
JoinSemilattice union_semilattice(
    int universe, const std::vector<Mask>& generators,
    std::optional<int> size_cap = std::nullopt,
    const std::function<bool(Mask)>& keep = {},
    std::int64_t max_elements = 1 << 22);

// mu(least, z) for every element, by the defining recurrence
// mu(0,0) = 1, mu(0,z) = -sum_{y < z} mu(0,y). Sub-element sums run over
// submasks probed against the lattice index; layers of equal cardinality are
// independent, so they are processed in parallel when threads > 1.
std::vector<std::int64_t> mobius_below(const JoinSemilattice& L, int threads = 1);

// In-place signed zeta inversion over all masks below 2^n_bits:
// a[U] becomes sum over V below U of (-1)^{|U\V|} a[V].
void signed_subset_transform(std::vector<std::int64_t>& a, int n_bits);

// mu(least, F_i) in the inclusion order on set families, a formal least
// element adjoined below all of them. Families must be sorted, duplicate-free
// mask lists, pairwise distinct, ordered by nondecreasing size.
std::vector<std::int64_t> family_inclusion_mobius(const std::vector<std::vector<Mask>>& families);

// Abstract simplicial complex given by its facets over {0..vertices-1}.
struct SimplicialComplex {
    int vertices = 0;
    std::vector<Mask> facets; // inclusion-maximal, deduplicated growing order
};

// Normalizes generating sets to facets (inclusion-maximal ones).
SimplicialComplex make_complex(int vertices, std::vector<Mask> generating_sets);

// Reduced Euler characteristic, with the empty face counted: a single point
// gives 0, the boundary of a triangle gives -1, any cone gives 0. Uses direct
// face enumeration for at most 24 vertices and the alternating sum of
// empty-intersection facet index sets beyond that; the two agree (tested).
std::int64_t reduced_euler_characteristic(const SimplicialComplex& cx);

// mu(0,1) of the union semilattice generated by `family` over the universe
// mask; requires the family to cover the universe (DoesNotCover otherwise).
std::int64_t union_mobius_number(int universe, const std::vector<Mask>& family);

// Nerve of a family: faces are index sets with nonempty common intersection.
// Vertices are family indices 0..m-1.
SimplicialComplex nerve(const std::vector<Mask>& family);

} // namespace topecom

#endif
