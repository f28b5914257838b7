#ifndef TOPECOM_CONVEXITY_HPP
#define TOPECOM_CONVEXITY_HPP

#include <cstdint>
#include <vector>

#include "topecom/oriented_matroid.hpp"

namespace topecom {

// Element subsets are masks with bit (e-1) standing for element e.
// T_A^+ denotes the topes positive on every element of A (everything for
// A empty); tope_support(om, A) is its tope-index mask.
Mask tope_support(const OrientedMatroid& om, Mask elements);

// conv(A) = elements e with T_A^+ inside T_e^+. This is a closure operator:
// extensive, monotone, idempotent; conv(empty) = empty because no halfspace
// holds every tope.
Mask conv(const OrientedMatroid& om, Mask elements);

bool is_convex(const OrientedMatroid& om, Mask elements);

// element (1-based) is extreme in A when it escapes the closure of the rest
bool is_extreme(const OrientedMatroid& om, Mask elements, int element);

// free = convex and every element extreme
bool is_free(const OrientedMatroid& om, Mask elements);

// Elements e with every tope of the given subset positive on e.
Mask gamma(const OrientedMatroid& om, Mask tope_set);

struct ConvexityReport {
    int t = 0;
    std::vector<Mask> convex; // ascending by (cardinality, value), empty set included
    std::vector<Mask> free;   // likewise
};

// Full enumeration over element subsets; refuses t > 22.
ConvexityReport convexity_report(const OrientedMatroid& om);

enum class LayerMethod { Direct, FreeSets };

// Number of j-element tope subsets contained in at least one positive
// halfspace. Direct runs inclusion-exclusion over all nonempty element sets;
// FreeSets evaluates the same sum collapsed onto free sets, using that the
// signed count of element sets with a given closure vanishes unless the
// closure is free. Their agreement is enforced by tests.
std::int64_t ideal_layer_count(const OrientedMatroid& om, int j, LayerMethod method);

} // namespace topecom

#endif
