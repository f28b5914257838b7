#ifndef TOPECOM_INSTANCES_HPP
#define TOPECOM_INSTANCES_HPP

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "topecom/oriented_matroid.hpp"

namespace topecom {

// Does some point satisfy every strict inequality row.x > 0? Decided by
// Fourier-Motzkin elimination in exact integer arithmetic (clear denominators
// before calling). Throws DimensionTooLarge past max_dim; CapExceeded if the
// intermediate systems blow up.
bool strictly_feasible(const std::vector<std::vector<boost::multiprecision::cpp_int>>& rows,
                       int max_dim = 4);
bool strictly_feasible_i64(const std::vector<std::vector<std::int64_t>>& rows,
                           int max_dim = 4);

// Tope set of a central hyperplane arrangement with the given integer
// normals: all sign vectors whose open cell is nonempty. Not validated; the
// result is acyclic when the normals share an open halfspace.
OrientedMatroid realize(const std::vector<std::vector<std::int64_t>>& vectors,
                        int threads = 1);

// Smallest simple non-acyclic instance: three generic lines through the
// origin in the plane, six sector topes.
OrientedMatroid triangle();

// Reference instance with t=6 and 28 topes, reconstructed from the embedded
// half listing (the positive halfspace of element 3) plus negation closure.
OrientedMatroid reference28();

// Random realizable instance: seeded integer normals, degenerate draws
// rejected (some d of the vectors dependent), cells enumerated exactly; if
// the all-plus tope shows up, one element is reoriented to remove it (draws
// where no single flip works are rejected too). Deterministic per seed.
// Throws std::invalid_argument for t < 3 or t > 12 or d < 2,
// DimensionTooLarge for d > 4, RetryBudgetExceeded when every draw in the
// budget was rejected.
OrientedMatroid random_realizable(int t, int d, std::uint64_t seed, int threads = 1);

} // namespace topecom

#endif
