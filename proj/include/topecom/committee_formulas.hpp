#ifndef TOPECOM_COMMITTEE_FORMULAS_HPP
#define TOPECOM_COMMITTEE_FORMULAS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topecom/committee_oracle.hpp"
#include "topecom/count.hpp"
#include "topecom/oriented_matroid.hpp"

namespace topecom {

// Closed-form counting of k-committees, by independent mechanisms that are
// cross-checked against the enumeration oracle. All of them count the
// ell-subsets of topes meeting every positive halfspace in more than half of
// their elements, with ell equal to k or to N-k; both give kappa_k.
enum class CommitteeMethod {
    HalfspaceIE,       // alternating sum over unions of halfspace layer subsets
    Vandermonde,       // complement-side alternating sum with convolution weights
    MobiusUnion,       // Mobius function of the union semilattice of layer subsets
    MobiusVandermonde, // Mobius form of the convolution-weight sum
    DoubleMobius,      // outer Mobius over halfspace subfamilies, inner over unions
    ConvexEuler,       // signed covers weighted by Euler characteristics of nerves
    UniqueFacet,       // ConvexEuler specialised to singleton support images
};

enum class FreeCommitteeMethod {
    DoubleMobius,
    ConvexEuler,
    UniqueFacet,
};

// Which of the two mirror-equivalent subset sizes a formula should count.
struct EllChoice {
    enum class Kind { Small, Large, Explicit };
    Kind kind = Kind::Small;
    int value = 0; // used by Explicit; must equal k or N-k

    static EllChoice small() { return {Kind::Small, 0}; }
    static EllChoice large() { return {Kind::Large, 0}; }
    static EllChoice exact(int ell) { return {Kind::Explicit, ell}; }
};

// Work limits. The grouped sums enumerate tope subsets of size up to
// min(ell, N-ell); past max_union_size that is no longer tractable and the
// methods refuse with CapExceeded rather than degrade.
struct FormulaBudget {
    int max_union_size = 12;
    std::int64_t max_union_work = std::int64_t{1} << 33; // sum of C(N,u)*2^u
    std::int64_t max_lattice = std::int64_t{1} << 22;    // union semilattice elements
    std::int64_t max_generators = std::int64_t{1} << 21; // layer subsets per family
    int max_cover_family = 22; // maximal support images per Euler evaluation
};

// Resolves the subset size a method will count: explicit choices are
// validated, Small/Large pick min/max of {k, N-k}, and absence picks the
// side each method is cheapest on (the convolution-weight methods enumerate
// the complement side, everything else the direct side).
int resolve_ell(const OrientedMatroid& om, int k, CommitteeMethod method,
                std::optional<EllChoice> ell);

// Number of k-committees, computed by the requested closed formula.
// Requires a valid simple non-acyclic tope set and 3 <= k <= N-3; throws
// OutOfRangeK otherwise, HypothesisFailed when UniqueFacet's singleton-image
// hypothesis does not hold, and CapExceeded beyond the budget envelope.
Count count_committees(const OrientedMatroid& om, int k, CommitteeMethod method,
                       std::optional<EllChoice> ell = std::nullopt,
                       const FormulaBudget& budget = {}, int threads = 1);

// Number of opposite-free k-committees, for 3 <= k <= N/2. Weights switch to
// 2^(k-u) * C(N/2-u, k-u): unions of opposite-free sets extend to exactly
// those k-sets picking at most one tope from each opposite pair.
Count count_free_committees(const OrientedMatroid& om, int k, FreeCommitteeMethod method,
                            const FormulaBudget& budget = {}, int threads = 1);

// Literal evaluation of the ConvexEuler sum: enumerates generator families
// outright instead of grouping by union, so it stays honest at tiny sizes
// and serves as a second derivation to test the grouped pipeline against.
// The per-family coefficient is taken either as the reduced Euler
// characteristic of the cover nerve complex or as the Mobius number of the
// union semilattice of the support images; the two must agree.
enum class ChiRoute { EulerComplex, MobiusNumber };
Count convex_euler_reference(const OrientedMatroid& om, int k,
                             std::optional<EllChoice> ell = std::nullopt,
                             ChiRoute route = ChiRoute::MobiusNumber,
                             std::int64_t max_families = std::int64_t{1} << 22);

// One (k, method) evaluation inside a cross-check run.
struct CrosscheckCell {
    int k = 0;
    std::string method;
    bool ok = false;   // a value was produced
    Count value = 0;   // meaningful when ok
    std::string error; // reason when not ok
    double elapsed_ms = 0.0;
    std::optional<bool> agrees; // against the oracle value for this k
};

struct CrosscheckReport {
    int t = 0;
    int num_topes = 0;
    std::vector<std::int64_t> oracle; // kappa_k for k in [k_lo, k_hi]
    int k_lo = 0, k_hi = 0;
    std::vector<CrosscheckCell> cells;
    bool all_agree = true; // no produced value disagreed with the oracle
};

// Runs the oracle once over the range, then every requested method on every
// k. Method names: brute, hs-ie, vandermonde, mobius-union,
// mobius-vandermonde, double-mobius, convex-euler, unique-facet, and free-*
// variants of brute, double-mobius, convex-euler, unique-facet. A cell that
// throws is recorded with its message and never aborts the matrix.
CrosscheckReport crosscheck(const OrientedMatroid& om, KRange range,
                            const std::vector<std::string>& methods,
                            std::optional<EllChoice> ell = std::nullopt,
                            const FormulaBudget& budget = {}, int threads = 1);

// Committee method names in display order: "brute" plus the seven formulas.
const std::vector<std::string>& all_method_names();
// Opposite-free method names: "free-brute" plus the three free formulas.
const std::vector<std::string>& all_free_method_names();

std::string method_name(CommitteeMethod method);
std::string method_name(FreeCommitteeMethod method);
std::optional<CommitteeMethod> parse_method(const std::string& name);
std::optional<FreeCommitteeMethod> parse_free_method(const std::string& name);

} // namespace topecom

#endif
