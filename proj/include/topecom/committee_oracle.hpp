#ifndef TOPECOM_COMMITTEE_ORACLE_HPP
#define TOPECOM_COMMITTEE_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topecom/oriented_matroid.hpp"

namespace topecom {

// A committee is a tope subset lying strictly-majority inside every positive
// halfspace: |K cap T_e^+| > |K|/2 for all elements e.
bool is_committee(const OrientedMatroid& om, Mask tope_set);

// No two members of the subset are opposite topes.
bool is_free_of_opposites(const OrientedMatroid& om, Mask tope_set);

// A committee none of whose proper subsets is a committee. Since a one- or
// two-element committee would force an all-plus tope (excluded by
// non-acyclicity), only proper subsets of size >= 3 need checking; the
// majority thresholds for a subset of size i reduce to the committee property
// of that subset, see the notes in the implementation. Throws NotACommittee
// when the input itself is not a committee.
bool is_minimal_committee(const OrientedMatroid& om, Mask tope_set);

struct KRange {
    int lo = 0, hi = 0;
};

struct KappaVariants {
    bool free = false;
    bool minimal = false;
    bool maxplus = false;
    bool nstar = false;
};

struct SweepBudget {
    // upper bound on enumerated subsets (full sweep) or combinations (per-k)
    std::int64_t max_subsets = std::int64_t{1} << 30;
    // extra submask work allowed for minimality classification per-k
    std::int64_t max_minimal_nodes = std::int64_t{1} << 33;
};

struct KappaReport {
    int t = 0;
    int num_topes = 0;
    int k_lo = 1, k_hi = 0;
    std::string method;
    // indexed by k (size num_topes+1); entries outside [k_lo, k_hi] are 0
    std::vector<std::int64_t> kappa;
    std::optional<std::vector<std::int64_t>> kappa_free;
    std::optional<std::vector<std::int64_t>> kappa_min;
    std::optional<std::vector<std::int64_t>> kappa_maxplus;
    std::optional<std::vector<std::int64_t>> n_star;
    double elapsed_ms = 0;

    std::int64_t total(const std::vector<std::int64_t>& v) const;
};

// Exhaustive committee census. Uses one pass over all subsets when the whole
// range is wanted (with word-parallel subset bookkeeping for minimality) and
// pruned per-cardinality enumeration when that is cheaper for the requested
// range. Counts are independent of the strategy and of the thread count.
KappaReport kappa_sweep(const OrientedMatroid& om,
                        std::optional<KRange> range = std::nullopt,
                        KappaVariants variants = {},
                        const SweepBudget& budget = {},
                        int threads = 1);

std::string to_json(const KappaReport& rep);
std::string to_tsv(const KappaReport& rep);

} // namespace topecom

#endif
