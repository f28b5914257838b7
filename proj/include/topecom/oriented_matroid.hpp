#ifndef TOPECOM_ORIENTED_MATROID_HPP
#define TOPECOM_ORIENTED_MATROID_HPP

#include <optional>
#include <string>
#include <vector>

#include "topecom/sign_vector.hpp"

namespace topecom {

// A simple oriented matroid given by its tope list. Tope order is preserved
// from the source and all indices reported anywhere are 0-based positions in
// that list. Construction does not validate; call validate() or parse with
// validation on.
class OrientedMatroid {
public:
    OrientedMatroid(int t, std::vector<SignVector> topes);

    int ground_size() const { return t_; }
    int num_topes() const { return static_cast<int>(topes_.size()); }
    const std::vector<SignVector>& topes() const { return topes_; }
    const SignVector& tope(int i) const { return topes_.at(i); }

    std::optional<int> find_tope(const SignVector& sv) const;

    // Index of -T for tope i; requires negation closure (validated instances).
    int negation_of(int i) const;

    // Tope-index mask of the positive (or negative) halfspace of an element.
    // Requires at most 64 topes; larger instances are outside the engine cap.
    Mask positive_tope_mask(int element) const;
    Mask negative_tope_mask(int element) const;
    Mask all_topes_mask() const;

private:
    int t_;
    std::vector<SignVector> topes_;
};

struct Violation {
    enum class Kind {
        EmptyTopeSet,
        DuplicateTope,
        SymmetryBroken,      // some tope's negation is missing
        ParallelElements,    // two identical sign columns
        AntiparallelElements,// two opposite sign columns
        Acyclic,             // the all-plus (or all-minus) tope is present
    };
    Kind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

// Checks negation closure, element simplicity (no equal or opposite columns)
// and non-acyclicity (no all-plus tope).
ValidationReport validate(const OrientedMatroid& om);

struct Halfspace {
    int element;              // 1-based
    int sign;                 // +1 or -1
    std::vector<int> members; // tope indices, ascending
};

Halfspace halfspace(const OrientedMatroid& om, int element, int sign);

// Flips the sign of every tope on each element of `elements` (bit e-1 = e).
OrientedMatroid reorient(const OrientedMatroid& om, Mask elements);

// Indices of topes whose positive support is inclusion-maximal in the tope set.
std::vector<int> max_positive_topes(const OrientedMatroid& om);

// Text format:
//   # comment lines and blank lines are ignored
//   t <int>
//   symmetry full|half        (optional, default full)
//   one tope per line over {+,-}
// In half mode the listed topes must be pairwise non-opposite; negations are
// appended after the listed block, in listed order.
OrientedMatroid parse_topes(const std::string& text, bool validate_result = true);
OrientedMatroid load_topes_file(const std::string& path, bool validate_result = true);

// Emits the full-symmetry form of the format above.
std::string serialize(const OrientedMatroid& om);

} // namespace topecom

#endif
