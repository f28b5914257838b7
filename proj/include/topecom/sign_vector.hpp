#ifndef TOPECOM_SIGN_VECTOR_HPP
#define TOPECOM_SIGN_VECTOR_HPP

#include <string>

#include "topecom/bits.hpp"
#include "topecom/errors.hpp"

namespace topecom {

// Full-support sign vector over the ground set {1..t}. Sign of element e is
// kept in bit e-1 of `positives` (set bit = '+'). t is capped at 64, which is
// far beyond any ground set this library is used on.
class SignVector {
public:
    SignVector(int t, Mask positives) : t_(t), positives_(positives) {
        if (t < 1 || t > 64) throw Error("ground set size out of range: " + std::to_string(t));
        if (positives & ~full_mask(t)) throw Error("positive support exceeds ground set");
    }

    static SignVector parse(const std::string& s) {
        if (s.empty()) throw Error("empty sign vector");
        Mask pos = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '+') pos |= bit(static_cast<int>(i));
            else if (s[i] != '-') throw Error("bad sign character '" + std::string(1, s[i]) + "'");
        }
        return SignVector(static_cast<int>(s.size()), pos);
    }

    int ground_size() const { return t_; }
    Mask positives() const { return positives_; }

    // element is 1-based
    bool is_positive(int element) const { return positives_ & bit(element - 1); }
    int sign(int element) const { return is_positive(element) ? +1 : -1; }

    SignVector negated() const { return SignVector(t_, ~positives_ & full_mask(t_)); }

    // flip the signs of all elements in `elements` (bit e-1 = element e)
    SignVector reoriented(Mask elements) const {
        return SignVector(t_, positives_ ^ (elements & full_mask(t_)));
    }

    std::string str() const {
        std::string s(t_, '-');
        for (int e = 1; e <= t_; ++e)
            if (is_positive(e)) s[e - 1] = '+';
        return s;
    }

    bool operator==(const SignVector&) const = default;

private:
    int t_;
    Mask positives_;
};

} // namespace topecom

#endif
