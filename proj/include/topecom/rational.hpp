#ifndef TOPECOM_RATIONAL_HPP
#define TOPECOM_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "topecom/errors.hpp"

namespace topecom {

// Non-negative fraction used for majority thresholds. Comparisons against
// counts are done in integers; no floating point is involved anywhere.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Ratio() = default;
    Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den <= 0 || num < 0)
            throw Error("ratio must be non-negative with positive denominator");
        std::int64_t g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    // floor(r * k)
    std::int64_t floor_times(std::int64_t k) const { return num * k / den; }

    // strict test  count > r * k
    bool strictly_exceeded_by(std::int64_t count, std::int64_t k) const {
        return den * count > num * k;
    }

    bool operator==(const Ratio&) const = default;

    std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Parses "P/Q" or a bare non-negative integer "P".
inline Ratio parse_ratio(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Ratio(std::stoll(s), 1);
        return Ratio(std::stoll(s.substr(0, slash)),
                     std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw Error("cannot parse ratio '" + s + "' (expected P/Q)");
    }
}

} // namespace topecom

#endif
