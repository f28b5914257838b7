#ifndef TOPECOM_BINOMIAL_HPP
#define TOPECOM_BINOMIAL_HPP

#include <array>
#include <cstdint>

namespace topecom {

// Pascal's triangle up to n = 66; C(66,33) still fits in a signed 64-bit word,
// which covers every universe this library accepts (at most 64 points).
class BinomTable {
public:
    static constexpr int kMaxN = 66;

    static const BinomTable& instance() {
        static const BinomTable table;
        return table;
    }

    // Out-of-range arguments give 0, matching the usual convention in the
    // alternating sums evaluated here.
    std::int64_t operator()(int n, int k) const {
        if (n < 0 || k < 0 || k > n) return 0;
        return c_[n][k];
    }

private:
    BinomTable() {
        for (int n = 0; n <= kMaxN; ++n) {
            c_[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                c_[n][k] = c_[n - 1][k - 1] + (k <= n - 1 ? c_[n - 1][k] : 0);
        }
    }

    std::array<std::array<std::int64_t, kMaxN + 1>, kMaxN + 1> c_{};
};

inline std::int64_t binom(int n, int k) { return BinomTable::instance()(n, k); }

} // namespace topecom

#endif
