#include "topecom/instances.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "topecom/binomial.hpp"
#include "topecom/bits.hpp"
#include "topecom/errors.hpp"
#include "topecom/parallel.hpp"

namespace topecom {

namespace {

using Int = boost::multiprecision::cpp_int;
using Row = std::vector<Int>;

constexpr std::size_t kMaxRows = 1u << 20;

bool all_zero(const Row& r) {
    for (const Int& x : r)
        if (x != 0) return false;
    return true;
}

void normalize(Row& r) {
    Int g = 0;
    for (const Int& x : r) g = boost::multiprecision::gcd(g, abs(x));
    if (g > 1)
        for (Int& x : r) x /= g;
}

} // namespace

bool strictly_feasible(const std::vector<Row>& rows_in, int max_dim) {
    if (rows_in.empty()) return true;
    const std::size_t d = rows_in[0].size();
    for (const Row& r : rows_in)
        if (r.size() != d) throw Error("inconsistent row lengths");
    if (static_cast<int>(d) > max_dim)
        throw DimensionTooLarge("feasibility checks are limited to dimension " +
                                std::to_string(max_dim));

    std::vector<Row> rows;
    {
        std::set<Row> seen;
        for (Row r : rows_in) {
            if (all_zero(r)) return false;
            normalize(r);
            if (seen.insert(r).second) rows.push_back(std::move(r));
        }
    }

    // eliminate the last variable each round; a produced all-zero row (or an
    // empty combination) encodes the contradiction 0 > 0
    for (std::size_t j = d; j-- > 0;) {
        std::vector<Row> next;
        std::set<Row> seen;
        // (|pivot coefficient|, row without the pivot column)
        std::vector<std::pair<Int, Row>> pos, neg;
        auto push = [&](Row r) {
            if (all_zero(r)) return false;
            normalize(r);
            if (seen.insert(r).second) next.push_back(std::move(r));
            return true;
        };
        for (const Row& r : rows) {
            Row head(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(j));
            if (r[j] > 0)
                pos.emplace_back(r[j], std::move(head));
            else if (r[j] < 0)
                neg.emplace_back(-r[j], std::move(head));
            else if (!push(std::move(head)))
                return false;
        }
        for (const auto& [cp, ph] : pos)
            for (const auto& [cn, nh] : neg) {
                Row comb(j);
                for (std::size_t i = 0; i < j; ++i)
                    comb[i] = cn * ph[i] + cp * nh[i];
                if (!push(std::move(comb))) return false;
                if (next.size() > kMaxRows)
                    throw CapExceeded("feasibility system exceeded the row cap");
            }
        rows = std::move(next);
    }
    return true;
}

bool strictly_feasible_i64(const std::vector<std::vector<std::int64_t>>& rows,
                           int max_dim) {
    std::vector<Row> conv;
    conv.reserve(rows.size());
    for (const auto& r : rows) conv.emplace_back(r.begin(), r.end());
    return strictly_feasible(conv, max_dim);
}

namespace {

// determinant by cofactor expansion, fine for d <= 4
std::int64_t det(const std::vector<std::vector<std::int64_t>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    std::int64_t s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<std::int64_t>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            sub.push_back(std::move(row));
        }
        const std::int64_t term = m[0][c] * det(sub);
        s += (c % 2 == 0) ? term : -term;
    }
    return s;
}

bool generic(const std::vector<std::vector<std::int64_t>>& vectors, int d) {
    const int t = static_cast<int>(vectors.size());
    std::vector<int> idx(static_cast<std::size_t>(d));
    bool ok = true;
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (!ok) return;
        if (pos == d) {
            std::vector<std::vector<std::int64_t>> m;
            for (int i = 0; i < d; ++i)
                m.push_back(vectors[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
            if (det(m) == 0) ok = false;
            return;
        }
        for (int i = start; i < t; ++i) {
            idx[static_cast<std::size_t>(pos)] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return ok;
}

} // namespace

OrientedMatroid realize(const std::vector<std::vector<std::int64_t>>& vectors,
                        int threads) {
    const int t = static_cast<int>(vectors.size());
    if (t < 1 || t > 24) throw Error("vector count out of range");
    const std::size_t d = vectors[0].size();
    for (const auto& v : vectors)
        if (v.size() != d) throw Error("inconsistent vector dimensions");

    // fix sign + on element 1, close under negation afterwards
    const std::int64_t half = std::int64_t{1} << (t - 1);
    std::vector<std::vector<SignVector>> found(
        static_cast<std::size_t>(resolve_threads(threads)));
    parallel_chunks(0, half, threads, [&](std::int64_t lo, std::int64_t hi, int chunk) {
        auto& out = found[static_cast<std::size_t>(chunk)];
        for (std::int64_t s = lo; s < hi; ++s) {
            Mask positives = bit(0);
            for (int e = 2; e <= t; ++e)
                if (!((s >> (e - 2)) & 1)) positives |= bit(e - 1);
            std::vector<std::vector<std::int64_t>> rows;
            rows.reserve(static_cast<std::size_t>(t));
            for (int i = 0; i < t; ++i) {
                std::vector<std::int64_t> row = vectors[static_cast<std::size_t>(i)];
                if (!contains(positives, bit(i)))
                    for (auto& x : row) x = -x;
                rows.push_back(std::move(row));
            }
            if (strictly_feasible_i64(rows, static_cast<int>(d)))
                out.emplace_back(t, positives);
        }
    });
    std::vector<SignVector> topes;
    for (const auto& chunk : found)
        for (const SignVector& sv : chunk) {
            topes.push_back(sv);
            topes.push_back(sv.negated());
        }
    return OrientedMatroid(t, std::move(topes));
}

OrientedMatroid triangle() {
    return realize({{1, 0}, {0, 1}, {-1, -1}});
}

OrientedMatroid reference28() {
    static const char* text =
        "t 6\n"
        "symmetry half\n"
        "--++++\n"
        "--+-++\n"
        "+-+-++\n"
        "+-+-+-\n"
        "--+-+-\n"
        "--+++-\n"
        "--++-+\n"
        "-+++-+\n"
        "-++++-\n"
        "-++-+-\n"
        "+++-+-\n"
        "+++---\n"
        "-++---\n"
        "-+++--\n";
    return parse_topes(text);
}

OrientedMatroid random_realizable(int t, int d, std::uint64_t seed, int threads) {
    if (t < 3) throw std::invalid_argument("need at least 3 elements");
    if (t > 12) throw std::invalid_argument("generator element cap is 12");
    if (d < 2) throw std::invalid_argument("dimension must be at least 2");
    if (d > 4) throw DimensionTooLarge("generator dimension cap is 4");

    std::mt19937_64 rng(seed);
    std::int64_t expected = 0;
    for (int i = 0; i < d; ++i) expected += binom(t - 1, i);
    expected *= 2;

    constexpr int kAttempts = 500;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::vector<std::vector<std::int64_t>> vectors(
            static_cast<std::size_t>(t), std::vector<std::int64_t>(static_cast<std::size_t>(d)));
        for (auto& v : vectors)
            for (auto& x : v)
                x = static_cast<std::int64_t>(rng() % 1999) - 999;
        if (!generic(vectors, d)) continue;

        OrientedMatroid om = realize(vectors, threads);
        if (om.num_topes() != expected) continue;

        const SignVector all_plus(t, full_mask(t));
        if (om.find_tope(all_plus)) {
            int flip = 0;
            for (int e = 1; e <= t; ++e) {
                const SignVector single_minus(t, full_mask(t) & ~bit(e - 1));
                if (!om.find_tope(single_minus)) {
                    flip = e;
                    break;
                }
            }
            if (flip == 0) continue; // no single reorientation removes all-plus
            om = reorient(om, bit(flip - 1));
        }
        if (!validate(om).ok()) continue;
        return om;
    }
    throw RetryBudgetExceeded("no acceptable draw within " +
                              std::to_string(kAttempts) + " attempts");
}

} // namespace topecom
