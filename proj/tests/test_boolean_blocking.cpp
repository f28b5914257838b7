#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "topecom/boolean_blocking.hpp"

using namespace topecom;

namespace {

using MethodFn = std::function<Count(const BlockingInstance&, const BlockingBudget&)>;

// the four two-sided methods gate on the rank window
std::vector<std::pair<std::string, MethodFn>> window_methods() {
    return {
        {"complement-ideal",
         [](const BlockingInstance& i, const BlockingBudget& b) {
             return count_blockers_ie(i, IeMethod::ComplementIdeal, b);
         }},
        {"ideal",
         [](const BlockingInstance& i, const BlockingBudget& b) {
             return count_blockers_ie(i, IeMethod::Ideal, b);
         }},
        {"vandermonde",
         [](const BlockingInstance& i, const BlockingBudget& b) {
             return count_blockers_ie(i, IeMethod::Vandermonde, b);
         }},
        {"complement-ideal-mobius",
         [](const BlockingInstance& i, const BlockingBudget& b) {
             return count_blockers_mobius(i, MobiusMethod::ComplementIdeal, b);
         }},
        {"ideal-mobius",
         [](const BlockingInstance& i, const BlockingBudget& b) {
             return count_blockers_mobius(i, MobiusMethod::Ideal, b);
         }},
        {"vandermonde-mobius",
         [](const BlockingInstance& i, const BlockingBudget& b) {
             return count_blockers_mobius(i, MobiusMethod::Vandermonde, b);
         }},
    };
}

// these need only the rank floor
std::vector<std::pair<std::string, MethodFn>> floor_methods() {
    return {
        {"double-ie",
         [](const BlockingInstance& i, const BlockingBudget& b) {
             return count_blockers_ie(i, IeMethod::DoubleIE, b);
         }},
        {"double-mobius",
         [](const BlockingInstance& i, const BlockingBudget& b) {
             return count_blockers_mobius(i, MobiusMethod::DoubleMobius, b);
         }},
        {"nerve",
         [](const BlockingInstance& i, const BlockingBudget& b) {
             return count_blockers_nerve(i, b);
         }},
    };
}

void check_all_against_brute(const BlockingInstance& inst) {
    const Count want = brute_blockers(inst);
    const auto st = check_constraints(inst);
    for (const auto& [name, fn] : floor_methods()) {
        INFO(name << " n=" << inst.n << " k=" << inst.k << " r=" << inst.r.str());
        if (st.rank_floor)
            CHECK(fn(inst, {}) == want);
        else
            CHECK_THROWS_AS(fn(inst, {}), ConstraintViolation);
    }
    for (const auto& [name, fn] : window_methods()) {
        INFO(name << " n=" << inst.n << " k=" << inst.k << " r=" << inst.r.str());
        if (st.rank_window)
            CHECK(fn(inst, {}) == want);
        else
            CHECK_THROWS_AS(fn(inst, {}), ConstraintViolation);
    }
}

} // namespace

TEST_CASE("single-pair instance: exactly the pair itself blocks") {
    auto inst = BlockingInstance::make(4, {Mask{0b0011}}, Ratio(1, 2), 2);
    CHECK(brute_blockers(inst) == 1);
    for (const auto& [name, fn] : window_methods()) {
        INFO(name);
        CHECK(fn(inst, {}) == 1);
    }
    for (const auto& [name, fn] : floor_methods()) {
        INFO(name);
        CHECK(fn(inst, {}) == 1);
    }
}

TEST_CASE("two disjoint pairs cannot both hold a majority of two points") {
    auto inst = BlockingInstance::make(4, {Mask{0b0011}, Mask{0b1100}}, Ratio(1, 2), 2);
    CHECK(brute_blockers(inst) == 0);
    check_all_against_brute(inst);
}

TEST_CASE("three pairwise-overlapping pairs pin the blocking triple") {
    auto inst = BlockingInstance::make(
        5, {Mask{0b00011}, Mask{0b00110}, Mask{0b00101}}, Ratio(1, 2), 3);
    CHECK(brute_blockers(inst) == 1);
    check_all_against_brute(inst);
}

TEST_CASE("zero threshold counts transversals") {
    auto inst = BlockingInstance::make(5, {Mask{0b00011}, Mask{0b11000}}, Ratio(0, 1), 2);
    CHECK(brute_blockers(inst) == 4);
    check_all_against_brute(inst);
    // the whole ground set blocks everything; only the floor-gated methods
    // admit k = n
    auto all = BlockingInstance::make(5, {Mask{0b00011}, Mask{0b11000}}, Ratio(0, 1), 5);
    CHECK(!check_constraints(all).rank_window);
    CHECK(check_constraints(all).rank_floor);
    CHECK(brute_blockers(all) == 1);
    check_all_against_brute(all);
}

TEST_CASE("constraint gates") {
    // threshold above the smallest member rank: nothing admissible
    auto low = BlockingInstance::make(6, {Mask{0b000001}, Mask{0b011110}}, Ratio(1, 2), 3);
    CHECK(!check_constraints(low).rank_floor);
    CHECK(!check_constraints(low).rank_window);
    check_all_against_brute(low);

    // floor holds but a big member breaks the window
    auto wide = BlockingInstance::make(6, {Mask{0b011111}, Mask{0b101111}}, Ratio(1, 2), 4);
    CHECK(check_constraints(wide).rank_floor);
    CHECK(!check_constraints(wide).rank_window);
    check_all_against_brute(wide);
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(BlockingInstance::make(2, {Mask{1}}, Ratio(1, 2), 1), Error);
    CHECK_THROWS_AS(BlockingInstance::make(4, {Mask{1}}, Ratio(1, 2), 0), Error);
    CHECK_THROWS_AS(BlockingInstance::make(4, {Mask{1}}, Ratio(3, 2), 2), Error);
    CHECK_THROWS_AS(BlockingInstance::make(4, {}, Ratio(1, 2), 2), Error);
    CHECK_THROWS_AS(BlockingInstance::make(4, {Mask{0}}, Ratio(1, 2), 2), Error);
    CHECK_THROWS_AS(BlockingInstance::make(4, {Mask{0b1111}}, Ratio(1, 2), 2), Error);
    CHECK_THROWS_AS(BlockingInstance::make(4, {Mask{0b0011}, Mask{0b0001}}, Ratio(1, 2), 2),
                    Error);
}

TEST_CASE("random instances agree with brute force everywhere admissible") {
    const Ratio ratios[] = {Ratio(0, 1), Ratio(1, 3), Ratio(1, 2), Ratio(2, 3)};
    for (int n = 5; n <= 8; ++n) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            auto antichain = random_antichain(n, 2 + static_cast<int>(seed % 3), 0, seed * 97 + n);
            for (const Ratio& r : ratios)
                for (int k = 1; k <= n; ++k)
                    check_all_against_brute(BlockingInstance::make(n, antichain, r, k));
        }
    }
}

TEST_CASE("layer size via inclusion-exclusion matches direct counting") {
    for (int n = 5; n <= 8; ++n)
        for (std::uint64_t seed = 11; seed <= 14; ++seed) {
            auto antichain = random_antichain(n, 3, 0, seed * 31 + n);
            for (int k = 1; k <= n; ++k) {
                auto inst = BlockingInstance::make(n, antichain, Ratio(1, 2), k);
                CHECK(ideal_layer_size_direct(inst) == ideal_layer_size_ie(inst));
            }
        }
}

TEST_CASE("union-size truncation above the vanishing threshold changes nothing") {
    auto antichain = random_antichain(8, 3, 3, 1234);
    for (int k = 2; k <= 6; ++k) {
        auto inst = BlockingInstance::make(8, antichain, Ratio(1, 2), k);
        auto st = check_constraints(inst);
        auto with_limit = [&](int limit) {
            BlockingBudget b;
            b.union_size_limit = limit;
            return b;
        };
        if (st.rank_floor) {
            for (int extra = 0; extra <= 2; ++extra) {
                auto b = with_limit(inst.k + extra);
                CHECK(count_blockers_ie(inst, IeMethod::DoubleIE, b) ==
                      count_blockers_ie(inst, IeMethod::DoubleIE, {}));
                CHECK(count_blockers_mobius(inst, MobiusMethod::DoubleMobius, b) ==
                      count_blockers_mobius(inst, MobiusMethod::DoubleMobius, {}));
                CHECK(count_blockers_nerve(inst, b) == count_blockers_nerve(inst, {}));
            }
        }
        if (st.rank_window) {
            for (int extra = 0; extra <= 2; ++extra) {
                CHECK(count_blockers_ie(inst, IeMethod::ComplementIdeal, with_limit(inst.k + extra)) ==
                      count_blockers_ie(inst, IeMethod::ComplementIdeal, {}));
                CHECK(count_blockers_mobius(inst, MobiusMethod::ComplementIdeal,
                                            with_limit(inst.k + extra)) ==
                      count_blockers_mobius(inst, MobiusMethod::ComplementIdeal, {}));
                CHECK(count_blockers_ie(inst, IeMethod::Ideal, with_limit(inst.n - inst.k + extra)) ==
                      count_blockers_ie(inst, IeMethod::Ideal, {}));
                CHECK(count_blockers_mobius(inst, MobiusMethod::Ideal,
                                            with_limit(inst.n - inst.k + extra)) ==
                      count_blockers_mobius(inst, MobiusMethod::Ideal, {}));
            }
            // the convolution weightings have no vanishing union size and must
            // ignore the limit outright
            CHECK(count_blockers_ie(inst, IeMethod::Vandermonde, with_limit(1)) ==
                  count_blockers_ie(inst, IeMethod::Vandermonde, {}));
            CHECK(count_blockers_mobius(inst, MobiusMethod::Vandermonde, with_limit(1)) ==
                  count_blockers_mobius(inst, MobiusMethod::Vandermonde, {}));
        }
    }
}

TEST_CASE("antichain generator is seeded and canonical") {
    auto a = random_antichain(8, 4, 0, 42);
    auto b = random_antichain(8, 4, 0, 42);
    CHECK(a == b);
    CHECK(!a.empty());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j) CHECK(!contains(a[j], a[i]));
    auto fixed = random_antichain(8, 5, 3, 7);
    for (Mask m : fixed) CHECK(popcount(m) == 3);
}

TEST_CASE("enumeration budget refusal") {
    auto inst = BlockingInstance::make(18, {Mask{0b111}}, Ratio(1, 2), 9);
    BlockingBudget tiny;
    tiny.max_enumeration = 100;
    CHECK_THROWS_AS(brute_blockers(inst, nullptr, tiny), CapExceeded);
}
