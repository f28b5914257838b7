#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "topecom/binomial.hpp"
#include "topecom/cross_blocking.hpp"

using namespace topecom;

namespace {

void check_both_against_brute(const CrossInstance& inst) {
    const Count want = brute_blockers_cross(inst);
    INFO("m=" << inst.m << " k=" << inst.k << " r=" << inst.r.str());
    CHECK(count_blockers_cross(inst, CrossMethod::DoubleIE) == want);
    CHECK(count_blockers_cross(inst, CrossMethod::DoubleMobius) == want);
}

} // namespace

TEST_CASE("opposite-pair detection") {
    // m = 3: bits 0..2 are +1,+2,+3 and bits 3..5 are -1,-2,-3
    CHECK(free_of_opposite_pairs(0b000011, 3));
    CHECK(free_of_opposite_pairs(0b110001, 3));
    CHECK(!free_of_opposite_pairs(0b001001, 3));
    CHECK(!free_of_opposite_pairs(0b111111, 3));
    CHECK(free_of_opposite_pairs(0, 3));
}

TEST_CASE("single-axis antichain in the square") {
    // the blocking singleton is the axis itself
    auto one = CrossInstance::make(2, {Mask{0b0001}}, Ratio(1, 2), 1);
    CHECK(brute_blockers_cross(one) == 1);
    check_both_against_brute(one);
    // opposite-free pairs containing +1
    auto pairs = CrossInstance::make(2, {Mask{0b0001}}, Ratio(1, 3), 2);
    CHECK(brute_blockers_cross(pairs) == 2); // {+1,+2} and {+1,-2}
    check_both_against_brute(pairs);
}

TEST_CASE("opposing singletons cannot be blocked together") {
    auto inst = CrossInstance::make(2, {Mask{0b0001}, Mask{0b0100}}, Ratio(1, 3), 2);
    CHECK(brute_blockers_cross(inst) == 0);
    check_both_against_brute(inst);
}

TEST_CASE("mixed-sign antichain in the octahedron") {
    // members {+1,-2} and {+2,+3} force an opposite pair: nothing blocks
    auto mixed = CrossInstance::make(3, {Mask{0b010001}, Mask{0b000110}}, Ratio(1, 2), 3);
    CHECK(brute_blockers_cross(mixed) == 0);
    check_both_against_brute(mixed);
    // members {+1,+2} and {+2,+3} pin the positive triple
    auto chain = CrossInstance::make(3, {Mask{0b000011}, Mask{0b000110}}, Ratio(1, 2), 3);
    CHECK(brute_blockers_cross(chain) == 1);
    check_both_against_brute(chain);
}

TEST_CASE("layer sizes follow the signed-axis count") {
    for (int m = 2; m <= 6; ++m)
        for (int j = 0; j <= m; ++j)
            CHECK(cross_layer_size(m, j) == (std::int64_t{1} << j) * binom(m, j));
}

TEST_CASE("random antichains agree with brute force") {
    const Ratio ratios[] = {Ratio(0, 1), Ratio(1, 3), Ratio(1, 2), Ratio(2, 3)};
    for (int m = 3; m <= 5; ++m) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            for (int size = 1; size < m; ++size) {
                auto antichain = random_cross_antichain(m, 3, size, seed * 131 + m);
                for (const Ratio& r : ratios) {
                    for (int k = 1; k <= m; ++k) {
                        auto inst = CrossInstance::make(m, antichain, r, k);
                        if (inst.nu() > size) {
                            CHECK_THROWS_AS(
                                count_blockers_cross(inst, CrossMethod::DoubleIE),
                                ConstraintViolation);
                            CHECK_THROWS_AS(
                                count_blockers_cross(inst, CrossMethod::DoubleMobius),
                                ConstraintViolation);
                            continue;
                        }
                        check_both_against_brute(inst);
                    }
                }
            }
        }
    }
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(CrossInstance::make(1, {Mask{1}}, Ratio(1, 2), 1), Error);
    CHECK_THROWS_AS(CrossInstance::make(3, {Mask{0b001001}}, Ratio(1, 2), 2), Error);
    CHECK_THROWS_AS(CrossInstance::make(3, {Mask{0}}, Ratio(1, 2), 2), Error);
    CHECK_THROWS_AS(CrossInstance::make(3, {Mask{0b011}, Mask{0b001}}, Ratio(1, 2), 2), Error);
    CHECK_THROWS_AS(CrossInstance::make(3, {Mask{0b011}}, Ratio(1, 1), 2), Error);
    CHECK_THROWS_AS(CrossInstance::make(3, {Mask{0b011}}, Ratio(1, 2), 4), Error);
}

TEST_CASE("seeded cross antichains are deterministic and opposite-free") {
    auto a = random_cross_antichain(5, 4, 2, 99);
    auto b = random_cross_antichain(5, 4, 2, 99);
    CHECK(a == b);
    CHECK(!a.empty());
    for (Mask m : a) {
        CHECK(popcount(m) == 2);
        CHECK(free_of_opposite_pairs(m, 5));
    }
}
