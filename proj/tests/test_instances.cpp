#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "topecom/binomial.hpp"
#include "topecom/instances.hpp"

using namespace topecom;

namespace {

// open cell count of a central arrangement of t generic normals in dimension d
int generic_cells(int t, int d) {
    std::int64_t s = 0;
    for (int i = 0; i < d; ++i) s += binom(t - 1, i);
    return static_cast<int>(2 * s);
}

} // namespace

TEST_CASE("strict feasibility of small systems") {
    CHECK(strictly_feasible_i64({{1}}));
    CHECK(!strictly_feasible_i64({{1}, {-1}}));
    CHECK(strictly_feasible_i64({{1, 0}, {0, 1}}));
    CHECK(!strictly_feasible_i64({{1, 0}, {0, 1}, {-1, -1}}));
    CHECK(strictly_feasible_i64({{1, 1}, {1, -1}}));
    CHECK(strictly_feasible_i64({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}));
    CHECK(!strictly_feasible_i64({{1, 2, 3}, {-1, -2, -3}}));
    // scaling a row never changes the answer
    CHECK(strictly_feasible_i64({{7, 0}, {0, 3}, {-2, 5}}) ==
          strictly_feasible_i64({{1, 0}, {0, 1}, {-2, 5}}));
    using Big = boost::multiprecision::cpp_int;
    CHECK(strictly_feasible({{Big(1), Big(0)}, {Big(0), Big(1)}}));
    CHECK(!strictly_feasible({{Big(1), Big(1)}, {Big(-1), Big(-1)}}));
    CHECK_THROWS_AS(strictly_feasible_i64({{1, 0, 0, 0, 0, 1}}), DimensionTooLarge);
}

TEST_CASE("realized arrangements have the generic cell counts") {
    auto plane4 = realize({{1, 0}, {0, 1}, {1, 1}, {1, -1}});
    CHECK(plane4.ground_size() == 4);
    CHECK(plane4.num_topes() == generic_cells(4, 2));

    auto space4 = realize({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
    CHECK(space4.num_topes() == generic_cells(4, 3));

    // central arrangements are symmetric even before any validation
    for (const auto& om : {plane4, space4}) {
        for (int i = 0; i < om.num_topes(); ++i)
            CHECK(om.find_tope(om.tope(i).negated()).has_value());
        // these normals share an open halfspace, so the all-plus cell exists
        bool has_all_plus = om.find_tope(
            SignVector(om.ground_size(), full_mask(om.ground_size()))).has_value();
        CHECK(has_all_plus);
        CHECK(!validate(om).ok());
    }
}

TEST_CASE("built-in instances validate") {
    auto tri = triangle();
    CHECK(tri.ground_size() == 3);
    CHECK(tri.num_topes() == 6);
    CHECK(validate(tri).ok());

    auto ref = reference28();
    CHECK(ref.ground_size() == 6);
    CHECK(ref.num_topes() == 28);
    CHECK(validate(ref).ok());
    for (int e = 1; e <= 6; ++e)
        CHECK(popcount(ref.positive_tope_mask(e)) == 14);
}

TEST_CASE("random instances are valid, deterministic, and generically sized") {
    const std::tuple<int, int, int> cases[] = {
        {3, 2, 1}, {4, 2, 2}, {5, 2, 3}, {4, 3, 4}, {5, 3, 5}, {6, 2, 6}};
    for (auto [t, d, seed] : cases) {
        auto om = random_realizable(t, d, static_cast<std::uint64_t>(seed));
        CHECK(om.ground_size() == t);
        CHECK(om.num_topes() == generic_cells(t, d));
        CHECK(validate(om).ok());
        auto again = random_realizable(t, d, static_cast<std::uint64_t>(seed));
        CHECK(serialize(om) == serialize(again));
    }
}

TEST_CASE("generation rejects impossible or oversized requests") {
    // three generic vectors in three dimensions give every octant, and no
    // single reorientation removes the all-plus cell
    CHECK_THROWS_AS(random_realizable(3, 3, 1), RetryBudgetExceeded);
    CHECK_THROWS_AS(random_realizable(2, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_realizable(13, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_realizable(5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_realizable(6, 5, 1), DimensionTooLarge);
}
