#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "topecom/convexity.hpp"
#include "topecom/instances.hpp"

using namespace topecom;

namespace {

std::vector<OrientedMatroid> law_instances() {
    std::vector<OrientedMatroid> out;
    out.push_back(triangle());
    out.push_back(random_realizable(4, 2, 101));
    out.push_back(random_realizable(5, 2, 202));
    out.push_back(random_realizable(4, 3, 303));
    return out;
}

} // namespace

TEST_CASE("conv is a closure operator") {
    for (const auto& om : law_instances()) {
        const int t = om.ground_size();
        for (Mask a = 0; a < bit(t); ++a) {
            Mask ca = conv(om, a);
            CHECK(contains(ca, a));          // extensive
            CHECK(conv(om, ca) == ca);       // idempotent
        }
        for (Mask a = 0; a < bit(t); ++a)
            for (Mask b = 0; b < bit(t); ++b)
                if (contains(b, a))
                    CHECK(contains(conv(om, b), conv(om, a))); // monotone
    }
}

TEST_CASE("the empty set is closed") {
    // no positive halfspace holds every tope, so nothing is in the closure
    for (const auto& om : law_instances())
        CHECK(conv(om, 0) == 0);
    CHECK(conv(reference28(), 0) == 0);
}

TEST_CASE("tope support intersects halfspaces") {
    for (const auto& om : law_instances()) {
        const int t = om.ground_size();
        CHECK(tope_support(om, 0) == om.all_topes_mask());
        for (int e = 1; e <= t; ++e)
            CHECK(tope_support(om, bit(e - 1)) == om.positive_tope_mask(e));
        for (Mask a = 0; a < bit(t); ++a)
            for (Mask b = 0; b < bit(t); ++b)
                CHECK(tope_support(om, a | b) ==
                      (tope_support(om, a) & tope_support(om, b)));
    }
}

TEST_CASE("every subset of the three-line instance is convex and free") {
    auto om = triangle();
    auto rep = convexity_report(om);
    CHECK(rep.t == 3);
    REQUIRE(rep.convex.size() == 8);
    REQUIRE(rep.free.size() == 8);
    int by_card[4] = {0, 0, 0, 0};
    for (Mask v : rep.free) ++by_card[popcount(v)];
    CHECK(by_card[0] == 1);
    CHECK(by_card[1] == 3);
    CHECK(by_card[2] == 3);
    CHECK(by_card[3] == 1);
}

TEST_CASE("report membership matches the predicates") {
    for (const auto& om : law_instances()) {
        const int t = om.ground_size();
        auto rep = convexity_report(om);
        std::vector<bool> in_convex(std::size_t{1} << t, false);
        std::vector<bool> in_free(std::size_t{1} << t, false);
        for (Mask v : rep.convex) in_convex[v] = true;
        for (Mask v : rep.free) in_free[v] = true;
        for (Mask a = 0; a < bit(t); ++a) {
            CHECK(in_convex[a] == is_convex(om, a));
            CHECK(in_free[a] == is_free(om, a));
            if (in_free[a]) CHECK(in_convex[a]);
        }
    }
}

TEST_CASE("free sets form a simplicial complex") {
    for (const auto& om : law_instances()) {
        const int t = om.ground_size();
        for (Mask a = 0; a < bit(t); ++a) {
            if (!is_free(om, a)) continue;
            for_each_submask(a, [&](Mask sub) { CHECK(is_free(om, sub)); });
        }
    }
}

TEST_CASE("gamma reads off the common positive elements") {
    auto om = triangle();
    auto plus_minus = om.find_tope(SignVector::parse("++-"));
    auto minus_plus = om.find_tope(SignVector::parse("-++"));
    REQUIRE(plus_minus.has_value());
    REQUIRE(minus_plus.has_value());
    CHECK(gamma(om, bit(*plus_minus)) == Mask{0b011});
    CHECK(gamma(om, bit(*plus_minus) | bit(*minus_plus)) == Mask{0b010});
    CHECK(gamma(om, om.all_topes_mask()) == 0);
    CHECK(gamma(om, 0) == full_mask(3));
}

TEST_CASE("layer counts of the three-line instance") {
    auto om = triangle();
    for (auto method : {LayerMethod::Direct, LayerMethod::FreeSets}) {
        CHECK(ideal_layer_count(om, 0, method) == 1);
        CHECK(ideal_layer_count(om, 1, method) == 6);
        CHECK(ideal_layer_count(om, 2, method) == 9);
        CHECK(ideal_layer_count(om, 3, method) == 3);
        CHECK(ideal_layer_count(om, 4, method) == 0);
    }
}

TEST_CASE("layer methods agree with each other and with direct counting") {
    for (const auto& om : law_instances()) {
        const int t = om.ground_size();
        const int n = om.num_topes();
        std::vector<Mask> pos;
        for (int e = 1; e <= t; ++e) pos.push_back(om.positive_tope_mask(e));
        for (int j = 0; j <= n + 1; ++j) {
            auto direct = ideal_layer_count(om, j, LayerMethod::Direct);
            auto via_free = ideal_layer_count(om, j, LayerMethod::FreeSets);
            CHECK(direct == via_free);
            std::int64_t brute = 0;
            for_each_k_subset(n, j, [&](Mask s) {
                for (Mask p : pos)
                    if (contains(p, s)) { ++brute; return; }
            });
            CHECK(direct == brute);
        }
    }
}

TEST_CASE("enumeration refuses oversized ground sets") {
    OrientedMatroid big(23, {SignVector(23, Mask{1}),
                             SignVector(23, full_mask(23) & ~Mask{1})});
    CHECK_THROWS_AS(convexity_report(big), CapExceeded);
    CHECK_THROWS_AS(ideal_layer_count(big, 1, LayerMethod::Direct), CapExceeded);
}
