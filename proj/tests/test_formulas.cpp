#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "topecom/committee_formulas.hpp"
#include "topecom/instances.hpp"

using namespace topecom;

namespace {

const std::vector<CommitteeMethod> kEveryMethod = {
    CommitteeMethod::HalfspaceIE,    CommitteeMethod::Vandermonde,
    CommitteeMethod::MobiusUnion,    CommitteeMethod::MobiusVandermonde,
    CommitteeMethod::DoubleMobius,   CommitteeMethod::ConvexEuler,
    CommitteeMethod::UniqueFacet,
};

} // namespace

TEST_CASE("all formulas count the lone three-line committee") {
    auto om = triangle();
    for (auto method : kEveryMethod) {
        INFO(method_name(method));
        CHECK(count_committees(om, 3, method) == 1);
    }
    for (auto method : {FreeCommitteeMethod::DoubleMobius, FreeCommitteeMethod::ConvexEuler,
                        FreeCommitteeMethod::UniqueFacet}) {
        INFO(method_name(method));
        CHECK(count_free_committees(om, 3, method) == 1);
    }
}

TEST_CASE("every method agrees with the oracle on random instances") {
    const std::tuple<int, int, int> cases[] = {{4, 2, 71}, {5, 2, 72}, {4, 3, 73}};
    for (auto [t, d, seed] : cases) {
        auto om = random_realizable(t, d, static_cast<std::uint64_t>(seed));
        const int n = om.num_topes();
        auto rep = crosscheck(om, KRange{3, n - 3}, all_method_names(), std::nullopt, {}, 4);
        INFO("t=" << t << " d=" << d << " seed=" << seed);
        CHECK(rep.all_agree);
        for (const auto& cell : rep.cells) {
            INFO(cell.method << " k=" << cell.k << " " << cell.error);
            // unique-facet may refuse its hypothesis; nothing else may fail
            if (!cell.ok) CHECK(cell.method == "unique-facet");
        }
    }
}

TEST_CASE("opposite-free formulas agree with the oracle census") {
    const std::tuple<int, int, int> cases[] = {{4, 2, 81}, {5, 2, 82}, {4, 3, 83}};
    for (auto [t, d, seed] : cases) {
        auto om = random_realizable(t, d, static_cast<std::uint64_t>(seed));
        const int n = om.num_topes();
        auto rep = crosscheck(om, KRange{3, n / 2}, all_free_method_names(), std::nullopt, {}, 4);
        INFO("t=" << t << " d=" << d << " seed=" << seed);
        CHECK(rep.all_agree);
        for (const auto& cell : rep.cells) {
            INFO(cell.method << " k=" << cell.k << " " << cell.error);
            if (!cell.ok) CHECK(cell.method == "free-unique-facet");
        }
    }
}

TEST_CASE("the counted subset side never changes the answer") {
    auto om = random_realizable(4, 2, 91); // 8 topes
    const int n = om.num_topes();
    for (int k = 3; k <= n - 3; ++k) {
        for (auto method : kEveryMethod) {
            if (method == CommitteeMethod::UniqueFacet) continue; // hypothesis-gated
            INFO(method_name(method) << " k=" << k);
            auto small = count_committees(om, k, method, EllChoice::small());
            auto large = count_committees(om, k, method, EllChoice::large());
            auto after = count_committees(om, k, method, EllChoice::exact(n - k));
            auto direct = count_committees(om, k, method, EllChoice::exact(k));
            auto implicit = count_committees(om, k, method);
            CHECK(small == large);
            CHECK(small == after);
            CHECK(small == direct);
            CHECK(small == implicit);
        }
    }
}

TEST_CASE("explicit subset sizes are validated") {
    auto om = triangle();
    CHECK_THROWS_AS(count_committees(om, 3, CommitteeMethod::HalfspaceIE,
                                     EllChoice::exact(4)),
                    OutOfRangeK);
    CHECK(count_committees(om, 3, CommitteeMethod::HalfspaceIE, EllChoice::exact(3)) == 1);
    // N - k = 3 as well here, so both explicit values coincide
    CHECK(resolve_ell(om, 3, CommitteeMethod::Vandermonde, std::nullopt) == 3);
}

TEST_CASE("committee sizes outside the formula range are refused") {
    auto om = reference28();
    for (auto method : kEveryMethod) {
        CHECK_THROWS_AS(count_committees(om, 2, method), OutOfRangeK);
        CHECK_THROWS_AS(count_committees(om, 26, method), OutOfRangeK);
    }
    CHECK_THROWS_AS(count_free_committees(om, 2, FreeCommitteeMethod::DoubleMobius),
                    OutOfRangeK);
    CHECK_THROWS_AS(count_free_committees(om, 15, FreeCommitteeMethod::DoubleMobius),
                    OutOfRangeK);
    CHECK_THROWS_AS(convex_euler_reference(om, 1), OutOfRangeK);
}

TEST_CASE("budget envelope refusal names the way out") {
    auto om = reference28();
    FormulaBudget tight;
    tight.max_union_size = 5;
    try {
        count_committees(om, 14, CommitteeMethod::HalfspaceIE, EllChoice::small(), tight);
        FAIL("expected the budget refusal");
    } catch (const CapExceeded& e) {
        CHECK(std::string(e.what()).find("pick the other subset side") != std::string::npos);
    }
}

TEST_CASE("the singleton-image hypothesis is checked, not assumed") {
    CHECK_THROWS_AS(count_committees(reference28(), 5, CommitteeMethod::UniqueFacet),
                    HypothesisFailed);
    // on the three-line instance it holds and was counted above
}

TEST_CASE("grouped Euler evaluation equals the literal one on both coefficient routes") {
    auto tri = triangle();
    for (auto route : {ChiRoute::EulerComplex, ChiRoute::MobiusNumber})
        CHECK(convex_euler_reference(tri, 3, std::nullopt, route) == 1);

    auto om = random_realizable(4, 2, 95); // 8 topes
    const int n = om.num_topes();
    for (int k = 3; k <= n - 3; ++k) {
        auto grouped = count_committees(om, k, CommitteeMethod::ConvexEuler);
        for (auto route : {ChiRoute::EulerComplex, ChiRoute::MobiusNumber}) {
            INFO("k=" << k);
            CHECK(convex_euler_reference(om, k, std::nullopt, route) == grouped);
        }
    }
}

TEST_CASE("formulas refuse invalid tope sets") {
    // negation closure broken: not a valid instance
    OrientedMatroid bad(3, {SignVector::parse("++-"), SignVector::parse("+-+"),
                            SignVector::parse("-++"), SignVector::parse("--+")});
    CHECK_THROWS_AS(count_committees(bad, 3, CommitteeMethod::HalfspaceIE),
                    ValidationFailure);
}
