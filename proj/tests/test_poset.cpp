#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "topecom/poset.hpp"

using namespace topecom;

namespace {

std::vector<Mask> random_family(std::mt19937_64& rng, int universe, int count) {
    std::vector<Mask> fam;
    for (int i = 0; i < count; ++i) {
        Mask m = rng() & full_mask(universe);
        if (m) fam.push_back(m);
    }
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    return fam;
}

// O(M^2) Mobius values by the textbook recurrence over explicit inclusion.
std::vector<std::int64_t> mobius_quadratic(const JoinSemilattice& L) {
    std::vector<std::int64_t> mu(L.size());
    for (std::size_t i = 0; i < L.size(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < i; ++j)
            if (contains(L.elements[i], L.elements[j]) && L.elements[j] != L.elements[i])
                acc += mu[j];
        mu[i] = (i == 0) ? 1 : -acc;
    }
    return mu;
}

} // namespace

TEST_CASE("min and max sets") {
    std::vector<Mask> fam = {0b011, 0b001, 0b110, 0b111, 0b001};
    auto mins = min_sets(fam);
    auto maxs = max_sets(fam);
    CHECK(mins == std::vector<Mask>{0b001, 0b110});
    CHECK(maxs == std::vector<Mask>{0b111});
}

TEST_CASE("blocker is an involution on minimal families") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto fam = random_family(rng, 8, 5);
        if (fam.empty()) continue;
        auto mins = min_sets(fam);
        auto twice = blocker(blocker(mins));
        std::sort(mins.begin(), mins.end());
        std::sort(twice.begin(), twice.end());
        CHECK(twice == mins);
    }
    CHECK_THROWS_AS(blocker({Mask{0}}), EmptyMember);
}

TEST_CASE("union semilattice closure and Mobius against the quadratic oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        auto gens = random_family(rng, 9, 5);
        if (gens.empty()) continue;
        auto L = union_semilattice(9, gens);
        // closure property: union of any two elements is in the lattice
        for (std::size_t a = 1; a < L.size(); ++a)
            for (std::size_t b = a; b < L.size(); ++b)
                CHECK(L.index_of(L.elements[a] | L.elements[b]) >= 0);
        auto fast = mobius_below(L, 2);
        auto slow = mobius_quadratic(L);
        CHECK(fast == slow);
    }
}

TEST_CASE("Mobius values equal signed subfamily-union counts") {
    // mu(0, U) of the union semilattice equals the alternating count of
    // nonempty subfamilies whose union is U
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto gens = random_family(rng, 7, 5);
        if (gens.empty()) continue;
        auto L = union_semilattice(7, gens);
        auto mu = mobius_below(L, 1);
        std::map<Mask, std::int64_t> signed_count;
        const int g = static_cast<int>(gens.size());
        for (Mask pick = 1; pick < bit(g); ++pick) {
            Mask un = 0;
            for (Mask rem = pick; rem;) {
                int j = lowest_bit(rem);
                rem &= rem - 1;
                un |= gens[static_cast<std::size_t>(j)];
            }
            signed_count[un] += (popcount(pick) & 1) ? -1 : 1;
        }
        for (std::size_t i = 1; i < L.size(); ++i)
            CHECK(mu[i] == signed_count[L.elements[i]]);
    }
}

TEST_CASE("size cap and downward-closed keep filters are sound") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto gens = random_family(rng, 8, 5);
        if (gens.empty()) continue;
        auto L = union_semilattice(8, gens);
        auto mu = mobius_below(L, 1);
        // size cap keeps every retained element's Mobius value intact
        auto capped = union_semilattice(8, gens, 5);
        auto mu_capped = mobius_below(capped, 1);
        for (std::size_t i = 0; i < capped.size(); ++i) {
            int at = L.index_of(capped.elements[i]);
            REQUIRE(at >= 0);
            CHECK(mu_capped[i] == mu[static_cast<std::size_t>(at)]);
        }
        // a downward-closed keep (avoid one point) matches the lattice built
        // from the surviving generators alone
        auto keep = [](Mask m) { return !(m & bit(7)); };
        std::vector<Mask> surviving;
        for (Mask m : gens)
            if (keep(m)) surviving.push_back(m);
        auto filtered = union_semilattice(8, gens, std::nullopt, keep);
        auto rebuilt = union_semilattice(8, surviving);
        CHECK(filtered.elements == rebuilt.elements);
        CHECK(mobius_below(filtered, 1) == mobius_below(rebuilt, 1));
    }
}

TEST_CASE("signed subset transform inverts the subset zeta") {
    std::mt19937_64 rng(3);
    std::vector<std::int64_t> base(1 << 6);
    for (auto& x : base) x = static_cast<std::int64_t>(rng() % 19) - 9;
    // zeta: z[U] = sum_{V subseteq U} base[V]
    std::vector<std::int64_t> z(base.size(), 0);
    for (Mask u = 0; u < z.size(); ++u)
        for_each_submask(u, [&](Mask v) { z[u] += base[v]; });
    signed_subset_transform(z, 6);
    CHECK(z == base);
}

TEST_CASE("family inclusion Mobius matches brute force over the family poset") {
    std::vector<std::vector<Mask>> fams = {
        {0b001}, {0b010}, {0b001, 0b010}, {0b001, 0b010, 0b100}};
    auto mu = family_inclusion_mobius(fams);
    // poset: two atoms, their union, one top; mu = -1, -1, 1, 0
    CHECK(mu == std::vector<std::int64_t>{-1, -1, 1, 0});
}

TEST_CASE("reduced Euler characteristic of reference complexes") {
    // single point
    CHECK(reduced_euler_characteristic(make_complex(1, {Mask{1}})) == 0);
    // triangle boundary: three edges
    CHECK(reduced_euler_characteristic(make_complex(3, {0b011, 0b101, 0b110})) == -1);
    // full simplex is a cone
    CHECK(reduced_euler_characteristic(make_complex(3, {0b111})) == 0);
    // two disjoint points
    CHECK(reduced_euler_characteristic(make_complex(2, {0b01, 0b10})) == 1);
    // empty complex (just the empty face)
    CHECK(reduced_euler_characteristic(make_complex(1, {Mask{0}})) == -1);
}

TEST_CASE("Euler characteristic against two independent oracles") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        auto facets = random_family(rng, 10, 6);
        if (facets.empty()) continue;
        auto cx = make_complex(10, facets);
        auto got = reduced_euler_characteristic(cx);
        // oracle 1: walk every mask, test face membership, sum -(-1)^|G|
        std::int64_t direct = 0;
        for (Mask g = 0; g < bit(10); ++g) {
            bool face = (g == 0);
            for (Mask f : cx.facets)
                if (contains(f, g)) { face = true; break; }
            if (face) direct += (popcount(g) & 1) ? 1 : -1;
        }
        CHECK(got == direct);
        // oracle 2: alternating sum over facet subfamilies with nonempty
        // common intersection, minus one for the empty face
        std::int64_t by_ie = 0;
        const int g = static_cast<int>(cx.facets.size());
        for (Mask pick = 1; pick < bit(g); ++pick) {
            Mask inter = full_mask(10);
            for (Mask rem = pick; rem;) {
                int j = lowest_bit(rem);
                rem &= rem - 1;
                inter &= cx.facets[static_cast<std::size_t>(j)];
            }
            if (inter) by_ie += (popcount(pick) & 1) ? 1 : -1;
        }
        CHECK(got == by_ie - 1);
    }
}

TEST_CASE("Euler characteristic beyond the direct-enumeration vertex limit") {
    // supports over 24 vertices force the facet-intersection path; shapes
    // chosen with known homotopy type
    Mask half = full_mask(15);
    // two disjoint simplices: two contractible components
    CHECK(reduced_euler_characteristic(make_complex(30, {half, half << 15})) == 1);
    // two simplices sharing a vertex: a cone
    CHECK(reduced_euler_characteristic(
              make_complex(30, {half | bit(29), half << 15})) == 0);
    // one big simplex
    CHECK(reduced_euler_characteristic(make_complex(30, {full_mask(30)})) == 0);
    // three pairwise-overlapping blocks with empty triple intersection: the
    // nerve is a circle
    Mask blockA = full_mask(10);
    Mask blockB = blockA << 10;
    Mask blockC = blockA << 20;
    CHECK(reduced_euler_characteristic(make_complex(
              30, {blockA | blockB, blockB | blockC, blockA | blockC})) == -1);
}

TEST_CASE("union Mobius number equals the covering-subfamily alternating sum") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        auto fam = random_family(rng, 6, 5);
        Mask un = 0;
        for (Mask f : fam) un |= f;
        if (fam.empty() || un != full_mask(6)) continue;
        std::int64_t direct = 0;
        const int g = static_cast<int>(fam.size());
        for (Mask pick = 1; pick < bit(g); ++pick) {
            Mask u = 0;
            for (Mask rem = pick; rem;) {
                int j = lowest_bit(rem);
                rem &= rem - 1;
                u |= fam[static_cast<std::size_t>(j)];
            }
            if (u == full_mask(6)) direct += (popcount(pick) & 1) ? -1 : 1;
        }
        CHECK(union_mobius_number(6, fam) == direct);
    }
    CHECK_THROWS_AS(union_mobius_number(3, {Mask{0b001}}), DoesNotCover);
}

TEST_CASE("nerve faces are exactly the index sets with common intersection") {
    std::vector<Mask> fam = {0b0011, 0b0110, 0b1100};
    auto nv = nerve(fam);
    CHECK(nv.vertices == 3);
    // pairs {0,1} and {1,2} intersect, {0,2} does not
    auto has_face = [&](Mask f) {
        for (Mask facet : nv.facets)
            if (contains(facet, f)) return true;
        return false;
    };
    CHECK(has_face(0b011));
    CHECK(has_face(0b110));
    CHECK(!has_face(0b101));
}

TEST_CASE("nerve Euler characteristic matches the union Mobius number sign law") {
    // for a covering family, mu(0,1) of the union lattice equals the reduced
    // Euler characteristic of the nerve of the complements within each proper
    // union... checked here in the crosscut form: chi~ of the complex whose
    // facets are complements of the family members
    std::mt19937_64 rng(29);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 30; ++trial) {
        auto fam = min_sets(random_family(rng, 6, 4));
        Mask un = 0;
        for (Mask f : fam) un |= f;
        if (fam.size() < 2 || un != full_mask(6)) continue;
        bool proper = true;
        for (Mask f : fam)
            if (f == full_mask(6)) proper = false;
        if (!proper) continue;
        ++checked;
        std::vector<Mask> facets;
        for (Mask f : fam) facets.push_back(full_mask(6) & ~f);
        auto chi = reduced_euler_characteristic(make_complex(6, facets));
        CHECK(chi == union_mobius_number(6, fam));
    }
    CHECK(checked >= 20);
}
