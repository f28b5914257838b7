#include "topecom/poset.hpp"

#include <algorithm>
#include <deque>

#include "topecom/parallel.hpp"

namespace topecom {

void MaskIndex::rehash_for(std::size_t n) {
    std::size_t cap = 16;
    while (cap < n * 2) cap <<= 1;
    std::vector<Mask> keys(cap);
    std::vector<std::int32_t> vals(cap, -1);
    keys_.swap(keys);
    vals_.swap(vals);
    mask_ = cap - 1;
    count_ = 0;
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (vals[i] >= 0) insert(keys[i], vals[i]);
}

void MaskIndex::insert(Mask key, std::int32_t value) {
    if (vals_.empty() || (count_ + 1) * 10 > vals_.size() * 7) rehash_for(count_ + 8);
    std::size_t at = hash(key) & mask_;
    while (vals_[at] >= 0) {
        if (keys_[at] == key) { vals_[at] = value; return; }
        at = (at + 1) & mask_;
    }
    keys_[at] = key;
    vals_[at] = value;
    ++count_;
}

std::int32_t MaskIndex::find(Mask key) const {
    if (vals_.empty()) return -1;
    std::size_t at = hash(key) & mask_;
    while (vals_[at] >= 0) {
        if (keys_[at] == key) return vals_[at];
        at = (at + 1) & mask_;
    }
    return -1;
}

namespace {

void sort_by_size(std::vector<Mask>& v) {
    std::sort(v.begin(), v.end(), [](Mask a, Mask b) {
        int pa = popcount(a), pb = popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

std::vector<Mask> min_sets(std::vector<Mask> family) {
    sort_by_size(family);
    std::vector<Mask> out;
    for (Mask m : family) {
        bool dominated = false;
        for (Mask kept : out)
            if (contains(m, kept)) { dominated = true; break; }
        if (!dominated) out.push_back(m);
    }
    return out;
}

std::vector<Mask> max_sets(std::vector<Mask> family) {
    sort_by_size(family);
    std::reverse(family.begin(), family.end());
    std::vector<Mask> out;
    for (Mask m : family) {
        bool dominated = false;
        for (Mask kept : out)
            if (contains(kept, m)) { dominated = true; break; }
        if (!dominated) out.push_back(m);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<Mask> blocker(const std::vector<Mask>& family) {
    for (Mask m : family)
        if (m == 0) throw EmptyMember("blocker is undefined for a family containing the empty set");

    // Berge's incremental construction: fold members in, extending every
    // partial transversal that misses the new member.
    std::vector<Mask> trans{0};
    for (Mask member : min_sets(family)) {
        std::vector<Mask> next;
        for (Mask tau : trans) {
            if (tau & member) {
                next.push_back(tau);
            } else {
                Mask rest = member;
                while (rest) {
                    int x = lowest_bit(rest);
                    rest &= rest - 1;
                    next.push_back(tau | bit(x));
                }
            }
        }
        trans = min_sets(std::move(next));
    }
    return trans;
}

JoinSemilattice JoinSemilattice::from_elements(int universe, std::vector<Mask> elems) {
    elems.push_back(0);
    sort_by_size(elems);
    JoinSemilattice L;
    L.universe = universe;
    L.elements = std::move(elems);
    L.index = MaskIndex(L.elements.size());
    for (std::size_t i = 0; i < L.elements.size(); ++i)
        L.index.insert(L.elements[i], static_cast<std::int32_t>(i));
    return L;
}

JoinSemilattice union_semilattice(
    int universe, const std::vector<Mask>& generators,
    std::optional<int> size_cap,
    const std::function<bool(Mask)>& keep,
    std::int64_t max_elements) {
    std::vector<Mask> gens;
    for (Mask g : generators) {
        if (g == 0) throw Error("union semilattice generators must be nonempty");
        if (size_cap && popcount(g) > *size_cap) continue;
        if (keep && !keep(g)) continue;
        gens.push_back(g);
    }
    sort_by_size(gens);

    MaskIndex seen(64);
    seen.insert(0, 0);
    std::vector<Mask> elems{0};
    std::deque<Mask> work{0};
    while (!work.empty()) {
        Mask x = work.front();
        work.pop_front();
        for (Mask g : gens) {
            Mask u = x | g;
            if (u == x) continue;
            if (size_cap && popcount(u) > *size_cap) continue;
            if (keep && !keep(u)) continue;
            if (seen.find(u) >= 0) continue;
            if (static_cast<std::int64_t>(elems.size()) >= max_elements)
                throw CapExceeded("union semilattice exceeds element budget of " +
                                  std::to_string(max_elements));
            seen.insert(u, static_cast<std::int32_t>(elems.size()));
            elems.push_back(u);
            work.push_back(u);
        }
    }
    return JoinSemilattice::from_elements(universe, std::move(elems));
}

std::vector<std::int64_t> mobius_below(const JoinSemilattice& L, int threads) {
    const std::size_t n = L.size();
    std::vector<std::int64_t> mu(n, 0);
    if (n == 0) return mu;
    mu[0] = 1; // least element

    // Elements are sorted by cardinality, so equal-cardinality runs form
    // antichains whose values depend only on earlier runs.
    std::size_t lo = 1;
    while (lo < n) {
        std::size_t hi = lo;
        int card = popcount(L.elements[lo]);
        while (hi < n && popcount(L.elements[hi]) == card) ++hi;
        parallel_chunks(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi), threads,
                        [&](std::int64_t b, std::int64_t e, int) {
                            for (std::int64_t i = b; i < e; ++i) {
                                Mask z = L.elements[i];
                                std::int64_t acc = 0;
                                Mask sub = (z - 1) & z;
                                while (true) {
                                    int j = L.index.find(sub);
                                    if (j >= 0) acc += mu[j];
                                    if (sub == 0) break;
                                    sub = (sub - 1) & z;
                                }
                                mu[i] = -acc;
                            }
                        });
        lo = hi;
    }
    return mu;
}

SimplicialComplex make_complex(int vertices, std::vector<Mask> generating_sets) {
    SimplicialComplex cx;
    cx.vertices = vertices;
    cx.facets = max_sets(std::move(generating_sets));
    return cx;
}

namespace {

std::int64_t euler_by_face_enumeration(const SimplicialComplex& cx) {
    MaskIndex faces(1024);
    std::vector<Mask> stack;
    std::int64_t chi = 0; // running sum of (-1)^(|F|-1), empty face included
    auto visit = [&](Mask f) {
        if (faces.find(f) >= 0) return;
        faces.insert(f, 1);
        chi += (popcount(f) & 1) ? 1 : -1;
        stack.push_back(f);
    };
    for (Mask facet : cx.facets) {
        visit(facet);
        while (!stack.empty()) {
            Mask f = stack.back();
            stack.pop_back();
            Mask rest = f;
            while (rest) {
                int v = lowest_bit(rest);
                rest &= rest - 1;
                visit(f & ~bit(v));
            }
        }
    }
    return chi;
}

std::int64_t euler_by_empty_intersections(const SimplicialComplex& cx) {
    const int m = static_cast<int>(cx.facets.size());
    if (m > 30)
        throw CapExceeded("Euler characteristic by facet index sums needs at most 30 facets, got " +
                          std::to_string(m));
    // chi~ = sum over nonempty index sets I with empty common intersection of
    // (-1)^|I|; each such intersection contributes the chi~ of the empty face.
    std::int64_t chi = 0;
    const std::uint32_t lim = 1u << m;
    for (std::uint32_t I = 1; I < lim; ++I) {
        Mask common = ~Mask{0};
        for (std::uint32_t r = I; r;) {
            int i = std::countr_zero(r);
            r &= r - 1;
            common &= cx.facets[i];
        }
        if (common == 0) chi += (std::popcount(I) & 1) ? -1 : 1;
    }
    return chi;
}

} // namespace

std::int64_t reduced_euler_characteristic(const SimplicialComplex& cx) {
    if (cx.facets.empty()) return 0; // void complex
    Mask support = 0;
    for (Mask f : cx.facets) support |= f;
    if (popcount(support) <= 24) return euler_by_face_enumeration(cx);
    return euler_by_empty_intersections(cx);
}

std::int64_t union_mobius_number(int universe, const std::vector<Mask>& family) {
    Mask want = full_mask(universe);
    Mask have = 0;
    for (Mask f : family) have |= f;
    if (have != want)
        throw DoesNotCover("family does not cover its universe");
    JoinSemilattice L = union_semilattice(universe, family);
    auto mu = mobius_below(L);
    int top = L.index_of(want);
    return mu[top];
}

void signed_subset_transform(std::vector<std::int64_t>& a, int n_bits) {
    for (int i = 0; i < n_bits; ++i) {
        const Mask step = bit(i);
        for (Mask u = 0; u < a.size(); ++u)
            if (u & step) a[u] -= a[u ^ step];
    }
}

std::vector<std::int64_t> family_inclusion_mobius(const std::vector<std::vector<Mask>>& families) {
    const std::size_t m = families.size();
    std::vector<std::int64_t> mu(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::int64_t acc = 1; // the adjoined least element sits below everything
        for (std::size_t j = 0; j < i; ++j) {
            if (families[j].size() >= families[i].size()) continue;
            if (std::includes(families[i].begin(), families[i].end(),
                              families[j].begin(), families[j].end()))
                acc += mu[j];
        }
        mu[i] = -acc;
    }
    return mu;
}

SimplicialComplex nerve(const std::vector<Mask>& family) {
    const int m = static_cast<int>(family.size());
    if (m > 25)
        throw CapExceeded("nerve computation supports at most 25 family members, got " +
                          std::to_string(m));
    std::vector<Mask> faces;
    const std::uint32_t lim = m >= 32 ? 0 : (1u << m);
    for (std::uint32_t I = 1; I < lim; ++I) {
        Mask common = ~Mask{0};
        for (std::uint32_t r = I; r;) {
            int i = std::countr_zero(r);
            r &= r - 1;
            common &= family[i];
        }
        if (common != 0) faces.push_back(static_cast<Mask>(I));
    }
    return make_complex(m, std::move(faces));
}

} // namespace topecom
