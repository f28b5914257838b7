#include "topecom/convexity.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

#include "topecom/binomial.hpp"
#include "topecom/bits.hpp"
#include "topecom/errors.hpp"

namespace topecom {

namespace {

std::vector<Mask> element_positive_masks(const OrientedMatroid& om) {
    std::vector<Mask> pos(static_cast<std::size_t>(om.ground_size()));
    for (int e = 1; e <= om.ground_size(); ++e)
        pos[static_cast<std::size_t>(e - 1)] = om.positive_tope_mask(e);
    return pos;
}

Mask support_from(const std::vector<Mask>& pos, Mask all, Mask elements) {
    Mask s = all;
    Mask rest = elements;
    while (rest) {
        const int e = lowest_bit(rest);
        rest &= rest - 1;
        s &= pos[static_cast<std::size_t>(e)];
    }
    return s;
}

Mask conv_from(const std::vector<Mask>& pos, Mask all, int t, Mask elements) {
    const Mask s = support_from(pos, all, elements);
    Mask c = 0;
    for (int e = 0; e < t; ++e)
        if (contains(pos[static_cast<std::size_t>(e)], s)) c |= bit(e);
    return c;
}

bool free_from(const std::vector<Mask>& pos, Mask all, int t, Mask elements) {
    if (conv_from(pos, all, t, elements) != elements) return false;
    Mask rest = elements;
    while (rest) {
        const int e = lowest_bit(rest);
        rest &= rest - 1;
        if (contains(conv_from(pos, all, t, elements & ~bit(e)), bit(e)))
            return false;
    }
    return true;
}

} // namespace

Mask tope_support(const OrientedMatroid& om, Mask elements) {
    return support_from(element_positive_masks(om), om.all_topes_mask(), elements);
}

Mask conv(const OrientedMatroid& om, Mask elements) {
    return conv_from(element_positive_masks(om), om.all_topes_mask(),
                     om.ground_size(), elements);
}

bool is_convex(const OrientedMatroid& om, Mask elements) {
    return conv(om, elements) == elements;
}

bool is_extreme(const OrientedMatroid& om, Mask elements, int element) {
    const Mask b = bit(element - 1);
    return !contains(conv(om, elements & ~b), b);
}

bool is_free(const OrientedMatroid& om, Mask elements) {
    return free_from(element_positive_masks(om), om.all_topes_mask(),
                     om.ground_size(), elements);
}

Mask gamma(const OrientedMatroid& om, Mask tope_set) {
    Mask g = 0;
    for (int e = 1; e <= om.ground_size(); ++e)
        if (contains(om.positive_tope_mask(e), tope_set)) g |= bit(e - 1);
    return g;
}

ConvexityReport convexity_report(const OrientedMatroid& om) {
    const int t = om.ground_size();
    if (t > 22)
        throw CapExceeded("convex-set enumeration is limited to 22 elements");
    const auto pos = element_positive_masks(om);
    const Mask all = om.all_topes_mask();
    ConvexityReport rep;
    rep.t = t;
    for (Mask a = 0; a < (Mask{1} << t); ++a) {
        if (conv_from(pos, all, t, a) != a) continue;
        rep.convex.push_back(a);
        if (free_from(pos, all, t, a)) rep.free.push_back(a);
    }
    auto by_size = [](Mask x, Mask y) {
        return popcount(x) != popcount(y) ? popcount(x) < popcount(y) : x < y;
    };
    std::sort(rep.convex.begin(), rep.convex.end(), by_size);
    std::sort(rep.free.begin(), rep.free.end(), by_size);
    return rep;
}

std::int64_t ideal_layer_count(const OrientedMatroid& om, int j, LayerMethod method) {
    const int t = om.ground_size();
    if (t > 22)
        throw CapExceeded("layer counting is limited to 22 elements");
    // The halfspace ideal is downward closed and nonempty, so its 0-layer is
    // the empty subset alone; the free-set evaluation only covers j >= 1.
    if (j < 0) return 0;
    if (j == 0) return 1;
    const auto pos = element_positive_masks(om);
    const Mask all = om.all_topes_mask();
    boost::multiprecision::cpp_int sum = 0;
    if (method == LayerMethod::Direct) {
        for (Mask a = 1; a < (Mask{1} << t); ++a) {
            const int n = popcount(support_from(pos, all, a));
            const std::int64_t c = binom(n, j);
            if (popcount(a) % 2 == 1)
                sum += c;
            else
                sum -= c;
        }
    } else {
        for (Mask a = 1; a < (Mask{1} << t); ++a) {
            if (!free_from(pos, all, t, a)) continue;
            const int n = popcount(support_from(pos, all, a));
            const std::int64_t c = binom(n, j);
            // minus the signed term, so odd-size free sets add
            if (popcount(a) % 2 == 1)
                sum += c;
            else
                sum -= c;
        }
    }
    return static_cast<std::int64_t>(sum);
}

} // namespace topecom
