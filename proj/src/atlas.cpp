#include <algorithm>
#include <map>

#include "spreadlab/error.hpp"
#include "spreadlab/grpzoo.hpp"

namespace spreadlab {

namespace {

constexpr Point kInfinity = 9;

// Fractional map z -> (a z^s + b) / (c z^s + d) on GF(9) u {inf}, where
// z^s is z or z^3.
Perm fractional(const Field& F, Fq a, Fq b, Fq c, Fq d, bool frob) {
    std::vector<Point> img(10);
    for (Point z = 0; z <= kInfinity; ++z) {
        Fq num, den;
        if (z == kInfinity) {
            num = a;
            den = c;
        } else {
            Fq w = frob ? F.frobenius(z, 1) : z;
            num = F.add(F.mul(a, w), b);
            den = F.add(F.mul(c, w), d);
        }
        img[z] = den == 0 ? kInfinity : static_cast<Point>(F.div(num, den));
    }
    return Perm(std::move(img));
}

std::uint64_t max_element_order(const std::vector<Perm>& elems) {
    std::uint64_t best = 0;
    for (const Perm& g : elems) best = std::max<std::uint64_t>(best, g.order());
    return best;
}

struct Atlas {
    std::map<std::string, PermGroup> groups;
};

const Atlas& atlas() {
    static const Atlas a = [] {
        Atlas out;
        FieldPtr F = Field::make(3, 2);
        Fq z = F->primitive();
        Perm t = fractional(*F, 1, 1, 0, 1, false);
        Perm m = fractional(*F, z, 0, 0, 1, false);
        Perm s = fractional(*F, 0, 1, 1, 0, false);
        Perm phi = fractional(*F, 1, 0, 0, 1, true);
        PermGroup top(10, {t, m, s, phi});
        if (top.order() != 1440) fail(Errc::ValidationFailed, "semilinear fractional group has the wrong order");
        PermGroup a6 = derived_subgroup(top);
        if (a6.order() != 360) fail(Errc::ValidationFailed, "derived subgroup is not of order 360");
        out.groups["PGammaL29"] = top;
        out.groups["A6"] = a6;
        // The three index-2 overgroups, told apart by their element orders.
        for (const Perm& x : {m, phi, m * phi}) {
            std::vector<Perm> gens = a6.gens();
            gens.push_back(x);
            PermGroup H(10, gens);
            if (H.order() != 720) fail(Errc::ValidationFailed, "overgroup of A6 has the wrong order");
            auto elems = enumerate_by_closure(10, gens, 720);
            bool has10 = std::any_of(elems.begin(), elems.end(), [](const Perm& g) { return g.order() == 10; });
            std::string name = has10 ? "PGL29" : max_element_order(elems) == 6 ? "S6" : "M10";
            if (out.groups.count(name)) fail(Errc::ValidationFailed, "two overgroups of A6 share a label");
            out.groups[name] = H;
        }
        Perm c5({1, 2, 3, 4, 0}), c3({1, 2, 0, 3, 4});
        out.groups["A5"] = PermGroup(5, {c5, c3});
        if (out.groups["A5"].order() != 60) fail(Errc::ValidationFailed, "A5 has the wrong order");
        return out;
    }();
    return a;
}

}  // namespace

std::vector<std::string> atlas_names() { return {"A5", "A6", "S6", "PGL29", "M10", "PGammaL29"}; }

AtlasGroup atlas_group(const std::string& name) {
    static const std::map<std::string, std::string> alias = {
        {"PGL2(9)", "PGL29"}, {"PGammaL2(9)", "PGammaL29"}, {"PGaL29", "PGammaL29"}};
    std::string key = name;
    if (auto it = alias.find(name); it != alias.end()) key = it->second;
    const auto& g = atlas().groups;
    auto it = g.find(key);
    if (it == g.end()) fail(Errc::ParseError, "unknown atlas group '" + name + "'");
    return {key, it->second};
}

}  // namespace spreadlab
