#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "spreadlab/error.hpp"
#include "spreadlab/permgroup.hpp"
#include "spreadlab/rng.hpp"

namespace spreadlab {

// Orbit of `start` under G (acting through `act(value, generator)`) with
// the stabilizer harvested from Schreier generators. The stabilizer order is
// known in advance as |G|/|orbit|, so harvesting stops as soon as the chain
// reaches it; the order match certifies the chain.
template <class T, class Hash = std::hash<T>>
struct OrbitStab {
    std::vector<T> orbit;
    std::vector<std::uint32_t> parent;  // BFS tree
    std::vector<std::uint32_t> via;     // generator index used to reach the node
    PermGroup stabilizer;

    // Group element carrying orbit[0] to orbit[i].
    Perm transversal(const PermGroup& G, std::uint32_t i) const {
        std::vector<std::uint32_t> path;
        while (i != 0) {
            path.push_back(via[i]);
            i = parent[i];
        }
        Perm t(G.degree());
        for (auto it = path.rbegin(); it != path.rend(); ++it) t = t * G.gens()[*it];
        return t;
    }
};

template <class T, class Hash = std::hash<T>, class Act>
OrbitStab<T, Hash> orbit_stabilizer(const PermGroup& G, const T& start, Act act, std::uint64_t seed = 7,
                                    bool want_stabilizer = true) {
    OrbitStab<T, Hash> out;
    std::unordered_map<T, std::uint32_t, Hash> index;
    const auto& gens = G.gens();
    std::vector<std::uint32_t> image;  // image[i * |gens| + j]
    out.orbit.push_back(start);
    out.parent.push_back(0);
    out.via.push_back(0);
    index.emplace(start, 0);
    for (std::size_t i = 0; i < out.orbit.size(); ++i) {
        for (std::size_t j = 0; j < gens.size(); ++j) {
            T y = act(out.orbit[i], gens[j]);
            auto [it, fresh] = index.emplace(y, static_cast<std::uint32_t>(out.orbit.size()));
            if (fresh) {
                out.orbit.push_back(std::move(y));
                out.parent.push_back(static_cast<std::uint32_t>(i));
                out.via.push_back(static_cast<std::uint32_t>(j));
            }
            image.push_back(it->second);
        }
    }
    if (!want_stabilizer) return out;
    std::uint64_t size = out.orbit.size();
    if (G.order() % size != 0) fail(Errc::Internal, "orbit length does not divide the group order");
    std::uint64_t target = G.order() / size;
    StabChain chain(G.degree());
    std::vector<Perm> harvested;
    auto try_pair = [&](std::uint32_t a, std::uint32_t j) {
        std::uint32_t b = image[static_cast<std::size_t>(a) * gens.size() + j];
        // Skip tree edges: their Schreier generator is trivial.
        if (out.parent[b] == a && out.via[b] == j && b != 0) return;
        Perm s = out.transversal(G, a) * gens[j] * out.transversal(G, b).inverse();
        if (s.is_identity()) return;
        if (chain.sift_and_add(s)) harvested.push_back(s);
    };
    if (target > 1 && !gens.empty()) {
        Rng rng = make_stream(seed, size);
        std::size_t attempts = 0, limit = 64 + 8 * gens.size();
        while (chain.order() < target && attempts < limit) {
            ++attempts;
            try_pair(static_cast<std::uint32_t>(uniform_below(rng, size)),
                     static_cast<std::uint32_t>(uniform_below(rng, gens.size())));
        }
        for (std::uint32_t a = 0; a < size && chain.order() < target; ++a)
            for (std::uint32_t j = 0; j < gens.size() && chain.order() < target; ++j) try_pair(a, j);
        if (chain.order() != target) {
            // Partial chains can undercount; finish deterministically.
            chain.complete();
            if (chain.order() != target) fail(Errc::Internal, "stabilizer order mismatch");
        }
    }
    out.stabilizer = PermGroup(G.degree(), harvested, std::move(chain));
    return out;
}

}  // namespace spreadlab
