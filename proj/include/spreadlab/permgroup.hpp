#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "spreadlab/perm.hpp"
#include "spreadlab/rng.hpp"

namespace spreadlab {

struct ChainLevel {
    Point base = 0;
    std::vector<Perm> gens;
    std::vector<Point> orbit;
    std::vector<std::int32_t> pos;  // index into orbit, -1 if absent
    std::vector<Perm> trans;        // trans[i] maps base to orbit[i]
    std::vector<Perm> trans_inv;
    std::vector<std::vector<char>> checked;  // Schreier pairs already verified
};

// Base and strong generating set. Orbits only ever grow, so transversal
// entries are stable once created.
class StabChain {
public:
    explicit StabChain(std::size_t degree = 0) : n_(degree) {}

    // Deterministic Schreier-Sims.
    static StabChain build(std::size_t degree, const std::vector<Perm>& gens);
    // Random Schreier-Sims stopping at `target`; reaching the target
    // certifies the chain, otherwise a deterministic completion decides.
    static StabChain build_with_order(std::size_t degree, const std::vector<Perm>& gens, std::uint64_t target,
                                      std::uint64_t seed = 1);

    std::size_t degree() const { return n_; }
    std::size_t depth() const { return levels_.size(); }
    const ChainLevel& level(std::size_t i) const { return levels_[i]; }
    std::vector<Point> base() const;
    std::uint64_t order() const;

    // Residue and the level where sifting stopped (depth() when it passed).
    std::pair<Perm, std::size_t> sift(const Perm& g, std::size_t start = 0) const;
    bool contains(const Perm& g) const;

    // Mixed-radix index of a member, top level most significant.
    std::uint64_t rank(const Perm& g) const;
    std::optional<std::uint64_t> rank_if_member(const Perm& g) const;
    // Rank from the images of the base points; `imgs` is scratch.
    std::uint64_t rank_from_base_images(Point* imgs) const;
    Perm unrank(std::uint64_t r) const;
    void unrank_into(std::uint64_t r, Point* img) const;  // img has degree() slots
    Perm random_element(Rng& rng) const;

    bool sift_and_add(const Perm& g);
    void add_strong_generator(const Perm& h, std::size_t drop);
    void complete();

private:
    void extend_orbit(std::size_t l);
    std::size_t n_;
    std::vector<ChainLevel> levels_;
};

class PermGroup {
public:
    PermGroup();
    PermGroup(std::size_t degree, std::vector<Perm> gens, std::optional<std::uint64_t> known_order = std::nullopt);
    PermGroup(std::size_t degree, std::vector<Perm> gens, StabChain chain);

    std::size_t degree() const;
    const std::vector<Perm>& gens() const;
    const StabChain& chain() const;
    std::uint64_t order() const;
    bool contains(const Perm& x) const;
    Perm identity() const { return Perm(degree()); }
    Perm random_element(Rng& rng) const;
    const std::vector<std::vector<Point>>& orbits() const;
    bool is_transitive() const { return orbits().size() == 1; }
    bool is_primitive() const;
    bool is_abelian() const;
    bool is_cyclic() const;
    bool same_as(const PermGroup& o) const { return state_ == o.state_; }

private:
    struct State;
    std::shared_ptr<State> state_;
};

std::vector<std::vector<Point>> orbits_of(std::size_t degree, const std::vector<Perm>& gens);
// Minimal block containing {a, b} for the group generated by gens
// (returned as a block id per point), assuming transitivity.
std::vector<std::uint32_t> minimal_block(std::size_t degree, const std::vector<Perm>& gens, Point a, Point b);

bool is_generating(const PermGroup& G, const std::vector<Perm>& elems);
// Same predicate without the membership check.
bool generates_order(std::size_t degree, const std::vector<Perm>& elems, std::uint64_t target,
                     const std::vector<std::vector<Point>>* target_orbits = nullptr, bool primitive = false);
std::uint64_t order_of_generated(std::size_t degree, const std::vector<Perm>& elems);

struct ConjOrbit {
    std::uint64_t orbit_size = 0;
    PermGroup centralizer;
};
ConjOrbit conj_orbit_with_stabilizer(const PermGroup& G, const Perm& x);

PermGroup derived_subgroup(const PermGroup& G);
PermGroup normal_closure(const PermGroup& G, const std::vector<Perm>& elems);
bool is_subgroup(const PermGroup& H, const PermGroup& G);

// Exhaustive closure, used as an oracle for small groups.
std::vector<Perm> enumerate_by_closure(std::size_t degree, const std::vector<Perm>& gens, std::size_t limit);

}  // namespace spreadlab
