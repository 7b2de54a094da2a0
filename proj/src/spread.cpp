#include "spreadlab/spread.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "spreadlab/error.hpp"
#include "spreadlab/ffield.hpp"

namespace spreadlab {

Perm reduce_to_prime_order(const Perm& x) {
    if (x.is_identity()) fail(Errc::IdentityInput, "the identity has no prime-order power");
    std::uint64_t n = x.order();
    std::uint64_t r = prime_factors(n).front();
    return x.pow(static_cast<std::int64_t>(n / r));
}

GenTester::GenTester(const PermGroup& G) : G_(G) { G_.orbits(); }

bool GenTester::operator()(const Perm& a, const Perm& b) const { return (*this)(std::vector<Perm>{a, b}); }

bool GenTester::operator()(const std::vector<Perm>& elems) const {
    return generates_order(G_.degree(), elems, G_.order(), &G_.orbits());
}

// ---------------------------------------------------------------- SmallGroup

SmallGroup::SmallGroup(const PermGroup& G, std::uint64_t budget)
    : G_(G), table_(conjugacy_classes(G, budget)), tester_(G) {
    const std::uint64_t N = G.order();
    elems_.reserve(N);
    for (std::uint64_t r = 0; r < N; ++r) elems_.push_back(G.chain().unrank(r));
    conj_.assign(N, Perm());
    for (std::uint32_t c = 0; c < table_.size(); ++c) {
        std::uint64_t r0 = rank(table_[c].rep);
        conj_[r0] = G.identity();
        std::deque<std::uint64_t> q{r0};
        while (!q.empty()) {
            std::uint64_t r = q.front();
            q.pop_front();
            for (const auto& g : G.gens()) {
                std::uint64_t s = rank(conjugate(elems_[r], g));
                if (conj_[s].degree() == 0) {
                    conj_[s] = conj_[r] * g;
                    q.push_back(s);
                }
            }
        }
    }
    partners_.resize(table_.size());
}

const Bits& SmallGroup::partners(std::uint32_t c) const {
    auto& slot = partners_[c];
    if (!slot) {
        Bits b(size());
        const Perm& x = table_[c].rep;
        for (std::uint64_t z = 1; z < size(); ++z)
            if (tester_(x, elems_[z])) b.set(z);
        slot = std::move(b);
    }
    return *slot;
}

bool SmallGroup::generates(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return false;
    const Perm& g = conj_[a];
    // <rep^g, z> = G iff <rep, g z g^-1> = G
    return partners(class_of(a)).test(rank(g * elems_[b] * g.inverse()));
}

std::vector<BlockerSet> blocker_sets(const SmallGroup& S, std::optional<std::uint32_t> universe_class,
                                     bool prime_only) {
    std::vector<std::uint64_t> universe;
    for (std::uint64_t z = 1; z < S.size(); ++z)
        if (!universe_class || S.class_of(z) == *universe_class) universe.push_back(z);
    std::vector<BlockerSet> out;
    for (std::uint64_t a = 1; a < S.size(); ++a) {
        std::uint64_t ord = S.table()[S.class_of(a)].order;
        if (prime_only && !is_prime(ord)) continue;
        BlockerSet b{a, Bits(S.size())};
        const Perm& g = S.conj(a);
        Perm gi = g.inverse();
        const Bits& part = S.partners(S.class_of(a));
        for (std::uint64_t z : universe)
            if (!part.test(S.rank(g * S.elem(z) * gi))) b.members.set(z);
        out.push_back(std::move(b));
    }
    return out;
}

// ---------------------------------------------------------------- min cover

namespace {

struct CoverSearch {
    std::vector<Bits> sets;
    std::vector<std::vector<std::uint32_t>> containing;  // element -> sets
    std::vector<std::size_t> best;
    bool have_best = false;
    std::vector<std::size_t> chosen;

    std::size_t lower_bound(const Bits& unc, const Bits& excluded) const {
        // Elements pairwise sharing no available set need distinct sets.
        std::vector<char> used(sets.size(), 0);
        std::size_t lb = 0;
        for (auto e = unc.find_first(); e != Bits::npos; e = unc.find_next(e)) {
            bool clash = false;
            for (auto s : containing[e])
                if (!excluded.test(s) && used[s]) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            ++lb;
            for (auto s : containing[e])
                if (!excluded.test(s)) used[s] = 1;
        }
        return lb;
    }

    void run(const Bits& unc, Bits excluded) {
        if (unc.none()) {
            if (!have_best || chosen.size() < best.size()) {
                best = chosen;
                have_best = true;
            }
            return;
        }
        if (have_best && chosen.size() + 1 >= best.size()) return;
        if (have_best && chosen.size() + lower_bound(unc, excluded) >= best.size()) return;
        // branch on the uncovered element with the fewest available sets
        std::size_t pick = Bits::npos, fewest = SIZE_MAX;
        for (auto e = unc.find_first(); e != Bits::npos; e = unc.find_next(e)) {
            std::size_t c = 0;
            for (auto s : containing[e]) c += !excluded.test(s);
            if (c < fewest) {
                fewest = c;
                pick = e;
                if (c <= 1) break;
            }
        }
        if (fewest == 0) return;
        std::vector<std::pair<std::size_t, std::uint32_t>> opts;
        for (auto s : containing[pick])
            if (!excluded.test(s)) opts.emplace_back((sets[s] & unc).count(), s);
        std::stable_sort(opts.begin(), opts.end(), [](auto& a, auto& b) { return a.first > b.first; });
        for (auto [gain, s] : opts) {
            chosen.push_back(s);
            run(unc - sets[s], excluded);
            chosen.pop_back();
            excluded.set(s);
        }
    }
};

// Minimum cover with the first set restricted to `first` (all sets when
// empty); sound when every cover is equivalent to one using such a set.
std::optional<std::vector<std::size_t>> min_cover_from(const std::vector<Bits>& raw, const Bits& universe,
                                                       const std::vector<std::size_t>& first) {
    if (universe.none()) return std::vector<std::size_t>{};
    Bits all(universe.size());
    for (const auto& s : raw) all |= s;
    if (!universe.is_subset_of(all)) return std::nullopt;

    // restrict, drop duplicates and dominated sets
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Bits> rs(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) rs[i] = raw[i] & universe;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rs[a].count() > rs[b].count(); });
    CoverSearch cs;
    std::vector<std::size_t> orig;
    std::vector<std::size_t> remap(raw.size(), SIZE_MAX);
    for (auto i : order) {
        if (rs[i].none()) continue;
        bool dominated = false;
        for (std::size_t j = 0; j < cs.sets.size() && !dominated; ++j)
            if (rs[i].is_subset_of(cs.sets[j])) {
                dominated = true;
                remap[i] = j;
            }
        if (dominated) continue;
        remap[i] = cs.sets.size();
        cs.sets.push_back(rs[i]);
        orig.push_back(i);
    }
    cs.containing.assign(universe.size(), {});
    for (std::uint32_t s = 0; s < cs.sets.size(); ++s)
        for (auto e = cs.sets[s].find_first(); e != Bits::npos; e = cs.sets[s].find_next(e))
            cs.containing[e].push_back(s);

    // greedy upper bound
    {
        Bits unc = universe;
        std::vector<std::size_t> g;
        while (unc.any()) {
            std::size_t bi = 0, bc = 0;
            for (std::size_t s = 0; s < cs.sets.size(); ++s) {
                std::size_t c = (cs.sets[s] & unc).count();
                if (c > bc) {
                    bc = c;
                    bi = s;
                }
            }
            g.push_back(bi);
            unc -= cs.sets[bi];
        }
        cs.best = g;
        cs.have_best = true;
    }

    Bits excluded(cs.sets.size());
    if (first.empty()) {
        cs.run(universe, excluded);
    } else {
        std::vector<std::size_t> starts;
        for (auto f : first)
            if (remap[f] != SIZE_MAX) starts.push_back(remap[f]);
        std::sort(starts.begin(), starts.end());
        starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
        for (auto s : starts) {
            cs.chosen = {s};
            cs.run(universe - cs.sets[s], excluded);
        }
        cs.chosen.clear();
    }
    std::vector<std::size_t> out;
    for (auto s : cs.best) out.push_back(orig[s]);
    return out;
}

std::vector<std::size_t> class_rep_anchor_indices(const SmallGroup& S, const std::vector<BlockerSet>& bs) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bs.size(); ++i)
        if (S.elem(bs[i].anchor) == S.table()[S.class_of(bs[i].anchor)].rep) out.push_back(i);
    return out;
}

}  // namespace

std::optional<std::vector<std::size_t>> min_cover(const std::vector<Bits>& sets, const Bits& universe) {
    return min_cover_from(sets, universe, {});
}

SpreadResult exact_spread(const PermGroup& G, bool prime_reduction, std::uint64_t budget) {
    if (G.order() > budget) fail(Errc::BudgetExceeded, "group above the exact-mode budget");
    SmallGroup S(G, budget);
    auto bs = blocker_sets(S, std::nullopt, prime_reduction);
    Bits universe(S.size());
    for (std::uint64_t z = 1; z < S.size(); ++z) universe.set(z);
    std::vector<Bits> sets;
    for (auto& b : bs) sets.push_back(b.members);
    SpreadResult res;
    // a cover can be conjugated so that its first anchor is a class rep
    auto cover = min_cover_from(sets, universe, class_rep_anchor_indices(S, bs));
    if (!cover) return res;
    res.value = cover->size() - 1;
    for (auto i : *cover) res.cover.push_back(S.elem(bs[i].anchor));
    return res;
}

SpreadResult exact_uniform_spread(const PermGroup& G, bool prime_reduction, std::uint64_t budget) {
    if (G.order() > budget) fail(Errc::BudgetExceeded, "group above the exact-mode budget");
    SmallGroup S(G, budget);
    auto bs = blocker_sets(S, std::nullopt, prime_reduction);
    auto firsts = class_rep_anchor_indices(S, bs);
    SpreadResult res;
    res.per_class.assign(S.table().size(), std::uint64_t{0});
    bool infinite = false;
    std::optional<std::uint64_t> best;
    for (std::uint32_t c = 1; c < S.table().size(); ++c) {
        Bits universe(S.size());
        for (std::uint64_t z = 1; z < S.size(); ++z)
            if (S.class_of(z) == c) universe.set(z);
        std::vector<Bits> sets;
        for (auto& b : bs) sets.push_back(b.members & universe);
        auto cover = min_cover_from(sets, universe, firsts);
        if (!cover) {
            res.per_class[c] = std::nullopt;
            if (!infinite) {
                infinite = true;
                res.best_class = c;
                res.cover.clear();
            }
            continue;
        }
        std::uint64_t v = cover->size() - 1;
        res.per_class[c] = v;
        if (!infinite && (!best || v > *best)) {
            best = v;
            res.best_class = c;
            res.cover.clear();
            for (auto i : *cover) res.cover.push_back(S.elem(bs[i].anchor));
        }
    }
    if (!infinite) res.value = best.value_or(0);
    return res;
}

// ---------------------------------------------------------------- graph

GeneratingGraph generating_graph(const PermGroup& G, std::uint64_t budget) {
    if (G.order() > budget) fail(Errc::BudgetExceeded, "group above the exact-mode budget");
    SmallGroup S(G, budget);
    GeneratingGraph g;
    for (std::uint64_t r = 1; r < S.size(); ++r) g.vertices.push_back(r);
    g.adj.assign(g.vertices.size(), Bits(g.vertices.size()));
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const Perm& c = S.conj(g.vertices[i]);
        Perm ci = c.inverse();
        const Bits& part = S.partners(S.class_of(g.vertices[i]));
        for (std::size_t j = 0; j < g.vertices.size(); ++j)
            if (part.test(S.rank(c * S.elem(g.vertices[j]) * ci))) g.adj[i].set(j);
    }
    return g;
}

std::optional<std::uint64_t> graph_diameter(const GeneratingGraph& g) {
    const std::size_t n = g.vertices.size();
    std::uint64_t diam = 0;
    for (std::size_t s = 0; s < n; ++s) {
        Bits seen(n), frontier(n);
        seen.set(s);
        frontier.set(s);
        std::uint64_t d = 0;
        while (true) {
            Bits next(n);
            for (auto v = frontier.find_first(); v != Bits::npos; v = frontier.find_next(v)) next |= g.adj[v];
            next -= seen;
            if (next.none()) break;
            seen |= next;
            frontier = next;
            ++d;
        }
        if (seen.count() != n) return std::nullopt;
        diam = std::max(diam, d);
    }
    return diam;
}

std::uint64_t isolated_vertices(const GeneratingGraph& g) {
    std::uint64_t c = 0;
    for (const auto& a : g.adj) c += a.none();
    return c;
}

}  // namespace spreadlab
