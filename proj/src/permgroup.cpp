#include "spreadlab/permgroup.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "spreadlab/error.hpp"
#include "spreadlab/orbit.hpp"

namespace spreadlab {

// ---------------------------------------------------------------- StabChain

std::vector<Point> StabChain::base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
}

std::uint64_t StabChain::order() const {
    unsigned __int128 o = 1;
    for (const auto& l : levels_) {
        o *= l.orbit.size();
        if (o > static_cast<unsigned __int128>(UINT64_MAX)) fail(Errc::Overflow, "group order exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(o);
}

std::pair<Perm, std::size_t> StabChain::sift(const Perm& g, std::size_t start) const {
    Perm h = g;
    for (std::size_t l = start; l < levels_.size(); ++l) {
        const auto& L = levels_[l];
        std::int32_t i = L.pos[h[L.base]];
        if (i < 0) return {h, l};
        if (i > 0) h = h * L.trans_inv[i];
    }
    return {h, levels_.size()};
}

bool StabChain::contains(const Perm& g) const {
    if (g.degree() != n_) fail(Errc::DegreeMismatch, "membership test with wrong degree");
    auto [h, l] = sift(g);
    return l == levels_.size() && h.is_identity();
}

std::uint64_t StabChain::rank_from_base_images(Point* imgs) const {
    std::uint64_t r = 0;
    const std::size_t k = levels_.size();
    for (std::size_t l = 0; l < k; ++l) {
        const auto& L = levels_[l];
        std::int32_t i = L.pos[imgs[l]];
        if (i < 0) return UINT64_MAX;
        r = r * L.orbit.size() + static_cast<std::uint64_t>(i);
        if (i > 0) {
            const auto& inv = L.trans_inv[i];
            for (std::size_t m = l + 1; m < k; ++m) imgs[m] = inv[imgs[m]];
        }
    }
    return r;
}

std::uint64_t StabChain::rank(const Perm& g) const {
    Point buf[64];
    std::vector<Point> big;
    Point* imgs = buf;
    if (levels_.size() > 64) {
        big.resize(levels_.size());
        imgs = big.data();
    }
    for (std::size_t l = 0; l < levels_.size(); ++l) imgs[l] = g[levels_[l].base];
    std::uint64_t r = rank_from_base_images(imgs);
    if (r == UINT64_MAX) fail(Errc::ElementNotInGroup, "rank of a non-member");
    return r;
}

std::optional<std::uint64_t> StabChain::rank_if_member(const Perm& g) const {
    if (g.degree() != n_) fail(Errc::DegreeMismatch, "rank with wrong degree");
    Perm h = g;
    std::uint64_t r = 0;
    for (const auto& L : levels_) {
        std::int32_t i = L.pos[h[L.base]];
        if (i < 0) return std::nullopt;
        r = r * L.orbit.size() + static_cast<std::uint64_t>(i);
        if (i > 0) h = h * L.trans_inv[i];
    }
    if (!h.is_identity()) return std::nullopt;
    return r;
}

void StabChain::unrank_into(std::uint64_t r, Point* img) const {
    std::uint32_t digit[64];
    std::vector<std::uint32_t> big;
    std::uint32_t* dg = digit;
    if (levels_.size() > 64) {
        big.resize(levels_.size());
        dg = big.data();
    }
    for (std::size_t l = levels_.size(); l-- > 0;) {
        dg[l] = static_cast<std::uint32_t>(r % levels_[l].orbit.size());
        r /= levels_[l].orbit.size();
    }
    std::iota(img, img + n_, Point{0});
    for (std::size_t l = levels_.size(); l-- > 0;) {
        if (dg[l] == 0) continue;
        const auto& t = levels_[l].trans[dg[l]];
        for (std::size_t i = 0; i < n_; ++i) img[i] = t[img[i]];
    }
}

Perm StabChain::unrank(std::uint64_t r) const {
    std::vector<Point> img(n_);
    unrank_into(r, img.data());
    return Perm(std::move(img));
}

Perm StabChain::random_element(Rng& rng) const {
    std::vector<Point> img(n_);
    std::iota(img.begin(), img.end(), Point{0});
    for (std::size_t l = levels_.size(); l-- > 0;) {
        auto d = uniform_below(rng, levels_[l].orbit.size());
        if (d == 0) continue;
        const auto& t = levels_[l].trans[d];
        for (auto& x : img) x = t[x];
    }
    return Perm(std::move(img));
}

void StabChain::extend_orbit(std::size_t l) {
    auto& L = levels_[l];
    if (L.orbit.empty()) {
        L.pos.assign(n_, -1);
        L.orbit.push_back(L.base);
        L.pos[L.base] = 0;
        L.trans.emplace_back(n_);
        L.trans_inv.emplace_back(n_);
    }
    for (std::size_t i = 0; i < L.orbit.size(); ++i) {
        for (const auto& s : L.gens) {
            Point g = s[L.orbit[i]];
            if (L.pos[g] >= 0) continue;
            L.pos[g] = static_cast<std::int32_t>(L.orbit.size());
            L.orbit.push_back(g);
            L.trans.push_back(L.trans[i] * s);
            L.trans_inv.push_back(s.inverse() * L.trans_inv[i]);
        }
    }
}

void StabChain::add_strong_generator(const Perm& h, std::size_t drop) {
    if (drop == levels_.size()) {
        Point moved = 0;
        while (moved < n_ && h[moved] == moved) ++moved;
        if (moved == n_) return;
        ChainLevel L;
        L.base = moved;
        levels_.push_back(std::move(L));
    }
    levels_[drop].gens.push_back(h);
    extend_orbit(drop);
}

bool StabChain::sift_and_add(const Perm& g) {
    if (g.degree() != n_) fail(Errc::DegreeMismatch, "generator of wrong degree");
    auto [h, drop] = sift(g);
    if (drop == levels_.size() && h.is_identity()) return false;
    add_strong_generator(h, drop);
    for (std::size_t l = 0; l < drop; ++l) {
        levels_[l].gens.push_back(h);
        extend_orbit(l);
    }
    return true;
}

void StabChain::complete() {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
        bool restarted = false;
        std::size_t li = static_cast<std::size_t>(i);
        for (std::size_t b = 0; b < levels_[li].gens.size() && !restarted; ++b) {
            if (levels_[li].checked.size() <= b) levels_[li].checked.resize(b + 1);
            for (std::size_t a = 0; a < levels_[li].orbit.size(); ++a) {
                auto& row = levels_[li].checked[b];
                if (row.size() <= a) row.resize(levels_[li].orbit.size(), 0);
                if (row[a]) continue;
                row[a] = 1;
                const auto& L = levels_[li];
                const Perm& s = L.gens[b];
                Point img = s[L.orbit[a]];
                Perm sch = L.trans[a] * s * L.trans_inv[L.pos[img]];
                if (sch.is_identity()) continue;
                auto [h, drop] = sift(sch, li + 1);
                if (drop == levels_.size() && h.is_identity()) continue;
                add_strong_generator(h, drop);
                for (std::size_t l = li + 1; l < drop; ++l) {
                    levels_[l].gens.push_back(h);
                    extend_orbit(l);
                }
                i = static_cast<std::ptrdiff_t>(drop);
                restarted = true;
                break;
            }
        }
        if (!restarted) --i;
    }
}

StabChain StabChain::build(std::size_t degree, const std::vector<Perm>& gens) {
    StabChain c(degree);
    for (const auto& g : gens) {
        if (g.degree() != degree) fail(Errc::DegreeMismatch, "generator of wrong degree");
        if (!g.is_identity()) c.sift_and_add(g);
    }
    c.complete();
    return c;
}

namespace {

class ProductReplacement {
public:
    ProductReplacement(std::size_t degree, const std::vector<Perm>& gens, std::uint64_t seed)
        : rng_(make_stream(seed, gens.size())), acc_(degree) {
        for (const auto& g : gens)
            if (!g.is_identity()) slots_.push_back(g);
        if (slots_.empty()) slots_.emplace_back(degree);
        std::size_t base = slots_.size();
        while (slots_.size() < 10) slots_.push_back(slots_[slots_.size() % base]);
        for (int i = 0; i < 40; ++i) next();
    }
    Perm next() {
        std::size_t n = slots_.size();
        std::size_t i = uniform_below(rng_, n), j = uniform_below(rng_, n - 1);
        if (j >= i) ++j;
        bool left = uniform_below(rng_, 2), inv = uniform_below(rng_, 2);
        const Perm other = inv ? slots_[j].inverse() : slots_[j];
        slots_[i] = left ? other * slots_[i] : slots_[i] * other;
        acc_ = acc_ * slots_[i];
        return acc_;
    }

private:
    Rng rng_;
    std::vector<Perm> slots_;
    Perm acc_;
};

}  // namespace

StabChain StabChain::build_with_order(std::size_t degree, const std::vector<Perm>& gens, std::uint64_t target,
                                      std::uint64_t seed) {
    StabChain c(degree);
    for (const auto& g : gens) {
        if (g.degree() != degree) fail(Errc::DegreeMismatch, "generator of wrong degree");
        if (!g.is_identity()) c.sift_and_add(g);
    }
    if (c.order() == target) return c;
    ProductReplacement pr(degree, gens, seed);
    int stagnant = 0;
    while (stagnant < 12) {
        if (c.sift_and_add(pr.next())) {
            stagnant = 0;
            std::uint64_t o = c.order();
            if (o == target) return c;
            if (o > target) break;
        } else {
            ++stagnant;
        }
    }
    c.complete();
    return c;
}

// ---------------------------------------------------------------- PermGroup

struct PermGroup::State {
    std::size_t degree = 0;
    std::vector<Perm> gens;
    std::optional<std::uint64_t> known_order;
    std::once_flag chain_once;
    StabChain chain;
    std::once_flag orbits_once;
    std::vector<std::vector<Point>> orbits;
    std::once_flag prim_once;
    bool primitive = false;
};

PermGroup::PermGroup() : state_(std::make_shared<State>()) {
    std::call_once(state_->chain_once, [] {});
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens, std::optional<std::uint64_t> known_order)
    : state_(std::make_shared<State>()) {
    for (const auto& g : gens)
        if (g.degree() != degree) fail(Errc::DegreeMismatch, "generator of wrong degree");
    state_->degree = degree;
    state_->gens = std::move(gens);
    state_->known_order = known_order;
    state_->chain = StabChain(degree);
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens, StabChain chain)
    : state_(std::make_shared<State>()) {
    state_->degree = degree;
    state_->gens = std::move(gens);
    state_->chain = std::move(chain);
    std::call_once(state_->chain_once, [] {});
}

std::size_t PermGroup::degree() const { return state_->degree; }
const std::vector<Perm>& PermGroup::gens() const { return state_->gens; }

const StabChain& PermGroup::chain() const {
    std::call_once(state_->chain_once, [this] {
        auto& s = *state_;
        if (s.known_order) {
            s.chain = StabChain::build_with_order(s.degree, s.gens, *s.known_order);
            if (s.chain.order() != *s.known_order)
                fail(Errc::ValidationFailed, "generators give order " + std::to_string(s.chain.order()) +
                                                 ", expected " + std::to_string(*s.known_order));
        } else {
            s.chain = StabChain::build(s.degree, s.gens);
        }
    });
    return state_->chain;
}

std::uint64_t PermGroup::order() const { return chain().order(); }

bool PermGroup::contains(const Perm& x) const { return chain().contains(x); }

Perm PermGroup::random_element(Rng& rng) const { return chain().random_element(rng); }

const std::vector<std::vector<Point>>& PermGroup::orbits() const {
    std::call_once(state_->orbits_once, [this] { state_->orbits = orbits_of(degree(), gens()); });
    return state_->orbits;
}

bool PermGroup::is_primitive() const {
    std::call_once(state_->prim_once, [this] {
        if (!is_transitive() || degree() < 2) {
            state_->primitive = degree() < 2 ? true : false;
            if (degree() >= 2 && !is_transitive()) state_->primitive = false;
            return;
        }
        for (std::size_t b = 1; b < degree(); ++b) {
            auto blk = minimal_block(degree(), gens(), 0, static_cast<Point>(b));
            std::size_t same = 0;
            for (auto v : blk) same += v == blk[0];
            if (same < degree()) return;
        }
        state_->primitive = true;
    });
    return state_->primitive;
}

bool PermGroup::is_abelian() const {
    const auto& g = gens();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (g[i] * g[j] != g[j] * g[i]) return false;
    return true;
}

bool PermGroup::is_cyclic() const {
    if (!is_abelian()) return false;
    std::uint64_t n = order();
    if (n == 1) return true;
    // An abelian group is cyclic iff it has an element of order |G|; the
    // product of suitable powers of generators realizes the exponent.
    std::uint64_t exponent = 1;
    for (const auto& g : gens()) exponent = std::lcm(exponent, g.order());
    return exponent == n;
}

std::vector<std::vector<Point>> orbits_of(std::size_t degree, const std::vector<Perm>& gens) {
    std::vector<std::int32_t> id(degree, -1);
    std::vector<std::vector<Point>> out;
    for (std::size_t p = 0; p < degree; ++p) {
        if (id[p] >= 0) continue;
        std::vector<Point> orb{static_cast<Point>(p)};
        id[p] = static_cast<std::int32_t>(out.size());
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const auto& g : gens) {
                Point y = g[orb[i]];
                if (id[y] < 0) {
                    id[y] = static_cast<std::int32_t>(out.size());
                    orb.push_back(y);
                }
            }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

std::size_t count_orbits(std::size_t degree, const std::vector<Perm>& gens) {
    UnionFind uf(degree);
    std::size_t comps = degree;
    for (const auto& g : gens)
        for (std::size_t p = 0; p < degree; ++p)
            if (uf.unite(static_cast<std::uint32_t>(p), g[p])) --comps;
    return comps;
}

}  // namespace

std::vector<std::uint32_t> minimal_block(std::size_t degree, const std::vector<Perm>& gens, Point a, Point b) {
    UnionFind uf(degree);
    std::vector<std::pair<Point, Point>> queue;
    if (uf.unite(a, b)) queue.emplace_back(a, b);
    for (std::size_t k = 0; k < queue.size(); ++k) {
        auto [x, y] = queue[k];
        for (const auto& g : gens)
            if (uf.unite(g[x], g[y])) queue.emplace_back(g[x], g[y]);
    }
    std::vector<std::uint32_t> out(degree);
    for (std::size_t p = 0; p < degree; ++p) out[p] = uf.find(static_cast<std::uint32_t>(p));
    return out;
}

bool generates_order(std::size_t degree, const std::vector<Perm>& elems, std::uint64_t target,
                     const std::vector<std::vector<Point>>* target_orbits, bool primitive) {
    std::vector<Perm> nonid;
    for (const auto& e : elems)
        if (!e.is_identity()) nonid.push_back(e);
    if (nonid.empty()) return target == 1;
    if (target_orbits && count_orbits(degree, nonid) != target_orbits->size()) return false;
    if (primitive && degree > 2) {
        for (std::size_t b = 1; b < degree; ++b) {
            auto blk = minimal_block(degree, nonid, 0, static_cast<Point>(b));
            std::size_t same = 0;
            for (auto v : blk) same += v == blk[0];
            if (same < degree) return false;
        }
    }
    return StabChain::build_with_order(degree, nonid, target).order() == target;
}

bool is_generating(const PermGroup& G, const std::vector<Perm>& elems) {
    for (const auto& e : elems) {
        if (e.degree() != G.degree()) fail(Errc::DegreeMismatch, "element of wrong degree");
        if (!G.contains(e)) fail(Errc::ElementNotInGroup, "element " + e.cycles() + " is not in the group");
    }
    return generates_order(G.degree(), elems, G.order(), &G.orbits(), false);
}

std::uint64_t order_of_generated(std::size_t degree, const std::vector<Perm>& elems) {
    return StabChain::build(degree, elems).order();
}

ConjOrbit conj_orbit_with_stabilizer(const PermGroup& G, const Perm& x) {
    if (x.degree() != G.degree()) fail(Errc::DegreeMismatch, "element of wrong degree");
    const StabChain& ch = G.chain();
    auto r0 = ch.rank_if_member(x);
    if (!r0) fail(Errc::ElementNotInGroup, "element " + x.cycles() + " is not in the group");
    std::vector<Point> base = ch.base();
    std::vector<Point> buf(base.size());
    // Conjugation on ranks: base images of g^-1 y g are g[y[g^-1[b]]].
    auto act = [&](std::uint64_t r, const Perm& g) {
        Perm y = ch.unrank(r);
        Perm gi = g.inverse();
        for (std::size_t l = 0; l < base.size(); ++l) buf[l] = g[y[gi[base[l]]]];
        return ch.rank_from_base_images(buf.data());
    };
    auto res = orbit_stabilizer<std::uint64_t>(G, *r0, act);
    return {res.orbit.size(), res.stabilizer};
}

PermGroup normal_closure(const PermGroup& G, const std::vector<Perm>& elems) {
    std::vector<Perm> hg;
    StabChain ch(G.degree());
    for (const auto& e : elems)
        if (!e.is_identity() && ch.sift_and_add(e)) hg.push_back(e);
    ch.complete();
    for (std::size_t i = 0; i < hg.size(); ++i) {
        for (const auto& g : G.gens()) {
            Perm c = conjugate(hg[i], g);
            if (!ch.contains(c)) {
                ch.sift_and_add(c);
                ch.complete();
                hg.push_back(c);
            }
        }
    }
    return PermGroup(G.degree(), hg, std::move(ch));
}

PermGroup derived_subgroup(const PermGroup& G) {
    std::vector<Perm> comms;
    const auto& g = G.gens();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) comms.push_back(commutator(g[i], g[j]));
    PermGroup D = normal_closure(G, comms);
    if (G.order() % D.order() != 0) fail(Errc::Internal, "derived subgroup order does not divide");
    return D;
}

bool is_subgroup(const PermGroup& H, const PermGroup& G) {
    if (H.degree() != G.degree()) return false;
    for (const auto& h : H.gens())
        if (!G.contains(h)) return false;
    return true;
}

std::vector<Perm> enumerate_by_closure(std::size_t degree, const std::vector<Perm>& gens, std::size_t limit) {
    std::unordered_set<Perm, PermHash> seen;
    std::vector<Perm> out{Perm(degree)};
    seen.insert(out[0]);
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& g : gens) {
            Perm y = out[i] * g;
            if (seen.insert(y).second) {
                out.push_back(y);
                if (out.size() > limit) fail(Errc::BudgetExceeded, "closure exceeds limit");
            }
        }
    }
    return out;
}

}  // namespace spreadlab
