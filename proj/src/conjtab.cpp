#include "spreadlab/conjtab.hpp"

#include <algorithm>
#include <numeric>

#include "spreadlab/error.hpp"
#include "spreadlab/ffield.hpp"

namespace spreadlab {

ClassTable::ClassTable(PermGroup T, std::optional<Perm> theta, std::vector<ConjClass> classes,
                       std::vector<std::uint32_t> id_of_rank)
    : T_(std::move(T)), theta_(std::move(theta)), classes_(std::move(classes)), id_of_rank_(std::move(id_of_rank)) {
    if (theta_) theta_inv_ = theta_->inverse();
}

std::optional<std::uint32_t> ClassTable::find_class(const Perm& x) const {
    if (x.degree() != T_.degree()) return std::nullopt;
    auto r = T_.chain().rank_if_member(theta_ ? x * theta_inv_ : x);
    if (!r) return std::nullopt;
    return id_of_rank_[*r];
}

std::uint32_t ClassTable::class_of(const Perm& x) const {
    auto c = find_class(x);
    if (!c) fail(Errc::NotInUnderlyingSet, "element outside the classified set");
    return *c;
}

Perm ClassTable::member(std::uint64_t rank) const {
    Perm t = T_.chain().unrank(rank);
    return theta_ ? t * *theta_ : t;
}

std::vector<std::uint64_t> ClassTable::ranks_of(std::uint32_t id) const {
    std::vector<std::uint64_t> out;
    out.reserve(classes_.at(id).size);
    for (std::uint64_t r = 0; r < id_of_rank_.size(); ++r)
        if (id_of_rank_[r] == id) out.push_back(r);
    return out;
}

namespace {

ClassTable build(const PermGroup& T, const std::optional<Perm>& theta, std::uint64_t budget) {
    const StabChain& ch = T.chain();
    const std::uint64_t N = T.order();
    if (N > budget) fail(Errc::BudgetExceeded, "group above the class enumeration budget");
    const std::size_t n = T.degree();
    const std::size_t k = ch.depth();
    std::vector<Point> base = ch.base();
    Perm th = theta ? *theta : Perm(n);
    Perm thi = th.inverse();
    std::vector<Perm> gens = T.gens(), ginv;
    for (const auto& g : gens) ginv.push_back(g.inverse());

    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> id(N, kNone);
    struct Raw {
        std::vector<Point> best;
        std::uint64_t size = 0;
    };
    std::vector<Raw> raw;
    std::vector<Point> t(n), x(n), imgs(k);
    std::vector<std::uint64_t> queue;
    for (std::uint64_t start = 0; start < N; ++start) {
        if (id[start] != kNone) continue;
        auto cid = static_cast<std::uint32_t>(raw.size());
        Raw cls;
        queue.clear();
        queue.push_back(start);
        id[start] = cid;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            ch.unrank_into(queue[head], t.data());
            for (std::size_t i = 0; i < n; ++i) x[i] = th[t[i]];
            if (cls.best.empty() || std::lexicographical_compare(x.begin(), x.end(), cls.best.begin(), cls.best.end()))
                cls.best = x;
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                const Perm& g = gens[gi];
                const Perm& gv = ginv[gi];
                // conjugate g^-1 x g, then strip theta on the right
                for (std::size_t l = 0; l < k; ++l) imgs[l] = thi[g[x[gv[base[l]]]]];
                std::uint64_t r = ch.rank_from_base_images(imgs.data());
                if (r == UINT64_MAX) fail(Errc::NotNormalizing, "conjugate left the coset");
                if (id[r] == kNone) {
                    id[r] = cid;
                    queue.push_back(r);
                }
            }
        }
        cls.size = queue.size();
        raw.push_back(std::move(cls));
    }

    std::vector<ConjClass> classes(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        classes[i].rep = Perm(raw[i].best);
        classes[i].size = raw[i].size;
        classes[i].centralizer = N / raw[i].size;
        classes[i].order = classes[i].rep.order();
    }
    std::vector<std::uint32_t> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto& A = classes[a];
        const auto& B = classes[b];
        if (A.order != B.order) return A.order < B.order;
        if (A.size != B.size) return A.size < B.size;
        return A.rep.images() < B.rep.images();
    });
    std::vector<std::uint32_t> new_id(raw.size());
    std::vector<ConjClass> sorted;
    for (std::uint32_t i = 0; i < perm.size(); ++i) {
        new_id[perm[i]] = i;
        sorted.push_back(std::move(classes[perm[i]]));
    }
    for (auto& v : id) v = new_id[v];
    ClassTable out(T, theta, std::move(sorted), std::move(id));
    return out;
}

}  // namespace

ClassTable conjugacy_classes(const PermGroup& G, std::uint64_t budget) {
    ClassTable t = build(G, std::nullopt, budget);
    // power maps
    std::vector<ConjClass> cls = t.classes();
    for (auto& c : cls) {
        for (std::uint64_t r : prime_factors(c.order))
            c.power.emplace_back(r, t.class_of(c.rep.pow(static_cast<std::int64_t>(r))));
    }
    std::vector<std::uint32_t> ids(t.underlying_size());
    for (std::uint64_t r = 0; r < ids.size(); ++r) ids[r] = t.id_of_rank(r);
    return ClassTable(G, std::nullopt, std::move(cls), std::move(ids));
}

ClassTable coset_classes(const PermGroup& T, const Perm& theta, std::uint64_t budget) {
    if (theta.degree() != T.degree()) fail(Errc::DegreeMismatch, "automorphism of the wrong degree");
    Perm ti = theta.inverse();
    for (const auto& g : T.gens())
        if (!T.contains(ti * g * theta)) fail(Errc::NotNormalizing, "theta does not normalize T");
    return build(T, theta, budget);
}

ClassKey class_key(const ClassTable& t, std::uint32_t id) {
    const ConjClass& c = t[id];
    ClassKey k{c.order, c.centralizer, {}};
    for (auto [r, j] : c.power) k.power_centralizers.push_back(t[j].centralizer);
    return k;
}

}  // namespace spreadlab
