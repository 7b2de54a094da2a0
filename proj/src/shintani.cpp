#include "spreadlab/shintani.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "spreadlab/error.hpp"
#include "spreadlab/subfpr.hpp"

namespace spreadlab {

bool CorrespondenceReport::all_match() const {
    return std::all_of(stats.begin(), stats.end(), [](const StatisticVerdict& s) { return s.match; });
}

namespace {

std::string join(const std::vector<std::uint64_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

StatisticVerdict compare(std::string name, std::vector<std::uint64_t> big, std::vector<std::uint64_t> small) {
    std::sort(big.begin(), big.end());
    std::sort(small.begin(), small.end());
    StatisticVerdict v;
    v.name = std::move(name);
    v.match = big == small;
    v.big = std::move(big);
    v.small = std::move(small);
    return v;
}

}  // namespace

std::string CorrespondenceReport::to_text() const {
    std::ostringstream os;
    os << "big = " << big_id << '\n' << "small = " << small_id << '\n' << "e = " << e << '\n';
    for (const auto& s : stats) {
        os << "stat." << s.name << ".big = " << join(s.big) << '\n';
        os << "stat." << s.name << ".small = " << join(s.small) << '\n';
        os << "stat." << s.name << ".verdict = " << (s.match ? "match" : "mismatch") << '\n';
    }
    for (const auto& s : info) {
        os << "info." << s.name << ".big = " << join(s.big) << '\n';
        os << "info." << s.name << ".small = " << join(s.small) << '\n';
    }
    os << "pairing = " << (pairing_perfect ? "perfect" : "imperfect") << '\n';
    for (std::size_t i = 0; i < ambiguities.size(); ++i) os << "pairing.ambiguous." << i << " = " << ambiguities[i] << '\n';
    os << "verdict = " << (all_match() ? "match" : "mismatch") << '\n';
    return os.str();
}

ClassTable coset_or_ordinary(const PermGroup& T, const Perm& theta, std::uint64_t budget) {
    if (T.contains(theta)) return conjugacy_classes(T, budget);
    return coset_classes(T, theta, budget);
}

std::vector<std::uint64_t> centralizer_profile(const ClassTable& table) {
    std::vector<std::uint64_t> out;
    for (const auto& c : table.classes()) out.push_back(c.centralizer);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> epower_order_profile(const ClassTable& table, std::uint64_t e) {
    std::vector<std::uint64_t> out;
    for (const auto& c : table.classes()) out.push_back(c.rep.pow(static_cast<std::int64_t>(e)).order());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::uint32_t>> subspaces(const VectorDomain& dom, const FormSpec& form, unsigned k,
                                                  SubspaceFlavor flavor, std::uint64_t budget) {
    if (dom.kind() != DomainKind::Projective) fail(Errc::UnsupportedCase, "subspaces are read off projective points");
    if (k < 1 || k > dom.dim()) fail(Errc::InvalidArgument, "subspace dimension out of range");
    const Field& F = *dom.field();
    const std::uint32_t q = F.q();
    struct Space {
        std::vector<Vec> basis;
        std::vector<std::uint32_t> points;
    };
    auto span = [&](const std::vector<Vec>& basis) {
        std::vector<std::uint32_t> pts;
        std::uint64_t total = checked_pow(q, static_cast<unsigned>(basis.size()));
        for (std::uint64_t code = 1; code < total; ++code) {
            Vec v(dom.dim(), 0);
            std::uint64_t c = code;
            for (const Vec& b : basis) {
                Fq a = static_cast<Fq>(c % q);
                c /= q;
                if (a)
                    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(v[i], F.mul(a, b[i]));
            }
            pts.push_back(dom.index_of(dom.normalize(v)));
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    };
    std::map<std::vector<std::uint32_t>, std::vector<Vec>> level;
    for (std::uint32_t i = 0; i < dom.size(); ++i) level.emplace(std::vector<std::uint32_t>{i}, std::vector<Vec>{dom.point(i)});
    for (unsigned d = 1; d < k; ++d) {
        std::map<std::vector<std::uint32_t>, std::vector<Vec>> next;
        for (const auto& [pts, basis] : level)
            for (std::uint32_t p = 0; p < dom.size(); ++p) {
                if (std::binary_search(pts.begin(), pts.end(), p)) continue;
                std::vector<Vec> b = basis;
                b.push_back(dom.point(p));
                auto s = span(b);
                if (!next.count(s)) next.emplace(std::move(s), std::move(b));
                if (next.size() > budget) fail(Errc::BudgetExceeded, "too many subspaces");
            }
        level = std::move(next);
    }
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& [pts, basis] : level) {
        MatF g(dom.field(), k);
        bool iso = true;
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j) {
                g.at(i, j) = form.bilinear(basis[i], basis[j]);
                if (g.at(i, j)) iso = false;
            }
        bool keep = flavor == SubspaceFlavor::TotallyIsotropic ? iso : g.det() != 0;
        if (keep) out.push_back(pts);
    }
    return out;
}

std::vector<std::uint64_t> fixed_subspace_profile(const ClassTable& table,
                                                  const std::vector<std::vector<std::uint32_t>>& spaces) {
    std::set<std::vector<std::uint32_t>> index(spaces.begin(), spaces.end());
    std::vector<std::uint64_t> out;
    for (const auto& c : table.classes()) {
        std::uint64_t fixed = 0;
        for (const auto& s : spaces) {
            std::vector<std::uint32_t> img;
            img.reserve(s.size());
            for (auto p : s) img.push_back(c.rep[p]);
            std::sort(img.begin(), img.end());
            fixed += img == s;
        }
        out.push_back(fixed);
    }
    return out;
}

OrthogonalProfile orthogonal_profile(const ClassicalGroup& G, const ClassTable& table) {
    OrthogonalProfile out;
    for (const auto& c : table.classes()) {
        auto [plus, minus] = fixed_form_counts(G, c.rep);
        out.plus.push_back(plus);
        out.minus.push_back(minus);
        out.total.push_back(plus + minus);
    }
    return out;
}

bool similarity_norm_identity(const SemilinearMap& gs, const FormSpec& form, std::uint64_t e) {
    const FieldPtr& F = form.field;
    const std::int64_t f = F->f();
    std::int64_t i = ((gs.frob % f) + f) % f;
    std::int64_t d = std::gcd(i, f);  // degree of the fixed field
    if (d == 0) d = f;
    if (static_cast<std::uint64_t>(f / d) != e) fail(Errc::InvalidArgument, "e is not the order of sigma");
    Fq tau = similarity_tau(gs.A, form);
    SemilinearMap power = gs.pow(static_cast<std::int64_t>(e));
    if (!power.is_linear()) fail(Errc::Internal, "e-th power kept a field part");
    Fq lhs = similarity_tau(power.A, form);
    FieldPtr sub = make_field(F->p(), static_cast<unsigned>(d));
    Fq rhs = F->embed(F->norm(tau, *sub), *sub);
    return lhs == rhs;
}

MatF random_similarity(unsigned m, const FieldPtr& F, Rng& rng) {
    FormSpec form = standard_symplectic_form(m, F);
    std::size_t n = 2 * m;
    MatF g = MatF::identity(F, n);
    for (int t = 0; t < 12; ++t) {
        Vec v(n);
        for (auto& x : v) x = static_cast<Fq>(uniform_below(rng, F->q()));
        if (std::all_of(v.begin(), v.end(), [](Fq x) { return x == 0; })) continue;
        g = g * transvection(form, v, static_cast<Fq>(1 + uniform_below(rng, F->q() - 1)));
    }
    MatF d = MatF::identity(F, n);
    Fq mu = static_cast<Fq>(1 + uniform_below(rng, F->q() - 1));
    for (unsigned i = 0; i < m; ++i) d.at(2 * i, 2 * i) = mu;
    return g * d;
}

bool norm_square_coherence(const FieldPtr& F, const FieldPtr& sub) {
    for (Fq x = 1; x < F->q(); ++x)
        if (F->is_square(x) != sub->is_square(F->norm(x, *sub))) return false;
    return true;
}

namespace {

void pair_classes(CorrespondenceReport& rep, const ClassTable& bt, const ClassTable& st) {
    // Pair classes by (order of the e-th power, centralizer order).
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<int, int>> keys;
    for (const auto& c : bt.classes())
        keys[{c.rep.pow(static_cast<std::int64_t>(rep.e)).order(), c.centralizer}].first++;
    for (const auto& c : st.classes()) keys[{c.order, c.centralizer}].second++;
    rep.pairing_perfect = true;
    for (const auto& [k, n] : keys) {
        if (n.first != n.second) rep.pairing_perfect = false;
        if (n.first > 1 || n.second > 1)
            rep.ambiguities.push_back("order " + std::to_string(k.first) + " centralizer " + std::to_string(k.second) +
                                      " x" + std::to_string(std::max(n.first, n.second)));
    }
}

void basic_stats(CorrespondenceReport& rep, const ClassTable& bt, const ClassTable& st) {
    rep.big_classes = bt.size();
    rep.small_classes = st.size();
    rep.stats.push_back(compare("class_count", {bt.size()}, {st.size()}));
    rep.stats.push_back(compare("centralizer_orders", centralizer_profile(bt), centralizer_profile(st)));
    rep.stats.push_back(compare("epower_orders", epower_order_profile(bt, rep.e), epower_order_profile(st, 1)));
}

}  // namespace

std::uint64_t order_modulo(const PermGroup& T, const Perm& theta) {
    std::uint64_t e = 1;
    Perm t = theta;
    while (!T.contains(t)) {
        t = t * theta;
        ++e;
    }
    return e;
}

CorrespondenceReport shintani_verify_perm(const PermGroup& T, const Perm& theta, const PermGroup& small,
                                          const std::string& big_id, const std::string& small_id) {
    CorrespondenceReport rep;
    rep.big_id = big_id;
    rep.small_id = small_id;
    rep.e = order_modulo(T, theta);
    ClassTable bt = coset_or_ordinary(T, theta);
    ClassTable st = conjugacy_classes(small);
    basic_stats(rep, bt, st);
    pair_classes(rep, bt, st);
    return rep;
}

CorrespondenceReport shintani_verify(const ClassicalGroup& big, const ClassicalGroup& small, const ShintaniOptions& opt) {
    CorrespondenceReport rep;
    rep.big_id = big.name();
    rep.small_id = small.name();
    rep.e = big.theta_order;
    Perm theta = big.theta ? *big.theta : big.base.identity();
    ClassTable bt = coset_or_ordinary(big.base, theta);
    ClassTable st = conjugacy_classes(small.group);
    basic_stats(rep, bt, st);
    {
        auto bs = subspaces(*big.domain, big.form, opt.subspace_k, opt.flavor);
        auto ss = subspaces(*small.domain, small.form, opt.subspace_k, opt.flavor);
        std::string name = "fixed_subspaces_k" + std::to_string(opt.subspace_k) +
                           (opt.flavor == SubspaceFlavor::TotallyIsotropic ? "_isotropic" : "_nondegenerate");
        rep.stats.push_back(compare(name, fixed_subspace_profile(bt, bs), fixed_subspace_profile(st, ss)));
    }
    if (opt.orthogonal && big.spec.field->p() == 2) {
        auto bo = orthogonal_profile(big, bt);
        auto so = orthogonal_profile(small, st);
        rep.info.push_back(compare("orthogonal_plus", bo.plus, so.plus));
        rep.info.push_back(compare("orthogonal_minus", bo.minus, so.minus));
        rep.stats.push_back(compare("orthogonal_total", bo.total, so.total));
        std::uint64_t bmin = *std::min_element(bo.total.begin(), bo.total.end());
        std::uint64_t smin = *std::min_element(so.total.begin(), so.total.end());
        StatisticVerdict v;
        v.name = "orthogonal_min_count";
        v.big = {bmin};
        v.small = {smin};
        v.match = bmin >= 1 && smin >= 1;
        rep.stats.push_back(v);
    }
    pair_classes(rep, bt, st);
    return rep;
}

SzCheck sz_fixed_subgroup_check() {
    ClassicalGroup S = classical_group(parse_group_spec("Sp4(2)"));
    const PermGroup& G = S.group;
    const StabChain& c = G.chain();
    const std::uint64_t n = G.order();
    std::vector<Perm> elems;
    for (std::uint64_t r = 0; r < n; ++r) elems.push_back(c.unrank(r));
    const auto& gens = G.gens();
    // Spanning tree of the Cayley graph from the identity.
    std::vector<std::uint64_t> order{c.rank(G.identity())};
    std::vector<std::uint64_t> parent(n, UINT64_MAX), via(n, 0);
    parent[order[0]] = order[0];
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j) {
            std::uint64_t r = c.rank(elems[order[i]] * gens[j]);
            if (parent[r] != UINT64_MAX) continue;
            parent[r] = order[i];
            via[r] = j;
            order.push_back(r);
        }
    ClassTable table = conjugacy_classes(G);

    // Images of every element under the map sending gens to `imgs`, or
    // nothing when that map is not an automorphism.
    auto extend = [&](const std::vector<Perm>& imgs) -> std::optional<std::vector<Perm>> {
        std::vector<Perm> img(n);
        img[order[0]] = G.identity();
        for (std::size_t i = 1; i < order.size(); ++i) img[order[i]] = img[parent[order[i]]] * imgs[via[order[i]]];
        for (std::uint64_t r = 0; r < n; ++r)
            for (std::size_t j = 0; j < gens.size(); ++j)
                if (img[c.rank(elems[r] * gens[j])] != img[r] * imgs[j]) return std::nullopt;
        std::set<std::vector<Point>> distinct;
        for (const auto& p : img) distinct.insert(p.images());
        if (distinct.size() != n) return std::nullopt;
        return img;
    };

    SzCheck out;
    std::optional<std::vector<Perm>> alpha;
    std::vector<std::vector<std::uint64_t>> candidates(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::uint64_t r = 0; r < n; ++r)
            if (elems[r].order() == gens[j].order() && table[table.class_of(elems[r])].size ==
                                                           table[table.class_of(gens[j])].size)
                candidates[j].push_back(r);
    // Search over generator images; an automorphism moving some class is outer.
    std::vector<std::size_t> pick(gens.size(), 0);
    while (!alpha) {
        std::vector<Perm> imgs;
        for (std::size_t j = 0; j < gens.size(); ++j) imgs.push_back(elems[candidates[j][pick[j]]]);
        ++out.automorphisms_tried;
        if (auto a = extend(imgs)) {
            for (const auto& cl : table.classes())
                if (table.class_of((*a)[c.rank(cl.rep)]) != table.class_of(cl.rep)) {
                    alpha = std::move(a);
                    break;
                }
        }
        std::size_t j = 0;
        while (j < gens.size() && ++pick[j] == candidates[j].size()) pick[j++] = 0;
        if (j == gens.size() && !alpha) fail(Errc::SearchExhausted, "no outer automorphism found");
    }
    const auto& A = *alpha;
    auto apply = [&](const Perm& g, const Perm& cj) { return conjugate(A[c.rank(g)], cj); };
    std::set<std::uint64_t> orders;
    for (std::uint64_t r = 0; r < n; ++r) {
        const Perm& cj = elems[r];
        bool invol = true;
        for (const Perm& g : gens)
            if (apply(apply(g, cj), cj) != g) invol = false;
        if (!invol) continue;
        std::vector<Perm> fixed;
        for (const Perm& g : elems)
            if (apply(g, cj) == g) fixed.push_back(g);
        orders.insert(fixed.size());
        if (fixed.size() == 20 && !out.found_order_20) {
            out.found_order_20 = true;
            std::set<std::uint64_t> eo;
            std::uint64_t fives = 0;
            for (const Perm& g : fixed) {
                eo.insert(g.order());
                fives += g.order() == 5;
                for (const Perm& h : fixed)
                    if (g * h != h * g) out.nonabelian = true;
            }
            out.normal_sylow5 = fives == 4;
            out.element_orders.assign(eo.begin(), eo.end());
        }
    }
    out.fixed_orders.assign(orders.begin(), orders.end());
    return out;
}

}  // namespace spreadlab
