#include "spreadlab/subfpr.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "spreadlab/orbit.hpp"

namespace spreadlab {

namespace {

using RankSet = std::vector<std::uint64_t>;

bool test_bit(const RankSet& b, std::uint64_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
void set_bit(RankSet& b, std::uint64_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

long double to_ld(const Rational& r) { return r.convert_to<long double>(); }

Rational rpow(std::uint64_t q, int e) {
    Rational out = 1;
    for (int i = 0; i < std::abs(e); ++i) out *= q;
    return e < 0 ? Rational(1) / out : out;
}

std::vector<Perm> elements_of(const PermGroup& H, std::uint64_t budget) {
    if (H.order() > budget) fail(Errc::BudgetExceeded, "subgroup too large to enumerate");
    std::vector<Perm> out;
    out.reserve(H.order());
    for (std::uint64_t r = 0; r < H.order(); ++r) out.push_back(H.chain().unrank(r));
    return out;
}

bool is_normal(const PermGroup& G, const PermGroup& H) {
    for (const Perm& g : G.gens())
        for (const Perm& h : H.gens())
            if (!H.contains(conjugate(h, g))) return false;
    return true;
}

std::uint64_t conjugates_containing(const PermGroup& G, const ClassTable& table, std::uint32_t x_class,
                                    const SubgroupHandle& H, std::uint64_t normalizer) {
    Rational c = Rational(G.order()) / normalizer * exact_fpr(G, table, x_class, H);
    if (denominator(c) != 1) fail(Errc::Internal, "non-integral overgroup count");
    return numerator(c).convert_to<std::uint64_t>();
}

}  // namespace

SubgroupHandle make_subgroup(const PermGroup& G, std::vector<Perm> gens, std::string label,
                             std::optional<std::uint64_t> known_order) {
    for (const Perm& g : gens) {
        if (g.degree() != G.degree()) fail(Errc::DegreeMismatch, "generator degree differs from the group");
        if (!G.contains(g)) fail(Errc::ElementNotInGroup, "subgroup generator outside the parent group");
    }
    SubgroupHandle h;
    h.label = std::move(label);
    h.group = PermGroup(G.degree(), gens, known_order);
    h.gens = std::move(gens);
    if (known_order && h.group.order() != *known_order) fail(Errc::ValidationFailed, "subgroup order mismatch");
    return h;
}

unsigned nu(const MatF& x) {
    const Field& F = *x.field();
    std::size_t n = x.dim();
    std::size_t best = 0;
    // ker f(x) splits over the closure into deg f eigenspaces of equal size.
    for (const auto& [f, mult] : poly_factor(F, x.charpoly())) {
        (void)mult;
        std::size_t d = static_cast<std::size_t>(poly_deg(f));
        best = std::max(best, nullity(poly_at(f, x)) / d);
    }
    return static_cast<unsigned>(n - best);
}

unsigned nu(const SemilinearMap& x) {
    if (!x.is_linear()) fail(Errc::NotLinear, "nu is defined for linear elements only");
    return nu(x.A);
}

std::vector<std::uint64_t> class_counts(const ClassTable& table, const SubgroupHandle& H, std::uint64_t budget) {
    if (table.is_coset()) fail(Errc::InvalidArgument, "class counts need an ordinary class table");
    const PermGroup& h = H.group;
    if (h.order() > budget) fail(Errc::BudgetExceeded, "subgroup too large to enumerate");
    std::vector<std::uint64_t> out(table.size(), 0);
    const StabChain& c = h.chain();
    for (std::uint64_t r = 0; r < h.order(); ++r) ++out[table.class_of(c.unrank(r))];
    return out;
}

Rational exact_fpr(const PermGroup& G, const ClassTable& table, std::uint32_t x_class, const SubgroupHandle& H,
                   std::uint64_t budget) {
    if (x_class >= table.size()) fail(Errc::InvalidArgument, "class id out of range");
    if (!is_subgroup(H.group, G)) fail(Errc::ElementNotInGroup, "subgroup not contained in the group");
    auto counts = class_counts(table, H, budget);
    return Rational(counts[x_class]) / table[x_class].size;
}

Rational fpr_by_action(const PermGroup& G, const Perm& x, const SubgroupHandle& H, std::uint64_t budget) {
    if (G.order() > budget) fail(Errc::BudgetExceeded, "group too large for the action count");
    const StabChain& c = G.chain();
    std::vector<Point> img(G.degree());
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < G.order(); ++r) {
        c.unrank_into(r, img.data());
        Perm g(img);
        if (H.group.contains(conjugate(x, g))) ++hits;
    }
    return Rational(hits) / G.order();
}

std::uint64_t normalizer_order(const PermGroup& G, const SubgroupHandle& H, std::uint64_t budget) {
    if (G.order() > budget) fail(Errc::BudgetExceeded, "group too large for a normalizer scan");
    const StabChain& c = G.chain();
    std::uint64_t n = 0;
    for (std::uint64_t r = 0; r < G.order(); ++r) {
        Perm g = c.unrank(r);
        bool ok = true;
        for (const Perm& h : H.gens)
            if (!H.group.contains(conjugate(h, g))) {
                ok = false;
                break;
            }
        n += ok;
    }
    return n;
}

std::uint64_t overgroup_count(const PermGroup& G, const ClassTable& table, std::uint32_t x_class,
                              const SubgroupHandle& H) {
    if (G.order() <= 100000) {
        if (normalizer_order(G, H) != H.order()) fail(Errc::NotSelfNormalizing, "subgroup is not self-normalizing");
    } else if (is_normal(G, H.group) && H.order() != G.order()) {
        fail(Errc::NotSelfNormalizing, "subgroup is normal");
    }
    return conjugates_containing(G, table, x_class, H, H.order());
}

std::uint64_t overgroup_count_direct(const PermGroup& G, const Perm& x, const SubgroupHandle& H,
                                     std::uint64_t budget) {
    if (G.order() / H.order() > budget) fail(Errc::BudgetExceeded, "index too large for conjugate listing");
    const StabChain& c = G.chain();
    auto key_of = [&](const std::vector<Perm>& elems) {
        std::vector<std::uint64_t> k;
        k.reserve(elems.size());
        for (const Perm& e : elems) k.push_back(c.rank(e));
        std::sort(k.begin(), k.end());
        return k;
    };
    std::vector<Perm> base = elements_of(H.group, kFprBudget);
    std::map<std::vector<std::uint64_t>, std::size_t> seen;
    std::vector<std::vector<Perm>> queue{base};
    seen.emplace(key_of(base), 0);
    std::uint64_t rx = c.rank(x), count = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto k = key_of(queue[i]);
        if (std::binary_search(k.begin(), k.end(), rx)) ++count;
        for (const Perm& g : G.gens()) {
            std::vector<Perm> next;
            next.reserve(queue[i].size());
            for (const Perm& e : queue[i]) next.push_back(conjugate(e, g));
            if (seen.emplace(key_of(next), queue.size()).second) queue.push_back(std::move(next));
        }
        queue[i].clear();
        queue[i].shrink_to_fit();
    }
    return count;
}

std::string ProbBoundReport::to_text() const {
    std::ostringstream os;
    os << "s_class = " << s_class << '\n';
    for (std::size_t i = 0; i < overgroups.size(); ++i)
        os << "overgroup." << i << " = " << overgroups[i].first << " ; " << overgroups[i].second << '\n';
    for (const auto& r : rows)
        os << "x." << r.x_class << ".P = " << rat_str(r.P) << '\n'
           << "x." << r.x_class << ".fpr_sum = " << rat_str(r.fpr_sum) << '\n';
    os << "inequality = " << (inequality_holds ? "holds" : "violated") << '\n';
    os << "verdict_k = " << (verdict_k ? std::to_string(*verdict_k) : std::string("unbounded")) << '\n';
    os << "exact_verdict_k = " << (exact_verdict_k ? std::to_string(*exact_verdict_k) : std::string("unbounded"))
       << '\n';
    return os.str();
}

namespace {

// Largest k with k * worst < 1.
std::optional<std::uint64_t> verdict_from(const Rational& worst) {
    if (worst == 0) return std::nullopt;
    Rational inv = Rational(1) / worst;
    auto k = numerator(inv) / denominator(inv);
    std::uint64_t v = k.convert_to<std::uint64_t>();
    if (Rational(v) * worst >= 1) --v;
    return v;
}

}  // namespace

ProbBoundReport prob_bound_report(const PermGroup& G, const ClassTable& table, std::uint32_t s_class,
                                  const std::vector<SubgroupHandle>& maximal) {
    ProbBoundReport rep;
    rep.s_class = s_class;
    std::vector<std::uint64_t> mult;
    std::vector<std::vector<std::uint64_t>> counts;
    for (const auto& H : maximal) {
        std::uint64_t norm = is_normal(G, H.group) ? G.order() : H.order();
        auto cc = class_counts(table, H);
        Rational c = Rational(G.order()) / norm * Rational(cc[s_class]) / table[s_class].size;
        if (denominator(c) != 1) fail(Errc::Internal, "non-integral overgroup count");
        std::uint64_t m = numerator(c).convert_to<std::uint64_t>();
        if (m == 0) continue;
        rep.overgroups.emplace_back(H.label, m);
        mult.push_back(m);
        counts.push_back(std::move(cc));
    }
    if (mult.empty()) fail(Errc::HypothesisViolated, "s lies in no listed maximal subgroup");
    Rational worst = 0, worst_exact = 0;
    for (std::uint32_t x : prime_order_classes(table)) {
        ProbBoundRow row;
        row.x_class = x;
        row.P = exact_P(G, table, x, s_class);
        for (std::size_t i = 0; i < mult.size(); ++i)
            row.fpr_sum += Rational(mult[i]) * Rational(counts[i][x]) / table[x].size;
        if (row.P > row.fpr_sum) rep.inequality_holds = false;
        worst = std::max(worst, row.fpr_sum);
        worst_exact = std::max(worst_exact, row.P);
        rep.rows.push_back(std::move(row));
    }
    rep.verdict_k = verdict_from(worst);
    rep.exact_verdict_k = verdict_from(worst_exact);
    return rep;
}

std::vector<SubgroupHandle> maximal_subgroups_tiny(const PermGroup& G, std::uint64_t budget) {
    std::uint64_t n = G.order();
    if (n > budget) fail(Errc::BudgetExceeded, "group too large for the subgroup lattice");
    if (n == 1) return {};
    const StabChain& c = G.chain();
    std::vector<Perm> elems;
    elems.reserve(n);
    for (std::uint64_t r = 0; r < n; ++r) elems.push_back(c.unrank(r));
    std::size_t words = (n + 63) / 64;

    // One generator per cyclic subgroup of prime-power order.
    std::vector<std::uint64_t> zuppos;
    {
        RankSet covered(words, 0);
        for (std::uint64_t r = 0; r < n; ++r) {
            std::uint64_t o = elems[r].order();
            if (o == 1 || prime_factors(o).size() != 1 || test_bit(covered, r)) continue;
            zuppos.push_back(r);
            Perm p = elems[r];
            for (std::uint64_t k = 1; k < o; ++k, p = p * elems[r]) set_bit(covered, c.rank(p));
        }
    }
    std::vector<std::vector<std::uint64_t>> conj(G.gens().size(), std::vector<std::uint64_t>(n));
    for (std::size_t j = 0; j < G.gens().size(); ++j)
        for (std::uint64_t r = 0; r < n; ++r) conj[j][r] = c.rank(conjugate(elems[r], G.gens()[j]));

    auto closure = [&](const std::vector<Perm>& gens) {
        RankSet b(words, 0);
        std::uint64_t id = c.rank(G.identity());
        std::vector<std::uint64_t> queue{id};
        set_bit(b, id);
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (const Perm& g : gens) {
                std::uint64_t r = c.rank(elems[queue[i]] * g);
                if (!test_bit(b, r)) {
                    set_bit(b, r);
                    queue.push_back(r);
                }
            }
        return std::make_pair(b, static_cast<std::uint64_t>(queue.size()));
    };

    struct Node {
        RankSet bits;
        std::vector<Perm> gens;
        std::uint64_t order = 0;
    };
    std::vector<Node> reps;
    std::map<RankSet, std::size_t> known;  // every conjugate -> class index
    auto add_class = [&](RankSet b, std::vector<Perm> gens, std::uint64_t order) {
        if (known.count(b)) return;
        std::size_t id = reps.size();
        std::vector<RankSet> orbit{b};
        known.emplace(b, id);
        for (std::size_t i = 0; i < orbit.size(); ++i)
            for (const auto& cj : conj) {
                RankSet nb(words, 0);
                for (std::uint64_t r = 0; r < n; ++r)
                    if (test_bit(orbit[i], r)) set_bit(nb, cj[r]);
                if (known.emplace(nb, id).second) orbit.push_back(std::move(nb));
            }
        reps.push_back({std::move(b), std::move(gens), order});
    };
    auto [triv, one] = closure({});
    add_class(triv, {}, one);

    std::vector<SubgroupHandle> out;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (reps[i].order == n) continue;
        bool maximal = true;
        for (std::uint64_t z : zuppos) {
            if (test_bit(reps[i].bits, z)) continue;
            std::vector<Perm> gens = reps[i].gens;
            gens.push_back(elems[z]);
            auto [b, order] = closure(gens);
            if (order == n) continue;
            maximal = false;
            add_class(std::move(b), std::move(gens), order);
        }
        if (maximal) {
            std::uint64_t o = reps[i].order;
            out.push_back(make_subgroup(G, reps[i].gens,
                                        "order " + std::to_string(o) + ", index " + std::to_string(n / o), o));
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const SubgroupHandle& a, const SubgroupHandle& b) { return a.order() > b.order(); });
    return out;
}

QuadraticForms::QuadraticForms(const FormSpec& symplectic) : form_(symplectic) {
    if (form_.kind != FormKind::Symplectic) fail(Errc::FormMismatch, "quadratic forms need a symplectic polarization");
    if (form_.field->p() != 2) fail(Errc::OddCharacteristic, "quadratic forms are parametrized in characteristic 2");
    basis_ = symplectic_basis(form_.gram);
    count_ = checked_pow(form_.field->q(), static_cast<unsigned>(form_.dim));
}

std::vector<Fq> QuadraticForms::values(std::uint64_t code) const {
    std::vector<Fq> out(form_.dim);
    for (auto& v : out) {
        v = static_cast<Fq>(code % form_.field->q());
        code /= form_.field->q();
    }
    return out;
}

std::uint64_t QuadraticForms::code_of(const std::vector<Fq>& values) const {
    std::uint64_t code = 0;
    for (std::size_t i = values.size(); i-- > 0;) code = code * form_.field->q() + values[i];
    return code;
}

Fq QuadraticForms::value(std::uint64_t code, const Vec& v) const {
    const Field& F = *form_.field;
    auto qv = values(code);
    Fq acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        acc = F.add(acc, F.mul(F.mul(v[i], v[i]), qv[i]));
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[j]) acc = F.add(acc, F.mul(F.mul(v[i], v[j]), form_.gram.at(i, j)));
    }
    return acc;
}

bool QuadraticForms::plus_type(std::uint64_t code) const {
    const Field& F = *form_.field;
    Fq arf = 0;
    for (std::size_t i = 0; i + 1 < form_.dim; i += 2)
        arf = F.add(arf, F.mul(value(code, basis_.row(i)), value(code, basis_.row(i + 1))));
    static const FieldPtr gf2 = make_field(2, 1);
    return F.trace(arf, *gf2) == 0;
}

std::uint64_t QuadraticForms::act(std::uint64_t code, const SemilinearMap& g) const {
    const Field& F = *form_.field;
    SemilinearMap gi = g.inverse();
    std::vector<Fq> out(form_.dim);
    for (std::size_t i = 0; i < form_.dim; ++i) {
        Vec e(form_.dim, 0);
        e[i] = 1;
        out[i] = F.frobenius(value(code, gi.apply(e)), g.frob);
    }
    return code_of(out);
}

namespace {

struct GenMaps {
    std::unordered_map<Perm, SemilinearMap, PermHash> of;
    explicit GenMaps(const ClassicalGroup& G) {
        auto maps = group_gen_maps(G);
        for (std::size_t i = 0; i < maps.size(); ++i) of.emplace(G.group.gens()[i], maps[i]);
    }
};

}  // namespace

QuadraticCensus quadratic_type_subgroups(const ClassicalGroup& G) {
    if (G.spec.family != Family::Sp) fail(Errc::UnsupportedCase, "quadratic-type subgroups need a symplectic group");
    QuadraticForms Q(G.form);
    QuadraticCensus out;
    out.forms = Q.count();
    std::optional<std::uint64_t> first[2];
    for (std::uint64_t c = 0; c < Q.count(); ++c) {
        bool plus = Q.plus_type(c);
        (plus ? out.plus : out.minus)++;
        if (!first[plus ? 0 : 1]) first[plus ? 0 : 1] = c;
    }
    GenMaps maps(G);
    auto act = [&](std::uint64_t code, const Perm& g) { return Q.act(code, maps.of.at(g)); };
    std::uint64_t covered = 0;
    for (int t = 0; t < 2; ++t) {
        if (!first[t]) continue;
        auto os = orbit_stabilizer<std::uint64_t>(G.group, *first[t], act);
        for (std::uint64_t c : os.orbit)
            if (Q.plus_type(c) != (t == 0)) fail(Errc::Internal, "form type not invariant");
        covered += os.orbit.size();
        ++out.orbits;
        std::string label = std::string(t == 0 ? "O+" : "O-") + std::to_string(G.form.dim) + "(" +
                            std::to_string(G.spec.field->q()) + ")";
        out.subgroups.push_back(make_subgroup(G.group, os.stabilizer.gens(), label, os.stabilizer.order()));
        out.reps.push_back(*first[t]);
    }
    // Forms outside the two orbits would show up as extra orbits.
    if (covered != out.forms) out.orbits += 1;
    return out;
}

std::pair<std::uint64_t, std::uint64_t> fixed_form_counts(const ClassicalGroup& G, const Perm& x) {
    QuadraticForms Q(G.form);
    SemilinearMap g = map_of_element(G, x);
    std::pair<std::uint64_t, std::uint64_t> out{0, 0};
    for (std::uint64_t c = 0; c < Q.count(); ++c)
        if (Q.act(c, g) == c) (Q.plus_type(c) ? out.first : out.second)++;
    return out;
}

bool BoundValue::admits(const Rational& fpr) const {
    if (exact) return strict ? fpr < *exact : fpr <= *exact;
    long double f = to_ld(fpr);
    long double f_hi = f * (1 + 8 * LDBL_EPSILON) + LDBL_MIN;
    return strict ? f_hi < lo : f_hi <= lo;
}

Rational ell_for_type(const std::string& type) {
    static const std::map<std::string, Rational> table = {
        {"Sp_m(q) wr S2", 2}, {"Sp_m(q^2)", 2},           {"G2(q)", Rational(176, 100)},
        {"A10", Rational(3, 2)}, {"Sp6(2)", Rational(146, 100)}, {"PSU3(3)", Rational(133, 100)},
    };
    auto it = table.find(type);
    return it == table.end() ? Rational(1) : it->second;
}

namespace {

BoundValue exact_bound(Rational v, bool strict, std::string text) {
    BoundValue b;
    b.lo = b.hi = to_ld(v);
    b.lo *= 1 - 64 * LDBL_EPSILON;
    b.hi *= 1 + 64 * LDBL_EPSILON;
    b.exact = std::move(v);
    b.strict = strict;
    b.text = std::move(text);
    return b;
}

// base^a / q^b with rational exponents.
BoundValue power_bound(long double base, long double a, std::uint64_t q, long double b, bool strict, std::string text) {
    long double v = std::pow(base, a) / std::pow(static_cast<long double>(q), b);
    BoundValue out;
    out.lo = v * (1 - 64 * LDBL_EPSILON);
    out.hi = v * (1 + 64 * LDBL_EPSILON);
    out.strict = strict;
    out.text = std::move(text);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) fail(Errc::HypothesisViolated, what);
}

}  // namespace

BoundValue bound_value(const BoundFormula& f) {
    const std::uint64_t q = f.q;
    const int m = static_cast<int>(f.m);
    require(q >= 2, "q must be at least 2");
    auto prime_power = [&] { return prime_factors(q).size() == 1; };
    require(prime_power(), "q must be a prime power");
    const long double ell = to_ld(f.ell);
    const bool t1 = f.linear && f.nu == 1;
    switch (f.kind) {
    case BoundKind::NonSubspaceOmega: {
        require(m >= 3, "needs m >= 3");
        require(q % 2 == 1, "odd-dimensional orthogonal groups need odd q");
        long double eps = t1 ? 0.0L : 0.5L;
        return power_bound(4.0L * q + 4, 0.5L, q, m - ell + eps, true, "(4q+4)^(1/2)/q^(m-l+e)");
    }
    case BoundKind::NonSubspaceSp:
        require(m >= 3, "needs m >= 3");
        return power_bound(2.0L * q + 2, 0.5L, q, m - ell, true, "(2q+2)^(1/2)/q^(m-l)");
    case BoundKind::NonSubspaceSpRefined: {
        require(m >= 3, "needs m >= 3");
        if (!f.linear) return exact_bound(2 * rpow(q, -m), true, "2/q^m");
        long double a = 0.5L - ell / (2.0L * m);
        if (f.nu == 1) return power_bound(2.0L * q + 2, a, q, m - ell, true, "(2q+2)^(1/2-l/2m)/q^(m-l)");
        require(f.nu >= 2, "nu must be positive");
        return power_bound(2.0L * q + 2, a, q, 2 * (m - ell) - 1.5L + 1.5L / m, true,
                           "(2q+2)^(1/2-l/2m)/q^(2(m-l)-3/2+3/2m)");
    }
    case BoundKind::SubfieldTransvection:
        require(t1, "needs a linear element with nu = 1");
        return exact_bound(2 * rpow(q, -m), true, "2q^-m");
    case BoundKind::TotallyIsotropic:
        require(m >= 3, "needs m >= 3");
        require(f.k >= 1 && static_cast<int>(f.k) <= m, "needs 1 <= k <= m");
        return exact_bound(2 * rpow(q, -(m - 1)) + rpow(q, -m) + rpow(q, -static_cast<int>(f.k)), true,
                           "2q^-(m-1) + q^-m + q^-k");
    case BoundKind::NondegenerateOmega:
        require(m >= 3, "needs m >= 3");
        require(f.k >= 1 && static_cast<int>(f.k) <= 2 * m, "needs 1 <= k <= 2m");
        return exact_bound(2 * rpow(q, -(m - 1)) + rpow(q, -m) + rpow(q, -static_cast<int>(f.witt)) +
                               rpow(q, -(2 * m + 1 - static_cast<int>(f.k))),
                           true, "2q^-(m-1) + q^-m + q^-l + q^-(2m+1-k)");
    case BoundKind::NondegenerateSp: {
        require(m >= 3, "needs m >= 3");
        require(f.k >= 1 && static_cast<int>(f.k) <= 2 * m - 1, "needs 1 <= k <= 2m-1");
        int alpha = q % 2 == 0 ? 1 : 2;
        int k = static_cast<int>(f.k);
        Rational rest = 2 * rpow(q, -(m - alpha)) + rpow(q, -m) + rpow(q, -(2 * m - k));
        if (k % 2 == 0) return exact_bound(rest + rpow(q, -k / 2), true, "2q^-(m-a) + q^-m + q^-k/2 + q^-(2m-k)");
        BoundValue b = power_bound(q, 0, q, k / 2.0L, true, "2q^-(m-a) + q^-m + q^-k/2 + q^-(2m-k)");
        long double r = to_ld(rest);
        b.lo = (b.lo + r) * (1 - 64 * LDBL_EPSILON);
        b.hi = (b.hi + r) * (1 + 64 * LDBL_EPSILON);
        return b;
    }
    case BoundKind::QuadraticType: {
        require(q % 2 == 0, "needs even q");
        require(m >= 2, "needs m >= 2");
        int beta = t1 ? 1 : 2;
        return exact_bound(rpow(q, -beta) + rpow(q, -m), true, "q^-b + q^-m");
    }
    case BoundKind::NondegenerateTwoSpace: {
        require(m >= 3, "needs m >= 3");
        if (!f.linear) return exact_bound(2 * rpow(q, -(2 * m - 1)), false, "2q^-(2m-1)");
        int s = static_cast<int>(f.nu);
        require(s >= 1, "nu must be positive");
        return exact_bound(rpow(q, -2 * s) + rpow(q, -(2 * s + 2)) + rpow(q, -(2 * m - 2)) + rpow(q, -(2 * m - 1)),
                           false, "q^-2s + q^-(2s+2) + q^-(2m-2) + q^-(2m-1)");
    }
    case BoundKind::Sp4NonSubspace: {
        require(m == 2, "needs m = 2");
        require(!is_prime(q), "needs q = p^f with f > 1");
        if (f.sp4_type == Sp4Type::Suzuki) {
            require(q % 2 == 0, "needs even q");
            return exact_bound(rpow(q, -2), false, "1/q^2");
        }
        if (f.sp4_type == Sp4Type::OMinusExtension) {
            require(q % 2 == 0, "needs even q");
            return exact_bound(Rational(8) / (q * q * (q - 1)), false, "8/q^2(q-1)");
        }
        if (f.sp4_type == Sp4Type::WreathOrExtension && f.a2_or_t2)
            return exact_bound(Rational(q) / (q * q - 1), false, "q/(q^2-1)");
        return exact_bound(Rational(4) / (q * (q - 1)), false, "4/q(q-1)");
    }
    }
    fail(Errc::Internal, "unknown bound kind");
}

bool is_a_type_involution(const MatF& x, const FormSpec& form) {
    const Field& F = *x.field();
    if (F.p() != 2) fail(Errc::OddCharacteristic, "a-type involutions are an even-characteristic notion");
    MatF I = MatF::identity(x.field(), x.dim());
    if (x == I || !(x * x).is_identity()) return false;
    std::uint64_t total = checked_pow(F.q(), static_cast<unsigned>(x.dim()));
    Vec v(x.dim());
    for (std::uint64_t code = 1; code < total; ++code) {
        std::uint64_t c = code;
        for (auto& e : v) {
            e = static_cast<Fq>(c % F.q());
            c /= F.q();
        }
        if (form.bilinear(v, x.apply(v)) != 0) return false;
    }
    return true;
}

namespace {

Perm perm_in(const ClassicalGroup& G, const SemilinearMap& g) {
    if (!preserves_form(g, G.form)) fail(Errc::FormMismatch, "map does not preserve the form");
    Perm p = G.perm_of(g);
    if (!G.group.contains(p)) fail(Errc::ElementNotInGroup, "map lies outside the group");
    return p;
}

MatF embed_matrix(const MatF& a, const FieldPtr& F) {
    MatF out(F, a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) out.at(i, j) = F->embed(a.at(i, j), *a.field());
    return out;
}

// Sp2(q^2) acting on GF(q^2)^2 read as a 4-space over GF(q).
std::vector<SemilinearMap> extension_field_maps(const ClassicalGroup& G) {
    const FieldPtr& F = G.spec.field;
    FieldPtr E = make_field(F->p(), 2 * F->f());
    const Fq w = E->primitive();  // outside F since its order is q^2 - 1
    // coords[z] = (a0, a1) with z = a0 + a1 w.
    std::vector<std::pair<Fq, Fq>> coords(E->q());
    for (Fq a0 = 0; a0 < F->q(); ++a0)
        for (Fq a1 = 0; a1 < F->q(); ++a1)
            coords[E->add(E->embed(a0, *F), E->mul(E->embed(a1, *F), w))] = {a0, a1};
    std::vector<std::pair<Fq, Fq>> basis = {{1, 0}, {w, 0}, {0, 1}, {0, w}};
    auto to_vec = [&](Fq x1, Fq x2) {
        return Vec{coords[x1].first, coords[x1].second, coords[x2].first, coords[x2].second};
    };
    auto realize = [&](Fq m00, Fq m01, Fq m10, Fq m11) {
        std::vector<Vec> rows;
        for (auto [b1, b2] : basis)
            rows.push_back(to_vec(E->add(E->mul(b1, m00), E->mul(b2, m10)), E->add(E->mul(b1, m01), E->mul(b2, m11))));
        return MatF::from_rows(F, rows);
    };
    MatF gram(F, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            auto [x1, x2] = basis[i];
            auto [y1, y2] = basis[j];
            Fq det = E->sub(E->mul(x1, y2), E->mul(x2, y1));
            gram.at(i, j) = E->trace(det, *F);
        }
    MatF M = symplectic_basis(gram);
    Fq z = E->primitive();
    std::vector<SemilinearMap> maps = {
        SemilinearMap(realize(1, 1, 0, 1)),
        SemilinearMap(realize(z, 0, 0, E->inv(z))),
        SemilinearMap(realize(0, 1, 1, 0)),
    };
    // x -> x^p on both coordinates, semilinear over F with the p-power twist.
    std::vector<Vec> rows;
    for (auto [b1, b2] : basis) {
        Vec v = to_vec(E->frobenius(b1, 1), E->frobenius(b2, 1));
        for (auto& e : v) e = F->frobenius(e, -1);
        rows.push_back(v);
    }
    maps.push_back(SemilinearMap(MatF::from_rows(F, rows), 1));
    for (auto& g : maps) g = g.in_basis(M);
    return maps;
}

SubgroupHandle curated(const ClassicalGroup& G, const std::vector<SemilinearMap>& maps, const std::string& label,
                       std::uint64_t order, bool with_theta = true) {
    std::vector<Perm> gens;
    for (const auto& g : maps) gens.push_back(perm_in(G, g));
    if (with_theta && G.theta) gens.push_back(*G.theta);
    PermGroup H(G.group.degree(), gens);
    if (H.order() != order) fail(Errc::ValidationFailed, label + ": unexpected order " + std::to_string(H.order()));
    return make_subgroup(G.group, gens, label, order);
}

}  // namespace

std::vector<SubgroupHandle> curated_maximal_subgroups(const ClassicalGroup& G) {
    const FieldPtr& F = G.spec.field;
    if (G.spec.family != Family::Sp || G.spec.m != 2) fail(Errc::UnsupportedCase, "curated lists cover Sp4 only");
    if (F->p() != 2 || F->f() < 2) fail(Errc::UnsupportedCase, "curated lists cover Sp4(2^f) with f > 1");
    if (G.theta_map && (G.theta_map->frob == 0 || !G.theta_map->A.is_identity()))
        fail(Errc::UnsupportedCase, "curated lists cover field automorphisms only");
    const std::uint64_t q = F->q();
    const std::uint64_t ext = G.theta_order;
    std::vector<SubgroupHandle> out;
    auto census = quadratic_type_subgroups(G);
    out.insert(out.end(), census.subgroups.begin(), census.subgroups.end());

    std::uint64_t sl2 = q * (q * q - 1);
    {
        ClassicalGroup S2 = classical_group(parse_group_spec("Sp2(" + std::to_string(q) + ")@vectors"));
        std::vector<SemilinearMap> maps;
        for (const auto& g : S2.base_maps) {
            maps.push_back(SemilinearMap(block_diag({g.A, MatF::identity(F, 2)})));
        }
        MatF swap(F, 4);
        swap.at(0, 2) = swap.at(1, 3) = swap.at(2, 0) = swap.at(3, 1) = 1;
        maps.push_back(SemilinearMap(swap));
        out.push_back(curated(G, maps, "Sp2(" + std::to_string(q) + ") wr S2", sl2 * sl2 * 2 * ext));
    }
    {
        std::uint64_t Q = q * q;
        std::uint64_t order = Q * (Q * Q - 1) * 2 * ext;
        auto maps = extension_field_maps(G);
        // The field automorphism of GF(q^2) carries its own twist; the part
        // of its cyclic group lying in G is generated by its first power in G.
        SemilinearMap phi2 = maps.back(), p = phi2;
        maps.pop_back();
        while (!G.group.contains(G.perm_of(p))) p = p * phi2;
        maps.push_back(p);
        out.push_back(curated(G, maps, "Sp2(" + std::to_string(Q) + ")", order, false));
    }
    {
        for (unsigned d = 1; d < F->f(); ++d) {
            if (F->f() % d || !is_prime(F->f() / d)) continue;
            FieldPtr F0 = make_field(2, d);
            std::string name = "Sp4(" + std::to_string(F0->q()) + ")";
            ClassicalGroup S = classical_group(parse_group_spec(name + "@vectors"));
            std::vector<SemilinearMap> maps;
            for (const auto& g : S.base_maps) maps.push_back(SemilinearMap(embed_matrix(g.A, F)));
            std::uint64_t q0 = F0->q();
            std::uint64_t sp = q0 * q0 * q0 * q0 * (q0 * q0 - 1) * (q0 * q0 * q0 * q0 - 1);
            out.push_back(curated(G, maps, name + " subfield", sp * ext));
        }
    }
    return out;
}

bool sample_maximality(const PermGroup& G, const SubgroupHandle& H, std::uint64_t trials, std::uint64_t seed) {
    if (H.order() >= G.order()) return false;
    Rng rng = make_stream(seed, H.order());
    const auto& orbits = G.orbits();
    for (std::uint64_t t = 0; t < trials; ++t) {
        Perm g = G.random_element(rng);
        if (H.group.contains(g)) continue;
        std::vector<Perm> gens = H.gens;
        gens.push_back(g);
        if (!generates_order(G.degree(), gens, G.order(), &orbits)) return false;
    }
    return true;
}

std::vector<FprRecord> fpr_bound_check(const ClassicalGroup& G, const ClassTable& table,
                                       const std::vector<SubgroupHandle>& subgroups) {
    const std::uint64_t q = G.spec.field->q();
    std::vector<FprRecord> out;
    auto primes = prime_order_classes(table);
    for (const auto& H : subgroups) {
        auto counts = class_counts(table, H);
        for (std::uint32_t x : primes) {
            Rational fpr = Rational(counts[x]) / table[x].size;
            SemilinearMap g = map_of_element(G, table[x].rep);
            BoundFormula f;
            f.m = G.spec.m;
            f.q = q;
            f.linear = g.is_linear();
            f.nu = f.linear ? nu(g.A) : 0;
            std::vector<BoundFormula> apply;
            const std::string& L = H.label;
            if (L.rfind("O+", 0) == 0 || L.rfind("O-", 0) == 0) {
                f.kind = BoundKind::QuadraticType;
                apply.push_back(f);
            } else {
                f.kind = BoundKind::Sp4NonSubspace;
                bool subfield = L.find("subfield") != std::string::npos;
                f.sp4_type = subfield ? Sp4Type::Generic : Sp4Type::WreathOrExtension;
                f.a2_or_t2 = f.linear && table[x].order == 2 && is_a_type_involution(g.A, G.form);
                apply.push_back(f);
                if (subfield && f.linear && f.nu == 1) {
                    f.kind = BoundKind::SubfieldTransvection;
                    apply.push_back(f);
                }
            }
            for (const auto& bf : apply) {
                FprRecord r;
                r.x_class = x;
                r.label = L;
                r.fpr = fpr;
                r.bound = bound_value(bf);
                r.formula = r.bound->text;
                r.satisfied = r.bound->admits(fpr);
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

std::string subgroups_to_text(const std::vector<SubgroupHandle>& list) {
    std::ostringstream os;
    for (const auto& H : list) {
        os << "subgroup label=" << H.label << '\n';
        for (const Perm& g : H.gens) os << g.cycles() << '\n';
    }
    return os.str();
}

std::vector<SubgroupHandle> subgroups_from_text(const PermGroup& G, const std::string& text) {
    struct Block {
        std::string label;
        std::vector<Perm> gens;
        std::size_t line = 0;
    };
    std::vector<Block> blocks;
    std::istringstream is(text);
    std::string line;
    std::size_t no = 0;
    const std::string head = "subgroup label=";
    while (std::getline(is, line)) {
        ++no;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        line = line.substr(b, line.find_last_not_of(" \t\r") + 1 - b);
        if (line.rfind(head, 0) == 0) {
            blocks.push_back({line.substr(head.size()), {}, no});
            continue;
        }
        if (blocks.empty()) fail(Errc::ParseError, "line " + std::to_string(no) + ": generator before any subgroup");
        try {
            blocks.back().gens.push_back(Perm::from_cycles(G.degree(), line));
        } catch (const std::exception& e) {
            fail(Errc::ParseError, "line " + std::to_string(no) + ": " + e.what());
        }
    }
    std::vector<SubgroupHandle> out;
    for (auto& bl : blocks) {
        try {
            out.push_back(make_subgroup(G, std::move(bl.gens), bl.label));
        } catch (const Error& e) {
            fail(Errc::ValidationFailed, "subgroup at line " + std::to_string(bl.line) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace spreadlab
