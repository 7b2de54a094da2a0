#include <numeric>
#include <regex>

#include "spreadlab/error.hpp"
#include "spreadlab/grpzoo.hpp"

namespace spreadlab {

namespace {

const char* family_name(Family f) {
    switch (f) {
    case Family::Sp: return "Sp";
    case Family::GSp: return "GSp";
    case Family::SO: return "SO";
    case Family::Omega: return "Omega";
    }
    return "?";
}

// Scalars acting trivially on projective points.
std::uint64_t projective_kernel(Family f, std::uint32_t q) {
    switch (f) {
    case Family::Sp: return q % 2 ? 2 : 1;
    case Family::GSp: return q - 1;
    default: return 1;
    }
}

DomainKind resolved_domain(const GroupSpec& s) { return s.domain.value_or(DomainKind::Projective); }

std::uint64_t point_order(const GroupSpec& s) {
    std::uint64_t n = classical_order(s.family, s.m, s.field->q());
    if (resolved_domain(s) == DomainKind::Projective) n /= projective_kernel(s.family, s.field->q());
    return n;
}

Vec unit(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

// Two random elements generating G, when a few tries find them.
std::vector<Perm> two_generators(const PermGroup& G, std::uint64_t seed) {
    if (G.gens().size() <= 2) return G.gens();
    Rng rng = make_stream(seed, 0);
    for (int t = 0; t < 200; ++t) {
        Perm a = G.random_element(rng), b = G.random_element(rng);
        if (generates_order(G.degree(), {a, b}, G.order(), &G.orbits())) return {a, b};
    }
    return G.gens();
}

// Rescales a recovered map to an isometry (determinant one for SO) when
// the scalar exists; similarities are left alone otherwise.
SemilinearMap normalize_map(SemilinearMap g, const FormSpec& form, Family family) {
    if (family == Family::GSp) return g;
    const Field& F = *form.field;
    auto tau = semisimilarity_tau(g, form);
    if (!tau) fail(Errc::Internal, "recovered map is not a semisimilarity");
    for (Fq l = 1; l < F.q(); ++l) {
        if (F.mul(F.mul(l, l), *tau) != 1) continue;
        MatF A = g.A.scaled(l);
        if ((family == Family::SO || family == Family::Omega) && A.det() != 1) continue;
        return SemilinearMap(A, g.frob);
    }
    return g;
}

ClassicalGroup finish(GroupSpec spec, FormSpec form, std::shared_ptr<const VectorDomain> dom, const PermGroup& G,
                      std::uint64_t seed) {
    ClassicalGroup out;
    std::vector<Perm> gens = two_generators(G, seed);
    out.base = PermGroup(G.degree(), gens, G.order());
    for (const Perm& p : gens) {
        auto g = dom->map_of(p);
        if (!g) fail(Errc::Internal, "generator is not induced by a semilinear map");
        SemilinearMap h = normalize_map(*g, form, spec.family);
        if (!semisimilarity_tau(h, form)) fail(Errc::FormMismatch, "generator does not preserve the form");
        out.base_maps.push_back(h);
    }
    out.group = out.base;
    out.spec = std::move(spec);
    out.form = std::move(form);
    out.domain = std::move(dom);
    return out;
}

ClassicalGroup build_symplectic(const GroupSpec& spec) {
    const FieldPtr& F = spec.field;
    unsigned n = spec.dim();
    FormSpec form = standard_symplectic_form(spec.m, F);
    auto dom = std::make_shared<VectorDomain>(F, n, resolved_domain(spec));
    std::vector<Vec> dirs;
    for (unsigned i = 0; i < n; ++i) dirs.push_back(unit(n, i));
    for (unsigned i = 0; i < spec.m; ++i) {
        Vec v = unit(n, 2 * i);
        v[2 * i + 1] = 1;
        dirs.push_back(v);
        if (i + 1 < spec.m) {
            for (unsigned a = 0; a < 2; ++a)
                for (unsigned b = 0; b < 2; ++b) {
                    Vec w = unit(n, 2 * i + a);
                    w[2 * i + 2 + b] = 1;
                    dirs.push_back(w);
                }
        }
    }
    std::vector<Perm> perms;
    Fq c = 1;
    for (unsigned j = 0; j < F->f(); ++j, c *= F->p())
        for (const Vec& v : dirs) perms.push_back(dom->perm_of(SemilinearMap(transvection(form, v, c))));
    if (spec.family == Family::GSp) {
        MatF d = MatF::identity(F, n);
        for (unsigned i = 0; i < spec.m; ++i) d.at(2 * i, 2 * i) = F->primitive();
        perms.push_back(dom->perm_of(SemilinearMap(d)));
    }
    std::uint64_t target = point_order(spec);
    if (!generates_order(dom->size(), perms, target)) fail(Errc::Internal, "symplectic generators fall short");
    PermGroup G(dom->size(), perms, target);
    return finish(spec, form, dom, G, 11);
}

PermGroup special_orthogonal(const FormSpec& form, const VectorDomain& dom, std::uint64_t target) {
    unsigned n = static_cast<unsigned>(form.dim);
    Vec v0 = unit(n, n - 1);
    MatF r0 = reflection(form, v0);
    std::vector<Perm> perms;
    std::size_t cap = 4 * n;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        Vec v = dom.normalize(dom.point(i));
        if (form.quadratic(v) == 0 || v == v0) continue;
        perms.push_back(dom.perm_of(SemilinearMap(r0 * reflection(form, v))));
        if (perms.size() == cap && generates_order(dom.size(), perms, target)) break;
    }
    if (!generates_order(dom.size(), perms, target)) fail(Errc::Internal, "reflection products fall short");
    return PermGroup(dom.size(), perms, target);
}

ClassicalGroup build_orthogonal(const GroupSpec& spec) {
    const FieldPtr& F = spec.field;
    FormSpec form = standard_orthogonal_form(spec.dim(), F);
    auto dom = std::make_shared<VectorDomain>(F, spec.dim(), resolved_domain(spec));
    GroupSpec so = spec;
    so.family = Family::SO;
    PermGroup G = special_orthogonal(form, *dom, point_order(so));
    if (spec.family == Family::Omega) {
        PermGroup D = derived_subgroup(G);
        if (D.order() * 2 != G.order()) fail(Errc::ValidationFailed, "derived subgroup of SO is not of index 2");
        G = D;
    }
    return finish(spec, form, dom, G, 13);
}

}  // namespace

std::string AutoSpec::str() const {
    std::string s;
    if (delta) s = "delta";
    if (frob) {
        if (!s.empty()) s += "*";
        s += "phi";
        if (frob != 1) s += "^" + std::to_string(frob);
    }
    return s;
}

std::string GroupSpec::str() const {
    std::string s;
    DomainKind d = resolved_domain(*this);
    if (d == DomainKind::Projective && projective_kernel(family, field->q()) > 1) s = "P";
    s += family_name(family) + std::to_string(dim()) + "(" + std::to_string(field->q()) + ")";
    if (!theta.trivial()) s += ":" + theta.str();
    if (d == DomainKind::Vectors && projective_kernel(family, field->q()) == 1 && field->q() > 2) s += "@vectors";
    return s;
}

GroupSpec parse_group_spec(const std::string& text) {
    static const std::regex re(R"(^(P?)(Sp|GSp|SO|Omega)(\d+)\((\d+)\)(?::([A-Za-z0-9^*]+))?(?:@(vectors|points))?$)");
    std::smatch mm;
    if (!std::regex_match(text, mm, re)) fail(Errc::ParseError, "unrecognized group spec '" + text + "'");
    GroupSpec s;
    std::string fam = mm[2];
    s.family = fam == "Sp" ? Family::Sp : fam == "GSp" ? Family::GSp : fam == "SO" ? Family::SO : Family::Omega;
    unsigned n = static_cast<unsigned>(std::stoul(mm[3]));
    bool sp = s.family == Family::Sp || s.family == Family::GSp;
    if (n < 2 || (sp && n % 2) || (!sp && (n % 2 == 0 || n < 3)))
        fail(Errc::ParseError, "bad dimension in '" + text + "'");
    s.m = sp ? n / 2 : (n - 1) / 2;
    std::uint64_t q = std::stoull(mm[4]);
    auto ps = prime_factors(q);
    if (ps.size() != 1) fail(Errc::NonPrime, "field order is not a prime power");
    unsigned f = 0;
    for (std::uint64_t t = q; t > 1; t /= ps[0]) ++f;
    s.field = Field::make(static_cast<unsigned>(ps[0]), f);
    if (mm[1].matched && mm[1].length()) s.domain = DomainKind::Projective;
    if (mm[6].matched) s.domain = mm[6] == "vectors" ? DomainKind::Vectors : DomainKind::Projective;
    if (mm[5].matched) {
        std::string t = mm[5];
        std::size_t pos = 0;
        while (pos <= t.size()) {
            std::size_t e = t.find('*', pos);
            std::string tok = t.substr(pos, e == std::string::npos ? std::string::npos : e - pos);
            if (tok == "delta") {
                s.theta.delta = true;
            } else if (tok == "phi") {
                s.theta.frob += 1;
            } else if (tok.rfind("phi^", 0) == 0 && tok.size() > 4) {
                s.theta.frob += std::stoll(tok.substr(4));
            } else {
                fail(Errc::ParseError, "unknown automorphism '" + tok + "'");
            }
            if (e == std::string::npos) break;
            pos = e + 1;
        }
        s.theta.frob %= f;
    }
    return s;
}

std::uint64_t classical_order(Family family, unsigned m, std::uint32_t q) {
    if ((family == Family::SO || family == Family::Omega) && q % 2 == 0)
        fail(Errc::EvenCharacteristic, "odd-dimensional orthogonal groups need odd q");
    std::uint64_t n = checked_pow(q, m * m);
    for (unsigned i = 1; i <= m; ++i) {
        std::uint64_t t = checked_pow(q, 2 * i) - 1;
        if (n > INT64_MAX / t) fail(Errc::Overflow, "group order overflows");
        n *= t;
    }
    if (family == Family::GSp) n *= q - 1;
    if (family == Family::Omega) n /= 2;
    return n;
}

MatF transvection(const FormSpec& form, const Vec& v, Fq lambda) {
    const Field& F = *form.field;
    std::size_t n = form.dim;
    MatF T = MatF::identity(form.field, n);
    Vec gv(n, 0);  // G v^T
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gv[i] = F.add(gv[i], F.mul(form.gram.at(i, j), v[j]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) T.at(i, j) = F.add(T.at(i, j), F.mul(lambda, F.mul(gv[i], v[j])));
    return T;
}

MatF reflection(const FormSpec& form, const Vec& v) {
    Fq qv = form.quadratic(v);
    if (qv == 0) fail(Errc::InvalidArgument, "reflection needs an anisotropic vector");
    return transvection(form, v, form.field->neg(form.field->inv(qv)));
}

SemilinearMap theta_map(const ClassicalGroup& T, const AutoSpec& theta) {
    const FieldPtr& F = T.spec.field;
    std::size_t n = T.form.dim;
    SemilinearMap t = SemilinearMap::identity(F, n);
    if (theta.delta) {
        switch (T.spec.family) {
        case Family::Sp:
        case Family::GSp: {
            MatF d = MatF::identity(F, n);
            for (unsigned i = 0; i < T.spec.m; ++i) d.at(2 * i, 2 * i) = F->primitive();
            t = SemilinearMap(d);
            break;
        }
        case Family::SO:
            break;
        case Family::Omega: {
            // First reflection product outside Omega in point order.
            Vec v0 = unit(n, n - 1);
            MatF r0 = reflection(T.form, v0);
            bool found = false;
            for (std::size_t i = 0; i < T.domain->size() && !found; ++i) {
                Vec v = T.domain->normalize(T.domain->point(i));
                if (T.form.quadratic(v) == 0) continue;
                SemilinearMap g(r0 * reflection(T.form, v));
                if (!T.base.contains(T.perm_of(g))) {
                    t = g;
                    found = true;
                }
            }
            if (!found) fail(Errc::Internal, "no element of SO outside Omega");
            break;
        }
        }
    }
    if (theta.frob) t = t * SemilinearMap::field_auto(F, n, theta.frob);
    return t;
}

ClassicalGroup semilinear_extension(const ClassicalGroup& T, const SemilinearMap& theta) {
    ClassicalGroup out = T;
    if (theta.A.dim() != T.form.dim || theta.A.field() != T.spec.field)
        fail(Errc::DegreeMismatch, "automorphism does not act on the natural module");
    Perm t = T.perm_of(theta);
    Perm ti = t.inverse();
    for (const Perm& g : T.base.gens())
        if (!T.base.contains(ti * g * t)) fail(Errc::DomainNotStable, "automorphism does not normalize the group");
    std::uint64_t k = 1;
    Perm x = t;
    while (!T.base.contains(x)) {
        x = x * t;
        ++k;
    }
    out.theta_map = theta;
    out.theta = t;
    out.theta_order = k;
    if (k > 1) {
        std::vector<Perm> gens = T.base.gens();
        gens.push_back(t);
        out.group = PermGroup(T.base.degree(), gens, T.base.order() * k);
    }
    return out;
}

SemilinearMap map_of_element(const ClassicalGroup& G, const Perm& p) {
    auto g = G.domain->map_of(p);
    if (!g) fail(Errc::ElementNotInGroup, "permutation is not induced by a semilinear map");
    return normalize_map(*g, G.form, G.spec.family);
}

std::vector<SemilinearMap> group_gen_maps(const ClassicalGroup& G) {
    std::vector<SemilinearMap> out = G.base_maps;
    if (G.group.gens().size() > G.base.gens().size()) out.push_back(*G.theta_map);
    return out;
}

ClassicalGroup classical_group(const GroupSpec& spec) {
    if (!spec.field) fail(Errc::InvalidArgument, "group spec without a field");
    if (spec.m < 1) fail(Errc::InvalidArgument, "rank must be positive");
    GroupSpec base = spec;
    base.theta = {};
    ClassicalGroup T = (spec.family == Family::Sp || spec.family == Family::GSp) ? build_symplectic(base)
                                                                                : build_orthogonal(base);
    if (spec.theta.trivial()) return T;
    ClassicalGroup G = semilinear_extension(T, theta_map(T, spec.theta));
    G.spec = spec;
    return G;
}

}  // namespace spreadlab
