#include <numeric>

#include "spreadlab/error.hpp"
#include "spreadlab/grpzoo.hpp"

namespace spreadlab {

namespace {

// GF(q0^n) as an n-dimensional F0-space with basis 1, g, ..., g^{n-1}
// (g primitive).
struct ExtModel {
    FieldPtr F0, E;
    unsigned n = 0;
    std::vector<Fq> basis;
    std::vector<Vec> coords;  // indexed by element code of E

    ExtModel(const FieldPtr& f0, unsigned deg) : F0(f0), n(deg) {
        E = Field::make(F0->p(), F0->f() * n);
        Fq g = E->primitive();
        Fq x = 1;
        for (unsigned k = 0; k < n; ++k, x = E->mul(x, g)) basis.push_back(x);
        coords.assign(E->q(), Vec(n, 0));
        Vec c(n, 0);
        for (std::uint32_t code = 0; code < E->q(); ++code) {
            std::uint32_t t = code;
            Fq acc = 0;
            for (unsigned k = 0; k < n; ++k) {
                c[k] = t % F0->q();
                t /= F0->q();
                acc = E->add(acc, E->mul(E->embed(c[k], *F0), basis[k]));
            }
            coords[acc] = c;
        }
    }

    MatF mult(Fq y) const {
        std::vector<Vec> rows;
        for (Fq b : basis) rows.push_back(coords[E->mul(b, y)]);
        return MatF::from_rows(F0, rows);
    }
    Fq tr(Fq x) const { return E->trace(x, *F0); }
};

std::uint64_t ipow(std::uint64_t a, unsigned k) { return checked_pow(a, k); }

struct Unitary {
    ExtModel X;
    std::uint64_t Q;  // q0^d
    MatF M;           // hyperbolic basis in g-power coordinates
    Unitary(const FieldPtr& F0, unsigned d) : X(F0, 2 * d), Q(ipow(F0->q(), d)) {
        const Field& E = *X.E;
        Fq lambda = F0->p() == 2 ? 1 : E.exp(static_cast<std::int64_t>((Q + 1) / 2));
        MatF G(F0, 2 * d);
        for (unsigned k = 0; k < 2 * d; ++k)
            for (unsigned l = 0; l < 2 * d; ++l)
                G.at(k, l) = X.tr(E.mul(lambda, E.mul(X.basis[k], E.pow(X.basis[l], static_cast<std::int64_t>(Q)))));
        M = symplectic_basis(G);
    }
    MatF element(std::uint64_t exponent) const {
        MatF A = X.mult(X.E->exp(static_cast<std::int64_t>(exponent % (Q * Q - 1))));
        return SemilinearMap(A).in_basis(M).A;
    }
};

void check_symplectic(const MatF& y, Fq tau, const char* what) {
    FormSpec std_form = standard_symplectic_form(static_cast<unsigned>(y.dim() / 2), y.field());
    auto t = semisimilarity_tau(SemilinearMap(y), std_form);
    if (!t || *t != tau) fail(Errc::Internal, std::string(what) + " does not have the expected similarity factor");
}

// Companion matrix of the least primitive monic polynomial of degree d.
MatF primitive_companion(unsigned d, const FieldPtr& F0, Poly* poly_out = nullptr) {
    const Field& F = *F0;
    std::uint64_t target = ipow(F.q(), d) - 1;
    std::uint64_t total = ipow(F.q(), d);
    for (std::uint64_t code = 0; code < total; ++code) {
        Poly p(d + 1, 0);
        std::uint64_t t = code;
        for (unsigned i = 0; i < d; ++i, t /= F.q()) p[i] = static_cast<Fq>(t % F.q());
        p[d] = 1;
        if (p[0] == 0 || !poly_is_irreducible(F, p)) continue;
        MatF B(F0, d);
        for (unsigned i = 0; i + 1 < d; ++i) B.at(i, i + 1) = 1;
        for (unsigned i = 0; i < d; ++i) B.at(d - 1, i) = F.neg(p[i]);
        if (B.order() != target) continue;
        if (poly_out) *poly_out = p;
        return B;
    }
    fail(Errc::Internal, "no primitive polynomial found");
}

// [X, B^{-T}] on e1..ed, f1..fd, moved to the interleaved hyperbolic basis.
MatF split_block(const MatF& X, const MatF& B) {
    const FieldPtr& F = B.field();
    std::size_t d = B.dim();
    MatF Y = block_diag({X, B.inv().transpose()});
    std::vector<Vec> rows(2 * d, Vec(2 * d, 0));
    for (std::size_t i = 0; i < d; ++i) {
        rows[2 * i][i] = 1;
        rows[2 * i + 1][d + i] = 1;
    }
    return SemilinearMap(Y).in_basis(MatF::from_rows(F, rows)).A;
}

// Exponent of the element C inside GF(q0^{2d})^x.
std::uint64_t c_exponent(unsigned d, const FieldPtr& F0, const ExtModel& X) {
    const Field& E = *X.E;
    std::uint64_t q0 = F0->q();
    std::uint64_t Q = ipow(q0, d);
    std::uint64_t all = Q * Q - 1;
    Fq nu0 = E.exp(static_cast<std::int64_t>(all / (q0 - 1)));
    Fq zeta = E.embed(F0->primitive(), *F0);
    std::uint64_t e = 0;
    Fq x = 1;
    for (std::uint64_t k = 1; k < q0; ++k) {
        x = E.mul(x, nu0);
        if (x == zeta) {
            e = k;
            break;
        }
    }
    if (e == 0 || e % 2 == 0) fail(Errc::Internal, "field generator is not an odd power of the norm generator");
    std::uint64_t j = 1 + (e - 1) / 2 * (Q + 1);
    return ((Q - 1) / (q0 - 1)) % all * (j % all) % all;
}

std::uint64_t order_of_exponent(std::uint64_t k, std::uint64_t group) { return group / std::gcd(group, k % group); }

struct OrthBlock {
    MatF y;
    MatF quad;
};

OrthBlock orth_A(unsigned d, const FieldPtr& F0) {
    ExtModel X(F0, 2 * d);
    const Field& E = *X.E;
    std::uint64_t Q = ipow(F0->q(), d);
    Fq half = F0->inv(F0->from_int(2));
    auto Qf = [&](Fq x) { return F0->mul(half, X.tr(E.pow(x, static_cast<std::int64_t>(Q + 1)))); };
    auto Bf = [&](Fq x, Fq y) { return X.tr(E.mul(x, E.pow(y, static_cast<std::int64_t>(Q)))); };
    MatF quad(F0, 2 * d);
    for (unsigned i = 0; i < 2 * d; ++i) {
        quad.at(i, i) = Qf(X.basis[i]);
        for (unsigned j = i + 1; j < 2 * d; ++j) quad.at(i, j) = Bf(X.basis[i], X.basis[j]);
    }
    return {X.mult(E.exp(static_cast<std::int64_t>(Q - 1))), quad};
}

OrthBlock orth_B(unsigned d, const FieldPtr& F0) {
    MatF B = primitive_companion(d, F0);
    MatF quad(F0, 2 * d);
    for (unsigned i = 0; i < d; ++i) quad.at(i, d + i) = 1;
    return {block_diag({B, B.inv().transpose()}), quad};
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

std::uint64_t order_C(unsigned d, const FieldPtr& F0) {
    ExtModel X(F0, 2 * d);
    std::uint64_t Q = ipow(F0->q(), d);
    return order_of_exponent(c_exponent(d, F0, X), Q * Q - 1);
}

std::uint64_t order_D(unsigned d, const FieldPtr& F0) {
    Poly p;
    primitive_companion(d, F0, &p);
    FieldPtr L = Field::make(F0->p(), F0->f() * d);
    Poly pl;
    for (Fq c : p) pl.push_back(L->embed(c, *F0));
    for (Fq b = 1; b < L->q(); ++b) {
        if (poly_eval(*L, pl, b) != 0) continue;
        Fq zb = L->mul(L->embed(F0->primitive(), *F0), b);
        return lcm(L->mult_order(zb), L->q() - 1);
    }
    fail(Errc::Internal, "primitive polynomial has no root in its splitting field");
}

void need_odd(const FieldPtr& F0) {
    if (F0->p() == 2) fail(Errc::EvenCharacteristic, "this element needs odd q0");
}

}  // namespace

MatF element_A(unsigned d, const FieldPtr& F0) {
    if (d < 1) fail(Errc::InvalidArgument, "d must be positive");
    Unitary U(F0, d);
    MatF A = U.element(U.Q - 1);
    check_symplectic(A, 1, "A");
    return A;
}

MatF element_B(unsigned d, const FieldPtr& F0) {
    if (d < 1) fail(Errc::InvalidArgument, "d must be positive");
    MatF B = primitive_companion(d, F0);
    MatF y = split_block(B, B);
    check_symplectic(y, 1, "B");
    return y;
}

MatF element_C(unsigned d, const FieldPtr& F0) {
    if (d < 1) fail(Errc::InvalidArgument, "d must be positive");
    need_odd(F0);
    Unitary U(F0, d);
    MatF C = U.element(c_exponent(d, F0, U.X));
    check_symplectic(C, F0->primitive(), "C");
    return C;
}

MatF element_D(unsigned d, const FieldPtr& F0) {
    if (d < 1) fail(Errc::InvalidArgument, "d must be positive");
    MatF B = primitive_companion(d, F0);
    MatF y = split_block(B.scaled(F0->primitive()), B);
    check_symplectic(y, F0->primitive(), "D");
    return y;
}

Table7Element table7_element(Case c, unsigned m, const FieldPtr& F0, ThetaKind kind) {
    std::uint64_t q0 = F0->q();
    Table7Element out;
    switch (c) {
    case Case::S: {
        if (m < 3) fail(Errc::UnsupportedCase, "case S needs m >= 3");
        bool odd = m % 2 == 1;
        if (kind == ThetaKind::Field) {
            out.y = block_diag({element_A(1, F0), odd ? element_A(m - 1, F0) : element_B(m - 1, F0)});
            out.predicted_order = lcm(q0 + 1, odd ? ipow(q0, m - 1) + 1 : ipow(q0, m - 1) - 1);
        } else if (kind == ThetaKind::DiagField) {
            need_odd(F0);
            out.y = block_diag({element_C(1, F0), odd ? element_C(m - 1, F0) : element_D(m - 1, F0)});
            out.predicted_order = lcm(order_C(1, F0), odd ? order_C(m - 1, F0) : order_D(m - 1, F0));
        } else {
            fail(Errc::UnsupportedCase, "graph-field automorphisms only occur in case S4");
        }
        out.form = standard_symplectic_form(m, F0);
        break;
    }
    case Case::O: {
        if (m < 3) fail(Errc::UnsupportedCase, "case O needs m >= 3");
        need_odd(F0);
        if (kind == ThetaKind::GraphField) fail(Errc::UnsupportedCase, "graph-field automorphisms only occur in case S4");
        bool odd = m % 2 == 1;
        OrthBlock a = orth_A(1, F0);
        OrthBlock b = odd ? orth_A(m - 1, F0) : orth_B(m - 1, F0);
        MatF one = MatF::identity(F0, 1);
        out.y = block_diag({a.y, b.y, one});
        out.form = quadratic_form(F0, block_diag({a.quad, b.quad, one}));
        std::uint64_t n = lcm(q0 + 1, odd ? ipow(q0, m - 1) + 1 : ipow(q0, m - 1) - 1);
        if (kind == ThetaKind::Field) {
            out.y = out.y * out.y;
            n /= std::gcd<std::uint64_t>(n, 2);
        }
        out.predicted_order = n;
        break;
    }
    case Case::S4: {
        if (m != 2) fail(Errc::UnsupportedCase, "case S4 has m = 2");
        out.form = standard_symplectic_form(2, F0);
        if (kind == ThetaKind::Field) {
            out.y = element_A(2, F0);
            out.predicted_order = q0 * q0 + 1;
        } else if (kind == ThetaKind::GraphField) {
            if (F0->p() != 2) fail(Errc::UnsupportedCase, "graph-field automorphisms need even q");
            auto r = ppd(q0, 4);
            if (!r) fail(Errc::UnsupportedCase, "q0^4 - 1 has no primitive prime divisor");
            out.y = element_A(2, F0).pow(static_cast<std::int64_t>((q0 * q0 + 1) / *r));
            out.predicted_order = *r;
        } else {
            need_odd(F0);
            out.y = element_C(2, F0);
            out.predicted_order = order_C(2, F0);
        }
        break;
    }
    }
    if (out.y.order() != out.predicted_order) fail(Errc::ValidationFailed, "element order differs from the prediction");
    if (!semisimilarity_tau(SemilinearMap(out.y), out.form)) fail(Errc::FormMismatch, "element does not preserve its form");
    return out;
}

}  // namespace spreadlab
