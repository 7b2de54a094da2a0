#include <gtest/gtest.h>

#include "spreadlab/error.hpp"
#include "spreadlab/grpzoo.hpp"

using namespace spreadlab;

namespace {

ClassicalGroup zoo(const std::string& s) { return classical_group(parse_group_spec(s)); }

Vec unit(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

// Sp_{2d}(q0) acting on vectors, with the perm of y.
std::uint64_t centralizer_order(const MatF& y) {
    GroupSpec s;
    s.family = Family::Sp;
    s.m = static_cast<unsigned>(y.dim() / 2);
    s.field = y.field();
    s.domain = DomainKind::Vectors;
    ClassicalGroup G = classical_group(s);
    Perm p = G.perm_of(SemilinearMap(y));
    EXPECT_TRUE(G.group.contains(p));
    return conj_orbit_with_stabilizer(G.group, p).centralizer.order();
}

}  // namespace

TEST(Forms, StandardSymplecticGram) {
    auto F2 = Field::make(2, 1);
    FormSpec s = standard_symplectic_form(1, F2);
    EXPECT_EQ(s.gram.at(0, 0), 0u);
    EXPECT_EQ(s.gram.at(0, 1), 1u);
    EXPECT_EQ(s.gram.at(1, 0), 1u);
    EXPECT_EQ(s.gram.at(1, 1), 0u);
    auto F3 = Field::make(3, 1);
    FormSpec t = standard_symplectic_form(2, F3);
    EXPECT_EQ(t.gram.rank(), 4u);
    EXPECT_NO_THROW(t.validate());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(t.gram.at(i, i), 0u);
    EXPECT_EQ(t.bilinear(unit(4, 0), unit(4, 1)), 1u);
    EXPECT_EQ(t.bilinear(unit(4, 0), unit(4, 3)), 0u);
    EXPECT_EQ(t.bilinear(unit(4, 2), unit(4, 3)), 1u);
}

TEST(Forms, SimilarityTau) {
    auto F = Field::make(5, 1);
    FormSpec s = standard_symplectic_form(2, F);
    Fq z = F->primitive();
    MatF d = MatF::identity(F, 4);
    d.at(0, 0) = z;
    d.at(2, 2) = z;
    EXPECT_EQ(similarity_tau(d, s), z);
    EXPECT_EQ(similarity_tau(MatF::scalar(F, 4, 3), s), F->mul(3, 3));
    EXPECT_EQ(similarity_tau(element_A(2, F), s), 1u);
    MatF bad = MatF::identity(F, 4);
    bad.at(0, 0) = 2;
    EXPECT_THROW(similarity_tau(bad, s), Error);
}

TEST(Forms, SymplecticBasisIsHyperbolic) {
    auto F = Field::make(3, 1);
    FormSpec s = standard_symplectic_form(2, F);
    // A scrambled alternating form: M G M^T for an invertible M.
    MatF M = MatF::from_rows(F, {{1, 2, 0, 1}, {0, 1, 1, 0}, {2, 0, 1, 1}, {0, 0, 2, 1}});
    ASSERT_TRUE(M.inverse());
    MatF G = M * s.gram * M.transpose();
    MatF B = symplectic_basis(G);
    EXPECT_EQ(B * G * B.transpose(), s.gram);
}

TEST(Semilinear, CompositionMatchesPointAction) {
    auto F = Field::make(2, 2);
    VectorDomain D(F, 3, DomainKind::Projective);
    Rng rng = make_stream(3, 0);
    auto rnd = [&] {
        for (;;) {
            MatF A(F, 3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) A.at(i, j) = static_cast<Fq>(uniform_below(rng, 4));
            if (A.det()) return SemilinearMap(A, static_cast<std::int64_t>(uniform_below(rng, 2)));
        }
    };
    for (int t = 0; t < 30; ++t) {
        SemilinearMap a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(D.perm_of(a * b), D.perm_of(a) * D.perm_of(b));
        EXPECT_TRUE((a * a.inverse()).A.is_identity());
        auto back = D.map_of(D.perm_of(a));
        ASSERT_TRUE(back);
        EXPECT_EQ(D.perm_of(*back), D.perm_of(a));
        EXPECT_EQ(back->frob, a.frob);
    }
}

TEST(Classical, Orders) {
    ClassicalGroup a = zoo("Sp4(2)");
    EXPECT_EQ(a.group.degree(), 15u);
    EXPECT_EQ(a.group.order(), 720u);
    ClassicalGroup b = zoo("PSp4(3)");
    EXPECT_EQ(b.group.degree(), 40u);
    EXPECT_EQ(b.group.order(), 25920u);
    ClassicalGroup c = zoo("Sp4(4)");
    EXPECT_EQ(c.group.degree(), 85u);
    EXPECT_EQ(c.group.order(), 979200u);
    EXPECT_EQ(zoo("Sp2(3)@vectors").group.order(), 24u);
    EXPECT_EQ(zoo("GSp2(3)@vectors").group.order(), 48u);
    EXPECT_EQ(zoo("PGSp4(3)").group.order(), 51840u);
    EXPECT_EQ(zoo("Sp6(2)").group.order(), 1451520u);
    EXPECT_EQ(zoo("SO3(3)").group.order(), 24u);
    EXPECT_EQ(zoo("SO5(3)").group.order(), 51840u);
    EXPECT_EQ(zoo("Omega5(3)").group.order(), 25920u);
}

TEST(Classical, GeneratorsPreserveForms) {
    for (const char* s : {"Sp4(3)@vectors", "PSp4(3)", "Sp4(4)", "GSp4(3)@vectors", "SO5(3)", "Omega5(3)"}) {
        ClassicalGroup G = zoo(s);
        ASSERT_EQ(G.base_maps.size(), G.base.gens().size()) << s;
        for (std::size_t i = 0; i < G.base_maps.size(); ++i) {
            auto tau = semisimilarity_tau(G.base_maps[i], G.form);
            ASSERT_TRUE(tau) << s;
            if (G.spec.family != Family::GSp) EXPECT_EQ(*tau, 1u) << s;
            EXPECT_EQ(G.perm_of(G.base_maps[i]), G.base.gens()[i]) << s;
        }
    }
}

TEST(Classical, TauIsMultiplicativeOnGSp) {
    ClassicalGroup G = zoo("GSp4(5)@vectors");
    const Field& F = *G.spec.field;
    auto& g = G.base_maps;
    ASSERT_GE(g.size(), 2u);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            EXPECT_EQ(similarity_tau((g[i] * g[j]).A, G.form),
                      F.mul(similarity_tau(g[i].A, G.form), similarity_tau(g[j].A, G.form)));
}

TEST(Classical, SemilinearExtensions) {
    ClassicalGroup a = zoo("Sp4(4):phi");
    EXPECT_EQ(a.group.order(), 1958400u);
    EXPECT_EQ(a.base.order(), 979200u);
    EXPECT_EQ(a.theta_order, 2u);
    ASSERT_TRUE(a.theta);
    EXPECT_FALSE(a.base.contains(*a.theta));
    ClassicalGroup b = zoo("PSp4(3):delta");
    EXPECT_EQ(b.group.order(), 51840u);
    EXPECT_EQ(b.group.degree(), 40u);
    ClassicalGroup c = zoo("Omega5(3):delta");
    EXPECT_EQ(c.group.order(), 51840u);
    // theta = identity leaves T alone
    ClassicalGroup t = zoo("PSp4(3)");
    ClassicalGroup same = semilinear_extension(t, SemilinearMap::identity(t.spec.field, 4));
    EXPECT_EQ(same.group.order(), t.group.order());
    EXPECT_EQ(same.theta_order, 1u);
    MatF g = MatF::identity(t.spec.field, 4);
    g.at(0, 2) = 1;
    EXPECT_THROW(
        try { semilinear_extension(t, SemilinearMap(g)); } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::DomainNotStable);
            throw;
        },
        Error);
}

TEST(Classical, SpecParsing) {
    GroupSpec s = parse_group_spec("PSp4(3):delta");
    EXPECT_EQ(s.family, Family::Sp);
    EXPECT_EQ(s.m, 2u);
    EXPECT_TRUE(s.theta.delta);
    EXPECT_EQ(s.str(), "PSp4(3):delta");
    EXPECT_EQ(parse_group_spec("Sp4(4):phi").theta.frob, 1);
    EXPECT_EQ(parse_group_spec("Sp4(4):phi").str(), "Sp4(4):phi");
    EXPECT_EQ(parse_group_spec("Omega7(3):delta*phi^1").str(), "Omega7(3):delta");
    EXPECT_THROW(parse_group_spec("Sp5(3)"), Error);
    EXPECT_THROW(parse_group_spec("Sp4(6)"), Error);
    EXPECT_THROW(parse_group_spec("Sp4(3):rho"), Error);
    EXPECT_THROW(classical_order(Family::SO, 2, 4), Error);
}

TEST(Atlas, OrdersAndLabels) {
    EXPECT_EQ(atlas_group("PGammaL29").group.order(), 1440u);
    EXPECT_EQ(atlas_group("A6").group.order(), 360u);
    EXPECT_EQ(atlas_group("A6").group.degree(), 10u);
    EXPECT_EQ(atlas_group("A5").group.order(), 60u);
    PermGroup a6 = atlas_group("A6").group;
    std::map<std::string, std::uint64_t> max_order;
    for (const char* n : {"S6", "PGL29", "M10"}) {
        PermGroup H = atlas_group(n).group;
        EXPECT_EQ(H.order(), 720u);
        for (const Perm& g : a6.gens()) EXPECT_TRUE(H.contains(g));
        std::uint64_t best = 0;
        for (const Perm& g : enumerate_by_closure(10, H.gens(), 720)) best = std::max<std::uint64_t>(best, g.order());
        max_order[n] = best;
    }
    EXPECT_EQ(max_order["PGL29"], 10u);
    EXPECT_EQ(max_order["S6"], 6u);
    EXPECT_EQ(max_order["M10"], 8u);
    EXPECT_THROW(atlas_group("J1"), Error);
}

TEST(Factories, ElementA) {
    for (auto [d, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {1, 5}, {2, 2}, {2, 3}, {3, 2}}) {
        auto ps = prime_factors(q);
        auto F = Field::make(static_cast<unsigned>(ps[0]), q == 4 ? 2 : 1);
        MatF A = element_A(d, F);
        std::uint64_t Q = checked_pow(q, d);
        EXPECT_EQ(A.order(), Q + 1) << d << "," << q;
        EXPECT_EQ(similarity_tau(A, standard_symplectic_form(d, F)), 1u);
        auto fac = poly_factor(*F, A.charpoly());
        for (auto& [p, e] : fac) EXPECT_EQ(poly_deg(p), static_cast<int>(2 * d));
    }
}

TEST(Factories, ElementACentralizer) {
    for (auto [d, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {1, 5}, {2, 2}, {2, 3}}) {
        auto F = Field::make(q, 1);
        EXPECT_EQ(centralizer_order(element_A(d, F)), checked_pow(q, d) + 1) << d << "," << q;
    }
}

TEST(Factories, ElementB) {
    auto F3 = Field::make(3, 1), F2 = Field::make(2, 1);
    MatF b = element_B(2, F3);
    EXPECT_EQ(b.order(), 8u);
    MatF c = element_B(3, F2);
    EXPECT_EQ(c.order(), 7u);
    // six distinct eigenvalues: the characteristic polynomial is squarefree
    for (auto& [p, e] : poly_factor(*F2, c.charpoly())) EXPECT_EQ(e, 1);
    EXPECT_EQ(centralizer_order(c), 7u);
    // span of the e_i is stable and totally isotropic
    FormSpec s = standard_symplectic_form(3, F2);
    for (std::size_t i = 0; i < 3; ++i) {
        Vec w = c.apply(unit(6, 2 * i));
        for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(w[2 * k + 1], 0u);
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(s.bilinear(unit(6, 2 * i), unit(6, 2 * j)), 0u);
    }
}

TEST(Factories, ElementCSquaresToA) {
    for (auto [d, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {1, 5}, {2, 3}}) {
        auto F = Field::make(q, 1);
        MatF C = element_C(d, F);
        MatF A = element_A(d, F);
        EXPECT_EQ(C.pow(q - 1), A);
        FormSpec s = standard_symplectic_form(d, F);
        EXPECT_EQ(similarity_tau(C, s), F->primitive());
        EXPECT_NE(similarity_tau(C, s), 1u);
        EXPECT_EQ(F->pow(similarity_tau(C, s), q - 1), similarity_tau(A, s));
        EXPECT_EQ(similarity_tau(element_D(d, F), s), F->primitive());
    }
    EXPECT_THROW(element_C(1, Field::make(2, 1)), Error);
}

TEST(Factories, ElementCBruteForceInGSp23) {
    auto F = Field::make(3, 1);
    FormSpec s = standard_symplectic_form(1, F);
    MatF A = element_A(1, F), C = element_C(1, F);
    int gsp = 0, solutions = 0;
    bool found = false;
    for (std::uint32_t code = 0; code < 81; ++code) {
        MatF X(F, 2);
        std::uint32_t t = code;
        for (std::size_t i = 0; i < 4; ++i, t /= 3) X.at(i / 2, i % 2) = t % 3;
        if (!X.det()) continue;
        ++gsp;
        if (similarity_tau(X, s) == F->primitive() && X * X == A) {
            ++solutions;
            found = found || X == C;
        }
    }
    EXPECT_EQ(gsp, 48);
    EXPECT_EQ(solutions, 2);  // C and C A^2 = -C
    EXPECT_TRUE(found);
}

TEST(Factories, Table7) {
    auto F2 = Field::make(2, 1), F3 = Field::make(3, 1), F4 = Field::make(2, 2);
    EXPECT_EQ(table7_element(Case::S, 3, F2, ThetaKind::Field).predicted_order, 15u);
    EXPECT_EQ(table7_element(Case::S, 4, F3, ThetaKind::Field).predicted_order, 52u);
    EXPECT_EQ(table7_element(Case::S4, 2, F2, ThetaKind::Field).y.order(), 5u);
    EXPECT_EQ(table7_element(Case::S4, 2, F4, ThetaKind::GraphField).predicted_order, 17u);
    EXPECT_EQ(table7_element(Case::S4, 2, F3, ThetaKind::DiagField).y.order(), 20u);
    EXPECT_EQ(table7_element(Case::S, 3, F3, ThetaKind::DiagField).y.dim(), 6u);
    EXPECT_EQ(table7_element(Case::S, 4, F3, ThetaKind::DiagField).y.dim(), 8u);
    Table7Element o = table7_element(Case::O, 3, F3, ThetaKind::Field);
    EXPECT_EQ(o.y.dim(), 7u);
    EXPECT_EQ(o.y.det(), 1u);
    EXPECT_EQ(o.predicted_order, 10u);
    EXPECT_EQ(table7_element(Case::O, 4, F3, ThetaKind::DiagField).predicted_order, 52u);
    EXPECT_THROW(table7_element(Case::S, 2, F3, ThetaKind::Field), Error);
    EXPECT_THROW(table7_element(Case::S, 3, F2, ThetaKind::DiagField), Error);
    EXPECT_THROW(table7_element(Case::S4, 2, F3, ThetaKind::GraphField), Error);
}
