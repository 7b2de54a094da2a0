#include <gtest/gtest.h>

#include <algorithm>

#include "spreadlab/conjtab.hpp"
#include "spreadlab/error.hpp"
#include "spreadlab/grpzoo.hpp"
#include "spreadlab/subfpr.hpp"

using namespace spreadlab;

namespace {

PermGroup sym(std::size_t n) {
    std::vector<Point> c(n), t(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = static_cast<Point>((i + 1) % n);
        t[i] = static_cast<Point>(i);
    }
    std::swap(t[0], t[1]);
    return PermGroup(n, {Perm(c), Perm(t)});
}

PermGroup alt5() { return PermGroup(5, {Perm::from_cycles(5, "(0 1 2 3 4)"), Perm::from_cycles(5, "(0 1 2)")}); }

std::vector<std::uint64_t> orders(const std::vector<SubgroupHandle>& hs) {
    std::vector<std::uint64_t> out;
    for (const auto& h : hs) out.push_back(h.order());
    std::sort(out.begin(), out.end());
    return out;
}

MatF mat(const FieldPtr& F, std::vector<Vec> rows) { return MatF::from_rows(F, rows); }

}  // namespace

TEST(Nu, SmallExamples) {
    auto F4 = make_field(2, 2);
    EXPECT_EQ(nu(MatF::identity(F4, 4)), 0u);
    FormSpec sp = standard_symplectic_form(2, F4);
    EXPECT_EQ(nu(transvection(sp, {1, 0, 0, 0}, 1)), 1u);
    auto F3 = make_field(3, 1);
    MatF d = MatF::identity(F3, 5);
    for (int i = 0; i < 4; ++i) d.at(i, i) = 2;
    EXPECT_EQ(nu(d), 1u);
    Fq z = F4->primitive();
    EXPECT_EQ(nu(mat(F4, {{z, 0, 0, 0}, {0, F4->inv(z), 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})), 2u);
    // Order 5 in SL2(4): both eigenvalues live in GF(16).
    MatF r = mat(F4, {{0, 1}, {1, z}});
    EXPECT_EQ(nu(r), 1u);
    // Scalars have a full eigenspace.
    EXPECT_EQ(nu(MatF::scalar(F4, 3, z)), 0u);
    EXPECT_THROW(nu(SemilinearMap::field_auto(F4, 4, 1)), Error);
}

TEST(Fpr, AlternatingPointStabilizer) {
    PermGroup G = alt5();
    ClassTable t = conjugacy_classes(G);
    auto H = make_subgroup(G, {Perm::from_cycles(5, "(0 1 2)"), Perm::from_cycles(5, "(1 2 3)")}, "A4", 12);
    Perm x = Perm::from_cycles(5, "(0 1)(2 3)");
    std::uint32_t cx = t.class_of(x);
    EXPECT_EQ(exact_fpr(G, t, cx, H), Rational(1, 5));
    EXPECT_EQ(fpr_by_action(G, x, H), Rational(1, 5));
    // Fixed points of x on the 5 cosets.
    EXPECT_EQ(Rational(x.fixed_points(), 5), Rational(1, 5));
    EXPECT_EQ(overgroup_count(G, t, cx, H), 1u);
    EXPECT_EQ(overgroup_count_direct(G, x, H), 1u);
    std::uint32_t id = t.class_of(G.identity());
    EXPECT_EQ(exact_fpr(G, t, id, H), 1);
    EXPECT_EQ(overgroup_count(G, t, id, H), 5u);
    Perm five = Perm::from_cycles(5, "(0 1 2 3 4)");
    EXPECT_EQ(exact_fpr(G, t, t.class_of(five), H), 0);
    EXPECT_EQ(overgroup_count_direct(G, five, H), 0u);
}

TEST(Fpr, NormalSubgroupIsRejected) {
    PermGroup G = sym(6);
    ClassTable t = conjugacy_classes(G);
    auto A6 = make_subgroup(G, derived_subgroup(G).gens(), "A6", 360);
    try {
        overgroup_count(G, t, 0, A6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotSelfNormalizing);
    }
    EXPECT_THROW(make_subgroup(alt5(), {Perm::from_cycles(5, "(0 1)")}, "bad"), Error);
}

TEST(Fpr, OvergroupCountMatchesListing) {
    PermGroup G = sym(6);
    ClassTable t = conjugacy_classes(G);
    for (const auto& H : maximal_subgroups_tiny(G)) {
        if (H.order() == 360) continue;
        for (std::uint32_t c = 0; c < t.size(); ++c) {
            EXPECT_EQ(fpr_by_action(G, t[c].rep, H), exact_fpr(G, t, c, H)) << H.label;
            EXPECT_EQ(overgroup_count(G, t, c, H), overgroup_count_direct(G, t[c].rep, H)) << H.label;
        }
    }
}

TEST(MaximalTiny, KnownLattices) {
    auto a5 = maximal_subgroups_tiny(alt5());
    EXPECT_EQ(orders(a5), (std::vector<std::uint64_t>{6, 10, 12}));
    auto s6 = maximal_subgroups_tiny(sym(6));
    EXPECT_EQ(orders(s6), (std::vector<std::uint64_t>{48, 48, 72, 120, 120, 360}));
    PermGroup c7(7, {Perm::from_cycles(7, "(0 1 2 3 4 5 6)")});
    auto c = maximal_subgroups_tiny(c7);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].order(), 1u);
    EXPECT_EQ(c[0].label, "order 1, index 7");
    EXPECT_THROW(maximal_subgroups_tiny(sym(8)), Error);
}

TEST(MaximalTiny, SamplingAgrees) {
    PermGroup G = sym(6);
    for (const auto& H : maximal_subgroups_tiny(G)) EXPECT_TRUE(sample_maximality(G, H, 300)) << H.label;
    auto A4 = make_subgroup(alt5(), {Perm::from_cycles(5, "(0 1)(2 3)"), Perm::from_cycles(5, "(0 2)(1 3)")}, "V4");
    EXPECT_FALSE(sample_maximality(alt5(), A4, 300));
}

TEST(ProbBound, InequalityOnSmallGroups) {
    for (PermGroup G : {alt5(), sym(6), atlas_group("A6").group}) {
        ClassTable t = conjugacy_classes(G);
        auto maximal = maximal_subgroups_tiny(G);
        auto exact = exact_uniform_spread(G);
        for (std::uint32_t s = 1; s < t.size(); ++s) {
            auto rep = prob_bound_report(G, t, s, maximal);
            EXPECT_TRUE(rep.inequality_holds) << "s class " << s;
            for (const auto& row : rep.rows) EXPECT_LE(row.P, row.fpr_sum);
            if (rep.verdict_k && exact.per_class[s]) EXPECT_LE(*rep.verdict_k, *exact.per_class[s]);
        }
    }
    ClassTable t = conjugacy_classes(alt5());
    EXPECT_THROW(prob_bound_report(alt5(), t, 1, {}), Error);
}

TEST(ProbBound, ReportText) {
    PermGroup G = alt5();
    ClassTable t = conjugacy_classes(G);
    std::uint32_t s = t.class_of(Perm::from_cycles(5, "(0 1 2 3 4)"));
    auto rep = prob_bound_report(G, t, s, maximal_subgroups_tiny(G));
    std::string text = rep.to_text();
    EXPECT_NE(text.find("inequality = holds"), std::string::npos);
    // A 5-cycle lies in exactly one D10 and in no A4 or S3.
    ASSERT_EQ(rep.overgroups.size(), 1u);
    EXPECT_EQ(rep.overgroups[0].second, 1u);
}

TEST(Quadratic, Census) {
    auto sp42 = classical_group(parse_group_spec("Sp4(2)"));
    auto c2 = quadratic_type_subgroups(sp42);
    EXPECT_EQ(c2.forms, 16u);
    EXPECT_EQ(c2.plus, 10u);
    EXPECT_EQ(c2.minus, 6u);
    EXPECT_EQ(c2.orbits, 2u);
    ASSERT_EQ(c2.subgroups.size(), 2u);
    EXPECT_EQ(c2.subgroups[0].order(), 72u);
    EXPECT_EQ(c2.subgroups[1].order(), 120u);
    EXPECT_EQ(fixed_form_counts(sp42, sp42.group.identity()), (std::pair<std::uint64_t, std::uint64_t>{10, 6}));

    auto sp44 = classical_group(parse_group_spec("Sp4(4):phi"));
    auto c4 = quadratic_type_subgroups(sp44);
    EXPECT_EQ(c4.forms, 256u);
    EXPECT_EQ(c4.plus, 136u);
    EXPECT_EQ(c4.minus, 120u);
    EXPECT_EQ(c4.orbits, 2u);
    EXPECT_EQ(c4.subgroups[0].order() * 136, sp44.group.order());
    EXPECT_EQ(c4.subgroups[1].order() * 120, sp44.group.order());
    EXPECT_THROW(quadratic_type_subgroups(classical_group(parse_group_spec("Sp4(3)"))), Error);
}

TEST(Quadratic, ActionIsAnAction) {
    auto G = classical_group(parse_group_spec("Sp4(4):phi"));
    QuadraticForms Q(G.form);
    auto maps = group_gen_maps(G);
    SemilinearMap ab = maps[0] * maps.back();
    for (std::uint64_t c = 0; c < Q.count(); c += 7) {
        EXPECT_EQ(Q.act(Q.act(c, maps[0]), maps.back()), Q.act(c, ab));
        EXPECT_EQ(Q.plus_type(Q.act(c, maps.back())), Q.plus_type(c));
    }
}

TEST(Bounds, PrintedExamples) {
    BoundFormula f;
    f.kind = BoundKind::Sp4NonSubspace;
    f.q = 4;
    EXPECT_EQ(*bound_value(f).exact, Rational(1, 3));
    f.sp4_type = Sp4Type::WreathOrExtension;
    f.a2_or_t2 = true;
    EXPECT_EQ(*bound_value(f).exact, Rational(4, 15));
    f.sp4_type = Sp4Type::Suzuki;
    f.q = 8;
    EXPECT_EQ(*bound_value(f).exact, Rational(1, 64));

    BoundFormula o;
    o.kind = BoundKind::QuadraticType;
    o.q = 4;
    o.m = 2;
    o.nu = 2;
    EXPECT_EQ(*bound_value(o).exact, Rational(1, 8));
    o.nu = 1;
    EXPECT_EQ(*bound_value(o).exact, Rational(1, 4) + Rational(1, 16));

    BoundFormula two;
    two.kind = BoundKind::NondegenerateTwoSpace;
    two.q = 4;
    two.m = 3;
    two.linear = false;
    EXPECT_EQ(*bound_value(two).exact, Rational(2, 1024));

    BoundFormula bad = f;
    bad.kind = BoundKind::Sp4NonSubspace;
    bad.q = 5;
    EXPECT_THROW(bound_value(bad), Error);
    BoundFormula iso;
    iso.kind = BoundKind::TotallyIsotropic;
    iso.m = 2;
    EXPECT_THROW(bound_value(iso), Error);
    BoundFormula tr;
    tr.kind = BoundKind::SubfieldTransvection;
    tr.nu = 2;
    EXPECT_THROW(bound_value(tr), Error);
}

TEST(Bounds, IrrationalComparison) {
    BoundFormula f;
    f.kind = BoundKind::NonSubspaceSp;
    f.q = 2;
    f.m = 3;
    auto b = bound_value(f);  // sqrt(6)/4
    EXPECT_FALSE(b.exact);
    EXPECT_LT(b.lo, 0.6124L);
    EXPECT_GT(b.hi, 0.6123L);
    EXPECT_TRUE(b.admits(Rational(1, 2)));
    EXPECT_FALSE(b.admits(Rational(7, 10)));
    f.ell = ell_for_type("Sp_m(q) wr S2");
    EXPECT_EQ(f.ell, 2);
    EXPECT_NEAR(static_cast<double>(bound_value(f).lo), std::sqrt(6.0) / 2, 1e-12);
    EXPECT_EQ(ell_for_type("unknown"), 1);
}

TEST(Bounds, ATypeInvolution) {
    auto F = make_field(2, 2);
    FormSpec sp = standard_symplectic_form(2, F);
    MatF a2 = mat(F, {{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {1, 0, 0, 1}});
    ASSERT_TRUE(preserves_form(SemilinearMap(a2), sp));
    EXPECT_TRUE(is_a_type_involution(a2, sp));
    EXPECT_FALSE(is_a_type_involution(transvection(sp, {1, 0, 0, 0}, 1), sp));
    EXPECT_FALSE(is_a_type_involution(MatF::identity(F, 4), sp));
}

TEST(Curated, Sp44Phi) {
    auto G = classical_group(parse_group_spec("Sp4(4):phi"));
    auto list = curated_maximal_subgroups(G);
    EXPECT_EQ(orders(list), (std::vector<std::uint64_t>{1440, 14400, 14400, 16320, 16320}));
    ClassTable t = conjugacy_classes(G.group);
    for (const auto& r : fpr_bound_check(G, t, list)) {
        EXPECT_TRUE(r.satisfied) << r.label << " class " << r.x_class << " fpr " << r.fpr << " vs " << r.formula;
        EXPECT_GE(r.fpr, 0);
        EXPECT_LE(r.fpr, 1);
    }
    for (const auto& H : list) EXPECT_TRUE(sample_maximality(G.group, H, 20)) << H.label;
}

TEST(Text, RoundTrip) {
    PermGroup G = sym(6);
    auto list = maximal_subgroups_tiny(G);
    auto back = subgroups_from_text(G, subgroups_to_text(list));
    ASSERT_EQ(back.size(), list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        EXPECT_EQ(back[i].label, list[i].label);
        EXPECT_EQ(back[i].order(), list[i].order());
    }
    try {
        subgroups_from_text(G, "subgroup label=x\n(0 1)\n(0 9 1)\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(subgroups_from_text(alt5(), "subgroup label=odd\n(0 1)\n"), Error);
}
