#include <gtest/gtest.h>

#include <map>
#include <set>

#include "spreadlab/error.hpp"
#include "spreadlab/permgroup.hpp"

using namespace spreadlab;

namespace {

Perm cyc(std::size_t n, const std::string& s) { return Perm::from_cycles(n, s); }

PermGroup sym(std::size_t n) {
    std::string c = "(";
    for (std::size_t i = 0; i < n; ++i) c += (i ? " " : "") + std::to_string(i);
    c += ")";
    return PermGroup(n, {cyc(n, c), cyc(n, "(0 1)")});
}

PermGroup alt5() { return PermGroup(5, {cyc(5, "(0 1 2 3 4)"), cyc(5, "(0 1 2)")}); }

}  // namespace

TEST(Perm, ComposeConvention) {
    // Right action: 0 -> 1 -> 2, 2 -> 2 -> 1, 1 -> 0 -> 0.
    EXPECT_EQ(compose(cyc(3, "(0 1)"), cyc(3, "(1 2)")), cyc(3, "(0 2 1)"));
    Perm a = cyc(5, "(0 3 1)(2 4)");
    EXPECT_TRUE(compose(a, inverse(a)).is_identity());
    EXPECT_TRUE(power(cyc(5, "(0 1 2 3 4)"), 5).is_identity());
    EXPECT_EQ(power(a, -1), inverse(a));
    EXPECT_EQ(power(a, 7), a * a * a * a * a * a * a);
    EXPECT_EQ(a.order(), 6u);
    EXPECT_THROW(compose(cyc(3, "(0 1)"), cyc(4, "(0 1)")), Error);
}

TEST(Perm, CycleRoundTrip) {
    Perm a = cyc(7, "(0 3 1)(2 4)");
    EXPECT_EQ(a.cycles(), "(0 3 1)(2 4)");
    EXPECT_EQ(Perm::from_cycles(7, a.cycles()), a);
    EXPECT_EQ(Perm(4).cycles(), "()");
    EXPECT_THROW(Perm::from_cycles(3, "(0 1 1)"), Error);
    EXPECT_THROW(Perm::from_cycles(3, "(0 5)"), Error);
    EXPECT_THROW(Perm::from_cycles(3, "(0 1"), Error);
}

TEST(SchreierSims, Orders) {
    EXPECT_EQ(alt5().order(), 60u);
    EXPECT_EQ(sym(6).order(), 720u);
    EXPECT_EQ(sym(8).order(), 40320u);
    EXPECT_EQ(PermGroup(4, {}).order(), 1u);
}

TEST(SchreierSims, KnownOrderPath) {
    PermGroup G(8, sym(8).gens(), std::uint64_t{40320});
    EXPECT_EQ(G.order(), 40320u);
    EXPECT_THROW(PermGroup(8, sym(8).gens(), std::uint64_t{20160}).order(), Error);
}

TEST(SchreierSims, Contains) {
    auto A = alt5();
    EXPECT_FALSE(A.contains(cyc(5, "(0 1)")));
    EXPECT_TRUE(A.contains(Perm(5)));
    EXPECT_TRUE(A.contains(cyc(5, "(0 1)(2 3)")));
    EXPECT_THROW(A.contains(Perm(6)), Error);
}

TEST(SchreierSims, ChainOrderMatchesClosure) {
    // Oracle: exhaustive closure, for a family of groups of order at most 5000.
    std::mt19937_64 rng(3);
    int checked = 0;
    for (std::size_t n : {4, 5, 6, 7}) {
        PermGroup S = sym(n);
        for (int t = 0; t < 12; ++t) {
            Rng r = make_stream(t, n);
            std::vector<Perm> gens{S.random_element(r), S.random_element(r)};
            if (t % 3 == 0) gens.push_back(S.random_element(r));
            std::vector<Perm> all;
            try {
                all = enumerate_by_closure(n, gens, 5000);
            } catch (const Error&) {
                continue;
            }
            PermGroup G(n, gens);
            EXPECT_EQ(G.order(), all.size());
            for (const auto& g : all) ASSERT_TRUE(G.contains(g));
            ++checked;
        }
    }
    // Dihedral and cyclic examples.
    EXPECT_EQ(PermGroup(9, {cyc(9, "(0 1 2 3 4 5 6 7 8)"), cyc(9, "(1 8)(2 7)(3 6)(4 5)")}).order(), 18u);
    EXPECT_EQ(PermGroup(7, {cyc(7, "(0 1)(2 3 4)(5 6)")}).order(), 6u);
    EXPECT_GT(checked, 20);
}

TEST(SchreierSims, RankUnrankBijection) {
    PermGroup S = sym(5);
    const auto& ch = S.chain();
    std::set<std::vector<Point>> seen;
    for (std::uint64_t r = 0; r < 120; ++r) {
        Perm g = ch.unrank(r);
        EXPECT_EQ(ch.rank(g), r);
        seen.insert(g.images());
    }
    EXPECT_EQ(seen.size(), 120u);
    EXPECT_FALSE(alt5().chain().rank_if_member(cyc(5, "(0 1)")).has_value());
}

TEST(SchreierSims, SiftOfRandomProductsIsIdentity) {
    PermGroup G = sym(7);
    Rng rng = make_stream(1, 2);
    for (int t = 0; t < 100; ++t) {
        Perm g(7);
        for (int k = 0; k < 10; ++k) g = g * G.gens()[uniform_below(rng, 2)];
        auto [h, drop] = G.chain().sift(g);
        EXPECT_EQ(drop, G.chain().depth());
        EXPECT_TRUE(h.is_identity());
    }
}

TEST(RandomElement, TrivialAndC2) {
    PermGroup T(3, {});
    Rng rng = make_stream(9, 0);
    EXPECT_TRUE(T.random_element(rng).is_identity());
    PermGroup C2(2, {cyc(2, "(0 1)")});
    int ident = 0;
    for (int i = 0; i < 2000; ++i) ident += C2.random_element(rng).is_identity();
    EXPECT_NEAR(ident, 1000, 5 * std::sqrt(2000 * 0.25));
}

TEST(RandomElement, UniformOnS3) {
    PermGroup S3 = sym(3);
    Rng rng = make_stream(4, 4);
    std::map<std::vector<Point>, int> freq;
    for (int i = 0; i < 6000; ++i) freq[S3.random_element(rng).images()]++;
    ASSERT_EQ(freq.size(), 6u);
    double sigma = std::sqrt(6000.0 * (1.0 / 6) * (5.0 / 6));
    for (auto& [k, v] : freq) EXPECT_NEAR(v, 1000, 5 * sigma);
}

TEST(IsGenerating, Examples) {
    PermGroup S5 = sym(5);
    EXPECT_TRUE(is_generating(S5, {cyc(5, "(0 1 2 3 4)"), cyc(5, "(0 1)")}));
    EXPECT_FALSE(is_generating(S5, {cyc(5, "(0 1 2)"), cyc(5, "(0 1)")}));
    EXPECT_FALSE(is_generating(S5, {Perm(5)}));
    EXPECT_TRUE(is_generating(PermGroup(5, {}), {Perm(5)}));
    EXPECT_THROW(is_generating(alt5(), {cyc(5, "(0 1)")}), Error);
}

TEST(IsGenerating, AgreesWithClosureOnS6Pairs) {
    PermGroup S6 = sym(6);
    Rng rng = make_stream(17, 6);
    for (int t = 0; t < 150; ++t) {
        Perm a = S6.random_element(rng), b = S6.random_element(rng);
        bool closure = enumerate_by_closure(6, {a, b}, 720).size() == 720;
        EXPECT_EQ(is_generating(S6, {a, b}), closure);
    }
}

TEST(ConjOrbit, Examples) {
    PermGroup S6 = sym(6);
    auto t = conj_orbit_with_stabilizer(S6, cyc(6, "(0 1)"));
    EXPECT_EQ(t.orbit_size, 15u);
    EXPECT_EQ(t.centralizer.order(), 48u);
    for (const auto& c : t.centralizer.gens()) EXPECT_EQ(c * cyc(6, "(0 1)"), cyc(6, "(0 1)") * c);
    auto id = conj_orbit_with_stabilizer(S6, Perm(6));
    EXPECT_EQ(id.orbit_size, 1u);
    EXPECT_EQ(id.centralizer.order(), 720u);
    auto f = conj_orbit_with_stabilizer(alt5(), cyc(5, "(0 1 2 3 4)"));
    EXPECT_EQ(f.orbit_size, 12u);
    EXPECT_EQ(f.centralizer.order(), 5u);
    EXPECT_THROW(conj_orbit_with_stabilizer(alt5(), cyc(5, "(0 1)")), Error);
}

TEST(ConjOrbit, OrbitStabilizerOnS7) {
    PermGroup S7 = sym(7);
    Rng rng = make_stream(2, 7);
    for (int t = 0; t < 20; ++t) {
        Perm x = S7.random_element(rng);
        auto r = conj_orbit_with_stabilizer(S7, x);
        EXPECT_EQ(r.orbit_size * r.centralizer.order(), 5040u);
    }
}

TEST(Derived, Examples) {
    auto D = derived_subgroup(sym(6));
    EXPECT_EQ(D.order(), 360u);
    EXPECT_EQ(derived_subgroup(alt5()).order(), 60u);
    EXPECT_EQ(derived_subgroup(PermGroup(4, {cyc(4, "(0 1 2 3)")})).order(), 1u);
}

TEST(Primitivity, Blocks) {
    EXPECT_TRUE(sym(6).is_primitive());
    PermGroup D4(4, {cyc(4, "(0 1 2 3)"), cyc(4, "(1 3)")});
    EXPECT_FALSE(D4.is_primitive());
    EXPECT_TRUE(PermGroup(5, {cyc(5, "(0 1 2 3 4)")}).is_cyclic());
    EXPECT_FALSE(sym(3).is_cyclic());
}
