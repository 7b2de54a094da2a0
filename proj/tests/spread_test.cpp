#include <gtest/gtest.h>

#include <map>
#include <set>

#include "spreadlab/conjtab.hpp"
#include "spreadlab/error.hpp"
#include "spreadlab/grpzoo.hpp"
#include "spreadlab/spread.hpp"

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

PermGroup atlas(const std::string& name) { return atlas_group(name).group; }

std::uint32_t class_with_order(const ClassTable& t, std::uint64_t order) {
    for (std::uint32_t c = 0; c < t.size(); ++c)
        if (t[c].order == order) return c;
    return UINT32_MAX;
}

}  // namespace

TEST(Reduce, PrimeOrderPowers) {
    Perm six = Perm::from_cycles(5, "(0 1 2)(3 4)");
    EXPECT_EQ(reduce_to_prime_order(six), six.pow(3));
    EXPECT_EQ(reduce_to_prime_order(six).order(), 2u);
    Perm five = Perm::from_cycles(5, "(0 1 2 3 4)");
    EXPECT_EQ(reduce_to_prime_order(five), five);
    Perm nine = Perm::from_cycles(9, "(0 1 2 3 4 5 6 7 8)");
    EXPECT_EQ(reduce_to_prime_order(nine).order(), 3u);
    EXPECT_THROW(reduce_to_prime_order(Perm(4)), Error);
}

TEST(Blockers, MatchGenerationPredicate) {
    PermGroup A5 = atlas("A5");
    SmallGroup S(A5);
    auto bs = blocker_sets(S, std::nullopt, false);
    EXPECT_EQ(bs.size(), 59u);
    for (std::size_t i = 0; i < bs.size(); i += 7)
        for (std::uint64_t z = 1; z < S.size(); ++z)
            EXPECT_EQ(bs[i].members.test(z), !is_generating(A5, {S.elem(bs[i].anchor), S.elem(z)}));
}

TEST(Blockers, ConjugationSymmetry) {
    PermGroup S5 = sym(5);
    SmallGroup S(S5);
    auto bs = blocker_sets(S, std::nullopt);
    Perm g = Perm::from_cycles(5, "(0 3)(1 4 2)");
    for (const auto& b : bs) {
        std::uint64_t a2 = S.rank(conjugate(S.elem(b.anchor), g));
        const auto& other = *std::find_if(bs.begin(), bs.end(), [&](auto& x) { return x.anchor == a2; });
        for (std::uint64_t z = 1; z < S.size(); ++z)
            EXPECT_EQ(b.members.test(z), other.members.test(S.rank(conjugate(S.elem(z), g))));
    }
}

TEST(MinCover, SmallInstances) {
    auto bits = [](std::string s) {
        std::reverse(s.begin(), s.end());
        return Bits(s);
    };
    Bits U = bits("111111");
    std::vector<Bits> sets = {bits("110000"), bits("001100"), bits("000011"), bits("101010"), bits("010101")};
    auto c = min_cover(sets, U);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->size(), 2u);
    EXPECT_FALSE(min_cover({bits("110000")}, U));
    EXPECT_EQ(min_cover(sets, Bits(6))->size(), 0u);
}

TEST(ExactSpread, CyclicIsInfinite) {
    PermGroup C2(2, {Perm::from_cycles(2, "(0 1)")});
    EXPECT_FALSE(exact_spread(C2).value);
    EXPECT_FALSE(exact_uniform_spread(C2).value);
    PermGroup C5(5, {Perm::from_cycles(5, "(0 1 2 3 4)")});
    EXPECT_FALSE(exact_spread(C5).value);
}

TEST(ExactSpread, A5) {
    auto u = exact_uniform_spread(atlas("A5"));
    auto s = exact_spread(atlas("A5"));
    ASSERT_TRUE(u.value && s.value);
    EXPECT_EQ(*u.value, 2u);
    EXPECT_GE(*s.value, *u.value);
}

TEST(ExactSpread, A6AndS6) {
    auto uA6 = exact_uniform_spread(atlas("A6"));
    ASSERT_TRUE(uA6.value);
    EXPECT_EQ(*uA6.value, 2u);
    auto uS6 = exact_uniform_spread(atlas("S6"));
    ASSERT_TRUE(uS6.value);
    EXPECT_EQ(*uS6.value, 0u);
    auto sS6 = exact_spread(atlas("S6"));
    ASSERT_TRUE(sS6.value);
    EXPECT_EQ(*sS6.value, 2u);
}

TEST(ExactSpread, CoverIsVerified) {
    PermGroup S6 = atlas("S6");
    auto r = exact_spread(S6);
    ASSERT_EQ(r.cover.size(), *r.value + 1);
    // no nonidentity element generates with every anchor
    SmallGroup S(S6);
    for (std::uint64_t z = 1; z < S.size(); ++z) {
        bool all = true;
        for (const auto& x : r.cover) all = all && is_generating(S6, {x, S.elem(z)});
        EXPECT_FALSE(all);
    }
}

TEST(ExactSpread, ReductionEquivalence) {
    for (auto G : {sym(4), atlas("A5"), sym(5)}) {
        auto a = exact_spread(G, true), b = exact_spread(G, false);
        EXPECT_EQ(a.value, b.value);
        auto c = exact_uniform_spread(G, true), d = exact_uniform_spread(G, false);
        EXPECT_EQ(c.value, d.value);
        if (c.value && a.value) EXPECT_LE(*c.value, *a.value);
    }
}

TEST(ExactSpread, Budget) { EXPECT_THROW(exact_spread(sym(7)), Error); }

TEST(TupleReps, TranspositionPairsInS3) {
    PermGroup S3 = sym(3);
    auto t = conjugacy_classes(S3);
    auto c = class_with_order(t, 2);
    auto reps = tuple_orbit_reps(S3, t, {c, c});
    EXPECT_EQ(reps.size(), 2u);
    EXPECT_EQ(tuple_orbit_reps(S3, t, {c}).size(), 1u);
}

TEST(TupleReps, OrbitSizesSumToProduct) {
    for (auto G : {atlas("A5"), sym(5)}) {
        auto t = conjugacy_classes(G);
        auto primes = prime_order_classes(t);
        for (auto a : primes)
            for (auto b : primes) {
                std::uint64_t sum = 0;
                for (auto& r : tuple_orbit_reps(G, t, {a, b})) sum += r.orbit_size;
                EXPECT_EQ(sum, t[a].size * t[b].size);
            }
        std::uint64_t sum = 0;
        for (auto& r : tuple_orbit_reps(G, t, {primes[0], primes[1], primes[0]})) sum += r.orbit_size;
        EXPECT_EQ(sum, t[primes[0]].size * t[primes[1]].size * t[primes[0]].size);
    }
}

TEST(TupleReps, OneRepPerOrbit) {
    PermGroup S4 = sym(4);
    auto t = conjugacy_classes(S4);
    auto c2 = class_with_order(t, 2), c3 = class_with_order(t, 3);
    auto reps = tuple_orbit_reps(S4, t, {c2, c3});
    // direct orbit enumeration over all pairs
    auto all = enumerate_by_closure(4, S4.gens(), 100);
    std::set<std::pair<std::string, std::string>> seen;
    std::size_t orbits = 0;
    for (const auto& x : all)
        for (const auto& y : all) {
            if (t.class_of(x) != c2 || t.class_of(y) != c3 || seen.count({x.key(), y.key()})) continue;
            ++orbits;
            for (const auto& g : all) seen.insert({conjugate(x, g).key(), conjugate(y, g).key()});
        }
    EXPECT_EQ(reps.size(), orbits);
}

TEST(Graph, Diameters) {
    for (const char* name : {"A5", "A6"}) {
        auto g = generating_graph(atlas(name));
        auto d = graph_diameter(g);
        ASSERT_TRUE(d) << name;
        EXPECT_EQ(*d, 2u) << name;
    }
    EXPECT_EQ(isolated_vertices(generating_graph(atlas("S6"))), 0u);
    // S4 is not 3/2-generated: the double transpositions are isolated
    EXPECT_EQ(isolated_vertices(generating_graph(sym(4))), 3u);
    EXPECT_FALSE(graph_diameter(generating_graph(sym(4))));
}

TEST(ExactP, AgreesWithCounting) {
    PermGroup A5 = atlas("A5");
    auto t = conjugacy_classes(A5);
    SmallGroup S(A5);
    for (auto x : prime_order_classes(t))
        for (std::uint32_t s = 1; s < t.size(); ++s) {
            std::uint64_t bad = 0, total = 0;
            for (std::uint64_t z = 1; z < S.size(); ++z) {
                if (S.class_of(z) != x) continue;
                ++total;
                bad += !is_generating(A5, {S.elem(z), t[s].rep});
            }
            EXPECT_EQ(exact_P(A5, t, x, s), Rational(bad, total));
        }
}

TEST(Certify, A5SucceedsAtTwoAndFailsAtThree) {
    PermGroup A5 = atlas("A5");
    auto t = conjugacy_classes(A5);
    auto s = class_with_order(t, 5);
    CertifyOptions opt;
    opt.N = 30;
    auto c2 = certify_uniform_spread(A5, t, s, 2, opt, "A5");
    EXPECT_TRUE(c2.success);
    EXPECT_TRUE(replay_certificate(c2, A5, t));
    // u(A5) = 2, so no class survives k = 3
    for (std::uint32_t c = 1; c < t.size(); ++c) {
        auto c3 = certify_uniform_spread(A5, t, c, 3, opt, "A5");
        EXPECT_FALSE(c3.success);
        EXPECT_FALSE(c3.failing().empty());
        EXPECT_TRUE(replay_certificate(c3, A5, t));
    }
}

TEST(Certify, WithoutStageOneEveryTupleHasAWitness) {
    PermGroup A6 = atlas("A6");
    auto t = conjugacy_classes(A6);
    CertifyOptions opt;
    opt.stage1 = false;
    opt.N = 50;
    auto best = exact_uniform_spread(A6);
    ASSERT_TRUE(best.best_class);
    auto c = certify_uniform_spread(A6, t, *best.best_class, 2, opt, "A6");
    EXPECT_TRUE(c.success);
    for (const auto& r : c.records) {
        EXPECT_NE(r.status, TupleRecord::Status::Bound);
        ASSERT_TRUE(r.witness);
        for (const auto& x : r.tuple) EXPECT_TRUE(is_generating(A6, {x, *r.witness}));
    }
}

TEST(Certify, TextRoundTripAndJobsDeterminism) {
    PermGroup S6 = atlas("S6");
    auto t = conjugacy_classes(S6);
    CertifyOptions opt;
    opt.N = 20;
    opt.seed = 99;
    opt.stage1 = false;
    auto s = auto_class(S6, t, {});
    auto a = certify_uniform_spread(S6, t, s, 2, opt, "S6");
    opt.jobs = 8;
    auto b = certify_uniform_spread(S6, t, s, 2, opt, "S6");
    EXPECT_EQ(a.to_text(), b.to_text());
    auto back = SpreadCertificate::from_text(a.to_text());
    EXPECT_EQ(back.to_text(), a.to_text());
    std::string why;
    EXPECT_TRUE(replay_certificate(back, S6, t, &why)) << why;
    // u(S6) = 0
    EXPECT_FALSE(a.success);
}

TEST(Certify, ReplayRejectsTampering) {
    PermGroup A5 = atlas("A5");
    auto t = conjugacy_classes(A5);
    CertifyOptions opt;
    opt.stage1 = false;
    auto c = certify_uniform_spread(A5, t, class_with_order(t, 5), 2, opt);
    ASSERT_TRUE(c.success);
    auto bad = c;
    bad.records[0].witness = bad.records[0].tuple[0];
    std::string why;
    EXPECT_FALSE(replay_certificate(bad, A5, t, &why));
    EXPECT_FALSE(why.empty());
    auto dropped = c;
    dropped.records.pop_back();
    while (!dropped.records.empty() && dropped.records.back().classes == c.records.back().classes)
        dropped.records.pop_back();
    EXPECT_FALSE(replay_certificate(dropped, A5, t));
    EXPECT_THROW(SpreadCertificate::from_text("nonsense"), Error);
}
