#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "spreadlab/conjtab.hpp"
#include "spreadlab/error.hpp"
#include "spreadlab/grpzoo.hpp"

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

std::uint64_t total(const ClassTable& t) {
    std::uint64_t s = 0;
    for (const auto& c : t.classes()) s += c.size;
    return s;
}

}  // namespace

TEST(Classes, S6HasElevenClasses) {
    ClassTable t = conjugacy_classes(sym(6));
    EXPECT_EQ(t.size(), 11u);
    EXPECT_EQ(total(t), 720u);
    for (const auto& c : t.classes()) EXPECT_EQ(c.size * c.centralizer, 720u);
    EXPECT_EQ(t[0].order, 1u);
    EXPECT_EQ(t[0].size, 1u);
}

TEST(Classes, A5Sizes) {
    ClassTable t = conjugacy_classes(atlas_group("A5").group);
    std::multiset<std::uint64_t> sizes;
    for (const auto& c : t.classes()) sizes.insert(c.size);
    EXPECT_EQ(sizes, (std::multiset<std::uint64_t>{1, 15, 20, 12, 12}));
}

TEST(Classes, ClassOfConjugatesAndIdentity) {
    PermGroup G = atlas_group("PGL29").group;
    ClassTable t = conjugacy_classes(G);
    Rng rng = make_stream(5, 0);
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        EXPECT_EQ(t.class_of(t[i].rep), i);
        Perm g = G.random_element(rng);
        EXPECT_EQ(t.class_of(conjugate(t[i].rep, g)), i);
    }
    EXPECT_EQ(t.class_of(G.identity()), 0u);
    Perm odd = Perm::from_cycles(10, "(0,1)");
    EXPECT_THROW(t.class_of(odd), Error);
}

TEST(Classes, PartitionAgainstClosure) {
    PermGroup G = atlas_group("M10").group;
    ClassTable t = conjugacy_classes(G);
    auto elems = enumerate_by_closure(10, G.gens(), 720);
    std::map<std::uint32_t, std::uint64_t> count;
    for (const auto& g : elems) ++count[t.class_of(g)];
    ASSERT_EQ(count.size(), t.size());
    for (auto [id, c] : count) EXPECT_EQ(c, t[id].size);
}

TEST(Classes, PowerMapConsistency) {
    PermGroup G = sym(6);
    ClassTable t = conjugacy_classes(G);
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        for (std::uint64_t r : prime_factors(t[i].order)) {
            std::set<std::uint32_t> targets;
            for (std::uint64_t rk : t.ranks_of(i))
                targets.insert(t.class_of(t.member(rk).pow(static_cast<std::int64_t>(t[i].order / r))));
            EXPECT_EQ(targets.size(), 1u);
        }
        for (auto [r, j] : t[i].power) EXPECT_EQ(t[j].order, t[i].order / r);
    }
}

TEST(Classes, DeterministicAcrossGeneratingSets) {
    PermGroup a = sym(5);
    PermGroup b(5, {Perm::from_cycles(5, "(0,1,2,3,4)"), Perm::from_cycles(5, "(0,1)"), Perm::from_cycles(5, "(1,2)")});
    ClassTable x = conjugacy_classes(a), y = conjugacy_classes(b);
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_EQ(x[i].rep, y[i].rep);
        EXPECT_EQ(x[i].size, y[i].size);
    }
}

TEST(CosetClasses, A6InS6) {
    PermGroup A6 = atlas_group("A6").group;
    PermGroup S6 = atlas_group("S6").group;
    Perm theta;
    for (const auto& g : S6.gens())
        if (!A6.contains(g)) theta = g;
    ASSERT_GT(theta.degree(), 0u);
    ClassTable t = coset_classes(A6, theta);
    // odd cycle types 2, 2^3, 4, 6 and 3+2; none splits since each odd
    // element centralizes itself
    EXPECT_EQ(t.size(), 5u);
    EXPECT_EQ(total(t), 360u);
    for (const auto& c : t.classes()) EXPECT_EQ(c.size * c.centralizer, 360u);
}

TEST(CosetClasses, ThetaInsideT) {
    PermGroup G = sym(5);
    Perm x = Perm::from_cycles(5, "(0,1,2)");
    ClassTable t = coset_classes(G, x);
    EXPECT_EQ(t.size(), 7u);
    EXPECT_EQ(total(t), 120u);
}

TEST(CosetClasses, NotNormalizing) {
    PermGroup A = atlas_group("A5").group;
    PermGroup C(5, {Perm::from_cycles(5, "(0,1,2,3,4)")});
    EXPECT_THROW(coset_classes(C, Perm::from_cycles(5, "(0,1)")), Error);
}

TEST(CosetClasses, Sp44PhiMatchesSp42Count) {
    ClassicalGroup big = classical_group(parse_group_spec("Sp4(4):phi"));
    ClassTable t = coset_classes(big.base, *big.theta);
    EXPECT_EQ(t.size(), 11u);
    EXPECT_EQ(total(t), 979200u);
    ClassTable small = conjugacy_classes(classical_group(parse_group_spec("Sp4(2)")).group);
    EXPECT_EQ(small.size(), 11u);
}

TEST(Classes, BudgetEnforced) {
    EXPECT_THROW(conjugacy_classes(sym(8), 1000), Error);
}
