#include <gtest/gtest.h>

#include "spreadlab/error.hpp"
#include "spreadlab/shintani.hpp"

using namespace spreadlab;

namespace {

const ClassicalGroup& big() {
    static const ClassicalGroup g = classical_group(parse_group_spec("Sp4(4):phi"));
    return g;
}

const ClassicalGroup& small() {
    static const ClassicalGroup g = classical_group(parse_group_spec("Sp4(2)"));
    return g;
}

// Sum over classes of size * fixed count, divided by the group order.
std::uint64_t burnside(const ClassTable& t, const std::vector<std::uint64_t>& fixed, std::uint64_t order) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < t.size(); ++i) s += t[i].size * fixed[i];
    EXPECT_EQ(s % order, 0u);
    return s / order;
}

}  // namespace

TEST(Shintani, Sp44PhiAgainstSp42) {
    auto rep = shintani_verify(big(), small());
    EXPECT_EQ(rep.e, 2u);
    EXPECT_EQ(rep.big_classes, 11u);
    EXPECT_EQ(rep.small_classes, 11u);
    for (const auto& s : rep.stats) EXPECT_TRUE(s.match) << s.name;
    EXPECT_TRUE(rep.pairing_perfect);
    EXPECT_NE(rep.to_text().find("verdict = match"), std::string::npos);
}

TEST(Shintani, SmallSideCensus) {
    ClassTable t = conjugacy_classes(small().group);
    EXPECT_EQ(epower_order_profile(t, 1), (std::vector<std::uint64_t>{1, 2, 2, 2, 3, 3, 4, 4, 5, 6, 6}));
    auto o = orthogonal_profile(small(), t);
    for (auto c : o.total) EXPECT_GE(c, 1u);
}

TEST(Shintani, TrivialThetaIsOrdinary) {
    auto rep = shintani_verify(small(), small());
    EXPECT_EQ(rep.e, 1u);
    EXPECT_TRUE(rep.all_match());
}

TEST(Shintani, BurnsideOnBothSides) {
    ClassTable bt = coset_or_ordinary(big().base, *big().theta);
    ClassTable st = conjugacy_classes(small().group);
    auto bs = subspaces(*big().domain, big().form, 1, SubspaceFlavor::TotallyIsotropic);
    auto ss = subspaces(*small().domain, small().form, 1, SubspaceFlavor::TotallyIsotropic);
    EXPECT_EQ(bs.size(), 85u);
    EXPECT_EQ(ss.size(), 15u);
    // The coset T theta has |T| members; both actions are transitive.
    EXPECT_EQ(burnside(bt, fixed_subspace_profile(bt, bs), big().base.order()), 1u);
    EXPECT_EQ(burnside(st, fixed_subspace_profile(st, ss), small().group.order()), 1u);
    // Totally isotropic lines and nondegenerate 2-spaces.
    EXPECT_EQ(subspaces(*small().domain, small().form, 2, SubspaceFlavor::TotallyIsotropic).size(), 15u);
    EXPECT_EQ(subspaces(*small().domain, small().form, 2, SubspaceFlavor::Nondegenerate).size(), 20u);
}

TEST(Shintani, LineProfilesMatch) {
    ShintaniOptions opt;
    opt.subspace_k = 2;
    opt.orthogonal = false;
    for (auto flavor : {SubspaceFlavor::TotallyIsotropic, SubspaceFlavor::Nondegenerate}) {
        opt.flavor = flavor;
        auto rep = shintani_verify(big(), small(), opt);
        EXPECT_TRUE(rep.all_match()) << rep.to_text();
    }
}

TEST(SimilarityNorm, RandomSamples) {
    auto F9 = make_field(3, 2);
    FormSpec form = standard_symplectic_form(2, F9);
    Rng rng = make_stream(5, 0);
    for (int i = 0; i < 500; ++i) {
        MatF g = random_similarity(2, F9, rng);
        EXPECT_TRUE(similarity_norm_identity(SemilinearMap(g, 1), form, 2));
    }
    MatF t = transvection(form, {1, 0, 0, 0}, 1);
    EXPECT_EQ(similarity_tau(t, form), 1u);
    EXPECT_TRUE(similarity_norm_identity(SemilinearMap(t, 1), form, 2));
    EXPECT_TRUE(similarity_norm_identity(SemilinearMap(t, 0), form, 1));
    MatF bad = MatF::identity(F9, 4);
    bad.at(0, 0) = 2;
    try {
        similarity_norm_identity(SemilinearMap(bad, 1), form, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotASimilarity);
    }
}

TEST(SimilarityNorm, SquareCoherence) {
    EXPECT_TRUE(norm_square_coherence(make_field(3, 3), make_field(3, 1)));
    EXPECT_TRUE(norm_square_coherence(make_field(5, 3), make_field(5, 1)));
    EXPECT_TRUE(norm_square_coherence(make_field(3, 2), make_field(3, 1)));
}

TEST(Suzuki, FixedSubgroupOfOuterInvolution) {
    auto r = sz_fixed_subgroup_check();
    EXPECT_GT(r.automorphisms_tried, 0u);
    EXPECT_TRUE(r.found_order_20);
    EXPECT_TRUE(r.nonabelian);
    EXPECT_TRUE(r.normal_sylow5);
    EXPECT_EQ(r.element_orders, (std::vector<std::uint64_t>{1, 2, 4, 5}));
}
