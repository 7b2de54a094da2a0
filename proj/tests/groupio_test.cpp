#include <gtest/gtest.h>

#include "spreadlab/error.hpp"
#include "spreadlab/groupio.hpp"
#include "spreadlab/subfpr.hpp"

using namespace spreadlab;

namespace {

std::string data(const std::string& name) { return std::string(SPREADLAB_TEST_DATA) + "/" + name; }

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Internal;
}

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(PermFile, A5FromFile) { EXPECT_EQ(load_group(data("a5.perm")).group.order(), 60u); }

TEST(PermFile, RoundTrip) {
    LoadedGroup g = load_group("zoo:Sp4(2)");
    PermGroup back = perm_group_from_text(perm_group_to_text(g.group, "comment"));
    EXPECT_EQ(back.order(), 720u);
    EXPECT_EQ(back.gens(), g.group.gens());
}

TEST(PermFile, CorruptLineReportsLineNumber) {
    std::string text = "# header comment\nperm-group degree 5\n(0 1 2 3 4)\n\n(0 1 2\n";
    EXPECT_EQ(code_of([&] { perm_group_from_text(text); }), Errc::ParseError);
    EXPECT_NE(message_of([&] { perm_group_from_text(text); }).find("line 5"), std::string::npos);
    EXPECT_EQ(code_of([&] { perm_group_from_text("perm-group degree 3\nimages: 0 0 1\n"); }), Errc::ParseError);
    EXPECT_EQ(code_of([&] { perm_group_from_text("perm-group degree 3\nimages: 0 1\n"); }), Errc::ParseError);
    EXPECT_EQ(code_of([&] { perm_group_from_text("perm-group degre 3\n"); }), Errc::ParseError);
    EXPECT_EQ(code_of([&] { perm_group_from_text("perm-group degree 3\n(0 5)\n"); }), Errc::ParseError);
}

TEST(MatrixFile, Sp42HasOrder720) {
    EXPECT_EQ(load_group(data("sp4_2.matrix")).group.order(), 720u);
}

TEST(MatrixFile, SemilinearTuplesOverGF4) {
    std::string text =
        "matrix-group\n"
        "field 2 2 [1 1 1]\n"
        "(1,1) (0,0) (1,1) (0,1)\n"
        "(0,1) (1,1) (0,0) (1,1)\n"
        "(1, 0) 0 0 1 semilinear 1\n";
    MatrixGroupData d = matrix_group_from_text(text);
    ASSERT_EQ(d.gens.size(), 3u);
    EXPECT_EQ(d.gens[2].frob, 1);
    EXPECT_EQ(d.dim, 2u);
    // PSL2(4) extended by the field automorphism on the projective line
    EXPECT_EQ(matrix_group_action(d).order(), 120u);
    EXPECT_EQ(matrix_group_from_text(matrix_group_to_text(d)).gens, d.gens);
}

TEST(MatrixFile, Errors) {
    EXPECT_EQ(code_of([] { matrix_group_from_text("field 2 1\n1 0 0\n"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { matrix_group_from_text("field 2 1\n1 1 1 1\n"); }), Errc::ValidationFailed);
    EXPECT_EQ(code_of([] { matrix_group_from_text("field 4 1\n1 0 0 1\n"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { matrix_group_from_text("field 2 2 [1 0 1]\n1 0 0 1\n"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { matrix_group_from_text("field 3 1\n1 0 0 1\n1 0 0 0 1 0 0 0 1\n"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { matrix_group_from_text("field 3 1\n1 0 0 3\n"); }), Errc::ParseError);
}

TEST(Sources, ZooAndAtlas) {
    LoadedGroup z = load_group("zoo:Sp2(4):phi");
    ASSERT_TRUE(z.classical.has_value());
    EXPECT_EQ(z.group.order(), 120u);
    EXPECT_EQ(load_group("atlas:M10").group.order(), 720u);
    EXPECT_THROW(load_group("atlas:M11"), Error);
    EXPECT_THROW(load_group(data("missing.perm")), Error);
    EXPECT_EQ(code_of([] { group_from_text("hello\n"); }), Errc::ParseError);
}

TEST(Sources, SubgroupFileAgainstA5) {
    LoadedGroup g = load_group(data("a5.perm"));
    auto subs = subgroups_from_text(g.group, read_file(data("a5_max.subgroups")));
    ASSERT_EQ(subs.size(), 3u);
    EXPECT_EQ(subs[0].order(), 12u);
    EXPECT_EQ(subs[1].order(), 10u);
    EXPECT_EQ(subs[2].order(), 6u);
}
