#include <gtest/gtest.h>

#include <random>
#include <set>

#include "spreadlab/error.hpp"
#include "spreadlab/ffield.hpp"
#include "spreadlab/poly.hpp"

using namespace spreadlab;

namespace {

std::vector<std::pair<unsigned, unsigned>> small_fields() {
    return {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 3}, {5, 2}, {3, 3}, {2, 4}, {2, 5}, {7, 2}, {3, 4}};
}

}  // namespace

TEST(FField, PrimeFieldDefaultPolynomial) {
    auto F = make_field(2, 1);
    EXPECT_EQ(F->q(), 2u);
    EXPECT_EQ(F->irred(), (std::vector<unsigned>{0, 1}));
}

TEST(FField, ExplicitPolynomialGF9) {
    auto F = make_field(3, 2, std::vector<unsigned>{1, 0, 1});
    EXPECT_EQ(F->q(), 9u);
    // Squares mod 3 are 0 and 1, so x^2 + 1 has no root.
    for (unsigned x = 0; x < 3; ++x) EXPECT_NE((x * x + 1) % 3, 0u);
}

TEST(FField, RejectsReducibleAndNonPrime) {
    try {
        make_field(2, 2, std::vector<unsigned>{0, 1, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ReduciblePolynomial);
    }
    try {
        make_field(6, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NonPrime);
    }
}

TEST(FField, LeastIrreducibles) {
    EXPECT_EQ(make_field(2, 2)->irred(), (std::vector<unsigned>{1, 1, 1}));
    EXPECT_EQ(make_field(2, 3)->irred(), (std::vector<unsigned>{1, 1, 0, 1}));
    EXPECT_EQ(make_field(2, 4)->irred(), (std::vector<unsigned>{1, 1, 0, 0, 1}));
    EXPECT_EQ(make_field(3, 2)->irred(), (std::vector<unsigned>{1, 0, 1}));
    EXPECT_EQ(make_field(5, 2)->irred(), (std::vector<unsigned>{2, 0, 1}));
}

TEST(FField, InterningGivesSamePointer) { EXPECT_EQ(make_field(2, 4).get(), make_field(2, 4).get()); }

TEST(FField, AxiomsOnRandomTriples) {
    std::mt19937_64 rng(11);
    for (auto [p, f] : small_fields()) {
        auto F = make_field(p, f);
        if (F->q() > 32) continue;
        std::uniform_int_distribution<Fq> d(0, F->q() - 1);
        for (int t = 0; t < 300; ++t) {
            Fq a = d(rng), b = d(rng), c = d(rng);
            EXPECT_EQ(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c)));
            EXPECT_EQ(F->add(F->add(a, b), c), F->add(a, F->add(b, c)));
            EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
            EXPECT_EQ(F->add(a, F->neg(a)), 0u);
            if (a) EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
        }
    }
}

TEST(FField, MultiplicationMatchesPolynomialProduct) {
    // Oracle: schoolbook polynomial multiplication modulo the defining polynomial.
    auto F = make_field(2, 4);
    const Field& F2 = *make_field(2, 1);
    Poly m(F->irred().begin(), F->irred().end());
    for (Fq a = 0; a < 16; ++a)
        for (Fq b = 0; b < 16; ++b) {
            auto ca = F->coeffs(a), cb = F->coeffs(b);
            Poly pa(ca.begin(), ca.end()), pb(cb.begin(), cb.end());
            poly_trim(pa);
            poly_trim(pb);
            Poly r = poly_mod(F2, poly_mul(F2, pa, pb), m);
            std::vector<unsigned> rc(r.begin(), r.end());
            EXPECT_EQ(F->mul(a, b), F->from_coeffs(rc));
        }
}

TEST(FField, FrobeniusExamples) {
    auto F4 = make_field(2, 2);
    Fq w = 2;  // the class of x
    EXPECT_EQ(F4->frobenius(w, 1), F4->mul(w, w));
    auto F9 = make_field(3, 2);
    Fq g = F9->primitive();
    EXPECT_EQ(F9->mult_order(g), 8u);
    EXPECT_EQ(F9->frobenius(g, 1), F9->pow(g, 3));
    for (Fq x = 0; x < 9; ++x) EXPECT_EQ(F9->frobenius(x, 2), x);
}

TEST(FField, FrobeniusFixesExactlyPrimeField) {
    for (auto [p, f] : small_fields()) {
        auto F = make_field(p, f);
        if (F->q() > 81) continue;
        std::set<Fq> images;
        std::size_t fixed = 0;
        for (Fq a = 0; a < F->q(); ++a) {
            Fq fa = F->frobenius(a, 1);
            images.insert(fa);
            fixed += fa == a;
            for (Fq b = 0; b < F->q(); b += 3) {
                EXPECT_EQ(F->frobenius(F->mul(a, b), 1), F->mul(fa, F->frobenius(b, 1)));
                EXPECT_EQ(F->frobenius(F->add(a, b), 1), F->add(fa, F->frobenius(b, 1)));
            }
            EXPECT_EQ(F->frobenius(a, f), a);
        }
        EXPECT_EQ(images.size(), F->q());
        EXPECT_EQ(fixed, p);
    }
}

TEST(FField, NormExamples) {
    auto F4 = make_field(2, 2), F2 = make_field(2, 1);
    for (Fq a = 1; a < 4; ++a) EXPECT_EQ(norm_to_subfield(FieldElem(F4, a), F2).value(), 1u);
    auto F9 = make_field(3, 2), F3 = make_field(3, 1);
    FieldElem g(F9, F9->primitive());
    FieldElem n = norm_to_subfield(g, F3);
    EXPECT_EQ(n.value(), 2u);  // order 2 in GF(3)^*
    EXPECT_EQ(norm_to_subfield(FieldElem(F9, 0), F3).value(), 0u);
}

TEST(FField, NormMultiplicativeAndSurjective) {
    std::vector<std::pair<FieldPtr, FieldPtr>> pairs = {
        {make_field(2, 2), make_field(2, 1)}, {make_field(2, 4), make_field(2, 2)},
        {make_field(3, 2), make_field(3, 1)}, {make_field(3, 4), make_field(3, 2)},
        {make_field(5, 2), make_field(5, 1)}, {make_field(2, 6), make_field(2, 3)},
        {make_field(3, 3), make_field(3, 1)}, {make_field(7, 2), make_field(7, 1)}};
    for (auto& [F, S] : pairs) {
        if (F->q() > 81) continue;
        std::set<Fq> image;
        for (Fq a = 1; a < F->q(); ++a) {
            image.insert(F->norm(a, *S));
            for (Fq b = 1; b < F->q(); b += 5)
                EXPECT_EQ(F->norm(F->mul(a, b), *S), S->mul(F->norm(a, *S), F->norm(b, *S)));
        }
        EXPECT_EQ(image.size(), S->q() - 1);
        EXPECT_FALSE(image.count(0));
    }
}

TEST(FField, NormRejectsNonSubfield) {
    auto F8 = make_field(2, 3), F4 = make_field(2, 2);
    try {
        F8->norm(3, *F4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotASubfield);
    }
}

TEST(FField, EmbeddingIsHomomorphism) {
    auto F16 = make_field(2, 4), F4 = make_field(2, 2);
    for (Fq a = 0; a < 4; ++a)
        for (Fq b = 0; b < 4; ++b) {
            EXPECT_EQ(F16->embed(F4->mul(a, b), *F4), F16->mul(F16->embed(a, *F4), F16->embed(b, *F4)));
            EXPECT_EQ(F16->embed(F4->add(a, b), *F4), F16->add(F16->embed(a, *F4), F16->embed(b, *F4)));
        }
}

TEST(FField, Squares) {
    auto F8 = make_field(2, 3);
    for (Fq a = 0; a < 8; ++a) EXPECT_TRUE(F8->is_square(a));
    auto F9 = make_field(3, 2);
    Fq g = F9->primitive();
    EXPECT_FALSE(F9->is_square(g));
    EXPECT_TRUE(F9->is_square(F9->mul(g, g)));
    // Brute-force oracle.
    for (auto [p, f] : small_fields()) {
        auto F = make_field(p, f);
        std::set<Fq> sq;
        for (Fq y = 0; y < F->q(); ++y) sq.insert(F->mul(y, y));
        for (Fq a = 0; a < F->q(); ++a) EXPECT_EQ(F->is_square(a), sq.count(a) == 1);
    }
}

TEST(FField, ParseAndFormat) {
    auto F9 = make_field(3, 2);
    for (Fq a = 0; a < 9; ++a) EXPECT_EQ(F9->parse(F9->format(a)), a);
    EXPECT_EQ(F9->parse("(1,2)"), 7u);
    EXPECT_THROW(F9->parse("(1,3)"), Error);
    EXPECT_THROW(F9->parse("x"), Error);
}

TEST(Ppd, Examples) {
    EXPECT_EQ(ppd(2, 4), std::optional<std::uint64_t>(5));
    EXPECT_EQ(ppd(2, 6), std::nullopt);
    EXPECT_EQ(ppd(3, 2), std::nullopt);
    EXPECT_EQ(ppd(4, 3), std::optional<std::uint64_t>(7));
    EXPECT_THROW(ppd(10, 40), Error);
}

TEST(Ppd, DividesRMinusOne) {
    for (std::uint64_t a = 2; a <= 9; ++a)
        for (unsigned k = 2; k <= 12; ++k) {
            auto r = ppd(a, k);
            if (r) EXPECT_EQ((*r - 1) % k, 0u) << a << "^" << k;
        }
}

TEST(Poly, FactorRoundTrip) {
    std::mt19937_64 rng(5);
    for (auto [p, f] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 4}, {5, 1}}) {
        auto F = make_field(p, f);
        std::uniform_int_distribution<Fq> d(0, F->q() - 1);
        for (int t = 0; t < 40; ++t) {
            Poly a(7);
            for (auto& c : a) c = d(rng);
            a.back() = 1;
            a = poly_mul(*F, a, a.size() > 3 ? Poly{a[0], a[1], 1} : a);
            auto fac = poly_factor(*F, a);
            Poly prod{1};
            for (auto& [g, e] : fac) {
                EXPECT_TRUE(poly_is_irreducible(*F, g));
                for (int i = 0; i < e; ++i) prod = poly_mul(*F, prod, g);
            }
            EXPECT_EQ(prod, poly_monic(*F, a));
        }
    }
}
