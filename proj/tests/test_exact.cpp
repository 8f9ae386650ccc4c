#include <gtest/gtest.h>

#include "csg/grassmann.hpp"
#include "csg/linalg.hpp"

using namespace csg;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long lo = -3, long hi = 3) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

Matrix random_nonsingular(Rng& rng, std::size_t n) {
    for (;;) {
        Matrix m = random_matrix(rng, n, n);
        if (mat_rank(m) == n) return m;
    }
}

UniPoly from_roots(const std::vector<Rational>& roots) {
    UniPoly p = UniPoly::monomial(0);
    for (const auto& r : roots) p = p * UniPoly({-r, Rational(1)});
    return p;
}

} // namespace

TEST(Rational, LowestTermsAndStrings) {
    Rational q = parse_rational("-6/4");
    EXPECT_THROW(parse_rational("6/-4"), Error);
    EXPECT_EQ(to_string(q), "-3/2");
    EXPECT_EQ(to_string(parse_rational("10/5")), "2");
    EXPECT_EQ(to_string(parse_rational(" -7 ")), "-7");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
    EXPECT_THROW(parse_rational("1/2/3"), Error);
}

TEST(Rational, NoOverflow) {
    Rational big = 1;
    for (int i = 0; i < 200; ++i) big *= 3;
    Rational back = big;
    for (int i = 0; i < 200; ++i) back /= 3;
    EXPECT_EQ(back, 1);
}

TEST(Rank, Examples) {
    EXPECT_EQ(mat_rank(Matrix::identity(4)), 4u);
    EXPECT_EQ(mat_rank(Matrix{{0, 1}, {0, 0}}), 1u);
    Matrix hilbert{{1, Rational(1, 2), Rational(1, 3)}, {Rational(1, 2), Rational(1, 3), Rational(1, 4)}, {Rational(1, 3), Rational(1, 4), Rational(1, 5)}};
    EXPECT_EQ(mat_rank(hilbert), 3u);
    // det of the 3x3 Hilbert matrix is 1/2160.
    EXPECT_EQ(determinant(hilbert), Rational(1, 2160));
    EXPECT_EQ(mat_rank(Matrix(3, 5)), 0u);
    EXPECT_EQ(mat_rank(Matrix{{1, 2, 3}, {2, 4, 6}}), 1u);
}

TEST(Determinant, SignOfRowSwap) {
    EXPECT_EQ(determinant(Matrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(determinant(Matrix{{2, 3}, {5, 7}}), -1);
    EXPECT_EQ(determinant(Matrix{{0, 0, 2}, {0, 3, 0}, {5, 0, 0}}), -30);
}

TEST(Inverse, Examples) {
    EXPECT_EQ(mat_inverse(Matrix::identity(3)), Matrix::identity(3));
    Matrix swap{{0, 1}, {1, 0}};
    EXPECT_EQ(mat_inverse(swap), swap);
    EXPECT_EQ(mat_inverse(Matrix{{2, 0}, {0, Rational(1, 3)}}), (Matrix{{Rational(1, 2), 0}, {0, 3}}));
    try {
        mat_inverse(Matrix{{1, 2}, {2, 4}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Singular);
    }
}

TEST(CharPoly, Examples) {
    EXPECT_EQ(char_poly(Matrix{{0, 1}, {0, 0}}), UniPoly::monomial(2));
    EXPECT_EQ(char_poly(Matrix{{0, -1}, {1, 0}}), UniPoly({1, 0, 1}));
    // Companion matrix of x^3 - 2x + 5 has that characteristic polynomial.
    Matrix comp{{0, 0, -5}, {1, 0, 2}, {0, 1, 0}};
    EXPECT_EQ(char_poly(comp), UniPoly({5, -2, 0, 1}));
}

TEST(Signature, Examples) {
    auto in = signature(Matrix::diagonal({1, -1}));
    EXPECT_EQ(in.n_neg, 1u);
    EXPECT_EQ(in.n_zero, 0u);
    EXPECT_EQ(in.n_pos, 1u);
    auto z = signature(Matrix(1, 1));
    EXPECT_EQ(z.n_zero, 1u);
    // Hyperbolic plane: zero diagonal needs the 2x2 block step.
    auto h = signature(Matrix{{0, 1}, {1, 0}});
    EXPECT_EQ(h.n_neg, 1u);
    EXPECT_EQ(h.n_pos, 1u);
    EXPECT_THROW(signature(Matrix{{0, 1}, {2, 0}}), Error);
}

TEST(Signature, NeutralOfDimensionSix) {
    // g(U_i,V_i) = 1, g(T_i,T_i) = -1 for s = 2 in the (U, T, V) order.
    Matrix g(6, 6);
    for (std::size_t i = 0; i < 2; ++i) {
        g(i, 4 + i) = g(4 + i, i) = 1;
        g(2 + i, 2 + i) = -1;
    }
    auto in = signature(g);
    EXPECT_EQ(in.n_neg, 4u);
    EXPECT_EQ(in.n_zero, 0u);
    EXPECT_EQ(in.n_pos, 2u);
}

TEST(CongruenceDiagonalization, IsACongruence) {
    Matrix g{{0, 1, 0}, {1, 0, 0}, {0, 0, -2}};
    auto cd = congruence_diagonalize(g);
    Matrix d = cd.basis.transpose() * g * cd.basis;
    EXPECT_EQ(d, Matrix::diagonal(cd.diag));
    EXPECT_EQ(mat_rank(cd.basis), 3u);
}

TEST(RationalRoots, Examples) {
    EXPECT_EQ(rational_roots(UniPoly::monomial(2)), std::vector<Rational>{0});
    EXPECT_TRUE(rational_roots(UniPoly({1, 0, 1})).empty());
    EXPECT_EQ(rational_roots(UniPoly({0, 0, 2, 1})), (std::vector<Rational>{-2, 0}));
}

TEST(RationalRoots, FractionsAndMultiplicity) {
    std::vector<Rational> roots{Rational(-7, 3), Rational(1, 2), Rational(1, 2), 5, Rational(5, 4)};
    UniPoly p = from_roots(roots) * Rational(12) * UniPoly({3, 0, 1}); // x^2 + 3 adds nothing rational
    EXPECT_EQ(rational_roots(p), (std::vector<Rational>{Rational(-7, 3), Rational(1, 2), Rational(5, 4), 5}));
}

TEST(RationalRoots, LargeConstantTerm) {
    // Roots with large numerators and denominators; divisor enumeration would need factoring.
    Rational a = Rational(Integer("1000000007"), Integer("999983"));
    Rational b = Rational(Integer("-123456789012345"), 7);
    EXPECT_EQ(rational_roots(from_roots({a, b})), (std::vector<Rational>{b, a}));
}

TEST(UniPoly, Arithmetic) {
    UniPoly x = UniPoly::monomial(1);
    UniPoly p = x * x - UniPoly({1});
    auto [q, r] = UniPoly::divmod(p, x - UniPoly({1}));
    EXPECT_EQ(q, x + UniPoly({1}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(UniPoly::gcd(p, x * x + x * Rational(2) + UniPoly({1})), x + UniPoly({1}));
    EXPECT_EQ(p.derivative(), x * Rational(2));
    EXPECT_EQ(p(Rational(3)), 8);
    EXPECT_EQ(UniPoly().degree(), -1);
}

TEST(NullSpace, SpansKernel) {
    Matrix m{{1, 2, 3}, {2, 4, 6}};
    auto ns = null_space(m);
    ASSERT_EQ(ns.size(), 2u);
    for (const auto& v : ns)
        for (const auto& x : m * v) EXPECT_EQ(x, 0);
}

TEST(ExactProperties, RankOfTranspose) {
    for (std::uint64_t c = 0; c < 50; ++c) {
        Rng rng(mix_seed(11, c));
        std::size_t r = static_cast<std::size_t>(rng.uniform(1, 5)), k = static_cast<std::size_t>(rng.uniform(1, 5));
        Matrix m = random_matrix(rng, r, k, -1, 1);
        EXPECT_EQ(mat_rank(m), mat_rank(m.transpose()));
    }
}

TEST(ExactProperties, InverseRoundTrip) {
    for (std::uint64_t c = 0; c < 50; ++c) {
        Rng rng(mix_seed(12, c));
        Matrix m = random_nonsingular(rng, static_cast<std::size_t>(rng.uniform(1, 6)));
        m = m * Rational(1, static_cast<long>(rng.uniform(1, 9)));
        EXPECT_EQ(m * mat_inverse(m), Matrix::identity(m.rows()));
        EXPECT_EQ(determinant(m) * determinant(mat_inverse(m)), 1);
    }
}

TEST(ExactProperties, CharPolySimilarityInvariant) {
    for (std::uint64_t c = 0; c < 50; ++c) {
        Rng rng(mix_seed(13, c));
        std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
        Matrix m = random_matrix(rng, n, n), b = random_nonsingular(rng, n);
        UniPoly p = char_poly(m);
        EXPECT_EQ(char_poly(b * m * mat_inverse(b)), p);
        EXPECT_EQ(p.coeff(0) * Rational(n % 2 == 0 ? 1 : -1), determinant(m));
    }
}

TEST(ExactProperties, SignatureCongruenceInvariant) {
    for (std::uint64_t c = 0; c < 50; ++c) {
        Rng rng(mix_seed(14, c));
        std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
        Matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = rng.uniform(-2, 2);
        Matrix b = random_nonsingular(rng, n);
        auto a = signature(s), t = signature(b.transpose() * s * b);
        EXPECT_EQ(a.n_neg, t.n_neg);
        EXPECT_EQ(a.n_zero, t.n_zero);
        EXPECT_EQ(a.n_pos, t.n_pos);
        EXPECT_EQ(a.n_zero, n - mat_rank(s));
    }
}
