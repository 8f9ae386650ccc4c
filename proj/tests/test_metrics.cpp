#include <gtest/gtest.h>

#include "csg/grassmann.hpp"
#include "csg/metrics.hpp"

using namespace csg;

namespace {

Vector random_point(Rng& rng, std::size_t n) {
    Vector p(n);
    for (auto& x : p) x = rng.rational(3, 2);
    return p;
}

// The tensor built entry by entry from its two stated families.
Tensor4 stated_g3s_curvature(std::size_t s, const Vector& p) {
    Rational u2 = 0;
    for (std::size_t i = 0; i < s; ++i) u2 += p[i] * p[i];
    Tensor4 R(3 * s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            if (i != j) {
                R.set_with_symmetries(i, j, j, i, u2);
                R.set_with_symmetries(i, j, j, s + i, 1);
            }
    return R;
}

PolynomialMetric flat_metric() {
    std::vector<std::string> c{"a", "b", "c"};
    auto comp = zero_components(c);
    comp[0][1] = comp[1][0] = MultiPoly::constant(c, 1);
    comp[2][2] = MultiPoly::constant(c, -3);
    return PolynomialMetric(c, comp);
}

Matrix hessian_at(const MultiPoly& f, const Vector& x) {
    const std::size_t p = x.size();
    Matrix H(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) H(i, j) = f.diff(i).diff(j).eval(x);
    return H;
}

Vector grad_at(const MultiPoly& f, const Vector& x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = f.diff(i).eval(x);
    return g;
}

} // namespace

TEST(Jets, FlatMetric) {
    auto j = metric_jets(flat_metric(), {1, 2, 3});
    for (const auto& a : j.g1)
        for (const auto& b : a)
            for (const auto& x : b) EXPECT_EQ(x, 0);
    for (const auto& a : j.g2)
        for (const auto& m : a) EXPECT_TRUE(m.is_zero());
    EXPECT_TRUE(curvature_at(flat_metric(), {1, 2, 3}).curvature().is_zero());
    auto c = christoffel(flat_metric(), {0, 0, 0});
    for (const auto& a : c.second)
        for (const auto& b : a)
            for (const auto& x : b) EXPECT_EQ(x, 0);
}

TEST(Jets, G3sMixedDerivative) {
    auto g = metric_g_3s(2); // u1 u2 t1 t2 v1 v2
    Vector p{5, -1, 2, 3, 7, 11};
    auto j = metric_jets(g, p);
    EXPECT_EQ(j.g1[2][0][0], -10); // ∂_{t1} g(∂u1,∂u1) = -2 u1
    EXPECT_EQ(j.g1[2][1][1], -10); // the same h sits on every u-diagonal entry
    EXPECT_EQ(j.g2[0][2](0, 0), -2);
}

TEST(Jets, GraphMetricDerivative) {
    auto g = metric_g_f(2, parse_poly("x1*x2", {"x1", "x2"}));
    auto j = metric_jets(g, {1, 1, 0, 0});
    EXPECT_EQ(j.g0(0, 0), 1);        // x2^2
    EXPECT_EQ(j.g1[1][0][0], 2);     // ∂_{x2} x2^2 at x2 = 1
}

TEST(Jets, DegeneratePoint) {
    std::vector<std::string> c{"x", "y"};
    auto comp = zero_components(c);
    comp[0][0] = MultiPoly::variable(c, "x");
    comp[1][1] = MultiPoly::constant(c, 1);
    PolynomialMetric g(c, comp);
    try {
        curvature_at(g, {0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateAtPoint);
    }
    EXPECT_NO_THROW(curvature_at(g, {1, 0}));
}

TEST(Christoffel, G3sSymbols) {
    for (std::size_t s : {2u, 3u}) {
        auto g = metric_g_3s(s);
        Rng rng(100 + s);
        Vector p = random_point(rng, 3 * s);
        auto c = christoffel(g, p);
        for (std::size_t i = 0; i < s; ++i) {
            const std::size_t u = i, t = s + i, v = 2 * s + i;
            EXPECT_EQ(c.first[u][u][t], p[u]); // g(∇_{∂u}∂u, ∂t) = u_i
            for (std::size_t m = 0; m < 3 * s; ++m) {
                Rational want = m == v ? Rational(-p[u]) : Rational(0);
                EXPECT_EQ(c.second[m][u][t], want); // ∇_{∂u}∂t = -u_i ∂v
                EXPECT_EQ(c.second[m][t][u], want);
            }
        }
    }
}

TEST(CurvatureAt, G3sStatedEntriesExactly) {
    for (std::size_t s : {2u, 3u}) {
        auto g = metric_g_3s(s);
        for (std::uint64_t c = 0; c < 10; ++c) {
            Rng rng(mix_seed(200 + s, c));
            Vector p = random_point(rng, 3 * s);
            ModelSpace m = curvature_at(g, p);
            EXPECT_EQ(m.curvature(), stated_g3s_curvature(s, p));
            EXPECT_TRUE(validate_model(m).ok);
        }
    }
}

TEST(CurvatureAt, GraphMetricMatchesHypersurfaceModel) {
    auto f = parse_poly("x1*x2", {"x1", "x2"});
    auto g = metric_g_f(2, f);
    for (std::uint64_t c = 0; c < 10; ++c) {
        Rng rng(mix_seed(300, c));
        Vector x = random_point(rng, 2);
        Vector p = x;
        p.push_back(rng.rational(3, 2));
        p.push_back(rng.rational(3, 2));
        EXPECT_EQ(curvature_at(g, p), hypersurface_model(Matrix{{0, 1}, {1, 0}}, grad_at(f, x)));
    }
}

TEST(CurvatureAt, SumOfSquaresSign) {
    auto f = parse_poly("x1^2 + x2^2", {"x1", "x2"});
    ModelSpace m = curvature_at(metric_g_f(2, f), {1, 1, 0, 0});
    EXPECT_EQ(m.curvature()(0, 1, 1, 0), 4);
    EXPECT_EQ(m, hypersurface_model(hessian_at(f, {1, 1}), grad_at(f, {1, 1})));
}

TEST(GraphMetric, Components) {
    auto f = parse_poly("x1^2 + x2^2", {"x1", "x2"});
    auto g = metric_g_f(2, f);
    EXPECT_EQ(g.coords(), (std::vector<std::string>{"x1", "x2", "y1", "y2"}));
    EXPECT_EQ(g.component(0, 0), parse_poly("4*x1^2", g.coords()));
    EXPECT_EQ(g.component(0, 2), MultiPoly::constant(g.coords(), 1));
    EXPECT_TRUE(g.component(2, 3).is_zero());
}

TEST(GraphMetric, ZeroFunctionIsFlat) {
    auto g = metric_g_f(3, MultiPoly(std::vector<std::string>{"x1", "x2", "x3"}));
    EXPECT_TRUE(curvature_at(g, {1, 2, 3, 4, 5, 6}).curvature().is_zero());
}

TEST(GraphMetric, NeutralSignature) {
    for (std::size_t p : {2u, 3u}) {
        auto g = metric_g_f(p, parse_poly("x1^3 - x1*x2 + 2", indexed_names("x", p)));
        Rng rng(400 + p);
        for (int t = 0; t < 5; ++t) {
            auto in = signature(g.at(random_point(rng, 2 * p)));
            EXPECT_EQ(in.n_neg, p);
            EXPECT_EQ(in.n_zero, 0u);
            EXPECT_EQ(in.n_pos, p);
        }
    }
}

TEST(GraphMetric, Errors) {
    try {
        metric_g_f(2, parse_poly("y1", {"x1", "y1"}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadVariables);
    }
    EXPECT_THROW(metric_g_f(1, parse_poly("x1", {"x1"})), Error);
}

TEST(Family3s, Components) {
    auto g = metric_g_3s(2);
    EXPECT_EQ(g.component(2, 2), MultiPoly::constant(g.coords(), -1));
    EXPECT_EQ(g.component(0, 0), parse_poly("-2*u1*t1 - 2*u2*t2", g.coords()));
    EXPECT_TRUE(g.component(0, 1).is_zero());
    auto in = signature(g.at(Vector(6, Rational(0))));
    EXPECT_EQ(in.n_neg, 4u);
    EXPECT_EQ(in.n_pos, 2u);
    auto in3 = signature(metric_g_3s(3).at(Vector(9, Rational(0))));
    EXPECT_EQ(in3.n_neg, 6u);
    EXPECT_EQ(in3.n_pos, 3u);
    EXPECT_THROW(metric_g_3s(1), Error);
}

TEST(Family3s, FTermEntersEveryUDiagonal) {
    auto us = indexed_names("u", 2);
    auto gF = metric_g_F(2, {parse_poly("u1^2", us), MultiPoly(us)});
    auto g = metric_g_3s(2);
    auto extra = parse_poly("-2*u1^2", g.coords());
    EXPECT_EQ(gF.component(0, 0), g.component(0, 0) + extra);
    EXPECT_EQ(gF.component(1, 1), g.component(1, 1) + extra);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (i != j || i > 1) EXPECT_EQ(gF.component(i, j), g.component(i, j));
    // Zero F gives g3s back.
    auto g0 = metric_g_F(2, {MultiPoly(us), MultiPoly(us)});
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(g0.component(i, j), g.component(i, j));
}

TEST(Family3s, FMustBeSeparable) {
    auto us = indexed_names("u", 2);
    try {
        metric_g_F(2, {parse_poly("u2", us), MultiPoly(us)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadVariables);
    }
}

TEST(Family3s, OrthogonalCoordinateChangeIsAnIsometry) {
    for (std::size_t s : {2u, 3u}) {
        auto g = metric_g_3s(s);
        Matrix A = diagonal_orthogonal_action(cayley_orthogonal(s, 500 + s));
        for (std::uint64_t c = 0; c < 3; ++c) {
            Rng rng(mix_seed(510 + s, c));
            Vector p = random_point(rng, 3 * s);
            EXPECT_EQ(apply_isomorphism(curvature_at(g, A * p), A), curvature_at(g, p));
        }
    }
}
