#pragma once

#include <string>
#include <utility>
#include <vector>

#include "csg/error.hpp"
#include "csg/linalg.hpp"
#include "csg/matrix.hpp"
#include "csg/model_space.hpp"
#include "csg/poly.hpp"

namespace csg {

/// Re-expresses p over `vars`; every variable p actually uses must appear there.
inline MultiPoly embed(const MultiPoly& p, const std::vector<std::string>& vars) {
    std::vector<std::size_t> map(p.variables().size(), vars.size());
    for (const auto& used : p.used_variables()) {
        auto it = std::find(vars.begin(), vars.end(), used);
        if (it == vars.end()) throw Error(ErrorKind::BadVariables, "variable '" + used + "' is not a coordinate");
        map[p.index_of(used)] = static_cast<std::size_t>(it - vars.begin());
    }
    MultiPoly out(vars);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly::Exponents f(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) f[map[i]] = e[i];
        out.add_term(f, c);
    }
    return out;
}

/// Coordinate metric with polynomial components. Formal first and second
/// partial derivatives of every component are computed once at construction.
class PolynomialMetric {
public:
    PolynomialMetric(std::vector<std::string> coords, std::vector<std::vector<MultiPoly>> components)
        : coords_(std::move(coords)), comp_(std::move(components)) {
        const std::size_t n = coords_.size();
        if (comp_.size() != n) throw Error(ErrorKind::DimMismatch, "component array size");
        for (std::size_t i = 0; i < n; ++i) {
            if (comp_[i].size() != n) throw Error(ErrorKind::DimMismatch, "component array size");
            for (std::size_t j = 0; j < n; ++j) {
                if (comp_[i][j].variables() != coords_) comp_[i][j] = embed(comp_[i][j], coords_);
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!(comp_[i][j] == comp_[j][i])) throw Error(ErrorKind::NotSymmetric, "metric components are not symmetric");
        d1_.assign(n, std::vector<std::vector<MultiPoly>>(n, std::vector<MultiPoly>(n, MultiPoly(coords_))));
        d2_.assign(n, std::vector<std::vector<std::vector<MultiPoly>>>(
                          n, std::vector<std::vector<MultiPoly>>(n, std::vector<MultiPoly>(n, MultiPoly(coords_)))));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (comp_[i][j].is_zero()) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    d1_[k][i][j] = comp_[i][j].diff(k);
                    if (d1_[k][i][j].is_zero()) continue;
                    for (std::size_t l = 0; l < n; ++l) d2_[l][k][i][j] = d1_[k][i][j].diff(l);
                }
            }
    }

    std::size_t dim() const noexcept { return coords_.size(); }
    const std::vector<std::string>& coords() const noexcept { return coords_; }
    const MultiPoly& component(std::size_t i, std::size_t j) const { return comp_[i][j]; }
    /// ∂_k g_ij
    const MultiPoly& d1(std::size_t k, std::size_t i, std::size_t j) const { return d1_[k][i][j]; }
    /// ∂_l ∂_k g_ij
    const MultiPoly& d2(std::size_t l, std::size_t k, std::size_t i, std::size_t j) const { return d2_[l][k][i][j]; }

    Matrix at(const Vector& p) const {
        check_point(p);
        const std::size_t n = dim();
        Matrix g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = comp_[i][j].eval(p);
        return g;
    }

    void check_point(const Vector& p) const {
        if (p.size() != dim()) throw Error(ErrorKind::DimMismatch, "point has wrong number of coordinates");
    }

private:
    std::vector<std::string> coords_;
    std::vector<std::vector<MultiPoly>> comp_;
    std::vector<std::vector<std::vector<MultiPoly>>> d1_;
    std::vector<std::vector<std::vector<std::vector<MultiPoly>>>> d2_;
};

/// n×n×n array, index order documented at each use.
using Array3 = std::vector<std::vector<Vector>>;

inline Array3 make_array3(std::size_t n) { return Array3(n, std::vector<Vector>(n, Vector(n, Rational(0)))); }

struct MetricJets {
    Matrix g0;                               // g_ij(p)
    Array3 g1;                               // g1[k][i][j] = ∂_k g_ij(p)
    std::vector<std::vector<Matrix>> g2;     // g2[l][k](i,j) = ∂_l ∂_k g_ij(p)
};

inline MetricJets metric_jets(const PolynomialMetric& g, const Vector& p) {
    const std::size_t n = g.dim();
    MetricJets j;
    j.g0 = g.at(p);
    if (sgn(determinant(j.g0)) == 0) throw Error(ErrorKind::DegenerateAtPoint, "metric is singular at the point");
    j.g1 = make_array3(n);
    j.g2.assign(n, std::vector<Matrix>(n, Matrix(n, n)));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const auto& d = g.d1(k, a, b);
                if (d.is_zero()) continue;
                j.g1[k][a][b] = d.eval(p);
                for (std::size_t l = 0; l < n; ++l) {
                    const auto& dd = g.d2(l, k, a, b);
                    if (!dd.is_zero()) j.g2[l][k](a, b) = dd.eval(p);
                }
            }
    return j;
}

struct Christoffel {
    Array3 first;   // first[i][j][k]  = Γ_ijk = g(∇_∂i ∂j, ∂k)
    Array3 second;  // second[m][i][j] = Γᵐ_ij
};

inline Christoffel christoffel_from_jets(const MetricJets& j, const Matrix& ginv) {
    const std::size_t n = j.g0.rows();
    Christoffel c{make_array3(n), make_array3(n)};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t k = 0; k < n; ++k) {
                Rational v = j.g1[a][b][k] + j.g1[b][a][k] - j.g1[k][a][b];
                if (sgn(v) != 0) c.first[a][b][k] = v / 2;
            }
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Rational s = 0;
                for (std::size_t k = 0; k < n; ++k)
                    if (sgn(ginv(m, k)) != 0 && sgn(c.first[a][b][k]) != 0) s += ginv(m, k) * c.first[a][b][k];
                c.second[m][a][b] = s;
            }
    return c;
}

inline Christoffel christoffel(const PolynomialMetric& g, const Vector& p) {
    auto j = metric_jets(g, p);
    return christoffel_from_jets(j, mat_inverse(j.g0));
}

/// Pointwise curvature model with R(X,Y) = ∇_X∇_Y − ∇_Y∇_X on coordinate fields
/// and R(X,Y,Z,W) = g(R(X,Y)Z,W):
///   R_ijkl = ½(∂i∂k g_jl + ∂j∂l g_ik − ∂i∂l g_jk − ∂j∂k g_il)
///          + g_mn (Γᵐ_ik Γⁿ_jl − Γᵐ_il Γⁿ_jk).
inline ModelSpace curvature_at(const PolynomialMetric& g, const Vector& p) {
    const std::size_t n = g.dim();
    auto j = metric_jets(g, p);
    Matrix ginv = mat_inverse(j.g0);
    auto ch = christoffel_from_jets(j, ginv);
    // lowered[i][k][n'] = g_{mn'} Γᵐ_ik = Γ_ik n' (first kind), reused for the quadratic term
    const Array3& low = ch.first;
    Tensor4 R(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    Rational v = j.g2[a][c](b, d) + j.g2[b][d](a, c) - j.g2[a][d](b, c) - j.g2[b][c](a, d);
                    v /= 2;
                    for (std::size_t m = 0; m < n; ++m) {
                        if (sgn(ch.second[m][a][c]) != 0 && sgn(low[b][d][m]) != 0) v += ch.second[m][a][c] * low[b][d][m];
                        if (sgn(ch.second[m][a][d]) != 0 && sgn(low[b][c][m]) != 0) v -= ch.second[m][a][d] * low[b][c][m];
                    }
                    R(a, b, c, d) = v;
                }
    return ModelSpace(std::move(j.g0), std::move(R));
}

inline std::vector<std::string> indexed_names(const std::string& stem, std::size_t count) {
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= count; ++i) v.push_back(stem + std::to_string(i));
    return v;
}

inline std::vector<std::vector<MultiPoly>> zero_components(const std::vector<std::string>& coords) {
    return std::vector<std::vector<MultiPoly>>(coords.size(), std::vector<MultiPoly>(coords.size(), MultiPoly(coords)));
}

/// Neutral-signature graph metric on coordinates (x₁..x_p, y₁..y_p):
/// g(∂ˣᵢ,∂ˣⱼ) = ∂ᵢf·∂ⱼf, g(∂ˣᵢ,∂ʸⱼ) = δᵢⱼ, g(∂ʸ,∂ʸ) = 0.
inline PolynomialMetric metric_g_f(std::size_t p, const MultiPoly& f) {
    if (p < 2) throw Error(ErrorKind::STooSmall, "need p >= 2");
    auto xs = indexed_names("x", p);
    MultiPoly fx = embed(f, xs);
    auto coords = xs;
    for (auto& y : indexed_names("y", p)) coords.push_back(y);
    auto comp = zero_components(coords);
    std::vector<MultiPoly> grad;
    for (std::size_t i = 0; i < p; ++i) grad.push_back(embed(fx.diff(i), coords));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) comp[i][j] = grad[i] * grad[j];
        comp[i][p + i] = MultiPoly::constant(coords, 1);
        comp[p + i][i] = MultiPoly::constant(coords, 1);
    }
    return PolynomialMetric(std::move(coords), std::move(comp));
}

inline std::vector<std::string> coords_3s(std::size_t s) {
    auto c = indexed_names("u", s);
    for (auto& t : indexed_names("t", s)) c.push_back(t);
    for (auto& v : indexed_names("v", s)) c.push_back(v);
    return c;
}

/// g(∂ᵘᵢ,∂ᵘⱼ) = δᵢⱼ·h, g(∂ᵘᵢ,∂ᵛⱼ) = δᵢⱼ, g(∂ᵗᵢ,∂ᵗⱼ) = −δᵢⱼ, other components zero.
inline PolynomialMetric metric_3s_family(std::size_t s, const MultiPoly& h) {
    if (s < 2) throw Error(ErrorKind::STooSmall, "need s >= 2");
    auto coords = coords_3s(s);
    auto comp = zero_components(coords);
    MultiPoly hh = embed(h, coords);
    for (std::size_t i = 0; i < s; ++i) {
        comp[i][i] = hh;
        comp[i][2 * s + i] = MultiPoly::constant(coords, 1);
        comp[2 * s + i][i] = MultiPoly::constant(coords, 1);
        comp[s + i][s + i] = MultiPoly::constant(coords, -1);
    }
    return PolynomialMetric(std::move(coords), std::move(comp));
}

/// h = −2 Σ u_k t_k
inline PolynomialMetric metric_g_3s(std::size_t s) {
    if (s < 2) throw Error(ErrorKind::STooSmall, "need s >= 2");
    auto coords = coords_3s(s);
    MultiPoly h(coords);
    for (std::size_t k = 0; k < s; ++k)
        h -= Rational(2) * (MultiPoly::variable(coords, coords[k]) * MultiPoly::variable(coords, coords[s + k]));
    return metric_3s_family(s, h);
}

/// h = −2F(u) − 2 Σ u_k t_k with F = f₁(u₁) + … + f_s(u_s).
inline PolynomialMetric metric_g_F(std::size_t s, const std::vector<MultiPoly>& fs) {
    if (s < 2) throw Error(ErrorKind::STooSmall, "need s >= 2");
    if (fs.size() != s) throw Error(ErrorKind::DimMismatch, "need one function per u-coordinate");
    auto coords = coords_3s(s);
    MultiPoly h(coords);
    for (std::size_t k = 0; k < s; ++k) {
        for (const auto& v : fs[k].used_variables())
            if (v != coords[k]) throw Error(ErrorKind::BadVariables, "f" + std::to_string(k + 1) + " may only depend on " + coords[k]);
        h -= Rational(2) * embed(fs[k], coords);
        h -= Rational(2) * (MultiPoly::variable(coords, coords[k]) * MultiPoly::variable(coords, coords[s + k]));
    }
    return metric_3s_family(s, h);
}

} // namespace csg
