#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csg/error.hpp"
#include "csg/grassmann.hpp"
#include "csg/linalg.hpp"
#include "csg/matrix.hpp"
#include "csg/model_space.hpp"

namespace csg {

/// Operators attached to a definite plane. For a 2-frame (x₁, x₂), raw = R(x₁,x₂)
/// and normalized_square = raw²/det G, which equals 𝓡(π)² for the unit-normalized
/// operator 𝓡(π) = raw/√det G. 𝓡(π) itself is never formed.
struct PlaneOperators {
    Matrix raw;
    Rational gram_det;
    std::optional<Matrix> normalized_square;
};

namespace detail {

inline CausalType require_definite(const ModelSpace& m, const PlaneFrame& fr) {
    auto t = causal_type(m, fr);
    if (!is_definite(t)) throw Error(ErrorKind::NotDefinitePlane, "plane is " + to_string(t));
    return t;
}

} // namespace detail

inline PlaneOperators skew_curv(const ModelSpace& m, const PlaneFrame& fr) {
    if (fr.k() != 2) throw Error(ErrorKind::DimMismatch, "skew-symmetric curvature operator needs a 2-frame");
    detail::require_definite(m, fr);
    PlaneOperators ops;
    ops.raw = curvature_operator(m, fr[0], fr[1]);
    ops.gram_det = determinant(gram(m, fr));
    ops.normalized_square = (ops.raw * ops.raw) * (Rational(1) / ops.gram_det);
    return ops;
}

/// Θ = Σ_{a,b,c,d} G^{ac} G^{bd} R(x_a,x_b) R(x_c,x_d), summed over ordered index
/// pairs. With the dual frame y_a = Σ_c G^{ac} x_c this is Σ_{a,b} R(x_a,x_b) R(y_a,y_b),
/// and both factors are antisymmetric in (a,b), so Θ = 2 Σ_{a<b} R(x_a,x_b) R(y_a,y_b).
/// On an orthonormal frame it is Σ_{i,j} R(e_i,e_j)².
inline Matrix theta(const ModelSpace& m, const PlaneFrame& fr) {
    if (fr.k() < 2) throw Error(ErrorKind::KTooSmall, "Θ needs k >= 2");
    detail::require_definite(m, fr);
    const std::size_t k = fr.k(), n = m.dim();
    Matrix Ginv = mat_inverse(gram(m, fr));
    std::vector<Vector> dual(k, Vector(n, Rational(0)));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t c = 0; c < k; ++c)
            if (sgn(Ginv(a, c)) != 0) dual[a] = dual[a] + Ginv(a, c) * fr[c];
    Matrix out(n, n);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) out += curvature_operator(m, fr[a], fr[b]) * curvature_operator(m, dual[a], dual[b]);
    return out * Rational(2);
}

/// Rank of the auxiliary form restricted to the plane.
inline std::size_t ell(const ModelSpace& m, const PlaneFrame& fr) {
    if (!m.aux_form()) throw Error(ErrorKind::NoAuxForm, "model carries no auxiliary form");
    const std::size_t k = fr.k();
    Matrix A(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) A(i, j) = bilinear(*m.aux_form(), fr[i], fr[j]);
    return mat_rank(A);
}

/// g-orthogonal projection onto the span of a nondegenerate frame:
/// P = Y (Yᵀ g Y)⁻¹ Yᵀ g.
inline Matrix orthogonal_projection(const ModelSpace& m, const PlaneFrame& fr) {
    Matrix Y = fr.as_matrix();
    Matrix Yt_g = Y.transpose() * m.metric();
    return Y * mat_inverse(Yt_g * Y) * Yt_g;
}

/// rank(a^m) for m = 1..n, filled forward once the ranks stabilize.
inline std::vector<std::size_t> power_rank_sequence(const Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> ranks;
    ranks.reserve(n);
    Matrix p = a;
    for (std::size_t m = 1; m <= n; ++m) {
        std::size_t r = mat_rank(p);
        if (!ranks.empty() && ranks.back() == r) {
            ranks.resize(n, r);
            break;
        }
        ranks.push_back(r);
        if (m < n) p = p * a;
    }
    return ranks;
}

inline Matrix shifted(const Matrix& a, const Rational& lambda) {
    Matrix s = a;
    for (std::size_t i = 0; i < a.rows(); ++i) s(i, i) -= lambda;
    return s;
}

/// Similarity fingerprint of a square matrix. Equal profiles are necessary for
/// similarity, and sufficient when every elementary divisor belongs to a rational
/// eigenvalue or to a pair ±i√μ with μ a rational eigenvalue of a² (the latter
/// resolved through square_eigen_ranks).
struct JordanProfile {
    std::size_t dim = 0;
    UniPoly charpoly;
    std::vector<std::size_t> power_ranks;
    std::map<Rational, std::vector<std::size_t>> eigen_ranks;
    std::map<Rational, std::vector<std::size_t>> square_eigen_ranks;

    friend bool operator==(const JordanProfile& x, const JordanProfile& y) {
        return x.dim == y.dim && x.charpoly == y.charpoly && x.power_ranks == y.power_ranks &&
               x.eigen_ranks == y.eigen_ranks && x.square_eigen_ranks == y.square_eigen_ranks;
    }
};

inline JordanProfile jordan_profile(const Matrix& a) {
    if (!a.is_square()) throw Error(ErrorKind::DimMismatch, "Jordan profile of a non-square matrix");
    JordanProfile p;
    p.dim = a.rows();
    p.charpoly = char_poly(a);
    p.power_ranks = power_rank_sequence(a);
    for (const auto& lambda : rational_roots(p.charpoly))
        p.eigen_ranks[lambda] = sgn(lambda) == 0 ? p.power_ranks : power_rank_sequence(shifted(a, lambda));
    Matrix sq = a * a;
    for (const auto& mu : rational_roots(char_poly(sq)))
        p.square_eigen_ranks[mu] = power_rank_sequence(shifted(sq, mu));
    return p;
}

inline bool profiles_equal(const JordanProfile& p1, const JordanProfile& p2) { return p1 == p2; }

} // namespace csg
