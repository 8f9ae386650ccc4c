#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csg/error.hpp"
#include "csg/linalg.hpp"
#include "csg/matrix.hpp"
#include "csg/rational.hpp"

namespace csg {

using Index4 = std::array<std::size_t, 4>;

/// Dense 4-index array R_{abcd} of size dim⁴.
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(std::size_t dim) : n_(dim), data_(dim * dim * dim * dim, Rational(0)) {}

    std::size_t dim() const noexcept { return n_; }

    Rational& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        return data_[((a * n_ + b) * n_ + c) * n_ + d];
    }
    const Rational& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
        return data_[((a * n_ + b) * n_ + c) * n_ + d];
    }
    const Rational& operator()(const Index4& i) const { return (*this)(i[0], i[1], i[2], i[3]); }

    const std::vector<Rational>& data() const noexcept { return data_; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (sgn(x) != 0) return false;
        return true;
    }

    /// The eight images of (a,b,c,d) under pair exchange and the two antisymmetries,
    /// each with its sign.
    static std::array<std::pair<Index4, int>, 8> z2_orbit(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        return {{{{a, b, c, d}, 1},
                 {{b, a, c, d}, -1},
                 {{a, b, d, c}, -1},
                 {{b, a, d, c}, 1},
                 {{c, d, a, b}, 1},
                 {{d, c, a, b}, -1},
                 {{c, d, b, a}, -1},
                 {{d, c, b, a}, 1}}};
    }

    /// Sets an entry together with all its Z₂ images. Returns false (and leaves the
    /// tensor untouched) if an image already holds a conflicting nonzero value or
    /// the orbit forces the entry to vanish while v ≠ 0.
    bool set_with_symmetries(std::size_t a, std::size_t b, std::size_t c, std::size_t d, const Rational& v) {
        auto orbit = z2_orbit(a, b, c, d);
        for (const auto& [idx, s] : orbit) {
            if (idx == Index4{a, b, c, d} && s < 0 && sgn(v) != 0) return false;
            const Rational& cur = (*this)(idx);
            if (sgn(cur) != 0 && cur != Rational(s) * v) return false;
        }
        for (const auto& [idx, s] : orbit) (*this)(idx[0], idx[1], idx[2], idx[3]) = Rational(s) * v;
        return true;
    }

    friend bool operator==(const Tensor4& x, const Tensor4& y) { return x.n_ == y.n_ && x.data_ == y.data_; }

private:
    std::size_t n_ = 0;
    std::vector<Rational> data_;
};

struct CurvatureEntry {
    Index4 index;
    Rational value;
};

/// A model space (V, g, R) with an optional auxiliary bilinear form.
/// Immutable once built; the metric inverse and the list of nonzero curvature
/// entries are cached at construction.
class ModelSpace {
public:
    ModelSpace() = default;
    ModelSpace(Matrix metric, Tensor4 curv, std::optional<Matrix> aux_form = std::nullopt)
        : metric_(std::move(metric)), curv_(std::move(curv)), aux_(std::move(aux_form)) {
        if (!metric_.is_square() || metric_.rows() != curv_.dim())
            throw Error(ErrorKind::DimMismatch, "metric and curvature dimensions differ");
        if (!metric_.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "metric is not symmetric");
        if (aux_ && (aux_->rows() != dim() || !aux_->is_symmetric()))
            throw Error(ErrorKind::NotSymmetric, "auxiliary form must be symmetric of the model dimension");
        if (sgn(determinant(metric_)) != 0) inverse_ = mat_inverse(metric_);
        const std::size_t n = dim();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d)
                        if (sgn(curv_(a, b, c, d)) != 0) nonzeros_.push_back({{a, b, c, d}, curv_(a, b, c, d)});
    }

    std::size_t dim() const noexcept { return metric_.rows(); }
    const Matrix& metric() const noexcept { return metric_; }
    const Tensor4& curvature() const noexcept { return curv_; }
    const std::optional<Matrix>& aux_form() const noexcept { return aux_; }
    const std::vector<CurvatureEntry>& nonzeros() const noexcept { return nonzeros_; }
    bool nondegenerate() const noexcept { return inverse_.has_value(); }

    const Matrix& metric_inverse() const {
        if (!inverse_) throw Error(ErrorKind::Singular, "metric is degenerate");
        return *inverse_;
    }

    ModelSpace with_aux_form(Matrix aux) const { return ModelSpace(metric_, curv_, std::move(aux)); }

    friend bool operator==(const ModelSpace& x, const ModelSpace& y) {
        return x.metric_ == y.metric_ && x.curv_ == y.curv_;
    }

private:
    Matrix metric_;
    Tensor4 curv_;
    std::optional<Matrix> aux_;
    std::optional<Matrix> inverse_;
    std::vector<CurvatureEntry> nonzeros_;
};

struct ValidationReport {
    bool ok = true;
    std::string rule;            // "symmetric-metric", "nondegenerate", "antisymmetry", "pair-symmetry", "bianchi"
    std::optional<Index4> index; // first violating tuple, 0-based
    std::vector<Rational> values;
    std::string message;
};

/// Checks metric symmetry and nondegeneracy, then R(x,y,z,w) = −R(y,x,z,w) and
/// R(x,y,z,w) = R(z,w,x,y) over all tuples, then the first Bianchi identity.
/// Antisymmetry is checked at tuples with a > b and pair symmetry at tuples with
/// (a,b) > (c,d), so the reported tuple is the one that disagrees with its
/// lexicographically earlier image.
inline ValidationReport validate_model(const ModelSpace& m) {
    ValidationReport rep;
    const std::size_t n = m.dim();
    const auto& g = m.metric();
    if (!g.is_symmetric()) {
        rep.ok = false;
        rep.rule = "symmetric-metric";
        rep.message = "metric is not symmetric";
        return rep;
    }
    if (!m.nondegenerate()) {
        rep.ok = false;
        rep.rule = "nondegenerate";
        rep.message = "metric is degenerate";
        return rep;
    }
    const auto& R = m.curvature();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    const Rational& v = R(a, b, c, d);
                    if (a > b && v != -R(b, a, c, d)) {
                        rep.ok = false;
                        rep.rule = "antisymmetry";
                        rep.index = Index4{a, b, c, d};
                        rep.values = {v, R(b, a, c, d)};
                        rep.message = "R(a,b,c,d) != -R(b,a,c,d)";
                        return rep;
                    }
                    if (std::pair{a, b} > std::pair{c, d} && v != R(c, d, a, b)) {
                        rep.ok = false;
                        rep.rule = "pair-symmetry";
                        rep.index = Index4{a, b, c, d};
                        rep.values = {v, R(c, d, a, b)};
                        rep.message = "R(a,b,c,d) != R(c,d,a,b)";
                        return rep;
                    }
                }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    Rational s = R(a, b, c, d) + R(b, c, a, d) + R(c, a, b, d);
                    if (sgn(s) != 0) {
                        rep.ok = false;
                        rep.rule = "bianchi";
                        rep.index = Index4{a, b, c, d};
                        rep.values = {R(a, b, c, d), R(b, c, a, d), R(c, a, b, d)};
                        rep.message = "R(x,y,z,w)+R(y,z,x,w)+R(z,x,y,w) != 0";
                        return rep;
                    }
                }
    return rep;
}

/// Matrix of z ↦ R(x,y)z. Contracts R_{abcd} x^a y^b into C_{cd} = R(x,y,e_c,e_d)
/// and raises the last index: R(x,y) = g⁻¹ Cᵀ.
inline Matrix curvature_operator(const ModelSpace& m, const Vector& x, const Vector& y) {
    const std::size_t n = m.dim();
    if (x.size() != n || y.size() != n) throw Error(ErrorKind::DimMismatch, "vector length differs from model dimension");
    Matrix ct(n, n); // ct(d, c) = C_{cd}
    Rational t;
    for (const auto& e : m.nonzeros()) {
        const auto& [a, b, c, d] = e.index;
        if (sgn(x[a]) == 0 || sgn(y[b]) == 0) continue;
        t = e.value * x[a];
        t *= y[b];
        ct(d, c) += t;
    }
    return m.metric_inverse() * ct;
}

/// g(x, y) for a model's metric.
inline Rational inner(const ModelSpace& m, const Vector& x, const Vector& y) {
    return bilinear(m.metric(), x, y);
}

/// A linear map φ of V, given by its matrix in the model basis.
struct SelfAdjointMap {
    Matrix matrix;
};

inline bool is_self_adjoint(const Matrix& g, const Matrix& phi) {
    return phi.is_square() && phi.rows() == g.rows() && (g * phi).is_symmetric();
}

/// c·R_φ with R_φ(x,y)z = g(φy,z)φx − g(φx,z)φy. With A = gφ (symmetric),
/// R_{abcd} = c (A_bc A_ad − A_ac A_bd).
inline ModelSpace build_R_phi(const Matrix& g, const SelfAdjointMap& phi, const Rational& c) {
    if (!g.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "metric is not symmetric");
    if (!is_self_adjoint(g, phi.matrix)) throw Error(ErrorKind::NotSelfAdjoint, "g·φ is not symmetric");
    const std::size_t n = g.rows();
    Matrix A = g * phi.matrix;
    Tensor4 R(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t d = 0; d < n; ++d) {
                    Rational v = A(b, cc) * A(a, d) - A(a, cc) * A(b, d);
                    if (sgn(v) != 0) R(a, b, cc, d) = c * v;
                }
    return ModelSpace(g, std::move(R));
}

enum class PhiClass { Isometry, ParaIsometry, NilpotentAdmissible, Other };

inline std::string to_string(PhiClass c) {
    switch (c) {
    case PhiClass::Isometry: return "isometry";
    case PhiClass::ParaIsometry: return "para-isometry";
    case PhiClass::NilpotentAdmissible: return "nilpotent-admissible";
    case PhiClass::Other: return "other";
    }
    return "other";
}

/// "ker φ contains no spacelike vectors" is tested as n_pos = 0 for g restricted
/// to a basis of ker φ.
inline PhiClass classify_phi(const Matrix& g, const SelfAdjointMap& phi) {
    const Matrix& f = phi.matrix;
    Matrix pull = f.transpose() * g * f;
    if (pull == g) return PhiClass::Isometry;
    if (pull == -g) return PhiClass::ParaIsometry;
    if ((f * f).is_zero()) {
        auto ker = null_space(f);
        if (ker.empty()) return PhiClass::NilpotentAdmissible;
        Matrix k = Matrix::from_columns(ker, g.rows());
        if (signature(k.transpose() * g * k).n_pos == 0) return PhiClass::NilpotentAdmissible;
    }
    return PhiClass::Other;
}

/// Index helpers for the 3s-dimensional model, ordered (U₁..U_s, T₁..T_s, V₁..V_s).
struct Basis3s {
    std::size_t s;
    std::size_t U(std::size_t i) const { return i; }
    std::size_t T(std::size_t i) const { return s + i; }
    std::size_t V(std::size_t i) const { return 2 * s + i; }
    std::size_t dim() const { return 3 * s; }

    Vector u(std::size_t i) const { return unit_vector(dim(), U(i)); }
    Vector t(std::size_t i) const { return unit_vector(dim(), T(i)); }
    Vector v(std::size_t i) const { return unit_vector(dim(), V(i)); }
    /// Z_i^± = U_i ± ½ V_i
    Vector z_plus(std::size_t i) const { return u(i) + Rational(1, 2) * v(i); }
    Vector z_minus(std::size_t i) const { return u(i) - Rational(1, 2) * v(i); }
};

/// The normalized model: g(U_i,V_i) = 1, g(T_i,T_i) = −1, R(U_i,U_j,U_j,T_i) = 1
/// for i ≠ j, all other entries zero up to Z₂ symmetry. The auxiliary form is
/// g̃(U_i,U_j) = δ_ij.
inline ModelSpace model_V3s(std::size_t s) {
    if (s < 2) throw Error(ErrorKind::STooSmall, "the model needs s >= 2");
    Basis3s B{s};
    const std::size_t n = B.dim();
    Matrix g(n, n), aux(n, n);
    for (std::size_t i = 0; i < s; ++i) {
        g(B.U(i), B.V(i)) = 1;
        g(B.V(i), B.U(i)) = 1;
        g(B.T(i), B.T(i)) = -1;
        aux(B.U(i), B.U(i)) = 1;
    }
    Tensor4 R(n);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            if (i != j) R.set_with_symmetries(B.U(i), B.U(j), B.U(j), B.T(i), Rational(1));
    return ModelSpace(std::move(g), std::move(R), std::move(aux));
}

/// Pointwise model of the graph hypersurface on the basis (∂ˣ₁..∂ˣ_p, ∂ʸ₁..∂ʸ_p):
/// g(∂ˣᵢ,∂ˣⱼ) = gradᵢ gradⱼ, g(∂ˣᵢ,∂ʸⱼ) = δᵢⱼ, g(∂ʸ,∂ʸ) = 0 and
/// R(Z₁,Z₂,Z₃,Z₄) = L(Z₁,Z₄)L(Z₂,Z₃) − L(Z₁,Z₃)L(Z₂,Z₄) with L = H on the x-block.
inline ModelSpace hypersurface_model(const Matrix& H, const Vector& grad) {
    if (!H.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "Hessian must be symmetric");
    const std::size_t p = H.rows();
    if (grad.size() != p) throw Error(ErrorKind::DimMismatch, "gradient length differs from Hessian size");
    const std::size_t n = 2 * p;
    Matrix g(n, n);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) g(i, j) = grad[i] * grad[j];
        g(i, p + i) = 1;
        g(p + i, i) = 1;
    }
    Tensor4 R(n);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b)
            for (std::size_t c = 0; c < p; ++c)
                for (std::size_t d = 0; d < p; ++d) R(a, b, c, d) = H(a, d) * H(b, c) - H(a, c) * H(b, d);
    return ModelSpace(std::move(g), std::move(R));
}

/// Pullback along the new basis whose vectors are the columns of B:
/// g' = Bᵀ g B, R'_{abcd} = Σ R_{ijkl} B_ia B_jb B_kc B_ld.
inline ModelSpace apply_isomorphism(const ModelSpace& m, const Matrix& B) {
    const std::size_t n = m.dim();
    if (!B.is_square() || B.rows() != n) throw Error(ErrorKind::DimMismatch, "isomorphism must be dim x dim");
    if (sgn(determinant(B)) == 0) throw Error(ErrorKind::Singular, "isomorphism is singular");
    Matrix g = B.transpose() * m.metric() * B;
    Tensor4 R(n);
    if (!m.nonzeros().empty()) {
        // Contract one slot at a time; the first step starts from the sparse entries.
        Tensor4 t1(n);
        for (const auto& e : m.nonzeros()) {
            const auto& [i, j, k, l] = e.index;
            for (std::size_t a = 0; a < n; ++a)
                if (sgn(B(i, a)) != 0) t1(a, j, k, l) += e.value * B(i, a);
        }
        auto contract_slot = [n, &B](const Tensor4& in, int slot) {
            Tensor4 out(n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t c = 0; c < n; ++c)
                        for (std::size_t d = 0; d < n; ++d) {
                            const Rational& v = in(a, b, c, d);
                            if (sgn(v) == 0) continue;
                            std::size_t src = slot == 1 ? b : slot == 2 ? c : d;
                            for (std::size_t x = 0; x < n; ++x) {
                                if (sgn(B(src, x)) == 0) continue;
                                Rational w = v * B(src, x);
                                if (slot == 1) out(a, x, c, d) += w;
                                else if (slot == 2) out(a, b, x, d) += w;
                                else out(a, b, c, x) += w;
                            }
                        }
            return out;
        };
        R = contract_slot(contract_slot(contract_slot(t1, 1), 2), 3);
    }
    std::optional<Matrix> aux;
    if (m.aux_form()) aux = B.transpose() * *m.aux_form() * B;
    return ModelSpace(std::move(g), std::move(R), std::move(aux));
}

} // namespace csg
