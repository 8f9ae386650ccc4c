#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "csg/error.hpp"
#include "csg/linalg.hpp"
#include "csg/matrix.hpp"
#include "csg/model_space.hpp"

namespace csg {

/// Ordered list of k linearly independent ambient vectors. The order is the
/// orientation of a 2-plane.
class PlaneFrame {
public:
    PlaneFrame() = default;
    explicit PlaneFrame(std::vector<Vector> vectors) : v_(std::move(vectors)) {
        if (v_.empty()) throw Error(ErrorKind::KTooSmall, "empty frame");
        n_ = v_.front().size();
        for (const auto& x : v_)
            if (x.size() != n_) throw Error(ErrorKind::DimMismatch, "frame vectors of different lengths");
        if (mat_rank(as_matrix()) != v_.size()) throw Error(ErrorKind::Singular, "frame vectors are linearly dependent");
    }

    std::size_t k() const noexcept { return v_.size(); }
    std::size_t ambient_dim() const noexcept { return n_; }
    const std::vector<Vector>& vectors() const noexcept { return v_; }
    const Vector& operator[](std::size_t i) const { return v_[i]; }

    /// n×k matrix with the frame vectors as columns.
    Matrix as_matrix() const { return Matrix::from_columns(v_, n_); }

    /// The frame fr·B, i.e. new vector j = Σ_i B_ij x_i.
    PlaneFrame times(const Matrix& B) const {
        if (B.rows() != k() || B.cols() != k()) throw Error(ErrorKind::DimMismatch, "change of basis must be k x k");
        Matrix X = as_matrix() * B;
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < k(); ++j) cols.push_back(X.column(j));
        return PlaneFrame(std::move(cols));
    }

    /// Image frame under a linear map of the ambient space.
    PlaneFrame mapped(const Matrix& A) const {
        std::vector<Vector> cols;
        for (const auto& x : v_) cols.push_back(A * x);
        return PlaneFrame(std::move(cols));
    }

    friend bool operator==(const PlaneFrame& a, const PlaneFrame& b) { return a.v_ == b.v_; }

private:
    std::vector<Vector> v_;
    std::size_t n_ = 0;
};

inline Matrix gram(const ModelSpace& m, const PlaneFrame& fr) {
    if (fr.ambient_dim() != m.dim()) throw Error(ErrorKind::DimMismatch, "frame lives in a different dimension");
    const std::size_t k = fr.k();
    Matrix G(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            G(i, j) = bilinear(m.metric(), fr[i], fr[j]);
            G(j, i) = G(i, j);
        }
    return G;
}

enum class CausalType { Spacelike, Timelike, Degenerate, Mixed };

inline std::string to_string(CausalType c) {
    switch (c) {
    case CausalType::Spacelike: return "spacelike";
    case CausalType::Timelike: return "timelike";
    case CausalType::Degenerate: return "degenerate";
    case CausalType::Mixed: return "mixed";
    }
    return "mixed";
}

inline CausalType causal_type_of_gram(const Matrix& G) {
    auto in = signature(G);
    if (in.n_zero > 0) return CausalType::Degenerate;
    if (in.n_neg == 0) return CausalType::Spacelike;
    if (in.n_pos == 0) return CausalType::Timelike;
    return CausalType::Mixed;
}

inline CausalType causal_type(const ModelSpace& m, const PlaneFrame& fr) {
    return causal_type_of_gram(gram(m, fr));
}

inline bool is_definite(CausalType c) { return c == CausalType::Spacelike || c == CausalType::Timelike; }

/// splitmix64 finalizer; used to derive independent per-index seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic generator; draws do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(eng_() % span);
    }
    /// a/b with a ∈ [−num_max, num_max], b ∈ [1, den_max].
    Rational rational(long num_max, long den_max) {
        long a = uniform(-num_max, num_max);
        long b = uniform(1, den_max);
        Rational q(a, b);
        q.canonicalize();
        return q;
    }

private:
    std::mt19937_64 eng_;
};

/// Adapted basis of the metric split by sign: the columns of a congruence
/// diagonalization, grouped into positive- and negative-norm vectors.
struct AdaptedBasis {
    std::vector<Vector> positive;
    std::vector<Vector> negative;
};

inline AdaptedBasis adapted_basis(const Matrix& metric) {
    auto cd = congruence_diagonalize(metric);
    AdaptedBasis ab;
    for (std::size_t i = 0; i < cd.diag.size(); ++i) {
        int s = sgn(cd.diag[i]);
        if (s > 0) ab.positive.push_back(cd.basis.column(i));
        else if (s < 0) ab.negative.push_back(cd.basis.column(i));
    }
    return ab;
}

/// Random definite k-frame of the wanted causal type. A random full-rank
/// combination of adapted directions of the wanted sign is tilted toward the
/// opposite part by a random graph perturbation of size 1/dim; the perturbation
/// is halved until the Gram matrix is definite, which terminates because the
/// unperturbed frame is definite. `tilt` overrides the initial perturbation size.
inline PlaneFrame random_frame(const ModelSpace& m, std::size_t k, CausalType want, std::uint64_t seed,
                               std::optional<Rational> tilt = std::nullopt) {
    if (!is_definite(want)) throw Error(ErrorKind::NotDefinitePlane, "random_frame wants spacelike or timelike");
    if (k == 0) throw Error(ErrorKind::KTooSmall, "k must be positive");
    auto ab = adapted_basis(m.metric());
    const auto& same = want == CausalType::Spacelike ? ab.positive : ab.negative;
    const auto& other = want == CausalType::Spacelike ? ab.negative : ab.positive;
    if (k > same.size())
        throw Error(ErrorKind::KTooLarge, "k = " + std::to_string(k) + " exceeds the " + to_string(want) +
                                              " index " + std::to_string(same.size()));
    const std::size_t n = m.dim();
    Rng rng(seed);
    Matrix A(k, same.size());
    do {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < same.size(); ++j) A(i, j) = rng.uniform(-2, 2);
    } while (mat_rank(A) < k);
    Matrix C(k, other.size());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < other.size(); ++j) C(i, j) = rng.rational(2, 2);

    std::vector<Vector> base(k, Vector(n, Rational(0))), toward(k, Vector(n, Rational(0)));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < same.size(); ++j)
            if (sgn(A(i, j)) != 0) base[i] = base[i] + A(i, j) * same[j];
        for (std::size_t j = 0; j < other.size(); ++j)
            if (sgn(C(i, j)) != 0) toward[i] = toward[i] + C(i, j) * other[j];
    }
    Rational delta = tilt ? *tilt : Rational(1, static_cast<long>(n));
    for (;;) {
        std::vector<Vector> vs;
        for (std::size_t i = 0; i < k; ++i) vs.push_back(base[i] + delta * toward[i]);
        PlaneFrame fr(std::move(vs));
        if (causal_type(m, fr) == want) return fr;
        delta /= 2;
    }
}

/// Rational orthogonal matrix (I − S)(I + S)⁻¹ for skew-symmetric S.
inline Matrix cayley_transform(const Matrix& S) {
    const std::size_t s = S.rows();
    Matrix I = Matrix::identity(s);
    return (I - S) * mat_inverse(I + S);
}

inline Matrix cayley_orthogonal(std::size_t s, std::uint64_t seed) {
    if (s < 1) throw Error(ErrorKind::STooSmall, "need s >= 1");
    Rng rng(seed);
    Matrix S(s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) {
            S(i, j) = rng.rational(3, 3);
            S(j, i) = -S(i, j);
        }
    return cayley_transform(S);
}

/// Change of basis of the diagonal O(s) action U_i → Σ_j ξ_ij U_j (and likewise
/// on T and V) on the (U, T, V)-ordered 3s-dimensional space; column i holds
/// the image of basis vector i.
inline Matrix diagonal_orthogonal_action(const Matrix& xi) {
    const std::size_t s = xi.rows();
    Matrix B(3 * s, 3 * s);
    for (std::size_t blk = 0; blk < 3; ++blk)
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) B(blk * s + j, blk * s + i) = xi(i, j);
    return B;
}

/// B with fr2 = fr1·B when both frames span the same plane.
inline std::optional<Matrix> same_plane(const PlaneFrame& fr1, const PlaneFrame& fr2) {
    if (fr1.k() != fr2.k() || fr1.ambient_dim() != fr2.ambient_dim()) return std::nullopt;
    Matrix X1 = fr1.as_matrix(), X2 = fr2.as_matrix();
    const std::size_t n = fr1.ambient_dim(), k = fr1.k();
    Matrix both(n, 2 * k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            both(i, j) = X1(i, j);
            both(i, k + j) = X2(i, j);
        }
    if (mat_rank(both) != k) return std::nullopt;
    Matrix X1t = X1.transpose();
    return mat_inverse(X1t * X1) * (X1t * X2);
}

} // namespace csg
