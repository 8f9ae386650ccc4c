#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csg/error.hpp"
#include "csg/grassmann.hpp"
#include "csg/linalg.hpp"
#include "csg/metrics.hpp"
#include "csg/model_space.hpp"
#include "csg/parallel.hpp"
#include "csg/spectral.hpp"

namespace csg {

enum class CheckKind { IvanovPetrova, Stanilov };

/// What gets compared across planes. For the Ivanov-Petrova check this is the
/// rank sequence of R(x₁,x₂) together with the Jordan profile of the normalized
/// square; for Stanilov it is the Jordan profile of Θ.
struct PlaneProfile {
    std::vector<std::size_t> raw_power_ranks;
    JordanProfile profile;

    friend bool operator==(const PlaneProfile& a, const PlaneProfile& b) {
        return a.raw_power_ranks == b.raw_power_ranks && a.profile == b.profile;
    }
};

struct NamedFrame {
    std::string name;
    PlaneFrame frame;
};

struct Witness {
    std::string origin;
    PlaneFrame frame;
    PlaneProfile profile;
};

struct Verdict {
    std::string property;
    bool holds = false;
    PlaneProfile reference_profile;
    std::size_t samples = 0; // random planes
    std::size_t battery = 0; // deterministic planes evaluated before the random ones
    std::vector<Witness> witnesses;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
};

inline PlaneProfile ip_profile(const ModelSpace& m, const PlaneFrame& fr) {
    auto ops = skew_curv(m, fr);
    return {power_rank_sequence(ops.raw), jordan_profile(*ops.normalized_square)};
}

inline PlaneProfile stanilov_profile(const ModelSpace& m, const PlaneFrame& fr) {
    return {{}, jordan_profile(theta(m, fr))};
}

inline std::string property_name(CheckKind kind, std::size_t k, CausalType want) {
    if (kind == CheckKind::IvanovPetrova) return to_string(want) + "-Jordan-IP";
    return "k=" + std::to_string(k) + " " + to_string(want) + "-Jordan-Stanilov";
}

/// k-subsets (lexicographic, at most `cap`) of the adapted basis vectors of the
/// wanted sign.
inline std::vector<NamedFrame> adapted_battery(const ModelSpace& m, std::size_t k, CausalType want, std::size_t cap = 32) {
    auto ab = adapted_basis(m.metric());
    const auto& vs = want == CausalType::Spacelike ? ab.positive : ab.negative;
    std::vector<NamedFrame> out;
    if (k > vs.size() || k == 0) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (out.size() < cap) {
        std::vector<Vector> fr;
        std::string name = "adapted";
        for (auto i : idx) {
            fr.push_back(vs[i]);
            name += (name.size() == 7 ? ":" : ",") + std::to_string(i);
        }
        out.push_back({name, PlaneFrame(std::move(fr))});
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == vs.size() - k + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// Distinguished planes of the normalized 3s-dimensional model, listed first in
/// every battery so that the known counterexamples are always evaluated:
/// spacelike → (Z₁⁺..Z_k⁺); timelike k = 2s → (T₁..T_s, Z₁⁻..Z_s⁻);
/// timelike 2 ≤ k < 2s → the pair π₁, π₂ below, in that order.
inline std::vector<NamedFrame> v3s_named_planes(std::size_t s, std::size_t k, CausalType want) {
    Basis3s B{s};
    std::vector<NamedFrame> out;
    auto range_name = [](const std::string& stem, std::size_t from, std::size_t to) {
        if (to < from) return std::string();
        return stem + std::to_string(from) + ".." + stem + std::to_string(to);
    };
    auto join = [](std::string a, const std::string& b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        return a + "," + b;
    };
    auto frame = [&](std::size_t n_t, std::size_t n_zminus) {
        std::vector<Vector> v;
        for (std::size_t i = 0; i < n_t; ++i) v.push_back(B.t(i));
        for (std::size_t i = 0; i < n_zminus; ++i) v.push_back(B.z_minus(i));
        return PlaneFrame(std::move(v));
    };
    auto name = [&](std::size_t n_t, std::size_t n_zminus) {
        return join(range_name("T", 1, n_t), range_name("Z-", 1, n_zminus));
    };
    if (want == CausalType::Spacelike) {
        if (k < 1 || k > s) return out;
        std::vector<Vector> v;
        for (std::size_t i = 0; i < k; ++i) v.push_back(B.z_plus(i));
        out.push_back({range_name("Z+", 1, k), PlaneFrame(std::move(v))});
        return out;
    }
    if (k < 2 || k > 2 * s) return out;
    if (k == 2 * s) {
        out.push_back({name(s, s), frame(s, s)});
        return out;
    }
    std::pair<std::size_t, std::size_t> p1, p2; // (number of T's, number of Z⁻'s)
    if (k <= s) {
        p1 = {k, 0};
        p2 = {k - 2, 2};
    } else {
        p1 = {s, k - s};
        p2 = {s - 1, k + 1 - s};
    }
    out.push_back({"pi1:" + name(p1.first, p1.second), frame(p1.first, p1.second)});
    out.push_back({"pi2:" + name(p2.first, p2.second), frame(p2.first, p2.second)});
    return out;
}

struct CheckOptions {
    std::vector<NamedFrame> named_planes; // evaluated first, in order
    std::size_t adapted_cap = 32;
    unsigned workers = 0;                 // 0 = hardware concurrency
};

namespace detail {

inline std::size_t relevant_index(const ModelSpace& m, CausalType want) {
    auto in = signature(m.metric());
    return want == CausalType::Spacelike ? in.n_pos : in.n_neg;
}

} // namespace detail

/// Evaluates the profile on (named planes, adapted battery, n random planes) in
/// that order. The reference is the first plane's profile; a failing verdict
/// carries the first plane and the earliest plane whose profile differs.
inline Verdict check_planes(CheckKind kind, const ModelSpace& m, std::size_t k, CausalType want, std::size_t n,
                            std::uint64_t seed, const CheckOptions& opt = {}) {
    if (!is_definite(want)) throw Error(ErrorKind::NotDefinitePlane, "want spacelike or timelike");
    if (k < 2) throw Error(ErrorKind::KTooSmall, "k must be at least 2");
    std::size_t index = detail::relevant_index(m, want);
    if (k > index)
        throw Error(ErrorKind::KTooLarge,
                    "k = " + std::to_string(k) + " exceeds the " + to_string(want) + " index " + std::to_string(index));

    Verdict v;
    v.property = property_name(kind, k, want);
    v.seed = seed;
    v.samples = n;

    std::vector<std::string> origin;
    std::vector<PlaneFrame> frames;
    for (const auto& nf : opt.named_planes) {
        if (nf.frame.k() != k || causal_type(m, nf.frame) != want) {
            v.notes.push_back("named plane " + nf.name + " skipped: not a " + to_string(want) + " " + std::to_string(k) + "-plane");
            continue;
        }
        origin.push_back("named:" + nf.name);
        frames.push_back(nf.frame);
    }
    for (auto& nf : adapted_battery(m, k, want, opt.adapted_cap)) {
        origin.push_back(nf.name);
        frames.push_back(std::move(nf.frame));
    }
    v.battery = frames.size();
    frames.resize(v.battery + n);
    for (std::size_t i = 0; i < n; ++i) origin.push_back("sample:" + std::to_string(i));

    std::vector<PlaneProfile> profiles(frames.size());
    parallel_for(frames.size(), opt.workers, [&](std::size_t i) {
        if (i >= v.battery) frames[i] = random_frame(m, k, want, mix_seed(seed, i - v.battery));
        profiles[i] = kind == CheckKind::IvanovPetrova ? ip_profile(m, frames[i]) : stanilov_profile(m, frames[i]);
    });

    v.reference_profile = profiles.front();
    v.holds = true;
    for (std::size_t i = 1; i < profiles.size(); ++i)
        if (!(profiles[i] == profiles.front())) {
            v.holds = false;
            v.witnesses.push_back({origin.front(), frames.front(), profiles.front()});
            v.witnesses.push_back({origin[i], frames[i], profiles[i]});
            break;
        }
    v.notes.push_back("sampled verdict over " + std::to_string(v.battery) + " deterministic and " + std::to_string(n) +
                      " random planes; not a proof over the whole Grassmannian");
    if (kind == CheckKind::Stanilov)
        v.notes.push_back("theta sums over ordered index pairs (i,j); the unordered i<j convention gives exactly half");
    return v;
}

inline Verdict check_ip(const ModelSpace& m, CausalType want, std::size_t n, std::uint64_t seed, const CheckOptions& opt = {}) {
    return check_planes(CheckKind::IvanovPetrova, m, 2, want, n, seed, opt);
}

inline Verdict check_stanilov(const ModelSpace& m, std::size_t k, CausalType want, std::size_t n, std::uint64_t seed,
                              const CheckOptions& opt = {}) {
    return check_planes(CheckKind::Stanilov, m, k, want, n, seed, opt);
}

// ---------------------------------------------------------------------------
// Curvature homogeneity of the (u, t, v) metric family

struct Normalization {
    Matrix basis;     // columns U₁..U_s, T₁..T_s, V₁..V_s in coordinate components
    bool check = false;
    Vector eps;
    Vector rho;
    ModelSpace pulled; // curvature model at the point expressed in the new basis
};

namespace detail {

/// Unique solution of A x = b, or nullopt when inconsistent or underdetermined.
inline std::optional<Vector> solve_unique(const Matrix& A, const Vector& b) {
    const std::size_t rows = A.rows(), cols = A.cols();
    Matrix aug(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug(i, j) = A(i, j);
        aug(i, cols) = b[i];
    }
    if (mat_rank(A) != cols || mat_rank(aug) != cols) return std::nullopt;
    Matrix At = A.transpose();
    return mat_inverse(At * A) * (At * b);
}

} // namespace detail

/// New basis U_i = ∂ᵘᵢ + ε_i∂ᵗᵢ + ϱ_i∂ᵛᵢ, T_i = ∂ᵗᵢ + ε_i∂ᵛᵢ, V_i = ∂ᵛᵢ at p.
/// ε solves R(U_i,U_j,U_j,U_i) = 0 for all i ≠ j, which expands to
/// a_ij + 2ε_i c_ij + 2ε_j c_ji = 0 with a_ij = R(∂ᵘᵢ,∂ᵘⱼ,∂ᵘⱼ,∂ᵘᵢ) and
/// c_ij = R(∂ᵘᵢ,∂ᵘⱼ,∂ᵘⱼ,∂ᵗᵢ); for s = 2 the split ε₁ = ε₂ is used.
/// ϱ_i = ½ε_i² − ½g(∂ᵘᵢ,∂ᵘᵢ) makes U_i null. check compares the pulled-back
/// model with model_V3s(s) entry for entry.
inline Normalization normalize_basis_3s(const PolynomialMetric& g, const Vector& p) {
    const std::size_t n = g.dim();
    if (n % 3 != 0 || n < 6) throw Error(ErrorKind::STooSmall, "metric is not 3s-dimensional with s >= 2");
    const std::size_t s = n / 3;
    ModelSpace m = curvature_at(g, p);
    Basis3s B{s};
    const auto& R = m.curvature();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) pairs.emplace_back(i, j);
    const std::size_t rows = pairs.size() + (s == 2 ? 1 : 0);
    Matrix A(rows, s);
    Vector rhs(rows, Rational(0));
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [i, j] = pairs[r];
        A(r, i) = 2 * R(B.U(i), B.U(j), B.U(j), B.T(i));
        A(r, j) = 2 * R(B.U(j), B.U(i), B.U(i), B.T(j));
        rhs[r] = -R(B.U(i), B.U(j), B.U(j), B.U(i));
    }
    if (s == 2) {
        A(rows - 1, 0) = 1;
        A(rows - 1, 1) = -1;
    }
    auto eps = detail::solve_unique(A, rhs);
    if (!eps) throw Error(ErrorKind::NormalizationFailed, "no consistent choice of the T-corrections exists at this point");

    Normalization out;
    out.eps = *eps;
    out.rho.resize(s);
    Matrix basis(n, n);
    for (std::size_t i = 0; i < s; ++i) {
        const Rational& e = out.eps[i];
        out.rho[i] = e * e / 2 - m.metric()(B.U(i), B.U(i)) / 2;
        basis(B.U(i), B.U(i)) = 1;
        basis(B.T(i), B.U(i)) = e;
        basis(B.V(i), B.U(i)) = out.rho[i];
        basis(B.T(i), B.T(i)) = 1;
        basis(B.V(i), B.T(i)) = e;
        basis(B.V(i), B.V(i)) = 1;
    }
    out.basis = basis;
    out.pulled = apply_isomorphism(m, basis);
    ModelSpace target = model_V3s(s);
    out.check = out.pulled.metric() == target.metric() && out.pulled.curvature() == target.curvature();
    return out;
}

// ---------------------------------------------------------------------------
// Coordinate metrics

struct MetricCheckSpec {
    CheckKind kind = CheckKind::IvanovPetrova;
    std::size_t k = 2;
    CausalType want = CausalType::Spacelike;
    std::size_t planes_per_point = 20;
};

/// Extra named planes for the curvature model at a point.
using PlaneProvider = std::function<std::vector<NamedFrame>(const Vector& point, const ModelSpace& model)>;

struct PointVerdict {
    Vector point;
    std::optional<Verdict> verdict;
    std::string note;
};

struct MetricVerdict {
    std::string property;
    bool holds = false;
    bool cross_point_equal = false;
    std::vector<PointVerdict> points;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
};

inline Vector random_point(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    Vector p(dim);
    for (auto& x : p) x = rng.rational(3, 2);
    return p;
}

/// Runs the plane check on curvature_at(g, p) at `points` seeded random points.
/// Per-point verdicts decide `holds`; cross-point equality of the reference
/// profiles is informational since the profile may vary with the point.
inline MetricVerdict check_metric(const PolynomialMetric& g, const MetricCheckSpec& spec, std::size_t points,
                                  std::uint64_t seed, const PlaneProvider& provider = {}, unsigned workers = 0) {
    MetricVerdict mv;
    mv.property = property_name(spec.kind, spec.kind == CheckKind::IvanovPetrova ? 2 : spec.k, spec.want);
    mv.seed = seed;
    mv.holds = true;
    std::optional<PlaneProfile> first;
    mv.cross_point_equal = true;
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < points; ++i) {
        PointVerdict pv;
        pv.point = random_point(g.dim(), mix_seed(seed ^ 0x5eed9017ULL, i));
        ModelSpace m;
        try {
            m = curvature_at(g, pv.point);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateAtPoint) throw;
            pv.note = "skipped: metric degenerate at this point";
            mv.points.push_back(std::move(pv));
            continue;
        }
        CheckOptions opt;
        opt.workers = workers;
        if (provider) opt.named_planes = provider(pv.point, m);
        std::size_t k = spec.kind == CheckKind::IvanovPetrova ? 2 : spec.k;
        pv.verdict = check_planes(spec.kind, m, k, spec.want, spec.planes_per_point, mix_seed(seed, i), opt);
        ++evaluated;
        mv.holds = mv.holds && pv.verdict->holds;
        if (!first) first = pv.verdict->reference_profile;
        else if (!(pv.verdict->reference_profile == *first)) mv.cross_point_equal = false;
        mv.points.push_back(std::move(pv));
    }
    if (evaluated == 0) {
        mv.holds = false;
        mv.notes.push_back("no nondegenerate point was sampled");
    }
    mv.notes.push_back("cross-point profile comparison is informational: the profile may vary from point to point");
    return mv;
}

/// Named planes of the normalized model carried to coordinates through the
/// normalizing basis at each point; for the (u, t, v) family of metrics.
inline PlaneProvider v3s_family_planes(const PolynomialMetric& g, std::size_t k, CausalType want) {
    return [&g, k, want](const Vector& point, const ModelSpace&) {
        auto nb = normalize_basis_3s(g, point);
        std::vector<NamedFrame> out;
        for (auto& nf : v3s_named_planes(g.dim() / 3, k, want))
            out.push_back({nf.name, nf.frame.mapped(nb.basis)});
        return out;
    };
}

// ---------------------------------------------------------------------------
// Identities for curvature tensors built from self-adjoint maps

/// Σ c_i R_{φ_i} with φ_i = g⁻¹S_i for random symmetric S_i (so each φ_i is
/// self-adjoint); such sums span the algebraic curvature tensors.
inline ModelSpace random_curvature_model(const Matrix& g, std::uint64_t seed, std::size_t terms = 3) {
    Rng rng(seed);
    const std::size_t n = g.rows();
    Matrix ginv = mat_inverse(g);
    Tensor4 R(n);
    for (std::size_t t = 0; t < terms; ++t) {
        Matrix S(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                S(i, j) = rng.uniform(-2, 2);
                S(j, i) = S(i, j);
            }
        Rational c = rng.rational(2, 2);
        if (sgn(c) == 0) c = 1;
        ModelSpace part = build_R_phi(g, SelfAdjointMap{ginv * S}, c);
        for (const auto& e : part.nonzeros()) R(e.index[0], e.index[1], e.index[2], e.index[3]) += e.value;
    }
    return ModelSpace(g, std::move(R));
}

struct IdentityReport {
    std::string property;
    bool holds = false;
    std::size_t samples = 0;
    std::size_t theta_failures = 0;
    std::size_t square_failures = 0;
    std::optional<PlaneFrame> first_failure;
    std::optional<Verdict> stanilov;
    std::vector<std::string> notes;
};

/// For R = cR_φ with φ an isometry and φ² = Id: on every sampled definite
/// k-frame, Θ = −2(k−1)c²·P_{φπ} (ordered-sum convention) and, on the 2-frame of
/// its first two vectors, the normalized square equals −c²·P_{φπ}. Also runs
/// the Stanilov verdict on the same model.
inline IdentityReport verify_isometry_theta_identity(const Matrix& g, const SelfAdjointMap& phi, const Rational& c,
                                                     std::size_t k, CausalType want, std::size_t n, std::uint64_t seed,
                                                     unsigned workers = 0) {
    if (!is_self_adjoint(g, phi.matrix)) throw Error(ErrorKind::PhiNotAdmissible, "φ is not self-adjoint");
    if (classify_phi(g, phi) != PhiClass::Isometry) throw Error(ErrorKind::PhiNotAdmissible, "φ is not an isometry");
    if (!(phi.matrix * phi.matrix == Matrix::identity(g.rows())))
        throw Error(ErrorKind::PhiNotAdmissible, "φ² is not the identity");
    ModelSpace m = build_R_phi(g, phi, c);
    IdentityReport rep;
    rep.property = "theta = -2(k-1)c^2 P_phi(pi) for k=" + std::to_string(k) + " " + to_string(want) + " planes";
    rep.samples = n;
    const Rational theta_coeff = Rational(-2 * static_cast<long>(k - 1)) * c * c;
    const Rational square_coeff = -c * c;
    std::vector<PlaneFrame> frames(n);
    std::vector<char> theta_ok(n), square_ok(n);
    parallel_for(n, workers, [&](std::size_t i) {
        frames[i] = random_frame(m, k, want, mix_seed(seed, i));
        Matrix P = orthogonal_projection(m, frames[i].mapped(phi.matrix));
        theta_ok[i] = theta(m, frames[i]) == theta_coeff * P;
        PlaneFrame two({frames[i][0], frames[i][1]});
        Matrix P2 = orthogonal_projection(m, two.mapped(phi.matrix));
        square_ok[i] = *skew_curv(m, two).normalized_square == square_coeff * P2;
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (!theta_ok[i]) ++rep.theta_failures;
        if (!square_ok[i]) ++rep.square_failures;
        if ((!theta_ok[i] || !square_ok[i]) && !rep.first_failure) rep.first_failure = frames[i];
    }
    CheckOptions opt;
    opt.workers = workers;
    rep.stanilov = check_stanilov(m, k, want, n, seed, opt);
    rep.holds = rep.theta_failures == 0 && rep.square_failures == 0 && rep.stanilov->holds;
    rep.notes.push_back("coefficient uses the ordered double sum; the unordered convention gives -(k-1)c^2");
    return rep;
}

struct BridgeReport {
    bool holds = false;
    std::size_t samples = 0;
    bool theta_charpoly_constant = true;
    bool square_charpoly_constant = true;
    bool bridge_identity = true;
    std::vector<std::string> notes;
};

/// Riemannian models only: Θ = 2·(normalized square) on each sampled 2-plane, and
/// the characteristic polynomial of Θ is constant across samples exactly when
/// that of the normalized square is.
inline BridgeReport verify_riemannian_bridge(const ModelSpace& m, std::size_t n, std::uint64_t seed, unsigned workers = 0) {
    auto in = signature(m.metric());
    if (in.n_neg != 0 || in.n_zero != 0) throw Error(ErrorKind::NotRiemannian, "metric is not positive definite");
    BridgeReport rep;
    rep.samples = n;
    std::vector<UniPoly> theta_cp(n), square_cp(n);
    std::vector<char> bridge(n);
    parallel_for(n, workers, [&](std::size_t i) {
        PlaneFrame fr = random_frame(m, 2, CausalType::Spacelike, mix_seed(seed, i));
        Matrix th = theta(m, fr);
        Matrix sq = *skew_curv(m, fr).normalized_square;
        bridge[i] = th == sq * Rational(2);
        theta_cp[i] = char_poly(th);
        square_cp[i] = char_poly(sq);
    });
    for (std::size_t i = 0; i < n; ++i) {
        rep.bridge_identity = rep.bridge_identity && bridge[i];
        if (i > 0) {
            rep.theta_charpoly_constant = rep.theta_charpoly_constant && theta_cp[i] == theta_cp[0];
            rep.square_charpoly_constant = rep.square_charpoly_constant && square_cp[i] == square_cp[0];
        }
    }
    rep.holds = rep.bridge_identity && rep.theta_charpoly_constant == rep.square_charpoly_constant;
    if (m.dim() == 3 || m.dim() == 7)
        rep.notes.push_back("dimension " + std::to_string(m.dim()) +
                            " is excluded from the 2-Stanilov => Ivanov-Petrova implication; no claim is made");
    return rep;
}

} // namespace csg
