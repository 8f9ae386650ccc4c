#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "csg/io.hpp"
#include "csg/report.hpp"
#include "csg/verify.hpp"

namespace csg {

struct ReproduceOptions {
    std::size_t s = 2;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

/// Named checks of a scripted reproduction; holds iff every check holds.
class Reproduction {
public:
    explicit Reproduction(std::string name) : name_(std::move(name)) {}

    void check(const std::string& what, bool ok, Json detail = Json::object()) {
        Json c;
        c["check"] = what;
        c["holds"] = ok;
        if (!detail.empty()) c["detail"] = std::move(detail);
        checks_.push_back(std::move(c));
        holds_ = holds_ && ok;
    }
    void note(std::string n) { notes_.push_back(std::move(n)); }
    bool holds() const noexcept { return holds_; }

    Json to_json(const ReproduceOptions& opt) const {
        Json out;
        out["property"] = name_;
        out["holds"] = holds_;
        out["s"] = opt.s;
        out["samples"] = opt.samples;
        out["seed"] = opt.seed;
        out["checks"] = checks_;
        Json notes = Json::array();
        for (const auto& n : notes_) notes.push_back(n);
        out["notes"] = std::move(notes);
        return out;
    }

private:
    std::string name_;
    bool holds_ = true;
    Json checks_ = Json::array();
    std::vector<std::string> notes_;
};

namespace detail {

inline std::vector<std::size_t> nilpotent_ranks(std::vector<std::size_t> head, std::size_t n) {
    head.resize(n, 0);
    return head;
}

inline std::size_t theta_rank(const Verdict& v) { return v.reference_profile.profile.power_ranks.front(); }

inline std::size_t theta_rank(const ModelSpace& m, const PlaneFrame& fr) { return mat_rank(theta(m, fr)); }

/// Exactly the tensor stated for the 3s-dimensional coordinate metric at p:
/// R(∂ᵘᵢ,∂ᵘⱼ,∂ᵘⱼ,∂ᵘᵢ) = |u|² and R(∂ᵘᵢ,∂ᵘⱼ,∂ᵘⱼ,∂ᵗᵢ) = 1 for i ≠ j.
inline Tensor4 expected_g3s_curvature(std::size_t s, const Vector& p) {
    Basis3s B{s};
    Rational u2 = 0;
    for (std::size_t i = 0; i < s; ++i) u2 += p[B.U(i)] * p[B.U(i)];
    Tensor4 R(B.dim());
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            if (i == j) continue;
            R.set_with_symmetries(B.U(i), B.U(j), B.U(j), B.U(i), u2);
            R.set_with_symmetries(B.U(i), B.U(j), B.U(j), B.T(i), Rational(1));
        }
    return R;
}

inline std::vector<MultiPoly> squares_F(std::size_t s) {
    auto us = indexed_names("u", s);
    std::vector<MultiPoly> fs;
    for (std::size_t i = 0; i < s; ++i) fs.push_back(MultiPoly::variable(us, us[i]).pow(2));
    return fs;
}

} // namespace detail

inline Json reproduce_coordinate_curvature(const ReproduceOptions& opt) {
    Reproduction r("lemma-4.1");
    auto g = metric_g_3s(opt.s);
    std::size_t bad = 0;
    const std::size_t points = 20;
    for (std::size_t i = 0; i < points; ++i) {
        Vector p = random_point(g.dim(), mix_seed(opt.seed, i));
        if (!(curvature_at(g, p).curvature() == detail::expected_g3s_curvature(opt.s, p))) ++bad;
    }
    Json d;
    d["points"] = points;
    d["mismatches"] = bad;
    r.check("curvature has exactly the entries |u|^2 and 1 up to symmetry", bad == 0, d);
    // Christoffel symbols at one point: g(∇_{∂ᵘᵢ}∂ᵘᵢ, ∂ᵗᵢ) = uᵢ and ∇_{∂ᵘᵢ}∂ᵗᵢ = −uᵢ∂ᵛᵢ.
    Basis3s B{opt.s};
    Vector p = random_point(g.dim(), opt.seed);
    auto c = christoffel(g, p);
    bool gamma = true;
    for (std::size_t i = 0; i < opt.s; ++i) {
        gamma = gamma && c.first[B.U(i)][B.U(i)][B.T(i)] == p[B.U(i)];
        for (std::size_t m = 0; m < B.dim(); ++m)
            gamma = gamma && c.second[m][B.U(i)][B.T(i)] == (m == B.V(i) ? Rational(-p[B.U(i)]) : Rational(0));
    }
    r.check("christoffel symbols match at a sampled point", gamma);
    return r.to_json(opt);
}

inline Json reproduce_normalization(const ReproduceOptions& opt) {
    Reproduction r("lemma-4.3");
    const std::size_t points = 20;
    auto run = [&](const PolynomialMetric& g, const std::string& label) {
        std::size_t ok = 0;
        Json first;
        for (std::size_t i = 0; i < points; ++i) {
            Vector p = random_point(g.dim(), mix_seed(opt.seed, i));
            auto nb = normalize_basis_3s(g, p);
            if (nb.check) ++ok;
            if (i == 0) {
                first["point"] = to_json(p);
                first["eps"] = to_json(nb.eps);
                first["rho"] = to_json(nb.rho);
            }
        }
        Json d;
        d["points"] = points;
        d["normalized"] = ok;
        d["first"] = std::move(first);
        r.check(label + ": normalized basis pulls back to the model at every point", ok == points, d);
    };
    run(metric_g_3s(opt.s), "g3s");
    run(metric_g_F(opt.s, detail::squares_F(opt.s)), "gF with F = sum of u_i^2");
    return r.to_json(opt);
}

inline Json reproduce_skew_ranks(const ReproduceOptions& opt) {
    Reproduction r("lemma-4.4");
    const std::size_t s = opt.s, n = 3 * s;
    ModelSpace m = model_V3s(s);
    CheckOptions co;
    co.workers = opt.workers;
    co.named_planes = v3s_named_planes(s, 2, CausalType::Spacelike);
    Verdict sp = check_ip(m, CausalType::Spacelike, opt.samples, opt.seed, co);
    auto expect = detail::nilpotent_ranks({4, 2}, n);
    Json d;
    d["power_ranks"] = to_json(sp.reference_profile.raw_power_ranks);
    d["verdict"] = to_json(sp);
    r.check("spacelike IP holds with raw power ranks (4,2,0,...)", sp.holds && sp.reference_profile.raw_power_ranks == expect, d);

    co.named_planes = v3s_named_planes(s, 2, CausalType::Timelike);
    Verdict tl = check_ip(m, CausalType::Timelike, opt.samples, opt.seed, co);
    bool wit = tl.witnesses.size() == 2 && tl.witnesses[0].origin == "named:pi1:T1..T2" &&
               tl.witnesses[1].origin == "named:pi2:Z-1..Z-2" && tl.witnesses[0].profile.raw_power_ranks.front() == 0 &&
               tl.witnesses[1].profile.raw_power_ranks.front() > 0;
    r.check("timelike IP fails with witnesses (T1,T2) and (Z1-,Z2-)", !tl.holds && wit, to_json(tl));
    return r.to_json(opt);
}

inline Json reproduce_stanilov_table(const ReproduceOptions& opt) {
    Reproduction r("lemma-4.5");
    const std::size_t s = opt.s, n = 3 * s;
    ModelSpace m = model_V3s(s);
    CheckOptions co;
    co.workers = opt.workers;
    for (std::size_t k = 2; k <= s; ++k) {
        co.named_planes = v3s_named_planes(s, k, CausalType::Spacelike);
        Verdict v = check_stanilov(m, k, CausalType::Spacelike, opt.samples, opt.seed, co);
        bool profile = v.reference_profile.profile.power_ranks == detail::nilpotent_ranks({k}, n);
        Json d;
        d["power_ranks"] = to_json(v.reference_profile.profile.power_ranks);
        d["holds"] = v.holds;
        r.check("k=" + std::to_string(k) + " spacelike Stanilov holds, rank k and square zero", v.holds && profile, d);
    }

    // Timelike k = 2s: constant profile, rank Θ = ℓ on every sampled plane.
    {
        const std::size_t k = 2 * s;
        co.named_planes = v3s_named_planes(s, k, CausalType::Timelike);
        Verdict v = check_stanilov(m, k, CausalType::Timelike, opt.samples, opt.seed, co);
        std::vector<char> ok(opt.samples);
        parallel_for(opt.samples, opt.workers, [&](std::size_t i) {
            PlaneFrame fr = random_frame(m, k, CausalType::Timelike, mix_seed(opt.seed, i));
            std::size_t l = ell(m, fr), rk = detail::theta_rank(m, fr);
            ok[i] = l >= 2 ? rk == l : rk == 0;
        });
        bool all = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
        Json d;
        d["rank"] = detail::theta_rank(v);
        d["ell"] = ell(m, co.named_planes.front().frame);
        d["holds"] = v.holds;
        r.check("k=2s timelike Stanilov holds and rank equals ell", v.holds && all && detail::theta_rank(v) == s, d);
    }

    // The π₁/π₂ table for 2 ≤ k < 2s.
    for (std::size_t k = 2; k < 2 * s; ++k) {
        auto planes = v3s_named_planes(s, k, CausalType::Timelike);
        std::size_t r1 = detail::theta_rank(m, planes[0].frame), r2 = detail::theta_rank(m, planes[1].frame);
        std::size_t e1 = k <= s + 1 ? 0 : k - s, e2 = k <= s + 1 ? 2 : k + 1 - s;
        co.named_planes = planes;
        Verdict v = check_stanilov(m, k, CausalType::Timelike, opt.samples, opt.seed, co);
        Json d;
        d["pi1"] = planes[0].name;
        d["pi2"] = planes[1].name;
        d["rank_pi1"] = r1;
        d["rank_pi2"] = r2;
        d["expected"] = Json::array({e1, e2});
        d["verdict_holds"] = v.holds;
        bool wit = v.witnesses.size() == 2 && v.witnesses[0].origin == "named:" + planes[0].name &&
                   v.witnesses[1].origin == "named:" + planes[1].name;
        r.check("k=" + std::to_string(k) + " timelike: rank table reproduced and Stanilov fails at pi1/pi2",
                r1 == e1 && r2 == e2 && !v.holds && wit, d);
    }
    r.note("theta sums over ordered index pairs; ranks are convention independent");
    return r.to_json(opt);
}

inline Json reproduce_isometry_identity(const ReproduceOptions& opt) {
    Reproduction r("thm-1.4");
    struct Case {
        std::string name;
        Matrix g, phi;
    };
    std::vector<Case> cases;
    cases.push_back({"euclidean R^5, phi = Id", Matrix::identity(5), Matrix::identity(5)});
    cases.push_back({"euclidean R^5, phi = -Id", Matrix::identity(5), Matrix::identity(5) * Rational(-1)});
    cases.push_back({"euclidean R^5, phi = diag(1,1,1,-1,-1)", Matrix::identity(5), Matrix::diagonal({1, 1, 1, -1, -1})});
    cases.push_back({"signature (1,4), phi = diag(-1,1,1,1,1)", Matrix::diagonal({-1, 1, 1, 1, 1}), Matrix::diagonal({-1, 1, 1, 1, 1})});
    const std::size_t n = std::min<std::size_t>(opt.samples, 50);
    for (const auto& cs : cases)
        for (const Rational& c : {Rational(1), Rational(3, 2)})
            for (std::size_t k : {2u, 3u}) {
                auto rep = verify_isometry_theta_identity(cs.g, SelfAdjointMap{cs.phi}, c, k, CausalType::Spacelike, n, opt.seed,
                                                          opt.workers);
                Json d;
                d["theta_failures"] = rep.theta_failures;
                d["square_failures"] = rep.square_failures;
                d["stanilov_holds"] = rep.stanilov->holds;
                r.check(cs.name + ", c=" + to_string(c) + ", k=" + std::to_string(k), rep.holds, d);
            }
    r.note("theta = -2(k-1)c^2 P under the ordered sum; the unordered sum gives -(k-1)c^2 P");
    return r.to_json(opt);
}

/// Hypersurface pointwise models: nonsingular Hessian gives a constant rank 2
/// nilpotent skew operator; a singular one does not; Θ vanishes everywhere.
inline Json reproduce_hypersurface(const ReproduceOptions& opt) {
    Reproduction r("thm-1.6");
    CheckOptions co;
    co.workers = opt.workers;
    const std::size_t n = opt.samples;

    ModelSpace full = hypersurface_model(Matrix::diagonal({2, 2}), {2, 2});
    for (auto want : {CausalType::Spacelike, CausalType::Timelike}) {
        Verdict v = check_ip(full, want, n, opt.seed, co);
        bool profile = v.reference_profile.raw_power_ranks == detail::nilpotent_ranks({2}, 4) &&
                       v.reference_profile.profile.power_ranks == detail::nilpotent_ranks({}, 4);
        Json d;
        d["raw_power_ranks"] = to_json(v.reference_profile.raw_power_ranks);
        d["holds"] = v.holds;
        r.check("H = diag(2,2): " + to_string(want) + " IP holds with rank 2 nilpotent profile", v.holds && profile, d);
    }

    // f = x1^2 + x2^2 on p = 3 at a point: Hessian of rank 2 < 3.
    auto gf = metric_g_f(3, parse_poly("x1^2 + x2^2", indexed_names("x", 3)));
    Vector point{1, 1, 0, 0, 0, 0};
    ModelSpace partial = curvature_at(gf, point);
    for (auto want : {CausalType::Spacelike, CausalType::Timelike}) {
        Verdict v = check_ip(partial, want, n, opt.seed, co);
        std::vector<std::size_t> ranks;
        for (const auto& w : v.witnesses) ranks.push_back(w.profile.raw_power_ranks.front());
        std::sort(ranks.begin(), ranks.end());
        Json d = to_json(v);
        r.check("f = x1^2+x2^2, p=3: " + to_string(want) + " IP fails with rank 0 and rank 2 witnesses",
                !v.holds && ranks == std::vector<std::size_t>{0, 2}, d);
    }

    // Θ = 0 on every sampled definite k-plane, 2 ≤ k ≤ p.
    struct Target {
        std::string name;
        const ModelSpace* m;
        std::size_t p;
    };
    for (const auto& t : {Target{"H = diag(2,2)", &full, 2}, Target{"f = x1^2+x2^2, p=3", &partial, 3}})
        for (auto want : {CausalType::Spacelike, CausalType::Timelike})
            for (std::size_t k = 2; k <= t.p; ++k) {
                std::vector<char> zero(n);
                parallel_for(n, opt.workers, [&](std::size_t i) {
                    zero[i] = theta(*t.m, random_frame(*t.m, k, want, mix_seed(opt.seed, i))).is_zero();
                });
                bool all = std::all_of(zero.begin(), zero.end(), [](char c) { return c != 0; });
                Verdict v = check_stanilov(*t.m, k, want, n, opt.seed, co);
                r.check(t.name + ": theta = 0 on " + to_string(want) + " " + std::to_string(k) + "-planes",
                        all && v.holds && v.reference_profile.profile.power_ranks == detail::nilpotent_ranks({}, 2 * t.p));
            }

    // The full coordinate metric for f = x1^2+x2^2+x3^2: k-Stanilov at sampled points.
    auto g3 = metric_g_f(3, parse_poly("x1^2 + x2^2 + x3^2", indexed_names("x", 3)));
    for (std::size_t k : {2u, 3u}) {
        MetricCheckSpec spec{CheckKind::Stanilov, k, CausalType::Spacelike, std::min<std::size_t>(n, 20)};
        auto mv = check_metric(g3, spec, 3, opt.seed, {}, opt.workers);
        r.check("g_f, f = x1^2+x2^2+x3^2: k=" + std::to_string(k) + " spacelike Stanilov at sampled points", mv.holds);
    }
    r.note("hypersurface curvature computed with R(x,y,z,w) = g(R(x,y)z,w), R(x,y) = [nabla_x, nabla_y]; "
           "for H = diag(2,2) at grad (2,2) this gives R(dx1,dx2,dx2,dx1) = +4");
    return r.to_json(opt);
}

/// The coordinate metric g_{3s} at sampled points: spacelike IP and k-spacelike
/// Stanilov hold, the timelike conditions fail except k = 2s.
inline Json reproduce_metric_conditions(const ReproduceOptions& opt) {
    Reproduction r("thm-1.7");
    const std::size_t s = opt.s;
    const std::size_t points = 5, planes = std::min<std::size_t>(opt.samples, 20);
    for (const auto& [label, g] : {std::pair{std::string("g3s"), metric_g_3s(s)},
                                  std::pair{std::string("gF"), metric_g_F(s, detail::squares_F(s))}}) {
        auto run = [&](CheckKind kind, std::size_t k, CausalType want) {
            MetricCheckSpec spec{kind, k, want, planes};
            return check_metric(g, spec, points, opt.seed, v3s_family_planes(g, k, want), opt.workers);
        };
        auto ip_sp = run(CheckKind::IvanovPetrova, 2, CausalType::Spacelike);
        bool rank4 = !ip_sp.points.empty() && ip_sp.points.front().verdict &&
                     ip_sp.points.front().verdict->reference_profile.raw_power_ranks.front() == 4;
        Json d;
        d["cross_point_equal"] = ip_sp.cross_point_equal;
        r.check(label + ": spacelike rank 4 IP at every sampled point", ip_sp.holds && rank4, d);
        r.check(label + ": timelike IP fails", !run(CheckKind::IvanovPetrova, 2, CausalType::Timelike).holds);
        for (std::size_t k = 2; k <= s; ++k)
            r.check(label + ": k=" + std::to_string(k) + " spacelike Stanilov holds", run(CheckKind::Stanilov, k, CausalType::Spacelike).holds);
        for (std::size_t k = 2; k <= 2 * s; ++k) {
            bool holds = run(CheckKind::Stanilov, k, CausalType::Timelike).holds;
            r.check(label + ": k=" + std::to_string(k) + " timelike Stanilov " + (k == 2 * s ? "holds" : "fails"),
                    holds == (k == 2 * s));
        }
    }
    r.note("verdicts are per point; cross-point agreement is informational");
    return r.to_json(opt);
}

inline const std::map<std::string, std::function<Json(const ReproduceOptions&)>>& reproductions() {
    static const std::map<std::string, std::function<Json(const ReproduceOptions&)>> table{
        {"lemma-4.1", reproduce_coordinate_curvature}, {"lemma-4.3", reproduce_normalization}, {"lemma-4.4", reproduce_skew_ranks},
        {"lemma-4.5", reproduce_stanilov_table}, {"thm-1.4", reproduce_isometry_identity},     {"thm-1.6", reproduce_hypersurface},
        {"thm-1.7", reproduce_metric_conditions},
    };
    return table;
}

} // namespace csg
