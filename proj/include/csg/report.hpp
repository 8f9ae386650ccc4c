#pragma once

#include <sstream>
#include <string>

#include "json.hpp"

#include "csg/verify.hpp"

namespace csg {

/// Insertion-ordered so that serialized reports are byte-stable.
using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline Json to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

/// Ascending coefficients.
inline Json to_json(const UniPoly& p) {
    Json out = Json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_string(c));
    return out;
}

inline Json to_json(const std::vector<std::size_t>& v) {
    Json out = Json::array();
    for (auto x : v) out.push_back(x);
    return out;
}

inline Json to_json(const PlaneFrame& fr) {
    Json out = Json::array();
    for (const auto& v : fr.vectors()) out.push_back(to_json(v));
    return out;
}

inline Json to_json(const JordanProfile& p) {
    Json out;
    out["dim"] = p.dim;
    out["charpoly"] = to_json(p.charpoly);
    out["charpoly_text"] = p.charpoly.to_string("x");
    out["power_ranks"] = to_json(p.power_ranks);
    Json er = Json::object();
    for (const auto& [lambda, ranks] : p.eigen_ranks) er[to_string(lambda)] = to_json(ranks);
    out["eigen_ranks"] = std::move(er);
    Json sr = Json::object();
    for (const auto& [mu, ranks] : p.square_eigen_ranks) sr[to_string(mu)] = to_json(ranks);
    out["square_eigen_ranks"] = std::move(sr);
    return out;
}

/// The JordanProfile fields, plus raw_power_ranks for skew curvature profiles.
inline Json to_json(const PlaneProfile& p) {
    Json out = to_json(p.profile);
    if (!p.raw_power_ranks.empty()) out["raw_power_ranks"] = to_json(p.raw_power_ranks);
    return out;
}

inline Json to_json(const std::vector<std::string>& notes) {
    Json out = Json::array();
    for (const auto& n : notes) out.push_back(n);
    return out;
}

inline Json to_json(const Verdict& v) {
    Json out;
    out["property"] = v.property;
    out["holds"] = v.holds;
    out["samples"] = v.samples;
    out["battery"] = v.battery;
    out["seed"] = v.seed;
    out["reference_profile"] = to_json(v.reference_profile);
    Json ws = Json::array();
    for (const auto& w : v.witnesses) {
        Json j;
        j["origin"] = w.origin;
        j["frame"] = to_json(w.frame);
        j["profile"] = to_json(w.profile);
        ws.push_back(std::move(j));
    }
    out["witnesses"] = std::move(ws);
    out["notes"] = to_json(v.notes);
    return out;
}

inline Json to_json(const MetricVerdict& mv) {
    Json out;
    out["property"] = mv.property;
    out["holds"] = mv.holds;
    out["seed"] = mv.seed;
    out["cross_point_equal"] = mv.cross_point_equal;
    Json pts = Json::array();
    for (const auto& pv : mv.points) {
        Json j;
        j["point"] = to_json(pv.point);
        if (pv.verdict) j["verdict"] = to_json(*pv.verdict);
        if (!pv.note.empty()) j["note"] = pv.note;
        pts.push_back(std::move(j));
    }
    out["points"] = std::move(pts);
    out["notes"] = to_json(mv.notes);
    return out;
}

inline Json to_json(const IdentityReport& r) {
    Json out;
    out["property"] = r.property;
    out["holds"] = r.holds;
    out["samples"] = r.samples;
    out["theta_failures"] = r.theta_failures;
    out["square_failures"] = r.square_failures;
    if (r.first_failure) out["first_failure"] = to_json(*r.first_failure);
    if (r.stanilov) out["stanilov"] = to_json(*r.stanilov);
    out["notes"] = to_json(r.notes);
    return out;
}

inline Json to_json(const BridgeReport& r) {
    Json out;
    out["holds"] = r.holds;
    out["samples"] = r.samples;
    out["bridge_identity"] = r.bridge_identity;
    out["theta_charpoly_constant"] = r.theta_charpoly_constant;
    out["square_charpoly_constant"] = r.square_charpoly_constant;
    out["notes"] = to_json(r.notes);
    return out;
}

namespace detail {

inline bool is_scalar_row(const Json& j) {
    if (!j.is_array()) return false;
    for (const auto& x : j)
        if (x.is_structured()) return false;
    return true;
}

inline std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

inline void render(std::ostringstream& os, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            if (val.is_primitive()) os << pad << key << ": " << scalar_text(val) << "\n";
            else if (is_scalar_row(val)) {
                os << pad << key << ": (";
                bool first = true;
                for (const auto& x : val) {
                    os << (first ? "" : ", ") << scalar_text(x);
                    first = false;
                }
                os << ")\n";
            } else {
                os << pad << key << ":\n";
                render(os, val, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& val : j) {
            if (is_scalar_row(val)) {
                os << pad << "- (";
                bool first = true;
                for (const auto& x : val) {
                    os << (first ? "" : ", ") << scalar_text(x);
                    first = false;
                }
                os << ")\n";
            } else if (val.is_primitive()) {
                os << pad << "- " << scalar_text(val) << "\n";
            } else {
                os << pad << "-\n";
                render(os, val, indent + 2);
            }
        }
    } else {
        os << pad << scalar_text(j) << "\n";
    }
}

} // namespace detail

/// Indented key/value rendering of a report.
inline std::string render_text(const Json& j) {
    std::ostringstream os;
    detail::render(os, j, 0);
    return os.str();
}

} // namespace csg
