#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "csg/error.hpp"
#include "csg/metrics.hpp"
#include "csg/model_space.hpp"
#include "csg/poly.hpp"

namespace csg {

namespace detail {

/// "i,j,..." with exactly `count` 0-based indices below `dim`.
inline std::vector<std::size_t> parse_index_key(const std::string& key, std::size_t count, std::size_t dim) {
    std::vector<std::size_t> out;
    std::string_view rest = key;
    while (true) {
        auto comma = rest.find(',');
        std::string_view tok = rest.substr(0, comma);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw Error(ErrorKind::ParseError, "bad index key \"" + key + "\"");
        if (v >= dim) throw Error(ErrorKind::ParseError, "index out of range in \"" + key + "\"");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (out.size() != count)
        throw Error(ErrorKind::ParseError, "key \"" + key + "\" needs " + std::to_string(count) + " indices");
    return out;
}

inline Rational json_rational(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    throw Error(ErrorKind::ParseError, where + ": rationals are written as \"a/b\" strings");
}

/// Sparse symmetric matrix; a key and its transpose must agree.
inline Matrix read_symmetric(const nlohmann::json& obj, std::size_t dim, const std::string& what) {
    if (!obj.is_object()) throw Error(ErrorKind::ParseError, what + " must be an object of \"i,j\": value");
    Matrix m(dim, dim);
    std::vector<char> seen(dim * dim, 0);
    for (const auto& [key, val] : obj.items()) {
        auto ij = parse_index_key(key, 2, dim);
        Rational q = json_rational(val, what + "[" + key + "]");
        for (auto [i, j] : {std::pair{ij[0], ij[1]}, std::pair{ij[1], ij[0]}}) {
            if (seen[i * dim + j] && m(i, j) != q) throw Error(ErrorKind::ParseError, what + " entry " + key + " conflicts with its transpose");
            m(i, j) = q;
            seen[i * dim + j] = 1;
        }
    }
    return m;
}

inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

} // namespace detail

/// Model document:
///   {"dim": n, "metric": {"i,j": "a/b", ...}, "curvature": {"a,b,c,d": "a/b", ...},
///    "aux_form": {"i,j": "a/b", ...}}
/// Indices are 0-based. The metric gets symmetric closure and the curvature its
/// Z₂ closure; contradicting entries are rejected. The result must pass
/// validate_model.
inline ModelSpace model_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_unsigned())
        throw Error(ErrorKind::ParseError, "model needs a non-negative integer \"dim\"");
    const auto n = doc["dim"].get<std::size_t>();
    if (n == 0 || n > 64) throw Error(ErrorKind::ParseError, "dim must be in 1..64");
    if (!doc.contains("metric")) throw Error(ErrorKind::ParseError, "model needs \"metric\"");
    Matrix g = detail::read_symmetric(doc["metric"], n, "metric");
    Tensor4 R(n);
    if (doc.contains("curvature")) {
        const auto& cv = doc["curvature"];
        if (!cv.is_object()) throw Error(ErrorKind::ParseError, "curvature must be an object of \"a,b,c,d\": value");
        for (const auto& [key, val] : cv.items()) {
            auto ix = detail::parse_index_key(key, 4, n);
            Rational q = detail::json_rational(val, "curvature[" + key + "]");
            if (!R.set_with_symmetries(ix[0], ix[1], ix[2], ix[3], q))
                throw Error(ErrorKind::ParseError, "curvature entry " + key + " conflicts with a symmetry image");
        }
    }
    std::optional<Matrix> aux;
    if (doc.contains("aux_form")) aux = detail::read_symmetric(doc["aux_form"], n, "aux_form");
    ModelSpace m(std::move(g), std::move(R), std::move(aux));
    auto rep = validate_model(m);
    if (!rep.ok) throw Error(ErrorKind::InvalidModel, rep.message);
    return m;
}

inline ModelSpace parse_model(const std::string& text) { return model_from_json(detail::parse_json_text(text)); }

/// Inverse of model_from_json: upper-triangle metric, one representative per
/// curvature orbit (its lexicographically smallest index).
inline nlohmann::ordered_json model_to_json(const ModelSpace& m) {
    nlohmann::ordered_json doc;
    const std::size_t n = m.dim();
    doc["dim"] = n;
    auto sym = [n](const Matrix& a) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (sgn(a(i, j)) != 0) o[std::to_string(i) + "," + std::to_string(j)] = to_string(a(i, j));
        return o;
    };
    doc["metric"] = sym(m.metric());
    nlohmann::ordered_json cv = nlohmann::ordered_json::object();
    for (const auto& e : m.nonzeros()) {
        const auto& [a, b, c, d] = e.index;
        bool smallest = true;
        for (const auto& [idx, s] : Tensor4::z2_orbit(a, b, c, d))
            if (idx < e.index) smallest = false;
        if (!smallest) continue;
        cv[std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d)] = to_string(e.value);
    }
    doc["curvature"] = std::move(cv);
    if (m.aux_form()) doc["aux_form"] = sym(*m.aux_form());
    return doc;
}

/// Metric document:
///   {"coords": ["u1", ...], "components": {"i,j": "polynomial", ...}}
/// Indices are 0-based; symmetric closure applies.
inline PolynomialMetric metric_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("coords") || !doc["coords"].is_array())
        throw Error(ErrorKind::ParseError, "metric needs a \"coords\" list");
    std::vector<std::string> coords;
    for (const auto& c : doc["coords"]) {
        if (!c.is_string()) throw Error(ErrorKind::ParseError, "coordinate names must be strings");
        coords.push_back(c.get<std::string>());
    }
    const std::size_t n = coords.size();
    if (n == 0) throw Error(ErrorKind::ParseError, "no coordinates");
    auto comp = zero_components(coords);
    std::vector<char> seen(n * n, 0);
    if (!doc.contains("components") || !doc["components"].is_object())
        throw Error(ErrorKind::ParseError, "metric needs a \"components\" object");
    for (const auto& [key, val] : doc["components"].items()) {
        auto ij = detail::parse_index_key(key, 2, n);
        if (!val.is_string()) throw Error(ErrorKind::ParseError, "component " + key + " must be a polynomial string");
        MultiPoly p = parse_poly(val.get<std::string>(), coords);
        for (auto [i, j] : {std::pair{ij[0], ij[1]}, std::pair{ij[1], ij[0]}}) {
            if (seen[i * n + j] && !(comp[i][j] == p))
                throw Error(ErrorKind::ParseError, "component " + key + " conflicts with its transpose");
            comp[i][j] = p;
            seen[i * n + j] = 1;
        }
    }
    return PolynomialMetric(std::move(coords), std::move(comp));
}

inline PolynomialMetric parse_metric(const std::string& text) { return metric_from_json(detail::parse_json_text(text)); }

/// Upper-triangle nonzero components.
inline nlohmann::ordered_json metric_to_json(const PolynomialMetric& g) {
    nlohmann::ordered_json doc;
    doc["coords"] = g.coords();
    nlohmann::ordered_json comp = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i; j < g.dim(); ++j)
            if (!g.component(i, j).is_zero()) comp[std::to_string(i) + "," + std::to_string(j)] = g.component(i, j).to_string();
    doc["components"] = std::move(comp);
    return doc;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

inline std::size_t parse_count(std::string_view text, const std::string& what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw Error(ErrorKind::ParseError, what + ": expected a count, got \"" + std::string(text) + "\"");
    return v;
}

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    while (true) {
        auto pos = text.find(sep);
        out.emplace_back(text.substr(0, pos));
        if (pos == std::string_view::npos) break;
        text.remove_prefix(pos + 1);
    }
    return out;
}

} // namespace detail

enum class MetricFamily { File, G3s, Gf, GF };

struct MetricSource {
    PolynomialMetric metric;
    MetricFamily family = MetricFamily::File;
};

inline bool is_builtin(std::string_view spec) { return spec.find(':') != std::string_view::npos; }

/// `v3s:<s>` or a model file.
inline ModelSpace load_model(const std::string& spec) {
    if (spec.rfind("v3s:", 0) == 0) return model_V3s(detail::parse_count(std::string_view(spec).substr(4), "v3s"));
    return parse_model(read_file(spec));
}

/// `g3s:<s>`, `gf:<poly>`, `gf:<p>:<poly>`, `gF:<f1>,<f2>,...` or a metric file.
/// For `gf:<poly>` the dimension p is the largest x-index used, at least 2.
inline MetricSource load_metric(const std::string& spec) {
    std::string_view sv = spec;
    if (sv.rfind("g3s:", 0) == 0) return {metric_g_3s(detail::parse_count(sv.substr(4), "g3s")), MetricFamily::G3s};
    if (sv.rfind("gf:", 0) == 0) {
        std::string_view body = sv.substr(3);
        std::size_t p = 0;
        auto colon = body.find(':');
        if (colon != std::string_view::npos) {
            p = detail::parse_count(body.substr(0, colon), "gf dimension");
            body.remove_prefix(colon + 1);
        }
        // Highest xN mentioned in the text.
        std::size_t highest = 0;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] != 'x' || (i > 0 && std::isalnum(static_cast<unsigned char>(body[i - 1])))) continue;
            std::size_t j = i + 1, v = 0;
            while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) v = v * 10 + (body[j++] - '0');
            if (j > i + 1) highest = std::max(highest, v);
        }
        if (p == 0) p = std::max<std::size_t>(2, highest);
        if (highest > p) throw Error(ErrorKind::BadVariables, "f uses x" + std::to_string(highest) + " but p = " + std::to_string(p));
        auto f = parse_poly(body, indexed_names("x", p));
        return {metric_g_f(p, f), MetricFamily::Gf};
    }
    if (sv.rfind("gF:", 0) == 0) {
        auto parts = detail::split(sv.substr(3), ',');
        const std::size_t s = parts.size();
        auto us = indexed_names("u", s);
        std::vector<MultiPoly> fs;
        for (const auto& part : parts) fs.push_back(parse_poly(part, us));
        return {metric_g_F(s, fs), MetricFamily::GF};
    }
    return {parse_metric(read_file(spec)), MetricFamily::File};
}

} // namespace csg
