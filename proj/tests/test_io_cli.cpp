#include <gtest/gtest.h>

#include <sstream>

#include "csg/cli.hpp"
#include "csg/io.hpp"

using namespace csg;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(CSG_SAMPLES_DIR) + "/" + name; }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Singular; // not raised by any parser path
}

} // namespace

TEST(ModelIo, RoundTrip) {
    for (const ModelSpace& m : {model_V3s(2), model_V3s(3), hypersurface_model(Matrix{{1, 2}, {2, -3}}, {Rational(1, 2), 5})}) {
        ModelSpace back = parse_model(model_to_json(m).dump());
        EXPECT_EQ(back.metric(), m.metric());
        EXPECT_EQ(back.curvature(), m.curvature());
        EXPECT_EQ(back.aux_form().has_value(), m.aux_form().has_value());
    }
}

TEST(ModelIo, SymmetryClosure) {
    ModelSpace m = parse_model(R"({"dim": 2, "metric": {"0,0": "1", "1,1": 1}, "curvature": {"0,1,1,0": "2/3"}})");
    EXPECT_EQ(m.curvature()(1, 0, 0, 1), Rational(2, 3));
    EXPECT_EQ(m.curvature()(0, 1, 0, 1), Rational(-2, 3));
}

TEST(ModelIo, Errors) {
    EXPECT_EQ(kind_of([] { parse_model("{"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_model(R"({"metric": {}})"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_model(R"({"dim": 2, "metric": {"0,2": "1"}})"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_model(R"({"dim": 2, "metric": {"0,1": "1", "1,0": "2"}})"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_model(R"({"dim": 2, "metric": {"0,0": 0.5}})"); }), ErrorKind::ParseError);
    // R(0,1,1,0) = 1 forces R(0,1,0,1) = -1.
    EXPECT_EQ(kind_of([] { parse_model(R"({"dim": 2, "metric": {"0,0": "1", "1,1": "1"},
                                           "curvature": {"0,1,1,0": "1", "0,1,0,1": "1"}})"); }),
              ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_model(R"({"dim": 2, "metric": {"0,0": "1"}})"); }), ErrorKind::InvalidModel);
    // Fails the Bianchi identity.
    EXPECT_EQ(kind_of([] { parse_model(R"({"dim": 4, "metric": {"0,0": "1", "1,1": "1", "2,2": "1", "3,3": "1"},
                                           "curvature": {"0,1,2,3": "1"}})"); }),
              ErrorKind::InvalidModel);
}

TEST(MetricIo, RoundTripAndErrors) {
    for (const auto& g : {metric_g_3s(2), metric_g_f(2, parse_poly("x1*x2 + 1/2*x1^3", indexed_names("x", 2)))}) {
        PolynomialMetric back = parse_metric(metric_to_json(g).dump());
        ASSERT_EQ(back.dim(), g.dim());
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = 0; j < g.dim(); ++j) EXPECT_EQ(back.component(i, j), g.component(i, j));
    }
    EXPECT_EQ(kind_of([] { parse_metric(R"({"coords": ["a"], "components": {"0,0": "b"}})"); }), ErrorKind::VariableUnknown);
    EXPECT_EQ(kind_of([] { parse_metric(R"({"coords": ["a", "b"], "components": {"0,1": "a", "1,0": "b"}})"); }),
              ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_metric(R"({"components": {}})"); }), ErrorKind::ParseError);
}

TEST(Builtins, Models) {
    EXPECT_EQ(load_model("v3s:3").dim(), 9u);
    EXPECT_EQ(kind_of([] { load_model("v3s:1"); }), ErrorKind::STooSmall);
    EXPECT_EQ(kind_of([] { load_model("v3s:x"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { load_model("/nonexistent/model.json"); }), ErrorKind::ParseError);
}

TEST(Builtins, Metrics) {
    auto a = load_metric("g3s:2");
    EXPECT_EQ(a.family, MetricFamily::G3s);
    EXPECT_EQ(a.metric.dim(), 6u);
    auto b = load_metric("gf:x1*x1+x2*x2");
    EXPECT_EQ(b.family, MetricFamily::Gf);
    EXPECT_EQ(b.metric.dim(), 4u);
    EXPECT_EQ(load_metric("gf:x3").metric.dim(), 6u);
    EXPECT_EQ(load_metric("gf:4:x1^2").metric.dim(), 8u);
    EXPECT_EQ(kind_of([] { load_metric("gf:2:x3"); }), ErrorKind::BadVariables);
    auto c = load_metric("gF:u1^2,u2^3");
    EXPECT_EQ(c.family, MetricFamily::GF);
    EXPECT_EQ(c.metric.dim(), 6u);
    EXPECT_EQ(kind_of([] { load_metric("gF:u2,u1"); }), ErrorKind::BadVariables);
}

TEST(Samples, MatchTheBuiltins) {
    ModelSpace v = load_model(sample("v3s2.json"));
    EXPECT_EQ(v.metric(), model_V3s(2).metric());
    EXPECT_EQ(v.curvature(), model_V3s(2).curvature());
    ModelSpace h = load_model(sample("hypersurface_diag22.json"));
    EXPECT_EQ(h.curvature(), hypersurface_model(Matrix::diagonal({2, 2}), {2, 2}).curvature());
    EXPECT_TRUE(validate_model(load_model(sample("sphere3.json"))).ok);

    Vector p{1, -2, Rational(1, 3), 4, 0, 2};
    auto g = load_metric(sample("g3s2_metric.json"));
    EXPECT_EQ(g.family, MetricFamily::File);
    EXPECT_EQ(curvature_at(g.metric, p).curvature(), curvature_at(metric_g_3s(2), p).curvature());
    Vector q{1, 2, 3, 4};
    EXPECT_EQ(load_metric(sample("graph_sum_squares.json")).metric.at(q), load_metric("gf:x1^2+x2^2").metric.at(q));
}

TEST(Cli, DocumentedExamples) {
    auto a = run({"reproduce", "lemma-4.4", "--s", "2", "--samples", "20"});
    EXPECT_EQ(a.code, 0) << a.err;
    auto rep = Json::parse(a.out);
    EXPECT_TRUE(rep["holds"].get<bool>());

    auto b = run({"check-model", "v3s:2", "--kind", "ip", "--causal", "timelike", "--samples", "50", "--seed", "7"});
    EXPECT_EQ(b.code, 1);
    auto v = Json::parse(b.out);
    EXPECT_FALSE(v["holds"].get<bool>());
    EXPECT_EQ(v["witnesses"].size(), 2u);
    EXPECT_EQ(v["seed"], 7);

    auto c = run({"check-metric", "gf:x1*x1+x2*x2", "--kind", "stanilov", "--k", "2", "--causal", "spacelike", "--points", "3",
                  "--samples", "20", "--seed", "1"});
    EXPECT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(Json::parse(c.out)["points"].size(), 3u);
}

TEST(Cli, InputErrorsExitTwo) {
    auto a = run({"check-model", "v3s:2", "--kind", "stanilov", "--k", "3", "--causal", "spacelike"});
    EXPECT_EQ(a.code, 2);
    EXPECT_NE(a.err.find("KTooLarge"), std::string::npos);
    EXPECT_EQ(run({"check-model", "/nonexistent.json", "--kind", "ip", "--causal", "spacelike"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"check-model", "v3s:2", "--kind", "xx"}).code, 2);
    EXPECT_EQ(run({"reproduce", "thm-9.9"}).code, 2);
    EXPECT_EQ(run({"check-metric", "gf:x1+", "--kind", "ip", "--causal", "spacelike"}).code, 2);
}

TEST(Cli, TextFormatAndFiles) {
    auto a = run({"check-model", sample("v3s2.json"), "--kind", "ip", "--causal", "spacelike", "--samples", "5", "--format", "text"});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_NE(a.out.find("property: spacelike-Jordan-IP"), std::string::npos);
    EXPECT_NE(a.out.find("holds: true"), std::string::npos);

    auto b = run({"check-metric", sample("g3s2_metric.json"), "--kind", "ip", "--causal", "spacelike", "--points", "2", "--samples", "4"});
    EXPECT_EQ(b.code, 0) << b.err;
}

TEST(Cli, OutputIsDeterministic) {
    std::vector<std::string> args{"check-model", "v3s:2", "--kind", "stanilov", "--k", "2", "--causal", "timelike", "--samples", "10", "--seed", "3"};
    auto one = args, three = args;
    one.insert(one.end(), {"--workers", "1"});
    three.insert(three.end(), {"--workers", "3"});
    EXPECT_EQ(run(one).out, run(three).out);
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, HelpExitsZero) {
    auto h = run({"--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("check-model"), std::string::npos);
}
