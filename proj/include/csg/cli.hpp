#pragma once

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "csg/io.hpp"
#include "csg/report.hpp"
#include "csg/reproduce.hpp"
#include "csg/verify.hpp"

namespace csg {

namespace detail {

inline CausalType parse_causal(const std::string& s) {
    if (s == "spacelike") return CausalType::Spacelike;
    if (s == "timelike") return CausalType::Timelike;
    throw Error(ErrorKind::ParseError, "--causal must be spacelike or timelike");
}

inline CheckKind parse_kind(const std::string& s) {
    if (s == "ip") return CheckKind::IvanovPetrova;
    if (s == "stanilov") return CheckKind::Stanilov;
    throw Error(ErrorKind::ParseError, "--kind must be ip or stanilov");
}

inline void emit(std::ostream& out, const Json& report, const std::string& format) {
    if (format == "text") out << render_text(report);
    else out << report.dump(2) << "\n";
}

} // namespace detail

/// Exit codes: 0 every asserted property holds, 1 a property failed, 2 input error.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact curvature operator checks on model spaces and polynomial metrics", "csg"};
    app.require_subcommand(1);

    std::string target, kind = "ip", causal = "spacelike", format = "json", name;
    std::size_t k = 2, samples = 50, points = 5, s = 2;
    std::uint64_t seed = 1;
    unsigned workers = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("target", target, "model/metric file or builtin")->required();
        sub->add_option("--kind", kind, "ip or stanilov")->check(CLI::IsMember({"ip", "stanilov"}));
        sub->add_option("--k", k, "plane dimension for stanilov");
        sub->add_option("--causal", causal, "spacelike or timelike")->check(CLI::IsMember({"spacelike", "timelike"}));
        sub->add_option("--samples", samples, "random planes (per point for metrics)");
        sub->add_option("--seed", seed, "seed");
        sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--workers", workers, "worker threads, 0 = all cores");
    };
    auto* model_cmd = app.add_subcommand("check-model", "decide a condition on a model space (builtin v3s:<s>)");
    common(model_cmd);
    auto* metric_cmd = app.add_subcommand("check-metric", "decide a condition at sampled points of a metric (g3s:<s>, gf:<poly>, gf:<p>:<poly>, gF:<f1>,...)");
    common(metric_cmd);
    metric_cmd->add_option("--points", points, "sampled points");
    auto* repro_cmd = app.add_subcommand("reproduce", "run a scripted reproduction");
    std::vector<std::string> names;
    for (const auto& [key, fn] : reproductions()) names.push_back(key);
    repro_cmd->add_option("name", name, "reproduction")->required()->check(CLI::IsMember(names));
    repro_cmd->add_option("--s", s, "model parameter s");
    repro_cmd->add_option("--samples", samples, "random planes")->default_val(100);
    repro_cmd->add_option("--seed", seed, "seed");
    repro_cmd->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    repro_cmd->add_option("--workers", workers, "worker threads, 0 = all cores");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*repro_cmd) {
            if (s < 2) throw Error(ErrorKind::STooSmall, "--s must be at least 2");
            ReproduceOptions opt{s, samples, seed, workers};
            Json report = reproductions().at(name)(opt);
            detail::emit(out, report, format);
            return report["holds"].get<bool>() ? 0 : 1;
        }
        CheckKind ck = detail::parse_kind(kind);
        CausalType want = detail::parse_causal(causal);
        if (ck == CheckKind::IvanovPetrova) k = 2;
        if (*model_cmd) {
            ModelSpace m = load_model(target);
            CheckOptions opt;
            opt.workers = workers;
            if (target.rfind("v3s:", 0) == 0) opt.named_planes = v3s_named_planes(m.dim() / 3, k, want);
            Verdict v = check_planes(ck, m, k, want, samples, seed, opt);
            detail::emit(out, to_json(v), format);
            return v.holds ? 0 : 1;
        }
        MetricSource src = load_metric(target);
        PlaneProvider provider;
        if (src.family == MetricFamily::G3s || src.family == MetricFamily::GF)
            provider = v3s_family_planes(src.metric, k, want);
        MetricCheckSpec spec{ck, k, want, samples};
        MetricVerdict mv = check_metric(src.metric, spec, points, seed, provider, workers);
        detail::emit(out, to_json(mv), format);
        return mv.holds ? 0 : 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_main(args);
}

} // namespace csg
