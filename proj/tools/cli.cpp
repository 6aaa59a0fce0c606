#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

#include <CLI11.hpp>

namespace tptd::cli {

namespace {

struct RunSlots {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config;
    bool warm_start = false;
    CLI::Option* warm = nullptr;
};

const std::map<std::string, std::string>& help_text() {
    static const std::map<std::string, std::string> h{
        {"problem", "rp-linear | rp-concave | rp-convex | med"},
        {"p", "MED exponent (default 1)"},
        {"m", "objectives (default 3)"},
        {"n", "decision variables (default 40)"},
        {"n-div", "lattice divisions (default 12)"},
        {"eps-t", "boundary tolerance (default 0.01)"},
        {"eta", "relocation step (default 0.4)"},
        {"pop", "population size (MED 10, RP 40)"},
        {"gens", "generations per run (MED 500, RP 1500)"},
        {"sigma0", "initial step size (default 0.5)"},
        {"optimizer", "cr-fm-nes | cma-es"},
        {"trials", "independent trials (default 1)"},
        {"seed", "master seed (default 0)"},
        {"threads", "worker threads (default: hardware concurrency)"},
        {"out", "output directory; nothing is written without it"},
        {"emit", "comma list of solutions,targets,summary (default all)"},
        {"ref", "hypervolume reference coordinate (default 1.1)"},
        {"rho", "TPTD augmentation weight, 0 for plain TPTD (default 0.01)"},
    };
    return h;
}

void register_run(CLI::App& app, RunSlots& slots) {
    app.add_option("--config", slots.config, "JSON file with the same keys; flags override it");
    for (const auto& key : ConfigBuilder::keys()) {
        if (key == "warm-start") continue;
        slots.options[key] = app.add_option("--" + key, slots.values[key], help_text().at(key));
    }
    slots.warm = app.add_flag("--warm-start", slots.warm_start, "warm-start boundary bisection runs");
}

ExperimentConfig resolve(const RunSlots& slots) {
    ConfigBuilder b;
    if (!slots.config.empty()) b.load_json_file(slots.config);
    for (const auto& [key, opt] : slots.options) {
        if (opt->count() > 0) b.set(key, slots.values.at(key));
    }
    if (slots.warm->count() > 0) b.set("warm-start", slots.warm_start ? "true" : "false");
    return b.build();
}

std::string fmt(double v, const char* spec = "%.5f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

int run_command(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto& r = cfg.run;
    out << "problem " << to_string(r.problem.kind) << " m=" << r.problem.m << " n=" << r.problem.n
        << " n_div=" << r.n_div << " pop=" << r.optimizer.population_size << " gens=" << r.optimizer.max_generations
        << " optimizer=" << to_string(r.optimizer.algorithm) << " threads=" << r.max_parallel << '\n';
    const SummaryRecord s = run_experiment(cfg);
    for (const auto& t : s.trials) {
        if (t.failed) {
            err << "trial " << t.trial << " failed: " << t.error << '\n';
            continue;
        }
        out << "trial " << t.trial << "  hv_ratio " << fmt(t.hv_ratio) << "  entries " << t.entries
            << "  degenerate " << t.degenerate_center << "  " << fmt(t.wall_seconds, "%.1f") << "s\n";
    }
    out << "hv_ratio mean " << fmt(s.hv_ratio_mean) << "  std " << fmt(s.hv_ratio_std) << "  median "
        << fmt(s.hv_ratio_median) << "  (" << s.trials.size() - s.failed << "/" << s.trials.size() << " trials)\n";
    if (cfg.output_dir) out << "wrote " << cfg.output_dir->string() << '\n';
    return s.failed == 0 ? 0 : 1;
}

int hv_command(const std::string& input, double ref, std::ostream& out) {
    const auto trials = read_solution_objectives(input);
    double sum = 0.0;
    for (const auto& [trial, points] : trials) {
        const auto rp = ReferencePoint::uniform(points.front().size(), ref);
        const HypervolumeResult hv = hypervolume_detail(points, rp);
        const double ratio = hv.value / rp.box_volume();
        sum += ratio;
        out << "trial " << trial << "  hv " << format_real(hv.value) << "  hv_ratio " << format_real(ratio)
            << "  points " << points.size() << "  skipped " << hv.skipped << '\n';
    }
    if (!trials.empty()) out << "hv_ratio mean " << format_real(sum / static_cast<double>(trials.size())) << '\n';
    return 0;
}

}  // namespace

ExperimentConfig parse_run_args(const std::vector<std::string>& args) {
    CLI::App app{"run"};
    RunSlots slots;
    register_run(app, slots);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    return resolve(slots);
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Target point-based Tchebycheff decomposition for multi-objective black-box problems"};
    app.require_subcommand(1);

    RunSlots slots;
    CLI::App* run = app.add_subcommand("run", "run the full pipeline for one or more trials");
    register_run(*run, slots);

    std::string input;
    double ref = 1.1;
    CLI::App* hv = app.add_subcommand("hv", "recompute hypervolume from a solutions.csv");
    hv->add_option("--input", input, "solutions.csv path")->required();
    hv->add_option("--ref", ref, "reference coordinate")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }
    try {
        if (run->parsed()) return run_command(resolve(slots), out, err);
        return hv_command(input, ref, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace tptd::cli
