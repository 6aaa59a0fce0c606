#include "tptd/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tptd/parallel.hpp"
#include "tptd/seeding.hpp"

namespace tptd {

namespace {

using json = nlohmann::json;

std::size_t parse_size(std::string_view key, const std::string& v) {
    std::size_t pos = 0;
    unsigned long long x = 0;
    try {
        if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
        x = std::stoull(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size()) throw UsageError("--" + std::string(key) + ": expected a nonnegative integer, got '" + v + "'");
    return static_cast<std::size_t>(x);
}

double parse_real(std::string_view key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size() || !std::isfinite(x)) {
        throw UsageError("--" + std::string(key) + ": expected a real number, got '" + v + "'");
    }
    return x;
}

bool parse_flag(std::string_view key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw UsageError("--" + std::string(key) + ": expected true or false, got '" + v + "'");
}

std::set<Artifact> parse_emit(const std::string& v) {
    std::set<Artifact> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item == "solutions" || item == "solutions_csv") {
            out.insert(Artifact::kSolutionsCsv);
        } else if (item == "targets" || item == "targets_csv") {
            out.insert(Artifact::kTargetsCsv);
        } else if (item == "summary" || item == "summary_json") {
            out.insert(Artifact::kSummaryJson);
        } else {
            throw UsageError("--emit: unknown artifact '" + item + "' (expected solutions, targets, summary)");
        }
    }
    return out;
}

std::string artifact_name(Artifact a) {
    switch (a) {
        case Artifact::kSolutionsCsv: return "solutions";
        case Artifact::kTargetsCsv: return "targets";
        case Artifact::kSummaryJson: return "summary";
    }
    return "?";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            parts.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    parts.push_back(std::move(cur));
    return parts;
}

void append_target_rows(std::string& out, std::size_t trial, const RunResult& result) {
    for (const auto& e : result.entries) {
        if (!e.target) continue;
        out += std::to_string(trial) + ',' + e.address.to_string();
        for (double v : e.initial_target->values()) out += ',' + format_real(v);
        for (double v : e.target->values()) out += ',' + format_real(v);
        out += '\n';
    }
}

std::string targets_header(std::size_t m) {
    std::string h = "trial,address";
    for (std::size_t i = 1; i <= m; ++i) h += ",t0_" + std::to_string(i);
    for (std::size_t i = 1; i <= m; ++i) h += ",tstar_" + std::to_string(i);
    return h + '\n';
}

json config_json(const ExperimentConfig& cfg) {
    const RunConfig& r = cfg.run;
    json emit = json::array();
    for (Artifact a : cfg.emit) emit.push_back(artifact_name(a));
    return json{
        {"problem", to_string(r.problem.kind)},
        {"p", r.problem.p},
        {"m", r.problem.m},
        {"n", r.problem.n},
        {"n-div", r.n_div},
        {"eps-t", r.eps_t},
        {"eta", r.eta},
        {"pop", r.optimizer.population_size},
        {"gens", r.optimizer.max_generations},
        {"sigma0", r.optimizer.initial_step_size},
        {"optimizer", to_string(r.optimizer.algorithm)},
        {"trials", cfg.trials},
        {"seed", r.master_seed},
        {"threads", r.max_parallel},
        {"warm-start", r.warm_start},
        {"rho", r.rho},
        {"ref", cfg.ref},
        {"emit", emit},
    };
}

json summary_json(const ExperimentConfig& cfg, const SummaryRecord& s) {
    json trials = json::array();
    for (const auto& t : s.trials) {
        json j{{"trial", t.trial},       {"seed", t.seed},         {"failed", t.failed},
               {"hv", t.hv},             {"hv_ratio", t.hv_ratio}, {"hv_skipped", t.hv_skipped},
               {"wall_seconds", t.wall_seconds}, {"entries", t.entries}, {"ok", t.ok},
               {"degenerate_center", t.degenerate_center}};
        if (t.failed) j["error"] = t.error;
        trials.push_back(std::move(j));
    }
    return json{
        {"config", config_json(cfg)},
        {"trials", trials},
        {"aggregate",
         {{"hv_ratio_mean", s.hv_ratio_mean},
          {"hv_ratio_std", s.hv_ratio_std},
          {"hv_ratio_median", s.hv_ratio_median},
          {"failed", s.failed},
          {"wall_seconds", s.wall_seconds}}},
    };
}

}  // namespace

void ExperimentConfig::validate() const {
    run.validate();
    if (trials < 1) throw ContractError("experiment: trials must be >= 1");
    if (!(ref > 0.0 && std::isfinite(ref))) throw ContractError("experiment: ref must be positive");
}

const std::vector<std::string>& ConfigBuilder::keys() {
    static const std::vector<std::string> k{"problem", "p",         "m",      "n",         "n-div",   "eps-t",
                                            "eta",     "pop",       "gens",   "sigma0",    "optimizer", "trials",
                                            "seed",    "threads",   "out",    "emit",      "ref",     "warm-start",
                                            "rho"};
    return k;
}

void ConfigBuilder::set(std::string_view key, std::string value) {
    const auto& k = keys();
    if (std::find(k.begin(), k.end(), key) == k.end()) throw UsageError("unknown setting '" + std::string(key) + "'");
    values_.insert_or_assign(std::string(key), std::move(value));
}

void ConfigBuilder::load_json_text(std::string_view text, std::string_view origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string(origin) + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object()) throw UsageError(std::string(origin) + ": expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        std::string v;
        if (value.is_string()) {
            v = value.get<std::string>();
        } else if (value.is_boolean()) {
            v = value.get<bool>() ? "true" : "false";
        } else if (value.is_number_integer() || value.is_number_unsigned()) {
            v = value.dump();
        } else if (value.is_number_float()) {
            v = format_real(value.get<double>());
        } else if (value.is_array()) {
            for (const auto& item : value) {
                if (!item.is_string()) throw UsageError(std::string(origin) + ": '" + key + "' must list strings");
                if (!v.empty()) v += ',';
                v += item.get<std::string>();
            }
        } else {
            throw UsageError(std::string(origin) + ": unsupported value for '" + key + "'");
        }
        try {
            set(key, std::move(v));
        } catch (const UsageError& e) {
            throw UsageError(std::string(origin) + ": " + e.what());
        }
    }
}

void ConfigBuilder::load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    load_json_text(ss.str(), path.string());
}

ExperimentConfig ConfigBuilder::build() const {
    ExperimentConfig cfg;
    auto get = [&](std::string_view key) -> const std::string* {
        auto it = values_.find(key);
        return it == values_.end() ? nullptr : &it->second;
    };
    RunConfig& r = cfg.run;
    if (auto v = get("problem")) {
        try {
            r.problem.kind = parse_problem_kind(*v);
        } catch (const ContractError& e) {
            throw UsageError(std::string("--problem: ") + e.what());
        }
    }
    if (auto v = get("p")) r.problem.p = parse_real("p", *v);
    if (auto v = get("m")) r.problem.m = parse_size("m", *v);
    if (auto v = get("n")) r.problem.n = parse_size("n", *v);
    if (auto v = get("n-div")) r.n_div = parse_size("n-div", *v);
    if (auto v = get("eps-t")) r.eps_t = parse_real("eps-t", *v);
    if (auto v = get("eta")) r.eta = parse_real("eta", *v);

    const bool rp = is_rp(r.problem.kind);
    r.optimizer.population_size = rp ? 40 : 10;
    r.optimizer.max_generations = rp ? 1500 : 500;
    r.optimizer.initial_step_size = 0.5;
    if (auto v = get("pop")) r.optimizer.population_size = parse_size("pop", *v);
    if (auto v = get("gens")) r.optimizer.max_generations = parse_size("gens", *v);
    if (auto v = get("sigma0")) r.optimizer.initial_step_size = parse_real("sigma0", *v);
    if (auto v = get("optimizer")) {
        try {
            r.optimizer.algorithm = parse_optimizer_kind(*v);
        } catch (const ContractError& e) {
            throw UsageError(std::string("--optimizer: ") + e.what());
        }
    }
    if (auto v = get("trials")) cfg.trials = parse_size("trials", *v);
    if (auto v = get("seed")) r.master_seed = static_cast<std::uint64_t>(parse_size("seed", *v));
    if (auto v = get("threads")) r.max_parallel = parse_size("threads", *v);
    if (auto v = get("out"); v && !v->empty()) cfg.output_dir = *v;
    if (auto v = get("emit")) cfg.emit = parse_emit(*v);
    if (auto v = get("ref")) cfg.ref = parse_real("ref", *v);
    if (auto v = get("warm-start")) r.warm_start = parse_flag("warm-start", *v);
    if (auto v = get("rho")) r.rho = parse_real("rho", *v);
    if (r.max_parallel == 0) r.max_parallel = default_parallelism();

    try {
        cfg.validate();
    } catch (const ContractError& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t t) {
    return derive_seed(master, SeedStage::kTrial, std::span<const int>{}, t);
}

std::string solutions_header(std::size_t n, std::size_t m) {
    std::string h = "trial,address,face_dim,status";
    for (std::size_t i = 1; i <= n; ++i) h += ",x_" + std::to_string(i);
    for (std::size_t i = 1; i <= m; ++i) h += ",f_" + std::to_string(i);
    for (std::size_t i = 1; i <= m; ++i) h += ",fnorm_" + std::to_string(i);
    return h + '\n';
}

void append_solution_rows(std::string& out, std::size_t trial, const RunResult& result) {
    for (const auto& e : result.entries) {
        out += std::to_string(trial) + ',' + e.address.to_string() + ',' + std::to_string(e.face_dim) + ',' +
               std::string(to_string(e.status));
        for (double v : e.x) out += ',' + format_real(v);
        for (double v : e.f) out += ',' + format_real(v);
        for (double v : e.f_norm) out += ',' + format_real(v);
        out += '\n';
    }
}

void aggregate(SummaryRecord& s) {
    std::vector<double> v;
    s.failed = 0;
    for (const auto& t : s.trials) {
        if (t.failed) {
            ++s.failed;
        } else {
            v.push_back(t.hv_ratio);
        }
    }
    s.hv_ratio_mean = s.hv_ratio_std = s.hv_ratio_median = 0.0;
    if (v.empty()) return;
    double sum = 0.0;
    for (double x : v) sum += x;
    s.hv_ratio_mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.hv_ratio_mean) * (x - s.hv_ratio_mean);
        s.hv_ratio_std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    s.hv_ratio_median = v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

SummaryRecord run_experiment(const ExperimentConfig& cfg, const TrialObserver& observer) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const bool writing = cfg.output_dir.has_value() && !cfg.emit.empty();
    if (writing) {
        std::error_code ec;
        std::filesystem::create_directories(*cfg.output_dir, ec);
        if (ec) throw std::runtime_error("cannot create '" + cfg.output_dir->string() + "': " + ec.message());
    }
    const std::size_t m = cfg.run.problem.m;
    const ReferencePoint ref = ReferencePoint::uniform(m, cfg.ref);
    std::string solutions = solutions_header(cfg.run.problem.n, m);
    std::string targets = targets_header(m);

    SummaryRecord summary;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        TrialRecord rec;
        rec.trial = t;
        rec.seed = trial_seed(cfg.run.master_seed, t);
        const auto t_start = std::chrono::steady_clock::now();
        try {
            RunConfig rc = cfg.run;
            rc.master_seed = rec.seed;
            const RunResult result = run(rc);
            std::vector<ObjectiveVector> f;
            f.reserve(result.entries.size());
            for (const auto& e : result.entries) {
                f.push_back(e.f);
                if (e.status == EntryStatus::kOk) {
                    ++rec.ok;
                } else {
                    ++rec.degenerate_center;
                }
            }
            const HypervolumeResult hv = hypervolume_detail(f, ref);
            rec.hv = hv.value;
            rec.hv_ratio = hv.value / ref.box_volume();
            rec.hv_skipped = hv.skipped;
            rec.entries = result.entries.size();
            append_solution_rows(solutions, t, result);
            append_target_rows(targets, t, result);
            if (observer) observer(t, result);
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
        }
        rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        summary.trials.push_back(std::move(rec));
    }
    aggregate(summary);
    summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (writing) {
        const auto& dir = *cfg.output_dir;
        if (cfg.emit.contains(Artifact::kSolutionsCsv)) write_file(dir / "solutions.csv", solutions);
        if (cfg.emit.contains(Artifact::kTargetsCsv)) write_file(dir / "targets.csv", targets);
        if (cfg.emit.contains(Artifact::kSummaryJson)) {
            write_file(dir / "summary.json", summary_json(cfg, summary).dump(2) + '\n');
        }
    }
    return summary;
}

std::map<std::size_t, std::vector<ObjectiveVector>> read_solution_objectives(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("'" + path.string() + "' is empty");
    const auto header = split(line, ',');
    std::vector<std::size_t> f_cols;
    std::size_t trial_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "trial") trial_col = i;
        if (header[i].rfind("f_", 0) == 0) f_cols.push_back(i);
    }
    if (trial_col == header.size() || f_cols.empty()) {
        throw std::runtime_error("'" + path.string() + "' lacks trial or f_* columns");
    }
    std::map<std::size_t, std::vector<ObjectiveVector>> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": wrong column count");
        }
        ObjectiveVector f;
        f.reserve(f_cols.size());
        try {
            for (std::size_t c : f_cols) f.push_back(std::stod(cells[c]));
            out[static_cast<std::size_t>(std::stoull(cells[trial_col]))].push_back(std::move(f));
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed number");
        }
    }
    return out;
}

}  // namespace tptd
