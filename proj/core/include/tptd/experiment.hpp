#ifndef TPTD_EXPERIMENT_HPP
#define TPTD_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tptd/driver.hpp"
#include "tptd/metrics.hpp"

namespace tptd {

enum class Artifact { kSolutionsCsv, kTargetsCsv, kSummaryJson };

struct ExperimentConfig {
    RunConfig run;
    std::size_t trials = 1;
    /// No files are written when empty.
    std::optional<std::filesystem::path> output_dir;
    std::set<Artifact> emit{Artifact::kSolutionsCsv, Artifact::kTargetsCsv, Artifact::kSummaryJson};
    /// Uniform hypervolume reference coordinate.
    double ref = 1.1;

    void validate() const;
};

/// Thrown for unknown keys and malformed values. The message names the key.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Collects settings from a JSON file and command-line flags (later calls win)
/// and resolves them against defaults. Keys use the flag spelling without the
/// leading dashes: problem, p, m, n, n-div, eps-t, eta, pop, gens, sigma0,
/// optimizer, trials, seed, threads, out, emit, ref, warm-start, rho.
/// pop and gens default by problem: 10/500 for med, 40/1500 for the rp family.
class ConfigBuilder {
public:
    /// Recognized keys, in documentation order.
    [[nodiscard]] static const std::vector<std::string>& keys();

    /// Throws UsageError for an unknown key.
    void set(std::string_view key, std::string value);
    /// Loads a JSON object with the same keys. Throws UsageError on unknown
    /// keys or unreadable files.
    void load_json_file(const std::filesystem::path& path);
    void load_json_text(std::string_view text, std::string_view origin = "config");

    [[nodiscard]] ExperimentConfig build() const;

private:
    std::map<std::string, std::string, std::less<>> values_;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    double hv = 0.0;
    double hv_ratio = 0.0;
    std::size_t hv_skipped = 0;
    double wall_seconds = 0.0;
    std::size_t entries = 0;
    std::size_t ok = 0;
    std::size_t degenerate_center = 0;
};

struct SummaryRecord {
    std::vector<TrialRecord> trials;
    /// Over successful trials; std is the sample deviation (0 for one trial).
    double hv_ratio_mean = 0.0;
    double hv_ratio_std = 0.0;
    double hv_ratio_median = 0.0;
    std::size_t failed = 0;
    double wall_seconds = 0.0;
};

/// Mean, sample standard deviation and median of successful trials.
void aggregate(SummaryRecord& summary);

/// Called after each successful trial with its full result.
using TrialObserver = std::function<void(std::size_t trial, const RunResult&)>;

/// Runs cfg.trials independent runs with per-trial seeds derived from
/// cfg.run.master_seed, scores each by hv_ratio of the raw objectives and
/// writes the requested artifacts. A failing trial is recorded and skipped.
/// File errors raise std::runtime_error naming the path.
[[nodiscard]] SummaryRecord run_experiment(const ExperimentConfig& cfg, const TrialObserver& observer = {});

/// Seed used for trial `t`.
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t master, std::size_t t);

/// %.17g formatting.
[[nodiscard]] std::string format_real(double v);

/// Writes one trial's rows (without header) in solutions.csv layout.
void append_solution_rows(std::string& out, std::size_t trial, const RunResult& result);
[[nodiscard]] std::string solutions_header(std::size_t n, std::size_t m);

/// Raw objective vectors per trial, read back from a solutions.csv file.
[[nodiscard]] std::map<std::size_t, std::vector<ObjectiveVector>> read_solution_objectives(
    const std::filesystem::path& path);

}  // namespace tptd

#endif  // TPTD_EXPERIMENT_HPP
