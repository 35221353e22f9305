// Experiment driver: parameter sweeps over SIR or SNR with analytic and
// Monte Carlo outputs, CSV emission, dB-gap measurement between curves,
// and the full validation suite.

#ifndef MISIM_EXPERIMENTS_HPP
#define MISIM_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "misim/core.hpp"
#include "misim/rng.hpp"

namespace misim {

enum class SweepAxis { sir, snr };

enum class SchemeKind { conventional, scheme_a, scheme_b };

std::string scheme_label(SchemeKind kind);

/// One sweep definition: which figure (or custom), the swept axis and its
/// values, the fixed dB value of the other axis, the conventional-delta
/// curves and/or scheme curves to produce, and the Monte Carlo budget
/// (blocks = 0 produces analytic-only rows).
struct ExperimentSpec {
    std::string experiment = "custom";
    SweepAxis axis = SweepAxis::sir;
    std::vector<double> sweep_db;
    double fixed_db = 10.0;
    std::vector<double> deltas;
    std::vector<SchemeKind> schemes;
    std::size_t n_block = 1000;
    std::uint64_t blocks = 10000;
    int k_max = 32;
    RngSeed seed{1};
    unsigned workers = 1;
    std::string out_path;
};

/// One output row. Absent values stay absent all the way to the CSV
/// (written as empty fields, never 0).
struct SweepResult {
    std::string experiment;
    double sir_db = 0.0;
    double snr_db = 0.0;
    std::optional<double> delta;
    std::string scheme;
    std::size_t n_block = 0;
    std::uint64_t trials = 0;
    std::optional<double> analytic_ber;
    std::optional<double> sim_ber;
    std::optional<double> sim_stderr;
    std::optional<double> esinr_linear;
    std::optional<double> avg_esinr_linear;
};

/// Validates the spec (std::invalid_argument names the offending field)
/// and produces rows in sweep order: per sweep value, one row per
/// conventional delta followed by one row per scheme. Each row's Monte
/// Carlo run uses a sub-seed derived from (seed, row index), so output is
/// fully deterministic for a given spec.
std::vector<SweepResult> run_experiment(const ExperimentSpec& spec);

extern const char* const kCsvHeader;

std::string to_csv(const std::vector<SweepResult>& rows);

/// Atomic CSV write: the file appears complete or not at all.
void write_csv(const std::string& path, const std::vector<SweepResult>& rows);

/// Built-in sweep definitions for the figure reproductions (identical to
/// the committed spec files under experiments/).
ExperimentSpec figure_spec(const std::string& name);

/// Flat key-per-line spec file (key = value, '#' comments).
ExperimentSpec load_spec_file(const std::string& path);

/// A BER-vs-dB curve: (x_db, ber) points with strictly increasing x.
using Curve = std::vector<std::pair<double, double>>;

/// Horizontal distance in dB between two curves at a BER level, by
/// log-linear interpolation of each: positive when curveB needs more dB
/// than curveA to reach target_ber. Both curves must be strictly monotone
/// in ber and contain the target inside their range; out-of-range targets
/// throw std::domain_error rather than extrapolate.
double measure_db_gap(const Curve& curve_a, const Curve& curve_b, double target_ber);

// Validation suite --------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/// Monte Carlo grid point against the closed-form block BER.
struct McGridPoint {
    double sir_db = 0.0;
    double delta = 0.0;
    double analytic = 0.0;
    double sim_ber = 0.0;
    double std_err = 0.0;
};

/// The delta {0, 0.1, ..., 0.5} x SIR {2, 4, ..., 12} dB grid at
/// SNR = 10 dB, N = 1000, with `symbols_per_point` simulated symbols.
std::vector<McGridPoint> run_mc_grid(RngSeed seed, std::uint64_t symbols_per_point,
                                     unsigned workers = 1);

/// True when at least `min_fraction` of points lie within 3 standard
/// errors of the closed form.
bool mc_grid_ok(const std::vector<McGridPoint>& points, double min_fraction = 0.95);

/// Full invariant suite: analytics properties, Monte-Carlo-vs-closed-form
/// grid, waveform cross-validation, noiseless exactness, and CSV
/// determinism. Any failed check carries its measured deviation in
/// `detail`.
ValidationReport validate_all(RngSeed seed);

}  // namespace misim

#endif  // MISIM_EXPERIMENTS_HPP
