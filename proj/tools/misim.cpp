// misim command-line driver: closed-form tables, Monte Carlo runs, figure
// reproduction sweeps, dB-gap measurement between CSV curves, and the
// validation suite. Exit codes: 0 success, 1 validation/runtime failure,
// 2 invalid arguments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "misim/analytics.hpp"
#include "misim/experiments.hpp"
#include "misim/simulation.hpp"

namespace {

void emit(const misim::ExperimentSpec& spec, const std::vector<misim::SweepResult>& rows) {
    if (spec.out_path.empty()) {
        std::cout << misim::to_csv(rows);
    } else {
        misim::write_csv(spec.out_path, rows);
        std::cerr << "wrote " << rows.size() << " rows to " << spec.out_path << "\n";
    }
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (const char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (first) {
            table.header = fields;
            first = false;
        } else {
            table.rows.push_back(fields);
        }
    }
    if (table.header.empty()) throw std::runtime_error("empty CSV: " + path);
    return table;
}

std::size_t column_of(const CsvTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == name) return i;
    throw std::runtime_error("CSV has no column '" + name + "'");
}

misim::Curve extract_curve(const std::string& path, const std::string& x_col,
                           const std::string& y_col, const std::string& scheme_filter,
                           const std::string& delta_filter) {
    const CsvTable table = read_csv(path);
    const std::size_t xi = column_of(table, x_col.empty() ? "sir_db" : x_col);
    const std::size_t yi = column_of(table, y_col);
    const std::size_t si = column_of(table, "scheme");
    const std::size_t di = column_of(table, "delta");
    misim::Curve curve;
    for (const auto& row : table.rows) {
        if (!scheme_filter.empty() && row[si] != scheme_filter) continue;
        if (!delta_filter.empty()) {
            if (row[di].empty()) continue;
            if (std::stod(row[di]) != std::stod(delta_filter)) continue;
        }
        if (row[yi].empty()) continue;
        curve.emplace_back(std::stod(row[xi]), std::stod(row[yi]));
    }
    if (curve.empty()) throw std::runtime_error("no matching rows in " + path);
    std::sort(curve.begin(), curve.end());
    return curve;
}

// The swept column is the one that actually varies.
std::string detect_axis(const std::string& path) {
    const CsvTable table = read_csv(path);
    const std::size_t sir = column_of(table, "sir_db");
    if (table.rows.size() < 2) return "sir_db";
    for (const auto& row : table.rows)
        if (row[sir] != table.rows.front()[sir]) return "sir_db";
    return "snr_db";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"misim: co-channel interference under symbol misalignment"};
    app.require_subcommand(1);

    // analytic ------------------------------------------------------------
    auto* analytic = app.add_subcommand("analytic", "closed-form BER / eSINR table");
    double an_sir = 10.0;
    double an_snr = 10.0;
    std::vector<double> an_deltas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    std::size_t an_n = 1000;
    std::string an_out;
    analytic->add_option("--sir-db", an_sir, "SIR in dB")->required();
    analytic->add_option("--snr-db", an_snr, "SNR in dB")->required();
    analytic->add_option("--delta", an_deltas, "misalignment values in [0,1)");
    analytic->add_option("--n", an_n, "block length N");
    analytic->add_option("--out", an_out, "output CSV path (default: stdout)");

    // simulate ------------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo point or sweep");
    std::string sim_spec_path;
    double sim_sir = 4.0;
    double sim_snr = 10.0;
    double sim_delta = 0.0;
    std::string sim_scheme = "conv";
    std::size_t sim_n = 1000;
    int sim_k = 32;
    std::uint64_t sim_blocks = 10000;
    std::uint64_t sim_seed = 1;
    unsigned sim_workers = 1;
    std::string sim_out;
    simulate->add_option("--spec", sim_spec_path, "experiment spec file");
    simulate->add_option("--sir-db", sim_sir, "SIR in dB");
    simulate->add_option("--snr-db", sim_snr, "SNR in dB");
    simulate->add_option("--delta", sim_delta, "misalignment for the conventional scheme");
    simulate->add_option("--scheme", sim_scheme, "conv | a | b")
        ->check(CLI::IsMember({"conv", "a", "b"}));
    simulate->add_option("--n", sim_n, "block length N");
    simulate->add_option("--k", sim_k, "Scheme B max draw K");
    simulate->add_option("--blocks", sim_blocks, "blocks per sweep point");
    simulate->add_option("--seed", sim_seed, "master seed");
    simulate->add_option("--workers", sim_workers, "worker threads");
    simulate->add_option("--out", sim_out, "output CSV path (default: stdout)");

    // figure --------------------------------------------------------------
    auto* figure = app.add_subcommand("figure", "reproduce a figure sweep");
    std::string fig_name;
    std::string fig_spec_path;
    std::uint64_t fig_blocks = 0;
    std::uint64_t fig_seed = 0;
    unsigned fig_workers = 0;
    std::string fig_out;
    figure->add_option("name", fig_name, "fig2 | fig3 | fig4 | fig5")->required();
    figure->add_option("--spec", fig_spec_path, "spec file overriding the built-in grid");
    figure->add_option("--blocks", fig_blocks, "override blocks per point");
    figure->add_option("--seed", fig_seed, "override master seed");
    figure->add_option("--workers", fig_workers, "worker threads");
    figure->add_option("--out", fig_out, "override output CSV path");

    // gap -----------------------------------------------------------------
    auto* gap = app.add_subcommand("gap", "dB gap between two CSV curves at a BER level");
    std::string gap_a, gap_b, gap_x, gap_y = "analytic_ber";
    std::string gap_a_scheme, gap_a_delta, gap_b_scheme, gap_b_delta;
    double gap_target = 0.0;
    gap->add_option("--a", gap_a, "CSV with curve A")->required();
    gap->add_option("--b", gap_b, "CSV with curve B")->required();
    gap->add_option("--target-ber", gap_target, "BER level to measure at")->required();
    gap->add_option("--x", gap_x, "x column: sir_db | snr_db (default: auto-detect)");
    gap->add_option("--y", gap_y, "y column: analytic_ber | sim_ber")
        ->check(CLI::IsMember({"analytic_ber", "sim_ber"}));
    gap->add_option("--a-scheme", gap_a_scheme, "keep only curve-A rows with this scheme");
    gap->add_option("--a-delta", gap_a_delta, "keep only curve-A rows with this delta");
    gap->add_option("--b-scheme", gap_b_scheme, "keep only curve-B rows with this scheme");
    gap->add_option("--b-delta", gap_b_delta, "keep only curve-B rows with this delta");

    // validate ------------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "run the full invariant suite");
    std::uint64_t val_seed = 1;
    validate->add_option("--seed", val_seed, "master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analytic) {
            misim::ExperimentSpec spec;
            spec.experiment = "analytic";
            spec.axis = misim::SweepAxis::sir;
            spec.sweep_db = {an_sir};
            spec.fixed_db = an_snr;
            spec.deltas = an_deltas;
            spec.schemes = {misim::SchemeKind::scheme_a};
            spec.n_block = an_n;
            spec.blocks = 0;
            spec.out_path = an_out;
            emit(spec, misim::run_experiment(spec));
        } else if (*simulate) {
            misim::ExperimentSpec spec;
            if (!sim_spec_path.empty()) {
                spec = misim::load_spec_file(sim_spec_path);
            } else {
                spec.experiment = "simulate";
                spec.axis = misim::SweepAxis::sir;
                spec.sweep_db = {sim_sir};
                spec.fixed_db = sim_snr;
                if (sim_scheme == "conv") {
                    spec.deltas = {sim_delta};
                } else {
                    spec.deltas.clear();
                    spec.schemes = {sim_scheme == "a" ? misim::SchemeKind::scheme_a
                                                      : misim::SchemeKind::scheme_b};
                }
            }
            if (simulate->count("--n")) spec.n_block = sim_n;
            if (simulate->count("--k")) spec.k_max = sim_k;
            if (simulate->count("--blocks")) spec.blocks = sim_blocks;
            if (simulate->count("--seed")) spec.seed = misim::RngSeed{sim_seed};
            if (simulate->count("--workers")) spec.workers = sim_workers;
            if (simulate->count("--out")) spec.out_path = sim_out;
            emit(spec, misim::run_experiment(spec));
        } else if (*figure) {
            misim::ExperimentSpec spec = fig_spec_path.empty()
                                             ? misim::figure_spec(fig_name)
                                             : misim::load_spec_file(fig_spec_path);
            if (figure->count("--blocks")) spec.blocks = fig_blocks;
            if (figure->count("--seed")) spec.seed = misim::RngSeed{fig_seed};
            if (figure->count("--workers")) spec.workers = fig_workers;
            if (figure->count("--out")) spec.out_path = fig_out;
            emit(spec, misim::run_experiment(spec));
        } else if (*gap) {
            const std::string x_col = gap_x.empty() ? detect_axis(gap_a) : gap_x;
            const auto curve_a = extract_curve(gap_a, x_col, gap_y, gap_a_scheme, gap_a_delta);
            const auto curve_b = extract_curve(gap_b, x_col, gap_y, gap_b_scheme, gap_b_delta);
            const double g = misim::measure_db_gap(curve_a, curve_b, gap_target);
            std::printf("%.6f\n", g);
        } else if (*validate) {
            const auto report = misim::validate_all(misim::RngSeed{val_seed});
            for (const auto& check : report.checks)
                std::printf("[%s] %s (%s)\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                            check.detail.c_str());
            if (!report.all_pass()) return 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
