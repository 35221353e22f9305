#include "misim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "misim/analytics.hpp"
#include "misim/simulation.hpp"
#include "misim/waveform.hpp"

namespace misim {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
}

ChannelParams params_at(const ExperimentSpec& spec, double sweep_value, double& sir_db,
                        double& snr_db) {
    if (spec.axis == SweepAxis::sir) {
        sir_db = sweep_value;
        snr_db = spec.fixed_db;
    } else {
        sir_db = spec.fixed_db;
        snr_db = sweep_value;
    }
    return ChannelParams(sir_db_to_h1(sir_db), snr_db_to_sigma(snr_db));
}

void validate_spec(const ExperimentSpec& spec) {
    if (spec.sweep_db.empty())
        throw std::invalid_argument("ExperimentSpec.sweep_db: sweep values are required");
    for (std::size_t i = 0; i < spec.sweep_db.size(); ++i) {
        if (!std::isfinite(spec.sweep_db[i]))
            throw std::invalid_argument("ExperimentSpec.sweep_db: values must be finite");
        if (i > 0 && !(spec.sweep_db[i] > spec.sweep_db[i - 1]))
            throw std::invalid_argument(
                "ExperimentSpec.sweep_db: values must be strictly increasing");
    }
    if (!std::isfinite(spec.fixed_db))
        throw std::invalid_argument("ExperimentSpec.fixed_db: value must be finite");
    if (spec.axis == SweepAxis::sir) {
        if (!(spec.sweep_db.front() > 0.0))
            throw std::invalid_argument(
                "ExperimentSpec.sweep_db: SIR sweep needs values > 0 dB (h1 < 1)");
    } else if (!(spec.fixed_db > 0.0)) {
        throw std::invalid_argument("ExperimentSpec.fixed_db: SIR must be > 0 dB (h1 < 1)");
    }
    if (spec.n_block == 0)
        throw std::invalid_argument("ExperimentSpec.n_block: block length must be >= 1");
    if (spec.k_max < 0) throw std::invalid_argument("ExperimentSpec.k_max: K must be >= 0");
    if (spec.deltas.empty() && spec.schemes.empty())
        throw std::invalid_argument("ExperimentSpec: at least one delta or scheme is required");
    for (const double d : spec.deltas)
        if (!(d >= 0.0 && d < 1.0))
            throw std::invalid_argument("ExperimentSpec.deltas: values must lie in [0, 1)");
    for (const auto s : spec.schemes)
        if (s == SchemeKind::conventional)
            throw std::invalid_argument(
                "ExperimentSpec.schemes: conventional curves are selected via deltas");
}

void append_field(std::string& line, const std::string& value, bool last = false) {
    line += value;
    if (!last) line += ',';
}

}  // namespace

std::string scheme_label(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::conventional: return "conv";
        case SchemeKind::scheme_a: return "a";
        case SchemeKind::scheme_b: return "b";
    }
    return "?";
}

std::vector<SweepResult> run_experiment(const ExperimentSpec& spec) {
    validate_spec(spec);
    std::vector<SweepResult> rows;
    std::uint64_t row_index = 0;

    for (const double sweep_value : spec.sweep_db) {
        double sir_db = 0.0;
        double snr_db = 0.0;
        const ChannelParams params = params_at(spec, sweep_value, sir_db, snr_db);

        auto base_row = [&](SweepResult& r) {
            r.experiment = spec.experiment;
            r.sir_db = sir_db;
            r.snr_db = snr_db;
            r.n_block = spec.n_block;
        };

        for (const double d : spec.deltas) {
            const Misalignment delta(d);
            SweepResult r;
            base_row(r);
            r.delta = d;
            r.scheme = scheme_label(SchemeKind::conventional);
            r.analytic_ber = ber_block(params, delta, spec.n_block);
            r.esinr_linear = esinr(params, delta);
            if (spec.blocks > 0) {
                const auto est = estimate_ber(params, Conventional{delta}, spec.blocks,
                                              spec.n_block, derive_seed(spec.seed, row_index),
                                              spec.workers);
                r.trials = est.trials;
                r.sim_ber = est.ber;
                r.sim_stderr = est.std_err;
            }
            rows.push_back(std::move(r));
            ++row_index;
        }

        for (const auto kind : spec.schemes) {
            SweepResult r;
            base_row(r);
            r.scheme = scheme_label(kind);
            r.analytic_ber = avg_ber(params);
            r.avg_esinr_linear = avg_esinr_closed(params);
            if (spec.blocks > 0) {
                const TimingScheme scheme =
                    kind == SchemeKind::scheme_a
                        ? TimingScheme(SchemeA{spec.n_block, Misalignment(0.0)})
                        : TimingScheme(SchemeB{spec.n_block, spec.k_max, 0, 0,
                                               Misalignment(0.0)});
                const auto est = estimate_ber(params, scheme, spec.blocks, spec.n_block,
                                              derive_seed(spec.seed, row_index), spec.workers);
                r.trials = est.trials;
                r.sim_ber = est.ber;
                r.sim_stderr = est.std_err;
            }
            rows.push_back(std::move(r));
            ++row_index;
        }
    }
    return rows;
}

const char* const kCsvHeader =
    "experiment,sir_db,snr_db,delta,scheme,n_block,trials,analytic_ber,sim_ber,sim_stderr,"
    "esinr_linear,avg_esinr_linear";

std::string to_csv(const std::vector<SweepResult>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        std::string line;
        append_field(line, r.experiment);
        append_field(line, fmt(r.sir_db));
        append_field(line, fmt(r.snr_db));
        append_field(line, fmt_opt(r.delta));
        append_field(line, r.scheme);
        append_field(line, std::to_string(r.n_block));
        append_field(line, std::to_string(r.trials));
        append_field(line, fmt_opt(r.analytic_ber));
        append_field(line, fmt_opt(r.sim_ber));
        append_field(line, fmt_opt(r.sim_stderr));
        append_field(line, fmt_opt(r.esinr_linear));
        append_field(line, fmt_opt(r.avg_esinr_linear), true);
        out += line;
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<SweepResult>& rows) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("write_csv: cannot open " + tmp);
        out << to_csv(rows);
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("write_csv: write failed for " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("write_csv: cannot move output into place: " + ec.message());
    }
}

ExperimentSpec figure_spec(const std::string& name) {
    ExperimentSpec spec;
    spec.experiment = name;
    if (name == "fig2") {
        // BER vs SIR at SNR = 10 dB, one curve per misalignment.
        spec.axis = SweepAxis::sir;
        for (int s = 1; s <= 12; ++s) spec.sweep_db.push_back(s);
        spec.fixed_db = 10.0;
        spec.deltas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    } else if (name == "fig3") {
        // BER vs SNR at SIR = 4 dB, one curve per misalignment.
        spec.axis = SweepAxis::snr;
        for (int s = 9; s <= 15; ++s) spec.sweep_db.push_back(s);
        spec.fixed_db = 4.0;
        spec.deltas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    } else if (name == "fig4") {
        // BER vs SNR at SIR = 4 dB: aligned worst case against both
        // duration-extension schemes.
        spec.axis = SweepAxis::snr;
        for (int s = 7; s <= 12; ++s) spec.sweep_db.push_back(s);
        spec.fixed_db = 4.0;
        spec.deltas = {0.0};
        spec.schemes = {SchemeKind::scheme_a, SchemeKind::scheme_b};
    } else if (name == "fig5") {
        // eSINR vs SIR at SNR = 10 dB, analytic only: worst case delta = 0
        // next to the packet-averaged eSINR of the schemes.
        spec.axis = SweepAxis::sir;
        for (int s = 5; s <= 15; ++s) spec.sweep_db.push_back(s);
        spec.fixed_db = 10.0;
        spec.deltas = {0.0};
        spec.schemes = {SchemeKind::scheme_a};
        spec.blocks = 0;
    } else {
        throw std::invalid_argument("figure_spec: unknown figure '" + name + "'");
    }
    spec.out_path = name + ".csv";
    return spec;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("spec file: bad number '" + s + "' for key " + key);
    }
}

// "a,b,c" or "start:step:stop" (inclusive stop, within half a step).
std::vector<double> parse_values(const std::string& s, const std::string& key) {
    std::vector<double> values;
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("spec file: range for " + key + " must be start:step:stop");
        const double start = parse_double(trim(parts[0]), key);
        const double step = parse_double(trim(parts[1]), key);
        const double stop = parse_double(trim(parts[2]), key);
        if (!(step > 0.0))
            throw std::invalid_argument("spec file: range step for " + key + " must be > 0");
        for (double v = start; v <= stop + 0.5 * step; v += step) values.push_back(v);
        return values;
    }
    for (const auto& part : split(s, ',')) {
        const auto t = trim(part);
        if (!t.empty()) values.push_back(parse_double(t, key));
    }
    return values;
}

}  // namespace

ExperimentSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_spec_file: cannot open " + path);
    ExperimentSpec spec;
    spec.deltas.clear();
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("load_spec_file: expected key = value, got '" + line +
                                        "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "experiment") {
            spec.experiment = value;
        } else if (key == "axis") {
            if (value == "sir") spec.axis = SweepAxis::sir;
            else if (value == "snr") spec.axis = SweepAxis::snr;
            else throw std::invalid_argument("load_spec_file: axis must be sir or snr");
        } else if (key == "sweep") {
            spec.sweep_db = parse_values(value, key);
        } else if (key == "fixed_db" || key == "snr_db" || key == "sir_db") {
            spec.fixed_db = parse_double(value, key);
        } else if (key == "delta") {
            spec.deltas = parse_values(value, key);
        } else if (key == "scheme") {
            spec.schemes.clear();
            for (const auto& part : split(value, ',')) {
                const auto t = trim(part);
                if (t == "a") spec.schemes.push_back(SchemeKind::scheme_a);
                else if (t == "b") spec.schemes.push_back(SchemeKind::scheme_b);
                else if (t == "conv") continue;  // conventional rides on the delta list
                else if (!t.empty())
                    throw std::invalid_argument("load_spec_file: unknown scheme '" + t + "'");
            }
        } else if (key == "n") {
            spec.n_block = static_cast<std::size_t>(parse_double(value, key));
        } else if (key == "blocks") {
            spec.blocks = static_cast<std::uint64_t>(parse_double(value, key));
        } else if (key == "k") {
            spec.k_max = static_cast<int>(parse_double(value, key));
        } else if (key == "seed") {
            spec.seed = RngSeed{static_cast<std::uint64_t>(parse_double(value, key))};
        } else if (key == "out") {
            spec.out_path = value;
        } else {
            throw std::invalid_argument("load_spec_file: unknown key '" + key + "'");
        }
    }
    return spec;
}

namespace {

double x_at_level(const Curve& curve, double target, const char* which) {
    if (curve.size() < 2)
        throw std::invalid_argument(std::string("measure_db_gap: ") + which +
                                    " needs at least two points");
    bool increasing = curve[1].second > curve[0].second;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (!(curve[i].first > curve[i - 1].first))
            throw std::invalid_argument(std::string("measure_db_gap: ") + which +
                                        " x values must be strictly increasing");
        const bool step_up = curve[i].second > curve[i - 1].second;
        if (!(curve[i].second > 0.0) || !(curve[i - 1].second > 0.0))
            throw std::invalid_argument(std::string("measure_db_gap: ") + which +
                                        " ber values must be > 0");
        if (step_up != increasing || curve[i].second == curve[i - 1].second)
            throw std::invalid_argument(std::string("measure_db_gap: ") + which +
                                        " must be strictly monotone in ber");
    }
    const double lo = std::min(curve.front().second, curve.back().second);
    const double hi = std::max(curve.front().second, curve.back().second);
    if (!(target >= lo && target <= hi))
        throw std::domain_error(std::string("measure_db_gap: target_ber outside the range of ") +
                                which);
    const double lt = std::log(target);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double la = std::log(curve[i - 1].second);
        const double lb = std::log(curve[i].second);
        if ((lt - la) * (lt - lb) <= 0.0) {
            if (la == lb) return curve[i - 1].first;
            return curve[i - 1].first +
                   (curve[i].first - curve[i - 1].first) * (lt - la) / (lb - la);
        }
    }
    throw std::domain_error("measure_db_gap: target_ber not bracketed");
}

}  // namespace

double measure_db_gap(const Curve& curve_a, const Curve& curve_b, double target_ber) {
    if (!(target_ber > 0.0))
        throw std::invalid_argument("measure_db_gap: target_ber must be > 0");
    return x_at_level(curve_b, target_ber, "curveB") - x_at_level(curve_a, target_ber, "curveA");
}

// Validation suite ---------------------------------------------------------

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::vector<McGridPoint> run_mc_grid(RngSeed seed, std::uint64_t symbols_per_point,
                                     unsigned workers) {
    const double sigma = snr_db_to_sigma(10.0);
    const std::size_t n = 1000;
    const std::uint64_t blocks = (symbols_per_point + n - 1) / n;
    std::vector<McGridPoint> points;
    std::uint64_t index = 0;
    for (int sir = 2; sir <= 12; sir += 2) {
        const ChannelParams params(sir_db_to_h1(sir), sigma);
        for (int d10 = 0; d10 <= 5; ++d10) {
            const Misalignment delta(d10 / 10.0);
            const auto est = estimate_ber(params, Conventional{delta}, blocks, n,
                                          derive_seed(seed, index), workers);
            points.push_back(McGridPoint{static_cast<double>(sir), delta.value(),
                                         ber_block(params, delta, n), est.ber, est.std_err});
            ++index;
        }
    }
    return points;
}

bool mc_grid_ok(const std::vector<McGridPoint>& points, double min_fraction) {
    if (points.empty()) return false;
    std::size_t ok = 0;
    for (const auto& p : points)
        if (std::abs(p.sim_ber - p.analytic) <= 3.0 * p.std_err) ++ok;
    return static_cast<double>(ok) >= min_fraction * static_cast<double>(points.size());
}

namespace {

CheckResult check_q_function() {
    double worst = 0.0;
    for (int i = -800; i <= 800; ++i) {
        const double x = i / 100.0;
        worst = std::max(worst, std::abs(q_function(x) + q_function(-x) - 1.0));
    }
    bool monotone = true;
    double prev = 2.0;
    for (int i = -32; i <= 32; ++i) {
        const double q = q_function(i / 4.0);
        if (q >= prev) monotone = false;
        prev = q;
    }
    const bool pass = worst <= 1e-12 && monotone;
    return {"q_function reflection + strict decrease",
            pass, "max |Q(x)+Q(-x)-1| = " + fmt(worst)};
}

CheckResult check_interference_power() {
    Rng rng(RngSeed{0x1157});
    double worst = 0.0;
    bool bound_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const double h1 = 0.05 + 0.9 * rng.uniform01();
        const ChannelParams params(h1, 0.1);
        if (effective_interference_power(params, Misalignment(0.0)) != h1 * h1) bound_ok = false;
        for (int i = 1; i < 200; ++i) {
            const double d = i / 200.0;
            const double p = effective_interference_power(params, Misalignment(d));
            const double reflected = effective_interference_power(params, Misalignment(1.0 - d));
            worst = std::max(worst, std::abs(p - reflected));
            if (!(p < h1 * h1)) bound_ok = false;
        }
    }
    const bool pass = bound_ok && worst <= 1e-12;
    return {"effective interference power bound + symmetry", pass,
            "max |P(d)-P(1-d)| = " + fmt(worst)};
}

CheckResult check_ber_steady_shape() {
    const ChannelParams params(sir_db_to_h1(4.0), snr_db_to_sigma(10.0));
    double worst = 0.0;
    bool monotone = true;
    double prev = 1.0;
    for (int i = 0; i <= 500; ++i) {
        const double d = i / 1000.0;  // [0, 0.5]
        const double b = ber_steady_state(params, Misalignment(d));
        if (b > prev + 1e-15) monotone = false;
        prev = b;
        if (i > 0) {
            const double mirrored = ber_steady_state(params, Misalignment(1.0 - d));
            worst = std::max(worst, std::abs(b - mirrored));
        }
    }
    const bool pass = monotone && worst <= 1e-14;
    return {"steady-state BER symmetry + monotone on [0, 0.5]", pass,
            "max asym = " + fmt(worst)};
}

CheckResult check_support_moment() {
    Rng rng(RngSeed{0x5EED});
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double h1 = rng.uniform01() * 0.999;
        const double d = rng.uniform01();
        const ChannelParams params(h1, 0.0);
        const auto support = InterferenceSupport::from(params, Misalignment(d));
        const double direct = effective_interference_power(params, Misalignment(d));
        worst = std::max(worst, std::abs(support.second_moment() - direct));
    }
    const bool pass = worst <= 1e-15;
    return {"interference-support second moment = effective power", pass,
            "max |diff| = " + fmt(worst)};
}

CheckResult check_avg_esinr() {
    Rng rng(RngSeed{0xE51});
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double h1 = 0.02 + 0.96 * rng.uniform01();
        const double sigma = 0.05 + 1.2 * rng.uniform01();
        const ChannelParams params(h1, sigma);
        const double closed = avg_esinr_closed(params);
        const double quad = integrate_unit_interval(
            [&](double d) {
                const double f = 2.0 * d * d - 2.0 * d + 1.0;
                return 1.0 / (params.interference_power() * f + params.noise_power());
            },
            1e-12);
        worst = std::max(worst, std::abs(closed - quad));
    }
    const bool pass = worst <= 1e-10;
    return {"averaged eSINR closed form vs quadrature", pass, "max |diff| = " + fmt(worst)};
}

CheckResult check_noiseless() {
    std::uint64_t errors = 0;
    for (std::uint64_t s = 1; s <= 3; ++s) {
        const ChannelParams params(0.8, 0.0);
        errors += estimate_ber(params, Conventional{Misalignment(0.37)}, 50, 200, RngSeed{s})
                      .errors;
        errors += estimate_ber(params, SchemeA{200, Misalignment(0.0)}, 50, 200, RngSeed{s})
                      .errors;
        errors +=
            estimate_ber(params, SchemeB{200, 16, 3, 11, Misalignment(0.0)}, 50, 200, RngSeed{s})
                .errors;
    }
    return {"noiseless runs decode exactly", errors == 0,
            "errors = " + std::to_string(errors)};
}

CheckResult check_mc_grid(RngSeed seed, unsigned workers) {
    const auto points = run_mc_grid(seed, 1000000, workers);
    std::size_t ok = 0;
    for (const auto& p : points)
        if (std::abs(p.sim_ber - p.analytic) <= 3.0 * p.std_err) ++ok;
    const bool pass = mc_grid_ok(points);
    return {"Monte Carlo grid vs closed-form BER", pass,
            std::to_string(ok) + "/" + std::to_string(points.size()) +
                " points within 3 std errors"};
}

CheckResult check_cross_validation(RngSeed seed) {
    const ChannelParams params(sir_db_to_h1(6.0), snr_db_to_sigma(10.0));
    double worst = 0.0;
    for (int d10 = 0; d10 < 10; ++d10)
        worst = std::max(worst, cross_validate(params, Conventional{Misalignment(d10 / 10.0)}, 4,
                                               derive_seed(seed, d10)));
    worst = std::max(worst, cross_validate(params, SchemeA{48, Misalignment(0.0)}, 30,
                                           derive_seed(seed, 100)));
    worst = std::max(worst, cross_validate(params, SchemeB{48, 12, 0, 0, Misalignment(0.0)}, 30,
                                           derive_seed(seed, 101)));
    const bool pass = worst <= 1e-9;
    return {"waveform oracle vs sampled model", pass, "max |dev| = " + fmt(worst)};
}

CheckResult check_csv_determinism(RngSeed seed) {
    ExperimentSpec spec;
    spec.experiment = "custom";
    spec.axis = SweepAxis::sir;
    spec.sweep_db = {4.0, 8.0};
    spec.fixed_db = 10.0;
    spec.deltas = {0.0, 0.5};
    spec.schemes = {SchemeKind::scheme_a};
    spec.n_block = 64;
    spec.blocks = 100;
    spec.seed = seed;
    const std::string first = to_csv(run_experiment(spec));
    const std::string second = to_csv(run_experiment(spec));
    const bool pass = !first.empty() && first == second;
    return {"CSV output byte-identical across repeated runs", pass,
            pass ? "identical" : "outputs differ"};
}

}  // namespace

ValidationReport validate_all(RngSeed seed) {
    ValidationReport report;
    report.checks.push_back(check_q_function());
    report.checks.push_back(check_interference_power());
    report.checks.push_back(check_ber_steady_shape());
    report.checks.push_back(check_support_moment());
    report.checks.push_back(check_avg_esinr());
    report.checks.push_back(check_noiseless());
    report.checks.push_back(check_mc_grid(seed, 1));
    report.checks.push_back(check_cross_validation(seed));
    report.checks.push_back(check_csv_determinism(seed));
    return report;
}

}  // namespace misim
