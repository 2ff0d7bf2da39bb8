#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdmol/analytic.hpp"
#include "qdmol/core.hpp"
#include "qdmol/model.hpp"
#include "qdmol/propagate.hpp"
#include "qdmol/validate.hpp"
#include "qdmol/version.hpp"

namespace {

using json = nlohmann::json;

enum ExitCode : int {
    exit_ok = 0,
    exit_validation_failure = 1,
    exit_bad_config = 2,
    exit_integrator_failure = 3,
    exit_degenerate_steady = 4,
};

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct Preset {
    double l, m, n, p;
    bool driven;
    double t_end;
    double dt;
};

std::optional<Preset> lookup_preset(const std::string& name) {
    // l = 0.8, m = 0.4 from the figure captions; n = 0.5 is the documented
    // artifact choice (the source never states n).
    if (name == "fig2-4") return Preset{0.8, 0.4, 0.5, 0.0, false, 30.0, 0.05};
    if (name == "fig5-7") return Preset{0.8, 0.4, 0.5, 0.4, true, 30.0, 0.05};
    if (name == "fig8-9") return Preset{0.8, 0.4, 0.5, 0.8, true, 30.0, 0.05};
    if (name == "fig10-11") return Preset{0.8, 0.4, 0.5, 1.6, true, 30.0, 0.02};
    if (name == "fig12-13") return Preset{0.8, 0.4, 0.5, 8.0, true, 40.0, 0.02};
    return std::nullopt;
}

enum class Source { none = 0, preset = 1, config = 2, flag = 3 };

struct Settings {
    double l = 0.8;
    double m = 0.4;
    double n = 0.5;
    double p = 0.0;
    double ratio = 0.0;
    Source p_source = Source::none;
    Source ratio_source = Source::none;
    bool driven = false;
    bool has_driven = false;
    double t_end = 30.0;
    double dt = 0.05;
    std::string initial = "ground";
    std::vector<double> initial_diagonal;
    std::string method = "both";
    std::vector<double> ratios;
    std::string preset;
    std::string config_path;
    std::string output = "-";
    std::string format = "csv";
};

struct FlagPresence {
    CLI::Option* l = nullptr;
    CLI::Option* m = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* p = nullptr;
    CLI::Option* ratio = nullptr;
    CLI::Option* driven = nullptr;
    CLI::Option* t_end = nullptr;
    CLI::Option* dt = nullptr;
    CLI::Option* initial = nullptr;
    CLI::Option* method = nullptr;
    CLI::Option* ratios = nullptr;
    CLI::Option* preset = nullptr;
    CLI::Option* output = nullptr;
    CLI::Option* format = nullptr;
};

/// Registers the common flag set on a subcommand, writing into `flag_values`.
/// Sweep owns --ratio as a repeatable list, so it opts out of the scalar one.
FlagPresence add_common_flags(CLI::App* cmd, Settings& v, bool scalar_ratio = true) {
    FlagPresence fp;
    fp.l = cmd->add_option("--l", v.l, "Downward 0<->1 rate l");
    fp.m = cmd->add_option("--m", v.m, "Upward 0<->1 rate m");
    fp.n = cmd->add_option("--n", v.n, "1<->2 tunneling rate n");
    fp.p = cmd->add_option("--p", v.p, "Drive half-frequency p = Omega/2");
    if (scalar_ratio) {
        fp.ratio = cmd->add_option("--ratio", v.ratio, "l/p ratio (alternative to --p)");
    }
    fp.driven = cmd->add_flag("--driven,!--undriven", v.driven,
                              "Include the drive Hamiltonian (default: p > 0)");
    fp.t_end = cmd->add_option("--t-end", v.t_end, "Propagation horizon");
    fp.dt = cmd->add_option("--dt", v.dt, "Output sampling interval");
    fp.initial = cmd->add_option("--initial", v.initial, "Initial state: ground|mixed");
    fp.preset = cmd->add_option("--preset", v.preset,
                                "Named preset: fig2-4|fig5-7|fig8-9|fig10-11|fig12-13");
    cmd->add_option("--config", v.config_path, "JSON config file (flags win on conflict)");
    fp.output = cmd->add_option("--output", v.output, "Output path, or - for stdout");
    fp.format = cmd->add_option("--format", v.format, "Output format: csv|json");
    return fp;
}

/// defaults < preset < config file < flags.
Settings resolve(const Settings& flags, const FlagPresence& fp) {
    json cfg = json::object();
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            throw qdmol::ContractViolation("cannot open config file: " + flags.config_path);
        }
        cfg = json::parse(in);
    }

    Settings out = flags;  // carries defaults and non-layered fields
    const std::string preset_name = (fp.preset && fp.preset->count())
                                        ? flags.preset
                                        : cfg.value("preset", std::string());
    if (!preset_name.empty()) {
        const auto preset = lookup_preset(preset_name);
        if (!preset) {
            throw qdmol::ContractViolation("unknown preset: " + preset_name);
        }
        out.l = preset->l;
        out.m = preset->m;
        out.n = preset->n;
        out.p = preset->p;
        out.p_source = Source::preset;
        out.driven = preset->driven;
        out.has_driven = true;
        out.t_end = preset->t_end;
        out.dt = preset->dt;
        out.preset = preset_name;
    }

    auto layer_num = [&](const char* key, double& slot, Source* src = nullptr) {
        if (cfg.contains(key)) {
            slot = cfg.at(key).get<double>();
            if (src) *src = Source::config;
        }
    };
    layer_num("l", out.l);
    layer_num("m", out.m);
    layer_num("n", out.n);
    layer_num("p", out.p, &out.p_source);
    layer_num("ratio", out.ratio, &out.ratio_source);
    layer_num("t_end", out.t_end);
    layer_num("dt", out.dt);
    if (cfg.contains("driven")) {
        out.driven = cfg.at("driven").get<bool>();
        out.has_driven = true;
    }
    if (cfg.contains("initial")) out.initial = cfg.at("initial").get<std::string>();
    if (cfg.contains("initial_diagonal")) {
        out.initial_diagonal = cfg.at("initial_diagonal").get<std::vector<double>>();
        if (!cfg.contains("initial")) out.initial = "custom";
    }
    if (cfg.contains("method")) out.method = cfg.at("method").get<std::string>();
    if (cfg.contains("ratios")) out.ratios = cfg.at("ratios").get<std::vector<double>>();
    if (cfg.contains("format")) out.format = cfg.at("format").get<std::string>();
    if (cfg.contains("output")) out.output = cfg.at("output").get<std::string>();

    auto flag_num = [&](CLI::Option* opt, double flag_value, double& slot,
                        Source* src = nullptr) {
        if (opt && opt->count()) {
            slot = flag_value;
            if (src) *src = Source::flag;
        }
    };
    flag_num(fp.l, flags.l, out.l);
    flag_num(fp.m, flags.m, out.m);
    flag_num(fp.n, flags.n, out.n);
    flag_num(fp.p, flags.p, out.p, &out.p_source);
    flag_num(fp.ratio, flags.ratio, out.ratio, &out.ratio_source);
    flag_num(fp.t_end, flags.t_end, out.t_end);
    flag_num(fp.dt, flags.dt, out.dt);
    if (fp.driven && fp.driven->count()) {
        out.driven = flags.driven;
        out.has_driven = true;
    }
    if (fp.initial && fp.initial->count()) out.initial = flags.initial;
    if (fp.method && fp.method->count()) out.method = flags.method;
    if (fp.ratios && fp.ratios->count()) out.ratios = flags.ratios;
    if (fp.format && fp.format->count()) out.format = flags.format;
    if (fp.output && fp.output->count()) out.output = flags.output;

    if (out.ratio_source != Source::none) {
        if (out.ratio_source == out.p_source) {
            throw qdmol::ContractViolation("p and ratio are mutually exclusive");
        }
        if (out.ratio_source > out.p_source) {  // the later layer wins
            if (!(out.ratio > 0.0)) {
                throw qdmol::ContractViolation("ratio l/p must be positive");
            }
            out.p = out.l / out.ratio;
            out.p_source = out.ratio_source;
        }
    }
    if (!out.has_driven) {
        out.driven = out.p > 0.0;
    }
    if (out.format != "csv" && out.format != "json") {
        throw qdmol::ContractViolation("format must be csv or json");
    }
    return out;
}

qdmol::RateParams rates_of(const Settings& s) {
    return qdmol::RateParams(s.l, s.m, s.n, s.p);
}

qdmol::Generator generator_of(const Settings& s) {
    const qdmol::RateParams rates = rates_of(s);
    return s.driven ? qdmol::build_driven(rates) : qdmol::build_undriven(rates);
}

qdmol::DensityMatrix initial_state_of(const Settings& s) {
    if (s.initial == "ground") {
        return qdmol::DensityMatrix::ground(3);
    }
    if (s.initial == "mixed") {
        return qdmol::DensityMatrix::maximally_mixed(3);
    }
    if (s.initial == "custom") {
        if (s.initial_diagonal.size() != 3) {
            throw qdmol::ContractViolation("custom initial state needs initial_diagonal[3]");
        }
        Eigen::Vector3d diag(s.initial_diagonal[0], s.initial_diagonal[1],
                             s.initial_diagonal[2]);
        return qdmol::DensityMatrix::from_diagonal(diag);
    }
    throw qdmol::ContractViolation("initial must be ground, mixed, or custom");
}

class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (path != "-" && path != "stdout") {
            file_.open(path);
            if (!file_) {
                throw qdmol::ContractViolation("cannot open output file: " + path);
            }
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

json meta_of(const Settings& s, const char* command) {
    json meta;
    meta["command"] = command;
    meta["version"] = qdmol::version;
    meta["rates"] = {{"l", s.l}, {"m", s.m}, {"n", s.n}, {"p", s.p}};
    meta["driven"] = s.driven;
    if (!s.preset.empty()) meta["preset"] = s.preset;
    return meta;
}

constexpr const char* csv_header =
    "t,rho00,rho11,rho22,re_rho01,im_rho01,re_rho12,im_rho12,re_rho02,im_rho02";

void write_sample_row(std::ostream& os, double t, const qdmol::ComplexMatrix& rho) {
    const double cols[10] = {t,
                             rho(0, 0).real(),
                             rho(1, 1).real(),
                             rho(2, 2).real(),
                             rho(0, 1).real(),
                             rho(0, 1).imag(),
                             rho(1, 2).real(),
                             rho(1, 2).imag(),
                             rho(0, 2).real(),
                             rho(0, 2).imag()};
    for (int i = 0; i < 10; ++i) {
        os << (i ? "," : "") << format_double(cols[i]);
    }
    os << "\n";
}

json sample_json(double t, const qdmol::ComplexMatrix& rho) {
    return json{{"t", t},
                {"rho00", rho(0, 0).real()},
                {"rho11", rho(1, 1).real()},
                {"rho22", rho(2, 2).real()},
                {"re_rho01", rho(0, 1).real()},
                {"im_rho01", rho(0, 1).imag()},
                {"re_rho12", rho(1, 2).real()},
                {"im_rho12", rho(1, 2).imag()},
                {"re_rho02", rho(0, 2).real()},
                {"im_rho02", rho(0, 2).imag()}};
}

int cmd_simulate(const Settings& s) {
    if (!(s.t_end > 0.0)) {
        throw qdmol::ContractViolation("t_end must be positive");
    }
    if (!(s.dt > 0.0)) {
        throw qdmol::ContractViolation("dt must be positive");
    }
    const qdmol::Generator gen = generator_of(s);
    qdmol::IntegratorConfig cfg;
    cfg.dense_output_dt = s.dt;
    const qdmol::Trajectory traj = qdmol::integrate(gen, initial_state_of(s), s.t_end, cfg);

    OutputStream out(s.output);
    if (s.format == "csv") {
        out.get() << csv_header << "\n";
        for (const auto& sample : traj.samples) {
            write_sample_row(out.get(), sample.t, sample.state.matrix());
        }
    } else {
        json doc;
        doc["meta"] = meta_of(s, "simulate");
        doc["meta"]["t_end"] = s.t_end;
        doc["meta"]["dt"] = s.dt;
        doc["meta"]["initial"] = s.initial;
        doc["meta"]["stats"] = {{"accepted_steps", traj.stats.accepted_steps},
                                {"rejected_steps", traj.stats.rejected_steps},
                                {"max_trace_drift", traj.stats.max_trace_drift},
                                {"max_hermiticity_drift", traj.stats.max_hermiticity_drift}};
        doc["samples"] = json::array();
        for (const auto& sample : traj.samples) {
            doc["samples"].push_back(sample_json(sample.t, sample.state.matrix()));
        }
        out.get() << doc.dump(2) << "\n";
    }
    return exit_ok;
}

struct SteadyRow {
    std::string method;
    std::array<double, 3> populations;
    double trace_error;
    std::vector<std::string> flags;
};

int cmd_steady(const Settings& s) {
    const qdmol::RateParams rates = rates_of(s);
    if (s.method != "analytic" && s.method != "nullspace" && s.method != "both") {
        throw qdmol::ContractViolation("method must be analytic, nullspace, or both");
    }
    std::vector<SteadyRow> rows;
    if (s.method == "analytic" || s.method == "both") {
        if (s.driven) {
            const qdmol::PrintedDrivenSteady printed = qdmol::driven_steady_printed(rates);
            SteadyRow row{"analytic-printed", printed.populations, printed.trace_error, {}};
            if (!printed.trace_consistent) {
                row.flags.push_back("not-trace-normalized");
            }
            if (!printed.p0_consistent) {
                row.flags.push_back("p0-inconsistent-with-undriven(printed=" +
                                    format_double(printed.populations[0]) + ",reference=" +
                                    format_double(printed.p0_reference_rho00) + ")");
            }
            rows.push_back(std::move(row));
        } else {
            rows.push_back({"analytic", qdmol::undriven_steady(rates), 0.0, {}});
        }
    }
    if (s.method == "nullspace" || s.method == "both") {
        const qdmol::DensityMatrix ss = qdmol::steady_state(generator_of(s));
        const Eigen::VectorXd pops = ss.populations();
        rows.push_back({"nullspace", {pops(0), pops(1), pops(2)}, 0.0, {}});
    }
    if (s.method == "both") {
        SteadyRow delta{"printed-vs-oracle", {}, 0.0, {}};
        double max_delta = 0.0;
        for (int k = 0; k < 3; ++k) {
            delta.populations[k] = std::abs(rows[0].populations[k] - rows[1].populations[k]);
            max_delta = std::max(max_delta, delta.populations[k]);
        }
        delta.flags.push_back(max_delta <= 0.05 ? "within-0.05" : "delta-exceeds-0.05");
        rows.push_back(std::move(delta));
    }

    OutputStream out(s.output);
    if (s.format == "csv") {
        out.get() << "method,rho00,rho11,rho22,trace_error,flags\n";
        for (const auto& row : rows) {
            out.get() << row.method;
            for (const double v : row.populations) {
                out.get() << "," << format_double(v);
            }
            out.get() << "," << format_double(row.trace_error) << ",";
            for (size_t i = 0; i < row.flags.size(); ++i) {
                out.get() << (i ? ";" : "") << row.flags[i];
            }
            out.get() << "\n";
        }
    } else {
        json doc;
        doc["meta"] = meta_of(s, "steady");
        doc["meta"]["method"] = s.method;
        doc["results"] = json::array();
        for (const auto& row : rows) {
            doc["results"].push_back({{"method", row.method},
                                      {"rho00", row.populations[0]},
                                      {"rho11", row.populations[1]},
                                      {"rho22", row.populations[2]},
                                      {"trace_error", row.trace_error},
                                      {"flags", row.flags}});
        }
        out.get() << doc.dump(2) << "\n";
    }
    return exit_ok;
}

struct SweepRow {
    double ratio;
    double p;
    std::array<double, 3> populations;
    double im_rho01;
    int osc_rho00;
    int osc_rho11;
    double spectral_relaxation;
    double settle;
};

int cmd_sweep(const Settings& s) {
    std::vector<double> ratios = s.ratios;
    if (ratios.empty()) {
        throw qdmol::ContractViolation("sweep needs at least one --ratio");
    }
    for (const double r : ratios) {
        if (!(r > 0.0)) {
            throw qdmol::ContractViolation("ratios must be positive");
        }
    }
    if (!(s.t_end > 0.0) || !(s.dt > 0.0)) {
        throw qdmol::ContractViolation("t_end and dt must be positive");
    }
    std::sort(ratios.begin(), ratios.end(), std::greater<>());

    auto run_point = [&](double ratio) {
        Settings point = s;
        point.p = point.l / ratio;
        point.driven = true;
        const qdmol::Generator gen = generator_of(point);
        const qdmol::DensityMatrix ss = qdmol::steady_state(gen);
        qdmol::IntegratorConfig cfg;
        cfg.dense_output_dt = point.dt;
        const qdmol::Trajectory traj =
            qdmol::integrate(gen, qdmol::DensityMatrix::ground(3), point.t_end, cfg);
        const Eigen::VectorXd pops = ss.populations();
        return SweepRow{ratio,
                        point.p,
                        {pops(0), pops(1), pops(2)},
                        ss.matrix()(0, 1).imag(),
                        qdmol::count_oscillations(traj, 0),
                        qdmol::count_oscillations(traj, 1),
                        qdmol::spectral_relaxation_time(gen),
                        qdmol::settle_time(traj, ss)};
    };

    // Points are independent; run them concurrently, emit in spec order.
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(ratios.size());
    for (const double ratio : ratios) {
        futures.push_back(std::async(std::launch::async, run_point, ratio));
    }
    std::vector<SweepRow> rows;
    rows.reserve(ratios.size());
    for (auto& f : futures) {
        rows.push_back(f.get());
    }

    bool rho00_decreasing = true;
    bool osc_non_decreasing = true;
    bool relax_non_decreasing = true;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].populations[0] < rows[i - 1].populations[0])) {
            rho00_decreasing = false;
        }
        if (rows[i].osc_rho00 < rows[i - 1].osc_rho00) {
            osc_non_decreasing = false;
        }
        if (rows[i].spectral_relaxation < rows[i - 1].spectral_relaxation - 1e-9) {
            relax_non_decreasing = false;
        }
    }

    OutputStream out(s.output);
    if (s.format == "csv") {
        out.get() << "ratio,p,rho00,rho11,rho22,im_rho01,osc_rho00,osc_rho11,"
                     "spectral_relaxation,settle_time\n";
        for (const auto& row : rows) {
            out.get() << format_double(row.ratio) << "," << format_double(row.p);
            for (const double v : row.populations) {
                out.get() << "," << format_double(v);
            }
            out.get() << "," << format_double(row.im_rho01) << "," << row.osc_rho00 << ","
                      << row.osc_rho11 << "," << format_double(row.spectral_relaxation)
                      << "," << format_double(row.settle) << "\n";
        }
    } else {
        json doc;
        doc["meta"] = meta_of(s, "sweep");
        doc["meta"]["t_end"] = s.t_end;
        doc["meta"]["dt"] = s.dt;
        doc["rows"] = json::array();
        for (const auto& row : rows) {
            doc["rows"].push_back({{"ratio", row.ratio},
                                   {"p", row.p},
                                   {"rho00", row.populations[0]},
                                   {"rho11", row.populations[1]},
                                   {"rho22", row.populations[2]},
                                   {"im_rho01", row.im_rho01},
                                   {"osc_rho00", row.osc_rho00},
                                   {"osc_rho11", row.osc_rho11},
                                   {"spectral_relaxation", row.spectral_relaxation},
                                   {"settle_time", row.settle}});
        }
        doc["trends"] = {{"rho00_strictly_decreasing", rho00_decreasing},
                         {"oscillations_non_decreasing", osc_non_decreasing},
                         {"spectral_relaxation_non_decreasing", relax_non_decreasing}};
        out.get() << doc.dump(2) << "\n";
    }

    std::cerr << "trend rho00-strictly-decreasing: " << (rho00_decreasing ? "OK" : "VIOLATED")
              << "\n"
              << "trend oscillations-non-decreasing: "
              << (osc_non_decreasing ? "OK" : "VIOLATED") << "\n"
              << "trend spectral-relaxation-non-decreasing: "
              << (relax_non_decreasing ? "OK" : "VIOLATED") << "\n";
    return (rho00_decreasing && osc_non_decreasing && relax_non_decreasing)
               ? exit_ok
               : exit_validation_failure;
}

int cmd_validate(const std::string& fault_name, unsigned seed, const std::string& format,
                 const std::string& output) {
    qdmol::Fault fault = qdmol::Fault::none;
    if (fault_name == "dissipator-sign") {
        fault = qdmol::Fault::dissipator_sign;
    } else if (!fault_name.empty()) {
        throw qdmol::ContractViolation("unknown fault: " + fault_name);
    }
    const auto results = qdmol::run_validation_suite(fault, seed);
    int failures = 0;
    OutputStream out(output);
    if (format == "json") {
        json doc;
        doc["meta"] = {{"command", "validate"}, {"version", qdmol::version}, {"seed", seed}};
        doc["checks"] = json::array();
        for (const auto& r : results) {
            doc["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            failures += r.pass ? 0 : 1;
        }
        doc["failures"] = failures;
        out.get() << doc.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            out.get() << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
            failures += r.pass ? 0 : 1;
        }
        out.get() << "validate: " << results.size() << " checks, " << failures
                  << " failure(s)\n";
    }
    return failures == 0 ? exit_ok : exit_validation_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative dynamics of a laser-driven three-level double quantum dot"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qdmol::version);

    Settings sim_v, steady_v, sweep_v;
    CLI::App* simulate = app.add_subcommand("simulate", "Propagate and emit the trajectory");
    const FlagPresence sim_fp = add_common_flags(simulate, sim_v);

    CLI::App* steady = app.add_subcommand("steady", "Stationary populations");
    const FlagPresence steady_fp = add_common_flags(steady, steady_v);
    CLI::Option* method_opt =
        steady->add_option("--method", steady_v.method, "analytic|nullspace|both");

    CLI::App* sweep = app.add_subcommand("sweep", "Summary table over l/p ratios");
    sweep_v.t_end = 80.0;
    sweep_v.dt = 0.02;
    const FlagPresence sweep_fp = add_common_flags(sweep, sweep_v, /*scalar_ratio=*/false);
    CLI::Option* ratios_opt = sweep->add_option("--ratio", sweep_v.ratios,
                                                "l/p value (repeatable)");

    CLI::App* validate = app.add_subcommand("validate", "Run the invariant suite");
    std::string fault_name;
    unsigned seed = 20240811;
    std::string validate_format = "text";
    std::string validate_output = "-";
    validate->add_option("--inject-fault", fault_name,
                         "Test-only mutation hook: dissipator-sign");
    validate->add_option("--seed", seed, "Random seed for the property checks");
    validate->add_option("--format", validate_format, "text|json");
    validate->add_option("--output", validate_output, "Output path, or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_bad_config;
    }

    try {
        if (simulate->parsed()) {
            return cmd_simulate(resolve(sim_v, sim_fp));
        }
        if (steady->parsed()) {
            Settings resolved = resolve(steady_v, steady_fp);
            if (method_opt->count()) {
                resolved.method = steady_v.method;
            }
            return cmd_steady(resolved);
        }
        if (sweep->parsed()) {
            Settings resolved = resolve(sweep_v, sweep_fp);
            if (ratios_opt->count()) {
                resolved.ratios = sweep_v.ratios;
            }
            return cmd_sweep(resolved);
        }
        if (validate->parsed()) {
            return cmd_validate(fault_name, seed, validate_format, validate_output);
        }
    } catch (const qdmol::StiffnessError& e) {
        std::cerr << "integrator failure: " << e.what() << "\n";
        return exit_integrator_failure;
    } catch (const qdmol::DegenerateSteadyStateError& e) {
        std::cerr << "degenerate steady state: " << e.what() << "\n";
        return exit_degenerate_steady;
    } catch (const qdmol::NonPhysicalFixedPointError& e) {
        std::cerr << "non-physical fixed point: " << e.what() << "\n";
        return exit_degenerate_steady;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_config;
    }
    return exit_bad_config;
}
