// Copyright 2026 The mgloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MGLOC_CLI_HPP
#define MGLOC_CLI_HPP

/// The `mgloc` command line. Every subcommand validates its whole configuration before
/// computing anything and writes output files atomically.
///
/// Exit codes: 0 success, 1 runtime or numeric failure, 2 configuration error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "mgloc/mgloc.hpp"
#include "mgloc/validation.hpp"

namespace mgloc::cli {

enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitConfig = 2 };

struct ExperimentConfig {
    std::string model = "model1";
    int n = 60;
    std::size_t steps = 48;
    double dt = 0.25;
    double mean_strength = 0.0;
    double fluctuation = 0.0;
    bool uniform_field = false;
    std::size_t realizations = 10;
    int observable_site = 0;  // 0: floor(n / 2)
    std::string observable_axis = "X";
    std::string probe = "z";
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    std::string output;
    std::string envelope_output;

    // fit window and classification
    double fit_t_min = 1.0;
    double fit_t_cap = 6.0;
    std::string knee = "boundary";
    double edge_fraction = 0.1;
    double knee_ratio = 0.95;
    double band_localized = 0.2;
    double band_diffusive_low = 0.35;
    double band_diffusive_high = 0.65;
    double band_ballistic = 0.8;

    // phase-diagram grid
    std::vector<double> strengths;
    std::vector<double> deltas;

    // oto and truncation
    std::size_t realization = 0;
    std::vector<int> sites;  // empty: every site
    std::string input_axis = "z";
    double markov_delta = 0.0;

    std::string validate_level = "quick";
};

inline DisorderModel parse_model(const std::string &s) {
    if (s == "model1" || s == "1") return DisorderModel::Model1;
    if (s == "model2" || s == "2") return DisorderModel::Model2;
    throw ConfigError("model must be model1 or model2, got '" + s + "'");
}

inline Axis parse_axis(const std::string &s) {
    if (s == "x" || s == "X") return kAxisX;
    if (s == "y" || s == "Y") return kAxisY;
    if (s == "z" || s == "Z") return kAxisZ;
    throw ConfigError("axis must be x, y or z, got '" + s + "'");
}

inline int resolved_site(const ExperimentConfig &c) {
    return c.observable_site == 0 ? std::max(1, c.n / 2) : c.observable_site;
}

inline PauliString observable(const ExperimentConfig &c) {
    const int s = resolved_site(c);
    const std::string &a = c.observable_axis;
    if (a == "X" || a == "x") return pauli_x(s, c.n);
    if (a == "Y" || a == "y") return pauli_y(s, c.n);
    return pauli_z(s, c.n);
}

inline DisorderSpec disorder_spec(const ExperimentConfig &c) {
    DisorderSpec spec;
    spec.model = parse_model(c.model);
    spec.mean_strength = c.mean_strength;
    spec.fluctuation = c.fluctuation;
    spec.dt = c.dt;
    spec.seed = c.seed;
    spec.model2_uniform_field = c.uniform_field;
    return spec;
}

inline WindowPolicy window_policy(const ExperimentConfig &c) {
    WindowPolicy w;
    w.t_min = c.fit_t_min;
    w.t_cap = c.fit_t_cap;
    w.knee = parse_knee_rule(c.knee);
    w.edge_fraction = c.edge_fraction;
    w.knee_ratio = c.knee_ratio;
    return w;
}

inline ClassificationBands bands(const ExperimentConfig &c) {
    return {c.band_localized, c.band_diffusive_low, c.band_diffusive_high, c.band_ballistic};
}

inline LightConeOptions lightcone_options(const ExperimentConfig &c) {
    LightConeOptions o;
    o.steps = c.steps;
    o.probe = parse_probe(c.probe);
    o.realizations = c.realizations;
    o.threads = c.threads;
    return o;
}

/// Throws ConfigError on the first invalid field. Library argument errors are rethrown
/// as configuration errors since they all originate from user input here.
inline void validate(const ExperimentConfig &c, const std::string &command) {
    try {
        if (c.n < 1 || c.n > 4096) throw ConfigError("n must lie in [1, 4096]");
        if (c.steps > 1000000) throw ConfigError("steps is unreasonably large");
        disorder_spec(c).validate();
        if (c.realizations == 0) throw ConfigError("realizations must be positive");
        const int s = resolved_site(c);
        if (s < 1 || s > c.n) throw ConfigError("observable site must lie in [1, n]");
        if (c.observable_axis.size() != 1 || std::string("XYZxyz").find(c.observable_axis) == std::string::npos) {
            throw ConfigError("observable axis must be X, Y or Z");
        }
        parse_probe(c.probe);
        window_policy(c).validate();
        bands(c).validate();
        parse_axis(c.input_axis);
        for (int site : c.sites) {
            if (site < 1 || site > c.n) throw ConfigError("site " + std::to_string(site) + " outside [1, n]");
        }
        if (!(c.markov_delta >= 0.0)) throw ConfigError("markov delta must be nonnegative");
        if (command == "phase-diagram") {
            if (c.strengths.empty() || c.deltas.empty()) {
                throw ConfigError("phase-diagram needs nonempty --strengths and --deltas");
            }
            for (double d : c.deltas) {
                if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("deltas must be finite and nonnegative");
            }
            for (double v : c.strengths) {
                if (!std::isfinite(v)) throw ConfigError("strengths must be finite");
                if (parse_model(c.model) == DisorderModel::Model1 && v < 0.0) {
                    throw ConfigError("model1 disorder strengths must be nonnegative");
                }
            }
            if (c.steps == 0) throw ConfigError("phase-diagram needs at least one step");
        }
        if (command == "oto" && c.probe == "optimal") {
            throw ConfigError("oto needs a coordinate probe axis: x, y or z");
        }
        if (command == "truncation" && c.sites.empty()) {
            throw ConfigError("truncation needs --sites");
        }
        if (command == "validate" && c.validate_level != "quick" && c.validate_level != "full") {
            throw ConfigError("validate level must be quick or full");
        }
    } catch (const ArgumentError &e) {
        throw ConfigError(e.what());
    } catch (const ShapeError &e) {
        throw ConfigError(e.what());
    }
}

inline std::string join_numbers(const std::vector<double> &v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + format_number(v[i]);
    }
    return out;
}

inline std::string join_ints(const std::vector<int> &v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + std::to_string(v[i]);
    }
    return out;
}

/// Version, command and every setting that affects results. Output paths and the thread
/// count are left out so equal experiments produce equal files.
inline std::vector<std::string> config_echo(const ExperimentConfig &c, const std::string &command) {
    return {"mgloc " + std::string(kVersion),
            "command=" + command,
            "config.model=" + c.model,
            "config.n=" + std::to_string(c.n),
            "config.steps=" + std::to_string(c.steps),
            "config.dt=" + format_number(c.dt),
            "config.mean_strength=" + format_number(c.mean_strength),
            "config.fluctuation=" + format_number(c.fluctuation),
            "config.uniform_field=" + std::string(c.uniform_field ? "true" : "false"),
            "config.realizations=" + std::to_string(c.realizations),
            "config.observable=" + pauli_label(observable(c)),
            "config.probe=" + c.probe,
            "config.seed=" + std::to_string(c.seed),
            "config.fit_t_min=" + format_number(c.fit_t_min),
            "config.fit_t_cap=" + format_number(c.fit_t_cap),
            "config.knee=" + c.knee,
            "config.edge_fraction=" + format_number(c.edge_fraction),
            "config.knee_ratio=" + format_number(c.knee_ratio),
            "config.bands=" + join_numbers({c.band_localized, c.band_diffusive_low, c.band_diffusive_high,
                                            c.band_ballistic}),
            "config.strengths=" + join_numbers(c.strengths),
            "config.deltas=" + join_numbers(c.deltas),
            "config.realization=" + std::to_string(c.realization),
            "config.sites=" + join_ints(c.sites),
            "config.input_axis=" + c.input_axis,
            "config.markov_delta=" + format_number(c.markov_delta)};
}

/// Writes through a sibling temporary file and renames it into place, so readers never see
/// a partial file. An empty path or "-" writes to `fallback`.
inline void write_output(const std::string &path, std::ostream &fallback,
                         const std::function<void(std::ostream &)> &writer) {
    if (path.empty() || path == "-") {
        writer(fallback);
        fallback.flush();
        return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp-" + std::to_string(::getpid());
    try {
        {
            std::ofstream file(tmp, std::ios::out | std::ios::trunc | std::ios::binary);
            if (!file) {
                throw ResourceError("cannot open " + tmp.string() + " for writing");
            }
            writer(file);
            file.flush();
            if (!file) {
                throw ResourceError("write to " + tmp.string() + " failed");
            }
        }
        std::filesystem::rename(tmp, target);
    } catch (...) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw;
    }
}

inline oracle::GeneratorFn production_generator() {
    return [](const XYCouplings &c) { return generator(c); };
}

/// Generator with one field coefficient nudged; used to prove the self-test catches it.
inline oracle::GeneratorFn faulty_generator() {
    return [](const XYCouplings &c) {
        Matrix h = generator(c);
        h(0, 1) += 1e-6;
        h(1, 0) -= 1e-6;
        return h;
    };
}

struct Context {
    std::ostream &out;
    std::ostream &err;
    oracle::GeneratorFn gen;
};

inline void startup_self_test(const Context &ctx) {
    const auto st = oracle::generator_self_test(ctx.gen);
    if (!st.ok) {
        throw NumericError(st.message);
    }
}

inline int cmd_oto(const ExperimentConfig &c, const Context &ctx) {
    startup_self_test(ctx);
    const PauliString b = observable(c);
    const DisorderRealization disorder(disorder_spec(c), c.n, c.realization);
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(c.probe.empty() ? 'z' : c.probe[0])));
    std::vector<int> sites = c.sites;
    if (sites.empty()) {
        for (int s = 1; s <= c.n; ++s) sites.push_back(s);
    }
    std::ostringstream body;
    body << kLightconeColumns << '\n';
    Propagator p = Propagator::identity(c.n);
    for (std::size_t k = 0;; ++k) {
        for (int s : sites) {
            const PauliString a = letter == 'X' ? pauli_x(s, c.n) : letter == 'Y' ? pauli_y(s, c.n) : pauli_z(s, c.n);
            body << s << ',' << k << ',' << format_number(p.time) << ',' << format_number(oto_pauli_pair(p, a, b))
                 << '\n';
        }
        if (k == c.steps) break;
        p = step(p, disorder.couplings_at(k), c.dt);
    }
    p.check_invariants();
    auto header = config_echo(c, "oto");
    write_output(c.output, ctx.out, [&](std::ostream &o) {
        write_comment_lines(o, header);
        o << body.str();
    });
    return kExitOk;
}

inline int cmd_truncation(const ExperimentConfig &c, const Context &ctx) {
    startup_self_test(ctx);
    const PauliString b = observable(c);
    const auto snapshots = evolve_to(DisorderRealization(disorder_spec(c), c.n, c.realization),
                                     static_cast<double>(c.steps) * c.dt);
    const Propagator &p = snapshots.back();
    p.check_invariants();
    std::vector<Axis> axes;
    const Axis input = parse_axis(c.input_axis);
    const SnapshotOto oto(p, b);
    for (int s : c.sites) {
        if (c.probe == "optimal") {
            axes.push_back(optimize_probe_axis(oto.matrix(s), input).first);
        } else {
            axes.push_back(parse_axis(c.probe));
        }
    }
    TruncationReport report = truncation_bound(p, b, c.sites, axes);
    if (c.markov_delta > 0.0) {
        report = with_markov(report, c.markov_delta);
    }
    auto header = config_echo(c, "truncation");
    write_output(c.output, ctx.out, [&](std::ostream &o) {
        write_comment_lines(o, header);
        o << "time=" << format_number(p.time) << '\n';
        for (std::size_t k = 0; k < axes.size(); ++k) {
            o << "axis site=" << c.sites[k] << " n=" << format_number(axes[k][0]) << ','
              << format_number(axes[k][1]) << ',' << format_number(axes[k][2]) << '\n';
        }
        o << to_records(report);
    });
    return kExitOk;
}

inline void print_fit(std::ostream &out, const SlopeFit &fit, PhaseLabel label) {
    out << "slope=" << format_number(fit.slope) << " residual=" << format_number(fit.residual)
        << " t_min=" << format_number(fit.t_min) << " t_max=" << format_number(fit.t_max) << " points=" << fit.points
        << " label=" << to_string(label) << '\n';
}

inline int cmd_lightcone(const ExperimentConfig &c, const Context &ctx) {
    startup_self_test(ctx);
    const PauliString b = observable(c);
    const auto header = config_echo(c, "lightcone");
    if (c.steps == 0) {
        const LightCone empty{Matrix(0, static_cast<std::size_t>(c.n)), disorder_spec(c), c.n, pauli_label(b),
                              parse_probe(c.probe), c.realizations};
        write_output(c.output, ctx.out, [&](std::ostream &o) { write_lightcone_csv(o, empty, header); });
        return kExitOk;
    }
    const LightCone lc = build_lightcone(disorder_spec(c), c.n, b, lightcone_options(c));
    const Envelope env = envelope(lc);
    std::optional<PhasePoint> point;
    try {
        point = analyze(lc, window_policy(c), bands(c));
    } catch (const AnalysisError &e) {
        ctx.err << "mgloc: no slope fit: " << e.what() << '\n';
    }
    const bool to_stdout = c.output.empty() || c.output == "-";
    write_output(c.output, ctx.out, [&](std::ostream &o) { write_lightcone_csv(o, lc, header); });
    if (!c.envelope_output.empty()) {
        auto env_header = header;
        if (point) {
            env_header.push_back("slope=" + format_number(point->fit.slope));
            env_header.push_back("t_min=" + format_number(point->fit.t_min));
            env_header.push_back("t_max=" + format_number(point->fit.t_max));
            env_header.push_back("label=" + to_string(point->label));
        }
        write_output(c.envelope_output, ctx.out, [&](std::ostream &o) { write_envelope_csv(o, env, env_header); });
    }
    if (point) {
        print_fit(to_stdout ? ctx.err : ctx.out, point->fit, point->label);
    }
    return kExitOk;
}

inline int cmd_phase_diagram(const ExperimentConfig &c, const Context &ctx) {
    startup_self_test(ctx);
    PhaseDiagramRequest req;
    req.base = disorder_spec(c);
    req.mean_strengths = c.strengths;
    req.deltas = c.deltas;
    req.n = c.n;
    req.observable = observable(c);
    req.lightcone = lightcone_options(c);
    req.window = window_policy(c);
    req.bands = bands(c);
    const auto points = phase_diagram(req);
    auto header = config_echo(c, "phase-diagram");
    header.push_back("rows=deltas cols=strengths order=row-major");
    write_output(c.output, ctx.out, [&](std::ostream &o) { write_phase_csv(o, points, header); });
    return kExitOk;
}

inline int cmd_validate(const ExperimentConfig &c, const Context &ctx) {
    const auto level = c.validate_level == "full" ? validation::Level::Full : validation::Level::Quick;
    bool ok = true;
    for (const auto &r : validation::run_all(level, ctx.gen)) {
        ctx.out << (r.passed ? "PASS " : "FAIL ") << r.name << " instances=" << r.instances
                << " max_error=" << format_number(r.max_error) << '\n';
        if (!r.passed) {
            ctx.err << "mgloc: " << r.message << '\n';
            ok = false;
            break;
        }
    }
    return ok ? kExitOk : kExitRuntime;
}

inline void add_system_options(CLI::App *sub, ExperimentConfig &c) {
    sub->add_option("--model", c.model, "Disorder model: model1 or model2")->capture_default_str();
    sub->add_option("--n", c.n, "Number of qubits")->capture_default_str();
    sub->add_option("--steps", c.steps, "Number of time steps of length dt")->capture_default_str();
    sub->add_option("--dt", c.dt, "Period of the piecewise-constant couplings")->capture_default_str();
    sub->add_option("--mean-strength,--nu", c.mean_strength,
                    "Static disorder width (model1) or mean hopping (model2)")
        ->capture_default_str();
    sub->add_option("--fluctuation,--delta", c.fluctuation, "Fluctuation strength Delta")->capture_default_str();
    sub->add_flag("--uniform-field", c.uniform_field, "model2: unit field on every site instead of U[-1, 1]");
    sub->add_option("--observable-site", c.observable_site, "Site of the evolved observable (default n/2)");
    sub->add_option("--observable-axis", c.observable_axis, "Pauli axis of the observable: X, Y or Z")
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "Ensemble seed")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads (0: MGLOC_THREADS or all cores)");
    sub->add_option("--output,-o", c.output, "Output file (default stdout)");
}

inline void add_analysis_options(CLI::App *sub, ExperimentConfig &c) {
    sub->add_option("--realizations", c.realizations, "Disorder realizations")->capture_default_str();
    sub->add_option("--probe", c.probe, "Probe axis policy: x, y, z or optimal")->capture_default_str();
    sub->add_option("--fit-t-min", c.fit_t_min, "Earliest time in the slope fit")->capture_default_str();
    sub->add_option("--fit-t-cap", c.fit_t_cap, "Latest time in the slope fit (<= 0: none)")->capture_default_str();
    sub->add_option("--knee", c.knee, "End-of-window rule: boundary, extrapolation or none")->capture_default_str();
    sub->add_option("--edge-fraction", c.edge_fraction, "Boundary rule threshold")->capture_default_str();
    sub->add_option("--knee-ratio", c.knee_ratio, "Extrapolation rule threshold")->capture_default_str();
    sub->add_option("--band-localized", c.band_localized)->capture_default_str();
    sub->add_option("--band-diffusive-low", c.band_diffusive_low)->capture_default_str();
    sub->add_option("--band-diffusive-high", c.band_diffusive_high)->capture_default_str();
    sub->add_option("--band-ballistic", c.band_ballistic)->capture_default_str();
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    ExperimentConfig cfg;
    std::string fault;
    CLI::App app{"Matchgate light cones, OTO correlators and localization phases"};
    app.set_version_flag("--version", std::string("mgloc ") + kVersion);
    app.set_config("--config", "", "TOML configuration file; [subcommand] sections, flags override");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--inject-fault", fault)->group("");

    auto *oto = app.add_subcommand("oto", "OTO correlator of a site Pauli with the observable, per site and step");
    add_system_options(oto, cfg);
    oto->add_option("--probe", cfg.probe, "Axis of the site Pauli: x, y or z")->capture_default_str();
    oto->add_option("--realization", cfg.realization, "Realization index")->capture_default_str();
    oto->add_option("--sites", cfg.sites, "Sites to report (default all)")->delimiter(',');

    auto *trunc = app.add_subcommand("truncation", "Truncation error certificate at the final time");
    add_system_options(trunc, cfg);
    trunc->add_option("--probe", cfg.probe, "Probe axes: x, y, z or optimal")->capture_default_str();
    trunc->add_option("--input-axis", cfg.input_axis, "Bloch axis of the input basis, for optimal probes")
        ->capture_default_str();
    trunc->add_option("--realization", cfg.realization, "Realization index")->capture_default_str();
    trunc->add_option("--sites", cfg.sites, "Sites to depolarize")->delimiter(',');
    trunc->add_option("--markov-delta", cfg.markov_delta, "Threshold for the Markov fraction bound");

    auto *lightcone = app.add_subcommand("lightcone", "Ensemble light cone as CSV, with envelope fit");
    add_system_options(lightcone, cfg);
    add_analysis_options(lightcone, cfg);
    lightcone->add_option("--envelope-output", cfg.envelope_output, "Also write u1, v1 and the spectrum here");

    auto *phase = app.add_subcommand("phase-diagram", "Envelope slopes over a (strength, Delta) grid");
    add_system_options(phase, cfg);
    add_analysis_options(phase, cfg);
    phase->add_option("--strengths", cfg.strengths, "Mean strengths (columns)")->delimiter(',');
    phase->add_option("--deltas", cfg.deltas, "Fluctuation strengths (rows)")->delimiter(',');

    auto *val = app.add_subcommand("validate", "Oracle equivalence suites");
    val->add_option("level", cfg.validate_level, "quick or full")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "mgloc: " << e.what() << '\n';
        return kExitConfig;
    }

    const CLI::App *chosen = app.get_subcommands().front();
    const std::string command = chosen->get_name();
    Context ctx{out, err, production_generator()};
    if (!fault.empty()) {
        if (fault != "generator") {
            err << "mgloc: unknown fault '" << fault << "'\n";
            return kExitConfig;
        }
        ctx.gen = faulty_generator();
    }
    try {
        validate(cfg, command);
    } catch (const ConfigError &e) {
        err << "mgloc: " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        if (command == "oto") return cmd_oto(cfg, ctx);
        if (command == "truncation") return cmd_truncation(cfg, ctx);
        if (command == "lightcone") return cmd_lightcone(cfg, ctx);
        if (command == "phase-diagram") return cmd_phase_diagram(cfg, ctx);
        return cmd_validate(cfg, ctx);
    } catch (const ConfigError &e) {
        err << "mgloc: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "mgloc: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace mgloc::cli

#endif  // MGLOC_CLI_HPP
