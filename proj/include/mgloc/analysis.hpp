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

#ifndef MGLOC_ANALYSIS_HPP
#define MGLOC_ANALYSIS_HPP

/// Light cones over disorder ensembles, their SVD envelopes, and phase labels.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <system_error>
#include <vector>

#include "mgloc/errors.hpp"
#include "mgloc/evolution.hpp"
#include "mgloc/linalg.hpp"
#include "mgloc/majorana.hpp"
#include "mgloc/parallel.hpp"
#include "mgloc/scrambling.hpp"
#include "mgloc/truncation.hpp"

namespace mgloc {

enum class ProbePolicy { X, Y, Z, Optimal };

inline std::string to_string(ProbePolicy p) {
    switch (p) {
        case ProbePolicy::X:
            return "x";
        case ProbePolicy::Y:
            return "y";
        case ProbePolicy::Z:
            return "z";
        case ProbePolicy::Optimal:
            return "optimal";
    }
    return "z";
}

inline ProbePolicy parse_probe(const std::string &s) {
    if (s == "x") return ProbePolicy::X;
    if (s == "y") return ProbePolicy::Y;
    if (s == "z") return ProbePolicy::Z;
    if (s == "optimal") return ProbePolicy::Optimal;
    throw ArgumentError("unknown probe policy '" + s + "' (expected x, y, z or optimal)");
}

/// Probe value n . M_s . n for the chosen policy. Coordinate axes only touch the one
/// diagonal entry they need. "optimal" minimizes over axes orthogonal to z.
inline double probe_value(const SnapshotOto &oto, int s, ProbePolicy probe) {
    switch (probe) {
        case ProbePolicy::X:
            return oto.xx(s);
        case ProbePolicy::Y:
            return oto.yy(s);
        case ProbePolicy::Z:
            return oto.zz(s);
        case ProbePolicy::Optimal:
            return optimize_probe_axis(oto.matrix(s), kAxisZ).second;
    }
    return 0.0;
}

struct LightCone {
    Matrix values;  // row k-1 holds t = k dt, column s-1 holds site s
    DisorderSpec spec;
    int n = 0;
    std::string observable;
    ProbePolicy probe = ProbePolicy::Z;
    std::size_t realizations = 0;

    std::size_t steps() const noexcept {
        return values.rows();
    }
    double time(std::size_t step) const noexcept {
        return static_cast<double>(step) * spec.dt;
    }
    /// One-based site and step.
    double value(int site, std::size_t step) const {
        return values.at(step - 1, static_cast<std::size_t>(site - 1));
    }
};

struct LightConeOptions {
    std::size_t steps = 0;
    ProbePolicy probe = ProbePolicy::Z;
    std::size_t realizations = 10;
    std::size_t threads = 0;  // 0: default_thread_count()
    double floor = 1e-300;
};

/// sqrt(probe value) on the (step, site) grid for a single disorder realization.
inline Matrix realization_grid(const DisorderSpec &spec, int n, const PauliString &observable, std::size_t steps,
                               ProbePolicy probe, std::uint64_t realization) {
    if (observable.n() != n) {
        throw ShapeError("lightcone: observable acts on " + std::to_string(observable.n()) + " qubits, chain has " +
                         std::to_string(n));
    }
    const DisorderRealization disorder(spec, n, realization);
    Matrix grid(steps, static_cast<std::size_t>(n));
    Propagator p = Propagator::identity(n);
    for (std::size_t k = 0; k < steps; ++k) {
        p = step(p, disorder.couplings_at(k), spec.dt);
        const SnapshotOto oto(p, observable);
        for (int s = 1; s <= n; ++s) {
            grid(k, static_cast<std::size_t>(s - 1)) = std::sqrt(std::max(0.0, probe_value(oto, s, probe)));
        }
    }
    return grid;
}

/// Cellwise geometric mean of equally shaped grids.
inline Matrix geometric_mean_grid(const std::vector<Matrix> &grids, double floor = 1e-300) {
    if (grids.empty()) {
        throw ArgumentError("geometric_mean_grid: no grids");
    }
    Matrix out(grids.front().rows(), grids.front().cols());
    std::vector<double> samples(grids.size());
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) {
            for (std::size_t g = 0; g < grids.size(); ++g) {
                samples[g] = grids[g](r, c);
            }
            out(r, c) = geometric_mean(samples, floor);
        }
    }
    return out;
}

inline LightCone build_lightcone(const DisorderSpec &spec, int n, const PauliString &observable,
                                 const LightConeOptions &opt) {
    spec.validate();
    if (opt.steps == 0) {
        throw ArgumentError("build_lightcone: need at least one step");
    }
    if (opt.realizations == 0) {
        throw ArgumentError("build_lightcone: need at least one realization");
    }
    std::vector<Matrix> grids(opt.realizations);
    parallel_for(opt.realizations, opt.threads, [&](std::size_t r) {
        grids[r] = realization_grid(spec, n, observable, opt.steps, opt.probe, r);
    });
    return {geometric_mean_grid(grids, opt.floor), spec, n, pauli_label(observable), opt.probe, opt.realizations};
}

struct Envelope {
    std::vector<double> temporal;  // u1 by step
    std::vector<double> spatial;   // v1 by site
    std::vector<double> spectrum;  // singular values, descending
};

inline Envelope envelope(const Matrix &grid) {
    if (grid.empty()) {
        throw ArgumentError("envelope: empty grid");
    }
    const SvdResult f = svd(grid);
    Envelope e;
    e.spectrum = f.singular_values;
    e.temporal.resize(grid.rows());
    e.spatial.resize(grid.cols());
    double sum = 0.0;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        e.temporal[r] = f.left_vectors(r, 0);
        sum += e.temporal[r];
    }
    for (std::size_t c = 0; c < grid.cols(); ++c) {
        e.spatial[c] = f.right_vectors(c, 0);
    }
    if (sum < 0.0) {
        for (double &v : e.temporal) v = -v;
        for (double &v : e.spatial) v = -v;
    }
    return e;
}

inline Envelope envelope(const LightCone &lc) {
    return envelope(lc.values);
}

/// How the fit window finds the end of the power-law regime.
///   Boundary: stop before the first step at which either edge site reaches
///             edge_fraction of that step's largest value.
///   Extrapolation: stop before the first sample that falls below knee_ratio times the
///             straight log-log line through the previous two samples.
enum class KneeRule { None, Boundary, Extrapolation };

inline std::string to_string(KneeRule k) {
    switch (k) {
        case KneeRule::None:
            return "none";
        case KneeRule::Boundary:
            return "boundary";
        case KneeRule::Extrapolation:
            return "extrapolation";
    }
    return "none";
}

inline KneeRule parse_knee_rule(const std::string &s) {
    if (s == "none") return KneeRule::None;
    if (s == "boundary") return KneeRule::Boundary;
    if (s == "extrapolation") return KneeRule::Extrapolation;
    throw ArgumentError("unknown knee rule '" + s + "' (expected none, boundary or extrapolation)");
}

/// The window always opens at max(dt, t_min) and never extends past t_cap.
struct WindowPolicy {
    double t_min = 1.0;
    double t_cap = 6.0;  // <= 0 disables the cap
    KneeRule knee = KneeRule::Boundary;
    double edge_fraction = 0.1;
    double knee_ratio = 0.95;
    std::size_t min_points = 5;

    void validate() const {
        if (!(t_min >= 0.0) || !std::isfinite(t_min) || std::isnan(t_cap)) {
            throw ArgumentError("window: t_min must be finite and nonnegative");
        }
        if (!(edge_fraction > 0.0 && edge_fraction <= 1.0)) {
            throw ArgumentError("window: edge fraction must lie in (0, 1]");
        }
        if (!(knee_ratio > 0.0 && knee_ratio <= 1.0)) {
            throw ArgumentError("window: knee ratio must lie in (0, 1]");
        }
        if (min_points < 2) {
            throw ArgumentError("window: need at least two points for a slope");
        }
    }
};

/// Last time before the light cone reaches either end of the chain, or +inf if it never
/// does. Row k-1 of `grid` is t = k dt.
inline double boundary_reach_time(const Matrix &grid, double dt, double edge_fraction) {
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        double peak = 0.0;
        for (std::size_t c = 0; c < grid.cols(); ++c) {
            peak = std::max(peak, grid(r, c));
        }
        const double edge = std::max(grid(r, 0), grid(r, grid.cols() - 1));
        if (peak > 0.0 && edge >= edge_fraction * peak) {
            return static_cast<double>(r) * dt;
        }
    }
    return std::numeric_limits<double>::infinity();
}

struct SlopeFit {
    double slope = 0.0;
    double residual = 0.0;  // rms of the log-log residuals
    double t_min = 0.0;
    double t_max = 0.0;
    std::size_t points = 0;
};

/// Least-squares slope of log u1 against log t. u1[i] is sampled at t = (i + 1) dt.
/// `t_end` bounds the window from outside (the boundary rule feeds it).
inline SlopeFit fit_slope(std::span<const double> u1, double dt, const WindowPolicy &policy = {},
                          double t_end = std::numeric_limits<double>::infinity()) {
    if (!(dt > 0.0)) {
        throw ArgumentError("fit_slope: dt must be positive");
    }
    policy.validate();
    const double open = std::max(dt, policy.t_min);
    double close = t_end;
    if (policy.t_cap > 0.0) {
        close = std::min(close, policy.t_cap);
    }
    const double tol = 1e-9 * dt;
    std::vector<double> ts;
    std::vector<double> lt;
    std::vector<double> lu;
    for (std::size_t i = 0; i < u1.size(); ++i) {
        const double t = static_cast<double>(i + 1) * dt;
        if (t + tol < open) {
            continue;
        }
        if (t > close + tol || !(u1[i] > 0.0) || !std::isfinite(u1[i])) {
            break;
        }
        const double x = std::log(t);
        const double y = std::log(u1[i]);
        if (policy.knee == KneeRule::Extrapolation && lt.size() >= 2) {
            const std::size_t a = lt.size() - 2;
            const std::size_t b = lt.size() - 1;
            const double predicted = lu[b] + (lu[b] - lu[a]) / (lt[b] - lt[a]) * (x - lt[b]);
            if (y < std::log(policy.knee_ratio) + predicted) {
                break;
            }
        }
        ts.push_back(t);
        lt.push_back(x);
        lu.push_back(y);
    }
    if (lt.size() < policy.min_points) {
        throw AnalysisError("fit_slope: " + std::to_string(lt.size()) + " points in fit window, need " +
                            std::to_string(policy.min_points));
    }
    const auto count = static_cast<double>(lt.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        mx += lt[i];
        my += lu[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        sxx += (lt[i] - mx) * (lt[i] - mx);
        sxy += (lt[i] - mx) * (lu[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        const double r = lu[i] - (my + fit.slope * (lt[i] - mx));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    fit.t_min = ts.front();
    fit.t_max = ts.back();
    fit.points = lt.size();
    return fit;
}

inline SlopeFit fit_slope(const LightCone &lc, const Envelope &e, const WindowPolicy &policy = {}) {
    const double t_end = policy.knee == KneeRule::Boundary
                             ? boundary_reach_time(lc.values, lc.spec.dt, policy.edge_fraction)
                             : std::numeric_limits<double>::infinity();
    return fit_slope(e.temporal, lc.spec.dt, policy, t_end);
}

enum class PhaseLabel { Ballistic, Diffusive, Localized, Crossover };

inline std::string to_string(PhaseLabel l) {
    switch (l) {
        case PhaseLabel::Ballistic:
            return "ballistic";
        case PhaseLabel::Diffusive:
            return "diffusive";
        case PhaseLabel::Localized:
            return "localized";
        case PhaseLabel::Crossover:
            return "crossover";
    }
    return "crossover";
}

/// localized: m < localized_below; diffusive: diffusive_low <= m <= diffusive_high;
/// ballistic: m > ballistic_above; crossover otherwise.
struct ClassificationBands {
    double localized_below = 0.2;
    double diffusive_low = 0.35;
    double diffusive_high = 0.65;
    double ballistic_above = 0.8;

    void validate() const {
        if (!(localized_below <= diffusive_low && diffusive_low <= diffusive_high &&
              diffusive_high <= ballistic_above)) {
            throw ArgumentError("classification bands must be ordered");
        }
    }
};

inline PhaseLabel classify(double m, const ClassificationBands &bands = {}) {
    if (!std::isfinite(m)) {
        throw ArgumentError("classify: slope must be finite");
    }
    if (m < bands.localized_below) return PhaseLabel::Localized;
    if (m >= bands.diffusive_low && m <= bands.diffusive_high) return PhaseLabel::Diffusive;
    if (m > bands.ballistic_above) return PhaseLabel::Ballistic;
    return PhaseLabel::Crossover;
}

struct PhasePoint {
    double mean_strength = 0.0;
    double delta = 0.0;
    SlopeFit fit;
    PhaseLabel label = PhaseLabel::Crossover;
};

inline PhasePoint analyze(const LightCone &lc, const WindowPolicy &window = {},
                          const ClassificationBands &bands = {}) {
    const Envelope e = envelope(lc);
    PhasePoint pt;
    pt.mean_strength = lc.spec.mean_strength;
    pt.delta = lc.spec.fluctuation;
    pt.fit = fit_slope(lc, e, window);
    pt.label = classify(pt.fit.slope, bands);
    return pt;
}

struct PhaseDiagramRequest {
    DisorderSpec base;  // model, dt, seed and field flag; strength and fluctuation are swept
    std::vector<double> mean_strengths;
    std::vector<double> deltas;
    int n = 0;
    PauliString observable;
    LightConeOptions lightcone;
    WindowPolicy window;
    ClassificationBands bands;
};

/// One PhasePoint per (delta, mean_strength) cell, delta-major. Every realization of every
/// cell is an independent task; reduction runs in index order afterwards.
inline std::vector<PhasePoint> phase_diagram(const PhaseDiagramRequest &req) {
    if (req.mean_strengths.empty() || req.deltas.empty()) {
        throw ArgumentError("phase_diagram: empty parameter grid");
    }
    if (req.lightcone.steps == 0 || req.lightcone.realizations == 0) {
        throw ArgumentError("phase_diagram: need at least one step and one realization");
    }
    req.bands.validate();
    const std::size_t cols = req.mean_strengths.size();
    const std::size_t cells = cols * req.deltas.size();
    const std::size_t reps = req.lightcone.realizations;
    std::vector<DisorderSpec> specs(cells, req.base);
    for (std::size_t c = 0; c < cells; ++c) {
        specs[c].mean_strength = req.mean_strengths[c % cols];
        specs[c].fluctuation = req.deltas[c / cols];
        specs[c].validate();
    }
    std::vector<Matrix> grids(cells * reps);
    parallel_for(grids.size(), req.lightcone.threads, [&](std::size_t task) {
        grids[task] = realization_grid(specs[task / reps], req.n, req.observable, req.lightcone.steps,
                                       req.lightcone.probe, task % reps);
    });
    std::vector<PhasePoint> out;
    out.reserve(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        const std::vector<Matrix> mine(grids.begin() + static_cast<std::ptrdiff_t>(c * reps),
                                       grids.begin() + static_cast<std::ptrdiff_t>((c + 1) * reps));
        const LightCone lc{geometric_mean_grid(mine, req.lightcone.floor), specs[c], req.n,
                           pauli_label(req.observable), req.lightcone.probe, reps};
        out.push_back(analyze(lc, req.window, req.bands));
    }
    return out;
}

/// Shortest round-trip decimal form; independent of locale and stream state.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) {
        throw NumericError("format_number: conversion failed");
    }
    return std::string(buf, res.ptr);
}

inline void write_comment_lines(std::ostream &out, const std::vector<std::string> &lines) {
    for (const auto &line : lines) {
        out << "# " << line << '\n';
    }
}

inline std::vector<std::string> lightcone_metadata(const LightCone &lc) {
    return {"model=" + to_string(lc.spec.model), "n=" + std::to_string(lc.n),
            "seed=" + std::to_string(lc.spec.seed), "dt=" + format_number(lc.spec.dt),
            "mean_strength=" + format_number(lc.spec.mean_strength),
            "fluctuation=" + format_number(lc.spec.fluctuation), "observable=" + lc.observable,
            "probe=" + to_string(lc.probe), "realizations=" + std::to_string(lc.realizations)};
}

inline constexpr const char *kLightconeColumns = "site,step,time,value";
inline constexpr const char *kPhaseColumns = "mean_strength,delta,slope,residual,label,t_min,t_max";

/// Comment header, column line, then one row per (step, site), step-major.
inline void write_lightcone_csv(std::ostream &out, const LightCone &lc, const std::vector<std::string> &extra = {}) {
    write_comment_lines(out, extra);
    write_comment_lines(out, lightcone_metadata(lc));
    out << kLightconeColumns << '\n';
    for (std::size_t k = 1; k <= lc.steps(); ++k) {
        const std::string step = std::to_string(k);
        const std::string t = format_number(lc.time(k));
        for (int s = 1; s <= lc.n; ++s) {
            out << s << ',' << step << ',' << t << ',' << format_number(lc.value(s, k)) << '\n';
        }
    }
}

inline void write_phase_csv(std::ostream &out, const std::vector<PhasePoint> &points,
                            const std::vector<std::string> &header = {}) {
    write_comment_lines(out, header);
    out << kPhaseColumns << '\n';
    for (const auto &p : points) {
        out << format_number(p.mean_strength) << ',' << format_number(p.delta) << ',' << format_number(p.fit.slope)
            << ',' << format_number(p.fit.residual) << ',' << to_string(p.label) << ','
            << format_number(p.fit.t_min) << ',' << format_number(p.fit.t_max) << '\n';
    }
}

inline constexpr const char *kEnvelopeColumns = "component,index,value";

/// Principal components and spectrum. temporal is indexed by step, spatial by site,
/// spectrum by singular-value rank (all one-based).
inline void write_envelope_csv(std::ostream &out, const Envelope &e, const std::vector<std::string> &header = {}) {
    write_comment_lines(out, header);
    out << kEnvelopeColumns << '\n';
    for (std::size_t i = 0; i < e.temporal.size(); ++i) {
        out << "temporal," << i + 1 << ',' << format_number(e.temporal[i]) << '\n';
    }
    for (std::size_t i = 0; i < e.spatial.size(); ++i) {
        out << "spatial," << i + 1 << ',' << format_number(e.spatial[i]) << '\n';
    }
    for (std::size_t i = 0; i < e.spectrum.size(); ++i) {
        out << "spectrum," << i + 1 << ',' << format_number(e.spectrum[i]) << '\n';
    }
}

}  // namespace mgloc

#endif  // MGLOC_ANALYSIS_HPP
