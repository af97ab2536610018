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

#ifndef MGLOC_TRUNCATION_HPP
#define MGLOC_TRUNCATION_HPP

/// Error certificate for truncating a Heisenberg-evolved observable to a region.
///
/// Depolarizing the qubits in S changes <U^dag B U> by at most
/// sum_{s in S} sqrt(n_s . M_s . n_s) on average over any product basis whose
/// Bloch axes are orthogonal to the probe axes n_s.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mgloc/errors.hpp"
#include "mgloc/evolution.hpp"
#include "mgloc/majorana.hpp"
#include "mgloc/scrambling.hpp"

namespace mgloc {

struct TruncationReport {
    std::vector<int> sites;
    double bound = 0.0;
    std::vector<double> per_site_terms;
    std::optional<double> markov_threshold;
    std::optional<double> markov_fraction_bound;
};

inline Axis normalized(const Axis &a) {
    const double norm = std::sqrt(dot(a, a));
    return {a[0] / norm, a[1] / norm, a[2] / norm};
}

inline Axis cross(const Axis &a, const Axis &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Deterministic unit vector orthogonal to `axis`: Gram-Schmidt on the coordinate axis
/// least aligned with it (ties go to x, then y). z maps to x, x maps to y.
inline Axis default_perpendicular(const Axis &axis) {
    std::size_t pick = 0;
    for (std::size_t k = 1; k < 3; ++k) {
        if (std::abs(axis[k]) < std::abs(axis[pick])) {
            pick = k;
        }
    }
    Axis e{0.0, 0.0, 0.0};
    e[pick] = 1.0;
    const double d = dot(e, axis);
    return normalized({e[0] - d * axis[0], e[1] - d * axis[1], e[2] - d * axis[2]});
}

/// Per-qubit Bloch axes of the averaging basis: orthogonal to the probe axis on truncated
/// sites, and default_perpendicular(z) = x on all others.
inline std::vector<Axis> averaging_basis(int n, const std::vector<int> &sites, const std::vector<Axis> &axes) {
    std::vector<Axis> out(static_cast<std::size_t>(n), default_perpendicular(kAxisZ));
    for (std::size_t k = 0; k < sites.size(); ++k) {
        out[static_cast<std::size_t>(sites[k] - 1)] = default_perpendicular(axes[k]);
    }
    return out;
}

inline TruncationReport truncation_bound(const Propagator &p, const PauliString &b, const std::vector<int> &sites,
                                         const std::vector<Axis> &axes) {
    if (sites.size() != axes.size()) {
        throw ArgumentError("truncation_bound: need one probe axis per truncated site");
    }
    if (std::set<int>(sites.begin(), sites.end()).size() != sites.size()) {
        throw ArgumentError("truncation_bound: truncated sites must be distinct");
    }
    for (std::size_t k = 0; k < sites.size(); ++k) {
        require_site(sites[k], b.n(), "truncation_bound");
        require_unit(axes[k], "truncation_bound");
    }
    TruncationReport report;
    report.sites = sites;
    if (sites.empty()) {
        return report;
    }
    const SnapshotOto oto(p, b);
    for (std::size_t k = 0; k < sites.size(); ++k) {
        const double q = oto_value(oto.matrix(sites[k]), axes[k]);
        const double term = std::sqrt(std::max(0.0, q));
        report.per_site_terms.push_back(term);
        report.bound += term;
    }
    return report;
}

/// Markov bound on the fraction of basis states whose expectation shifts by at least delta.
inline double markov_fraction(const TruncationReport &report, double delta) {
    if (!(delta > 0.0)) {
        throw ArgumentError("markov_fraction: threshold must be positive");
    }
    return std::min(1.0, report.bound / delta);
}

inline TruncationReport with_markov(TruncationReport report, double delta) {
    report.markov_fraction_bound = markov_fraction(report, delta);
    report.markov_threshold = delta;
    return report;
}

/// Minimizes n . M . n over unit n orthogonal to `input_axis` by diagonalizing M
/// restricted to that plane. Returns the minimizing axis and the minimum.
inline std::pair<Axis, double> optimize_probe_axis(const OtoMatrix &m, const Axis &input_axis) {
    require_unit(input_axis, "optimize_probe_axis");
    const Axis e1 = default_perpendicular(input_axis);
    const Axis e2 = normalized(cross(input_axis, e1));
    auto form = [&m](const Axis &a, const Axis &b) {
        double acc = 0.0;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                acc += a[static_cast<std::size_t>(r)] * m(r, c) * b[static_cast<std::size_t>(c)];
            }
        }
        return acc;
    };
    const double a = form(e1, e1);
    const double d = form(e2, e2);
    const double b = 0.5 * (form(e1, e2) + form(e2, e1));
    // Smallest eigenpair of [[a, b], [b, d]].
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), b);
    const double lambda = mean - radius;
    double c1 = 1.0;
    double c2 = 0.0;
    if (radius > 0.0) {
        // (A - lambda I) v = 0; pick the better-conditioned row.
        if (std::abs(a - lambda) >= std::abs(d - lambda)) {
            c1 = -b;
            c2 = a - lambda;
        } else {
            c1 = d - lambda;
            c2 = -b;
        }
        const double nrm = std::hypot(c1, c2);
        c1 /= nrm;
        c2 /= nrm;
    }
    const Axis axis = normalized({c1 * e1[0] + c2 * e2[0], c1 * e1[1] + c2 * e2[1], c1 * e1[2] + c2 * e2[2]});
    return {axis, std::min(lambda, form(axis, axis))};
}

/// Structured text records, one `key=value` line per field.
inline std::string to_records(const TruncationReport &r) {
    std::ostringstream out;
    out.precision(17);
    out << "sites=";
    for (std::size_t k = 0; k < r.sites.size(); ++k) {
        out << (k ? "," : "") << r.sites[k];
    }
    out << "\nbound=" << r.bound << "\n";
    for (std::size_t k = 0; k < r.per_site_terms.size(); ++k) {
        out << "term site=" << r.sites[k] << " value=" << r.per_site_terms[k] << "\n";
    }
    if (r.markov_threshold) {
        out << "markov_threshold=" << *r.markov_threshold << "\n";
        out << "markov_fraction_bound=" << *r.markov_fraction_bound << "\n";
    }
    return out.str();
}

}  // namespace mgloc

#endif  // MGLOC_TRUNCATION_HPP
