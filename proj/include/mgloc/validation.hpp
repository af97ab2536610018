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

#ifndef MGLOC_VALIDATION_HPP
#define MGLOC_VALIDATION_HPP

/// Oracle-equivalence suites behind `mgloc validate`. Each instance draws from its own
/// seed so a failure can be replayed in isolation.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mgloc/evolution.hpp"
#include "mgloc/majorana.hpp"
#include "mgloc/oracle.hpp"
#include "mgloc/scrambling.hpp"
#include "mgloc/truncation.hpp"

namespace mgloc::validation {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t instances = 0;
    double max_error = 0.0;
    std::string message;  // first failure, with its instance seed
};

enum class Level { Quick, Full };

inline std::uint64_t instance_seed(std::uint64_t base, int n, std::size_t i) {
    return CounterRng::mix(base ^ (static_cast<std::uint64_t>(n) << 32) ^ i);
}

/// Random piecewise-constant schedule: 1 to 4 segments, couplings uniform on [-2, 2].
inline std::vector<XYCouplings> random_schedule(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    std::uniform_int_distribution<int> segments(1, 4);
    std::vector<XYCouplings> schedule(static_cast<std::size_t>(segments(rng)), XYCouplings::zero(n));
    for (auto &c : schedule) {
        for (double &v : c.hop) v = coupling(rng);
        for (double &v : c.field) v = coupling(rng);
    }
    return schedule;
}

inline double random_dt(std::mt19937_64 &rng) {
    return std::uniform_real_distribution<double>(0.05, 0.6)(rng);
}

/// Single-mode propagator and dense unitary for the same random schedule.
struct Instance {
    Matrix u;
    oracle::DenseOperator dense;
};

inline Instance random_instance(int n, std::mt19937_64 &rng) {
    const auto schedule = random_schedule(n, rng);
    const double dt = random_dt(rng);
    return {evolve_schedule(schedule, n, dt).back().u, oracle::dense_evolve(schedule, n, dt)};
}

inline PauliString random_site_pauli(int n, std::mt19937_64 &rng, bool allow_y = false) {
    const int site = std::uniform_int_distribution<int>(1, n)(rng);
    const int kind = std::uniform_int_distribution<int>(0, allow_y ? 2 : 1)(rng);
    return kind == 0 ? pauli_x(site, n) : kind == 1 ? pauli_z(site, n) : pauli_y(site, n);
}

namespace detail {

inline void record(SuiteResult &r, double err, double tol, const std::string &where) {
    r.max_error = std::max(r.max_error, err);
    if (r.passed && !(err <= tol)) {
        r.passed = false;
        r.message = where + ": error " + std::to_string(err) + " exceeds " + std::to_string(tol);
    }
}

inline std::string seed_tag(std::uint64_t seed) {
    return "instance seed " + std::to_string(seed);
}

}  // namespace detail

inline SuiteResult generator_suite(const oracle::GeneratorFn &gen = [](const XYCouplings &c) { return generator(c); }) {
    SuiteResult r{"generator self-test"};
    const auto st = oracle::generator_self_test(gen);
    r.instances = 9;
    r.passed = st.ok;
    r.max_error = st.max_error;
    r.message = st.message;
    return r;
}

/// OTO of single-site Pauli pairs against dense commutator norms.
inline SuiteResult pauli_pair_suite(int n_min, int n_max, std::size_t per_n, std::uint64_t base = 101,
                                    double tol = 1e-9) {
    SuiteResult r{"pauli-pair OTO"};
    for (int n = n_min; n <= n_max; ++n) {
        for (std::size_t i = 0; i < per_n; ++i) {
            const auto seed = instance_seed(base, n, i);
            std::mt19937_64 rng(seed);
            const Instance inst = random_instance(n, rng);
            const PauliString a = random_site_pauli(n, rng);
            const PauliString b = random_site_pauli(n, rng);
            const double got = oto_pauli_pair(inst.u, a, b);
            const double want = oracle::dense_oto(inst.dense, oracle::dense_pauli(a), oracle::dense_pauli(b));
            detail::record(r, std::abs(got - want), tol, "n=" + std::to_string(n) + " " + detail::seed_tag(seed));
            ++r.instances;
        }
    }
    return r;
}

/// det(u_{alpha beta}) against the dense coefficient of c_beta in U^dag c_alpha U, for
/// every pair of equal-degree configurations.
inline SuiteResult amplitude_suite(int n_min, int n_max, std::uint64_t base = 202, double tol = 1e-9) {
    SuiteResult r{"transition amplitudes"};
    for (int n = n_min; n <= n_max; ++n) {
        const auto seed = instance_seed(base, n, 0);
        std::mt19937_64 rng(seed);
        const Instance inst = random_instance(n, rng);
        const int modes = 2 * n;
        std::vector<MajoranaTuple> configs;
        std::vector<oracle::DenseOperator> dense;
        for (std::uint32_t mask = 0; mask < (1u << modes); ++mask) {
            std::vector<int> m;
            for (int k = 0; k < modes; ++k) {
                if (mask & (1u << k)) m.push_back(k + 1);
            }
            configs.emplace_back(m, n);
            dense.push_back(oracle::configuration(configs.back()));
        }
        for (std::size_t a = 0; a < configs.size(); ++a) {
            const oracle::DenseOperator evolved = oracle::heisenberg(inst.dense, dense[a]);
            for (std::size_t b = 0; b < configs.size(); ++b) {
                if (configs[a].degree() != configs[b].degree()) continue;
                const double got = transition_amplitude(inst.u, configs[a], configs[b]);
                const oracle::cplx want = oracle::coefficient(dense[b], evolved);
                const double err = std::abs(oracle::cplx(got, 0.0) - want);
                detail::record(r, err, tol,
                               "n=" + std::to_string(n) + " alpha=" + configs[a].str() + " beta=" + configs[b].str() +
                                   " " + detail::seed_tag(seed));
                ++r.instances;
            }
        }
    }
    return r;
}

/// Explicit subset enumeration for the bordered-determinant sums.
inline double brute_force_sum(const Matrix &u, const Matrix &v, const MajoranaTuple &alpha, const MajoranaTuple &s,
                              const std::vector<int> &b_left, const std::vector<int> &b_right, int parity) {
    const std::vector<int> b = [&] {
        std::vector<int> out = b_left;
        out.insert(out.end(), b_right.begin(), b_right.end());
        return out;
    }();
    if (s.degree() > alpha.degree()) return 0.0;
    const std::size_t want = alpha.degree() - s.degree();
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << b.size()); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != want) continue;
        std::vector<int> cols = s.modes();
        int right = 0;
        for (std::size_t q = 0; q < b.size(); ++q) {
            if (mask & (1u << q)) {
                cols.push_back(b[q]);
                right += q >= b_left.size() ? 1 : 0;
            }
        }
        if (parity >= 0 && right % 2 != parity) continue;
        const auto beta = MajoranaTuple::from_unsorted(cols, alpha.n());
        total += determinant(submatrix(u, alpha, beta)) * determinant(submatrix(v, alpha, beta));
    }
    return total;
}

/// Bordered-determinant sums against subset enumeration on random square matrices of size
/// 2..8, plus the S = empty reduction and the even + odd = full identity.
inline SuiteResult cauchy_binet_suite(std::size_t instances, std::uint64_t base = 303, double tol = 1e-10,
                                      double forced_tol = 1e-12) {
    SuiteResult r{"bordered Cauchy-Binet sums"};
    for (std::size_t i = 0; i < instances; ++i) {
        const auto seed = instance_seed(base, 0, i);
        std::mt19937_64 rng(seed);
        const int n = std::uniform_int_distribution<int>(1, 4)(rng);
        const int modes = 2 * n;
        std::normal_distribution<double> gauss;
        Matrix u(static_cast<std::size_t>(modes), static_cast<std::size_t>(modes));
        Matrix v(u.rows(), u.cols());
        for (std::size_t a = 0; a < u.rows(); ++a)
            for (std::size_t c = 0; c < u.cols(); ++c) u(a, c) = gauss(rng);
        for (std::size_t a = 0; a < v.rows(); ++a)
            for (std::size_t c = 0; c < v.cols(); ++c) v(a, c) = gauss(rng);
        // Each mode lands in alpha or not, and independently in S, B_left, B_right or nowhere.
        std::vector<int> alpha;
        std::vector<int> s;
        std::vector<int> bl;
        std::vector<int> br;
        std::uniform_int_distribution<int> coin(0, 1);
        std::uniform_int_distribution<int> bucket(0, 4);
        for (int m = 1; m <= modes; ++m) {
            if (coin(rng)) alpha.push_back(m);
            switch (bucket(rng)) {
                case 0:
                    s.push_back(m);
                    break;
                case 1:
                case 2:
                    bl.push_back(m);
                    break;
                case 3:
                    br.push_back(m);
                    break;
                default:
                    break;
            }
        }
        if (alpha.empty()) alpha.push_back(std::uniform_int_distribution<int>(1, modes)(rng));
        const MajoranaTuple ta(alpha, n);
        const MajoranaTuple ts(s, n);
        const MajoranaTuple tl(bl, n);
        const MajoranaTuple tr(br, n);
        const MajoranaTuple tb = tl.union_with(tr);
        const std::string where = "size " + std::to_string(modes) + " " + detail::seed_tag(seed);

        const double full = modified_cauchy_binet(u, v, ta, ts, tb);
        detail::record(r, std::abs(full - brute_force_sum(u, v, ta, ts, bl, br, -1)), tol, "full sum " + where);
        const double even = fixed_parity_sum(u, v, ta, ts, tl, tr, 0);
        const double odd = fixed_parity_sum(u, v, ta, ts, tl, tr, 1);
        detail::record(r, std::abs(even - brute_force_sum(u, v, ta, ts, bl, br, 0)), tol, "even sum " + where);
        detail::record(r, std::abs(odd - brute_force_sum(u, v, ta, ts, bl, br, 1)), tol, "odd sum " + where);
        detail::record(r, std::abs(even + odd - full), forced_tol, "even+odd identity " + where);

        const MajoranaTuple empty({}, n);
        const Matrix ua = submatrix(u, ta, tb);
        const Matrix va = submatrix(v, ta, tb);
        const double reduced = determinant(multiply_transposed(ua, va));
        detail::record(r, std::abs(modified_cauchy_binet(u, v, ta, empty, tb) - reduced), forced_tol,
                       "empty-S reduction " + where);
        ++r.instances;
    }
    return r;
}

/// Every entry of M_s against polarization of dense commutator norms; xz, yz must vanish
/// and M_s must be positive semidefinite.
inline SuiteResult oto_matrix_suite(int n_min, int n_max, std::size_t per_n, std::uint64_t base = 404,
                                    double tol = 1e-9) {
    SuiteResult r{"single-site OTO matrix"};
    const double h = 1.0 / std::sqrt(2.0);
    for (int n = n_min; n <= n_max; ++n) {
        for (std::size_t i = 0; i < per_n; ++i) {
            const auto seed = instance_seed(base, n, i);
            std::mt19937_64 rng(seed);
            const Instance inst = random_instance(n, rng);
            const PauliString b = random_site_pauli(n, rng, true);
            const oracle::DenseOperator db = oracle::dense_pauli(b);
            const SnapshotOto snap(inst.u, b);
            for (int s = 1; s <= n; ++s) {
                const std::string where =
                    "n=" + std::to_string(n) + " s=" + std::to_string(s) + " " + detail::seed_tag(seed);
                const OtoMatrix m = snap.matrix(s);
                const auto sx = oracle::site_pauli('X', s, n);
                const auto sy = oracle::site_pauli('Y', s, n);
                const auto sz = oracle::site_pauli('Z', s, n);
                const double xx = oracle::dense_oto(inst.dense, sx, db);
                const double yy = oracle::dense_oto(inst.dense, sy, db);
                const double zz = oracle::dense_oto(inst.dense, sz, db);
                const double xy = oracle::dense_oto(inst.dense, h * (sx + sy), db) - 0.5 * (xx + yy);
                const double xz = oracle::dense_oto(inst.dense, h * (sx + sz), db) - 0.5 * (xx + zz);
                const double yz = oracle::dense_oto(inst.dense, h * (sy + sz), db) - 0.5 * (yy + zz);
                detail::record(r, std::abs(m(0, 0) - xx), tol, "M_xx " + where);
                detail::record(r, std::abs(m(1, 1) - yy), tol, "M_yy " + where);
                detail::record(r, std::abs(m(2, 2) - zz), tol, "M_zz " + where);
                detail::record(r, std::abs(m(0, 1) - xy), tol, "M_xy " + where);
                detail::record(r, std::abs(xz), tol, "oracle M_xz " + where);
                detail::record(r, std::abs(yz), tol, "oracle M_yz " + where);
                detail::record(r, std::abs(m(0, 2)) + std::abs(m(1, 2)) + std::abs(m(2, 0)) + std::abs(m(2, 1)), 0.0,
                               "structural zero " + where);
                Eigen::Matrix3d dm;
                for (int a = 0; a < 3; ++a)
                    for (int c = 0; c < 3; ++c) dm(a, c) = m(a, c);
                const double low = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(dm).eigenvalues()(0);
                detail::record(r, std::max(0.0, -low), tol, "PSD " + where);
            }
            ++r.instances;
        }
    }
    return r;
}

/// Truncation certificate against the exact product-basis average on n qubits.
inline SuiteResult truncation_suite(int n, std::size_t instances, std::uint64_t base = 505, double slack = 1e-10) {
    SuiteResult r{"truncation certificate"};
    for (std::size_t i = 0; i < instances; ++i) {
        const auto seed = instance_seed(base, n, i);
        std::mt19937_64 rng(seed);
        const Instance inst = random_instance(n, rng);
        const PauliString b = random_site_pauli(n, rng, true);
        std::vector<int> sites;
        while (sites.empty()) {
            for (int s = 1; s <= n; ++s) {
                if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) sites.push_back(s);
            }
        }
        std::normal_distribution<double> gauss;
        std::vector<Axis> axes;
        for (std::size_t k = 0; k < sites.size(); ++k) {
            axes.push_back(normalized({gauss(rng), gauss(rng), gauss(rng)}));
        }
        const Propagator p{inst.u, 0.0, n};
        const TruncationReport report = truncation_bound(p, b, sites, axes);
        const auto avg = oracle::dense_truncation_average(inst.dense, oracle::dense_pauli(b), sites,
                                                          averaging_basis(n, sites, axes));
        const std::string where = detail::seed_tag(seed);
        detail::record(r, avg.mean - report.bound, slack, "average exceeds bound " + where);
        for (double delta : {0.05, 0.1, 0.25, 0.5, 1.0}) {
            detail::record(r, avg.fraction_at_least(delta) - markov_fraction(report, delta), 0.0,
                           "Markov fraction at delta=" + std::to_string(delta) + " " + where);
        }
        ++r.instances;
    }
    // Errors here are signed violations; report the worst margin as 0 when none occurred.
    r.max_error = std::max(0.0, r.max_error);
    return r;
}

inline std::vector<SuiteResult> run_all(Level level, const oracle::GeneratorFn &gen = [](const XYCouplings &c) {
    return generator(c);
}) {
    const bool full = level == Level::Full;
    std::vector<SuiteResult> out;
    out.push_back(generator_suite(gen));
    if (!out.back().passed) {
        return out;
    }
    out.push_back(pauli_pair_suite(2, full ? 6 : 4, full ? 100 : 20));
    out.push_back(amplitude_suite(2, full ? 4 : 3));
    out.push_back(cauchy_binet_suite(full ? 200 : 40));
    out.push_back(oto_matrix_suite(3, full ? 6 : 4, full ? 50 : 10));
    out.push_back(truncation_suite(full ? 5 : 4, full ? 50 : 10));
    return out;
}

}  // namespace mgloc::validation

#endif  // MGLOC_VALIDATION_HPP
