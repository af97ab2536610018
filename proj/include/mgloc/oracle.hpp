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

#ifndef MGLOC_ORACLE_HPP
#define MGLOC_ORACLE_HPP

/// Brute-force 2^n-dimensional reference for small chains.
///
/// Nothing in here is used on the simulation path; it exists to check the
/// determinant formulas against explicit Heisenberg evolution.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mgloc/errors.hpp"
#include "mgloc/evolution.hpp"
#include "mgloc/linalg.hpp"
#include "mgloc/majorana.hpp"

namespace mgloc::oracle {

using DenseOperator = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 10;

inline void require_cap(int n, int cap, const char *what) {
    if (n < 1 || n > cap) {
        throw ResourceError(std::string(what) + ": " + std::to_string(n) + " qubits exceeds dense cap of " +
                            std::to_string(cap));
    }
}

inline std::size_t dim(int n) {
    return std::size_t{1} << n;
}

inline int qubits_of(const DenseOperator &op) {
    int n = 0;
    while ((Eigen::Index{1} << n) < op.rows()) {
        ++n;
    }
    if ((Eigen::Index{1} << n) != op.rows() || op.rows() != op.cols()) {
        throw ShapeError("oracle: operator dimension is not a power of two");
    }
    return n;
}

inline DenseOperator single_qubit(char letter) {
    DenseOperator p(2, 2);
    switch (letter) {
        case 'I':
            p << 1, 0, 0, 1;
            break;
        case 'X':
            p << 0, 1, 1, 0;
            break;
        case 'Y':
            p << 0, cplx(0, -1), cplx(0, 1), 0;
            break;
        case 'Z':
            p << 1, 0, 0, -1;
            break;
        default:
            throw ArgumentError("oracle::single_qubit: unknown letter");
    }
    return p;
}

inline DenseOperator kron(const DenseOperator &a, const DenseOperator &b) {
    DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Tensor product of single-qubit letters; qubit 1 is the most significant factor.
inline DenseOperator pauli_letters(const std::string &letters) {
    DenseOperator out = DenseOperator::Identity(1, 1);
    for (char c : letters) {
        out = kron(out, single_qubit(c));
    }
    return out;
}

/// Letter `letter` on `site` (one-based), identity elsewhere.
inline DenseOperator site_pauli(char letter, int site, int n) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(site - 1)] = letter;
    return pauli_letters(s);
}

/// Jordan-Wigner Majorana operator c_mu, mu in 1..2n.
inline DenseOperator majorana(int mu, int n) {
    require_cap(n, kMaxQubits, "oracle::majorana");
    if (mu < 1 || mu > 2 * n) {
        throw BoundsError("oracle::majorana: mode out of range");
    }
    const int k = (mu + 1) / 2;
    std::string s(static_cast<std::size_t>(n), 'I');
    for (int j = 1; j < k; ++j) {
        s[static_cast<std::size_t>(j - 1)] = 'Z';
    }
    s[static_cast<std::size_t>(k - 1)] = mu % 2 == 1 ? 'X' : 'Y';
    return pauli_letters(s);
}

/// C_alpha, the ordered product of Majorana operators.
inline DenseOperator configuration(const MajoranaTuple &alpha) {
    const int n = alpha.n();
    require_cap(n, kMaxQubits, "oracle::configuration");
    DenseOperator out = DenseOperator::Identity(static_cast<Eigen::Index>(dim(n)), static_cast<Eigen::Index>(dim(n)));
    for (int mu : alpha) {
        out = out * majorana(mu, n);
    }
    return out;
}

inline cplx i_power(int a) {
    static const cplx kPowers[] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    return kPowers[((a % 4) + 4) % 4];
}

/// Exact matrix of i^a C_alpha.
inline DenseOperator dense_pauli(const PauliString &ps, int cap = kMaxQubits) {
    require_cap(ps.n(), cap, "oracle::dense_pauli");
    return i_power(ps.phase_power) * configuration(ps.tuple);
}

inline DenseOperator hamiltonian(const XYCouplings &c) {
    c.validate();
    const int n = c.n();
    require_cap(n, kMaxQubits, "oracle::hamiltonian");
    const auto d = static_cast<Eigen::Index>(dim(n));
    DenseOperator h = DenseOperator::Zero(d, d);
    for (int j = 1; j < n; ++j) {
        const double mu = c.hop[static_cast<std::size_t>(j - 1)];
        h += 2.0 * mu * (site_pauli('X', j, n) * site_pauli('X', j + 1, n));
        h += 2.0 * mu * (site_pauli('Y', j, n) * site_pauli('Y', j + 1, n));
    }
    for (int j = 1; j <= n; ++j) {
        h += 2.0 * c.field[static_cast<std::size_t>(j - 1)] * site_pauli('Z', j, n);
    }
    return h;
}

/// exp(-i H t) from the eigendecomposition of the Hermitian H.
inline DenseOperator hermitian_evolution(const DenseOperator &h, double t) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> eig(h);
    if (eig.info() != Eigen::Success) {
        throw NumericError("oracle: Hermitian eigensolver failed");
    }
    Eigen::VectorXcd phases(eig.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(cplx(0.0, -eig.eigenvalues()(k) * t));
    }
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

/// U = U_K ... U_1 for segments applied in schedule order, U_k = exp(-i H_k dt).
inline DenseOperator dense_evolve(const std::vector<XYCouplings> &schedule, int n, double dt) {
    require_cap(n, kMaxQubits, "oracle::dense_evolve");
    const auto d = static_cast<Eigen::Index>(dim(n));
    DenseOperator u = DenseOperator::Identity(d, d);
    for (const auto &c : schedule) {
        if (c.n() != n) {
            throw ShapeError("oracle::dense_evolve: coupling size mismatch");
        }
        u = hermitian_evolution(hamiltonian(c), dt) * u;
    }
    return u;
}

inline DenseOperator heisenberg(const DenseOperator &u, const DenseOperator &b) {
    return u.adjoint() * b * u;
}

/// ||[A, U^dag B U]||_F^2 / 2^{n+2}.
inline double dense_oto(const DenseOperator &u, const DenseOperator &a, const DenseOperator &b) {
    if (u.rows() != a.rows() || u.rows() != b.rows()) {
        throw ShapeError("oracle::dense_oto: dimension mismatch");
    }
    const int n = qubits_of(u);
    const DenseOperator bt = heisenberg(u, b);
    const DenseOperator comm = a * bt - bt * a;
    return comm.squaredNorm() / std::ldexp(1.0, n + 2);
}

/// Hilbert-Schmidt coefficient tr(P^dag O) / 2^n of O on a unitary basis element P.
inline cplx coefficient(const DenseOperator &basis_element, const DenseOperator &op) {
    return (basis_element.adjoint() * op).trace() / static_cast<double>(basis_element.rows());
}

/// u_{mu nu} = tr(c_nu U^dag c_mu U) / 2^n.
inline Matrix single_mode_matrix(const DenseOperator &u, int n) {
    Matrix out(static_cast<std::size_t>(2 * n), static_cast<std::size_t>(2 * n));
    std::vector<DenseOperator> modes;
    for (int mu = 1; mu <= 2 * n; ++mu) {
        modes.push_back(majorana(mu, n));
    }
    for (int mu = 1; mu <= 2 * n; ++mu) {
        const DenseOperator evolved = heisenberg(u, modes[static_cast<std::size_t>(mu - 1)]);
        for (int nu = 1; nu <= 2 * n; ++nu) {
            out(static_cast<std::size_t>(mu - 1), static_cast<std::size_t>(nu - 1)) =
                coefficient(modes[static_cast<std::size_t>(nu - 1)], evolved).real();
        }
    }
    return out;
}

/// h_{mu nu} = coefficient of c_nu in i[H, c_mu], read off from dense commutators.
inline Matrix generator_from_commutators(const XYCouplings &c) {
    const int n = c.n();
    const DenseOperator h = hamiltonian(c);
    Matrix out(static_cast<std::size_t>(2 * n), static_cast<std::size_t>(2 * n));
    for (int mu = 1; mu <= 2 * n; ++mu) {
        const DenseOperator cm = majorana(mu, n);
        const DenseOperator flow = cplx(0, 1) * (h * cm - cm * h);
        for (int nu = 1; nu <= 2 * n; ++nu) {
            const cplx coef = coefficient(majorana(nu, n), flow);
            out(static_cast<std::size_t>(mu - 1), static_cast<std::size_t>(nu - 1)) = coef.real();
        }
    }
    return out;
}

struct SelfTestResult {
    bool ok = true;
    double max_error = 0.0;
    std::string message;
};

using GeneratorFn = std::function<Matrix(const XYCouplings &)>;

/// Compares a generator builder against dense commutator expansion on random couplings
/// for n = 1..max_n. The production builder is `mgloc::generator`.
inline SelfTestResult generator_self_test(const GeneratorFn &gen = [](const XYCouplings &c) { return generator(c); },
                                          int max_n = 3, std::uint64_t seed = 20240601, int trials = 3,
                                          double tolerance = 1e-12) {
    SelfTestResult result;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    for (int n = 1; n <= max_n; ++n) {
        for (int trial = 0; trial < trials; ++trial) {
            XYCouplings c = XYCouplings::zero(n);
            for (double &v : c.hop) {
                v = coupling(rng);
            }
            for (double &v : c.field) {
                v = coupling(rng);
            }
            const Matrix expected = generator_from_commutators(c);
            const Matrix got = gen(c);
            if (got.rows() != expected.rows() || got.cols() != expected.cols()) {
                result.ok = false;
                result.message = "generator self-test: wrong shape at n=" + std::to_string(n);
                return result;
            }
            const double err = (got - expected).frobenius_norm();
            result.max_error = std::max(result.max_error, err);
            if (!(err <= tolerance)) {
                result.ok = false;
                result.message = "generator self-test: mismatch " + std::to_string(err) + " at n=" +
                                 std::to_string(n) + " (seed " + std::to_string(seed) + ", trial " +
                                 std::to_string(trial) + ")";
                return result;
            }
        }
    }
    return result;
}

/// E_s(O) = (O + X O X + Y O Y + Z O Z) / 4.
inline DenseOperator depolarize(const DenseOperator &o, int site, int n) {
    DenseOperator out = o;
    for (char letter : {'X', 'Y', 'Z'}) {
        const DenseOperator p = site_pauli(letter, site, n);
        out += p * o * p;
    }
    return 0.25 * out;
}

/// Eigenvector of b . sigma with eigenvalue +1 (plus = true) or -1.
inline Eigen::Vector2cd bloch_state(const std::array<double, 3> &b, bool plus) {
    const double theta = std::acos(std::clamp(b[2], -1.0, 1.0));
    const double phi = std::atan2(b[1], b[0]);
    const cplx e = std::exp(cplx(0.0, phi));
    Eigen::Vector2cd v;
    if (plus) {
        v << std::cos(theta / 2), e * std::sin(theta / 2);
    } else {
        v << std::sin(theta / 2), -e * std::cos(theta / 2);
    }
    return v;
}

/// Product basis state with bit j of `index` (qubit 1 = most significant) choosing -axis.
inline Eigen::VectorXcd product_state(const std::vector<std::array<double, 3>> &axes, std::size_t index) {
    const int n = static_cast<int>(axes.size());
    Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
    for (int q = 0; q < n; ++q) {
        const bool minus = (index >> (n - 1 - q)) & 1u;
        const Eigen::Vector2cd s = bloch_state(axes[static_cast<std::size_t>(q)], !minus);
        Eigen::VectorXcd next(out.size() * 2);
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            next(2 * i) = out(i) * s(0);
            next(2 * i + 1) = out(i) * s(1);
        }
        out = std::move(next);
    }
    return out;
}

struct TruncationAverage {
    double mean = 0.0;
    std::vector<double> deviations;  // |<O> - <E(O)>| per basis state

    double fraction_at_least(double delta) const {
        if (deviations.empty()) {
            return 0.0;
        }
        std::size_t count = 0;
        for (double d : deviations) {
            if (d >= delta) {
                ++count;
            }
        }
        return static_cast<double>(count) / static_cast<double>(deviations.size());
    }
};

inline constexpr int kTruncationCap = 8;

/// Exact average over the product basis with per-site Bloch axes `basis_axes` of
/// |<O> - <(prod_{s in S} E_s)(O)>| where O = U^dag B U.
inline TruncationAverage dense_truncation_average(const DenseOperator &u, const DenseOperator &b,
                                                  const std::vector<int> &sites,
                                                  const std::vector<std::array<double, 3>> &basis_axes) {
    const int n = qubits_of(u);
    require_cap(n, kTruncationCap, "oracle::dense_truncation_average");
    if (static_cast<int>(basis_axes.size()) != n) {
        throw ShapeError("oracle::dense_truncation_average: need one basis axis per qubit");
    }
    const DenseOperator o = heisenberg(u, b);
    DenseOperator depolarized = o;
    for (int s : sites) {
        depolarized = depolarize(depolarized, s, n);
    }
    const DenseOperator diff = o - depolarized;
    TruncationAverage out;
    out.deviations.reserve(dim(n));
    double total = 0.0;
    for (std::size_t idx = 0; idx < dim(n); ++idx) {
        const Eigen::VectorXcd psi = product_state(basis_axes, idx);
        const double dev = std::abs(psi.dot(diff * psi));
        out.deviations.push_back(dev);
        total += dev;
    }
    out.mean = total / static_cast<double>(dim(n));
    return out;
}

}  // namespace mgloc::oracle

#endif  // MGLOC_ORACLE_HPP
