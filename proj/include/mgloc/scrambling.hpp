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

#ifndef MGLOC_SCRAMBLING_HPP
#define MGLOC_SCRAMBLING_HPP

/// Determinant formulas for operator spreading under matchgate evolution.
///
/// Everything here works on the 2n x 2n propagator u; no 2^n-dimensional
/// operator is ever formed. The central quantity is
///
///     ||[A, U^dag B U]||_F^2 / 2^{n+2} = (1 - (-1)^{|a||e|} det[u_{a,:} (I - 2 P_e) u_{a,:}^T]) / 2
///
/// for Pauli strings A ~ C_e and B ~ C_a.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mgloc/errors.hpp"
#include "mgloc/evolution.hpp"
#include "mgloc/linalg.hpp"
#include "mgloc/majorana.hpp"

namespace mgloc {

/// Coefficient of C_beta in U^dag C_alpha U, i.e. det(u_{alpha beta}).
inline double transition_amplitude(const Matrix &u, const MajoranaTuple &alpha, const MajoranaTuple &beta) {
    if (alpha.degree() != beta.degree()) {
        throw ArgumentError("transition_amplitude: |alpha| = " + std::to_string(alpha.degree()) +
                            " but |beta| = " + std::to_string(beta.degree()));
    }
    return determinant(submatrix(u, alpha, beta));
}

inline double transition_amplitude(const Propagator &p, const MajoranaTuple &alpha, const MajoranaTuple &beta) {
    return transition_amplitude(p.u, alpha, beta);
}

namespace detail {

inline int parity_sign(std::size_t k) {
    return k % 2 == 0 ? 1 : -1;
}

/// rows * diag(reflect) * rowsᵀ, with `reflect` given per column of `rows`.
inline Matrix reflected_gram(const Matrix &rows, const std::vector<double> &reflect) {
    Matrix scaled = rows;
    for (std::size_t r = 0; r < scaled.rows(); ++r) {
        auto row = scaled.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            row[c] *= reflect[c];
        }
    }
    return multiply_transposed(scaled, rows);
}

inline void require_propagator_size(const Matrix &u, int n, const char *what) {
    if (!u.square() || u.rows() != static_cast<std::size_t>(2 * n)) {
        throw ArgumentError(std::string(what) + ": propagator is " + std::to_string(u.rows()) + "x" +
                            std::to_string(u.cols()) + " but operators act on " + std::to_string(n) + " qubits");
    }
}

}  // namespace detail

/// Normalized OTO correlator ||[A, U^dag B U]||^2 / 2^{n+2} for Pauli strings A, B, in [0, 1].
/// Cost is one |alpha| x 2n by 2n x |alpha| product plus one |alpha| x |alpha| determinant.
inline double oto_pauli_pair(const Matrix &u, const PauliString &a, const PauliString &b) {
    if (a.n() != b.n()) {
        throw ArgumentError("oto_pauli_pair: A acts on " + std::to_string(a.n()) + " qubits, B on " +
                            std::to_string(b.n()));
    }
    detail::require_propagator_size(u, b.n(), "oto_pauli_pair");
    const MajoranaTuple &alpha = b.tuple;
    const MajoranaTuple &eta = a.tuple;
    if (alpha.empty() || eta.empty()) {
        return 0.0;
    }
    const Matrix rows = submatrix(u, alpha, MajoranaTuple::full(b.n()));
    const double det = determinant(detail::reflected_gram(rows, ModeProjector{eta}.reflection_diagonal()));
    const int sign = detail::parity_sign(alpha.degree() * eta.degree());
    return 0.5 * (1.0 - sign * det);
}

inline double oto_pauli_pair(const Propagator &p, const PauliString &a, const PauliString &b) {
    return oto_pauli_pair(p.u, a, b);
}

namespace detail {

/// (-1)^{|S|} det [[0, v_{alpha S}ᵀ], [u_{alpha S}, u_{alpha B} D v_{alpha B}ᵀ]] with D = diag(reflect over B).
inline double bordered_determinant(const Matrix &u, const Matrix &v, const MajoranaTuple &alpha,
                                   const MajoranaTuple &s, const std::vector<int> &b,
                                   const std::vector<double> &reflect) {
    const std::size_t ns = s.degree();
    const std::size_t na = alpha.degree();
    Matrix big(ns + na, ns + na);
    for (std::size_t i = 0; i < ns; ++i) {
        const auto col = static_cast<std::size_t>(s[i] - 1);
        for (std::size_t j = 0; j < na; ++j) {
            const auto row = static_cast<std::size_t>(alpha[j] - 1);
            big(i, ns + j) = v.at(row, col);
            big(ns + j, i) = u.at(row, col);
        }
    }
    for (std::size_t j = 0; j < na; ++j) {
        const auto rj = static_cast<std::size_t>(alpha[j] - 1);
        for (std::size_t k = 0; k < na; ++k) {
            const auto rk = static_cast<std::size_t>(alpha[k] - 1);
            double acc = 0.0;
            for (std::size_t q = 0; q < b.size(); ++q) {
                const auto col = static_cast<std::size_t>(b[q] - 1);
                acc += u.at(rj, col) * reflect[q] * v.at(rk, col);
            }
            big(ns + j, ns + k) = acc;
        }
    }
    return parity_sign(ns) * determinant(std::move(big));
}

}  // namespace detail

/// Sum over beta in B with |beta| = |alpha| - |S| of det(u_{alpha, beta u S}) det(v_{alpha, beta u S}),
/// evaluated as a single bordered determinant.
inline double modified_cauchy_binet(const Matrix &u, const Matrix &v, const MajoranaTuple &alpha,
                                    const MajoranaTuple &s, const MajoranaTuple &b) {
    if (!s.disjoint(b)) {
        throw ArgumentError("modified_cauchy_binet: S " + s.str() + " overlaps B " + b.str());
    }
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw ShapeError("modified_cauchy_binet: u and v differ in shape");
    }
    return detail::bordered_determinant(u, v, alpha, s, b.modes(), std::vector<double>(b.degree(), 1.0));
}

/// Same sum as modified_cauchy_binet over B = (B_left, B_right), restricted to
/// |beta_right| = parity (mod 2). Columns are taken in the order (beta_left, S, beta_right);
/// the ordering sign appears in both factors and cancels.
inline double fixed_parity_sum(const Matrix &u, const Matrix &v, const MajoranaTuple &alpha, const MajoranaTuple &s,
                               const MajoranaTuple &b_left, const MajoranaTuple &b_right, int parity) {
    if (!s.disjoint(b_left) || !s.disjoint(b_right)) {
        throw ArgumentError("fixed_parity_sum: S overlaps B");
    }
    if (!b_left.disjoint(b_right)) {
        throw ArgumentError("fixed_parity_sum: B_left overlaps B_right");
    }
    if (parity != 0 && parity != 1) {
        throw ArgumentError("fixed_parity_sum: parity must be 0 or 1");
    }
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw ShapeError("fixed_parity_sum: u and v differ in shape");
    }
    std::vector<int> b = b_left.modes();
    b.insert(b.end(), b_right.begin(), b_right.end());
    std::vector<double> plain(b.size(), 1.0);
    std::vector<double> flipped(b.size(), 1.0);
    for (std::size_t q = b_left.degree(); q < b.size(); ++q) {
        flipped[q] = -1.0;
    }
    const double full = detail::bordered_determinant(u, v, alpha, s, b, plain);
    const double signed_sum = detail::bordered_determinant(u, v, alpha, s, b, flipped);
    return 0.5 * (full + (parity == 0 ? 1.0 : -1.0) * signed_sum);
}

using Axis = std::array<double, 3>;

inline constexpr Axis kAxisX{1.0, 0.0, 0.0};
inline constexpr Axis kAxisY{0.0, 1.0, 0.0};
inline constexpr Axis kAxisZ{0.0, 0.0, 1.0};

inline double dot(const Axis &a, const Axis &b) noexcept {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline void require_unit(const Axis &a, const char *what) {
    if (!(std::abs(std::sqrt(dot(a, a)) - 1.0) <= 1e-12)) {
        throw ArgumentError(std::string(what) + ": axis is not a unit vector");
    }
}

/// Quadratic form n -> n . M . n of the single-site OTO correlator, indexed x, y, z.
struct OtoMatrix {
    std::array<std::array<double, 3>, 3> entries{};
    int site = 0;
    double time = 0.0;

    double operator()(int r, int c) const noexcept {
        return entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
};

inline double oto_value(const OtoMatrix &m, const Axis &axis) {
    require_unit(axis, "oto_value");
    double acc = 0.0;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            acc += axis[static_cast<std::size_t>(r)] * m(r, c) * axis[static_cast<std::size_t>(c)];
        }
    }
    return acc;
}

/// Precomputes u_{alpha,:} for one propagator snapshot and one observable so that many
/// sites can be evaluated without repeating the row extraction.
class SnapshotOto {
   public:
    SnapshotOto(const Matrix &u, const PauliString &b) : alpha_(b.tuple), n_(b.n()) {
        detail::require_propagator_size(u, n_, "SnapshotOto");
        rows_ = submatrix(u, alpha_, MajoranaTuple::full(n_));
    }
    SnapshotOto(const Propagator &p, const PauliString &b) : SnapshotOto(p.u, b) {
        time_ = p.time;
    }

    int n() const noexcept {
        return n_;
    }

    /// ||[Z_s, B(t)]||^2 / 2^{n+2}. With orthonormal rows, det(I - 2 R R^T) over the two
    /// columns R of site s equals det(I_2 - 2 A), A = R^T R, so the value is
    /// tr A - 2 det A. This keeps full relative precision deep in the tails.
    double zz(int s) const {
        require_site(s, n_, "SnapshotOto::zz");
        if (alpha_.empty()) {
            return 0.0;
        }
        const auto a = static_cast<std::size_t>(2 * s - 2);
        const auto b = a + 1;
        double a11 = 0.0;
        double a22 = 0.0;
        double a12 = 0.0;
        for (std::size_t r = 0; r < rows_.rows(); ++r) {
            a11 += rows_(r, a) * rows_(r, a);
            a22 += rows_(r, b) * rows_(r, b);
            a12 += rows_(r, a) * rows_(r, b);
        }
        return a11 + a22 - 2.0 * (a11 * a22 - a12 * a12);
    }

    double xx(int s) const {
        require_site(s, n_, "SnapshotOto::xx");
        return diagonal(single_site_tuples(s, n_).eta_x);
    }

    double yy(int s) const {
        require_site(s, n_, "SnapshotOto::yy");
        return diagonal(single_site_tuples(s, n_).eta_y);
    }

    /// Off-diagonal M_xy from the bordered determinant with rows/columns (2s-1), (2s) and
    /// the remaining modes reflected to the right of site s.
    double xy(int s) const {
        require_site(s, n_, "SnapshotOto::xy");
        if (alpha_.empty()) {
            return 0.0;
        }
        const SiteModes modes = single_site_tuples(s, n_);
        const std::size_t na = alpha_.degree();
        Matrix big(na + 1, na + 1);
        const auto left = static_cast<std::size_t>(2 * s - 2);
        const auto right = left + 1;
        for (std::size_t j = 0; j < na; ++j) {
            big(0, j + 1) = rows_(j, right);
            big(j + 1, 0) = rows_(j, left);
        }
        std::vector<double> reflect(2 * static_cast<std::size_t>(n_), 0.0);
        for (int m : modes.outside_pair) {
            reflect[static_cast<std::size_t>(m - 1)] = m > 2 * s ? -1.0 : 1.0;
        }
        const Matrix block = detail::reflected_gram(rows_, reflect);
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t k = 0; k < na; ++k) {
                big(j + 1, k + 1) = block(j, k);
            }
        }
        return determinant(std::move(big));
    }

    OtoMatrix matrix(int s) const {
        OtoMatrix m;
        m.site = s;
        m.time = time_;
        const double mxx = xx(s);
        const double myy = yy(s);
        const double mzz = zz(s);
        const double mxy = xy(s);
        m.entries = {{{mxx, mxy, 0.0}, {mxy, myy, 0.0}, {0.0, 0.0, mzz}}};
        return m;
    }

   private:
    double diagonal(const MajoranaTuple &eta) const {
        if (alpha_.empty()) {
            return 0.0;
        }
        const double det = determinant(detail::reflected_gram(rows_, ModeProjector{eta}.reflection_diagonal()));
        return 0.5 * (1.0 - detail::parity_sign(alpha_.degree() * eta.degree()) * det);
    }

    MajoranaTuple alpha_;
    int n_;
    double time_ = 0.0;
    Matrix rows_;
};

/// Full single-site quadratic form M_s for observable B at site s.
inline OtoMatrix oto_matrix(const Propagator &p, const PauliString &b, int s) {
    return SnapshotOto(p, b).matrix(s);
}

inline OtoMatrix oto_matrix(const Matrix &u, const PauliString &b, int s) {
    return SnapshotOto(u, b).matrix(s);
}

}  // namespace mgloc

#endif  // MGLOC_SCRAMBLING_HPP
