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

#ifndef MGLOC_LINALG_HPP
#define MGLOC_LINALG_HPP

/// Dense real linear algebra used throughout the simulator.
///
/// `Matrix` is a plain row-major value type. Products are delegated to Eigen's
/// blocked GEMM through zero-copy maps; everything else (LU determinant,
/// antisymmetric exponential, Jacobi SVD) is implemented here so that the
/// failure modes and tolerances are under our control.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mgloc/errors.hpp"

namespace mgloc {

class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    }
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw ShapeError("Matrix: entry count does not match rows*cols");
        }
    }
    /// Row-major nested initializer, e.g. `Matrix{{1, 2}, {3, 4}}`.
    Matrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &r : rows) {
            if (r.size() != cols_) {
                throw ShapeError("Matrix: ragged initializer");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            m(k, k) = 1.0;
        }
        return m;
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool square() const noexcept {
        return rows_ == cols_;
    }
    bool empty() const noexcept {
        return data_.empty();
    }

    double &operator()(std::size_t r, std::size_t c) noexcept {
        return data_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }
    double at(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) {
            throw BoundsError("Matrix::at: index out of range");
        }
        return (*this)(r, c);
    }

    std::span<double> row(std::size_t r) noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<const double> entries() const noexcept {
        return data_;
    }
    double *data() noexcept {
        return data_.data();
    }
    const double *data() const noexcept {
        return data_.data();
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    double frobenius_norm() const noexcept {
        double s = 0.0;
        for (double v : data_) {
            s += v * v;
        }
        return std::sqrt(s);
    }

    bool all_finite() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
    }

    Matrix &operator+=(const Matrix &o) {
        require_same_shape(o, "operator+=");
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        require_same_shape(o, "operator-=");
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    Matrix &operator*=(double s) noexcept {
        for (double &v : data_) {
            v *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) {
        a += b;
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        a -= b;
        return a;
    }
    friend Matrix operator*(Matrix a, double s) {
        a *= s;
        return a;
    }
    friend Matrix operator*(double s, Matrix a) {
        a *= s;
        return a;
    }
    friend bool operator==(const Matrix &, const Matrix &) = default;

   private:
    void require_same_shape(const Matrix &o, const char *what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw ShapeError(std::string("Matrix::") + what + ": shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

namespace detail {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Eigen::Map<const RowMajor> view(const Matrix &m) {
    return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}
inline Eigen::Map<RowMajor> view(Matrix &m) {
    return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

}  // namespace detail

inline Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("Matrix product: inner dimensions differ");
    }
    Matrix out(a.rows(), b.cols());
    if (a.cols() != 0) {
        detail::view(out).noalias() = detail::view(a) * detail::view(b);
    }
    return out;
}

/// a * bᵀ without materializing the transpose.
inline Matrix multiply_transposed(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.cols()) {
        throw ShapeError("multiply_transposed: column counts differ");
    }
    Matrix out(a.rows(), b.rows());
    if (a.cols() != 0) {
        detail::view(out).noalias() = detail::view(a) * detail::view(b).transpose();
    }
    return out;
}

/// Extracts `m[rows[j], cols[k]]` using zero-based indices.
inline Matrix submatrix(const Matrix &m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
    Matrix out(rows.size(), cols.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j] >= m.rows()) {
            throw BoundsError("submatrix: row index " + std::to_string(rows[j]) + " out of range");
        }
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] >= m.cols()) {
                throw BoundsError("submatrix: column index " + std::to_string(cols[k]) + " out of range");
            }
            out(j, k) = m(rows[j], cols[k]);
        }
    }
    return out;
}

/// Determinant by LU factorization with partial (row) pivoting. The 0x0 determinant is 1.
inline double determinant(Matrix m) {
    if (!m.square()) {
        throw ShapeError("determinant: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const std::size_t n = m.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(m(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(m(r, k)) > best) {
                best = std::abs(m(r, k));
                pivot = r;
            }
        }
        if (best == 0.0) {
            return 0.0;
        }
        if (pivot != k) {
            auto a = m.row(k);
            auto b = m.row(pivot);
            std::swap_ranges(a.begin() + k, a.end(), b.begin() + k);
            det = -det;
        }
        const double d = m(k, k);
        det *= d;
        auto pivot_row = m.row(k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = m(r, k) / d;
            if (f == 0.0) {
                continue;
            }
            auto row = m.row(r);
            for (std::size_t c = k + 1; c < n; ++c) {
                row[c] -= f * pivot_row[c];
            }
        }
    }
    return det;
}

/// ‖m mᵀ − I‖_F.
inline double orthogonality_defect(const Matrix &m) {
    if (!m.square()) {
        throw ShapeError("orthogonality_defect: matrix not square");
    }
    Matrix g = multiply_transposed(m, m);
    for (std::size_t k = 0; k < g.rows(); ++k) {
        g(k, k) -= 1.0;
    }
    return g.frobenius_norm();
}

/// Projects a near-orthogonal matrix onto its polar factor with Newton-Schulz steps
/// X <- X (3I - XᵀX) / 2. Only valid when the input is already close to orthogonal.
inline Matrix reorthogonalize(Matrix x, double tolerance = 1e-14, int max_iterations = 20) {
    const std::size_t n = x.rows();
    for (int it = 0; it < max_iterations; ++it) {
        Matrix g = x.transpose() * x;
        double defect = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const double e = g(r, c) - (r == c ? 1.0 : 0.0);
                defect += e * e;
                g(r, c) = (r == c ? 3.0 : 0.0) - g(r, c);
            }
        }
        if (std::sqrt(defect) <= tolerance) {
            break;
        }
        x = x * g;
        x *= 0.5;
    }
    return x;
}

/// exp(h t) for antisymmetric h, by scaling and squaring a degree-14 Taylor polynomial.
/// The result is re-projected onto the orthogonal group when drift exceeds 1e-12.
inline Matrix expm_antisymmetric(const Matrix &h, double t) {
    if (!h.square()) {
        throw ShapeError("expm_antisymmetric: generator not square");
    }
    const std::size_t n = h.rows();
    double asym = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double e = h(r, c) + h(c, r);
            asym += e * e;
        }
    }
    const double norm = h.frobenius_norm();
    if (std::sqrt(asym) > 1e-10 * norm) {
        throw ContractError("expm_antisymmetric: generator is not antisymmetric (|h + h^T|_F = " +
                            std::to_string(std::sqrt(asym)) + ")");
    }
    if (!std::isfinite(t) || !h.all_finite()) {
        throw ContractError("expm_antisymmetric: non-finite input");
    }

    Matrix x = h * t;
    double one_norm = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            s += std::abs(x(r, c));
        }
        one_norm = std::max(one_norm, s);
    }
    int squarings = 0;
    if (one_norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(one_norm / 0.5)));
        x *= std::ldexp(1.0, -squarings);
    }

    constexpr int kOrder = 14;
    Matrix e = Matrix::identity(n);
    for (int k = kOrder; k >= 1; --k) {
        e = x * e;
        e *= 1.0 / k;
        for (std::size_t d = 0; d < n; ++d) {
            e(d, d) += 1.0;
        }
    }
    for (int k = 0; k < squarings; ++k) {
        e = e * e;
    }
    if (orthogonality_defect(e) > 1e-12) {
        e = reorthogonalize(std::move(e));
    }
    return e;
}

struct SvdResult {
    std::vector<double> singular_values;  // descending
    Matrix left_vectors;                  // rows x k, orthonormal columns
    Matrix right_vectors;                 // cols x k, orthonormal columns
};

namespace detail {

// One-sided Jacobi on a tall matrix given as columns. Orthogonalizes columns in place
// and accumulates the right rotations into `v` (also columns).
inline void one_sided_jacobi(std::vector<std::vector<double>> &a, std::vector<std::vector<double>> &v,
                             int max_sweeps) {
    const std::size_t k = a.size();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                auto &ap = a[p];
                auto &aq = a[q];
                double alpha = 0.0;
                double beta = 0.0;
                double gamma = 0.0;
                for (std::size_t i = 0; i < ap.size(); ++i) {
                    alpha += ap[i] * ap[i];
                    beta += aq[i] * aq[i];
                    gamma += ap[i] * aq[i];
                }
                if (gamma == 0.0 || std::abs(gamma) <= 4 * eps * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < ap.size(); ++i) {
                    const double x = ap[i];
                    const double y = aq[i];
                    ap[i] = c * x - s * y;
                    aq[i] = s * x + c * y;
                }
                auto &vp = v[p];
                auto &vq = v[q];
                for (std::size_t i = 0; i < vp.size(); ++i) {
                    const double x = vp[i];
                    const double y = vq[i];
                    vp[i] = c * x - s * y;
                    vq[i] = s * x + c * y;
                }
            }
        }
        if (!rotated) {
            return;
        }
    }
    throw NumericError("svd: one-sided Jacobi did not converge after " + std::to_string(max_sweeps) +
                       " sweeps (" + std::to_string(a.empty() ? 0 : a.front().size()) + "x" +
                       std::to_string(k) + " input)");
}

// Completes a set of orthonormal columns; columns flagged in `missing` are replaced.
inline void complete_orthonormal(std::vector<std::vector<double>> &cols, const std::vector<bool> &missing) {
    const std::size_t dim = cols.empty() ? 0 : cols.front().size();
    std::size_t candidate = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (!missing[j]) {
            continue;
        }
        while (candidate < dim) {
            std::vector<double> e(dim, 0.0);
            e[candidate++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t i = 0; i < cols.size(); ++i) {
                    if (i == j || (missing[i] && i > j)) {
                        continue;
                    }
                    double d = std::inner_product(e.begin(), e.end(), cols[i].begin(), 0.0);
                    for (std::size_t r = 0; r < dim; ++r) {
                        e[r] -= d * cols[i][r];
                    }
                }
            }
            double nrm = std::sqrt(std::inner_product(e.begin(), e.end(), e.begin(), 0.0));
            if (nrm > 1e-6) {
                for (double &x : e) {
                    x /= nrm;
                }
                cols[j] = std::move(e);
                break;
            }
        }
    }
}

}  // namespace detail

/// Thin SVD m = U diag(s) Vᵀ with k = min(rows, cols) components, singular values descending.
inline SvdResult svd(const Matrix &m, int max_sweeps = 60) {
    if (!m.all_finite()) {
        throw ArgumentError("svd: non-finite entries");
    }
    const bool wide = m.rows() < m.cols();
    const Matrix a = wide ? m.transpose() : m;  // tall: rows >= cols
    const std::size_t rows = a.rows();
    const std::size_t k = a.cols();

    std::vector<std::vector<double>> cols(k, std::vector<double>(rows));
    std::vector<std::vector<double>> v(k, std::vector<double>(k, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
            cols[c][r] = a(r, c);
        }
        v[c][c] = 1.0;
    }
    detail::one_sided_jacobi(cols, v, max_sweeps);

    std::vector<double> sigma(k);
    for (std::size_t c = 0; c < k; ++c) {
        sigma[c] = std::sqrt(std::inner_product(cols[c].begin(), cols[c].end(), cols[c].begin(), 0.0));
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    const double cutoff = (sigma.empty() ? 0.0 : sigma[order.front()]) * std::numeric_limits<double>::epsilon() *
                          static_cast<double>(std::max(rows, k));
    std::vector<std::vector<double>> left(k);
    std::vector<std::vector<double>> right(k);
    std::vector<bool> missing(k, false);
    SvdResult out;
    out.singular_values.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        out.singular_values[j] = sigma[src];
        right[j] = v[src];
        left[j] = cols[src];
        if (sigma[src] > cutoff && sigma[src] > 0.0) {
            for (double &x : left[j]) {
                x /= sigma[src];
            }
        } else {
            missing[j] = true;
        }
    }
    detail::complete_orthonormal(left, missing);

    Matrix u(rows, k);
    Matrix w(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t r = 0; r < rows; ++r) {
            u(r, j) = left[j][r];
        }
        for (std::size_t r = 0; r < k; ++r) {
            w(r, j) = right[j][r];
        }
    }
    if (wide) {
        out.left_vectors = std::move(w);
        out.right_vectors = std::move(u);
    } else {
        out.left_vectors = std::move(u);
        out.right_vectors = std::move(w);
    }
    return out;
}

/// exp(mean(log(max(s, floor)))). Exact zeros are clamped to `floor` so they do not
/// send the whole average to zero.
inline double geometric_mean(std::span<const double> samples, double floor = 1e-300) {
    if (samples.empty()) {
        throw ArgumentError("geometric_mean: empty sample list");
    }
    if (!(floor > 0.0)) {
        throw ArgumentError("geometric_mean: floor must be positive");
    }
    double acc = 0.0;
    for (double s : samples) {
        if (!(s >= 0.0)) {
            throw ArgumentError("geometric_mean: samples must be nonnegative");
        }
        acc += std::log(std::max(s, floor));
    }
    return std::exp(acc / static_cast<double>(samples.size()));
}

}  // namespace mgloc

#endif  // MGLOC_LINALG_HPP
