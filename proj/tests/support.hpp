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

#ifndef MGLOC_TESTS_SUPPORT_HPP
#define MGLOC_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mgloc/evolution.hpp"
#include "mgloc/linalg.hpp"

namespace mgloc::testing {

inline Matrix gaussian(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = g(rng);
        }
    }
    return m;
}

/// Haar-ish orthogonal matrix from the QR factor of a Gaussian matrix.
inline Matrix random_orthogonal(std::size_t n, std::mt19937_64 &rng) {
    const Matrix g = gaussian(n, n, rng);
    Eigen::MatrixXd e(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = g(r, c);
        }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(e);
    const Eigen::MatrixXd q = qr.householderQ();
    Matrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out(r, c) = q(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

inline Matrix random_antisymmetric(std::size_t n, std::mt19937_64 &rng) {
    const Matrix g = gaussian(n, n, rng);
    return g - g.transpose();
}

inline XYCouplings random_couplings(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    XYCouplings c = XYCouplings::zero(n);
    for (double &v : c.hop) {
        v = d(rng);
    }
    for (double &v : c.field) {
        v = d(rng);
    }
    return c;
}

inline std::vector<XYCouplings> random_schedule(int n, std::size_t segments, std::mt19937_64 &rng) {
    std::vector<XYCouplings> out;
    for (std::size_t k = 0; k < segments; ++k) {
        out.push_back(random_couplings(n, rng));
    }
    return out;
}

inline double max_abs_diff(const Matrix &a, const Matrix &b) {
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
        }
    }
    return worst;
}

/// Laplace expansion along the first row.
inline double cofactor_determinant(const Matrix &m) {
    const std::size_t n = m.rows();
    if (n == 0) {
        return 1.0;
    }
    if (n == 1) {
        return m(0, 0);
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            for (std::size_t c = 0, cc = 0; c < n; ++c) {
                if (c != j) {
                    minor(r - 1, cc++) = m(r, c);
                }
            }
        }
        acc += ((j % 2) ? -1.0 : 1.0) * m(0, j) * cofactor_determinant(minor);
    }
    return acc;
}

}  // namespace mgloc::testing

#endif  // MGLOC_TESTS_SUPPORT_HPP
