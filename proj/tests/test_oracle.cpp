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

#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "mgloc/oracle.hpp"
#include "mgloc/scrambling.hpp"
#include "mgloc/truncation.hpp"
#include "support.hpp"

#ifndef MGLOC_FIXTURE_DIR
#error "MGLOC_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace mgloc {
namespace {

using oracle::cplx;
using oracle::DenseOperator;

DenseOperator identity(int n) {
    const auto d = static_cast<Eigen::Index>(oracle::dim(n));
    return DenseOperator::Identity(d, d);
}

TEST(DensePauli, SingleQubit) {
    DenseOperator z(2, 2);
    z << 1, 0, 0, -1;
    EXPECT_EQ(oracle::dense_pauli(pauli_z(1, 1)), z);
    const DenseOperator c1c2 = oracle::majorana(1, 1) * oracle::majorana(2, 1);
    EXPECT_EQ(c1c2, cplx(0, 1) * z);
}

TEST(DensePauli, CapEnforced) {
    EXPECT_THROW(oracle::dense_pauli(pauli_z(1, 11)), ResourceError);
    EXPECT_THROW(oracle::dense_evolve({}, 0, 0.1), ResourceError);
}

TEST(DenseEvolve, ZeroHamiltonian) {
    const auto u = oracle::dense_evolve({XYCouplings::zero(3)}, 3, 0.7);
    EXPECT_LT((u - identity(3)).norm(), 1e-14);
}

TEST(DenseEvolve, Unitary) {
    std::mt19937_64 rng(71);
    const auto u = oracle::dense_evolve(testing::random_schedule(4, 5, rng), 4, 0.4);
    EXPECT_LT((u.adjoint() * u - identity(4)).norm(), 1e-10);
}

TEST(DenseEvolve, MatchesSeriesExponential) {
    std::mt19937_64 rng(72);
    const XYCouplings c = testing::random_couplings(2, rng);
    const double dt = 0.37;
    const DenseOperator a = cplx(0, -dt / 1024.0) * oracle::hamiltonian(c);
    DenseOperator term = identity(2);
    DenseOperator sum = identity(2);
    for (int k = 1; k <= 25; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < 10; ++k) sum = sum * sum;
    EXPECT_LT((oracle::dense_evolve({c}, 2, dt) - sum).norm(), 1e-10);
}

TEST(DenseEvolve, QuadraticHamiltonianKeepsModesLinear) {
    std::mt19937_64 rng(73);
    const int n = 3;
    const auto u = oracle::dense_evolve(testing::random_schedule(n, 3, rng), n, 0.3);
    for (int mu = 1; mu <= 2 * n; ++mu) {
        const DenseOperator evolved = oracle::heisenberg(u, oracle::majorana(mu, n));
        for (unsigned mask = 1; mask < (1u << (2 * n)); ++mask) {
            if (std::popcount(mask) == 1) continue;
            std::vector<int> modes;
            for (int nu = 1; nu <= 2 * n; ++nu) {
                if (mask & (1u << (nu - 1))) modes.push_back(nu);
            }
            const auto coef = oracle::coefficient(oracle::configuration(MajoranaTuple(modes, n)), evolved);
            EXPECT_LT(std::abs(coef), 1e-10);
        }
    }
}

TEST(DenseOto, Examples) {
    const DenseOperator id = identity(2);
    EXPECT_EQ(oracle::dense_oto(id, oracle::site_pauli('Z', 1, 2), oracle::site_pauli('Z', 1, 2)), 0.0);
    EXPECT_DOUBLE_EQ(oracle::dense_oto(id, oracle::site_pauli('X', 1, 2), oracle::site_pauli('Z', 1, 2)), 1.0);
    EXPECT_THROW(oracle::dense_oto(id, identity(1), id), ShapeError);
}

TEST(DenseTruncation, TrivialCases) {
    const int n = 3;
    std::mt19937_64 rng(74);
    const auto u = oracle::dense_evolve(testing::random_schedule(n, 2, rng), n, 0.3);
    const std::vector<std::array<double, 3>> basis(3, kAxisX);
    EXPECT_EQ(oracle::dense_truncation_average(u, oracle::site_pauli('X', 2, n), {}, basis).mean, 0.0);
    EXPECT_NEAR(oracle::dense_truncation_average(identity(n), oracle::site_pauli('X', 2, n), {1, 3}, basis).mean,
                0.0, 1e-15);
    EXPECT_THROW(oracle::dense_truncation_average(oracle::dense_evolve({}, 9, 0.1), identity(9), {}, {}),
                 ResourceError);
}

TEST(Fixtures, OtoPairsMatchFormula) {
    const auto fixtures = testing::read_oto_fixtures(std::string(MGLOC_FIXTURE_DIR) + "/oto_pairs.txt");
    ASSERT_EQ(fixtures.size(), 40u);
    for (const auto &f : fixtures) {
        const Propagator p =
            evolve_schedule(testing::fixture_schedule(f.n, f.seed), f.n, testing::kFixtureDt).back();
        EXPECT_NEAR(oto_pauli_pair(p, pauli_from_letters(f.a), pauli_from_letters(f.b)), f.value, 1e-9)
            << "seed " << f.seed;
    }
}

TEST(Fixtures, TruncationBoundDominatesOracle) {
    const auto fixtures = testing::read_truncation_fixtures(std::string(MGLOC_FIXTURE_DIR) + "/truncation.txt");
    ASSERT_EQ(fixtures.size(), 16u);
    for (const auto &f : fixtures) {
        const Propagator p =
            evolve_schedule(testing::fixture_schedule(f.n, f.seed), f.n, testing::kFixtureDt).back();
        const std::vector<Axis> axes(f.sites.size(), kAxisZ);
        const TruncationReport r = truncation_bound(p, pauli_from_letters(f.b), f.sites, axes);
        EXPECT_GE(r.bound - f.mean, -1e-10) << "seed " << f.seed;
    }
}

TEST(Fixtures, OracleStillReproducesFrozenValues) {
    const auto fixtures = testing::read_oto_fixtures(std::string(MGLOC_FIXTURE_DIR) + "/oto_pairs.txt");
    for (std::size_t k = 0; k < fixtures.size(); k += 7) {
        const auto &f = fixtures[k];
        const auto u = oracle::dense_evolve(testing::fixture_schedule(f.n, f.seed), f.n, testing::kFixtureDt);
        EXPECT_NEAR(oracle::dense_oto(u, oracle::pauli_letters(f.a), oracle::pauli_letters(f.b)), f.value, 1e-12);
    }
}

}  // namespace
}  // namespace mgloc
