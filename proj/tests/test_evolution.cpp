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

#include <cmath>
#include <random>
#include <vector>

#include "mgloc/evolution.hpp"
#include "mgloc/oracle.hpp"
#include "support.hpp"

namespace mgloc {
namespace {

using testing::max_abs_diff;
using testing::random_couplings;
using testing::random_schedule;

TEST(Generator, ZeroCouplings) {
    EXPECT_EQ(generator(XYCouplings::zero(3)), Matrix(6, 6));
}

TEST(Generator, SingleFieldBlock) {
    XYCouplings c = XYCouplings::zero(1);
    c.field[0] = 0.7;
    const Matrix h = generator(c);
    EXPECT_LT(max_abs_diff(h, oracle::generator_from_commutators(c)), 1e-14);
    EXPECT_NE(h(0, 1), 0.0);
    EXPECT_EQ(h(0, 0), 0.0);
}

TEST(Generator, HoppingSupport) {
    XYCouplings c = XYCouplings::zero(2);
    c.hop[0] = 1.3;
    const Matrix h = generator(c);
    EXPECT_LT(max_abs_diff(h, oracle::generator_from_commutators(c)), 1e-14);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t col = 0; col < 4; ++col) {
            const bool allowed = (r == 1 && col == 2) || (r == 2 && col == 1) || (r == 0 && col == 3) ||
                                 (r == 3 && col == 0);
            if (!allowed) {
                EXPECT_EQ(h(r, col), 0.0) << r << "," << col;
            } else {
                EXPECT_NE(h(r, col), 0.0);
            }
        }
    }
}

TEST(Generator, MatchesCommutatorsAndIsAntisymmetric) {
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 5; ++n) {
        const XYCouplings c = random_couplings(n, rng);
        const Matrix h = generator(c);
        EXPECT_LT(max_abs_diff(h, oracle::generator_from_commutators(c)), 1e-12);
        EXPECT_EQ(max_abs_diff(h, h.transpose() * -1.0), 0.0);
    }
}

TEST(Generator, RejectsMismatchedShape) {
    XYCouplings c = XYCouplings::zero(3);
    c.hop.push_back(1.0);
    EXPECT_THROW(generator(c), ShapeError);
    EXPECT_THROW(generator(XYCouplings{}), ArgumentError);
}

TEST(Step, ZeroDtIsIdentity) {
    std::mt19937_64 rng(22);
    const Propagator p = Propagator::identity(3);
    EXPECT_EQ(step(p, random_couplings(3, rng), 0.0).u, p.u);
}

TEST(Step, Semigroup) {
    std::mt19937_64 rng(23);
    const XYCouplings c = random_couplings(4, rng);
    const Propagator p = Propagator::identity(4);
    const Propagator twice = step(step(p, c, 0.3), c, 0.3);
    EXPECT_LT(max_abs_diff(twice.u, step(p, c, 0.6).u), 1e-10);
    EXPECT_NEAR(twice.time, 0.6, 1e-15);
}

TEST(Step, MatchesDenseHeisenbergModes) {
    std::mt19937_64 rng(24);
    const int n = 3;
    const auto schedule = random_schedule(n, 4, rng);
    const double dt = 0.25;
    const auto snaps = evolve_schedule(schedule, n, dt);
    const Matrix want = oracle::single_mode_matrix(oracle::dense_evolve(schedule, n, dt), n);
    EXPECT_LT(max_abs_diff(snaps.back().u, want), 1e-8);
}

TEST(Step, RejectsSizeMismatch) {
    EXPECT_THROW(step(Propagator::identity(3), XYCouplings::zero(2), 0.1), ShapeError);
}

TEST(SampleCouplings, BallisticPoint) {
    DisorderSpec spec;
    const DisorderRealization r(spec, 5, 0);
    for (std::uint64_t k : {0u, 7u}) {
        const XYCouplings c = sample_couplings(r, k);
        for (double v : c.hop) EXPECT_EQ(v, 1.0);
        for (double v : c.field) EXPECT_EQ(v, 0.0);
    }
}

TEST(SampleCouplings, LocalizedPointIsStaticUniform) {
    DisorderSpec spec;
    spec.mean_strength = 2.0;
    spec.seed = 5;
    const DisorderRealization r(spec, 400, 3);
    const XYCouplings c0 = sample_couplings(r, 0);
    double mean = 0.0;
    for (double v : c0.field) {
        EXPECT_GE(v, -2.0);
        EXPECT_LT(v, 2.0);
        mean += v;
    }
    EXPECT_NEAR(mean / 400.0, 0.0, 0.25);
    EXPECT_EQ(sample_couplings(r, 9), c0);
}

TEST(SampleCouplings, DiffusivePointAddsScaledFluctuation) {
    DisorderSpec spec;
    spec.mean_strength = 0.75;
    spec.fluctuation = 1.0;
    spec.seed = 8;
    const DisorderRealization r(spec, 300, 0);
    const double amp = 2.0 / 0.25;
    double spread = 0.0;
    for (std::uint64_t k = 0; k < 3; ++k) {
        const XYCouplings c = sample_couplings(r, k);
        for (std::size_t j = 0; j < c.field.size(); ++j) {
            const double kick = c.field[j] - r.static_field()[j];
            EXPECT_LE(std::abs(kick), amp + 1e-12);
            spread = std::max(spread, std::abs(kick));
        }
        for (double v : c.hop) EXPECT_EQ(v, 1.0);
    }
    for (double v : r.static_field()) {
        EXPECT_LE(std::abs(v), 0.75);
    }
    EXPECT_GT(spread, 0.9 * amp);
    EXPECT_NE(sample_couplings(r, 0), sample_couplings(r, 1));
}

TEST(SampleCouplings, ModelTwo) {
    DisorderSpec spec;
    spec.model = DisorderModel::Model2;
    spec.mean_strength = 0.5;
    spec.seed = 2;
    const DisorderRealization r(spec, 6, 0);
    const XYCouplings c = sample_couplings(r, 0);
    for (double v : c.hop) EXPECT_EQ(v, 0.5);
    for (double v : c.field) EXPECT_LE(std::abs(v), 1.0);
    spec.model2_uniform_field = true;
    for (double v : sample_couplings(DisorderRealization(spec, 6, 0), 0).field) EXPECT_EQ(v, 1.0);
}

TEST(SampleCouplings, ReproducibleStreams) {
    DisorderSpec spec;
    spec.mean_strength = 1.0;
    spec.fluctuation = 0.5;
    spec.seed = 99;
    const DisorderRealization a(spec, 10, 4);
    const DisorderRealization b(spec, 10, 4);
    for (std::uint64_t k = 0; k < 5; ++k) {
        EXPECT_EQ(sample_couplings(a, k), sample_couplings(b, k));
    }
    EXPECT_NE(sample_couplings(a, 0), sample_couplings(DisorderRealization(spec, 10, 5), 0));
}

TEST(DisorderSpec, Validation) {
    DisorderSpec spec;
    spec.dt = 0.0;
    EXPECT_THROW(spec.validate(), ArgumentError);
    spec = {};
    spec.fluctuation = -1.0;
    EXPECT_THROW(spec.validate(), ArgumentError);
    spec = {};
    spec.mean_strength = -0.5;
    EXPECT_THROW(spec.validate(), ArgumentError);
}

TEST(EvolveTo, ZeroTime) {
    const auto snaps = evolve_to(DisorderSpec{}, 3, 0.0);
    ASSERT_EQ(snaps.size(), 1u);
    EXPECT_EQ(snaps[0].u, Matrix::identity(6));
}

TEST(EvolveTo, StaticLimitIsSingleExponential) {
    DisorderSpec spec;
    spec.mean_strength = 1.5;
    spec.seed = 3;
    const int n = 6;
    const auto snaps = evolve_to(spec, n, 2.0);
    ASSERT_EQ(snaps.size(), 9u);
    const Matrix h = generator(sample_couplings(DisorderRealization(spec, n, 0), 0));
    for (std::size_t k = 0; k < snaps.size(); ++k) {
        EXPECT_LT(max_abs_diff(snaps[k].u, expm_antisymmetric(h, 0.25 * static_cast<double>(k))), 1e-9);
    }
}

TEST(EvolveTo, MatchesDenseOracle) {
    DisorderSpec spec;
    spec.mean_strength = 0.9;
    spec.fluctuation = 0.3;
    spec.seed = 17;
    const int n = 3;
    const DisorderRealization r(spec, n, 2);
    const auto snaps = evolve_to(r, 1.0);
    std::vector<XYCouplings> schedule;
    for (std::uint64_t k = 0; k < 4; ++k) schedule.push_back(sample_couplings(r, k));
    const Matrix want = oracle::single_mode_matrix(oracle::dense_evolve(schedule, n, spec.dt), n);
    EXPECT_LT(max_abs_diff(snaps.back().u, want), 1e-8);
}

TEST(EvolveTo, PartialPeriodIsDropped) {
    EXPECT_EQ(whole_steps(1.0, 0.25), 4u);
    EXPECT_EQ(whole_steps(1.1, 0.25), 4u);
    EXPECT_THROW(whole_steps(-1.0, 0.25), ArgumentError);
}

TEST(Propagator, InvariantCheckCatchesDrift) {
    Propagator p = Propagator::identity(2);
    EXPECT_NO_THROW(p.check_invariants());
    p.u(0, 0) = -1.0;
    EXPECT_THROW(p.check_invariants(), NumericError);
    p.u(0, 0) = 1.1;
    EXPECT_THROW(p.check_invariants(), NumericError);
}

TEST(CounterRng, OrderIndependent) {
    const CounterRng rng(42);
    const double a = rng.unit(1, 2, 3);
    (void)rng.unit(9, 9, 9);
    EXPECT_EQ(rng.unit(1, 2, 3), a);
    EXPECT_GE(a, 0.0);
    EXPECT_LT(a, 1.0);
}

}  // namespace
}  // namespace mgloc
