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

#ifndef MGLOC_EVOLUTION_HPP
#define MGLOC_EVOLUTION_HPP

/// Single-mode propagators for the open XY chain
///
///     H(t) = sum_j 2 mu_j(t) (X_j X_{j+1} + Y_j Y_{j+1}) + sum_j 2 nu_j(t) Z_j
///
/// with piecewise-constant couplings, and the two disorder ensembles built on it.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mgloc/errors.hpp"
#include "mgloc/linalg.hpp"

namespace mgloc {

struct XYCouplings {
    std::vector<double> hop;    // mu_j, j = 1..n-1
    std::vector<double> field;  // nu_j, j = 1..n

    int n() const noexcept {
        return static_cast<int>(field.size());
    }

    static XYCouplings zero(int n) {
        return {std::vector<double>(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0.0),
                std::vector<double>(static_cast<std::size_t>(n), 0.0)};
    }

    void validate() const {
        if (field.empty()) {
            throw ArgumentError("XYCouplings: need at least one site");
        }
        if (hop.size() + 1 != field.size()) {
            throw ShapeError("XYCouplings: expected " + std::to_string(field.size() - 1) + " hoppings, got " +
                             std::to_string(hop.size()));
        }
        for (double v : hop) {
            if (!std::isfinite(v)) {
                throw ArgumentError("XYCouplings: non-finite hopping");
            }
        }
        for (double v : field) {
            if (!std::isfinite(v)) {
                throw ArgumentError("XYCouplings: non-finite field");
            }
        }
    }

    friend bool operator==(const XYCouplings &, const XYCouplings &) = default;
};

/// Antisymmetric h with i[H, c_mu] = sum_nu h_{mu nu} c_nu.
///
/// Jordan-Wigner images: Z_j = -i c_{2j-1} c_{2j}, X_j X_{j+1} = -i c_{2j} c_{2j+1},
/// Y_j Y_{j+1} = i c_{2j-1} c_{2j+2}. Writing H = (i/4) sum h_{mu nu} c_mu c_nu gives the
/// entries below. `oracle::generator_self_test` checks them against dense commutators.
inline Matrix generator(const XYCouplings &c) {
    c.validate();
    const std::size_t n = c.field.size();
    Matrix h(2 * n, 2 * n);
    auto set = [&h](std::size_t mu, std::size_t nu, double v) {  // one-based
        h(mu - 1, nu - 1) += v;
        h(nu - 1, mu - 1) -= v;
    };
    for (std::size_t j = 1; j <= n; ++j) {
        set(2 * j - 1, 2 * j, -4.0 * c.field[j - 1]);
    }
    for (std::size_t j = 1; j + 1 <= n; ++j) {
        set(2 * j, 2 * j + 1, -4.0 * c.hop[j - 1]);
        set(2 * j - 1, 2 * j + 2, 4.0 * c.hop[j - 1]);
    }
    return h;
}

/// u(t) in U^dagger c_mu U = sum_nu u_{mu nu} c_nu.
struct Propagator {
    Matrix u;
    double time = 0.0;
    int n = 0;

    static Propagator identity(int n) {
        return {Matrix::identity(static_cast<std::size_t>(2 * n)), 0.0, n};
    }

    /// Throws NumericError if u has left SO(2n).
    void check_invariants(double orthogonality_tol = 1e-8, double det_tol = 1e-6) const {
        const double defect = orthogonality_defect(u);
        if (!(defect <= orthogonality_tol)) {
            throw NumericError("Propagator: orthogonality defect " + std::to_string(defect));
        }
        const double d = determinant(u);
        if (!(std::abs(d - 1.0) <= det_tol)) {
            throw NumericError("Propagator: determinant " + std::to_string(d) + " is not +1");
        }
    }
};

/// Advances p by one piecewise-constant segment: u' = exp(h dt) u.
inline Propagator step(const Propagator &p, const XYCouplings &c, double dt, double reproject_above = 1e-10) {
    if (c.n() != p.n) {
        throw ShapeError("step: couplings for " + std::to_string(c.n()) + " sites, propagator has " +
                         std::to_string(p.n));
    }
    if (dt == 0.0) {
        return p;
    }
    Propagator out{expm_antisymmetric(generator(c), dt) * p.u, p.time + dt, p.n};
    if (orthogonality_defect(out.u) > reproject_above) {
        out.u = reorthogonalize(std::move(out.u));
    }
    return out;
}

enum class DisorderModel { Model1, Model2 };

inline std::string to_string(DisorderModel m) {
    return m == DisorderModel::Model1 ? "model1" : "model2";
}

/// Model 1: mu_j = 1, nu_j(t) = nu_j + (2/dt) kappa_j(t), nu_j ~ U[-W, W] static.
/// Model 2: nu_j static, mu_j(t) = mu + (2/dt) kappa_j(t).
/// kappa_j(t) ~ U[-Delta, Delta] is redrawn every period dt.
struct DisorderSpec {
    DisorderModel model = DisorderModel::Model1;
    double mean_strength = 0.0;  // W for Model 1, mu for Model 2
    double fluctuation = 0.0;    // Delta
    double dt = 0.25;
    std::uint64_t seed = 0;
    /// Model 2 only: use nu_j = 1 on every site instead of nu_j ~ U[-1, 1].
    bool model2_uniform_field = false;

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt)) {
            throw ArgumentError("DisorderSpec: dt must be positive");
        }
        if (!(fluctuation >= 0.0) || !std::isfinite(fluctuation)) {
            throw ArgumentError("DisorderSpec: fluctuation must be nonnegative");
        }
        if (!std::isfinite(mean_strength)) {
            throw ArgumentError("DisorderSpec: mean strength must be finite");
        }
        if (model == DisorderModel::Model1 && mean_strength < 0.0) {
            throw ArgumentError("DisorderSpec: Model 1 disorder width must be nonnegative");
        }
    }
};

/// Stateless counter-based uniform generator: every draw is a pure function of its key,
/// so streams do not depend on evaluation order or thread count.
class CounterRng {
   public:
    static constexpr std::uint64_t kStaticStep = std::numeric_limits<std::uint64_t>::max();

    explicit CounterRng(std::uint64_t seed) : seed_(seed) {
    }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t bits(std::uint64_t realization, std::uint64_t step, std::uint64_t index) const noexcept {
        std::uint64_t k = mix(seed_);
        k = mix(k ^ realization);
        k = mix(k ^ step);
        return mix(k ^ index);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double unit(std::uint64_t realization, std::uint64_t step, std::uint64_t index) const noexcept {
        return static_cast<double>(bits(realization, step, index) >> 11) * 0x1.0p-53;
    }

    /// Uniform on [-w, w).
    double symmetric(double w, std::uint64_t realization, std::uint64_t step, std::uint64_t index) const noexcept {
        return w * (2.0 * unit(realization, step, index) - 1.0);
    }

   private:
    std::uint64_t seed_;
};

/// One member of a disorder ensemble: the static draws plus access to per-step couplings.
class DisorderRealization {
   public:
    DisorderRealization(const DisorderSpec &spec, int n, std::uint64_t realization)
        : spec_(spec), n_(n), realization_(realization), rng_(spec.seed) {
        spec.validate();
        if (n < 1) {
            throw ArgumentError("DisorderRealization: need at least one site");
        }
        static_field_.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const auto idx = static_cast<std::uint64_t>(j);
            switch (spec.model) {
                case DisorderModel::Model1:
                    static_field_[static_cast<std::size_t>(j)] =
                        rng_.symmetric(spec.mean_strength, realization, CounterRng::kStaticStep, idx);
                    break;
                case DisorderModel::Model2:
                    static_field_[static_cast<std::size_t>(j)] =
                        spec.model2_uniform_field ? 1.0
                                                  : rng_.symmetric(1.0, realization, CounterRng::kStaticStep, idx);
                    break;
            }
        }
    }

    const std::vector<double> &static_field() const noexcept {
        return static_field_;
    }
    int n() const noexcept {
        return n_;
    }
    const DisorderSpec &spec() const noexcept {
        return spec_;
    }

    /// Couplings held constant on [k dt, (k+1) dt).
    XYCouplings couplings_at(std::uint64_t k) const {
        XYCouplings c = XYCouplings::zero(n_);
        const double amplitude = 2.0 / spec_.dt;
        auto kappa = [&](std::size_t j) {
            return spec_.fluctuation == 0.0 ? 0.0 : rng_.symmetric(spec_.fluctuation, realization_, k, j);
        };
        switch (spec_.model) {
            case DisorderModel::Model1:
                for (std::size_t j = 0; j < c.hop.size(); ++j) {
                    c.hop[j] = 1.0;
                }
                for (std::size_t j = 0; j < c.field.size(); ++j) {
                    c.field[j] = static_field_[j] + amplitude * kappa(j);
                }
                break;
            case DisorderModel::Model2:
                c.field = static_field_;
                for (std::size_t j = 0; j < c.hop.size(); ++j) {
                    c.hop[j] = spec_.mean_strength + amplitude * kappa(j);
                }
                break;
        }
        return c;
    }

   private:
    DisorderSpec spec_;
    int n_;
    std::uint64_t realization_;
    CounterRng rng_;
    std::vector<double> static_field_;
};

inline XYCouplings sample_couplings(const DisorderRealization &realization, std::uint64_t k) {
    return realization.couplings_at(k);
}

/// Number of whole periods in [0, t_final].
inline std::size_t whole_steps(double t_final, double dt) {
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw ArgumentError("evolve_to: t_final must be finite and nonnegative");
    }
    return static_cast<std::size_t>(std::floor(t_final / dt + 1e-9));
}

/// Snapshots u(0) = I, u(dt), ..., u(K dt) for a fixed coupling schedule.
inline std::vector<Propagator> evolve_schedule(const std::vector<XYCouplings> &schedule, int n, double dt) {
    std::vector<Propagator> out;
    out.reserve(schedule.size() + 1);
    out.push_back(Propagator::identity(n));
    for (const auto &c : schedule) {
        out.push_back(step(out.back(), c, dt));
    }
    return out;
}

/// Snapshots at every step boundary up to the last whole period not after t_final.
inline std::vector<Propagator> evolve_to(const DisorderRealization &realization, double t_final) {
    const std::size_t steps = whole_steps(t_final, realization.spec().dt);
    std::vector<Propagator> out;
    out.reserve(steps + 1);
    out.push_back(Propagator::identity(realization.n()));
    for (std::size_t k = 0; k < steps; ++k) {
        out.push_back(step(out.back(), realization.couplings_at(k), realization.spec().dt));
    }
    return out;
}

inline std::vector<Propagator> evolve_to(const DisorderSpec &spec, int n, double t_final,
                                         std::uint64_t realization = 0) {
    return evolve_to(DisorderRealization(spec, n, realization), t_final);
}

}  // namespace mgloc

#endif  // MGLOC_EVOLUTION_HPP
