// Copyright 2026 The spinoracle Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "spinoracle/spin_core.hpp"

namespace spinoracle {

inline constexpr std::size_t kMinGridSteps = 8;

/// Q(theta, phi) = |Sum_k sqrt(C(2s,k)) sin^k(theta/2) cos^(2s-k)(theta/2) alpha_k e^(i k phi)|^2,
/// alpha_k being the amplitude on qudit |k>.
///
/// The bare sum is a complex overlap; its modulus squared is the
/// non-negative quasi-probability that gets plotted.
inline double q_value(const StateVector& state, double theta, double phi) {
    const std::size_t two_s = state.dim() - 1;
    const double c = std::cos(theta / 2.0);
    const double sn = std::sin(theta / 2.0);
    Complex acc = 0.0;
    for (std::size_t k = 0; k <= two_s; ++k) {
        const double w = detail::binomial_weight(two_s, k, std::abs(c), std::abs(sn));
        if (w == 0.0) continue;
        // binomial_weight takes magnitudes; restore signs of cos/sin powers.
        double sign = 1.0;
        if (c < 0.0 && (two_s - k) % 2 == 1) sign = -sign;
        if (sn < 0.0 && k % 2 == 1) sign = -sign;
        acc += sign * w * state[k] * std::polar(1.0, static_cast<double>(k) * phi);
    }
    return std::norm(acc);
}

/// Row-major grid: theta in [0, pi] inclusive (theta_steps points),
/// phi in [0, 2pi) exclusive (phi_steps points).
class SphericalGrid {
   public:
    SphericalGrid(std::size_t theta_steps, std::size_t phi_steps)
        : theta_steps_(theta_steps), phi_steps_(phi_steps), values_(theta_steps * phi_steps, 0.0) {}

    std::size_t theta_steps() const { return theta_steps_; }
    std::size_t phi_steps() const { return phi_steps_; }

    double theta(std::size_t t) const {
        return std::numbers::pi * static_cast<double>(t) / static_cast<double>(theta_steps_ - 1);
    }
    double phi(std::size_t p) const {
        return 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(phi_steps_);
    }

    double& at(std::size_t t, std::size_t p) { return values_[t * phi_steps_ + p]; }
    double at(std::size_t t, std::size_t p) const { return values_[t * phi_steps_ + p]; }
    const std::vector<double>& values() const { return values_; }

    struct Peak {
        std::size_t t;
        std::size_t p;
        double value;
    };

    Peak argmax() const {
        Peak best{0, 0, values_.front()};
        for (std::size_t t = 0; t < theta_steps_; ++t) {
            for (std::size_t p = 0; p < phi_steps_; ++p) {
                if (at(t, p) > best.value) best = {t, p, at(t, p)};
            }
        }
        return best;
    }

    /// Integral of Q over the sphere times (2s+1)/(4 pi): trapezoid rule in
    /// theta (endpoints included), rectangle rule in phi (periodic).
    double normalization(std::size_t dim) const {
        const double dt = std::numbers::pi / static_cast<double>(theta_steps_ - 1);
        const double dp = 2.0 * std::numbers::pi / static_cast<double>(phi_steps_);
        double sum = 0.0;
        for (std::size_t t = 0; t < theta_steps_; ++t) {
            const double w = (t == 0 || t + 1 == theta_steps_) ? 0.5 : 1.0;
            double row = 0.0;
            for (std::size_t p = 0; p < phi_steps_; ++p) row += at(t, p);
            sum += w * std::sin(theta(t)) * row;
        }
        return sum * dt * dp * static_cast<double>(dim) / (4.0 * std::numbers::pi);
    }

   private:
    std::size_t theta_steps_;
    std::size_t phi_steps_;
    std::vector<double> values_;
};

inline SphericalGrid q_function(const StateVector& state, std::size_t theta_steps, std::size_t phi_steps) {
    if (theta_steps < kMinGridSteps || phi_steps < kMinGridSteps) {
        throw ConfigError("Q-function grid needs at least 8 steps per axis");
    }
    SphericalGrid grid(theta_steps, phi_steps);
    for (std::size_t t = 0; t < theta_steps; ++t) {
        for (std::size_t p = 0; p < phi_steps; ++p) grid.at(t, p) = q_value(state, grid.theta(t), grid.phi(p));
    }
    return grid;
}

inline SphericalGrid q_function(const StateVector& state, const SpinSystem& sys, std::size_t theta_steps,
                                std::size_t phi_steps) {
    if (state.dim() != sys.dim()) throw ConfigError("state dimension does not match spin system");
    return q_function(state, theta_steps, phi_steps);
}

/// Width (radians) of the region around grid point (t, p) where Q stays above
/// half its value, measured along theta (fixed p) and along phi (fixed t).
struct HalfMaxWidths {
    double theta_width;
    double phi_width;
};

inline HalfMaxWidths half_max_widths(const SphericalGrid& grid, std::size_t t0, std::size_t p0) {
    const double half = 0.5 * grid.at(t0, p0);
    std::size_t lo = t0;
    while (lo > 0 && grid.at(lo - 1, p0) >= half) --lo;
    std::size_t hi = t0;
    while (hi + 1 < grid.theta_steps() && grid.at(hi + 1, p0) >= half) ++hi;
    const double dt = std::numbers::pi / static_cast<double>(grid.theta_steps() - 1);

    const std::size_t np = grid.phi_steps();
    std::size_t left = 0;
    while (left < np && grid.at(t0, (p0 + np - left - 1) % np) >= half) ++left;
    std::size_t right = 0;
    while (right < np && grid.at(t0, (p0 + right + 1) % np) >= half) ++right;
    const double dp = 2.0 * std::numbers::pi / static_cast<double>(np);
    return {static_cast<double>(hi - lo) * dt, static_cast<double>(std::min(np, left + right)) * dp};
}

}  // namespace spinoracle
