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

// Two-axis counter-twisting of the equatorial coherent state |pi/2, 0>,
// the optimal squeezing parameter, and how close the result is to the
// two-component superposition (|N/2-1> + |N/2>)/sqrt(2).

#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "spinoracle/linalg.hpp"
#include "spinoracle/minimize.hpp"
#include "spinoracle/rational.hpp"
#include "spinoracle/spin_core.hpp"

namespace spinoracle {

inline constexpr double kMirrorTolerance = 1e-9;
inline constexpr double kDistributionSumTolerance = 1e-12;
inline constexpr int kMuScanIntervals = 64;

/// (Sx) as a real symmetric tridiagonal matrix.
inline RMatrix sx_generator(const SpinSystem& sys) {
    const RMatrix sp = raising_matrix(sys);
    return 0.5 * (sp + sp.transpose());
}

/// Sz^2 - Sy^2, real pentadiagonal.
///
/// Sy = (S+ - S-)/(2i), so Sy^2 = -D^2/4 with D = S+ - S- real; D^2 only has
/// the main diagonal and the +-2 diagonals.
inline RMatrix twist_generator(const SpinSystem& sys) {
    const auto n = static_cast<Eigen::Index>(sys.dim());
    const RMatrix sp = raising_matrix(sys);
    // a(i) = <i+1|S+|i>
    auto a = [&](Eigen::Index i) { return (i >= 0 && i + 1 < n) ? sp(i + 1, i) : 0.0; };
    RMatrix g = RMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double m = sys.dicke_label(static_cast<std::size_t>(i));
        g(i, i) = m * m - 0.25 * (a(i - 1) * a(i - 1) + a(i) * a(i));
        if (i + 2 < n) {
            const double off = 0.25 * a(i) * a(i + 1);
            g(i + 2, i) = off;
            g(i, i + 2) = off;
        }
    }
    return g;
}

/// Precomputed eigendecompositions for U(mu) = exp(i pi/4 Sx) exp(-i mu (Sz^2 - Sy^2))
/// acting on |pi/2, 0>.
///
/// The twisting factor carries exp(-i mu G). With the standard S+- phase
/// convention |pi/2, 0> points along +x, and this is the sign for which mu > 0
/// lowers <Sz^2>; the opposite sign only mirrors the state (identical
/// probabilities at -mu).
class TwoAxisSqueezer {
   public:
    explicit TwoAxisSqueezer(const SpinSystem& sys)
        : sys_(sys),
          rotation_(sx_generator(sys)),
          twist_(twist_generator(sys)),
          input_(coherent_state(sys, std::numbers::pi / 2.0, 0.0).amplitudes()) {}

    const SpinSystem& system() const { return sys_; }

    CVector squeezed_amplitudes(double mu) const {
        return rotation_.apply(std::numbers::pi / 4.0, twist_.apply(-mu, input_));
    }

    StateVector squeezed_state(double mu) const { return StateVector::normalized(squeezed_amplitudes(mu)); }

    /// <Sz^2> - <Sz>^2 of U(mu)|pi/2,0>.
    double reduced_variance(double mu) const {
        const CVector psi = squeezed_amplitudes(mu);
        double m1 = 0.0;
        double m2 = 0.0;
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            const double p = std::norm(psi(i));
            const double m = sys_.dicke_label(static_cast<std::size_t>(i));
            m1 += p * m;
            m2 += p * m * m;
        }
        return m2 - m1 * m1;
    }

    OperatorMatrix squeeze_operator(double mu) const {
        return OperatorMatrix(rotation_.matrix(std::numbers::pi / 4.0) * twist_.matrix(-mu), {.unitary = true});
    }

   private:
    SpinSystem sys_;
    RealSymmetricExponential rotation_;
    RealSymmetricExponential twist_;
    CVector input_;
};

inline OperatorMatrix squeeze_operator(const SpinSystem& sys, double mu) {
    if (!std::isfinite(mu)) throw ConfigError("squeezing parameter must be finite");
    return TwoAxisSqueezer(sys).squeeze_operator(mu);
}

/// <Sz^2> - <Sz>^2.
inline double reduced_variance(const StateVector& state, const SpinSystem& sys) {
    if (state.dim() != sys.dim()) throw ConfigError("state dimension does not match spin system");
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state[i]);
        const double m = sys.dicke_label(i);
        m1 += p * m;
        m2 += p * m * m;
    }
    return m2 - m1 * m1;
}

inline void require_distribution(std::span<const double> p) {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw ConfigError("probability distribution has a negative entry");
        sum += v;
    }
    if (p.empty() || std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("probability distribution sums to " + std::to_string(sum));
    }
}

/// Sum i^2 P_i - (Sum i P_i)^2 over qudit indices.
inline double distribution_variance(std::span<const double> p) {
    require_distribution(p);
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = static_cast<double>(i);
        m1 += x * p[i];
        m2 += x * x * p[i];
    }
    return m2 - m1 * m1;
}

/// P_{N/2-1}, after checking it equals P_{N/2}.
inline double central_probability(std::span<const double> p) {
    if (p.size() < 2 || p.size() % 2 != 0) throw ConfigError("central probability needs an even-length distribution");
    const std::size_t lo = p.size() / 2 - 1;
    const double gap = std::abs(p[lo] - p[lo + 1]);
    if (gap >= kMirrorTolerance) {
        throw InvariantViolation("central pair is asymmetric: |P_lo - P_hi| = " + std::to_string(gap));
    }
    return p[lo];
}

/// |<Psi0|state>|^2 with |Psi0> = (|N/2-1> + |N/2>)/sqrt(2).
inline double ideal_overlap(const StateVector& state) {
    if (state.dim() < 2 || state.dim() % 2 != 0) throw ConfigError("ideal overlap needs an even dimension");
    const std::size_t lo = state.dim() / 2 - 1;
    return 0.5 * std::norm(state[lo] + state[lo + 1]);
}

struct SqueezeResult {
    double mu;
    StateVector state;
    double v_minus;
    std::vector<double> distribution;
};

/// Checks the structural invariants of an optimally squeezed distribution.
inline void validate_squeeze_distribution(std::span<const double> p) {
    double sum = 0.0;
    for (double v : p) sum += v;
    if (std::abs(sum - 1.0) > kDistributionSumTolerance) {
        throw InvariantViolation("squeezed distribution sums to " + std::to_string(sum));
    }
    for (std::size_t i = 0; i < p.size() / 2; ++i) {
        if (std::abs(p[i] - p[p.size() - 1 - i]) >= kMirrorTolerance) {
            throw InvariantViolation("squeezed distribution is not mirror symmetric at index " + std::to_string(i));
        }
    }
}

namespace detail {

inline std::string format_scan_trace(const std::vector<ScanPoint>& pts) {
    std::string out;
    for (const auto& p : pts) out += "(" + std::to_string(p.x) + ", " + std::to_string(p.fx) + ") ";
    return out;
}

}  // namespace detail

/// Finds mu_opt, the squeezing parameter minimizing the reduced variance.
///
/// A uniform scan of [0, 4/s] locates the first interior local minimum (the
/// physically relevant one; at N=4 a second, equally deep minimum exists at
/// 5 pi/(6 sqrt 3)), then golden section refines it to `tol` in mu. If the
/// scan shows no interior minimum the upper end is doubled, twice.
inline SqueezeResult optimize_mu(const TwoAxisSqueezer& squeezer, double tol) {
    if (!(tol > 0.0)) throw ConfigError("mu tolerance must be positive");
    const double s = squeezer.system().s();
    auto v = [&](double mu) { return squeezer.reduced_variance(mu); };
    double hi = 4.0 / s;
    std::vector<ScanPoint> scan;
    int k = -1;
    for (int attempt = 0; attempt < 3 && k < 0; ++attempt, hi *= 2.0) {
        scan = uniform_scan(v, 0.0, hi, kMuScanIntervals);
        k = first_interior_minimum(scan);
    }
    if (k < 0) {
        throw NumericalError("no interior minimum of the reduced variance; scan trace: " +
                             detail::format_scan_trace(scan));
    }
    const auto idx = static_cast<std::size_t>(k);
    const MinimizeResult best = golden_section_minimize(v, scan[idx - 1].x, scan[idx + 1].x, tol);
    StateVector state = squeezer.squeezed_state(best.x);
    std::vector<double> dist = state.probabilities();
    validate_squeeze_distribution(dist);
    return SqueezeResult{best.x, std::move(state), best.fx, std::move(dist)};
}

inline SqueezeResult optimize_mu(const SpinSystem& sys, double tol) { return optimize_mu(TwoAxisSqueezer(sys), tol); }

/// Eight-point tail template around the central pair:
///   eps/3, 2eps/3, 0, 1/2-eps, 1/2-eps, 0, 2eps/3, eps/3
/// with eps fixed by requiring its variance to equal 1/2.
struct BoundingDistribution {
    Fraction epsilon;
    Fraction pc;
};

namespace detail {

// Template entry as a + b*eps; offsets are measured in half-units from the
// centre (N-1)/2 so they stay integral: -7, -5, -3, -1, 1, 3, 5, 7.
struct AffineEntry {
    int twice_offset;
    Fraction constant;
    Fraction eps_coeff;
};

inline std::vector<AffineEntry> bounding_template_affine() {
    const Fraction third(1, 3);
    const Fraction half(1, 2);
    return {
        {-7, 0, third}, {-5, 0, 2 * third}, {-3, 0, 0}, {-1, half, -1},
        {1, half, -1},  {3, 0, 0},          {5, 0, 2 * third}, {7, 0, third},
    };
}

}  // namespace detail

/// Solves Var[template] = 1/2 exactly.
inline BoundingDistribution bounding_epsilon() {
    const auto entries = detail::bounding_template_affine();
    Fraction mean_c = 0, mean_e = 0, sq_c = 0, sq_e = 0;
    for (const auto& e : entries) {
        const Fraction x(e.twice_offset, 2);
        mean_c += x * e.constant;
        mean_e += x * e.eps_coeff;
        sq_c += x * x * e.constant;
        sq_e += x * x * e.eps_coeff;
    }
    // The template is symmetric, so the mean is exactly zero and the variance is affine in eps.
    if (mean_c != Fraction(0) || mean_e != Fraction(0)) throw InvariantViolation("bounding template is not centred");
    const Fraction eps = (Fraction(1, 2) - sq_c) / sq_e;
    return {eps, Fraction(1, 2) - eps};
}

/// The template placed on N levels (N >= 8), zeros elsewhere.
inline std::vector<Fraction> bounding_template_exact(std::size_t dim, const Fraction& eps) {
    if (dim < 8 || dim % 2 != 0) throw ConfigError("bounding template needs an even N >= 8");
    std::vector<Fraction> p(dim, Fraction(0));
    const std::size_t centre_hi = dim / 2;
    for (const auto& e : detail::bounding_template_affine()) {
        const auto index = static_cast<std::size_t>(static_cast<long>(centre_hi) + (e.twice_offset - 1) / 2);
        p[index] = e.constant + e.eps_coeff * eps;
    }
    return p;
}

inline std::vector<double> bounding_template(std::size_t dim, const BoundingDistribution& b) {
    const auto exact = bounding_template_exact(dim, b.epsilon);
    std::vector<double> out(exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i) out[i] = to_double(exact[i]);
    return out;
}

/// One row of the squeezing sweep.
struct SweepRow {
    double s;
    double mu_opt;
    double v_min;
    double p_c;
    double overlap;
};

inline SweepRow sweep_row(const SqueezeResult& r, const SpinSystem& sys) {
    return {sys.s(), r.mu, r.v_minus, central_probability(r.distribution), ideal_overlap(r.state)};
}

}  // namespace spinoracle
