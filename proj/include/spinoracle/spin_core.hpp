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

// Spin-s systems with 2s+1 = N = 2^n, the Dicke basis, spin operators and
// coherent spin states.
//
// Index convention used everywhere in this library:
//
//     qudit index i  <->  Dicke label m = i - s
//
// so i = 0 is |-s>, i = N-1 is |s>, and the central pair i = N/2-1, N/2 is
// |-1/2>, |+1/2>.  Sums written over |s-k> use k = N-1-i.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinoracle/errors.hpp"

namespace spinoracle {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr int kMinExponent = 2;
inline constexpr int kMaxExponent = 14;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

namespace detail {

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int log2_exact(std::size_t v) {
    int e = 0;
    while ((std::size_t{1} << e) < v) ++e;
    return e;
}

inline double log_binomial(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

// sqrt(C(n,k)) * c^(n-k) * s^k for c, s >= 0, evaluated in log space so that
// n in the thousands does not overflow.
inline double binomial_weight(std::size_t n, std::size_t k, double c, double s) {
    if (k > 0 && s == 0.0) return 0.0;
    if (k < n && c == 0.0) return 0.0;
    double log_w = 0.5 * log_binomial(n, k);
    if (k < n) log_w += static_cast<double>(n - k) * std::log(c);
    if (k > 0) log_w += static_cast<double>(k) * std::log(s);
    return std::exp(log_w);
}

}  // namespace detail

/// Dimensions of an S-spin system: n qubits' worth of levels, N = 2^n = 2s+1.
class SpinSystem {
   public:
    int n() const { return n_; }
    std::size_t dim() const { return dim_; }
    double s() const { return 0.5 * static_cast<double>(dim_ - 1); }
    /// 2s, always odd.
    std::size_t two_s() const { return dim_ - 1; }

    double dicke_label(std::size_t i) const { return static_cast<double>(i) - s(); }
    std::size_t qudit_index(double m) const {
        const double i = m + s();
        if (i < 0.0 || i > static_cast<double>(dim_ - 1) || std::floor(i) != i) {
            throw ConfigError("Dicke label out of range for spin system");
        }
        return static_cast<std::size_t>(i);
    }

    /// |-1/2> and |+1/2>.
    std::size_t central_low() const { return dim_ / 2 - 1; }
    std::size_t central_high() const { return dim_ / 2; }

    friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

   private:
    friend SpinSystem make_spin_system(int n);
    explicit SpinSystem(int n) : n_(n), dim_(std::size_t{1} << n) {}
    int n_;
    std::size_t dim_;
};

inline SpinSystem make_spin_system(int n) {
    if (n < kMinExponent || n > kMaxExponent) {
        throw ConfigError("spin system exponent n=" + std::to_string(n) + " outside [" +
                          std::to_string(kMinExponent) + ", " + std::to_string(kMaxExponent) + "]");
    }
    return SpinSystem(n);
}

/// Spin system with the given dimension N (must be 2^n with n in range).
inline SpinSystem spin_system_for_dim(std::size_t dim) {
    if (!detail::is_power_of_two(dim)) {
        throw ConfigError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return make_spin_system(detail::log2_exact(dim));
}

/// Unit-norm amplitude vector in the qudit basis.
class StateVector {
   public:
    /// Takes amplitudes that are already normalized; throws InvariantViolation otherwise.
    static StateVector from_amplitudes(CVector amps) {
        const double nrm = amps.squaredNorm();
        if (amps.size() == 0 || std::abs(nrm - 1.0) > kNormTolerance) {
            throw InvariantViolation("state vector norm^2 = " + std::to_string(nrm) + ", expected 1");
        }
        return StateVector(std::move(amps));
    }

    static StateVector normalized(CVector amps) {
        const double nrm = amps.norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw InvariantViolation("cannot normalize a zero or non-finite vector");
        }
        amps /= nrm;
        return StateVector(std::move(amps));
    }

    static StateVector basis(std::size_t dim, std::size_t index) {
        if (index >= dim) throw ConfigError("basis index out of range");
        CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return StateVector(std::move(v));
    }

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const CVector& amplitudes() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
    double norm_squared() const { return amps_.squaredNorm(); }

    std::vector<double> probabilities() const {
        std::vector<double> p(dim());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps_(static_cast<Eigen::Index>(i)));
        return p;
    }

   private:
    explicit StateVector(CVector amps) : amps_(std::move(amps)) {}
    CVector amps_;
};

/// |<a|b>|^2.
inline double overlap_probability(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw ConfigError("overlap of states with different dimensions");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// max_i |a_i - b_i|, phase sensitive.
inline double max_amplitude_deviation(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw ConfigError("comparing states with different dimensions");
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

inline void to_json(nlohmann::json& j, const StateVector& state) {
    j = nlohmann::json::array();
    for (std::size_t i = 0; i < state.dim(); ++i) j.push_back({state[i].real(), state[i].imag()});
}

struct MatrixFlags {
    bool hermitian = false;
    bool unitary = false;
    bool diagonal = false;
};

/// Dense N x N operator whose declared structure flags were checked on construction.
class OperatorMatrix {
   public:
    OperatorMatrix(CMatrix m, MatrixFlags flags) : m_(std::move(m)), flags_(flags) {
        if (m_.rows() != m_.cols()) throw InvariantViolation("operator matrix is not square");
        const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
        if (flags_.hermitian) {
            const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
            if (dev > kHermitianTolerance * scale) {
                throw InvariantViolation("matrix declared hermitian deviates by " + std::to_string(dev));
            }
        }
        if (flags_.unitary) {
            const auto id = CMatrix::Identity(m_.rows(), m_.cols());
            const double dev = (m_.adjoint() * m_ - id).cwiseAbs().maxCoeff();
            if (dev > kUnitaryTolerance) {
                throw InvariantViolation("matrix declared unitary deviates by " + std::to_string(dev));
            }
        }
        if (flags_.diagonal) {
            CMatrix off = m_;
            off.diagonal().setZero();
            if (off.cwiseAbs().maxCoeff() > 0.0) throw InvariantViolation("matrix declared diagonal is not");
        }
    }

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix& matrix() const { return m_; }
    MatrixFlags flags() const { return flags_; }

    CVector operator*(const CVector& v) const { return m_ * v; }

    /// Only meaningful for unitary operators; the result is re-validated as a state.
    StateVector apply(const StateVector& state) const {
        if (!flags_.unitary) throw InvariantViolation("apply() requires a unitary operator");
        return StateVector::from_amplitudes(m_ * state.amplitudes());
    }

   private:
    CMatrix m_;
    MatrixFlags flags_;
};

struct SpinOperators {
    OperatorMatrix sx;
    OperatorMatrix sy;
    OperatorMatrix sz;
    OperatorMatrix splus;
    OperatorMatrix sminus;
    OperatorMatrix s2;
};

/// Real tridiagonal S+ with <m+1|S+|m> = sqrt(s(s+1) - m(m+1)).
inline RMatrix raising_matrix(const SpinSystem& sys) {
    const auto n = static_cast<Eigen::Index>(sys.dim());
    const double s = sys.s();
    RMatrix sp = RMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double m = sys.dicke_label(static_cast<std::size_t>(i));
        sp(i + 1, i) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    return sp;
}

inline SpinOperators spin_operators(const SpinSystem& sys) {
    const auto n = static_cast<Eigen::Index>(sys.dim());
    const RMatrix sp_real = raising_matrix(sys);
    const CMatrix sp = sp_real.cast<Complex>();
    const CMatrix sm = sp.adjoint();
    CMatrix sz = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) sz(i, i) = sys.dicke_label(static_cast<std::size_t>(i));
    const CMatrix sx = (sp + sm) / 2.0;
    const CMatrix sy = (sp - sm) / Complex(0.0, 2.0);
    CMatrix s2 = sx * sx + sy * sy + sz * sz;

    return SpinOperators{
        OperatorMatrix(sx, {.hermitian = true}),
        OperatorMatrix(sy, {.hermitian = true}),
        OperatorMatrix(sz, {.hermitian = true, .diagonal = true}),
        OperatorMatrix(sp, {}),
        OperatorMatrix(sm, {}),
        OperatorMatrix(std::move(s2), {.hermitian = true}),
    };
}

/// |theta, phi>: amplitude sqrt(C(2s,k)) cos^(2s-k)(theta/2) sin^k(theta/2) e^(i k phi) on |s-k>.
///
/// The cos/sin product form is the tan form multiplied through by
/// cos^(2s)(theta/2), so theta = pi needs no special case.
inline StateVector coherent_state(const SpinSystem& sys, double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw ConfigError("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw ConfigError("phi must lie in [0, 2pi)");
    const std::size_t two_s = sys.two_s();
    const double c = std::cos(theta / 2.0);
    const double sn = std::sin(theta / 2.0);
    CVector amps(static_cast<Eigen::Index>(sys.dim()));
    for (std::size_t k = 0; k <= two_s; ++k) {
        const double w = detail::binomial_weight(two_s, k, c, sn);
        amps(static_cast<Eigen::Index>(two_s - k)) = std::polar(w, static_cast<double>(k) * phi);
    }
    // Exact norm is 1; this only removes lgamma round-off.
    return StateVector::normalized(std::move(amps));
}

inline double expectation(const StateVector& state, const OperatorMatrix& op) {
    return state.amplitudes().dot(op * state.amplitudes()).real();
}

/// <A^2> - <A>^2 for Hermitian A, with <A^2> = ||A psi||^2.
inline double variance(const StateVector& state, const OperatorMatrix& op) {
    const CVector a_psi = op * state.amplitudes();
    const double mean = state.amplitudes().dot(a_psi).real();
    return a_psi.squaredNorm() - mean * mean;
}

enum class Axis { x, y, z };

inline const OperatorMatrix& component(const SpinOperators& ops, Axis a) {
    switch (a) {
        case Axis::x:
            return ops.sx;
        case Axis::y:
            return ops.sy;
        case Axis::z:
            return ops.sz;
    }
    return ops.sz;
}

struct UncertaintyTriplet {
    double var_i;
    double var_j;
    double mean_k;

    /// Slack in var_i var_j >= <S_k>^2 / 4; non-negative when the relation holds.
    double heisenberg_slack() const { return var_i * var_j - 0.25 * mean_k * mean_k; }
};

inline UncertaintyTriplet uncertainty_triplet(const StateVector& state, const SpinOperators& ops, Axis i, Axis j,
                                              Axis k) {
    return {variance(state, component(ops, i)), variance(state, component(ops, j)),
            expectation(state, component(ops, k))};
}

}  // namespace spinoracle
