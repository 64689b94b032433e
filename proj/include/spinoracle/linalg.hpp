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

#include <Eigen/Eigenvalues>

#include <string>

#include "spinoracle/spin_core.hpp"

namespace spinoracle {

/// exp(i t H) for a fixed real symmetric generator H, via H = V diag(lambda) V^T.
///
/// All spin generators used here (Sx, Sz^2 - Sy^2) are real in the Dicke
/// basis, so the real solver is used and V stays real.
class RealSymmetricExponential {
   public:
    explicit RealSymmetricExponential(const RMatrix& generator) {
        if (generator.rows() != generator.cols()) throw InvariantViolation("generator is not square");
        const double scale = std::max(1.0, generator.cwiseAbs().maxCoeff());
        const double asym = (generator - generator.transpose()).cwiseAbs().maxCoeff();
        if (asym > kHermitianTolerance * scale) {
            throw InvariantViolation("generator is not symmetric (deviation " + std::to_string(asym) + ")");
        }
        Eigen::SelfAdjointEigenSolver<RMatrix> solver(generator);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("eigendecomposition failed: N=" + std::to_string(generator.rows()) +
                                 ", max|H|=" + std::to_string(scale) +
                                 ", info=" + std::to_string(static_cast<int>(solver.info())));
        }
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = solver.eigenvectors();
    }

    const RVector& eigenvalues() const { return eigenvalues_; }
    const RMatrix& eigenvectors() const { return eigenvectors_; }
    Eigen::Index dim() const { return eigenvalues_.size(); }

    /// exp(i t H) v without materializing the N x N exponential.
    CVector apply(double t, const CVector& v) const {
        // V^T v split into real and imaginary parts keeps every product real.
        const RVector re = eigenvectors_.transpose() * v.real();
        const RVector im = eigenvectors_.transpose() * v.imag();
        CVector coeffs(dim());
        for (Eigen::Index k = 0; k < dim(); ++k) {
            coeffs(k) = std::polar(1.0, t * eigenvalues_(k)) * Complex(re(k), im(k));
        }
        CVector out(dim());
        out.real() = eigenvectors_ * coeffs.real();
        out.imag() = eigenvectors_ * coeffs.imag();
        return out;
    }

    CMatrix matrix(double t) const {
        CVector phases(dim());
        for (Eigen::Index k = 0; k < dim(); ++k) phases(k) = std::polar(1.0, t * eigenvalues_(k));
        const CMatrix v = eigenvectors_.cast<Complex>();
        return v * phases.asDiagonal() * v.transpose();
    }

   private:
    RVector eigenvalues_;
    RMatrix eigenvectors_;
};

}  // namespace spinoracle
