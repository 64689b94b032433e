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

#include <cmath>
#include <concepts>
#include <string>
#include <vector>

#include "spinoracle/errors.hpp"

namespace spinoracle {

struct ScanPoint {
    double x;
    double fx;
};

struct MinimizeResult {
    double x;
    double fx;
    int iterations;
};

/// Evaluates f on `intervals + 1` equally spaced points of [lo, hi].
template <std::invocable<double> F>
std::vector<ScanPoint> uniform_scan(F&& f, double lo, double hi, int intervals) {
    std::vector<ScanPoint> pts;
    pts.reserve(static_cast<std::size_t>(intervals) + 1);
    for (int k = 0; k <= intervals; ++k) {
        const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(intervals);
        pts.push_back({x, static_cast<double>(f(x))});
    }
    return pts;
}

/// Index of the first interior point that is no larger than both neighbours, or -1.
inline int first_interior_minimum(const std::vector<ScanPoint>& pts) {
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
        if (pts[k].fx <= pts[k - 1].fx && pts[k].fx <= pts[k + 1].fx) return static_cast<int>(k);
    }
    return -1;
}

/// Golden-section search on [a, b]; stops when the bracket is narrower than `tol`.
///
/// Assumes f is unimodal on [a, b]. Throws NumericalError if the final point is
/// worse than either end of the starting bracket, which means it was not.
template <std::invocable<double> F>
MinimizeResult golden_section_minimize(F&& f, double a, double b, double tol, int max_iterations = 500) {
    if (!(tol > 0.0)) throw ConfigError("minimizer tolerance must be positive");
    if (!(a < b)) throw ConfigError("minimizer bracket must satisfy a < b");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double fa = f(a);
    const double fb = f(b);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int it = 0;
    while (b - a > tol && it < max_iterations) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++it;
    }
    if (b - a > tol) throw NumericalError("golden section did not reach tolerance");
    const double x = 0.5 * (a + b);
    const double fx = f(x);
    if (fx > fa || fx > fb) {
        throw NumericalError("golden section bracket is not unimodal: f(mid)=" + std::to_string(fx) +
                             " exceeds an endpoint value");
    }
    return {x, fx, it};
}

}  // namespace spinoracle
