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

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace spinoracle {

// Compare Fractions only against Fractions. With C++20 rewritten comparisons,
// Boost <= 1.75 resolves `fraction == int` back onto itself and recurses.
using Fraction = boost::rational<std::int64_t>;

/// Reduces x modulo 2 into the half-open interval (-1, 1].
inline Fraction reduce_mod2_signed(Fraction x) {
    const std::int64_t den = x.denominator();
    // x = num/den; work on the numerator modulo 2*den.
    std::int64_t num = x.numerator() % (2 * den);
    if (num <= -den) num += 2 * den;
    if (num > den) num -= 2 * den;
    return Fraction(num, den);
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Fraction& f) {
    if (f.denominator() == 1) return std::to_string(f.numerator());
    return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

inline double to_double(const Fraction& f) { return boost::rational_cast<double>(f); }

}  // namespace spinoracle
