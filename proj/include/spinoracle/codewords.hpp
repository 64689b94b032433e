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

// Hadamard codewords W_j, Fourier codewords T_j, error syndromes and
// problem instances for the close-Hadamard and simple-Fourier decision
// problems.
//
// Bit x of W_j is <j, x> mod 2 (Sylvester order), so W_{N-1}(x) is the
// parity of x and "restricted" errors are exactly the odd-parity positions.

#pragma once

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spinoracle/errors.hpp"
#include "spinoracle/random.hpp"
#include "spinoracle/rational.hpp"

namespace spinoracle {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kMaxCodeLength = std::size_t{1} << 20;
inline constexpr std::uint64_t kEnumerationLimit = 1'000'000;

inline void validate_code_length(std::size_t n) {
    if (n < 4 || n > kMaxCodeLength || (n & (n - 1)) != 0) {
        throw ConfigError("code length N=" + std::to_string(n) + " must be a power of two in [4, 2^20]");
    }
}

inline bool parity(std::size_t v) { return (std::popcount(v) & 1U) != 0; }

/// Index of the codeword whose strings form set A: N/2 - 1.
inline std::size_t designated_codeword(std::size_t n) { return n / 2 - 1; }

class BitString {
   public:
    BitString() = default;
    explicit BitString(std::size_t length) : bits_(length, 0) {}

    /// Parses '0'/'1' characters; position 0 is the leftmost character.
    static BitString from_string(std::string_view s) {
        BitString b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '0' && s[i] != '1') throw ConfigError("bit string may only contain 0 and 1");
            b.bits_[i] = s[i] == '1';
        }
        return b;
    }

    std::size_t size() const { return bits_.size(); }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }

    std::size_t weight() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

    /// a dominated by b: a_i = 1 implies b_i = 1.
    bool dominated_by(const BitString& b) const {
        if (b.size() != size()) throw ConfigError("dominance between strings of different length");
        for (std::size_t i = 0; i < size(); ++i) {
            if (bits_[i] && !b.bits_[i]) return false;
        }
        return true;
    }

    std::string to_string() const {
        std::string s(size(), '0');
        for (std::size_t i = 0; i < size(); ++i) s[i] = bits_[i] ? '1' : '0';
        return s;
    }

    friend BitString operator^(const BitString& a, const BitString& b) {
        if (a.size() != b.size()) throw ConfigError("xor of strings of different length");
        BitString out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out.bits_[i] = a.bits_[i] ^ b.bits_[i];
        return out;
    }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

   private:
    std::vector<std::uint8_t> bits_;
};

inline std::size_t hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) throw ConfigError("Hamming distance of strings of different length");
    return (a ^ b).weight();
}

struct Codeword {
    std::size_t index;
    BitString bits;
};

/// Row j of log_{-1}(sqrt(N) H^{(x)n}).
inline Codeword hadamard_codeword(std::size_t n, std::size_t j) {
    validate_code_length(n);
    if (j >= n) throw ConfigError("codeword index out of range");
    BitString b(n);
    for (std::size_t x = 0; x < n; ++x) b.set(x, parity(j & x));
    return {j, std::move(b)};
}

/// Row j of log_{-1}(sqrt(N) F), values exact and reduced into (-1, 1].
///
/// Uses omega = e^{2 pi i / N}: t_k = 2jk/N mod 2, which is what the printed
/// T^(8) table contains (omega = e^{i pi / N} would give t_k = jk/N).
struct FractionalWord {
    std::size_t index;
    std::vector<Fraction> values;

    std::size_t size() const { return values.size(); }

    /// Exact fractions joined by commas, e.g. "0,1/4,1/2,3/4,1,-3/4,-1/2,-1/4".
    std::string to_string() const {
        std::string out;
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (k) out += ',';
            out += spinoracle::to_string(values[k]);
        }
        return out;
    }

    friend bool operator==(const FractionalWord& a, const FractionalWord& b) { return a.values == b.values; }
};

inline FractionalWord fourier_codeword(std::size_t n, std::size_t j) {
    validate_code_length(n);
    if (j >= n) throw ConfigError("codeword index out of range");
    FractionalWord w{j, std::vector<Fraction>(n)};
    const auto big_n = static_cast<std::int64_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
        // 2jk/N mod 2 == 2((jk) mod N)/N, keeps the numerator small.
        const auto jk = static_cast<std::int64_t>((j * k) % n);
        w.values[k] = reduce_mod2_signed(Fraction(2 * jk, big_n));
    }
    return w;
}

/// Componentwise sum reduced mod 2 into (-1, 1]. The index is not meaningful for the result.
inline FractionalWord add_mod2(const FractionalWord& a, const FractionalWord& b) {
    if (a.size() != b.size()) throw ConfigError("adding fractional words of different length");
    FractionalWord out{0, std::vector<Fraction>(a.size())};
    for (std::size_t k = 0; k < a.size(); ++k) out.values[k] = reduce_mod2_signed(a.values[k] + b.values[k]);
    return out;
}

struct ErrorSyndrome {
    BitString mask;
    bool restricted = false;

    std::size_t weight() const { return mask.weight(); }
};

/// Positions where an error may occur: all N, or the N/2 where W_{N-1} has a one.
inline std::vector<std::size_t> error_positions(std::size_t n, bool restricted) {
    std::vector<std::size_t> pos;
    pos.reserve(restricted ? n / 2 : n);
    for (std::size_t x = 0; x < n; ++x) {
        if (!restricted || parity(x)) pos.push_back(x);
    }
    return pos;
}

inline ErrorSyndrome make_syndrome(BitString mask, bool restricted) {
    validate_code_length(mask.size());
    if (restricted && !mask.dominated_by(hadamard_codeword(mask.size(), mask.size() - 1).bits)) {
        throw InvariantViolation("restricted syndrome is not dominated by W_{N-1}");
    }
    return {std::move(mask), restricted};
}

inline BigInt binomial_exact(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline void validate_syndrome_weight(std::size_t n, std::size_t d, bool restricted) {
    validate_code_length(n);
    const std::size_t limit = restricted ? n / 2 : n;
    if (d > limit) {
        throw ConfigError("syndrome weight d=" + std::to_string(d) + " exceeds " + std::to_string(limit));
    }
}

/// |U_d| = C(N, d) or |R_d| = C(N/2, d).
inline BigInt syndrome_count(std::size_t n, std::size_t d, bool restricted) {
    validate_syndrome_weight(n, d, restricted);
    return binomial_exact(restricted ? n / 2 : n, d);
}

/// Calls f(const ErrorSyndrome&) for every weight-d mask, in lexicographic
/// order of the chosen position sets.
template <class F>
void for_each_syndrome(std::size_t n, std::size_t d, bool restricted, F&& f) {
    validate_syndrome_weight(n, d, restricted);
    const auto pos = error_positions(n, restricted);
    std::vector<std::size_t> pick(d);
    for (std::size_t i = 0; i < d; ++i) pick[i] = i;
    while (true) {
        BitString mask(n);
        for (std::size_t i : pick) mask.set(pos[i], true);
        f(ErrorSyndrome{std::move(mask), restricted});
        // next combination
        std::size_t i = d;
        while (i > 0 && pick[i - 1] == pos.size() - d + (i - 1)) --i;
        if (i == 0) return;
        ++pick[i - 1];
        for (std::size_t k = i; k < d; ++k) pick[k] = pick[k - 1] + 1;
    }
}

/// All weight-d syndromes; refuses more than 10^6 (use sample_syndrome instead).
inline std::vector<ErrorSyndrome> enumerate_syndromes(std::size_t n, std::size_t d, bool restricted) {
    if (syndrome_count(n, d, restricted) > kEnumerationLimit) {
        throw ResourceError("syndrome set larger than the enumeration limit; sample instead");
    }
    std::vector<ErrorSyndrome> out;
    for_each_syndrome(n, d, restricted, [&](const ErrorSyndrome& e) { out.push_back(e); });
    return out;
}

/// Uniform weight-d syndrome: a uniform d-subset of the allowed positions.
inline ErrorSyndrome sample_syndrome(std::size_t n, std::size_t d, bool restricted, Rng& rng) {
    validate_syndrome_weight(n, d, restricted);
    auto pos = error_positions(n, restricted);
    // partial Fisher-Yates
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t k = i + uniform_index(rng, pos.size() - i);
        std::swap(pos[i], pos[k]);
    }
    BitString mask(n);
    for (std::size_t i = 0; i < d; ++i) mask.set(pos[i], true);
    return {std::move(mask), restricted};
}

/// Size of the restricted neighbourhood of one codeword, closed form:
/// (2^{N/2} - C(N/2, N/4)) / 2.
inline BigInt restricted_set_size(std::size_t n) {
    validate_code_length(n);
    if (n < 8) throw ConfigError("restricted set size is defined for N >= 8");
    BigInt two_pow = 1;
    two_pow <<= static_cast<unsigned>(n / 2);
    return (two_pow - binomial_exact(n / 2, n / 4)) / 2;
}

/// Same quantity as a direct sum over m in Z_{N/4} of C(N/2, m).
inline BigInt restricted_set_size_by_sum(std::size_t n) {
    validate_code_length(n);
    BigInt total = 0;
    for (std::size_t m = 0; m < n / 4; ++m) total += binomial_exact(n / 2, m);
    return total;
}

struct LawViolation {
    std::string law;
    std::size_t j;
    std::size_t k;
};

struct GroupReport {
    std::size_t n;
    std::size_t checks = 0;
    std::vector<LawViolation> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks, exactly:
///   W_j ^ W_j = W_0,  W_j ^ W_{N-1-j} = W_{N-1},  W_j ^ W_k = W_{j xor k},
///   T_j + T_{N-j} = T_0,  T_j + T_{N/2-j} = T_{N/2}  (indices mod N).
inline GroupReport group_properties_check(std::size_t n) {
    validate_code_length(n);
    GroupReport report{n, 0, {}};
    std::vector<Codeword> w;
    std::vector<FractionalWord> t;
    w.reserve(n);
    t.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        w.push_back(hadamard_codeword(n, j));
        t.push_back(fourier_codeword(n, j));
    }
    auto check = [&](bool ok, const char* law, std::size_t j, std::size_t k) {
        ++report.checks;
        if (!ok) report.violations.push_back({law, j, k});
    };
    for (std::size_t j = 0; j < n; ++j) {
        check((w[j].bits ^ w[j].bits) == w[0].bits, "hadamard_self_inverse", j, j);
        check((w[j].bits ^ w[n - 1 - j].bits) == w[n - 1].bits, "hadamard_complement_sum", j, n - 1 - j);
        for (std::size_t k = 0; k < n; ++k) {
            check((w[j].bits ^ w[k].bits) == w[j ^ k].bits, "hadamard_xor_closure", j, k);
        }
        const std::size_t inv = (n - j) % n;
        check(add_mod2(t[j], t[inv]) == t[0], "fourier_inverse", j, inv);
        const std::size_t partner = (n / 2 + n - j) % n;
        check(add_mod2(t[j], t[partner]) == t[n / 2], "fourier_half_sum", j, partner);
    }
    return report;
}

enum class Variant { restricted, unrestricted, fourier };
enum class Label { A, B };

inline std::string to_string(Variant v) {
    switch (v) {
        case Variant::restricted:
            return "restricted";
        case Variant::unrestricted:
            return "unrestricted";
        case Variant::fourier:
            return "fourier";
    }
    return "?";
}

inline Variant parse_variant(std::string_view s) {
    if (s == "restricted") return Variant::restricted;
    if (s == "unrestricted") return Variant::unrestricted;
    if (s == "fourier") return Variant::fourier;
    throw ConfigError("unknown variant '" + std::string(s) + "'");
}

inline std::string to_string(Label l) { return l == Label::A ? "A" : "B"; }

/// Error weights allowed for a variant are Z_bound = {0, ..., bound-1}:
/// restricted N/4, unrestricted N/16, fourier 1 (error free).
inline std::size_t error_weight_bound(Variant v, std::size_t n) {
    switch (v) {
        case Variant::restricted:
            return n / 4;
        case Variant::unrestricted:
            return n / 16;
        case Variant::fourier:
            return 1;
    }
    return 0;
}

using OracleString = std::variant<BitString, FractionalWord>;

struct ProblemInstance {
    Variant variant;
    std::size_t n;
    OracleString z;
    std::size_t hidden_j;
    std::optional<ErrorSyndrome> syndrome;
    Label label;
};

inline Label label_for(std::size_t n, std::size_t j) { return j == designated_codeword(n) ? Label::A : Label::B; }

/// Builds the instance z = syndrome ^ W_j (or T_j for the Fourier variant).
inline ProblemInstance make_instance(Variant variant, std::size_t n, std::size_t j,
                                     std::optional<ErrorSyndrome> syndrome = std::nullopt) {
    validate_code_length(n);
    if (variant == Variant::fourier) {
        if (syndrome && syndrome->weight() != 0) throw ConfigError("the Fourier variant is error free");
        return {variant, n, fourier_codeword(n, j), j, std::nullopt, label_for(n, j)};
    }
    if (j >= n / 2) throw ConfigError("hidden codeword index must lie in Z_{N/2}");
    BitString z = hadamard_codeword(n, j).bits;
    if (syndrome) {
        if (syndrome->mask.size() != n) throw ConfigError("syndrome length mismatch");
        z = z ^ syndrome->mask;
    }
    return {variant, n, std::move(z), j, std::move(syndrome), label_for(n, j)};
}

/// Uniform draw from C = A u B.
///
/// `errors` fixes the error weight d; when absent, d is drawn over Z_bound
/// with weight proportional to the number of strings of that weight, which
/// makes z uniform over the whole neighbourhood. A fixed d outside Z_bound,
/// or an empty Z_bound, is a degenerate instance class.
inline ProblemInstance sample_instance(Variant variant, std::size_t n, std::optional<std::size_t> errors, Rng& rng) {
    validate_code_length(n);
    const std::size_t bound = error_weight_bound(variant, n);
    if (bound == 0) {
        throw DegenerateInstanceError("degenerate instance class: no admissible error weight for " +
                                      to_string(variant) + " at N=" + std::to_string(n));
    }
    if (errors && *errors >= bound) {
        throw DegenerateInstanceError("degenerate instance class: d=" + std::to_string(*errors) + " not in Z_" +
                                      std::to_string(bound) + " for " + to_string(variant) +
                                      " at N=" + std::to_string(n));
    }
    if (variant == Variant::fourier) return make_instance(variant, n, uniform_index(rng, n));

    const std::size_t j = uniform_index(rng, n / 2);
    const bool restricted = variant == Variant::restricted;
    std::size_t d = 0;
    if (errors) {
        d = *errors;
    } else if (bound > 1) {
        std::vector<BigInt> weights;
        BigInt total = 0;
        for (std::size_t m = 0; m < bound; ++m) {
            weights.push_back(syndrome_count(n, m, restricted));
            total += weights.back();
        }
        // Draw a 64-bit fraction of the total; bias is below 2^-64 per bucket.
        BigInt target = (total * BigInt(rng())) >> 64;
        while (d + 1 < bound && target >= weights[d]) {
            target -= weights[d];
            ++d;
        }
    }
    return make_instance(variant, n, j, sample_syndrome(n, d, restricted, rng));
}

/// l unrestricted errors placed "in phase" against codeword j: every error
/// sits at an even-parity position x (W_{N-1}(x) = 0, so nothing cancels)
/// with <c, x> = 0 for one fixed character c. For B-codewords c = j xor (N/2-1),
/// which steers all error amplitude onto the designated output; for j = N/2-1
/// c = 1. Such sets attain the worst-case amplitudes of the l-error analysis.
inline ErrorSyndrome in_phase_syndrome(std::size_t n, std::size_t j, std::size_t l, Rng& rng) {
    validate_code_length(n);
    if (j >= n / 2) throw ConfigError("codeword index must lie in Z_{N/2}");
    const std::size_t c = j == designated_codeword(n) ? 1 : (j ^ designated_codeword(n));
    std::vector<std::size_t> pos;
    for (std::size_t x = 0; x < n; ++x) {
        if (!parity(x) && !parity(c & x)) pos.push_back(x);
    }
    if (l > pos.size()) throw ConfigError("too many in-phase errors for N=" + std::to_string(n));
    for (std::size_t i = 0; i < l; ++i) {
        const std::size_t k = i + uniform_index(rng, pos.size() - i);
        std::swap(pos[i], pos[k]);
    }
    BitString mask(n);
    for (std::size_t i = 0; i < l; ++i) mask.set(pos[i], true);
    return {std::move(mask), false};
}

}  // namespace spinoracle
