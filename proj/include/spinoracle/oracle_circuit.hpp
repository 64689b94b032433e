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

// The single-mode oracle circuit:
//
//   |Psi0> --R-- U_z --R^dag-- U_{2->1} -- measure designated level
//
// with |Psi0> = (|N/2-1> + |N/2>)/sqrt(2), R = H^{(x)n} (Hadamard variant)
// or the DFT (Fourier variant), and U_z = diag(e^{i pi z_x}).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "spinoracle/codewords.hpp"
#include "spinoracle/random.hpp"
#include "spinoracle/spin_core.hpp"

namespace spinoracle {

/// (|N/2-1> + |N/2>)/sqrt(2), i.e. the spin states |-1/2> and |+1/2>.
inline StateVector input_state(std::size_t n) {
    if (n < 2 || n % 2 != 0) throw ConfigError("input state needs an even dimension");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(n));
    v(static_cast<Eigen::Index>(n / 2 - 1)) = std::numbers::sqrt2 / 2.0;
    v(static_cast<Eigen::Index>(n / 2)) = std::numbers::sqrt2 / 2.0;
    return StateVector::from_amplitudes(std::move(v));
}

inline StateVector input_state(const SpinSystem& sys) { return input_state(sys.dim()); }

/// Normalized in-place fast Walsh-Hadamard transform; length must be 2^n.
inline void fwht_inplace(std::span<Complex> v) {
    const std::size_t n = v.size();
    if (!detail::is_power_of_two(n)) throw ConfigError("Walsh-Hadamard transform needs a power-of-two length");
    for (std::size_t h = 1; h < n; h *= 2) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const Complex a = v[j];
                const Complex b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& x : v) x *= scale;
}

inline StateVector walsh_hadamard(const StateVector& state) {
    CVector v = state.amplitudes();
    fwht_inplace(std::span<Complex>(v.data(), static_cast<std::size_t>(v.size())));
    return StateVector::from_amplitudes(std::move(v));
}

/// Unitary DFT, (F v)_j = Sum_k e^{2 pi i jk/N} v_k / sqrt(N); `inverse` applies F^dag.
/// Radix-2 for powers of two, direct O(N^2) sum otherwise.
inline CVector dft_amplitudes(const CVector& in, bool inverse) {
    const auto n = static_cast<std::size_t>(in.size());
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    if (!detail::is_power_of_two(n)) {
        CVector out = CVector::Zero(in.size());
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                                     static_cast<double>(n);
                acc += std::polar(1.0, angle) * in(static_cast<Eigen::Index>(k));
            }
            out(static_cast<Eigen::Index>(j)) = acc * scale;
        }
        return out;
    }
    CVector v = in;
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v(static_cast<Eigen::Index>(i)), v(static_cast<Eigen::Index>(j)));
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex w = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                                      static_cast<double>(len));
                const auto a = static_cast<Eigen::Index>(i + k);
                const auto b = static_cast<Eigen::Index>(i + k + len / 2);
                const Complex u = v(a);
                const Complex t = w * v(b);
                v(a) = u + t;
                v(b) = u - t;
            }
        }
    }
    return v * scale;
}

inline StateVector dft(const StateVector& state, bool inverse) {
    return StateVector::from_amplitudes(dft_amplitudes(state.amplitudes(), inverse));
}

/// e^{i pi t} for exact t, with the quarter-turn values returned exactly.
inline Complex phase_of(const Fraction& t) {
    const Fraction r = reduce_mod2_signed(t);
    if (r == Fraction(0)) return {1.0, 0.0};
    if (r == Fraction(1)) return {-1.0, 0.0};
    if (r == Fraction(1, 2)) return {0.0, 1.0};
    if (r == Fraction(-1, 2)) return {0.0, -1.0};
    return std::polar(1.0, std::numbers::pi * to_double(r));
}

/// The oracle U_z = diag(e^{i pi z_x}); counts how often it is applied.
class PhaseOracle {
   public:
    explicit PhaseOracle(const BitString& z) : phases_(z.size()) {
        for (std::size_t x = 0; x < z.size(); ++x) phases_[x] = z[x] ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
    }
    explicit PhaseOracle(const FractionalWord& z) : phases_(z.size()) {
        for (std::size_t x = 0; x < z.size(); ++x) phases_[x] = phase_of(z.values[x]);
    }
    explicit PhaseOracle(const OracleString& z)
        : PhaseOracle(std::visit([](const auto& s) { return PhaseOracle(s); }, z)) {}

    std::size_t size() const { return phases_.size(); }
    Complex phase(std::size_t x) const { return phases_[x]; }
    std::size_t query_count() const { return queries_; }

    CVector apply(const CVector& v) {
        if (static_cast<std::size_t>(v.size()) != phases_.size()) throw ConfigError("oracle length mismatch");
        ++queries_;
        CVector out = v;
        for (std::size_t x = 0; x < phases_.size(); ++x) out(static_cast<Eigen::Index>(x)) *= phases_[x];
        return out;
    }

   private:
    std::vector<Complex> phases_;
    std::size_t queries_ = 0;
};

enum class Transform { hadamard, fourier };

/// R^dag U_z R |Psi0>; one oracle query.
inline StateVector run_pipeline(PhaseOracle& oracle, Transform transform) {
    const std::size_t n = oracle.size();
    CVector v = input_state(n).amplitudes();
    if (transform == Transform::hadamard) {
        fwht_inplace(std::span<Complex>(v.data(), n));
        v = oracle.apply(v);
        fwht_inplace(std::span<Complex>(v.data(), n));
    } else {
        v = dft_amplitudes(oracle.apply(dft_amplitudes(v, false)), true);
    }
    return StateVector::from_amplitudes(std::move(v));
}

inline StateVector run_pipeline(const OracleString& z, Transform transform) {
    PhaseOracle oracle(z);
    return run_pipeline(oracle, transform);
}

enum class Pairing { symmetric, adjacent };

/// U_{2->1}: a block unitary on disjoint index pairs (p, q) with
///   (|p> + |q>)/sqrt(2) -> |keep>,  (|p> - |q>)/sqrt(2) -> |other>.
/// symmetric: pairs (N/2-1-j, N/2+j), keep = N/2+j.
/// adjacent:  pairs (2k, 2k+1),       keep = 2k.
inline StateVector merge_two_to_one(const StateVector& state, Pairing pairing) {
    const std::size_t n = state.dim();
    if (n % 2 != 0) throw ConfigError("two-to-one merge needs an even dimension");
    const double r = std::numbers::sqrt2 / 2.0;
    CVector out(static_cast<Eigen::Index>(n));
    for (std::size_t b = 0; b < n / 2; ++b) {
        std::size_t p = 0;
        std::size_t q = 0;
        std::size_t keep = 0;
        std::size_t other = 0;
        if (pairing == Pairing::symmetric) {
            p = n / 2 - 1 - b;
            q = n / 2 + b;
            keep = q;
            other = p;
        } else {
            p = 2 * b;
            q = 2 * b + 1;
            keep = p;
            other = q;
        }
        const Complex ap = state[p];
        const Complex aq = state[q];
        out(static_cast<Eigen::Index>(keep)) = r * (ap + aq);
        out(static_cast<Eigen::Index>(other)) = r * (ap - aq);
    }
    return StateVector::from_amplitudes(std::move(out));
}

/// The level measured after the merge: |s> = N-1 for the Hadamard circuit,
/// N-2 (the kept member of the last adjacent pair) for the Fourier circuit.
inline std::size_t designated_outcome(std::size_t n, Transform t) { return t == Transform::hadamard ? n - 1 : n - 2; }

inline Pairing pairing_for(Transform t) { return t == Transform::hadamard ? Pairing::symmetric : Pairing::adjacent; }

struct DecisionReport {
    Label decision = Label::B;
    /// Probability of the designated outcome for one run of the circuit.
    double pr_top = 0.0;
    std::size_t queries = 0;
    std::size_t repetitions = 0;
    std::size_t designated = 0;
    /// Rounds in which the designated outcome was observed (sampling mode).
    std::size_t hits = 0;
    /// Outcome distribution of one run, after the merge.
    std::vector<double> per_outcome;
};

/// Exact mode: reads Pr[designated] = |amp|^2; decides A when it exceeds 1/2.
/// For the Hadamard circuit on restricted instances Pr is exactly 0 or 1.
inline DecisionReport measure_designated(const StateVector& state, std::size_t index) {
    if (index >= state.dim()) throw ConfigError("designated index out of range");
    DecisionReport r;
    r.designated = index;
    r.per_outcome = state.probabilities();
    r.pr_top = r.per_outcome[index];
    r.decision = r.pr_top > 0.5 ? Label::A : Label::B;
    r.repetitions = 1;
    return r;
}

/// Draws one measurement outcome from |amp|^2.
inline std::size_t sample_outcome(const StateVector& state, Rng& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        acc += std::norm(state[i]);
        if (u < acc) return i;
    }
    // u landed in the round-off gap above the cumulative sum; return the last
    // level that carries any weight.
    for (std::size_t i = state.dim(); i-- > 0;) {
        if (std::norm(state[i]) > 0.0) return i;
    }
    return state.dim() - 1;
}

namespace detail {

inline void require_variant(const ProblemInstance& inst, Variant v) {
    if (inst.variant != v) {
        throw ConfigError("expected a " + to_string(v) + " instance, got " + to_string(inst.variant));
    }
}

inline StateVector merged_output(PhaseOracle& oracle, Transform t) {
    return merge_two_to_one(run_pipeline(oracle, t), pairing_for(t));
}

}  // namespace detail

/// One query, exact amplitudes.
inline DecisionReport decide_restricted(const ProblemInstance& inst) {
    detail::require_variant(inst, Variant::restricted);
    PhaseOracle oracle(inst.z);
    DecisionReport r = measure_designated(detail::merged_output(oracle, Transform::hadamard),
                                          designated_outcome(inst.n, Transform::hadamard));
    r.queries = oracle.query_count();
    return r;
}

/// One query, one sampled measurement: A iff the designated level is observed.
inline DecisionReport decide_restricted(const ProblemInstance& inst, Rng& rng) {
    detail::require_variant(inst, Variant::restricted);
    PhaseOracle oracle(inst.z);
    const StateVector out = detail::merged_output(oracle, Transform::hadamard);
    DecisionReport r = measure_designated(out, designated_outcome(inst.n, Transform::hadamard));
    r.hits = sample_outcome(out, rng) == r.designated ? 1 : 0;
    r.decision = r.hits == 1 ? Label::A : Label::B;
    r.queries = oracle.query_count();
    return r;
}

/// Outcomes of q independent rounds (one query each); callers that want the
/// vote after fewer rounds can use a prefix.
inline std::vector<bool> designated_hits(const ProblemInstance& inst, std::size_t q, Rng& rng, PhaseOracle& oracle) {
    const std::size_t target = designated_outcome(inst.n, Transform::hadamard);
    std::vector<bool> hits;
    hits.reserve(q);
    for (std::size_t round = 0; round < q; ++round) {
        const StateVector out = detail::merged_output(oracle, Transform::hadamard);
        hits.push_back(sample_outcome(out, rng) == target);
    }
    return hits;
}

/// A iff the designated level is seen in more than q/2 rounds.
inline Label majority_vote(std::size_t hits, std::size_t q) { return 2 * hits > q ? Label::A : Label::B; }

/// q rounds in sampling mode, majority vote.
inline DecisionReport decide_unrestricted(const ProblemInstance& inst, std::size_t q, Rng& rng) {
    detail::require_variant(inst, Variant::unrestricted);
    if (q == 0) throw ConfigError("at least one repetition is required");
    if (inst.syndrome && inst.syndrome->weight() >= error_weight_bound(Variant::unrestricted, inst.n)) {
        throw ConfigError("unrestricted decision requires fewer than N/16 errors");
    }
    PhaseOracle oracle(inst.z);
    const auto hits = designated_hits(inst, q, rng, oracle);
    // Exact single-round distribution for the report; analysis only, not a counted query.
    PhaseOracle probe(inst.z);
    DecisionReport r = measure_designated(detail::merged_output(probe, Transform::hadamard),
                                          designated_outcome(inst.n, Transform::hadamard));
    r.hits = static_cast<std::size_t>(std::count(hits.begin(), hits.end(), true));
    r.repetitions = q;
    r.queries = oracle.query_count();
    r.decision = majority_vote(r.hits, q);
    return r;
}

/// DFT circuit, adjacent merge, designated level N-2; exact amplitudes.
inline DecisionReport decide_fourier(const ProblemInstance& inst) {
    detail::require_variant(inst, Variant::fourier);
    PhaseOracle oracle(inst.z);
    DecisionReport r = measure_designated(detail::merged_output(oracle, Transform::fourier),
                                          designated_outcome(inst.n, Transform::fourier));
    r.queries = oracle.query_count();
    return r;
}

/// Pr[designated] for every Fourier codeword T_j, j in Z_N.
inline std::vector<double> fourier_probability_table(std::size_t n) {
    std::vector<double> table(n);
    for (std::size_t j = 0; j < n; ++j) table[j] = decide_fourier(make_instance(Variant::fourier, n, j)).pr_top;
    return table;
}

enum class ErrorModel { random, in_phase };

inline ErrorModel parse_error_model(std::string_view s) {
    if (s == "random") return ErrorModel::random;
    if (s == "in-phase") return ErrorModel::in_phase;
    throw ConfigError("unknown error model '" + std::string(s) + "' (random, in-phase)");
}

/// Unrestricted instance with j uniform over Z_{N/2}. A fixed weight l uses
/// the chosen error model; without l (random model only) the weight is drawn
/// as in sample_instance.
inline ProblemInstance sample_unrestricted(std::size_t n, std::optional<std::size_t> l, ErrorModel model, Rng& rng) {
    if (!l) {
        if (model == ErrorModel::in_phase) throw ConfigError("in-phase errors need an explicit error count");
        return sample_instance(Variant::unrestricted, n, std::nullopt, rng);
    }
    if (*l >= error_weight_bound(Variant::unrestricted, n)) {
        throw DegenerateInstanceError("degenerate instance class: unrestricted needs l < N/16");
    }
    const std::size_t j = uniform_index(rng, n / 2);
    ErrorSyndrome syn = model == ErrorModel::in_phase ? in_phase_syndrome(n, j, *l, rng) : sample_syndrome(n, *l, false, rng);
    return make_instance(Variant::unrestricted, n, j, std::move(syn));
}

struct RepetitionPoint {
    std::size_t q;
    std::size_t trials;
    std::size_t wrong;
    double error_rate() const { return static_cast<double>(wrong) / static_cast<double>(trials); }
};

/// Monte-Carlo decision error of the q-round majority vote on unrestricted
/// instances with exactly l errors, j uniform over Z_{N/2}. Each trial draws
/// max(qs) rounds from stream (seed, trial) and every q in `qs` votes on a
/// prefix of the same rounds, so the points share their randomness.
inline std::vector<RepetitionPoint> repetition_error_curve(std::size_t n, std::size_t l, const std::vector<std::size_t>& qs,
                                                           std::size_t trials, std::uint64_t seed, ErrorModel model) {
    validate_code_length(n);
    if (qs.empty() || trials == 0) throw ConfigError("need at least one repetition count and one trial");
    if (l >= error_weight_bound(Variant::unrestricted, n)) {
        throw DegenerateInstanceError("unrestricted decision requires fewer than N/16 errors");
    }
    const std::size_t q_max = *std::max_element(qs.begin(), qs.end());
    if (std::find(qs.begin(), qs.end(), 0) != qs.end()) throw ConfigError("repetition counts must be positive");
    std::vector<RepetitionPoint> curve;
    for (std::size_t q : qs) curve.push_back({q, trials, 0});
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = make_stream(seed, t);
        const ProblemInstance inst = sample_unrestricted(n, l, model, rng);
        PhaseOracle oracle(inst.z);
        const auto hits = designated_hits(inst, q_max, rng, oracle);
        for (auto& pt : curve) {
            const auto h = static_cast<std::size_t>(std::count(hits.begin(), hits.begin() + static_cast<long>(pt.q), true));
            if (majority_vote(h, pt.q) != inst.label) ++pt.wrong;
        }
    }
    return curve;
}

/// Outcomes up to this N carry the full per-outcome distribution in JSON.
inline constexpr std::size_t kPerOutcomeJsonLimit = 64;

inline nlohmann::json report_to_json(const DecisionReport& r, const ProblemInstance& inst) {
    nlohmann::json j = {
        {"variant", to_string(inst.variant)},
        {"N", inst.n},
        {"hiddenJ", inst.hidden_j},
        {"label", to_string(inst.label)},
        {"decision", to_string(r.decision)},
        {"prTop", r.pr_top},
        {"queries", r.queries},
        {"repetitions", r.repetitions},
    };
    if (inst.syndrome) j["errors"] = inst.syndrome->weight();
    if (inst.n <= kPerOutcomeJsonLimit) j["perOutcome"] = r.per_outcome;
    return j;
}

}  // namespace spinoracle
