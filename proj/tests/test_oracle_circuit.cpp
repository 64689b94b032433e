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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "spinoracle/oracle_circuit.hpp"

namespace so = spinoracle;

namespace {

constexpr double kExact = 1e-12;
constexpr double kProb = 1e-10;

so::CVector random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    so::CVector v(static_cast<Eigen::Index>(n));
    for (auto& a : v) a = so::Complex(g(rng), g(rng));
    return v / v.norm();
}

oracle::CMatrix phase_matrix(const so::OracleString& z) {
    so::PhaseOracle o(z);
    oracle::CMatrix d = oracle::CMatrix::Zero(o.size(), o.size());
    for (std::size_t x = 0; x < o.size(); ++x) d(x, x) = o.phase(x);
    return d;
}

// Designated amplitude straight from dense matrices.
double dense_pr_designated(const so::OracleString& z, so::Transform t) {
    const so::PhaseOracle o(z);
    const std::size_t n = o.size();
    oracle::CVector psi = oracle::CVector::Zero(n);
    psi(n / 2 - 1) = psi(n / 2) = std::numbers::sqrt2 / 2.0;
    oracle::CVector v;
    if (t == so::Transform::hadamard) {
        const auto h = oracle::dense_hadamard(n);
        v = h * phase_matrix(z) * h * psi;
        // pair (0, N-1), kept on N-1
        return std::norm((v(0) + v(n - 1)) / std::numbers::sqrt2);
    }
    const auto f = oracle::dense_dft(n);
    v = f.adjoint() * phase_matrix(z) * f * psi;
    return std::norm((v(n - 2) + v(n - 1)) / std::numbers::sqrt2);
}

// Closed form for the Hadamard circuit: amp = [j = N/2-1] - (4/N) sum over
// flipped even-parity x of (-1)^{<j xor N/2, x>}.
double closed_form_pr(std::size_t n, std::size_t j, const so::BitString& mask) {
    double amp = j == n / 2 - 1 ? 1.0 : 0.0;
    const std::size_t c = j ^ (n / 2);
    for (std::size_t x = 0; x < n; ++x) {
        if (mask[x] && !so::parity(x)) amp -= (4.0 / double(n)) * (so::parity(c & x) ? -1.0 : 1.0);
    }
    return amp * amp;
}

double binom_tail_above_half(std::size_t q, double p) {
    double total = 0.0;
    for (std::size_t h = 0; h <= q; ++h) {
        if (2 * h <= q) continue;
        total += std::exp(std::lgamma(q + 1.0) - std::lgamma(h + 1.0) - std::lgamma(q - h + 1.0)) *
                 std::pow(p, double(h)) * std::pow(1.0 - p, double(q - h));
    }
    return total;
}

}  // namespace

TEST(Transforms, WalshHadamardMatchesDense) {
    for (std::size_t n : {4u, 8u, 32u}) {
        const auto v = random_vector(n, n);
        so::CVector w = v;
        so::fwht_inplace(std::span<so::Complex>(w.data(), n));
        EXPECT_LT((w - oracle::dense_hadamard(n) * v).cwiseAbs().maxCoeff(), kExact);
        so::fwht_inplace(std::span<so::Complex>(w.data(), n));
        EXPECT_LT((w - v).cwiseAbs().maxCoeff(), kExact);
    }
    std::vector<so::Complex> bad(6);
    EXPECT_THROW(so::fwht_inplace(bad), so::ConfigError);
}

TEST(Transforms, DftMatchesDense) {
    for (std::size_t n : {4u, 8u, 12u, 64u}) {
        const auto v = random_vector(n, 100 + n);
        const auto f = oracle::dense_dft(n);
        EXPECT_LT((so::dft_amplitudes(v, false) - f * v).cwiseAbs().maxCoeff(), kExact) << "N=" << n;
        EXPECT_LT((so::dft_amplitudes(v, true) - f.adjoint() * v).cwiseAbs().maxCoeff(), kExact) << "N=" << n;
        EXPECT_LT((so::dft_amplitudes(so::dft_amplitudes(v, false), true) - v).cwiseAbs().maxCoeff(), kExact);
    }
}

TEST(Transforms, FourierPhaseShiftsBasisStates) {
    const std::size_t n = 8;
    for (std::size_t j = 0; j < n; ++j) {
        so::PhaseOracle o(so::fourier_codeword(n, j));
        for (std::size_t a = 0; a < n; ++a) {
            const so::CVector e = so::StateVector::basis(n, a).amplitudes();
            const so::CVector out = so::dft_amplitudes(o.apply(so::dft_amplitudes(e, false)), true);
            EXPECT_NEAR(std::abs(out((a + j) % n)), 1.0, kExact) << "j=" << j << " a=" << a;
        }
    }
}

TEST(Transforms, CharacterSums) {
    for (std::size_t n = 4; n <= 64; n *= 2) {
        for (std::size_t j = 0; j < n; ++j) {
            const so::PhaseOracle o(so::hadamard_codeword(n, j).bits);
            so::Complex sum = 0.0;
            for (std::size_t x = 0; x < n; ++x) sum += o.phase(x);
            EXPECT_NEAR(sum.real(), j == 0 ? double(n) : 0.0, kExact);
        }
    }
}

TEST(Phase, QuarterTurnsExact) {
    EXPECT_EQ(so::phase_of(so::Fraction(0)), so::Complex(1.0, 0.0));
    EXPECT_EQ(so::phase_of(so::Fraction(1)), so::Complex(-1.0, 0.0));
    EXPECT_EQ(so::phase_of(so::Fraction(1, 2)), so::Complex(0.0, 1.0));
    EXPECT_EQ(so::phase_of(so::Fraction(-1, 2)), so::Complex(0.0, -1.0));
    EXPECT_NEAR(std::arg(so::phase_of(so::Fraction(1, 4))), std::numbers::pi / 4.0, kExact);
}

TEST(Merge, SymmetricPairs) {
    const std::size_t n = 8;
    for (std::size_t b = 0; b < n / 2; ++b) {
        so::CVector v = so::CVector::Zero(n);
        v(n / 2 - 1 - b) = v(n / 2 + b) = std::numbers::sqrt2 / 2.0;
        const auto out = so::merge_two_to_one(so::StateVector::from_amplitudes(v), so::Pairing::symmetric);
        EXPECT_NEAR(std::norm(out[n / 2 + b]), 1.0, kExact);
    }
}

TEST(Merge, AdjacentPairsAndUnitarity) {
    const std::size_t n = 8;
    for (std::size_t k = 0; k < n / 2; ++k) {
        so::CVector v = so::CVector::Zero(n);
        v(2 * k) = std::numbers::sqrt2 / 2.0;
        v(2 * k + 1) = -std::numbers::sqrt2 / 2.0;
        const auto out = so::merge_two_to_one(so::StateVector::from_amplitudes(v), so::Pairing::adjacent);
        EXPECT_NEAR(std::norm(out[2 * k + 1]), 1.0, kExact);
    }
    const auto r = so::StateVector::normalized(random_vector(16, 5));
    EXPECT_NEAR(so::merge_two_to_one(r, so::Pairing::symmetric).norm_squared(), 1.0, kExact);
    EXPECT_NEAR(so::merge_two_to_one(r, so::Pairing::adjacent).norm_squared(), 1.0, kExact);
}

TEST(Pipeline, MatchesDenseCircuit) {
    so::Rng rng = so::make_stream(8, 0);
    for (std::size_t n : {8u, 16u}) {
        for (int t = 0; t < 30; ++t) {
            const auto inst = so::sample_instance(so::Variant::restricted, n, std::nullopt, rng);
            EXPECT_NEAR(so::decide_restricted(inst).pr_top, dense_pr_designated(inst.z, so::Transform::hadamard), kProb);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const auto inst = so::make_instance(so::Variant::fourier, n, j);
            EXPECT_NEAR(so::decide_fourier(inst).pr_top, dense_pr_designated(inst.z, so::Transform::fourier), kProb);
        }
    }
}

TEST(Restricted, ExhaustiveOneQueryIsExact) {
    // Every codeword in Z_{N/2} and every restricted syndrome of weight < N/4.
    for (std::size_t n = 4; n <= 32; n *= 2) {
        std::size_t checked = 0;
        for (std::size_t j = 0; j < n / 2; ++j) {
            const double expect = j == n / 2 - 1 ? 1.0 : 0.0;
            for (std::size_t d = 0; d < n / 4; ++d) {
                so::for_each_syndrome(n, d, true, [&](const so::ErrorSyndrome& e) {
                    const auto r = so::decide_restricted(so::make_instance(so::Variant::restricted, n, j, e));
                    ASSERT_NEAR(r.pr_top, expect, kProb) << "N=" << n << " j=" << j << " e=" << e.mask.to_string();
                    ASSERT_EQ(r.queries, 1u);
                    ++checked;
                });
            }
        }
        EXPECT_EQ(checked, (n / 2) * static_cast<std::size_t>(so::restricted_set_size_by_sum(n)));
    }
}

TEST(Restricted, SampledDecisionAlwaysRight) {
    so::Rng rng = so::make_stream(21, 0);
    for (int t = 0; t < 300; ++t) {
        const auto inst = so::sample_instance(so::Variant::restricted, 64, std::nullopt, rng);
        const auto r = so::decide_restricted(inst, rng);
        EXPECT_EQ(r.decision, inst.label);
        EXPECT_EQ(r.queries, 1u);
    }
}

TEST(Restricted, WrongVariantRejected) {
    const auto inst = so::make_instance(so::Variant::fourier, 8, 3);
    EXPECT_THROW(so::decide_restricted(inst), so::ConfigError);
}

TEST(Unrestricted, ClosedFormAmplitude) {
    so::Rng rng = so::make_stream(31, 0);
    for (std::size_t n : {16u, 64u, 128u}) {
        for (int t = 0; t < 200; ++t) {
            const std::size_t j = so::uniform_index(rng, n / 2);
            const std::size_t l = so::uniform_index(rng, n / 8);
            const auto syn = so::sample_syndrome(n, l, false, rng);
            so::PhaseOracle o(so::make_instance(so::Variant::unrestricted, n, j, syn).z);
            const auto out = so::merge_two_to_one(so::run_pipeline(o, so::Transform::hadamard), so::Pairing::symmetric);
            EXPECT_NEAR(out.probabilities()[n - 1], closed_form_pr(n, j, syn.mask), kProb);
        }
    }
}

TEST(Unrestricted, BoundsBelowSixteenthOfN) {
    // l < N/16 keeps Pr >= 9/16 on A and <= 1/16 on B.
    so::Rng rng = so::make_stream(32, 0);
    for (std::size_t n : {32u, 64u, 256u}) {
        for (int t = 0; t < 300; ++t) {
            const auto model = t % 2 ? so::ErrorModel::in_phase : so::ErrorModel::random;
            const std::size_t l = n / 16 - 1;
            const auto inst = so::sample_unrestricted(n, l, model, rng);
            so::PhaseOracle o(inst.z);
            const double pr =
                so::merge_two_to_one(so::run_pipeline(o, so::Transform::hadamard), so::Pairing::symmetric)
                    .probabilities()[n - 1];
            if (inst.label == so::Label::A) {
                EXPECT_GT(pr, 9.0 / 16.0);
            } else {
                EXPECT_LT(pr, 1.0 / 16.0);
            }
        }
    }
}

TEST(Unrestricted, InPhaseAttainsTheExtremes) {
    const std::size_t n = 64;
    const std::size_t l = 3;
    so::Rng rng = so::make_stream(33, 0);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const auto syn = so::in_phase_syndrome(n, j, l, rng);
        so::PhaseOracle o(so::make_instance(so::Variant::unrestricted, n, j, syn).z);
        const double pr = so::merge_two_to_one(so::run_pipeline(o, so::Transform::hadamard), so::Pairing::symmetric)
                              .probabilities()[n - 1];
        const double a = 4.0 * l / n;
        EXPECT_NEAR(pr, j == n / 2 - 1 ? (1.0 - a) * (1.0 - a) : a * a, kProb) << "j=" << j;
    }
}

TEST(Unrestricted, QueriesEqualRepetitions) {
    so::Rng rng = so::make_stream(34, 0);
    const auto inst = so::sample_instance(so::Variant::unrestricted, 32, 1, rng);
    for (std::size_t q : {1u, 4u, 9u}) {
        const auto r = so::decide_unrestricted(inst, q, rng);
        EXPECT_EQ(r.queries, q);
        EXPECT_EQ(r.repetitions, q);
        EXPECT_LE(r.hits, q);
    }
    EXPECT_THROW(so::decide_unrestricted(inst, 0, rng), so::ConfigError);
}

TEST(Unrestricted, MajorityVote) {
    EXPECT_EQ(so::majority_vote(3, 5), so::Label::A);
    EXPECT_EQ(so::majority_vote(2, 5), so::Label::B);
    EXPECT_EQ(so::majority_vote(2, 4), so::Label::B);
    EXPECT_EQ(so::majority_vote(1, 1), so::Label::A);
}

TEST(Unrestricted, RepetitionCurveMatchesBinomialModel) {
    // In-phase errors fix Pr on every instance, so the expected vote error is
    // a binomial tail mixed over 1/32 A-instances and 31/32 B-instances.
    const std::size_t n = 64;
    const std::size_t l = 3;
    const std::size_t trials = 6000;
    const std::vector<std::size_t> qs = {1, 5, 9, 13};
    const auto curve = so::repetition_error_curve(n, l, qs, trials, 77, so::ErrorModel::in_phase);
    const double a = 4.0 * l / n;
    const double pa = (1.0 - a) * (1.0 - a);
    const double pb = a * a;
    for (const auto& pt : curve) {
        const double expect = (1.0 / 32.0) * (1.0 - binom_tail_above_half(pt.q, pa)) +
                              (31.0 / 32.0) * binom_tail_above_half(pt.q, pb);
        const double sigma = std::sqrt(expect * (1.0 - expect) / double(trials));
        EXPECT_NEAR(pt.error_rate(), expect, 4.0 * sigma + 1.0 / double(trials)) << "q=" << pt.q;
    }
    EXPECT_THROW(so::repetition_error_curve(n, 4, qs, 10, 1, so::ErrorModel::random), so::DegenerateInstanceError);
    EXPECT_THROW(so::repetition_error_curve(n, 1, {0}, 10, 1, so::ErrorModel::random), so::ConfigError);
}

TEST(Unrestricted, RepetitionCurveIsSeeded) {
    const auto a = so::repetition_error_curve(32, 1, {1, 3}, 200, 5, so::ErrorModel::random);
    const auto b = so::repetition_error_curve(32, 1, {1, 3}, 200, 5, so::ErrorModel::random);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].wrong, b[i].wrong);
}

TEST(Unrestricted, InPhaseNeedsCount) {
    so::Rng rng = so::make_stream(1, 0);
    EXPECT_THROW(so::sample_unrestricted(64, std::nullopt, so::ErrorModel::in_phase, rng), so::ConfigError);
    EXPECT_THROW(so::parse_error_model("burst"), so::ConfigError);
    EXPECT_EQ(so::parse_error_model("in-phase"), so::ErrorModel::in_phase);
}

TEST(Fourier, DesignatedProbabilityTable) {
    for (std::size_t n : {8u, 16u, 64u}) {
        const auto table = so::fourier_probability_table(n);
        for (std::size_t j = 0; j < n; ++j) {
            double expect = 0.0;
            if (j == n / 2 - 1) expect = 1.0;
            if (j == n / 2 - 2 || j == n / 2) expect = 0.25;
            EXPECT_NEAR(table[j], expect, kProb) << "N=" << n << " j=" << j;
        }
    }
}

TEST(Fourier, OneQuery) {
    const auto r = so::decide_fourier(so::make_instance(so::Variant::fourier, 16, 7));
    EXPECT_EQ(r.queries, 1u);
    EXPECT_EQ(r.decision, so::Label::A);
    EXPECT_EQ(r.designated, 14u);
}

TEST(Sampling, OutcomeFrequencies) {
    so::CVector v(4);
    v << 0.5, so::Complex(0.0, 0.5), std::sqrt(0.4), std::sqrt(0.1);
    const auto st = so::StateVector::from_amplitudes(v);
    so::Rng rng = so::make_stream(2, 0);
    std::vector<int> counts(4, 0);
    const int draws = 40000;
    for (int i = 0; i < draws; ++i) ++counts[so::sample_outcome(st, rng)];
    const double p[] = {0.25, 0.25, 0.4, 0.1};
    for (int i = 0; i < 4; ++i) {
        const double sigma = std::sqrt(p[i] * (1 - p[i]) / draws);
        EXPECT_NEAR(counts[i] / double(draws), p[i], 5 * sigma);
    }
}

TEST(Oracle, CountsQueries) {
    so::PhaseOracle o(so::hadamard_codeword(8, 3).bits);
    so::CVector v = so::CVector::Ones(8);
    for (int i = 0; i < 5; ++i) v = o.apply(v);
    EXPECT_EQ(o.query_count(), 5u);
    EXPECT_THROW(o.apply(so::CVector::Ones(4)), so::ConfigError);
}
