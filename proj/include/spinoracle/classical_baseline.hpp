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

// Classical strategies that read single bits of z, and an exhaustive
// decision-tree search giving the exact deterministic query complexity of the
// error-free close-Hadamard decision at small N.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "spinoracle/codewords.hpp"
#include "spinoracle/random.hpp"

namespace spinoracle {

class BitOracle {
   public:
    explicit BitOracle(BitString z) : z_(std::move(z)) {}

    bool query(std::size_t x) {
        if (x >= z_.size()) throw ConfigError("query position out of range");
        ++queries_;
        return z_[x];
    }

    std::size_t size() const { return z_.size(); }
    std::size_t query_count() const { return queries_; }

   private:
    BitString z_;
    std::size_t queries_ = 0;
};

struct IdentifyResult {
    std::size_t j;
    std::size_t queries;
    /// False when the answers cannot come from a codeword in Z_{N/2}.
    bool consistent;
};

/// Reads bit 2^t of z for t = 0..n-1; since W_j(2^t) = j_t these are the bits of j.
inline IdentifyResult classical_identify(BitOracle& oracle) {
    const std::size_t n = oracle.size();
    validate_code_length(n);
    const std::size_t before = oracle.query_count();
    std::size_t j = 0;
    for (std::size_t bit = 1; bit < n; bit <<= 1) {
        if (oracle.query(bit)) j |= bit;
    }
    return {j, oracle.query_count() - before, j < n / 2};
}

enum class NoisyStrategy {
    /// For each bit t, majority over disjoint probe pairs z_y ^ z_{y ^ 2^t}.
    probe_majority,
    /// Restricted errors only: read the even-parity positions 2^t | N/2,
    /// which W_{N-1} leaves error free.
    even_parity,
};

struct NoisyDecision {
    Label decision;
    std::size_t j;
    std::size_t queries;
};

/// Decides A (j = N/2-1) vs B from a codeword with up to d bit errors.
///
/// probe_majority: each probe pair {y, y ^ 2^t} yields j_t unless exactly one
/// of its two bits is flipped, and pairs for a fixed t are disjoint, so with
/// `probes_per_position` >= 2d+1 the vote is always right. Passing 0 selects
/// 2d+1 (capped at N/2). d = 0 falls back to classical_identify.
inline NoisyDecision classical_decide_noisy(BitOracle& oracle, std::size_t probes_per_position, std::size_t d,
                                            bool restricted, Rng& rng,
                                            NoisyStrategy strategy = NoisyStrategy::probe_majority) {
    const std::size_t n = oracle.size();
    validate_code_length(n);
    const std::size_t before = oracle.query_count();
    if (d == 0) {
        const auto id = classical_identify(oracle);
        return {label_for(n, id.j), id.j, id.queries};
    }
    std::size_t j = 0;
    if (strategy == NoisyStrategy::even_parity) {
        if (!restricted) throw ConfigError("even-parity strategy is only sound for restricted errors");
        // <j, 2^t | N/2> = j_t xor j_{n-1}, and j_{n-1} = 0 for j in Z_{N/2}.
        for (std::size_t bit = 1; bit < n / 2; bit <<= 1) {
            if (oracle.query(bit | (n / 2))) j |= bit;
        }
        return {label_for(n, j), j, oracle.query_count() - before};
    }
    std::size_t probes = probes_per_position == 0 ? 2 * d + 1 : probes_per_position;
    probes = std::min(probes, n / 2);
    for (std::size_t bit = 1; bit < n; bit <<= 1) {
        // Pair representatives: the N/2 values y with bit t clear.
        std::vector<std::size_t> reps;
        reps.reserve(n / 2);
        for (std::size_t y = 0; y < n; ++y) {
            if ((y & bit) == 0) reps.push_back(y);
        }
        std::size_t ones = 0;
        for (std::size_t p = 0; p < probes; ++p) {
            const std::size_t k = p + uniform_index(rng, reps.size() - p);
            std::swap(reps[p], reps[k]);
            const bool a = oracle.query(reps[p]);
            const bool b = oracle.query(reps[p] ^ bit);
            ones += (a != b) ? 1 : 0;
        }
        if (2 * ones > probes) j |= bit;
    }
    return {label_for(n, j), j, oracle.query_count() - before};
}

/// Exact minimum depth of a deterministic bit-query decision tree separating
/// j = N/2-1 from j in Z_{N/2-1}, over error-free codewords, N in {4, 8, 16}.
///
/// Memoized over the set of codewords still consistent with the answers so far.
inline int min_decision_tree_depth(std::size_t n) {
    validate_code_length(n);
    if (n > 16) throw ResourceError("decision-tree search is limited to N <= 16");
    const std::size_t m = n / 2;
    const std::uint32_t full = (std::uint32_t{1} << m) - 1;
    const std::uint32_t a_mask = std::uint32_t{1} << designated_codeword(n);
    // column[x] = set of candidate j with W_j(x) = 1
    std::vector<std::uint32_t> column(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t j = 0; j < m; ++j) {
            if (parity(j & x)) column[x] |= std::uint32_t{1} << j;
        }
    }
    std::vector<int> memo(std::size_t{1} << m, -1);
    auto solve = [&](auto&& self, std::uint32_t set) -> int {
        if ((set & a_mask) == 0 || set == a_mask) return 0;
        int& slot = memo[set];
        if (slot >= 0) return slot;
        int best = std::numeric_limits<int>::max();
        for (std::size_t x = 0; x < n; ++x) {
            const std::uint32_t one = set & column[x];
            const std::uint32_t zero = set & ~column[x];
            if (one == 0 || zero == 0) continue;
            best = std::min(best, 1 + std::max(self(self, one), self(self, zero)));
        }
        slot = best;
        return best;
    };
    return solve(solve, full);
}

struct ComparisonRow {
    std::size_t n;
    std::size_t quantum_queries;
    std::size_t classical_queries;
    std::optional<int> classical_min_depth;
};

/// Query counts for the error-free problem: one quantum query vs. the
/// classical identify strategy, plus the exact optimum where it is computable.
inline ComparisonRow compare_query_counts(std::size_t n, bool with_min_depth) {
    validate_code_length(n);
    BitOracle oracle(hadamard_codeword(n, designated_codeword(n)).bits);
    const auto id = classical_identify(oracle);
    ComparisonRow row{n, 1, id.queries, std::nullopt};
    if (with_min_depth && n <= 16) row.classical_min_depth = min_decision_tree_depth(n);
    return row;
}

}  // namespace spinoracle
