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

// spinoracle: batch front end. Each subcommand writes data files plus a
// manifest.json into --out; the same config and seed give the same bytes.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "spinoracle/spinoracle.hpp"

namespace so = spinoracle;
using nlohmann::json;

namespace {

// Dense eigendecompositions above N = 1024 are out of desk scale.
constexpr std::size_t kMaxSqueezeDim = 1024;
// Histograms for these 2s values accompany the sweep.
constexpr std::size_t kHistogramTwoS[] = {7, 15, 31, 63};

struct Options {
    std::string n = "";
    std::string s_range = "3/2:63/2";
    std::string variant = "restricted";
    std::optional<std::size_t> errors;
    std::string error_model = "random";
    std::vector<std::size_t> reps = {1};
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::string grid = "64x128";
    double tol = 1e-9;
    std::string out = "out";
    std::string format = "csv";
    std::string state = "coherent";
    double theta = std::numbers::pi / 2.0;
    double phi = 0.0;
    bool sample = false;
    bool min_depth = false;
};

std::size_t parse_size(const std::string& s, const char* what) {
    std::size_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end) throw so::ConfigError(std::string("invalid ") + what + ": '" + s + "'");
    return v;
}

std::pair<std::string, std::string> split_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) return {s, s};
    return {s.substr(0, colon), s.substr(colon + 1)};
}

/// "7/2" or "3.5" -> 7 (twice the spin).
std::size_t parse_two_s(const std::string& s) {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        if (s.substr(slash + 1) != "2") throw so::ConfigError("spin must be a half-integer k/2: '" + s + "'");
        return parse_size(s.substr(0, slash), "spin");
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        const double twice = 2.0 * v;
        if (used != s.size() || twice < 0 || twice != static_cast<double>(static_cast<std::size_t>(twice))) {
            throw so::ConfigError("spin must be a half-integer: '" + s + "'");
        }
        return static_cast<std::size_t>(twice);
    } catch (const std::logic_error&) {
        throw so::ConfigError("invalid spin '" + s + "'");
    }
}

/// Exponent n of N = 2^n; "--n 6" or "--n 3:10".
std::pair<int, int> parse_exponent_range(const std::string& s) {
    if (s.empty()) throw so::ConfigError("--n is required for this command");
    const auto [a, b] = split_range(s);
    const auto lo = static_cast<int>(parse_size(a, "--n"));
    const auto hi = static_cast<int>(parse_size(b, "--n"));
    if (lo > hi) throw so::ConfigError("--n range is empty");
    if (lo < so::kMinExponent || hi > so::kMaxExponent) {
        throw so::ConfigError("--n must lie in [" + std::to_string(so::kMinExponent) + ", " +
                              std::to_string(so::kMaxExponent) + "]");
    }
    return {lo, hi};
}

int parse_exponent(const std::string& s) {
    const auto [lo, hi] = parse_exponent_range(s);
    if (lo != hi) throw so::ConfigError("--n must be a single value for this command");
    return lo;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) {
        const std::size_t v = parse_size(s, "--grid");
        return {v, v};
    }
    return {parse_size(s.substr(0, x), "--grid"), parse_size(s.substr(x + 1), "--grid")};
}

std::string spin_label(std::size_t two_s) { return std::to_string(two_s) + "/2"; }

json common_config(const Options& o) {
    return {{"seed", o.seed}, {"format", o.format}};
}

// ---------------------------------------------------------------- squeeze-scan

void cmd_squeeze_scan(const Options& o) {
    const auto [lo_s, hi_s] = split_range(o.s_range);
    const std::size_t lo = parse_two_s(lo_s);
    const std::size_t hi = parse_two_s(hi_s);
    if (lo > hi) throw so::ConfigError("--s-range is empty");
    std::vector<std::size_t> dims;
    for (std::size_t dim = 4; dim <= hi + 1; dim *= 2) {
        if (dim - 1 >= lo) dims.push_back(dim);
    }
    if (dims.empty()) throw so::ConfigError("--s-range contains no s with 2s+1 a power of two >= 4");
    if (dims.back() > kMaxSqueezeDim) {
        throw so::ResourceError("squeeze-scan is limited to N <= " + std::to_string(kMaxSqueezeDim) +
                                " (s <= 1023/2)");
    }
    const auto fmt = so::io::parse_format(o.format);
    so::io::OutputDir out(o.out);
    const auto bound = so::bounding_epsilon();

    so::io::Table sweep({"s", "mu_opt", "v_min", "p_c", "overlap"});
    for (std::size_t dim : dims) {
        const auto sys = so::spin_system_for_dim(dim);
        const auto result = so::optimize_mu(sys, o.tol);
        const auto row = so::sweep_row(result, sys);
        sweep.add({row.s, row.mu_opt, row.v_min, row.p_c, row.overlap});
        if (std::find(std::begin(kHistogramTwoS), std::end(kHistogramTwoS), dim - 1) != std::end(kHistogramTwoS)) {
            const auto tmpl = so::bounding_template(dim, bound);
            so::io::Table hist({"index", "probability", "bound"});
            for (std::size_t i = 0; i < dim; ++i) hist.add({i, result.distribution[i], tmpl[i]});
            out.table("histogram_s" + std::to_string(dim - 1) + "_2", hist, fmt);
        }
    }
    out.table("sweep", sweep, fmt);
    json cfg = common_config(o);
    cfg["s_range"] = spin_label(lo) + ":" + spin_label(hi);
    cfg["tol"] = o.tol;
    cfg["bounding_epsilon"] = so::to_string(bound.epsilon);
    out.manifest("squeeze-scan", cfg);
}

// ---------------------------------------------------------------- qfunc

void cmd_qfunc(const Options& o) {
    const auto sys = so::make_spin_system(parse_exponent(o.n));
    const auto [tsteps, psteps] = parse_grid(o.grid);
    const auto fmt = so::io::parse_format(o.format);
    json cfg = common_config(o);
    cfg["n"] = sys.n();
    cfg["grid"] = std::to_string(tsteps) + "x" + std::to_string(psteps);
    cfg["state"] = o.state;

    std::optional<so::StateVector> state;
    if (o.state == "coherent") {
        state = so::coherent_state(sys, o.theta, o.phi);
        cfg["theta"] = o.theta;
        cfg["phi"] = o.phi;
    } else if (o.state == "squeezed") {
        auto r = so::optimize_mu(sys, o.tol);
        cfg["tol"] = o.tol;
        cfg["mu_opt"] = r.mu;
        state = std::move(r.state);
    } else {
        throw so::ConfigError("unknown --state '" + o.state + "' (coherent, squeezed)");
    }

    const auto grid = so::q_function(*state, sys, tsteps, psteps);
    so::io::OutputDir out(o.out);
    so::io::Table t({"theta", "phi", "q"});
    for (std::size_t i = 0; i < tsteps; ++i) {
        for (std::size_t p = 0; p < psteps; ++p) t.add({grid.theta(i), grid.phi(p), grid.at(i, p)});
    }
    out.table("qfunc", t, fmt);

    const auto peak = grid.argmax();
    const auto widths = so::half_max_widths(grid, peak.t, peak.p);
    out.json("qfunc_summary.json", {
                                       {"peak_theta", grid.theta(peak.t)},
                                       {"peak_phi", grid.phi(peak.p)},
                                       {"peak_q", peak.value},
                                       {"normalization", grid.normalization(sys.dim())},
                                       {"theta_half_width", widths.theta_width},
                                       {"phi_half_width", widths.phi_width},
                                   });
    out.manifest("qfunc", cfg);
}

// ---------------------------------------------------------------- solve

struct Tally {
    std::size_t instances = 0;
    std::size_t correct = 0;
    std::size_t queries = 0;

    void add(so::Label truth, so::Label decision, std::size_t q) {
        ++instances;
        correct += truth == decision ? 1 : 0;
        queries += q;
    }
    json summary() const {
        return {{"instances", instances},
                {"accuracy", static_cast<double>(correct) / static_cast<double>(instances)},
                {"mean_queries", static_cast<double>(queries) / static_cast<double>(instances)}};
    }
};

void cmd_solve(const Options& o) {
    const int exponent = parse_exponent(o.n);
    const std::size_t n = std::size_t{1} << exponent;
    const so::Variant variant = so::parse_variant(o.variant);
    so::io::parse_format(o.format);  // reports are JSON regardless; validate anyway
    json cfg = common_config(o);
    cfg["variant"] = o.variant;
    cfg["n"] = exponent;

    std::vector<json> reports;
    Tally tally;
    json summary = {{"variant", o.variant}, {"N", n}};
    so::io::OutputDir out(o.out);

    if (variant == so::Variant::restricted) {
        const bool exhaustive = n <= 16 && !o.sample;
        cfg["mode"] = exhaustive ? "exhaustive" : "sampled";
        if (exhaustive) {
            const std::size_t bound = so::error_weight_bound(variant, n);
            for (std::size_t j = 0; j < n / 2; ++j) {
                for (std::size_t d = 0; d < bound; ++d) {
                    if (o.errors && d != *o.errors) continue;
                    so::for_each_syndrome(n, d, true, [&](const so::ErrorSyndrome& syn) {
                        const auto inst = so::make_instance(variant, n, j, syn);
                        const auto r = so::decide_restricted(inst);
                        tally.add(inst.label, r.decision, r.queries);
                        reports.push_back(so::report_to_json(r, inst));
                    });
                }
            }
        } else {
            cfg["trials"] = o.trials;
            if (o.errors) cfg["errors"] = *o.errors;
            for (std::size_t t = 0; t < o.trials; ++t) {
                so::Rng rng = so::make_stream(o.seed, t);
                const auto inst = so::sample_instance(variant, n, o.errors, rng);
                const auto r = so::decide_restricted(inst);
                tally.add(inst.label, r.decision, r.queries);
                reports.push_back(so::report_to_json(r, inst));
            }
        }
    } else if (variant == so::Variant::unrestricted) {
        if (o.reps.empty() || std::find(o.reps.begin(), o.reps.end(), 0) != o.reps.end()) {
            throw so::ConfigError("--reps must list positive repetition counts");
        }
        const auto model = so::parse_error_model(o.error_model);
        const std::size_t q_max = *std::max_element(o.reps.begin(), o.reps.end());
        cfg["trials"] = o.trials;
        cfg["reps"] = o.reps;
        cfg["error_model"] = o.error_model;
        if (o.errors) cfg["errors"] = *o.errors;
        std::vector<std::size_t> wrong(o.reps.size(), 0);
        for (std::size_t t = 0; t < o.trials; ++t) {
            so::Rng rng = so::make_stream(o.seed, t);
            const auto inst = so::sample_unrestricted(n, o.errors, model, rng);
            so::PhaseOracle oracle(inst.z);
            const auto hits = so::designated_hits(inst, q_max, rng, oracle);
            for (std::size_t k = 0; k < o.reps.size(); ++k) {
                const auto h = static_cast<std::size_t>(
                    std::count(hits.begin(), hits.begin() + static_cast<long>(o.reps[k]), true));
                wrong[k] += so::majority_vote(h, o.reps[k]) != inst.label ? 1 : 0;
            }
            so::PhaseOracle probe(inst.z);
            auto r = so::measure_designated(so::merge_two_to_one(so::run_pipeline(probe, so::Transform::hadamard),
                                                                 so::Pairing::symmetric),
                                            so::designated_outcome(n, so::Transform::hadamard));
            r.hits = static_cast<std::size_t>(std::count(hits.begin(), hits.end(), true));
            r.repetitions = q_max;
            r.queries = oracle.query_count();
            r.decision = so::majority_vote(r.hits, q_max);
            tally.add(inst.label, r.decision, r.queries);
            reports.push_back(so::report_to_json(r, inst));
        }
        json by_reps = json::array();
        for (std::size_t k = 0; k < o.reps.size(); ++k) {
            by_reps.push_back({{"reps", o.reps[k]},
                               {"error_rate", static_cast<double>(wrong[k]) / static_cast<double>(o.trials)}});
        }
        summary["by_reps"] = by_reps;
    } else {
        cfg["mode"] = "exhaustive";
        so::io::Table table({"j", "probability"});
        for (std::size_t j = 0; j < n; ++j) {
            const auto inst = so::make_instance(variant, n, j);
            const auto r = so::decide_fourier(inst);
            tally.add(inst.label, r.decision, r.queries);
            reports.push_back(so::report_to_json(r, inst));
            table.add({j, r.pr_top});
        }
        out.table("fourier_table", table, so::io::parse_format(o.format));
    }

    if (tally.instances == 0) throw so::ConfigError("no instances selected");
    summary.update(tally.summary());
    out.text("reports.json", so::io::json_lines_array(reports));
    out.json("summary.json", summary);
    out.manifest("solve", cfg);
}

// ---------------------------------------------------------------- classical

void cmd_classical(const Options& o) {
    const auto [lo, hi] = parse_exponent_range(o.n.empty() ? std::string("3:10") : o.n);
    const auto fmt = so::io::parse_format(o.format);
    json cfg = common_config(o);
    cfg["n"] = std::to_string(lo) + ":" + std::to_string(hi);
    cfg["min_depth"] = o.min_depth;

    so::io::OutputDir out(o.out);
    so::io::Table cmp({"N", "quantum_queries", "classical_queries", "classical_min_depth"});
    for (int e = lo; e <= hi; ++e) {
        const auto row = so::compare_query_counts(std::size_t{1} << e, o.min_depth);
        cmp.add({row.n, row.quantum_queries, row.classical_queries,
                 row.classical_min_depth ? json(*row.classical_min_depth) : json(nullptr)});
    }
    out.table("comparison", cmp, fmt);

    if (o.errors) {
        const so::Variant variant = so::parse_variant(o.variant);
        if (variant == so::Variant::fourier) throw so::ConfigError("noisy classical runs need a Hadamard variant");
        const bool restricted = variant == so::Variant::restricted;
        const std::size_t probes = o.reps.size() == 1 && o.reps[0] > 1 ? o.reps[0] : 0;
        cfg["variant"] = o.variant;
        cfg["errors"] = *o.errors;
        cfg["trials"] = o.trials;
        cfg["probes"] = probes;
        so::io::Table noisy({"N", "d", "strategy", "trials", "accuracy", "mean_queries"});
        std::vector<so::NoisyStrategy> strategies = {so::NoisyStrategy::probe_majority};
        if (restricted) strategies.push_back(so::NoisyStrategy::even_parity);
        for (int e = lo; e <= hi; ++e) {
            const std::size_t n = std::size_t{1} << e;
            if (*o.errors >= so::error_weight_bound(variant, n)) continue;
            for (auto strategy : strategies) {
                std::size_t correct = 0;
                std::size_t queries = 0;
                for (std::size_t t = 0; t < o.trials; ++t) {
                    so::Rng rng = so::make_stream(o.seed, t);
                    const auto inst = so::sample_instance(variant, n, o.errors, rng);
                    so::BitOracle oracle(std::get<so::BitString>(inst.z));
                    const auto d = so::classical_decide_noisy(oracle, probes, *o.errors, restricted, rng, strategy);
                    correct += d.decision == inst.label ? 1 : 0;
                    queries += d.queries;
                }
                noisy.add({n, *o.errors,
                           strategy == so::NoisyStrategy::probe_majority ? "probe_majority" : "even_parity", o.trials,
                           static_cast<double>(correct) / static_cast<double>(o.trials),
                           static_cast<double>(queries) / static_cast<double>(o.trials)});
            }
        }
        if (noisy.size() == 0) throw so::DegenerateInstanceError("no N in range admits the requested error count");
        out.table("noisy", noisy, fmt);
    }
    out.manifest("classical", cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinoracle: spin-squeezing and oracle-decision simulations"};
    app.set_config("--config", "", "key=value file; flags given on the command line take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--n", o.n, "exponent n of N = 2^n, or a range lo:hi (classical)");
    app.add_option("--s-range", o.s_range, "spin range lo:hi, e.g. 3/2:511/2")->capture_default_str();
    app.add_option("--variant", o.variant, "restricted | unrestricted | fourier")->capture_default_str();
    app.add_option("--errors", o.errors, "error weight d (or l)");
    app.add_option("--error-model", o.error_model, "random | in-phase (unrestricted)")->capture_default_str();
    app.add_option("--reps", o.reps, "repetition counts, comma separated; classical: probes per bit")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--trials", o.trials, "Monte-Carlo trials")->capture_default_str();
    app.add_option("--seed", o.seed, "master seed")->capture_default_str();
    app.add_option("--grid", o.grid, "Q-function grid, THETAxPHI")->capture_default_str();
    app.add_option("--tol", o.tol, "mu tolerance")->capture_default_str();
    app.add_option("--out", o.out, "output directory")->capture_default_str();
    app.add_option("--format", o.format, "csv | json")->capture_default_str();
    app.add_option("--state", o.state, "coherent | squeezed (qfunc)")->capture_default_str();
    app.add_option("--theta", o.theta, "coherent-state polar angle")->capture_default_str();
    app.add_option("--phi", o.phi, "coherent-state azimuth")->capture_default_str();
    app.add_flag("--sample", o.sample, "sample restricted instances even when N <= 16");
    app.add_flag("--min-depth", o.min_depth, "exhaustive decision-tree depth for N <= 16 (classical)");

    auto* squeeze = app.add_subcommand("squeeze-scan", "optimal squeezing sweep and histograms");
    auto* qfunc = app.add_subcommand("qfunc", "spherical Q-function grid");
    auto* solve = app.add_subcommand("solve", "run the oracle decision algorithm");
    auto* classical = app.add_subcommand("classical", "classical query-count baseline");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return so::kExitConfig;
    }

    try {
        if (squeeze->parsed()) cmd_squeeze_scan(o);
        if (qfunc->parsed()) cmd_qfunc(o);
        if (solve->parsed()) cmd_solve(o);
        if (classical->parsed()) cmd_classical(o);
    } catch (const so::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return so::kExitConfig;
    } catch (const so::ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return so::kExitResource;
    } catch (const so::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return so::kExitInvariant;
    } catch (const so::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return so::kExitInvariant;
    }
    return so::kExitOk;
}
