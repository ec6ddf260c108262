// Copyright 2026 The mirrorqam Authors
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

#include "mirrorqam/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "mirrorqam/complexity.hpp"
#include "mirrorqam/errors.hpp"
#include "mirrorqam/memory.hpp"
#include "mirrorqam/patterns.hpp"
#include "mirrorqam/retrieval.hpp"

namespace mirrorqam::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string patterns_path;
    std::string input;
    int b = 1;
    long shots = 10000;
    std::optional<std::uint64_t> seed;
    std::string gamma_mode = "memory-only";
    std::string amp_mode = "exact";
    std::string mode = "sparse";
    std::string format = "json";
    bool strict = false;
    unsigned threads = 0;
    int retry_budget = 0;
    bool uniform = false;
    std::string b_range = "1:16";
    int n = 0;
    std::optional<double> gram_gamma;
};

/// Bad flag values that CLI11 cannot catch by itself.
class UsageError : public Error {
  public:
    using Error::Error;
};

GammaMode parse_gamma_mode(const std::string &text) {
    if (text == "memory-only") {
        return GammaMode::memory_only();
    }
    if (text == "cloning") {
        return GammaMode::from_cloning();
    }
    if (text.rfind("fixed:", 0) == 0) {
        try {
            return GammaMode::fixed(std::stod(text.substr(6)));
        } catch (const std::logic_error &) {
        }
    }
    throw UsageError("--gamma-mode must be memory-only, cloning or fixed:G, got '" + text + "'");
}

AmplificationMode parse_amp_mode(const std::string &text) {
    if (text == "exact") {
        return AmplificationMode::exact();
    }
    if (text == "estimate") {
        return AmplificationMode::estimate();
    }
    if (text.rfind("fixed:", 0) == 0) {
        try {
            return AmplificationMode::fixed(std::stoi(text.substr(6)));
        } catch (const std::logic_error &) {
        }
    }
    throw UsageError("--amp-mode must be exact, estimate or fixed:K, got '" + text + "'");
}

std::pair<int, int> parse_b_range(const std::string &text) {
    try {
        const auto colon = text.find(':');
        if (colon == std::string::npos) {
            const int b = std::stoi(text);
            return {b, b};
        }
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::logic_error &) {
        throw UsageError("--b-range must be INT or LO:HI, got '" + text + "'");
    }
}

/// Shortest round-trip decimal form, shared by the JSON and CSV writers.
std::string number(double x) { return Json(x).dump(); }

Json distribution_json(const std::map<BitPattern, double> &dist) {
    Json j = Json::object();
    for (const auto &[pattern, value] : dist) {
        j[pattern.to_string()] = value;
    }
    return j;
}

Json matrix_json(const Matrix2 &m) { return Json::array({Json::array({m[0][0], m[0][1]}), Json::array({m[1][0], m[1][1]})}); }

/// What a command hands back to the report writer.
struct CommandResult {
    Json results;
    /// CSV header and rows.
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

RetrievalConfig make_config(const Options &o) {
    RetrievalConfig config;
    config.b = o.b;
    config.gamma_mode = parse_gamma_mode(o.gamma_mode);
    config.amplification = parse_amp_mode(o.amp_mode);
    config.shots = o.shots;
    config.seed = o.seed.value_or(0);
    config.representation = o.mode == "dense" ? Representation::Dense : Representation::Sparse;
    config.retry_budget = o.retry_budget;
    return config;
}

BitPattern parse_input(const Options &o, const PatternSet &patterns) {
    const auto input = BitPattern::parse(o.input);
    if (input.size() != patterns.n()) {
        throw DimensionError("--input has length " + std::to_string(input.size()) + " but patterns have length " +
                             std::to_string(patterns.n()));
    }
    return input;
}

CommandResult cmd_distribution(const Options &o, unsigned threads) {
    const auto patterns = load_pattern_file(o.patterns_path);
    const auto input = parse_input(o, patterns);
    const auto config = make_config(o);
    const auto report = sample_distribution(input, patterns, config, threads);
    const auto eff = resolve_efficiencies(config.gamma_mode, patterns);

    CommandResult r;
    r.results = {
        {"input", input.to_string()},
        {"n", patterns.n()},
        {"p", patterns.p()},
        {"b", config.b},
        {"gamma", eff.gamma},
        {"gamma_bar", eff.gamma_bar},
        {"good_mass", report.good_mass},
        {"complexity_estimate", complexity_estimate(input, patterns, config.b)},
        {"analytic_unnormalized", distribution_json(report.analytic_unnormalized)},
        {"analytic_conditional", distribution_json(report.analytic_conditional)},
        {"empirical", distribution_json(report.empirical)},
        {"empirical_by_branch",
         {{"0", distribution_json(report.empirical_by_branch[0])},
          {"1", distribution_json(report.empirical_by_branch[1])}}},
        {"branch_successes", {report.branch_successes[0], report.branch_successes[1]}},
        {"total_variation_distance", report.total_variation_distance},
        {"shots", report.shots},
        {"successes", report.successes},
        {"failed_rounds", report.failed_rounds},
    };
    r.columns = {"pattern", "distance", "analytic_unnormalized", "analytic_conditional", "empirical"};
    for (const auto &[pattern, w] : report.analytic_unnormalized) {
        auto lookup = [&](const std::map<BitPattern, double> &m) {
            auto it = m.find(pattern);
            return number(it == m.end() ? 0.0 : it->second);
        };
        r.rows.push_back({pattern.to_string(), std::to_string(hamming_distance(input, pattern)), number(w),
                          lookup(report.analytic_conditional), lookup(report.empirical)});
    }
    return r;
}

CommandResult cmd_retrieve(const Options &o) {
    const auto patterns = load_pattern_file(o.patterns_path);
    const auto input = parse_input(o, patterns);
    const auto config = make_config(o);
    const Retriever retriever(input, patterns, config);
    Rng rng = stream_rng(config.seed, 0);
    const auto outcome = retriever.run(rng);
    const auto analytic = analytic_distribution(input, patterns, config.b);
    const auto it = analytic.analytic_conditional.find(outcome.output_pattern);
    const double conditional = it == analytic.analytic_conditional.end() ? 0.0 : it->second;

    CommandResult r;
    r.results = {
        {"input", input.to_string()},
        {"b", config.b},
        {"gamma", retriever.efficiencies().gamma},
        {"gamma_bar", retriever.efficiencies().gamma_bar},
        {"success", outcome.success},
        {"ancilla_branch", outcome.ancilla_branch},
        {"raw_pattern", outcome.raw_pattern.to_string()},
        {"output_pattern", outcome.output_pattern.to_string()},
        {"output_distance", hamming_distance(input, outcome.output_pattern)},
        {"output_conditional_probability", conditional},
        {"amplification_iterations", outcome.amplification_iterations},
        {"total_iterations", outcome.total_iterations},
        {"attempts", outcome.attempts},
        {"failed_rounds", outcome.failed_rounds},
        {"retries", outcome.attempts - 1},
        {"good_probability_before", outcome.good_probability_before},
        {"success_probability",
         amplified_success_probability(outcome.good_probability_before, outcome.amplification_iterations)},
        {"complexity_estimate", complexity_estimate(input, patterns, config.b)},
    };
    r.columns = {"key", "value"};
    for (const auto &[key, value] : r.results.items()) {
        r.rows.push_back({key, value.is_string() ? value.get<std::string>() : value.dump()});
    }
    return r;
}

CommandResult cmd_clone_check(const Options &o) {
    const auto patterns = load_pattern_file(o.patterns_path);
    const double s = memory_overlap(patterns);
    CommandResult r;
    r.results = {{"n", patterns.n()}, {"p", patterns.p()}, {"overlap", s}};
    double g = o.gram_gamma.value_or(0.5);
    try {
        const auto sol = solve_efficiencies(s);
        r.results["verdict"] = sol.feasible ? "feasible" : "infeasible";
        r.results["discriminant"] = sol.discriminant;
        r.results["gamma"] = sol.feasible ? Json(sol.gamma) : Json(nullptr);
        r.results["gamma_bar"] = sol.feasible ? Json(sol.gamma_bar) : Json(nullptr);
        r.results["diagnostic"] = sol.diagnostic;
        if (sol.feasible && !o.gram_gamma) {
            g = sol.gamma;
        }
    } catch (const SingularOverlapError &e) {
        r.results["verdict"] = "singular";
        r.results["discriminant"] = nullptr;
        r.results["gamma"] = nullptr;
        r.results["gamma_bar"] = nullptr;
        r.results["diagnostic"] = e.what();
    }
    const auto gram = gram_condition_check(s, g, 1.0 - g);
    r.results["gram"] = {
        {"gamma", g},
        {"gamma_bar", 1.0 - g},
        {"input", matrix_json(gram.input)},
        {"output", matrix_json(gram.output)},
        {"residual", matrix_json(gram.residual)},
        {"max_residual", gram.max_residual},
        {"equal", gram.equal},
    };
    r.columns = {"key", "value"};
    for (const char *key : {"n", "p", "overlap", "verdict", "discriminant", "gamma", "gamma_bar"}) {
        const auto &v = r.results[key];
        r.rows.push_back({key, v.is_string() ? v.get<std::string>() : v.dump()});
    }
    r.rows.push_back({"gram_max_residual", number(gram.max_residual)});
    r.rows.push_back({"gram_equal", gram.equal ? "true" : "false"});
    return r;
}

CommandResult cmd_complexity(const Options &o) {
    const auto [lo, hi] = parse_b_range(o.b_range);
    if (lo < 1 || hi < lo) {
        throw UsageError("--b-range needs 1 <= LO <= HI");
    }
    std::optional<PatternSet> patterns;
    if (!o.patterns_path.empty()) {
        patterns = load_pattern_file(o.patterns_path);
    }
    int n = o.n;
    if (patterns) {
        if (n != 0 && n != patterns->n()) {
            throw DimensionError("--n disagrees with the pattern length");
        }
        n = patterns->n();
    }
    CommandResult r;
    Json table = Json::array();
    if (o.uniform) {
        r.results["mode"] = "uniform";
        r.columns = {"b", "cos_power_average", "complexity_exact_average", "complexity_uniform_approx", "ratio",
                     "grover_baseline"};
        for (int b = lo; b <= hi; ++b) {
            const double avg = cos_power_average(b);
            const double exact = complexity_uniform_exact(b);
            const double approx = complexity_uniform_approx(b);
            const Json baseline = n > 0 ? Json(grover_baseline(n)) : Json(nullptr);
            table.push_back({{"b", b},
                             {"cos_power_average", avg},
                             {"complexity_exact_average", exact},
                             {"complexity_uniform_approx", approx},
                             {"ratio", approx / exact},
                             {"grover_baseline", baseline}});
            r.rows.push_back({std::to_string(b), number(avg), number(exact), number(approx), number(approx / exact),
                              n > 0 ? number(grover_baseline(n)) : ""});
        }
    } else {
        if (!patterns || o.input.empty()) {
            throw UsageError("instance mode needs --patterns and --input (or pass --uniform)");
        }
        const auto input = parse_input(o, *patterns);
        r.results["mode"] = "instance";
        r.results["input"] = input.to_string();
        r.columns = {"b", "complexity", "good_mass", "rounds", "success_probability", "complexity_uniform_approx",
                     "grover_baseline"};
        for (int b = lo; b <= hi; ++b) {
            const double c = complexity_estimate(input, *patterns, b);
            if (std::isinf(c)) {
                throw ZeroMassError("input " + input.to_string() + " has zero mass: retrieval cost is infinite");
            }
            const double mass = 1.0 / (c * c);
            const auto schedule = optimal_iterations(mass);
            table.push_back({{"b", b},
                             {"complexity", c},
                             {"good_mass", mass},
                             {"rounds", schedule.rounds},
                             {"success_probability", schedule.success_probability},
                             {"complexity_uniform_approx", complexity_uniform_approx(b)},
                             {"grover_baseline", grover_baseline(n)}});
            r.rows.push_back({std::to_string(b), number(c), number(mass), std::to_string(schedule.rounds),
                              number(schedule.success_probability), number(complexity_uniform_approx(b)),
                              number(grover_baseline(n))});
        }
    }
    r.results["n"] = n > 0 ? Json(n) : Json(nullptr);
    r.results["table"] = std::move(table);
    return r;
}

void write_csv(std::ostream &out, const CommandResult &r) {
    auto write_row = [&](const std::vector<std::string> &row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << '\n';
    };
    write_row(r.columns);
    for (const auto &row : r.rows) {
        write_row(row);
    }
}

int exit_code_for(const std::exception_ptr &ep, std::ostream &err) {
    try {
        std::rethrow_exception(ep);
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const DimensionError &e) {
        err << "dimension error: " << e.what() << '\n';
        return kDimensionError;
    } catch (const ZeroMassError &e) {
        err << "zero mass: " << e.what() << '\n';
        return kZeroMass;
    } catch (const InfeasibleCloningError &e) {
        err << "infeasible cloning: " << e.what() << '\n';
        return kInfeasibleCloning;
    } catch (const UsageError &e) {
        err << "usage: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError &e) {
        err << "invalid argument: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Mirror-modular cloning and Hamming-distance associative retrieval simulator", "mirrorqam"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--strict-deterministic", o.strict, "Run sequentially (golden-file mode)");
    };
    auto add_retrieval = [&](CLI::App *cmd) {
        cmd->add_option("--patterns", o.patterns_path, "Pattern file")->required();
        cmd->add_option("--input", o.input, "Input bit string")->required();
        cmd->add_option("--b", o.b, "Number of control qubits")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", o.seed, "RNG seed (random if omitted; always echoed)");
        cmd->add_option("--gamma-mode", o.gamma_mode, "memory-only | cloning | fixed:G");
        cmd->add_option("--amp-mode", o.amp_mode, "exact | estimate | fixed:K");
        cmd->add_option("--mode", o.mode, "State representation")->check(CLI::IsMember({"sparse", "dense"}));
        cmd->add_option("--retry-budget", o.retry_budget, "Extra attempts after a failed round")
            ->check(CLI::NonNegativeNumber);
        add_common(cmd);
    };

    auto *distribution = app.add_subcommand("distribution", "Analytic vs sampled output distribution");
    add_retrieval(distribution);
    distribution->add_option("--shots", o.shots, "Number of retrievals")->check(CLI::PositiveNumber);
    distribution->add_option("--threads", o.threads, "Worker threads (0 = hardware)");

    auto *retrieve_cmd = app.add_subcommand("retrieve", "One full retrieval");
    add_retrieval(retrieve_cmd);

    auto *clone = app.add_subcommand("clone-check", "Cloning feasibility and Gram matrices");
    clone->add_option("--patterns", o.patterns_path, "Pattern file")->required();
    clone->add_option("--gamma", o.gram_gamma, "Evaluate the Gram check at this gamma");
    add_common(clone);

    auto *complexity = app.add_subcommand("complexity", "Amplification round counts");
    complexity->add_option("--patterns", o.patterns_path, "Pattern file");
    complexity->add_option("--input", o.input, "Input bit string (instance mode)");
    complexity->add_flag("--uniform", o.uniform, "Uniform-distribution estimate instead of an instance");
    complexity->add_option("--b-range", o.b_range, "INT or LO:HI");
    complexity->add_option("--n", o.n, "Pattern length for the Grover baseline in uniform mode");
    add_common(complexity);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    const bool seeded_command = distribution->parsed() || retrieve_cmd->parsed();
    bool seed_auto = false;
    if (seeded_command && !o.seed) {
        std::random_device rd;
        o.seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
        seed_auto = true;
    }
    unsigned threads = o.strict ? 1U : (o.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : o.threads);

    const auto start = std::chrono::steady_clock::now();
    CommandResult result;
    std::string command;
    try {
        if (distribution->parsed()) {
            command = "distribution";
            result = cmd_distribution(o, threads);
        } else if (retrieve_cmd->parsed()) {
            command = "retrieve";
            result = cmd_retrieve(o);
        } else if (clone->parsed()) {
            command = "clone-check";
            result = cmd_clone_check(o);
        } else {
            command = "complexity";
            result = cmd_complexity(o);
        }
    } catch (...) {
        return exit_code_for(std::current_exception(), err);
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    Json config = {{"command", command}, {"patterns", o.patterns_path}};
    if (command == "distribution" || command == "retrieve") {
        config["input"] = o.input;
        config["b"] = o.b;
        config["seed"] = *o.seed;
        config["seed_auto"] = seed_auto;
        config["gamma_mode"] = o.gamma_mode;
        config["amp_mode"] = o.amp_mode;
        config["mode"] = o.mode;
        config["retry_budget"] = o.retry_budget;
        if (command == "distribution") {
            config["shots"] = o.shots;
            config["threads"] = threads;
        }
    } else if (command == "complexity") {
        config["input"] = o.input;
        config["uniform"] = o.uniform;
        config["b_range"] = o.b_range;
        config["n"] = o.n;
    }
    config["format"] = o.format;
    config["strict_deterministic"] = o.strict;

    if (o.format == "csv") {
        out << "# mirrorqam " << kVersion << ' ' << command << " config=" << config.dump() << '\n';
        write_csv(out, result);
        out << "# timing_ms=" << number(elapsed) << '\n';
    } else {
        Json report = {{"config", config}, {"results", result.results}, {"version", kVersion}, {"timing_ms", elapsed}};
        out << report.dump(2) << '\n';
    }
    if (seed_auto) {
        err << "seed: " << *o.seed << '\n';
    }
    return kSuccess;
}

} // namespace mirrorqam::cli
