#include "tma/solver.hpp"

#include <array>
#include <utility>

#include "tma/errors.hpp"

namespace tma {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 5> kAlgorithmNames = {{
    {Algorithm::Fcfs, "fcfs"},
    {Algorithm::Oracle, "oracle"},
    {Algorithm::BiGa, "bi-ga"},
    {Algorithm::BiEga, "bi-ega"},
    {Algorithm::BiSega, "bi-sega"},
}};

}  // namespace

std::string_view to_string(Algorithm a) {
    for (const auto& [alg, name] : kAlgorithmNames)
        if (alg == a) return name;
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
    for (const auto& [alg, name] : kAlgorithmNames)
        if (name == s) return alg;
    return std::nullopt;
}

void validate_config(const SolverConfig& c) {
    const auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (c.population_size < 1) throw ConfigError("population_size must be >= 1");
    if (c.level_generations < 1) throw ConfigError("level_generations must be >= 1");
    if (c.co_iterations < 1) throw ConfigError("co_iterations must be >= 1");
    if (c.repair_retry_cap < 1) throw ConfigError("repair_retry_cap must be >= 1");
    if (c.stall_co_iterations < 1) throw ConfigError("stall_co_iterations must be >= 1");
    if (!prob(c.crossover_prob)) throw ConfigError("crossover_prob must lie in [0, 1]");
    if (!prob(c.mutation_prob)) throw ConfigError("mutation_prob must lie in [0, 1]");
    if (!prob(c.elite_fraction)) throw ConfigError("elite_fraction must lie in [0, 1]");
    if (c.time_step < 1) throw ConfigError("time_step must be >= 1 s");
    if (c.oracle_grid < 1) throw ConfigError("oracle_grid must be >= 1 s");
    if (c.threads < 1) throw ConfigError("threads must be >= 1");
}

PreparedInstance prepare_instance(const Instance& instance, SahaMode mode) {
    PreparedInstance p;
    p.instance = assign_handover_altitudes(instance, mode);
    p.thresholds = compute_thresholds(p.instance);
    p.scenario = classify_scenario(p.instance, p.thresholds);
    return p;
}

SolveResult solve(const PreparedInstance& prepared, const SolverConfig& config) {
    validate_config(config);
    switch (config.algorithm) {
        case Algorithm::Fcfs: return fcfs_schedule(prepared.instance, prepared.scenario, config);
        case Algorithm::Oracle:
            return brute_force_oracle(prepared.instance, prepared.scenario, config.oracle_grid, config);
        default: return bilevel_solve(prepared.instance, prepared.scenario, config);
    }
}

SolveResult solve(const Instance& instance, const SolverConfig& config) {
    return solve(prepare_instance(instance, config.saha_mode), config);
}

}  // namespace tma
