#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tma/constraints.hpp"
#include "tma/instance.hpp"
#include "tma/objective.hpp"
#include "tma/scenario.hpp"

namespace tma {

enum class Algorithm { Fcfs, Oracle, BiGa, BiEga, BiSega };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

struct SolverConfig {
    Algorithm algorithm = Algorithm::BiEga;
    int population_size = 50;
    /// Generations per level in each co-iteration.
    int level_generations = 20;
    int co_iterations = 30;
    double crossover_prob = 0.8;
    double mutation_prob = 0.1;
    /// bi-SEGA elite pool fraction.
    double elite_fraction = 0.1;
    std::uint64_t rng_seed = 1;
    int repair_retry_cap = 100;
    /// Stop when neither level improved for this many co-iterations.
    int stall_co_iterations = 5;
    bool enable_crsspf = true;
    SahaMode saha_mode = SahaMode::Staggered;
    /// Gene resolution: candidate times are planned + k * time_step.
    Seconds time_step = 1;
    /// Oracle grid spacing.
    Seconds oracle_grid = 30;
    bool clamp_arrival_advance = false;
    /// Worker threads for population evaluation. Results do not depend on it.
    int threads = 1;

    CheckOptions check_options() const { return {enable_crsspf}; }
    ObjectiveOptions objective_options() const { return {clamp_arrival_advance}; }
};

/// Throws ConfigError for out-of-range settings.
void validate_config(const SolverConfig& config);

struct ConvergenceRow {
    int co_iteration = 0;
    double upper_best = 0.0;
    double lower_best = 0.0;

    bool operator==(const ConvergenceRow&) const = default;
};

struct SolveResult {
    Schedule schedule;
    ObjectiveValue objective;
    std::vector<ConvergenceRow> convergence;
    std::int64_t evaluations = 0;
    double wall_time_s = 0.0;
};

/// Greedy earliest-feasible placement in planned runway-time order. Arrivals
/// are never advanced. Throws InfeasibleError naming the first flight with no
/// feasible time inside its position-shift window.
SolveResult fcfs_schedule(const Instance& instance, const ScenarioState& scenario,
                          const SolverConfig& config = {});

inline constexpr std::size_t kOracleMaxFlights = 6;

/// Exhaustive search over grid-aligned times (planned + k * grid) inside every
/// CPS window; lexicographic minimum of (upper, lower). Throws ConfigError for
/// instances above kOracleMaxFlights and InfeasibleError when no grid point works.
SolveResult brute_force_oracle(const Instance& instance, const ScenarioState& scenario,
                               Seconds grid_seconds = 30, const SolverConfig& config = {});

/// Co-evolutionary bi-level GA (bi-GA, bi-EGA or bi-SEGA by config.algorithm).
SolveResult bilevel_solve(const Instance& instance, const ScenarioState& scenario,
                          const SolverConfig& config);

/// Altitude assignment per config.saha_mode followed by scenario classification.
struct PreparedInstance {
    Instance instance;
    PeakThresholds thresholds;
    ScenarioState scenario;
};

PreparedInstance prepare_instance(const Instance& instance, SahaMode mode);

/// Dispatch on config.algorithm; the Instance overload prepares with config.saha_mode.
SolveResult solve(const PreparedInstance& prepared, const SolverConfig& config);
SolveResult solve(const Instance& instance, const SolverConfig& config);

}  // namespace tma
