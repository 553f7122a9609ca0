#include <algorithm>
#include <chrono>
#include <numeric>

#include "search_space.hpp"
#include "tma/errors.hpp"
#include "tma/solver.hpp"

namespace tma {

SolveResult fcfs_schedule(const Instance& instance, const ScenarioState& scenario,
                          const SolverConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const detail::SearchSpace space(instance, config.check_options(), config.time_step);
    const int n = space.flight_count();

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& fa = instance.flights[a];
        const auto& fb = instance.flights[b];
        if (fa.planned_runway_time != fb.planned_runway_time)
            return fa.planned_runway_time < fb.planned_runway_time;
        return fa.id < fb.id;
    });

    std::vector<Seconds> times = space.planned_times();
    std::vector<char> placed(n, 0);
    std::int64_t evaluations = 0;
    for (int i : order) {
        const detail::GeneDomain& d = space.domain(i);
        bool found = false;
        for (Seconds k = 0; k <= d.k_max; ++k) {
            space.set_gene(times, i, d.value(k));
            ++evaluations;
            if (space.consistent_with(times, i, placed)) {
                found = true;
                break;
            }
        }
        if (!found)
            throw InfeasibleError("fcfs: no feasible time for flight " + instance.flights[i].id +
                                  " within its position-shift window");
        placed[i] = 1;
    }

    const ObjectiveModel objective(instance, config.objective_options());
    SolveResult result;
    result.schedule = schedule_from_times(instance, times);
    result.objective = objective.evaluate(times, scenario.mas_peak);
    result.convergence.push_back({0, result.objective.upper, result.objective.lower});
    result.evaluations = evaluations;
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace tma
