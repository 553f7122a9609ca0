#pragma once

// Scenario-switched objectives.
//
//   upper = P * sum |rank_opt - rank_planned|  +  (1-P) * sum (t_fix_opt - t_fix_planned)   (arrivals)
//   lower = P * (max t_to_opt - min t_to_opt)  +  (1-P) * sum (t_to_opt - t_to_planned)     (departures)
//
// P is the MAS peak flag. Landing ranks are taken within each runway queue.
// The absolute value on rank shifts makes any reordering cost a positive even
// number; the signed sum over a permutation would always be zero.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tma/instance.hpp"
#include "tma/scenario.hpp"

namespace tma {

struct ObjectiveOptions {
    /// Count an advanced arrival as zero delay instead of negative delay.
    bool clamp_arrival_advance = false;
};

struct ObjectiveComponents {
    Seconds arr_order_shift_total = 0;
    Seconds arr_delay_total_s = 0;
    Seconds dep_rot_span_s = 0;
    Seconds dep_delay_total_s = 0;

    bool operator==(const ObjectiveComponents&) const = default;
};

struct ObjectiveValue {
    double upper = 0.0;
    double lower = 0.0;
    ObjectiveComponents components;

    bool operator==(const ObjectiveValue&) const = default;
};

/// Precomputed runway queues and planned ranks; evaluates on the times layout
/// used by ConstraintSet (2*i fix, 2*i+1 runway).
class ObjectiveModel {
public:
    explicit ObjectiveModel(const Instance& instance, const ObjectiveOptions& options = {});

    Seconds order_shift_total(std::span<const Seconds> times) const;
    Seconds arrival_delay_total(std::span<const Seconds> times) const;
    Seconds departure_span(std::span<const Seconds> times) const;
    Seconds departure_delay_total(std::span<const Seconds> times) const;

    double upper(std::span<const Seconds> times, bool peak) const;
    double lower(std::span<const Seconds> times, bool peak) const;
    ObjectiveValue evaluate(std::span<const Seconds> times, bool peak) const;

    /// Ranks (1-based) within each runway queue for the given landing times.
    std::vector<int> landing_ranks(std::span<const Seconds> times) const;
    const std::vector<int>& planned_ranks() const { return planned_ranks_; }

private:
    const Instance* instance_;
    ObjectiveOptions options_;
    std::vector<std::vector<int>> queues_;
    std::vector<int> planned_ranks_;
    std::vector<int> arrivals_;
    std::vector<int> departures_;
};

/// Flight id -> 1-based rank in its (airport, runway) landing queue, by
/// ascending landing time, ties broken by id.
std::map<std::string, int> landing_order(const Instance& instance, const Schedule& schedule);

double upper_objective(const Instance& instance, const Schedule& schedule,
                       const ScenarioState& scenario, const ObjectiveOptions& options = {});

double lower_objective(const Instance& instance, const Schedule& schedule,
                       const ScenarioState& scenario, const ObjectiveOptions& options = {});

ObjectiveValue evaluate_objectives(const Instance& instance, const Schedule& schedule,
                                   const ScenarioState& scenario,
                                   const ObjectiveOptions& options = {});

}  // namespace tma
