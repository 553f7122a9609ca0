#include "tma/objective.hpp"

#include <algorithm>
#include <numeric>

#include "tma/constraints.hpp"

namespace tma {

ObjectiveModel::ObjectiveModel(const Instance& instance, const ObjectiveOptions& options)
    : instance_(&instance), options_(options), planned_ranks_(instance.flights.size(), 0) {
    std::map<std::pair<std::string, std::string>, int> queue_of;
    for (int i = 0; i < static_cast<int>(instance.flights.size()); ++i) {
        const auto& f = instance.flights[i];
        if (f.is_departure()) {
            departures_.push_back(i);
            continue;
        }
        arrivals_.push_back(i);
        auto [it, inserted] = queue_of.try_emplace({f.airport_id, f.runway_id},
                                                   static_cast<int>(queues_.size()));
        if (inserted) queues_.emplace_back();
        queues_[it->second].push_back(i);
    }
    std::vector<Seconds> planned(2 * instance.flights.size(), 0);
    for (std::size_t i = 0; i < instance.flights.size(); ++i) {
        planned[2 * i] = instance.flights[i].planned_fix_time;
        planned[2 * i + 1] = instance.flights[i].planned_runway_time;
    }
    planned_ranks_ = landing_ranks(planned);
}

std::vector<int> ObjectiveModel::landing_ranks(std::span<const Seconds> t) const {
    std::vector<int> ranks(instance_->flights.size(), 0);
    std::vector<int> order;
    for (const auto& q : queues_) {
        order = q;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const Seconds ta = t[2 * a + 1];
            const Seconds tb = t[2 * b + 1];
            if (ta != tb) return ta < tb;
            return instance_->flights[a].id < instance_->flights[b].id;
        });
        for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<int>(r) + 1;
    }
    return ranks;
}

Seconds ObjectiveModel::order_shift_total(std::span<const Seconds> t) const {
    const auto ranks = landing_ranks(t);
    Seconds total = 0;
    for (int i : arrivals_) total += std::abs(ranks[i] - planned_ranks_[i]);
    return total;
}

Seconds ObjectiveModel::arrival_delay_total(std::span<const Seconds> t) const {
    Seconds total = 0;
    for (int i : arrivals_) {
        const Seconds d = t[2 * i] - instance_->flights[i].planned_fix_time;
        total += options_.clamp_arrival_advance ? std::max<Seconds>(d, 0) : d;
    }
    return total;
}

Seconds ObjectiveModel::departure_span(std::span<const Seconds> t) const {
    if (departures_.empty()) return 0;
    Seconds lo = t[2 * departures_.front() + 1];
    Seconds hi = lo;
    for (int i : departures_) {
        lo = std::min(lo, t[2 * i + 1]);
        hi = std::max(hi, t[2 * i + 1]);
    }
    return hi - lo;
}

Seconds ObjectiveModel::departure_delay_total(std::span<const Seconds> t) const {
    Seconds total = 0;
    for (int i : departures_) total += t[2 * i + 1] - instance_->flights[i].planned_runway_time;
    return total;
}

double ObjectiveModel::upper(std::span<const Seconds> t, bool peak) const {
    return static_cast<double>(peak ? order_shift_total(t) : arrival_delay_total(t));
}

double ObjectiveModel::lower(std::span<const Seconds> t, bool peak) const {
    return static_cast<double>(peak ? departure_span(t) : departure_delay_total(t));
}

ObjectiveValue ObjectiveModel::evaluate(std::span<const Seconds> t, bool peak) const {
    ObjectiveValue v;
    v.components.arr_order_shift_total = order_shift_total(t);
    v.components.arr_delay_total_s = arrival_delay_total(t);
    v.components.dep_rot_span_s = departure_span(t);
    v.components.dep_delay_total_s = departure_delay_total(t);
    v.upper = static_cast<double>(peak ? v.components.arr_order_shift_total
                                       : v.components.arr_delay_total_s);
    v.lower = static_cast<double>(peak ? v.components.dep_rot_span_s
                                       : v.components.dep_delay_total_s);
    return v;
}

std::map<std::string, int> landing_order(const Instance& instance, const Schedule& schedule) {
    const ObjectiveModel model(instance);
    const auto ranks = model.landing_ranks(schedule_times(instance, schedule));
    std::map<std::string, int> out;
    for (std::size_t i = 0; i < instance.flights.size(); ++i)
        if (instance.flights[i].is_arrival()) out[instance.flights[i].id] = ranks[i];
    return out;
}

double upper_objective(const Instance& instance, const Schedule& schedule,
                       const ScenarioState& scenario, const ObjectiveOptions& options) {
    return ObjectiveModel(instance, options).upper(schedule_times(instance, schedule), scenario.mas_peak);
}

double lower_objective(const Instance& instance, const Schedule& schedule,
                       const ScenarioState& scenario, const ObjectiveOptions& options) {
    return ObjectiveModel(instance, options).lower(schedule_times(instance, schedule), scenario.mas_peak);
}

ObjectiveValue evaluate_objectives(const Instance& instance, const Schedule& schedule,
                                   const ScenarioState& scenario, const ObjectiveOptions& options) {
    return ObjectiveModel(instance, options).evaluate(schedule_times(instance, schedule),
                                                       scenario.mas_peak);
}

}  // namespace tma
