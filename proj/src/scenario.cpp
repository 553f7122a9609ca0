#include "tma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tma {

namespace {

int window_threshold(double hourly, Seconds window_seconds) {
    const double scaled = hourly * static_cast<double>(window_seconds) / 3600.0;
    return std::max(1, static_cast<int>(std::lround(scaled)));
}

}  // namespace

PeakThresholds compute_thresholds(const Instance& instance) {
    PeakThresholds t;
    t.window_seconds = instance.window_seconds;
    double mas_hourly = 0.0;
    for (const auto& a : instance.airports) {
        const double hourly = (a.hourly_capacity_arr + a.hourly_capacity_dep) * instance.peak_fraction;
        mas_hourly += hourly;
        t.per_airport[a.id] = window_threshold(hourly, instance.window_seconds);
    }
    t.mas = window_threshold(mas_hourly, instance.window_seconds);
    return t;
}

TrafficCounts count_traffic(const Instance& instance) {
    TrafficCounts c;
    for (const auto& a : instance.airports) c.per_airport[a.id] = 0;
    const Seconds lo = instance.window_start;
    const Seconds hi = instance.window_start + instance.window_seconds;
    for (const auto& f : instance.flights) {
        if (f.planned_runway_time < lo || f.planned_runway_time >= hi) continue;
        ++c.per_airport[f.airport_id];
        ++c.mas;
    }
    return c;
}

std::optional<int> scenario_index_for(bool mas, bool first, bool second) {
    if (mas) {
        if (first && !second) return 1;
        if (!first && second) return 2;
        if (first && second) return 3;
        return std::nullopt;
    }
    if (first && !second) return 4;
    if (!first && second) return 5;
    if (!first && !second) return 6;
    return std::nullopt;
}

ScenarioState classify_counts(const Instance& instance, const TrafficCounts& counts,
                              const PeakThresholds& thresholds) {
    ScenarioState s;
    s.mas_peak = counts.mas >= thresholds.mas;
    for (const auto& a : instance.airports) {
        const auto c = counts.per_airport.find(a.id);
        const auto t = thresholds.per_airport.find(a.id);
        const int count = c == counts.per_airport.end() ? 0 : c->second;
        const int threshold = t == thresholds.per_airport.end() ? 1 : t->second;
        s.airport_peak[a.id] = count >= threshold;
    }
    if (instance.airports.size() == 2)
        s.scenario_index = scenario_index_for(s.mas_peak, s.airport_peak[instance.airports[0].id],
                                              s.airport_peak[instance.airports[1].id]);
    return s;
}

ScenarioState classify_scenario(const Instance& instance, const PeakThresholds& thresholds) {
    return classify_counts(instance, count_traffic(instance), thresholds);
}

Instance assign_handover_altitudes(const Instance& instance, SahaMode mode) {
    Instance out = instance;
    for (const auto& fix : out.fixes) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < out.flights.size(); ++i)
            if (out.flights[i].fix_id == fix.id) members.push_back(i);
        if (members.empty()) continue;

        if (fix.altitude_slots <= 1) {
            for (auto i : members) out.flights[i].altitude_slot = 1;
            continue;
        }

        if (mode == SahaMode::Staggered) {
            std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
                const auto& fa = out.flights[a];
                const auto& fb = out.flights[b];
                if (fa.planned_fix_time != fb.planned_fix_time)
                    return fa.planned_fix_time < fb.planned_fix_time;
                return fa.id < fb.id;
            });
            for (std::size_t k = 0; k < members.size(); ++k)
                out.flights[members[k]].altitude_slot = static_cast<int>(k % 2) + 1;
        } else {
            // One slot per airport, round-robin over airports sorted by id;
            // airports beyond the slot count reuse slots.
            std::vector<std::string> airports;
            for (auto i : members) airports.push_back(out.flights[i].airport_id);
            std::sort(airports.begin(), airports.end());
            airports.erase(std::unique(airports.begin(), airports.end()), airports.end());
            for (auto i : members) {
                const auto pos = std::lower_bound(airports.begin(), airports.end(),
                                                  out.flights[i].airport_id) -
                                 airports.begin();
                out.flights[i].altitude_slot = static_cast<int>(pos % fix.altitude_slots) + 1;
            }
        }
    }
    return out;
}

std::string_view to_string(SahaMode mode) {
    return mode == SahaMode::Staggered ? "staggered" : "fixed-by-airport";
}

}  // namespace tma
