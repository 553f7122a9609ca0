#pragma once

// Traffic-scenario classification and handover altitude assignment.
//
// Peak thresholds come from hourly capacity scaled by the peak fraction and
// converted to the scheduling window. The scenario index follows the six-row
// table over (MAS, first airport, second airport) peak flags:
//
//   1  peak      peak      non-peak
//   2  peak      non-peak  peak
//   3  peak      peak      peak
//   4  non-peak  peak      non-peak
//   5  non-peak  non-peak  peak
//   6  non-peak  non-peak  non-peak
//
// Any other pattern (or an airport count other than two) is reported as
// "other"; the MAS flag is still set from the MAS count.

#include <map>
#include <optional>
#include <string>

#include "tma/instance.hpp"

namespace tma {

struct PeakThresholds {
    int mas = 1;
    std::map<std::string, int> per_airport;
    Seconds window_seconds = 600;

    bool operator==(const PeakThresholds&) const = default;
};

struct TrafficCounts {
    int mas = 0;
    std::map<std::string, int> per_airport;
};

struct ScenarioState {
    bool mas_peak = false;
    std::map<std::string, bool> airport_peak;
    /// 1..6, or empty for a pattern outside the table.
    std::optional<int> scenario_index;

    bool operator==(const ScenarioState&) const = default;
};

enum class SahaMode { Staggered, FixedByAirport };

PeakThresholds compute_thresholds(const Instance& instance);

/// Flights whose planned runway time lies in [window_start, window_start + window_seconds).
TrafficCounts count_traffic(const Instance& instance);

/// Peak iff count >= threshold. Airports are matched to table columns in instance order.
ScenarioState classify_counts(const Instance& instance, const TrafficCounts& counts,
                              const PeakThresholds& thresholds);

ScenarioState classify_scenario(const Instance& instance, const PeakThresholds& thresholds);

/// Table lookup; empty when the pattern has no row.
std::optional<int> scenario_index_for(bool mas_peak, bool first_airport_peak,
                                      bool second_airport_peak);

/// Returns a copy of the instance with every flight's altitude slot assigned.
Instance assign_handover_altitudes(const Instance& instance, SahaMode mode);

std::string_view to_string(SahaMode mode);

}  // namespace tma
