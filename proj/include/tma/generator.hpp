#pragma once

// Seeded synthetic instances over a two-airport template modelled on the
// Shanghai terminal area (ZSSS and ZSPD). Flight mixes are synthetic.

#include <cstdint>
#include <map>
#include <string>

#include "tma/instance.hpp"

namespace tma {

struct AirportCounts {
    int arrivals = 0;
    int departures = 0;

    bool operator==(const AirportCounts&) const = default;
};

struct GeneratorOptions {
    /// Flights per airport id; airports absent from the map get none.
    std::map<std::string, AirportCounts> counts;
    std::uint64_t seed = 1;
    Seconds window_start = 1800;
    Seconds window_seconds = 600;
    /// Resampling attempts before giving up on an FCFS-feasible draw.
    int max_attempts = 200;
    /// Feasibility is checked with FCFS on this gene grid.
    Seconds feasibility_step = 1;
};

/// Airports, fixes, separations and segment times with no flights.
Instance shanghai_template();

/// Draws flights until FCFS succeeds under both altitude-assignment modes.
/// Throws InfeasibleError after max_attempts draws and InputError for an
/// unknown airport or negative count.
Instance generate_instance(const GeneratorOptions& options);

/// Per-airport counts landing the instance in scenario `index` (1..6) with the
/// template thresholds. Throws InputError for other indices.
std::map<std::string, AirportCounts> counts_for_scenario(int index, std::uint64_t seed);

/// generate_instance with counts_for_scenario(index, seed).
Instance generate_scenario_instance(int index, std::uint64_t seed);

/// A tiny instance of `flights` flights (1..6) spread over both airports, for
/// exhaustive comparison. Feasible on the given gene grid.
Instance generate_micro_instance(int flights, std::uint64_t seed, Seconds grid = 30);

}  // namespace tma
