#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tma/flight_time.hpp"
#include "tma/types.hpp"

namespace tma {

struct Airport {
    std::string id;
    std::vector<std::string> runways;
    /// Closely spaced parallel runway pairs, unordered.
    std::vector<std::pair<std::string, std::string>> close_pairs;
    bool has_end_around_taxiway = false;
    int hourly_capacity_arr = 1;
    int hourly_capacity_dep = 1;

    bool has_runway(const std::string& runway) const;

    bool operator==(const Airport&) const = default;
};

struct HandoverFix {
    std::string id;
    FixDirection direction = FixDirection::Arrival;
    int altitude_slots = 1;

    bool operator==(const HandoverFix&) const = default;
};

/// 4x4 matrix indexed [following class][preceding class], seconds.
using WakeMatrix = std::array<std::array<Seconds, 4>, 4>;

/// Arrival wake separations, row = following, column = preceding.
inline constexpr WakeMatrix kDefaultWakeArrival = {{
    {60, 120, 180, 240},
    {60, 60, 120, 180},
    {60, 60, 60, 180},
    {60, 60, 60, 60},
}};

/// Departure wake separations, row = following, column = preceding.
inline constexpr WakeMatrix kDefaultWakeDeparture = {{
    {60, 120, 180, 180},
    {60, 60, 120, 120},
    {60, 60, 60, 120},
    {60, 60, 60, 60},
}};

struct SeparationConfig {
    WakeMatrix wake_arrival = kDefaultWakeArrival;
    WakeMatrix wake_departure = kDefaultWakeDeparture;
    Seconds handover_sep_arr = 90;
    Seconds handover_sep_dep = 135;
    /// Take-off clearance between departures sharing a departure fix.
    Seconds clearance_sep = 120;
    /// Departure runway clear time before a paired arrival may land.
    Seconds dep_clear_time = 45;
    Seconds vacate_time = 45;
    Seconds cross_time = 45;
    /// Time offset of one queue position; CPS half-width is mps * offset.
    Seconds position_shift_offset = 120;
    double crossing_wingspan_threshold_m = 36.0;

    bool operator==(const SeparationConfig&) const = default;
};

struct Instance {
    std::vector<Airport> airports;
    std::vector<HandoverFix> fixes;
    std::vector<Flight> flights;
    SeparationConfig separation;
    SegmentTimeTable segment_times;
    double peak_fraction = 0.8;
    Seconds window_start = 0;
    Seconds window_seconds = 600;

    const Airport* find_airport(const std::string& id) const;
    const HandoverFix* find_fix(const std::string& id) const;
    /// Index into flights, or -1.
    int find_flight(const std::string& id) const;

    bool operator==(const Instance&) const = default;
};

struct ScheduleEntry {
    std::string flight_id;
    /// Optimized fix-crossing time (arrival fix or departure fix).
    Seconds fix_time = 0;
    /// Optimized landing or take-off time.
    Seconds runway_time = 0;

    bool operator==(const ScheduleEntry&) const = default;
};

struct Schedule {
    std::vector<ScheduleEntry> entries;

    bool operator==(const Schedule&) const = default;
};

/// The planned times of every flight, in instance order.
Schedule planned_schedule(const Instance& instance);

/// Arrival or departure wake separation for a (following, preceding) class pair.
Seconds wake_separation(AircraftClass following, AircraftClass preceding, FlightKind kind,
                        const SeparationConfig& cfg);

/// True iff {rw_a, rw_b} is a listed close pair of the airport. Throws InputError
/// for runways the airport does not own.
bool are_close_pair(const std::string& rw_a, const std::string& rw_b, const Airport& airport);

/// Effective vacate time of an arrival.
Seconds vacate_time(const Flight& flight, const SeparationConfig& cfg);

/// Half-width of a flight's CPS window in seconds.
Seconds position_shift_window(const Flight& flight, const SeparationConfig& cfg);

/// Checks every structural invariant and the planned-time linkage. Throws
/// InputError naming the offending field. Returns warnings (segment-time
/// fallback use).
std::vector<std::string> validate_instance(const Instance& instance);

}  // namespace tma
