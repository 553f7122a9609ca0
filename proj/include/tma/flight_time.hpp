#pragma once

// Deterministic segment-time model linking fix-crossing and runway times.
//
//   arrivals:   runway_time = fix_time + approach_time
//   departures: fix_time    = runway_time + climb_time
//
// Segment times are constants per (airport, fix, runway, class), so the
// linkage is a pure offset and shifting one time shifts the other equally.

#include <map>
#include <string>
#include <tuple>

#include "tma/types.hpp"

namespace tma {

struct SegmentKey {
    std::string airport_id;
    std::string fix_id;
    std::string runway_id;
    AircraftClass aircraft_class = AircraftClass::Medium;

    auto operator<=>(const SegmentKey&) const = default;
};

struct SegmentTimeTable {
    std::map<SegmentKey, Seconds> entries;
    Seconds default_seconds = 600;

    bool operator==(const SegmentTimeTable&) const = default;

    /// Keyed entry, or default_seconds when the key is absent.
    Seconds lookup(const SegmentKey& key) const;
    bool has_entry(const SegmentKey& key) const { return entries.contains(key); }
};

SegmentKey segment_key(const Flight& flight);

/// Approach segment time of an arrival. Throws std::invalid_argument for departures.
Seconds approach_time(const Flight& flight, const SegmentTimeTable& table);

/// Climb segment time of a departure. Throws std::invalid_argument for arrivals.
Seconds climb_time(const Flight& flight, const SegmentTimeTable& table);

/// Segment time for either kind (approach for arrivals, climb for departures).
Seconds segment_time(const Flight& flight, const SegmentTimeTable& table);

/// Runway time implied by a fix-crossing time.
Seconds runway_time_from_fix(const Flight& flight, Seconds fix_time, const SegmentTimeTable& table);

/// Fix-crossing time implied by a runway time.
Seconds fix_time_from_runway(const Flight& flight, Seconds runway_time,
                             const SegmentTimeTable& table);

}  // namespace tma
