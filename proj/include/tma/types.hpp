#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tma {

/// Integer seconds from the instance epoch. Durations use the same type.
using Seconds = std::int64_t;

enum class AircraftClass : std::uint8_t { A380 = 0, Heavy = 1, Medium = 2, Light = 3 };

inline constexpr std::array<AircraftClass, 4> kAircraftClasses = {
    AircraftClass::A380, AircraftClass::Heavy, AircraftClass::Medium, AircraftClass::Light};

enum class FlightKind : std::uint8_t { Arrival, Departure };

/// Fix direction reuses the flight kind: arrival fixes feed arrivals.
using FixDirection = FlightKind;

std::string_view to_string(AircraftClass c);
std::string_view to_string(FlightKind k);

/// Accepts "A380-800" (also "A380"), "Heavy", "Medium", "Light".
std::optional<AircraftClass> parse_aircraft_class(std::string_view s);
std::optional<FlightKind> parse_flight_kind(std::string_view s);

inline constexpr int kDefaultMaxPositionShift = 2;

struct Flight {
    std::string id;
    FlightKind kind = FlightKind::Arrival;
    std::string airport_id;
    std::string runway_id;
    /// Arrival fix for arrivals, departure fix for departures.
    std::string fix_id;
    AircraftClass aircraft_class = AircraftClass::Medium;
    double wingspan_m = 35.0;
    /// Planned crossing of the handover fix.
    Seconds planned_fix_time = 0;
    /// ELDT for arrivals, ETOT for departures.
    Seconds planned_runway_time = 0;
    /// 1-based handover altitude slot. Overwritten by altitude assignment.
    int altitude_slot = 1;
    int max_position_shift = kDefaultMaxPositionShift;
    /// Per-flight runway vacate time; the separation config default applies when empty.
    std::optional<Seconds> vacate_time;

    bool is_arrival() const { return kind == FlightKind::Arrival; }
    bool is_departure() const { return kind == FlightKind::Departure; }

    bool operator==(const Flight&) const = default;
};

}  // namespace tma
