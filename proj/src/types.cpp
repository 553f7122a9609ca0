#include "tma/types.hpp"

namespace tma {

std::string_view to_string(AircraftClass c) {
    switch (c) {
        case AircraftClass::A380: return "A380-800";
        case AircraftClass::Heavy: return "Heavy";
        case AircraftClass::Medium: return "Medium";
        case AircraftClass::Light: return "Light";
    }
    return "?";
}

std::string_view to_string(FlightKind k) {
    return k == FlightKind::Arrival ? "arrival" : "departure";
}

std::optional<AircraftClass> parse_aircraft_class(std::string_view s) {
    if (s == "A380-800" || s == "A380") return AircraftClass::A380;
    if (s == "Heavy") return AircraftClass::Heavy;
    if (s == "Medium") return AircraftClass::Medium;
    if (s == "Light") return AircraftClass::Light;
    return std::nullopt;
}

std::optional<FlightKind> parse_flight_kind(std::string_view s) {
    if (s == "arrival") return FlightKind::Arrival;
    if (s == "departure") return FlightKind::Departure;
    return std::nullopt;
}

}  // namespace tma
