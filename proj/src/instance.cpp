#include "tma/instance.hpp"

#include <algorithm>
#include <set>

#include "tma/errors.hpp"

namespace tma {

bool Airport::has_runway(const std::string& runway) const {
    return std::find(runways.begin(), runways.end(), runway) != runways.end();
}

const Airport* Instance::find_airport(const std::string& id) const {
    for (const auto& a : airports)
        if (a.id == id) return &a;
    return nullptr;
}

const HandoverFix* Instance::find_fix(const std::string& id) const {
    for (const auto& f : fixes)
        if (f.id == id) return &f;
    return nullptr;
}

int Instance::find_flight(const std::string& id) const {
    for (std::size_t i = 0; i < flights.size(); ++i)
        if (flights[i].id == id) return static_cast<int>(i);
    return -1;
}

Schedule planned_schedule(const Instance& instance) {
    Schedule s;
    s.entries.reserve(instance.flights.size());
    for (const auto& f : instance.flights)
        s.entries.push_back({f.id, f.planned_fix_time, f.planned_runway_time});
    return s;
}

Seconds wake_separation(AircraftClass following, AircraftClass preceding, FlightKind kind,
                        const SeparationConfig& cfg) {
    const auto& m = kind == FlightKind::Arrival ? cfg.wake_arrival : cfg.wake_departure;
    return m[static_cast<std::size_t>(following)][static_cast<std::size_t>(preceding)];
}

bool are_close_pair(const std::string& rw_a, const std::string& rw_b, const Airport& airport) {
    if (!airport.has_runway(rw_a))
        throw InputError("airport " + airport.id + " has no runway " + rw_a);
    if (!airport.has_runway(rw_b))
        throw InputError("airport " + airport.id + " has no runway " + rw_b);
    if (rw_a == rw_b) return false;
    for (const auto& [x, y] : airport.close_pairs)
        if ((x == rw_a && y == rw_b) || (x == rw_b && y == rw_a)) return true;
    return false;
}

Seconds vacate_time(const Flight& flight, const SeparationConfig& cfg) {
    return flight.vacate_time.value_or(cfg.vacate_time);
}

Seconds position_shift_window(const Flight& flight, const SeparationConfig& cfg) {
    return static_cast<Seconds>(flight.max_position_shift) * cfg.position_shift_offset;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

void validate_separation(const SeparationConfig& s) {
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const auto cell = "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            require(s.wake_arrival[r][c] > 0, "separation.wake_arrival_s" + cell + ": must be > 0");
            require(s.wake_departure[r][c] > 0,
                    "separation.wake_departure_s" + cell + ": must be > 0");
        }
    require(s.handover_sep_arr > 0, "separation.handover_arr_s: must be > 0");
    require(s.handover_sep_dep > 0, "separation.handover_dep_s: must be > 0");
    require(s.clearance_sep > 0, "separation.clearance_s: must be > 0");
    require(s.dep_clear_time > 0, "separation.dep_clear_s: must be > 0");
    require(s.vacate_time > 0, "separation.vacate_s: must be > 0");
    require(s.cross_time > 0, "separation.cross_s: must be > 0");
    require(s.position_shift_offset > 0, "separation.position_shift_offset_s: must be > 0");
    require(s.crossing_wingspan_threshold_m > 0,
            "separation.crossing_wingspan_threshold_m: must be > 0");
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& in) {
    std::vector<std::string> warnings;

    require(in.window_seconds > 0, "window_seconds: must be > 0");
    require(in.window_start >= 0, "window_start_s: must be >= 0");
    require(in.peak_fraction > 0.0 && in.peak_fraction <= 1.0,
            "peak_fraction: must lie in (0, 1]");

    std::set<std::string> airport_ids;
    for (std::size_t i = 0; i < in.airports.size(); ++i) {
        const auto& a = in.airports[i];
        const auto path = "airports[" + std::to_string(i) + "]";
        require(!a.id.empty(), path + ".id: empty");
        require(airport_ids.insert(a.id).second, path + ".id: duplicate airport " + a.id);
        require(a.hourly_capacity_arr > 0, path + ".hourly_capacity_arr: must be > 0");
        require(a.hourly_capacity_dep > 0, path + ".hourly_capacity_dep: must be > 0");
        std::set<std::string> rws;
        for (const auto& r : a.runways)
            require(rws.insert(r).second, path + ".runways: duplicate runway " + r);
        std::set<std::string> paired;
        for (const auto& [x, y] : a.close_pairs) {
            require(rws.contains(x), path + ".close_pairs: unknown runway " + x);
            require(rws.contains(y), path + ".close_pairs: unknown runway " + y);
            require(x != y, path + ".close_pairs: runway " + x + " paired with itself");
            require(paired.insert(x).second, path + ".close_pairs: runway " + x + " in two pairs");
            require(paired.insert(y).second, path + ".close_pairs: runway " + y + " in two pairs");
        }
    }

    std::set<std::string> fix_ids;
    for (std::size_t i = 0; i < in.fixes.size(); ++i) {
        const auto& f = in.fixes[i];
        const auto path = "fixes[" + std::to_string(i) + "]";
        require(!f.id.empty(), path + ".id: empty");
        require(fix_ids.insert(f.id).second, path + ".id: duplicate fix " + f.id);
        require(f.altitude_slots == 1 || f.altitude_slots == 2,
                path + ".altitude_slots: must be 1 or 2");
    }

    validate_separation(in.separation);

    require(in.segment_times.default_seconds > 0, "segment_times.default_s: must be > 0");
    for (const auto& [key, value] : in.segment_times.entries)
        require(value > 0, "segment_times.entries: non-positive time for " + key.airport_id + "/" +
                               key.fix_id + "/" + key.runway_id);

    std::set<std::string> flight_ids;
    for (std::size_t i = 0; i < in.flights.size(); ++i) {
        const auto& f = in.flights[i];
        const auto path = "flights[" + std::to_string(i) + "] (" + f.id + ")";
        require(!f.id.empty(), "flights[" + std::to_string(i) + "].id: empty");
        require(flight_ids.insert(f.id).second, path + ".id: duplicate flight id");
        const Airport* ap = in.find_airport(f.airport_id);
        require(ap != nullptr, path + ".airport: unknown airport " + f.airport_id);
        require(ap->has_runway(f.runway_id), path + ".runway: unknown runway " + f.runway_id +
                                                 " at airport " + f.airport_id);
        const HandoverFix* fx = in.find_fix(f.fix_id);
        require(fx != nullptr, path + ".fix: unknown fix " + f.fix_id);
        require(fx->direction == f.kind, path + ".fix: fix " + f.fix_id + " is an " +
                                             std::string(to_string(fx->direction)) + " fix");
        require(f.wingspan_m > 0.0, path + ".wingspan_m: must be > 0");
        require(f.max_position_shift >= 0, path + ".max_position_shift: must be >= 0");
        require(f.altitude_slot >= 1 && f.altitude_slot <= fx->altitude_slots,
                path + ".handover_altitude_slot: out of range for fix " + f.fix_id);
        require(f.planned_fix_time >= 0, path + ".planned_fix_time: must be >= 0");
        require(f.planned_runway_time >= 0, path + ".planned_runway_time: must be >= 0");
        if (f.vacate_time) require(*f.vacate_time > 0, path + ".vacate_s: must be > 0");

        if (!in.segment_times.has_entry(segment_key(f)))
            warnings.push_back("flight " + f.id + ": no segment-time entry for " + f.airport_id +
                               "/" + f.fix_id + "/" + f.runway_id + "/" +
                               std::string(to_string(f.aircraft_class)) + ", using default " +
                               std::to_string(in.segment_times.default_seconds) + " s");
        const Seconds linked = runway_time_from_fix(f, f.planned_fix_time, in.segment_times);
        require(linked == f.planned_runway_time,
                path + ".planned_runway_time: linkage violated (expected " +
                    std::to_string(linked) + ")");
    }
    return warnings;
}

}  // namespace tma
