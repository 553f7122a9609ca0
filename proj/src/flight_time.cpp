#include "tma/flight_time.hpp"

#include <stdexcept>

namespace tma {

Seconds SegmentTimeTable::lookup(const SegmentKey& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? default_seconds : it->second;
}

SegmentKey segment_key(const Flight& flight) {
    return {flight.airport_id, flight.fix_id, flight.runway_id, flight.aircraft_class};
}

Seconds approach_time(const Flight& flight, const SegmentTimeTable& table) {
    if (!flight.is_arrival())
        throw std::invalid_argument("approach_time: flight " + flight.id + " is not an arrival");
    return table.lookup(segment_key(flight));
}

Seconds climb_time(const Flight& flight, const SegmentTimeTable& table) {
    if (!flight.is_departure())
        throw std::invalid_argument("climb_time: flight " + flight.id + " is not a departure");
    return table.lookup(segment_key(flight));
}

Seconds segment_time(const Flight& flight, const SegmentTimeTable& table) {
    return table.lookup(segment_key(flight));
}

Seconds runway_time_from_fix(const Flight& flight, Seconds fix_time,
                             const SegmentTimeTable& table) {
    const Seconds seg = segment_time(flight, table);
    return flight.is_arrival() ? fix_time + seg : fix_time - seg;
}

Seconds fix_time_from_runway(const Flight& flight, Seconds runway_time,
                             const SegmentTimeTable& table) {
    const Seconds seg = segment_time(flight, table);
    return flight.is_arrival() ? runway_time - seg : runway_time + seg;
}

}  // namespace tma
