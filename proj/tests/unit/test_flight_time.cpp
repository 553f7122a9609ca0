#include <doctest.h>

#include <stdexcept>

#include "test_support.hpp"
#include "tma/flight_time.hpp"

using namespace tma;

TEST_CASE("approach time lookup") {
    Instance in = test::small_instance();
    Flight& f = test::add_arrival(in, "a1", "A", "RA", "AF1", AircraftClass::Medium, 10000);
    in.segment_times.entries[segment_key(f)] = 780;
    CHECK(approach_time(f, in.segment_times) == 780);
    f.fix_id = "AF2";
    CHECK(approach_time(f, in.segment_times) == 600);
    Flight twin = in.flights[0];
    twin.id = "a2";
    CHECK(approach_time(twin, in.segment_times) == approach_time(in.flights[0], in.segment_times));
    CHECK_THROWS_AS(climb_time(f, in.segment_times), std::invalid_argument);
}

TEST_CASE("climb time lookup") {
    Instance in = test::small_instance();
    Flight& f = test::add_departure(in, "d1", "A", "RD", "DF1", AircraftClass::Heavy, 10000);
    in.segment_times.entries[segment_key(f)] = 540;
    CHECK(climb_time(f, in.segment_times) == 540);
    f.aircraft_class = AircraftClass::Light;
    CHECK(climb_time(f, in.segment_times) == 600);
    CHECK_THROWS_AS(approach_time(f, in.segment_times), std::invalid_argument);
}

TEST_CASE("time linkage in both directions") {
    Instance in = test::small_instance();
    Flight& arr = test::add_arrival(in, "a1", "A", "RA", "AF1", AircraftClass::Medium, 10000);
    in.segment_times.entries[segment_key(arr)] = 780;
    CHECK(runway_time_from_fix(in.flights[0], 1000, in.segment_times) == 1780);
    Flight& dep = test::add_departure(in, "d1", "A", "RD", "DF1", AircraftClass::Medium, 10000);
    in.segment_times.entries[segment_key(dep)] = 540;
    CHECK(fix_time_from_runway(in.flights[1], 500, in.segment_times) == 1040);

    for (const Flight& f : in.flights)
        for (Seconds t : {0, 1, 599, 12345}) {
            CHECK(fix_time_from_runway(f, runway_time_from_fix(f, t, in.segment_times), in.segment_times) == t);
            // Shifting one time shifts the other by the same amount.
            CHECK(runway_time_from_fix(f, t + 17, in.segment_times) - runway_time_from_fix(f, t, in.segment_times) ==
                  17);
        }
}
