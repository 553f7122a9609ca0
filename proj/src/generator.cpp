#include "tma/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rng.hpp"
#include "tma/errors.hpp"
#include "tma/scenario.hpp"
#include "tma/solver.hpp"

namespace tma {

namespace {

struct AirportRoles {
    std::vector<std::string> arrival_runways;
    std::vector<std::string> departure_runways;
};

const std::map<std::string, AirportRoles>& runway_roles() {
    static const std::map<std::string, AirportRoles> roles = {
        {"ZSSS", {{"18L/36R"}, {"18R/36L"}}},
        {"ZSPD", {{"16L/34R", "17R/35L"}, {"16R/34L", "17L/35R"}}},
    };
    return roles;
}

// Class mix in percent: A380, Heavy, Medium, Light.
constexpr std::array<int, 4> kClassMix = {3, 22, 70, 5};

AircraftClass draw_class(detail::Rng& rng) {
    auto r = static_cast<int>(rng.below(100));
    for (std::size_t c = 0; c < kClassMix.size(); ++c) {
        if (r < kClassMix[c]) return kAircraftClasses[c];
        r -= kClassMix[c];
    }
    return AircraftClass::Medium;
}

// Wingspans in tenths of a metre.
double draw_wingspan(AircraftClass c, detail::Rng& rng) {
    const auto tenths = [&](int lo, int hi) { return static_cast<double>(rng.between(lo, hi)) / 10.0; };
    switch (c) {
        case AircraftClass::A380: return 79.8;
        case AircraftClass::Heavy: return tenths(476, 684);
        case AircraftClass::Medium: return tenths(280, 380);
        case AircraftClass::Light: return tenths(100, 200);
    }
    return 35.0;
}

std::vector<std::string> fixes_of(const Instance& inst, FlightKind dir) {
    std::vector<std::string> out;
    for (const auto& f : inst.fixes)
        if (f.direction == dir) out.push_back(f.id);
    return out;
}

std::string flight_id(const std::string& airport, char tag, int n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%c%02d", airport.c_str(), tag, n);
    return buf;
}

void add_flights(Instance& inst, const std::string& airport, FlightKind kind, int count,
                 Seconds first, Seconds span, detail::Rng& rng) {
    const auto& roles = runway_roles().at(airport);
    const auto& runways = kind == FlightKind::Arrival ? roles.arrival_runways : roles.departure_runways;
    const auto fixes = fixes_of(inst, kind);
    const auto runway_offset = rng.below(runways.size());
    const auto fix_offset = rng.below(fixes.size());
    for (int n = 0; n < count; ++n) {
        Flight f;
        f.id = flight_id(airport, kind == FlightKind::Arrival ? 'A' : 'D', n + 1);
        f.kind = kind;
        f.airport_id = airport;
        f.runway_id = runways[(runway_offset + n) % runways.size()];
        f.fix_id = fixes[(fix_offset + n) % fixes.size()];
        f.aircraft_class = draw_class(rng);
        f.wingspan_m = draw_wingspan(f.aircraft_class, rng);
        f.planned_runway_time = first + rng.between(0, span - 1);
        f.planned_fix_time = fix_time_from_runway(f, f.planned_runway_time, inst.segment_times);
        inst.flights.push_back(std::move(f));
    }
}

bool fcfs_feasible(const Instance& inst, Seconds step) {
    SolverConfig cfg;
    cfg.algorithm = Algorithm::Fcfs;
    cfg.time_step = step;
    for (const auto mode : {SahaMode::Staggered, SahaMode::FixedByAirport}) {
        const auto prepared = prepare_instance(inst, mode);
        try {
            fcfs_schedule(prepared.instance, prepared.scenario, cfg);
        } catch (const InfeasibleError&) {
            return false;
        }
    }
    return true;
}

}  // namespace

Instance shanghai_template() {
    Instance inst;
    Airport zsss;
    zsss.id = "ZSSS";
    zsss.runways = {"18L/36R", "18R/36L"};
    zsss.close_pairs = {{"18L/36R", "18R/36L"}};
    zsss.has_end_around_taxiway = true;
    zsss.hourly_capacity_arr = 25;
    zsss.hourly_capacity_dep = 25;
    Airport zspd;
    zspd.id = "ZSPD";
    zspd.runways = {"16L/34R", "16R/34L", "17L/35R", "17R/35L"};
    zspd.close_pairs = {{"16L/34R", "16R/34L"}, {"17R/35L", "17L/35R"}};
    zspd.has_end_around_taxiway = false;
    zspd.hourly_capacity_arr = 46;
    zspd.hourly_capacity_dep = 46;
    inst.airports = {zsss, zspd};

    for (int i = 1; i <= 5; ++i)
        inst.fixes.push_back({"AF" + std::to_string(i), FixDirection::Arrival, i <= 4 ? 2 : 1});
    for (int i = 1; i <= 10; ++i)
        inst.fixes.push_back({"DF" + std::to_string(i), FixDirection::Departure, i <= 6 ? 2 : 1});

    auto& table = inst.segment_times;
    int arr_idx = 0, dep_idx = 0;
    for (const auto& fix : inst.fixes) {
        const bool arrival = fix.direction == FixDirection::Arrival;
        const int idx = arrival ? arr_idx++ : dep_idx++;
        for (const auto& ap : inst.airports) {
            const auto& roles = runway_roles().at(ap.id);
            for (const auto& rw : arrival ? roles.arrival_runways : roles.departure_runways) {
                for (const auto c : kAircraftClasses) {
                    Seconds s = 0;
                    if (arrival) {
                        s = 780 + 120 * idx + (ap.id == "ZSSS" ? 60 : 0) + (rw == "17R/35L" ? 45 : 0);
                        if (c == AircraftClass::Medium) s += 15;
                        if (c == AircraftClass::Light) s += 40;
                    } else {
                        s = 420 + 60 * (idx % 5) + (rw == "17L/35R" ? 30 : 0);
                        if (c == AircraftClass::A380) s += 60;
                        if (c == AircraftClass::Heavy) s += 40;
                        if (c == AircraftClass::Light) s += 20;
                    }
                    table.entries[{ap.id, fix.id, rw, c}] = s;
                }
            }
        }
    }
    return inst;
}

Instance generate_instance(const GeneratorOptions& options) {
    const Instance base = shanghai_template();
    for (const auto& [id, c] : options.counts) {
        if (!base.find_airport(id)) throw InputError("generator: unknown airport '" + id + "'");
        if (c.arrivals < 0 || c.departures < 0) throw InputError("generator: negative count for " + id);
    }
    if (options.window_seconds <= 0) throw InputError("generator: window must be positive");

    detail::Rng rng(options.seed);
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        Instance inst = base;
        inst.window_start = options.window_start;
        inst.window_seconds = options.window_seconds;
        for (const auto& ap : base.airports) {
            const auto it = options.counts.find(ap.id);
            if (it == options.counts.end()) continue;
            add_flights(inst, ap.id, FlightKind::Arrival, it->second.arrivals, options.window_start,
                        options.window_seconds, rng);
            add_flights(inst, ap.id, FlightKind::Departure, it->second.departures, options.window_start,
                        options.window_seconds, rng);
        }
        if (fcfs_feasible(inst, options.feasibility_step)) return assign_handover_altitudes(inst, SahaMode::Staggered);
    }
    throw InfeasibleError("generator: no FCFS-feasible draw in " + std::to_string(options.max_attempts) +
                          " attempts");
}

std::map<std::string, AirportCounts> counts_for_scenario(int index, std::uint64_t seed) {
    // ZSSS total a, ZSPD total b against thresholds MAS 19, ZSSS 7, ZSPD 12.
    detail::Rng rng(seed ^ 0x5ce7a710ULL);
    std::int64_t a = 0, b = 0;
    switch (index) {
        case 1: a = rng.between(8, 10); b = rng.between(19 - a, 11); break;
        case 2: a = rng.between(4, 6); b = rng.between(std::max<std::int64_t>(12, 19 - a), 15); break;
        case 3: a = rng.between(7, 9); b = rng.between(12, 14); break;
        case 4: a = rng.between(7, 9); b = rng.between(3, std::min<std::int64_t>(11, 18 - a)); break;
        case 5: a = rng.between(2, 6); b = rng.between(12, 18 - a); break;
        case 6: a = rng.between(1, 5); b = rng.between(2, 9); break;
        default: throw InputError("generator: scenario must be 1..6, got " + std::to_string(index));
    }
    const auto split = [&](std::int64_t total) {
        const auto arr = static_cast<int>(total / 2 + (total % 2 ? rng.below(2) : 0));
        return AirportCounts{arr, static_cast<int>(total) - arr};
    };
    std::map<std::string, AirportCounts> counts;
    counts["ZSSS"] = split(a);
    counts["ZSPD"] = split(b);
    return counts;
}

Instance generate_scenario_instance(int index, std::uint64_t seed) {
    GeneratorOptions opt;
    opt.counts = counts_for_scenario(index, seed);
    opt.seed = seed;
    return generate_instance(opt);
}

Instance generate_micro_instance(int flights, std::uint64_t seed, Seconds grid) {
    if (flights < 1 || flights > static_cast<int>(kOracleMaxFlights))
        throw InputError("generator: micro instances hold 1.." + std::to_string(kOracleMaxFlights) +
                         " flights");
    detail::Rng rng(seed ^ 0x3a1c0de5ULL);
    std::map<std::string, AirportCounts> counts;
    for (int n = 0; n < flights; ++n) {
        auto& c = counts[rng.below(2) ? "ZSPD" : "ZSSS"];
        (rng.below(2) ? c.arrivals : c.departures) += 1;
    }
    GeneratorOptions opt;
    opt.counts = counts;
    opt.seed = seed;
    // A short window keeps the few flights close enough to interact.
    opt.window_seconds = 300;
    opt.feasibility_step = grid;
    Instance inst = generate_instance(opt);
    inst.window_seconds = 600;
    return inst;
}

}  // namespace tma
