#include "tma/constraints.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "tma/errors.hpp"

namespace tma {

namespace {

constexpr std::array<std::string_view, 13> kKindNames = {
    "ArrWake",        "DepWake",     "DepClearanceFix", "DepArrRunway", "CrsSamePathArr",
    "CrsSamePathDep", "HandoverArr", "HandoverDep",     "RunwayCrossing", "CpsArr",
    "CpsDep",         "TimeLinkArr", "TimeLinkDep",
};

constexpr std::array<ConstraintKind, 9> kPairKinds = {
    ConstraintKind::ArrWake,        ConstraintKind::DepWake,        ConstraintKind::DepClearanceFix,
    ConstraintKind::DepArrRunway,   ConstraintKind::CrsSamePathArr, ConstraintKind::CrsSamePathDep,
    ConstraintKind::HandoverArr,    ConstraintKind::HandoverDep,    ConstraintKind::RunwayCrossing,
};

// (planned time, id) ordering for same-kind pairs.
bool precedes(const Flight& a, Seconds ta, const Flight& b, Seconds tb) {
    if (ta != tb) return ta < tb;
    return a.id < b.id;
}

PairConstraint make(ConstraintKind kind, int earlier, TimeRef eref, int later, TimeRef lref,
                    Seconds sep, bool symmetric = false) {
    return {kind, earlier, later, eref, lref, sep, symmetric};
}

std::optional<PairConstraint> same_kind_ordered(ConstraintKind kind, const Instance& in, int a,
                                                int b, bool by_fix_time, TimeRef ref, Seconds sep) {
    const auto& fa = in.flights[a];
    const auto& fb = in.flights[b];
    const Seconds ta = by_fix_time ? fa.planned_fix_time : fa.planned_runway_time;
    const Seconds tb = by_fix_time ? fb.planned_fix_time : fb.planned_runway_time;
    if (precedes(fa, ta, fb, tb)) return make(kind, a, ref, b, ref, sep);
    return make(kind, b, ref, a, ref, sep);
}

int leader_of(const Instance& in, int a, int b, bool by_fix_time) {
    const auto& fa = in.flights[a];
    const auto& fb = in.flights[b];
    const Seconds ta = by_fix_time ? fa.planned_fix_time : fa.planned_runway_time;
    const Seconds tb = by_fix_time ? fb.planned_fix_time : fb.planned_runway_time;
    return precedes(fa, ta, fb, tb) ? a : b;
}

}  // namespace

std::string_view to_string(ConstraintKind kind) {
    return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<ConstraintKind> parse_constraint_kind(std::string_view s) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i)
        if (kKindNames[i] == s) return static_cast<ConstraintKind>(i);
    return std::nullopt;
}

bool is_pair_kind(ConstraintKind kind) {
    return std::find(kPairKinds.begin(), kPairKinds.end(), kind) != kPairKinds.end();
}

std::optional<PairConstraint> compile_pair(ConstraintKind kind, const Instance& in, int a, int b,
                                           const CheckOptions& options) {
    if (a == b) return std::nullopt;
    const Flight& fa = in.flights[a];
    const Flight& fb = in.flights[b];
    const SeparationConfig& sep = in.separation;
    const bool both_arr = fa.is_arrival() && fb.is_arrival();
    const bool both_dep = fa.is_departure() && fb.is_departure();
    const bool same_airport = fa.airport_id == fb.airport_id;

    switch (kind) {
        case ConstraintKind::ArrWake: {
            if (!both_arr || !same_airport || fa.runway_id != fb.runway_id) return std::nullopt;
            const int lead = leader_of(in, a, b, false);
            const int follow = lead == a ? b : a;
            const Seconds w = wake_separation(in.flights[follow].aircraft_class,
                                              in.flights[lead].aircraft_class, FlightKind::Arrival, sep);
            return make(kind, lead, TimeRef::Runway, follow, TimeRef::Runway, w);
        }
        case ConstraintKind::DepWake: {
            if (!both_dep || !same_airport || fa.runway_id != fb.runway_id) return std::nullopt;
            const int lead = leader_of(in, a, b, false);
            const int follow = lead == a ? b : a;
            const Seconds w = wake_separation(in.flights[follow].aircraft_class,
                                              in.flights[lead].aircraft_class, FlightKind::Departure, sep);
            return make(kind, lead, TimeRef::Runway, follow, TimeRef::Runway, w);
        }
        case ConstraintKind::DepClearanceFix:
            if (!both_dep || !same_airport || fa.fix_id != fb.fix_id) return std::nullopt;
            return same_kind_ordered(kind, in, a, b, false, TimeRef::Runway, sep.clearance_sep);
        case ConstraintKind::CrsSamePathArr:
            if (!options.enable_crsspf || !both_arr || !same_airport || fa.fix_id != fb.fix_id)
                return std::nullopt;
            return same_kind_ordered(kind, in, a, b, true, TimeRef::Runway, 1);
        case ConstraintKind::CrsSamePathDep:
            if (!options.enable_crsspf || !both_dep || !same_airport || fa.fix_id != fb.fix_id)
                return std::nullopt;
            {
                // Ordered by planned take-off, enforced on fix crossings.
                const int lead = leader_of(in, a, b, false);
                return make(kind, lead, TimeRef::Fix, lead == a ? b : a, TimeRef::Fix, 1);
            }
        case ConstraintKind::HandoverArr:
            if (!both_arr || fa.fix_id != fb.fix_id || fa.altitude_slot != fb.altitude_slot)
                return std::nullopt;
            {
                const int lead = leader_of(in, a, b, true);
                return make(kind, lead, TimeRef::Fix, lead == a ? b : a, TimeRef::Fix,
                            sep.handover_sep_arr, true);
            }
        case ConstraintKind::HandoverDep:
            if (!both_dep || fa.fix_id != fb.fix_id || fa.altitude_slot != fb.altitude_slot)
                return std::nullopt;
            return same_kind_ordered(kind, in, a, b, true, TimeRef::Fix, sep.handover_sep_dep);
        case ConstraintKind::DepArrRunway:
        case ConstraintKind::RunwayCrossing: {
            if (fa.kind == fb.kind || !same_airport) return std::nullopt;
            const int arr = fa.is_arrival() ? a : b;
            const int dep = arr == a ? b : a;
            const Flight& fr = in.flights[arr];
            const Flight& fd = in.flights[dep];
            const Airport* ap = in.find_airport(fr.airport_id);
            if (ap == nullptr || !are_close_pair(fr.runway_id, fd.runway_id, *ap)) return std::nullopt;
            if (kind == ConstraintKind::DepArrRunway) {
                if (!(fr.planned_runway_time > fd.planned_runway_time)) return std::nullopt;
                return make(kind, dep, TimeRef::Runway, arr, TimeRef::Runway, sep.dep_clear_time);
            }
            const Seconds va = vacate_time(fr, sep);
            if (!(fd.planned_runway_time > fr.planned_runway_time + va)) return std::nullopt;
            if (ap->has_end_around_taxiway && fr.wingspan_m < sep.crossing_wingspan_threshold_m)
                return std::nullopt;
            return make(kind, arr, TimeRef::Runway, dep, TimeRef::Runway, va + sep.cross_time);
        }
        default:
            return std::nullopt;
    }
}

ConstraintSet::ConstraintSet(const Instance& in, const CheckOptions& options) {
    const int n = static_cast<int>(in.flights.size());
    ids_.reserve(n);
    limits_.reserve(n);
    by_flight_.resize(n);
    for (int i = 0; i < n; ++i) {
        ids_.push_back(in.flights[i].id);
        limits_.push_back(flight_limits(in, i));
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (auto kind : kPairKinds)
                if (auto pc = compile_pair(kind, in, a, b, options)) {
                    const int idx = static_cast<int>(pairs_.size());
                    pairs_.push_back(*pc);
                    by_flight_[a].push_back(idx);
                    by_flight_[b].push_back(idx);
                }
}

FlightLimits flight_limits(const Instance& in, int flight) {
    const Flight& f = in.flights[flight];
    return {f.kind, f.planned_fix_time, f.planned_runway_time, segment_time(f, in.segment_times),
            position_shift_window(f, in.separation)};
}

Seconds flight_shortfall(ConstraintKind kind, const FlightLimits& L, Seconds fix, Seconds rwy) {
    switch (kind) {
        case ConstraintKind::CpsArr: {
            const Seconds d = fix - L.planned_fix;
            return (d < 0 ? -d : d) - L.shift_window;
        }
        case ConstraintKind::CpsDep:
            if (rwy < L.planned_runway) return L.planned_runway - rwy;
            return rwy - (L.planned_runway + L.shift_window);
        case ConstraintKind::TimeLinkArr: {
            const Seconds d = rwy - (fix + L.segment);
            return d < 0 ? -d : d;
        }
        case ConstraintKind::TimeLinkDep: {
            const Seconds d = fix - (rwy + L.segment);
            return d < 0 ? -d : d;
        }
        default:
            return 0;
    }
}

Seconds ConstraintSet::flight_shortfall(ConstraintKind kind, int flight,
                                        std::span<const Seconds> t) const {
    return tma::flight_shortfall(kind, limits_[flight], t[2 * flight], t[2 * flight + 1]);
}

std::vector<Violation> ConstraintSet::check(std::span<const Seconds> t) const {
    std::vector<Violation> out;
    for (int i = 0; i < static_cast<int>(limits_.size()); ++i) {
        const bool arr = limits_[i].kind == FlightKind::Arrival;
        for (auto kind : {arr ? ConstraintKind::CpsArr : ConstraintKind::CpsDep,
                          arr ? ConstraintKind::TimeLinkArr : ConstraintKind::TimeLinkDep}) {
            const Seconds s = flight_shortfall(kind, i, t);
            if (s > 0) out.push_back({kind, {ids_[i]}, s});
        }
    }
    for (const auto& pc : pairs_) {
        const Seconds s = pc.shortfall(t);
        if (s > 0) out.push_back({pc.kind, {ids_[pc.earlier], ids_[pc.later]}, s});
    }
    std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
        if (x.kind != y.kind) return x.kind < y.kind;
        return x.flights < y.flights;
    });
    return out;
}

bool ConstraintSet::feasible(std::span<const Seconds> t) const {
    for (int i = 0; i < static_cast<int>(limits_.size()); ++i) {
        const bool arr = limits_[i].kind == FlightKind::Arrival;
        if (flight_shortfall(arr ? ConstraintKind::CpsArr : ConstraintKind::CpsDep, i, t) > 0 ||
            flight_shortfall(arr ? ConstraintKind::TimeLinkArr : ConstraintKind::TimeLinkDep, i, t) > 0)
            return false;
    }
    for (const auto& pc : pairs_)
        if (!pc.satisfied(t)) return false;
    return true;
}

std::vector<Seconds> schedule_times(const Instance& in, const Schedule& schedule) {
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < in.flights.size(); ++i) index.emplace(in.flights[i].id, static_cast<int>(i));
    std::vector<Seconds> t(2 * in.flights.size(), 0);
    std::vector<bool> seen(in.flights.size(), false);
    for (const auto& e : schedule.entries) {
        auto it = index.find(e.flight_id);
        if (it == index.end()) throw InputError("schedule: unknown flight " + e.flight_id);
        if (seen[it->second]) throw InputError("schedule: duplicate entry for flight " + e.flight_id);
        seen[it->second] = true;
        t[2 * it->second] = e.fix_time;
        t[2 * it->second + 1] = e.runway_time;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw InputError("schedule: missing flight " + in.flights[i].id);
    return t;
}

Schedule schedule_from_times(const Instance& in, std::span<const Seconds> t) {
    Schedule s;
    s.entries.reserve(in.flights.size());
    for (std::size_t i = 0; i < in.flights.size(); ++i)
        s.entries.push_back({in.flights[i].id, t[2 * i], t[2 * i + 1]});
    return s;
}

std::vector<Violation> check_schedule(const Instance& in, const Schedule& schedule,
                                      const CheckOptions& options) {
    const auto times = schedule_times(in, schedule);
    return ConstraintSet(in, options).check(times);
}

PairCheck check_pair(ConstraintKind kind, const Instance& in, const Schedule& schedule,
                     const std::string& flight_a, const std::string& flight_b,
                     const CheckOptions& options) {
    const int a = in.find_flight(flight_a);
    const int b = in.find_flight(flight_b);
    if (a < 0) throw InputError("check_pair: unknown flight " + flight_a);
    if (b < 0) throw InputError("check_pair: unknown flight " + flight_b);
    const auto times = schedule_times(in, schedule);

    if (!is_pair_kind(kind)) {
        const bool arr = in.flights[a].is_arrival();
        const bool applies = (kind == ConstraintKind::CpsArr || kind == ConstraintKind::TimeLinkArr) == arr;
        if (a != b || !applies) return {};
        const Seconds s = flight_shortfall(kind, flight_limits(in, a), times[2 * a], times[2 * a + 1]);
        if (s <= 0) return {PairVerdict::Satisfied, std::nullopt};
        return {PairVerdict::Violated, Violation{kind, {flight_a}, s}};
    }

    const auto pc = compile_pair(kind, in, a, b, options);
    if (!pc) return {};
    const Seconds s = pc->shortfall(times);
    if (s <= 0) return {PairVerdict::Satisfied, std::nullopt};
    return {PairVerdict::Violated,
            Violation{kind, {in.flights[pc->earlier].id, in.flights[pc->later].id}, s}};
}

}  // namespace tma
