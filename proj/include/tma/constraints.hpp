#pragma once

// Feasibility checking for complete schedules.
//
// Every pairwise clause has the form
//
//     t(later) >= t(earlier) + separation
//
// where "earlier"/"later" and the applicability guard are decided on PLANNED
// times, so the set of applicable clauses depends only on the instance (and
// the CRSSPF toggle), never on the schedule under test. Same-kind ordering
// uses (planned time, flight id) so that every pair has a definite order.
// Order-preservation clauses are strict, i.e. separation 1 s in integer time.
// The arrival handover clause is symmetric: |gap| >= separation.
//
// A ConstraintSet compiles the applicable clauses once; solvers then check
// candidate time vectors against it. Times are laid out two per flight in
// instance order: index 2*i holds the fix time, 2*i+1 the runway time.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tma/instance.hpp"

namespace tma {

enum class ConstraintKind : std::uint8_t {
    ArrWake,
    DepWake,
    DepClearanceFix,
    DepArrRunway,
    CrsSamePathArr,
    CrsSamePathDep,
    HandoverArr,
    HandoverDep,
    RunwayCrossing,
    CpsArr,
    CpsDep,
    TimeLinkArr,
    TimeLinkDep,
};

std::string_view to_string(ConstraintKind kind);
std::optional<ConstraintKind> parse_constraint_kind(std::string_view s);
bool is_pair_kind(ConstraintKind kind);

struct Violation {
    ConstraintKind kind = ConstraintKind::ArrWake;
    /// One flight for per-flight clauses; two (earlier, later) for pair clauses.
    std::vector<std::string> flights;
    Seconds deficit_seconds = 0;

    bool operator==(const Violation&) const = default;
};

struct CheckOptions {
    /// Same-path constant relative sequence clauses (arrival and departure).
    bool enable_crsspf = true;
};

enum class TimeRef : std::uint8_t { Fix = 0, Runway = 1 };

struct PairConstraint {
    ConstraintKind kind = ConstraintKind::ArrWake;
    int earlier = 0;
    int later = 0;
    TimeRef earlier_ref = TimeRef::Runway;
    TimeRef later_ref = TimeRef::Runway;
    Seconds separation = 0;
    bool symmetric = false;

    std::size_t earlier_slot() const { return 2 * static_cast<std::size_t>(earlier) + static_cast<std::size_t>(earlier_ref); }
    std::size_t later_slot() const { return 2 * static_cast<std::size_t>(later) + static_cast<std::size_t>(later_ref); }

    /// Seconds by which the clause is missed; <= 0 when satisfied.
    Seconds shortfall(std::span<const Seconds> times) const {
        Seconds gap = times[later_slot()] - times[earlier_slot()];
        if (symmetric && gap < 0) gap = -gap;
        return separation - gap;
    }
    bool satisfied(std::span<const Seconds> times) const { return shortfall(times) <= 0; }
};

/// Per-flight bounds and linkage used by the per-flight clauses.
struct FlightLimits {
    FlightKind kind = FlightKind::Arrival;
    Seconds planned_fix = 0;
    Seconds planned_runway = 0;
    Seconds segment = 0;
    /// mps * position-shift offset.
    Seconds shift_window = 0;
};

FlightLimits flight_limits(const Instance& instance, int flight);

/// Deficit of a per-flight clause (CPS or time linkage); <= 0 when satisfied.
Seconds flight_shortfall(ConstraintKind kind, const FlightLimits& limits, Seconds fix_time,
                         Seconds runway_time);

/// Builds the clause for one kind and one unordered flight pair, deciding
/// orientation and applicability from planned times. Empty when not applicable.
std::optional<PairConstraint> compile_pair(ConstraintKind kind, const Instance& instance, int a,
                                           int b, const CheckOptions& options = {});

class ConstraintSet {
public:
    explicit ConstraintSet(const Instance& instance, const CheckOptions& options = {});

    std::size_t flight_count() const { return limits_.size(); }
    const std::vector<PairConstraint>& pairs() const { return pairs_; }
    /// Indices into pairs() of every clause touching the flight.
    const std::vector<int>& pairs_of(int flight) const { return by_flight_[flight]; }
    const FlightLimits& limits(int flight) const { return limits_[flight]; }

    /// Deficit of a per-flight clause (CPS or time linkage); <= 0 when satisfied.
    Seconds flight_shortfall(ConstraintKind kind, int flight, std::span<const Seconds> times) const;

    /// All violations, sorted canonically (kind, then flight ids).
    std::vector<Violation> check(std::span<const Seconds> times) const;
    bool feasible(std::span<const Seconds> times) const;

private:
    std::vector<std::string> ids_;
    std::vector<FlightLimits> limits_;
    std::vector<PairConstraint> pairs_;
    std::vector<std::vector<int>> by_flight_;
};

/// Lays a schedule out as a times vector in instance order. Throws InputError
/// if a flight is missing, duplicated, or unknown.
std::vector<Seconds> schedule_times(const Instance& instance, const Schedule& schedule);

/// Builds a schedule from a times vector in instance order.
Schedule schedule_from_times(const Instance& instance, std::span<const Seconds> times);

/// Every violated clause of the schedule; empty iff feasible.
std::vector<Violation> check_schedule(const Instance& instance, const Schedule& schedule,
                                      const CheckOptions& options = {});

enum class PairVerdict { NotApplicable, Satisfied, Violated };

struct PairCheck {
    PairVerdict verdict = PairVerdict::NotApplicable;
    std::optional<Violation> violation;
};

/// Single-clause verdict for a flight pair (pair kinds) or a single flight
/// (per-flight kinds, pass the same id twice).
PairCheck check_pair(ConstraintKind kind, const Instance& instance, const Schedule& schedule,
                     const std::string& flight_a, const std::string& flight_b,
                     const CheckOptions& options = {});

}  // namespace tma
