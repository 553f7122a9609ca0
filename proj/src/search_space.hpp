#pragma once

// Decision-variable layout shared by the schedulers. Each flight has one gene:
// the arrival-fix time for arrivals and the take-off time for departures.
// Gene values are planned + k * step with k in [k_min, k_max], which keeps
// every candidate inside the flight's CPS window (arrivals also stay >= 0).
// The other time of the flight follows from the segment-time linkage.

#include <algorithm>
#include <span>
#include <vector>

#include "tma/constraints.hpp"
#include "tma/instance.hpp"

namespace tma::detail {

struct GeneDomain {
    Seconds planned = 0;
    Seconds step = 1;
    Seconds k_min = 0;
    Seconds k_max = 0;

    Seconds value(Seconds k) const { return planned + k * step; }
    Seconds size() const { return k_max - k_min + 1; }
};

class SearchSpace {
public:
    SearchSpace(const Instance& instance, const CheckOptions& options, Seconds step)
        : constraints_(instance, options) {
        const int n = static_cast<int>(instance.flights.size());
        domains_.reserve(n);
        for (int i = 0; i < n; ++i) {
            const FlightLimits& L = constraints_.limits(i);
            GeneDomain d;
            d.step = step;
            if (L.kind == FlightKind::Arrival) {
                d.planned = L.planned_fix;
                d.k_min = -(std::min(L.shift_window, L.planned_fix) / step);
                d.k_max = L.shift_window / step;
                arrivals_.push_back(i);
            } else {
                d.planned = L.planned_runway;
                d.k_min = 0;
                d.k_max = L.shift_window / step;
                departures_.push_back(i);
            }
            domains_.push_back(d);
        }
    }

    const ConstraintSet& constraints() const { return constraints_; }
    const GeneDomain& domain(int flight) const { return domains_[flight]; }
    const std::vector<int>& arrivals() const { return arrivals_; }
    const std::vector<int>& departures() const { return departures_; }
    int flight_count() const { return static_cast<int>(domains_.size()); }

    void set_gene(std::span<Seconds> times, int flight, Seconds gene) const {
        const FlightLimits& L = constraints_.limits(flight);
        if (L.kind == FlightKind::Arrival) {
            times[2 * flight] = gene;
            times[2 * flight + 1] = gene + L.segment;
        } else {
            times[2 * flight + 1] = gene;
            times[2 * flight] = gene + L.segment;
        }
    }

    Seconds gene_of(std::span<const Seconds> times, int flight) const {
        return constraints_.limits(flight).kind == FlightKind::Arrival ? times[2 * flight]
                                                                       : times[2 * flight + 1];
    }

    /// Planned times of every flight.
    std::vector<Seconds> planned_times() const {
        std::vector<Seconds> t(2 * domains_.size(), 0);
        for (int i = 0; i < flight_count(); ++i) {
            t[2 * i] = constraints_.limits(i).planned_fix;
            t[2 * i + 1] = constraints_.limits(i).planned_runway;
        }
        return t;
    }

    /// Pair clauses between `flight` and flights flagged in `placed`.
    bool consistent_with(std::span<const Seconds> times, int flight,
                         const std::vector<char>& placed) const {
        for (int idx : constraints_.pairs_of(flight)) {
            const PairConstraint& pc = constraints_.pairs()[idx];
            const int other = pc.earlier == flight ? pc.later : pc.earlier;
            if (placed[other] && !pc.satisfied(times)) return false;
        }
        return true;
    }

private:
    ConstraintSet constraints_;
    std::vector<GeneDomain> domains_;
    std::vector<int> arrivals_;
    std::vector<int> departures_;
};

}  // namespace tma::detail
