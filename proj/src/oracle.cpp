#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "search_space.hpp"
#include "tma/errors.hpp"
#include "tma/solver.hpp"

namespace tma {

namespace {

// Depth-first enumeration: arrivals first, then departures. Once every
// arrival is placed the upper objective is fixed, so whole departure subtrees
// are skipped when the upper value cannot tie or beat the incumbent. Partial
// delay sums and partial take-off spans are valid lower bounds and prune too.
class OracleSearch {
public:
    OracleSearch(const Instance& instance, const detail::SearchSpace& space,
                 const ObjectiveModel& objective, bool peak, bool clamp)
        : space_(space), objective_(objective), peak_(peak), clamp_(clamp),
          times_(space.planned_times()), placed_(space.flight_count(), 0) {
        order_ = space.arrivals();
        const auto by_gene = [&](int a, int b) {
            const Seconds ga = space.domain(a).planned;
            const Seconds gb = space.domain(b).planned;
            if (ga != gb) return ga < gb;
            return instance.flights[a].id < instance.flights[b].id;
        };
        std::sort(order_.begin(), order_.end(), by_gene);
        auto deps = space.departures();
        std::sort(deps.begin(), deps.end(), by_gene);
        arrival_count_ = order_.size();
        order_.insert(order_.end(), deps.begin(), deps.end());

        // Smallest possible delay contribution of each not-yet-placed arrival suffix.
        min_arrival_suffix_.assign(arrival_count_ + 1, 0);
        for (std::size_t p = arrival_count_; p-- > 0;) {
            const auto& d = space.domain(order_[p]);
            min_arrival_suffix_[p] = min_arrival_suffix_[p + 1] + clamped_delay(d.k_min * d.step);
        }
    }

    bool run() {
        descend(0, 0);
        return found_;
    }

    const std::vector<Seconds>& best_times() const { return best_times_; }
    std::int64_t evaluations() const { return evaluations_; }

private:
    void descend(std::size_t pos, Seconds partial) {
        if (pos == arrival_count_) {
            upper_here_ = objective_.upper(times_, peak_);
            if (found_ && upper_here_ > best_upper_) return;
        }
        if (pos == order_.size()) {
            const double lower = objective_.lower(times_, peak_);
            if (!found_ || upper_here_ < best_upper_ ||
                (upper_here_ == best_upper_ && lower < best_lower_)) {
                found_ = true;
                best_upper_ = upper_here_;
                best_lower_ = lower;
                best_times_ = times_;
            }
            return;
        }
        const int flight = order_[pos];
        const bool arrival = pos < arrival_count_;
        const auto& d = space_.domain(flight);
        for (Seconds k = d.k_min; k <= d.k_max; ++k) {
            const Seconds gene = d.value(k);
            Seconds next_partial = partial;
            if (arrival) {
                if (!peak_) {
                    next_partial = partial + clamped_delay(gene - d.planned);
                    if (found_ && static_cast<double>(next_partial + min_arrival_suffix_[pos + 1]) >
                                      best_upper_)
                        break;
                }
            } else if (found_ && upper_here_ == best_upper_) {
                if (!bound_departure(pos, flight, gene)) {
                    if (!peak_) break;  // delay grows with k
                    continue;
                }
            }
            space_.set_gene(times_, flight, gene);
            ++evaluations_;
            if (!space_.consistent_with(times_, flight, placed_)) continue;
            placed_[flight] = 1;
            descend(pos + 1, arrival ? next_partial : partial);
            placed_[flight] = 0;
        }
    }

    Seconds clamped_delay(Seconds d) const {
        return clamp_ && d < 0 ? 0 : d;
    }

    // False when placing `gene` cannot lead to a strictly better lower value.
    bool bound_departure(std::size_t pos, int flight, Seconds gene) const {
        if (peak_) {
            Seconds lo = gene, hi = gene;
            for (std::size_t p = arrival_count_; p < pos; ++p) {
                const Seconds t = times_[2 * order_[p] + 1];
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
            return static_cast<double>(hi - lo) < best_lower_;
        }
        Seconds delay = gene - space_.domain(flight).planned;
        for (std::size_t p = arrival_count_; p < pos; ++p)
            delay += times_[2 * order_[p] + 1] - space_.domain(order_[p]).planned;
        return static_cast<double>(delay) < best_lower_;
    }

    const detail::SearchSpace& space_;
    const ObjectiveModel& objective_;
    bool peak_;
    bool clamp_;
    std::vector<Seconds> times_;
    std::vector<char> placed_;
    std::vector<int> order_;
    std::size_t arrival_count_ = 0;
    std::vector<Seconds> min_arrival_suffix_;
    double upper_here_ = 0.0;
    bool found_ = false;
    double best_upper_ = 0.0;
    double best_lower_ = 0.0;
    std::vector<Seconds> best_times_;
    std::int64_t evaluations_ = 0;
};

}  // namespace

SolveResult brute_force_oracle(const Instance& instance, const ScenarioState& scenario,
                               Seconds grid_seconds, const SolverConfig& config) {
    if (instance.flights.size() > kOracleMaxFlights)
        throw ConfigError("oracle: instance has " + std::to_string(instance.flights.size()) +
                          " flights; the exhaustive search is limited to " +
                          std::to_string(kOracleMaxFlights));
    if (grid_seconds <= 0) throw ConfigError("oracle: grid must be > 0 s");

    const auto start = std::chrono::steady_clock::now();
    const detail::SearchSpace space(instance, config.check_options(), grid_seconds);
    const ObjectiveModel objective(instance, config.objective_options());
    OracleSearch search(instance, space, objective, scenario.mas_peak, config.clamp_arrival_advance);
    if (!search.run()) throw InfeasibleError("oracle: no feasible grid-aligned schedule");

    SolveResult result;
    result.schedule = schedule_from_times(instance, search.best_times());
    result.objective = objective.evaluate(search.best_times(), scenario.mas_peak);
    result.convergence.push_back({0, result.objective.upper, result.objective.lower});
    result.evaluations = search.evaluations();
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace tma
