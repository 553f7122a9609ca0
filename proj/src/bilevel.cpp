// Co-evolutionary bi-level GA.
//
// The upper level evolves arrival-fix times, the lower level take-off times.
// Each level is evaluated against the other level's current elite: an
// individual's genes are merged with that elite into a complete schedule and
// checked against every clause touching the level's flights. Infeasible
// individuals are eliminated and replaced by feasible samples drawn around the
// level's current best, falling back to the FCFS genes (or the best itself)
// when the retry cap is exhausted.
//
// Variants differ only in survival and parenting:
//   bi-GA    generational replacement, no elite survival
//   bi-EGA   the single best individual survives unmodified
//   bi-SEGA  ceil(elite_fraction * N) best survive, and one parent of every
//            crossover is drawn from that elite pool
// Parents are chosen by roulette over linear rank weights (N for the best,
// 1 for the worst), so selection pressure does not depend on objective scale.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "rng.hpp"
#include "search_space.hpp"
#include "tma/errors.hpp"
#include "tma/solver.hpp"

namespace tma {

namespace {

using detail::Rng;

using Genes = std::vector<Seconds>;

struct Level {
    bool upper = true;
    std::vector<int> flights;
    std::vector<int> clauses;
    std::vector<Genes> population;
    std::vector<double> fitness;
    Genes fallback;
    Genes best;
    double best_fitness = 0.0;
};

class BilevelGa {
public:
    BilevelGa(const Instance& instance, const ScenarioState& scenario, const SolverConfig& config)
        : instance_(instance),
          config_(config),
          peak_(scenario.mas_peak),
          space_(instance, config.check_options(), config.time_step),
          objective_(instance, config.objective_options()),
          rng_(config.rng_seed) {
        upper_.upper = true;
        upper_.flights = space_.arrivals();
        lower_.upper = false;
        lower_.flights = space_.departures();
        for (Level* level : {&upper_, &lower_}) {
            std::vector<char> member(space_.flight_count(), 0);
            for (int f : level->flights) member[f] = 1;
            const auto& pairs = space_.constraints().pairs();
            for (int i = 0; i < static_cast<int>(pairs.size()); ++i)
                if (member[pairs[i].earlier] || member[pairs[i].later]) level->clauses.push_back(i);
        }
        const int n = config_.population_size;
        switch (config_.algorithm) {
            case Algorithm::BiGa: elite_count_ = 0; break;
            case Algorithm::BiEga: elite_count_ = 1; break;
            case Algorithm::BiSega:
                elite_count_ = std::clamp(
                    static_cast<int>(std::ceil(config_.elite_fraction * n - 1e-9)), 1, n);
                break;
            default: throw ConfigError("bilevel_solve: algorithm must be bi-ga, bi-ega or bi-sega");
        }
    }

    SolveResult run() {
        const auto start = std::chrono::steady_clock::now();
        initialize();

        SolveResult result;
        double best_upper_seen = upper_.best_fitness;
        double best_lower_seen = lower_.best_fitness;
        int stalled = 0;
        for (int it = 1; it <= config_.co_iterations; ++it) {
            run_phase(upper_);
            run_phase(lower_);
            result.convergence.push_back({it, upper_.best_fitness, lower_.best_fitness});

            const bool improved =
                upper_.best_fitness < best_upper_seen || lower_.best_fitness < best_lower_seen;
            best_upper_seen = std::min(best_upper_seen, upper_.best_fitness);
            best_lower_seen = std::min(best_lower_seen, lower_.best_fitness);
            stalled = improved ? 0 : stalled + 1;
            if (stalled >= config_.stall_co_iterations) break;
        }

        if (!space_.constraints().feasible(context_))
            throw std::logic_error("bilevel_solve: merged elites violate a constraint");
        result.schedule = schedule_from_times(instance_, context_);
        result.objective = objective_.evaluate(context_, peak_);
        result.evaluations = evaluations_;
        result.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }

private:
    // Step 4: FCFS-seeded populations, each member feasible against the
    // opposite level's seed.
    void initialize() {
        SolverConfig fcfs_config = config_;
        fcfs_config.algorithm = Algorithm::Fcfs;
        const ScenarioState scenario{peak_, {}, std::nullopt};
        const auto fcfs = fcfs_schedule(instance_, scenario, fcfs_config);
        context_ = schedule_times(instance_, fcfs.schedule);

        for (Level* level : {&upper_, &lower_}) {
            level->fallback = extract(*level, context_);
            level->best = level->fallback;
            level->best_fitness = fitness_of(*level, level->best);
        }
        for (Level* level : {&upper_, &lower_}) {
            level->population.assign(1, level->fallback);
            while (static_cast<int>(level->population.size()) < config_.population_size)
                level->population.push_back(sample_feasible(*level, level->fallback));
            level->fitness.clear();
            for (const auto& g : level->population) level->fitness.push_back(fitness_of(*level, g));
        }
    }

    Genes extract(const Level& level, const std::vector<Seconds>& times) const {
        Genes g;
        g.reserve(level.flights.size());
        for (int f : level.flights) g.push_back(space_.gene_of(times, f));
        return g;
    }

    double fitness_of(const Level& level, const Genes& genes) const {
        std::vector<Seconds> scratch = context_;
        write(level, genes, scratch);
        return level.upper ? objective_.upper(scratch, peak_) : objective_.lower(scratch, peak_);
    }

    void write(const Level& level, const Genes& genes, std::vector<Seconds>& times) const {
        for (std::size_t i = 0; i < genes.size(); ++i) space_.set_gene(times, level.flights[i], genes[i]);
    }

    // Feasibility of the merged schedule (genes + opposite elite) and the
    // level objective. `scratch` must hold the current context.
    bool evaluate(const Level& level, const Genes& genes, std::vector<Seconds>& scratch,
                  double& fitness) const {
        write(level, genes, scratch);
        const auto& pairs = space_.constraints().pairs();
        for (int idx : level.clauses)
            if (!pairs[idx].satisfied(scratch)) return false;
        fitness = level.upper ? objective_.upper(scratch, peak_) : objective_.lower(scratch, peak_);
        return true;
    }

    Seconds random_gene(int flight) {
        const auto& d = space_.domain(flight);
        return d.value(d.k_min + static_cast<Seconds>(rng_.below(static_cast<std::uint64_t>(d.size()))));
    }

    Genes perturb(const Level& level, const Genes& base) {
        Genes g = base;
        if (g.empty()) return g;
        const std::uint64_t n = g.size();
        const std::uint64_t changes = 1 + rng_.below(std::max<std::uint64_t>(1, (n + 2) / 3));
        for (std::uint64_t c = 0; c < changes; ++c) {
            const std::size_t pos = rng_.below(n);
            g[pos] = random_gene(level.flights[pos]);
        }
        return g;
    }

    Genes sample_feasible(const Level& level, const Genes& base) {
        std::vector<Seconds> scratch = context_;
        double fit = 0.0;
        for (int attempt = 0; attempt < config_.repair_retry_cap; ++attempt) {
            Genes g = perturb(level, base);
            ++evaluations_;
            if (evaluate(level, g, scratch, fit)) return g;
        }
        ++evaluations_;
        if (evaluate(level, level.fallback, scratch, fit)) return level.fallback;
        return level.best;
    }

    void mutate(const Level& level, Genes& g) {
        for (std::size_t i = 0; i < g.size(); ++i)
            if (rng_.unit() < config_.mutation_prob) g[i] = random_gene(level.flights[i]);
    }

    // Evaluates a batch of candidates; pure, so it may be split across threads.
    void evaluate_batch(const Level& level, const std::vector<Genes>& batch,
                        std::vector<char>& ok, std::vector<double>& fit) const {
        ok.assign(batch.size(), 0);
        fit.assign(batch.size(), 0.0);
        const auto work = [&](std::size_t from, std::size_t to) {
            std::vector<Seconds> scratch = context_;
            for (std::size_t i = from; i < to; ++i) ok[i] = evaluate(level, batch[i], scratch, fit[i]);
        };
        const std::size_t threads =
            std::min<std::size_t>(static_cast<std::size_t>(std::max(1, config_.threads)), batch.size());
        if (threads <= 1) {
            work(0, batch.size());
            return;
        }
        std::vector<std::thread> pool;
        const std::size_t chunk = (batch.size() + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t from = t * chunk;
            const std::size_t to = std::min(batch.size(), from + chunk);
            if (from < to) pool.emplace_back(work, from, to);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<int> rank_order(const Level& level) const {
        std::vector<int> order(level.population.size());
        std::iota(order.begin(), order.end(), 0);
        // Ties go to the later index (the newer individual), so an elite can
        // drift across equal-fitness plateaus instead of pinning the other level.
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (level.fitness[a] != level.fitness[b]) return level.fitness[a] < level.fitness[b];
            return a > b;
        });
        return order;
    }

    void update_best(Level& level) {
        const auto order = rank_order(level);
        level.best = level.population[order.front()];
        level.best_fitness = level.fitness[order.front()];
    }

    void next_generation(Level& level) {
        const int n = config_.population_size;
        const auto order = rank_order(level);
        const std::uint64_t total_weight = static_cast<std::uint64_t>(n) * (n + 1) / 2;
        const auto roulette = [&]() {
            std::uint64_t u = rng_.below(total_weight);
            for (int r = 0; r < n; ++r) {
                const std::uint64_t w = static_cast<std::uint64_t>(n - r);
                if (u < w) return order[r];
                u -= w;
            }
            return order.back();
        };

        std::vector<Genes> next;
        std::vector<double> next_fitness;
        for (int e = 0; e < elite_count_; ++e) {
            next.push_back(level.population[order[e]]);
            next_fitness.push_back(level.fitness[order[e]]);
        }

        std::vector<Genes> children;
        const std::size_t room = static_cast<std::size_t>(n) - next.size();
        while (children.size() < room) {
            const int p1 = config_.algorithm == Algorithm::BiSega
                               ? order[rng_.below(static_cast<std::uint64_t>(elite_count_))]
                               : roulette();
            const int p2 = roulette();
            Genes c1 = level.population[p1];
            Genes c2 = level.population[p2];
            if (rng_.unit() < config_.crossover_prob)
                for (std::size_t i = 0; i < c1.size(); ++i)
                    if (rng_.unit() < 0.5) std::swap(c1[i], c2[i]);
            mutate(level, c1);
            mutate(level, c2);
            children.push_back(std::move(c1));
            if (children.size() < room) children.push_back(std::move(c2));
        }

        std::vector<char> ok;
        std::vector<double> fit;
        evaluate_batch(level, children, ok, fit);
        evaluations_ += static_cast<std::int64_t>(children.size());

        const Genes& best_now = level.population[order.front()];
        std::vector<Seconds> scratch = context_;
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (!ok[i]) {
                children[i] = sample_feasible(level, best_now);
                evaluate(level, children[i], scratch, fit[i]);
            }
            next.push_back(std::move(children[i]));
            next_fitness.push_back(fit[i]);
        }
        level.population = std::move(next);
        level.fitness = std::move(next_fitness);
    }

    // Steps 5/6: re-validate against the incoming elite, evolve, publish the best.
    void run_phase(Level& level) {
        std::vector<char> ok;
        std::vector<double> fit;
        evaluate_batch(level, level.population, ok, fit);
        evaluations_ += static_cast<std::int64_t>(level.population.size());
        std::vector<Seconds> scratch = context_;
        for (std::size_t i = 0; i < level.population.size(); ++i) {
            if (!ok[i]) {
                level.population[i] = sample_feasible(level, level.best);
                evaluate(level, level.population[i], scratch, fit[i]);
            }
        }
        level.fitness = std::move(fit);

        for (int g = 0; g < config_.level_generations; ++g) next_generation(level);

        update_best(level);
        write(level, level.best, context_);
    }

    const Instance& instance_;
    SolverConfig config_;
    bool peak_;
    detail::SearchSpace space_;
    ObjectiveModel objective_;
    Rng rng_;
    int elite_count_ = 0;
    Level upper_;
    Level lower_;
    /// Merged elites of both levels.
    std::vector<Seconds> context_;
    std::int64_t evaluations_ = 0;
};

}  // namespace

SolveResult bilevel_solve(const Instance& instance, const ScenarioState& scenario,
                          const SolverConfig& config) {
    validate_config(config);
    return BilevelGa(instance, scenario, config).run();
}

}  // namespace tma
