// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tma/cli.hpp"
#include "tma/constraints.hpp"
#include "tma/errors.hpp"
#include "tma/generator.hpp"
#include "tma/instance_io.hpp"
#include "tma/objective.hpp"
#include "tma/scenario.hpp"
#include "tma/solver.hpp"

using namespace tma;

namespace {

// Tolerances and sweep sizes.
constexpr double kThresholdRuntimeLimitMs = 1.0;
constexpr int kSoundnessInstances = 200;
constexpr int kSoundnessSeeds = 3;
constexpr int kOracleInstances = 50;
constexpr int kOracleSeedsPerInstance = 10;
constexpr double kOracleHitRate = 0.90;
constexpr int kDominanceInstances = 30;
constexpr int kDominanceSeeds = 20;
constexpr double kStrictImprovementShare = 0.50;
constexpr int kPermutations = 1000;
constexpr int kAblationInstances = 10;
constexpr int kAblationSeeds = 20;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    if (n == 0) return 0.0;
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::string num(double v) { return format_number(v); }

// Small budget for the broad sweeps.
SolverConfig sweep_config(Algorithm a, std::uint64_t seed) {
    SolverConfig c;
    c.algorithm = a;
    c.rng_seed = seed;
    c.population_size = 20;
    c.level_generations = 8;
    c.co_iterations = 10;
    c.stall_co_iterations = 4;
    return c;
}

// Generated instances shared by criteria 3, 7 and 10: scenarios cycle 1..6.
const std::vector<Instance>& soundness_instances() {
    static const std::vector<Instance> list = [] {
        std::vector<Instance> out;
        for (int i = 0; i < kSoundnessInstances; ++i)
            out.push_back(generate_scenario_instance(1 + i % 6, 1000 + static_cast<std::uint64_t>(i)));
        return out;
    }();
    return list;
}

bool non_increasing(const std::vector<ConvergenceRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].upper_best > rows[i - 1].upper_best || rows[i].lower_best > rows[i - 1].lower_best)
            return false;
    return true;
}

Outcome criterion1() {
    const Instance inst = shanghai_template();
    const PeakThresholds t = compute_thresholds(inst);
    constexpr int reps = 1000;
    const auto start = Clock::now();
    int sink = 0;
    for (int r = 0; r < reps; ++r) sink += compute_thresholds(inst).mas;
    const double per_call_ms = seconds_since(start) * 1000.0 / reps;
    const bool exact = t.mas == 19 && t.per_airport.at("ZSSS") == 7 && t.per_airport.at("ZSPD") == 12;
    return {exact && per_call_ms < kThresholdRuntimeLimitMs && sink == 19 * reps,
            "MAS " + std::to_string(t.mas) + ", ZSSS " + std::to_string(t.per_airport.at("ZSSS")) +
                ", ZSPD " + std::to_string(t.per_airport.at("ZSPD")) + ", " + num(per_call_ms * 1000.0) +
                " us per call"};
}

Outcome criterion2() {
    // Reference tables in seconds, row = following class, column = preceding class
    // (A380, Heavy, Medium, Light).
    const int arr[4][4] = {{60, 120, 180, 240}, {60, 60, 120, 180}, {60, 60, 60, 180}, {60, 60, 60, 60}};
    const int dep[4][4] = {{60, 120, 180, 180}, {60, 60, 120, 120}, {60, 60, 60, 120}, {60, 60, 60, 60}};
    const SeparationConfig cfg;
    int matched = 0;
    for (int f = 0; f < 4; ++f)
        for (int p = 0; p < 4; ++p) {
            matched += wake_separation(kAircraftClasses[f], kAircraftClasses[p], FlightKind::Arrival, cfg) ==
                       arr[f][p];
            matched += wake_separation(kAircraftClasses[f], kAircraftClasses[p], FlightKind::Departure, cfg) ==
                       dep[f][p];
        }
    const bool scalars = cfg.handover_sep_arr == 90 && cfg.handover_sep_dep == 135 && cfg.vacate_time == 45 &&
                         cfg.cross_time == 45 && cfg.dep_clear_time == 45 &&
                         cfg.crossing_wingspan_threshold_m == 36.0 && Flight{}.max_position_shift == 2;
    return {matched == 32 && scalars, std::to_string(matched) + "/32 wake cells, scalars " +
                                          (scalars ? "match" : "differ")};
}

struct SweepStats {
    int runs = 0;
    int violating = 0;
    int failed = 0;
    int elitist_runs = 0;
    int non_monotone = 0;
};

const SweepStats& soundness_sweep() {
    static const SweepStats stats = [] {
        SweepStats s;
        const Algorithm algs[] = {Algorithm::Fcfs, Algorithm::BiGa, Algorithm::BiEga, Algorithm::BiSega};
        for (const auto& inst : soundness_instances()) {
            const auto prepared = prepare_instance(inst, SahaMode::Staggered);
            for (const auto a : algs)
                for (int seed = 1; seed <= kSoundnessSeeds; ++seed) {
                    const auto cfg = sweep_config(a, static_cast<std::uint64_t>(seed));
                    ++s.runs;
                    try {
                        const auto res = solve(prepared, cfg);
                        if (!check_schedule(prepared.instance, res.schedule, cfg.check_options()).empty())
                            ++s.violating;
                        if (a == Algorithm::BiEga || a == Algorithm::BiSega) {
                            ++s.elitist_runs;
                            if (!non_increasing(res.convergence)) ++s.non_monotone;
                        }
                    } catch (const std::exception&) {
                        ++s.failed;
                    }
                }
        }
        return s;
    }();
    return stats;
}

Outcome criterion3() {
    const auto& s = soundness_sweep();
    return {s.violating == 0 && s.failed == 0,
            std::to_string(s.runs) + " runs over " + std::to_string(kSoundnessInstances) + " instances, " +
                std::to_string(s.violating) + " with violations, " + std::to_string(s.failed) + " failed"};
}

// Lexicographic (upper, lower) comparison with a small float tolerance.
int lex_compare(const ObjectiveValue& a, const ObjectiveValue& b) {
    constexpr double eps = 1e-9;
    if (a.upper < b.upper - eps) return -1;
    if (a.upper > b.upper + eps) return 1;
    if (a.lower < b.lower - eps) return -1;
    if (a.lower > b.lower + eps) return 1;
    return 0;
}

Outcome criterion4() {
    int runs = 0, hits = 0, beaten = 0, oracle_below_fcfs = 0;
    for (int i = 0; i < kOracleInstances; ++i) {
        const int flights = 4 + i % 3;
        const auto inst = generate_micro_instance(flights, 500 + static_cast<std::uint64_t>(i), 30);
        const auto prepared = prepare_instance(inst, SahaMode::Staggered);
        SolverConfig cfg;
        cfg.algorithm = Algorithm::Oracle;
        cfg.oracle_grid = 30;
        const auto oracle = solve(prepared, cfg);
        cfg.algorithm = Algorithm::Fcfs;
        cfg.time_step = 30;
        oracle_below_fcfs += lex_compare(oracle.objective, solve(prepared, cfg).objective) < 0;
        for (int seed = 1; seed <= kOracleSeedsPerInstance; ++seed) {
            SolverConfig ga;
            ga.algorithm = Algorithm::BiEga;
            ga.population_size = 50;
            ga.co_iterations = 30;
            ga.time_step = 30;
            ga.rng_seed = static_cast<std::uint64_t>(seed);
            const auto res = solve(prepared, ga);
            const int c = lex_compare(res.objective, oracle.objective);
            ++runs;
            hits += c == 0;
            beaten += c < 0;
        }
    }
    const double rate = static_cast<double>(hits) / runs;
    return {rate >= kOracleHitRate && beaten == 0,
            std::to_string(hits) + "/" + std::to_string(runs) + " runs at the oracle optimum (" +
                num(rate * 100.0) + "%), " + std::to_string(beaten) + " below it; oracle beats grid FCFS on " +
                std::to_string(oracle_below_fcfs) + "/" + std::to_string(kOracleInstances) + " instances"};
}

Outcome criterion5() {
    int nonpeak_ok = 0, nonpeak_strict = 0, peak_ok = 0;
    std::vector<std::string> notes;
    for (int i = 0; i < kDominanceInstances; ++i) {
        for (const bool peak : {false, true}) {
            const int scenario = peak ? 1 + i % 3 : 4 + i % 3;
            const auto inst = generate_scenario_instance(scenario, 7000 + static_cast<std::uint64_t>(i));
            const auto prepared = prepare_instance(inst, SahaMode::Staggered);
            const auto fcfs = solve(prepared, sweep_config(Algorithm::Fcfs, 1));
            const auto metric = [&](const ObjectiveValue& v) {
                return peak ? static_cast<double>(v.components.dep_rot_span_s)
                            : static_cast<double>(v.components.arr_delay_total_s + v.components.dep_delay_total_s);
            };
            bool all_ok = true, all_strict = true;
            for (const auto a : {Algorithm::BiEga, Algorithm::BiSega}) {
                std::vector<double> values;
                for (int seed = 1; seed <= kDominanceSeeds; ++seed)
                    values.push_back(metric(solve(prepared, sweep_config(a, static_cast<std::uint64_t>(seed))).objective));
                const double m = median(values);
                all_ok = all_ok && m <= metric(fcfs.objective);
                all_strict = all_strict && m < metric(fcfs.objective);
            }
            if (peak) peak_ok += all_ok;
            else {
                nonpeak_ok += all_ok;
                nonpeak_strict += all_strict;
            }
        }
    }
    const bool pass = nonpeak_ok == kDominanceInstances && peak_ok == kDominanceInstances &&
                      nonpeak_strict >= kStrictImprovementShare * kDominanceInstances;
    return {pass, "non-peak delay <= FCFS on " + std::to_string(nonpeak_ok) + "/" +
                      std::to_string(kDominanceInstances) + " (strict " + std::to_string(nonpeak_strict) +
                      "), peak ROT span <= FCFS on " + std::to_string(peak_ok) + "/" +
                      std::to_string(kDominanceInstances)};
}

Outcome criterion6() {
    std::mt19937_64 rng(6);
    int odd = 0, zero_mismatch = 0;
    for (int p = 0; p < kPermutations; ++p) {
        const int n = 1 + static_cast<int>(rng() % 8);
        Instance inst = shanghai_template();
        for (int j = 0; j < n; ++j) {
            Flight f;
            f.id = "A" + std::to_string(j);
            f.airport_id = "ZSPD";
            f.runway_id = "16L/34R";
            f.fix_id = "AF1";
            f.planned_fix_time = 1000 * j;
            f.planned_runway_time = f.planned_fix_time + approach_time(f, inst.segment_times);
            inst.flights.push_back(f);
        }
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Seconds> times(2 * n);
        for (int j = 0; j < n; ++j) {
            // Flight j lands in slot perm[j].
            times[2 * j] = 1000 * perm[j];
            times[2 * j + 1] = 1000 * perm[j] + 100;
        }
        const ObjectiveModel model(inst);
        const Seconds shift = model.order_shift_total(times);
        const bool identity = std::is_sorted(perm.begin(), perm.end());
        odd += shift % 2 != 0;
        zero_mismatch += (shift == 0) != identity;
    }
    return {odd == 0 && zero_mismatch == 0, std::to_string(kPermutations) + " permutations, " +
                                                std::to_string(odd) + " odd totals, " +
                                                std::to_string(zero_mismatch) + " zero/identity mismatches"};
}

Outcome criterion7() {
    int checked = 0, clashes = 0;
    for (const auto& inst : soundness_instances()) {
        const Instance staggered = assign_handover_altitudes(inst, SahaMode::Staggered);
        for (const auto& fix : staggered.fixes) {
            if (fix.altitude_slots != 2) continue;
            std::vector<const Flight*> through;
            for (const auto& f : staggered.flights)
                if (f.fix_id == fix.id) through.push_back(&f);
            std::sort(through.begin(), through.end(), [](const Flight* a, const Flight* b) {
                if (a->planned_fix_time != b->planned_fix_time) return a->planned_fix_time < b->planned_fix_time;
                return a->id < b->id;
            });
            for (std::size_t k = 1; k < through.size(); ++k) {
                ++checked;
                clashes += through[k]->altitude_slot == through[k - 1]->altitude_slot;
            }
        }
    }
    return {clashes == 0, std::to_string(checked) + " consecutive same-fix pairs on 2-slot fixes, " +
                              std::to_string(clashes) + " sharing a slot"};
}

Outcome criterion8() {
    struct Variant {
        const char* label;
        bool crsspf;
        SahaMode saha;
    };
    const Variant variants[] = {{"full", true, SahaMode::Staggered},
                                {"no-crsspf", false, SahaMode::Staggered},
                                {"no-saha", true, SahaMode::FixedByAirport},
                                {"neither", false, SahaMode::FixedByAirport}};
    std::vector<double> totals(4, 0.0);
    std::vector<int> per_instance_wins(4, 0);
    int instances = 0;
    for (const bool peak : {true, false}) {
        for (int i = 0; i < kAblationInstances; ++i) {
            const int scenario = peak ? 1 + i % 3 : 4 + i % 3;
            const auto inst = generate_scenario_instance(scenario, 9000 + static_cast<std::uint64_t>(i));
            std::vector<double> med(4);
            for (int v = 0; v < 4; ++v) {
                const auto prepared = prepare_instance(inst, variants[v].saha);
                std::vector<double> values;
                for (int seed = 1; seed <= kAblationSeeds; ++seed) {
                    // The proposed configuration: bi-SEGA at its default budget.
                    SolverConfig cfg;
                    cfg.algorithm = Algorithm::BiSega;
                    cfg.rng_seed = static_cast<std::uint64_t>(seed);
                    cfg.enable_crsspf = variants[v].crsspf;
                    cfg.saha_mode = variants[v].saha;
                    const auto r = solve(prepared, cfg).objective;
                    values.push_back(peak ? r.lower : r.upper + r.lower);
                }
                med[v] = median(values);
                totals[v] += med[v];
            }
            for (int v = 1; v < 4; ++v) per_instance_wins[v] += med[0] <= med[v];
            ++instances;
        }
    }
    bool pass = true;
    std::string detail = "sum of per-instance medians: full " + num(totals[0]);
    for (int v = 1; v < 4; ++v) {
        pass = pass && totals[0] <= totals[v];
        detail += std::string(", ") + variants[v].label + " " + num(totals[v]) + " (full <= on " +
                  std::to_string(per_instance_wins[v]) + "/" + std::to_string(instances) + ")";
    }
    return {pass, detail};
}

Outcome criterion9() {
    int compared = 0, differing = 0;
    for (int i = 0; i < 6; ++i) {
        const auto inst = generate_scenario_instance(1 + i, 300 + static_cast<std::uint64_t>(i));
        for (const auto a : {Algorithm::BiGa, Algorithm::BiEga, Algorithm::BiSega}) {
            std::vector<std::string> outputs;
            for (const int threads : {1, 1, 4}) {
                auto cfg = sweep_config(a, 42);
                cfg.threads = threads;
                const auto prepared = prepare_instance(inst, cfg.saha_mode);
                const auto res = solve(prepared, cfg);
                outputs.push_back(result_to_text(make_result_document(prepared, cfg, res)) +
                                  trace_to_text(res.convergence));
            }
            compared += 2;
            differing += (outputs[1] != outputs[0]) + (outputs[2] != outputs[0]);
        }
    }

    // The same through the command line, comparing written files.
    const auto dir = std::filesystem::temp_directory_path() / "tma-acceptance-determinism";
    std::filesystem::create_directories(dir);
    const auto inst_path = (dir / "instance.json").string();
    write_file(inst_path, instance_to_text(generate_scenario_instance(3, 77)));
    std::vector<std::string> files;
    for (const char* threads : {"1", "1", "4"}) {
        const auto tag = std::to_string(files.size());
        const auto res = (dir / ("result" + tag + ".json")).string();
        const auto trace = (dir / ("trace" + tag + ".csv")).string();
        std::ostringstream out, err;
        const int code = run_cli({"tma-sched", "solve", inst_path, "--algorithm", "bi-sega", "--seed", "9",
                                  "--population", "20", "--co-iterations", "8", "--threads", threads, "-o",
                                  res, "--trace", trace},
                                 out, err);
        files.push_back(code == 0 ? read_file(res) + read_file(trace) : "exit " + std::to_string(code));
    }
    compared += 2;
    differing += (files[1] != files[0]) + (files[2] != files[0]);
    std::filesystem::remove_all(dir);
    return {differing == 0, std::to_string(compared) + " repeat/thread-count comparisons, " +
                                std::to_string(differing) + " differing"};
}

Outcome criterion10() {
    const auto& s = soundness_sweep();
    return {s.non_monotone == 0 && s.elitist_runs > 0,
            std::to_string(s.elitist_runs) + " bi-EGA/bi-SEGA traces, " + std::to_string(s.non_monotone) +
                " non-monotone"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"threshold reproduction", criterion1},
        {"separation tables", criterion2},
        {"feasibility soundness", criterion3},
        {"oracle equivalence", criterion4},
        {"FCFS dominance", criterion5},
        {"objective semantics", criterion6},
        {"SAHA invariant", criterion7},
        {"ablation direction", criterion8},
        {"determinism", criterion9},
        {"monotone elitism", criterion10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("[%s] criterion %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), seconds_since(start));
        std::fflush(stdout);
    }
    return failures;
}
