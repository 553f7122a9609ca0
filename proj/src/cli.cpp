#include "tma/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tma/errors.hpp"
#include "tma/generator.hpp"
#include "tma/instance_io.hpp"
#include "tma/solver.hpp"

namespace tma {

namespace {

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty())
        throw std::invalid_argument("bad seed '" + std::string(s) + "'");
    return v;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

using Table = std::vector<std::vector<std::string>>;

void print_table(std::ostream& out, const Table& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        width.resize(std::max(width.size(), r.size()), 0);
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) line += "  ";
            if (c == 0) line += r[c] + std::string(width[c] - r[c].size(), ' ');
            else line += std::string(width[c] - r[c].size(), ' ') + r[c];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
}

std::string table_csv(const Table& rows) {
    std::string s;
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) s += (c ? "," : "") + r[c];
        s += '\n';
    }
    return s;
}

struct SolverFlags {
    SolverConfig config;
    bool no_crsspf = false;
    bool no_saha = false;

    void attach(CLI::App& app) {
        app.add_option("--population", config.population_size, "population size per level");
        app.add_option("--generations", config.level_generations, "generations per level per co-iteration");
        app.add_option("--co-iterations", config.co_iterations, "co-evolution iterations");
        app.add_option("--crossover", config.crossover_prob, "crossover probability");
        app.add_option("--mutation", config.mutation_prob, "per-gene mutation probability");
        app.add_option("--elite-fraction", config.elite_fraction, "bi-SEGA elite pool fraction");
        app.add_option("--retry-cap", config.repair_retry_cap, "replacement sampling attempts");
        app.add_option("--stall", config.stall_co_iterations, "stop after this many idle co-iterations");
        app.add_option("--time-step", config.time_step, "GA gene resolution in seconds");
        app.add_option("--oracle-grid", config.oracle_grid, "oracle grid spacing in seconds");
        app.add_option("--threads", config.threads, "evaluation threads");
        app.add_flag("--clamp-arrival-advance", config.clamp_arrival_advance,
                     "count advanced arrivals as zero delay");
    }

    void attach_model(CLI::App& app) {
        app.add_flag("--no-crsspf", no_crsspf, "drop the same-path order constraints");
        app.add_flag("--no-saha", no_saha, "fixed-by-airport altitude assignment");
    }

    SolverConfig resolved() const {
        SolverConfig c = config;
        c.enable_crsspf = !no_crsspf;
        c.saha_mode = no_saha ? SahaMode::FixedByAirport : SahaMode::Staggered;
        return c;
    }
};

struct RunRecord {
    std::string label;
    std::uint64_t seed = 0;
    bool feasible = false;
    ObjectiveValue objective;
};

std::string fmt(double v) { return format_number(v); }

void print_violations(std::ostream& out, const std::vector<Violation>& vs) {
    for (const auto& v : vs) {
        out << "  " << to_string(v.kind);
        for (const auto& f : v.flights) out << ' ' << f;
        out << "  deficit " << v.deficit_seconds << " s\n";
    }
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") out << text;
    else write_file(path, text);
}

// Runs one configuration over all seeds, sorted by seed.
std::vector<RunRecord> run_seeds(const std::string& label, const Instance& instance, SolverConfig cfg,
                                 const std::vector<std::uint64_t>& seeds, const std::string& trace_dir,
                                 std::ostream& err) {
    std::vector<std::uint64_t> sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    const PreparedInstance prepared = prepare_instance(instance, cfg.saha_mode);
    std::vector<RunRecord> out;
    for (const auto seed : sorted) {
        cfg.rng_seed = seed;
        RunRecord r{label, seed, false, {}};
        try {
            const auto res = solve(prepared, cfg);
            r.feasible = true;
            r.objective = res.objective;
            if (!trace_dir.empty()) {
                const auto path = std::filesystem::path(trace_dir) /
                                  (label + "-seed" + std::to_string(seed) + ".csv");
                write_file(path.string(), trace_to_text(res.convergence));
            }
        } catch (const InfeasibleError& e) {
            err << label << " seed " << seed << ": " << e.what() << '\n';
        }
        out.push_back(r);
    }
    return out;
}

struct Summary {
    std::vector<std::string> cells;
    double median_upper = 0.0;
    double median_lower = 0.0;
    int failures = 0;
};

const std::vector<std::string> kSummaryHeader = {
    "config", "runs", "feasible", "best_upper", "median_upper", "best_lower", "median_lower",
    "median_arr_delay_s", "median_dep_delay_s", "median_rot_span_s"};

Summary summarize(const std::string& label, const std::vector<RunRecord>& runs) {
    std::vector<double> up, lo, arr, dep, span;
    for (const auto& r : runs) {
        if (!r.feasible) continue;
        up.push_back(r.objective.upper);
        lo.push_back(r.objective.lower);
        arr.push_back(static_cast<double>(r.objective.components.arr_delay_total_s));
        dep.push_back(static_cast<double>(r.objective.components.dep_delay_total_s));
        span.push_back(static_cast<double>(r.objective.components.dep_rot_span_s));
    }
    Summary s;
    s.failures = static_cast<int>(runs.size() - up.size());
    s.median_upper = median(up);
    s.median_lower = median(lo);
    const auto best = [](const std::vector<double>& v) {
        return v.empty() ? std::string("-") : fmt(*std::min_element(v.begin(), v.end()));
    };
    s.cells = {label,
               std::to_string(runs.size()),
               std::to_string(up.size()),
               best(up),
               up.empty() ? "-" : fmt(s.median_upper),
               best(lo),
               lo.empty() ? "-" : fmt(s.median_lower),
               arr.empty() ? "-" : fmt(median(arr)),
               dep.empty() ? "-" : fmt(median(dep)),
               span.empty() ? "-" : fmt(median(span))};
    return s;
}

int cmd_generate(int scenario, std::uint64_t seed,
                 const std::string& counts_text, const std::string& output, std::ostream& out) {
    Instance inst;
    if (!counts_text.empty()) {
        // "ZSSS=4/4,ZSPD=6/7": arrivals/departures per airport.
        GeneratorOptions opt;
        opt.seed = seed;
        std::stringstream ss(counts_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            const auto slash = item.find('/', eq);
            if (eq == std::string::npos || slash == std::string::npos)
                throw ConfigError("--counts expects AIRPORT=ARR/DEP items, got '" + item + "'");
            try {
                opt.counts[item.substr(0, eq)] = {std::stoi(item.substr(eq + 1, slash - eq - 1)),
                                                  std::stoi(item.substr(slash + 1))};
            } catch (const std::exception&) {
                throw ConfigError("--counts: bad number in '" + item + "'");
            }
        }
        inst = generate_instance(opt);
    } else {
        if (scenario < 1 || scenario > 6) throw ConfigError("--scenario must be 1..6");
        inst = generate_scenario_instance(scenario, seed);
    }
    write_or_print(output, instance_to_text(inst), out);
    return kExitOk;
}

int cmd_validate(const std::string& instance_path, const std::string& schedule_path,
                 const CLI::Option* crsspf_opt, bool crsspf, const CLI::Option* saha_opt, bool saha,
                 std::ostream& out) {
    std::vector<std::string> warnings;
    const Instance inst = load_instance(instance_path, &warnings);
    for (const auto& w : warnings) out << "warning: " << w << '\n';
    if (schedule_path.empty()) {
        const auto prepared = prepare_instance(inst, SahaMode::Staggered);
        out << "instance ok: " << inst.flights.size() << " flights, scenario "
            << (prepared.scenario.scenario_index ? std::to_string(*prepared.scenario.scenario_index)
                                                 : std::string("other"))
            << (prepared.scenario.mas_peak ? " (peak)" : " (non-peak)") << '\n';
        return kExitOk;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(schedule_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("schedule: malformed JSON: ") + e.what());
    }
    ResultMeta meta;
    if (doc.contains("model")) meta = parse_result(doc).meta;
    const Schedule schedule = parse_schedule(doc);
    if (crsspf_opt->count()) meta.enable_crsspf = crsspf;
    if (saha_opt->count()) meta.saha_mode = saha ? SahaMode::Staggered : SahaMode::FixedByAirport;
    const auto prepared = prepare_instance(inst, meta.saha_mode);
    const auto violations = check_schedule(prepared.instance, schedule, {meta.enable_crsspf});
    if (violations.empty()) {
        out << "feasible: 0 violations\n";
        return kExitOk;
    }
    out << "infeasible: " << violations.size() << " violations\n";
    print_violations(out, violations);
    return kExitInfeasible;
}

int cmd_solve(const std::string& instance_path, const std::string& algorithm, std::uint64_t seed,
              const SolverFlags& flags, const std::string& output, const std::string& trace_path,
              std::ostream& out, std::ostream& err) {
    SolverConfig cfg = flags.resolved();
    const auto alg = parse_algorithm(algorithm);
    if (!alg) throw ConfigError("unknown algorithm '" + algorithm + "'");
    cfg.algorithm = *alg;
    cfg.rng_seed = seed;
    validate_config(cfg);
    std::vector<std::string> warnings;
    const Instance inst = load_instance(instance_path, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    const auto prepared = prepare_instance(inst, cfg.saha_mode);
    const auto result = solve(prepared, cfg);
    const auto doc = make_result_document(prepared, cfg, result);
    write_or_print(output, result_to_text(doc), out);
    if (!trace_path.empty()) write_file(trace_path, trace_to_text(result.convergence));
    if (!output.empty() && output != "-")
        out << to_string(cfg.algorithm) << " seed " << seed << ": upper " << fmt(result.objective.upper)
            << ", lower " << fmt(result.objective.lower) << ", " << doc.violations.size()
            << " violations\n";
    return doc.violations.empty() ? kExitOk : kExitInfeasible;
}

int emit_table(const Table& table, const std::string& csv_path, std::ostream& out) {
    print_table(out, table);
    if (!csv_path.empty()) write_file(csv_path, table_csv(table));
    return kExitOk;
}

int cmd_compare(const std::string& instance_path, const std::string& algorithms,
                const std::string& seeds_text, const SolverFlags& flags, const std::string& csv_path,
                const std::string& trace_dir, std::ostream& out, std::ostream& err) {
    const auto seeds = parse_seed_list(seeds_text);
    std::vector<Algorithm> algs;
    std::stringstream ss(algorithms);
    std::string name;
    while (std::getline(ss, name, ',')) {
        const auto a = parse_algorithm(name);
        if (!a) throw ConfigError("unknown algorithm '" + name + "'");
        if (std::find(algs.begin(), algs.end(), *a) == algs.end()) algs.push_back(*a);
    }
    if (algs.empty()) throw ConfigError("--algorithms is empty");
    std::sort(algs.begin(), algs.end(),
              [](Algorithm a, Algorithm b) { return to_string(a) < to_string(b); });

    SolverConfig base = flags.resolved();
    validate_config(base);
    const Instance inst = load_instance(instance_path);
    if (!trace_dir.empty()) std::filesystem::create_directories(trace_dir);

    Table table{kSummaryHeader};
    table[0][0] = "algorithm";
    int failures = 0;
    for (const auto a : algs) {
        SolverConfig cfg = base;
        cfg.algorithm = a;
        const std::string label(to_string(a));
        const auto runs = run_seeds(label, inst, cfg, seeds, trace_dir, err);
        auto s = summarize(label, runs);
        failures += s.failures;
        table.push_back(std::move(s.cells));
    }
    emit_table(table, csv_path, out);
    return failures ? kExitInfeasible : kExitOk;
}

int cmd_ablate(const std::string& instance_path, const std::string& algorithm, const std::string& seeds_text,
               const SolverFlags& flags, const std::string& csv_path, const std::string& trace_dir,
               std::ostream& out, std::ostream& err) {
    const auto seeds = parse_seed_list(seeds_text);
    const auto alg = parse_algorithm(algorithm);
    if (!alg) throw ConfigError("unknown algorithm '" + algorithm + "'");
    SolverConfig base = flags.resolved();
    base.algorithm = *alg;
    validate_config(base);
    const Instance inst = load_instance(instance_path);
    if (!trace_dir.empty()) std::filesystem::create_directories(trace_dir);

    struct Variant {
        std::string label;
        bool crsspf;
        SahaMode saha;
    };
    const std::vector<Variant> variants = {
        {"full", true, SahaMode::Staggered},
        {"no-crsspf", false, SahaMode::Staggered},
        {"no-saha", true, SahaMode::FixedByAirport},
        {"no-crsspf+no-saha", false, SahaMode::FixedByAirport},
    };
    const bool peak = prepare_instance(inst, SahaMode::Staggered).scenario.mas_peak;

    Table table{kSummaryHeader};
    std::vector<double> score;
    int failures = 0;
    for (const auto& v : variants) {
        SolverConfig cfg = base;
        cfg.enable_crsspf = v.crsspf;
        cfg.saha_mode = v.saha;
        const auto runs = run_seeds(v.label, inst, cfg, seeds, trace_dir, err);
        auto s = summarize(v.label, runs);
        failures += s.failures;
        score.push_back(peak ? s.median_lower : s.median_upper + s.median_lower);
        table.push_back(std::move(s.cells));
    }
    emit_table(table, csv_path, out);
    const bool best = std::all_of(score.begin() + 1, score.end(), [&](double x) { return score[0] <= x; });
    out << (peak ? "peak: median lower objective" : "non-peak: median upper+lower objective")
        << " of full model " << fmt(score[0]) << (best ? " <= " : " > some of ") << "ablations\n";
    return failures ? kExitInfeasible : kExitOk;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    std::vector<std::uint64_t> seeds;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        const auto item = text.substr(pos, comma - pos);
        const auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            seeds.push_back(parse_u64(item));
        } else {
            const auto lo = parse_u64(item.substr(0, dots));
            const auto hi = parse_u64(item.substr(dots + 2));
            if (hi < lo) throw std::invalid_argument("empty seed range '" + std::string(item) + "'");
            if (hi - lo > 100000) throw std::invalid_argument("seed range too long");
            for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
        }
        pos = comma + 1;
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    return seeds;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bi-level arrival/departure scheduling for multi-airport terminal areas", "tma-sched"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "emit a synthetic instance");
    std::string tmpl = "shanghai";
    int scenario = 0;
    std::uint64_t gen_seed = 1;
    std::string counts, gen_out;
    gen->add_option("--template", tmpl, "instance template")->check(CLI::IsMember({"shanghai"}));
    auto* scen_opt = gen->add_option("--scenario", scenario, "target scenario 1..6");
    auto* counts_opt = gen->add_option("--counts", counts, "explicit counts, e.g. ZSSS=4/4,ZSPD=6/7");
    scen_opt->excludes(counts_opt);
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("-o,--output", gen_out, "output file (stdout when absent)");

    // validate
    auto* val = app.add_subcommand("validate", "check an instance, and a schedule against it");
    std::string val_instance, val_schedule;
    bool val_crsspf = true, val_saha = true;
    val->add_option("instance", val_instance, "instance document")->required();
    val->add_option("schedule", val_schedule, "result or schedule document");
    auto* val_crsspf_opt = val->add_flag("--crsspf,!--no-crsspf", val_crsspf, "same-path order constraints");
    auto* val_saha_opt = val->add_flag("--saha,!--no-saha", val_saha, "staggered altitude assignment");

    // solve
    auto* sol = app.add_subcommand("solve", "schedule one instance");
    std::string sol_instance, sol_alg = "bi-ega", sol_out, sol_trace;
    std::uint64_t sol_seed = 1;
    SolverFlags sol_flags;
    sol->add_option("instance", sol_instance, "instance document")->required();
    sol->add_option("--algorithm", sol_alg, "fcfs|oracle|bi-ga|bi-ega|bi-sega")
        ->check(CLI::IsMember({"fcfs", "oracle", "bi-ga", "bi-ega", "bi-sega"}));
    sol->add_option("--seed", sol_seed, "random seed");
    sol->add_option("-o,--output", sol_out, "result document (stdout when absent)");
    sol->add_option("--trace", sol_trace, "convergence trace CSV");
    sol_flags.attach(*sol);
    sol_flags.attach_model(*sol);

    // compare
    auto* cmp = app.add_subcommand("compare", "median comparison of algorithms over seeds");
    std::string cmp_instance, cmp_algs = "fcfs,bi-ga,bi-ega,bi-sega", cmp_seeds = "1..20", cmp_csv, cmp_traces;
    SolverFlags cmp_flags;
    cmp->add_option("instance", cmp_instance, "instance document")->required();
    cmp->add_option("--algorithms", cmp_algs, "comma-separated algorithms");
    cmp->add_option("--seeds", cmp_seeds, "seed list, e.g. 1..20 or 1,5,9");
    cmp->add_option("--csv", cmp_csv, "also write the table as CSV");
    cmp->add_option("--trace-dir", cmp_traces, "write one trace per algorithm and seed");
    cmp_flags.attach(*cmp);
    cmp_flags.attach_model(*cmp);

    // ablate
    auto* abl = app.add_subcommand("ablate", "{+-CRSSPF} x {+-SAHA} grid over seeds");
    std::string abl_instance, abl_alg = "bi-sega", abl_seeds = "1..20", abl_csv, abl_traces;
    SolverFlags abl_flags;
    abl->add_option("instance", abl_instance, "instance document")->required();
    abl->add_option("--algorithm", abl_alg, "solver used for every configuration")
        ->check(CLI::IsMember({"fcfs", "oracle", "bi-ga", "bi-ega", "bi-sega"}));
    abl->add_option("--seeds", abl_seeds, "seed list, e.g. 1..20 or 1,5,9");
    abl->add_option("--csv", abl_csv, "also write the table as CSV");
    abl->add_option("--trace-dir", abl_traces, "write one trace per configuration and seed");
    abl_flags.attach(*abl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) {
            if (!scen_opt->count() && !counts_opt->count())
                throw ConfigError("generate needs --scenario or --counts");
            return cmd_generate(scenario, gen_seed, counts, gen_out, out);
        }
        if (*val) return cmd_validate(val_instance, val_schedule, val_crsspf_opt, val_crsspf, val_saha_opt,
                                      val_saha, out);
        if (*sol) return cmd_solve(sol_instance, sol_alg, sol_seed, sol_flags, sol_out, sol_trace, out, err);
        if (*cmp) return cmd_compare(cmp_instance, cmp_algs, cmp_seeds, cmp_flags, cmp_csv, cmp_traces, out, err);
        if (*abl) return cmd_ablate(abl_instance, abl_alg, abl_seeds, abl_flags, abl_csv, abl_traces, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const InputError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInfeasible;
    }
    return kExitUsage;
}

int run_cli(const std::vector<std::string_view>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> owned(args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : owned) argv.push_back(s.c_str());
    argv.push_back(nullptr);
    return run_cli(static_cast<int>(owned.size()), argv.data(), out, err);
}

}  // namespace tma
