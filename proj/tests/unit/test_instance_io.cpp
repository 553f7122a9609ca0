#include <doctest.h>

#include <sstream>

#include "test_support.hpp"
#include "tma/errors.hpp"
#include "tma/generator.hpp"
#include "tma/instance_io.hpp"

using namespace tma;

namespace {

std::string fixture(const char* name) { return std::string(TMA_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("fixture instance loads") {
    const Instance in = load_instance(fixture("shanghai.json"));
    CHECK(in.airports.size() == 2);
    std::size_t runways = 0, pairs = 0;
    for (const auto& a : in.airports) {
        runways += a.runways.size();
        pairs += a.close_pairs.size();
    }
    CHECK(runways == 6);
    CHECK(pairs == 3);
    CHECK(in.fixes.size() == 15);
    CHECK(in.flights.size() == 21);
    CHECK(prepare_instance(in, SahaMode::Staggered).scenario.mas_peak);
}

TEST_CASE("instance JSON round trip") {
    const Instance in = load_instance(fixture("shanghai.json"));
    CHECK(parse_instance_text(instance_to_text(in)) == in);
    CHECK(instance_to_text(parse_instance_text(instance_to_text(in))) == instance_to_text(in));

    Instance small = test::small_instance();
    Flight& f = test::add_arrival(small, "a", "B", "B1", "AF1", AircraftClass::Heavy, 10000, 2);
    f.vacate_time = 52;
    f.wingspan_m = 60.5;
    CHECK(parse_instance_text(instance_to_text(small)) == small);
}

TEST_CASE("parse errors name the offending field") {
    Instance in = test::small_instance();
    test::add_arrival(in, "bad-flight", "B", "B1", "AF1", AircraftClass::Medium, 10000);
    auto doc = instance_to_json(in);
    doc["flights"][0]["runway"] = "Z9";
    try {
        parse_instance(doc);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("bad-flight") != std::string::npos);
    }

    auto missing = instance_to_json(in);
    missing["flights"][0].erase("class");
    CHECK_THROWS_AS(parse_instance(missing), InputError);
    CHECK_THROWS_AS(parse_instance_text("{not json"), InputError);
    CHECK_THROWS_AS(load_instance(fixture("does-not-exist.json")), InputError);
}

TEST_CASE("an instance without flights is valid") {
    const Instance in = test::small_instance();
    const Instance back = parse_instance_text(instance_to_text(in));
    CHECK(back.flights.empty());
    const auto p = prepare_instance(back, SahaMode::Staggered);
    SolverConfig cfg;
    cfg.algorithm = Algorithm::Fcfs;
    const auto r = solve(p, cfg);
    CHECK(r.schedule.entries.empty());
    CHECK(r.objective.upper == 0.0);
}

TEST_CASE("result documents and traces") {
    const auto p = prepare_instance(load_instance(fixture("shanghai.json")), SahaMode::Staggered);
    SolverConfig cfg;
    cfg.algorithm = Algorithm::BiSega;
    cfg.population_size = 10;
    cfg.co_iterations = 4;
    cfg.level_generations = 4;
    cfg.rng_seed = 7;
    const auto r = solve(p, cfg);
    const auto doc = make_result_document(p, cfg, r);
    CHECK(doc.violations.empty());
    CHECK(doc.co_iterations == static_cast<int>(r.convergence.size()));

    std::ostringstream result_out, trace_out;
    write_result(doc, r.convergence, &result_out, &trace_out);
    const auto back = parse_result_text(result_out.str());
    CHECK(back.schedule == r.schedule);
    CHECK(back.objective == r.objective);
    CHECK(back.meta.algorithm == Algorithm::BiSega);
    CHECK(back.meta.seed == 7);
    CHECK(check_schedule(p.instance, parse_schedule(nlohmann::json::parse(result_out.str()))).empty());
    CHECK(result_to_text(back) == result_out.str());

    const auto rows = parse_trace(trace_out.str());
    CHECK(rows == r.convergence);
    CHECK(static_cast<int>(rows.size()) == back.co_iterations);

    SolverConfig fc;
    fc.algorithm = Algorithm::Fcfs;
    const auto f = solve(p, fc);
    CHECK(make_result_document(p, fc, f).co_iterations == 1);
    CHECK(parse_trace(trace_to_text(f.convergence)).size() == 1);
}

TEST_CASE("bare schedule documents") {
    Instance in = test::small_instance();
    test::add_departure(in, "d", "A", "RD", "DF1", AircraftClass::Medium, 10000);
    const auto doc = nlohmann::json::parse(
        R"({"schedule":[{"flight":"d","opt_fix_time":10700,"opt_runway_time":10100}]})");
    const Schedule s = parse_schedule(doc);
    REQUIRE(s.entries.size() == 1);
    CHECK(s.entries[0].flight_id == "d");
    CHECK(s.entries[0].runway_time == 10100);
    CHECK(s.entries[0].fix_time == 10700);
    CHECK_THROWS_AS(parse_schedule(nlohmann::json::parse(R"({"schedule":[{"flight":"d"}]})")), InputError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(3.0) == "3");
    CHECK(format_number(-1260.0) == "-1260");
    CHECK(format_number(0.25) == "0.25");
}

TEST_CASE("generator by counts") {
    GeneratorOptions opt;
    opt.counts = {{"ZSSS", {4, 4}}, {"ZSPD", {6, 7}}};
    opt.seed = 11;
    const Instance in = generate_instance(opt);
    CHECK(in.flights.size() == 21);
    CHECK_NOTHROW(validate_instance(in));
    const auto p = prepare_instance(in, SahaMode::Staggered);
    CHECK(p.scenario.mas_peak);
    CHECK(instance_to_text(generate_instance(opt)) == instance_to_text(in));
    opt.seed = 12;
    CHECK(instance_to_text(generate_instance(opt)) != instance_to_text(in));

    GeneratorOptions empty;
    empty.counts = {{"ZSSS", {0, 0}}, {"ZSPD", {0, 0}}};
    const auto e = prepare_instance(generate_instance(empty), SahaMode::Staggered);
    CHECK(e.instance.flights.empty());
    CHECK(e.scenario.scenario_index == 6);
}

TEST_CASE("generated scenarios classify as requested") {
    for (int k = 1; k <= 6; ++k)
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const Instance in = generate_scenario_instance(k, seed);
            CHECK_NOTHROW(validate_instance(in));
            const auto p = prepare_instance(in, SahaMode::Staggered);
            CHECK(p.scenario.scenario_index == k);
            SolverConfig cfg;
            cfg.algorithm = Algorithm::Fcfs;
            CHECK_NOTHROW(solve(p, cfg));
        }
    CHECK_THROWS(generate_scenario_instance(7, 1));
}

TEST_CASE("micro instances stay small and feasible") {
    for (int n = 1; n <= 6; ++n) {
        const Instance in = generate_micro_instance(n, 100 + n);
        CHECK(in.flights.size() == static_cast<std::size_t>(n));
        SolverConfig cfg;
        cfg.algorithm = Algorithm::Fcfs;
        cfg.time_step = 30;
        CHECK_NOTHROW(solve(in, cfg));
    }
}
