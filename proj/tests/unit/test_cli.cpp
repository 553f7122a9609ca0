#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "tma/cli.hpp"
#include "tma/instance_io.hpp"

using namespace tma;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string_view> args) {
    args.insert(args.begin(), "tma-sched");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("tma-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

const std::string kFixture = std::string(TMA_FIXTURE_DIR) + "/shanghai.json";

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"solve"}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"solve", kFixture, "--algorithm", "nsga"}).code == kExitUsage);
    CHECK(run({"solve", kFixture, "--population", "0"}).code == kExitUsage);
    CHECK(run({"generate", "--scenario", "3", "--counts", "ZSSS=1/1"}).code == kExitUsage);
}

TEST_CASE("solve then validate") {
    TempDir dir;
    const auto res = dir.file("fcfs.json"), res2 = dir.file("fcfs2.json");
    REQUIRE(run({"solve", kFixture, "--algorithm", "fcfs", "-o", res}).code == kExitOk);
    REQUIRE(run({"solve", kFixture, "--algorithm", "fcfs", "-o", res2}).code == kExitOk);
    CHECK(read_file(res) == read_file(res2));
    const auto v = run({"validate", kFixture, res});
    CHECK(v.code == kExitOk);

    const auto trace = dir.file("trace.csv");
    REQUIRE(run({"solve", kFixture, "--algorithm", "bi-ega", "--seed", "4", "--population", "8",
                 "--co-iterations", "3", "--generations", "3", "-o", res, "--trace", trace})
                .code == kExitOk);
    CHECK(run({"validate", kFixture, res}).code == kExitOk);
    CHECK(parse_trace(read_file(trace)).size() ==
          static_cast<std::size_t>(parse_result_text(read_file(res)).co_iterations));
}

TEST_CASE("validate reports violations with exit 1") {
    TempDir dir;
    const Instance in = load_instance(kFixture);
    nlohmann::json sched = nlohmann::json::object();
    sched["schedule"] = nlohmann::json::array();
    // Everything on its planned time: the generator leaves conflicts in the plan.
    for (const auto& f : in.flights)
        sched["schedule"].push_back(
            {{"flight", f.id}, {"opt_fix_time", f.planned_fix_time}, {"opt_runway_time", f.planned_runway_time}});
    const auto path = dir.file("planned.json");
    write_file(path, sched.dump());
    const auto prepared = prepare_instance(in, SahaMode::Staggered);
    const bool clean = check_schedule(prepared.instance, parse_schedule(sched)).empty();
    CHECK(run({"validate", kFixture, path}).code == (clean ? kExitOk : kExitInfeasible));

    CHECK(run({"validate", kFixture}).code == kExitOk);
    CHECK(run({"validate", dir.file("missing.json")}).code == kExitInfeasible);
}

TEST_CASE("generate writes a loadable instance") {
    TempDir dir;
    const auto a = dir.file("a.json"), b = dir.file("b.json");
    REQUIRE(run({"generate", "--template", "shanghai", "--scenario", "5", "--seed", "3", "-o", a}).code == kExitOk);
    REQUIRE(run({"generate", "--template", "shanghai", "--scenario", "5", "--seed", "3", "-o", b}).code == kExitOk);
    CHECK(read_file(a) == read_file(b));
    CHECK(prepare_instance(load_instance(a), SahaMode::Staggered).scenario.scenario_index == 5);
}

TEST_CASE("compare and ablate tables") {
    const auto c = run({"compare", kFixture, "--algorithms", "fcfs,bi-ega", "--seeds", "1..2",
                        "--population", "6", "--co-iterations", "2", "--generations", "2"});
    CHECK(c.code == kExitOk);
    CHECK(c.out.find("bi-ega") != std::string::npos);
    CHECK(c.out.find("fcfs") != std::string::npos);

    const auto a = run({"ablate", kFixture, "--seeds", "1,2", "--population", "6", "--co-iterations", "2",
                        "--generations", "2"});
    CHECK(a.code == kExitOk);
    for (const char* variant : {"full", "no-crsspf", "no-saha"}) CHECK(a.out.find(variant) != std::string::npos);
}

TEST_CASE("seed lists") {
    CHECK(parse_seed_list("1..3") == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(parse_seed_list("7,3,3") == std::vector<std::uint64_t>{3, 7});
    CHECK(parse_seed_list("1..2,10") == std::vector<std::uint64_t>{1, 2, 10});
    CHECK_THROWS_AS(parse_seed_list(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_seed_list("5..1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_seed_list("x"), std::invalid_argument);
}
