#pragma once

// JSON instance and result documents, CSV convergence traces.
// Field names are listed in docs/schema.md.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tma/constraints.hpp"
#include "tma/instance.hpp"
#include "tma/scenario.hpp"
#include "tma/solver.hpp"

namespace tma {

inline constexpr int kInstanceFormatVersion = 1;
inline constexpr int kResultFormatVersion = 1;

/// Parses and validates. Throws InputError with a field path on failure;
/// validation warnings are appended to `warnings` when given.
Instance parse_instance(const nlohmann::json& doc, std::vector<std::string>* warnings = nullptr);
Instance parse_instance_text(std::string_view text, std::vector<std::string>* warnings = nullptr);
Instance load_instance(const std::string& path, std::vector<std::string>* warnings = nullptr);

nlohmann::json instance_to_json(const Instance& instance);
/// Pretty-printed document with a trailing newline.
std::string instance_to_text(const Instance& instance);

/// Everything a result document records besides the solve itself.
struct ResultMeta {
    Algorithm algorithm = Algorithm::Fcfs;
    std::uint64_t seed = 0;
    bool enable_crsspf = true;
    SahaMode saha_mode = SahaMode::Staggered;
    bool clamp_arrival_advance = false;
};

struct ResultDocument {
    ResultMeta meta;
    ScenarioState scenario;
    ObjectiveValue objective;
    Schedule schedule;
    std::vector<Violation> violations;
    std::int64_t evaluations = 0;
    int co_iterations = 0;
};

/// Result document for a completed solve; violations are re-checked on the
/// prepared instance.
ResultDocument make_result_document(const PreparedInstance& prepared, const SolverConfig& config,
                                    const SolveResult& result);

/// Result JSON. Wall time is deliberately absent so identical runs produce
/// identical bytes.
nlohmann::json result_to_json(const ResultDocument& doc);
std::string result_to_text(const ResultDocument& doc);
ResultDocument parse_result(const nlohmann::json& doc);
ResultDocument parse_result_text(std::string_view text);

/// Accepts either a result document or a bare {"schedule": [...]} document.
Schedule parse_schedule(const nlohmann::json& doc);

/// `co_iteration,upper_best,lower_best` rows.
void write_trace(std::ostream& out, const std::vector<ConvergenceRow>& rows);
std::string trace_to_text(const std::vector<ConvergenceRow>& rows);
std::vector<ConvergenceRow> parse_trace(std::string_view text);

/// Serializes a completed solve: the result document to `result_out` and
/// the convergence trace to `trace_out` (either may be null). Throws
/// std::runtime_error when a stream fails.
void write_result(const ResultDocument& doc, const std::vector<ConvergenceRow>& trace,
                  std::ostream* result_out, std::ostream* trace_out);

/// Integral values print without a fraction; others with up to 6 decimals.
std::string format_number(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace tma
