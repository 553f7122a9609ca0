#include "tma/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tma/errors.hpp"

namespace tma {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw InputError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(path + "." + key + ": missing");
    return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_string()) throw InputError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::int64_t get_int(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_number_integer()) throw InputError(path + "." + key + ": expected an integer");
    return v.get<std::int64_t>();
}

double get_number(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_number()) throw InputError(path + "." + key + ": expected a number");
    return v.get<double>();
}

bool get_bool(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_boolean()) throw InputError(path + "." + key + ": expected a boolean");
    return v.get<bool>();
}

const json& get_array(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_array()) throw InputError(path + "." + key + ": expected an array");
    return v;
}

std::int64_t opt_int(const json& obj, const char* key, const std::string& path, std::int64_t dflt) {
    return obj.contains(key) ? get_int(obj, key, path) : dflt;
}

double opt_number(const json& obj, const char* key, const std::string& path, double dflt) {
    return obj.contains(key) ? get_number(obj, key, path) : dflt;
}

std::string idx(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

AircraftClass get_class(const json& obj, const char* key, const std::string& path) {
    const auto s = get_string(obj, key, path);
    const auto c = parse_aircraft_class(s);
    if (!c) throw InputError(path + "." + key + ": unknown aircraft class '" + s + "'");
    return *c;
}

FlightKind get_kind(const json& obj, const char* key, const std::string& path) {
    const auto s = get_string(obj, key, path);
    const auto k = parse_flight_kind(s);
    if (!k) throw InputError(path + "." + key + ": expected 'arrival' or 'departure'");
    return *k;
}

WakeMatrix parse_wake(const json& obj, const char* key, const std::string& path, const WakeMatrix& dflt) {
    if (!obj.contains(key)) return dflt;
    const json& m = get_array(obj, key, path);
    const std::string p = path + "." + key;
    if (m.size() != 4) throw InputError(p + ": expected 4 rows");
    WakeMatrix out{};
    for (std::size_t r = 0; r < 4; ++r) {
        if (!m[r].is_array() || m[r].size() != 4) throw InputError(idx(p, r) + ": expected 4 cells");
        for (std::size_t c = 0; c < 4; ++c) {
            if (!m[r][c].is_number_integer()) throw InputError(idx(idx(p, r), c) + ": expected an integer");
            out[r][c] = m[r][c].get<Seconds>();
        }
    }
    return out;
}

json wake_to_json(const WakeMatrix& m) {
    json rows = json::array();
    for (const auto& row : m) rows.push_back(json(std::vector<Seconds>(row.begin(), row.end())));
    return rows;
}

SeparationConfig parse_separation(const json& doc) {
    SeparationConfig s;
    if (!doc.contains("separation")) return s;
    const json& j = doc["separation"];
    const std::string p = "separation";
    if (!j.is_object()) throw InputError(p + ": expected an object");
    s.wake_arrival = parse_wake(j, "wake_arrival_s", p, s.wake_arrival);
    s.wake_departure = parse_wake(j, "wake_departure_s", p, s.wake_departure);
    s.handover_sep_arr = opt_int(j, "handover_arr_s", p, s.handover_sep_arr);
    s.handover_sep_dep = opt_int(j, "handover_dep_s", p, s.handover_sep_dep);
    s.clearance_sep = opt_int(j, "clearance_s", p, s.clearance_sep);
    s.dep_clear_time = opt_int(j, "dep_clear_s", p, s.dep_clear_time);
    s.vacate_time = opt_int(j, "vacate_s", p, s.vacate_time);
    s.cross_time = opt_int(j, "cross_s", p, s.cross_time);
    s.position_shift_offset = opt_int(j, "position_shift_offset_s", p, s.position_shift_offset);
    s.crossing_wingspan_threshold_m =
        opt_number(j, "crossing_wingspan_threshold_m", p, s.crossing_wingspan_threshold_m);
    return s;
}

}  // namespace

Instance parse_instance(const json& doc, std::vector<std::string>* warnings) {
    if (!doc.is_object()) throw InputError("document: expected a JSON object");
    if (doc.contains("format") && doc["format"] != "tma-instance")
        throw InputError("format: expected 'tma-instance'");
    const auto version = get_int(doc, "version", "document");
    if (version != kInstanceFormatVersion)
        throw InputError("version: unsupported instance version " + std::to_string(version));

    Instance in;
    in.peak_fraction = opt_number(doc, "peak_fraction", "document", in.peak_fraction);
    in.window_start = opt_int(doc, "window_start_s", "document", in.window_start);
    in.window_seconds = opt_int(doc, "window_seconds", "document", in.window_seconds);

    const json& airports = get_array(doc, "airports", "document");
    for (std::size_t i = 0; i < airports.size(); ++i) {
        const auto p = idx("airports", i);
        const json& a = airports[i];
        Airport ap;
        ap.id = get_string(a, "id", p);
        for (const auto& r : get_array(a, "runways", p)) {
            if (!r.is_string()) throw InputError(p + ".runways: expected strings");
            ap.runways.push_back(r.get<std::string>());
        }
        if (a.contains("close_pairs")) {
            const json& pairs = get_array(a, "close_pairs", p);
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                const json& pr = pairs[k];
                if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
                    throw InputError(idx(p + ".close_pairs", k) + ": expected two runway ids");
                ap.close_pairs.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
            }
        }
        ap.has_end_around_taxiway = a.contains("end_around_taxiway") && get_bool(a, "end_around_taxiway", p);
        ap.hourly_capacity_arr = static_cast<int>(get_int(a, "hourly_capacity_arr", p));
        ap.hourly_capacity_dep = static_cast<int>(get_int(a, "hourly_capacity_dep", p));
        in.airports.push_back(std::move(ap));
    }

    const json& fixes = get_array(doc, "fixes", "document");
    for (std::size_t i = 0; i < fixes.size(); ++i) {
        const auto p = idx("fixes", i);
        HandoverFix f;
        f.id = get_string(fixes[i], "id", p);
        f.direction = get_kind(fixes[i], "direction", p);
        f.altitude_slots = static_cast<int>(opt_int(fixes[i], "altitude_slots", p, 1));
        in.fixes.push_back(std::move(f));
    }

    in.separation = parse_separation(doc);

    if (doc.contains("segment_times")) {
        const json& st = doc["segment_times"];
        const std::string p = "segment_times";
        in.segment_times.default_seconds = opt_int(st, "default_s", p, in.segment_times.default_seconds);
        if (st.contains("entries")) {
            const json& entries = get_array(st, "entries", p);
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const auto ep = idx(p + ".entries", i);
                SegmentKey key{get_string(entries[i], "airport", ep), get_string(entries[i], "fix", ep),
                               get_string(entries[i], "runway", ep), get_class(entries[i], "class", ep)};
                if (!in.segment_times.entries.emplace(key, get_int(entries[i], "seconds", ep)).second)
                    throw InputError(ep + ": duplicate segment-time key");
            }
        }
    }

    const json& flights = get_array(doc, "flights", "document");
    for (std::size_t i = 0; i < flights.size(); ++i) {
        const json& j = flights[i];
        const auto p = idx("flights", i);
        Flight f;
        f.id = get_string(j, "id", p);
        const auto fp = p + " (" + f.id + ")";
        f.kind = get_kind(j, "kind", fp);
        f.airport_id = get_string(j, "airport", fp);
        f.runway_id = get_string(j, "runway", fp);
        f.fix_id = get_string(j, "fix", fp);
        f.aircraft_class = get_class(j, "class", fp);
        f.wingspan_m = get_number(j, "wingspan_m", fp);
        f.planned_fix_time = get_int(j, "planned_fix_time", fp);
        f.planned_runway_time = get_int(j, "planned_runway_time", fp);
        f.altitude_slot = static_cast<int>(opt_int(j, "handover_altitude_slot", fp, 1));
        f.max_position_shift = static_cast<int>(opt_int(j, "max_position_shift", fp, kDefaultMaxPositionShift));
        if (j.contains("vacate_s")) f.vacate_time = get_int(j, "vacate_s", fp);
        in.flights.push_back(std::move(f));
    }

    auto w = validate_instance(in);
    if (warnings) warnings->insert(warnings->end(), w.begin(), w.end());
    return in;
}

Instance parse_instance_text(std::string_view text, std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("document: malformed JSON: ") + e.what());
    }
    return parse_instance(doc, warnings);
}

Instance load_instance(const std::string& path, std::vector<std::string>* warnings) {
    return parse_instance_text(read_file(path), warnings);
}

json instance_to_json(const Instance& in) {
    json doc;
    doc["format"] = "tma-instance";
    doc["version"] = kInstanceFormatVersion;
    doc["peak_fraction"] = in.peak_fraction;
    doc["window_start_s"] = in.window_start;
    doc["window_seconds"] = in.window_seconds;

    doc["airports"] = json::array();
    for (const auto& a : in.airports) {
        json pairs = json::array();
        for (const auto& [x, y] : a.close_pairs) pairs.push_back({x, y});
        doc["airports"].push_back({{"id", a.id},
                                   {"runways", a.runways},
                                   {"close_pairs", pairs},
                                   {"end_around_taxiway", a.has_end_around_taxiway},
                                   {"hourly_capacity_arr", a.hourly_capacity_arr},
                                   {"hourly_capacity_dep", a.hourly_capacity_dep}});
    }
    doc["fixes"] = json::array();
    for (const auto& f : in.fixes)
        doc["fixes"].push_back(
            {{"id", f.id}, {"direction", to_string(f.direction)}, {"altitude_slots", f.altitude_slots}});

    const auto& s = in.separation;
    doc["separation"] = {{"wake_arrival_s", wake_to_json(s.wake_arrival)},
                         {"wake_departure_s", wake_to_json(s.wake_departure)},
                         {"handover_arr_s", s.handover_sep_arr},
                         {"handover_dep_s", s.handover_sep_dep},
                         {"clearance_s", s.clearance_sep},
                         {"dep_clear_s", s.dep_clear_time},
                         {"vacate_s", s.vacate_time},
                         {"cross_s", s.cross_time},
                         {"position_shift_offset_s", s.position_shift_offset},
                         {"crossing_wingspan_threshold_m", s.crossing_wingspan_threshold_m}};

    json entries = json::array();
    for (const auto& [k, v] : in.segment_times.entries)
        entries.push_back({{"airport", k.airport_id},
                           {"fix", k.fix_id},
                           {"runway", k.runway_id},
                           {"class", to_string(k.aircraft_class)},
                           {"seconds", v}});
    doc["segment_times"] = {{"default_s", in.segment_times.default_seconds}, {"entries", entries}};

    doc["flights"] = json::array();
    for (const auto& f : in.flights) {
        json j = {{"id", f.id},
                  {"kind", to_string(f.kind)},
                  {"airport", f.airport_id},
                  {"runway", f.runway_id},
                  {"fix", f.fix_id},
                  {"class", to_string(f.aircraft_class)},
                  {"wingspan_m", f.wingspan_m},
                  {"planned_fix_time", f.planned_fix_time},
                  {"planned_runway_time", f.planned_runway_time},
                  {"handover_altitude_slot", f.altitude_slot},
                  {"max_position_shift", f.max_position_shift}};
        if (f.vacate_time) j["vacate_s"] = *f.vacate_time;
        doc["flights"].push_back(std::move(j));
    }
    return doc;
}

std::string instance_to_text(const Instance& instance) {
    return instance_to_json(instance).dump(2) + "\n";
}

ResultDocument make_result_document(const PreparedInstance& prepared, const SolverConfig& config,
                                    const SolveResult& result) {
    ResultDocument d;
    d.meta = {config.algorithm, config.rng_seed, config.enable_crsspf, config.saha_mode,
              config.clamp_arrival_advance};
    d.scenario = prepared.scenario;
    d.objective = result.objective;
    d.schedule = result.schedule;
    d.violations = check_schedule(prepared.instance, result.schedule, config.check_options());
    d.evaluations = result.evaluations;
    d.co_iterations = static_cast<int>(result.convergence.size());
    return d;
}

json result_to_json(const ResultDocument& d) {
    json doc;
    doc["format"] = "tma-result";
    doc["version"] = kResultFormatVersion;
    doc["algorithm"] = to_string(d.meta.algorithm);
    doc["seed"] = d.meta.seed;
    doc["model"] = {{"crsspf", d.meta.enable_crsspf},
                    {"saha", to_string(d.meta.saha_mode)},
                    {"clamp_arrival_advance", d.meta.clamp_arrival_advance}};

    json peaks = json::object();
    for (const auto& [id, peak] : d.scenario.airport_peak) peaks[id] = peak;
    doc["scenario"] = {{"mas_peak", d.scenario.mas_peak},
                       {"airport_peak", peaks},
                       {"scenario_index", d.scenario.scenario_index ? json(*d.scenario.scenario_index)
                                                                    : json(nullptr)}};

    const auto& c = d.objective.components;
    doc["objective"] = {{"upper", d.objective.upper},
                        {"lower", d.objective.lower},
                        {"components",
                         {{"arr_order_shift_total", c.arr_order_shift_total},
                          {"arr_delay_total_s", c.arr_delay_total_s},
                          {"dep_rot_span_s", c.dep_rot_span_s},
                          {"dep_delay_total_s", c.dep_delay_total_s}}}};
    doc["evaluations"] = d.evaluations;
    doc["co_iterations"] = d.co_iterations;

    doc["schedule"] = json::array();
    for (const auto& e : d.schedule.entries)
        doc["schedule"].push_back(
            {{"flight", e.flight_id}, {"opt_fix_time", e.fix_time}, {"opt_runway_time", e.runway_time}});

    doc["violations"] = json::array();
    for (const auto& v : d.violations)
        doc["violations"].push_back(
            {{"kind", to_string(v.kind)}, {"flights", v.flights}, {"deficit_s", v.deficit_seconds}});
    return doc;
}

std::string result_to_text(const ResultDocument& doc) {
    return result_to_json(doc).dump(2) + "\n";
}

Schedule parse_schedule(const json& doc) {
    Schedule s;
    const json& entries = get_array(doc, "schedule", "document");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto p = idx("schedule", i);
        s.entries.push_back({get_string(entries[i], "flight", p), get_int(entries[i], "opt_fix_time", p),
                             get_int(entries[i], "opt_runway_time", p)});
    }
    return s;
}

ResultDocument parse_result(const json& doc) {
    if (!doc.is_object()) throw InputError("document: expected a JSON object");
    ResultDocument d;
    if (doc.contains("algorithm")) {
        const auto name = get_string(doc, "algorithm", "document");
        const auto alg = parse_algorithm(name);
        if (!alg) throw InputError("algorithm: unknown algorithm '" + name + "'");
        d.meta.algorithm = *alg;
    }
    if (doc.contains("seed")) {
        const json& seed = doc["seed"];
        if (!seed.is_number_integer()) throw InputError("seed: expected an integer");
        d.meta.seed = seed.get<std::uint64_t>();
    }
    if (doc.contains("model")) {
        const json& m = doc["model"];
        if (m.contains("crsspf")) d.meta.enable_crsspf = get_bool(m, "crsspf", "model");
        if (m.contains("saha")) {
            const auto mode = get_string(m, "saha", "model");
            if (mode == "staggered") d.meta.saha_mode = SahaMode::Staggered;
            else if (mode == "fixed-by-airport") d.meta.saha_mode = SahaMode::FixedByAirport;
            else throw InputError("model.saha: expected 'staggered' or 'fixed-by-airport'");
        }
        if (m.contains("clamp_arrival_advance"))
            d.meta.clamp_arrival_advance = get_bool(m, "clamp_arrival_advance", "model");
    }
    if (doc.contains("scenario")) {
        const json& s = doc["scenario"];
        d.scenario.mas_peak = get_bool(s, "mas_peak", "scenario");
        if (s.contains("airport_peak"))
            for (const auto& [id, v] : s["airport_peak"].items()) d.scenario.airport_peak[id] = v.get<bool>();
        if (s.contains("scenario_index") && !s["scenario_index"].is_null())
            d.scenario.scenario_index = static_cast<int>(get_int(s, "scenario_index", "scenario"));
    }
    if (doc.contains("objective")) {
        const json& o = doc["objective"];
        d.objective.upper = get_number(o, "upper", "objective");
        d.objective.lower = get_number(o, "lower", "objective");
        const json& c = field(o, "components", "objective");
        const std::string cp = "objective.components";
        d.objective.components = {get_int(c, "arr_order_shift_total", cp), get_int(c, "arr_delay_total_s", cp),
                                  get_int(c, "dep_rot_span_s", cp), get_int(c, "dep_delay_total_s", cp)};
    }
    d.evaluations = opt_int(doc, "evaluations", "document", 0);
    d.co_iterations = static_cast<int>(opt_int(doc, "co_iterations", "document", 0));
    d.schedule = parse_schedule(doc);
    if (doc.contains("violations")) {
        const json& vs = get_array(doc, "violations", "document");
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const auto p = idx("violations", i);
            const auto name = get_string(vs[i], "kind", p);
            const auto kind = parse_constraint_kind(name);
            if (!kind) throw InputError(p + ".kind: unknown constraint kind '" + name + "'");
            Violation v{*kind, vs[i]["flights"].get<std::vector<std::string>>(), get_int(vs[i], "deficit_s", p)};
            d.violations.push_back(std::move(v));
        }
    }
    return d;
}

ResultDocument parse_result_text(std::string_view text) {
    try {
        return parse_result(json::parse(text));
    } catch (const json::exception& e) {
        throw InputError(std::string("result document: ") + e.what());
    }
}

std::string format_number(double value) {
    if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    std::string text = buf;
    if (text.find('.') != std::string::npos) {
        text.erase(text.find_last_not_of('0') + 1);
        if (text.back() == '.') text.pop_back();
    }
    return text;
}

void write_trace(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << "co_iteration,upper_best,lower_best\n";
    for (const auto& r : rows)
        out << r.co_iteration << ',' << format_number(r.upper_best) << ',' << format_number(r.lower_best) << '\n';
}

std::string trace_to_text(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    write_trace(out, rows);
    return out.str();
}

std::vector<ConvergenceRow> parse_trace(std::string_view text) {
    std::vector<ConvergenceRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "co_iteration,upper_best,lower_best")
        throw InputError("trace: missing header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ConvergenceRow r;
        char c1 = 0, c2 = 0;
        std::istringstream ls(line);
        if (!(ls >> r.co_iteration >> c1 >> r.upper_best >> c2 >> r.lower_best) || c1 != ',' || c2 != ',')
            throw InputError("trace: malformed row '" + line + "'");
        rows.push_back(r);
    }
    return rows;
}

void write_result(const ResultDocument& doc, const std::vector<ConvergenceRow>& trace,
                  std::ostream* result_out, std::ostream* trace_out) {
    if (result_out) {
        *result_out << result_to_text(doc);
        result_out->flush();
        if (!*result_out) throw std::runtime_error("failed to write result document");
    }
    if (trace_out) {
        write_trace(*trace_out, trace);
        trace_out->flush();
        if (!*trace_out) throw std::runtime_error("failed to write convergence trace");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace tma
