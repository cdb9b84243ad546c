#include "huygens/config.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

namespace huygens::cli {

namespace {

using nlohmann::json;

std::string join_problems(const std::vector<std::string>& problems) {
    std::ostringstream out;
    out << "config error";
    for (const std::string& p : problems) out << "\n  - " << p;
    return out.str();
}

// Tracks consumed keys so leftovers can be rejected, and collects every
// problem instead of stopping at the first.
class Reader {
public:
    Reader(const json& j, std::string path, std::vector<std::string>& errors)
        : j_(j), path_(std::move(path)), errors_(errors) {}

    void err(const std::string& key, const std::string& msg) {
        errors_.push_back(path_ + key + ": " + msg);
    }

    bool has(const char* key) const { return j_.contains(key); }

    std::optional<json> take(const char* key) {
        consumed_.insert(key);
        if (!j_.contains(key)) return std::nullopt;
        return j_.at(key);
    }

    double num(const char* key, double fallback = 0.0) {
        auto v = take(key);
        if (!v) {
            err(key, "missing required number");
            return fallback;
        }
        if (!v->is_number()) {
            err(key, "must be a number");
            return fallback;
        }
        return v->get<double>();
    }

    double num_opt(const char* key, double fallback) {
        auto v = take(key);
        if (!v) return fallback;
        if (!v->is_number()) {
            err(key, "must be a number");
            return fallback;
        }
        return v->get<double>();
    }

    int integer(const char* key, int fallback = 0) {
        auto v = take(key);
        if (!v) {
            err(key, "missing required integer");
            return fallback;
        }
        if (!v->is_number_integer()) {
            err(key, "must be an integer");
            return fallback;
        }
        return v->get<int>();
    }

    int integer_opt(const char* key, int fallback) {
        auto v = take(key);
        if (!v) return fallback;
        if (!v->is_number_integer()) {
            err(key, "must be an integer");
            return fallback;
        }
        return v->get<int>();
    }

    std::string str(const char* key, const std::string& fallback = {}) {
        auto v = take(key);
        if (!v) {
            err(key, "missing required string");
            return fallback;
        }
        if (!v->is_string()) {
            err(key, "must be a string");
            return fallback;
        }
        return v->get<std::string>();
    }

    std::string str_opt(const char* key, const std::string& fallback) {
        auto v = take(key);
        if (!v) return fallback;
        if (!v->is_string()) {
            err(key, "must be a string");
            return fallback;
        }
        return v->get<std::string>();
    }

    std::array<double, 2> pair(const char* key) {
        auto v = take(key);
        if (!v || !v->is_array() || v->size() != 2 || !(*v)[0].is_number() ||
            !(*v)[1].is_number()) {
            if (!v) {
                err(key, "missing required [a, b] pair");
            } else {
                err(key, "must be an array of two numbers");
            }
            return {0.0, 1.0};
        }
        return {(*v)[0].get<double>(), (*v)[1].get<double>()};
    }

    std::vector<double> num_array(const char* key) {
        auto v = take(key);
        std::vector<double> out;
        if (!v) {
            err(key, "missing required number array");
            return out;
        }
        if (!v->is_array()) {
            err(key, "must be an array of numbers");
            return out;
        }
        for (const auto& item : *v) {
            if (!item.is_number()) {
                err(key, "must contain only numbers");
                return {};
            }
            out.push_back(item.get<double>());
        }
        return out;
    }

    json object(const char* key) {
        auto v = take(key);
        if (!v || !v->is_object()) {
            if (!v) {
                err(key, "missing required object");
            } else {
                err(key, "must be an object");
            }
            return json::object();
        }
        return *v;
    }

    std::optional<json> object_opt(const char* key) {
        auto v = take(key);
        if (!v) return std::nullopt;
        if (!v->is_object()) {
            err(key, "must be an object");
            return std::nullopt;
        }
        return *v;
    }

    std::vector<std::string> str_array_opt(const char* key) {
        auto v = take(key);
        std::vector<std::string> out;
        if (!v) return out;
        if (!v->is_array()) {
            err(key, "must be an array of strings");
            return out;
        }
        for (const auto& item : *v) {
            if (!item.is_string()) {
                err(key, "must contain only strings");
                return {};
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    void reject_unknown() {
        for (const auto& item : j_.items()) {
            if (!consumed_.count(item.key())) err(item.key(), "unknown key");
        }
    }

    const json& raw() const { return j_; }
    std::vector<std::string>& errors() { return errors_; }
    const std::string& path() const { return path_; }

private:
    const json& j_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> consumed_;
};

GridSpec parse_grid(Reader& parent, const char* key) {
    GridSpec grid;
    const json body = parent.object(key);
    Reader r(body, parent.path() + key + ".", parent.errors());
    grid.min = r.num("min");
    grid.max = r.num("max");
    grid.step = r.num("step", 1.0);
    if (!(grid.step > 0.0)) r.err("step", "must be positive");
    if (grid.max < grid.min) r.err("max", "must not be below min");
    r.reject_unknown();
    return grid;
}

DetectorSpec parse_detector(Reader& parent, const char* key, double cavity_length) {
    DetectorSpec det;
    const json body = parent.object(key);
    Reader r(body, parent.path() + key + ".", parent.errors());
    det.gap = r.num("gap", 1.0);
    det.coupling = r.num("coupling");
    det.position = r.num("position");
    const auto window = r.pair("window");
    det.t_on = window[0];
    det.t_off = window[1];
    if (!(det.gap > 0.0)) r.err("gap", "must be positive");
    if (!(det.coupling >= 0.0) || !std::isfinite(det.coupling)) {
        r.err("coupling", "must be a non-negative finite number");
    }
    if (cavity_length > 0.0 && !(det.position >= 0.0 && det.position <= cavity_length)) {
        r.err("position", "must lie inside the cavity [0, L]");
    }
    if (!(det.t_on >= 0.0 && det.t_on < det.t_off)) {
        r.err("window", "must satisfy 0 <= t_on < t_off");
    }
    r.reject_unknown();
    return det;
}

SenderInit parse_sender_init(std::vector<std::string>& errors, const json& j, const std::string& path) {
    SenderInit init;
    Reader r(j, path, errors);
    const std::string type = r.str("type", "displaced");
    if (type == "displaced") {
        init = SenderInit();
        const auto mean = r.pair("mean");
        init.mean = Eigen::Vector2d(mean[0], mean[1]);
    } else if (type == "thermal") {
        init.kind = SenderKind::thermal;
        init.gap_over_temp = r.num("gap_over_temp", 1.0);
        if (!(init.gap_over_temp > 0.0)) r.err("gap_over_temp", "must be positive");
    } else if (type == "squeezed") {
        init.kind = SenderKind::squeezed;
        init.squeeze_r = r.num("r");
        init.squeeze_theta = r.num("theta");
        if (!std::isfinite(init.squeeze_r) || !std::isfinite(init.squeeze_theta)) {
            r.err("r", "squeeze parameters must be finite");
        }
    } else {
        r.err("type", "must be one of displaced | thermal | squeezed");
    }
    r.reject_unknown();
    return init;
}

ScenarioConfig parse_scenario_body(Reader& r) {
    ScenarioConfig cfg;
    double length = 1.0;
    int n_modes = 1;
    {
        const json cavity_body = r.object("cavity");
        Reader cav(cavity_body, r.path() + "cavity.", r.errors());
        length = cav.num("length", 1.0);
        n_modes = cav.integer("n_modes", 1);
        if (!(length > 0.0)) cav.err("length", "must be positive");
        if (n_modes < 1) cav.err("n_modes", "must be at least 1");
        cav.reject_unknown();
    }
    cfg.cavity = CavitySpec(length > 0.0 ? length : 1.0, n_modes >= 1 ? n_modes : 1);
    cfg.sender = parse_detector(r, "sender", cfg.cavity.length);
    cfg.receiver = parse_detector(r, "receiver", cfg.cavity.length);
    if (auto init = r.object_opt("sender_init")) {
        cfg.init = parse_sender_init(r.errors(), *init, r.path() + "sender_init.");
    } else {
        r.err("sender_init", "missing required object");
    }
    if (auto step = r.take("step")) {
        if (!step->is_number()) {
            r.err("step", "must be a number");
        } else if (const double value = step->get<double>(); !(value > 0.0)) {
            r.err("step", "must be positive");
        } else {
            cfg.step = value;
        }
    }
    if (cfg.sender.coupling != 0.0 && cfg.sender.t_off > cfg.receiver.t_on) {
        r.err("receiver.window", "receiver must not couple before the sender decouples");
    }
    return cfg;
}

SweepParameter parse_parameter(Reader& r, const std::string& text) {
    if (text == "T2") return SweepParameter::t2;
    if (text == "receiver_position") return SweepParameter::receiver_position;
    if (text == "T_A") return SweepParameter::sender_window;
    if (text == "sender_init") return SweepParameter::sender_init;
    r.err("parameter", "must be one of T2 | receiver_position | T_A | sender_init");
    return SweepParameter::t2;
}

json grid_to_json(const GridSpec& grid) {
    return json{{"min", grid.min}, {"max", grid.max}, {"step", grid.step}};
}

json detector_to_json(const DetectorSpec& det) {
    return json{{"gap", det.gap},
                {"coupling", det.coupling},
                {"position", det.position},
                {"window", json::array({det.t_on, det.t_off})}};
}

json init_to_json(const SenderInit& init) {
    switch (init.kind) {
        case SenderKind::displaced:
            return json{{"type", "displaced"}, {"mean", json::array({init.mean(0), init.mean(1)})}};
        case SenderKind::thermal:
            return json{{"type", "thermal"}, {"gap_over_temp", init.gap_over_temp}};
        case SenderKind::squeezed:
            return json{{"type", "squeezed"}, {"r", init.squeeze_r}, {"theta", init.squeeze_theta}};
    }
    throw std::logic_error("init_to_json: unknown kind");
}

void scenario_body_to_json(json& j, const ScenarioConfig& cfg) {
    j["cavity"] = json{{"length", cfg.cavity.length}, {"n_modes", cfg.cavity.n_modes}};
    j["sender"] = detector_to_json(cfg.sender);
    j["receiver"] = detector_to_json(cfg.receiver);
    j["sender_init"] = init_to_json(cfg.init);
    if (cfg.step) j["step"] = *cfg.step;
}

const char* parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::t2: return "T2";
        case SweepParameter::receiver_position: return "receiver_position";
        case SweepParameter::sender_window: return "T_A";
        case SweepParameter::sender_init: return "sender_init";
    }
    throw std::logic_error("parameter_name: unknown parameter");
}

}  // namespace

std::vector<double> GridSpec::values() const {
    if (!(step > 0.0)) throw std::invalid_argument("GridSpec: step must be positive");
    if (max < min) throw std::invalid_argument("GridSpec: max below min");
    const int count = static_cast<int>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(min + step * static_cast<double>(i));
    return out;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("syntax error: ") + e.what()});
    }
    if (!j.is_object()) throw ConfigError({"config root must be a JSON object"});

    std::vector<std::string> errors;
    Reader r(j, "", errors);
    RunConfig cfg;
    cfg.subcommand = r.str("subcommand");
    cfg.notes = r.str_array_opt("notes");

    if (cfg.subcommand == "commutator") {
        CommutatorJob job;
        job.length = r.num_opt("length", 1.0);
        job.n_modes = r.integer_opt("n_modes", 200);
        job.form = r.str_opt("form", "closed");
        job.smoothing = r.str_opt("smoothing", "fejer");
        job.t1 = r.num_opt("t1", 0.0);
        job.x1 = r.num("x1");
        job.t_grid = parse_grid(r, "t_grid");
        job.x_grid = parse_grid(r, "x_grid");
        if (!(job.length > 0.0)) r.err("length", "must be positive");
        if (job.n_modes < 1) r.err("n_modes", "must be at least 1");
        if (job.form != "closed" && job.form != "modesum") {
            r.err("form", "must be closed or modesum");
        }
        if (job.smoothing != "none" && job.smoothing != "fejer") {
            r.err("smoothing", "must be none or fejer");
        }
        if (!(job.x1 >= 0.0 && job.x1 <= job.length)) r.err("x1", "must lie inside [0, L]");
        cfg.job = job;
    } else if (cfg.subcommand == "energy-density") {
        EnergyDensityJob job;
        job.gap = r.num("gap");
        job.coupling = r.num("coupling");
        job.duration = r.num("duration");
        job.excited_weight = r.num("excited_weight");
        job.t_slice = r.num("t_slice");
        job.x_grid = parse_grid(r, "x_grid");
        if (!(job.gap > 0.0)) r.err("gap", "must be positive");
        if (!(job.coupling >= 0.0)) r.err("coupling", "must be non-negative");
        if (!(job.duration > 0.0)) r.err("duration", "must be positive");
        if (!(job.excited_weight >= 0.0 && job.excited_weight <= 1.0)) {
            r.err("excited_weight", "must lie in [0, 1]");
        }
        cfg.job = job;
    } else if (cfg.subcommand == "total-energy") {
        TotalEnergyJob job;
        job.gap = r.num("gap");
        job.coupling = r.num("coupling");
        job.excited_weight = r.num("excited_weight");
        job.omega_t_grid = parse_grid(r, "omega_t_grid");
        if (!(job.gap > 0.0)) r.err("gap", "must be positive");
        if (!(job.coupling >= 0.0)) r.err("coupling", "must be non-negative");
        if (!(job.excited_weight >= 0.0 && job.excited_weight <= 1.0)) {
            r.err("excited_weight", "must lie in [0, 1]");
        }
        if (job.omega_t_grid.min <= 0.0) r.err("omega_t_grid.min", "must be positive");
        cfg.job = job;
    } else if (cfg.subcommand == "classical-demo") {
        ClassicalJob job;
        job.grid_min = r.num("grid_min");
        job.grid_max = r.num("grid_max");
        job.dx = r.num("dx");
        job.bump_amplitude = r.num("bump_amplitude");
        job.bump_center = r.num("bump_center");
        job.bump_width = r.num("bump_width");
        job.t_grid = parse_grid(r, "t_grid");
        job.x_grid = parse_grid(r, "x_grid");
        if (!(job.dx > 0.0)) r.err("dx", "must be positive");
        if (!(job.grid_max > job.grid_min)) r.err("grid_max", "must exceed grid_min");
        if (!(job.bump_width > 0.0)) r.err("bump_width", "must be positive");
        cfg.job = job;
    } else if (cfg.subcommand == "scenario" || cfg.subcommand == "sweep") {
        const bool is_sweep = cfg.subcommand == "sweep" || r.has("parameter");
        if (is_sweep) {
            SweepJob job;
            job.config = parse_scenario_body(r);
            job.parameter = parse_parameter(r, r.str("parameter"));
            if (job.parameter == SweepParameter::sender_init) {
                auto values = r.take("init_values");
                if (!values || !values->is_array() || values->empty()) {
                    r.err("init_values", "missing non-empty array of sender_init objects");
                } else {
                    for (std::size_t i = 0; i < values->size(); ++i) {
                        job.init_values.push_back(parse_sender_init(
                            errors, (*values)[i], "init_values[" + std::to_string(i) + "]."));
                    }
                }
            } else {
                job.values = r.num_array("values");
                if (job.values.empty()) r.err("values", "must be a non-empty number array");
            }
            cfg.job = job;
        } else {
            ScenarioJob job;
            job.config = parse_scenario_body(r);
            cfg.job = job;
        }
    } else if (cfg.subcommand == "oracle") {
        OracleJob job;
        const double length = r.num_opt("length", 1.0);
        job.config.mode_j = r.integer_opt("mode_j", 1);
        if (!(length > 0.0)) r.err("length", "must be positive");
        if (job.config.mode_j < 1) r.err("mode_j", "must be at least 1");
        job.config.cavity = CavitySpec(length > 0.0 ? length : 1.0,
                                       job.config.mode_j >= 1 ? job.config.mode_j : 1);
        job.config.gap = r.num("gap");
        job.config.coupling = r.num("coupling");
        job.config.position = r.num("position");
        job.config.n_max = r.integer_opt("n_max", 15);
        const auto window = r.pair("window");
        job.config.t0 = window[0];
        job.config.t1 = window[1];
        job.config.step_periods = r.num_opt("step_periods", 1e-3);
        const auto mean = r.pair("detector_mean");
        job.detector_mean = Eigen::Vector2d(mean[0], mean[1]);
        if (!(job.config.gap > 0.0)) r.err("gap", "must be positive");
        if (!(job.config.coupling >= 0.0)) r.err("coupling", "must be non-negative");
        if (!(job.config.position >= 0.0 && job.config.position <= length)) {
            r.err("position", "must lie inside [0, L]");
        }
        if (job.config.n_max < 8) r.err("n_max", "must be at least 8");
        if (!(window[0] <= window[1])) r.err("window", "must satisfy t0 <= t1");
        if (!(job.config.step_periods > 0.0)) r.err("step_periods", "must be positive");
        cfg.job = job;
    } else {
        if (cfg.subcommand.empty()) {
            // already reported as missing
        } else {
            errors.push_back("subcommand: unknown value '" + cfg.subcommand + "'");
        }
    }

    r.reject_unknown();
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    j["subcommand"] = cfg.subcommand;
    if (!cfg.notes.empty()) j["notes"] = cfg.notes;

    if (const auto* job = std::get_if<CommutatorJob>(&cfg.job)) {
        j["length"] = job->length;
        j["n_modes"] = job->n_modes;
        j["form"] = job->form;
        j["smoothing"] = job->smoothing;
        j["t1"] = job->t1;
        j["x1"] = job->x1;
        j["t_grid"] = grid_to_json(job->t_grid);
        j["x_grid"] = grid_to_json(job->x_grid);
    } else if (const auto* job = std::get_if<EnergyDensityJob>(&cfg.job)) {
        j["gap"] = job->gap;
        j["coupling"] = job->coupling;
        j["duration"] = job->duration;
        j["excited_weight"] = job->excited_weight;
        j["t_slice"] = job->t_slice;
        j["x_grid"] = grid_to_json(job->x_grid);
    } else if (const auto* job = std::get_if<TotalEnergyJob>(&cfg.job)) {
        j["gap"] = job->gap;
        j["coupling"] = job->coupling;
        j["excited_weight"] = job->excited_weight;
        j["omega_t_grid"] = grid_to_json(job->omega_t_grid);
    } else if (const auto* job = std::get_if<ClassicalJob>(&cfg.job)) {
        j["grid_min"] = job->grid_min;
        j["grid_max"] = job->grid_max;
        j["dx"] = job->dx;
        j["bump_amplitude"] = job->bump_amplitude;
        j["bump_center"] = job->bump_center;
        j["bump_width"] = job->bump_width;
        j["t_grid"] = grid_to_json(job->t_grid);
        j["x_grid"] = grid_to_json(job->x_grid);
    } else if (const auto* job = std::get_if<ScenarioJob>(&cfg.job)) {
        scenario_body_to_json(j, job->config);
    } else if (const auto* job = std::get_if<SweepJob>(&cfg.job)) {
        scenario_body_to_json(j, job->config);
        j["parameter"] = parameter_name(job->parameter);
        if (job->parameter == SweepParameter::sender_init) {
            json arr = json::array();
            for (const SenderInit& init : job->init_values) arr.push_back(init_to_json(init));
            j["init_values"] = arr;
        } else {
            j["values"] = job->values;
        }
    } else if (const auto* job = std::get_if<OracleJob>(&cfg.job)) {
        j["length"] = job->config.cavity.length;
        j["mode_j"] = job->config.mode_j;
        j["gap"] = job->config.gap;
        j["coupling"] = job->config.coupling;
        j["position"] = job->config.position;
        j["n_max"] = job->config.n_max;
        j["window"] = json::array({job->config.t0, job->config.t1});
        j["step_periods"] = job->config.step_periods;
        j["detector_mean"] = json::array({job->detector_mean(0), job->detector_mean(1)});
    }
    return j.dump(2) + "\n";
}

}  // namespace huygens::cli
