#include <charconv>
#include <cmath>
#include <set>

#include <json.hpp>

#include "locwave/io.hpp"

namespace locwave::io {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, field + ": " + what);
}

// Walks one JSON object, rejecting keys nobody asked for.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) config_error(path_.empty() ? "<root>" : path_, "expected an object");
    }

    ~Section() = default;
    Section(const Section&) = delete;
    Section& operator=(const Section&) = delete;

    [[nodiscard]] bool has(const std::string& key) {
        seen_.insert(key);
        return node_.contains(key) && !node_.at(key).is_null();
    }

    [[nodiscard]] std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& raw(const std::string& key) { return (seen_.insert(key), node_.at(key)); }

    double number(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number()) config_error(field(key), "expected a number, got " + v.dump());
        const double d = v.get<double>();
        if (!std::isfinite(d)) config_error(field(key), "expected a finite number");
        return d;
    }

    void number(const std::string& key, double& dst) {
        if (has(key)) dst = number(key);
    }

    void integer(const std::string& key, int& dst) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_number_integer()) config_error(field(key), "expected an integer, got " + v.dump());
        dst = v.get<int>();
    }

    void count(const std::string& key, std::size_t& dst) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_number_unsigned()) config_error(field(key), "expected a non-negative integer, got " + v.dump());
        dst = v.get<std::size_t>();
    }

    void seed(const std::string& key, std::uint64_t& dst) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_number_unsigned()) config_error(field(key), "expected a non-negative integer, got " + v.dump());
        dst = v.get<std::uint64_t>();
    }

    void boolean(const std::string& key, bool& dst) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_boolean()) config_error(field(key), "expected true or false, got " + v.dump());
        dst = v.get<bool>();
    }

    void interval(const std::string& key, Interval& dst) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            config_error(field(key), "expected [lo, hi], got " + v.dump());
        }
        dst = {v[0].get<double>(), v[1].get<double>()};
    }

    void numbers(const std::string& key, std::optional<std::vector<double>>& dst) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_array()) config_error(field(key), "expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) config_error(field(key), "expected an array of numbers, got element " + e.dump());
            out.push_back(e.get<double>());
        }
        dst = std::move(out);
    }

    void finish() const {
        for (const auto& [k, _] : node_.items()) {
            if (!seen_.count(k)) config_error(field(k), "unknown key");
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

MediumConfig read_medium(const json& node, const std::string& path) {
    Section s(node, path);
    MediumConfig m;
    for (const char* key : {"c_a", "c_b", "theta"}) {
        if (!s.has(key)) config_error(s.field(key), "required");
    }
    m.c_a = s.number("c_a");
    m.c_b = s.number("c_b");
    m.theta = s.number("theta");
    if (s.has("c0")) m.c0 = s.number("c0");
    s.finish();
    try {
        m.validate();
    } catch (const Error& e) {
        config_error(path, e.what());
    }
    return m;
}

WaveParams read_wave(const json& node) {
    Section s(node, "wave");
    for (const char* key : {"omega", "eta"}) {
        if (!s.has(key)) config_error(s.field(key), "required");
    }
    WaveParams w{s.number("omega"), s.number("eta")};
    s.finish();
    try {
        w.validate();
    } catch (const Error& e) {
        config_error("wave", e.what());
    }
    return w;
}

void set_path(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        config_error("--set", "expected key=value, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;  // kept as a string; typed readers reject it

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) config_error(key, "empty path component");
        if (!node->is_object()) config_error(key, "cannot descend into a non-object");
        if (dot == std::string::npos) {
            (*node)[part] = std::move(value);
            return;
        }
        node = &(*node)[part];
        if (node->is_null()) *node = json::object();
        start = dot + 1;
    }
}

}  // namespace

std::optional<Command> parse_command(std::string_view s) {
    if (s == "classify") return Command::Classify;
    if (s == "scan") return Command::Scan;
    if (s == "mode") return Command::Mode;
    if (s == "optimize") return Command::Optimize;
    if (s == "compare") return Command::Compare;
    return std::nullopt;
}

ScanGrid ScanSpec::grid() const {
    ScanGrid g;
    g.eta_axis = eta_values ? *eta_values : centred_axis(eta_min, eta_max, eta_count);
    g.omega_axis = omega_values ? *omega_values : centred_axis(omega_min, omega_max, omega_count);
    return g;
}

void RunConfig::validate() const {
    const bool needs_medium = command == Command::Classify || command == Command::Scan ||
                              command == Command::Mode || command == Command::Compare;
    const bool needs_wave = command != Command::Scan;
    if (needs_medium && !medium) config_error("medium", "required for this command");
    if (command == Command::Compare && !medium_b) config_error("medium_b", "required for compare");
    if (needs_wave && !wave) config_error("wave", "required for this command");
    try {
        if (command == Command::Scan) scan.grid().validate();
        if (command == Command::Optimize) pso.validate();
    } catch (const Error& e) {
        config_error(command == Command::Scan ? "scan" : "pso", e.what());
    }
    if (command == Command::Mode) {
        if (mode.profile.n_periods < 1) config_error("mode.n_periods", "must be >= 1");
        if (mode.profile.samples_per_layer < 1) config_error("mode.samples_per_layer", "must be >= 1");
        if (!(mode.profile.x_min <= 0.0)) config_error("mode.x_min", "must be <= 0");
        if (mode.field2d && (mode.y_count < 1 || !(mode.y_max > 0.0))) {
            config_error("mode.y_count", "field2d needs y_count >= 1 and y_max > 0");
        }
    }
    if (command == Command::Compare && compare_periods < 0) config_error("compare.n_periods", "must be >= 0");
}

RunConfig build_run_config(Command command, const std::string& config_text,
                           const std::vector<std::string>& overrides,
                           std::optional<std::string> env_seed) {
    json doc = json::object();
    if (!config_text.empty()) {
        doc = json::parse(config_text, nullptr, false);
        if (doc.is_discarded()) config_error("--config", "not valid JSON");
    }
    if (!doc.is_object()) config_error("--config", "top level must be a JSON object");

    if (env_seed) {
        std::uint64_t seed = 0;
        const char* b = env_seed->data();
        const char* e = b + env_seed->size();
        auto [ptr, ec] = std::from_chars(b, e, seed);
        if (ec != std::errc() || ptr != e) config_error("LOCWAVE_SEED", "expected an unsigned integer, got '" + *env_seed + "'");
        if (!doc.contains("pso") || doc["pso"].is_null()) doc["pso"] = json::object();
        if (!doc["pso"].is_object()) config_error("pso", "expected an object");
        doc["pso"]["seed"] = seed;
    }
    for (const auto& o : overrides) set_path(doc, o);

    RunConfig cfg;
    cfg.command = command;
    Section root(doc, "");
    if (root.has("medium")) cfg.medium = read_medium(root.raw("medium"), "medium");
    if (root.has("medium_b")) cfg.medium_b = read_medium(root.raw("medium_b"), "medium_b");
    if (root.has("wave")) cfg.wave = read_wave(root.raw("wave"));

    if (root.has("scan")) {
        Section s(root.raw("scan"), "scan");
        s.number("eta_min", cfg.scan.eta_min);
        s.number("eta_max", cfg.scan.eta_max);
        s.count("eta_count", cfg.scan.eta_count);
        s.number("omega_min", cfg.scan.omega_min);
        s.number("omega_max", cfg.scan.omega_max);
        s.count("omega_count", cfg.scan.omega_count);
        s.numbers("eta_values", cfg.scan.eta_values);
        s.numbers("omega_values", cfg.scan.omega_values);
        s.finish();
    }
    if (root.has("mode")) {
        Section s(root.raw("mode"), "mode");
        s.integer("n_periods", cfg.mode.profile.n_periods);
        s.integer("samples_per_layer", cfg.mode.profile.samples_per_layer);
        s.number("x_min", cfg.mode.profile.x_min);
        s.boolean("field2d", cfg.mode.field2d);
        s.number("y_max", cfg.mode.y_max);
        s.count("y_count", cfg.mode.y_count);
        s.finish();
    }
    if (root.has("pso")) {
        Section s(root.raw("pso"), "pso");
        s.integer("swarm_size", cfg.pso.swarm_size);
        s.integer("max_iters", cfg.pso.max_iters);
        s.number("inertia", cfg.pso.inertia);
        s.number("cognitive", cfg.pso.cognitive);
        s.number("social", cfg.pso.social);
        s.seed("seed", cfg.pso.seed);
        s.interval("c_a_bounds", cfg.pso.bounds[0]);
        s.interval("c_b_bounds", cfg.pso.bounds[1]);
        s.interval("theta_bounds", cfg.pso.bounds[2]);
        s.number("kappa_min", cfg.pso.kappa_min);
        s.number("distinct_eps", cfg.pso.distinct_eps);
        s.finish();
    }
    if (root.has("compare")) {
        Section s(root.raw("compare"), "compare");
        s.integer("n_periods", cfg.compare_periods);
        s.finish();
    }
    root.finish();
    cfg.validate();
    return cfg;
}

}  // namespace locwave::io
