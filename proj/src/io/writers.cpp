#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "locwave/io.hpp"

namespace locwave::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) return "nan";
    return {buf, ptr};
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json report_json(const LocalizationReport& rep) {
    return {{"region", static_cast<int>(rep.region)},
            {"region_name", std::string(region_name(rep.region))},
            {"lambda1_abs", rep.lambda1_abs},
            {"kappa", opt_json(rep.kappa)},
            {"c0", opt_json(rep.c0)}};
}

}  // namespace

void write_report_csv(std::ostream& os, const LocalizationReport& rep) {
    os << "region,region_name,lambda1_abs,kappa,c0\n";
    os << static_cast<int>(rep.region) << ',' << region_name(rep.region) << ','
       << format_double(rep.lambda1_abs) << ',' << opt(rep.kappa) << ',' << opt(rep.c0) << '\n';
}

void write_report_json(std::ostream& os, const LocalizationReport& rep) {
    os << report_json(rep).dump(2) << '\n';
}

void write_region_map_csv(std::ostream& os, const RegionMap& map) {
    os << "eta,omega,region,lambda1_abs\n";
    const auto& g = map.grid;
    for (std::size_t i = 0; i < g.eta_axis.size(); ++i) {
        const std::string eta = format_double(g.eta_axis[i]);
        for (std::size_t j = 0; j < g.omega_axis.size(); ++j) {
            const RegionCell& c = map.at(i, j);
            os << eta << ',' << format_double(g.omega_axis[j]) << ',' << static_cast<int>(c.region) << ','
               << format_double(c.lambda1_abs) << '\n';
        }
    }
}

void write_region_map_json(std::ostream& os, const RegionMap& map) {
    json regions = json::array();
    json lambdas = json::array();
    for (const auto& c : map.cells) {
        regions.push_back(static_cast<int>(c.region));
        lambdas.push_back(c.lambda1_abs);
    }
    json doc = {{"medium", {{"c_a", map.medium.c_a}, {"c_b", map.medium.c_b}, {"theta", map.medium.theta}}},
                {"eta", map.grid.eta_axis},
                {"omega", map.grid.omega_axis},
                {"layout", "row-major, eta outer"},
                {"region", regions},
                {"lambda1_abs", lambdas}};
    os << doc.dump() << '\n';
}

void write_profile_csv(std::ostream& os, const FieldProfile& prof) {
    os << "x,u,du\n";
    for (std::size_t i = 0; i < prof.x.size(); ++i) {
        os << format_double(prof.x[i]) << ',' << format_double(prof.u[i]) << ',' << format_double(prof.du[i]) << '\n';
    }
}

void write_field2d_csv(std::ostream& os, const Field2D& field) {
    os << "x,y,value\n";
    for (std::size_t i = 0; i < field.x.size(); ++i) {
        const std::string x = format_double(field.x[i]);
        for (std::size_t j = 0; j < field.y.size(); ++j) {
            os << x << ',' << format_double(field.y[j]) << ',' << format_double(field.at(i, j)) << '\n';
        }
    }
}

// boundary: interface (x = 0), cell (solid period line), material (dashed A|B line).
// material: the layer that starts at x, empty at the far end.
void write_layers_csv(std::ostream& os, double theta, int n_periods) {
    os << "x,boundary,material\n";
    for (int m = 0; m <= n_periods; ++m) {
        const double x0 = m;
        const char* kind = m == 0 ? "interface" : "cell";
        const bool last = m == n_periods;
        if (last) {
            os << format_double(x0) << ',' << kind << ",\n";
            break;
        }
        os << format_double(x0) << ',' << kind << ',' << (theta > 0.0 ? "A" : "B") << '\n';
        if (theta > 0.0 && theta < 1.0) os << format_double(x0 + theta) << ",material,B\n";
    }
}

void write_history_csv(std::ostream& os, const std::vector<double>& history) {
    os << "iteration,best_value\n";
    for (std::size_t k = 0; k < history.size(); ++k) os << k << ',' << format_double(history[k]) << '\n';
}

void write_best_json(std::ostream& os, const PsoResult& res, const LocalizationReport& rep,
                     std::uint64_t seed) {
    json doc = {{"position", {{"c_a", res.best_position[0]}, {"c_b", res.best_position[1]}, {"theta", res.best_position[2]}}},
                {"value", res.best_value},
                {"kappa", opt_json(rep.kappa)},
                {"c0", opt_json(rep.c0)},
                {"seed", seed},
                {"iterations", res.iterations},
                {"evaluations", res.evaluations}};
    os << doc.dump(2) << '\n';
}

std::vector<EnvelopeRow> envelope_table(double lambda1_abs_a, double lambda1_abs_b, int n_periods) {
    std::vector<EnvelopeRow> rows;
    double a = 1.0, b = 1.0;
    for (int m = 0; m <= n_periods; ++m) {
        rows.push_back({m, a, b});
        a *= lambda1_abs_a;
        b *= lambda1_abs_b;
    }
    return rows;
}

void write_envelope_csv(std::ostream& os, const std::vector<EnvelopeRow>& rows) {
    os << "period,envelope_a,envelope_b\n";
    for (const auto& r : rows) os << r.period << ',' << format_double(r.a) << ',' << format_double(r.b) << '\n';
}

void write_envelope_json(std::ostream& os, const std::vector<EnvelopeRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({{"period", r.period}, {"envelope_a", r.a}, {"envelope_b", r.b}});
    os << arr.dump(2) << '\n';
}

}  // namespace locwave::io
