#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <locale>
#include <sstream>

#include <CLI11.hpp>

#include "locwave/io.hpp"

namespace locwave::io {

namespace fs = std::filesystem;

namespace {

void ensure_writable(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::InvalidArgument, "--out: cannot create '" + dir.string() + "': " + ec.message());
    const fs::path probe = dir / ".locwave_write_probe";
    {
        std::ofstream f(probe);
        if (!f) throw Error(ErrorCode::InvalidArgument, "--out: directory '" + dir.string() + "' is not writable");
    }
    fs::remove(probe, ec);
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    f.imbue(std::locale::classic());
    body(f);
    if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void print_report(std::ostream& out, const LocalizationReport& rep) {
    out << "region       " << region_name(rep.region) << '\n'
        << "|lambda1|    " << format_double(rep.lambda1_abs) << '\n'
        << "kappa        " << (rep.kappa ? format_double(*rep.kappa) : "-") << '\n'
        << "c0           " << (rep.c0 ? format_double(*rep.c0) : "-") << '\n';
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const LocalizationReport rep = classify(*cfg.medium, *cfg.wave);
    print_report(out, rep);
    if (cfg.format == Format::Json) {
        write_file(cfg.output_dir / "classify.json", [&](std::ostream& os) { write_report_json(os, rep); });
    } else {
        write_file(cfg.output_dir / "classify.csv", [&](std::ostream& os) { write_report_csv(os, rep); });
    }
    return rep.region == Region::Localized ? kExitOk : kExitNotLocalized;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
    const RegionMap map = scan_wave_plane(*cfg.medium, cfg.scan.grid());
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& c : map.cells) ++counts[static_cast<int>(c.region)];
    if (cfg.format == Format::Json) {
        write_file(cfg.output_dir / "region_map.json", [&](std::ostream& os) { write_region_map_json(os, map); });
    } else {
        write_file(cfg.output_dir / "region_map.csv", [&](std::ostream& os) { write_region_map_csv(os, map); });
    }
    out << "scanned " << map.cells.size() << " points: " << counts[0] << ' ' << region_name(Region::NoRightDecay)
        << ", " << counts[1] << ' ' << region_name(Region::RightDecayNoMatch) << ", " << counts[2] << ' '
        << region_name(Region::Localized) << '\n';
    return kExitOk;
}

int cmd_mode(const RunConfig& cfg, std::ostream& out) {
    const LocalizationReport rep = classify(*cfg.medium, *cfg.wave);
    print_report(out, rep);
    if (rep.region != Region::Localized) return kExitNotLocalized;

    const FieldProfile prof = field_profile(*cfg.medium, *cfg.wave, cfg.mode.profile);
    write_file(cfg.output_dir / "profile.csv", [&](std::ostream& os) { write_profile_csv(os, prof); });
    write_file(cfg.output_dir / "layers.csv",
               [&](std::ostream& os) { write_layers_csv(os, cfg.medium->theta, cfg.mode.profile.n_periods); });
    if (cfg.mode.field2d) {
        std::vector<double> y(cfg.mode.y_count);
        for (std::size_t j = 0; j < y.size(); ++j) {
            y[j] = y.size() == 1 ? 0.0 : cfg.mode.y_max * static_cast<double>(j) / static_cast<double>(y.size() - 1);
        }
        const Field2D f = field_2d(prof, *cfg.wave, y);
        write_file(cfg.output_dir / "field2d.csv", [&](std::ostream& os) { write_field2d_csv(os, f); });
    }
    out << "wrote " << prof.x.size() << " profile samples\n";
    return kExitOk;
}

int cmd_optimize(const RunConfig& cfg, std::ostream& out) {
    const PsoResult res = pso_minimize(*cfg.wave, cfg.pso);
    const MediumConfig best{res.best_position[0], res.best_position[1], res.best_position[2], std::nullopt};
    const LocalizationReport rep = classify(best, *cfg.wave);
    write_file(cfg.output_dir / "best.json", [&](std::ostream& os) { write_best_json(os, res, rep, cfg.pso.seed); });
    write_file(cfg.output_dir / "history.csv", [&](std::ostream& os) { write_history_csv(os, res.history); });
    out << "best c_a=" << format_double(best.c_a) << " c_b=" << format_double(best.c_b)
        << " theta=" << format_double(best.theta) << " |lambda1|=" << format_double(res.best_value) << '\n';
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    const LocalizationReport a = classify(*cfg.medium, *cfg.wave);
    const LocalizationReport b = classify(*cfg.medium_b, *cfg.wave);
    out << "medium:   " << region_name(a.region) << " |lambda1|=" << format_double(a.lambda1_abs) << '\n'
        << "medium_b: " << region_name(b.region) << " |lambda1|=" << format_double(b.lambda1_abs) << '\n';
    if (a.region != Region::Localized || b.region != Region::Localized) return kExitNotLocalized;
    const auto rows = envelope_table(a.lambda1_abs, b.lambda1_abs, cfg.compare_periods);
    if (cfg.format == Format::Json) {
        write_file(cfg.output_dir / "compare.json", [&](std::ostream& os) { write_envelope_json(os, rows); });
    } else {
        write_file(cfg.output_dir / "compare.csv", [&](std::ostream& os) { write_envelope_csv(os, rows); });
    }
    return kExitOk;
}

std::string read_text(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "--config: cannot read '" + p.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interface-localized TM modes in periodic layered media", "locwave"};
    std::string command;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    std::string format = "csv";
    app.add_option("command", command, "classify | scan | mode | optimize | compare")->required();
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--set", overrides, "override a config key, e.g. --set medium.c_a=2")->take_all();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    const auto cmd = parse_command(command);
    if (!cmd) {
        err << "error: unknown command '" << command << "'\n";
        return kExitConfig;
    }

    RunConfig cfg;
    try {
        const std::string text = config_path.empty() ? std::string() : read_text(config_path);
        std::optional<std::string> env_seed;
        if (const char* s = std::getenv("LOCWAVE_SEED")) env_seed = s;
        cfg = build_run_config(*cmd, text, overrides, env_seed);
        cfg.output_dir = out_dir;
        cfg.format = format == "json" ? Format::Json : Format::Csv;
        ensure_writable(cfg.output_dir);
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        switch (*cmd) {
            case Command::Classify: return cmd_classify(cfg, out);
            case Command::Scan: return cmd_scan(cfg, out);
            case Command::Mode: return cmd_mode(cfg, out);
            case Command::Optimize: return cmd_optimize(cfg, out);
            case Command::Compare: return cmd_compare(cfg, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::NotLocalized: return kExitNotLocalized;
            case ErrorCode::NoFeasiblePoint: return kExitInfeasible;
            default: return kExitConfig;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitConfig;
}

}  // namespace locwave::io
