#include "lnss/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int cmd_run(const std::string& config_path, const std::string& case_spec,
            std::uint64_t seed_override, bool has_seed, const std::string& out_override) {
    lnss::ScenarioConfig cfg = lnss::load_config(config_path);
    if (!out_override.empty()) cfg.output_dir = out_override;
    if (has_seed) cfg.seeds = {seed_override};

    if (!case_spec.empty()) {
        // ORBIT:CLOCK:M selects a single case.
        std::istringstream ss(case_spec);
        std::string orbit, clock, m_str;
        if (!std::getline(ss, orbit, ':') || !std::getline(ss, clock, ':') ||
            !std::getline(ss, m_str, ':')) {
            std::cerr << "error: --case must look like ORBIT:CLOCK:M\n";
            return 2;
        }
        cfg.orbits = {lnss::orbit_from_name(orbit)};
        lnss::clock_by_name(clock);
        cfg.clocks = {clock};
        cfg.m_values = {std::stoi(m_str)};
    }

    const auto results = lnss::run_sweep(cfg, true);
    int failures = 0;
    for (const auto& r : results) {
        if (!r.ok()) {
            ++failures;
            std::cerr << "FAILED " << r.orbit << ":" << r.clock << ":m" << r.m << " — "
                      << r.error << '\n';
            continue;
        }
        std::cout << r.orbit << ":" << r.clock << ":m" << r.m << ":s" << r.seed
                  << "  ecop=" << r.max_ecop_s << "s vis1=" << r.vis1_pct
                  << "% vis4=" << r.vis4_pct << "% rms_bias=" << r.rms_bias_us
                  << "us uere=" << r.uere_m << "m\n";
    }
    std::cout << "outputs written to " << cfg.output_dir << '\n';
    return failures == 0 ? 0 : 1;
}

int cmd_validate(const std::string& config_path) {
    try {
        const auto cfg = lnss::load_config(config_path);
        std::cout << "config OK: " << cfg.orbits.size() << " orbit(s), "
                  << cfg.clocks.size() << " clock(s), " << cfg.m_values.size()
                  << " m value(s), " << cfg.seeds.size() << " seed(s), "
                  << cfg.duration_days << " day(s)\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return 1;
    }
}

int cmd_almanac_info(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << '\n';
        return 1;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const auto records = lnss::parse_yuma(buf.str());
    const auto sats = lnss::assign_blocks(records);
    std::cout << records.size() << " record(s)\n";
    for (const auto& s : sats) {
        const auto& r = s.elements;
        std::cout << "PRN " << r.prn << "  block " << lnss::block_name(s.block)
                  << "  a=" << r.sqrt_a * r.sqrt_a / 1000.0 << " km  e=" << r.eccentricity
                  << "  i=" << r.inclination_rad * lnss::RAD2DEG << " deg"
                  << (r.health != 0 ? "  [unhealthy]" : "") << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LNSS time-transfer case-study simulator"};
    app.require_subcommand(1);

    std::string config_path, case_spec, out_dir, almanac_path;
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "run the configured case studies");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--case", case_spec, "single case ORBIT:CLOCK:M");
    auto* seed_opt = run->add_option("--seed", seed, "override the seed list");
    run->add_option("--out", out_dir, "output directory override");

    auto* sweep = app.add_subcommand("sweep", "run the full case-study matrix");
    sweep->add_option("--config", config_path, "JSON config file")->required();

    auto* validate = app.add_subcommand("validate", "validate a config file");
    validate->add_option("--config", config_path, "JSON config file")->required();

    auto* info = app.add_subcommand("almanac-info", "summarize a YUMA almanac file");
    info->add_option("file", almanac_path, "YUMA almanac text file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, case_spec, seed, seed_opt->count() > 0, out_dir);
        }
        if (sweep->parsed()) {
            return cmd_run(config_path, "", 0, false, "");
        }
        if (validate->parsed()) return cmd_validate(config_path);
        if (info->parsed()) return cmd_almanac_info(almanac_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
