#include "lnss/scenario.hpp"

#include "lnss/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lnss {

using nlohmann::json;

std::string orbit_name(OrbitType o) {
    switch (o) {
        case OrbitType::ELFO: return "ELFO";
        case OrbitType::LLO: return "LLO";
        case OrbitType::PCO: return "PCO";
        case OrbitType::NRHO: return "NRHO";
    }
    return "UNKNOWN";
}

OrbitType orbit_from_name(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(), ::toupper);
    if (up == "ELFO") return OrbitType::ELFO;
    if (up == "LLO") return OrbitType::LLO;
    if (up == "PCO") return OrbitType::PCO;
    if (up == "NRHO") return OrbitType::NRHO;
    throw std::runtime_error("unknown orbit: " + name);
}

KeplerianElements orbit_elements(OrbitType o) {
    KeplerianElements el;
    el.mu = MU_MOON;
    switch (o) {
        case OrbitType::ELFO:
            el.semi_major_axis_km = MOON_RADIUS_KM + 9750.5;
            el.eccentricity = 0.7;
            el.inclination_deg = 63.5;
            el.arg_perigee_deg = 90.0;
            el.raan_deg = 0.0;
            el.mean_anomaly_deg = 0.0;
            break;
        case OrbitType::LLO:
            el.semi_major_axis_km = MOON_RADIUS_KM + 100.0;
            el.eccentricity = 0.0;
            el.inclination_deg = 28.5;
            break;
        case OrbitType::PCO:
            el.semi_major_axis_km = MOON_RADIUS_KM + 3000.0;
            el.eccentricity = 0.0;
            el.inclination_deg = 75.0;
            el.raan_deg = 90.0;
            break;
        case OrbitType::NRHO:
            throw std::runtime_error("NRHO has no Keplerian elements");
    }
    return el;
}

StateVector nrho_seed_state() {
    StateVector s;
    s.position_km = {-125.952, 120.961, 4357.681};
    s.velocity_kmps = {-0.042, 1.468, -0.003};
    s.frame = FrameId::MoonEmRotating;
    return s;
}

namespace {

ErrorBudget parse_budget(const json& j) {
    ErrorBudget b;
    b.sigma_uere_earth_m = j.value("sigma_uere_earth_m", b.sigma_uere_earth_m);
    b.sigma_eph_lnss_m = j.value("sigma_eph_lnss_m", b.sigma_eph_lnss_m);
    b.sigma_gd_m = j.value("sigma_gd_m", b.sigma_gd_m);
    b.sigma_rec_m = j.value("sigma_rec_m", b.sigma_rec_m);
    return b;
}

ReceiverConfig parse_receiver(const json& j) {
    ReceiverConfig r;
    r.peak_gain_dbi = j.value("peak_gain_dbi", r.peak_gain_dbi);
    r.beamwidth_3db_deg = j.value("beamwidth_3db_deg", r.beamwidth_3db_deg);
    r.gain_floor_dbi = j.value("gain_floor_dbi", r.gain_floor_dbi);
    r.lna_gain_db = j.value("lna_gain_db", r.lna_gain_db);
    r.noise_figure_db = j.value("noise_figure_db", r.noise_figure_db);
    r.antenna_noise_temp_k = j.value("antenna_noise_temp_k", r.antenna_noise_temp_k);
    r.acq_threshold_dbhz = j.value("acq_threshold_dbhz", r.acq_threshold_dbhz);
    r.min_track_duration_s = j.value("min_track_duration_s", r.min_track_duration_s);
    r.earth_mask_altitude_km = j.value("earth_mask_altitude_km", r.earth_mask_altitude_km);
    return r;
}

KeplerianElements parse_elements(const json& j, KeplerianElements base) {
    base.semi_major_axis_km = j.value("semi_major_axis_km", base.semi_major_axis_km);
    base.eccentricity = j.value("eccentricity", base.eccentricity);
    base.inclination_deg = j.value("inclination_deg", base.inclination_deg);
    base.arg_perigee_deg = j.value("arg_perigee_deg", base.arg_perigee_deg);
    base.raan_deg = j.value("raan_deg", base.raan_deg);
    base.mean_anomaly_deg = j.value("mean_anomaly_deg", base.mean_anomaly_deg);
    return base;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config: top level must be an object");

    ScenarioConfig cfg;
    cfg.start_epoch_utc = j.value("start_epoch_utc", cfg.start_epoch_utc);
    cfg.duration_days = j.value("duration_days", cfg.duration_days);
    cfg.grid_step_s = j.value("grid_step_s", cfg.grid_step_s);
    cfg.warmup_days = j.value("warmup_days", cfg.warmup_days);
    if (!(cfg.duration_days > 0.0)) throw std::runtime_error("config.duration_days: must be positive");
    if (!(cfg.grid_step_s > 0.0)) throw std::runtime_error("config.grid_step_s: must be positive");
    if (cfg.warmup_days < 0.0) throw std::runtime_error("config.warmup_days: must be non-negative");

    if (j.contains("orbits")) {
        cfg.orbits.clear();
        for (const auto& o : j.at("orbits")) {
            cfg.orbits.push_back(orbit_from_name(o.get<std::string>()));
        }
        if (cfg.orbits.empty()) throw std::runtime_error("config.orbits: empty list");
    }
    if (j.contains("clocks")) {
        cfg.clocks.clear();
        for (const auto& c : j.at("clocks")) {
            const auto name = c.get<std::string>();
            clock_by_name(name);  // validate against the catalog
            cfg.clocks.push_back(name);
        }
        if (cfg.clocks.empty()) throw std::runtime_error("config.clocks: empty list");
    }
    if (j.contains("m_values")) {
        cfg.m_values.clear();
        for (const auto& m : j.at("m_values")) {
            const int v = m.get<int>();
            if (v < 1) throw std::runtime_error("config.m_values: entries must be >= 1");
            cfg.m_values.push_back(v);
        }
        if (cfg.m_values.empty()) throw std::runtime_error("config.m_values: empty list");
    }
    if (j.contains("seeds")) {
        cfg.seeds.clear();
        for (const auto& s : j.at("seeds")) cfg.seeds.push_back(s.get<std::uint64_t>());
        if (cfg.seeds.empty()) throw std::runtime_error("config.seeds: empty list");
    }
    cfg.almanac_file = j.value("almanac_file", cfg.almanac_file);
    if (j.contains("pattern_files")) {
        for (const auto& [k, v] : j.at("pattern_files").items()) {
            cfg.pattern_files[k] = v.get<std::string>();
        }
    }
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    if (const char* env = std::getenv("LNSS_OUTPUT_DIR")) {
        cfg.output_dir = env;
    }
    if (j.contains("budget")) cfg.budget = parse_budget(j.at("budget"));
    if (j.contains("receiver")) cfg.receiver = parse_receiver(j.at("receiver"));
    if (j.contains("orbit_overrides")) {
        for (const auto& [k, v] : j.at("orbit_overrides").items()) {
            const OrbitType o = orbit_from_name(k);
            if (o == OrbitType::NRHO) {
                throw std::runtime_error("config.orbit_overrides: NRHO is not Keplerian");
            }
            cfg.orbit_overrides[orbit_name(o)] = parse_elements(v, orbit_elements(o));
        }
    }

    // Referenced files must exist at load time.
    if (!cfg.almanac_file.empty() && !std::filesystem::exists(cfg.almanac_file)) {
        throw std::runtime_error("config.almanac_file: not found: " + cfg.almanac_file);
    }
    for (const auto& [block, path] : cfg.pattern_files) {
        if (!std::filesystem::exists(path)) {
            throw std::runtime_error("config.pattern_files." + block + ": not found: " + path);
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<GpsSatellite> build_gps_segment(const ScenarioConfig& cfg,
                                            std::uint64_t seed) {
    std::vector<AlmanacRecord> records;
    if (cfg.almanac_file.empty()) {
        records = synthesize_constellation(6, 31, seed);
    } else {
        std::ifstream in(cfg.almanac_file);
        std::stringstream buf;
        buf << in.rdbuf();
        records = parse_yuma(buf.str());
    }
    auto segment = assign_blocks(records);
    for (auto& sat : segment) {
        const auto it = cfg.pattern_files.find(block_name(sat.block));
        if (it != cfg.pattern_files.end()) {
            double power = sat.transmit_power_dbw;
            sat.pattern = load_pattern_csv(it->second, &power);
            sat.transmit_power_dbw = power;
        }
    }
    return segment;
}

Trajectory build_lnss_trajectory(const ScenarioConfig& cfg, OrbitType orbit) {
    const double duration_s = cfg.duration_days * 86400.0;
    if (orbit != OrbitType::NRHO) {
        KeplerianElements el = orbit_elements(orbit);
        const auto it = cfg.orbit_overrides.find(orbit_name(orbit));
        if (it != cfg.orbit_overrides.end()) el = it->second;
        const StateVector s0 = kepler_to_cartesian(el, FrameId::MoonInertial, Epoch{});
        return propagate_numeric(s0, duration_s, cfg.forces, cfg.ephemeris,
                                 cfg.grid_step_s);
    }

    // NRHO: correct the rotating-frame seed to a CR3BP periodic orbit, then
    // propagate and rotate each sample into the Moon-inertial frame.
    const double lu = cfg.ephemeris.em_distance_km;
    const double tu = 1.0 / cfg.ephemeris.em_rate_radps;
    const double mu = EARTH_MOON_MASS_RATIO;

    const StateVector seed = nrho_seed_state();
    Cr3bpState guess;
    guess.mass_ratio = mu;
    guess.position = seed.position_km / lu + Eigen::Vector3d(1.0 - mu, 0.0, 0.0);
    guess.velocity = seed.velocity_kmps * tu / lu;
    const PeriodicOrbit orbit_sol = refine_periodic_nrho(guess, 0.75);

    const double step_nd = cfg.grid_step_s / tu;
    const double duration_nd = duration_s / tu;
    const auto samples = propagate_cr3bp(orbit_sol.initial_state, duration_nd, step_nd);

    Trajectory traj;
    traj.sample_step_s = cfg.grid_step_s;
    traj.samples.reserve(samples.size());
    for (const auto& s : samples) {
        const Epoch epoch(s.time * tu);
        StateVector rot;
        rot.frame = FrameId::MoonEmRotating;
        rot.epoch = epoch;
        rot.position_km = (s.state.position - Eigen::Vector3d(1.0 - mu, 0.0, 0.0)) * lu;
        rot.velocity_kmps = s.state.velocity * lu / tu;
        const auto [earth, sun] = earth_sun_states(cfg.ephemeris, epoch);
        (void)sun;
        traj.samples.push_back(em_rotating_to_moon_inertial(rot, earth));
    }
    return traj;
}

std::string result_to_json(const CaseStudyResult& r) {
    json j;
    j["orbit"] = r.orbit;
    j["clock"] = r.clock;
    j["m"] = r.m;
    j["seed"] = r.seed;
    if (!r.ok()) {
        j["error"] = r.error;
    } else {
        j["max_ecop_s"] = r.max_ecop_s;
        j["vis1_pct"] = r.vis1_pct;
        j["vis4_pct"] = r.vis4_pct;
        j["rms_bias_us"] = r.rms_bias_us;
        j["rms_drift_nsps"] = r.rms_drift_nsps;
        j["uere_m"] = r.uere_m;
    }
    return j.dump(2);
}

CaseStudyResult run_case(const ScenarioConfig& cfg, OrbitType orbit,
                         const std::string& clock, int m, std::uint64_t seed,
                         const std::string& out_dir,
                         const VisibilityTimeline* prebuilt_timeline) {
    CaseStudyResult result;
    result.orbit = orbit_name(orbit);
    result.clock = clock;
    result.m = m;
    result.seed = seed;
    try {
        const ClockSpec spec = clock_by_name(clock);

        VisibilityTimeline local;
        const VisibilityTimeline* tl = prebuilt_timeline;
        if (tl == nullptr) {
            const Trajectory traj = build_lnss_trajectory(cfg, orbit);
            const auto segment = build_gps_segment(cfg);
            local = build_visibility_timeline(traj, segment, cfg.ephemeris, cfg.receiver);
            tl = &local;
        }

        result.max_ecop_s = max_ecop(*tl);
        result.vis1_pct = visibility_percent(*tl, 1);
        result.vis4_pct = visibility_percent(*tl, 4);

        const std::uint64_t case_seed =
            mix_seed(mix_seed(seed, static_cast<std::uint64_t>(orbit)),
                     std::hash<std::string>{}(clock));
        const ClockTruthSeries truth =
            simulate_truth(spec, tl->size(), cfg.grid_step_s, case_seed);

        FilterConfig fcfg;
        fcfg.tau_s = cfg.grid_step_s;
        fcfg.m = m;
        const FilterHistory history =
            run_filter(*tl, truth, spec, fcfg, cfg.budget, cfg.loop,
                       mix_seed(case_seed, static_cast<std::uint64_t>(m)));

        // Steady-state window: discard the warm-up period (when it fits).
        const double warmup_s = cfg.warmup_days * 86400.0;
        std::vector<double> bias_err, drift_err;
        for (const auto& row : history) {
            if (row.epoch_s < warmup_s && history.back().epoch_s > 2.0 * warmup_s) continue;
            bias_err.push_back(row.est_bias_m - row.true_bias_m);
            drift_err.push_back(row.est_drift_mps - row.true_drift_mps);
        }
        const double rms_bias_m = rms(bias_err);
        const double rms_drift_mps = rms(drift_err);
        result.rms_bias_us = rms_bias_m / SPEED_OF_LIGHT * 1e6;
        result.rms_drift_nsps = rms_drift_mps / SPEED_OF_LIGHT * 1e9;
        result.uere_m = lunar_uere(rms_bias_m, cfg.budget).total_m;

        if (!out_dir.empty()) {
            const std::filesystem::path dir =
                std::filesystem::path(out_dir) /
                (result.orbit + "_" + clock + "_m" + std::to_string(m) + "_s" +
                 std::to_string(seed));
            std::filesystem::create_directories(dir);
            write_history_csv(history, (dir / "history.csv").string());
            std::ofstream mj(dir / "metrics.json");
            mj << result_to_json(result) << '\n';
        }
    } catch (const std::exception& e) {
        result.error = std::string(e.what()) + " [case " + result.orbit + ":" + clock +
                       ":m" + std::to_string(m) + ":s" + std::to_string(seed) + "]";
    }
    return result;
}

std::vector<CaseStudyResult> run_sweep(const ScenarioConfig& cfg, bool write_outputs,
                                       unsigned max_workers) {
    struct CaseId {
        OrbitType orbit;
        std::string clock;
        int m;
        std::uint64_t seed;
    };
    std::vector<CaseId> cases;
    for (const auto o : cfg.orbits)
        for (const auto& c : cfg.clocks)
            for (const int m : cfg.m_values)
                for (const auto s : cfg.seeds) cases.push_back({o, c, m, s});

    // One timeline per orbit, shared read-only across cases.
    std::map<OrbitType, VisibilityTimeline> timelines;
    for (const auto o : cfg.orbits) {
        if (timelines.count(o)) continue;
        const Trajectory traj = build_lnss_trajectory(cfg, o);
        const auto segment = build_gps_segment(cfg);
        timelines.emplace(o,
                          build_visibility_timeline(traj, segment, cfg.ephemeris,
                                                    cfg.receiver));
    }

    const std::string out_dir = write_outputs ? cfg.output_dir : "";
    if (write_outputs) std::filesystem::create_directories(cfg.output_dir);

    std::vector<CaseStudyResult> results(cases.size());
    unsigned workers = max_workers ? max_workers : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cases.size())));

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) break;
            const auto& c = cases[i];
            results[i] = run_case(cfg, c.orbit, c.clock, c.m, c.seed, out_dir,
                                  &timelines.at(c.orbit));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    std::sort(results.begin(), results.end(),
              [](const CaseStudyResult& a, const CaseStudyResult& b) {
                  return std::tie(a.orbit, a.clock, a.m, a.seed) <
                         std::tie(b.orbit, b.clock, b.m, b.seed);
              });

    if (write_outputs) {
        write_sweep_csv(results, (std::filesystem::path(cfg.output_dir) / "sweep.csv").string());
        write_sweep_json(results, (std::filesystem::path(cfg.output_dir) / "sweep.json").string());
    }
    return results;
}

void write_sweep_csv(const std::vector<CaseStudyResult>& results,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "orbit,clock,m,seed,max_ecop_s,vis1_pct,vis4_pct,rms_bias_us,rms_drift_nsps,"
           "uere_m,error\n";
    out.precision(10);
    for (const auto& r : results) {
        out << r.orbit << ',' << r.clock << ',' << r.m << ',' << r.seed << ','
            << r.max_ecop_s << ',' << r.vis1_pct << ',' << r.vis4_pct << ','
            << r.rms_bias_us << ',' << r.rms_drift_nsps << ',' << r.uere_m << ','
            << r.error << '\n';
    }
}

void write_sweep_json(const std::vector<CaseStudyResult>& results,
                      const std::string& path) {
    json arr = json::array();
    for (const auto& r : results) arr.push_back(json::parse(result_to_json(r)));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << arr.dump(2) << '\n';
}

}  // namespace lnss
