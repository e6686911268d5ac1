#ifndef LNSS_SCENARIO_HPP
#define LNSS_SCENARIO_HPP

#include "lnss/clock.hpp"
#include "lnss/cr3bp.hpp"
#include "lnss/ephemeris.hpp"
#include "lnss/filter.hpp"
#include "lnss/gps.hpp"
#include "lnss/measurement.hpp"
#include "lnss/metrics.hpp"
#include "lnss/orbit.hpp"
#include "lnss/propagator.hpp"
#include "lnss/visibility.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lnss {

enum class OrbitType { ELFO, LLO, PCO, NRHO };

std::string orbit_name(OrbitType o);
OrbitType orbit_from_name(const std::string& name);

/** Catalog Keplerian elements for ELFO / LLO / PCO (Moon-inertial). */
KeplerianElements orbit_elements(OrbitType o);

/** Rotating-frame seed state for the L2 southern NRHO corrector, km / km/s. */
StateVector nrho_seed_state();

struct ScenarioConfig {
    std::string start_epoch_utc = "2025-11-09T00:00:00.000Z";
    double duration_days = 7.0;
    double grid_step_s = 60.0;
    double warmup_days = 1.0;
    std::vector<OrbitType> orbits = {OrbitType::ELFO};
    std::vector<std::string> clocks = {"CSAC"};
    std::vector<int> m_values = {1};
    std::vector<std::uint64_t> seeds = {1};
    std::string almanac_file;  // empty: synthetic 31-satellite constellation
    std::map<std::string, std::string> pattern_files;  // block name -> CSV path
    std::string output_dir = "out";
    ErrorBudget budget;
    ReceiverConfig receiver;
    TrackingLoopConfig loop;
    ForceModelConfig forces;
    EphemerisModel ephemeris;
    std::map<std::string, KeplerianElements> orbit_overrides;
};

/**
 * Parse and validate a JSON config file, filling catalog defaults. The
 * LNSS_OUTPUT_DIR environment variable overrides output_dir. Throws
 * std::runtime_error with a field-level message on schema violations.
 */
ScenarioConfig load_config(const std::string& path);

/** Parse a config from a JSON string (empty object -> all defaults). */
ScenarioConfig parse_config(const std::string& json_text);

/** Build the Earth-GPS segment from the config (almanac file or synthetic). */
std::vector<GpsSatellite> build_gps_segment(const ScenarioConfig& cfg,
                                            std::uint64_t seed = 0);

/** LNSS trajectory for the orbit on the scenario grid (MOON_INERTIAL). */
Trajectory build_lnss_trajectory(const ScenarioConfig& cfg, OrbitType orbit);

struct CaseStudyResult {
    std::string orbit;
    std::string clock;
    int m = 1;
    std::uint64_t seed = 0;
    double max_ecop_s = 0.0;
    double vis1_pct = 0.0;
    double vis4_pct = 0.0;
    double rms_bias_us = 0.0;
    double rms_drift_nsps = 0.0;
    double uere_m = 0.0;
    std::string error;  // non-empty when the case failed

    bool ok() const { return error.empty(); }
};

std::string result_to_json(const CaseStudyResult& r);

/**
 * Run one case end to end: trajectory -> timeline -> truth clock -> filter
 * -> metrics. When out_dir is non-empty, writes history.csv and
 * metrics.json under <out_dir>/<orbit>_<clock>_m<m>_s<seed>/.
 * A prebuilt timeline for the same orbit may be supplied to avoid rework.
 */
CaseStudyResult run_case(const ScenarioConfig& cfg, OrbitType orbit,
                         const std::string& clock, int m, std::uint64_t seed,
                         const std::string& out_dir = "",
                         const VisibilityTimeline* prebuilt_timeline = nullptr);

/**
 * Cartesian product of orbits x clocks x m x seeds with bounded parallelism;
 * per-case failures are recorded without aborting. Results sorted by
 * (orbit, clock, m, seed). Writes sweep.csv and sweep.json to the output
 * directory when write_outputs is set.
 */
std::vector<CaseStudyResult> run_sweep(const ScenarioConfig& cfg,
                                       bool write_outputs = true,
                                       unsigned max_workers = 0);

void write_sweep_csv(const std::vector<CaseStudyResult>& results,
                     const std::string& path);
void write_sweep_json(const std::vector<CaseStudyResult>& results,
                      const std::string& path);

}  // namespace lnss

#endif
