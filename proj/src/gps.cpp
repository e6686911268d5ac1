#include "lnss/gps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lnss {

std::string block_name(GpsBlock b) {
    switch (b) {
        case GpsBlock::IIR: return "IIR";
        case GpsBlock::IIRM: return "IIRM";
        case GpsBlock::IIF: return "IIF";
        case GpsBlock::III: return "III";
    }
    return "UNKNOWN";
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& value, int prn, int line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos == 0) throw std::invalid_argument("empty");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("malformed numeric field for PRN " +
                                 std::to_string(prn) + " at line " +
                                 std::to_string(line_no) + ": '" + value + "'");
    }
}

struct FieldFlags {
    bool id = false, ecc = false, sqrta = false, inc = false, raan = false,
         argp = false, manom = false;
    bool complete() const { return id && ecc && sqrta && inc && raan && argp && manom; }
};

}  // namespace

std::vector<AlmanacRecord> parse_yuma(const std::string& text) {
    std::vector<AlmanacRecord> records;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    bool in_block = false;
    AlmanacRecord rec;
    FieldFlags seen;

    auto finish_block = [&]() {
        if (!in_block) return;
        if (!seen.complete()) {
            throw std::runtime_error("almanac block for PRN " + std::to_string(rec.prn) +
                                     " missing mandatory fields");
        }
        records.push_back(rec);
        in_block = false;
    };

    while (std::getline(in, line)) {
        ++line_no;
        const std::string low = lower(line);
        if (low.find("almanac for prn") != std::string::npos) {
            finish_block();
            in_block = true;
            rec = AlmanacRecord{};
            seen = FieldFlags{};
            continue;
        }
        if (!in_block) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        const std::string key = lower(trim(line.substr(0, colon)));
        const std::string value = trim(line.substr(colon + 1));
        if (key.empty() || value.empty()) continue;

        if (key.rfind("id", 0) == 0) {
            rec.prn = static_cast<int>(parse_number(value, rec.prn, line_no));
            seen.id = true;
        } else if (key.find("health") != std::string::npos) {
            rec.health = static_cast<int>(parse_number(value, rec.prn, line_no));
        } else if (key.find("eccentricity") != std::string::npos) {
            rec.eccentricity = parse_number(value, rec.prn, line_no);
            seen.ecc = true;
        } else if (key.find("time of applicability") != std::string::npos) {
            rec.toa_s = parse_number(value, rec.prn, line_no);
        } else if (key.find("inclination") != std::string::npos) {
            rec.inclination_rad = parse_number(value, rec.prn, line_no);
            seen.inc = true;
        } else if (key.find("rate of right ascen") != std::string::npos) {
            rec.raan_rate_radps = parse_number(value, rec.prn, line_no);
        } else if (key.find("sqrt") != std::string::npos) {
            rec.sqrt_a = parse_number(value, rec.prn, line_no);
            seen.sqrta = true;
        } else if (key.find("right ascen") != std::string::npos) {
            rec.raan_rad = parse_number(value, rec.prn, line_no);
            seen.raan = true;
        } else if (key.find("argument of perigee") != std::string::npos) {
            rec.arg_perigee_rad = parse_number(value, rec.prn, line_no);
            seen.argp = true;
        } else if (key.find("mean anom") != std::string::npos) {
            rec.mean_anomaly_rad = parse_number(value, rec.prn, line_no);
            seen.manom = true;
        } else if (key.find("af0") != std::string::npos) {
            rec.af0_s = parse_number(value, rec.prn, line_no);
        } else if (key.find("af1") != std::string::npos) {
            rec.af1_sps = parse_number(value, rec.prn, line_no);
        } else if (key.find("week") != std::string::npos) {
            rec.week = static_cast<int>(parse_number(value, rec.prn, line_no));
        }
        // unknown keys ignored
    }
    finish_block();
    return records;
}

std::string serialize_yuma(const std::vector<AlmanacRecord>& records) {
    std::ostringstream out;
    char buf[64];
    auto num = [&](const char* label, double v) {
        std::snprintf(buf, sizeof(buf), "%.10E", v);
        out << label << buf << '\n';
    };
    for (const auto& r : records) {
        out << "******** Week " << r.week << " almanac for PRN-"
            << (r.prn < 10 ? "0" : "") << r.prn << " ********\n";
        out << "ID:                         " << r.prn << '\n';
        out << "Health:                     " << r.health << '\n';
        num("Eccentricity:               ", r.eccentricity);
        num("Time of Applicability(s):   ", r.toa_s);
        num("Orbital Inclination(rad):   ", r.inclination_rad);
        num("Rate of Right Ascen(r/s):   ", r.raan_rate_radps);
        num("SQRT(A)  (m 1/2):           ", r.sqrt_a);
        num("Right Ascen at Week(rad):   ", r.raan_rad);
        num("Argument of Perigee(rad):   ", r.arg_perigee_rad);
        num("Mean Anom(rad):             ", r.mean_anomaly_rad);
        num("Af0(s):                     ", r.af0_s);
        num("Af1(s/s):                   ", r.af1_sps);
        out << "week:                       " << r.week << "\n\n";
    }
    return out.str();
}

std::vector<AlmanacRecord> synthesize_constellation(int n_planes, int n_sats,
                                                    unsigned long long seed) {
    if (n_sats > n_planes * 6) {
        throw std::invalid_argument("too many satellites for the plane count");
    }
    // Round-robin plane occupancy (31 over 6 planes -> 6,5,5,5,5,5).
    std::vector<int> plane_count(static_cast<std::size_t>(n_planes), 0);
    for (int i = 0; i < n_sats; ++i) plane_count[static_cast<std::size_t>(i % n_planes)]++;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-2.0, 2.0);

    const double sqrt_a = std::sqrt(26560.0e3);  // sqrt meters, YUMA convention
    std::vector<AlmanacRecord> out;
    out.reserve(static_cast<std::size_t>(n_sats));
    int prn = 1;
    for (int p = 0; p < n_planes; ++p) {
        const int c = plane_count[static_cast<std::size_t>(p)];
        for (int j = 0; j < c; ++j) {
            AlmanacRecord r;
            r.prn = prn++;
            r.eccentricity = 0.01;
            r.inclination_rad = 55.0 * DEG2RAD;
            r.raan_rad = p * 60.0 * DEG2RAD;
            r.sqrt_a = sqrt_a;
            r.arg_perigee_rad = 0.0;
            // Even in-plane phasing, cross-plane offset, small seeded jitter.
            const double m_deg = j * 360.0 / c + p * 360.0 / (n_planes * 6) + jitter(rng);
            r.mean_anomaly_rad = m_deg * DEG2RAD;
            out.push_back(r);
        }
    }
    return out;
}

AntennaPattern default_pattern(GpsBlock block) {
    const bool modern = (block == GpsBlock::IIF || block == GpsBlock::III);
    const double plateau = modern ? -5.0 : -8.0;
    AntennaPattern p;
    p.fill_gain_below_16deg_db = -2.0;
    p.knots = {{16.0, -2.0}, {24.0, -12.0}, {30.0, -25.0}, {32.0, plateau},
               {60.0, plateau}, {75.0, -14.0}, {90.0, -20.0}};
    return p;
}

double default_transmit_power_dbw(GpsBlock block) {
    return (block == GpsBlock::IIF || block == GpsBlock::III) ? 16.0 : 15.0;
}

std::vector<GpsSatellite> assign_blocks(const std::vector<AlmanacRecord>& records) {
    // Block shares 8:7:12:4; boundaries scaled proportionally for other counts.
    static constexpr double kCum[3] = {8.0 / 31.0, 15.0 / 31.0, 27.0 / 31.0};
    const std::size_t n = records.size();
    std::vector<GpsSatellite> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        GpsBlock b = GpsBlock::III;
        if (f < kCum[0]) b = GpsBlock::IIR;
        else if (f < kCum[1]) b = GpsBlock::IIRM;
        else if (f < kCum[2]) b = GpsBlock::IIF;
        GpsSatellite sat;
        sat.elements = records[i];
        sat.block = b;
        sat.transmit_power_dbw = default_transmit_power_dbw(b);
        sat.pattern = default_pattern(b);
        out.push_back(std::move(sat));
    }
    return out;
}

AntennaPattern load_pattern_csv(const std::string& path, double* tx_power_dbw) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file " + path);
    AntennaPattern p;
    p.knots.clear();
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto eq = t.find('=');
            if (eq != std::string::npos) {
                const std::string key = lower(t.substr(1, eq - 1));
                const double v = std::stod(t.substr(eq + 1));
                if (key.find("fill_gain_db") != std::string::npos) {
                    p.fill_gain_below_16deg_db = v;
                } else if (key.find("tx_power_dbw") != std::string::npos && tx_power_dbw) {
                    *tx_power_dbw = v;
                }
            }
            continue;
        }
        if (lower(t).find("angle_deg") == 0) continue;  // header
        const auto comma = t.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("malformed pattern row: " + t);
        }
        p.knots.emplace_back(std::stod(t.substr(0, comma)), std::stod(t.substr(comma + 1)));
    }
    if (p.knots.size() < 2) throw std::runtime_error("pattern needs at least two knots");
    for (std::size_t i = 1; i < p.knots.size(); ++i) {
        if (p.knots[i].first <= p.knots[i - 1].first) {
            throw std::runtime_error("pattern angles must be strictly increasing");
        }
    }
    return p;
}

StateVector gps_state_at(const GpsSatellite& sat, const Epoch& epoch) {
    const AlmanacRecord& r = sat.elements;
    const double dt = epoch.seconds;
    KeplerianElements el;
    el.semi_major_axis_km = r.sqrt_a * r.sqrt_a / 1000.0;  // sqrt(m) -> km
    el.eccentricity = r.eccentricity;
    el.inclination_deg = r.inclination_rad * RAD2DEG;
    el.arg_perigee_deg = r.arg_perigee_rad * RAD2DEG;
    el.raan_deg = (r.raan_rad + r.raan_rate_radps * dt) * RAD2DEG;
    el.mean_anomaly_deg = r.mean_anomaly_rad * RAD2DEG;
    el.mu = MU_EARTH;
    return propagate_kepler(el, dt, FrameId::EarthInertial, Epoch{});
}

double transmit_gain(const AntennaPattern& p, double off_boresight_deg) {
    if (off_boresight_deg < 16.0) return p.fill_gain_below_16deg_db;
    if (off_boresight_deg > 90.0) return -30.0;
    const auto& k = p.knots;
    if (off_boresight_deg <= k.front().first) return k.front().second;
    if (off_boresight_deg >= k.back().first) return k.back().second;
    for (std::size_t i = 1; i < k.size(); ++i) {
        if (off_boresight_deg <= k[i].first) {
            const double w =
                (off_boresight_deg - k[i - 1].first) / (k[i].first - k[i - 1].first);
            return k[i - 1].second + w * (k[i].second - k[i - 1].second);
        }
    }
    return k.back().second;
}

}  // namespace lnss
