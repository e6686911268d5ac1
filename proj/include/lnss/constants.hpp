#ifndef LNSS_CONSTANTS_HPP
#define LNSS_CONSTANTS_HPP

namespace lnss {

// Physical constants (SI unless noted).
inline constexpr double SPEED_OF_LIGHT = 299792458.0;      // m/s
inline constexpr double BOLTZMANN = 1.380649e-23;          // J/K

// Gravitational parameters, km^3/s^2.
inline constexpr double MU_MOON = 4902.800066;
inline constexpr double MU_EARTH = 398600.4418;
inline constexpr double MU_SUN = 1.32712440018e11;

// Body radii, km.
inline constexpr double MOON_RADIUS_KM = 1737.4;
inline constexpr double EARTH_RADIUS_KM = 6378.137;

// Earth-Moon geometry.
inline constexpr double EARTH_MOON_DISTANCE_KM = 384400.0;
inline constexpr double EARTH_MOON_MASS_RATIO = 0.012150585;  // mu* = m_M/(m_E+m_M)

inline constexpr double AU_KM = 1.495978707e8;

// GPS L1 C/A.
inline constexpr double L1_FREQUENCY_HZ = 1575.42e6;
inline constexpr double CA_CHIP_LENGTH_M = 293.0523;
inline constexpr double L1_WAVELENGTH_M = 0.1903;

inline constexpr double PI = 3.14159265358979323846;
inline constexpr double DEG2RAD = PI / 180.0;
inline constexpr double RAD2DEG = 180.0 / PI;

}  // namespace lnss

#endif
