#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "swclock/errors.hpp"
#include "swclock/rational.hpp"

namespace swclock {

inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kHbar = 1.054571817e-34;       // J*s

/// Full parameter set of the clock.
///
/// Internal unit system: time in units of the accuracy tau, length in units
/// of c*tau, c = 1. In these units every kinematic quantity is an exact
/// rational, which is what makes the pairing thresholds bit-exact. SI floats
/// are carried only for mass / hbar quantities and human-facing output.
///
/// The dial spans x in [-ell, +ell]; the hand moves from +ell to -ell with
/// speed u = 2*ell/T over the running time T = n*tau. The dial length family
/// 2*ell = (m/2) * c*tau * (1+beta) together with u = 2*ell/T pins
/// beta = u/c = m / (2n - m) exactly.
struct ClockConfig {
    std::int64_t n = 0;          // inverse relative accuracy, n = T/tau
    std::int64_t m = 0;          // dial-length multiplier
    double T_seconds = 0.0;      // running time, SI
    std::optional<double> M_kg;  // body mass, used only by uncertainty ops
    Rat phi;                     // first-scattering phase in (0, 1]
    Rat beta;                    // u/c = m/(2n-m)
    Rat two_ell;                 // dial length 2*ell, units c*tau
    Rat recorder_x;              // recorder position, units c*tau, < -ell
    std::optional<std::uint64_t> seed;

    // Soft-threshold notices collected at build time (n small, beta large).
    std::vector<std::string> warnings;

    Rat ell() const { return two_ell / 2; }
    Rat hand_speed() const { return beta; }        // units of c
    Rat running_time() const { return Rat(n); }    // units of tau

    double tau_seconds() const { return T_seconds / static_cast<double>(n); }
    double two_ell_meters() const { return two_ell.to_double() * kSpeedOfLight * tau_seconds(); }
    double hand_speed_mps() const { return beta.to_double() * kSpeedOfLight; }
};

/// Positional and velocity indeterminacies of the hand for a given mass.
struct UncertaintyReport {
    double dx_h_m = 0.0;         // hand position indeterminacy, 2*ell/n
    double dp_h = 0.0;           // momentum indeterminacy, hbar/dx_h (minimal packet)
    double du_mps = 0.0;         // velocity indeterminacy, dp_h/M
    double spread_factor = 0.0;  // packet width growth over the running time
    double mass_bound_kg = 0.0;  // minimal mass for a decent clock
    bool width_stays_put = false;  // T <= M*dx_h^2/hbar, i.e. width at most doubles
};

/// Builds a self-consistent config from the free parameters.
///
/// Derived exactly: tau = T/n, beta = (m/2)/(n - m/2), 2*ell = (m/2)(1+beta)
/// in c*tau units, u = 2*ell/T. recorder_x defaults to -2*ell*(n+2); any
/// position left of the dial works and readings are independent of it.
///
/// Throws ConfigError on: n < 2, m < 1, m > n, beta >= 1 (m = n), T <= 0,
/// phi outside (0, 1], non-positive mass, recorder inside the dial.
ClockConfig build_config(std::int64_t n, std::int64_t m, double T_seconds,
                         std::optional<double> M_kg = std::nullopt, Rat phi = Rat(1, 2),
                         std::optional<Rat> recorder_x = std::nullopt,
                         std::optional<std::uint64_t> seed = std::nullopt);

/// Minimal body mass hbar * T^3 / ((2*ell)^2 * tau^2). All SI.
double mass_bound(double T_seconds, double tau_seconds, double two_ell_m);
double mass_bound(const ClockConfig& cfg);

/// Requires cfg.M_kg. Throws ConfigError when the mass is missing or <= 0.
UncertaintyReport uncertainty_report(const ClockConfig& cfg);

/// Parses the JSON config object:
///   {"n": int, "m": int, "T_seconds": number, "M_kg": number|null,
///    "phi": "p/q", "recorder_x": "p/q"|null, "seed": int|null}
/// phi and recorder_x are rational strings; recorder_x is in units of c*tau.
ClockConfig config_from_json(const nlohmann::json& j);

/// Round-trippable echo of the parameters (derived fields included).
nlohmann::json config_to_json(const ClockConfig& cfg);

}  // namespace swclock
