#include "swclock/clock_model.hpp"

#include <cmath>

namespace swclock {

ClockConfig build_config(std::int64_t n, std::int64_t m, double T_seconds,
                         std::optional<double> M_kg, Rat phi, std::optional<Rat> recorder_x,
                         std::optional<std::uint64_t> seed) {
    if (n < 2) throw ConfigError("n must be at least 2 (got " + std::to_string(n) + ")");
    if (m < 1) throw ConfigError("m must be at least 1 (got " + std::to_string(m) + ")");
    if (m > n) throw ConfigError("m must not exceed n (got m=" + std::to_string(m) +
                                 ", n=" + std::to_string(n) + ")");
    if (m == n) throw ConfigError("beta >= 1 unphysical (m = n gives hand speed c)");
    if (!(T_seconds > 0.0)) throw ConfigError("running time T must be positive");
    if (!(phi > Rat(0) && phi <= Rat(1))) {
        throw ConfigError("phi must lie in (0, 1], got " + phi.str());
    }
    if (M_kg && !(*M_kg > 0.0)) throw ConfigError("mass M must be positive");

    ClockConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.T_seconds = T_seconds;
    cfg.M_kg = M_kg;
    cfg.phi = phi;
    cfg.seed = seed;
    cfg.beta = Rat(m, 2 * n - m);
    cfg.two_ell = Rat(m) * Rat(n) / Rat(2 * n - m);

    if (recorder_x) {
        cfg.recorder_x = *recorder_x;
    } else {
        try {
            cfg.recorder_x = -cfg.two_ell * Rat(n + 2);
        } catch (const std::overflow_error&) {
            // Exact -2*ell*(n+2) does not fit for astronomically large n;
            // any position left of the dial is equivalent for readings.
            cfg.recorder_x = -(cfg.two_ell * 2);
        }
    }
    if (cfg.recorder_x >= -cfg.ell()) {
        throw ConfigError("recorder inside dial: recorder_x = " + cfg.recorder_x.str() +
                          " must be < -ell = " + (-cfg.ell()).str() + " (units c*tau)");
    }

    if (n < 10) cfg.warnings.push_back("n = " + std::to_string(n) + " is small; n >> 1 assumed");
    if (cfg.beta > Rat(1, 10)) {
        cfg.warnings.push_back("beta = " + cfg.beta.str() + " exceeds 0.1; beta << 1 assumed");
    }
    return cfg;
}

double mass_bound(double T_seconds, double tau_seconds, double two_ell_m) {
    return kHbar * T_seconds * T_seconds * T_seconds /
           (two_ell_m * two_ell_m * tau_seconds * tau_seconds);
}

double mass_bound(const ClockConfig& cfg) {
    return mass_bound(cfg.T_seconds, cfg.tau_seconds(), cfg.two_ell_meters());
}

UncertaintyReport uncertainty_report(const ClockConfig& cfg) {
    if (!cfg.M_kg) throw ConfigError("uncertainty report needs the body mass M_kg");
    const double M = *cfg.M_kg;
    if (!(M > 0.0)) throw ConfigError("mass M must be positive");

    UncertaintyReport rep;
    rep.dx_h_m = cfg.two_ell_meters() / static_cast<double>(cfg.n);
    rep.dp_h = kHbar / rep.dx_h_m;  // minimal packet, equality adopted
    rep.du_mps = rep.dp_h / M;
    const double growth = kHbar * cfg.T_seconds / (M * rep.dx_h_m * rep.dx_h_m);
    rep.spread_factor = std::sqrt(1.0 + growth * growth);
    rep.mass_bound_kg = mass_bound(cfg);
    // growth = 1 exactly at the critical mass; a few ulps of slack keep the
    // boundary classification stable against the order of float operations
    rep.width_stays_put = growth <= 1.0 + 1e-12;
    return rep;
}

namespace {

std::optional<double> opt_number(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) throw ConfigError(std::string(key) + " must be a number or null");
    return it->get<double>();
}

Rat rational_field(const nlohmann::json& v, const char* key) {
    if (v.is_string()) {
        try {
            return Rat::parse(v.get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(std::string(key) + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
    throw ConfigError(std::string(key) + " must be a rational string like \"1/2\"");
}

}  // namespace

ClockConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const char* key : {"n", "m", "T_seconds"}) {
        if (!j.contains(key)) throw ConfigError(std::string("config missing \"") + key + "\"");
    }
    if (!j["n"].is_number_integer() || !j["m"].is_number_integer()) {
        throw ConfigError("n and m must be integers");
    }
    if (!j["T_seconds"].is_number()) throw ConfigError("T_seconds must be a number");

    Rat phi(1, 2);
    if (auto it = j.find("phi"); it != j.end() && !it->is_null()) {
        phi = rational_field(*it, "phi");
    }
    std::optional<Rat> recorder_x;
    if (auto it = j.find("recorder_x"); it != j.end() && !it->is_null()) {
        recorder_x = rational_field(*it, "recorder_x");
    }
    std::optional<std::uint64_t> seed;
    if (auto it = j.find("seed"); it != j.end() && !it->is_null()) {
        if (!it->is_number_integer()) throw ConfigError("seed must be an integer or null");
        seed = it->get<std::uint64_t>();
    }
    return build_config(j["n"].get<std::int64_t>(), j["m"].get<std::int64_t>(),
                        j["T_seconds"].get<double>(), opt_number(j, "M_kg"), phi, recorder_x,
                        seed);
}

nlohmann::json config_to_json(const ClockConfig& cfg) {
    nlohmann::json j{
        {"n", cfg.n},
        {"m", cfg.m},
        {"T_seconds", cfg.T_seconds},
        {"M_kg", nullptr},
        {"phi", cfg.phi.str()},
        {"recorder_x", cfg.recorder_x.str()},
        {"seed", nullptr},
        {"derived",
         {{"tau_seconds", cfg.tau_seconds()},
          {"beta", cfg.beta.str()},
          {"beta_float", cfg.beta.to_double()},
          {"two_ell_ctau", cfg.two_ell.str()},
          {"two_ell_m", cfg.two_ell_meters()},
          {"hand_speed_mps", cfg.hand_speed_mps()}}},
    };
    if (cfg.M_kg) j["M_kg"] = *cfg.M_kg;
    if (cfg.seed) j["seed"] = *cfg.seed;
    return j;
}

}  // namespace swclock
