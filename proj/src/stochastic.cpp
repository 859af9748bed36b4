#include "swclock/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "swclock/errors.hpp"
#include "swclock/kinematics.hpp"
#include "swclock/recorder.hpp"

namespace swclock {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// A perturbation d of a scattering position along the incoming photon's
// world line delays the round trip by 2d/c, so arrivals shift by 2d.
template <typename F>
F readout(F t2, F t3, F four_ell, F period) {
    return (F(-0.5) + (t3 - t2) / four_ell) * period;
}

}  // namespace

GaussianSubstream::GaussianSubstream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    eng_.seed(seq);
}

double GaussianSubstream::next() {
    // Box-Muller on (0,1) uniforms; the offset keeps u1 away from zero.
    const double u1 = (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    const double u2 = (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

McRun run_mc_partition(const ClockConfig& cfg, std::int64_t samples, std::uint64_t seed,
                       std::int64_t begin, std::int64_t end, const McFlags& flags) {
    if (samples < 1) throw ConfigError("samples must be >= 1");
    if (begin < 0 || end < begin || end > samples)
        throw ConfigError("bad sample partition range");
    if (cfg.m >= 2 && !flags.serial_resolution)
        throw ConfigError("m >= 2 without serial resolution: the m-fold ambiguity would dominate the statistics");
    if (flags.spread_inflation && !cfg.M_kg)
        throw ConfigError("spread inflation requires a hand mass");

    const std::size_t n = static_cast<std::size_t>(cfg.n);
    const double four_ell = (cfg.two_ell * Rat(2)).to_double();
    const double period = static_cast<double>(cfg.n);
    const long double four_ell_l = (cfg.two_ell * Rat(2)).to_long_double();
    const long double period_l = static_cast<long double>(cfg.n);

    // Unperturbed arrivals and the true-partner baseline readout, exact
    // rationals narrowed once.
    std::vector<double> q2a(n), q3a(n), est0(n), sigma(n), drift_tol(n);
    std::vector<long double> q2a_l(n), q3a_l(n), est0_l(n);
    std::vector<std::int64_t> j0(n);
    const double base_sigma =
        flags.sigma_ctau ? *flags.sigma_ctau : (cfg.two_ell / Rat(cfg.n)).to_double();
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t k = static_cast<std::int64_t>(i) + 1;
        const Rat t = scatter_time(cfg, k);
        const Rat xh = hand_position(cfg, k);
        const Rat q2 = t + (xh - cfg.recorder_x);
        const Rat q3 = (t + (cfg.ell() - xh)) + (cfg.ell() - cfg.recorder_x);
        q2a[i] = q2.to_double();
        q3a[i] = q3.to_double();
        q2a_l[i] = q2.to_long_double();
        q3a_l[i] = q3.to_long_double();
        est0[i] = readout(q2a[i], q3a[i], four_ell, period);
        est0_l[i] = readout(q2a_l[i], q3a_l[i], four_ell_l, period_l);
        // rounding of (t3 - t2) is half an ulp of the arrival magnitude,
        // amplified by period / four_ell; budget a handful of such ops
        drift_tol[i] = 8.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(q2a[i]), std::abs(q3a[i])) * period / four_ell;
        j0[i] = partner_offset(cfg, k);
        sigma[i] = base_sigma;
        if (flags.spread_inflation) {
            const double dx_m = (cfg.two_ell / Rat(cfg.n)).to_double() *
                                kSpeedOfLight * cfg.tau_seconds();
            const double elapsed_s =
                (Rat(k - 1) + cfg.phi).to_double() * cfg.tau_seconds();
            const double growth = kHbar * elapsed_s / (*cfg.M_kg * dx_m * dx_m);
            sigma[i] *= std::sqrt(1.0 + growth * growth);
        }
    }

    McRun run;
    run.n = cfg.n;
    run.m = cfg.m;
    run.samples = end - begin;
    run.seed = seed;
    run.errors_tau.reserve(static_cast<std::size_t>(run.samples) * n);

    std::vector<double> dh(n), d3(n), q3p(n), q3sorted(n);
    for (std::int64_t s = begin; s < end; ++s) {
        GaussianSubstream g(seed, static_cast<std::uint64_t>(s));
        for (std::size_t i = 0; i < n; ++i) dh[i] = sigma[i] * g.next();
        if (flags.perturb_dial) {
            for (std::size_t i = 0; i < n; ++i) g.next();  // body 1 jitter, unused in readout
            for (std::size_t i = 0; i < n; ++i) d3[i] = sigma[i] * g.next();
        } else {
            std::fill(d3.begin(), d3.end(), 0.0);
        }

        for (std::size_t i = 0; i < n; ++i) {
            q3p[i] = q3a[i] + 2.0 * d3[i];
        }
        q3sorted = q3p;
        if (flags.perturb_dial) std::sort(q3sorted.begin(), q3sorted.end());

        for (std::size_t i = 0; i < n; ++i) {
            const double t2 = q2a[i] + 2.0 * dh[i];
            const double err = readout(t2, q3p[i], four_ell, period) - est0[i];

            const long double t2_l = q2a_l[i] + 2.0L * static_cast<long double>(dh[i]);
            const long double t3_l = q3a_l[i] + 2.0L * static_cast<long double>(d3[i]);
            const long double err_l = readout(t2_l, t3_l, four_ell_l, period_l) - est0_l[i];
            const long double tol =
                static_cast<long double>(drift_tol[i]) + 1e-12L * std::abs(err_l);
            if (std::abs(static_cast<long double>(err) - err_l) > tol)
                throw std::logic_error("float readout drifted from the high-precision replica");

            run.errors_tau.push_back(err);

            // Geometric pairing on perturbed arrivals: rank of the true
            // partner among Q3s strictly after this Q2.
            const auto hi = std::upper_bound(q3sorted.begin(), q3sorted.end(), q3p[i]);
            const auto lo = std::upper_bound(q3sorted.begin(), q3sorted.end(), t2);
            if (hi - lo != j0[i]) ++run.pairing_flips;
        }
    }

    if (run.errors_tau.empty()) return run;
    double sum = 0.0;
    for (double e : run.errors_tau) {
        sum += e;
        run.max_abs_tau = std::max(run.max_abs_tau, std::abs(e));
    }
    const auto count = static_cast<double>(run.errors_tau.size());
    run.mean_tau = sum / count;
    if (run.errors_tau.size() > 1) {
        double ss = 0.0;
        for (double e : run.errors_tau) ss += (e - run.mean_tau) * (e - run.mean_tau);
        run.std_tau = std::sqrt(ss / (count - 1.0));
    }
    return run;
}

McRun run_mc(const ClockConfig& cfg, std::int64_t samples, std::uint64_t seed,
             const McFlags& flags) {
    return run_mc_partition(cfg, samples, seed, 0, samples, flags);
}

std::string mc_summary_json(const ClockConfig& cfg, const McRun& run) {
    nlohmann::ordered_json j;
    j["n"] = run.n;
    j["m"] = run.m;
    j["samples"] = run.samples;
    j["seed"] = run.seed;
    j["err_mean"] = run.mean_tau * cfg.tau_seconds();
    j["err_std"] = run.std_tau * cfg.tau_seconds();
    j["err_std_over_tau"] = run.std_tau;
    j["pairing_flips"] = run.pairing_flips;
    return j.dump(2) + "\n";
}

}  // namespace swclock
