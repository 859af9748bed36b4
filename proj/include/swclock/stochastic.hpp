#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "swclock/clock_model.hpp"

namespace swclock {

/// Knobs for the Monte-Carlo layer.
struct McFlags {
    bool serial_resolution = true;   // m >= 2 without it is rejected
    bool spread_inflation = false;   // scale sigma by the packet spread at each event
    bool perturb_dial = false;       // jitter bodies 1 and 3 with the same sigma
    std::optional<double> sigma_ctau;  // override sigma (units c*tau); default dx_h = 2l/n
};

/// One Monte-Carlo run. Errors are t_c estimates minus the unperturbed
/// estimate through the identical double pipeline, in units of tau, so the
/// sigma = 0 limit is exactly zero. Reproducible per (cfg, samples, seed).
struct McRun {
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> errors_tau;   // samples * n entries, sample-major
    double mean_tau = 0.0;
    double std_tau = 0.0;             // Bessel-corrected
    double max_abs_tau = 0.0;
    std::int64_t pairing_flips = 0;   // perturbed geometric pairing != unperturbed
};

/// Deterministic per-sample Gaussian source. Each sample index gets its own
/// generator seeded from (seed, index), so any partition of the index range
/// across workers reproduces the serial run's draws exactly.
class GaussianSubstream {
public:
    GaussianSubstream(std::uint64_t seed, std::uint64_t index);
    double next();  // standard normal

private:
    std::mt19937_64 eng_;
};

/// Perturb each hand scattering along its incoming photon world line by an
/// independent Gaussian of the configured sigma, rebuild arrivals, redo the
/// true-partner readout in doubles, and record the reading errors.
///
/// Pairing identification is kept at ground truth for the error series; a
/// perturbation large enough to push a Q2 past a neighbouring Q3 in arrival
/// order is tallied in pairing_flips instead of polluting the statistics
/// with +-T outliers (early serials sit a fraction of a division from their
/// partner, so re-pairing would swamp the hand-position spread the run is
/// meant to measure). Every reading is recomputed in long double and must
/// agree within a few ulps of the pipeline scale; a drift throws.
McRun run_mc(const ClockConfig& cfg, std::int64_t samples, std::uint64_t seed,
             const McFlags& flags = {});

/// Same draws restricted to sample indices [begin, end); concatenating
/// partitions in index order reproduces run_mc exactly.
McRun run_mc_partition(const ClockConfig& cfg, std::int64_t samples, std::uint64_t seed,
                       std::int64_t begin, std::int64_t end, const McFlags& flags = {});

/// Fixed-key summary: n, m, samples, seed, err_mean, err_std,
/// err_std_over_tau, pairing_flips. err_mean and err_std are in seconds.
std::string mc_summary_json(const ClockConfig& cfg, const McRun& run);

}  // namespace swclock
