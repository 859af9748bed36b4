#include "swclock/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "swclock/clock_model.hpp"
#include "swclock/errors.hpp"
#include "swclock/io.hpp"
#include "swclock/kinematics.hpp"
#include "swclock/oracle.hpp"
#include "swclock/recorder.hpp"
#include "swclock/stochastic.hpp"

namespace swclock {

namespace {

namespace fs = std::filesystem;

fs::path resolve_outdir(const std::string& flag_value) {
    if (const char* env = std::getenv("SWCLOCK_OUT"); env && *env) return env;
    return flag_value;
}

ClockConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

void write_manifest(const fs::path& outdir, const std::string& subcommand,
                    const nlohmann::json& config_echo, const std::vector<std::string>& outputs) {
    const auto manifest = make_manifest(subcommand, config_echo, outputs, kVersion);
    write_file_atomic(outdir / (subcommand + "-manifest.json"), manifest.dump(2) + "\n");
}

// In ambiguity mode the truth is claimed to be among the candidates, so the
// reading error is measured against the best candidate.
Rat max_resolved_error(const std::vector<TimeReading>& readings) {
    Rat worst(0);
    for (const auto& r : readings) {
        if (!r.truth_t_c) continue;
        bool first = true;
        Rat best(0);
        for (const auto& cand : r.ambiguity_set) {
            const Rat err = (cand - *r.truth_t_c).abs();
            if (first || err < best) best = err;
            first = false;
        }
        if (!first && best > worst) worst = best;
    }
    return worst;
}

struct SimulateArgs {
    std::string config_path;
    std::string outdir = ".";
    bool no_serial = false;
};

void cmd_simulate(const SimulateArgs& a) {
    const ClockConfig cfg = load_config(a.config_path);
    const fs::path outdir = resolve_outdir(a.outdir);

    const auto stream = arrival_stream(cfg);
    const ReadMode mode = a.no_serial ? ReadMode::Ambiguity
                          : cfg.m == 1 ? ReadMode::Simple
                                       : ReadMode::Serial;
    const auto readings = read_stream(stream, cfg, mode);

    std::ostringstream arrivals, readcsv;
    write_arrivals_csv(arrivals, cfg, stream);
    write_readings_csv(readcsv, cfg, readings);
    write_file_atomic(outdir / "arrivals.csv", arrivals.str());
    write_file_atomic(outdir / "readings.csv", readcsv.str());
    write_manifest(outdir, "simulate", config_to_json(cfg), {"arrivals.csv", "readings.csv"});

    const Rat worst = (mode == ReadMode::Ambiguity) ? max_resolved_error(readings)
                                                    : max_abs_error(readings);
    std::cout << "n=" << cfg.n << " m=" << cfg.m << " beta=" << cfg.beta.str()
              << " readings=" << readings.size() << " max|error|=" << worst.str() << "\n";
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
}

struct PairingTableArgs {
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::string phi = "1/2";
    std::string outdir = ".";
};

void cmd_pairing_table(const PairingTableArgs& a) {
    const ClockConfig cfg = build_config(a.n, a.m, 1.0, std::nullopt, Rat::parse(a.phi));
    const fs::path outdir = resolve_outdir(a.outdir);

    const auto oracle = oracle_pairing(cfg);
    std::ostringstream csv;
    csv << "# schema: swclock-pairing-table-v1\n";
    csv << "k,offset_closed_form,offset_oracle,match\n";
    bool all_match = true;
    for (std::int64_t k = 1; k <= cfg.n; ++k) {
        const std::int64_t closed = partner_offset(cfg, k);
        const std::int64_t brute = oracle.at(k);
        const bool match = closed == brute;
        all_match = all_match && match;
        csv << k << ',' << closed << ',' << brute << ',' << (match ? "true" : "false") << '\n';
    }
    write_file_atomic(outdir / "pairing-table.csv", csv.str());

    nlohmann::json echo;
    echo["n"] = cfg.n;
    echo["m"] = cfg.m;
    echo["phi"] = cfg.phi.str();
    write_manifest(outdir, "pairing-table", echo, {"pairing-table.csv"});
    std::cout << "n=" << cfg.n << " m=" << cfg.m << " phi=" << cfg.phi.str()
              << " all_match=" << (all_match ? "true" : "false") << "\n";
}

struct AmbiguityArgs {
    std::string config_path;
    std::string outdir = ".";
};

void cmd_ambiguity(const AmbiguityArgs& a) {
    const ClockConfig cfg = load_config(a.config_path);
    const fs::path outdir = resolve_outdir(a.outdir);

    const auto stream = arrival_stream(cfg);
    const auto readings = read_stream(stream, cfg, ReadMode::Ambiguity);

    std::ostringstream csv;
    write_readings_csv(csv, cfg, readings);
    write_file_atomic(outdir / "ambiguity.csv", csv.str());
    write_manifest(outdir, "ambiguity", config_to_json(cfg), {"ambiguity.csv"});

    const Rat period(cfg.n);
    std::set<Rat> diffs;
    for (const auto& r : readings)
        for (std::size_t i = 0; i < r.ambiguity_set.size(); ++i)
            for (std::size_t j = i + 1; j < r.ambiguity_set.size(); ++j)
                diffs.insert((r.ambiguity_set[j] - r.ambiguity_set[i]) / period);
    std::cout << "n=" << cfg.n << " m=" << cfg.m << " candidate_differences/T=";
    bool first = true;
    for (const auto& d : diffs) {
        if (!first) std::cout << ",";
        std::cout << d.str();
        first = false;
    }
    if (first) std::cout << "none";
    std::cout << "\n";
}

struct MassBoundArgs {
    double T_seconds = 0.0;
    double tau_seconds = 0.0;
    double two_ell_m = 0.0;
    std::string outdir = ".";
};

void cmd_mass_bound(const MassBoundArgs& a) {
    if (a.T_seconds <= 0 || a.tau_seconds <= 0 || a.two_ell_m <= 0)
        throw ConfigError("T, tau and two-ell must be positive");
    const double bound = mass_bound(a.T_seconds, a.tau_seconds, a.two_ell_m);
    nlohmann::ordered_json j;
    j["T_seconds"] = a.T_seconds;
    j["tau_seconds"] = a.tau_seconds;
    j["two_ell_m"] = a.two_ell_m;
    j["mass_bound_kg"] = bound;
    const std::string line = j.dump() + "\n";
    std::cout << line;

    const fs::path outdir = resolve_outdir(a.outdir);
    write_file_atomic(outdir / "mass-bound.json", line);
    write_manifest(outdir, "mass-bound", j, {"mass-bound.json"});
}

struct MonteCarloArgs {
    std::string config_path;
    std::string outdir = ".";
    std::int64_t samples = 10000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool no_serial = false;
    bool spread_inflation = false;
};

void cmd_monte_carlo(const MonteCarloArgs& a) {
    const ClockConfig cfg = load_config(a.config_path);
    const fs::path outdir = resolve_outdir(a.outdir);

    std::uint64_t seed = 12345;
    if (a.seed_given)
        seed = a.seed;
    else if (cfg.seed)
        seed = *cfg.seed;

    McFlags flags;
    flags.serial_resolution = !a.no_serial;
    flags.spread_inflation = a.spread_inflation;
    const McRun run = run_mc(cfg, a.samples, seed, flags);

    const std::string summary = mc_summary_json(cfg, run);
    write_file_atomic(outdir / "mc-summary.json", summary);
    write_manifest(outdir, "monte-carlo", config_to_json(cfg), {"mc-summary.json"});
    std::cout << summary;
}

struct SweepArgs {
    std::int64_t max_m = 8;
    std::int64_t max_n = 500;
    std::string outdir = ".";
};

void cmd_sweep(const SweepArgs& a) {
    if (a.max_m < 1 || a.max_n < 2) throw ConfigError("sweep needs max-m >= 1 and max-n >= 2");
    const fs::path outdir = resolve_outdir(a.outdir);
    const std::vector<Rat> phis = {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};

    std::ostringstream mism;
    mism << "# schema: swclock-sweep-mismatch-v1\n";
    mism << "n,m,phi,k,offset_closed_form,offset_oracle\n";
    std::int64_t configs = 0, checks = 0, mismatches = 0;
    for (std::int64_t m = 1; m <= a.max_m; ++m) {
        // m = n means beta = 1, rejected, so the grid starts above it
        for (std::int64_t n = std::max<std::int64_t>(2, m + 1); n <= a.max_n; ++n) {
            for (const auto& phi : phis) {
                const ClockConfig cfg = build_config(n, m, 1.0, std::nullopt, phi);
                const auto oracle = oracle_pairing(cfg);
                ++configs;
                for (std::int64_t k = 1; k <= n; ++k) {
                    const std::int64_t closed = partner_offset(cfg, k);
                    ++checks;
                    if (closed != oracle.at(k)) {
                        ++mismatches;
                        mism << n << ',' << m << ',' << phi.str() << ',' << k << ','
                             << closed << ',' << oracle.at(k) << '\n';
                    }
                }
            }
        }
    }

    nlohmann::ordered_json summary;
    summary["max_m"] = a.max_m;
    summary["max_n"] = a.max_n;
    summary["phi"] = {"1/4", "1/2", "3/4", "1"};
    summary["configs"] = configs;
    summary["checks"] = checks;
    summary["mismatches"] = mismatches;
    write_file_atomic(outdir / "sweep-summary.json", summary.dump(2) + "\n");
    write_file_atomic(outdir / "sweep-mismatches.csv", mism.str());
    write_manifest(outdir, "sweep", summary, {"sweep-summary.json", "sweep-mismatches.csv"});
    std::cout << "configs=" << configs << " checks=" << checks
              << " mismatches=" << mismatches << "\n";
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Salecker-Wigner clock readout simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sub_sim = app.add_subcommand("simulate", "Generate the arrival stream and decode it");
    sub_sim->add_option("--config", sim.config_path, "Clock config JSON")->required();
    sub_sim->add_option("--out", sim.outdir, "Output directory");
    sub_sim->add_flag("--no-serial", sim.no_serial, "Skip serial resolution; enumerate candidates");
    sub_sim->callback([&] { cmd_simulate(sim); });

    PairingTableArgs pt;
    auto* sub_pt = app.add_subcommand("pairing-table", "Closed-form vs brute-force partner offsets");
    sub_pt->add_option("--n", pt.n, "Number of triads")->required();
    sub_pt->add_option("--m", pt.m, "Dial length multiplier")->required();
    sub_pt->add_option("--phi", pt.phi, "First-scattering phase, rational in (0,1]");
    sub_pt->add_option("--out", pt.outdir, "Output directory");
    sub_pt->callback([&] { cmd_pairing_table(pt); });

    AmbiguityArgs amb;
    auto* sub_amb = app.add_subcommand("ambiguity", "Enumerate candidate readings per Q2");
    sub_amb->add_option("--config", amb.config_path, "Clock config JSON")->required();
    sub_amb->add_option("--out", amb.outdir, "Output directory");
    sub_amb->callback([&] { cmd_ambiguity(amb); });

    MassBoundArgs mb;
    auto* sub_mb = app.add_subcommand("mass-bound", "Minimum hand mass for a given accuracy");
    sub_mb->add_option("--T", mb.T_seconds, "Running time, seconds")->required();
    sub_mb->add_option("--tau", mb.tau_seconds, "Accuracy, seconds")->required();
    sub_mb->add_option("--two-ell", mb.two_ell_m, "Dial length, meters")->required();
    sub_mb->add_option("--out", mb.outdir, "Output directory");
    sub_mb->callback([&] { cmd_mass_bound(mb); });

    MonteCarloArgs mc;
    auto* sub_mc = app.add_subcommand("monte-carlo", "Gaussian hand jitter reading-error statistics");
    sub_mc->add_option("--config", mc.config_path, "Clock config JSON")->required();
    sub_mc->add_option("--out", mc.outdir, "Output directory");
    sub_mc->add_option("--samples", mc.samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
    auto* seed_opt = sub_mc->add_option("--seed", mc.seed, "RNG seed");
    sub_mc->add_flag("--no-serial", mc.no_serial, "Disable serial resolution (rejected for m >= 2)");
    sub_mc->add_flag("--spread-inflation", mc.spread_inflation,
                     "Inflate sigma by the packet spread at each event");
    sub_mc->callback([&] {
        mc.seed_given = seed_opt->count() > 0;
        cmd_monte_carlo(mc);
    });

    SweepArgs sw;
    auto* sub_sw = app.add_subcommand("sweep", "Certify pairing law across the standard grid");
    sub_sw->add_option("--max-m", sw.max_m, "Largest dial multiplier");
    sub_sw->add_option("--max-n", sw.max_n, "Largest triad count");
    sub_sw->add_option("--out", sw.outdir, "Output directory");
    sub_sw->callback([&] { cmd_sweep(sw); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const StreamError& e) {
        std::cerr << "stream error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace swclock
