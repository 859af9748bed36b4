#include "swclock/kinematics.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <tuple>

namespace swclock {

const char* to_string(Species s) {
    switch (s) {
        case Species::Q1: return "Q1";
        case Species::Q2: return "Q2";
        case Species::Q3: return "Q3";
    }
    return "?";
}

const char* to_string(Body b) {
    switch (b) {
        case Body::D1: return "D1";
        case Body::Hand: return "Hand";
        case Body::D3: return "D3";
    }
    return "?";
}

Rat hand_position(const ClockConfig& cfg, std::int64_t k) {
    // x_h(k) = ell - (k-1+phi) * 2*ell/n
    return cfg.ell() - (Rat(k - 1) + cfg.phi) * cfg.two_ell / Rat(cfg.n);
}

Rat scatter_time(const ClockConfig& cfg, std::int64_t k) {
    return Rat(k - 1) + cfg.phi - Rat(cfg.n, 2);
}

std::vector<ScatterEvent> generate_events(const ClockConfig& cfg) {
    std::vector<ScatterEvent> events;
    events.reserve(3 * static_cast<std::size_t>(cfg.n));
    const Rat ell = cfg.ell();
    for (std::int64_t k = 1; k <= cfg.n; ++k) {
        const Rat t = scatter_time(cfg, k);
        const Rat xh = hand_position(cfg, k);
        // The triad shares one incoming world line through (xh, t) with
        // slope +c, so D1 scatters earlier and D3 later than the hand.
        events.push_back({Body::D1, k, t - (xh + ell), -ell});
        events.push_back({Body::Hand, k, t, xh});
        events.push_back({Body::D3, k, t + (ell - xh), ell});
    }
    return events;
}

std::vector<ArrivalRecord> arrival_stream(const ClockConfig& cfg,
                                          const std::vector<ScatterEvent>& events) {
    std::vector<ArrivalRecord> stream;
    stream.reserve(events.size());
    for (const auto& ev : events) {
        Species sp = ev.body == Body::D1    ? Species::Q1
                     : ev.body == Body::Hand ? Species::Q2
                                             : Species::Q3;
        stream.push_back({sp, ev.time + (ev.position - cfg.recorder_x), ev.serial});
    }
    std::sort(stream.begin(), stream.end(), [](const ArrivalRecord& a, const ArrivalRecord& b) {
        return std::tie(a.arrival_time, a.species, a.truth_serial) <
               std::tie(b.arrival_time, b.species, b.truth_serial);
    });
    return stream;
}

std::vector<ArrivalRecord> arrival_stream(const ClockConfig& cfg) {
    return arrival_stream(cfg, generate_events(cfg));
}

void write_arrivals_csv(std::ostream& os, const ClockConfig& cfg,
                        const std::vector<ArrivalRecord>& stream) {
    os << "# schema: swclock-arrivals-v1\n";
    os << "species,arrival_time_tau,arrival_time_s,truth_serial\n";
    const double tau = cfg.tau_seconds();
    char buf[40];
    for (const auto& rec : stream) {
        std::snprintf(buf, sizeof buf, "%.17g", rec.arrival_time.to_double() * tau);
        os << to_string(rec.species) << ',' << rec.arrival_time.str() << ',' << buf << ','
           << rec.truth_serial << '\n';
    }
}

}  // namespace swclock
