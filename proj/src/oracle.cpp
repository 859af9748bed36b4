#include "swclock/oracle.hpp"

#include <ostream>

namespace swclock {

Snapshot take_snapshot(const ClockConfig& cfg, const Rat& t) {
    Snapshot snap;
    snap.t = t;
    for (const auto& ev : generate_events(cfg)) {
        if (ev.time > t) continue;
        QuantumTrack track{ev};
        Species sp = ev.body == Body::D1    ? Species::Q1
                     : ev.body == Body::Hand ? Species::Q2
                                             : Species::Q3;
        snap.positions.push_back({sp, ev.serial, track.position_at(t)});
    }
    return snap;
}

Rat snapshot_time(const ClockConfig& cfg) {
    Rat last(0);
    bool first = true;
    for (const auto& ev : generate_events(cfg)) {
        if (first || ev.time > last) last = ev.time;
        first = false;
    }
    return last + Rat(1);
}

std::map<std::int64_t, std::int64_t> oracle_pairing(const ClockConfig& cfg) {
    const Snapshot snap = take_snapshot(cfg, snapshot_time(cfg));

    std::map<std::int64_t, Rat> q2_x, q3_x;
    for (const auto& e : snap.positions) {
        if (e.species == Species::Q2) q2_x[e.serial] = e.x;
        if (e.species == Species::Q3) q3_x[e.serial] = e.x;
    }

    // Q3 positions grow with serial, so walking the serial ladder downward
    // from k enumerates the Q3 quanta behind the Q2 in arrival order.
    std::map<std::int64_t, std::int64_t> offsets;
    for (const auto& [k, p] : q2_x) {
        std::int64_t count = 0;
        for (std::int64_t i = k; i >= 1 && q3_x.at(i) > p; --i) ++count;
        offsets[k] = count;
    }
    return offsets;
}

std::map<std::int64_t, Rat> oracle_reading(const ClockConfig& cfg) {
    std::map<std::int64_t, Rat> times;
    for (const auto& ev : generate_events(cfg)) {
        if (ev.body != Body::Hand) continue;
        times[ev.serial] = -ev.position * Rat(cfg.n) / cfg.two_ell;
    }
    return times;
}

void write_pairing_csv(std::ostream& os, const ClockConfig& cfg,
                       const std::map<std::int64_t, std::int64_t>& offsets) {
    os << "# schema: swclock-pairing-v1\n";
    os << "n,m,phi,k,offset\n";
    for (const auto& [k, j] : offsets)
        os << cfg.n << ',' << cfg.m << ',' << cfg.phi.str() << ',' << k << ',' << j << '\n';
}

}  // namespace swclock
