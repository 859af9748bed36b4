#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "swclock/clock_model.hpp"
#include "swclock/kinematics.hpp"

namespace swclock {

/// Simultaneous positions of scattered quanta, the raw material for the
/// brute-force pairing check. Everything here is computed from trajectories
/// alone; none of the recorder's closed-form rules are used.
struct SnapshotEntry {
    Species species;
    std::int64_t serial;
    Rat x;
};

struct Snapshot {
    Rat t;
    std::vector<SnapshotEntry> positions;  // only quanta already scattered at t
};

/// Positions of every quantum scattered by time t.
Snapshot take_snapshot(const ClockConfig& cfg, const Rat& t);

/// Earliest time at which all 3n quanta exist (one step past the last
/// scattering), the natural snapshot instant for pairing enumeration.
Rat snapshot_time(const ClockConfig& cfg);

/// Partner offsets by direct position comparison: in one snapshot, each Q2's
/// offset is the number of Q3 quanta lying strictly behind it (larger x, so
/// arriving later) up to and including its own triad's Q3. A Q3 at exactly
/// the Q2's position travels with it and is not counted. Returns
/// serial -> offset. No closed-form pairing rule is consulted.
std::map<std::int64_t, std::int64_t> oracle_pairing(const ClockConfig& cfg);

/// Ground-truth scattering times recovered from hand positions alone,
/// via the dial calibration t = -x_h * n / (2 ell). Returns serial -> t (tau).
std::map<std::int64_t, Rat> oracle_reading(const ClockConfig& cfg);

/// CSV export, schema swclock-pairing-v1: n,m,phi,k,offset
void write_pairing_csv(std::ostream& os, const ClockConfig& cfg,
                       const std::map<std::int64_t, std::int64_t>& offsets);

}  // namespace swclock
