#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "swclock/clock_model.hpp"
#include "swclock/rational.hpp"

namespace swclock {

enum class Body { D1, Hand, D3 };
enum class Species { Q1, Q2, Q3 };

const char* to_string(Species s);
const char* to_string(Body b);

/// One scattering: an incoming quantum bounces off a clock body.
/// Times are clock time in units of tau, positions in units of c*tau.
struct ScatterEvent {
    Body body;
    std::int64_t serial;  // triad index k, 1..n
    Rat time;
    Rat position;
};

/// Post-scattering photon world line, slope -c.
struct QuantumTrack {
    ScatterEvent scatter;

    /// Valid for t >= scatter.time.
    Rat position_at(const Rat& t) const { return scatter.position - (t - scatter.time); }
};

/// What the recorder sees. truth_serial is simulation ground truth carried
/// along for test oracles; recorder logic never reads it.
struct ArrivalRecord {
    Species species;
    Rat arrival_time;
    std::int64_t truth_serial;
};

/// Hand position at its k-th scattering: ell - (k-1+phi) * 2*ell/n.
Rat hand_position(const ClockConfig& cfg, std::int64_t k);

/// Clock time of the k-th hand scattering: k - 1 + phi - n/2 (units tau).
Rat scatter_time(const ClockConfig& cfg, std::int64_t k);

/// All 3n scatterings of the n-triad array, grouped per triad:
/// D1 at -ell, hand at hand_position(k), D3 at +ell, with the D1/D3 times
/// offset from the hand time by the light travel along the shared incoming
/// world line.
std::vector<ScatterEvent> generate_events(const ClockConfig& cfg);

/// Arrival records at the recorder, sorted by time. Simultaneous arrivals
/// are ordered Q1 < Q2 < Q3 (in particular Q2 before Q3), then by serial;
/// the order is documented and stable. Note a co-travelling Q3 tied with a
/// Q2 is never that Q2's triad partner (the partner trails strictly behind),
/// so pairing logic treats only strictly later Q3s as "following".
std::vector<ArrivalRecord> arrival_stream(const ClockConfig& cfg,
                                          const std::vector<ScatterEvent>& events);

/// Same, generating the event list in place.
std::vector<ArrivalRecord> arrival_stream(const ClockConfig& cfg);

/// CSV export, schema swclock-arrivals-v1:
/// species, arrival_time_tau (exact p/q), arrival_time_s, truth_serial.
void write_arrivals_csv(std::ostream& os, const ClockConfig& cfg,
                        const std::vector<ArrivalRecord>& stream);

}  // namespace swclock
