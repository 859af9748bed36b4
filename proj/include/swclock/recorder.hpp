#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "swclock/clock_model.hpp"
#include "swclock/kinematics.hpp"

namespace swclock {

/// Which of the Q3 quanta following a Q2 is its triad partner.
///
/// "Following" is strict: a Q3 arriving at exactly the same instant travels
/// together with the Q2 and belongs to an earlier triad, never to this one,
/// so it is skipped. With that convention the partner of the Q2 with serial
/// k is always the ceil(m*(k-1+phi)/n)-th strictly later Q3, and a gap of
/// exactly j Q3 spacings maps to offset j (not j+1).
struct PairingDecision {
    ArrivalRecord q2;
    int offset = 0;                     // j: partner is the j-th strictly later Q3; 0 = unresolved
    std::vector<int> candidate_offsets; // {j} when resolved, {1..m} when unknown
    std::optional<std::int64_t> resolved_serial;
    bool edge_truncated = false;        // stream ended before all candidates
};

/// A reconstructed scattering time.
struct TimeReading {
    Rat t_c;                      // units tau
    Rat t_0;                      // (1+beta) * t_c
    Rat rho;                      // (t3A - t2A) / (4*ell/c)
    std::vector<Rat> ambiguity_set;  // candidate t_c values, ascending
    PairingDecision pairing;
    std::optional<Rat> truth_t_c;    // simulation ground truth, for tests
    bool edge_truncated = false;

    /// Readings outside [-T/2, +T/2] indicate a mis-pairing.
    bool in_range(const ClockConfig& cfg) const {
        const Rat half(cfg.n, 2);
        return t_c >= -half && t_c <= half;
    }
};

/// Closed-form partner offset j = ceil(m*(k-1+phi)/n) for serial k.
/// Exact-boundary ties resolve to j, matching the rule that a co-travelling
/// Q3 is not "following". Certified against the position-enumeration oracle.
std::int64_t partner_offset(const ClockConfig& cfg, std::int64_t serial);

/// Serial number from the Q2 arrival spacing tau*(1-beta):
/// k = 1 + (t2A - first_q2_arrival) / (tau*(1-beta)).
/// Throws StreamError when that does not land exactly on an integer in 1..n.
std::int64_t deduce_serial(const Rat& q2_arrival, const Rat& first_q2_arrival,
                           const ClockConfig& cfg);

/// Short-dial (m = 1) readout: pair with the first strictly later Q3.
/// t_c = (-1/2 + c*(t3A - t2A)/(4*ell)) * T, exact.
TimeReading read_time_simple(const ArrivalRecord& q2, const ArrivalRecord& next_q3,
                             const ClockConfig& cfg);

/// Long-dial readout (m >= 2): deduce the serial from the registered first
/// Q2 arrival, select the partner with the closed-form offset, then read.
TimeReading read_time_with_serial(const ArrivalRecord& q2,
                                  const std::vector<ArrivalRecord>& stream,
                                  const Rat& first_q2_arrival, const ClockConfig& cfg);

/// Serial unknown: every one of the m following Q3s is a candidate partner.
/// Candidate t_c values differ by exact multiples of T/m. When the stream
/// ends early only the realizable candidates are listed and the reading is
/// flagged edge_truncated.
TimeReading enumerate_ambiguity(const ArrivalRecord& q2, const std::vector<ArrivalRecord>& stream,
                                const ClockConfig& cfg);

/// t_0 = (1+beta) * t_c. Also evaluates the recorder-frame form
/// ((c-v)/v)*(ell/c)*(2r-1) with v = -u, r = 1-rho and checks it agrees
/// exactly; a mismatch would be a defect and throws std::logic_error.
Rat convert_t0(const Rat& t_c, const ClockConfig& cfg);

enum class ReadMode { Simple, Serial, Ambiguity };

/// Decodes the whole stream. Simple pairs each Q2 with its first strictly
/// later Q3 (m = 1), Serial resolves serials first (m >= 2, requires the
/// recorder on before the first Q2), Ambiguity enumerates all m candidates
/// per Q2. Readings come out one per Q2 record; a head-truncated stream
/// whose opening Q3s lost their Q2 simply yields no reading for them. A
/// trailing Q2 with its partner cut off raises StreamError (Simple/Serial)
/// or comes back edge-truncated (Ambiguity).
std::vector<TimeReading> read_stream(const std::vector<ArrivalRecord>& stream,
                                     const ClockConfig& cfg, ReadMode mode);

/// CSV export, schema swclock-readings-v1:
/// serial,t_c_exact,t_c_float,t_0_float,ambiguity_count,candidates,error_tau
/// t_c_exact and candidates are in units of T ("p/q" strings), floats in
/// seconds, error_tau the exact reading error in units of tau.
void write_readings_csv(std::ostream& os, const ClockConfig& cfg,
                        const std::vector<TimeReading>& readings);

/// Largest |reading - truth| across readings, exact (units tau).
Rat max_abs_error(const std::vector<TimeReading>& readings);

}  // namespace swclock
