#include "swclock/recorder.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "swclock/errors.hpp"

namespace swclock {

namespace {

// t_c = (-1/2 + rho) * T with rho = (t3A - t2A) / (4 ell / c), all exact.
// Computes for any pair; a mis-pairing shows up through in_range, it is
// not rejected here.
TimeReading reading_from_pair(const ArrivalRecord& q2, const ArrivalRecord& q3,
                              const ClockConfig& cfg) {
    TimeReading r;
    r.rho = (q3.arrival_time - q2.arrival_time) / (cfg.two_ell * Rat(2));
    r.t_c = (r.rho - Rat(1, 2)) * Rat(cfg.n);
    r.t_0 = convert_t0(r.t_c, cfg);
    r.pairing.q2 = q2;
    return r;
}

// Indices of Q3 records in arrival order, for j-th-following lookups.
std::vector<std::size_t> q3_index(const std::vector<ArrivalRecord>& stream) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < stream.size(); ++i)
        if (stream[i].species == Species::Q3) idx.push_back(i);
    return idx;
}

// First entry of idx whose arrival is strictly later than t. A Q3 arriving
// at exactly t travels together with the Q2 and is never the partner.
std::size_t first_following(const std::vector<ArrivalRecord>& stream,
                            const std::vector<std::size_t>& idx, const Rat& t) {
    auto it = std::upper_bound(idx.begin(), idx.end(), t,
                               [&](const Rat& lhs, std::size_t i) {
                                   return lhs < stream[i].arrival_time;
                               });
    return static_cast<std::size_t>(it - idx.begin());
}

}  // namespace

std::int64_t partner_offset(const ClockConfig& cfg, std::int64_t serial) {
    if (serial < 1 || serial > cfg.n)
        throw std::invalid_argument("serial out of range 1..n");
    const Rat turns = Rat(cfg.m) * (Rat(serial - 1) + cfg.phi) / Rat(cfg.n);
    return turns.ceil();
}

std::int64_t deduce_serial(const Rat& q2_arrival, const Rat& first_q2_arrival,
                           const ClockConfig& cfg) {
    const Rat spacing = Rat(1) - cfg.beta;  // tau * (1 - beta), tau = 1
    const Rat steps = (q2_arrival - first_q2_arrival) / spacing;
    if (!steps.is_integer())
        throw StreamError("serial deduction failed: arrival offset is not a multiple of the Q2 spacing");
    const std::int64_t k = steps.num() + 1;
    if (k < 1 || k > cfg.n)
        throw StreamError("serial deduction failed: serial " + std::to_string(k) + " out of range");
    return k;
}

TimeReading read_time_simple(const ArrivalRecord& q2, const ArrivalRecord& next_q3,
                             const ClockConfig& cfg) {
    if (cfg.m != 1) throw ConfigError("simple readout requires m = 1");
    if (next_q3.species != Species::Q3) throw StreamError("partner record is not a Q3");
    TimeReading r = reading_from_pair(q2, next_q3, cfg);
    r.pairing.offset = 1;
    r.pairing.candidate_offsets = {1};
    r.ambiguity_set = {r.t_c};
    return r;
}

TimeReading read_time_with_serial(const ArrivalRecord& q2,
                                  const std::vector<ArrivalRecord>& stream,
                                  const Rat& first_q2_arrival, const ClockConfig& cfg) {
    if (cfg.m < 2) throw ConfigError("serial readout requires m >= 2");
    const std::int64_t k = deduce_serial(q2.arrival_time, first_q2_arrival, cfg);
    const std::int64_t j = partner_offset(cfg, k);
    const auto idx = q3_index(stream);
    const std::size_t base = first_following(stream, idx, q2.arrival_time);
    if (base + static_cast<std::size_t>(j) > idx.size())
        throw StreamError("stream truncated before partner Q3");
    TimeReading r = reading_from_pair(q2, stream[idx[base + j - 1]], cfg);
    r.pairing.offset = static_cast<int>(j);
    r.pairing.candidate_offsets = {static_cast<int>(j)};
    r.pairing.resolved_serial = k;
    r.ambiguity_set = {r.t_c};
    return r;
}

TimeReading enumerate_ambiguity(const ArrivalRecord& q2, const std::vector<ArrivalRecord>& stream,
                                const ClockConfig& cfg) {
    const auto idx = q3_index(stream);
    const std::size_t base = first_following(stream, idx, q2.arrival_time);
    const std::size_t avail = idx.size() - base;
    const std::size_t want = static_cast<std::size_t>(cfg.m);
    if (avail == 0) throw StreamError("unpaired reading: no Q3 follows this Q2");
    const std::size_t count = std::min(avail, want);
    TimeReading r = reading_from_pair(q2, stream[idx[base]], cfg);
    r.pairing.offset = 0;
    for (std::size_t i = 0; i < count; ++i) {
        r.pairing.candidate_offsets.push_back(static_cast<int>(i + 1));
        if (i == 0)
            r.ambiguity_set.push_back(r.t_c);
        else
            r.ambiguity_set.push_back(
                reading_from_pair(q2, stream[idx[base + i]], cfg).t_c);
    }
    r.edge_truncated = r.pairing.edge_truncated = (count < want);
    return r;
}

Rat convert_t0(const Rat& t_c, const ClockConfig& cfg) {
    const Rat t0 = (Rat(1) + cfg.beta) * t_c;
    // Recorder-frame route: ((c - v)/v) * (ell/c) * (2r - 1) with v = -u,
    // r = 1 - rho. Identical by construction; a mismatch means a defect.
    const Rat rho = t_c / Rat(cfg.n) + Rat(1, 2);
    const Rat r = Rat(1) - rho;
    const Rat v = -cfg.hand_speed();
    const Rat direct = ((Rat(1) - v) / v) * cfg.ell() * (r * Rat(2) - Rat(1));
    if (direct != t0) throw std::logic_error("t0 conversion routes disagree");
    return t0;
}

std::vector<TimeReading> read_stream(const std::vector<ArrivalRecord>& stream,
                                     const ClockConfig& cfg, ReadMode mode) {
    if (mode == ReadMode::Simple && cfg.m != 1)
        throw ConfigError("simple readout requires m = 1");
    if (mode == ReadMode::Serial && cfg.m < 2)
        throw ConfigError("serial readout requires m >= 2");

    const auto idx = q3_index(stream);
    std::optional<Rat> first_q2;
    std::vector<TimeReading> out;
    std::int64_t q2_count = 0;

    for (const auto& rec : stream) {
        if (rec.species != Species::Q2) continue;
        ++q2_count;
        if (!first_q2) first_q2 = rec.arrival_time;

        TimeReading r;
        if (mode == ReadMode::Ambiguity) {
            r = enumerate_ambiguity(rec, stream, cfg);
        } else {
            // Q2 arrival order is serial order, so Simple mode can count.
            const std::int64_t k = (mode == ReadMode::Serial)
                                       ? deduce_serial(rec.arrival_time, *first_q2, cfg)
                                       : q2_count;
            const std::int64_t j = (mode == ReadMode::Serial) ? partner_offset(cfg, k) : 1;
            const std::size_t base = first_following(stream, idx, rec.arrival_time);
            if (base + static_cast<std::size_t>(j) > idx.size())
                throw StreamError("stream truncated before partner Q3");
            r = reading_from_pair(rec, stream[idx[base + j - 1]], cfg);
            r.pairing.offset = static_cast<int>(j);
            r.pairing.candidate_offsets = {static_cast<int>(j)};
            r.pairing.resolved_serial = k;
            r.ambiguity_set = {r.t_c};
        }
        r.truth_t_c = scatter_time(cfg, rec.truth_serial);
        out.push_back(std::move(r));
    }
    return out;
}

void write_readings_csv(std::ostream& os, const ClockConfig& cfg,
                        const std::vector<TimeReading>& readings) {
    os << "# schema: swclock-readings-v1\n";
    os << "serial,t_c_exact,t_c_float,t_0_float,ambiguity_count,candidates,error_tau\n";
    const Rat period(cfg.n);
    char buf[64];
    for (const auto& r : readings) {
        if (r.pairing.resolved_serial)
            os << *r.pairing.resolved_serial;
        else
            os << "unknown";
        os << ',' << (r.t_c / period).str() << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.t_c.to_double() * cfg.tau_seconds());
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.t_0.to_double() * cfg.tau_seconds());
        os << buf << ',' << r.ambiguity_set.size() << ',';
        for (std::size_t i = 0; i < r.ambiguity_set.size(); ++i) {
            if (i) os << '|';
            os << (r.ambiguity_set[i] / period).str();
        }
        os << ',';
        if (r.truth_t_c) os << (r.t_c - *r.truth_t_c).str();
        os << '\n';
    }
}

Rat max_abs_error(const std::vector<TimeReading>& readings) {
    Rat worst(0);
    for (const auto& r : readings) {
        if (!r.truth_t_c) continue;
        const Rat err = (r.t_c - *r.truth_t_c).abs();
        if (err > worst) worst = err;
    }
    return worst;
}

}  // namespace swclock
