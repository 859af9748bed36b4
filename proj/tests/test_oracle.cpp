#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <sstream>
#include <vector>

#include "swclock/clock_model.hpp"
#include "swclock/kinematics.hpp"
#include "swclock/oracle.hpp"
#include "swclock/recorder.hpp"

using namespace swclock;

TEST_CASE("snapshot catches every quantum in flight") {
    const ClockConfig cfg = build_config(6, 2, 1.0, std::nullopt, Rat(3, 4));
    const Snapshot snap = take_snapshot(cfg, snapshot_time(cfg));
    CHECK(snap.positions.size() == 18);
    // replay: each entry must sit on the corresponding track
    std::map<std::pair<Species, std::int64_t>, Rat> expected;
    for (const auto& ev : generate_events(cfg)) {
        QuantumTrack track{ev};
        const Species sp = ev.body == Body::D1    ? Species::Q1
                           : ev.body == Body::Hand ? Species::Q2
                                                   : Species::Q3;
        expected[{sp, ev.serial}] = track.position_at(snap.t);
    }
    for (const auto& entry : snap.positions) {
        const auto key = std::make_pair(entry.species, entry.serial);
        REQUIRE(expected.count(key) == 1);
        CHECK(entry.x == expected.at(key));
    }
}

TEST_CASE("relative distances are frozen once everything is in flight") {
    const ClockConfig cfg = build_config(9, 3, 1.0);
    const Rat t1 = snapshot_time(cfg);
    const Rat t2 = t1 + Rat(17, 3);
    const Snapshot a = take_snapshot(cfg, t1);
    const Snapshot b = take_snapshot(cfg, t2);
    REQUIRE(a.positions.size() == b.positions.size());
    for (std::size_t i = 1; i < a.positions.size(); ++i) {
        const Rat da = a.positions[i].x - a.positions[0].x;
        const Rat db = b.positions[i].x - b.positions[0].x;
        CHECK(da == db);
    }
}

TEST_CASE("snapshot spacing of the dial-end markers") {
    // consecutive Q3 quanta ride (1 + beta) apart; m of them fit in one dial width
    for (auto [n, m] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {6, 1}, {11, 2}, {9, 3}, {30, 8}}) {
        const ClockConfig cfg = build_config(n, m, 1.0, std::nullopt, Rat(1, 4));
        const Snapshot snap = take_snapshot(cfg, snapshot_time(cfg));
        std::map<std::int64_t, Rat> q3;
        for (const auto& e : snap.positions)
            if (e.species == Species::Q3) q3[e.serial] = e.x;
        const Rat spacing = Rat(1) + cfg.beta;
        CHECK(spacing == cfg.two_ell * Rat(2) / Rat(m));
        for (std::int64_t k = 2; k <= n; ++k) CHECK(q3.at(k) - q3.at(k - 1) == spacing);
    }
}

TEST_CASE("geometric pairing oracle on the worked dials") {
    const auto one = oracle_pairing(build_config(6, 1, 1.0));
    for (std::int64_t k = 1; k <= 6; ++k) CHECK(one.at(k) == 1);

    const auto two = oracle_pairing(build_config(11, 2, 1.0));
    for (std::int64_t k = 1; k <= 6; ++k) CHECK(two.at(k) == 1);
    for (std::int64_t k = 7; k <= 11; ++k) CHECK(two.at(k) == 2);

    const auto three = oracle_pairing(build_config(9, 3, 1.0));
    for (std::int64_t k = 1; k <= 3; ++k) CHECK(three.at(k) == 1);
    for (std::int64_t k = 4; k <= 6; ++k) CHECK(three.at(k) == 2);
    for (std::int64_t k = 7; k <= 9; ++k) CHECK(three.at(k) == 3);
}

TEST_CASE("closed form matches the geometric oracle on a dense grid") {
    const std::vector<Rat> phis{Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
    for (std::int64_t m = 1; m <= 5; ++m) {
        for (std::int64_t n = std::max<std::int64_t>(2, m + 1); n <= 60; ++n) {
            for (const Rat& phi : phis) {
                const ClockConfig cfg = build_config(n, m, 1.0, std::nullopt, phi);
                const auto oracle = oracle_pairing(cfg);
                for (std::int64_t k = 1; k <= n; ++k) {
                    CHECK(partner_offset(cfg, k) == oracle.at(k));
                }
            }
        }
    }
}

TEST_CASE("position oracle reproduces the scatter times") {
    // hand position alone determines the reading: t = -x_h * n / (2 ell)
    const ClockConfig quarter = build_config(4, 1, 4.0, std::nullopt, Rat(1));
    const auto at_end = oracle_reading(quarter);
    CHECK(at_end.at(2) == Rat(0));
    CHECK(at_end.at(4) == quarter.running_time() / Rat(2));

    const ClockConfig mid = build_config(4, 1, 4.0);
    const auto centered = oracle_reading(mid);
    CHECK(centered.at(2) == Rat(-1, 2));
    CHECK(centered.at(1) == -Rat(3, 2));

    for (auto [n, m] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {5, 1}, {11, 2}, {12, 3}, {17, 5}}) {
        for (const Rat& phi : {Rat(1, 4), Rat(1, 2), Rat(1)}) {
            const ClockConfig cfg = build_config(n, m, 1.0, std::nullopt, phi);
            const auto oracle = oracle_reading(cfg);
            for (std::int64_t k = 1; k <= n; ++k) {
                CHECK(oracle.at(k) == scatter_time(cfg, k));
            }
        }
    }
}

TEST_CASE("pairing csv carries the grid coordinates") {
    const ClockConfig cfg = build_config(9, 3, 1.0);
    std::ostringstream os;
    write_pairing_csv(os, cfg, oracle_pairing(cfg));
    const std::string text = os.str();
    CHECK(text.rfind("# schema: swclock-pairing-v1\n", 0) == 0);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "n,m,phi,k,offset");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.rfind("9,3,1/2,", 0) == 0);
    }
    CHECK(rows == 9);
}
