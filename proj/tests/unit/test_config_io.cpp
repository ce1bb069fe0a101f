// test_config_io.cpp
// Config grammar, round-trip stability, the CSV log schema, and bit-exact
// snapshots.

#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "acon/run_config.hpp"
#include "acon/run_log.hpp"
#include "acon/snapshot.hpp"
#include "acon/spectral.hpp"
#include "oracles.hpp"

using namespace acon;

namespace {

std::string temp_path(const std::string& stem) {
    return std::string("acon_test_") + stem;
}

const char* kSampleConfig = R"(# sample configuration
[grid]
dim = 2
points = 32 32
half_lengths = 0.5 0.5

[model]
epsilon = 0.05
gamma11 = 100
gamma12 = 20
gamma22 = 100
omega1 = 0.25
omega2 = 0.3
penalty_m = 1000

[stepping]
scheme = mm
tau = 1e-3
horizon = 0.01

[init]
kind = random_uniform
seed = 7
amplitude = 0.05

[output]
log_path = out.csv
snapshot_every = 5
)";

} // namespace

TEST_CASE("config: parse, defaults, serialize round trip") {
    RunConfig cfg = RunConfig::parse_string(kSampleConfig, "sample");
    CHECK(cfg.dim == 2);
    CHECK(cfg.points == std::vector<int>{32, 32});
    CHECK(cfg.model.epsilon == doctest::Approx(0.05));
    CHECK(cfg.model.gamma[0][1] == 20.0);
    CHECK(cfg.model.gamma[1][0] == 20.0);
    CHECK(cfg.stepping.scheme == Scheme::MinimizingMovement);
    CHECK(cfg.stepping.tau == doctest::Approx(1e-3));
    CHECK(cfg.horizon == doctest::Approx(0.01));
    CHECK(cfg.init.kind == InitKind::RandomUniform);
    CHECK(cfg.init.seed == 7);
    CHECK(cfg.log_path == "out.csv");
    CHECK(cfg.snapshot_every == 5);
    // Untouched defaults survive.
    CHECK(cfg.stepping.inner_max_iters == 10000);
    CHECK(cfg.precision == 17);

    const std::string text = cfg.serialize();
    RunConfig back = RunConfig::parse_string(text, "round");
    CHECK(back.serialize() == text);
}

TEST_CASE("config: line-numbered errors") {
    auto message_of = [](const std::string& text) {
        try {
            RunConfig::parse_string(text, "cfg");
            return std::string();
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
    };

    // Unknown key, with its line number.
    std::string msg = message_of("[grid]\nwavelength = 3\n");
    CHECK(msg.find("cfg:2") != std::string::npos);
    CHECK(msg.find("wavelength") != std::string::npos);

    msg = message_of("[grid]\ndim = 4\n");
    CHECK(msg.find("dim must be 2 or 3") != std::string::npos);

    msg = message_of("[model]\nepsilon = -1\n");
    CHECK(msg.find("cfg:2") != std::string::npos);

    // Positive-definiteness is a cross-key invariant; the message names it.
    msg = message_of("[model]\ngamma11 = 1\ngamma12 = 5\ngamma22 = 1\n");
    CHECK(msg.find("positive definite") != std::string::npos);
    CHECK(msg.find("cfg:") != std::string::npos);

    msg = message_of("[model]\nomega1 = 1\n");
    CHECK(msg.find("omega") != std::string::npos);

    msg = message_of("[grid]\ndealias = true\n");
    CHECK(msg.find("reserved") != std::string::npos);

    msg = message_of("[grid]\npoints = 32 32 32\n");
    CHECK(msg.find("one entry per axis") != std::string::npos);

    msg = message_of("key_without_section = 1\n");
    CHECK(msg.find("outside any section") != std::string::npos);

    msg = message_of("[stepping]\ntau = fast\n");
    CHECK(msg.find("expected a number") != std::string::npos);

    CHECK_THROWS_AS(RunConfig::parse_file("does_not_exist.ini"), IoError);
}

TEST_CASE("csv log: exact header and re-parse-exact doubles") {
    CHECK(std::string(kRunLogHeader) ==
          "step,time,energy_total,energy_interfacial,energy_potential,"
          "energy_longrange,lambda1,lambda2,volres1,volres2,inc1_l2,inc2_l2,"
          "inner_iters,mm_slack");

    // A tiny synthetic trajectory.
    PeriodicGrid g({8, 8}, {0.5, 0.5});
    ModelParams p;
    p.omega = {0.3, 0.4};
    Trajectory traj(PhaseState(ScalarField(g, 0.4), ScalarField(g, 0.5), p));
    StepReport r;
    r.energy_before = 1.0 / 3.0;
    r.energy_after = 0.1;
    r.breakdown_after = {0.05, 0.03, 0.02, 0.1};
    r.lambda = {-1.0 / 7.0, 2.5e-11};
    r.volume_residuals = {1e-13, -2e-16};
    r.increment_l2 = {0.125, 0.25};
    r.inner_iters = 42;
    r.mm_inequality_slack = 4.9406564584124654e-324; // denormal survives
    traj.reports = {r};
    traj.times = {1e-3};

    const std::string path = temp_path("log.csv");
    write_run_log(path, traj);
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == kRunLogHeader);

    // Re-parse every numeric column and compare bitwise.
    std::vector<std::string> cells;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 14);
    CHECK(cells[0] == "1");
    CHECK(std::stod(cells[1]) == 1e-3);
    CHECK(std::stod(cells[2]) == 0.1);
    CHECK(std::stod(cells[6]) == -1.0 / 7.0);
    CHECK(std::stod(cells[7]) == 2.5e-11);
    // std::stod throws out_of_range on subnormals; strtod is the parser
    // that matters for log consumers.
    CHECK(std::strtod(cells[13].c_str(), nullptr) == 4.9406564584124654e-324);
    std::remove(path.c_str());
}

TEST_CASE("format_double: 17 digits re-parse to the identical bits") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        double x;
        const std::uint64_t bits = rng();
        std::memcpy(&x, &bits, 8);
        if (!std::isfinite(x)) continue;
        const double back = std::stod(format_double(x, 17));
        CHECK(back == x);
    }
    CHECK(format_double(0.1, 17) == "0.10000000000000001");
}

TEST_CASE("snapshot: bit-exact round trip in 2D and 3D") {
    std::mt19937_64 rng(43);
    for (const PeriodicGrid& g :
         {PeriodicGrid({8, 4}, {0.5, 0.25}), PeriodicGrid({4, 6, 4}, {0.5, 0.7, 0.3})}) {
        ScalarField f1 = test::random_field(g, rng, -3.0, 3.0);
        ScalarField f2 = test::random_field(g, rng, -3.0, 3.0);
        f1[0] = -0.0; // signed zero must survive
        const std::string path = temp_path("snap.bin");
        write_snapshot(path, f1, f2);
        SnapshotData back = read_snapshot(path);
        CHECK(back.grid().same_layout(g));
        CHECK(std::memcmp(back.phi1.data(), f1.data(),
                          f1.size() * sizeof(double)) == 0);
        CHECK(std::memcmp(back.phi2.data(), f2.data(),
                          f2.size() * sizeof(double)) == 0);
        std::remove(path.c_str());
    }
}

TEST_CASE("snapshot: rejects bad magic, truncation, trailing bytes") {
    PeriodicGrid g({4, 4}, {0.5, 0.5});
    ScalarField f(g, 1.0);
    const std::string path = temp_path("snap2.bin");
    write_snapshot(path, f, f);

    // Bad magic.
    {
        std::fstream io(path, std::ios::in | std::ios::out | std::ios::binary);
        io.write("NOPE", 4);
    }
    CHECK_THROWS_AS(read_snapshot(path), IoError);

    // Truncated payload.
    write_snapshot(path, f, f);
    {
        std::ifstream in(path, std::ios::binary);
        std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(data.data(), static_cast<std::streamsize>(data.size() - 9));
    }
    CHECK_THROWS_AS(read_snapshot(path), IoError);

    // Trailing garbage.
    write_snapshot(path, f, f);
    {
        std::ofstream out(path, std::ios::binary | std::ios::app);
        out.put('\0');
    }
    CHECK_THROWS_AS(read_snapshot(path), IoError);

    CHECK_THROWS_AS(read_snapshot("missing_snapshot.bin"), IoError);
    std::remove(path.c_str());
}
