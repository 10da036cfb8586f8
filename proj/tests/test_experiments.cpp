#include "jch/experiments.hpp"
#include "jch/presets.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace jch;
namespace fs = std::filesystem;

namespace {

struct Csv {
    std::string comment;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    double num(std::size_t r, std::size_t c) const { return std::stod(rows[r][c]); }
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

Csv read_csv(const fs::path& path) {
    std::ifstream in(path);
    Csv csv;
    std::getline(in, csv.comment);
    std::string line;
    std::getline(in, line);
    csv.header = split(line);
    while (std::getline(in, line)) csv.rows.push_back(split(line));
    return csv;
}

class Scratch : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("jch_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

ExperimentConfig cfg_of(const std::string& text) { return parse_config(text, "inline"); }

}  // namespace

TEST(Csv, FormatIsScientificTwelveDigits) {
    EXPECT_EQ(format_real(0.0), "0.00000000000e+00");
    EXPECT_EQ(format_real(-1.0 / 3.0), "-3.33333333333e-01");
    EXPECT_EQ(format_real(123456789.0), "1.23456789000e+08");
    EXPECT_EQ(format_real(std::optional<double>{}), "NA");
    EXPECT_EQ(format_real(std::nan("")), "NA");
}

TEST(Csv, HashIsFnv1a) {
    const auto path = fs::temp_directory_path() / "jch_fnv_probe";
    std::ofstream(path, std::ios::binary) << "a";
    EXPECT_EQ(hex64(fnv1a_file(path)), "af63dc4c8601ec8c");
    std::ofstream(path, std::ios::binary | std::ios::trunc);
    EXPECT_EQ(hex64(fnv1a_file(path)), "cbf29ce484222325");
    fs::remove(path);
}

TEST(ParallelMap, KeepsInputOrder) {
    const auto out = parallel_map(50, 4, [](std::size_t i) {
        std::this_thread::sleep_for(std::chrono::microseconds((50 - i) * 20));
        return int(i * i);
    });
    ASSERT_EQ(out.size(), 50u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], int(i * i));
}

TEST(ParallelMap, RethrowsFirstFailureByIndex) {
    try {
        parallel_map(10, 3, [](std::size_t i) -> int {
            if (i == 7 || i == 4) throw std::runtime_error("point " + std::to_string(i));
            return 0;
        });
        FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "point 4");
    }
}

TEST(LogSpace, ExactEndpoints) {
    const auto v = log_space(1e-3, 1e3, 7);
    EXPECT_EQ(v.front(), 1e-3);
    EXPECT_EQ(v.back(), 1e3);
    EXPECT_NEAR(v[3], 1.0, 1e-14);
}

TEST_F(Scratch, SpacetimeTwoHeisenbergLimit) {
    const auto cfg = cfg_of("experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e-3\nn_samples = 41\n");
    run_spacetime(cfg, dir_);
    const auto ph = read_csv(dir_ / "spacetime_photonic.csv");
    const auto at = read_csv(dir_ / "spacetime_atomic.csv");
    ASSERT_EQ(ph.rows.size(), 41u);
    ASSERT_EQ(ph.header.size(), 101u);
    EXPECT_DOUBLE_EQ(ph.num(40, 0), 1e5);
    double worst = 0.0;
    for (std::size_t r = 0; r < ph.rows.size(); ++r)
        for (std::size_t c = 1; c < ph.header.size(); ++c) worst = std::max(worst, std::abs(ph.num(r, c) - at.num(r, c)));
    EXPECT_LT(worst, 2e-2);
}

TEST_F(Scratch, SpacetimePhotonDominatedAtomsStay) {
    const auto cfg = cfg_of("experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e3\nn_samples = 41\n");
    run_spacetime(cfg, dir_);
    const auto at = read_csv(dir_ / "spacetime_atomic.csv");
    for (std::size_t r = 0; r < at.rows.size(); ++r) {
        EXPECT_NEAR(at.num(r, 1), 0.5, 1e-3) << "row " << r;
        double rest = 0.0;
        for (std::size_t c = 2; c < at.header.size(); ++c) rest += at.num(r, c);
        EXPECT_LT(rest, 1e-3);
    }
}

TEST_F(Scratch, SpacetimeSingleSampleIsInitialState) {
    const auto cfg = cfg_of("experiment = spacetime\nn_cavities = 12\nn_samples = 1\nq0 = 4\n");
    run_spacetime(cfg, dir_);
    const auto ph = read_csv(dir_ / "spacetime_photonic.csv");
    const auto at = read_csv(dir_ / "spacetime_atomic.csv");
    ASSERT_EQ(ph.rows.size(), 1u);
    EXPECT_EQ(ph.num(0, 0), 0.0);
    for (std::size_t c = 1; c <= 12; ++c) {
        EXPECT_NEAR(ph.num(0, c), c == 4 ? 0.5 : 0.0, 1e-15);
        EXPECT_NEAR(at.num(0, c), c == 4 ? 0.5 : 0.0, 1e-15);
    }
}

TEST_F(Scratch, SpacetimeEnvelopeFollowsTriangle) {
    const auto cfg = cfg_of("experiment = spacetime\nn_cavities = 50\nkappa_over_beta = 1e-3\nn_samples = 11\n");
    run_spacetime(cfg, dir_);
    const auto env = read_csv(dir_ / "envelope.csv");
    EXPECT_EQ(env.header, (std::vector<std::string>{"t", "q_mean_photonic", "q_std_photonic", "q_mean_atomic",
                                                    "q_std_atomic", "envelope_photonic", "envelope_atomic"}));
    for (std::size_t r = 0; r < env.rows.size(); ++r) {
        EXPECT_NEAR(env.num(r, 5), triangle_wave(50, 1e-3, env.num(r, 0)), 1e-9);
    }
}

TEST_F(Scratch, CsvCarriesConfigAndHeader) {
    const auto cfg = expand_preset("fig2a");
    auto small = cfg;
    small.n_cavities = 10;
    small.n_samples = 3;
    run_spacetime(small, dir_);
    const auto csv = read_csv(dir_ / "envelope.csv");
    EXPECT_EQ(csv.comment, "# config: " + describe(small));
    EXPECT_NE(csv.comment.find("preset=fig2a"), std::string::npos);
    EXPECT_EQ(csv.header.front(), "t");
    std::ifstream gp(dir_ / "plot.gp");
    std::string first;
    std::getline(gp, first);
    EXPECT_NE(first.find("gnuplot"), std::string::npos);
}

TEST_F(Scratch, LocalizedSweepEndpoints) {
    const auto cfg = cfg_of("experiment = dispersion-sweep\nn_cavities = 100\nsweep_min = 1e-3\nsweep_max = 1e3\n"
                            "sweep_points = 2\n");
    run_dispersion_sweep(cfg, dir_);
    const auto csv = read_csv(dir_ / "dispersion.csv");
    EXPECT_EQ(csv.header, (std::vector<std::string>{"kappa_over_beta", "dq_photonic", "dq_atomic", "dq_heis_J_kappa",
                                                    "dq_heis_J_2kappa"}));
    ASSERT_EQ(csv.rows.size(), 2u);
    EXPECT_NEAR(csv.num(0, 1), csv.num(0, 2), 2e-2);
    EXPECT_NEAR(csv.num(0, 3), heisenberg_dispersion_reference(100, 1e-3, FrontFraction::quarter), 1e-10);
    EXPECT_NEAR(csv.num(1, 4), heisenberg_dispersion_reference(100, 2e3, FrontFraction::half), 1e-10);

    // Right endpoint: the atomic width comes from a 2.4e-5 tail fed by the
    // passing photon, checked against the dense solver.
    const ChainParams p = cfg.chain_at(1e3, 0.0);
    const auto occ = occupations(oracle_evolve(initial_state(cfg, p), build_dense(p), 25.0 / p.kappa));
    EXPECT_NEAR(csv.num(1, 2), position_moments(occ.atomic, Channel::atomic).q_std, 1e-9);
}

// The atomic tail amplitude is O(beta/kappa), so its width falls as 1/kappa
// and drops below 1e-2 once kappa/beta passes ~2e4.
TEST(DispersionSweep, AtomicWidthVanishesWithHopping) {
    const auto cfg = cfg_of("experiment = dispersion-sweep\nn_cavities = 100\n");
    const double a = *dispersion_point(cfg, 1e3).dq_atomic;
    const double b = *dispersion_point(cfg, 1e4).dq_atomic;
    const double c = *dispersion_point(cfg, 1e5).dq_atomic;
    EXPECT_NEAR(a / b, 10.0, 0.1);
    EXPECT_NEAR(b / c, 10.0, 0.1);
    EXPECT_LT(c, 1e-2);
}

// Where hopping is weak the two modes are copies of one spin chain and their
// widths coincide to 1e-6. Elsewhere they differ by up to ~0.3% (see README).
TEST(DispersionSweep, GaussianModesShareWidth) {
    const auto cfg = cfg_of("experiment = dispersion-sweep\nn_cavities = 100\ninitial = gaussian\nsample_time = 0.125\n"
                            "sweep_min = 1e-3\nsweep_max = 1e3\nsweep_points = 25\n");
    for (const auto& row : dispersion_sweep(cfg, 2)) {
        ASSERT_TRUE(row.dq_photonic && row.dq_atomic);
        if (row.kappa_over_beta <= 1e-2) {
            EXPECT_NEAR(*row.dq_photonic, *row.dq_atomic, 1e-6) << row.kappa_over_beta;
        } else {
            EXPECT_NEAR(*row.dq_photonic / *row.dq_atomic, 1.0, 1e-2) << row.kappa_over_beta;
        }
        EXPECT_NEAR(*row.dq_heis_j_kappa, 10.0 / std::sqrt(2.0), 1e-6);
    }
}

TEST(DispersionSweep, JobsDoNotChangeResults) {
    const auto cfg = cfg_of("experiment = dispersion-sweep\nn_cavities = 30\nprofile = parabolic\nsweep_points = 9\n");
    const auto a = dispersion_sweep(cfg, 1);
    const auto b = dispersion_sweep(cfg, 3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].kappa_over_beta, b[i].kappa_over_beta);
        EXPECT_EQ(a[i].dq_photonic, b[i].dq_photonic);
        EXPECT_EQ(a[i].dq_heis_j_2kappa, b[i].dq_heis_j_2kappa);
    }
}

TEST_F(Scratch, ParabolicSpinProfileRefocuses) {
    const double pi = std::numbers::pi;
    std::ostringstream text;
    text << "experiment = profiles\nsystem = spin\nn_cavities = 100\nprofile = parabolic\nsnapshot_times = 0, "
         << format_real(pi / 2) << ", " << format_real(pi) << "\n";
    run_profiles(cfg_of(text.str()), dir_);
    const auto csv = read_csv(dir_ / "profiles.csv");
    EXPECT_EQ(csv.header, (std::vector<std::string>{"t", "cavity", "spin"}));
    ASSERT_EQ(csv.rows.size(), 300u);
    EXPECT_NEAR(csv.num(0, 2), 1.0, 1e-14);
    for (std::size_t r = 1; r < 100; ++r) EXPECT_NEAR(csv.num(r, 2), 0.0, 1e-14);
    double outside = 0.0;
    for (std::size_t r = 200; r < 298; ++r) outside += csv.num(r, 2);
    EXPECT_LT(outside, 1e-6);
    EXPECT_NEAR(csv.num(299, 2), 1.0, 1e-6);
}

TEST_F(Scratch, GaussianSnapshotsAdvance) {
    const auto cfg = cfg_of("experiment = profiles\nsystem = spin\nn_cavities = 100\ninitial = gaussian\n"
                            "qc = 70\nwidth = 5\nsnapshot_times = 0, 10, 20, 30\n");
    run_profiles(cfg, dir_);
    const auto csv = read_csv(dir_ / "profiles.csv");
    std::vector<double> peaks;
    for (std::size_t s = 0; s < 4; ++s) {
        std::vector<double> p;
        for (std::size_t q = 0; q < 100; ++q) p.push_back(csv.num(s * 100 + q, 2));
        peaks.push_back(peak_position(p));
    }
    // the k = pi/2 packet moves toward Q = 1 at speed J = 1
    for (std::size_t s = 1; s < peaks.size(); ++s) EXPECT_NEAR(peaks[s - 1] - peaks[s], 10.0, 2.0) << s;
}

TEST_F(Scratch, JchProfilesHavePhotonicAndAtomicColumns) {
    const auto cfg = cfg_of("experiment = profiles\nn_cavities = 8\nkappa_over_beta = 0.3\nsnapshot_times = 2, 0\n");
    run_profiles(cfg, dir_);
    const auto csv = read_csv(dir_ / "profiles.csv");
    EXPECT_EQ(csv.header, (std::vector<std::string>{"t", "cavity", "photonic", "atomic"}));
    ASSERT_EQ(csv.rows.size(), 16u);
    EXPECT_EQ(csv.num(0, 0), 2.0);
    EXPECT_NEAR(csv.num(8, 2), 0.5, 1e-14);
    double total = 0.0;
    for (std::size_t r = 0; r < 8; ++r) total += csv.num(r, 2) + csv.num(r, 3);
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST_F(Scratch, LimitsReport) {
    const auto cfg = cfg_of("experiment = limits-report\nn_cavities = 100\nlimit_points = 1:1e3, 1e3:0, 1:0\n");
    run_limits_report(cfg, dir_, 2);
    const auto csv = read_csv(dir_ / "limits.csv");
    ASSERT_EQ(csv.rows.size(), 3u);
    EXPECT_EQ(csv.rows[0][0], "large_detuning");
    EXPECT_LT(csv.num(0, 7), 0.10);
    EXPECT_EQ(csv.rows[1][0], "large_kappa");
    EXPECT_LT(std::abs(csv.num(1, 6)), 1e-3 * 1e3);
    EXPECT_EQ(csv.rows[2][0], "no_prediction");
    EXPECT_EQ(csv.rows[2][3], "NA");
    EXPECT_EQ(csv.rows[2][7], "NA");
}

TEST_F(Scratch, IdenticalConfigIsByteIdentical) {
    auto cfg = expand_preset("fig8c");
    cfg.n_samples = 50;
    run_experiment(cfg, dir_ / "a");
    run_experiment(cfg, dir_ / "b");
    for (const char* f : {"spacetime_photonic.csv", "spacetime_atomic.csv", "envelope.csv", "plot.gp"}) {
        EXPECT_EQ(fnv1a_file(dir_ / "a" / f), fnv1a_file(dir_ / "b" / f)) << f;
    }
}

TEST_F(Scratch, SpinChainRun) {
    auto cfg = expand_preset("fig4b");
    cfg.n_samples = 17;
    const auto r = run_spin_chain(cfg, dir_);
    EXPECT_EQ(r.files.size(), 3u);
    const auto env = read_csv(dir_ / "envelope.csv");
    for (std::size_t i = 0; i < env.rows.size(); ++i) {
        EXPECT_NEAR(env.num(i, 1), parabolic_position(100, 1.0, env.num(i, 0)), 1e-6);
        EXPECT_NEAR(env.num(i, 3), env.num(i, 1), 1e-6);
    }
}

TEST(Runner, UnwritableDirectoryIsRuntimeError) {
    const auto blocker = fs::temp_directory_path() / "jch_blocker_file";
    std::ofstream(blocker) << "x";
    EXPECT_THROW(run_experiment(cfg_of("n_cavities = 4\nn_samples = 2\n"), blocker / "sub"), std::runtime_error);
    fs::remove(blocker);
}
