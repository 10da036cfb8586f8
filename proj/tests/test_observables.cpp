#include "jch/observables.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace jch;

TEST(PositionMoments, DeltaAtFirstCavity) {
    const auto s = position(initial_spin(10, LocalizedStart{1}));
    EXPECT_EQ(s.q_mean, 1.0);
    EXPECT_EQ(s.q_std, 0.0);
    EXPECT_EQ(s.mode_weight, 1.0);
}

TEST(PositionMoments, TwoPointDistribution) {
    const std::vector<double> p{0.25, 0.0, 0.25};
    const auto s = position_moments(p, Channel::photonic);
    EXPECT_DOUBLE_EQ(s.q_mean, 2.0);
    EXPECT_DOUBLE_EQ(s.q_std, 1.0);
    EXPECT_DOUBLE_EQ(s.mode_weight, 0.5);
}

TEST(PositionMoments, UnoccupiedModeIsAnError) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(6);
    v(0) = 1.0;
    const SingleExcitationState s(v);
    EXPECT_THROW(conditional_position(s, Mode::atomic), std::domain_error);
    EXPECT_NO_THROW(conditional_position(s, Mode::photonic));
}

TEST(Occupations, SumToOne) {
    const auto psi = initial_gaussian_jch(20, 8.0, 3.0, 1.0);
    EXPECT_NEAR(occupations(psi).total(), 1.0, 1e-12);
}

TEST(Envelopes, TriangleWaveStartsAtOne) {
    EXPECT_NEAR(triangle_wave(100, 1.0, 0.0), 1.0, 1e-12);
    EXPECT_NEAR(triangle_wave(100, 1.0, 100.0), 100.0, 1e-9);
    EXPECT_NEAR(triangle_wave(100, 1.0, 200.0), 1.0, 1e-9);
    // slope J(N-1)/N on the rising edge
    EXPECT_NEAR(triangle_wave(100, 2.0, 10.0) - triangle_wave(100, 2.0, 9.0), 2.0 * 99 / 100, 1e-9);
}

TEST(Envelopes, CenteredTriangleStartsMidChain) {
    EXPECT_NEAR(triangle_wave_centered(100, 1.0, 0.0), 50.5, 1e-12);
    EXPECT_NEAR(triangle_wave_centered(100, 1.0, 50.0), 100.0, 1e-9);
}

TEST(Envelopes, ParabolicPosition) {
    EXPECT_NEAR(parabolic_position(100, 1.0, 0.0), 1.0, 1e-12);
    EXPECT_NEAR(parabolic_position(100, 1.0, std::numbers::pi), 100.0, 1e-12);
    EXPECT_THROW(parabolic_position(100, 0.0, 1.0), std::invalid_argument);
}

TEST(Envelopes, ParabolicPositionMatchesSpinChain) {
    for (int n : {20, 100}) {
        const SpinChainParams sp{n, 1.3, Parabolic{}};
        const auto psi = initial_spin(n, LocalizedStart{1});
        for (double t : linspace(0.0, 2 * 2 * std::numbers::pi / 1.3, 37)) {
            EXPECT_NEAR(position(spin_evolve(psi, sp, t)).q_mean, parabolic_position(n, 1.3, t), 1e-6);
        }
    }
}

TEST(Envelopes, FrontArrival) {
    // 1 + (N-1) J t / N = N/4 at t = (N/4 - 1) N / ((N-1) J)
    EXPECT_NEAR(front_arrival_time(100, 1.0, FrontFraction::quarter), 24.0 * 100 / 99, 1e-12);
    EXPECT_NEAR(triangle_wave(100, 1.0, front_arrival_time(100, 1.0, FrontFraction::half)), 50.0, 1e-9);
}

TEST(HeisenbergReference, MatchesDirectEvolution) {
    const double t = front_arrival_time(60, 0.5, FrontFraction::quarter);
    const auto direct = position(spin_evolve(initial_spin(60, LocalizedStart{1}), SpinChainParams{60, 0.5, Uniform{}}, t));
    EXPECT_DOUBLE_EQ(heisenberg_dispersion_reference(60, 0.5, FrontFraction::quarter), direct.q_std);
    // dispersion at the half-way point exceeds that at the quarter point
    EXPECT_GT(heisenberg_dispersion_reference(100, 1.0, FrontFraction::half),
              heisenberg_dispersion_reference(100, 1.0, FrontFraction::quarter));
}

TEST(PeakPosition, InterpolatesSymmetricPeak) {
    const std::vector<double> p{0.0, 0.25, 0.5, 0.25, 0.0};
    EXPECT_DOUBLE_EQ(peak_position(p), 3.0);
    const std::vector<double> skew{0.0, 0.3, 0.5, 0.4, 0.0};
    EXPECT_GT(peak_position(skew), 3.0);
    EXPECT_LT(peak_position(skew), 3.5);
}

TEST(FitLine, ExactLine) {
    const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> x{1.0, 3.0, 5.0, 7.0};
    const auto f = fit_line_slope(t, x);
    EXPECT_NEAR(f.speed, 2.0, 1e-14);
    EXPECT_NEAR(f.residual, 0.0, 1e-14);
}

TEST(MeasureSpeed, FrontOfLocalizedSpinChain) {
    const int n = 100;
    const double j = 1.0;
    const auto traj = spin_evolve_series(initial_spin(n, LocalizedStart{1}), SpinChainParams{n, j, Uniform{}},
                                         linspace(0.1 * n / j, 0.4 * n / j, 31));
    EXPECT_NEAR(measure_speed(traj, Channel::spin).speed, j, 0.1 * j);
    // the conditional mean lags the front at about 8/(3π) of the speed
    EXPECT_NEAR(measure_speed(traj, Channel::spin, SpeedEstimator::centroid).speed, 8.0 / (3.0 * std::numbers::pi), 0.02);
}

TEST(MeasureSpeed, GaussianCentroidMovesAtJ) {
    const int n = 100;
    const double j = 2.0;
    // exp(-ikQ) with k = π/2 travels toward Q = 1 under -(J/2)A
    const auto traj = spin_evolve_series(initial_spin(n, GaussianStart{70.0, 5.0, std::numbers::pi / 2}),
                                         SpinChainParams{n, j, Uniform{}}, linspace(0.0, 20.0, 21));
    EXPECT_NEAR(measure_speed(traj, Channel::spin, SpeedEstimator::centroid).speed, -j, 0.02 * j);
}

TEST(MeasureSpeed, TooFewSamples) {
    const auto traj = spin_evolve_series(initial_spin(10, LocalizedStart{1}), SpinChainParams{10, 1.0, Uniform{}},
                                         linspace(0.0, 1.0, 4));
    EXPECT_THROW(measure_speed(traj, Channel::spin), std::invalid_argument);
    EXPECT_THROW(measure_speed(traj, Channel::photonic), std::invalid_argument);
}

TEST(Mirror, ReflectedStartReflectsMean) {
    const int n = 30;
    const ChainParams p{n, 1.0, 0.4, 0.7, Uniform{}};
    const auto psi = initial_gaussian_jch(n, 9.0, 2.5, 0.8);
    const auto spec = jch_spectrum(p);
    for (double t : {0.0, 3.0, 17.5}) {
        const auto a = evolve(psi, spec, t);
        const auto b = evolve(psi.mirrored(), spec, t);
        for (Mode m : {Mode::photonic, Mode::atomic}) {
            EXPECT_NEAR(conditional_position(a, m).q_mean + conditional_position(b, m).q_mean, n + 1.0, 1e-9);
        }
    }
}

TEST(GaussianFreeFlight, DispersionConstantBeforeWall) {
    const int n = 100;
    for (double ratio : {1e-2, 1e3}) {
        const ChainParams p{n, 1.0, ratio, 0.0, Uniform{}};
        const auto psi = initial_gaussian_jch(n, 50.0, 10.0, std::numbers::pi / 2);
        const auto spec = jch_spectrum(p);
        const double speed = ratio < 1.0 ? ratio : 2.0 * ratio;
        // the pulse edge (3 widths) reaches a wall after (50 - 30)/J
        const auto times = linspace(0.0, 20.0 / speed, 21);
        const double s0 = conditional_position(psi, Mode::photonic).q_std;
        for (double t : times) {
            const auto s = evolve(psi, spec, t);
            EXPECT_NEAR(conditional_position(s, Mode::photonic).q_std / s0, 1.0, 0.03) << "ratio " << ratio << " t " << t;
            if (ratio < 1.0) EXPECT_NEAR(conditional_position(s, Mode::atomic).q_std / s0, 1.0, 0.03);
        }
    }
}

TEST(ParabolicRevival, SpinChainReturnsAfterOnePeriod) {
    const SpinChainParams sp{100, 0.8, Parabolic{}};
    const auto psi = initial_spin(100, LocalizedStart{1});
    const auto a = occupations(psi);
    const auto b = occupations(spin_evolve(psi, sp, 2 * std::numbers::pi / 0.8));
    for (int q = 0; q < 100; ++q) EXPECT_NEAR(a[q], b[q], 1e-6);
}
