#include <cmath>
#include <vector>

#include "caresim/dynamics.hpp"
#include "caresim/signal.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace caresim;

namespace {

HalfGridSamples constant_samples(double level, double horizon, double dt) {
    return HalfGridSamples(2 * step_count(horizon, dt) + 1, level);
}

HalfGridSamples sampled(const SignalSpec& spec, double horizon, double dt) {
    return sample_signal(spec, half_grid_times(horizon, dt), 1);
}

DynamicsParams linear_params(double a1, double a2, double a3, double beta) {
    DynamicsParams p;
    p.mode = DynamicsMode::Linear;
    p.alpha1 = a1;
    p.alpha2 = a2;
    p.alpha3 = a3;
    p.beta = beta;
    return p;
}

DynamicsParams coupled_params(double alpha, double beta, double kappa) {
    DynamicsParams p;
    p.mode = DynamicsMode::Coupled;
    p.alpha = alpha;
    p.beta = beta;
    p.kappa = kappa;
    return p;
}

double max_abs_difference_on_shared_times(const HealthTrajectory& coarse,
                                          const HealthTrajectory& fine, std::size_t ratio) {
    double worst = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        worst = std::max(worst, std::abs(coarse.h[i] - fine.h[i * ratio]));
    }
    return worst;
}

}  // namespace

TEST_CASE("constant derivative integrates exactly") {
    // dH/dt = 1+1+1-1 = 2, H(5) = 10 from zero; RK4 is exact here.
    const double horizon = 5.0;
    const double dt = 0.5;
    LinearSignals signals{constant_samples(1.0, horizon, dt), constant_samples(1.0, horizon, dt),
                          constant_samples(1.0, horizon, dt), constant_samples(1.0, horizon, dt)};
    const auto traj = simulate_linear(linear_params(1, 1, 1, 1), signals, 0.0, horizon, dt);
    CHECK(std::abs(traj.h.back() - 10.0) <= 1e-12);
    CHECK(traj.times.back() == 5.0);
}

TEST_CASE("zero signals keep the state at h0") {
    const double horizon = 10.0;
    const double dt = 0.1;
    LinearSignals signals{constant_samples(0.0, horizon, dt), constant_samples(0.0, horizon, dt),
                          constant_samples(0.0, horizon, dt), constant_samples(0.0, horizon, dt)};
    const auto traj = simulate_linear(linear_params(1, 1, 1, 1), signals, 42.0, horizon, dt);
    for (double h : traj.h) {
        CHECK(h == 42.0);
    }
    for (bool c : traj.clamped) {
        CHECK_FALSE(c);
    }
}

TEST_CASE("sinusoid forcing matches the fine-step reference") {
    // dH/dt = sin(2*pi*t/10); reference at dt/100.
    const SignalSpec p_signal{SinusoidSignal{1.0, 10.0, 0.0}};
    const double horizon = 10.0;
    const DynamicsParams params = linear_params(0, 1, 0, 0);

    const auto run = [&](double dt) {
        LinearSignals signals{constant_samples(0.0, horizon, dt), sampled(p_signal, horizon, dt),
                              constant_samples(0.0, horizon, dt),
                              constant_samples(0.0, horizon, dt)};
        return simulate_linear(params, signals, 50.0, horizon, dt);
    };

    const auto coarse = run(0.01);
    const auto reference = run(0.0001);
    CHECK(max_abs_difference_on_shared_times(coarse, reference, 100) < 1e-8);
}

TEST_CASE("halving dt cuts the sinusoid error by at least 12x") {
    const SignalSpec p_signal{SinusoidSignal{1.0, 10.0, 0.0}};
    const double horizon = 10.0;
    const DynamicsParams params = linear_params(0, 1, 0, 0);

    const auto run = [&](double dt) {
        LinearSignals signals{constant_samples(0.0, horizon, dt), sampled(p_signal, horizon, dt),
                              constant_samples(0.0, horizon, dt),
                              constant_samples(0.0, horizon, dt)};
        return simulate_linear(params, signals, 50.0, horizon, dt);
    };

    // Measured at steps large enough that truncation dominates roundoff.
    const auto reference = run(0.002);
    const double err_coarse = max_abs_difference_on_shared_times(run(0.2), reference, 100);
    const double err_half = max_abs_difference_on_shared_times(run(0.1), reference, 50);
    REQUIRE(err_half > 0.0);
    CHECK(err_coarse / err_half >= 12.0);
}

TEST_CASE("clamping flags exactly the samples whose raw step left the range") {
    // dH/dt = 15 from h0=95 with dt=0.5: first step exits at the top.
    const double horizon = 3.0;
    const double dt = 0.5;
    LinearSignals signals{constant_samples(15.0, horizon, dt), constant_samples(0.0, horizon, dt),
                          constant_samples(0.0, horizon, dt), constant_samples(0.0, horizon, dt)};
    const auto traj = simulate_linear(linear_params(1, 0, 0, 0), signals, 95.0, horizon, dt);
    CHECK_FALSE(traj.clamped[0]);
    for (std::size_t i = 1; i < traj.size(); ++i) {
        CHECK(traj.h[i] == 100.0);
        CHECK(traj.clamped[i]);  // raw step keeps exiting from the boundary
    }

    // Downward clamp at zero.
    LinearSignals down{constant_samples(0.0, horizon, dt), constant_samples(0.0, horizon, dt),
                       constant_samples(0.0, horizon, dt), constant_samples(30.0, horizon, dt)};
    const auto fall = simulate_linear(linear_params(0, 0, 0, 1), down, 20.0, horizon, dt);
    CHECK(fall.h[1] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK_FALSE(fall.clamped[1]);
    CHECK(fall.h[2] == 0.0);
    CHECK(fall.clamped[2]);
    for (double h : fall.h) {
        CHECK(h >= 0.0);
        CHECK(h <= 100.0);
    }
}

TEST_CASE("coupled run with flat allocation is exact") {
    // gamma=0 -> R = lambda/2 = 5; beta=0, kappa=0 -> dH/dt = 5; H(4) = 20.
    const double horizon = 4.0;
    const double dt = 0.25;
    CoupledSignals signals{constant_samples(1.0, horizon, dt), constant_samples(1.0, horizon, dt),
                           constant_samples(1.0, horizon, dt)};
    const auto traj = simulate_coupled(coupled_params(1.0, 0.0, 0.0), {10.0, 0.0},
                                       {2.0, 0.3, 0.5}, signals, 0.0, horizon, dt);
    CHECK(traj.h.back() == 20.0);
    REQUIRE(!traj.r_h.empty());
    CHECK(traj.r_h.front() == 5.0);
    CHECK(traj.r_h.back() == 5.0);
}

TEST_CASE("pure cost run declines linearly until the floor") {
    // alpha=0, s_c=0 -> C = c0 = 2; beta=1 -> dH/dt = -2 from h0=10.
    const double horizon = 20.0;
    const double dt = 0.5;
    CoupledSignals signals{constant_samples(0.0, horizon, dt), constant_samples(0.0, horizon, dt),
                           constant_samples(0.0, horizon, dt)};
    const auto traj = simulate_coupled(coupled_params(0.0, 1.0, 0.0), {10.0, -0.05},
                                       {2.0, 0.3, 0.5}, signals, 10.0, horizon, dt);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double expected = std::max(0.0, 10.0 - 2.0 * traj.times[i]);
        CHECK(traj.h[i] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(traj.c[i] == 2.0);
    }
    CHECK(traj.h.back() == 0.0);
    CHECK(traj.clamped.back());
}

TEST_CASE("coupled run settles onto the bisection equilibrium") {
    const DynamicsParams params = coupled_params(1.0, 1.0, 0.0);
    const LogisticAllocationParams alloc{10.0, -0.1};
    // Constant cost level 2 via c0=2, delta_c=0.
    const CostParams cost{2.0, 0.0, 0.0};

    const auto h_star = find_equilibrium(params, alloc, 0.0, 2.0);
    REQUIRE(h_star.has_value());
    // closed form: 10*sigmoid(-0.1 H) = 2 -> H = 10 ln 4
    CHECK(*h_star == doctest::Approx(10.0 * std::log(4.0)).epsilon(1e-9));

    const double horizon = 200.0;
    const double dt = 0.02;
    CoupledSignals signals{constant_samples(0.0, horizon, dt), constant_samples(1.0, horizon, dt),
                           constant_samples(1.0, horizon, dt)};
    const auto traj = simulate_coupled(params, alloc, cost, signals, 50.0, horizon, dt);

    // Find the first sample where the right-hand side has essentially died.
    const auto rhs = [&](double h) {
        return logistic_allocation(alloc, h) - 2.0;
    };
    bool settled = false;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (std::abs(rhs(traj.h[i])) < 1e-8) {
            CHECK(std::abs(traj.h[i] - *h_star) <= 1e-6);
            settled = true;
            break;
        }
    }
    CHECK(settled);
    CHECK(std::abs(traj.h.back() - *h_star) <= 1e-6);
}

TEST_CASE("find_equilibrium reports absence for one-signed dynamics") {
    // beta=0 with positive alpha: RHS always positive.
    CHECK_FALSE(find_equilibrium(coupled_params(1.0, 0.0, 0.0), {10.0, -0.1}, 1.0, 5.0).has_value());
    // Cost dominates the largest possible allocation: RHS always negative.
    CHECK_FALSE(find_equilibrium(coupled_params(1.0, 1.0, 0.0), {10.0, -0.1}, 0.0, 20.0).has_value());
    // closed-form root at 10*ln 19 for C = 0.5
    const auto root = find_equilibrium(coupled_params(1.0, 1.0, 0.0), {10.0, -0.1}, 0.0, 0.5);
    REQUIRE(root.has_value());
    CHECK(std::abs(*root - 10.0 * std::log(19.0)) <= 1e-6);
}

TEST_CASE("gamma=0 coupled equals linear with the equivalent resource term") {
    const double horizon = 30.0;
    const double dt = 0.1;
    const double kappa = 0.5;
    const LogisticAllocationParams alloc{10.0, 0.0};
    const CostParams cost{2.0, 0.3, 0.5};
    const SignalSpec env{SinusoidSignal{0.5, 7.0, 1.5}};

    const auto e = sampled(env, horizon, dt);
    CoupledSignals coupled_signals{e, constant_samples(1.0, horizon, dt),
                                   constant_samples(1.0, horizon, dt)};
    const auto coupled =
        simulate_coupled(coupled_params(1.0, 0.4, kappa), alloc, cost, coupled_signals, 40.0,
                         horizon, dt);

    // Equivalent linear run: alpha1*s with s = (lambda/2)/(1+kappa*e), same cost series.
    HalfGridSamples s(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        s[k] = 5.0 / (1.0 + kappa * e[k]);
    }
    const double c_level = behavior_cost(cost, 1.0, 1.0);
    LinearSignals linear_signals{s, constant_samples(0.0, horizon, dt),
                                 constant_samples(0.0, horizon, dt),
                                 constant_samples(c_level, horizon, dt)};
    const auto linear =
        simulate_linear(linear_params(1.0, 0.0, 0.0, 0.4), linear_signals, 40.0, horizon, dt);

    for (std::size_t i = 0; i < coupled.size(); ++i) {
        CHECK(std::abs(coupled.h[i] - linear.h[i]) <= 1e-12);
    }
}

TEST_CASE("raising the environment level never raises terminal health") {
    const double horizon = 40.0;
    const double dt = 0.05;
    double previous = 101.0;
    for (double level : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        CoupledSignals signals{constant_samples(level, horizon, dt),
                               constant_samples(1.0, horizon, dt),
                               constant_samples(1.0, horizon, dt)};
        const auto traj = simulate_coupled(coupled_params(1.0, 0.4, 0.5), {10.0, -0.05},
                                           {2.0, 0.3, 0.5}, signals, 55.0, horizon, dt);
        CHECK(traj.h.back() <= previous);
        previous = traj.h.back();
    }
}

TEST_CASE("identical inputs give bitwise-identical trajectories") {
    const double horizon = 12.0;
    const double dt = 0.1;
    const SignalSpec noisy{GaussianNoiseSignal{1.0, 0.3}};
    const auto grid = half_grid_times(horizon, dt);
    const auto e = sample_signal(noisy, grid, 99);
    CoupledSignals signals{e, constant_samples(1.0, horizon, dt),
                           constant_samples(1.0, horizon, dt)};
    const auto a = simulate_coupled(coupled_params(1.0, 0.4, 0.5), {10.0, -0.05}, {2.0, 0.3, 0.5},
                                    signals, 55.0, horizon, dt);
    const auto b = simulate_coupled(coupled_params(1.0, 0.4, 0.5), {10.0, -0.05}, {2.0, 0.3, 0.5},
                                    signals, 55.0, horizon, dt);
    CHECK(a.h == b.h);
    CHECK(a.r_h == b.r_h);
    CHECK(a.c == b.c);
}

TEST_CASE("engine rejects malformed grids") {
    LinearSignals signals{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};  // wrong lengths
    CHECK_THROWS_AS(simulate_linear(linear_params(1, 1, 1, 1), signals, 50.0, 1.0, 0.5),
                    std::invalid_argument);

    CoupledSignals ok{constant_samples(1.0, 1.0, 0.5), constant_samples(1.0, 1.0, 0.5),
                      constant_samples(1.0, 1.0, 0.5)};
    CHECK_THROWS_AS(simulate_coupled(coupled_params(1, 0.4, 0.5), {10.0, -0.05}, {2.0, 0.3, 0.5},
                                     ok, 50.0, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_coupled(coupled_params(1, 0.4, 0.5), {10.0, -0.05}, {2.0, 0.3, 0.5},
                                     ok, 150.0, 1.0, 0.5),
                    std::invalid_argument);

    CHECK_THROWS_AS(upsample_to_half_grid({1.0}), std::invalid_argument);
    const auto half = upsample_to_half_grid({1.0, 3.0, 5.0});
    CHECK(half == HalfGridSamples{1.0, 2.0, 3.0, 4.0, 5.0});
}
