#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "fwmav/derivative_filter.hpp"

using namespace fwmav;

TEST_SUITE("filters") {

TEST_CASE("the first sample only primes the filter") {
    DerivativeFilter f(2e-3, 1e-3);
    CHECK(f.update(3.7) == 0.0);
    CHECK(f.estimate() == 0.0);
}

TEST_CASE("a constant signal has zero derivative") {
    DerivativeFilter f(2e-3, 1e-3);
    for (int k = 0; k < 100; ++k) CHECK(f.update(1.23456) == 0.0);
}

TEST_CASE("a ramp converges to its slope through the first-order lag") {
    const double tau = 2e-3, dt = 1e-3, slope = 4.2;
    const double alpha = dt / (tau + dt);
    DerivativeFilter f(tau, dt);
    f.update(0.0);
    double est = f.update(slope * dt);
    CHECK(doctest::Approx(est).epsilon(1e-12) == alpha * slope);
    est = f.update(2.0 * slope * dt);
    CHECK(doctest::Approx(est).epsilon(1e-12) ==
          slope * (1.0 - (1.0 - alpha) * (1.0 - alpha)));
    for (int k = 3; k <= 100; ++k) est = f.update(k * slope * dt);
    CHECK(doctest::Approx(est).epsilon(1e-9) == slope);
}

TEST_CASE("a 5 Hz sine is differentiated within tight amplitude and phase bounds") {
    const double tau = 2e-3, dt = 1e-3;
    const double freq = 5.0, w = 2.0 * M_PI * freq;
    DerivativeFilter f(tau, dt);

    // Ten periods; fit the last two, well past the filter transient.
    const int n_total = 2000, n_fit = 400;
    std::vector<double> t_fit, y_fit;
    for (int k = 0; k < n_total; ++k) {
        const double t = k * dt;
        const double y = f.update(std::sin(w * t));
        if (k >= n_total - n_fit) {
            t_fit.push_back(t);
            y_fit.push_back(y);
        }
    }

    // Least-squares fit y ~ p cos(w t) + q sin(w t).
    Eigen::MatrixXd a(n_fit, 2);
    Eigen::VectorXd b(n_fit);
    for (int k = 0; k < n_fit; ++k) {
        a(k, 0) = std::cos(w * t_fit[k]);
        a(k, 1) = std::sin(w * t_fit[k]);
        b(k) = y_fit[k];
    }
    const Eigen::Vector2d pq = (a.transpose() * a).ldlt().solve(a.transpose() * b);
    const double amplitude = pq.norm();
    const double phase_lag = std::atan2(pq(1), pq(0));  // y ~ amp cos(w t - lag)

    // The analytic derivative is w cos(w t).
    CHECK(std::abs(amplitude / w - 1.0) <= 0.02);
    CHECK(std::abs(phase_lag) <= 5.0 * M_PI / 180.0);
    // The lag is real, not an artifact of a degenerate fit.
    CHECK(phase_lag > 3.0 * M_PI / 180.0);
    CHECK(amplitude / w < 0.9999);
}

TEST_CASE("the vector filter matches three scalar filters") {
    DerivativeFilter3 vec(2e-3, 1e-3);
    DerivativeFilter sx(2e-3, 1e-3), sy(2e-3, 1e-3), sz(2e-3, 1e-3);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 200; ++k) {
        const Eigen::Vector3d x{u(rng), u(rng), u(rng)};
        const Eigen::Vector3d d = vec.update(x);
        CHECK(d(0) == sx.update(x(0)));
        CHECK(d(1) == sy.update(x(1)));
        CHECK(d(2) == sz.update(x(2)));
    }
}

TEST_CASE("nonpositive configuration is rejected") {
    CHECK_THROWS_AS(DerivativeFilter(0.0, 1e-3), ConfigError);
    CHECK_THROWS_AS(DerivativeFilter(-1e-3, 1e-3), ConfigError);
    CHECK_THROWS_AS(DerivativeFilter(2e-3, 0.0), ConfigError);
    CHECK_THROWS_AS(DerivativeFilter(2e-3, -1.0), ConfigError);
}

TEST_CASE("reset returns the filter to its priming state") {
    DerivativeFilter f(2e-3, 1e-3);
    DerivativeFilter fresh(2e-3, 1e-3);
    for (int k = 0; k < 10; ++k) f.update(0.3 * k);
    f.reset();
    CHECK(f.estimate() == 0.0);
    for (int k = 0; k < 5; ++k)
        CHECK(f.update(1.0 + 0.1 * k * k) == fresh.update(1.0 + 0.1 * k * k));
}

}  // TEST_SUITE
