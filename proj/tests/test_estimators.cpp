#include <catch2/catch_amalgamated.hpp>

#include "netinfer/estimators.hpp"
#include "netinfer/sampling.hpp"

using namespace netinfer;

namespace {

CombinationMatrix er_matrix(int n, double p, double lambda, double mu, std::uint64_t seed) {
    return laplacian_combination(generate_er(n, p, seed), lambda, mu);
}

// exact moments averaged over t=1..n, full observation
SampleMoments exact_moments(const CombinationMatrix& a, double mu, int n) {
    SampleMoments m;
    m.s_size = a.n_nodes;
    m.n = n;
    m.r0 = Matrix::Zero(a.n_nodes, a.n_nodes);
    m.r1 = m.r0;
    m.r3 = m.r0;
    for (int t = 1; t <= n; ++t) {
        m.r0 += analytic_r0(a, mu, t);
        m.r1 += analytic_r1(a, mu, t);
        m.r3 += analytic_r3(a, mu, t - 1);
    }
    m.r0 /= n;
    m.r1 /= n;
    m.r3 /= n;
    return m;
}

}  // namespace

TEST_CASE("unbiased_instant hand example") {
    Vector y_tm1(2), y_t(2), y_tp1(2), y_tp2(2);
    y_tm1 << 1, 0;
    y_t << 0, 1;
    y_tp1 << 1, 1;
    y_tp2 << 2, 0;
    const TopologyEstimate est = unbiased_instant(y_tm1, y_t, y_tp1, y_tp2, 0.5);
    Matrix expected(2, 2);
    expected << -8, 4, 0, 4;
    CHECK((est.entries - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unbiased_instant of zero vectors is zero") {
    const Vector z = Vector::Zero(3);
    CHECK(unbiased_instant(z, z, z, z, 0.3).entries.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unbiased_instant rejects mismatched lengths") {
    CHECK_THROWS_AS(unbiased_instant(Vector::Zero(2), Vector::Zero(3), Vector::Zero(2),
                                     Vector::Zero(2), 0.5),
                    ParameterError);
}

TEST_CASE("unbiased_cumulative at n=1 equals the instant estimate at t=1") {
    const CombinationMatrix a = er_matrix(4, 0.5, 0.99, 0.1, 3);
    const SignalTrajectory traj = simulate_var(a, 0.1, 3, NoiseSource(9));
    const SampleMoments m = accumulate(traj, 1);
    const TopologyEstimate cumulative = unbiased_cumulative(m, 0.1);
    const TopologyEstimate instant = unbiased_instant(traj.vectors[0], traj.vectors[1],
                                                      traj.vectors[2], traj.vectors[3], 0.1);
    CHECK((cumulative.entries - instant.entries).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unbiased_cumulative equals the average of instant estimates") {
    const int n = 50;
    const CombinationMatrix a = er_matrix(6, 0.4, 0.99, 0.1, 5);
    const SignalTrajectory traj = simulate_var(a, 0.1, n + 2, NoiseSource(10));
    const TopologyEstimate cumulative = unbiased_cumulative(accumulate(traj, n), 0.1);

    Matrix average = Matrix::Zero(6, 6);
    for (int t = 1; t <= n; ++t)
        average += unbiased_instant(traj.vectors[static_cast<std::size_t>(t - 1)],
                                    traj.vectors[static_cast<std::size_t>(t)],
                                    traj.vectors[static_cast<std::size_t>(t + 1)],
                                    traj.vectors[static_cast<std::size_t>(t + 2)], 0.1)
                       .entries;
    average /= n;
    CHECK((cumulative.entries - average).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Monte Carlo mean of the unbiased estimator approaches A") {
    const int n_nodes = 6, n = 10, runs = 4000;
    const double mu = 0.1;
    const CombinationMatrix a = er_matrix(n_nodes, 0.4, 0.99, mu, 8);

    Matrix sum = Matrix::Zero(n_nodes, n_nodes), sum_sq = Matrix::Zero(n_nodes, n_nodes);
    for (int r = 0; r < runs; ++r) {
        const SignalTrajectory traj = simulate_var(
            a, mu, n + 2, NoiseSource(derive_seed(123, static_cast<std::uint64_t>(r), "noise")));
        const Matrix est = unbiased_cumulative(accumulate(traj, n), mu).entries;
        sum += est;
        sum_sq += est.cwiseProduct(est);
    }
    const Matrix mean = sum / runs;
    const Matrix var = sum_sq / runs - mean.cwiseProduct(mean);
    for (int i = 0; i < n_nodes; ++i)
        for (int j = 0; j < n_nodes; ++j) {
            const double se = std::sqrt(var(i, j) / runs);
            CHECK(std::abs(mean(i, j) - a.entries(i, j)) < 5.0 * se);
        }
}

TEST_CASE("granger recovers A from exact moments") {
    const CombinationMatrix a = er_matrix(8, 0.4, 0.99, 0.1, 11);
    const TopologyEstimate est = granger(exact_moments(a, 0.1, 10));
    CHECK((est.entries - a.entries).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("granger scalar case divides the lag-1 by the lag-0 moment") {
    SampleMoments m;
    m.s_size = 1;
    m.n = 5;
    m.r0 = Matrix::Constant(1, 1, 2.0);
    m.r1 = Matrix::Constant(1, 1, 0.5);
    m.r3 = Matrix::Constant(1, 1, 0.0);
    CHECK(granger(m).entries(0, 0) == Catch::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("granger raises an ill-conditioned error on rank-deficient r0") {
    // n < |S| makes r0 a sum of fewer outer products than its dimension
    const CombinationMatrix a = er_matrix(10, 0.4, 0.99, 0.1, 15);
    const SignalTrajectory traj = simulate_var(a, 0.1, 6, NoiseSource(16));
    const SampleMoments m = accumulate(traj, 4);
    try {
        granger(m);
        FAIL("expected IllConditionedError");
    } catch (const IllConditionedError& e) {
        CHECK(e.condition() > 1e12);
    }
}

TEST_CASE("one_lag returns r1 unchanged; residual is the elementwise difference") {
    const CombinationMatrix a = er_matrix(5, 0.5, 0.99, 0.1, 18);
    const SignalTrajectory traj = simulate_var(a, 0.1, 22, NoiseSource(19));
    const SampleMoments m = accumulate(traj, 20);
    CHECK(one_lag(m).entries.cwiseEqual(m.r1).all());
    CHECK((residual(m).entries - (m.r1 - m.r0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("residual on exact moments matches the analytic difference") {
    const CombinationMatrix a = er_matrix(7, 0.3, 0.99, 0.1, 23);
    const SampleMoments m = exact_moments(a, 0.1, 12);
    const TopologyEstimate est = residual(m);
    CHECK((est.entries - (m.r1 - m.r0)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("one_lag entries are mu^2-scaled") {
    // expectation mu^2(A + A^3 + ...) keeps one-lag entries two orders below
    // the unbiased estimator's O(1) scale
    const double mu = 0.1;
    const CombinationMatrix a = er_matrix(8, 0.3, 0.99, mu, 25);
    const SampleMoments m = exact_moments(a, mu, 30);
    CHECK(one_lag(m).entries.cwiseAbs().maxCoeff() < 10 * mu * mu);
    CHECK(unbiased_cumulative(m, mu).entries.cwiseAbs().maxCoeff() > 0.1);
}
