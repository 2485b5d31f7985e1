#include <catch2/catch_amalgamated.hpp>

#include "netinfer/moments.hpp"

using namespace netinfer;

namespace {

CombinationMatrix er_matrix(int n, double p, double lambda, double mu, std::uint64_t seed) {
    return laplacian_combination(generate_er(n, p, seed), lambda, mu);
}

CombinationMatrix scalar_matrix(int n, double mu) {
    AdjacencyMatrix g;
    g.n_nodes = n;
    g.entries = Matrix::Zero(n, n);
    return laplacian_combination(g, 0.99, mu);
}

}  // namespace

TEST_CASE("accumulate with n=1 keeps the single-term sums") {
    const CombinationMatrix a = er_matrix(4, 0.5, 0.99, 0.1, 1);
    const SignalTrajectory traj = simulate_var(a, 0.1, 3, NoiseSource(2));
    const SampleMoments m = accumulate(traj, 1);
    const auto& y = traj.vectors;
    CHECK((m.r0 - y[1] * y[1].transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.r1 - y[2] * y[1].transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.r3 - y[3] * y[0].transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("accumulate of an all-zero trajectory is zero") {
    SignalTrajectory traj;
    traj.n_nodes = 3;
    traj.vectors.assign(8, Vector::Zero(3));
    const SampleMoments m = accumulate(traj, 5);
    CHECK(m.r0.cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.r1.cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.r3.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("accumulate rejects short trajectories") {
    SignalTrajectory traj;
    traj.n_nodes = 2;
    traj.vectors.assign(3, Vector::Zero(2));
    CHECK_THROWS_AS(accumulate(traj, 1), ParameterError);
    CHECK_THROWS_AS(accumulate(traj, 0), ParameterError);
}

TEST_CASE("streaming snapshots equal batch accumulation bit-exactly") {
    const CombinationMatrix a = er_matrix(5, 0.4, 0.99, 0.1, 7);
    const SignalTrajectory traj = simulate_var(a, 0.1, 52, NoiseSource(8));

    MomentAccumulator acc(5);
    SampleMoments at_10, at_50;
    for (const Vector& y : traj.vectors) {
        acc.feed(y);
        if (acc.samples() == 10) at_10 = acc.snapshot();
        if (acc.samples() == 50) at_50 = acc.snapshot();
    }
    const SampleMoments batch_10 = accumulate(traj, 10);
    const SampleMoments batch_50 = accumulate(traj, 50);
    CHECK(at_10.r0.cwiseEqual(batch_10.r0).all());
    CHECK(at_10.r1.cwiseEqual(batch_10.r1).all());
    CHECK(at_10.r3.cwiseEqual(batch_10.r3).all());
    CHECK(at_50.r0.cwiseEqual(batch_50.r0).all());
    CHECK(at_50.r1.cwiseEqual(batch_50.r1).all());
    CHECK(at_50.r3.cwiseEqual(batch_50.r3).all());
}

TEST_CASE("sample r0 is symmetric up to round-off and finite") {
    const CombinationMatrix a = er_matrix(6, 0.3, 0.99, 0.1, 13);
    const SignalTrajectory traj = simulate_var(a, 0.1, 103, NoiseSource(14));
    const SampleMoments m = accumulate(traj, 100);
    CHECK((m.r0 - m.r0.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(m.r0.allFinite());
    CHECK(m.r1.allFinite());
    CHECK(m.r3.allFinite());
}

TEST_CASE("Monte Carlo mean of sample r0 matches the averaged analytic series") {
    const int n_nodes = 10, n = 20, runs = 10000;
    const double mu = 0.1;
    const CombinationMatrix a = er_matrix(n_nodes, 0.3, 0.99, mu, 21);

    Matrix analytic = Matrix::Zero(n_nodes, n_nodes);
    for (int t = 1; t <= n; ++t) analytic += analytic_r0(a, mu, t);
    analytic /= n;

    Matrix sum = Matrix::Zero(n_nodes, n_nodes), sum_sq = Matrix::Zero(n_nodes, n_nodes);
    for (int r = 0; r < runs; ++r) {
        const SignalTrajectory traj = simulate_var(
            a, mu, n + 2, NoiseSource(derive_seed(77, static_cast<std::uint64_t>(r), "noise")));
        const SampleMoments m = accumulate(traj, n);
        sum += m.r0;
        sum_sq += m.r0.cwiseProduct(m.r0);
    }
    const Matrix mean = sum / runs;
    const Matrix var = sum_sq / runs - mean.cwiseProduct(mean);
    for (int i = 0; i < n_nodes; ++i)
        for (int j = 0; j < n_nodes; ++j) {
            const double se = std::sqrt(var(i, j) / runs);
            CHECK(std::abs(mean(i, j) - analytic(i, j)) < 4.0 * se);
        }
}

TEST_CASE("analytic series at t=0") {
    const CombinationMatrix a = er_matrix(5, 0.5, 0.99, 0.2, 30);
    CHECK((analytic_r0(a, 0.2, 0) - 0.04 * Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((analytic_r1(a, 0.2, 0) - 0.04 * a.entries).cwiseAbs().maxCoeff() < 1e-15);
    const Matrix a3 = a.entries * a.entries * a.entries;
    CHECK((analytic_r3(a, 0.2, 0) - 0.04 * a3).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("analytic series collapse to scalar geometric sums for (1-mu)I") {
    const double mu = 0.1;
    const CombinationMatrix a = scalar_matrix(3, mu);
    const int t = 2;
    double r0 = 0.0, r1 = 0.0, r3 = 0.0;
    for (int j = 0; j <= t; ++j) r0 += mu * mu * std::pow(1.0 - mu, 2 * j);
    for (int j = 0; j <= t; ++j) r1 += mu * mu * std::pow(1.0 - mu, 2 * j + 1);
    for (int j = 0; j < t; ++j) r3 += mu * mu * std::pow(1.0 - mu, 2 * j + 3);
    CHECK((analytic_r0(a, mu, t) - r0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((analytic_r1(a, mu, t) - r1 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((analytic_r3(a, mu, t - 1) - r3 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("lagged-series identities hold for random Laplacian matrices") {
    for (int trial = 0; trial < 8; ++trial) {
        const CombinationMatrix a =
            er_matrix(4 + 3 * trial, 0.3, 0.99, 0.1, 40 + static_cast<std::uint64_t>(trial));
        for (int t : {1, 5, 50}) {
            const Matrix r0 = analytic_r0(a, 0.1, t);
            const Matrix r1 = analytic_r1(a, 0.1, t);
            const Matrix r3 = analytic_r3(a, 0.1, t - 1);
            CHECK((r1 - a.entries * r0).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((r1 - r3 - 0.01 * a.entries).cwiseAbs().maxCoeff() < 1e-10);
            const Matrix a3 = a.entries * a.entries * a.entries;
            CHECK((r3 - a3 * analytic_r0(a, 0.1, t - 1)).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("r0 limit: scalar formula, truncated series, empty graph") {
    const double mu = 0.1;
    const CombinationMatrix scalar = scalar_matrix(4, mu);
    const double expected = mu * mu / (1.0 - (1.0 - mu) * (1.0 - mu));
    CHECK((analytic_r0_limit(scalar, mu) - expected * Matrix::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    const CombinationMatrix a = er_matrix(8, 0.4, 0.99, mu, 50);
    // truncation depth J with (1-mu)^{2J} < 1e-12
    int depth = 1;
    while (std::pow(1.0 - mu, 2 * depth) >= 1e-12) ++depth;
    CHECK((analytic_r0_limit(a, mu) - analytic_r0(a, mu, depth)).cwiseAbs().maxCoeff() < 1e-9);

    const Matrix limit = analytic_r0_limit(scalar, mu);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(limit(i, j) == 0.0);
}

TEST_CASE("r0 limit rejects unstable matrices") {
    CombinationMatrix unstable;
    unstable.n_nodes = 2;
    unstable.mu = 0.1;
    unstable.lambda = 1.0;
    unstable.entries = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(analytic_r0_limit(unstable, 0.1), StabilityError);
}
