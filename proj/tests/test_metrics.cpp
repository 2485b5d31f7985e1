#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "netinfer/estimators.hpp"
#include "netinfer/metrics.hpp"

using namespace netinfer;

namespace {

PredictedAdjacency make_pred(const Matrix& m) {
    PredictedAdjacency p;
    p.s_size = static_cast<int>(m.rows());
    p.entries = m;
    return p;
}

Matrix complement_pairs(const Matrix& truth) {
    Matrix out = Matrix::Zero(truth.rows(), truth.cols());
    for (Eigen::Index i = 0; i < truth.rows(); ++i)
        for (Eigen::Index j = 0; j < truth.cols(); ++j)
            if (i != j) out(i, j) = truth(i, j) == 0.0 ? 1.0 : 0.0;
    return out;
}

TopologyEstimate wrap(const Matrix& m) {
    TopologyEstimate est;
    est.s_size = static_cast<int>(m.rows());
    est.entries = m;
    return est;
}

}  // namespace

TEST_CASE("error_rate endpoints and a hand-counted case") {
    const AdjacencyMatrix g = generate_er(8, 0.4, 2);
    CHECK(error_rate(make_pred(g.entries), g.entries) == 0.0);
    CHECK(error_rate(make_pred(complement_pairs(g.entries)), g.entries) == 1.0);

    Matrix truth = Matrix::Zero(3, 3);
    truth(0, 1) = truth(1, 0) = 1.0;
    Matrix pred = truth;
    pred(1, 2) = pred(2, 1) = 1.0;  // one wrong pair out of C(3,2)=3
    CHECK(error_rate(make_pred(pred), truth) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(error_rate(make_pred(Matrix::Zero(2, 2)), Matrix::Zero(3, 3)),
                    ParameterError);
}

TEST_CASE("fn_score counts disconnected pairs declared connected") {
    // 4-node truth: edges {0-1, 2-3}; disconnected pairs: 0-2, 0-3, 1-2, 1-3
    Matrix truth = Matrix::Zero(4, 4);
    truth(0, 1) = truth(1, 0) = 1.0;
    truth(2, 3) = truth(3, 2) = 1.0;

    CHECK(fn_score(make_pred(truth), truth) == 0.0);

    Matrix all_connected = Matrix::Ones(4, 4) - Matrix::Identity(4, 4);
    CHECK(fn_score(make_pred(all_connected), truth) == 1.0);

    Matrix pred = truth;
    pred(0, 2) = pred(2, 0) = 1.0;  // one of four disconnected pairs declared
    CHECK(fn_score(make_pred(pred), truth) == Catch::Approx(0.25).epsilon(1e-12));

    const Matrix complete = all_connected;
    CHECK_THROWS_AS(fn_score(make_pred(truth), complete), UndefinedMetricError);
}

TEST_CASE("fp_score mirrors fn_score over connected pairs") {
    Matrix truth = Matrix::Zero(4, 4);
    truth(0, 1) = truth(1, 0) = 1.0;
    truth(2, 3) = truth(3, 2) = 1.0;

    CHECK(fp_score(make_pred(truth), truth) == 0.0);
    CHECK(fp_score(make_pred(Matrix::Zero(4, 4)), truth) == 1.0);

    Matrix pred = truth;
    pred(2, 3) = pred(3, 2) = 0.0;  // one of two connected pairs dropped
    CHECK(fp_score(make_pred(pred), truth) == Catch::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(fp_score(make_pred(truth), Matrix::Zero(4, 4)), UndefinedMetricError);
}

TEST_CASE("fn and fp numerators partition the error numerator") {
    std::mt19937_64 engine(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int s = 4 + static_cast<int>(engine() % 10);
        const AdjacencyMatrix truth = generate_er(s, 0.4, engine());
        const AdjacencyMatrix guess = generate_er(s, 0.4, engine());
        const double pairs = s * (s - 1) / 2.0;
        long disconnected = 0, connected = 0;
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j)
                (truth.entries(i, j) == 0.0 ? disconnected : connected)++;
        if (disconnected == 0 || connected == 0) continue;
        const double err = error_rate(make_pred(guess.entries), truth.entries);
        const double fn = fn_score(make_pred(guess.entries), truth.entries);
        const double fp = fp_score(make_pred(guess.entries), truth.entries);
        CHECK(fn * disconnected + fp * connected == Catch::Approx(err * pairs).epsilon(1e-9));
        CHECK(std::abs(err * pairs - std::round(err * pairs)) < 1e-9);
    }
}

TEST_CASE("bias_variance endpoints and hand arithmetic") {
    const Matrix truth = Matrix::Identity(3, 3) * 0.9;

    std::vector<TopologyEstimate> exact = {wrap(truth), wrap(truth), wrap(truth)};
    const auto [bias0, var0] = bias_variance(exact, truth);
    CHECK(bias0 == 0.0);
    CHECK(var0 == 0.0);

    const double c = 0.2;
    const Matrix j = Matrix::Ones(3, 3);
    std::vector<TopologyEstimate> two = {wrap(truth + c * j), wrap(truth - c * j)};
    const auto [bias2, var2] = bias_variance(two, truth);
    CHECK(bias2 == Catch::Approx(0.0).margin(1e-14));
    CHECK(var2 == Catch::Approx(2 * c * c).epsilon(1e-12));  // divisor R-1 = 1

    CHECK_THROWS_AS(bias_variance({wrap(truth)}, truth), ParameterError);
}

TEST_CASE("oracle-fed granger has negligible bias") {
    const AdjacencyMatrix g = generate_er(6, 0.4, 12);
    const CombinationMatrix a = laplacian_combination(g, 0.99, 0.1);
    SampleMoments m;
    m.s_size = 6;
    m.n = 10;
    m.r0 = Matrix::Zero(6, 6);
    m.r1 = Matrix::Zero(6, 6);
    m.r3 = Matrix::Zero(6, 6);
    for (int t = 1; t <= 10; ++t) {
        m.r0 += analytic_r0(a, 0.1, t) / 10;
        m.r1 += analytic_r1(a, 0.1, t) / 10;
    }
    std::vector<TopologyEstimate> runs = {granger(m), granger(m)};
    const auto [bias, var] = bias_variance(runs, a.entries);
    CHECK(bias <= 1e-8);
    CHECK(var == 0.0);
}

TEST_CASE("aggregate summarizes mean, std, and CI") {
    RunMetrics zero{0.0, 0.0, 0.0, false};
    RunMetrics one{1.0, 1.0, 1.0, false};

    const AggregateMetrics same = aggregate({zero, zero, zero});
    CHECK(same.error_rate.mean == 0.0);
    CHECK(same.error_rate.std == 0.0);
    CHECK(same.error_rate.ci_low == same.error_rate.ci_high);

    const AggregateMetrics two = aggregate({zero, one});
    CHECK(two.error_rate.mean == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(two.error_rate.std == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(two.error_rate.ci_low == Catch::Approx(0.5 - 1.96 * 0.5).epsilon(1e-9));
    CHECK(two.error_rate.ci_high == Catch::Approx(0.5 + 1.96 * 0.5).epsilon(1e-9));
    CHECK(two.error_rate.ci_low <= two.error_rate.mean);
    CHECK(two.error_rate.mean <= two.error_rate.ci_high);

    CHECK_THROWS_AS(aggregate({zero}), ParameterError);
}
