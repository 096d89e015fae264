#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

#include <gtest/gtest.h>

using namespace qmap;
using namespace qmap::testing;

TEST(PoissonOracle, ReproducesQuadratics) {
    const double h = 1.0 / 6;
    const auto one = [](std::span<const double>) { return 1.0; };
    const auto exact = [](std::span<const double> x) { return (norm2(x) - 1.0) / 8.0; };
    const auto sol = oracle::poisson_ball_4d(1.0, h, one, exact);
    ASSERT_FALSE(sol.nodes.empty());
    std::vector<double> x(4);
    for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
        for (std::size_t c = 0; c < 4; ++c) x[c] = sol.nodes[i][c] * h;
        ASSERT_LT(norm2(x), 1.0);
        EXPECT_NEAR(sol.values[i], exact(x), 1e-12);
    }
    EXPECT_NEAR(oracle::radial_extremal_4d(0.3, 0.5, 1.0), -1.0, 1e-15);
    EXPECT_NEAR(oracle::radial_extremal_4d(1.0, 0.5, 1.0), 0.0, 1e-15);
}

TEST(BellmanOracle, ScalarCaseIsHalfTrace) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> N;
    for (int t = 0; t < 10; ++t) {
        Eigen::Matrix4d B;
        for (int i = 0; i < 16; ++i) B.data()[i] = N(rng);
        const Eigen::Matrix4d H = B.transpose() * B + Eigen::Matrix4d::Identity();
        const std::vector<double> Hv(H.data(), H.data() + 16);
        EXPECT_NEAR(oracle::bellman_inf_exact(oracle::quaternionic_hessian_of(Hv, 1)), 0.5 * H.trace(), 1e-10);
    }
}

TEST(BellmanOracle, HomogeneousAndBelowEveryDirection) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> N;
    const auto dirs = sample_directions(2, {256, 3, 0.5});
    for (int t = 0; t < 5; ++t) {
        Eigen::MatrixXd B(8, 8);
        for (int i = 0; i < 64; ++i) B.data()[i] = 0.5 * N(rng);
        const Eigen::MatrixXd H = B.transpose() * B + Eigen::MatrixXd::Identity(8, 8);
        std::vector<double> Hv(H.data(), H.data() + 64), H3(Hv);
        for (double& v : H3) v *= 3;
        const double m = oracle::bellman_inf_exact(oracle::quaternionic_hessian_of(Hv, 2));
        EXPECT_NEAR(oracle::bellman_inf_exact(oracle::quaternionic_hessian_of(H3, 2)), 3 * m, 1e-9 * m);
        for (const auto& a : dirs) EXPECT_GE((delta_a_real_matrix(a) * H).trace(), m * (1 - 1e-12));
    }
}
