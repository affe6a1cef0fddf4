#include <cmath>
#include <vector>

#include "doctest.h"

#include <Eigen/Dense>

#include "rank1/environment.hpp"
#include "rank1/glmucb.hpp"
#include "rank1/linucb.hpp"
#include "rank1/rng.hpp"
#include "rank1/ucb1.hpp"

using namespace rank1;

TEST_SUITE("baselines") {

TEST_CASE("ucb1 initializes every arm in ascending order") {
    Ucb1 p(2, 2);
    const std::vector<Arm> expected{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (int t = 1; t <= 4; ++t) {
        const Arm a = p.choose(t);
        CHECK(a == expected[t - 1]);
        p.observe(a, 0.0);
    }
}

TEST_CASE("ucb1 index arithmetic picks the underexplored arm") {
    Ucb1 p(1, 2);
    for (int k = 0; k < 10; ++k) p.observe({0, 0}, 1.0);
    p.observe({0, 1}, 0.0);
    // 1 + sqrt(2 ln 11 / 10) = 1.693 vs 0 + sqrt(2 ln 11) = 2.190
    CHECK(p.choose(11) == Arm{0, 1});
}

TEST_CASE("ucb1 prefers the least-pulled arm at equal means") {
    Ucb1 p(1, 2);
    for (int k = 0; k < 5; ++k) p.observe({0, 0}, 0.5);
    p.observe({0, 1}, 0.5);
    CHECK(p.choose(7) == Arm{0, 1});
}

TEST_CASE("ucb1 never starves an arm") {
    auto env = Environment::from_instance(make_spike({2, 2, 0.5, 0.5, 0.25, 0.25}), 31);
    Ucb1 p(2, 2);
    const int n = 20000;
    for (int t = 1; t <= n; ++t) {
        const Arm a = p.choose(t);
        p.observe(a, env.sample(a));
    }
    for (std::int64_t c : p.pull_counts()) CHECK(c >= static_cast<std::int64_t>(std::log(n)));
}

TEST_CASE("feature vectors are two-hot and injective") {
    CHECK(feature_vector(0, 0, 2, 2) == std::vector<double>{1, 0, 1, 0});
    CHECK(feature_vector(1, 1, 2, 2) == std::vector<double>{0, 1, 0, 1});
    std::vector<std::vector<double>> seen;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 4; ++j) {
            auto x = feature_vector(i, j, 3, 4);
            double sum = 0.0;
            for (double e : x) sum += e;
            CHECK(sum == 2.0);
            for (const auto& other : seen) CHECK(x != other);
            seen.push_back(std::move(x));
        }
    }
}

TEST_CASE("linucb log transform") {
    LinUcb p(2, 2, {});
    CHECK(p.transform(1.0) == 0.0);
    CHECK(p.transform(0.0) == doctest::Approx(std::log(0.01)));
    CHECK(p.transform(0.5) == doctest::Approx(std::log(0.5)));
}

TEST_CASE("linucb design matrix after one observation") {
    LinUcbConfig cfg;
    cfg.lambda = 1.0;
    LinUcb p(1, 1, cfg);
    p.observe({0, 0}, 1.0);
    // V = I + x x^T with x = [1, 1]
    CHECK(p.design().matrix() == std::vector<double>{2, 1, 1, 2});
}

TEST_CASE("linucb design matrix keeps eigenvalues above lambda") {
    LinUcbConfig cfg;
    cfg.lambda = 0.7;
    LinUcb p(3, 2, cfg);
    Rng rng(9);
    for (int k = 0; k < 300; ++k) {
        const Arm a{rng.uniform_index(3), rng.uniform_index(2)};
        p.observe(a, rng.uniform());
    }
    const int d = 5;
    Eigen::MatrixXd v(d, d), vinv(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            v(r, c) = p.design().matrix()[r * d + c];
            vinv(r, c) = p.design().inverse()[r * d + c];
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(v);
    CHECK(eig.eigenvalues().minCoeff() >= 0.7 - 1e-9);
    // Sherman-Morrison inverse tracks the true inverse.
    CHECK(((v * vinv) - Eigen::MatrixXd::Identity(d, d)).norm() < 1e-9);
}

TEST_CASE("linucb picks the undersampled arm once estimates tie") {
    LinUcb p(2, 2, {});
    // With no data all scores tie; lowest index wins.
    CHECK(p.choose(1) == Arm{0, 0});
}

TEST_CASE("em posterior closed form") {
    const auto sure = em_posterior(1, 0.3, 0.8);
    CHECK(sure.row_mean == 1.0);
    CHECK(sure.col_mean == 1.0);

    const auto sym = em_posterior(0, 0.5, 0.5);
    CHECK(sym.row_mean == doctest::Approx(1.0 / 3.0));
    CHECK(sym.col_mean == doctest::Approx(1.0 / 3.0));

    const auto skew = em_posterior(0, 0.9, 0.1);
    CHECK(skew.row_mean == doctest::Approx(0.81 / 0.91));
    CHECK(skew.col_mean == doctest::Approx(0.01 / 0.91));

    CHECK_THROWS_AS(em_posterior(0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(em_posterior(1, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("em posterior satisfies total probability") {
    Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        const double p = 0.01 + 0.98 * rng.uniform();
        const double q = 0.01 + 0.98 * rng.uniform();
        const auto w1 = em_posterior(1, p, q);
        const auto w0 = em_posterior(0, p, q);
        CHECK(w0.row_mean >= 0.0);
        CHECK(w0.row_mean <= 1.0);
        CHECK(w0.col_mean >= 0.0);
        CHECK(w0.col_mean <= 1.0);
        CHECK(p * q * w1.row_mean + (1.0 - p * q) * w0.row_mean == doctest::Approx(p));
        CHECK(p * q * w1.col_mean + (1.0 - p * q) * w0.col_mean == doctest::Approx(q));
    }
}

TEST_CASE("glmucb saturates estimates after all-ones observations") {
    GlmUcb p(1, 1, {});
    for (int k = 0; k < 5; ++k) p.observe({0, 0}, 1.0);
    CHECK(p.row_estimates()[0] == 1.0);
    CHECK(p.col_estimates()[0] == 1.0);
    // And a later zero still updates instead of throwing.
    CHECK_NOTHROW(p.observe({0, 0}, 0.0));
    CHECK(p.row_estimates()[0] < 1.0);
}

TEST_CASE("glmucb c_mu floor is eps squared") {
    GlmUcbConfig cfg;
    cfg.log_floor = 0.01;
    GlmUcb p(2, 2, cfg);
    // Saturate the first row/column, then observed zeros against a saturated
    // partner crash the other factor onto the eps clamp.
    for (int k = 0; k < 10; ++k) p.observe({0, 0}, 1.0);
    for (int k = 0; k < 10; ++k) p.observe({1, 0}, 0.0);
    for (int k = 0; k < 10; ++k) p.observe({0, 1}, 0.0);
    CHECK(p.row_estimates()[1] == doctest::Approx(0.01));
    CHECK(p.col_estimates()[1] == doctest::Approx(0.01));
    CHECK(p.c_mu() == doctest::Approx(1e-4));
    CHECK_THROWS_AS(p.observe({0, 0}, 0.5), std::invalid_argument);
}

TEST_CASE("online EM estimates converge on a symmetric spike") {
    const auto inst = make_spike({4, 4, 0.7, 0.7, 0.2, 0.2});
    auto env = Environment::from_instance(inst, 101);
    Rng arms(55);

    GlmUcb online(4, 4, {});
    std::vector<Arm> data_arms;
    std::vector<int> data_w;
    for (int k = 0; k < 100000; ++k) {
        const Arm a{arms.uniform_index(4), arms.uniform_index(4)};
        const double r = env.sample(a);
        online.observe(a, r);
        data_arms.push_back(a);
        data_w.push_back(r == 1.0 ? 1 : 0);
    }

    // Offline oracle: batch EM over the recorded data until fixpoint.
    std::vector<double> u(4, 0.5), v(4, 0.5);
    for (int it = 0; it < 300; ++it) {
        std::vector<double> us(4, 0.0), ue(4, 0.0), vs(4, 0.0), ve(4, 0.0);
        for (std::size_t k = 0; k < data_arms.size(); ++k) {
            const auto post = em_posterior(data_w[k], std::min(u[data_arms[k].row], 1.0 - 1e-12),
                                           std::min(v[data_arms[k].col], 1.0 - 1e-12));
            us[data_arms[k].row] += post.row_mean;
            ue[data_arms[k].row] += 1.0;
            vs[data_arms[k].col] += post.col_mean;
            ve[data_arms[k].col] += 1.0;
        }
        for (int i = 0; i < 4; ++i) u[i] = us[i] / ue[i];
        for (int j = 0; j < 4; ++j) v[j] = vs[j] / ve[j];
    }

    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(online.row_estimates()[i] - inst.row_means[i]) < 0.05);
        CHECK(std::abs(u[i] - inst.row_means[i]) < 0.05);
    }
    for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(online.col_estimates()[j] - inst.col_means[j]) < 0.05);
        CHECK(std::abs(v[j] - inst.col_means[j]) < 0.05);
    }
}

TEST_CASE("glmucb radius carries the 1/c_mu scale") {
    GlmUcbConfig cfg;
    cfg.log_floor = 0.01;
    cfg.delta = 1e-3;
    GlmUcb p(2, 2, cfg);
    // Fresh estimates are 0.5: c_mu = 0.25.
    CHECK(p.c_mu() == doctest::Approx(0.25));
    const double r1 = p.radius(100);
    GlmUcbConfig scaled = cfg;
    scaled.radius_scale = 0.5;
    GlmUcb q(2, 2, scaled);
    CHECK(q.radius(100) == doctest::Approx(0.5 * r1));
}

}  // TEST_SUITE
