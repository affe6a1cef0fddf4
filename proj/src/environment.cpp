#include "rank1/environment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace rank1 {

Rank1Instance make_spike(const SpikeSpec& spec) {
    if (spec.num_rows < 1 || spec.num_cols < 1)
        throw std::invalid_argument("make_spike: dimensions must be positive");
    if (!(spec.delta_u > 0.0) || !(spec.delta_v > 0.0))
        throw std::invalid_argument("make_spike: gaps must be positive");
    if (spec.p_u < 0.0 || spec.p_v < 0.0 || spec.p_u + spec.delta_u > 1.0 ||
        spec.p_v + spec.delta_v > 1.0)
        throw std::invalid_argument("make_spike: base plus gap must stay in [0,1]");
    std::vector<double> u(spec.num_rows, spec.p_u);
    std::vector<double> v(spec.num_cols, spec.p_v);
    u[0] = spec.p_u + spec.delta_u;
    v[0] = spec.p_v + spec.delta_v;
    return make_instance(std::move(u), std::move(v), NoiseModel::bernoulli());
}

double sample_reward(const Rank1Instance& inst, const Arm& arm, Rng& rng) {
    const double u = inst.row_means[arm.row];
    const double v = inst.col_means[arm.col];
    switch (inst.noise.kind) {
        case NoiseKind::Bernoulli: {
            // Product of the two latent Bernoulli coordinate draws.
            const double x = rng.bernoulli(u) ? 1.0 : 0.0;
            const double y = rng.bernoulli(v) ? 1.0 : 0.0;
            return x * y;
        }
        case NoiseKind::Gaussian: {
            // Unclipped by design: the Gaussian lower bound assumes unbounded
            // payoffs, so Hoeffding-based intervals are heuristic here.
            const double x = rng.normal(u, inst.noise.sigma);
            const double y = rng.normal(v, inst.noise.sigma);
            return x * y;
        }
        case NoiseKind::PointMass:
            return u * v;
    }
    throw std::logic_error("sample_reward: unknown noise kind");
}

Environment Environment::from_instance(Rank1Instance inst, std::uint64_t stream_seed) {
    inst.validate();
    Environment env;
    env.has_instance_ = true;
    env.num_rows_ = inst.num_rows;
    env.num_cols_ = inst.num_cols;
    env.means_.resize(static_cast<std::size_t>(inst.num_rows) * inst.num_cols);
    for (int i = 0; i < inst.num_rows; ++i)
        for (int j = 0; j < inst.num_cols; ++j)
            env.means_[i * inst.num_cols + j] = inst.row_means[i] * inst.col_means[j];
    const OptimalArm best = optimal_arm(inst);
    env.best_arm_ = best.arm;
    env.max_mean_ = inst.mean(best.arm);
    env.instance_ = std::move(inst);
    env.rng_ = Rng(stream_seed);
    return env;
}

Environment Environment::low_rank(const LowRankSpec& spec, std::uint64_t reward_seed) {
    if (spec.num_rows < 1 || spec.num_cols < 1)
        throw std::invalid_argument("low_rank: dimensions must be positive");
    if (spec.rank < 1 || spec.rank > std::min(spec.num_rows, spec.num_cols))
        throw std::invalid_argument("low_rank: rank must be in [1, min(K,L)]");
    if (!(spec.leading_weight > 1.0))
        throw std::invalid_argument("low_rank: leading_weight must exceed 1");

    const int K = spec.num_rows, L = spec.num_cols, r = spec.rank;

    // Nonnegative random factors give a strictly positive matrix. Writing
    // M = beta * M0 + (1 - beta) * sigma_1 u1 v1^T rescales the trailing
    // spectrum by beta while keeping the leading pair, so beta = rho / w pins
    // sigma_1/sigma_2 to w. For beta <= 1 this is a convex mix of two
    // entrywise-nonnegative matrices (u1, v1 are Perron vectors); for
    // beta > 1 negativity is possible, in which case we redraw the factors
    // from a derived sub-seed.
    Eigen::MatrixXd m;
    bool built = false;
    const int max_attempts = 64;
    for (int attempt = 0; attempt < max_attempts && !built; ++attempt) {
        Rng factors(stream_seed(spec.seed, static_cast<std::uint64_t>(attempt)));
        Eigen::MatrixXd a(K, r), b(L, r);
        for (int i = 0; i < K; ++i)
            for (int k = 0; k < r; ++k) a(i, k) = factors.uniform();
        for (int j = 0; j < L; ++j)
            for (int k = 0; k < r; ++k) b(j, k) = factors.uniform();
        m = a * b.transpose();
        if (r == 1) {
            built = true;
            break;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& s = svd.singularValues();
        if (!(s(r - 1) > 1e-12 * s(0))) continue;  // rank-deficient draw
        Eigen::VectorXd u1 = svd.matrixU().col(0);
        Eigen::VectorXd v1 = svd.matrixV().col(0);
        if (u1.sum() < 0.0) {
            u1 = -u1;
            v1 = -v1;
        }
        const double beta = (s(0) / s(1)) / spec.leading_weight;
        m = beta * m + (1.0 - beta) * s(0) * (u1 * v1.transpose());
        if (m.minCoeff() >= -1e-9 * m.maxCoeff()) {
            m = m.cwiseMax(0.0);
            built = true;
        }
    }
    if (!built)
        throw std::domain_error("low_rank: infeasible spectral shape for the requested weight");

    const double top = m.maxCoeff();
    if (!(top > 0.0)) throw std::domain_error("low_rank: degenerate matrix");
    m *= 0.98 / top;
    m = m.cwiseMin(1.0);

    Eigen::JacobiSVD<Eigen::MatrixXd> check(m);
    const Eigen::VectorXd sv = check.singularValues();
    const double tol = 1e-9 * sv(0);
    int realized_rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > tol) ++realized_rank;
    const double ratio = sv.size() > 1 && sv(1) > 0.0 ? sv(0) / sv(1)
                                                      : std::numeric_limits<double>::infinity();
    if (realized_rank != r ||
        (r > 1 && (ratio < 0.9 * spec.leading_weight || ratio > 1.1 * spec.leading_weight)))
        throw std::domain_error("low_rank: infeasible spectral shape for the requested weight");

    Environment env;
    env.has_instance_ = false;
    env.num_rows_ = K;
    env.num_cols_ = L;
    env.means_.resize(static_cast<std::size_t>(K) * L);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < L; ++j) env.means_[i * L + j] = m(i, j);
    int best = 0;
    for (int idx = 1; idx < K * L; ++idx)
        if (env.means_[idx] > env.means_[best]) best = idx;
    env.best_arm_ = {best / L, best % L};
    env.max_mean_ = env.means_[best];
    env.rng_ = Rng(reward_seed);
    return env;
}

double Environment::sample(const Arm& arm) {
    if (arm.row < 0 || arm.row >= num_rows_ || arm.col < 0 || arm.col >= num_cols_)
        throw std::out_of_range("Environment::sample: arm out of range");
    if (has_instance_) return sample_reward(instance_, arm, rng_);
    return rng_.bernoulli(mean(arm)) ? 1.0 : 0.0;
}

void Environment::write_means_csv(std::ostream& out) const {
    out.precision(17);
    for (int i = 0; i < num_rows_; ++i) {
        for (int j = 0; j < num_cols_; ++j) {
            if (j) out << ',';
            out << means_[i * num_cols_ + j];
        }
        out << '\n';
    }
}

void Environment::write_means_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write means CSV: " + path);
    write_means_csv(out);
}

}  // namespace rank1
