#pragma once

#include <cstddef>
#include <vector>

namespace rank1::detail {

// Regularized design matrix V = lambda*I + sum x x^T for two-hot features
// (ones at positions p and q). Maintains V and V^-1 together; the inverse is
// updated in O(d^2) by the Sherman-Morrison identity.
class DesignMatrix {
public:
    DesignMatrix(int dim, double lambda) : dim_(dim) {
        v_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
        v_inv_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int k = 0; k < dim; ++k) {
            v_[idx(k, k)] = lambda;
            v_inv_[idx(k, k)] = 1.0 / lambda;
        }
    }

    void add_two_hot(int p, int q) {
        v_[idx(p, p)] += 1.0;
        v_[idx(q, q)] += 1.0;
        v_[idx(p, q)] += 1.0;
        v_[idx(q, p)] += 1.0;

        std::vector<double> z(dim_);
        for (int a = 0; a < dim_; ++a) z[a] = v_inv_[idx(a, p)] + v_inv_[idx(a, q)];
        const double denom = 1.0 + z[p] + z[q];
        for (int a = 0; a < dim_; ++a) {
            const double za = z[a] / denom;
            for (int b = 0; b < dim_; ++b) v_inv_[idx(a, b)] -= za * z[b];
        }
    }

    // x^T V^-1 x for the two-hot feature at (p, q).
    double quad_two_hot(int p, int q) const {
        return v_inv_[idx(p, p)] + v_inv_[idx(q, q)] + 2.0 * v_inv_[idx(p, q)];
    }

    // out = V^-1 * b
    void solve(const std::vector<double>& b, std::vector<double>& out) const {
        for (int a = 0; a < dim_; ++a) {
            double s = 0.0;
            for (int c = 0; c < dim_; ++c) s += v_inv_[idx(a, c)] * b[c];
            out[a] = s;
        }
    }

    int dim() const { return dim_; }
    const std::vector<double>& matrix() const { return v_; }
    const std::vector<double>& inverse() const { return v_inv_; }

private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * dim_ + b; }

    int dim_;
    std::vector<double> v_;
    std::vector<double> v_inv_;
};

}  // namespace rank1::detail
