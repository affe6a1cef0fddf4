#pragma once

#include <string>
#include <vector>

#include "rank1/arm.hpp"

namespace rank1 {

enum class NoiseKind { Bernoulli, Gaussian, PointMass };

struct NoiseModel {
    NoiseKind kind = NoiseKind::Bernoulli;
    double sigma = 0.0;  // Gaussian only

    static NoiseModel bernoulli() { return {NoiseKind::Bernoulli, 0.0}; }
    static NoiseModel gaussian(double sigma) { return {NoiseKind::Gaussian, sigma}; }
    static NoiseModel point_mass() { return {NoiseKind::PointMass, 0.0}; }
};

// Ground-truth problem: expected reward of arm (i, j) is row_means[i] * col_means[j].
struct Rank1Instance {
    int num_rows = 0;
    int num_cols = 0;
    std::vector<double> row_means;
    std::vector<double> col_means;
    NoiseModel noise;

    double mean(const Arm& a) const { return row_means[a.row] * col_means[a.col]; }

    // Throws std::invalid_argument when any invariant is violated:
    // positive dimensions, means in [0,1], sigma > 0 for Gaussian noise.
    void validate() const;
};

Rank1Instance make_instance(std::vector<double> row_means, std::vector<double> col_means,
                            NoiseModel noise);

struct OptimalArm {
    Arm arm;
    bool unique = true;  // false when either argmax is tied
};

// Componentwise argmax of the mean vectors; ties resolve to the lowest index.
OptimalArm optimal_arm(const Rank1Instance& inst);

// Expected-reward shortfall of `arm` against the best arm. Always >= 0.
double pseudo_regret(const Rank1Instance& inst, const Arm& arm);

// JSON object {"K":..., "L":..., "u":[...], "v":[...], "noise":{"kind":..., "sigma":...}}.
std::string instance_to_json(const Rank1Instance& inst);
Rank1Instance instance_from_json(const std::string& text);
Rank1Instance load_instance(const std::string& path);
void save_instance(const Rank1Instance& inst, const std::string& path);

}  // namespace rank1
