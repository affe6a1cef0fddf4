#include "rank1/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rank1 {

namespace {

bool in_unit_interval(const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return x >= 0.0 && x <= 1.0; });
}

int argmax_lowest(const std::vector<double>& xs, bool* unique) {
    int best = 0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] > xs[best]) best = static_cast<int>(i);
    if (unique)
        *unique = std::count(xs.begin(), xs.end(), xs[best]) == 1;
    return best;
}

std::string noise_name(NoiseKind k) {
    switch (k) {
        case NoiseKind::Bernoulli: return "bernoulli";
        case NoiseKind::Gaussian: return "gaussian";
        case NoiseKind::PointMass: return "pointmass";
    }
    return "bernoulli";
}

}  // namespace

void Rank1Instance::validate() const {
    if (num_rows < 1 || num_cols < 1)
        throw std::invalid_argument("Rank1Instance: dimensions must be positive");
    if (static_cast<int>(row_means.size()) != num_rows ||
        static_cast<int>(col_means.size()) != num_cols)
        throw std::invalid_argument("Rank1Instance: mean vector lengths do not match dimensions");
    if (!in_unit_interval(row_means) || !in_unit_interval(col_means))
        throw std::invalid_argument("Rank1Instance: means must lie in [0,1]");
    if (noise.kind == NoiseKind::Gaussian && !(noise.sigma > 0.0))
        throw std::invalid_argument("Rank1Instance: Gaussian noise requires sigma > 0");
}

Rank1Instance make_instance(std::vector<double> row_means, std::vector<double> col_means,
                            NoiseModel noise) {
    Rank1Instance inst;
    inst.num_rows = static_cast<int>(row_means.size());
    inst.num_cols = static_cast<int>(col_means.size());
    inst.row_means = std::move(row_means);
    inst.col_means = std::move(col_means);
    inst.noise = noise;
    inst.validate();
    return inst;
}

OptimalArm optimal_arm(const Rank1Instance& inst) {
    inst.validate();
    bool row_unique = true, col_unique = true;
    OptimalArm out;
    out.arm.row = argmax_lowest(inst.row_means, &row_unique);
    out.arm.col = argmax_lowest(inst.col_means, &col_unique);
    out.unique = row_unique && col_unique;
    return out;
}

double pseudo_regret(const Rank1Instance& inst, const Arm& arm) {
    if (arm.row < 0 || arm.row >= inst.num_rows || arm.col < 0 || arm.col >= inst.num_cols)
        throw std::out_of_range("pseudo_regret: arm out of range");
    const Arm best = optimal_arm(inst).arm;
    return inst.mean(best) - inst.mean(arm);
}

std::string instance_to_json(const Rank1Instance& inst) {
    nlohmann::json j;
    j["K"] = inst.num_rows;
    j["L"] = inst.num_cols;
    j["u"] = inst.row_means;
    j["v"] = inst.col_means;
    j["noise"]["kind"] = noise_name(inst.noise.kind);
    if (inst.noise.kind == NoiseKind::Gaussian) j["noise"]["sigma"] = inst.noise.sigma;
    return j.dump(2);
}

Rank1Instance instance_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Rank1Instance inst;
    inst.num_rows = j.at("K").get<int>();
    inst.num_cols = j.at("L").get<int>();
    inst.row_means = j.at("u").get<std::vector<double>>();
    inst.col_means = j.at("v").get<std::vector<double>>();
    const std::string kind = j.at("noise").at("kind").get<std::string>();
    if (kind == "bernoulli") {
        inst.noise = NoiseModel::bernoulli();
    } else if (kind == "gaussian") {
        inst.noise = NoiseModel::gaussian(j.at("noise").at("sigma").get<double>());
    } else if (kind == "pointmass") {
        inst.noise = NoiseModel::point_mass();
    } else {
        throw std::invalid_argument("unknown noise kind: " + kind);
    }
    inst.validate();
    return inst;
}

Rank1Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

void save_instance(const Rank1Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << instance_to_json(inst) << "\n";
}

}  // namespace rank1
