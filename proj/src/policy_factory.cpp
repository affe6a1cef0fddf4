#include "rank1/policy_factory.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "rank1/glmucb.hpp"
#include "rank1/linucb.hpp"
#include "rank1/ucb1.hpp"

namespace rank1 {

namespace {

std::map<std::string, double> parse_options(const std::string& text) {
    std::map<std::string, double> opts;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("policy option without '=': " + item);
        const std::string key = item.substr(0, eq);
        try {
            opts[key] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("policy option is not numeric: " + item);
        }
    }
    return opts;
}

double take(std::map<std::string, double>& opts, const std::string& key, double fallback) {
    const auto it = opts.find(key);
    if (it == opts.end()) return fallback;
    const double v = it->second;
    opts.erase(it);
    return v;
}

void reject_leftovers(const std::map<std::string, double>& opts, const std::string& policy) {
    if (!opts.empty())
        throw std::invalid_argument("unknown option '" + opts.begin()->first + "' for policy " +
                                    policy);
}

}  // namespace

std::string policy_name(const std::string& spec) {
    const auto colon = spec.find(':');
    return colon == std::string::npos ? spec : spec.substr(0, colon);
}

std::unique_ptr<Policy> make_policy(const std::string& spec, int num_rows, int num_cols,
                                    std::int64_t horizon, std::uint64_t seed,
                                    std::function<void(const StageSnapshot&)> on_stage_end) {
    const std::string name = policy_name(spec);
    const auto colon = spec.find(':');
    auto opts = parse_options(colon == std::string::npos ? "" : spec.substr(colon + 1));

    if (name == "rank1elim") {
        reject_leftovers(opts, name);
        Rank1Elim::Options o;
        o.on_stage_end = std::move(on_stage_end);
        return std::make_unique<Rank1Elim>(num_rows, num_cols, horizon, seed, std::move(o));
    }
    if (name == "ucb1") {
        reject_leftovers(opts, name);
        return std::make_unique<Ucb1>(num_rows, num_cols);
    }
    if (name == "linucb") {
        LinUcbConfig cfg;
        cfg.lambda = take(opts, "lambda", 1.0);
        cfg.log_floor = take(opts, "eps", 1e-2);
        cfg.radius_scale = take(opts, "scale", 1.0);
        cfg.delta = take(opts, "delta", 1.0 / static_cast<double>(horizon));
        reject_leftovers(opts, name);
        return std::make_unique<LinUcb>(num_rows, num_cols, cfg);
    }
    if (name == "glmucb") {
        GlmUcbConfig cfg;
        cfg.lambda = take(opts, "lambda", 1.0);
        cfg.log_floor = take(opts, "eps", 1e-2);
        cfg.radius_scale = take(opts, "scale", 1.0);
        cfg.delta = take(opts, "delta", 1.0 / static_cast<double>(horizon));
        reject_leftovers(opts, name);
        return std::make_unique<GlmUcb>(num_rows, num_cols, cfg);
    }
    throw std::invalid_argument("unknown policy spec: " + spec);
}

}  // namespace rank1
