#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "rank1/policy.hpp"
#include "rank1/rank1elim.hpp"

namespace rank1 {

// Builds a policy from its spec string:
//   "rank1elim"
//   "ucb1"
//   "linucb:lambda=1,eps=0.01,scale=1"
//   "glmucb:eps=0.01,scale=1"
// Unknown names or malformed options raise std::invalid_argument. The
// confidence failure rate of LinUCB / GLM-UCB defaults to 1/horizon.
// `on_stage_end`, when set, receives Rank1Elim stage snapshots (ignored by
// the other policies).
std::unique_ptr<Policy> make_policy(const std::string& spec, int num_rows, int num_cols,
                                    std::int64_t horizon, std::uint64_t seed,
                                    std::function<void(const StageSnapshot&)> on_stage_end = {});

// Canonical short name ("rank1elim", "ucb1", "linucb", "glmucb").
std::string policy_name(const std::string& spec);

}  // namespace rank1
