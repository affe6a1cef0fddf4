#pragma once

#include <cstdint>
#include <string>

#include "rank1/arm.hpp"

namespace rank1 {

// Choose/observe contract shared by every algorithm. Step indices t are
// 1-based; the driver calls choose(t) then observe(arm, reward) exactly once
// per step with the arm just chosen. Implementations are single-threaded
// state machines: one instance per simulation run.
class Policy {
public:
    virtual ~Policy() = default;
    virtual Arm choose(std::int64_t t) = 0;
    virtual void observe(const Arm& arm, double reward) = 0;
    virtual std::string name() const = 0;
};

}  // namespace rank1
