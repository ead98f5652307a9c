#pragma once

#include <memory>
#include <vector>

#include "sfcsim/environment.hpp"

namespace sfcsim {

// One remembered interaction for experience replay. next_mask flags which
// actions were structurally available in next_state; the bootstrap maximum
// is taken over those only (empty means all).
struct Transition {
    Observation state;
    int action{};
    double reward{};
    Observation next_state;
    bool terminal{};
    std::vector<bool> next_mask;
};

// A trainable action-value estimate with a frozen bootstrap copy. The frozen
// copy serves the TD targets and only moves when refresh_target is called.
class IQFunction {
public:
    virtual ~IQFunction() = default;
    virtual int input_size() const = 0;
    virtual int output_size() const = 0;
    virtual std::vector<double> evaluate(const Observation& obs) const = 0;
    // One stochastic gradient step toward the one-step bootstrap targets.
    // Returns the mean squared TD error measured before the step.
    virtual double td_update(const std::vector<Transition>& batch, double gamma) = 0;
    virtual void refresh_target() = 0;
};

struct MlpConfig {
    int inputs{};
    int outputs{};
    std::vector<int> hidden{64, 64};  // empty means a plain linear map
    double learning_rate{1e-3};
    double gradient_clip{5.0};  // global gradient norm ceiling
    unsigned long seed{1};
    bool zero_init{false};  // start from exact zeros (hand-checkable updates)
};

std::unique_ptr<IQFunction> make_mlp_qfunction(const MlpConfig& config);

}  // namespace sfcsim
