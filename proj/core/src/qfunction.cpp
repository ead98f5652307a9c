#include "sfcsim/qfunction.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "sfcsim/errors.hpp"

namespace sfcsim {

namespace {

class MlpQFunction final : public IQFunction {
public:
    explicit MlpQFunction(const MlpConfig& config) : config_(config), rng_(config.seed) {
        if (config.inputs <= 0 || config.outputs <= 0)
            throw ConfigError("q-function needs positive input and output sizes");
        for (int width : config.hidden)
            if (width <= 0) throw ConfigError("hidden layer widths must be positive");

        std::vector<int> widths;
        widths.push_back(config.inputs);
        widths.insert(widths.end(), config.hidden.begin(), config.hidden.end());
        widths.push_back(config.outputs);
        for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
            const int fan_in = widths[l];
            const int fan_out = widths[l + 1];
            Eigen::MatrixXd w = Eigen::MatrixXd::Zero(fan_out, fan_in);
            if (!config.zero_init) {
                const double scale = std::sqrt(2.0 / fan_in);
                for (int r = 0; r < fan_out; ++r)
                    for (int c = 0; c < fan_in; ++c) w(r, c) = normal_draw() * scale;
            }
            weights_.push_back(std::move(w));
            biases_.push_back(Eigen::VectorXd::Zero(fan_out));
        }
        target_weights_ = weights_;
        target_biases_ = biases_;
    }

    int input_size() const override { return config_.inputs; }
    int output_size() const override { return config_.outputs; }

    std::vector<double> evaluate(const Observation& obs) const override {
        const Eigen::VectorXd out = forward(weights_, biases_, to_vector(obs), nullptr);
        return {out.data(), out.data() + out.size()};
    }

    double td_update(const std::vector<Transition>& batch, double gamma) override {
        if (batch.empty()) return 0.0;
        const auto layers = weights_.size();
        std::vector<Eigen::MatrixXd> grad_w;
        std::vector<Eigen::VectorXd> grad_b;
        for (std::size_t l = 0; l < layers; ++l) {
            grad_w.push_back(Eigen::MatrixXd::Zero(weights_[l].rows(), weights_[l].cols()));
            grad_b.push_back(Eigen::VectorXd::Zero(biases_[l].size()));
        }

        double loss = 0.0;
        const double batch_size = static_cast<double>(batch.size());
        for (const auto& t : batch) {
            if (t.action < 0 || t.action >= config_.outputs)
                throw LookupError("transition action out of range");

            double bootstrap = 0.0;
            if (!t.terminal) {
                const Eigen::VectorXd next =
                    forward(target_weights_, target_biases_, to_vector(t.next_state), nullptr);
                bool any = false;
                for (int a = 0; a < next.size(); ++a) {
                    if (!t.next_mask.empty() && !t.next_mask[static_cast<std::size_t>(a)]) continue;
                    if (!any || next[a] > bootstrap) bootstrap = next[a];
                    any = true;
                }
                if (!any) bootstrap = 0.0;
            }
            const double y = t.reward + (t.terminal ? 0.0 : gamma * bootstrap);

            std::vector<Eigen::VectorXd> activations;  // inputs of each layer + final output
            const Eigen::VectorXd out = forward(weights_, biases_, to_vector(t.state), &activations);
            const double error = out[t.action] - y;
            loss += error * error;

            // Backpropagate the squared-error gradient of the chosen output.
            Eigen::VectorXd delta = Eigen::VectorXd::Zero(config_.outputs);
            delta[t.action] = 2.0 * error / batch_size;
            for (std::size_t l = layers; l-- > 0;) {
                grad_w[l] += delta * activations[l].transpose();
                grad_b[l] += delta;
                if (l == 0) break;
                Eigen::VectorXd upstream = weights_[l].transpose() * delta;
                // ReLU gate: activations[l] holds the post-activation input
                // of layer l, zero exactly where the unit was off.
                for (int i = 0; i < upstream.size(); ++i)
                    if (activations[l][i] <= 0.0) upstream[i] = 0.0;
                delta = std::move(upstream);
            }
        }

        double norm_sq = 0.0;
        for (std::size_t l = 0; l < layers; ++l)
            norm_sq += grad_w[l].squaredNorm() + grad_b[l].squaredNorm();
        double scale = 1.0;
        const double norm = std::sqrt(norm_sq);
        if (config_.gradient_clip > 0 && norm > config_.gradient_clip)
            scale = config_.gradient_clip / norm;

        for (std::size_t l = 0; l < layers; ++l) {
            weights_[l] -= config_.learning_rate * scale * grad_w[l];
            biases_[l] -= config_.learning_rate * scale * grad_b[l];
        }
        return loss / batch_size;
    }

    void refresh_target() override {
        target_weights_ = weights_;
        target_biases_ = biases_;
    }

private:
    static Eigen::VectorXd to_vector(const Observation& obs) {
        return Eigen::Map<const Eigen::VectorXd>(obs.data(), static_cast<long>(obs.size()));
    }

    Eigen::VectorXd forward(const std::vector<Eigen::MatrixXd>& w,
                            const std::vector<Eigen::VectorXd>& b, Eigen::VectorXd input,
                            std::vector<Eigen::VectorXd>* activations) const {
        if (input.size() != config_.inputs) throw LookupError("observation size mismatch");
        for (std::size_t l = 0; l < w.size(); ++l) {
            if (activations) activations->push_back(input);
            input = w[l] * input + b[l];
            if (l + 1 < w.size()) input = input.cwiseMax(0.0);
        }
        if (activations) activations->push_back(input);
        return input;
    }

    double normal_draw() {
        // Box-Muller on the raw engine, matching the environment's approach,
        // so initialization is identical wherever the build runs.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    MlpConfig config_;
    std::mt19937_64 rng_;
    bool have_spare_{false};
    double spare_{0.0};
    std::vector<Eigen::MatrixXd> weights_;
    std::vector<Eigen::VectorXd> biases_;
    std::vector<Eigen::MatrixXd> target_weights_;
    std::vector<Eigen::VectorXd> target_biases_;
};

}  // namespace

std::unique_ptr<IQFunction> make_mlp_qfunction(const MlpConfig& config) {
    return std::make_unique<MlpQFunction>(config);
}

}  // namespace sfcsim
