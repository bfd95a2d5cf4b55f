#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "depsig/features.hpp"
#include "depsig/label.hpp"

namespace depsig {

struct TrainConfig {
    double l2 = 1.0;          // L2 strength, >= 0
    int max_iter = 1000;      // >= 1
    double grad_tol = 1e-4;   // infinity norm, > 0
    std::uint64_t seed = 0;   // recorded in metadata; training itself is deterministic

    // Optional observer, called once per accepted descent step. Null by
    // default; never affects the result.
    std::function<void(int iteration, double loss, double grad_inf_norm)> on_iteration;
};

struct TrainMeta {
    double l2 = 0.0;
    int iterations_run = 0;
    double final_grad_norm = 0.0;
    std::uint64_t seed = 0;
};

// Multinomial logistic regression: per-class weight rows over the feature
// schema, biases, and the metadata of the run that produced it.
struct LinearModel {
    std::vector<double> weights;                    // kNumClasses x D, row-major
    std::array<double, kNumClasses> bias{};
    std::array<Label, kNumClasses> label_order = kAllLabels;
    FeatureSchema schema;
    TrainMeta meta;

    std::size_t dim() const { return schema.dimension(); }
    double weight(std::size_t cls, std::size_t feature) const {
        return weights[cls * dim() + feature];
    }
};

struct LossGrad {
    double loss = 0.0;
    std::vector<double> grad_weights;               // same shape as weights
    std::array<double, kNumClasses> grad_bias{};
};

// loss = (1/N) sum_n -log softmax(Wx_n + b)[y_n] + (l2 / 2N) ||W||_F^2,
// bias unpenalized; gradients are the exact analytic derivatives.
LossGrad loss_and_gradient(std::span<const double> weights,
                           const std::array<double, kNumClasses>& bias,
                           std::span<const FeatureVector> x, std::span<const Label> y,
                           double l2, std::size_t dim);

struct TrainResult {
    std::vector<double> weights;
    std::array<double, kNumClasses> bias{};
    TrainMeta meta;
};

// Full-batch gradient descent from zero with backtracking line search
// (Armijo, c = 1e-4, step halved from 1.0). Stops when the gradient
// infinity norm drops below grad_tol or max_iter is reached. Deterministic.
TrainResult train_weights(std::span<const FeatureVector> x, std::span<const Label> y,
                          std::size_t dim, const TrainConfig& config);

LinearModel train(std::span<const FeatureVector> x, std::span<const Label> y,
                  FeatureSchema schema, const TrainConfig& config);

// softmax(Wx + b), max-subtracted; sums to 1, components in (0, 1).
std::array<double, kNumClasses> predict_proba(const LinearModel& model,
                                              const FeatureVector& x);

// argmax of predict_proba; exact ties go to the lowest class ordinal.
Label predict(const LinearModel& model, const FeatureVector& x);

// Textual, versioned model file (JSON): format tag, schema, vocabulary,
// scaler parameters, label order, full-precision weights, train metadata.
// load(save(m)) reproduces predictions bit-identically, and identical models
// serialize to identical bytes.
void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(const std::filesystem::path& path);

} // namespace depsig
