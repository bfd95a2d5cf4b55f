#include "depsig/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "depsig/errors.hpp"

namespace depsig {

namespace {

void check_design(std::span<const FeatureVector> x, std::span<const Label> y, std::size_t dim) {
    if (x.empty()) throw DataError("empty design matrix");
    if (x.size() != y.size()) throw LengthMismatch(y.size(), x.size());
    for (const FeatureVector& row : x) {
        if (row.dim != dim || row.dense_offset + row.dense.size() != dim) {
            throw DimensionMismatch("feature vector does not match dimension " +
                                    std::to_string(dim));
        }
    }
}

double score_class(std::span<const double> weights, double bias, const FeatureVector& x,
                   std::size_t dim, std::size_t cls) {
    const double* row = weights.data() + cls * dim;
    double s = bias;
    for (const SparseEntry& e : x.words) {
        s += row[e.index] * static_cast<double>(e.count);
    }
    const double* tail = row + x.dense_offset;
    for (std::size_t k = 0; k < x.dense.size(); ++k) s += tail[k] * x.dense[k];
    return s;
}

std::array<double, kNumClasses> softmax_scores(const std::array<double, kNumClasses>& scores) {
    const double max = *std::max_element(scores.begin(), scores.end());
    std::array<double, kNumClasses> p{};
    double sum = 0.0;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        p[c] = std::exp(scores[c] - max);
        sum += p[c];
    }
    for (double& v : p) v /= sum;
    return p;
}

// Mean negative log-likelihood plus the L2 term; gradients filled only when
// `grad` is non-null (the line search needs the loss alone).
double objective(std::span<const double> weights, const std::array<double, kNumClasses>& bias,
                 std::span<const FeatureVector> x, std::span<const Label> y, double l2,
                 std::size_t dim, LossGrad* grad) {
    const double n = static_cast<double>(x.size());
    if (grad) {
        grad->grad_weights.assign(weights.size(), 0.0);
        grad->grad_bias.fill(0.0);
    }

    double nll = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::array<double, kNumClasses> scores{};
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            scores[c] = score_class(weights, bias[c], x[i], dim, c);
        }
        const double max = *std::max_element(scores.begin(), scores.end());
        double sum = 0.0;
        for (double s : scores) sum += std::exp(s - max);
        const auto gold = static_cast<std::size_t>(y[i]);
        nll += -(scores[gold] - max - std::log(sum));

        if (grad) {
            for (std::size_t c = 0; c < kNumClasses; ++c) {
                const double residual = std::exp(scores[c] - max) / sum - (c == gold ? 1.0 : 0.0);
                grad->grad_bias[c] += residual;
                double* row = grad->grad_weights.data() + c * dim;
                for (const SparseEntry& e : x[i].words) {
                    row[e.index] += residual * static_cast<double>(e.count);
                }
                double* tail = row + x[i].dense_offset;
                for (std::size_t k = 0; k < x[i].dense.size(); ++k) {
                    tail[k] += residual * x[i].dense[k];
                }
            }
        }
    }

    double penalty = 0.0;
    for (double w : weights) penalty += w * w;
    const double loss = nll / n + l2 / (2.0 * n) * penalty;

    if (grad) {
        for (std::size_t j = 0; j < weights.size(); ++j) {
            grad->grad_weights[j] = grad->grad_weights[j] / n + l2 / n * weights[j];
        }
        for (double& g : grad->grad_bias) g /= n;
        grad->loss = loss;
    }
    return loss;
}

double grad_inf_norm(const LossGrad& g) {
    double norm = 0.0;
    for (double v : g.grad_weights) norm = std::max(norm, std::abs(v));
    for (double v : g.grad_bias) norm = std::max(norm, std::abs(v));
    return norm;
}

double grad_sq_norm(const LossGrad& g) {
    double sq = 0.0;
    for (double v : g.grad_weights) sq += v * v;
    for (double v : g.grad_bias) sq += v * v;
    return sq;
}

} // namespace

LossGrad loss_and_gradient(std::span<const double> weights,
                           const std::array<double, kNumClasses>& bias,
                           std::span<const FeatureVector> x, std::span<const Label> y,
                           double l2, std::size_t dim) {
    if (weights.size() != kNumClasses * dim) {
        throw DimensionMismatch("weight matrix is not " + std::to_string(kNumClasses) + "x" +
                                std::to_string(dim));
    }
    check_design(x, y, dim);
    LossGrad grad;
    objective(weights, bias, x, y, l2, dim, &grad);
    return grad;
}

TrainResult train_weights(std::span<const FeatureVector> x, std::span<const Label> y,
                          std::size_t dim, const TrainConfig& config) {
    if (config.l2 < 0.0 || config.max_iter < 1 || !(config.grad_tol > 0.0)) {
        throw DataError("invalid training configuration");
    }
    check_design(x, y, dim);
    if (x.size() < kNumClasses) throw DataError("need at least one example per class");
    std::array<bool, kNumClasses> present{};
    for (Label label : y) present[static_cast<std::size_t>(label)] = true;
    for (Label label : kAllLabels) {
        if (!present[static_cast<std::size_t>(label)]) {
            throw MissingClass(std::string(label_name(label)));
        }
    }

    TrainResult result;
    result.weights.assign(kNumClasses * dim, 0.0);
    result.bias.fill(0.0);

    LossGrad current = loss_and_gradient(result.weights, result.bias, x, y, config.l2, dim);
    if (!std::isfinite(current.loss) || !std::isfinite(grad_sq_norm(current))) {
        throw NonFiniteLoss();
    }

    int iterations = 0;
    double grad_inf = grad_inf_norm(current);
    std::vector<double> trial_w(result.weights.size());
    std::array<double, kNumClasses> trial_b{};

    while (iterations < config.max_iter && grad_inf >= config.grad_tol) {
        const double gsq = grad_sq_norm(current);
        constexpr double kArmijoC = 1e-4;
        double step = 1.0;
        bool accepted = false;
        double trial_loss = 0.0;
        while (step >= 1e-20) {
            for (std::size_t j = 0; j < trial_w.size(); ++j) {
                trial_w[j] = result.weights[j] - step * current.grad_weights[j];
            }
            for (std::size_t c = 0; c < kNumClasses; ++c) {
                trial_b[c] = result.bias[c] - step * current.grad_bias[c];
            }
            trial_loss = objective(trial_w, trial_b, x, y, config.l2, dim, nullptr);
            if (std::isfinite(trial_loss) && trial_loss <= current.loss - kArmijoC * step * gsq) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // no decrease possible at double precision

        result.weights.swap(trial_w);
        result.bias = trial_b;
        current = loss_and_gradient(result.weights, result.bias, x, y, config.l2, dim);
        if (!std::isfinite(current.loss)) throw NonFiniteLoss();
        ++iterations;
        grad_inf = grad_inf_norm(current);
        if (config.on_iteration) config.on_iteration(iterations, current.loss, grad_inf);
    }

    result.meta = TrainMeta{config.l2, iterations, grad_inf, config.seed};
    return result;
}

LinearModel train(std::span<const FeatureVector> x, std::span<const Label> y,
                  FeatureSchema schema, const TrainConfig& config) {
    TrainResult fitted = train_weights(x, y, schema.dimension(), config);
    LinearModel model;
    model.weights = std::move(fitted.weights);
    model.bias = fitted.bias;
    model.schema = std::move(schema);
    model.meta = fitted.meta;
    return model;
}

std::array<double, kNumClasses> predict_proba(const LinearModel& model, const FeatureVector& x) {
    const std::size_t dim = model.dim();
    if (x.dim != dim || x.dense_offset + x.dense.size() != dim) {
        throw DimensionMismatch("input vector does not match the model's feature space");
    }
    std::array<double, kNumClasses> scores{};
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        scores[c] = score_class(model.weights, model.bias[c], x, dim, c);
    }
    return softmax_scores(scores);
}

Label predict(const LinearModel& model, const FeatureVector& x) {
    const auto p = predict_proba(model, x);
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c) {
        if (p[c] > p[best]) best = c; // strict: ties keep the lowest ordinal
    }
    return model.label_order[best];
}

namespace {

using nlohmann::json;

json scaler_to_json(const StyleScaler& scaler) {
    json j;
    j["min"] = std::vector<double>(scaler.mins().begin(), scaler.mins().end());
    j["max"] = std::vector<double>(scaler.maxs().begin(), scaler.maxs().end());
    return j;
}

std::array<double, kStyleCount> array22_from_json(const json& j) {
    const auto values = j.get<std::vector<double>>();
    if (values.size() != kStyleCount) {
        throw CorruptModel("style scaler must have " + std::to_string(kStyleCount) + " columns");
    }
    std::array<double, kStyleCount> out{};
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

} // namespace

void save_model(const LinearModel& model, const std::filesystem::path& path) {
    for (double w : model.weights) {
        if (!std::isfinite(w)) throw NumericError("refusing to save non-finite weights");
    }

    json j;
    j["format"] = "depsig-model";
    j["version"] = 1;
    j["label_order"] = json::array();
    for (Label label : model.label_order) j["label_order"].push_back(label_name(label));

    json schema;
    schema["person_number"] = model.schema.use_person_number();
    schema["pos_softmax_input"] =
        model.schema.pos_input() == PosSoftmaxInput::Counts ? "counts" : "relfreq";
    schema["vocabulary"] = model.schema.vocab().tokens();
    schema["style_scaler"] = scaler_to_json(model.schema.scaler());
    j["schema"] = std::move(schema);

    const std::size_t dim = model.dim();
    json rows = json::array();
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        rows.push_back(std::vector<double>(model.weights.begin() + c * dim,
                                           model.weights.begin() + (c + 1) * dim));
    }
    j["weights"] = std::move(rows);
    j["bias"] = std::vector<double>(model.bias.begin(), model.bias.end());

    j["train_meta"] = {
        {"l2", model.meta.l2},
        {"iterations_run", model.meta.iterations_run},
        {"final_grad_norm", model.meta.final_grad_norm},
        {"seed", model.meta.seed},
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw DataError("write failed: " + path.string());
}

LinearModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path.string());

    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw CorruptModel(e.what());
    }

    try {
        if (!j.contains("format") || j.at("format") != "depsig-model") {
            throw CorruptModel("missing depsig-model format tag");
        }
        if (!j.contains("version") || !j.at("version").is_number_integer()) {
            throw CorruptModel("missing format version");
        }
        if (j.at("version").get<int>() != 1) {
            throw UnsupportedVersion(j.at("version").dump());
        }

        const auto names = j.at("label_order").get<std::vector<std::string>>();
        if (names.size() != kNumClasses) throw CorruptModel("label order must list 3 classes");
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            if (names[c] != label_name(kAllLabels[c])) {
                throw CorruptModel("unexpected label order entry \"" + names[c] + "\"");
            }
        }

        const json& schema_json = j.at("schema");
        auto vocab = VocabularyIndex::from_tokens(
            schema_json.at("vocabulary").get<std::vector<std::string>>());
        const std::string pos_input_name = schema_json.at("pos_softmax_input").get<std::string>();
        if (pos_input_name != "counts" && pos_input_name != "relfreq") {
            throw CorruptModel("unknown pos_softmax_input \"" + pos_input_name + "\"");
        }
        auto scaler = StyleScaler::from_params(
            array22_from_json(schema_json.at("style_scaler").at("min")),
            array22_from_json(schema_json.at("style_scaler").at("max")));

        LinearModel model;
        model.schema = FeatureSchema::assemble_parts(
            std::move(vocab), std::move(scaler), schema_json.at("person_number").get<bool>(),
            pos_input_name == "counts" ? PosSoftmaxInput::Counts : PosSoftmaxInput::RelFreq);

        const std::size_t dim = model.schema.dimension();
        const json& rows = j.at("weights");
        if (!rows.is_array() || rows.size() != kNumClasses) {
            throw CorruptModel("weights must have 3 rows");
        }
        model.weights.reserve(kNumClasses * dim);
        for (const json& row : rows) {
            const auto values = row.get<std::vector<double>>();
            if (values.size() != dim) {
                throw CorruptModel("weight row length " + std::to_string(values.size()) +
                                   " does not match schema dimension " + std::to_string(dim));
            }
            model.weights.insert(model.weights.end(), values.begin(), values.end());
        }
        const auto bias = j.at("bias").get<std::vector<double>>();
        if (bias.size() != kNumClasses) throw CorruptModel("bias must have 3 entries");
        std::copy(bias.begin(), bias.end(), model.bias.begin());

        const json& meta = j.at("train_meta");
        model.meta.l2 = meta.at("l2").get<double>();
        model.meta.iterations_run = meta.at("iterations_run").get<int>();
        model.meta.final_grad_norm = meta.at("final_grad_norm").get<double>();
        model.meta.seed = meta.at("seed").get<std::uint64_t>();
        return model;
    } catch (const json::exception& e) {
        throw CorruptModel(e.what());
    }
}

} // namespace depsig
