#pragma once

#include <memory>
#include <string>
#include <vector>

#include "shapgraph/dataset.hpp"

namespace shapgraph {

using Batch = std::vector<std::vector<double>>;
using ProbMatrix = std::vector<std::vector<double>>;

// Black-box classifier: rows of probabilities over classes. Implementations
// are immutable after construction and safe for concurrent read.
class Predictor {
public:
    virtual ~Predictor() = default;
    virtual int feature_count() const = 0;
    virtual int class_count() const = 0;
    virtual std::string kind() const = 0;
    // One probability row per input row; called once per batch.
    virtual ProbMatrix predict(const Batch& batch) const = 0;
};

using PredictorPtr = std::shared_ptr<const Predictor>;

// Validates dimensions and that every output row is a probability vector.
ProbMatrix predict_batch(const Predictor& p, const std::vector<Instance>& batch);
ProbMatrix predict_values(const Predictor& p, const Batch& batch);
std::vector<double> predict_one(const Predictor& p, const Instance& x);
int predicted_class(const Predictor& p, const Instance& x);

// Multinomial logistic regression, full-batch gradient descent, zero init.
class LogisticModel final : public Predictor {
public:
    LogisticModel(int d, int classes, std::vector<std::vector<double>> weights,
                  std::vector<double> bias);

    int feature_count() const override { return d_; }
    int class_count() const override { return classes_; }
    std::string kind() const override { return "builtin-logistic"; }
    ProbMatrix predict(const Batch& batch) const override;

    const std::vector<std::vector<double>>& weights() const { return weights_; }
    const std::vector<double>& bias() const { return bias_; }

private:
    int d_;
    int classes_;
    std::vector<std::vector<double>> weights_;  // classes x d
    std::vector<double> bias_;                  // classes
};

// One-hidden-layer network with tanh activation and softmax output, trained
// by mini-batch SGD.
class MlpModel final : public Predictor {
public:
    MlpModel(int d, int classes, int hidden, std::vector<std::vector<double>> w1,
             std::vector<double> b1, std::vector<std::vector<double>> w2,
             std::vector<double> b2);

    int feature_count() const override { return d_; }
    int class_count() const override { return classes_; }
    std::string kind() const override { return "builtin-mlp"; }
    ProbMatrix predict(const Batch& batch) const override;

    int hidden() const { return hidden_; }
    const std::vector<std::vector<double>>& w1() const { return w1_; }
    const std::vector<double>& b1() const { return b1_; }
    const std::vector<std::vector<double>>& w2() const { return w2_; }
    const std::vector<double>& b2() const { return b2_; }

private:
    int d_;
    int classes_;
    int hidden_;
    std::vector<std::vector<double>> w1_;  // hidden x d
    std::vector<double> b1_;               // hidden
    std::vector<std::vector<double>> w2_;  // classes x hidden
    std::vector<double> b2_;               // classes
};

std::shared_ptr<LogisticModel> train_logistic(const Dataset& ds, int epochs, double lr,
                                              std::uint64_t seed);
std::shared_ptr<MlpModel> train_mlp(const Dataset& ds, int hidden, int epochs, double lr,
                                    std::uint64_t seed);

double training_accuracy(const Predictor& p, const Dataset& ds);

// Model files are JSON holding the kind, shape and full-precision parameters.
void save_model(const Predictor& p, const std::string& path);
PredictorPtr load_model(const std::string& path);

}  // namespace shapgraph
