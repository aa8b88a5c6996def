#include "shapgraph/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "shapgraph/errors.hpp"
#include "shapgraph/rng.hpp"

namespace shapgraph {

namespace {

void softmax_inplace(std::vector<double>& logits) {
    double hi = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double& v : logits) {
        v = std::exp(v - hi);
        sum += v;
    }
    for (double& v : logits) v /= sum;
}

void check_batch_dim(const Batch& batch, int d) {
    for (const auto& row : batch)
        if (static_cast<int>(row.size()) != d)
            throw DimensionMismatch("input row has " + std::to_string(row.size()) +
                                    " values, expected " + std::to_string(d));
}

void check_prob_rows(const ProbMatrix& probs, int classes) {
    for (const auto& row : probs) {
        if (static_cast<int>(row.size()) != classes)
            throw AdapterProtocolError("probability row has wrong width");
        double sum = 0.0;
        for (double p : row) {
            if (!(p >= 0.0) || !std::isfinite(p))
                throw AdapterProtocolError("negative or non-finite probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-6)
            throw AdapterProtocolError("probability row sums to " + std::to_string(sum));
    }
}

int argmax(const std::vector<double>& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

ProbMatrix predict_values(const Predictor& p, const Batch& batch) {
    if (batch.empty()) return {};
    check_batch_dim(batch, p.feature_count());
    ProbMatrix probs = p.predict(batch);
    if (probs.size() != batch.size())
        throw AdapterProtocolError("predictor returned " + std::to_string(probs.size()) +
                                   " rows for " + std::to_string(batch.size()) + " inputs");
    check_prob_rows(probs, p.class_count());
    return probs;
}

ProbMatrix predict_batch(const Predictor& p, const std::vector<Instance>& batch) {
    Batch values;
    values.reserve(batch.size());
    for (const auto& x : batch) values.push_back(x.values);
    return predict_values(p, values);
}

std::vector<double> predict_one(const Predictor& p, const Instance& x) {
    return predict_batch(p, {x})[0];
}

int predicted_class(const Predictor& p, const Instance& x) {
    return argmax(predict_one(p, x));
}

// ---------------------------------------------------------------------------
// Logistic regression

LogisticModel::LogisticModel(int d, int classes, std::vector<std::vector<double>> weights,
                             std::vector<double> bias)
    : d_(d), classes_(classes), weights_(std::move(weights)), bias_(std::move(bias)) {
    if (static_cast<int>(weights_.size()) != classes_ ||
        static_cast<int>(bias_.size()) != classes_)
        throw InvalidConfig("logistic parameter shape mismatch");
    for (const auto& row : weights_)
        if (static_cast<int>(row.size()) != d_)
            throw InvalidConfig("logistic weight row length mismatch");
}

ProbMatrix LogisticModel::predict(const Batch& batch) const {
    ProbMatrix out;
    out.reserve(batch.size());
    for (const auto& x : batch) {
        std::vector<double> logits(static_cast<std::size_t>(classes_), 0.0);
        for (int c = 0; c < classes_; ++c) {
            double z = bias_[c];
            for (int i = 0; i < d_; ++i) z += weights_[c][i] * x[i];
            logits[c] = z;
        }
        softmax_inplace(logits);
        out.push_back(std::move(logits));
    }
    return out;
}

std::shared_ptr<LogisticModel> train_logistic(const Dataset& ds, int epochs, double lr,
                                              std::uint64_t seed) {
    (void)seed;  // zero init and full-batch updates need no randomness
    if (!ds.has_labels()) throw UnlabeledDataset("train_logistic requires labels");
    if (epochs < 1) throw InvalidConfig("epochs must be >= 1");
    if (!(lr > 0.0)) throw InvalidConfig("learning rate must be positive");
    ds.validate();

    const int d = ds.d;
    const int k = ds.class_count;
    const std::size_t n = ds.size();
    std::vector<std::vector<double>> w(static_cast<std::size_t>(k),
                                       std::vector<double>(static_cast<std::size_t>(d), 0.0));
    std::vector<double> b(static_cast<std::size_t>(k), 0.0);

    std::vector<std::vector<double>> gw(w);
    std::vector<double> gb(b);

    for (int epoch = 0; epoch < epochs; ++epoch) {
        for (auto& row : gw) std::fill(row.begin(), row.end(), 0.0);
        std::fill(gb.begin(), gb.end(), 0.0);
        double loss = 0.0;
        for (const auto& x : ds.instances) {
            std::vector<double> p(static_cast<std::size_t>(k), 0.0);
            for (int c = 0; c < k; ++c) {
                double z = b[c];
                for (int i = 0; i < d; ++i) z += w[c][i] * x.values[i];
                p[c] = z;
            }
            softmax_inplace(p);
            loss -= std::log(std::max(p[*x.label], 1e-300));
            for (int c = 0; c < k; ++c) {
                double err = p[c] - (c == *x.label ? 1.0 : 0.0);
                gb[c] += err;
                for (int i = 0; i < d; ++i) gw[c][i] += err * x.values[i];
            }
        }
        if (!std::isfinite(loss)) throw TrainingDiverged("non-finite loss in epoch " +
                                                         std::to_string(epoch));
        double scale = lr / static_cast<double>(n);
        for (int c = 0; c < k; ++c) {
            b[c] -= scale * gb[c];
            for (int i = 0; i < d; ++i) w[c][i] -= scale * gw[c][i];
        }
    }
    return std::make_shared<LogisticModel>(d, k, std::move(w), std::move(b));
}

// ---------------------------------------------------------------------------
// One-hidden-layer MLP

MlpModel::MlpModel(int d, int classes, int hidden, std::vector<std::vector<double>> w1,
                   std::vector<double> b1, std::vector<std::vector<double>> w2,
                   std::vector<double> b2)
    : d_(d),
      classes_(classes),
      hidden_(hidden),
      w1_(std::move(w1)),
      b1_(std::move(b1)),
      w2_(std::move(w2)),
      b2_(std::move(b2)) {
    if (static_cast<int>(w1_.size()) != hidden_ || static_cast<int>(b1_.size()) != hidden_ ||
        static_cast<int>(w2_.size()) != classes_ || static_cast<int>(b2_.size()) != classes_)
        throw InvalidConfig("mlp parameter shape mismatch");
}

ProbMatrix MlpModel::predict(const Batch& batch) const {
    ProbMatrix out;
    out.reserve(batch.size());
    std::vector<double> h(static_cast<std::size_t>(hidden_));
    for (const auto& x : batch) {
        for (int j = 0; j < hidden_; ++j) {
            double z = b1_[j];
            for (int i = 0; i < d_; ++i) z += w1_[j][i] * x[i];
            h[j] = std::tanh(z);
        }
        std::vector<double> logits(static_cast<std::size_t>(classes_), 0.0);
        for (int c = 0; c < classes_; ++c) {
            double z = b2_[c];
            for (int j = 0; j < hidden_; ++j) z += w2_[c][j] * h[j];
            logits[c] = z;
        }
        softmax_inplace(logits);
        out.push_back(std::move(logits));
    }
    return out;
}

std::shared_ptr<MlpModel> train_mlp(const Dataset& ds, int hidden, int epochs, double lr,
                                    std::uint64_t seed) {
    if (!ds.has_labels()) throw UnlabeledDataset("train_mlp requires labels");
    if (hidden < 1) throw InvalidConfig("hidden must be >= 1");
    if (epochs < 1) throw InvalidConfig("epochs must be >= 1");
    if (!(lr > 0.0)) throw InvalidConfig("learning rate must be positive");
    ds.validate();

    const int d = ds.d;
    const int k = ds.class_count;
    const std::size_t n = ds.size();
    Rng rng(derive_seed(seed, 0x6d6c70));

    auto init_matrix = [&](int rows, int cols) {
        double r = std::sqrt(6.0 / static_cast<double>(rows + cols));
        std::vector<std::vector<double>> m(static_cast<std::size_t>(rows),
                                           std::vector<double>(static_cast<std::size_t>(cols)));
        for (auto& row : m)
            for (auto& v : row) v = (2.0 * rng.uniform() - 1.0) * r;
        return m;
    };

    auto w1 = init_matrix(hidden, d);
    std::vector<double> b1(static_cast<std::size_t>(hidden), 0.0);
    auto w2 = init_matrix(k, hidden);
    std::vector<double> b2(static_cast<std::size_t>(k), 0.0);

    const std::size_t batch_size = std::min<std::size_t>(32, n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    std::vector<double> h(static_cast<std::size_t>(hidden));
    std::vector<double> hraw(static_cast<std::size_t>(hidden));
    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        double loss = 0.0;
        for (std::size_t start = 0; start < n; start += batch_size) {
            std::size_t stop = std::min(n, start + batch_size);
            auto gw1 = std::vector<std::vector<double>>(
                static_cast<std::size_t>(hidden),
                std::vector<double>(static_cast<std::size_t>(d), 0.0));
            std::vector<double> gb1(static_cast<std::size_t>(hidden), 0.0);
            auto gw2 = std::vector<std::vector<double>>(
                static_cast<std::size_t>(k),
                std::vector<double>(static_cast<std::size_t>(hidden), 0.0));
            std::vector<double> gb2(static_cast<std::size_t>(k), 0.0);

            for (std::size_t idx = start; idx < stop; ++idx) {
                const auto& x = ds.instances[order[idx]];
                for (int j = 0; j < hidden; ++j) {
                    double z = b1[j];
                    for (int i = 0; i < d; ++i) z += w1[j][i] * x.values[i];
                    hraw[j] = z;
                    h[j] = std::tanh(z);
                }
                std::vector<double> p(static_cast<std::size_t>(k), 0.0);
                for (int c = 0; c < k; ++c) {
                    double z = b2[c];
                    for (int j = 0; j < hidden; ++j) z += w2[c][j] * h[j];
                    p[c] = z;
                }
                softmax_inplace(p);
                loss -= std::log(std::max(p[*x.label], 1e-300));

                std::vector<double> dlogit(static_cast<std::size_t>(k));
                for (int c = 0; c < k; ++c)
                    dlogit[c] = p[c] - (c == *x.label ? 1.0 : 0.0);
                for (int c = 0; c < k; ++c) {
                    gb2[c] += dlogit[c];
                    for (int j = 0; j < hidden; ++j) gw2[c][j] += dlogit[c] * h[j];
                }
                for (int j = 0; j < hidden; ++j) {
                    double dh = 0.0;
                    for (int c = 0; c < k; ++c) dh += dlogit[c] * w2[c][j];
                    double dz = dh * (1.0 - h[j] * h[j]);
                    gb1[j] += dz;
                    for (int i = 0; i < d; ++i) gw1[j][i] += dz * x.values[i];
                }
            }
            double scale = lr / static_cast<double>(stop - start);
            for (int j = 0; j < hidden; ++j) {
                b1[j] -= scale * gb1[j];
                for (int i = 0; i < d; ++i) w1[j][i] -= scale * gw1[j][i];
            }
            for (int c = 0; c < k; ++c) {
                b2[c] -= scale * gb2[c];
                for (int j = 0; j < hidden; ++j) w2[c][j] -= scale * gw2[c][j];
            }
        }
        if (!std::isfinite(loss))
            throw TrainingDiverged("non-finite loss in epoch " + std::to_string(epoch));
    }
    return std::make_shared<MlpModel>(d, k, hidden, std::move(w1), std::move(b1),
                                      std::move(w2), std::move(b2));
}

double training_accuracy(const Predictor& p, const Dataset& ds) {
    if (!ds.has_labels()) throw UnlabeledDataset("accuracy requires labels");
    auto probs = predict_batch(p, ds.instances);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < probs.size(); ++i)
        if (argmax(probs[i]) == *ds.instances[i].label) ++hits;
    return static_cast<double>(hits) / static_cast<double>(ds.size());
}

// ---------------------------------------------------------------------------
// Model files

void save_model(const Predictor& p, const std::string& path) {
    nlohmann::json j;
    if (const auto* lm = dynamic_cast<const LogisticModel*>(&p)) {
        j["kind"] = "logistic";
        j["d"] = lm->feature_count();
        j["classes"] = lm->class_count();
        j["weights"] = lm->weights();
        j["bias"] = lm->bias();
    } else if (const auto* mm = dynamic_cast<const MlpModel*>(&p)) {
        j["kind"] = "mlp";
        j["d"] = mm->feature_count();
        j["classes"] = mm->class_count();
        j["hidden"] = mm->hidden();
        j["w1"] = mm->w1();
        j["b1"] = mm->b1();
        j["w2"] = mm->w2();
        j["b2"] = mm->b2();
        j["activation"] = "tanh";
    } else {
        throw InvalidConfig("only builtin models can be saved");
    }
    std::ofstream out(path);
    if (!out) throw InvalidConfig("cannot write model file: " + path);
    out << j.dump(2) << '\n';
}

PredictorPtr load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig("malformed model file: " + std::string(e.what()));
    }
    try {
        std::string kind = j.at("kind");
        if (kind == "logistic") {
            return std::make_shared<LogisticModel>(
                j.at("d").get<int>(), j.at("classes").get<int>(),
                j.at("weights").get<std::vector<std::vector<double>>>(),
                j.at("bias").get<std::vector<double>>());
        }
        if (kind == "mlp") {
            return std::make_shared<MlpModel>(
                j.at("d").get<int>(), j.at("classes").get<int>(), j.at("hidden").get<int>(),
                j.at("w1").get<std::vector<std::vector<double>>>(),
                j.at("b1").get<std::vector<double>>(),
                j.at("w2").get<std::vector<std::vector<double>>>(),
                j.at("b2").get<std::vector<double>>());
        }
        throw InvalidConfig("unknown model kind: " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig("model file missing fields: " + std::string(e.what()));
    }
}

}  // namespace shapgraph
