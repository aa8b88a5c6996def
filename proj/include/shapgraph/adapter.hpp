#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "shapgraph/predictor.hpp"

namespace shapgraph {

// Predictor backed by a child process speaking one UTF-8 JSON object per line
// over stdin/stdout:
//   {"cmd":"meta"}                      -> {"d":<int>,"classes":<int>}
//   {"cmd":"predict","instances":[..]}  -> {"probs":[[..],..]}
// A reply carrying {"error":...} or a dead/garbled channel raises
// AdapterProtocolError. Requests are serialized per connection; parallel jobs
// should each open their own AdapterPredictor.
class AdapterPredictor final : public Predictor {
public:
    // `command` is run through /bin/sh -c.
    explicit AdapterPredictor(const std::string& command);
    ~AdapterPredictor() override;

    AdapterPredictor(const AdapterPredictor&) = delete;
    AdapterPredictor& operator=(const AdapterPredictor&) = delete;

    int feature_count() const override { return d_; }
    int class_count() const override { return classes_; }
    std::string kind() const override { return "external-adapter"; }
    ProbMatrix predict(const Batch& batch) const override;

private:
    std::string roundtrip(const std::string& request) const;

    std::string command_;
    int d_ = 0;
    int classes_ = 0;
    pid_t pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    mutable std::string read_buffer_;
    mutable std::mutex io_mutex_;
};

std::shared_ptr<AdapterPredictor> connect_adapter(const std::string& command);

}  // namespace shapgraph
