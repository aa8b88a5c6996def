#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shapgraph/dataset.hpp"
#include "shapgraph/rng.hpp"

namespace shapgraph {

// Substitute values standing in for removed features. Zero, fixed and mean
// modes are deterministic; the reference-set mode draws one sample per call.
struct BaselineSpec {
    enum class Mode { Zero, Fixed, DatasetMean, ReferenceSet };

    Mode mode = Mode::Zero;
    std::vector<double> fixed;                     // Fixed / DatasetMean vector
    std::vector<std::vector<double>> references;   // ReferenceSet rows

    static BaselineSpec zero();
    static BaselineSpec fixed_vector(std::vector<double> v);
    static BaselineSpec dataset_mean(const Dataset& ds);
    static BaselineSpec reference_set(std::vector<std::vector<double>> rows);

    bool deterministic() const { return mode != Mode::ReferenceSet; }
    std::string mode_name() const;
    void check_dim(int d) const;
};

using FeatureSet = std::vector<int>;

// Copies coordinates in `keep` from x and replaces the rest with the baseline.
// `rng` is consulted only by the reference-set mode.
Instance mask_instance(const Instance& x, const FeatureSet& keep,
                       const BaselineSpec& baseline, Rng& rng);

// Mask by d-bit subset mask (bit i set = feature i kept).
Instance mask_instance(const Instance& x, std::uint64_t keep_mask,
                       const BaselineSpec& baseline, Rng& rng);

}  // namespace shapgraph
