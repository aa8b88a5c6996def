#include "shapgraph/baseline.hpp"

#include "shapgraph/errors.hpp"

namespace shapgraph {

BaselineSpec BaselineSpec::zero() { return BaselineSpec{}; }

BaselineSpec BaselineSpec::fixed_vector(std::vector<double> v) {
    BaselineSpec b;
    b.mode = Mode::Fixed;
    b.fixed = std::move(v);
    return b;
}

BaselineSpec BaselineSpec::dataset_mean(const Dataset& ds) {
    BaselineSpec b;
    b.mode = Mode::DatasetMean;
    b.fixed = ds.feature_means();
    return b;
}

BaselineSpec BaselineSpec::reference_set(std::vector<std::vector<double>> rows) {
    if (rows.empty()) throw InvalidConfig("reference-set baseline requires at least one row");
    BaselineSpec b;
    b.mode = Mode::ReferenceSet;
    b.references = std::move(rows);
    return b;
}

std::string BaselineSpec::mode_name() const {
    switch (mode) {
        case Mode::Zero: return "zero";
        case Mode::Fixed: return "fixed";
        case Mode::DatasetMean: return "mean";
        case Mode::ReferenceSet: return "refs";
    }
    return "?";
}

void BaselineSpec::check_dim(int d) const {
    if ((mode == Mode::Fixed || mode == Mode::DatasetMean) &&
        static_cast<int>(fixed.size()) != d)
        throw DimensionMismatch("baseline vector has " + std::to_string(fixed.size()) +
                                " entries, expected " + std::to_string(d));
    if (mode == Mode::ReferenceSet)
        for (const auto& r : references)
            if (static_cast<int>(r.size()) != d)
                throw DimensionMismatch("baseline reference row has " +
                                        std::to_string(r.size()) + " entries, expected " +
                                        std::to_string(d));
}

namespace {

Instance apply_mask(const Instance& x, const std::vector<bool>& keep,
                    const BaselineSpec& baseline, Rng& rng) {
    const int d = x.dim();
    baseline.check_dim(d);

    const std::vector<double>* ref = nullptr;
    if (baseline.mode == BaselineSpec::Mode::ReferenceSet) {
        std::size_t pick = static_cast<std::size_t>(
            rng.uniform_int(baseline.references.size()));
        ref = &baseline.references[pick];
    }

    Instance out = x;
    for (int i = 0; i < d; ++i) {
        if (keep[i]) continue;
        switch (baseline.mode) {
            case BaselineSpec::Mode::Zero: out.values[i] = 0.0; break;
            case BaselineSpec::Mode::Fixed:
            case BaselineSpec::Mode::DatasetMean: out.values[i] = baseline.fixed[i]; break;
            case BaselineSpec::Mode::ReferenceSet: out.values[i] = (*ref)[i]; break;
        }
    }
    return out;
}

}  // namespace

Instance mask_instance(const Instance& x, const FeatureSet& keep,
                       const BaselineSpec& baseline, Rng& rng) {
    std::vector<bool> keep_flags(static_cast<std::size_t>(x.dim()), false);
    for (int i : keep) {
        if (i < 0 || i >= x.dim())
            throw DimensionMismatch("keep-set index " + std::to_string(i) +
                                    " outside [0, " + std::to_string(x.dim()) + ")");
        keep_flags[static_cast<std::size_t>(i)] = true;
    }
    return apply_mask(x, keep_flags, baseline, rng);
}

Instance mask_instance(const Instance& x, std::uint64_t keep_mask,
                       const BaselineSpec& baseline, Rng& rng) {
    std::vector<bool> keep_flags(static_cast<std::size_t>(x.dim()), false);
    for (int i = 0; i < x.dim(); ++i)
        if (keep_mask & (std::uint64_t{1} << i)) keep_flags[static_cast<std::size_t>(i)] = true;
    return apply_mask(x, keep_flags, baseline, rng);
}

}  // namespace shapgraph
