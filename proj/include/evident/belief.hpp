#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evident/error.hpp"

namespace evident {

// Subsets of a frame are encoded as bitmasks: bit i set <=> hypothesis i
// belongs to the subset. 0 is the empty set, (1 << N) - 1 is the full frame.
using SubsetId = std::uint32_t;

inline int subset_cardinality(SubsetId s) { return std::popcount(s); }

// Frame of discernment: up to 16 named, mutually exclusive hypotheses.
class Frame {
public:
    static constexpr std::size_t max_size = 16;

    explicit Frame(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }

    // Bitmask of the full frame (theta).
    SubsetId theta() const { return static_cast<SubsetId>((1u << labels_.size()) - 1u); }

    bool contains(SubsetId s) const { return s <= theta(); }

    // "{D,I}" for bits 0b11, "{}" for the empty set.
    std::string subset_name(SubsetId s) const;

    bool operator==(const Frame&) const = default;

private:
    std::vector<std::string> labels_;
};

// Basic belief assignment over a frame. Only focal elements (mass > 0) are
// stored, sorted by SubsetId. The constructor enforces: no mass on the empty
// set, no negative mass, total mass 1 within 1e-9.
class MassFunction {
public:
    static constexpr double sum_tolerance = 1e-9;

    MassFunction(Frame frame, std::vector<std::pair<SubsetId, double>> masses);

    const Frame& frame() const { return frame_; }
    const std::vector<std::pair<SubsetId, double>>& focal() const { return focal_; }

    // 0.0 when s is not a focal element.
    double mass(SubsetId s) const;
    double theta_mass() const { return mass(frame_.theta()); }
    bool is_vacuous() const;

    // Focal sets in ascending SubsetId order, 6 decimals:
    // "{D}:0.250000 {D,I}:0.750000"
    std::string to_string() const;

    bool operator==(const MassFunction&) const = default;

private:
    Frame frame_;
    std::vector<std::pair<SubsetId, double>> focal_;
};

// Pignistic probability distribution, one entry per hypothesis.
struct PignisticDistribution {
    Frame frame;
    std::vector<double> probabilities;

    double of(std::size_t hypothesis) const { return probabilities[hypothesis]; }
};

// Total ignorance: all mass on theta.
MassFunction make_vacuous(const Frame& frame);

// Named constructor mirroring the bba constraints; identical to the
// MassFunction constructor.
MassFunction validate(std::vector<std::pair<SubsetId, double>> candidate, const Frame& frame);

struct CombinedMass {
    MassFunction mass;
    double conflict;  // mass that fell on the empty set (before normalization)
};

// Dempster's rule for two bbas on the same frame. Throws total_conflict when
// the normalizer 1 - K vanishes (<= 1e-12). Focal masses below 1e-12 after
// normalization are pruned and the remainder renormalized.
CombinedMass combine_dempster(const MassFunction& m1, const MassFunction& m2);

// Left fold of combine_dempster; conflict is 1 - prod(1 - K_i) over the fold
// steps, which equals the empty-set mass of the n-way conjunctive product.
CombinedMass combine_dempster_n(std::span<const MassFunction> masses);

// Shafer discounting: alpha * m on strict subsets, remainder on theta.
MassFunction discount(const MassFunction& m, double alpha);

PignisticDistribution pignistic(const MassFunction& m);

}  // namespace evident
