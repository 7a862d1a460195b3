#include "evident/belief.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

namespace evident {

namespace {

constexpr double kPruneThreshold = 1e-12;

std::string format6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

}  // namespace

Frame::Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty() || labels_.size() > max_size) {
        throw Error(Error::Code::invalid_frame,
                    "frame must have between 1 and 16 hypotheses, got " +
                        std::to_string(labels_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) {
            throw Error(Error::Code::invalid_frame, "hypothesis labels must be non-empty");
        }
        if (!seen.insert(l).second) {
            throw Error(Error::Code::invalid_frame, "duplicate hypothesis label '" + l + "'");
        }
    }
}

std::string Frame::subset_name(SubsetId s) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (s & (SubsetId{1} << i)) {
            if (!first) out += ',';
            out += labels_[i];
            first = false;
        }
    }
    out += '}';
    return out;
}

MassFunction::MassFunction(Frame frame, std::vector<std::pair<SubsetId, double>> masses)
    : frame_(std::move(frame)) {
    // Accumulate duplicates so callers may pass any sparse mapping.
    std::sort(masses.begin(), masses.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double sum = 0.0;
    for (const auto& [subset, value] : masses) {
        if (!frame_.contains(subset)) {
            throw Error(Error::Code::subset_out_of_range,
                        "subset id " + std::to_string(subset) + " exceeds frame of size " +
                            std::to_string(frame_.size()));
        }
        if (value < 0.0 || std::isnan(value)) {
            throw Error(Error::Code::negative_mass,
                        "mass on " + frame_.subset_name(subset) + " is " + format6(value));
        }
        if (value == 0.0) continue;
        if (subset == 0) {
            throw Error(Error::Code::mass_on_empty_set,
                        "empty set carries mass " + format6(value));
        }
        if (!focal_.empty() && focal_.back().first == subset) {
            focal_.back().second += value;
        } else {
            focal_.emplace_back(subset, value);
        }
        sum += value;
    }
    if (std::abs(sum - 1.0) > sum_tolerance) {
        throw Error(Error::Code::sum_not_one, "masses sum to " + format6(sum) + ", expected 1");
    }
}

double MassFunction::mass(SubsetId s) const {
    auto it = std::lower_bound(focal_.begin(), focal_.end(), s,
                               [](const auto& e, SubsetId v) { return e.first < v; });
    return (it != focal_.end() && it->first == s) ? it->second : 0.0;
}

bool MassFunction::is_vacuous() const {
    return focal_.size() == 1 && focal_.front().first == frame_.theta();
}

std::string MassFunction::to_string() const {
    std::string out;
    for (const auto& [subset, value] : focal_) {
        if (!out.empty()) out += ' ';
        out += frame_.subset_name(subset);
        out += ':';
        out += format6(value);
    }
    return out;
}

MassFunction make_vacuous(const Frame& frame) {
    return MassFunction(frame, {{frame.theta(), 1.0}});
}

MassFunction validate(std::vector<std::pair<SubsetId, double>> candidate, const Frame& frame) {
    return MassFunction(frame, std::move(candidate));
}

CombinedMass combine_dempster(const MassFunction& m1, const MassFunction& m2) {
    if (m1.frame() != m2.frame()) {
        throw Error(Error::Code::frame_mismatch, "combining bbas over different frames");
    }
    const Frame& frame = m1.frame();
    std::vector<double> acc(frame.theta() + SubsetId{1}, 0.0);
    for (const auto& [b, mb] : m1.focal()) {
        for (const auto& [c, mc] : m2.focal()) {
            acc[b & c] += mb * mc;
        }
    }
    const double conflict = acc[0];
    const double normalizer = 1.0 - conflict;
    if (normalizer <= kPruneThreshold) {
        throw Error(Error::Code::total_conflict,
                    "total conflict (K = " + format6(conflict) + "), combination undefined");
    }

    std::vector<std::pair<SubsetId, double>> entries;
    bool pruned = false;
    double kept = 0.0;
    for (SubsetId s = 1; s < acc.size(); ++s) {
        if (acc[s] == 0.0) continue;
        const double v = acc[s] / normalizer;
        if (v < kPruneThreshold) {
            pruned = true;
            continue;
        }
        entries.emplace_back(s, v);
        kept += v;
    }
    if (pruned) {
        for (auto& [s, v] : entries) v /= kept;
    }
    return {MassFunction(frame, std::move(entries)), conflict};
}

CombinedMass combine_dempster_n(std::span<const MassFunction> masses) {
    if (masses.empty()) {
        throw Error(Error::Code::empty_list, "cannot combine an empty list of bbas");
    }
    for (std::size_t i = 1; i < masses.size(); ++i) {
        if (masses[i].frame() != masses[0].frame()) {
            throw Error(Error::Code::frame_mismatch, "combining bbas over different frames");
        }
    }
    MassFunction folded = masses[0];
    double survivor = 1.0;  // prod(1 - K_i)
    for (std::size_t i = 1; i < masses.size(); ++i) {
        CombinedMass step = combine_dempster(folded, masses[i]);
        folded = std::move(step.mass);
        survivor *= 1.0 - step.conflict;
    }
    return {std::move(folded), 1.0 - survivor};
}

MassFunction discount(const MassFunction& m, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(Error::Code::alpha_out_of_range,
                    "discount coefficient " + format6(alpha) + " outside [0,1]");
    }
    if (alpha == 1.0) return m;
    if (alpha == 0.0) return make_vacuous(m.frame());

    const SubsetId theta = m.frame().theta();
    std::vector<std::pair<SubsetId, double>> entries;
    for (const auto& [subset, value] : m.focal()) {
        if (subset == theta) continue;
        entries.emplace_back(subset, alpha * value);
    }
    entries.emplace_back(theta, 1.0 - alpha * (1.0 - m.theta_mass()));
    return MassFunction(m.frame(), std::move(entries));
}

PignisticDistribution pignistic(const MassFunction& m) {
    const std::size_t n = m.frame().size();
    std::vector<double> probs(n, 0.0);
    for (const auto& [subset, value] : m.focal()) {
        const double share = value / subset_cardinality(subset);
        for (std::size_t i = 0; i < n; ++i) {
            if (subset & (SubsetId{1} << i)) probs[i] += share;
        }
    }
    return {m.frame(), std::move(probs)};
}

}  // namespace evident
