#pragma once

#include <string_view>
#include <vector>

#include "evident/belief.hpp"
#include "evident/weights.hpp"

namespace evident {

// The two-hypothesis frame {D, I}: D = dependent, I = independent.
const Frame& independence_frame();

inline constexpr SubsetId kDependentSet = 0b01;    // {D}
inline constexpr SubsetId kIndependentSet = 0b10;  // {I}
inline constexpr SubsetId kEitherSet = 0b11;       // {D,I}

// Evidence bbas on the independence frame:
//   m(D) = alpha * w,  m(I) = alpha * (1 - w),  m({D,I}) = 1 - alpha.
MassFunction mass_from_retweets(const WeightVector& w);
MassFunction mass_from_mentions(const WeightVector& w);
MassFunction mass_from_citations(const WeightVector& w);

enum class Decision { dependent, independent, undecided };

std::string_view to_string(Decision d);

enum class TieRule {
    undecided,  // |dep - ind| <= 1e-9 is reported as undecided
    paper,      // dep >= ind is reported as dependent
};

struct DependenceScore {
    static constexpr double tie_band = 1e-9;

    UserId u;
    UserId v;
    WeightVector weights;
    double dep = 0.5;
    double ind = 0.5;
    Decision decision = Decision::undecided;
    double conflict = 0.0;
    MassFunction fused = make_vacuous(independence_frame());
    // True when fusing the three evidence bbas hit total conflict; the edge
    // is then recorded as undecided with conflict 1 instead of aborting.
    bool fusion_failed = false;
};

Decision decide(double dep, double ind, TieRule rule);

// Full per-edge evaluation: weights, three discounted bbas, Dempster fusion,
// pignistic degrees, decision. Throws self_edge when u == v.
DependenceScore score_edge(const InteractionCounts& counts, const UserId& u, const UserId& v,
                           TieRule rule = TieRule::undecided);

// One score per ordered pair from pairs_with_interaction, in that order.
// jobs > 1 evaluates edges in parallel; the output order is unchanged.
std::vector<DependenceScore> score_all(const InteractionCounts& counts,
                                       TieRule rule = TieRule::undecided, unsigned jobs = 1);

}  // namespace evident
