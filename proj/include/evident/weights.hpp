#pragma once

#include "evident/interaction.hpp"

namespace evident {

// Per-edge channel weights and discount coefficients for the ordered pair
// (u, v). A channel with no activity carries weight 0 and coefficient 0,
// which downstream discounting turns into total ignorance rather than
// evidence of independence.
struct WeightVector {
    UserId u;
    UserId v;
    double w_r = 0.0;
    double w_m = 0.0;
    double w_c = 0.0;
    double alpha_r = 0.0;
    double alpha_m = 0.0;
    double alpha_c = 0.0;
};

// w_x = pair_x / totals_x when the denominator is positive, else 0;
// alpha_x = totals_x / tweets likewise. Unknown users have all-zero counts
// and yield the all-zero vector. Throws self_edge when u == v.
WeightVector compute_weights(const InteractionCounts& counts, const UserId& u, const UserId& v);

}  // namespace evident
