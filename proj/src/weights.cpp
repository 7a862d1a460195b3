#include "evident/weights.hpp"

#include <algorithm>

namespace evident {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

WeightVector compute_weights(const InteractionCounts& counts, const UserId& u, const UserId& v) {
    if (u == v) {
        throw Error(Error::Code::self_edge, "weights are undefined for the self edge (" + u + ")");
    }
    const UserTotals t = counts.totals(u);
    const PairCounts p = counts.pair(u, v);

    WeightVector w;
    w.u = u;
    w.v = v;
    w.w_r = ratio(p.retweets, t.retweets);
    w.w_m = ratio(p.mentions, t.mentions);
    w.w_c = ratio(p.citations, t.citations);
    // Coefficients can only exceed 1 on streams where secondary records
    // outnumber primary tweets; clamp so the vector stays in [0,1].
    w.alpha_r = std::min(1.0, ratio(t.retweets, t.tweets));
    w.alpha_m = std::min(1.0, ratio(t.mentions, t.tweets));
    w.alpha_c = std::min(1.0, ratio(t.citations, t.tweets));
    if (w.alpha_r == 0.0) w.w_r = 0.0;
    if (w.alpha_m == 0.0) w.w_m = 0.0;
    if (w.alpha_c == 0.0) w.w_c = 0.0;
    return w;
}

}  // namespace evident
