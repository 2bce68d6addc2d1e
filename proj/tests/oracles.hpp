// Reference computations used by the tests. Written directly from the model
// definitions and deliberately kept free of library code paths so they can
// serve as independent checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

namespace oracle {

/// Punctured fraction q of an RB -> lost bandwidth, q in [0, 1].
inline double loss(double fb_khz, double q, bool convex) { return fb_khz * (convex ? q * q : q); }

/// Spectral efficiency of every RB toward its owner under an equal power
/// split of p_max over `allocated_rbs * antennas` (RB, antenna) pairs.
/// gains[b][j] are the owner's power gains on RB b.
inline std::vector<double> spectral_efficiency(const std::vector<std::vector<double>>& gains,
                                               double p_max_w, int allocated_rbs,
                                               double noise_w) {
  std::vector<double> se;
  for (const auto& g : gains) {
    const double p = p_max_w / (allocated_rbs * static_cast<double>(g.size()));
    double s = 0.0;
    for (double h : g) s += p * h;
    se.push_back(std::log2(1.0 + s / noise_w));
  }
  return se;
}

/// Per-user rate in bit/s given per-RB owner, punctured cells and spectral
/// efficiency.
inline std::vector<double> rates(int users, const std::vector<int>& owner,
                                 const std::vector<int>& units, const std::vector<double>& se,
                                 double fb_khz, int minislots, bool convex) {
  std::vector<double> r(static_cast<std::size_t>(users), 0.0);
  for (std::size_t b = 0; b < owner.size(); ++b) {
    if (owner[b] < 0) continue;
    const double q = static_cast<double>(units[b]) / minislots;
    r[static_cast<std::size_t>(owner[b])] += (fb_khz - loss(fb_khz, q, convex)) * 1e3 * se[b];
  }
  return r;
}

inline double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

/// Best achievable minimum rate over every integer placement of `demand`
/// cells (0..M per RB) by exhaustive enumeration.
inline double best_min_rate(int users, const std::vector<int>& owner, const std::vector<double>& se,
                            double fb_khz, int minislots, bool convex, int demand) {
  const std::size_t B = owner.size();
  std::vector<int> units(B, 0);
  double best = -1.0;
  // Odometer over {0..M}^B.
  for (;;) {
    if (std::accumulate(units.begin(), units.end(), 0) == demand) {
      best = std::max(best, min_of(rates(users, owner, units, se, fb_khz, minislots, convex)));
    }
    std::size_t i = 0;
    while (i < B && units[i] == minislots) units[i++] = 0;
    if (i == B) break;
    ++units[i];
  }
  return best;
}

/// Largest rate change one cell can cause on any RB.
inline double unit_granularity(const std::vector<double>& se, double fb_khz, int minislots,
                               bool convex) {
  double g = 0.0;
  for (double s : se) {
    for (int n = 0; n < minislots; ++n) {
      const double step = loss(fb_khz, static_cast<double>(n + 1) / minislots, convex) -
                          loss(fb_khz, static_cast<double>(n) / minislots, convex);
      g = std::max(g, step * 1e3 * s);
    }
  }
  return g;
}

/// Greedy-by-SNR placement: RBs in descending SNR (ties: lower owner, then
/// lower RB), each filled with up to M cells.
inline std::vector<int> ps_units(const std::vector<int>& owner, const std::vector<double>& snr,
                                 int minislots, int demand) {
  std::vector<std::size_t> order;
  for (std::size_t b = 0; b < owner.size(); ++b)
    if (owner[b] >= 0) order.push_back(b);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_tuple(-snr[a], owner[a], a) < std::make_tuple(-snr[b], owner[b], b);
  });
  std::vector<int> units(owner.size(), 0);
  int left = demand;
  for (std::size_t b : order) {
    const int take = std::min(left, minislots);
    units[b] = take;
    left -= take;
  }
  return units;
}

/// Equal-share fixed point: shares differ by at most one among users that are
/// not saturated, lower indices get the remainder, no user exceeds its cell
/// count. Each share is then dealt one cell at a time over the user's RBs in
/// ascending order.
inline std::vector<int> eds_units(int users, const std::vector<int>& owner, int minislots,
                                  int demand) {
  std::vector<int> cap(static_cast<std::size_t>(users), 0);
  for (int o : owner)
    if (o >= 0) cap[static_cast<std::size_t>(o)] += minislots;
  std::vector<int> share(static_cast<std::size_t>(users), 0);
  // Water-filling one cell at a time: always give the next cell to the
  // unsaturated user with the fewest cells, lowest index first.
  for (int d = 0; d < demand; ++d) {
    int pick = -1;
    for (int k = 0; k < users; ++k) {
      const auto i = static_cast<std::size_t>(k);
      if (share[i] >= cap[i]) continue;
      if (pick < 0 || share[i] < share[static_cast<std::size_t>(pick)]) pick = k;
    }
    if (pick < 0) break;
    ++share[static_cast<std::size_t>(pick)];
  }
  std::vector<int> units(owner.size(), 0);
  for (int k = 0; k < users; ++k) {
    std::vector<std::size_t> rbs;
    for (std::size_t b = 0; b < owner.size(); ++b)
      if (owner[b] == k) rbs.push_back(b);
    for (int c = 0; c < share[static_cast<std::size_t>(k)]; ++c) ++units[rbs[c % rbs.size()]];
  }
  return units;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

/// P(first group holds k of the d drawn cells) when d of n1 + n2 cells are
/// drawn uniformly without replacement.
inline double hypergeometric(int n1, int n2, int d, int k) {
  return binomial(n1, k) * binomial(n2, d - k) / binomial(n1 + n2, d);
}

/// Upper 0.1% quantile of the chi-square distribution, df = 1..6.
inline double chi2_999(int df) {
  static constexpr double q[] = {10.828, 13.816, 16.266, 18.467, 20.515, 22.458};
  return q[df - 1];
}

}  // namespace oracle
