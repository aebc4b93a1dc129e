// Test-only oracles, implemented independently of the library code paths
// they check: a long-double brute-force CUSUM objective, a hand-rolled grid
// BFS, and the idealized asymptotic scan field (crossing windows estimate
// exactly, change-free windows land on the spurious midpoint N/2).
#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "changeset/lattice.hpp"
#include "changeset/scan.hpp"
#include "changeset/slicing.hpp"

namespace oracle {

// Objective w(p,N) * sqrt(sum_k |sum_{j<=p}(Y - mean_k)|^2) recomputed from
// scratch per p with long-double accumulation; values is j-major per panel.
inline long double brute_cusum_objective(const std::vector<double>& values, int n,
                                         int d, int p, double gamma) {
  long double total = 0.0L;
  for (int k = 0; k < d; ++k) {
    const double* y = values.data() + static_cast<std::size_t>(k) * n;
    long double mean = 0.0L;
    for (int j = 0; j < n; ++j) mean += y[j];
    mean /= n;
    long double partial = 0.0L;
    for (int j = 0; j < p; ++j) partial += static_cast<long double>(y[j]) - mean;
    total += partial * partial;
  }
  const long double frac = static_cast<long double>(p) / n;
  const long double weight = std::pow(frac * (1.0L - frac), static_cast<long double>(-gamma));
  return weight * std::sqrt(total);
}

inline int brute_cusum_argmax(const std::vector<double>& values, int n, int d,
                              double gamma) {
  int best = 1;
  long double top = -1.0L;
  for (int p = 1; p <= n - 1; ++p) {
    const long double stat = brute_cusum_objective(values, n, d, p, gamma);
    if (stat > top) {
      top = stat;
      best = p;
    }
  }
  return best;
}

// Plain frontier-by-frontier BFS distance between point sets through a mask.
inline std::optional<int> bfs_set_distance(const changeset::PointSet& from,
                                           const changeset::PointSet& to,
                                           const changeset::PointSet& within) {
  const changeset::Lattice lat = within.lattice();
  std::vector<char> pass(lat.cell_count(), 0), goal(lat.cell_count(), 0),
      seen(lat.cell_count(), 0);
  for (auto id : within.cells()) pass[id] = 1;
  for (auto id : to.cells()) goal[id] = 1;

  std::vector<std::uint32_t> frontier;
  for (auto id : from.cells()) {
    if (goal[id]) return 0;
    frontier.push_back(id);
    seen[id] = 1;
  }
  const std::uint32_t n = static_cast<std::uint32_t>(lat.cols);
  int depth = 0;
  while (!frontier.empty()) {
    ++depth;
    std::vector<std::uint32_t> next;
    for (auto id : frontier) {
      const std::uint32_t row = id / n, col = id % n;
      std::uint32_t nb[4];
      int count = 0;
      if (row > 0) nb[count++] = id - n;
      if (col > 0) nb[count++] = id - 1;
      if (col + 1 < n) nb[count++] = id + 1;
      if (row + 1 < static_cast<std::uint32_t>(lat.rows)) nb[count++] = id + n;
      for (int t = 0; t < count; ++t) {
        const std::uint32_t cand = nb[t];
        if (!pass[cand] || seen[cand]) continue;
        if (goal[cand]) return depth;
        seen[cand] = 1;
        next.push_back(cand);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

// The asymptotic field of a noiseless/limit scan: windows crossing the truth
// set once map onto the last pre-crossing cell, change-free windows sit at
// the spurious midpoint N/2. Multi-crossing windows must not occur in the
// fixture.
inline changeset::ScanField trace_field(const changeset::PointSet& truth,
                                        changeset::Orientation orientation, int n,
                                        changeset::Gamma gamma) {
  const changeset::Lattice lat = truth.lattice();
  const int slices =
      orientation == changeset::Orientation::Horizontal ? lat.rows : lat.cols;
  const int length =
      orientation == changeset::Orientation::Horizontal ? lat.cols : lat.rows;
  std::vector<std::vector<int>> critical(slices, std::vector<int>(length, 0));
  for (int s = 1; s <= slices; ++s) {
    for (int r = 1; r <= length - n + 1; ++r) {
      const changeset::SubSliceSpec spec{orientation, s, r, n};
      const std::optional<int> u = changeset::true_change_index(truth, spec);
      const int u_hat = u.value_or(n / 2);
      critical[s - 1][r - 1] = u_hat + r - 1;
    }
  }
  return changeset::ScanField(lat, orientation, n, gamma, std::move(critical),
                              std::vector<char>(slices, 0));
}

// The 14x20 fragment used for the pseudocode trace tests: a connected blob
// whose row chords are all >= 6 and column chords all >= 3, so windows of
// size 4 and 6 never cross it twice.
inline changeset::PointSet fragment_blob(const changeset::Lattice& lat) {
  assert(lat.rows >= 14 && lat.cols >= 20);
  std::vector<changeset::Point> pts;
  const int spans[8][3] = {
      // row, first col, last col
      {4, 7, 12}, {5, 6, 13}, {6, 5, 14}, {7, 4, 15},
      {8, 4, 15}, {9, 4, 15}, {10, 6, 13}, {11, 7, 12},
  };
  for (const auto& span : spans)
    for (int c = span[1]; c <= span[2]; ++c) pts.push_back({span[0], c});
  return changeset::PointSet(lat, pts);
}

inline std::vector<double> random_values(std::mt19937_64& gen, std::size_t count,
                                         double sd = 1.0, double shift = 0.0) {
  std::normal_distribution<double> dist(shift, sd);
  std::vector<double> out(count);
  for (double& v : out) v = dist(gen);
  return out;
}

}  // namespace oracle
