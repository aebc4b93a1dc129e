#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace changeset {

/// Sensitivity exponent of the CUSUM weight, valid on [0, 1/2).
class Gamma {
 public:
  explicit Gamma(double value) : value_(value) {
    if (!(value >= 0.0 && value < 0.5))
      throw std::domain_error("Gamma: value must lie in [0, 1/2), got " +
                              std::to_string(value));
  }

  double value() const noexcept { return value_; }
  friend bool operator==(Gamma a, Gamma b) noexcept { return a.value_ == b.value_; }

 private:
  double value_;
};

/// A panel time series of length N with d panels: entry (j,k) = Y_{j,k},
/// j = 1..N, k = 1..d. Stored j-major within each panel (panel k occupies
/// values[(k-1)*N .. k*N-1]) so the documented summation order of the CUSUM
/// statistic maps onto contiguous memory walks.
class PanelSeries {
 public:
  PanelSeries(int length, int panels, std::vector<double> values);

  int length() const noexcept { return length_; }
  int panels() const noexcept { return panels_; }

  double at(int j, int k) const {
    if (j < 1 || j > length_ || k < 1 || k > panels_)
      throw std::domain_error("PanelSeries::at: index out of range");
    return values_[static_cast<std::size_t>(k - 1) * length_ + (j - 1)];
  }

  const double* panel(int k) const noexcept {
    return values_.data() + static_cast<std::size_t>(k - 1) * length_;
  }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  int length_ = 0;
  int panels_ = 0;
  std::vector<double> values_;
};

/// CUSUM weight w(p,N) = ((p/N)(1-p/N))^(-gamma); requires 1 <= p <= N-1.
double cusum_weight(int p, int length, Gamma gamma);

/// Weighted CUSUM objective at candidate break p:
///   w(p,N) * sqrt( sum_k | sum_{j<=p} (Y_{j,k} - mean_k) |^2 )
/// with per-panel means mean_k = sum_j Y_{j,k} / N. Sums run over j first,
/// then over panels k ascending.
double cusum_statistic(const PanelSeries& series, int p, Gamma gamma);

/// Smallest p in [1, N-1] maximizing cusum_statistic. Comparisons use exact
/// `>` on the accumulated statistics, so the all-constant series (statistic
/// identically zero) resolves to 1 by the tie rule.
int estimate_change_point(const PanelSeries& series, Gamma gamma);

namespace detail {

/// Accumulates the squared centered partial sums over all panels:
/// acc[p-1] += |sum_{j<=p}(y_j - mean)|^2 for p = 1..N-1. `panel_stride` is
/// the distance between consecutive panels, so the same kernel runs on a
/// PanelSeries (stride N) and on whole-slice buffers (stride = slice length).
void cusum_accumulate(const double* base, std::size_t panel_stride, int length,
                      int panels, double* acc);

struct CusumBest {
  int index = 1;          // smallest maximizer, 1-based
  double statistic = 0.0; // value at the maximizer
  bool all_zero = true;   // statistic identically zero for every p
};

/// Argmax over the weighted objective; `weights[p-1]` must hold
/// cusum_weight(p, N, gamma).
CusumBest cusum_argmax(const double* acc, int length, const double* weights);

/// Weight table for p = 1..N-1.
std::vector<double> weight_table(int length, Gamma gamma);

}  // namespace detail
}  // namespace changeset
