#include "changeset/cusum.hpp"

#include <cmath>

namespace changeset {

PanelSeries::PanelSeries(int length, int panels, std::vector<double> values)
    : length_(length), panels_(panels), values_(std::move(values)) {
  if (length_ < 4)
    throw std::domain_error("PanelSeries: length must be at least 4, got " +
                            std::to_string(length_));
  if (panels_ < 1) throw std::domain_error("PanelSeries: needs at least one panel");
  if (values_.size() != static_cast<std::size_t>(length_) * static_cast<std::size_t>(panels_))
    throw std::domain_error("PanelSeries: value count does not match N x d");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::domain_error("PanelSeries: entries must be finite");
}

double cusum_weight(int p, int length, Gamma gamma) {
  if (p < 1 || p >= length)
    throw std::domain_error("cusum_weight: p must lie in [1, N-1], got p=" +
                            std::to_string(p) + " for N=" + std::to_string(length));
  if (gamma.value() == 0.0) return 1.0;
  const double frac = static_cast<double>(p) / static_cast<double>(length);
  return std::pow(frac * (1.0 - frac), -gamma.value());
}

namespace detail {

void cusum_accumulate(const double* base, std::size_t panel_stride, int length,
                      int panels, double* acc) {
  const int n = length;
  for (int p = 0; p < n - 1; ++p) acc[p] = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double* y = base + static_cast<std::size_t>(k) * panel_stride;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += y[j];
    const double mean = sum / n;
    double run = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      run += y[p] - mean;
      acc[p] += run * run;
    }
  }
}

CusumBest cusum_argmax(const double* acc, int length, const double* weights) {
  CusumBest best;
  double top = -1.0;
  for (int p = 1; p <= length - 1; ++p) {
    const double stat = weights[p - 1] * std::sqrt(acc[p - 1]);
    if (stat != 0.0) best.all_zero = false;
    if (stat > top) {
      top = stat;
      best.index = p;
      best.statistic = stat;
    }
  }
  return best;
}

std::vector<double> weight_table(int length, Gamma gamma) {
  std::vector<double> w(static_cast<std::size_t>(length - 1));
  for (int p = 1; p <= length - 1; ++p) w[p - 1] = cusum_weight(p, length, gamma);
  return w;
}

}  // namespace detail

double cusum_statistic(const PanelSeries& series, int p, Gamma gamma) {
  const int n = series.length();
  if (p < 1 || p >= n)
    throw std::domain_error("cusum_statistic: p must lie in [1, N-1], got " +
                            std::to_string(p));
  std::vector<double> acc(static_cast<std::size_t>(n - 1));
  detail::cusum_accumulate(series.values().data(), static_cast<std::size_t>(n), n,
                           series.panels(), acc.data());
  return cusum_weight(p, n, gamma) * std::sqrt(acc[p - 1]);
}

int estimate_change_point(const PanelSeries& series, Gamma gamma) {
  const int n = series.length();
  std::vector<double> acc(static_cast<std::size_t>(n - 1));
  detail::cusum_accumulate(series.values().data(), static_cast<std::size_t>(n), n,
                           series.panels(), acc.data());
  const std::vector<double> weights = detail::weight_table(n, gamma);
  return detail::cusum_argmax(acc.data(), n, weights.data()).index;
}

}  // namespace changeset
