#include "changeset/slicing.hpp"

#include <cmath>
#include <string>

namespace changeset {

FrameSequence::FrameSequence(int rows, int cols, int frames)
    : rows_(rows), cols_(cols), frames_(frames) {
  if (rows_ < 4 || cols_ < 4)
    throw std::domain_error("FrameSequence: frame dimensions must be at least 4x4");
  if (frames_ < 1) throw std::domain_error("FrameSequence: needs at least one frame");
  data_.assign(static_cast<std::size_t>(rows_) * cols_ * frames_, 0.0);
}

FrameSequence FrameSequence::from_values(int rows, int cols, int frames,
                                         std::vector<double> values) {
  FrameSequence seq(rows, cols, frames);
  if (values.size() != seq.data_.size())
    throw std::domain_error("FrameSequence: value count does not match d*m*n");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::domain_error("FrameSequence: entries must be finite");
  seq.data_ = std::move(values);
  return seq;
}

FrameSequence FrameSequence::prefix(int d) const {
  if (d < 1 || d > frames_)
    throw std::domain_error("FrameSequence::prefix: d out of range");
  FrameSequence out(rows_, cols_, d);
  const std::size_t count = static_cast<std::size_t>(rows_) * cols_ * d;
  std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(count),
            out.data_.begin());
  return out;
}

void SubSliceSpec::validate(const Lattice& lat) const {
  const int slice_count = orientation == Orientation::Horizontal ? lat.rows : lat.cols;
  const int slice_length = orientation == Orientation::Horizontal ? lat.cols : lat.rows;
  if (window < 4 || window % 2 != 0)
    throw std::domain_error("SubSliceSpec: window N must be even and >= 4, got " +
                            std::to_string(window));
  if (window > slice_length)
    throw std::domain_error("SubSliceSpec: window N=" + std::to_string(window) +
                            " exceeds slice length " + std::to_string(slice_length));
  if (slice < 1 || slice > slice_count)
    throw std::domain_error("SubSliceSpec: slice index out of range");
  if (offset < 1 || offset > slice_length - window + 1)
    throw std::domain_error("SubSliceSpec: offset r=" + std::to_string(offset) +
                            " outside [1, " + std::to_string(slice_length - window + 1) + "]");
}

PanelSeries extract_subslice(const FrameSequence& seq, const SubSliceSpec& spec) {
  spec.validate(seq.lattice());
  const int n = spec.window;
  const int d = seq.frames();
  std::vector<double> values(static_cast<std::size_t>(n) * d);
  if (spec.orientation == Orientation::Horizontal) {
    for (int k = 1; k <= d; ++k) {
      const double* row = seq.frame(k) +
                          static_cast<std::size_t>(spec.slice - 1) * seq.cols() +
                          (spec.offset - 1);
      double* dst = values.data() + static_cast<std::size_t>(k - 1) * n;
      for (int j = 0; j < n; ++j) dst[j] = row[j];
    }
  } else {
    for (int k = 1; k <= d; ++k) {
      const double* frame = seq.frame(k);
      double* dst = values.data() + static_cast<std::size_t>(k - 1) * n;
      for (int j = 0; j < n; ++j)
        dst[j] = frame[static_cast<std::size_t>(spec.offset + j - 1) * seq.cols() +
                       (spec.slice - 1)];
    }
  }
  return PanelSeries(n, d, std::move(values));
}

std::optional<int> true_change_index(const PointSet& truth, const SubSliceSpec& spec) {
  spec.validate(truth.lattice());
  const int n = spec.window;
  int crossings = 0;
  int change_at = 0;
  bool prev = false;
  for (int j = 1; j <= n; ++j) {
    const Point p = spec.orientation == Orientation::Horizontal
                        ? Point{spec.slice, spec.offset + j - 1}
                        : Point{spec.offset + j - 1, spec.slice};
    const bool inside = truth.contains(p);
    if (j > 1 && inside != prev) {
      ++crossings;
      change_at = j - 1;
    }
    prev = inside;
  }
  if (crossings == 0) return std::nullopt;
  if (crossings > 1)
    throw ConditionViolation("true_change_index: window crosses the set " +
                             std::to_string(crossings) + " times");
  return change_at;
}

Point map_to_grid(const SubSliceSpec& spec, int u_hat) {
  if (u_hat < 1 || u_hat > spec.window - 1)
    throw std::domain_error("map_to_grid: u_hat must lie in [1, N-1], got " +
                            std::to_string(u_hat));
  if (spec.orientation == Orientation::Horizontal)
    return Point{spec.slice, u_hat + spec.offset - 1};
  return Point{u_hat + spec.offset - 1, spec.slice};
}

}  // namespace changeset
