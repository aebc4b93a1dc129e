#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "changeset/cusum.hpp"
#include "changeset/lattice.hpp"

namespace changeset {

/// d frames of rows x cols observations X_k(i,j), stored frame-major and
/// row-major within each frame. Indices are 1-based like everything else.
class FrameSequence {
 public:
  FrameSequence(int rows, int cols, int frames);
  static FrameSequence from_values(int rows, int cols, int frames,
                                   std::vector<double> values);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int frames() const noexcept { return frames_; }
  Lattice lattice() const { return Lattice(rows_, cols_); }

  double at(int k, int i, int j) const noexcept {
    return data_[index(k, i, j)];
  }
  double& at(int k, int i, int j) noexcept { return data_[index(k, i, j)]; }

  const double* frame(int k) const noexcept {
    return data_.data() + static_cast<std::size_t>(k - 1) * rows_ * cols_;
  }

  const std::vector<double>& values() const noexcept { return data_; }
  std::vector<double>& values() noexcept { return data_; }

  /// Copy of the first d frames. With counter-based generation the prefix is
  /// bit-identical to generating at the smaller d directly.
  FrameSequence prefix(int d) const;

 private:
  std::size_t index(int k, int i, int j) const noexcept {
    return (static_cast<std::size_t>(k - 1) * rows_ + (i - 1)) * cols_ + (j - 1);
  }

  int rows_ = 0, cols_ = 0, frames_ = 0;
  std::vector<double> data_;
};

enum class Orientation { Horizontal, Vertical };

/// Window of a single slice: the (slice, offset)-th sub-slice of length
/// `window`, read along the row (horizontal) or the column (vertical).
struct SubSliceSpec {
  Orientation orientation = Orientation::Horizontal;
  int slice = 1;   // row index i for horizontal, column index j for vertical
  int offset = 1;  // r, 1-based
  int window = 4;  // N, even, >= 4

  /// Throws std::domain_error unless the spec addresses a full window inside
  /// the lattice. Odd N is rejected, not rounded.
  void validate(const Lattice& lat) const;
};

/// Raised when a window crosses the truth set more than once; such windows
/// carry no single change point.
class ConditionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Panel series with entry (j,k) = X_k(slice, offset+j-1) for horizontal
/// specs (transposed for vertical), N rows and d panels.
PanelSeries extract_subslice(const FrameSequence& seq, const SubSliceSpec& spec);

/// Position u of the single truth-set crossing inside the window, or
/// std::nullopt when the window lies entirely inside or outside the truth
/// set. Throws ConditionViolation when the window crosses more than once.
std::optional<int> true_change_index(const PointSet& truth, const SubSliceSpec& spec);

/// Grid coordinate of a window-local index: (i, u+r-1) for horizontal specs,
/// (u+r-1, j) for vertical ones. Requires 1 <= u_hat <= N-1.
Point map_to_grid(const SubSliceSpec& spec, int u_hat);

}  // namespace changeset
