#pragma once

#include <vector>

#include "changeset/cusum.hpp"
#include "changeset/lattice.hpp"
#include "changeset/slicing.hpp"

namespace changeset {

/// Overlapping (N,Q) selection rule: a critical point is relevant when it
/// repeats across Q+1 consecutive offsets.
struct OverlapRule {
  int window = 4;  // N, even, >= 4
  int run = 1;     // Q in [1, N-2]

  OverlapRule(int n, int q) : window(n), run(q) {
    if (n < 4 || n % 2 != 0)
      throw std::domain_error("OverlapRule: N must be even and >= 4");
    if (q < 1 || q > n - 2)
      throw std::domain_error("OverlapRule: Q must lie in [1, N-2]");
  }

  friend bool operator==(const OverlapRule&, const OverlapRule&) = default;
};

/// Per-slice critical points U^(i,r) mapped back onto the grid, with the
/// tail offsets r = L-N+2..L holding the sentinel (coordinate 0, outside the
/// 1-based domain). Entries are addressed by (slice, offset), both 1-based.
class ScanField {
 public:
  ScanField(Lattice lat, Orientation orientation, int window, Gamma gamma,
            std::vector<std::vector<int>> critical,
            std::vector<char> degenerate);

  Orientation orientation() const noexcept { return orientation_; }
  int window() const noexcept { return window_; }
  Gamma gamma() const noexcept { return gamma_; }
  Lattice lattice() const noexcept { return lat_; }

  int slice_count() const noexcept {
    return orientation_ == Orientation::Horizontal ? lat_.rows : lat_.cols;
  }
  int slice_length() const noexcept {
    return orientation_ == Orientation::Horizontal ? lat_.cols : lat_.rows;
  }

  bool sentinel(int slice, int offset) const {
    return varying(slice, offset) == 0;
  }

  /// Grid coordinate at (slice, offset); the sentinel is reported with a 0
  /// column (horizontal) or 0 row (vertical).
  Point entry(int slice, int offset) const {
    const int v = varying(slice, offset);
    return orientation_ == Orientation::Horizontal ? Point{slice, v} : Point{v, slice};
  }

  /// True when every window statistic of the slice was exactly zero, which
  /// only happens for literally constant data.
  bool degenerate_slice(int slice) const { return degenerate_.at(slice - 1) != 0; }

 private:
  int varying(int slice, int offset) const {
    return critical_.at(slice - 1).at(offset - 1);
  }

  Lattice lat_;
  Orientation orientation_;
  int window_;
  Gamma gamma_;
  std::vector<std::vector<int>> critical_;  // [slice][offset-1], 0 = sentinel
  std::vector<char> degenerate_;
};

/// Runs the CUSUM estimator over every admissible sub-slice of every slice
/// and assembles the critical-point field. Equivalent to composing
/// map_to_grid(spec, estimate_change_point(extract_subslice(seq, spec)))
/// over all specs, including the floating-point summation order.
ScanField scan(const FrameSequence& seq, Orientation orientation, int window,
               Gamma gamma);

/// Same scan evaluated for several gamma values at once; the squared partial
/// sums are shared, only the weighting differs per gamma.
std::vector<ScanField> scan_multi(const FrameSequence& seq, Orientation orientation,
                                  int window, const std::vector<Gamma>& gammas);

/// The overlapping (N,Q) rule, traced exactly: for r = 1..L-N+1, the point
/// U(s,r) joins H(s) iff U(s,r) = U(s,r+1) = ... = U(s,r+Q). Runs reaching
/// into the sentinel padding never fire because a sentinel never equals a
/// genuine coordinate. Returns one PointSet per slice.
std::vector<PointSet> select_relevant(const ScanField& field, const OverlapRule& rule);

/// G = H(1) u ... u H(m) u V(1) u ... u V(n); either side may be empty for
/// single-orientation scans.
PointSet pool(const std::vector<PointSet>& h_sets, const std::vector<PointSet>& v_sets,
              Lattice lat);

}  // namespace changeset
