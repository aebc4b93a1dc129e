#pragma once

#include <string>
#include <vector>

#include "changeset/lattice.hpp"
#include "changeset/scan.hpp"
#include "changeset/slicing.hpp"

namespace changeset {

enum class ScanMode { Horizontal, Vertical, Both };

/// For every slice with at least two relevant points x_1 < ... < x_p, adds
/// the contiguous span (i, x_1+1) .. (i, x_p). The left endpoint sits just
/// outside the estimated set, later ones on it, hence the asymmetry.
PointSet connect_horizontal(const std::vector<PointSet>& h_sets, Lattice lat);

/// Mirror of connect_horizontal with rows and columns exchanged.
PointSet connect_vertical(const std::vector<PointSet>& v_sets, Lattice lat);

/// Full pipeline: scan -> select_relevant -> connect for the requested
/// orientation(s); Both unions the two single-orientation estimates computed
/// on the same data. Slices whose statistics were identically zero (constant
/// data) contribute no relevant points.
PointSet estimate_change_set(const FrameSequence& seq, ScanMode mode,
                             const OverlapRule& rule, Gamma gamma);

/// select_relevant plus the degenerate-slice filter plus the orientation's
/// connect step, for callers that already hold a ScanField.
PointSet connect_from_field(const ScanField& field, const OverlapRule& rule);

/// 4-connected components of s, ordered by smallest member (row-major).
std::vector<PointSet> split_components(const PointSet& s);

/// Pass/fail report for the consistency conditions: connectivity, distance
/// to the domain boundary, contiguous row/column chords, mode-specific chord
/// sizes, and the admissible scan region.
struct TheoremReport {
  struct Clause {
    std::string name;
    bool pass = false;
    std::string detail;
  };

  std::vector<Clause> clauses;

  bool all_pass() const {
    for (const Clause& c : clauses)
      if (!c.pass) return false;
    return true;
  }
};

/// Checks the change set `truth` against the exact-recovery conditions for
/// window sizes up to xi under the given scanning mode. An empty truth set
/// passes vacuously. Requires xi >= 4 and min(m,n) >= xi.
TheoremReport validate_theorem_conditions(const PointSet& truth, Lattice lat, int xi,
                                          ScanMode mode);

}  // namespace changeset
