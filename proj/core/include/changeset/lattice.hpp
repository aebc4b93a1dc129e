#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace changeset {

/// Rectangular grid domain with 1-based indexing and 4-adjacency graph
/// semantics. Rows are indexed 1..rows, columns 1..cols.
struct Lattice {
  int rows = 0;
  int cols = 0;

  Lattice(int m, int n) : rows(m), cols(n) {
    if (m < 4 || n < 4)
      throw std::domain_error("Lattice: dimensions must be at least 4x4, got " +
                              std::to_string(m) + "x" + std::to_string(n));
  }

  bool contains(int i, int j) const noexcept {
    return i >= 1 && i <= rows && j >= 1 && j <= cols;
  }

  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  bool operator==(const Lattice&) const = default;
};

/// A grid node. The sentinel coordinate 0 used during scanning is never
/// represented as a Point; Points are always inside some lattice.
struct Point {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Finite subset of lattice nodes. Stored as sorted row-major linear cell
/// ids, so set algebra and comparisons are linear merges and iteration is
/// deterministic.
class PointSet {
 public:
  explicit PointSet(Lattice lat) : lat_(lat) {}

  PointSet(Lattice lat, const std::vector<Point>& pts) : lat_(lat) {
    cells_.reserve(pts.size());
    for (const Point& p : pts) cells_.push_back(cell_id(p));
    normalize();
  }

  static PointSet full(Lattice lat);

  const Lattice& lattice() const noexcept { return lat_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }

  bool contains(Point p) const noexcept;
  void insert(Point p);

  /// Members in row-major ascending order.
  std::vector<Point> points() const;
  Point point_at(std::size_t idx) const { return from_cell(cells_[idx]); }

  PointSet set_union(const PointSet& other) const;
  PointSet set_intersection(const PointSet& other) const;
  PointSet set_difference(const PointSet& other) const;

  bool operator==(const PointSet& other) const {
    return lat_ == other.lat_ && cells_ == other.cells_;
  }

  /// Sorted unique row-major linear ids; exposed for linear-merge algorithms.
  const std::vector<std::uint32_t>& cells() const noexcept { return cells_; }

  /// Builds directly from a sorted, unique, in-range id vector.
  static PointSet from_sorted_cells(Lattice lat, std::vector<std::uint32_t> cells);

  std::uint32_t cell_id(Point p) const {
    if (!lat_.contains(p.row, p.col))
      throw std::domain_error("PointSet: point (" + std::to_string(p.row) + "," +
                              std::to_string(p.col) + ") outside " +
                              std::to_string(lat_.rows) + "x" + std::to_string(lat_.cols) +
                              " lattice");
    return static_cast<std::uint32_t>(p.row - 1) * static_cast<std::uint32_t>(lat_.cols) +
           static_cast<std::uint32_t>(p.col - 1);
  }

  Point from_cell(std::uint32_t id) const noexcept {
    return Point{static_cast<int>(id / static_cast<std::uint32_t>(lat_.cols)) + 1,
                 static_cast<int>(id % static_cast<std::uint32_t>(lat_.cols)) + 1};
  }

 private:
  void normalize();

  Lattice lat_;
  std::vector<std::uint32_t> cells_;
};

/// Ordered decomposition of the full domain into K >= 2 pairwise disjoint,
/// non-empty, connected blocks.
class Partition {
 public:
  Partition(Lattice lat, std::vector<PointSet> blocks);

  const Lattice& lattice() const noexcept { return lat_; }
  const std::vector<PointSet>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }

  /// Block index per cell, row-major.
  const std::vector<std::uint16_t>& labels() const noexcept { return labels_; }

 private:
  Lattice lat_;
  std::vector<PointSet> blocks_;
  std::vector<std::uint16_t> labels_;
};

/// In-lattice 4-neighbours of p in row-then-column ascending order.
/// Interior nodes have four, edges three, corners two.
std::vector<Point> neighbors(Point p, Lattice lat);

/// True iff the 4-adjacency graph restricted to s is connected. The empty
/// set and singletons count as connected.
bool is_connected(const PointSet& s);

/// Nodes of s with fewer than four neighbours inside s.
PointSet boundary(const PointSet& s);

/// Shortest-path length between a and b through `within` (min over node
/// pairs); std::nullopt encodes +infinity (no path).
std::optional<int> set_distance(const PointSet& a, const PointSet& b, const PointSet& within);

/// (|A u B| - |A n B|) / |A u B|, exact integer ratio. Two empty sets are
/// identical by convention and score 0.
double jaccard_distance(const PointSet& a, const PointSet& b);

/// True iff some u in a and v in b are 4-adjacent. A shared node alone does
/// not qualify; an actual adjacent pair is required.
bool are_adjacent(const PointSet& a, const PointSet& b);

}  // namespace changeset
