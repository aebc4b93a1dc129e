#include "changeset/connect.hpp"

#include <algorithm>
#include <queue>

namespace changeset {

namespace {

// Shared span builder: `along_rows` selects whether slices are rows (spans
// run over columns) or columns (spans run over rows).
PointSet connect_spans(const std::vector<PointSet>& sets, Lattice lat, bool along_rows) {
  const int slice_count = along_rows ? lat.rows : lat.cols;
  if (static_cast<int>(sets.size()) != slice_count)
    throw std::domain_error("connect: expected one relevant set per slice");

  std::vector<std::uint32_t> cells;
  const std::uint32_t n = static_cast<std::uint32_t>(lat.cols);
  for (int s = 1; s <= slice_count; ++s) {
    const PointSet& rel = sets[s - 1];
    if (rel.empty()) continue;
    int lo = 0, hi = 0;
    bool first = true;
    for (const Point& p : rel.points()) {
      const int fixed = along_rows ? p.row : p.col;
      const int var = along_rows ? p.col : p.row;
      if (fixed != s)
        throw std::domain_error("connect: relevant point off its slice " +
                                std::to_string(s));
      lo = first ? var : std::min(lo, var);
      hi = first ? var : std::max(hi, var);
      first = false;
    }
    if (rel.size() < 2) continue;  // p >= 2 guard
    for (int x = lo + 1; x <= hi; ++x) {
      const std::uint32_t row = static_cast<std::uint32_t>((along_rows ? s : x) - 1);
      const std::uint32_t col = static_cast<std::uint32_t>((along_rows ? x : s) - 1);
      cells.push_back(row * n + col);
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return PointSet::from_sorted_cells(lat, std::move(cells));
}

}  // namespace

PointSet connect_horizontal(const std::vector<PointSet>& h_sets, Lattice lat) {
  return connect_spans(h_sets, lat, true);
}

PointSet connect_vertical(const std::vector<PointSet>& v_sets, Lattice lat) {
  return connect_spans(v_sets, lat, false);
}

PointSet connect_from_field(const ScanField& field, const OverlapRule& rule) {
  std::vector<PointSet> relevant = select_relevant(field, rule);
  for (int s = 1; s <= field.slice_count(); ++s)
    if (field.degenerate_slice(s)) relevant[s - 1] = PointSet(field.lattice());
  return field.orientation() == Orientation::Horizontal
             ? connect_horizontal(relevant, field.lattice())
             : connect_vertical(relevant, field.lattice());
}

PointSet estimate_change_set(const FrameSequence& seq, ScanMode mode,
                             const OverlapRule& rule, Gamma gamma) {
  const Lattice lat = seq.lattice();
  PointSet estimate(lat);
  if (mode != ScanMode::Vertical)
    estimate = estimate.set_union(
        connect_from_field(scan(seq, Orientation::Horizontal, rule.window, gamma), rule));
  if (mode != ScanMode::Horizontal)
    estimate = estimate.set_union(
        connect_from_field(scan(seq, Orientation::Vertical, rule.window, gamma), rule));
  return estimate;
}

std::vector<PointSet> split_components(const PointSet& s) {
  const Lattice lat = s.lattice();
  const std::uint32_t n = static_cast<std::uint32_t>(lat.cols);
  std::vector<char> member(lat.cell_count(), 0);
  for (std::uint32_t id : s.cells()) member[id] = 1;
  std::vector<char> seen(lat.cell_count(), 0);

  std::vector<PointSet> components;
  for (std::uint32_t start : s.cells()) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> comp;
    std::queue<std::uint32_t> queue;
    queue.push(start);
    seen[start] = 1;
    while (!queue.empty()) {
      const std::uint32_t id = queue.front();
      queue.pop();
      comp.push_back(id);
      const std::uint32_t row = id / n, col = id % n;
      const std::uint32_t candidates[4] = {
          row > 0 ? id - n : id,
          col > 0 ? id - 1 : id,
          col + 1 < n ? id + 1 : id,
          row + 1 < static_cast<std::uint32_t>(lat.rows) ? id + n : id,
      };
      for (std::uint32_t next : candidates)
        if (next != id && member[next] && !seen[next]) {
          seen[next] = 1;
          queue.push(next);
        }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(PointSet::from_sorted_cells(lat, std::move(comp)));
  }
  // Cells are visited in ascending id order, so components are already
  // ordered by smallest member.
  return components;
}

namespace {

std::string point_str(Point p) {
  return "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")";
}

}  // namespace

TheoremReport validate_theorem_conditions(const PointSet& truth, Lattice lat, int xi,
                                          ScanMode mode) {
  if (xi < 4) throw std::domain_error("validate_theorem_conditions: xi must be >= 4");
  if (std::min(lat.rows, lat.cols) < xi)
    throw std::domain_error("validate_theorem_conditions: min(m,n) must be >= xi");
  if (!(truth.lattice() == lat))
    throw std::domain_error("validate_theorem_conditions: truth lattice mismatch");

  TheoremReport report;
  auto add = [&report](std::string name, bool pass, std::string detail) {
    report.clauses.push_back({std::move(name), pass, std::move(detail)});
  };

  // 1. S connected.
  add("connected", is_connected(truth),
      truth.empty() ? "empty set, vacuously connected"
                    : std::to_string(split_components(truth).size()) + " component(s)");

  // 2. d(S, B) >= xi-1 with B the domain boundary.
  {
    const PointSet frame = boundary(PointSet::full(lat));
    const std::optional<int> dist = set_distance(truth, frame, PointSet::full(lat));
    const bool pass = !dist.has_value() || *dist >= xi - 1;
    add("boundary_distance", pass,
        dist.has_value() ? "d(S,B)=" + std::to_string(*dist) + ", requires >= " +
                               std::to_string(xi - 1)
                         : "empty set, distance infinite");
  }

  // Row/column chords H_i, V_j.
  std::vector<std::vector<int>> row_cols(lat.rows), col_rows(lat.cols);
  for (const Point& p : truth.points()) {
    row_cols[p.row - 1].push_back(p.col);
    col_rows[p.col - 1].push_back(p.row);
  }

  // 3. Every H_i and V_j empty or contiguous.
  {
    bool pass = true;
    std::string detail = "all slice intersections contiguous";
    for (int i = 1; i <= lat.rows && pass; ++i) {
      const auto& cols = row_cols[i - 1];
      if (!cols.empty() &&
          cols.back() - cols.front() + 1 != static_cast<int>(cols.size())) {
        pass = false;
        detail = "row " + std::to_string(i) + " intersection is not contiguous";
      }
    }
    for (int j = 1; j <= lat.cols && pass; ++j) {
      const auto& rows = col_rows[j - 1];
      if (!rows.empty() &&
          rows.back() - rows.front() + 1 != static_cast<int>(rows.size())) {
        pass = false;
        detail = "column " + std::to_string(j) + " intersection is not contiguous";
      }
    }
    add("chords_connected", pass, std::move(detail));
  }

  // 4. Mode-specific chord sizes.
  {
    bool pass = true;
    std::string detail = "chord sizes meet xi=" + std::to_string(xi);
    if (mode == ScanMode::Horizontal) {
      for (int i = 1; i <= lat.rows && pass; ++i) {
        const std::size_t len = row_cols[i - 1].size();
        if (len > 0 && len < static_cast<std::size_t>(xi)) {
          pass = false;
          detail = "|H_" + std::to_string(i) + "|=" + std::to_string(len) + " < xi";
        }
      }
    } else if (mode == ScanMode::Vertical) {
      for (int j = 1; j <= lat.cols && pass; ++j) {
        const std::size_t len = col_rows[j - 1].size();
        if (len > 0 && len < static_cast<std::size_t>(xi)) {
          pass = false;
          detail = "|V_" + std::to_string(j) + "|=" + std::to_string(len) + " < xi";
        }
      }
    } else {
      for (const Point& p : truth.points()) {
        const std::size_t h = row_cols[p.row - 1].size();
        const std::size_t v = col_rows[p.col - 1].size();
        if (std::max(h, v) < static_cast<std::size_t>(xi)) {
          pass = false;
          detail = "max(|H_i|,|V_j|) < xi at " + point_str(p);
          break;
        }
      }
    }
    add("chord_size", pass, std::move(detail));
  }

  // 5. Admissible region for every window size N <= xi (checked at the
  // strictest admissible N = xi): no member with j > n-xi+1 or i > m-xi+1.
  {
    bool pass = true;
    std::string detail = "set inside the admissible scan region";
    for (const Point& p : truth.points()) {
      if (p.col > lat.cols - xi + 1 || p.row > lat.rows - xi + 1) {
        pass = false;
        detail = "member " + point_str(p) + " outside rows <= " +
                 std::to_string(lat.rows - xi + 1) + ", cols <= " +
                 std::to_string(lat.cols - xi + 1);
        break;
      }
    }
    add("admissible_region", pass, std::move(detail));
  }

  return report;
}

}  // namespace changeset
