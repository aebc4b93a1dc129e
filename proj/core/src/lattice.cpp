#include "changeset/lattice.hpp"

#include <algorithm>
#include <queue>

namespace changeset {

PointSet PointSet::full(Lattice lat) {
  std::vector<std::uint32_t> cells(lat.cell_count());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<std::uint32_t>(i);
  return from_sorted_cells(lat, std::move(cells));
}

PointSet PointSet::from_sorted_cells(Lattice lat, std::vector<std::uint32_t> cells) {
  PointSet s(lat);
  s.cells_ = std::move(cells);
  return s;
}

bool PointSet::contains(Point p) const noexcept {
  if (!lat_.contains(p.row, p.col)) return false;
  const std::uint32_t id = static_cast<std::uint32_t>(p.row - 1) *
                               static_cast<std::uint32_t>(lat_.cols) +
                           static_cast<std::uint32_t>(p.col - 1);
  return std::binary_search(cells_.begin(), cells_.end(), id);
}

void PointSet::insert(Point p) {
  const std::uint32_t id = cell_id(p);
  auto it = std::lower_bound(cells_.begin(), cells_.end(), id);
  if (it == cells_.end() || *it != id) cells_.insert(it, id);
}

std::vector<Point> PointSet::points() const {
  std::vector<Point> out;
  out.reserve(cells_.size());
  for (std::uint32_t id : cells_) out.push_back(from_cell(id));
  return out;
}

void PointSet::normalize() {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

namespace {

void require_same_lattice(const PointSet& a, const PointSet& b) {
  if (!(a.lattice() == b.lattice()))
    throw std::domain_error("PointSet: operands belong to different lattices");
}

}  // namespace

PointSet PointSet::set_union(const PointSet& other) const {
  require_same_lattice(*this, other);
  std::vector<std::uint32_t> out;
  out.reserve(cells_.size() + other.cells_.size());
  std::set_union(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                 std::back_inserter(out));
  return from_sorted_cells(lat_, std::move(out));
}

PointSet PointSet::set_intersection(const PointSet& other) const {
  require_same_lattice(*this, other);
  std::vector<std::uint32_t> out;
  std::set_intersection(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                        std::back_inserter(out));
  return from_sorted_cells(lat_, std::move(out));
}

PointSet PointSet::set_difference(const PointSet& other) const {
  require_same_lattice(*this, other);
  std::vector<std::uint32_t> out;
  std::set_difference(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                      std::back_inserter(out));
  return from_sorted_cells(lat_, std::move(out));
}

std::vector<Point> neighbors(Point p, Lattice lat) {
  if (!lat.contains(p.row, p.col))
    throw std::domain_error("neighbors: point (" + std::to_string(p.row) + "," +
                            std::to_string(p.col) + ") outside lattice");
  std::vector<Point> out;
  out.reserve(4);
  if (p.row > 1) out.push_back({p.row - 1, p.col});
  if (p.col > 1) out.push_back({p.row, p.col - 1});
  if (p.col < lat.cols) out.push_back({p.row, p.col + 1});
  if (p.row < lat.rows) out.push_back({p.row + 1, p.col});
  return out;
}

namespace {

// BFS over the members of s starting from the first cell; returns the number
// of reached members. Neighbour probes stay on linear ids.
std::size_t reachable_count(const PointSet& s, std::uint32_t start_id) {
  const Lattice lat = s.lattice();
  const auto& cells = s.cells();
  std::vector<char> member(lat.cell_count(), 0);
  for (std::uint32_t id : cells) member[id] = 1;

  std::vector<char> seen(lat.cell_count(), 0);
  std::queue<std::uint32_t> queue;
  queue.push(start_id);
  seen[start_id] = 1;
  std::size_t count = 0;
  const std::uint32_t n = static_cast<std::uint32_t>(lat.cols);
  while (!queue.empty()) {
    const std::uint32_t id = queue.front();
    queue.pop();
    ++count;
    const std::uint32_t row = id / n, col = id % n;
    const std::uint32_t candidates[4] = {
        row > 0 ? id - n : id,
        col > 0 ? id - 1 : id,
        col + 1 < n ? id + 1 : id,
        row + 1 < static_cast<std::uint32_t>(lat.rows) ? id + n : id,
    };
    for (std::uint32_t next : candidates) {
      if (next != id && member[next] && !seen[next]) {
        seen[next] = 1;
        queue.push(next);
      }
    }
  }
  return count;
}

}  // namespace

bool is_connected(const PointSet& s) {
  if (s.size() <= 1) return true;
  return reachable_count(s, s.cells().front()) == s.size();
}

PointSet boundary(const PointSet& s) {
  const Lattice lat = s.lattice();
  std::vector<char> member(lat.cell_count(), 0);
  for (std::uint32_t id : s.cells()) member[id] = 1;

  std::vector<std::uint32_t> out;
  const std::uint32_t n = static_cast<std::uint32_t>(lat.cols);
  for (std::uint32_t id : s.cells()) {
    const std::uint32_t row = id / n, col = id % n;
    int inside = 0;
    if (row > 0 && member[id - n]) ++inside;
    if (col > 0 && member[id - 1]) ++inside;
    if (col + 1 < n && member[id + 1]) ++inside;
    if (row + 1 < static_cast<std::uint32_t>(lat.rows) && member[id + n]) ++inside;
    if (inside < 4) out.push_back(id);
  }
  return PointSet::from_sorted_cells(lat, std::move(out));
}

std::optional<int> set_distance(const PointSet& a, const PointSet& b, const PointSet& within) {
  require_same_lattice(a, within);
  require_same_lattice(b, within);
  if (a.set_difference(within).size() != 0 || b.set_difference(within).size() != 0)
    throw std::domain_error("set_distance: endpoints must be contained in `within`");
  if (a.empty() || b.empty()) return std::nullopt;

  const Lattice lat = within.lattice();
  const std::uint32_t n = static_cast<std::uint32_t>(lat.cols);
  std::vector<char> passable(lat.cell_count(), 0);
  for (std::uint32_t id : within.cells()) passable[id] = 1;
  std::vector<char> target(lat.cell_count(), 0);
  for (std::uint32_t id : b.cells()) target[id] = 1;

  // Multi-source BFS from a through `within`.
  std::vector<int> dist(lat.cell_count(), -1);
  std::queue<std::uint32_t> queue;
  for (std::uint32_t id : a.cells()) {
    if (target[id]) return 0;
    dist[id] = 0;
    queue.push(id);
  }
  while (!queue.empty()) {
    const std::uint32_t id = queue.front();
    queue.pop();
    const std::uint32_t row = id / n, col = id % n;
    const std::uint32_t candidates[4] = {
        row > 0 ? id - n : id,
        col > 0 ? id - 1 : id,
        col + 1 < n ? id + 1 : id,
        row + 1 < static_cast<std::uint32_t>(lat.rows) ? id + n : id,
    };
    for (std::uint32_t next : candidates) {
      if (next == id || !passable[next] || dist[next] >= 0) continue;
      dist[next] = dist[id] + 1;
      if (target[next]) return dist[next];
      queue.push(next);
    }
  }
  return std::nullopt;
}

double jaccard_distance(const PointSet& a, const PointSet& b) {
  require_same_lattice(a, b);
  const auto& ca = a.cells();
  const auto& cb = b.cells();
  std::size_t inter = 0;
  std::size_t i = 0, j = 0;
  while (i < ca.size() && j < cb.size()) {
    if (ca[i] == cb[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (ca[i] < cb[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = ca.size() + cb.size() - inter;
  if (uni == 0) return 0.0;  // both empty: identical sets
  return static_cast<double>(uni - inter) / static_cast<double>(uni);
}

bool are_adjacent(const PointSet& a, const PointSet& b) {
  require_same_lattice(a, b);
  const Lattice lat = a.lattice();
  std::vector<char> in_b(lat.cell_count(), 0);
  for (std::uint32_t id : b.cells()) in_b[id] = 1;
  const std::uint32_t n = static_cast<std::uint32_t>(lat.cols);
  for (std::uint32_t id : a.cells()) {
    const std::uint32_t row = id / n, col = id % n;
    if (row > 0 && in_b[id - n]) return true;
    if (col > 0 && in_b[id - 1]) return true;
    if (col + 1 < n && in_b[id + 1]) return true;
    if (row + 1 < static_cast<std::uint32_t>(lat.rows) && in_b[id + n]) return true;
  }
  return false;
}

Partition::Partition(Lattice lat, std::vector<PointSet> blocks)
    : lat_(lat), blocks_(std::move(blocks)) {
  if (blocks_.size() < 2)
    throw std::domain_error("Partition: needs at least two blocks");
  if (blocks_.size() > 0xFFFF)
    throw std::domain_error("Partition: too many blocks");
  labels_.assign(lat_.cell_count(), 0xFFFF);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (!(blocks_[b].lattice() == lat_))
      throw std::domain_error("Partition: block lattice mismatch");
    if (blocks_[b].empty())
      throw std::domain_error("Partition: block " + std::to_string(b) + " is empty");
    if (!is_connected(blocks_[b]))
      throw std::domain_error("Partition: block " + std::to_string(b) + " is not connected");
    for (std::uint32_t id : blocks_[b].cells()) {
      if (labels_[id] != 0xFFFF)
        throw std::domain_error("Partition: blocks overlap at cell " + std::to_string(id));
      labels_[id] = static_cast<std::uint16_t>(b);
    }
  }
  for (std::size_t id = 0; id < labels_.size(); ++id)
    if (labels_[id] == 0xFFFF)
      throw std::domain_error("Partition: blocks do not cover the domain");
}

}  // namespace changeset
