#include "changeset/scan.hpp"

#include <string>

namespace changeset {

ScanField::ScanField(Lattice lat, Orientation orientation, int window, Gamma gamma,
                     std::vector<std::vector<int>> critical,
                     std::vector<char> degenerate)
    : lat_(lat),
      orientation_(orientation),
      window_(window),
      gamma_(gamma),
      critical_(std::move(critical)),
      degenerate_(std::move(degenerate)) {
  const int slices = slice_count();
  const int length = slice_length();
  if (static_cast<int>(critical_.size()) != slices ||
      static_cast<int>(degenerate_.size()) != slices)
    throw std::domain_error("ScanField: one entry row and flag per slice required");
  for (int s = 0; s < slices; ++s) {
    if (static_cast<int>(critical_[s].size()) != length)
      throw std::domain_error("ScanField: slice " + std::to_string(s + 1) +
                              " must carry one entry per offset");
    for (int r = 0; r < length; ++r) {
      const int v = critical_[s][r];
      if (r >= length - window + 1) {
        if (v != 0)
          throw std::domain_error("ScanField: tail offsets must hold the sentinel");
      } else if (v < 1 || v > length) {
        throw std::domain_error("ScanField: critical coordinate out of domain");
      }
    }
  }
}

std::vector<ScanField> scan_multi(const FrameSequence& seq, Orientation orientation,
                                  int window, const std::vector<Gamma>& gammas) {
  const Lattice lat = seq.lattice();
  const int slices = orientation == Orientation::Horizontal ? lat.rows : lat.cols;
  const int length = orientation == Orientation::Horizontal ? lat.cols : lat.rows;
  const int n = window;
  const int d = seq.frames();
  if (gammas.empty()) throw std::domain_error("scan_multi: needs at least one gamma");
  SubSliceSpec probe{orientation, 1, 1, n};
  probe.validate(lat);  // window/size checks

  std::vector<std::vector<double>> weights;
  weights.reserve(gammas.size());
  for (Gamma g : gammas) weights.push_back(detail::weight_table(n, g));

  const std::size_t g_count = gammas.size();
  std::vector<std::vector<std::vector<int>>> critical(
      g_count, std::vector<std::vector<int>>(slices, std::vector<int>(length, 0)));
  std::vector<std::vector<char>> degenerate(g_count, std::vector<char>(slices, 0));

  // One contiguous buffer per slice (panel-major), reused across slices; the
  // window at offset r is the kernel run at base+r-1 with panel stride L.
  std::vector<double> slice_buf(static_cast<std::size_t>(d) * length);
  std::vector<double> acc(static_cast<std::size_t>(n - 1));
  const int offsets = length - n + 1;

  for (int s = 1; s <= slices; ++s) {
    if (orientation == Orientation::Horizontal) {
      for (int k = 1; k <= d; ++k) {
        const double* row = seq.frame(k) + static_cast<std::size_t>(s - 1) * seq.cols();
        double* dst = slice_buf.data() + static_cast<std::size_t>(k - 1) * length;
        for (int t = 0; t < length; ++t) dst[t] = row[t];
      }
    } else {
      for (int k = 1; k <= d; ++k) {
        const double* frame = seq.frame(k);
        double* dst = slice_buf.data() + static_cast<std::size_t>(k - 1) * length;
        for (int t = 0; t < length; ++t)
          dst[t] = frame[static_cast<std::size_t>(t) * seq.cols() + (s - 1)];
      }
    }

    std::vector<char> slice_degenerate(g_count, 1);
    for (int r = 1; r <= offsets; ++r) {
      detail::cusum_accumulate(slice_buf.data() + (r - 1),
                               static_cast<std::size_t>(length), n, d, acc.data());
      for (std::size_t g = 0; g < g_count; ++g) {
        const detail::CusumBest best =
            detail::cusum_argmax(acc.data(), n, weights[g].data());
        critical[g][s - 1][r - 1] = best.index + r - 1;
        if (!best.all_zero) slice_degenerate[g] = 0;
      }
    }
    for (std::size_t g = 0; g < g_count; ++g) degenerate[g][s - 1] = slice_degenerate[g];
  }

  std::vector<ScanField> fields;
  fields.reserve(g_count);
  for (std::size_t g = 0; g < g_count; ++g)
    fields.emplace_back(lat, orientation, n, gammas[g], std::move(critical[g]),
                        std::move(degenerate[g]));
  return fields;
}

ScanField scan(const FrameSequence& seq, Orientation orientation, int window,
               Gamma gamma) {
  return std::move(scan_multi(seq, orientation, window, {gamma}).front());
}

std::vector<PointSet> select_relevant(const ScanField& field, const OverlapRule& rule) {
  if (rule.window != field.window())
    throw std::domain_error("select_relevant: rule window N=" +
                            std::to_string(rule.window) + " does not match field N=" +
                            std::to_string(field.window()));
  const int slices = field.slice_count();
  const int length = field.slice_length();
  const int offsets = length - field.window() + 1;
  const int q = rule.run;

  std::vector<PointSet> relevant;
  relevant.reserve(slices);
  for (int s = 1; s <= slices; ++s) {
    PointSet h(field.lattice());
    for (int r = 1; r <= offsets; ++r) {
      const Point first = field.entry(s, r);
      bool equal = true;
      for (int t = 1; t <= q && equal; ++t) equal = field.entry(s, r + t) == first;
      if (equal) h.insert(first);
    }
    relevant.push_back(std::move(h));
  }
  return relevant;
}

PointSet pool(const std::vector<PointSet>& h_sets, const std::vector<PointSet>& v_sets,
              Lattice lat) {
  PointSet g(lat);
  for (const PointSet& h : h_sets) g = g.set_union(h);
  for (const PointSet& v : v_sets) g = g.set_union(v);
  return g;
}

}  // namespace changeset
