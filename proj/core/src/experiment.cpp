#include "changeset/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "changeset/io.hpp"
#include "changeset/rng.hpp"

namespace changeset {

PreparedScenario::PreparedScenario(const Scenario& scenario)
    : scenario_(scenario),
      labels_(scenario.lattice().cell_count(), 0),
      means_({}),
      truth_(scenario.lattice()) {
  const Lattice lat = scenario_.lattice();
  if (!(scenario_.sigma2 > 0.0) && scenario_.noise_enabled)
    throw std::domain_error("Scenario: sigma2 must be positive when noise is enabled");
  if (scenario_.frames < 1) throw std::domain_error("Scenario: frames must be >= 1");

  std::vector<MeanSpec> block_means{scenario_.background};
  for (std::size_t b = 0; b < scenario_.shapes.size(); ++b) {
    const PointSet set = make_shape(scenario_.shapes[b].shape, lat);
    for (std::uint32_t id : set.cells()) {
      if (labels_[id] != 0)
        throw std::domain_error("Scenario: shapes overlap at cell " + std::to_string(id));
      labels_[id] = static_cast<std::uint16_t>(b + 1);
    }
    truth_ = truth_.set_union(set);
    shape_sets_.push_back(set);
    block_means.push_back(scenario_.shapes[b].mean);
  }
  means_ = MeanModel(std::move(block_means));

  // Every shape borders the background, so its mean sequence must differ at
  // every frame; shapes that touch each other must differ as well.
  for (std::size_t b = 0; b < scenario_.shapes.size(); ++b)
    for (int k = 1; k <= scenario_.frames; ++k)
      if (means_.value(b + 1, k) == means_.value(0, k))
        throw std::domain_error("Scenario: shape " + std::to_string(b + 1) +
                                " shares the background mean at k=" + std::to_string(k));
  for (std::size_t a = 0; a < shape_sets_.size(); ++a)
    for (std::size_t b = a + 1; b < shape_sets_.size(); ++b) {
      if (!are_adjacent(shape_sets_[a], shape_sets_[b])) continue;
      for (int k = 1; k <= scenario_.frames; ++k)
        if (means_.value(a + 1, k) == means_.value(b + 1, k))
          throw std::domain_error("Scenario: adjacent shapes " + std::to_string(a + 1) +
                                  " and " + std::to_string(b + 1) +
                                  " share the mean at k=" + std::to_string(k));
    }

  // The background must stay a valid block; shapes swallowing the whole
  // domain would leave label 0 unused.
  if (truth_.size() == lat.cell_count())
    throw std::domain_error("Scenario: shapes cover the entire domain");
}

FrameSequence PreparedScenario::generate_frames(int d, std::uint64_t seed) const {
  const std::optional<NoiseSpec> noise =
      scenario_.noise_enabled ? std::optional<NoiseSpec>(NoiseSpec(scenario_.sigma2, seed))
                              : std::nullopt;
  return generate_labeled(lattice(), labels_, means_, noise, d);
}

TrialResult run_trial(const Scenario& scenario, ScanMode mode, const OverlapRule& rule,
                      Gamma gamma, std::uint64_t seed) {
  const PreparedScenario prep(scenario);
  const FrameSequence frames = prep.generate_frames(scenario.frames, seed);
  const PointSet estimate = estimate_change_set(frames, mode, rule, gamma);
  return {jaccard_distance(estimate, prep.truth()), estimate == prep.truth()};
}

namespace {

CellResult aggregate(const std::vector<TrialResult>& trials) {
  CellResult cell;
  cell.reps = static_cast<int>(trials.size());
  double sum = 0.0;
  int exact = 0;
  for (const TrialResult& t : trials) {
    sum += t.jaccard;
    exact += t.exact ? 1 : 0;
  }
  cell.mean_jaccard = sum / cell.reps;
  if (cell.reps > 1) {
    double ss = 0.0;
    for (const TrialResult& t : trials) {
      const double dev = t.jaccard - cell.mean_jaccard;
      ss += dev * dev;
    }
    cell.std_error = std::sqrt(ss / (cell.reps - 1)) / std::sqrt(cell.reps);
  }
  cell.exact_freq = static_cast<double>(exact) / cell.reps;
  return cell;
}

struct CellSpec {
  OverlapRule rule;
  std::size_t gamma_idx;
  ScanMode mode;
};

}  // namespace

std::vector<TableRow> run_table(const ExperimentGrid& grid, const Scenario& scenario,
                                int threads,
                                const std::function<void(const TableRow&)>& on_row) {
  if (grid.reps < 1) throw std::domain_error("run_table: reps must be >= 1");
  if (grid.rules.empty() || grid.gammas.empty() || grid.frame_counts.empty() ||
      grid.modes.empty())
    throw std::domain_error("run_table: grid axes must be non-empty");
  if (threads < 1) throw std::domain_error("run_table: threads must be >= 1");

  std::vector<Gamma> gammas;
  gammas.reserve(grid.gammas.size());
  for (double g : grid.gammas) gammas.emplace_back(g);
  for (int d : grid.frame_counts)
    if (d < 1) throw std::domain_error("run_table: frame counts must be >= 1");

  const PreparedScenario prep(scenario);
  const PointSet& truth = prep.truth();

  bool need_h = false, need_v = false;
  for (ScanMode m : grid.modes) {
    need_h = need_h || m != ScanMode::Vertical;
    need_v = need_v || m != ScanMode::Horizontal;
  }
  std::vector<int> windows;
  for (const OverlapRule& r : grid.rules)
    if (std::find(windows.begin(), windows.end(), r.window) == windows.end())
      windows.push_back(r.window);

  std::vector<CellSpec> cells;
  for (const OverlapRule& rule : grid.rules)
    for (std::size_t g = 0; g < gammas.size(); ++g)
      for (ScanMode mode : grid.modes) cells.push_back({rule, g, mode});

  std::vector<TableRow> rows;
  for (int d : grid.frame_counts) {
    std::vector<std::vector<TrialResult>> results(
        cells.size(), std::vector<TrialResult>(static_cast<std::size_t>(grid.reps)));

    std::atomic<int> next_trial{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
      try {
        while (!failed.load(std::memory_order_relaxed)) {
          const int trial = next_trial.fetch_add(1);
          if (trial >= grid.reps) break;
          const std::uint64_t seed = rng::derive_trial_seed(grid.base_seed, trial);
          const FrameSequence frames = prep.generate_frames(d, seed);

          // One field per (window, gamma, orientation), shared by all rules
          // with that window.
          std::map<int, std::vector<ScanField>> fields_h, fields_v;
          for (int n : windows) {
            if (need_h)
              fields_h.emplace(n, scan_multi(frames, Orientation::Horizontal, n, gammas));
            if (need_v)
              fields_v.emplace(n, scan_multi(frames, Orientation::Vertical, n, gammas));
          }

          for (std::size_t c = 0; c < cells.size(); ++c) {
            const CellSpec& cell = cells[c];
            PointSet estimate(prep.lattice());
            if (cell.mode != ScanMode::Vertical)
              estimate = estimate.set_union(connect_from_field(
                  fields_h.at(cell.rule.window)[cell.gamma_idx], cell.rule));
            if (cell.mode != ScanMode::Horizontal)
              estimate = estimate.set_union(connect_from_field(
                  fields_v.at(cell.rule.window)[cell.gamma_idx], cell.rule));
            results[c][static_cast<std::size_t>(trial)] = {
                jaccard_distance(estimate, truth), estimate == truth};
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    };

    const int pool = std::min(threads, grid.reps);
    if (pool <= 1) {
      worker();
    } else {
      std::vector<std::thread> team;
      team.reserve(static_cast<std::size_t>(pool));
      for (int t = 0; t < pool; ++t) team.emplace_back(worker);
      for (std::thread& t : team) t.join();
    }
    if (error) std::rethrow_exception(error);

    for (std::size_t c = 0; c < cells.size(); ++c) {
      TableRow row{cells[c].rule, gammas[cells[c].gamma_idx].value(), d, cells[c].mode,
                   aggregate(results[c])};
      if (on_row) on_row(row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

CellResult run_cell(const Scenario& scenario, ScanMode mode, const OverlapRule& rule,
                    Gamma gamma, int d, int reps, std::uint64_t base_seed, int threads) {
  ExperimentGrid grid;
  grid.rules = {rule};
  grid.gammas = {gamma.value()};
  grid.frame_counts = {d};
  grid.modes = {mode};
  grid.reps = reps;
  grid.base_seed = base_seed;
  return run_table(grid, scenario, threads).front().cell;
}

const char* mode_name(ScanMode mode) {
  switch (mode) {
    case ScanMode::Horizontal: return "h";
    case ScanMode::Vertical: return "v";
    case ScanMode::Both: return "both";
  }
  return "?";
}

ScanMode parse_mode(const std::string& name) {
  if (name == "h" || name == "horizontal") return ScanMode::Horizontal;
  if (name == "v" || name == "vertical") return ScanMode::Vertical;
  if (name == "both" || name == "hv" || name == "h+v") return ScanMode::Both;
  throw std::domain_error("unknown mode '" + name + "' (expected h|v|both)");
}

std::string table_csv_header() { return "rule_N,rule_Q,gamma,d,mode,mean,stderr,exact_freq"; }

std::string table_row_csv(const TableRow& row) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d,%d,%.6g,%d,%s,%.6f,%.6f,%.6f", row.rule.window,
                row.rule.run, row.gamma, row.frames, mode_name(row.mode),
                row.cell.mean_jaccard, row.cell.std_error, row.cell.exact_freq);
  return buf;
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << table_csv_header() << '\n';
  for (const TableRow& row : rows) out << table_row_csv(row) << '\n';
}

std::vector<std::filesystem::path> render_figure(const FigureInputs& inputs,
                                                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory: " + out_dir.string());

  std::vector<std::filesystem::path> written;
  auto emit = [&written](std::filesystem::path p) { written.push_back(std::move(p)); };

  if (inputs.truth) {
    write_pgm_mask(out_dir / "truth.pgm", *inputs.truth);
    emit(out_dir / "truth.pgm");
  }
  if (inputs.estimate) {
    write_pgm_mask(out_dir / "estimate.pgm", *inputs.estimate);
    emit(out_dir / "estimate.pgm");
  }
  if (inputs.relevant) {
    write_pgm_mask(out_dir / "relevant.pgm", *inputs.relevant);
    emit(out_dir / "relevant.pgm");
  }
  if (inputs.truth && inputs.estimate) {
    write_pgm_overlay(out_dir / "overlay.pgm", *inputs.truth, *inputs.estimate);
    emit(out_dir / "overlay.pgm");
  }
  if (inputs.average_of) {
    write_pgm_gray(out_dir / "average.pgm", inputs.average_of->rows(),
                   inputs.average_of->cols(), frame_average(*inputs.average_of));
    emit(out_dir / "average.pgm");
  }
  return written;
}

}  // namespace changeset
