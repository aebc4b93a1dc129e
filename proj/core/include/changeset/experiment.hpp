#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "changeset/connect.hpp"
#include "changeset/lattice.hpp"
#include "changeset/synth.hpp"

namespace changeset {

/// One shaped change region plus its mean sequence.
struct ShapeBlock {
  ShapeSpec shape;
  MeanSpec mean;
};

/// A full simulation design: domain, change sets, background mean, noise
/// level and default frame count / seed. No shapes means a pure-noise field
/// with an empty truth set.
struct Scenario {
  int rows = 100;
  int cols = 100;
  std::vector<ShapeBlock> shapes;
  MeanSpec background{MeanKind::Drift, 0.0};
  double sigma2 = 2.0;
  bool noise_enabled = true;
  int frames = 1000;
  std::uint64_t seed = 1;

  Lattice lattice() const { return Lattice(rows, cols); }
};

/// Label map, mean model and truth set materialized once per scenario so
/// repeated trials only pay for noise generation.
class PreparedScenario {
 public:
  explicit PreparedScenario(const Scenario& scenario);

  const Scenario& scenario() const noexcept { return scenario_; }
  Lattice lattice() const { return scenario_.lattice(); }
  const PointSet& truth() const noexcept { return truth_; }
  const std::vector<PointSet>& shape_sets() const noexcept { return shape_sets_; }

  /// One dataset: X_k = mean field + noise(seed), k = 1..d.
  FrameSequence generate_frames(int d, std::uint64_t seed) const;

 private:
  Scenario scenario_;
  std::vector<std::uint16_t> labels_;
  MeanModel means_;
  PointSet truth_;
  std::vector<PointSet> shape_sets_;
};

struct TrialResult {
  double jaccard = 0.0;
  bool exact = false;
};

/// Generates one dataset with `seed`, estimates the change set, and scores
/// it against the scenario truth.
TrialResult run_trial(const Scenario& scenario, ScanMode mode, const OverlapRule& rule,
                      Gamma gamma, std::uint64_t seed);

struct CellResult {
  double mean_jaccard = 0.0;
  double std_error = 0.0;   // sample std dev / sqrt(R); 0 when R = 1
  double exact_freq = 0.0;  // frequency of exact recovery
  int reps = 0;
};

/// R independent trials with per-trial seeds derived from base_seed by
/// mixing; results are aggregated in trial order so serial and parallel runs
/// agree bit for bit.
CellResult run_cell(const Scenario& scenario, ScanMode mode, const OverlapRule& rule,
                    Gamma gamma, int d, int reps, std::uint64_t base_seed,
                    int threads = 1);

/// Cross product of rules x gammas x frame counts x modes.
struct ExperimentGrid {
  std::vector<OverlapRule> rules;
  std::vector<double> gammas;
  std::vector<int> frame_counts;
  std::vector<ScanMode> modes;
  int reps = 100;
  std::uint64_t base_seed = 1;
};

struct TableRow {
  OverlapRule rule;
  double gamma = 0.0;
  int frames = 0;
  ScanMode mode = ScanMode::Horizontal;
  CellResult cell;
};

/// Fills every cell of the grid. Trials are shared across cells: for a fixed
/// frame count and trial index all cells see the same dataset, horizontal
/// and combined estimates reuse one draw, and scans are shared across rules
/// with equal (N, gamma). Rows arrive in (d, rule, gamma, mode) order; the
/// optional callback fires as rows complete.
std::vector<TableRow> run_table(const ExperimentGrid& grid, const Scenario& scenario,
                                int threads = 1,
                                const std::function<void(const TableRow&)>& on_row = {});

/// CSV with header rule_N,rule_Q,gamma,d,mode,mean,stderr,exact_freq;
/// byte-stable for fixed inputs.
void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows);
std::string table_row_csv(const TableRow& row);
std::string table_csv_header();

const char* mode_name(ScanMode mode);
ScanMode parse_mode(const std::string& name);

/// Inputs for figure rasters; every present member is rendered to a PGM in
/// the output directory (truth.pgm, estimate.pgm, relevant.pgm, overlay.pgm,
/// average.pgm).
struct FigureInputs {
  std::optional<PointSet> truth;
  std::optional<PointSet> estimate;
  std::optional<PointSet> relevant;
  const FrameSequence* average_of = nullptr;
};

std::vector<std::filesystem::path> render_figure(const FigureInputs& inputs,
                                                 const std::filesystem::path& out_dir);

}  // namespace changeset
