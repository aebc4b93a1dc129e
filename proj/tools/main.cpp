// Command line front end for the change-set estimation library:
//   generate   scenario config -> frame file + ground truth
//   estimate   frame file + rule/gamma/mode -> point set + PGM rasters
//   table      grid config -> expected-Jaccard CSV
//   figure     point sets / frame averages -> PGM rasters
//   validate   truth set + xi + mode -> consistency report
//
// Exit codes: 0 success, 2 validation or configuration failure, 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "changeset/config.hpp"
#include "changeset/connect.hpp"
#include "changeset/experiment.hpp"
#include "changeset/io.hpp"
#include "changeset/synth.hpp"

namespace fs = std::filesystem;
using namespace changeset;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

OverlapRule parse_rule_arg(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ConfigError("--rule expects N,Q (e.g. 6,2), got " + text);
  try {
    return OverlapRule(std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1)));
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  } catch (const std::exception&) {
    throw ConfigError("--rule expects N,Q (e.g. 6,2), got " + text);
  }
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct GenerateArgs {
  std::string config;
  std::string out = ".";
  std::string format = "bin";
  std::optional<std::uint64_t> seed;
};

int cmd_generate(const GenerateArgs& args) {
  ParsedConfig cfg = parse_config_file(args.config);
  if (args.seed) cfg.scenario.seed = *args.seed;

  const PreparedScenario prep(cfg.scenario);
  const FrameSequence frames =
      prep.generate_frames(cfg.scenario.frames, cfg.scenario.seed);

  const fs::path out_dir(args.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory: " + out_dir.string());

  fs::path frames_path;
  if (args.format == "bin") {
    frames_path = out_dir / "frames.bin";
    write_frames(frames_path, frames);
  } else {
    frames_path = out_dir / "frames.csv-dir";
    write_frames_csv_dir(frames_path, frames);
  }
  write_point_set(out_dir / "truth.txt", prep.truth());

  std::cout << "wrote " << frames_path.string() << " (" << frames.rows() << "x"
            << frames.cols() << ", d=" << frames.frames() << ")\n";
  std::cout << "wrote " << (out_dir / "truth.txt").string() << " (" << prep.truth().size()
            << " points)\n";

  // Noise-to-change ratios per shape; comparing them against consistency
  // thresholds is up to the user.
  if (cfg.scenario.noise_enabled) {
    for (std::size_t b = 0; b < cfg.scenario.shapes.size(); ++b) {
      const MeanModel pair({cfg.scenario.background, cfg.scenario.shapes[b].mean});
      const double delta2 = total_average_change(pair, 0, 1, cfg.scenario.frames);
      if (delta2 <= 0.0) continue;
      std::printf("shape %zu: delta^2 = %g, rho = %.4f (N=4), %.4f (N=6), %.4f (N=16)\n",
                  b + 1, delta2, noise_to_change_ratio(cfg.scenario.sigma2, delta2, 4),
                  noise_to_change_ratio(cfg.scenario.sigma2, delta2, 6),
                  noise_to_change_ratio(cfg.scenario.sigma2, delta2, 16));
    }
  }
  return kExitOk;
}

struct EstimateArgs {
  std::string frames;
  std::string rule = "6,2";
  double gamma = 0.0;
  std::string mode = "h";
  std::string out = ".";
  std::string truth;
  bool scan_csv = false;
  bool components = false;
};

int cmd_estimate(const EstimateArgs& args) {
  const OverlapRule rule = parse_rule_arg(args.rule);
  const Gamma gamma{args.gamma};
  const ScanMode mode = parse_mode(args.mode);

  const FrameSequence frames = load_frames(args.frames);
  const Lattice lat = frames.lattice();

  const fs::path out_dir(args.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory: " + out_dir.string());

  PointSet estimate(lat);
  std::vector<PointSet> h_sets, v_sets;
  if (mode != ScanMode::Vertical) {
    const ScanField field = scan(frames, Orientation::Horizontal, rule.window, gamma);
    if (args.scan_csv) write_scan_field_csv(out_dir / "scan_h.csv", field);
    h_sets = select_relevant(field, rule);
    estimate = estimate.set_union(connect_from_field(field, rule));
  }
  if (mode != ScanMode::Horizontal) {
    const ScanField field = scan(frames, Orientation::Vertical, rule.window, gamma);
    if (args.scan_csv) write_scan_field_csv(out_dir / "scan_v.csv", field);
    v_sets = select_relevant(field, rule);
    estimate = estimate.set_union(connect_from_field(field, rule));
  }

  write_point_set(out_dir / "estimate.txt", estimate);
  write_pgm_mask(out_dir / "estimate.pgm", estimate);
  write_pgm_mask(out_dir / "relevant.pgm", pool(h_sets, v_sets, lat));
  std::cout << "estimate: " << estimate.size() << " points -> "
            << (out_dir / "estimate.txt").string() << "\n";

  if (args.components) {
    const std::vector<PointSet> comps = split_components(estimate);
    std::cout << "components: " << comps.size() << "\n";
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const Point anchor = comps[c].point_at(0);
      std::cout << "  #" << (c + 1) << ": " << comps[c].size() << " points, first ("
                << anchor.row << "," << anchor.col << ")\n";
    }
  }

  if (!args.truth.empty()) {
    const PointSet truth = read_point_set(args.truth, lat);
    write_pgm_overlay(out_dir / "overlay.pgm", truth, estimate);
    std::printf("jaccard distance to truth: %.6f%s\n", jaccard_distance(estimate, truth),
                estimate == truth ? " (exact)" : "");
  }
  return kExitOk;
}

struct TableArgs {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  int threads = default_threads();
  bool full_table = false;
};

int cmd_table(const TableArgs& args) {
  ParsedConfig cfg = parse_config_file(args.config);
  if (args.seed) cfg.scenario.seed = *args.seed;
  ExperimentGrid grid = args.full_table ? full_table_grid(cfg.scenario.seed) : cfg.grid;
  grid.base_seed = cfg.scenario.seed;
  if (args.reps) grid.reps = *args.reps;

  const fs::path out_dir(args.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory: " + out_dir.string());
  const fs::path csv_path = out_dir / "table.csv";

  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot open for writing: " + csv_path.string());
  csv << table_csv_header() << '\n';

  // Rows are flushed as each frame-count group completes.
  const auto on_row = [&csv](const TableRow& row) {
    csv << table_row_csv(row) << '\n';
    csv.flush();
    std::cout << table_row_csv(row) << std::endl;
  };

  std::cout << table_csv_header() << std::endl;
  run_table(grid, cfg.scenario, args.threads, on_row);
  if (!csv) throw IoError("write failed: " + csv_path.string());
  std::cout << "wrote " << csv_path.string() << std::endl;
  return kExitOk;
}

struct FigureArgs {
  std::string out = ".";
  std::string frames;
  std::string truth;
  std::string estimate;
  std::vector<std::string> points;
  std::vector<int> frame_indices;
};

int cmd_figure(const FigureArgs& args) {
  const fs::path out_dir(args.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory: " + out_dir.string());

  std::optional<FrameSequence> frames;
  if (!args.frames.empty()) frames = load_frames(args.frames);

  std::optional<Lattice> lat;
  if (frames) lat = frames->lattice();

  auto load_set = [&lat](const std::string& path) {
    if (!lat)
      throw ConfigError(
          "point-set rasters need --frames to fix the lattice dimensions");
    return read_point_set(path, *lat);
  };

  FigureInputs inputs;
  if (frames) inputs.average_of = &*frames;
  if (!args.truth.empty()) inputs.truth = load_set(args.truth);
  if (!args.estimate.empty()) inputs.estimate = load_set(args.estimate);
  const auto written = render_figure(inputs, out_dir);

  std::vector<fs::path> extra;
  for (std::size_t i = 0; i < args.points.size(); ++i) {
    const PointSet set = load_set(args.points[i]);
    const fs::path target =
        out_dir / (fs::path(args.points[i]).stem().string() + "_mask.pgm");
    write_pgm_mask(target, set);
    extra.push_back(target);
  }

  // Individual observations, e.g. --frame 1 --frame 2 ... --frame 6.
  for (int k : args.frame_indices) {
    if (!frames) throw ConfigError("--frame needs --frames");
    if (k < 1 || k > frames->frames())
      throw ConfigError("--frame index " + std::to_string(k) + " outside 1.." +
                        std::to_string(frames->frames()));
    std::vector<double> values(frames->frame(k),
                               frames->frame(k) +
                                   static_cast<std::size_t>(frames->rows()) * frames->cols());
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04d.pgm", k);
    write_pgm_gray(out_dir / name, frames->rows(), frames->cols(), values);
    extra.push_back(out_dir / name);
  }

  for (const auto& p : written) std::cout << "wrote " << p.string() << "\n";
  for (const auto& p : extra) std::cout << "wrote " << p.string() << "\n";
  if (written.empty() && extra.empty())
    std::cout << "nothing to render (pass --frames/--truth/--estimate/--points)\n";
  return kExitOk;
}

struct ValidateArgs {
  std::string truth;
  int rows = 100;
  int cols = 100;
  int xi = 6;
  std::string mode = "h";
  bool per_component = false;
};

int print_report(const TheoremReport& report, const std::string& label) {
  for (const auto& clause : report.clauses)
    std::printf("%-20s %s  %s\n", (label + clause.name).c_str(),
                clause.pass ? "PASS" : "FAIL", clause.detail.c_str());
  return report.all_pass() ? kExitOk : kExitValidation;
}

int cmd_validate(const ValidateArgs& args) {
  const Lattice lat(args.rows, args.cols);
  const ScanMode mode = parse_mode(args.mode);
  const PointSet truth = read_point_set(args.truth, lat);

  if (!args.per_component)
    return print_report(validate_theorem_conditions(truth, lat, args.xi, mode), "");

  int status = kExitOk;
  const std::vector<PointSet> comps = split_components(truth);
  std::cout << "components: " << comps.size() << "\n";
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string label = "#" + std::to_string(c + 1) + " ";
    if (print_report(validate_theorem_conditions(comps[c], lat, args.xi, mode), label) !=
        kExitOk)
      status = kExitValidation;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Common change-set estimation on lattice data"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Render a scenario to a frame file");
  generate->add_option("--config", gen.config, "Scenario config file")->required();
  generate->add_option("--out", gen.out, "Output directory");
  generate->add_option("--seed", gen.seed, "Override the scenario seed");
  generate->add_option("--format", gen.format, "Frame format: bin or csv")
      ->check(CLI::IsMember({"bin", "csv"}));

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand("estimate", "Estimate the change set of a frame file");
  estimate->add_option("--frames", est.frames, "Frame file or CSV directory")->required();
  estimate->add_option("--rule", est.rule, "Overlapping rule N,Q");
  estimate->add_option("--gamma", est.gamma, "Weight exponent in [0, 0.5)");
  estimate->add_option("--mode", est.mode, "Scan mode: h, v or both");
  estimate->add_option("--out", est.out, "Output directory");
  estimate->add_option("--truth", est.truth, "Ground truth point set for scoring");
  estimate->add_flag("--scan-csv", est.scan_csv, "Also dump the critical-point fields");
  estimate->add_flag("--components", est.components, "Report connected components");

  TableArgs tab;
  CLI::App* table = app.add_subcommand("table", "Monte-Carlo expected-Jaccard table");
  table->add_option("--config", tab.config, "Scenario + grid config file")->required();
  table->add_option("--out", tab.out, "Output directory");
  table->add_option("--seed", tab.seed, "Override the base seed");
  table->add_option("--reps", tab.reps, "Override repetitions per cell");
  table->add_option("--threads", tab.threads, "Worker threads (1 = serial)");
  table->add_flag("--full-table", tab.full_table, "Run the full reference grid");

  FigureArgs fig;
  CLI::App* figure = app.add_subcommand("figure", "Render PGM rasters");
  figure->add_option("--out", fig.out, "Output directory");
  figure->add_option("--frames", fig.frames, "Frame file (renders the frame average)");
  figure->add_option("--truth", fig.truth, "Truth point set");
  figure->add_option("--estimate", fig.estimate, "Estimate point set");
  figure->add_option("--points", fig.points, "Additional point sets to rasterize");
  figure->add_option("--frame", fig.frame_indices,
                     "Render single observations (repeatable, needs --frames)");

  ValidateArgs val;
  CLI::App* validate = app.add_subcommand("validate", "Check exact-recovery conditions");
  validate->add_option("--truth", val.truth, "Truth point set")->required();
  validate->add_option("--rows", val.rows, "Lattice rows")->required();
  validate->add_option("--cols", val.cols, "Lattice cols")->required();
  validate->add_option("--xi", val.xi, "Condition parameter xi >= 4");
  validate->add_option("--mode", val.mode, "Scan mode: h, v or both");
  validate->add_flag("--per-component", val.per_component, "Validate each component");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (estimate->parsed()) return cmd_estimate(est);
    if (table->parsed()) return cmd_table(tab);
    if (figure->parsed()) return cmd_figure(fig);
    if (validate->parsed()) return cmd_validate(val);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
