#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "changeset/experiment.hpp"

namespace changeset {

/// Malformed or inconsistent configuration; the CLI maps this to exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain-text key/value scenario and grid description. Lines are
/// `key = value`, `#` starts a comment. Scenario keys:
///
///   rows, cols            domain size (default 100 x 100)
///   d                     number of frames
///   sigma2                noise variance
///   noise                 on | off
///   seed                  base seed (u64)
///   background_mean       zero | alt | drift | drift_plus_alt | const(c)
///   shape                 p=<1|2|inf> w=<radius> center=<i>,<j> mean=<gen>
///                         (repeatable; w accepts fractions like 100/3)
///
/// Grid keys (table runs):
///
///   rules                 semicolon-separated N,Q pairs: `4,1; 6,2`
///   gammas                comma-separated values in [0, 0.5)
///   ds                    comma-separated frame counts
///   modes                 comma-separated h | v | both
///   reps                  repetitions per cell
struct ParsedConfig {
  Scenario scenario;
  ExperimentGrid grid;
  bool has_grid_keys = false;
};

ParsedConfig parse_config_file(const std::filesystem::path& file);
ParsedConfig parse_config_text(const std::string& text, const std::string& origin);

/// Desk-scale default grid: rules (4,1),(6,2); gammas 0, 0.2, 0.3;
/// d 100, 500, 1000; horizontal and combined modes; 100 repetitions.
ExperimentGrid desk_table_grid(std::uint64_t base_seed);

/// The full reference grid: rules (4,1),(4,2),(6,2),(6,4); gammas
/// 0,0.1,0.2,0.3,0.4; d 100,200,300,500,1000; both modes; 100 repetitions.
ExperimentGrid full_table_grid(std::uint64_t base_seed);

}  // namespace changeset
