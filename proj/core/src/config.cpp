#include "changeset/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace changeset {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

long long parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for '" + key + "': " + value);
  }
}

double parse_real(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number for '" + key + "': " + value);
  }
}

ShapeBlock parse_shape(const std::string& value) {
  ShapeBlock block;
  bool have_p = false, have_w = false, have_center = false, have_mean = false;
  std::stringstream ss(value);
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ConfigError("shape attribute without '=': " + tok);
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "p") {
      if (val == "1")
        block.shape.norm = NormOrder::L1;
      else if (val == "2")
        block.shape.norm = NormOrder::L2;
      else if (val == "inf" || val == "max")
        block.shape.norm = NormOrder::LInf;
      else
        throw ConfigError("shape p must be 1, 2 or inf, got " + val);
      have_p = true;
    } else if (key == "w") {
      try {
        block.shape.radius = Rational::parse(val);
      } catch (const std::exception& e) {
        throw ConfigError("bad shape radius '" + val + "': " + e.what());
      }
      have_w = true;
    } else if (key == "center") {
      const auto parts = split(val, ',');
      if (parts.size() != 2) throw ConfigError("shape center must be i,j, got " + val);
      block.shape.center = {static_cast<int>(parse_int(parts[0], "center")),
                            static_cast<int>(parse_int(parts[1], "center"))};
      have_center = true;
    } else if (key == "mean") {
      try {
        block.mean = MeanSpec::parse(val);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      have_mean = true;
    } else {
      throw ConfigError("unknown shape attribute '" + key + "'");
    }
  }
  if (!have_p || !have_w || !have_center || !have_mean)
    throw ConfigError("shape needs p=, w=, center=, mean= attributes");
  return block;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
  ParsedConfig cfg;
  cfg.grid = desk_table_grid(cfg.scenario.seed);
  bool rules_set = false, gammas_set = false, ds_set = false, modes_set = false;

  std::stringstream stream(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty value for " + key);

    try {
      if (key == "rows") {
        cfg.scenario.rows = static_cast<int>(parse_int(value, key));
      } else if (key == "cols") {
        cfg.scenario.cols = static_cast<int>(parse_int(value, key));
      } else if (key == "d") {
        cfg.scenario.frames = static_cast<int>(parse_int(value, key));
      } else if (key == "sigma2") {
        cfg.scenario.sigma2 = parse_real(value, key);
      } else if (key == "noise") {
        if (value == "on")
          cfg.scenario.noise_enabled = true;
        else if (value == "off")
          cfg.scenario.noise_enabled = false;
        else
          throw ConfigError("noise must be on or off, got " + value);
      } else if (key == "seed") {
        cfg.scenario.seed = static_cast<std::uint64_t>(parse_int(value, key));
      } else if (key == "background_mean") {
        cfg.scenario.background = MeanSpec::parse(value);
      } else if (key == "shape") {
        cfg.scenario.shapes.push_back(parse_shape(value));
      } else if (key == "rules") {
        cfg.grid.rules.clear();
        for (const std::string& pair : split(value, ';')) {
          const auto parts = split(pair, ',');
          if (parts.size() != 2) throw ConfigError("rule must be N,Q, got " + pair);
          cfg.grid.rules.emplace_back(static_cast<int>(parse_int(parts[0], "rules")),
                                      static_cast<int>(parse_int(parts[1], "rules")));
        }
        rules_set = true;
      } else if (key == "gammas") {
        cfg.grid.gammas.clear();
        for (const std::string& g : split(value, ','))
          cfg.grid.gammas.push_back(parse_real(g, key));
        gammas_set = true;
      } else if (key == "ds") {
        cfg.grid.frame_counts.clear();
        for (const std::string& d : split(value, ','))
          cfg.grid.frame_counts.push_back(static_cast<int>(parse_int(d, key)));
        ds_set = true;
      } else if (key == "modes") {
        cfg.grid.modes.clear();
        for (const std::string& m : split(value, ',')) cfg.grid.modes.push_back(parse_mode(m));
        modes_set = true;
      } else if (key == "reps") {
        cfg.grid.reps = static_cast<int>(parse_int(value, key));
        cfg.has_grid_keys = true;
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }

  cfg.has_grid_keys = cfg.has_grid_keys || rules_set || gammas_set || ds_set || modes_set;
  cfg.grid.base_seed = cfg.scenario.seed;
  if (cfg.grid.reps < 1) throw ConfigError("reps must be >= 1");
  return cfg;
}

ParsedConfig parse_config_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config: " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), file.filename().string());
}

ExperimentGrid desk_table_grid(std::uint64_t base_seed) {
  ExperimentGrid grid;
  grid.rules = {OverlapRule(4, 1), OverlapRule(6, 2)};
  grid.gammas = {0.0, 0.2, 0.3};
  grid.frame_counts = {100, 500, 1000};
  grid.modes = {ScanMode::Horizontal, ScanMode::Both};
  grid.reps = 100;
  grid.base_seed = base_seed;
  return grid;
}

ExperimentGrid full_table_grid(std::uint64_t base_seed) {
  ExperimentGrid grid;
  grid.rules = {OverlapRule(4, 1), OverlapRule(4, 2), OverlapRule(6, 2), OverlapRule(6, 4)};
  grid.gammas = {0.0, 0.1, 0.2, 0.3, 0.4};
  grid.frame_counts = {100, 200, 300, 500, 1000};
  grid.modes = {ScanMode::Horizontal, ScanMode::Both};
  grid.reps = 100;
  grid.base_seed = base_seed;
  return grid;
}

}  // namespace changeset
