#include "changeset/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace changeset {

namespace {

constexpr std::uint32_t kFrameMagic = 0x31465343u;  // "CSF1" little-endian

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<unsigned char, 4> b = {
      static_cast<unsigned char>(v & 0xFF), static_cast<unsigned char>((v >> 8) & 0xFF),
      static_cast<unsigned char>((v >> 16) & 0xFF),
      static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char*>(b.data()), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64_block(std::ostream& out, const double* values, std::size_t count) {
  // Values are written as little-endian u64 bit patterns.
  std::vector<unsigned char> buf(count * 8);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b)
      buf[i * 8 + b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xFF);
  }
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

void get_f64_block(std::istream& in, double* values, std::size_t count) {
  std::vector<unsigned char> buf(count * 8);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(in.gcount()) != buf.size())
    throw IoError("frame file truncated");
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
      bits |= static_cast<std::uint64_t>(buf[i * 8 + b]) << (8 * b);
    values[i] = std::bit_cast<double>(bits);
  }
}

std::string path_str(const std::filesystem::path& p) { return p.string(); }

}  // namespace

void write_frames(const std::filesystem::path& file, const FrameSequence& seq) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path_str(file));
  put_u32(out, kFrameMagic);
  put_u32(out, static_cast<std::uint32_t>(seq.rows()));
  put_u32(out, static_cast<std::uint32_t>(seq.cols()));
  put_u32(out, static_cast<std::uint32_t>(seq.frames()));
  put_f64_block(out, seq.values().data(), seq.values().size());
  if (!out) throw IoError("write failed: " + path_str(file));
}

FrameSequence read_frames(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path_str(file));
  if (get_u32(in) != kFrameMagic) throw IoError("bad magic in " + path_str(file));
  const std::uint32_t m = get_u32(in), n = get_u32(in), d = get_u32(in);
  if (!in) throw IoError("frame header truncated: " + path_str(file));
  if (m < 4 || n < 4 || d < 1 || m > 100000 || n > 100000)
    throw IoError("implausible frame dimensions in " + path_str(file));
  std::vector<double> values(static_cast<std::size_t>(m) * n * d);
  get_f64_block(in, values.data(), values.size());
  try {
    return FrameSequence::from_values(static_cast<int>(m), static_cast<int>(n),
                                      static_cast<int>(d), std::move(values));
  } catch (const std::domain_error& e) {
    throw IoError(std::string("invalid frame data: ") + e.what());
  }
}

void write_frames_csv_dir(const std::filesystem::path& dir, const FrameSequence& seq) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory: " + path_str(dir));
  for (int k = 1; k <= seq.frames(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06d.csv", k);
    std::ofstream out(dir / name);
    if (!out) throw IoError("cannot open for writing: " + path_str(dir / name));
    out.precision(17);
    const double* frame = seq.frame(k);
    for (int i = 0; i < seq.rows(); ++i) {
      for (int j = 0; j < seq.cols(); ++j) {
        if (j) out << ',';
        out << frame[static_cast<std::size_t>(i) * seq.cols() + j];
      }
      out << '\n';
    }
    if (!out) throw IoError("write failed: " + path_str(dir / name));
  }
}

FrameSequence read_frames_csv_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("frame_", 0) == 0 && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot read directory: " + path_str(dir));
  if (files.empty()) throw IoError("no frame_*.csv files in " + path_str(dir));
  std::sort(files.begin(), files.end());

  std::vector<double> values;
  int rows = 0, cols = 0;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open: " + path_str(file));
    int file_rows = 0;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string tok;
      int file_cols = 0;
      while (std::getline(ss, tok, ',')) {
        values.push_back(std::stod(tok));
        ++file_cols;
      }
      if (cols == 0)
        cols = file_cols;
      else if (file_cols != cols)
        throw IoError("ragged rows in " + path_str(file));
      ++file_rows;
    }
    if (rows == 0)
      rows = file_rows;
    else if (file_rows != rows)
      throw IoError("frame size mismatch in " + path_str(file));
  }
  try {
    return FrameSequence::from_values(rows, cols, static_cast<int>(files.size()),
                                      std::move(values));
  } catch (const std::domain_error& e) {
    throw IoError(std::string("invalid frame data: ") + e.what());
  }
}

FrameSequence load_frames(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return read_frames_csv_dir(path);
  return read_frames(path);
}

void write_point_set(std::ostream& out, const PointSet& set) {
  for (const Point& p : set.points()) out << p.row << ' ' << p.col << '\n';
}

void write_point_set(const std::filesystem::path& file, const PointSet& set) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open for writing: " + path_str(file));
  write_point_set(out, set);
  if (!out) throw IoError("write failed: " + path_str(file));
}

PointSet read_point_set(std::istream& in, Lattice lat) {
  std::vector<Point> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    Point p;
    if (!(ss >> p.row >> p.col))
      throw IoError("malformed point at line " + std::to_string(lineno));
    if (!lat.contains(p.row, p.col))
      throw IoError("point outside lattice at line " + std::to_string(lineno));
    pts.push_back(p);
  }
  return PointSet(lat, pts);
}

PointSet read_point_set(const std::filesystem::path& file, Lattice lat) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open: " + path_str(file));
  return read_point_set(in, lat);
}

void write_scan_field_csv(std::ostream& out, const ScanField& field) {
  const char* orient = field.orientation() == Orientation::Horizontal ? "h" : "v";
  out << "orientation,slice,offset,row,col\n";
  for (int s = 1; s <= field.slice_count(); ++s)
    for (int r = 1; r <= field.slice_length(); ++r) {
      const Point p = field.entry(s, r);
      out << orient << ',' << s << ',' << r << ',' << p.row << ',' << p.col << '\n';
    }
}

void write_scan_field_csv(const std::filesystem::path& file, const ScanField& field) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open for writing: " + path_str(file));
  write_scan_field_csv(out, field);
  if (!out) throw IoError("write failed: " + path_str(file));
}

namespace {

void write_pgm(const std::filesystem::path& file, int rows, int cols,
               const std::vector<int>& gray) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open for writing: " + path_str(file));
  out << "P2\n" << cols << ' ' << rows << "\n255\n";
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j) out << ' ';
      out << gray[static_cast<std::size_t>(i) * cols + j];
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path_str(file));
}

}  // namespace

void write_pgm_mask(const std::filesystem::path& file, const PointSet& set) {
  const Lattice lat = set.lattice();
  std::vector<int> gray(lat.cell_count(), 0);
  for (std::uint32_t id : set.cells()) gray[id] = 255;
  write_pgm(file, lat.rows, lat.cols, gray);
}

void write_pgm_overlay(const std::filesystem::path& file, const PointSet& truth,
                       const PointSet& estimate) {
  if (!(truth.lattice() == estimate.lattice()))
    throw std::domain_error("write_pgm_overlay: lattice mismatch");
  const Lattice lat = truth.lattice();
  std::vector<int> gray(lat.cell_count(), 0);
  for (std::uint32_t id : truth.cells()) gray[id] = 128;
  for (std::uint32_t id : estimate.cells()) gray[id] = 255;
  write_pgm(file, lat.rows, lat.cols, gray);
}

void write_pgm_gray(const std::filesystem::path& file, int rows, int cols,
                    const std::vector<double>& values) {
  if (values.size() != static_cast<std::size_t>(rows) * cols)
    throw std::domain_error("write_pgm_gray: value count mismatch");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<int> gray(values.size(), 128);
  if (hi > lo) {
    for (std::size_t c = 0; c < values.size(); ++c)
      gray[c] = static_cast<int>(std::lround((values[c] - lo) / (hi - lo) * 255.0));
  }
  write_pgm(file, rows, cols, gray);
}

}  // namespace changeset
