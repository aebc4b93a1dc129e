#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "changeset/lattice.hpp"
#include "changeset/scan.hpp"
#include "changeset/slicing.hpp"

namespace changeset {

/// File-system and format failures; the CLI maps these to exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frame container: little-endian header (magic 'CSF1', m, n, d as u32)
/// followed by d*m*n little-endian f64 values, frame-major then row-major.
void write_frames(const std::filesystem::path& file, const FrameSequence& seq);
FrameSequence read_frames(const std::filesystem::path& file);

/// Interop directory layout: frame_000001.csv .. frame_<d>.csv, each m rows
/// of n comma-separated values.
void write_frames_csv_dir(const std::filesystem::path& dir, const FrameSequence& seq);
FrameSequence read_frames_csv_dir(const std::filesystem::path& dir);

/// Directory -> CSV layout, file -> binary.
FrameSequence load_frames(const std::filesystem::path& path);

/// Point sets as text: one "i j" pair per line, 1-based, row-major order.
void write_point_set(const std::filesystem::path& file, const PointSet& set);
void write_point_set(std::ostream& out, const PointSet& set);
PointSet read_point_set(const std::filesystem::path& file, Lattice lat);
PointSet read_point_set(std::istream& in, Lattice lat);

/// Scan-field dump: "orientation,slice,offset,row,col" rows, sentinels with
/// col=0 (row=0 for vertical fields).
void write_scan_field_csv(std::ostream& out, const ScanField& field);
void write_scan_field_csv(const std::filesystem::path& file, const ScanField& field);

/// ASCII P2 graymaps. Masks use 0 = background, 255 = set; the overlay adds
/// 128 for truth-only pixels.
void write_pgm_mask(const std::filesystem::path& file, const PointSet& set);
void write_pgm_overlay(const std::filesystem::path& file, const PointSet& truth,
                       const PointSet& estimate);
/// Values min-max normalized onto 0..255; constant input renders mid-gray.
void write_pgm_gray(const std::filesystem::path& file, int rows, int cols,
                    const std::vector<double>& values);

}  // namespace changeset
