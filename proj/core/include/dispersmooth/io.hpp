#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dispersmooth/evolution.hpp"

namespace dispersmooth {

/// 17 significant digits ("%.17g"), so every double survives a text round trip.
/// Non-finite values print as nan, inf, -inf.
std::string format_double(double x);

/// A CSV file held in memory: one header row, then string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Appends a row. Throws ShapeError when the width differs from the header.
  void add_row(std::vector<std::string> row);
  std::string render() const;
};

/// Writes the table with '\n' line endings. Throws IoError naming the path.
void write_csv(const std::string& path, const CsvTable& table);

/// Writes text verbatim. Throws IoError naming the path.
void write_text(const std::string& path, const std::string& text);

/// Creates the directory and its parents. Throws IoError naming the path.
void ensure_directory(const std::string& path);

inline constexpr char kCheckpointMagic[4] = {'Z', 'K', 'G', 'S'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

/// 0 for KGS, 1 for Zakharov.
std::uint8_t system_id(System system);

/// Layout (all little endian):
///   "ZKGS", u32 version, u8 system, u8 d, u32 n_per_dim, f64 box_length, f64 t,
///   then (re, im) f64 pairs of u, w+, w- in turn, each in row-major lattice
///   order with every wavenumber running upward from -n/2 to n/2 - 1.
std::vector<unsigned char> encode_checkpoint(const SystemState& state);

/// Inverse of encode_checkpoint. Throws FormatError on a wrong magic,
/// an unsupported version, an unknown system id, a bad grid or a size mismatch.
SystemState decode_checkpoint(const std::vector<unsigned char>& bytes);

void save_checkpoint(const SystemState& state, const std::string& path);
/// Throws IoError when the file cannot be read, FormatError when malformed.
SystemState load_checkpoint(const std::string& path);

/// Library version string.
const char* code_version();

}  // namespace dispersmooth
