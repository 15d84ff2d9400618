#include "dispersmooth/io.hpp"

#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "dispersmooth/error.hpp"

#ifndef DISPERSMOOTH_VERSION
#define DISPERSMOOTH_VERSION "unknown"
#endif

namespace dispersmooth {

namespace {

void put_u32(std::vector<unsigned char>& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(x >> (8 * i)));
}

void put_f64(std::vector<unsigned char>& out, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  void need(std::size_t count, const char* what) const {
    if (bytes_.size() - pos_ < count) {
      throw FormatError(std::string("checkpoint truncated while reading ") + what);
    }
  }
  std::uint8_t u8(const char* what) {
    need(1, what);
    return bytes_[pos_++];
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x |= std::uint32_t{bytes_[pos_++]} << (8 * i);
    return x;
  }
  double f64(const char* what) {
    need(8, what);
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= std::uint64_t{bytes_[pos_++]} << (8 * i);
    return std::bit_cast<double>(x);
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 0;
};

/// Flat storage indices visited in ascending-wavenumber row-major order.
std::vector<std::size_t> ascending_order(const Grid& grid) {
  const int d = grid.dim();
  const int n = grid.n_per_dim();
  std::vector<std::size_t> order;
  order.reserve(grid.size());
  LatticeIndex j{};
  for (std::size_t count = 0; count < grid.size(); ++count) {
    LatticeIndex k{};
    for (int a = 0; a < d; ++a) k[a] = j[a] - n / 2;
    order.push_back(grid.flat_index(k));
    for (int a = d - 1; a >= 0; --a) {
      if (++j[a] < n) break;
      j[a] = 0;
    }
  }
  return order;
}

std::string io_message(const char* what, const std::string& path) {
  return std::string(what) + ": " + path + " (" + std::strerror(errno) + ")";
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw ShapeError("csv row has " + std::to_string(row.size()) + " cells, header has " +
                     std::to_string(header.size()));
  }
  rows.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(io_message("cannot open for writing", path));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError(io_message("write failed", path));
}

void write_csv(const std::string& path, const CsvTable& table) { write_text(path, table.render()); }

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec || !std::filesystem::is_directory(path)) {
    throw IoError("cannot create directory: " + path + (ec ? " (" + ec.message() + ")" : ""));
  }
}

std::uint8_t system_id(System system) { return system == System::kgs ? 0 : 1; }

std::vector<unsigned char> encode_checkpoint(const SystemState& state) {
  const Grid& g = state.u.grid();
  require_same_grid(g, state.wplus.grid(), "checkpoint w+");
  require_same_grid(g, state.wminus.grid(), "checkpoint w-");
  std::vector<unsigned char> out(std::begin(kCheckpointMagic), std::end(kCheckpointMagic));
  put_u32(out, kCheckpointVersion);
  out.push_back(system_id(state.system));
  out.push_back(static_cast<unsigned char>(g.dim()));
  put_u32(out, static_cast<std::uint32_t>(g.n_per_dim()));
  put_f64(out, g.box_length());
  put_f64(out, state.t);
  const std::vector<std::size_t> order = ascending_order(g);
  out.reserve(out.size() + 3 * 16 * g.size());
  for (const SpectralField* f : {&state.u, &state.wplus, &state.wminus}) {
    for (std::size_t i : order) {
      put_f64(out, (*f)[i].real());
      put_f64(out, (*f)[i].imag());
    }
  }
  return out;
}

SystemState decode_checkpoint(const std::vector<unsigned char>& bytes) {
  Reader in(bytes);
  in.need(4, "magic");
  if (std::memcmp(bytes.data(), kCheckpointMagic, 4) != 0) {
    throw FormatError("not a checkpoint: magic bytes differ from ZKGS");
  }
  for (int i = 0; i < 4; ++i) in.u8("magic");
  const std::uint32_t version = in.u32("version");
  if (version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version) +
                      " (expected " + std::to_string(kCheckpointVersion) + ")");
  }
  const std::uint8_t sys = in.u8("system id");
  if (sys > 1) throw FormatError("unknown system id " + std::to_string(sys));
  const int d = in.u8("dimension");
  const std::uint32_t n = in.u32("n_per_dim");
  const double L = in.f64("box_length");
  const double t = in.f64("time");

  Grid grid = Grid::make(1, 8);
  try {
    grid = Grid::make(d, static_cast<int>(n), L);
  } catch (const ConfigError& e) {
    throw FormatError(std::string("checkpoint grid is invalid: ") + e.what());
  }
  const std::size_t expected = 3 * 16 * grid.size();
  if (in.remaining() < expected) throw FormatError("checkpoint truncated in coefficient data");
  if (in.remaining() > expected) throw FormatError("checkpoint has trailing bytes");

  const std::vector<std::size_t> order = ascending_order(grid);
  SystemState state{sys == 0 ? System::kgs : System::zakharov, SpectralField(grid),
                    SpectralField(grid), SpectralField(grid), t};
  for (SpectralField* f : {&state.u, &state.wplus, &state.wminus}) {
    for (std::size_t i : order) {
      const double re = in.f64("coefficients");
      const double im = in.f64("coefficients");
      (*f)[i] = Complex(re, im);
    }
  }
  return state;
}

void save_checkpoint(const SystemState& state, const std::string& path) {
  const std::vector<unsigned char> bytes = encode_checkpoint(state);
  write_text(path, std::string(bytes.begin(), bytes.end()));
}

SystemState load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(io_message("cannot open checkpoint", path));
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(io_message("cannot read checkpoint", path));
  try {
    return decode_checkpoint(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

const char* code_version() { return DISPERSMOOTH_VERSION; }

}  // namespace dispersmooth
