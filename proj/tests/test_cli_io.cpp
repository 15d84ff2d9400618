#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <bit>
#include <cmath>
#include <random>

#include "dispersmooth/config.hpp"
#include "dispersmooth/error.hpp"
#include "dispersmooth/experiments.hpp"
#include "dispersmooth/io.hpp"
#include "test_support.hpp"

using namespace dispersmooth;
namespace fs = std::filesystem;

namespace {

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dispersmooth_cli_io_" + name);
  fs::remove_all(p);
  return p;
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

SystemState sample_state(int d, int n, std::uint64_t seed) {
  const Grid g = Grid::make(d, n, 1.5);
  SystemState s{System::zakharov, dispersmooth::testing::smooth_field(g, 3, 1.0, seed),
                dispersmooth::testing::smooth_field(g, 3, 0.5, seed + 1),
                dispersmooth::testing::smooth_field(g, 3, 0.25, seed + 2), 0.375};
  return s;
}

}  // namespace

TEST(Config, MinimalDocumentGetsDefaults) {
  const RunConfig c = parse_config("experiment = simulate\n");
  EXPECT_EQ(c.experiment, Experiment::simulate);
  EXPECT_EQ(c.dt, 1e-2);
  EXPECT_EQ(c.b, 0.55);
  EXPECT_EQ(c.box_length, 1.0);
  EXPECT_EQ(c.system, System::kgs);
}

TEST(Config, SectionsCommentsAndLists) {
  const RunConfig c = parse_config(
      "# header comment\n"
      "experiment = counterexample\n"
      "d = 2\n"
      "[regularity]\n"
      "alpha = 0.75   # trailing\n"
      "; another comment\n"
      "[counterexample]\n"
      "N = 8, 16,32\n"
      "[run]\n"
      "seed = 18446744073709551615\n");
  EXPECT_EQ(c.experiment, Experiment::counterexample);
  EXPECT_EQ(c.alpha, 0.75);
  EXPECT_EQ(c.N_values, (std::vector<double>{8, 16, 32}));
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
}

TEST(Config, HypothesisViolationNamesInequality) {
  const std::string msg = message_of("system = kgs\nd = 2\n[regularity]\ns = -1\n");
  EXPECT_NE(msg.find("s > -1/4"), std::string::npos) << msg;
  EXPECT_THROW(parse_config("[regularity]\ns = -1\n"), AdmissibilityError);
}

TEST(Config, UnknownKeyAndSectionNamed) {
  std::string msg = message_of("experiment = simulate\nfrobnicate = 3\n");
  EXPECT_NE(msg.find("frobnicate"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  msg = message_of("[nowhere]\n");
  EXPECT_NE(msg.find("nowhere"), std::string::npos) << msg;
  msg = message_of("[integrator]\ndt = 1e-3\nscheme = euler\n");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("integrator.scheme"), std::string::npos) << msg;
}

TEST(Config, SyntaxErrorsCarryLineNumbers) {
  EXPECT_NE(message_of("d = 2\n\njust words\n").find("line 3"), std::string::npos);
  EXPECT_NE(message_of("[run\n").find("line 1"), std::string::npos);
  EXPECT_NE(message_of("d =\n").find("line 1"), std::string::npos);
  EXPECT_NE(message_of("d = two\n").find("line 1"), std::string::npos);
  EXPECT_NE(message_of("d = 2\nd = 3\n").find("duplicate"), std::string::npos);
}

TEST(Config, ValidationNamesField) {
  EXPECT_NE(message_of("n_per_dim = 24\n").find("run.n_per_dim"), std::string::npos);
  EXPECT_NE(message_of("[integrator]\ndt = 0\n").find("integrator.dt"), std::string::npos);
  EXPECT_NE(message_of("experiment = highlow\nsystem = zakharov\n").find("run.system"),
            std::string::npos);
  EXPECT_NE(message_of("experiment = resonance-geometry\n[resonance]\nlemma_alpha = 0.9\n")
                .find("alpha > 1"),
            std::string::npos);
  EXPECT_NE(message_of("experiment = smoothing-scan\n[regularity]\nalpha = 0.6\n")
                .find("regularity.alpha"),
            std::string::npos);
}

TEST(Config, RenderParsesBack) {
  RunConfig c;
  c.experiment = Experiment::attractor;
  c.dt = 0.1 + 0.2;
  c.gamma = 1.0 / 3.0;
  c.N_values = {3.5, 7.25};
  c.out_dir = "some/dir";
  c.xsb_adversarial = false;
  const RunConfig back = parse_config(render_config(c));
  EXPECT_EQ(config_echo(back), config_echo(c));
  EXPECT_EQ(back.dt, c.dt);
  EXPECT_EQ(back.gamma, c.gamma);
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_THROW(load_config("/nonexistent/dir/run.cfg"), IoError);
}

TEST(Io, SeventeenDigitsRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 2000; ++i) {
    double x = std::bit_cast<double>(bits(rng));
    if (!std::isfinite(x)) continue;
    const double back = std::strtod(format_double(x).c_str(), nullptr);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back), std::bit_cast<std::uint64_t>(x));
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(NAN), "nan");
}

TEST(Io, CsvRowWidthChecked) {
  CsvTable t{{"a", "b"}, {}};
  t.add_row({"1", "2"});
  EXPECT_THROW(t.add_row({"1"}), ShapeError);
  EXPECT_EQ(t.render(), "a,b\n1,2\n");
}

TEST(Checkpoint, HeaderLayoutAndCoefficientOrder) {
  const Grid g = Grid::make(2, 8, 1.5);
  SystemState s{System::kgs, SpectralField(g), SpectralField(g), SpectralField(g), 2.5};
  s.u[g.flat_index({-4, -4, 0, 0})] = Complex(1.25, -2.0);
  s.u[g.flat_index({-4, -3, 0, 0})] = Complex(3.0, 0.0);
  s.wminus[g.flat_index({3, 3, 0, 0})] = Complex(0.0, 7.0);
  const std::vector<unsigned char> b = encode_checkpoint(s);
  ASSERT_EQ(b.size(), 4u + 4 + 1 + 1 + 4 + 8 + 8 + 3 * 64 * 16);
  EXPECT_EQ(std::memcmp(b.data(), "ZKGS", 4), 0);
  EXPECT_EQ(b[4], 1);
  EXPECT_EQ(b[5] | b[6] | b[7], 0);
  EXPECT_EQ(b[8], 0);
  EXPECT_EQ(b[9], 2);
  EXPECT_EQ(b[10], 8);
  auto f64_at = [&](std::size_t off) {
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= std::uint64_t{b[off + i]} << (8 * i);
    return std::bit_cast<double>(x);
  };
  EXPECT_EQ(f64_at(14), 1.5);
  EXPECT_EQ(f64_at(22), 2.5);
  EXPECT_EQ(f64_at(30), 1.25);
  EXPECT_EQ(f64_at(38), -2.0);
  EXPECT_EQ(f64_at(46), 3.0);
  EXPECT_EQ(f64_at(b.size() - 8), 7.0);
}

TEST(Checkpoint, RoundTripIsBitExact) {
  for (int d : {1, 2, 3}) {
    const SystemState s = sample_state(d, d == 3 ? 8 : 16, 5 + d);
    const SystemState back = decode_checkpoint(encode_checkpoint(s));
    EXPECT_EQ(back.system, s.system);
    EXPECT_EQ(back.t, s.t);
    EXPECT_TRUE(back.u == s.u);
    EXPECT_TRUE(back.wplus == s.wplus);
    EXPECT_TRUE(back.wminus == s.wminus);
  }
  const fs::path dir = scratch("roundtrip");
  fs::create_directories(dir);
  const SystemState s = sample_state(2, 16, 3);
  save_checkpoint(s, (dir / "a.zkgs").string());
  const SystemState back = load_checkpoint((dir / "a.zkgs").string());
  EXPECT_TRUE(back.u == s.u && back.wplus == s.wplus && back.wminus == s.wminus);
  fs::remove_all(dir);
}

TEST(Checkpoint, MalformedFilesRejected) {
  const std::vector<unsigned char> good = encode_checkpoint(sample_state(2, 8, 9));
  auto bad = good;
  bad[0] = 'X';
  EXPECT_THROW(decode_checkpoint(bad), FormatError);
  bad = good;
  bad[4] = 2;
  try {
    decode_checkpoint(bad);
    FAIL() << "version bump accepted";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
  bad = good;
  bad.resize(good.size() - 1);
  EXPECT_THROW(decode_checkpoint(bad), FormatError);
  bad.resize(10);
  EXPECT_THROW(decode_checkpoint(bad), FormatError);
  bad = good;
  bad.push_back(0);
  EXPECT_THROW(decode_checkpoint(bad), FormatError);
  bad = good;
  bad[8] = 7;
  EXPECT_THROW(decode_checkpoint(bad), FormatError);
  EXPECT_THROW(decode_checkpoint({}), FormatError);
  EXPECT_THROW(load_checkpoint("/nonexistent/x.zkgs"), IoError);
}

TEST(Outputs, SimulateIsByteIdenticalAcrossRuns) {
  RunConfig c = parse_config(
      "experiment = simulate\nn_per_dim = 16\n[integrator]\nt_end = 0.1\nrecord_every = 2\n");
  c.out_dir = scratch("det_a").string();
  const auto first = write_outputs(run_experiment(c), c, 1.0);
  c.out_dir = scratch("det_b").string();
  const auto second = write_outputs(run_experiment(c), c, 2.0);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (fs::path(first[i]).filename() == "manifest.json") continue;
    EXPECT_EQ(read_bytes(first[i]), read_bytes(second[i])) << first[i];
  }
  const std::string ts = read_bytes((fs::path(c.out_dir) / "timeseries.csv").string());
  EXPECT_EQ(ts.substr(0, ts.find('\n')), "step,t,mass,hamiltonian,Hs_u,Hr_wplus,Hr_wminus");
  EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / "final.zkgs"));
  const std::string manifest = read_bytes((fs::path(c.out_dir) / "manifest.json").string());
  EXPECT_NE(manifest.find("\"integrator.dt\": \"0.01\""), std::string::npos);
  EXPECT_NE(manifest.find("wall_time_seconds"), std::string::npos);
  fs::remove_all(scratch("det_a"));
  fs::remove_all(scratch("det_b"));
}

TEST(Outputs, UnwritableDirectoryNamesPath) {
  RunConfig c;
  c.out_dir = "/proc/dispersmooth_cannot_write_here";
  ExperimentReport rep;
  rep.tables.emplace_back("x.csv", CsvTable{{"a"}, {}});
  try {
    write_outputs(rep, c, 0.0);
    FAIL() << "no error";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(c.out_dir), std::string::npos);
  }
}

TEST(Experiments, EverySubcommandRunsAtToyScale) {
  const char* docs[] = {
      "experiment = smoothing-scan\nn_per_dim = 16\n[integrator]\ndt = 1e-2\nt_end = 0.1\n"
      "[smoothing]\nensemble = 2\nprobe_every = 5\n",
      "experiment = counterexample\n[regularity]\nalpha = 0.75\n[counterexample]\nN = 4,8\n"
      "resolution = 3\n",
      "experiment = highlow\nn_per_dim = 16\n[regularity]\ns = 0.8\nr = 0.8\n[highlow]\n"
      "delta = 0.05\nT = 0.2\n[integrator]\ndt = 0.01\n",
      "experiment = attractor\nn_per_dim = 16\n[integrator]\ndt = 0.05\nt_end = 2\n",
      "experiment = xsb-constant\n[xsb]\nxi_points = 8\ntime_modes = 8\nensemble = 2\n"
      "adversarial = false\n",
      "experiment = resonance-geometry\n[resonance]\ntriples = 100\nshell_points = 50\n",
  };
  const char* files[] = {"scan.csv", "counterexample.csv", "highlow.csv",
                         "attractor.csv", "xsb.csv", "triples.csv"};
  for (int i = 0; i < 6; ++i) {
    const RunConfig c = parse_config(docs[i]);
    const ExperimentReport rep = run_experiment(c);
    ASSERT_FALSE(rep.tables.empty()) << docs[i];
    EXPECT_EQ(rep.tables.front().first, files[i]);
    EXPECT_FALSE(rep.tables.front().second.rows.empty()) << docs[i];
  }
}

TEST(Experiments, HighLowWindowCapRejectedBeforeRunning) {
  const RunConfig c = parse_config("experiment = highlow\n[highlow]\nT = 10\n");
  EXPECT_THROW(run_experiment(c), ConfigError);
}
