#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "mmlink/cli.hpp"

using namespace mmlink;
namespace fs = std::filesystem;

namespace {

const char* kConfig = R"([link]
kind = u2u
snr_mode = normalized
ref_snr_db = 20
nakagami_m = 3

[antenna]
n_elements = 8
n_sectors = 20
sector_ref = mid

[tx]
theta_prime_mrad = 0
sigma_mrad = 30

[rx]
theta_prime_mrad = 0
sigma_mrad = 30

[run]
seed = 12
trials = 1000000
grid_points = 150
c_th = 10
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("mmlink_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

cli::CommonOptions make_opts(const fs::path& dir, const std::string& cfg_text) {
  const fs::path cfg_path = dir / "scenario.ini";
  std::ofstream(cfg_path) << cfg_text;
  cli::CommonOptions opts;
  opts.config_path = cfg_path.string();
  opts.out_dir = (dir / "out").string();
  return opts;
}

}  // namespace

TEST_CASE("curve command emits annotated csv plus manifest") {
  TempDir tmp("curve");
  const cli::CommonOptions opts = make_opts(tmp.path, kConfig);
  CHECK(cli::run_curve(opts) == 0);

  for (const char* name : {"curve_pdf.csv", "curve_cdf.csv"}) {
    const std::string text = slurp(fs::path(opts.out_dir) / name);
    CHECK(text.find("# config_hash=") != std::string::npos);
    CHECK(text.find(std::string("# version=") + cli::kVersion) !=
          std::string::npos);
    CHECK(text.find("# kind=u2u") != std::string::npos);
    CHECK(text.find("# zero_atom=") != std::string::npos);
    CHECK(text.find("gamma_linear,gamma_db,value\n") != std::string::npos);
    // 150 grid rows after the 5 header lines.
    CHECK(std::count(text.begin(), text.end(), '\n') == 155);
  }
  const std::string manifest = slurp(fs::path(opts.out_dir) / "run.json");
  CHECK(manifest.find("\"command\": \"curve\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 12") != std::string::npos);
  CHECK(manifest.find("curve_pdf.csv") != std::string::npos);
}

TEST_CASE("curve output is reproducible and seed-independent for analytic") {
  TempDir tmp("repro");
  cli::CommonOptions opts = make_opts(tmp.path, kConfig);
  CHECK(cli::run_curve(opts) == 0);
  const std::string first = slurp(fs::path(opts.out_dir) / "curve_cdf.csv");

  opts.out_dir = (tmp.path / "out2").string();
  CHECK(cli::run_curve(opts) == 0);
  CHECK(slurp(fs::path(opts.out_dir) / "curve_cdf.csv") == first);

  // The analytic evaluator ignores the seed entirely.
  opts.out_dir = (tmp.path / "out3").string();
  opts.seed = 999;
  CHECK(cli::run_curve(opts) == 0);
  CHECK(slurp(fs::path(opts.out_dir) / "curve_cdf.csv") == first);
}

TEST_CASE("outage sweep csv") {
  TempDir tmp("outage");
  // No threshold keys: gamma_th = 0, so every outage value is the atom.
  std::string cfg = kConfig;
  cfg.replace(cfg.find("c_th = 10"), 9, "");
  cli::CommonOptions opts = make_opts(tmp.path, cfg);
  cli::SweepAxis axis = cli::SweepAxis::parse("snr:0:20:10");
  CHECK(cli::run_outage(opts, axis) == 0);

  const std::string text = slurp(fs::path(opts.out_dir) / "outage.csv");
  CHECK(text.find("# sweep_var=snr_db") != std::string::npos);
  CHECK(text.find("sweep_var,p_out_analytic,p_out_mc,mc_stderr\n") !=
        std::string::npos);
  // Three sweep rows, constant outage equal to the zero atom.
  std::istringstream in(text.substr(text.find("sweep_var,")));
  std::string line;
  std::getline(in, line);
  double first_p = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    const auto comma = line.find(',');
    const double p = std::stod(line.substr(comma + 1));
    if (first_p < 0.0) {
      first_p = p;
    } else {
      CHECK(p == doctest::Approx(first_p).epsilon(1e-12));
    }
  }
  CHECK(rows == 3);
  CHECK(first_p > 0.0);
  CHECK(first_p < 0.1);
}

TEST_CASE("sweep axis parsing") {
  const cli::SweepAxis a = cli::SweepAxis::parse("sigma:10:30:10");
  CHECK(a.var == cli::SweepAxis::Var::sigma_mrad);
  CHECK(a.values().size() == 3);
  const cli::SweepAxis b = cli::SweepAxis::parse("n:4:12:4");
  CHECK(b.var == cli::SweepAxis::Var::n_elements);
  CHECK_THROWS(cli::SweepAxis::parse("bogus:1:2:1"));
  CHECK_THROWS(cli::SweepAxis::parse("snr"));
}

TEST_CASE("validate command passes on a matched scenario") {
  TempDir tmp("validate");
  cli::CommonOptions opts = make_opts(tmp.path, kConfig);
  CHECK(cli::run_validate(opts) == 0);

  const std::string text = slurp(fs::path(opts.out_dir) / "validate.csv");
  CHECK(text.find("gamma_linear,gamma_db,cdf_analytic,cdf_empirical,abs_diff") !=
        std::string::npos);

  // A different seed moves the empirical column but not the analytic one.
  const auto analytic_column = [](const std::string& csv) {
    std::istringstream in(csv.substr(csv.find("gamma_linear,")));
    std::string line;
    std::getline(in, line);
    std::string out;
    while (std::getline(in, line)) {
      std::size_t p = 0;
      for (int c = 0; c < 2; ++c) p = line.find(',', p) + 1;
      out += line.substr(p, line.find(',', p) - p);
      out += '\n';
    }
    return out;
  };
  opts.out_dir = (tmp.path / "out2").string();
  opts.seed = 777;
  CHECK(cli::run_validate(opts) == 0);
  const std::string text2 = slurp(fs::path(opts.out_dir) / "validate.csv");
  CHECK(text2 != text);
  CHECK(analytic_column(text2) == analytic_column(text));
}

TEST_CASE("optimal-n command") {
  TempDir tmp("optimal");
  std::string cfg = kConfig;
  cfg.replace(cfg.find("sector_ref = mid"), 16, "sector_ref = upper");
  cli::CommonOptions opts = make_opts(tmp.path, cfg);
  const cli::SweepAxis axis = cli::SweepAxis::parse("snr:20:30:10");
  CHECK(cli::run_optimal_n(opts, 2, 24, axis) == 0);

  const std::string text = slurp(fs::path(opts.out_dir) / "optimal_n.csv");
  CHECK(text.find("# sweep_var=snr_db") != std::string::npos);
  CHECK(text.find("sweep_var,n_opt_analytic,p_out_analytic,n_opt_mc,p_out_mc") !=
        std::string::npos);
  // sigma = 30 mrad: the optimum drops from 8 at 20 dB to 6 at 30 dB.
  CHECK(text.find("\n20,8,") != std::string::npos);
  CHECK(text.find("\n30,6,") != std::string::npos);
}
