#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dimtrunc/cli.hpp"
#include "dimtrunc/errors.hpp"
#include "dimtrunc/experiment.hpp"
#include "dimtrunc/tables.hpp"

using namespace dimtrunc;

namespace {

const char* kExperiment = R"({
  "measure": {"type": "uniform_sym"},
  "sequence": {"type": "power_law", "a": 2.0},
  "target": {"type": "fractional_wiener", "beta": 0.5},
  "mc": {"samples": 500, "ref_level": 1000, "seed": 12, "k_grid": [1, 2, 4]},
  "outputs": ["table", "json", "plotdata"]
})";

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("dimtrunc_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

std::string write_experiment(const TempDir& dir, const std::string& content) {
  const std::filesystem::path file = dir.path / "exp.json";
  std::ofstream out(file, std::ios::binary);
  out << content;
  out.close();
  return file.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cli(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  if (stdout_text) *stdout_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("experiment parsing") {
  const ExperimentSpec spec = parse_experiment_text(kExperiment);
  CHECK(spec.measure.kind == Measure::UniformSym);
  CHECK(spec.sequence.power_law);
  CHECK(spec.sequence.decay == 2.0);
  CHECK(spec.target.type == SweepTarget::Type::Kernel);
  CHECK(spec.target.kernel.kind == Kernel::FractionalWiener);
  CHECK(spec.mc.samples == 500);
  CHECK(spec.mc.k_grid == std::vector<long long>{1, 2, 4});
  CHECK(spec.outputs.size() == 3);

  CHECK_THROWS_AS(parse_experiment_text("{not json"), ArgumentError);
  CHECK_THROWS_AS(parse_experiment_text("{}"), ArgumentError);
  CHECK_THROWS_AS(
      parse_experiment_text(R"({"measure": {"type": "nope"}})"), ArgumentError);
  // k_grid reaching the surrogate depth is invalid.
  std::string bad = kExperiment;
  bad.replace(bad.find("[1, 2, 4]"), 9, "[1, 1000]");
  CHECK_THROWS_AS(parse_experiment_text(bad), ArgumentError);
}

TEST_CASE("experiment parsing covers every target family") {
  auto parse_target = [](const std::string& target) {
    std::string doc = kExperiment;
    const std::string from = R"({"type": "fractional_wiener", "beta": 0.5})";
    doc.replace(doc.find(from), from.size(), target);
    return parse_experiment_text(doc);
  };
  CHECK(parse_target(R"({"type": "r_folded", "r": 2, "mode": "unbounded"})")
            .target.fold_mode == FoldMode::Unbounded);
  CHECK(parse_target(R"({"type": "two_sided", "r": 3})").target.kernel.r == 3);
  const ExperimentSpec kor = parse_target(
      R"({"type": "korobov", "weight": {"type": "geometric", "q": 0.5}})");
  CHECK(kor.target.kernel.series_cap > 0);
  const ExperimentSpec her = parse_target(
      R"({"type": "hermite", "weight": {"type": "geometric", "q": 0.5},
          "tail_tol": 1e-8, "env_radius": 1.5, "mode": "bounded_exp"})");
  CHECK(her.target.kernel.kind == Kernel::Hermite);
  CHECK(her.target.hermite_mode == HermiteMode::BoundedExp);
  CHECK(parse_target(R"({"type": "holder", "C": 2.0, "beta": 0.75})")
            .target.holder.beta == 0.75);
  CHECK(parse_target(R"({"type": "gp_space", "p": 4})").target.holder.beta ==
        doctest::Approx(0.75));
  CHECK(parse_target(R"({"type": "gp_space", "p": "inf"})")
            .target.holder.beta == 1.0);
}

TEST_CASE("constants and bounds commands write tables") {
  TempDir dir("tables");
  const std::string exp = write_experiment(dir, kExperiment);

  std::string text;
  CHECK(cli({"constants", "--experiment", exp}, &text) == 0);
  CHECK(text.find("measure,quantity,order,value,lo,hi,kind") != std::string::npos);
  CHECK(text.find("uniform_sym") != std::string::npos);

  CHECK(cli({"bounds", "--experiment", exp, "--format", "json"}, &text) == 0);
  CHECK(text.find("\"formula_id\": \"ZERO_MEAN\"") != std::string::npos);

  CHECK(cli({"constants", "--experiment", exp, "--out", dir.path.string()}) == 0);
  CHECK(std::filesystem::exists(dir.path / "constants.csv"));
}

TEST_CASE("sweep outputs are byte-identical across worker counts") {
  TempDir dir("sweep");
  const std::string exp = write_experiment(dir, kExperiment);
  const std::string out1 = (dir.path / "w1").string();
  const std::string out8 = (dir.path / "w8").string();
  CHECK(cli({"sweep", "--experiment", exp, "--out", out1, "--workers", "1"}) == 0);
  CHECK(cli({"sweep", "--experiment", exp, "--out", out8, "--workers", "8"}) == 0);
  for (const char* name :
       {"sweep.csv", "sweep.json", "sweep_estimate.dat", "sweep_bound.dat"}) {
    const std::string a = slurp(std::filesystem::path(out1) / name);
    const std::string b = slurp(std::filesystem::path(out8) / name);
    REQUIRE(!a.empty());
    CHECK(a == b);
  }
  // Plot data carries (x, y, yerr) triples.
  std::istringstream plot(slurp(std::filesystem::path(out1) / "sweep_estimate.dat"));
  std::string line;
  int lines = 0;
  while (std::getline(plot, line)) {
    std::istringstream fields(line);
    double x, y, yerr;
    CHECK((fields >> x >> y >> yerr));
    ++lines;
  }
  CHECK(lines == 3);

  // A seed override changes the bytes.
  const std::string out_seeded = (dir.path / "seeded").string();
  CHECK(cli({"sweep", "--experiment", exp, "--out", out_seeded, "--seed",
             "999"}) == 0);
  CHECK(slurp(std::filesystem::path(out_seeded) / "sweep.csv") !=
        slurp(std::filesystem::path(out1) / "sweep.csv"));
}

TEST_CASE("exit codes") {
  TempDir dir("codes");

  // 2: unreadable or invalid experiment.
  CHECK(cli({"bounds", "--experiment", (dir.path / "missing.json").string()}) == 2);
  const std::string broken = write_experiment(dir, "{broken");
  CHECK(cli({"bounds", "--experiment", broken}) == 2);
  CHECK(cli({"definitely-not-a-subcommand"}) == 2);

  // 3: a bounded-sup form without a certified sup is refused.
  std::string refused = kExperiment;
  const std::string from = R"({"type": "fractional_wiener", "beta": 0.5})";
  refused.replace(refused.find(from), from.size(),
                  R"({"type": "r_folded", "r": 2, "mode": "bounded"})");
  refused.replace(refused.find(R"({"type": "uniform_sym"})"),
                  std::string(R"({"type": "uniform_sym"})").size(),
                  R"({"type": "exponential", "lambda": 1.0})");
  const std::string refused_path = write_experiment(dir, refused);
  CHECK(cli({"bounds", "--experiment", refused_path}) == 3);
}

TEST_CASE("verification negative control") {
  std::string text;
  CHECK(cli({"verify", "--only", "constants-closed-form"}, &text) == 0);
  CHECK(text.find("[pass] constants-closed-form") != std::string::npos);

  CHECK(cli({"verify", "--only", "constants-closed-form", "--tamper",
             "constants-closed-form"},
            &text) == 1);
  CHECK(text.find("[FAIL] constants-closed-form") != std::string::npos);

  CHECK(cli({"verify", "--only", "power-tail-bracket", "--tamper",
             "power-tail-bracket"},
            &text) == 1);
}
