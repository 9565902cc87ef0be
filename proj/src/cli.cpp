#include "dimtrunc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "dimtrunc/errors.hpp"
#include "dimtrunc/estimators.hpp"
#include "dimtrunc/experiment.hpp"
#include "dimtrunc/tables.hpp"
#include "dimtrunc/verify.hpp"

namespace dimtrunc {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("cannot write " + path.string());
  out << content;
}

struct CommonFlags {
  std::string experiment;
  std::string out_dir;
  std::string format = "csv";
  unsigned workers = 0;
  std::optional<std::uint64_t> seed;
};

ExperimentSpec load(const CommonFlags& flags) {
  if (flags.experiment.empty()) {
    throw ArgumentError("an --experiment file is required");
  }
  ExperimentSpec spec = load_experiment_file(flags.experiment);
  if (flags.seed.has_value()) spec.mc.seed = *flags.seed;
  return spec;
}

// Emit a rendered table to --out/<name> or stdout.
void deliver(const CommonFlags& flags, const std::string& filename,
             const std::string& content, std::ostream& out) {
  if (flags.out_dir.empty()) {
    out << content;
    return;
  }
  std::filesystem::create_directories(flags.out_dir);
  write_file(std::filesystem::path(flags.out_dir) / filename, content);
}

int cmd_constants(const CommonFlags& flags, std::ostream& out) {
  const ExperimentSpec spec = load(flags);
  const std::string table =
      flags.format == "json"
          ? constants_table_json(spec.measure, spec.constants_m_max,
                                 spec.constants_r_max)
          : constants_table_csv(spec.measure, spec.constants_m_max,
                                spec.constants_r_max);
  deliver(flags, flags.format == "json" ? "constants.json" : "constants.csv",
          table, out);
  return 0;
}

int cmd_bounds(const CommonFlags& flags, std::ostream& out) {
  const ExperimentSpec spec = load(flags);
  const std::string table = flags.format == "json" ? bounds_table_json(spec)
                                                   : bounds_table_csv(spec);
  deliver(flags, flags.format == "json" ? "bounds.json" : "bounds.csv", table,
          out);
  return 0;
}

int cmd_sweep(const CommonFlags& flags, std::ostream& out) {
  const ExperimentSpec spec = load(flags);
  const std::vector<SweepRow> rows =
      sweep(spec.target, spec.measure, spec.sequence, spec.mc, flags.workers);
  std::optional<DecayFit> fit;
  int positive = 0;
  for (const SweepRow& row : rows) {
    if (row.k >= 1 && row.estimate.value > 0.0) ++positive;
  }
  if (positive >= 3) fit = fit_decay_rate(rows);

  for (const std::string& output : spec.outputs) {
    if (output == "table") {
      deliver(flags, "sweep.csv", sweep_table_csv(spec, rows, fit), out);
    } else if (output == "json") {
      deliver(flags, "sweep.json", sweep_table_json(spec, rows, fit), out);
    } else if (output == "plotdata") {
      deliver(flags, "sweep_estimate.dat", sweep_plotdata_estimate(rows), out);
      deliver(flags, "sweep_bound.dat", sweep_plotdata_bound(rows), out);
    }
  }
  return 0;
}

int cmd_verify(const CommonFlags& flags, const std::string& tamper,
               const std::string& only, std::ostream& out) {
  VerifyOptions options;
  options.workers = flags.workers;
  options.tamper = tamper;
  options.only = only;
  const VerifyReport report = run_verification(options, &out);
  out << (report.all_passed ? "VERIFY PASS" : "VERIFY FAIL") << " ("
      << format_double(report.total_seconds) << "s)\n";
  return report.all_passed ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Dimension-truncation error bounds and their Monte Carlo "
               "verification"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string tamper;
  std::string only;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_experiment) {
    if (needs_experiment) {
      cmd->add_option("--experiment", flags.experiment,
                      "experiment description file (JSON)");
    }
    cmd->add_option("--out", flags.out_dir,
                    "output directory (stdout when omitted)");
    cmd->add_option("--workers", flags.workers,
                    "sampling worker threads (0 = auto)");
    cmd->add_option("--format", flags.format, "table format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", seed_value, "override the experiment seed")
        ->each([&](const std::string&) { flags.seed = seed_value; });
  };

  CLI::App* constants = app.add_subcommand(
      "constants", "moment and combinatorial constants of a measure");
  add_common(constants, true);
  CLI::App* bounds = app.add_subcommand(
      "bounds", "theoretical truncation-error bounds over the k grid");
  add_common(bounds, true);
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Monte Carlo estimates against bounds over the k grid");
  add_common(sweep_cmd, true);
  CLI::App* verify = app.add_subcommand(
      "verify", "run the full verification battery");
  add_common(verify, false);
  verify
      ->add_option("--tamper", tamper,
                   "sabotage the named check (negative control)")
      ->group("");  // hidden: test hook
  verify->add_option("--only", only, "run a single named check")
      ->group("");  // hidden: test hook

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (constants->parsed()) return cmd_constants(flags, out);
    if (bounds->parsed()) return cmd_bounds(flags, out);
    if (sweep_cmd->parsed()) return cmd_sweep(flags, out);
    if (verify->parsed()) return cmd_verify(flags, tamper, only, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionRefused& e) {
    err << "refused: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

}  // namespace dimtrunc
