// Command-line harness: runs the instability experiments and exposes the
// OT/MOT solvers over measure files. Exit codes: 0 when the verdict is true
// or the solve succeeded, 1 on a false verdict or solver failure, 2 on usage
// errors.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "motlab/constructions.hpp"
#include "motlab/experiments.hpp"
#include "motlab/measure.hpp"
#include "motlab/report.hpp"
#include "motlab/transport.hpp"

namespace {

void write_text(const std::string &text, const std::string &out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << text;
}

int emit_report(const motlab::ExperimentReport &report, const std::string &format,
                const std::string &out_path) {
  if (format == "json")
    write_text(report.to_json_string(), out_path);
  else if (format == "csv")
    write_text(report.to_csv(), out_path);
  else
    throw std::runtime_error("unknown format '" + format + "'");
  return report.verdict ? 0 : 1;
}

std::pair<motlab::DiscreteMeasure, motlab::DiscreteMeasure> load_pair(
    const std::vector<std::string> &files) {
  return {motlab::load_measure(files.at(0)), motlab::load_measure(files.at(1))};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"optimal transport and martingale optimal transport toolkit"};
  app.require_subcommand(1);

  int nmax = 10, m = 3, n = 3, grid = 2;
  double eps = 0.3;
  std::uint64_t seed = 7;
  std::string norm = "euclidean", format = "json", out_path;
  std::vector<std::string> measure_files;

  auto add_report_flags = [&](CLI::App *cmd) {
    cmd->add_option("--out", out_path, "write the report to this path instead of stdout");
    cmd->add_option("--format", format, "output format: json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App *stability = app.add_subcommand(
      "stability", "value and minimizer instability along the split sequence");
  stability->add_option("--nmax", nmax, "largest split index (>= 2)");
  stability->add_option("--seed", seed, "seed for the uniqueness probes");
  add_report_flags(stability);

  CLI::App *ratio =
      app.add_subcommand("ratio", "martingale-to-plain transport cost ratio blow-up");
  ratio->add_option("--nmax", nmax, "largest family index (>= 2)");
  ratio->add_option("--norm", norm, "cost norm: euclidean, l1, linf")
      ->check(CLI::IsMember({"euclidean", "l1", "linf"}));
  add_report_flags(ratio);

  CLI::App *lemma2 =
      app.add_subcommand("lemma2", "chord bound on the distance between step measures");
  lemma2->add_option("--m", m, "number of source atoms");
  add_report_flags(lemma2);

  CLI::App *variants =
      app.add_subcommand("variants", "parallelogram and mixture variants of the family");
  variants->add_option("--m", m, "number of source atoms");
  variants->add_option("--n", n, "angle index (theta = pi/2n)");
  variants->add_option("--grid", grid, "lattice resolution per axis");
  variants->add_option("--eps", eps, "mixture weight in (0,1)");
  add_report_flags(variants);

  auto add_solve_flags = [&](CLI::App *cmd, bool with_norm) {
    cmd->add_option("--measure-file", measure_files,
                    "measure JSON file; pass twice (source, then target)")
        ->expected(2)
        ->required();
    if (with_norm)
      cmd->add_option("--norm", norm, "cost norm: euclidean, l1, linf")
          ->check(CLI::IsMember({"euclidean", "l1", "linf"}));
    cmd->add_option("--out", out_path, "write the optimal coupling JSON to this path");
  };

  CLI::App *solve_ot =
      app.add_subcommand("solve-ot", "optimal transport value between two measures");
  add_solve_flags(solve_ot, true);
  CLI::App *solve_mot = app.add_subcommand(
      "solve-mot", "martingale optimal transport value between two measures");
  add_solve_flags(solve_mot, true);
  CLI::App *check_order = app.add_subcommand(
      "check-order", "whether the measures admit a martingale coupling (convex order)");
  add_solve_flags(check_order, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(stability))
      return emit_report(motlab::run_stability(nmax, seed), format, out_path);
    if (app.got_subcommand(ratio))
      return emit_report(
          motlab::run_ratio(nmax, motlab::CostSpec{motlab::parse_norm(norm)}), format,
          out_path);
    if (app.got_subcommand(lemma2))
      return emit_report(motlab::run_lemma2(m, motlab::default_theta_grid()), format,
                         out_path);
    if (app.got_subcommand(variants))
      return emit_report(motlab::run_variants(m, n, grid, eps), format, out_path);

    const motlab::CostSpec cost{motlab::parse_norm(norm)};
    if (app.got_subcommand(solve_ot) || app.got_subcommand(solve_mot)) {
      const auto [mu, nu] = load_pair(measure_files);
      const motlab::TransportResult result = app.got_subcommand(solve_ot)
                                                 ? motlab::ot_value(mu, nu, cost)
                                                 : motlab::mot_value(mu, nu, cost);
      std::cout << motlab::format_double(result.value) << "\n";
      if (!out_path.empty())
        motlab::save_coupling(result.plan, out_path);
      return 0;
    }
    if (app.got_subcommand(check_order)) {
      const auto [mu, nu] = load_pair(measure_files);
      const bool in_order = motlab::check_convex_order(mu, nu);
      std::cout << (in_order ? "true" : "false") << "\n";
      return in_order ? 0 : 1;
    }
  } catch (const motlab::NotInConvexOrder &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
