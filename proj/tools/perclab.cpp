// perclab: batch driver for the percolation experiments.
// Exit codes: 0 all checks pass, 1 a tolerance check failed, 2 usage or configuration error.

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "perclab/config.hpp"
#include "perclab/experiments.hpp"
#include "perclab/plot.hpp"

namespace {

using namespace perclab;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 0;
  std::optional<double> tol;
};

void add_common(CLI::App* sub, Common& c, bool needs_config) {
  auto* opt = sub->add_option("--config", c.config, "INI experiment file");
  if (needs_config) opt->required();
  sub->add_option("--seed", c.seed, "RNG seed (overrides the config)");
  sub->add_option("--out", c.out, "output file (CSV, or SVG for plot); stdout when omitted");
  sub->add_option("--threads", c.threads, "OpenMP worker count")->check(CLI::PositiveNumber);
  sub->add_option("--tol", c.tol, "tolerance override")->check(CLI::PositiveNumber);
}

Config load_config(const Common& c) { return c.config.empty() ? Config{} : Config::load(c.config); }

int emit(const Report& rep, const Common& c) {
  if (c.out.empty()) {
    rep.table.write_csv(std::cout);
  } else {
    std::ofstream os(c.out);
    if (!os) throw ConfigError("cannot write " + c.out);
    rep.table.write_csv(os);
  }
  rep.write_summary(std::cerr);
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layered last-passage percolation: simulation, Fredholm gap probabilities and kernel limits"};
  app.require_subcommand(1);
  Common c;

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo joint CDF, optionally against the Fredholm law");
  add_common(simulate, c, true);
  auto* gap = app.add_subcommand("gap", "Fredholm gap probabilities on a threshold grid");
  add_common(gap, c, true);
  auto* kernel = app.add_subcommand("kernel-eval", "Pointwise kernel values from both backends");
  add_common(kernel, c, true);

  auto* converge = app.add_subcommand("converge", "Error ladder of a scaled kernel against its limit");
  add_common(converge, c, false);
  std::string limit, ladder;
  converge->add_option("--limit", limit, "hard-edge | truncated-unitary | hard-to-soft | critical")->required();
  converge->add_option("--ladder", ladder, "comma separated rungs, fields joined by ':'")->required();

  auto* rsk = app.add_subcommand("rsk-check", "RSK first row against the last-passage time");
  add_common(rsk, c, false);
  int arrays = 1000, rows = 3, cols = 5;
  rsk->add_option("--arrays", arrays, "number of random arrays");
  rsk->add_option("--rows", rows, "rows n");
  rsk->add_option("--cols", cols, "columns (at least rows)");

  auto* schur = app.add_subcommand("schur-check", "Schur process normalization by weight enumeration");
  add_common(schur, c, false);

  auto* plot = app.add_subcommand("plot", "Static SVG from a result CSV");
  add_common(plot, c, false);
  std::string csv, kind;
  plot->add_option("--csv", csv, "input CSV")->required();
  plot->add_option("--kind", kind, "cdf-overlay | convergence-ladder | kernel-slice")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c.threads > 0) omp_set_num_threads(c.threads);
    RunOptions opt;
    opt.seed = c.seed;
    opt.tol = c.tol;

    if (*gap) return emit(run_gap(load_config(c), opt), c);
    if (*simulate) return emit(run_simulate(load_config(c), opt), c);
    if (*kernel) return emit(run_kernel_eval(load_config(c), opt), c);
    if (*converge) return emit(run_converge(parse_limit(limit), ladder, opt), c);
    if (*rsk) return emit(run_rsk_check(arrays, rows, cols, opt), c);
    if (*schur) {
      Config cfg = load_config(c);
      if (!cfg.has("schur.n")) cfg.set("schur.n", "2");
      if (!cfg.has("schur.ell")) cfg.set("schur.ell", "2,1");
      return emit(run_schur_check(cfg, opt), c);
    }
    if (*plot) {
      const PlotKind k = parse_plot_kind(kind);
      std::ifstream in(csv);
      if (!in) throw ConfigError("cannot read " + csv);
      const Table t = Table::read_csv(in);
      if (c.out.empty()) {
        write_svg(t, k, std::cout);
      } else {
        std::ofstream os(c.out);
        if (!os) throw ConfigError("cannot write " + c.out);
        write_svg(t, k, os);
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "perclab: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "perclab: invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "perclab: parameter out of range: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "perclab: numerical failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
