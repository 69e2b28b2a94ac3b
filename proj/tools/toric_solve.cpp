// toric_solve: solve, regpair and sweep subcommands over system files.

#include "toric/toric.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace toric;
using namespace toric::io;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Stage::Parse, path + ": cannot write");
  out << text;
}

int report(const Error& e) {
  std::cerr << "error (" << stage_name(e.stage()) << "): " << e.what() << "\n";
  return exit_code(e.stage());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric eigenvalue solver for sparse polynomial systems"};
  app.require_subcommand(1);

  RunOptions opt;
  std::string pair_text, fan_path;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    cmd->add_option("--tol-rank", opt.tol.tol_rank, "relative singular value cutoff")->capture_default_str();
    cmd->add_option("--cluster-gap", opt.tol.cluster_gap, "relative eigenvalue clustering gap")->capture_default_str();
    cmd->add_option("--zero-tol", opt.tol.zero_tol, "relative threshold for vanishing coordinates")->capture_default_str();
    cmd->add_option("--pair", pair_text, "regularity pair \"alpha;alpha0\" in class group coordinates");
    cmd->add_flag("--verify,!--no-verify", opt.verify, "check the pair with corank computations")->capture_default_str();
    cmd->add_option("--fan", fan_path, "JSON file with rays (and cones) replacing the normal fan");
  };

  std::string input, output, csv_path;
  auto* solve_cmd = app.add_subcommand("solve", "solve a system and write a solution file");
  solve_cmd->add_option("input", input, "system file")->required();
  solve_cmd->add_option("-o,--output", output, "solution file (default stdout)");
  solve_cmd->add_option("--emit-csv", csv_path, "also write a per-solution CSV table");
  add_common(solve_cmd);

  auto* reg_cmd = app.add_subcommand("regpair", "report default and improved regularity pairs");
  reg_cmd->add_option("input", input, "system file")->required();
  add_common(reg_cmd);

  std::string param = "e", grid_text = "0:14:0.5";
  auto* sweep_cmd = app.add_subcommand("sweep", "solve a template over a parameter grid and emit CSV");
  sweep_cmd->add_option("input", input, "template system file")->required();
  sweep_cmd->add_option("--param", param, "template parameter to vary")->capture_default_str();
  sweep_cmd->add_option("--grid", grid_text, "start:stop:step or comma-separated values")->capture_default_str();
  sweep_cmd->add_option("-o,--output,--emit-csv", output, "CSV file (default stdout)");
  add_common(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!pair_text.empty()) opt.pair = pair_text;
  if (!fan_path.empty()) opt.fan_path = fan_path;

  try {
    SystemFile sf = load_system(input);
    if (*solve_cmd) {
      auto S = cmd_solve(sf, opt);
      auto file = to_solution_file(S);
      write_output(output, dump_solution(file));
      if (!csv_path.empty()) write_output(csv_path, solutions_csv(file));
      std::cerr << S.solutions.size() << " solution(s), delta+ = " << S.delta_plus
                << ", max residual = " << S.max_residual() << "\n";
    } else if (*reg_cmd) {
      std::cout << format_regpair(cmd_regpair(sf, opt));
    } else {
      auto grid = parse_grid(grid_text);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!output.empty() && output != "-") {
        file.open(output);
        if (!file) throw Error(Stage::Parse, output + ": cannot write");
        out = &file;
      }
      bool header = false;
      cmd_sweep(sf, param, grid, opt, [&](const SweepRow& r) {
        if (!header) *out << sweep_csv_header() << "\n";
        header = true;
        *out << sweep_csv_row(r) << "\n" << std::flush;
      });
    }
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "error (internal): " << e.what() << "\n";
    return 1;
  }
  return 0;
}
