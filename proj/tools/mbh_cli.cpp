// mbh: conditioning and accuracy sweeps, translation checks, and a file-based
// disk solver.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "mbh/errors.hpp"
#include "mbh/experiments.hpp"
#include "mbh/solve_io.hpp"

namespace {

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw mbh::Error("cannot open output file: " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close(const std::string& path) {
    if (!file_) {
      std::cout.flush();
      return;
    }
    file_->close();
    if (!*file_) throw mbh::Error("write failed: " + path);
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct SweepOptions {
  std::string side = "interior";
  std::string axis = "lambda";
  std::string out;
  mbh::SweepConfig cfg;
};

void add_sweep_options(CLI::App* cmd, SweepOptions& o) {
  cmd->add_option("--seed", o.cfg.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--side", o.side, "interior or exterior")->capture_default_str();
  cmd->add_option("--axis", o.axis, "swept parameter: lambda or radius")->capture_default_str();
  cmd->add_option("--fixed", o.cfg.fixed_value, "value of the parameter held fixed")->capture_default_str();
  cmd->add_option("--jmin", o.cfg.j_min, "first octave")->capture_default_str();
  cmd->add_option("--jmax", o.cfg.j_max, "last octave")->capture_default_str();
  cmd->add_option("--draws", o.cfg.draws_per_octave, "draws per octave")->capture_default_str();
  cmd->add_option("--bases", o.cfg.bases, "basis names (default: both bases of the side)")->delimiter(',');
  cmd->add_option("--out", o.out, "output CSV (default stdout)");
}

void finish_sweep_options(SweepOptions& o) {
  o.cfg.side = mbh::parse_side(o.side);
  o.cfg.axis = mbh::parse_axis(o.axis);
  o.cfg.validate();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modified biharmonic disk solver and expansion checks"};
  app.require_subcommand(1);

  SweepOptions cond_opt;
  auto* cond = app.add_subcommand("cond-sweep", "normalized condition numbers of the mode matrices");
  add_sweep_options(cond, cond_opt);
  cond->add_option("--modes", cond_opt.cfg.cond_modes, "mode indices n")->delimiter(',')->capture_default_str();

  SweepOptions err_opt;
  auto* err = app.add_subcommand("error-sweep", "solver errors on manufactured solutions");
  add_sweep_options(err, err_opt);
  err->add_option("--modes", err_opt.cfg.n_modes, "N (modes -N..N+1)")->capture_default_str();
  err->add_option("--sources", err_opt.cfg.n_sources, "sources per point")->capture_default_str();
  err->add_option("--targets", err_opt.cfg.n_targets, "targets per point")->capture_default_str();
  bool timing = false;
  err->add_flag("--timing", timing, "report seconds per sweep point on stderr");

  mbh::TranslationConfig tr_cfg;
  std::string tr_out;
  auto* tr = app.add_subcommand("translation-check", "expansion translations against direct summation");
  tr->add_option("--seed", tr_cfg.seed, "RNG seed")->capture_default_str();
  tr->add_option("--orders", tr_cfg.orders, "expansion orders p")->delimiter(',')->capture_default_str();
  tr->add_option("--ratios", tr_cfg.separation_ratios, "separation ratios")->delimiter(',')->capture_default_str();
  tr->add_option("--lambda", tr_cfg.lambda, "lambda for the regular rows")->capture_default_str();
  tr->add_option("--small-lambda-rho", tr_cfg.small_lambda_rho, "lambda*rho0 for the small-lambda rows")
      ->capture_default_str();
  tr->add_option("--sources", tr_cfg.n_sources, "number of sources")->capture_default_str();
  tr->add_option("--targets", tr_cfg.n_targets, "number of targets")->capture_default_str();
  tr->add_option("--out", tr_out, "output CSV (default stdout)");

  std::string solve_in, solve_basis, solve_out, solve_targets, solve_eval_out;
  auto* solve = app.add_subcommand("solve", "solve one boundary-data file");
  solve->add_option("input", solve_in, "boundary-data file")->required();
  solve->add_option("--bases", solve_basis, "basis (default: the stable basis of the side)");
  solve->add_option("--out", solve_out, "coefficient file (default stdout)");
  solve->add_option("--eval", solve_targets, "file of target points to evaluate at");
  solve->add_option("--eval-out", solve_eval_out, "evaluation output (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cond) {
      finish_sweep_options(cond_opt);
      const auto rows = mbh::cond_sweep(cond_opt.cfg);
      Output out(cond_opt.out);
      mbh::write_cond_csv(out.stream(), cond_opt.cfg, rows);
      out.close(cond_opt.out);
    } else if (*err) {
      finish_sweep_options(err_opt);
      Output out(err_opt.out);
      std::vector<mbh::ErrorRow> rows;
      for (int j = err_opt.cfg.j_min; j <= err_opt.cfg.j_max; ++j) {
        for (int d = 0; d < err_opt.cfg.draws_per_octave; ++d) {
          auto pe = mbh::error_point(err_opt.cfg, mbh::sweep_point(err_opt.cfg, j, d));
          if (timing) std::cerr << "j=" << j << " draw=" << d << " seconds=" << pe.seconds << '\n';
          for (auto& r : pe.rows) {
            if (r.failed) std::cerr << "warning: j=" << j << " draw=" << d << " " << r.basis << ": " << r.message << '\n';
            rows.push_back(std::move(r));
          }
        }
      }
      mbh::write_error_csv(out.stream(), err_opt.cfg, rows);
      out.close(err_opt.out);
    } else if (*tr) {
      const auto rows = mbh::translation_check(tr_cfg);
      Output out(tr_out);
      mbh::write_translation_csv(out.stream(), rows);
      out.close(tr_out);
    } else if (*solve) {
      std::ifstream in(solve_in);
      if (!in) throw mbh::Error("cannot open " + solve_in);
      const mbh::DiskProblem p = mbh::read_boundary_data(in);
      mbh::BasisTag basis = p.side == mbh::Side::Interior ? mbh::BasisTag::IntStable : mbh::BasisTag::ExtStable;
      if (!solve_basis.empty()) {
        basis = mbh::parse_basis(solve_basis);
        if (mbh::side_of(basis) != p.side) throw mbh::InvalidArgument("basis " + solve_basis + " does not match side");
      }
      const mbh::DiskSolution sol = mbh::solve_dirichlet(p, basis);
      for (const auto& w : sol.warnings) std::cerr << "warning: " << w << '\n';
      Output out(solve_out);
      mbh::write_solution(out.stream(), sol);
      out.close(solve_out);
      if (!solve_targets.empty()) {
        std::ifstream tin(solve_targets);
        if (!tin) throw mbh::Error("cannot open " + solve_targets);
        const auto targets = mbh::read_targets(tin);
        Output eout(solve_eval_out);
        mbh::write_evaluations(eout.stream(), sol, targets);
        eout.close(solve_eval_out);
      }
    }
  } catch (const mbh::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
