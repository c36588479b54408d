// Copyright 2026 The ionsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ionsynth/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ionsynth/io.hpp"
#include "ionsynth/kernels.hpp"
#include "ionsynth/noise.hpp"
#include "ionsynth/synthesis.hpp"
#include "ionsynth/targets.hpp"

namespace ionsynth {

namespace {

struct TargetOptions {
  std::string target;
  double alpha = kDefaultAlpha;
  std::optional<int> jmax;
  std::string eps;
  std::optional<double> eps_carrier;
};

void add_target_options(CLI::App& cmd, TargetOptions& o) {
  cmd.add_option("--target", o.target, "ghz | corr | diag | file:<path>");
  cmd.add_option("--alpha", o.alpha, "coherent amplitude for ghz/corr")->capture_default_str();
  cmd.add_option("--jmax", o.jmax, "maximum total trap quanta (default 12)");
}

void add_lamb_dicke_options(CLI::App& cmd, TargetOptions& o) {
  cmd.add_option("--eps", o.eps, "Lamb-Dicke parameters ex,ey,ez (default 0.3,0.1,0.2)");
  cmd.add_option("--eps-carrier", o.eps_carrier, "carrier Lamb-Dicke parameter (default 0.1)");
}

double parse_real(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DomainError("cannot parse " + what + " '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

LambDickeParams lamb_dicke_from(const TargetOptions& o) {
  LambDickeParams ld;
  if (!o.eps.empty()) {
    const auto parts = split(o.eps, ',');
    if (parts.size() != 3) throw DomainError("--eps expects ex,ey,ez");
    ld.eps_x = parse_real(parts[0], "--eps");
    ld.eps_y = parse_real(parts[1], "--eps");
    ld.eps_z = parse_real(parts[2], "--eps");
  }
  if (o.eps_carrier) ld.eps_carrier = *o.eps_carrier;
  validate(ld);
  return ld;
}

std::vector<double> parse_grid(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw DomainError(flag + " expects start:step:count");
  const double start = parse_real(parts[0], flag);
  const double step = parse_real(parts[1], flag);
  int count = 0;
  const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (res.ec != std::errc{} || res.ptr != parts[2].data() + parts[2].size() || count < 1) {
    throw DomainError(flag + ": count must be a positive integer");
  }
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(start + step * i);
  return out;
}

BuiltTarget target_for_schedule(const TargetOptions& o, const Schedule& sch) {
  if (o.target.empty()) {
    if (sch.target.kind.empty() || sch.target.kind == "custom") {
      throw DomainError("schedule does not record its target; pass --target");
    }
    return target_from_tag(sch.target, sch.truncation);
  }
  TargetSpec spec = parse_target_spec(o.target);
  spec.alpha = o.alpha;
  spec.jmax = sch.truncation.jmax();
  BuiltTarget bt = make_target(spec);
  bt.state = embed(bt.state, sch.truncation);
  return bt;
}

BuiltTarget target_from_options(const TargetOptions& o) {
  TargetSpec spec = parse_target_spec(o.target);
  spec.alpha = o.alpha;
  spec.jmax = o.jmax;
  return make_target(spec);
}

void prune_noops(Schedule& sch) {
  std::erase_if(sch.pulses, [](const Pulse& p) { return p.x == 0.0; });
}

std::string describe(const TargetTag& tag) {
  if (tag.kind == "file") return "file:" + tag.path;
  if (tag.kind == "diag") return "diag";
  return tag.kind + "(alpha=" + format_real(tag.alpha) + ")";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pulse-sequence compiler and noise simulator for three-mode trapped-ion states",
               "ionsynth"};
  app.require_subcommand(1);

  TargetOptions copt;
  std::string compile_out, deevolution_out;
  bool prune = false;
  double compile_tol = 1e-9;
  auto* compile = app.add_subcommand("compile", "compile a target into a preparation schedule");
  add_target_options(*compile, copt);
  add_lamb_dicke_options(*compile, copt);
  compile->get_option("--target")->required();
  compile->add_option("--out", compile_out, "preparation schedule JSON (default: stdout)");
  compile->add_option("--deevolution-out", deevolution_out, "also write the de-evolution schedule");
  compile->add_option("--tol", compile_tol, "maximum accepted vacuum residual")->capture_default_str();
  compile->add_flag("--prune-noops", prune, "drop x = 0 pulses (inspection only)");

  TargetOptions vopt;
  std::string verify_schedule;
  double verify_tol = 1e-9;
  auto* verify = app.add_subcommand("verify", "replay a schedule and check its fidelity");
  add_target_options(*verify, vopt);
  verify->add_option("--schedule", verify_schedule, "schedule JSON")->required();
  verify->add_option("--tol", verify_tol, "maximum accepted infidelity")->capture_default_str();

  TargetOptions sopt;
  std::string sweep_schedule, sweep_out, delta_grid = "0:0.01:6", theta_grid;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  double delta_theta = 0.01, delta_fixed = 0.01;
  unsigned threads = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo fidelity under technical noise");
  add_target_options(*sweep_cmd, sopt);
  add_lamb_dicke_options(*sweep_cmd, sopt);
  sweep_cmd->add_option("--schedule", sweep_schedule, "preparation schedule JSON");
  sweep_cmd->add_option("--trials", trials, "noisy preparations per grid point")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  sweep_cmd->add_option("--delta-grid", delta_grid, "interaction-length half-widths start:step:count")
      ->capture_default_str();
  sweep_cmd->add_option("--delta-theta", delta_theta, "phase half-width for --delta-grid")
      ->capture_default_str();
  sweep_cmd->add_option("--theta-grid", theta_grid,
                        "sweep phase half-widths start:step:count instead, at fixed --delta");
  sweep_cmd->add_option("--delta", delta_fixed, "interaction-length half-width for --theta-grid")
      ->capture_default_str();
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", sweep_out, "CSV output (default: stdout)");

  app.add_subcommand("targets", "list built-in targets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (compile->parsed()) {
      const BuiltTarget target = target_from_options(copt);
      CompileResult res = deevolve(target.state, lamb_dicke_from(copt), target.tag);
      if (prune) {
        prune_noops(res.preparation);
        prune_noops(res.deevolution);
      }
      std::ostream& report = compile_out.empty() ? err : out;
      if (compile_out.empty()) {
        out << schedule_to_json(res.preparation);
      } else {
        save_schedule(res.preparation, compile_out);
      }
      if (!deevolution_out.empty()) save_schedule(res.deevolution, deevolution_out);
      const auto nontrivial = std::count_if(res.deevolution.pulses.begin(),
                                            res.deevolution.pulses.end(),
                                            [](const Pulse& p) { return p.x != 0.0; });
      report << "target: " << describe(target.tag) << "\n"
             << "jmax: " << target.state.truncation().jmax() << "\n"
             << "kept_mass: " << format_real(target.tag.truncated_mass) << "\n"
             << "pulses: " << res.pulse_count << "\n"
             << "nontrivial_pulses: " << nontrivial << "\n"
             << "residual: " << format_real(res.final_residual) << "\n";
      if (!(res.final_residual <= compile_tol)) {
        err << "error: vacuum residual " << format_real(res.final_residual) << " exceeds "
            << format_real(compile_tol) << "\n";
        return kExitValidation;
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      const Schedule sch = load_schedule(verify_schedule);
      const BuiltTarget target = target_for_schedule(vopt, sch);
      double fid = 0.0;
      if (sch.direction == Direction::preparation) {
        const StateVector vac = StateVector::basis(sch.truncation, {{0, 0, 0}, Level::a});
        fid = fidelity_to_target(apply_schedule(vac, sch), target.state);
      } else {
        const StateVector back = apply_schedule(target.state, sch);
        fid = std::norm(back.at({{0, 0, 0}, Level::a}));
      }
      out << "direction: " << to_string(sch.direction) << "\n"
          << "pulses: " << sch.pulses.size() << "\n"
          << "fidelity: " << format_real17(fid) << "\n"
          << "infidelity: " << format_real(1.0 - fid) << "\n";
      if (!(1.0 - fid <= verify_tol)) {
        err << "error: infidelity " << format_real(1.0 - fid) << " exceeds "
            << format_real(verify_tol) << "\n";
        return kExitValidation;
      }
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      Schedule sch;
      BuiltTarget target;
      if (!sweep_schedule.empty()) {
        sch = load_schedule(sweep_schedule);
        if (sch.direction == Direction::deevolution) sch = dagger_schedule(sch);
        target = target_for_schedule(sopt, sch);
      } else {
        if (sopt.target.empty()) throw DomainError("sweep needs --schedule or --target");
        target = target_from_options(sopt);
        sch = deevolve(target.state, lamb_dicke_from(sopt), target.tag).preparation;
      }
      std::vector<NoiseModel> grid;
      if (!theta_grid.empty()) {
        for (double dt : parse_grid(theta_grid, "--theta-grid")) grid.push_back({delta_fixed, dt});
      } else {
        for (double d : parse_grid(delta_grid, "--delta-grid")) grid.push_back({d, delta_theta});
      }
      for (const NoiseModel& nm : grid) validate(nm);
      const SweepReport report =
          sweep(target.state, sch, grid, trials, seed, describe(target.tag), threads);
      if (sweep_out.empty()) {
        out << report_to_csv(report);
      } else {
        save_report(report, sweep_out);
      }
      return kExitOk;
    }

    // targets
    for (const BuiltinInfo& b : builtin_targets()) out << b.name << "\t" << b.description << "\n";
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace ionsynth
