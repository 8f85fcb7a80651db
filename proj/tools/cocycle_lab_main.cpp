// cocycle-lab: analyses of SL(2,R) cocycles over subshifts of finite type.
//
// Exit codes: 0 completed, 2 completed with a negative verdict
// (falsified / gap violated / verification failure), 3 input error.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "cocyclelab/report.hpp"
#include "cocyclelab/specfile.hpp"

namespace cl = cocyclelab;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) cl::fail(cl::ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_out(const std::string& path, const std::string& content, bool append) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) cl::fail(cl::ErrorCode::ParseError, "cannot write '" + path + "'");
  out << content;
}

void emit(cl::json& report, const Timer& timer, const std::string& out_path, bool append) {
  cl::report_finalize(report, timer.ms());
  if (append) {
    // JSON-lines batching: one compact object per line.
    std::string line = report.dump();
    write_out(out_path, line + "\n", true);
  } else {
    write_out(out_path, cl::dump_json_17(report), false);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cocycle-lab: SL(2,R) cocycles over subshifts of finite type"};
  app.require_subcommand(1);

  std::string spec_path, out_path, csv_path;
  bool append = false;

  auto add_common = [&](CLI::App* cmd, bool needs_spec) {
    if (needs_spec) cmd->add_option("specfile", spec_path, "cocycle spec file")->required();
    cmd->add_option("--out", out_path, "report destination (default stdout)");
    cmd->add_flag("--append", append, "append as JSON-lines instead of pretty JSON");
  };

  auto* cmd_check = app.add_subcommand("check", "validate the SFT, bunching, Hoelder data");
  add_common(cmd_check, true);

  auto* cmd_lyap = app.add_subcommand("lyapunov", "periodic-orbit or sampled exponents");
  add_common(cmd_lyap, true);
  int max_period = 8;
  double tau = -1;
  std::vector<double> sample_args;
  cmd_lyap->add_option("--max-period", max_period, "periodic scan depth");
  cmd_lyap->add_option("--tau", tau, "gap threshold (enables the verdict)");
  cmd_lyap->add_option("--sample", sample_args,
                       "sampled mode: n trials seed (Bernoulli weights uniform)")
      ->expected(3);
  cmd_lyap->add_option("--csv", csv_path, "also write the per-orbit CSV here");

  auto* cmd_cert = app.add_subcommand("certify", "cone certification + growth probe");
  add_common(cmd_cert, true);
  long long probe_n_max = 64;
  double tau_probe = 0.05;
  int probe_period = 6, refine = 96;
  double margin = 1e-6;
  cmd_cert->add_option("--n-max", probe_n_max, "probe horizon");
  cmd_cert->add_option("--tau-probe", tau_probe, "probe growth rate");
  cmd_cert->add_option("--max-period", probe_period, "periodic probe samples up to this period");
  cmd_cert->add_option("--refine", refine, "cone refinement rounds");
  cmd_cert->add_option("--margin", margin, "strict inclusion margin");

  auto* cmd_transfer = app.add_subcommand("transfer", "periodic shadowing transfer bound");
  add_common(cmd_transfer, true);
  long long n0 = 8;
  double eps = 0.1, transfer_tol = 1e-9;
  int search_period = 8;
  cmd_transfer->add_option("--n0", n0, "slow-growth horizon")->required();
  cmd_transfer->add_option("--eps", eps, "slow-growth rate")->required();
  cmd_transfer->add_option("--max-period", search_period, "slow-point search depth");
  cmd_transfer->add_option("--tol", transfer_tol, "bound tolerance");

  auto* cmd_cx = app.add_subcommand("counterexample", "verify the diag-rotation construction");
  add_common(cmd_cx, false);
  std::string verify = "all";
  int cx_n_max = 25, cx_period = 12, cx_samples = 200;
  std::uint64_t cx_seed = 20180613;
  std::optional<int> k0_override;
  int k0_flag = 0;
  cmd_cx->add_option("--verify", verify, "all | not-uh | cones | exponents | k0");
  cmd_cx->add_option("--n-max", cx_n_max, "homoclinic horizon");
  cmd_cx->add_option("--max-period", cx_period, "gap scan depth");
  cmd_cx->add_option("--samples", cx_samples, "tracked V_0 points");
  cmd_cx->add_option("--seed", cx_seed, "sampling seed");
  cmd_cx->add_option("--k0", k0_flag, "override the rotation cutoff");

  CLI11_PARSE(app, argc, argv);
  Timer timer;

  try {
    int exit_code = 0;

    if (cmd_check->parsed()) {
      const std::string text = slurp(spec_path);
      const cl::CocycleSpec spec = cl::parse_spec_text(text);
      cl::json rep = cl::report_skeleton("check", cl::spec_digest(text), cl::json::object());
      rep["results"]["sft"] = {{"size", spec.base().size()},
                               {"irreducible", spec.base().irreducible()}};
      rep["results"]["bunching"] = cl::to_json(cl::bunching_check(spec));
      rep["results"]["holder"] = cl::to_json(cl::holder_estimate(spec));
      emit(rep, timer, out_path, append);
    } else if (cmd_lyap->parsed()) {
      const std::string text = slurp(spec_path);
      const cl::CocycleSpec spec = cl::parse_spec_text(text);
      cl::json params{{"max_period", max_period}};
      if (tau >= 0) params["tau"] = tau;
      cl::json rep = cl::report_skeleton("lyapunov", cl::spec_digest(text), params);
      if (!sample_args.empty()) {
        const long long n = static_cast<long long>(sample_args[0]);
        const int trials = static_cast<int>(sample_args[1]);
        const auto seed = static_cast<std::uint64_t>(sample_args[2]);
        rep["parameters"]["sample"] = {{"n", n}, {"trials", trials}, {"seed", seed}};
        const auto er = cl::sampled_exponent(spec, cl::MeasureSpec{}, n, trials, seed);
        rep["results"]["sampled"] = cl::to_json(er);
      } else {
        const double scan_tau = tau >= 0 ? tau : 0.0;
        const auto scan = cl::gap_scan(spec, max_period, scan_tau);
        rep["results"]["gap_scan"] = cl::to_json(scan);
        if (tau >= 0 && scan.verdict == cl::GapVerdict::Violated) exit_code = 2;
        if (!csv_path.empty()) write_out(csv_path, cl::gap_scan_csv(scan), false);
      }
      emit(rep, timer, out_path, append);
    } else if (cmd_cert->parsed()) {
      const std::string text = slurp(spec_path);
      const cl::CocycleSpec spec = cl::parse_spec_text(text);
      cl::json params{{"n_max", probe_n_max},
                      {"tau_probe", tau_probe},
                      {"max_period", probe_period},
                      {"refine", refine},
                      {"margin", margin}};
      cl::json rep = cl::report_skeleton("certify", cl::spec_digest(text), params);
      cl::UHVerdict cone;
      bool cone_applicable = spec.is_locally_constant();
      if (cone_applicable) {
        cl::CertifyOptions copts;
        copts.refine_steps = refine;
        copts.margin = margin;
        cone = cl::cone_certify(spec, copts);
        rep["results"]["cone"] = cl::to_json(cone);
      } else {
        rep["results"]["cone"] = {{"status", "inconclusive"},
                                  {"note", "certification needs a locally constant cocycle"}};
      }
      cl::ProbeOptions popts;
      popts.max_period = probe_period;
      popts.n_max = probe_n_max;
      popts.tau_probe = tau_probe;
      const cl::UHVerdict probe = cl::norm_growth_probe(spec, popts);
      rep["results"]["probe"] = cl::to_json(probe);
      const bool certified = cone_applicable && cone.status == cl::UHStatus::Certified;
      const bool falsified = probe.status == cl::UHStatus::Falsified;
      rep["results"]["combined"] = certified && !falsified ? "certified"
                                   : falsified             ? "falsified"
                                                           : "inconclusive";
      if (falsified) exit_code = 2;
      emit(rep, timer, out_path, append);
    } else if (cmd_transfer->parsed()) {
      const std::string text = slurp(spec_path);
      const cl::CocycleSpec spec = cl::parse_spec_text(text);
      cl::json params{{"n0", n0}, {"eps", eps}, {"max_period", search_period}};
      cl::json rep = cl::report_skeleton("transfer", cl::spec_digest(text), params);
      cl::SlowPointSearch search;
      search.max_period = search_period;
      const auto tr = cl::run_transfer(spec, n0, eps, search, transfer_tol);
      rep["results"]["transfer"] = cl::to_json(tr);
      if (!tr.bound_holds) exit_code = 2;
      emit(rep, timer, out_path, append);
    } else if (cmd_cx->parsed()) {
      if (k0_flag != 0) k0_override = k0_flag;
      const cl::CocycleSpec spec = cl::make_builtin_spec(k0_override);
      const std::string digest = cl::spec_digest(cl::emit_spec_text(spec));
      const int k0_eff = k0_override.value_or(cl::CounterexampleParams::standard().k0);
      cl::json params{{"verify", verify},
                      {"n_max", cx_n_max},
                      {"max_period", cx_period},
                      {"samples", cx_samples},
                      {"seed", cx_seed},
                      {"k0", k0_eff}};
      cl::json rep = cl::report_skeleton("counterexample", digest, params);
      bool all_pass = true;
      if (verify == "all" || verify == "k0") {
        const auto scan = cl::determine_k0_scan();
        rep["results"]["k0_scan"] = cl::to_json(scan);
        all_pass &= scan.monotone;
      }
      if (verify == "all" || verify == "not-uh") {
        const auto r = cl::verify_not_uh(spec, cx_n_max);
        rep["results"]["not_uh"] = cl::to_json(r);
        all_pass &= r.pass;
      }
      if (verify == "all" || verify == "cones") {
        const auto& p = cl::CounterexampleParams::standard();
        cl::json cones = cl::json::array();
        bool cone_pass = true;
        for (int m = 7; m <= 30; ++m) {
          cl::Word w(static_cast<std::size_t>(2 * m + 1), 0);
          w[0] = 1;
          const auto r = cl::check_cone_step(spec, cl::SymbolSequence::periodic(w), p);
          cone_pass &= r.pass;
          cones.push_back(cl::to_json(r));
        }
        rep["results"]["cone_steps"] = cones;
        rep["results"]["cone_steps_pass"] = cone_pass;
        all_pass &= cone_pass;
      }
      if (verify == "all" || verify == "exponents") {
        const auto r = cl::verify_exponent_bound(spec, cx_period, cx_samples, cx_seed);
        rep["results"]["exponent_bound"] = cl::to_json(r);
        all_pass &= r.pass;
      }
      rep["results"]["pass"] = all_pass;
      if (!all_pass) exit_code = 2;
      emit(rep, timer, out_path, append);
    }
    return exit_code;
  } catch (const cl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
