#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "bent/search.hpp"
#include "selftest.hpp"

namespace {

using namespace bent;

constexpr int kExitPn = 0;
constexpr int kExitNotPn = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

std::string fmt_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

int cmd_group(const std::string& spec, const std::optional<std::string>& out_path) {
  const FiniteGroup g = group_from_spec(spec);
  validate_group(g);
  std::cout << "order " << g.order << " abelian " << (is_abelian(g) ? "true" : "false") << "\n";
  std::cout << "element-orders";
  for (int k : element_orders(g)) std::cout << " " << k;
  std::cout << "\n";
  if (out_path) save_group(g, *out_path);
  return 0;
}

int cmd_dual(const std::string& spec, const std::optional<std::string>& load_path, bool verify,
             const std::optional<std::string>& out_path, double tau) {
  const FiniteGroup g = group_from_spec(spec);
  const DualTable d = load_path ? load_dual(g, *load_path, tau) : irreps(g);
  std::cout << "entries " << d.size() << " dims";
  for (const auto& e : d.entries) std::cout << " " << e.dim;
  std::cout << "\n";
  if (verify) {
    const VerificationReport report = verify_dual(g, d, tau);
    std::cout << report.to_string();
    if (!report.all_pass()) return kExitNotPn;
  }
  if (out_path) save_dual(d, *out_path);
  return 0;
}

int cmd_check(const std::string& fn_path, const std::string& g_spec, const std::string& h_spec,
              const std::string& method, double tau) {
  const FiniteGroup g = group_from_spec(g_spec);
  const FiniteGroup h = group_from_spec(h_spec);
  const FunctionTable f = load_function(fn_path, g, h);

  std::optional<PnVerdict> oracle, bent_v;
  if (method == "oracle" || method == "both") oracle = pn_oracle(f);
  if (method == "bent" || method == "both") {
    const DualTable dg = irreps(g);
    const DualTable dh = irreps(h);
    bent_v = bent_auto(f, dg, dh, tau);
  }

  if (oracle) {
    std::cout << "oracle: PN " << (oracle->is_pn ? "true" : "false");
    if (!oracle->is_pn) std::cout << " (first unbalanced alpha " << oracle->first_unbalanced_alpha << ")";
    std::cout << "\n";
  }
  if (bent_v) {
    std::cout << "bent: PN " << (bent_v->is_pn ? "true" : "false") << " (" << method_name(bent_v->method)
              << ", max residual " << fmt_residual(bent_v->max_residual);
    if (bent_v->witness) std::cout << ", witness " << bent_v->witness->detail;
    std::cout << ")\n";
  }
  if (oracle && bent_v)
    std::cout << "agreement: " << (oracle->is_pn == bent_v->is_pn ? "yes" : "NO") << "\n";

  const bool pn = oracle ? oracle->is_pn : bent_v->is_pn;
  std::cout << "PN: " << (pn ? "true" : "false") << "\n";
  return pn ? kExitPn : kExitNotPn;
}

int cmd_search(const SearchJob& job, const std::optional<std::string>& out_path) {
  const SearchReport report = run_search(job);
  std::cout << "examined " << report.examined << " pn " << report.pn_found;
  if (report.compared)
    std::cout << " agreements " << report.agreements << " disagreements " << report.disagreements.size();
  if (report.norm_applicable) std::cout << " norm_only " << report.norm_only;
  std::cout << "\n";
  std::fprintf(stderr, "wall time %.3f s\n", report.wall_seconds);
  if (out_path) save_report(report, *out_path);
  return report.disagreements.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect nonlinearity and bent functions on finite groups"};
  app.require_subcommand(1);
  // `check` and `search` use --h for the codomain group, so help is --help only
  app.set_help_flag("--help", "Print help and exit");
  int exit_code = 0;

  // group
  std::string group_spec;
  std::optional<std::string> group_out;
  auto* group_cmd = app.add_subcommand("group", "Build and validate a group, print its profile");
  group_cmd->set_help_flag("--help", "Print help and exit");
  group_cmd->add_option("spec", group_spec, "cyclic:N dihedral:N quaternion symmetric:N product:... file:PATH")
      ->required();
  group_cmd->add_option("--out", group_out, "Write the group file here");
  group_cmd->callback([&] { exit_code = cmd_group(group_spec, group_out); });

  // dual
  std::string dual_spec;
  std::optional<std::string> dual_load, dual_out;
  bool dual_verify = false;
  double dual_tau = -1.0;
  auto* dual_cmd = app.add_subcommand("dual", "Build or load a dual table");
  dual_cmd->set_help_flag("--help", "Print help and exit");
  dual_cmd->add_option("spec", dual_spec, "Group spec")->required();
  dual_cmd->add_option("--load", dual_load, "Load the dual from this file instead of the catalogue");
  dual_cmd->add_flag("--verify", dual_verify, "Run and print the verification report");
  dual_cmd->add_option("--out", dual_out, "Write the dual file here");
  dual_cmd->add_option("--tau", dual_tau, "Tolerance override");
  dual_cmd->callback([&] { exit_code = cmd_dual(dual_spec, dual_load, dual_verify, dual_out, dual_tau); });

  // check
  std::string check_fn, check_g, check_h, check_method = "both";
  double check_tau = -1.0;
  auto* check_cmd = app.add_subcommand("check", "Verdict for one function table");
  check_cmd->set_help_flag("--help", "Print help and exit");
  check_cmd->add_option("fn", check_fn, "Function file")->required();
  check_cmd->add_option("--g", check_g, "Domain group spec")->required();
  check_cmd->add_option("--h", check_h, "Codomain group spec")->required();
  check_cmd->add_option("--method", check_method, "oracle | bent | both")
      ->check(CLI::IsMember({"oracle", "bent", "both"}));
  check_cmd->add_option("--tau", check_tau, "Tolerance override");
  check_cmd->callback([&] { exit_code = cmd_check(check_fn, check_g, check_h, check_method, check_tau); });

  // search
  SearchJob job;
  std::string search_mode = "exhaustive", search_criteria = "both", search_partition = "0/1";
  std::optional<std::string> search_out;
  auto* search_cmd = app.add_subcommand("search", "Sweep a function space and cross-validate criteria");
  search_cmd->set_help_flag("--help", "Print help and exit");
  search_cmd->add_option("--g", job.domain_spec, "Domain group spec")->required();
  search_cmd->add_option("--h", job.codomain_spec, "Codomain group spec")->required();
  search_cmd->add_option("--mode", search_mode, "exhaustive | random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  search_cmd->add_option("--samples", job.sample_count, "Sample count (random mode)");
  search_cmd->add_option("--seed", job.seed, "Seed (random mode)");
  search_cmd->add_option("--criteria", search_criteria, "oracle | bent | both | all (all adds norm conditions)")
      ->check(CLI::IsMember({"oracle", "bent", "both", "all"}));
  search_cmd->add_option("--workers", job.workers, "Thread count")->check(CLI::PositiveNumber);
  search_cmd->add_option("--partition", search_partition, "Manual shard k/n over the function counter");
  search_cmd->add_option("--out", search_out, "Write the report file here");
  search_cmd->add_option("--tau", job.tau, "Tolerance override");
  search_cmd->callback([&] {
    job.mode = search_mode == "random" ? SearchJob::Mode::Random : SearchJob::Mode::Exhaustive;
    job.run_oracle = search_criteria != "bent";
    job.run_bent = search_criteria != "oracle";
    job.run_norm = search_criteria == "all";
    if (job.mode == SearchJob::Mode::Random && job.sample_count == 0)
      throw CLI::ValidationError("--samples is required in random mode");
    int k = 0, n = 0;
    if (std::sscanf(search_partition.c_str(), "%d/%d", &k, &n) != 2 || n < 1 || k < 0 || k >= n)
      throw CLI::ValidationError("--partition must be k/n with 0 <= k < n");
    job.partition = {k, n};
    exit_code = cmd_search(job, search_out);
  });

  // selftest
  double selftest_tau = -1.0;
  std::optional<std::string> selftest_group;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the invariant suite on the built-in catalogue");
  selftest_cmd->set_help_flag("--help", "Print help and exit");
  selftest_cmd->add_option("--tau", selftest_tau, "Tolerance override");
  selftest_cmd->add_option("--group", selftest_group, "Restrict to one group spec");
  selftest_cmd->callback(
      [&] { exit_code = bent::cli::run_selftest(selftest_tau, selftest_group) == 0 ? 0 : 1; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == errc::too_large ? kExitUsage : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return exit_code;
}
