// semiradius: A-seminorms, A-numerical radii and the relation catalog from
// the command line.

#include <iostream>

#include <CLI11.hpp>

#include "semiradius/cli.hpp"
#include "semiradius/instance_gen.hpp"

namespace sc = semiradius::cli;

namespace {

void add_relation_flags(CLI::App* cmd, sc::RelationFlags& f) {
  cmd->add_option("--z1", f.z1, "z1 for R13, e.g. 1+0i");
  cmd->add_option("--z2", f.z2, "z2 for R13, e.g. -1+0i");
  cmd->add_flag("--plain-norm", f.plain_norm,
                "read the norms of R17/R18 as plain operator norms (report-only)");
  cmd->add_option("--m-a-reading", f.m_a_reading, "real part used by m_A in R28/R29")
      ->check(CLI::IsMember({"a-sharp", "plain"}));
  cmd->add_flag("--literal-r29-p", f.literal_r29_p, "R29 with P built from T1, T2");
  cmd->add_flag("--inject-fault", f.inject_fault,
                "test fixture: negate every inequality slack")
      ->group("");
}

std::string profile_help() {
  std::string s = "instance profile:";
  for (const auto& p : semiradius::profile_names()) s += " " + p;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"A-seminorms, A-numerical radii and operator-matrix relations for a PSD weight A",
               "semiradius"};
  app.set_version_flag("--version", std::string(sc::kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  sc::GlobalOptions g;
  app.add_flag("--json", g.json, "machine-readable JSON on stdout");
  app.add_option("--seed", g.seed, "base seed (fuzz instance i uses seed + i)");
  app.add_option("--tol", g.tol, "rank tolerance for factorizing A from a file")
      ->check(CLI::Range(1e-300, 0.5));
  app.add_option("--grid", g.grid, "theta grid points of the sweep")->check(CLI::Range(16, 1 << 20));
  app.add_option("--out", g.out, "write the JSON report (or range data) to this path");

  std::string file;
  std::string quantity;
  std::optional<std::string> op;
  auto* compute = app.add_subcommand("compute", "print one quantity of an operator");
  compute->add_option("file", file, "instance file")->required();
  compute->add_option("quantity", quantity, "seminorm | radius | crawford | m_a | sharp | member")
      ->required();
  compute->add_option("--op", op, "operator name (default: the only one, else T)");

  std::vector<std::string> ids;
  sc::RelationFlags flags;
  auto* check = app.add_subcommand("check", "evaluate catalog relations on an instance file");
  check->add_option("file", file, "instance file")->required();
  check->add_option("relations", ids, "relation ids (R1..R31) or all");
  add_relation_flags(check, flags);

  sc::FuzzOptions fz;
  auto* fuzz = app.add_subcommand("fuzz", "evaluate the catalog on generated instances");
  fuzz->add_option("--profile", fz.profile, profile_help());
  fuzz->add_option("--count", fz.count, "number of instances")->check(CLI::PositiveNumber);
  fuzz->add_option("--corpus", fz.corpus, "directory for shrunk witness files");
  fuzz->add_option("--jobs", fz.jobs, "worker threads")->check(CLI::PositiveNumber);
  fuzz->add_option("--max-shrink-steps", fz.max_shrink_steps, "shrink budget per failure");
  fuzz->add_option("--relations", fz.relations, "restrict to these relation ids");
  add_relation_flags(fuzz, flags);

  std::string range_op = "T";
  int npoints = 512;
  std::string format = "csv";
  auto* range = app.add_subcommand("range", "export the A-numerical range boundary");
  range->add_option("file", file, "instance file")->required();
  range->add_option("--op", range_op, "operator name");
  range->add_option("--npoints", npoints, "boundary samples")->check(CLI::Range(3, 1 << 22));
  range->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sc::kExitInput;
  }

  if (*compute) return sc::cmd_compute(g, file, quantity, op, std::cout, std::cerr);
  if (*check) return sc::cmd_check(g, file, ids, flags, std::cout, std::cerr);
  if (*fuzz) return sc::cmd_fuzz(g, fz, flags, std::cout, std::cerr);
  if (*range) return sc::cmd_range(g, file, range_op, npoints, format, std::cout, std::cerr);
  return sc::kExitInput;
}
