#include <iostream>

#include <CLI11.hpp>

#include "chiralret/cli.hpp"
#include "chiralret/errors.hpp"

int main(int argc, char** argv) {
  namespace cli = chiralret::cli;
  cli::Options o;
  std::string command = "rate";
  std::string config, out, report, branch;
  double r = 0.0;

  CLI::App app{"Chiral resonance energy transfer rates and discrimination"};
  app.add_option("--command", command, "rate|scan-r|scan-n|optimize-n|table|validate")
      ->check(CLI::IsMember({"rate", "scan-r", "scan-n", "optimize-n", "table", "validate"}));
  app.add_option("--config", config, "JSON configuration file");
  app.add_option("--out", out, "CSV output file (default: stdout)");
  app.add_option("--report", report, "validate: plain-text report file");
  app.add_option("--r", r, "rate: separation in m");
  app.add_option("--route", o.route, "rate: closed|trace")
      ->check(CLI::IsMember({"closed", "trace"}));
  app.add_option("--r-min", o.r_min, "scan-r: smallest separation in m");
  app.add_option("--r-max", o.r_max, "scan-r: largest separation in m");
  app.add_option("--points", o.points, "scan-r: number of separations");
  app.add_flag("--log,!--linear", o.log, "scan-r: log spacing (default) or linear");
  app.add_option("--re-min", o.re_min, "scan-n: Re(n) lower bound");
  app.add_option("--re-max", o.re_max, "scan-n: Re(n) upper bound");
  app.add_option("--re-count", o.re_count, "scan-n: Re(n) points");
  app.add_option("--im-min", o.im_min, "scan-n: Im(n) lower bound");
  app.add_option("--im-max", o.im_max, "scan-n: Im(n) upper bound");
  app.add_option("--im-count", o.im_count, "scan-n: Im(n) points");
  app.add_option("--branch", branch, "optimize-n: sub_unity|super_unity (default both)")
      ->check(CLI::IsMember({"sub_unity", "super_unity"}));
  app.add_option("--target", o.target, "optimize-n: near|far")
      ->check(CLI::IsMember({"near", "far"}));
  app.add_option("--mode", o.mode, "scan-n: derived_default|paper_printed")
      ->check(CLI::IsMember({"derived_default", "paper_printed"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitInvalid;
  }

  o.command = cli::parse_command(command);
  if (!config.empty()) o.config_path = config;
  if (!out.empty()) o.out_path = out;
  if (!report.empty()) o.report_path = report;
  if (!branch.empty()) o.branch = branch;
  if (app.count("--r")) o.r = r;
  return cli::run(o, std::cout, std::cerr);
}
