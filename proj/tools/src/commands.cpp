#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "chiralret/cli.hpp"
#include "chiralret/errors.hpp"
#include "chiralret/oracle.hpp"
#include "chiralret/rates.hpp"

namespace chiralret::cli {

namespace {

RunConfig default_config() {
  RunConfig cfg;
  cfg.molecules.emplace("3MCP", molecule_3mcp());
  cfg.donor = cfg.acceptor = "3MCP";
  return cfg;
}

discrim::LimitMode parse_mode(const std::string& s) {
  if (s == "derived_default") return discrim::LimitMode::derived_default;
  if (s == "paper_printed") return discrim::LimitMode::paper_printed;
  throw ValidationError("mode", "must be derived_default or paper_printed");
}

discrim::Branch parse_branch(const std::string& s) {
  if (s == "sub_unity") return discrim::Branch::sub_unity;
  if (s == "super_unity") return discrim::Branch::super_unity;
  throw ValidationError("branch", "must be sub_unity or super_unity");
}

discrim::Target parse_target(const std::string& s) {
  if (s == "near") return discrim::Target::near;
  if (s == "far") return discrim::Target::far;
  throw ValidationError("target", "must be near or far");
}

rates::RateRoute parse_route(const std::string& s) {
  if (s == "closed") return rates::RateRoute::closed_form;
  if (s == "trace") return rates::RateRoute::trace;
  throw ValidationError("route", "must be closed or trace");
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("out", "cannot write '" + path + "'");
  f << data;
  if (!f) throw ValidationError("out", "write to '" + path + "' failed");
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%7.2f%%", 100.0 * v);
  return buf;
}

std::string table_echo(const std::vector<discrim::TableRow>& rows) {
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-12s %-22s %9s %9s\n", "medium", "n", "S_near", "S_far");
  os << buf;
  for (const auto& r : rows) {
    char n[48];
    std::snprintf(n, sizeof n, "%.4g%+.3gi", r.n.real(), r.n.imag());
    std::snprintf(buf, sizeof buf, "%-12s %-22s %9s %9s\n", r.name.c_str(), n,
                  percent(r.s_near).c_str(), percent(r.s_far).c_str());
    os << buf;
  }
  return os.str();
}

struct Output {
  std::string csv;
  std::string summary;  // shown only when the CSV goes to a file
  int code = kExitOk;
};

Output dispatch(const Options& opts, const RunConfig& cfg) {
  Output o;
  switch (opts.command) {
    case Command::rate: {
      const std::optional<double> r = opts.r ? opts.r : cfg.separation_m;
      if (!r) throw ValidationError("r", "give --r or separation_m in the config");
      const RateBreakdown b = rates::rates_LR(cfg.transfer(*r), parse_route(opts.route));
      o.csv = rate_csv(b, *r);
      o.summary = "S = " + format_number(b.S) + "\n";
      break;
    }
    case Command::scan_r: {
      if (!(opts.r_min > 0.0)) throw ValidationError("r_min", "must be > 0");
      const auto scan = discrim::scan_separation(cfg.transfer(opts.r_min), opts.r_min, opts.r_max,
                                                 opts.points, opts.log);
      o.csv = scan_r_csv(scan);
      o.summary = std::string("S monotone: ") + (scan.s_monotone ? "yes" : "no") + "\n";
      break;
    }
    case Command::scan_n: {
      const discrim::GridSpec spec{{opts.re_min, opts.re_max, opts.re_count},
                                   {opts.im_min, opts.im_max, opts.im_count}};
      const auto grid = discrim::scan_complex_n(cfg.donor_molecule(), cfg.acceptor_molecule(),
                                                spec, cfg.lfc, parse_mode(opts.mode));
      o.csv = scan_n_csv(grid);
      break;
    }
    case Command::optimize_n: {
      const discrim::Target target = parse_target(opts.target);
      std::vector<discrim::Branch> branches;
      if (opts.branch) branches.push_back(parse_branch(*opts.branch));
      else branches = {discrim::Branch::sub_unity, discrim::Branch::super_unity};
      o.csv = "branch,target,n_star,s_star\n";
      for (auto b : branches) {
        const auto opt = discrim::optimize_real_n(cfg.donor_molecule(), cfg.acceptor_molecule(),
                                                  b, target, cfg.lfc);
        o.csv += std::string(discrim::to_string(b)) + "," + std::string(discrim::to_string(target)) +
                 "," + format_number(opt.n_star) + "," + format_number(opt.s_star) + "\n";
      }
      break;
    }
    case Command::table: {
      const auto rows = discrim::media_table(cfg.donor_molecule(), cfg.acceptor_molecule(),
                                             cfg.media);
      o.csv = table_csv(rows);
      o.summary = table_echo(rows);
      break;
    }
    case Command::validate: {
      oracle::SuiteOptions so{cfg.donor_molecule(), cfg.acceptor_molecule()};
      const auto rep = oracle::run_validation_suite(so);
      o.csv = rep.to_csv();
      o.summary = rep.to_text();
      if (opts.report_path) write_file(*opts.report_path, o.summary);
      if (!rep.all_pass()) o.code = kExitOracle;
      break;
    }
  }
  return o;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "rate") return Command::rate;
  if (name == "scan-r") return Command::scan_r;
  if (name == "scan-n") return Command::scan_n;
  if (name == "optimize-n") return Command::optimize_n;
  if (name == "table") return Command::table;
  if (name == "validate") return Command::validate;
  throw ValidationError("command", "unknown command '" + name + "'");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string rate_csv(const RateBreakdown& b, double r) {
  return "r_m,gamma_nd_s-2,gamma_disc_s-2,gamma_L_s-2,gamma_R_s-2,S\n" + format_number(r) + "," +
         format_number(b.gamma_nd) + "," + format_number(b.gamma_disc) + "," +
         format_number(b.gamma_L) + "," + format_number(b.gamma_R) + "," + format_number(b.S) +
         "\n";
}

std::string scan_r_csv(const discrim::SeparationScan& scan) {
  std::string s = "r_m,gamma_nd_s-2,gamma_disc_s-2,S\n";
  for (const auto& row : scan.rows)
    s += format_number(row.r) + "," + format_number(row.gamma_nd) + "," +
         format_number(row.gamma_disc) + "," + format_number(row.S) + "\n";
  return s;
}

std::string scan_n_csv(const discrim::ScanGrid& grid) {
  std::string s = "n_re,n_im,s_near,s_far\n";
  for (std::size_t j = 0; j < grid.spec.im_n.count; ++j)
    for (std::size_t i = 0; i < grid.spec.re_n.count; ++i) {
      const auto& v = grid.at(i, j);
      s += format_number(grid.spec.re_n.at(i)) + "," + format_number(grid.spec.im_n.at(j)) + "," +
           format_number(v.s_near) + "," + format_number(v.s_far) + "\n";
    }
  return s;
}

std::string table_csv(const std::vector<discrim::TableRow>& rows) {
  std::string s = "medium,n_re,n_im,s_near,s_far\n";
  for (const auto& r : rows)
    s += r.name + "," + format_number(r.n.real()) + "," + format_number(r.n.imag()) + "," +
         format_number(r.s_near) + "," + format_number(r.s_far) + "\n";
  return s;
}

int run(const Options& opts, std::ostream& out, std::ostream& err) {
  try {
    RunConfig cfg;
    if (opts.config_path) cfg = parse_config(*opts.config_path);
    else if (opts.command == Command::validate) cfg = default_config();
    else throw ValidationError("config", "--config is required for this command");

    const Output o = dispatch(opts, cfg);
    if (opts.out_path) {
      write_file(*opts.out_path, o.csv);
      out << o.summary;
    } else {
      out << o.csv;
    }
    if (o.code == kExitOracle) err << "validation suite reported failing checks\n";
    return o.code;
  } catch (const ConfigParseError& e) {
    err << "config parse error: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
  } catch (const FlatLandscapeError& e) {
    err << "optimizer: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInvalid;
}

}  // namespace chiralret::cli
