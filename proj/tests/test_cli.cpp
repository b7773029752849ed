#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chiralret/cli.hpp"
#include "chiralret/errors.hpp"

using namespace chiralret;
using namespace chiralret::cli;

namespace {

const char* kMolecule = R"("molecules": {"M": {"d_e_Cm": 2.44e-31, "d_m_Cm": 3.31e-32,
  "cos_theta": 0.98, "handedness": "left", "omega0_rad_s": 6.44e15}})";

std::string with(const std::string& extra) {
  return std::string("{") + kMolecule + (extra.empty() ? "" : ", " + extra) + "}";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int code;
  std::string out, err;
};

Result invoke(Options o) {
  std::ostringstream out, err;
  const int code = run(o, out, err);
  return {code, out.str(), err.str()};
}

Options fixture(Command c) {
  Options o;
  o.command = c;
  o.config_path = CHIRALRET_FIXTURE;
  return o;
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("chiralret_test_" + name);
}

}  // namespace

TEST_CASE("bundled fixture") {
  const RunConfig cfg = parse_config(CHIRALRET_FIXTURE);
  const Molecule& m = cfg.donor_molecule();
  const Molecule ref = molecule_3mcp();
  CHECK(m.d_e() == ref.d_e());
  CHECK(m.d_m() == ref.d_m());
  CHECK(m.cos_theta() == 0.98);
  CHECK(m.handedness() == Handedness::left);
  CHECK(m.omega0() == ref.omega0());
  CHECK(cfg.medium.is_vacuum());
  CHECK(cfg.lfc == LocalField::onsager);
  CHECK(cfg.variant == ClosedFormVariant::product_consistent);
  REQUIRE(cfg.separation_m);
  CHECK(*cfg.separation_m == 1e-9);
}

TEST_CASE("config validation") {
  auto field_of = [](const std::string& text) -> std::string {
    try {
      parse_config_text(text);
    } catch (const ValidationError& e) {
      return e.field();
    }
    return "";
  };

  const RunConfig ok = parse_config_text(with(""));
  CHECK(ok.donor == "M");
  CHECK(ok.acceptor == "M");
  CHECK(ok.lfc == LocalField::off);

  CHECK(field_of(R"({"molecules": {"M": {"d_e_Cm": 1e-31, "d_m_Cm": 1e-32, "cos_theta": 0.5,
    "handedness": "left"}}})") == "molecules.M.omega0_rad_s");
  CHECK(field_of(R"({"molecules": {"M": {"d_e_Cm": 1e-31, "d_m_Cm": 1e-32, "cos_theta": 0.5,
    "handedness": "achiral", "omega0_rad_s": 1e15}}})") == "molecules.M.handedness");
  CHECK(field_of(R"({"molecules": {"M": {"d_e_Cm": 1e-31, "d_m_Cm": 1e-32, "cos_theta": 1.5,
    "handedness": "left", "omega0_rad_s": 1e15}}})") == "molecules.M.cos_theta");
  CHECK(parse_config_text(R"({"molecules": {"M": {"d_e_Cm": 1e-31, "d_m_Cm": 1e-32,
    "cos_theta": 0.5, "handedness": "right", "omega0_rad_s": 1e15}}})")
            .donor_molecule()
            .handedness() == Handedness::right);

  CHECK(field_of(with(R"("colour": "blue")")) == "colour");
  CHECK(field_of(with(R"("medium": {"n_re": 1.3, "k": 0})")) == "medium.k");
  CHECK(field_of(with(R"("lfc": "maybe")")) == "lfc");
  CHECK(field_of(with(R"("variant": "other")")) == "variant");
  CHECK(field_of(with(R"("donor": "Q")")) == "donor");
  CHECK(field_of(with(R"("medium": {"n_re": 1.3, "n_im": -0.1})")) != "");
  CHECK(field_of(with(R"("separation_m": -1)")) == "separation_m");
  CHECK(field_of("{}") == "molecules");

  const RunConfig eps = parse_config_text(
      with(R"("medium": {"eps_re": 2.0, "eps_im": 0.1, "mu_re": 1.1}, "lfc": "onsager")"));
  CHECK(eps.medium.eps() == cplx{2.0, 0.1});
  CHECK(eps.medium.mu() == cplx{1.1, 0.0});
  CHECK(parse_config_text(with(R"("medium": "mercury")")).medium.eps() ==
        reference_medium("mercury").eps());

  const RunConfig media = parse_config_text(with(R"("media": [{"name": "glass", "n_re": 1.5}])"));
  REQUIRE(media.media.size() == 1);
  CHECK(media.media[0].name == "glass");
}

TEST_CASE("parse errors carry position") {
  try {
    parse_config_text("{\n  \"molecules\": ,\n}", "bad.json");
    FAIL("expected ConfigParseError");
  } catch (const ConfigParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 16);
    CHECK(std::string(e.what()).rfind("bad.json:2:16:", 0) == 0);
  }
}

TEST_CASE("commands and exit codes") {
  const Result rate = invoke(fixture(Command::rate));
  CHECK(rate.code == kExitOk);
  CHECK(rate.out.rfind("r_m,gamma_nd_s-2,gamma_disc_s-2,gamma_L_s-2,gamma_R_s-2,S\n", 0) == 0);
  CHECK(rate.err.empty());

  Options bad = fixture(Command::scan_r);
  bad.r_min = 1e-6;
  bad.r_max = 1e-9;
  const Result br = invoke(bad);
  CHECK(br.code == kExitInvalid);
  CHECK(br.out.empty());
  CHECK(br.err.find("r_min") != std::string::npos);

  Options missing;
  missing.command = Command::table;
  CHECK(invoke(missing).code == kExitInvalid);

  Options nofile = fixture(Command::table);
  nofile.config_path = "/nonexistent/cfg.json";
  CHECK(invoke(nofile).code == kExitInvalid);

  Options val;
  val.command = Command::validate;
  const auto report = temp("report.txt");
  val.report_path = report.string();
  const Result v = invoke(val);
  CHECK(v.code == kExitOk);
  CHECK(v.out.rfind("check,max_rel_error,tolerance,pass,variant,note\n", 0) == 0);
  CHECK(slurp(report).find("[PASS] trace_vs_closed") != std::string::npos);
  std::filesystem::remove(report);

  Options opt = fixture(Command::optimize_n);
  opt.branch = "sub_unity";
  const Result o = invoke(opt);
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("sub_unity,far,4.54050") != std::string::npos);

  Options flat = fixture(Command::optimize_n);
  flat.target = "sideways";
  CHECK(invoke(flat).code == kExitInvalid);
}

TEST_CASE("table output") {
  const Result t = invoke(fixture(Command::table));
  REQUIRE(t.code == kExitOk);
  std::istringstream lines(t.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "medium,n_re,n_im,s_near,s_far");
  std::getline(lines, line);
  CHECK(line.rfind("water,1.40000000000e+00,1.00000000000e-08,4.8474489675", 0) == 0);
  int rows = 1;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 5);

  const auto out = temp("table.csv");
  Options f = fixture(Command::table);
  f.out_path = out.string();
  const Result tf = invoke(f);
  CHECK(tf.code == kExitOk);
  CHECK(slurp(out) == t.out);
  CHECK(tf.out.find("water") != std::string::npos);
  CHECK(tf.out.find('%') != std::string::npos);
  std::filesystem::remove(out);
}

TEST_CASE("csv is byte-identical across runs") {
  Options n = fixture(Command::scan_n);
  n.re_count = 17;
  n.im_count = 9;
  Options r = fixture(Command::scan_r);
  r.points = 25;
  for (const Options& o : {n, r, fixture(Command::rate), fixture(Command::table)}) {
    const Result a = invoke(o), b = invoke(o);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find('\r') == std::string::npos);
    CHECK(a.out.back() == '\n');
  }
  const Result grid = invoke(n);
  CHECK(grid.out.rfind("n_re,n_im,s_near,s_far\n", 0) == 0);
  CHECK(grid.out.find("0.00000000000e+00,0.00000000000e+00,nan,nan\n") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0353355155779) == "3.53355155779e-02");
  CHECK(format_number(-1.0) == "-1.00000000000e+00");
  CHECK(parse_command("scan-n") == Command::scan_n);
  CHECK_THROWS_AS(parse_command("plot"), ValidationError);
}
