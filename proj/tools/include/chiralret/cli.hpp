#pragma once

// Configuration ingestion and command dispatch for the chiralret tool.
//
// Config file (JSON):
//   {
//     "constants": {"c": .., "eps0": .., "mu0": .., "hbar": ..},      optional
//     "molecules": {"<name>": {"d_e_Cm": .., "d_m_Cm": .., "cos_theta": ..,
//                              "handedness": "left"|"right", "omega0_rad_s": ..}},
//     "donor": "<name>", "acceptor": "<name>",   optional with a single molecule
//     "medium": {"n_re": .., "n_im": ..} | {"eps_re": .., "eps_im": .., "mu_re": .., "mu_im": ..}
//               | "<preset>",                    optional, default vacuum
//     "lfc": "off"|"onsager", "variant": "product_consistent"|"as_printed",
//     "separation_m": ..,                        optional, used by `rate`
//     "media": [{"name": .., "n_re": .., "n_im": ..}, ...]   optional, used by `table`
//   }

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chiralret/discrim.hpp"
#include "chiralret/types.hpp"

namespace chiralret::cli {

/// Malformed JSON. line() and column() are 1-based.
class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(const std::string& source, std::size_t line, std::size_t column,
                   const std::string& detail);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct RunConfig {
  Constants constants = Constants::si();
  std::map<std::string, Molecule> molecules;
  std::string donor;
  std::string acceptor;
  Medium medium = Medium::vacuum();
  LocalField lfc = LocalField::off;
  ClosedFormVariant variant = kDefaultVariant;
  std::optional<double> separation_m;
  std::vector<NamedIndex> media = reference_media();

  const Molecule& donor_molecule() const { return molecules.at(donor); }
  const Molecule& acceptor_molecule() const { return molecules.at(acceptor); }

  /// TransferConfig at separation r.
  TransferConfig transfer(double r) const;
};

/// Throws ConfigParseError for bad JSON and ValidationError naming the
/// offending key for anything else (unknown keys included).
RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
RunConfig parse_config(const std::string& path);

enum class Command { rate, scan_r, scan_n, optimize_n, table, validate };

/// Throws ValidationError for unknown names.
Command parse_command(const std::string& name);

struct Options {
  Command command = Command::rate;
  std::optional<std::string> config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> report_path;

  std::optional<double> r;
  double r_min = 1e-9;
  double r_max = 1e-5;
  std::size_t points = 200;
  bool log = true;
  std::string route = "closed";

  double re_min = 0.0, re_max = 3.0;
  std::size_t re_count = 61;
  double im_min = 0.0, im_max = 3.0;
  std::size_t im_count = 61;

  std::optional<std::string> branch;  // both when absent
  std::string target = "far";
  std::string mode = "derived_default";
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitOracle = 2;

/// Runs one command. CSV goes to opts.out_path or `out`; human-readable
/// summaries go to `out` only when a file receives the CSV. Errors are
/// written to `err`.
int run(const Options& opts, std::ostream& out, std::ostream& err);

/// CSV emitters, exposed for golden-file tests. Numbers use %.11e.
std::string format_number(double v);
std::string rate_csv(const RateBreakdown& b, double r);
std::string scan_r_csv(const discrim::SeparationScan& scan);
std::string scan_n_csv(const discrim::ScanGrid& grid);
std::string table_csv(const std::vector<discrim::TableRow>& rows);

}  // namespace chiralret::cli
