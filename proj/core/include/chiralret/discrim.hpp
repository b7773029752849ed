#pragma once

// Degree of discrimination S = gamma_disc / gamma_nd, its near/far limits,
// separation and refractive-index scans, and real-index optimization.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "chiralret/types.hpp"

namespace chiralret::discrim {

enum class LimitMode { derived_default, paper_printed };

std::string_view to_string(LimitMode m) noexcept;

struct SLimits {
  double s_near;
  double s_far;
  LimitMode mode;
};

/// S from the closed forms with the attenuation factor cancelled.
double degree_S(const TransferConfig& cfg);

/// derived_default: r -> 0 and r -> inf limits of the product_consistent
/// closed forms. paper_printed: the printed lfc limit expressions with
/// c_e = c_m = 1 when lfc is off (in vacuum exactly twice derived_default).
SLimits s_limits(const TransferConfig& cfg, LimitMode mode = LimitMode::derived_default);

struct SeparationRow {
  double r;           // m
  double gamma_nd;    // s^-2
  double gamma_disc;  // s^-2
  double S;
};

struct SeparationScan {
  std::vector<SeparationRow> rows;
  bool s_monotone;  // S non-decreasing or non-increasing over the whole scan
};

/// Throws ValidationError unless 0 < r_min < r_max and points >= 2.
SeparationScan scan_separation(const TransferConfig& cfg, double r_min, double r_max,
                               std::size_t points, bool logspace = true);

/// Separation where S crosses the midpoint of its derived limits, by
/// bisection on log r inside [r_lo, r_hi]. Throws DomainError if S does
/// not straddle the midpoint there.
double retardation_crossover(const TransferConfig& cfg, double r_lo = 1e-10, double r_hi = 1e-4);

struct Axis {
  double min;
  double max;
  std::size_t count;

  /// Evenly spaced; count == 1 gives {min}.
  double at(std::size_t i) const;
};

struct GridSpec {
  Axis re_n;
  Axis im_n;
};

/// values[i_im * re.count + i_re]; NaN marks points where the limits are
/// undefined (n = 0, or n^2 landing exactly on the c_e pole at eps = -1/2).
struct ScanGrid {
  GridSpec spec;
  LimitMode mode;
  std::vector<SLimits> values;

  const SLimits& at(std::size_t i_re, std::size_t i_im) const {
    return values[i_im * spec.re_n.count + i_re];
  }
};

/// Medium eps = n^2, mu = 1 at every grid point. Throws ValidationError for
/// negative axis bounds, max < min or zero counts. `threads` = 0 uses
/// hardware concurrency; the result does not depend on it.
ScanGrid scan_complex_n(const Molecule& donor, const Molecule& acceptor, const GridSpec& grid,
                        LocalField lfc, LimitMode mode = LimitMode::derived_default,
                        unsigned threads = 0);

enum class Branch { sub_unity, super_unity };
enum class Target { near, far };

std::string_view to_string(Branch b) noexcept;
std::string_view to_string(Target t) noexcept;

struct Optimum {
  double n_star;
  double s_star;
};

/// Maximizes |S limit| over real n on one side of n = 1 (derived_default).
/// Throws FlatLandscapeError if the best grid point sits on the branch edge
/// or the landscape is identically zero.
Optimum optimize_real_n(const Molecule& donor, const Molecule& acceptor, Branch branch,
                        Target target, LocalField lfc = LocalField::onsager);

struct TableRow {
  std::string name;
  cplx n;
  double s_near;
  double s_far;
};

/// derived_default limits with lfc on for each medium.
std::vector<TableRow> media_table(const Molecule& donor, const Molecule& acceptor,
                                  const std::vector<NamedIndex>& media = reference_media());

}  // namespace chiralret::discrim
