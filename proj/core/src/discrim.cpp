#include "chiralret/discrim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "chiralret/errors.hpp"
#include "chiralret/greens.hpp"
#include "chiralret/rates.hpp"

namespace chiralret::discrim {

namespace {

double sq(double v) { return v * v; }

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Fixed r for building a config whose limits do not depend on r.
constexpr double kDummyR = 1e-9;

TransferConfig config_for(const Molecule& donor, const Molecule& acceptor, const Medium& med,
                          LocalField lfc) {
  return make_transfer_config(donor, acceptor, kDummyR, med, lfc);
}

void check_axis(const Axis& a, const char* field) {
  if (!std::isfinite(a.min) || !std::isfinite(a.max))
    throw ValidationError(field, "bounds must be finite");
  if (a.min < 0.0) throw ValidationError(field, "lower bound must be >= 0");
  if (a.max < a.min) throw ValidationError(field, "max must be >= min");
  if (a.count == 0) throw ValidationError(field, "count must be >= 1");
}

}  // namespace

std::string_view to_string(LimitMode m) noexcept {
  return m == LimitMode::derived_default ? "derived_default" : "paper_printed";
}

std::string_view to_string(Branch b) noexcept {
  return b == Branch::sub_unity ? "sub_unity" : "super_unity";
}

std::string_view to_string(Target t) noexcept { return t == Target::near ? "near" : "far"; }

double degree_S(const TransferConfig& cfg) { return rates::closed_form_terms(cfg).ratio(); }

SLimits s_limits(const TransferConfig& cfg, LimitMode mode) {
  cplx ce{1.0, 0.0}, cm{1.0, 0.0};
  if (cfg.lfc == LocalField::onsager) {
    const auto f = greens::lfc_factors(cfg.medium);
    ce = f.electric;
    cm = f.magnetic;
  }
  const cplx n = refractive_index(cfg.medium);
  const double n2 = std::norm(n);
  const double ce2 = std::norm(ce);
  const double cm2 = std::norm(cm);
  const Molecule& a = cfg.acceptor;
  const Molecule& d = cfg.donor;
  const double rr = rotatory_over_c(d) * rotatory_over_c(a);
  const cplx z = std::conj(ce) * cm * n;
  const double re_z2 = (z * z).real();

  const double d_inf = (ce2 * sq(a.d_e()) + cm2 * n2 * sq(a.d_m())) *
                       (ce2 * sq(d.d_e()) + cm2 * n2 * sq(d.d_m()));

  if (mode == LimitMode::derived_default) {
    const double d0 = ce2 * ce2 * sq(a.d_e()) * sq(d.d_e()) +
                      cm2 * cm2 * n2 * n2 * sq(a.d_m()) * sq(d.d_m());
    return SLimits{2.0 * rr * re_z2 / d0, 4.0 * rr * sq(z.real()) / d_inf, mode};
  }
  // As printed: |c_e|^2 and |c_m|^2 in the near denominator, factors 4 and 8.
  const double d0 = ce2 * sq(a.d_e()) * sq(d.d_e()) + cm2 * n2 * n2 * sq(a.d_m()) * sq(d.d_m());
  return SLimits{4.0 * rr * re_z2 / d0, 8.0 * rr * sq(z.real()) / d_inf, mode};
}

SeparationScan scan_separation(const TransferConfig& cfg, double r_min, double r_max,
                               std::size_t points, bool logspace) {
  if (!std::isfinite(r_min) || r_min <= 0.0) throw ValidationError("r_min", "must be > 0");
  if (!std::isfinite(r_max) || r_max <= r_min)
    throw ValidationError("r_max", "must be greater than r_min");
  if (points < 2) throw ValidationError("points", "must be >= 2");

  SeparationScan scan;
  scan.rows.reserve(points);
  const double span = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / span;
    double r = logspace ? r_min * std::pow(r_max / r_min, t) : r_min + (r_max - r_min) * t;
    if (i == 0) r = r_min;
    if (i + 1 == points) r = r_max;
    const auto terms = rates::closed_form_terms(with_separation(cfg, r));
    const auto p = terms.rates();
    scan.rows.push_back({r, p.gamma_nd, p.gamma_disc, terms.ratio()});
  }

  bool up = true, down = true;
  for (std::size_t i = 1; i < scan.rows.size(); ++i) {
    up = up && scan.rows[i].S >= scan.rows[i - 1].S;
    down = down && scan.rows[i].S <= scan.rows[i - 1].S;
  }
  scan.s_monotone = up || down;
  return scan;
}

double retardation_crossover(const TransferConfig& cfg, double r_lo, double r_hi) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw ValidationError("r_range", "need 0 < r_lo < r_hi");
  const SLimits lim = s_limits(cfg);
  const double mid = 0.5 * (lim.s_near + lim.s_far);
  auto f = [&](double log_r) { return degree_S(with_separation(cfg, std::exp(log_r))) - mid; };

  double a = std::log(r_lo), b = std::log(r_hi);
  double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return r_lo;
  if (fb == 0.0) return r_hi;
  if ((fa > 0.0) == (fb > 0.0)) throw DomainError("S does not cross its midpoint in the range");
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return std::exp(0.5 * (a + b));
}

double Axis::at(std::size_t i) const {
  if (count <= 1) return min;
  if (i + 1 == count) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

ScanGrid scan_complex_n(const Molecule& donor, const Molecule& acceptor, const GridSpec& grid,
                        LocalField lfc, LimitMode mode, unsigned threads) {
  check_axis(grid.re_n, "re_n");
  check_axis(grid.im_n, "im_n");
  if (donor.omega0() != acceptor.omega0())
    throw ValidationError("omega0", "donor and acceptor transition frequencies must be equal");

  ScanGrid out{grid, mode, {}};
  const std::size_t total = grid.re_n.count * grid.im_n.count;
  out.values.assign(total, SLimits{kNaN, kNaN, mode});

  auto eval = [&](std::size_t idx) {
    const cplx n{grid.re_n.at(idx % grid.re_n.count), grid.im_n.at(idx / grid.re_n.count)};
    try {
      out.values[idx] = s_limits(config_for(donor, acceptor, medium_from_index(n), lfc), mode);
    } catch (const PoleError&) {
    } catch (const ValidationError&) {
      // n = 0
    }
  };

  unsigned nt = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  nt = static_cast<unsigned>(std::min<std::size_t>(nt, total));
  if (nt <= 1) {
    for (std::size_t i = 0; i < total; ++i) eval(i);
    return out;
  }
  // Strided partition; each index is written by exactly one worker.
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < total; i += nt) eval(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

Optimum optimize_real_n(const Molecule& donor, const Molecule& acceptor, Branch branch,
                        Target target, LocalField lfc) {
  auto value = [&](double log_n) {
    const SLimits lim =
        s_limits(config_for(donor, acceptor, medium_from_index(cplx{std::exp(log_n), 0.0}), lfc));
    return target == Target::near ? lim.s_near : lim.s_far;
  };
  auto score = [&](double log_n) { return std::abs(value(log_n)); };

  // 64 points per decade over [1e-3, 1e3]; keep the branch side of n = 1.
  constexpr int kPerDecade = 64;
  const double step = std::log(10.0) / kPerDecade;
  std::vector<double> grid;
  for (int i = -3 * kPerDecade; i <= 3 * kPerDecade; ++i) {
    if (branch == Branch::sub_unity ? i <= 0 : i >= 0) grid.push_back(i * step);
  }

  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = score(grid[i]);
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  if (!(best_score > 0.0)) throw FlatLandscapeError("S vanishes over the whole branch");
  if (best == 0 || best + 1 == grid.size())
    throw FlatLandscapeError("no interior maximum on branch " + std::string(to_string(branch)));

  // Golden section on log n; a relative tolerance of 1e-6 in n.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid[best - 1], b = grid[best + 1];
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = score(x1), f2 = score(x2);
  while (b - a > 1e-6) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = score(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = score(x1);
    }
  }
  const double x = 0.5 * (a + b);
  return Optimum{std::exp(x), value(x)};
}

std::vector<TableRow> media_table(const Molecule& donor, const Molecule& acceptor,
                                  const std::vector<NamedIndex>& media) {
  std::vector<TableRow> rows;
  rows.reserve(media.size());
  for (const auto& m : media) {
    const SLimits lim = s_limits(config_for(donor, acceptor, medium_from_index(m.n),
                                            LocalField::onsager));
    rows.push_back({m.name, m.n, lim.s_near, lim.s_far});
  }
  return rows;
}

}  // namespace chiralret::discrim
