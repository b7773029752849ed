#include "chiralret/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chiralret/discrim.hpp"
#include "chiralret/errors.hpp"
#include "chiralret/rates.hpp"

namespace chiralret::oracle {

using greens::ComplexTensor3;
using greens::Coupling;
using greens::SeparationVector;
using greens::Vec3;

namespace {

constexpr cplx kI{0.0, 1.0};

double levi(int i, int j, int l) { return static_cast<double>((i - j) * (j - l) * (l - i)) / 2.0; }

double rel(double a, double b) {
  if (a == b) return 0.0;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) / scale;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool ConsistencyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string ConsistencyReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  max_rel_error=" << fmt(c.max_rel_error)
       << "  tol=" << fmt(c.tolerance);
    if (!c.variant.empty()) os << "  variant=" << c.variant;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << '\n';
  }
  os << "matched closed-form variant: "
     << (matched_variant ? std::string(to_string(*matched_variant)) : std::string("none")) << '\n';
  os << (all_pass() ? "all checks passed" : "some checks FAILED") << '\n';
  return os.str();
}

std::string ConsistencyReport::to_csv() const {
  std::ostringstream os;
  os << "check,max_rel_error,tolerance,pass,variant,note\n";
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e,%.11e", c.max_rel_error, c.tolerance);
    os << csv_field(c.name) << ',' << buf << ',' << (c.pass ? "true" : "false") << ','
       << csv_field(c.variant) << ',' << csv_field(c.note) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- curls

namespace {

struct FdTensors {
  ComplexTensor3 em, me, mm;
};

FdTensors fd_duals(const SeparationVector& rv, double omega, const Medium& med, double h,
                   const Constants& k) {
  auto g_at = [&](double dx, double dy, double dz) {
    const Vec3& v = rv.vec();
    return greens::green_tensor(SeparationVector::make(Vec3{v[0] + dx, v[1] + dy, v[2] + dz}),
                                omega, med, k);
  };
  auto shift = [h](int axis, double s) {
    Vec3 d{0.0, 0.0, 0.0};
    d[axis] = s * h;
    return d;
  };

  ComplexTensor3 d1[3];
  for (int l = 0; l < 3; ++l) {
    const Vec3 p = shift(l, 1.0), m = shift(l, -1.0);
    d1[l] = (g_at(p[0], p[1], p[2]) - g_at(m[0], m[1], m[2])) * cplx{0.5 / h, 0.0};
  }
  ComplexTensor3 d2[3][3];
  for (int l = 0; l < 3; ++l)
    for (int q = l; q < 3; ++q) {
      auto at = [&](double sl, double sq) {
        Vec3 d{0.0, 0.0, 0.0};
        d[l] += sl * h;
        d[q] += sq * h;
        return g_at(d[0], d[1], d[2]);
      };
      d2[l][q] = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) * cplx{0.25 / (h * h), 0.0};
      d2[q][l] = d2[l][q];
    }

  const cplx ik0 = kI * (omega / k.c);
  FdTensors out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx me{}, em{}, mm{};
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) {
          me += levi(i, l, m) * d1[l](m, j);
          em -= levi(j, l, m) * d1[m](i, l);
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
              const double s = levi(i, l, m) * levi(j, p, q);
              if (s != 0.0) mm -= s * d2[l][q](m, p);
            }
        }
      out.me(i, j) = ik0 * me;
      out.em(i, j) = ik0 * em;
      out.mm(i, j) = mm;
    }
  return out;
}

double fd_error(const SeparationVector& rv, double omega, const Medium& med, double h,
                const Constants& k) {
  const FdTensors fd = fd_duals(rv, omega, med, h, k);
  double err = 0.0;
  err = std::max(err, greens::relative_difference(
                          fd.em, greens::dual_green(greens::kEM, rv, omega, med, k)));
  err = std::max(err, greens::relative_difference(
                          fd.me, greens::dual_green(greens::kME, rv, omega, med, k)));
  err = std::max(err, greens::relative_difference(
                          fd.mm, greens::dual_green(greens::kMM, rv, omega, med, k)));
  return err;
}

}  // namespace

CurlCheck curl_fd_check(const SeparationVector& rv, double omega, const Medium& med, double h,
                        const Constants& k) {
  if (!(h > 0.0) || h >= rv.r() / 10.0) throw StepError("step h must satisfy 0 < h < r/10");
  const double e1 = fd_error(rv, omega, med, h, k);
  const double e2 = fd_error(rv, omega, med, h / 2.0, k);
  const double order = (e1 > 0.0 && e2 > 0.0) ? std::log2(e1 / e2) : 0.0;
  return CurlCheck{e1, e2, order};
}

// ------------------------------------------------------- trace vs closed

namespace {

double rate_error(const rates::RatePair& ref, const rates::RatePair& got) {
  double err = rel(ref.gamma_nd, got.gamma_nd);
  if (ref.gamma_disc != 0.0 || got.gamma_disc != 0.0) {
    err = std::max(err, rel(ref.gamma_disc, got.gamma_disc));
  }
  return err;
}

}  // namespace

TraceComparison trace_vs_closed(const Molecule& donor, const Molecule& acceptor) {
  return trace_vs_closed(donor, acceptor, {1e-9, 1e-8, 1e-7, 1e-6},
                         {"vacuum", "water", "biodiesel", "methane", "mercury"});
}

TraceComparison trace_vs_closed(const Molecule& donor, const Molecule& acceptor,
                                const std::vector<double>& radii,
                                const std::vector<std::string>& media) {
  TraceComparison out{{}, 0.0, 0.0};
  for (double r : radii)
    for (const auto& name : media)
      for (LocalField lfc : {LocalField::off, LocalField::onsager}) {
        const Medium med = reference_medium(name);
        const auto pc = make_transfer_config(donor, acceptor, r, med, lfc,
                                             ClosedFormVariant::product_consistent);
        auto ap = pc;
        ap.variant = ClosedFormVariant::as_printed;
        const rates::RatePair trace = rates::reduced_gammas_trace(pc);
        GridPoint gp{r, name, lfc, rate_error(trace, rates::reduced_gammas_closed(pc)),
                     rate_error(trace, rates::reduced_gammas_closed(ap))};
        out.max_err_product_consistent =
            std::max(out.max_err_product_consistent, gp.err_product_consistent);
        out.max_err_as_printed = std::max(out.max_err_as_printed, gp.err_as_printed);
        out.points.push_back(std::move(gp));
      }
  return out;
}

double free_space_reduction(const Molecule& donor, const Molecule& acceptor,
                            const std::vector<double>& radii) {
  double worst = 0.0;
  for (double r : radii) {
    const auto cfg = make_transfer_config(donor, acceptor, r);
    const auto fs = rates::free_space_closed_form(cfg).rates();
    const auto med = rates::medium_closed_form(cfg).rates();
    worst = std::max(worst, rate_error(fs, med));
  }
  return worst;
}

// ---------------------------------------------------------------- limits

LimitCheck limit_consistency(const TransferConfig& cfg) {
  auto pc = cfg;
  pc.variant = ClosedFormVariant::product_consistent;
  const cplx n = refractive_index(pc.medium);
  const double k0n = pc.omega() / pc.constants.c * std::abs(n);
  const discrim::SLimits lim = discrim::s_limits(pc);

  auto err = [](double s, double limit) {
    if (limit == 0.0) return std::abs(s);
    return std::abs(s - limit) / std::abs(limit);
  };

  LimitCheck out{err(discrim::degree_S(with_separation(pc, 1e-6 / k0n)), lim.s_near), {}};
  // Loss adds O(Im(n)/(|n| k0 r)) corrections to the far ratio.
  if (n.imag() <= 1e-3 * std::abs(n))
    out.far_error = err(discrim::degree_S(with_separation(pc, 1e6 / k0n)), lim.s_far);
  return out;
}

// ------------------------------------------------------------ pole check

std::string_view to_string(PoleResponse r) noexcept {
  return r == PoleResponse::lorentz_surrogate ? "lorentz_surrogate" : "susceptibility_squared";
}

namespace {

// Lorentz oscillator in units of omega_D: chi(x) = a / (w2 - x^2 - i g x).
struct Oscillator {
  double a, w2, g;

  cplx chi(double x) const { return a / cplx{w2 - x * x, -g * x}; }
};

Oscillator fit_oscillator(const Medium& med) {
  const cplx chi_d = med.eps() * med.mu() - 1.0;
  const double mag = std::abs(chi_d);
  const double phi = std::arg(chi_d);
  // chi(1) = 2a / e^{-i phi} = |chi_D| e^{i phi}.
  return Oscillator{0.5 * mag, 1.0 + 0.5 * std::cos(phi), 0.5 * std::sin(phi)};
}

struct Integrated {
  cplx value;
  double error;
};

template <class F>
Integrated integrate_pieces(F f, std::vector<double> points, double x_max) {
  points.push_back(0.0);
  points.push_back(x_max);
  std::vector<double> cuts;
  for (double p : points)
    if (p >= 0.0 && p <= x_max) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double re = 0.0, im = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double e_re = 0.0, e_im = 0.0;
    re += GK::integrate([&](double x) { return f(x).real(); }, cuts[i], cuts[i + 1], 12, 1e-12,
                        &e_re);
    im += GK::integrate([&](double x) { return f(x).imag(); }, cuts[i], cuts[i + 1], 12, 1e-12,
                        &e_im);
    err += std::abs(e_re) + std::abs(e_im);
  }
  return Integrated{cplx{re, im}, err};
}

}  // namespace

PoleCheck pole_quadrature_check(double omega_D, const std::vector<double>& epsilons,
                                double omega_max, const Medium& med, int power,
                                PoleResponse response) {
  if (!(omega_D > 0.0) || !std::isfinite(omega_D))
    throw ValidationError("omega_D", "must be finite and > 0");
  if (!(omega_max >= 50.0 * omega_D) || !std::isfinite(omega_max))
    throw ValidationError("omega_max", "must be >= 50 omega_D");
  if (power < 0 || power > 2) throw ValidationError("power", "must be 0, 1 or 2");
  if (epsilons.size() < 2) throw ValidationError("epsilons", "need at least two values");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw ValidationError("epsilons", "must be > 0");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw ValidationError("epsilons", "must be strictly decreasing");
  }
  const cplx chi_d = med.eps() * med.mu() - 1.0;
  if (!(refractive_index(med).imag() > 0.0) || !(chi_d.imag() > 0.0))
    throw ValidationError("medium", "pole check needs an absorbing medium");

  const Oscillator osc = fit_oscillator(med);
  const double w = std::sqrt(osc.w2);
  auto resp = [&](double x) -> cplx {
    if (response == PoleResponse::lorentz_surrogate) return osc.chi(x) / (2.0 * osc.a);
    const cplx c = osc.chi(x);
    return c * c;
  };
  auto f = [power](double x) { return std::pow(x, power); };
  const cplx exact = std::numbers::pi * resp(1.0);  // f(1) = 1 in units of omega_D

  auto run = [&](double e, double x_max) -> cplx {
    auto phi = [&](double x) { return f(x) * resp(x).imag(); };
    const double phi1 = phi(1.0);
    // Pole part integrated analytically; the remainder is bounded.
    auto remainder = [&](double x) -> cplx { return (phi(x) - phi1) / cplx{x - 1.0, -e}; };
    auto mirror = [&](double x) -> cplx { return f(-x) * resp(x).imag() / (x + 1.0); };

    // Geometric cuts around the pole (width e) and the resonance (width g).
    std::vector<double> pts{0.5, 1.0, 2.0, w, 4.0, 10.0, 30.0, 100.0, 300.0, 1000.0};
    for (double s = e; s < 0.5; s *= 4.0) {
      pts.push_back(1.0 - s);
      pts.push_back(1.0 + s);
    }
    for (double s = 0.25 * osc.g; s < 0.5 * w; s *= 4.0) {
      pts.push_back(w - s);
      pts.push_back(w + s);
    }
    const Integrated a = integrate_pieces(remainder, pts, x_max);
    const Integrated b = integrate_pieces(mirror, pts, x_max);
    const double tol = 1e-7 * std::abs(exact);
    if (!(a.error + b.error <= tol) || !std::isfinite(a.value.real()) ||
        !std::isfinite(b.value.real())) {
      throw QuadratureError("pole quadrature did not converge",
                            "eps=" + fmt(e) + " x_max=" + fmt(x_max) +
                                " err=" + fmt(a.error + b.error) + " tol=" + fmt(tol));
    }
    const cplx logs = std::log(cplx{x_max - 1.0, -e}) - std::log(cplx{-1.0, -e});
    return a.value + phi1 * logs + b.value;
  };

  const double x_max = omega_max / omega_D;
  PoleCheck out{response, power, epsilons, {}, 0.0, 0.0, true};
  std::vector<cplx> values;
  for (double eps : epsilons) {
    const cplx v = run(eps / omega_D, x_max);
    values.push_back(v);
    out.deviations.push_back(std::abs(v - exact) / std::abs(exact));
  }
  for (std::size_t i = 1; i < out.deviations.size(); ++i)
    out.monotone = out.monotone && out.deviations[i] < out.deviations[i - 1];

  const std::size_t m = values.size();
  const double e1 = epsilons[m - 2] / omega_D, e2 = epsilons[m - 1] / omega_D;
  auto extrapolate = [&](cplx v1, cplx v2) { return (e1 * v2 - e2 * v1) / (e1 - e2); };
  const cplx i0 = extrapolate(values[m - 2], values[m - 1]);
  out.extrapolated = std::abs(i0 - exact) / std::abs(exact);

  const cplx i0_wide = extrapolate(run(e1, 2.0 * x_max), run(e2, 2.0 * x_max));
  out.tail_variation = std::abs(i0_wide - i0) / std::abs(exact);
  return out;
}

// ----------------------------------------------------------------- Curie

double curie_check(const std::vector<double>& radii, double omega, std::size_t samples,
                   const Medium& med, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (double r : radii)
    for (std::size_t s = 0; s < samples; ++s) {
      Vec3 v{normal(rng), normal(rng), normal(rng)};
      const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      for (double& c : v) c *= r / len;
      const auto rv = SeparationVector::make(v);
      const auto ee = greens::dual_green(greens::kEE, rv, omega, med);
      const auto em = greens::dual_green(greens::kEM, rv, omega, med);
      const auto me = greens::dual_green(greens::kME, rv, omega, med);
      const auto mm = greens::dual_green(greens::kMM, rv, omega, med);
      worst = std::max(worst, std::abs(greens::trace_product(ee, me)) / (ee.norm() * me.norm()));
      worst = std::max(worst, std::abs(greens::trace_product(em, mm)) / (em.norm() * mm.norm()));
    }
  return worst;
}

// ----------------------------------------------------------------- suite

ConsistencyReport run_validation_suite(const SuiteOptions& opts) {
  ConsistencyReport rep;
  const Molecule& d = opts.donor;
  const Molecule& a = opts.acceptor;
  const double omega = d.omega0();

  {
    constexpr double tol = 1e-9;
    const TraceComparison tc = trace_vs_closed(d, a);
    const bool pc = tc.max_err_product_consistent <= tol;
    const bool ap = tc.max_err_as_printed <= tol;
    if (pc != ap) rep.matched_variant = pc ? ClosedFormVariant::product_consistent
                                           : ClosedFormVariant::as_printed;
    const bool ok = rep.matched_variant && *rep.matched_variant == kDefaultVariant;
    rep.checks.push_back({"trace_vs_closed", pc ? tc.max_err_product_consistent
                                                : tc.max_err_as_printed,
                          tol, ok,
                          rep.matched_variant ? std::string(to_string(*rep.matched_variant)) : "",
                          "as_printed max rel error " + fmt(tc.max_err_as_printed) + " over " +
                              std::to_string(tc.points.size()) + " grid points"});
  }
  {
    constexpr double tol = 1e-12;
    const double e = free_space_reduction(d, a, {1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5});
    rep.checks.push_back({"free_space_reduction", e, tol, e <= tol, "", "eps = mu = 1, lfc off"});
  }
  for (const char* name : {"vacuum", "water", "mercury"}) {
    constexpr double tol = 1e-6;
    const auto rv = SeparationVector::along_default_axis(50e-9);
    const CurlCheck c = curl_fd_check(rv, omega, reference_medium(name), 2e-4 * rv.r());
    const bool ok = c.error_h <= tol && std::abs(c.observed_order - 2.0) <= 0.2;
    rep.checks.push_back({std::string("curl_fd[") + name + "]", c.error_h, tol, ok, "",
                          "r = 50 nm, h = 2e-4 r, error(h/2) " + fmt(c.error_half) +
                              ", observed order " + fmt(c.observed_order)});
  }
  {
    constexpr double tol = 1e-12;
    const std::vector<double> radii{1e-9, 1e-8, 1e-7, 1e-6};
    const double v = curie_check(radii, omega, 16);
    rep.checks.push_back({"curie[vacuum]", v, tol, v <= tol, "", "1 nm to 1 um, 16 directions"});
    const double w = curie_check(radii, omega, 16, medium_from_index(cplx{1.4, 0.0}));
    rep.checks.push_back({"curie[n=1.4]", w, tol, w <= tol, "", "homogeneous achiral medium"});
  }
  {
    constexpr double tol = 1e-6;
    struct Case {
      const char* medium;
      LocalField lfc;
    };
    const Case cases[] = {{"vacuum", LocalField::off},    {"vacuum", LocalField::onsager},
                          {"water", LocalField::off},     {"water", LocalField::onsager},
                          {"ethanol", LocalField::onsager}, {"biodiesel", LocalField::onsager},
                          {"methane", LocalField::onsager}, {"mercury", LocalField::onsager}};
    for (const Case& c : cases) {
      const auto cfg = make_transfer_config(d, a, 1e-9, reference_medium(c.medium), c.lfc);
      const LimitCheck lc = limit_consistency(cfg);
      const double e = std::max(lc.near_error, lc.far_error.value_or(0.0));
      rep.checks.push_back({std::string("limit_consistency[") + c.medium + "," +
                                std::string(to_string(c.lfc)) + "]",
                            e, tol, e <= tol, "",
                            lc.far_error ? "near and far" : "near only (lossy medium)"});
    }
    const Molecule achiral = make_molecule("achiral", a.d_e(), a.d_m(), 0.0, a.handedness(),
                                           a.omega0());
    const LimitCheck lc = limit_consistency(make_transfer_config(d, achiral, 1e-9));
    const double e = std::max(lc.near_error, lc.far_error.value_or(0.0));
    rep.checks.push_back({"limit_consistency[achiral]", e, tol, e <= tol, "", "both limits 0"});
  }
  {
    const std::vector<double> eps{1e-2 * omega, 5e-3 * omega, 2.5e-3 * omega, 1.25e-3 * omega};
    struct Case {
      const char* medium;
      PoleResponse response;
      int power;
      double tol;
    };
    const Case cases[] = {
        {"methane", PoleResponse::lorentz_surrogate, 0, 1e-3},
        {"methane", PoleResponse::lorentz_surrogate, 1, 1e-2},
        {"methane", PoleResponse::susceptibility_squared, 0, 1e-2},
        {"methane", PoleResponse::susceptibility_squared, 1, 1e-2},
        {"methane", PoleResponse::susceptibility_squared, 2, 1e-2},
        {"mercury", PoleResponse::susceptibility_squared, 2, 1e-2},
    };
    for (const Case& c : cases) {
      const std::string name = std::string("pole_quadrature[") + c.medium + "," +
                               std::string(to_string(c.response)) + ",n=" +
                               std::to_string(c.power) + "]";
      try {
        const PoleCheck p = pole_quadrature_check(omega, eps, 200.0 * omega,
                                                  reference_medium(c.medium), c.power, c.response);
        const bool ok = p.extrapolated <= c.tol && p.tail_variation <= 1e-3 && p.monotone;
        rep.checks.push_back({name, p.extrapolated, c.tol, ok, "",
                              "tail variation " + fmt(p.tail_variation) +
                                  (p.monotone ? ", monotone in eps" : ", NOT monotone in eps")});
      } catch (const QuadratureError& e) {
        rep.checks.push_back({name, 1.0, c.tol, false, "", e.what()});
      }
    }
  }
  {
    constexpr double tol = 1e-10;
    double worst = 0.0;
    for (const char* name : {"vacuum", "water", "mercury"}) {
      const Medium med = reference_medium(name);
      for (double r : {1e-9, 5e-8, 1e-6}) {
        const auto rv = SeparationVector::along_default_axis(r);
        const auto back = rv.reversed();
        worst = std::max(worst, greens::relative_difference(
                                    greens::green_tensor(back, omega, med).transpose(),
                                    greens::green_tensor(rv, omega, med)));
        worst = std::max(worst, greens::relative_difference(
                                    greens::dual_green(greens::kME, back, omega, med).transpose() *
                                        cplx{-1.0, 0.0},
                                    greens::dual_green(greens::kEM, rv, omega, med)));
      }
    }
    rep.checks.push_back({"reciprocity", worst, tol, worst <= tol, "",
                          "G(r) = G(-r)^T, G_em(r) = -G_me(-r)^T"});
  }
  return rep;
}

}  // namespace chiralret::oracle
