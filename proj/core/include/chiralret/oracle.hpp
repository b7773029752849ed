#pragma once

// Numerical cross-checks of the analytic shortcuts in greens, rates and
// discrim. Everything here is deterministic; nothing is cached.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chiralret/greens.hpp"
#include "chiralret/types.hpp"

namespace chiralret::oracle {

struct CheckResult {
  std::string name;
  double max_rel_error;
  double tolerance;
  bool pass;
  std::string variant;  // empty unless the check selects a closed-form variant
  std::string note;
};

struct ConsistencyReport {
  std::vector<CheckResult> checks;
  std::optional<ClosedFormVariant> matched_variant;

  bool all_pass() const;
  std::string to_text() const;
  /// Header: check,max_rel_error,tolerance,pass,variant,note
  std::string to_csv() const;
};

struct CurlCheck {
  double error_h;       // max relative error over the four dual tensors at step h
  double error_half;    // same at h/2
  double observed_order;  // log2(error_h / error_half)
};

/// Central-difference curls of green_tensor against dual_green. The mm
/// tensor uses nested (mixed second) differences. Throws StepError if
/// h <= 0 or h >= r/10.
CurlCheck curl_fd_check(const greens::SeparationVector& rv, double omega, const Medium& med,
                        double h, const Constants& k = Constants::si());

struct GridPoint {
  double r;
  std::string medium;
  LocalField lfc;
  double err_product_consistent;
  double err_as_printed;
};

struct TraceComparison {
  std::vector<GridPoint> points;
  double max_err_product_consistent;
  double max_err_as_printed;
};

/// Relative error max(|d nd|/nd, |d disc|/|disc|) between the trace route and
/// each closed-form variant. Default grid: r in {1, 10, 100, 1000} nm, media
/// vacuum/water/biodiesel/methane/mercury, lfc off and onsager.
TraceComparison trace_vs_closed(const Molecule& donor, const Molecule& acceptor);
TraceComparison trace_vs_closed(const Molecule& donor, const Molecule& acceptor,
                                const std::vector<double>& radii,
                                const std::vector<std::string>& media);

/// Medium closed forms (product_consistent) at eps = mu = 1, lfc off against
/// the free-space closed forms; max relative deviation over `radii`.
double free_space_reduction(const Molecule& donor, const Molecule& acceptor,
                            const std::vector<double>& radii);

struct LimitCheck {
  double near_error;  // |S(r_small) - s_near| / |s_near|, 0 when both vanish
  std::optional<double> far_error;  // only for (nearly) lossless media
};

/// S at k0|n|r = 1e-6 and 1e6 against the derived_default limits.
LimitCheck limit_consistency(const TransferConfig& cfg);

enum class PoleResponse { lorentz_surrogate, susceptibility_squared };

std::string_view to_string(PoleResponse r) noexcept;

struct PoleCheck {
  PoleResponse response;
  int power;  // f(w) = w^power
  std::vector<double> epsilons;
  std::vector<double> deviations;  // |I(eps) - pi f G| / |pi f G|
  double extrapolated;             // same for the eps -> 0 linear extrapolation
  double tail_variation;           // relative change under omega_max doubling
  bool monotone;
};

/// Checks int_0^wmax {f(w)/(w - wD - i eps) + f(-w)/(w + wD)} Im G(w) dw
/// -> pi f(wD) G(wD) for a causal response fitted to `med` at wD: a single
/// Lorentz oscillator chi(w) with chi(wD) = eps - 1 (surrogate: that
/// oscillator normalised to chi -> wD^2/(W^2 - w^2 - i g w)), or chi^2.
/// Requires Im(n) > 0, power in {0, 1, 2}, omega_max >= 50 omega_D and
/// strictly decreasing positive epsilons (absolute, rad/s). Throws
/// QuadratureError if the adaptive quadrature does not converge.
PoleCheck pole_quadrature_check(double omega_D, const std::vector<double>& epsilons,
                                double omega_max, const Medium& med, int power,
                                PoleResponse response);

/// max |Tr[G_e l . G_m l^+]| / (|G_e l| |G_m l|) over l in {e, m}, all radii
/// and `samples` seeded random directions per radius (Frobenius norms, so the
/// ratio is at most 1 and independent of the tensors' scales).
double curie_check(const std::vector<double>& radii, double omega, std::size_t samples,
                   const Medium& med = Medium::vacuum(), std::uint64_t seed = 7);

struct SuiteOptions {
  Molecule donor = molecule_3mcp();
  Molecule acceptor = molecule_3mcp();
};

/// Runs every check in a fixed order.
ConsistencyReport run_validation_suite(const SuiteOptions& opts = {});

}  // namespace chiralret::oracle
