#pragma once

// Domain values shared by every module: physical constants, molecules,
// media and the donor/acceptor transfer configuration.
//
// Unit policy: strict SI throughout. The magnetic transition dipole is stored
// in its dual form |m|/c, so both dipoles carry C*m. Rates are reported as
// reduced rates Gamma/rho(omega_f) in s^-2; the density of final states never
// enters any computed quantity.

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace chiralret {

using cplx = std::complex<double>;

struct Constants {
  double c;     // m/s
  double eps0;  // F/m
  double mu0;   // H/m
  double hbar;  // J*s

  /// CODATA 2018 values; eps0 is derived from mu0 and c so that
  /// mu0 * eps0 * c^2 == 1 to rounding.
  static Constants si() noexcept;

  /// Throws ValidationError unless all values are positive and finite and
  /// mu0 * eps0 * c^2 = 1 within 1e-12 relative.
  void validate() const;
};

enum class Handedness { left, right };

/// +1 for left, -1 for right.
int handedness_sign(Handedness h) noexcept;
Handedness opposite(Handedness h) noexcept;
std::string_view to_string(Handedness h) noexcept;

class Molecule {
 public:
  const std::string& name() const noexcept { return name_; }
  double d_e() const noexcept { return d_e_; }
  double d_m() const noexcept { return d_m_; }
  double cos_theta() const noexcept { return cos_theta_; }
  Handedness handedness() const noexcept { return handedness_; }
  double omega0() const noexcept { return omega0_; }

  /// Mirror image: identical magnitudes, opposite handedness.
  Molecule enantiomer() const;

 private:
  friend Molecule make_molecule(std::string name, double d_e, double d_m, double cos_theta,
                                Handedness handedness, double omega0);
  Molecule() = default;

  std::string name_;
  double d_e_ = 0.0;
  double d_m_ = 0.0;
  double cos_theta_ = 0.0;
  Handedness handedness_ = Handedness::left;
  double omega0_ = 0.0;
};

/// Validated constructor. d_e, d_m >= 0, |cos_theta| <= 1, omega0 > 0, all finite.
/// Throws ValidationError naming the first offending field.
Molecule make_molecule(std::string name, double d_e, double d_m, double cos_theta,
                       Handedness handedness, double omega0);

/// R/c = sign(handedness) * cos_theta * d_e * d_m, in C^2 m^2.
double rotatory_over_c(const Molecule& m) noexcept;

/// 3-methylcyclopentanone transition used throughout the examples.
Molecule molecule_3mcp(Handedness handedness = Handedness::left);

class Medium {
 public:
  cplx eps() const noexcept { return eps_; }
  cplx mu() const noexcept { return mu_; }

  static Medium vacuum() noexcept { return Medium{cplx{1.0, 0.0}, cplx{1.0, 0.0}}; }

  bool is_vacuum() const noexcept { return eps_ == cplx{1.0, 0.0} && mu_ == cplx{1.0, 0.0}; }

 private:
  friend Medium make_medium(cplx eps, cplx mu);
  Medium(cplx eps, cplx mu) noexcept : eps_(eps), mu_(mu) {}

  cplx eps_;
  cplx mu_;
};

/// Passive medium: Im(eps) >= 0, Im(mu) >= 0, finite, eps*mu != 0.
Medium make_medium(cplx eps, cplx mu = cplx{1.0, 0.0});

/// Non-magnetic medium with eps = n^2. Requires Im(n) >= 0 and Re(n) >= 0.
Medium medium_from_index(cplx n);

/// sqrt(eps*mu) on the branch Im(n) >= 0; a real result is taken positive.
cplx refractive_index(const Medium& med) noexcept;

struct NamedIndex {
  std::string name;
  cplx n;
};

/// Solvents at the 3MCP transition frequency (4.3 eV).
const std::vector<NamedIndex>& reference_media();

/// Looks up a reference medium by name; throws ValidationError if unknown.
Medium reference_medium(std::string_view name);

enum class LocalField { off, onsager };
enum class ClosedFormVariant { product_consistent, as_printed };

inline constexpr ClosedFormVariant kDefaultVariant = ClosedFormVariant::product_consistent;

std::string_view to_string(LocalField lfc) noexcept;
std::string_view to_string(ClosedFormVariant v) noexcept;

struct TransferConfig {
  Molecule donor;
  Molecule acceptor;
  double r;  // m
  Medium medium;
  LocalField lfc;
  ClosedFormVariant variant;
  Constants constants;

  double omega() const noexcept { return donor.omega0(); }
};

/// Requires donor.omega0 == acceptor.omega0 exactly and r > 0.
TransferConfig make_transfer_config(Molecule donor, Molecule acceptor, double r,
                                    Medium medium = Medium::vacuum(),
                                    LocalField lfc = LocalField::off,
                                    ClosedFormVariant variant = kDefaultVariant,
                                    Constants constants = Constants::si());

/// Same configuration at a different separation.
TransferConfig with_separation(const TransferConfig& cfg, double r);

struct RateBreakdown {
  double gamma_nd;    // s^-2
  double gamma_disc;  // s^-2, signed
  double gamma_L;     // gamma_nd + |gamma_disc|
  double gamma_R;     // gamma_nd - |gamma_disc|
  double S;           // gamma_disc / gamma_nd
};

}  // namespace chiralret
