#include "chiralret/types.hpp"

#include <algorithm>
#include <cmath>

#include "chiralret/errors.hpp"

namespace chiralret {

namespace {

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

void require_finite(cplx v, const char* field) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw ValidationError(field, "must be finite");
}

}  // namespace

Constants Constants::si() noexcept {
  constexpr double c = 299792458.0;
  constexpr double mu0 = 1.25663706212e-6;
  return Constants{c, 1.0 / (mu0 * c * c), mu0, 1.054571817e-34};
}

void Constants::validate() const {
  const double vals[] = {c, eps0, mu0, hbar};
  const char* names[] = {"c", "eps0", "mu0", "hbar"};
  for (int i = 0; i < 4; ++i) {
    require_finite(vals[i], names[i]);
    if (vals[i] <= 0.0) throw ValidationError(names[i], "must be positive");
  }
  if (std::abs(mu0 * eps0 * c * c - 1.0) > 1e-12)
    throw ValidationError("constants", "mu0 * eps0 * c^2 must equal 1 within 1e-12");
}

int handedness_sign(Handedness h) noexcept { return h == Handedness::left ? 1 : -1; }

Handedness opposite(Handedness h) noexcept {
  return h == Handedness::left ? Handedness::right : Handedness::left;
}

std::string_view to_string(Handedness h) noexcept {
  return h == Handedness::left ? "left" : "right";
}

Molecule Molecule::enantiomer() const {
  Molecule m = *this;
  m.handedness_ = opposite(handedness_);
  return m;
}

Molecule make_molecule(std::string name, double d_e, double d_m, double cos_theta,
                       Handedness handedness, double omega0) {
  require_finite(d_e, "d_e");
  if (d_e < 0.0) throw ValidationError("d_e", "must be >= 0");
  require_finite(d_m, "d_m");
  if (d_m < 0.0) throw ValidationError("d_m", "must be >= 0");
  require_finite(cos_theta, "cos_theta");
  if (std::abs(cos_theta) > 1.0) throw ValidationError("cos_theta", "must lie in [-1, 1]");
  require_finite(omega0, "omega0");
  if (omega0 <= 0.0) throw ValidationError("omega0", "must be > 0");

  Molecule m;
  m.name_ = std::move(name);
  m.d_e_ = d_e;
  m.d_m_ = d_m;
  m.cos_theta_ = cos_theta;
  m.handedness_ = handedness;
  m.omega0_ = omega0;
  return m;
}

double rotatory_over_c(const Molecule& m) noexcept {
  return handedness_sign(m.handedness()) * m.cos_theta() * m.d_e() * m.d_m();
}

Molecule molecule_3mcp(Handedness handedness) {
  return make_molecule("3MCP", 2.44e-31, 3.31e-32, 0.98, handedness, 6.44e15);
}

Medium make_medium(cplx eps, cplx mu) {
  require_finite(eps, "eps");
  require_finite(mu, "mu");
  if (eps.imag() < 0.0) throw ValidationError("eps", "Im(eps) must be >= 0 (passive medium)");
  if (mu.imag() < 0.0) throw ValidationError("mu", "Im(mu) must be >= 0 (passive medium)");
  if (eps == cplx{} || mu == cplx{}) throw ValidationError("eps*mu", "must be non-zero");
  return Medium{eps, mu};
}

Medium medium_from_index(cplx n) {
  require_finite(n, "n");
  if (n.imag() < 0.0) throw ValidationError("n", "Im(n) must be >= 0");
  if (n.real() < 0.0) throw ValidationError("n", "Re(n) must be >= 0");
  if (n == cplx{1.0, 0.0}) return Medium::vacuum();
  return make_medium(n * n, cplx{1.0, 0.0});
}

cplx refractive_index(const Medium& med) noexcept {
  if (med.is_vacuum()) return cplx{1.0, 0.0};
  cplx n = std::sqrt(med.eps() * med.mu());
  if (n.imag() < 0.0 || (n.imag() == 0.0 && n.real() < 0.0)) n = -n;
  return n;
}

const std::vector<NamedIndex>& reference_media() {
  static const std::vector<NamedIndex> media = {
      {"water", {1.4, 1e-8}},
      {"biodiesel", {1.56, 8e-6}},
      {"ethanol", {1.39, 3e-6}},
      {"methane", {1.44, 0.07}},
      {"mercury", {0.52, 2.39}},
  };
  return media;
}

Medium reference_medium(std::string_view name) {
  if (name == "vacuum") return Medium::vacuum();
  const auto& media = reference_media();
  auto it = std::find_if(media.begin(), media.end(),
                         [&](const NamedIndex& m) { return m.name == name; });
  if (it == media.end()) throw ValidationError("medium", "unknown preset '" + std::string(name) + "'");
  return medium_from_index(it->n);
}

std::string_view to_string(LocalField lfc) noexcept {
  return lfc == LocalField::off ? "off" : "onsager";
}

std::string_view to_string(ClosedFormVariant v) noexcept {
  return v == ClosedFormVariant::product_consistent ? "product_consistent" : "as_printed";
}

TransferConfig make_transfer_config(Molecule donor, Molecule acceptor, double r, Medium medium,
                                    LocalField lfc, ClosedFormVariant variant,
                                    Constants constants) {
  constants.validate();
  if (donor.omega0() != acceptor.omega0())
    throw ValidationError("omega0", "donor and acceptor transition frequencies must be equal");
  require_finite(r, "r");
  if (r <= 0.0) throw ValidationError("r", "separation must be > 0");
  return TransferConfig{std::move(donor), std::move(acceptor), r, medium, lfc, variant, constants};
}

TransferConfig with_separation(const TransferConfig& cfg, double r) {
  require_finite(r, "r");
  if (r <= 0.0) throw ValidationError("r", "separation must be > 0");
  TransferConfig out = cfg;
  out.r = r;
  return out;
}

}  // namespace chiralret
