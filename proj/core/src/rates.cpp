#include "chiralret/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chiralret/errors.hpp"

namespace chiralret::rates {

using greens::ComplexTensor3;
using greens::CouplingPair;
using greens::SeparationVector;

namespace {

constexpr cplx kI{0.0, 1.0};

double sq(double v) { return v * v; }

int index(Coupling c) { return c == Coupling::electric ? 0 : 1; }

// d^A_l1 . d^A*_l2 in terms of magnitudes and R_A/c.
cplx acceptor_product(const Molecule& a, Coupling l1, Coupling l2) {
  if (l1 == l2) return l1 == Coupling::electric ? sq(a.d_e()) : sq(a.d_m());
  const double rot = rotatory_over_c(a);
  return l1 == Coupling::electric ? -kI * rot : kI * rot;
}

// d^D*_l3 . d^D_l4 in terms of magnitudes and R_D/c.
cplx donor_product(const Molecule& d, Coupling l3, Coupling l4) {
  if (l3 == l4) return l3 == Coupling::electric ? sq(d.d_e()) : sq(d.d_m());
  const double rot = rotatory_over_c(d);
  return l3 == Coupling::electric ? -kI * rot : kI * rot;
}

double rate_prefactor(const Constants& k) {
  const double mu0c2 = k.mu0 * k.c * k.c;
  return 2.0 * std::numbers::pi * mu0c2 * mu0c2 / (9.0 * k.hbar * k.hbar);
}

// Dual tensors indexed [acceptor][donor], electric = 0.
struct DualSet {
  ComplexTensor3 g[2][2];

  explicit DualSet(const TransferConfig& cfg) {
    const auto rv = SeparationVector::along_default_axis(cfg.r);
    for (Coupling a : {Coupling::electric, Coupling::magnetic})
      for (Coupling d : {Coupling::electric, Coupling::magnetic})
        g[index(a)][index(d)] = greens::dual_green(CouplingPair{a, d}, rv, cfg.omega(),
                                                   cfg.medium, cfg.lfc, cfg.constants);
  }

  const ComplexTensor3& at(Coupling a, Coupling d) const { return g[index(a)][index(d)]; }
};

cplx contribution(const RateLabels& l, const TransferConfig& cfg, const DualSet& set) {
  const cplx a = acceptor_product(cfg.acceptor, l[0], l[1]);
  const cplx d = donor_product(cfg.donor, l[2], l[3]);
  if (a == cplx{} || d == cplx{}) return cplx{};
  const cplx tr = greens::trace_product(set.at(l[0], l[3]), set.at(l[1], l[2]));
  return rate_prefactor(cfg.constants) * a * d * tr;
}

cplx dot(const CVec3& a, const ComplexTensor3& g, const CVec3& b) {
  cplx s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a[i] * g(i, j) * b[j];
  return s;
}

}  // namespace

DipoleVectors DipoleVectors::make(const CVec3& d_e, const CVec3& d_m) {
  for (int i = 0; i < 3; ++i) {
    if (d_e[i].imag() != 0.0) throw ValidationError("d_e_vec", "electric dipole must be real");
    if (d_m[i].real() != 0.0) throw ValidationError("d_m_vec", "magnetic dipole must be imaginary");
  }
  return DipoleVectors(d_e, d_m);
}

DipoleVectors dipoles_for(const Molecule& m, Role role, const Vec3& axis, const Vec3& perp) {
  // Unit direction of d_m with axis . dir = sign * cos_theta.
  const double c = handedness_sign(m.handedness()) * m.cos_theta();
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  CVec3 de{}, dm{};
  // Acceptor (upward): d_m = +i |d_m| dir; donor (downward): d_m = -i |d_m| dir.
  const double phase = role == Role::acceptor ? 1.0 : -1.0;
  for (int i = 0; i < 3; ++i) {
    de[i] = cplx{m.d_e() * axis[i], 0.0};
    dm[i] = cplx{0.0, phase * m.d_m() * (c * axis[i] + s * perp[i])};
  }
  return DipoleVectors::make(de, dm);
}

cplx matrix_element(Coupling acceptor_type, Coupling donor_type, const DipoleVectors& acceptor,
                    const DipoleVectors& donor, const SeparationVector& rv, double omega,
                    const Medium& med, LocalField lfc, const Constants& k) {
  const ComplexTensor3 g =
      greens::dual_green(CouplingPair{acceptor_type, donor_type}, rv, omega, med, lfc, k);
  return k.mu0 * k.c * k.c * dot(acceptor.of(acceptor_type), g, donor.of(donor_type));
}

cplx total_matrix_element(const DipoleVectors& acceptor, const DipoleVectors& donor,
                          const SeparationVector& rv, double omega, const Medium& med,
                          LocalField lfc, const Constants& k) {
  cplx m{};
  for (Coupling a : {Coupling::electric, Coupling::magnetic})
    for (Coupling d : {Coupling::electric, Coupling::magnetic})
      m += matrix_element(a, d, acceptor, donor, rv, omega, med, lfc, k);
  return m;
}

cplx reduced_rate_contribution(const RateLabels& labels, const TransferConfig& cfg) {
  return contribution(labels, cfg, DualSet(cfg));
}

RatePair reduced_gammas_trace(const TransferConfig& cfg) {
  const DualSet set(cfg);
  constexpr Coupling e = Coupling::electric;
  constexpr Coupling m = Coupling::magnetic;

  cplx nd{};
  for (Coupling l : {e, m})
    for (Coupling lp : {e, m}) nd += contribution({l, l, lp, lp}, cfg, set);

  const cplx disc = contribution({e, m, m, e}, cfg, set) + contribution({m, e, m, e}, cfg, set) +
                    contribution({e, m, e, m}, cfg, set) + contribution({m, e, e, m}, cfg, set);
  return RatePair{nd.real(), disc.real()};
}

RatePair ClosedFormTerms::rates() const {
  const double att = std::exp(-attenuation);
  return RatePair{nd_stripped * att, disc_stripped * att};
}

double ClosedFormTerms::ratio() const {
  if (nd_stripped == 0.0)
    throw DegenerateInputError("non-discriminatory rate vanishes; S is undefined");
  return disc_stripped / nd_stripped;
}

ClosedFormTerms free_space_closed_form(const TransferConfig& cfg) {
  const Constants& k = cfg.constants;
  const Molecule& a = cfg.acceptor;
  const Molecule& d = cfg.donor;
  const double x2 = sq(cfg.omega() * cfg.r / k.c);
  const double x4 = x2 * x2;
  const double pref =
      1.0 / (36.0 * std::numbers::pi * sq(k.eps0) * sq(k.hbar) * std::pow(cfg.r, 6));

  const double same = sq(a.d_e()) * sq(d.d_e()) + sq(a.d_m()) * sq(d.d_m());
  const double cross = sq(a.d_e()) * sq(d.d_m()) + sq(a.d_m()) * sq(d.d_e());
  const double nd = pref * (same * (3.0 + x2 + x4) + cross * (x2 + x4));
  const double disc =
      2.0 * pref * rotatory_over_c(d) * rotatory_over_c(a) * (3.0 + 2.0 * x2 + 2.0 * x4);
  return ClosedFormTerms{nd, disc, 0.0};
}

ClosedFormTerms medium_closed_form(const TransferConfig& cfg) {
  const Constants& k = cfg.constants;
  const Molecule& a = cfg.acceptor;
  const Molecule& d = cfg.donor;
  const bool printed = cfg.variant == ClosedFormVariant::as_printed;

  cplx ce{1.0, 0.0}, cm{1.0, 0.0};
  if (cfg.lfc == LocalField::onsager) {
    const auto f = greens::lfc_factors(cfg.medium);
    ce = f.electric;
    cm = f.magnetic;
  }

  const cplx n = refractive_index(cfg.medium);
  const double n_abs2 = std::norm(n);
  const double k0r = cfg.omega() * cfg.r / k.c;
  const double b = n.imag() * k0r;  // Im(n) k0 r
  const double x2 = n_abs2 * k0r * k0r;
  const double x4 = x2 * x2;
  const double ce2 = std::norm(ce);
  const double cm2 = std::norm(cm);

  const double pref = std::norm(cfg.medium.mu()) /
                      (36.0 * std::numbers::pi * sq(k.eps0) * sq(k.hbar) *
                       std::pow(cfg.r, 6) * n_abs2 * n_abs2);

  const double q = x4 + x2 * (2.0 * b + 1.0) + 4.0 * b * b + 6.0 * b + 3.0;
  const double cross_poly = (printed ? 2.0 : 1.0) * x4 + x2 * (2.0 * b + 1.0);
  const double nd = pref * (ce2 * ce2 * sq(a.d_e()) * sq(d.d_e()) * q +
                            ce2 * cm2 * n_abs2 *
                                (sq(a.d_e()) * sq(d.d_m()) + sq(a.d_m()) * sq(d.d_e())) *
                                cross_poly +
                            cm2 * cm2 * n_abs2 * n_abs2 * sq(a.d_m()) * sq(d.d_m()) * q);

  const double q_disc = x4 + x2 * (2.0 * b + 1.0) + (printed ? 1.0 : 4.0) * b * b + 6.0 * b + 3.0;
  const cplx z = std::conj(ce) * cm * n;
  const double disc = 2.0 * pref * rotatory_over_c(d) * rotatory_over_c(a) *
                      (x2 * n_abs2 * ce2 * cm2 * (x2 + 2.0 * b + 1.0) + (z * z).real() * q_disc);
  return ClosedFormTerms{nd, disc, 2.0 * b};
}

ClosedFormTerms closed_form_terms(const TransferConfig& cfg) {
  if (cfg.medium.is_vacuum() && cfg.lfc == LocalField::off) return free_space_closed_form(cfg);
  return medium_closed_form(cfg);
}

RatePair reduced_gammas_closed(const TransferConfig& cfg) { return closed_form_terms(cfg).rates(); }

RateBreakdown rates_LR(const TransferConfig& cfg, RateRoute route) {
  double nd = 0.0, disc = 0.0, s = 0.0;
  if (route == RateRoute::closed_form) {
    const ClosedFormTerms terms = closed_form_terms(cfg);
    s = terms.ratio();
    const RatePair p = terms.rates();
    nd = p.gamma_nd;
    disc = p.gamma_disc;
  } else {
    const RatePair p = reduced_gammas_trace(cfg);
    if (p.gamma_nd == 0.0)
      throw DegenerateInputError("non-discriminatory rate vanishes; S is undefined");
    nd = p.gamma_nd;
    disc = p.gamma_disc;
    s = disc / nd;
  }
  return RateBreakdown{nd, disc, nd + std::abs(disc), nd - std::abs(disc), s};
}

}  // namespace chiralret::rates
