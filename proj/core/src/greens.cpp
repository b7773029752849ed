#include "chiralret/greens.hpp"

#include <cmath>
#include <numbers>

#include "chiralret/errors.hpp"

namespace chiralret::greens {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_positive_r(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("separation r must be finite and > 0");
}

void require_positive_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError("angular frequency must be finite and > 0");
}

// dg/dr for g = e^{ikr} / (4 pi r).
cplx scalar_green_derivative(cplx k, double r) {
  return scalar_green(k, r) * (kI * k - 1.0 / r);
}

}  // namespace

SeparationVector SeparationVector::make(const Vec3& v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("separation vector must be finite and non-zero");
  return SeparationVector(v, r, Vec3{v[0] / r, v[1] / r, v[2] / r});
}

SeparationVector SeparationVector::along_default_axis(double r) {
  require_positive_r(r);
  const Vec3 e{0.48, 0.6, 0.64};
  return SeparationVector(Vec3{r * e[0], r * e[1], r * e[2]}, r, e);
}

SeparationVector SeparationVector::reversed() const {
  return SeparationVector(Vec3{-v_[0], -v_[1], -v_[2]}, r_, Vec3{-e_[0], -e_[1], -e_[2]});
}

ComplexTensor3 ComplexTensor3::identity() {
  ComplexTensor3 t;
  for (int i = 0; i < 3; ++i) t(i, i) = 1.0;
  return t;
}

ComplexTensor3 ComplexTensor3::outer(const Vec3& a, const Vec3& b) {
  ComplexTensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = a[i] * b[j];
  return t;
}

ComplexTensor3 ComplexTensor3::levi_civita_contract(const Vec3& e) {
  ComplexTensor3 t;
  t(0, 1) = e[2];
  t(1, 0) = -e[2];
  t(1, 2) = e[0];
  t(2, 1) = -e[0];
  t(2, 0) = e[1];
  t(0, 2) = -e[1];
  return t;
}

ComplexTensor3 ComplexTensor3::transpose() const {
  ComplexTensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

ComplexTensor3 ComplexTensor3::conj() const {
  ComplexTensor3 t;
  for (int i = 0; i < 9; ++i) t.a_[i] = std::conj(a_[i]);
  return t;
}

ComplexTensor3& ComplexTensor3::operator+=(const ComplexTensor3& o) {
  for (int i = 0; i < 9; ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexTensor3& ComplexTensor3::operator-=(const ComplexTensor3& o) {
  for (int i = 0; i < 9; ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexTensor3& ComplexTensor3::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

ComplexTensor3 operator*(const ComplexTensor3& a, const ComplexTensor3& b) {
  ComplexTensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx s{};
      for (int l = 0; l < 3; ++l) s += a(i, l) * b(l, j);
      t(i, j) = s;
    }
  return t;
}

double ComplexTensor3::norm() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

cplx trace_product(const ComplexTensor3& a, const ComplexTensor3& b) {
  cplx s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a(i, j) * std::conj(b(i, j));
  return s;
}

double relative_difference(const ComplexTensor3& a, const ComplexTensor3& b) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  const double scale = b.norm();
  return scale > 0.0 ? worst / scale : worst;
}

cplx scalar_green(cplx k, double r) {
  require_positive_r(r);
  return std::exp(kI * k * r) / (4.0 * std::numbers::pi * r);
}

cplx wavenumber(double omega, const Medium& med, const Constants& k) {
  require_positive_omega(omega);
  return refractive_index(med) * (omega / k.c);
}

ComplexTensor3 FactoredTensor::dense(const Vec3& e) const {
  ComplexTensor3 t = ComplexTensor3::identity() * isotropic;
  if (radial != cplx{}) t += ComplexTensor3::outer(e, e) * radial;
  if (antisymmetric != cplx{}) t += ComplexTensor3::levi_civita_contract(e) * antisymmetric;
  return t;
}

FactoredTensor green_tensor_factored(double r, double omega, const Medium& med,
                                     const Constants& k) {
  const cplx kk = wavenumber(omega, med, k);
  const cplx g = scalar_green(kk, r);
  const cplx inv_x = 1.0 / (kk * r);
  const cplx inv_x2 = inv_x * inv_x;
  const cplx a = g * (1.0 + kI * inv_x - inv_x2);
  const cplx b = g * (-1.0 - 3.0 * kI * inv_x + 3.0 * inv_x2);
  return FactoredTensor{med.mu() * a, med.mu() * b, cplx{}};
}

FactoredTensor dual_green_factored(CouplingPair pair, double r, double omega, const Medium& med,
                                   const Constants& k) {
  const double k0 = omega / k.c;
  const bool acceptor_e = pair.acceptor == Coupling::electric;
  const bool donor_e = pair.donor == Coupling::electric;

  if (acceptor_e == donor_e) {
    FactoredTensor g = green_tensor_factored(r, omega, med, k);
    const cplx kk = wavenumber(omega, med, k);
    // (i k0)^2 for ee; grad x G x grad = -k^2 G for mm.
    const cplx scale = acceptor_e ? cplx{-k0 * k0, 0.0} : -kk * kk;
    return FactoredTensor{g.isotropic * scale, g.radial * scale, cplx{}};
  }

  require_positive_r(r);
  const cplx kk = wavenumber(omega, med, k);
  const cplx curl = med.mu() * scalar_green_derivative(kk, r);
  // G x grad_D = +mu g' K; grad_A x G = -mu g' K.
  const cplx sign = acceptor_e ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
  return FactoredTensor{cplx{}, cplx{}, sign * kI * k0 * curl};
}

ComplexTensor3 green_tensor(const SeparationVector& rv, double omega, const Medium& med,
                            const Constants& k) {
  const cplx kk = wavenumber(omega, med, k);
  const double r = rv.r();
  const cplx x = kk * r;
  const cplx pref = -med.mu() * std::exp(kI * x) / (4.0 * std::numbers::pi * kk * kk * r * r * r);
  const cplx iso = pref * (1.0 - kI * x - x * x);
  const cplx rad = -pref * (3.0 - 3.0 * kI * x - x * x);
  const Vec3& e = rv.unit();
  ComplexTensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (i == j ? iso : cplx{}) + rad * (e[i] * e[j]);
  return t;
}

ComplexTensor3 dual_green(CouplingPair pair, const SeparationVector& rv, double omega,
                          const Medium& med, const Constants& k) {
  const double k0 = omega / k.c;
  const bool acceptor_e = pair.acceptor == Coupling::electric;
  const bool donor_e = pair.donor == Coupling::electric;
  if (acceptor_e && donor_e) return green_tensor(rv, omega, med, k) * cplx{-k0 * k0, 0.0};
  if (!acceptor_e && !donor_e) {
    const cplx kk = wavenumber(omega, med, k);
    return green_tensor(rv, omega, med, k) * (-kk * kk);
  }

  // Only the mu g I part of G has a curl; the grad-grad part is curl-free.
  const cplx kk = wavenumber(omega, med, k);
  const Vec3& e = rv.unit();
  cplx grad[3];
  const cplx dg = scalar_green_derivative(kk, rv.r());
  for (int l = 0; l < 3; ++l) grad[l] = dg * e[l];

  auto levi = [](int i, int j, int l) -> double {
    return static_cast<double>((i - j) * (j - l) * (l - i)) / 2.0;
  };
  ComplexTensor3 curl_a;  // [grad_A x (mu g I)]_ij = mu eps_ilj d_l g
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx s{};
      for (int l = 0; l < 3; ++l) s += levi(i, l, j) * grad[l];
      curl_a(i, j) = med.mu() * s;
    }
  const cplx ik0{0.0, k0};
  if (!acceptor_e) return curl_a * ik0;
  // [G x grad_D]_ij = eps_jlm d^D_m G_il, with d^D = -d_A.
  ComplexTensor3 curl_d;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx s{};
      for (int m = 0; m < 3; ++m) s += levi(j, i, m) * (-grad[m]);
      curl_d(i, j) = med.mu() * s;
    }
  return curl_d * ik0;
}

LocalFieldFactors lfc_factors(const Medium& med) {
  const cplx de = 1.0 + 2.0 * med.eps();
  const cplx dm = 1.0 + 2.0 * med.mu();
  if (de == cplx{}) throw PoleError("electric Onsager factor has a pole at eps = -1/2");
  if (dm == cplx{}) throw PoleError("magnetic Onsager factor has a pole at mu = -1/2");
  return LocalFieldFactors{3.0 * med.eps() / de, 3.0 / dm};
}

ComplexTensor3 dual_green_lfc(CouplingPair pair, const SeparationVector& rv, double omega,
                              const Medium& med, const Constants& k) {
  const LocalFieldFactors f = lfc_factors(med);
  auto factor = [&](Coupling c) { return c == Coupling::electric ? f.electric : f.magnetic; };
  const cplx scale = factor(pair.acceptor) * factor(pair.donor);
  ComplexTensor3 t = dual_green(pair, rv, omega, med, k);
  if (scale != cplx{1.0, 0.0}) t *= scale;
  return t;
}

ComplexTensor3 dual_green(CouplingPair pair, const SeparationVector& rv, double omega,
                          const Medium& med, LocalField lfc, const Constants& k) {
  return lfc == LocalField::onsager ? dual_green_lfc(pair, rv, omega, med, k)
                                    : dual_green(pair, rv, omega, med, k);
}

}  // namespace chiralret::greens
