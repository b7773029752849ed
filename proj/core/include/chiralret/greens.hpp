#pragma once

// Homogeneous-medium Green's tensor and its dual (electric/magnetic) variants.
//
// Geometry convention: the separation vector points from donor to acceptor,
// r = r_A - r_D. Gradients at the acceptor act on r directly; gradients at
// the donor carry the opposite sign. With K_ij = eps_ijk e_k,
//
//   G      = mu (A I + B e e),      A = g (1 + i/x - 1/x^2),  B = g (-1 - 3i/x + 3/x^2)
//   grad_A x G     = -mu g' K       G x grad_D (leftward) = +mu g' K
//   grad_A x G x grad_D = -k^2 G
//
// with x = k r, k = n omega / c and g' = dg/dr = g (i k - 1/r). The contact
// term -mu delta(r) / (3 k^2) is never sampled since r > 0.

#include <array>

#include "chiralret/types.hpp"

namespace chiralret::greens {

using Vec3 = std::array<double, 3>;

class SeparationVector {
 public:
  /// Throws DomainError for a zero or non-finite vector.
  static SeparationVector make(const Vec3& v);
  /// Separation of length r along a fixed generic direction.
  static SeparationVector along_default_axis(double r);

  const Vec3& vec() const noexcept { return v_; }
  const Vec3& unit() const noexcept { return e_; }
  double r() const noexcept { return r_; }
  SeparationVector reversed() const;

 private:
  SeparationVector(const Vec3& v, double r, const Vec3& e) : v_(v), e_(e), r_(r) {}
  Vec3 v_;
  Vec3 e_;
  double r_;
};

class ComplexTensor3 {
 public:
  ComplexTensor3() = default;

  static ComplexTensor3 zero() { return {}; }
  static ComplexTensor3 identity();
  static ComplexTensor3 outer(const Vec3& a, const Vec3& b);
  /// K_ij = eps_ijk e_k.
  static ComplexTensor3 levi_civita_contract(const Vec3& e);

  cplx& operator()(int i, int j) { return a_[3 * i + j]; }
  cplx operator()(int i, int j) const { return a_[3 * i + j]; }

  ComplexTensor3 transpose() const;
  ComplexTensor3 conj() const;
  ComplexTensor3 adjoint() const { return transpose().conj(); }

  ComplexTensor3& operator+=(const ComplexTensor3& o);
  ComplexTensor3& operator-=(const ComplexTensor3& o);
  ComplexTensor3& operator*=(cplx s);

  friend ComplexTensor3 operator+(ComplexTensor3 a, const ComplexTensor3& b) { return a += b; }
  friend ComplexTensor3 operator-(ComplexTensor3 a, const ComplexTensor3& b) { return a -= b; }
  friend ComplexTensor3 operator*(ComplexTensor3 a, cplx s) { return a *= s; }
  friend ComplexTensor3 operator*(cplx s, ComplexTensor3 a) { return a *= s; }
  friend ComplexTensor3 operator*(const ComplexTensor3& a, const ComplexTensor3& b);
  friend bool operator==(const ComplexTensor3&, const ComplexTensor3&) = default;

  /// Frobenius norm.
  double norm() const;

 private:
  std::array<cplx, 9> a_{};
};

/// Tr[a . b^{*T}] = sum_ij a_ij conj(b_ij).
cplx trace_product(const ComplexTensor3& a, const ComplexTensor3& b);

/// max_ij |a_ij - b_ij| / max(|b|_F, tiny).
double relative_difference(const ComplexTensor3& a, const ComplexTensor3& b);

/// e^{ikr} / (4 pi r). Throws DomainError for r <= 0.
cplx scalar_green(cplx k, double r);

/// n * omega / c.
cplx wavenumber(double omega, const Medium& med, const Constants& k = Constants::si());

ComplexTensor3 green_tensor(const SeparationVector& rv, double omega, const Medium& med,
                            const Constants& k = Constants::si());

enum class Coupling { electric, magnetic };

/// Coupling type at the acceptor end and at the donor end.
struct CouplingPair {
  Coupling acceptor;
  Coupling donor;
};

inline constexpr CouplingPair kEE{Coupling::electric, Coupling::electric};
inline constexpr CouplingPair kEM{Coupling::electric, Coupling::magnetic};
inline constexpr CouplingPair kME{Coupling::magnetic, Coupling::electric};
inline constexpr CouplingPair kMM{Coupling::magnetic, Coupling::magnetic};

/// Coefficients of I, e (x) e and K. Agrees with the dense tensors to rounding.
struct FactoredTensor {
  cplx isotropic;
  cplx radial;
  cplx antisymmetric;

  ComplexTensor3 dense(const Vec3& e) const;
};

FactoredTensor green_tensor_factored(double r, double omega, const Medium& med,
                                     const Constants& k = Constants::si());
FactoredTensor dual_green_factored(CouplingPair pair, double r, double omega, const Medium& med,
                                   const Constants& k = Constants::si());

/// G_ee = (i w/c) G (i w/c); G_em = (i w/c) G x grad_D; G_me = grad_A x G (i w/c);
/// G_mm = grad_A x G x grad_D. Curls are analytic.
ComplexTensor3 dual_green(CouplingPair pair, const SeparationVector& rv, double omega,
                          const Medium& med, const Constants& k = Constants::si());

/// Onsager real-cavity factors.
struct LocalFieldFactors {
  cplx electric;  // 3 eps / (1 + 2 eps)
  cplx magnetic;  // 3 / (1 + 2 mu)
};

/// Throws PoleError at eps = -1/2 or mu = -1/2.
LocalFieldFactors lfc_factors(const Medium& med);

/// c_lambda G_{lambda lambda'} c_lambda'.
ComplexTensor3 dual_green_lfc(CouplingPair pair, const SeparationVector& rv, double omega,
                              const Medium& med, const Constants& k = Constants::si());

/// dual_green_lfc for LocalField::onsager, dual_green otherwise.
ComplexTensor3 dual_green(CouplingPair pair, const SeparationVector& rv, double omega,
                          const Medium& med, LocalField lfc, const Constants& k = Constants::si());

}  // namespace chiralret::greens
