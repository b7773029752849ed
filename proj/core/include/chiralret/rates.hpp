#pragma once

// Transition matrix elements and isotropically averaged reduced transfer rates.
//
// Every rate here is Gamma / rho(omega_f) in s^-2. The trace route
// (reduced_gammas_trace) contracts dense dual Green's tensors and is the
// ground truth; the closed forms (reduced_gammas_closed) are fast paths
// that the oracle checks against it.

#include <array>

#include "chiralret/greens.hpp"
#include "chiralret/types.hpp"

namespace chiralret::rates {

using greens::Coupling;
using greens::Vec3;

using CVec3 = std::array<cplx, 3>;

/// Fixed-orientation transition dipoles in dual form (both in C*m).
/// Electric dipoles are real and magnetic ones imaginary.
class DipoleVectors {
 public:
  /// Throws ValidationError if Im(d_e) != 0 or Re(d_m) != 0.
  static DipoleVectors make(const CVec3& d_e, const CVec3& d_m);

  const CVec3& electric() const noexcept { return d_e_; }
  const CVec3& magnetic() const noexcept { return d_m_; }
  const CVec3& of(Coupling c) const noexcept {
    return c == Coupling::electric ? d_e_ : d_m_;
  }

 private:
  DipoleVectors(const CVec3& e, const CVec3& m) : d_e_(e), d_m_(m) {}
  CVec3 d_e_;
  CVec3 d_m_;
};

enum class Role { donor, acceptor };

/// Builds dipoles for `m` with d_e along `axis` and d_m in the plane of
/// `axis` and `perp` such that the molecule's rotatory strength is
/// reproduced: Im(d_e^D . d_m^D*) = R/c for a donor (downward transition),
/// Im(d_e^A* . d_m^A) = R/c for an acceptor. `axis` and `perp` must be
/// orthonormal.
DipoleVectors dipoles_for(const Molecule& m, Role role, const Vec3& axis, const Vec3& perp);

/// M_{lambda_A lambda_D} = mu0 c^2 d^A_{lambda_A} . G_{lambda_A lambda_D} . d^D_{lambda_D}
/// in joules. With G_ee = -(w/c)^2 G this is M_ee = -mu0 w^2 d^A . G . d^D.
cplx matrix_element(Coupling acceptor_type, Coupling donor_type, const DipoleVectors& acceptor,
                    const DipoleVectors& donor, const greens::SeparationVector& rv, double omega,
                    const Medium& med, LocalField lfc, const Constants& k = Constants::si());

/// Sum of all four matrix elements.
cplx total_matrix_element(const DipoleVectors& acceptor, const DipoleVectors& donor,
                          const greens::SeparationVector& rv, double omega, const Medium& med,
                          LocalField lfc, const Constants& k = Constants::si());

/// Labels (lambda1, lambda2, lambda3, lambda4) of one trace-rate contribution.
using RateLabels = std::array<Coupling, 4>;

/// (2 pi mu0^2 c^4 / (9 hbar^2)) (d^A_l1 . d^A*_l2)(d^D*_l3 . d^D_l4)
///   Tr[G_{l1 l4} G^{*T}_{l2 l3}]
/// Complex in general; the sum over all labels is real.
cplx reduced_rate_contribution(const RateLabels& labels, const TransferConfig& cfg);

struct RatePair {
  double gamma_nd;    // s^-2
  double gamma_disc;  // s^-2
};

/// gamma_nd = sum of Gamma_{l l l' l'}; gamma_disc = Gamma_emme + Gamma_meme + Gamma_emem + Gamma_meem.
RatePair reduced_gammas_trace(const TransferConfig& cfg);

/// Closed forms with the common attenuation factor exp(-attenuation) split
/// off, so that ratios survive when the factor itself underflows.
struct ClosedFormTerms {
  double nd_stripped;
  double disc_stripped;
  double attenuation;  // 2 Im(n) k0 r

  RatePair rates() const;
  /// gamma_disc / gamma_nd; throws DegenerateInputError if gamma_nd == 0.
  double ratio() const;
};

/// Free-space closed forms. Ignores medium and lfc in `cfg`.
ClosedFormTerms free_space_closed_form(const TransferConfig& cfg);

/// General-medium closed forms for the requested variant, always evaluated
/// through the medium expression (c_e = c_m = 1 when lfc is off).
ClosedFormTerms medium_closed_form(const TransferConfig& cfg);

/// Vacuum with lfc off uses the free-space forms, everything else the medium forms.
ClosedFormTerms closed_form_terms(const TransferConfig& cfg);
RatePair reduced_gammas_closed(const TransferConfig& cfg);

enum class RateRoute { closed_form, trace };

/// Throws DegenerateInputError when gamma_nd == 0.
RateBreakdown rates_LR(const TransferConfig& cfg, RateRoute route = RateRoute::closed_form);

}  // namespace chiralret::rates
