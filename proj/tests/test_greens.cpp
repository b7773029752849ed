#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chiralret/errors.hpp"
#include "chiralret/greens.hpp"
#include "chiralret/oracle.hpp"

using namespace chiralret;
using namespace chiralret::greens;

namespace {

constexpr double kOmega = 6.44e15;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

ComplexTensor3 static_dipole(const Vec3& e) {
  return ComplexTensor3::identity() - ComplexTensor3::outer(e, e) * cplx{3.0, 0.0};
}

std::vector<Medium> media() {
  std::vector<Medium> out{Medium::vacuum(), make_medium(cplx{2.3, 0.1}, cplx{1.2, 0.05})};
  for (const auto& m : reference_media()) out.push_back(medium_from_index(m.n));
  return out;
}

}  // namespace

TEST_CASE("scalar green") {
  CHECK(scalar_green(0.0, 1.0).real() == doctest::Approx(1.0 / (4.0 * std::numbers::pi)));
  CHECK(scalar_green(0.0, 1.0).imag() == 0.0);

  double last = std::abs(scalar_green(cplx{0.0, 0.0}, 2.0));
  for (double kappa : {0.1, 0.5, 1.0, 3.0}) {
    const double v = std::abs(scalar_green(cplx{0.0, kappa}, 2.0));
    CHECK(v == doctest::Approx(std::exp(-2.0 * kappa) / (8.0 * std::numbers::pi)));
    CHECK(v < last);
    last = v;
  }

  // mpmath, 40 digits
  const cplx g = scalar_green(2.148e7 * 1.4, 1e-7);
  CHECK(rel(g, cplx{-788599.12841714569, 106624.63329047955}) <= 1e-12);

  CHECK_THROWS_AS(scalar_green(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(scalar_green(1.0, -1.0), DomainError);
}

TEST_CASE("separation vector") {
  const auto rv = SeparationVector::make(Vec3{3e-9, -4e-9, 12e-9});
  CHECK(rv.r() == doctest::Approx(13e-9));
  const Vec3& e = rv.unit();
  CHECK(std::abs(e[0] * e[0] + e[1] * e[1] + e[2] * e[2] - 1.0) <= 1e-14);
  const auto d = SeparationVector::along_default_axis(7e-9);
  CHECK(d.r() == 7e-9);
  CHECK(std::abs(d.unit()[0] * d.unit()[0] + d.unit()[1] * d.unit()[1] + d.unit()[2] * d.unit()[2] -
                 1.0) <= 1e-14);
  CHECK_THROWS_AS(SeparationVector::make(Vec3{0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(SeparationVector::along_default_axis(0.0), DomainError);
  CHECK_THROWS_AS(green_tensor(SeparationVector::along_default_axis(1e-9), 0.0, Medium::vacuum()),
                  DomainError);
}

TEST_CASE("green tensor near field is the static dipole tensor") {
  const double k0 = kOmega / Constants::si().c;
  const double r = 1e-5 / k0;
  const auto rv = SeparationVector::along_default_axis(r);
  const ComplexTensor3 g = green_tensor(rv, kOmega, Medium::vacuum());
  const ComplexTensor3 expect =
      static_dipole(rv.unit()) * cplx{-1.0 / (4.0 * std::numbers::pi * k0 * k0 * r * r * r), 0.0};
  CHECK(relative_difference(g, expect) <= 1e-9);
}

TEST_CASE("green tensor far field is transverse") {
  const double k0 = kOmega / Constants::si().c;
  double last = 1.0;
  for (double x : {1e2, 1e3, 1e4}) {
    const auto rv = SeparationVector::along_default_axis(x / k0);
    const ComplexTensor3 g = green_tensor(rv, kOmega, Medium::vacuum());
    double longitudinal = 0.0;
    for (int i = 0; i < 3; ++i) {
      cplx s{};
      for (int j = 0; j < 3; ++j) s += g(i, j) * rv.unit()[j];
      longitudinal = std::max(longitudinal, std::abs(s));
    }
    const double ratio = longitudinal / g.norm();
    CHECK(ratio <= 2.0 / x);
    CHECK(ratio < last);
    last = ratio;
  }
}

TEST_CASE("lossless medium equals vacuum at rescaled wavenumber") {
  const auto rv = SeparationVector::along_default_axis(37e-9);
  const ComplexTensor3 water = green_tensor(rv, kOmega, make_medium(cplx{1.96, 0.0}));
  const ComplexTensor3 vac = green_tensor(rv, 1.4 * kOmega, Medium::vacuum());
  CHECK(relative_difference(water, vac) <= 1e-13);
}

TEST_CASE("dense and factored tensors agree") {
  for (const Medium& med : media())
    for (double r : {1e-9, 3e-8, 1e-6}) {
      const auto rv = SeparationVector::along_default_axis(r);
      CHECK(relative_difference(green_tensor_factored(r, kOmega, med).dense(rv.unit()),
                                green_tensor(rv, kOmega, med)) <= 1e-12);
      for (CouplingPair p : {kEE, kEM, kME, kMM})
        CHECK(relative_difference(dual_green_factored(p, r, kOmega, med).dense(rv.unit()),
                                  dual_green(p, rv, kOmega, med)) <= 1e-12);
    }
}

TEST_CASE("dual tensors: scalar relations and antisymmetry") {
  const Constants k = Constants::si();
  const double k0 = kOmega / k.c;
  for (const Medium& med : media()) {
    const auto rv = SeparationVector::along_default_axis(20e-9);
    const ComplexTensor3 g = green_tensor(rv, kOmega, med);
    const cplx kk = wavenumber(kOmega, med);
    CHECK(relative_difference(dual_green(kEE, rv, kOmega, med), g * cplx{-k0 * k0, 0.0}) <= 1e-15);
    CHECK(relative_difference(dual_green(kMM, rv, kOmega, med), g * (-kk * kk)) <= 1e-15);
    const ComplexTensor3 em = dual_green(kEM, rv, kOmega, med);
    CHECK(relative_difference(em.transpose(), em * cplx{-1.0, 0.0}) == 0.0);
    // G_em = -G_me in a homogeneous medium.
    CHECK(relative_difference(dual_green(kME, rv, kOmega, med), em * cplx{-1.0, 0.0}) <= 1e-15);
  }
}

TEST_CASE("free-space Curie traces vanish") {
  for (double r : {1e-9, 1e-8, 1e-7, 1e-6}) {
    const auto rv = SeparationVector::along_default_axis(r);
    const auto ee = dual_green(kEE, rv, kOmega, Medium::vacuum());
    const auto me = dual_green(kME, rv, kOmega, Medium::vacuum());
    const auto em = dual_green(kEM, rv, kOmega, Medium::vacuum());
    const auto mm = dual_green(kMM, rv, kOmega, Medium::vacuum());
    CHECK(std::abs(trace_product(ee, me)) <= 1e-12 * std::abs(trace_product(ee, ee)));
    CHECK(std::abs(trace_product(em, mm)) <= 1e-12 * em.norm() * mm.norm());
  }
}

TEST_CASE("analytic curls match finite differences") {
  const auto rv = SeparationVector::along_default_axis(50e-9);
  for (const char* name : {"vacuum", "water", "mercury"}) {
    CAPTURE(name);
    const auto c = oracle::curl_fd_check(rv, kOmega, reference_medium(name), 1e-4 * rv.r());
    CHECK(c.error_h <= 1e-6);
    const auto coarse = oracle::curl_fd_check(rv, kOmega, reference_medium(name), 2e-3 * rv.r());
    CHECK(coarse.error_half / coarse.error_h == doctest::Approx(0.25).epsilon(0.05));
  }
  CHECK_THROWS_AS(oracle::curl_fd_check(rv, kOmega, Medium::vacuum(), rv.r() / 10.0), StepError);
  CHECK_THROWS_AS(oracle::curl_fd_check(rv, kOmega, Medium::vacuum(), 0.0), StepError);
}

TEST_CASE("reciprocity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const Medium& med : media())
    for (int s = 0; s < 8; ++s) {
      const auto rv = SeparationVector::make(Vec3{u(rng) * 1e-7, u(rng) * 1e-7, u(rng) * 1e-7});
      const auto back = rv.reversed();
      CHECK(relative_difference(green_tensor(back, kOmega, med).transpose(),
                                green_tensor(rv, kOmega, med)) <= 1e-12);
      CHECK(relative_difference(dual_green(kME, back, kOmega, med).transpose() * cplx{-1.0, 0.0},
                                dual_green(kEM, rv, kOmega, med)) <= 1e-10);
    }
}

TEST_CASE("Helmholtz residual converges at second order") {
  // curl (1/mu) curl G - k0^2 eps G = 0 away from the source.
  const Constants k = Constants::si();
  const double k0 = kOmega / k.c;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  auto residual = [&](const Vec3& v, const Medium& med, double h) {
    auto g_at = [&](int a, double sa, int b, double sb) {
      Vec3 w = v;
      w[a] += sa * h;
      w[b] += sb * h;
      return green_tensor(SeparationVector::make(w), kOmega, med);
    };
    ComplexTensor3 d2[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        d2[a][b] = (g_at(a, 1, b, 1) - g_at(a, 1, b, -1) - g_at(a, -1, b, 1) + g_at(a, -1, b, -1)) *
                   cplx{0.25 / (h * h), 0.0};
    const ComplexTensor3 g = green_tensor(SeparationVector::make(v), kOmega, med);
    ComplexTensor3 res, lap;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        cplx graddiv{}, l{};
        for (int q = 0; q < 3; ++q) {
          graddiv += d2[i][q](q, j);
          l += d2[q][q](i, j);
        }
        lap(i, j) = l / med.mu();
        res(i, j) = (graddiv - l) / med.mu() - k0 * k0 * med.eps() * g(i, j);
      }
    return res.norm() / lap.norm();
  };

  for (const Medium& med : media())
    for (int s = 0; s < 3; ++s) {
      const double r = 10e-9 + 90e-9 * (0.5 + 0.5 * u(rng));
      Vec3 v{u(rng), u(rng), u(rng)};
      const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      for (double& c : v) c *= r / n;
      const double e1 = residual(v, med, 4e-3 * r);
      const double e2 = residual(v, med, 2e-3 * r);
      const double e3 = residual(v, med, 5e-4 * r);
      CHECK(e2 < e1);
      CHECK(std::log2(e1 / e2) >= 1.9);
      CHECK(std::log2(e2 / e3) >= 1.9);
      CHECK(e3 <= 1e-4);
    }
}

TEST_CASE("Onsager factors") {
  const auto vac = lfc_factors(Medium::vacuum());
  CHECK(vac.electric == cplx{1.0, 0.0});
  CHECK(vac.magnetic == cplx{1.0, 0.0});

  const auto water = lfc_factors(make_medium(cplx{1.96, 0.0}));
  CHECK(water.electric.real() == doctest::Approx(1.19512195121951).epsilon(1e-14));
  CHECK(water.magnetic == cplx{1.0, 0.0});

  // mpmath, 40 digits
  const auto hg = lfc_factors(make_medium(cplx{-5.4417, 2.4856}));
  CHECK(rel(hg.electric, cplx{1.62112561499, 0.060924343572}) <= 1e-11);

  CHECK_THROWS_AS(lfc_factors(make_medium(cplx{-0.5, 0.0})), PoleError);
  CHECK_THROWS_AS(lfc_factors(make_medium(cplx{2.0, 0.0}, cplx{-0.5, 0.0})), PoleError);
}

TEST_CASE("local-field dressed tensors") {
  const auto rv = SeparationVector::along_default_axis(25e-9);
  for (CouplingPair p : {kEE, kEM, kME, kMM})
    CHECK(dual_green_lfc(p, rv, kOmega, Medium::vacuum()) ==
          dual_green(p, rv, kOmega, Medium::vacuum()));

  const Medium water = make_medium(cplx{1.96, 0.0});
  const ComplexTensor3 ee = dual_green(kEE, rv, kOmega, water);
  CHECK(relative_difference(dual_green_lfc(kEE, rv, kOmega, water),
                            ee * cplx{1.42831647828673, 0.0}) <= 1e-14);

  const Medium hg = reference_medium("mercury");
  const auto f = lfc_factors(hg);
  CHECK(relative_difference(dual_green_lfc(kEM, rv, kOmega, hg),
                            dual_green(kEM, rv, kOmega, hg) * (f.electric * f.magnetic)) <= 1e-15);
  CHECK(dual_green(kME, rv, kOmega, hg, LocalField::onsager) ==
        dual_green_lfc(kME, rv, kOmega, hg));
  CHECK(dual_green(kME, rv, kOmega, hg, LocalField::off) == dual_green(kME, rv, kOmega, hg));
}
