#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chiralret/discrim.hpp"
#include "chiralret/rates.hpp"

using namespace chiralret;

namespace {

constexpr double kOmega = 6.44e15;
constexpr int kCases = 2000;

struct Gen {
  std::mt19937_64 rng{20240917};
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

  Molecule molecule(const char* name) {
    const double de = log_uniform(1e-32, 1e-29);
    const double dm = de * log_uniform(1e-3, 1e1);
    const Handedness h = uniform(0, 1) < 0.5 ? Handedness::left : Handedness::right;
    return make_molecule(name, de, dm, uniform(-1.0, 1.0), h, kOmega);
  }

  Medium medium() {
    const double kind = uniform(0, 1);
    if (kind < 0.1) return Medium::vacuum();
    if (kind < 0.7) return medium_from_index({uniform(0.05, 5.0), log_uniform(1e-9, 3.0)});
    const cplx eps{uniform(-6.0, 8.0), log_uniform(1e-6, 4.0)};
    const cplx mu{uniform(-2.0, 3.0), log_uniform(1e-6, 2.0)};
    return make_medium(eps, mu);
  }

  LocalField lfc() { return uniform(0, 1) < 0.5 ? LocalField::off : LocalField::onsager; }
};

}  // namespace

TEST_CASE("randomized rate invariants") {
  Gen g;
  int checked = 0;
  for (int i = 0; i < kCases; ++i) {
    const Molecule d = g.molecule("D"), a = g.molecule("A");
    const double r = g.log_uniform(1e-10, 1e-4);
    const auto cfg = make_transfer_config(d, a, r, g.medium(), g.lfc());
    CAPTURE(i);

    const RateBreakdown b = rates::rates_LR(cfg);
    CHECK(b.S >= -1.0);
    CHECK(b.S <= 1.0);
    CHECK(b.gamma_R >= 0.0);
    CHECK(b.gamma_nd >= 0.0);
    CHECK(std::abs(b.S) <= std::abs(d.cos_theta() * a.cos_theta()));

    auto flipped = cfg;
    flipped.acceptor = a.enantiomer();
    const RateBreakdown f = rates::rates_LR(flipped);
    CHECK(f.gamma_disc == -b.gamma_disc);
    CHECK(f.gamma_nd == b.gamma_nd);

    const discrim::SLimits l = discrim::s_limits(cfg);
    CHECK(std::abs(l.s_near) <= 1.0);
    CHECK(std::abs(l.s_far) <= 1.0);
    ++checked;
  }
  CHECK(checked >= 1000);
}

TEST_CASE("randomized trace agreement") {
  Gen g;
  int compared = 0;
  for (int i = 0; i < kCases; ++i) {
    const Molecule d = g.molecule("D"), a = g.molecule("A");
    const double r = g.log_uniform(1e-9, 1e-5);
    const auto cfg = make_transfer_config(d, a, r, g.medium(), g.lfc());
    CAPTURE(i);
    const auto t = rates::reduced_gammas_trace(cfg);
    if (!(t.gamma_nd > 1e-250)) continue;  // attenuated below double range
    const auto c = rates::reduced_gammas_closed(cfg);
    CHECK(std::abs(c.gamma_nd - t.gamma_nd) <= 1e-9 * t.gamma_nd);
    CHECK(std::abs(c.gamma_disc - t.gamma_disc) <= 1e-9 * t.gamma_nd);
    ++compared;
  }
  CHECK(compared >= 1000);
}

TEST_CASE("randomized near-zone slope") {
  Gen g;
  const double k0 = kOmega / Constants::si().c;
  for (int i = 0; i < kCases; ++i) {
    const Molecule d = g.molecule("D"), a = g.molecule("A");
    const double r1 = g.log_uniform(1e-6, 5e-3) / k0;
    const double r2 = r1 * g.uniform(1.05, 2.0);
    CAPTURE(i);
    const auto c1 = make_transfer_config(d, a, r1);
    const double slope = std::log(rates::reduced_gammas_closed(with_separation(c1, r2)).gamma_nd /
                                  rates::reduced_gammas_closed(c1).gamma_nd) /
                         std::log(r2 / r1);
    CHECK(std::abs(slope + 6.0) <= 0.01);
  }
}
