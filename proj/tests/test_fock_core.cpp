#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "idjc/fock_core.hpp"
#include "test_support.hpp"

using namespace idjc;

namespace {
constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_amplitudes(const AtomicState& s, std::array<cplx, 4> expected, double tol = 1e-12) {
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s.amplitudes()[i] - expected[i]) < tol);
}
}  // namespace

TEST_CASE("coherent amplitudes of the vacuum") {
  const auto f = coherent_amplitudes(CoherentSpec(0.0, 1.3), {5});
  REQUIRE(f.size() == 6);
  CHECK(f[0] == cplx(1.0, 0.0));
  for (std::size_t n = 1; n < f.size(); ++n) CHECK(f[n] == cplx{});
}

TEST_CASE("coherent amplitude F_1 at nbar = 1") {
  const auto f = coherent_amplitudes(CoherentSpec(1.0, 0.0), default_cutoff(1.0));
  CHECK(f[1].real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(f[1].real() == doctest::Approx(0.60653).epsilon(1e-5));
  CHECK(f[1].imag() == 0.0);
}

TEST_CASE("coherent amplitudes carry the phase e^{i n phi}") {
  const double phi = 0.37;
  const auto f = coherent_amplitudes(CoherentSpec(4.0, phi), default_cutoff(4.0));
  for (std::size_t n = 1; n < 8; ++n) {
    const double expected = std::remainder(n * phi, 2 * kPi);
    CHECK(std::arg(f[n]) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("retained Poisson mass against a recurrence oracle") {
  for (double nbar : {0.5, 2.0, 30.0, 50.0, 150.0}) {
    for (int nmax : {5, 20, 60, 90, 220}) {
      const double oracle = static_cast<double>(testing::poisson_mass_upto(nbar, nmax));
      CHECK(retained_mass(CoherentSpec(nbar), {nmax}) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("5-sigma cutoff at nbar = 30 loses more than 1e-6") {
  // ceil(30 + 5 sqrt 30) = 58 leaves a tail of 1.88e-6; one more level is enough.
  const int five_sigma = static_cast<int>(std::ceil(30.0 + 5.0 * std::sqrt(30.0)));
  REQUIRE(five_sigma == 58);
  const long double tail58 = 1.0L - testing::poisson_mass_upto(30.0, 58);
  const long double tail59 = 1.0L - testing::poisson_mass_upto(30.0, 59);
  CHECK(static_cast<double>(tail58) == doctest::Approx(1.8786e-6).epsilon(1e-3));
  CHECK(tail59 < 1e-6L);
  CHECK_THROWS_AS(coherent_amplitudes(CoherentSpec(30.0), {58}), TruncationError);
  CHECK(default_cutoff(30.0).nmax == 59);
  const auto f = coherent_amplitudes(CoherentSpec(30.0), default_cutoff(30.0));
  double mass = 0.0;
  for (auto x : f) mass += std::norm(x);
  CHECK(mass >= 1.0 - 1e-6);
}

TEST_CASE("default cutoff respects the width rule and the mass bound") {
  for (double nbar : {0.0, 0.3, 1.0, 2.0, 7.5, 30.0, 50.0, 150.0, 400.0}) {
    for (double w : {3.0, 5.0, 8.0}) {
      const auto c = default_cutoff(nbar, w);
      CHECK(c.nmax >= static_cast<int>(std::ceil(nbar + w * std::sqrt(nbar))));
      CHECK(c.nmax >= 2);
      CHECK(retained_mass(CoherentSpec(nbar), c) >= 1.0 - kMaxTruncatedMass);
    }
  }
}

TEST_CASE("coherent mass is bounded by one and grows with the cutoff") {
  for (double nbar : {1.0, 10.0, 40.0}) {
    double prev = 0.0;
    for (int nmax = 0; nmax < 120; nmax += 7) {
      const double m = retained_mass(CoherentSpec(nbar), {nmax});
      CHECK(m <= 1.0 + 1e-14);
      CHECK(m >= prev);
      prev = m;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("invalid field parameters") {
  CHECK_THROWS_AS(CoherentSpec(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(CoherentSpec(std::nan("")), std::invalid_argument);
  CHECK(CoherentSpec(1.0, 2 * kPi + 0.25).phase() == doctest::Approx(0.25));
  CHECK(CoherentSpec(1.0, -0.25).phase() == doctest::Approx(2 * kPi - 0.25));
}

TEST_CASE("atomic state normalization is enforced") {
  CHECK_THROWS_AS(AtomicState(1.0, 1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_NOTHROW(AtomicState(0.6, cplx(0.0, 0.8), 0.0, 0.0));
  const auto s = AtomicState::normalized(1.0, 1.0, 0.0, 0.0);
  CHECK(s.alpha().real() == doctest::Approx(kInvSqrt2));
  CHECK_THROWS_AS(AtomicState::normalized(0.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("named presets") {
  check_amplitudes(preset_atomic_state(AtomicPreset::Phi4, 1.234), {0.0, kInvSqrt2, -kInvSqrt2, 0.0});
  check_amplitudes(preset_atomic_state(AtomicPreset::A, 0.0), {0.0, kInvSqrt2, kInvSqrt2, 0.0});
  check_amplitudes(preset_atomic_state(AtomicPreset::Phi1, 0.0), {0.5, 0.5, 0.5, 0.5});
  check_amplitudes(preset_atomic_state(AtomicPreset::Phi3, 0.0), {-kInvSqrt2, 0.0, 0.0, kInvSqrt2});
  check_amplitudes(preset_atomic_state(AtomicPreset::MP, 0.3), {0.0, 0.0, 1.0, 0.0});
  CHECK(parse_preset("Phi3") == AtomicPreset::Phi3);
  CHECK(to_string(AtomicPreset::B) == "B");
  CHECK_THROWS_AS(parse_preset("Phi5"), std::invalid_argument);
}

TEST_CASE("Phi1..Phi4 are orthonormal for every theta") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(-10.0, 10.0);
  const std::array<AtomicPreset, 4> phis{AtomicPreset::Phi1, AtomicPreset::Phi2,
                                         AtomicPreset::Phi3, AtomicPreset::Phi4};
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = th(rng);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const cplx ip = inner(preset_atomic_state(phis[i], theta), preset_atomic_state(phis[j], theta));
        CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("A and B as superpositions of Phi1 and Phi2") {
  for (double theta : {0.0, 0.3, 1.7, -2.4}) {
    const auto p1 = preset_atomic_state(AtomicPreset::Phi1, theta).amplitudes();
    const auto p2 = preset_atomic_state(AtomicPreset::Phi2, theta).amplitudes();
    const auto a = preset_atomic_state(AtomicPreset::A, theta).amplitudes();
    const auto b = preset_atomic_state(AtomicPreset::B, theta).amplitudes();
    const cplx phase = std::polar(1.0, -theta);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(b[i] - (p1[i] + p2[i]) * kInvSqrt2) < 1e-12);
      CHECK(std::abs(a[i] - phase * (p1[i] - p2[i]) * kInvSqrt2) < 1e-12);
    }
  }
  // At theta = 0 the printed e^{2 i theta} prefactor is 1 and agrees.
  const auto p1 = preset_atomic_state(AtomicPreset::Phi1, 0.0).amplitudes();
  const auto p2 = preset_atomic_state(AtomicPreset::Phi2, 0.0).amplitudes();
  const auto a = preset_atomic_state(AtomicPreset::A, 0.0).amplitudes();
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(a[i] - (p1[i] - p2[i]) * kInvSqrt2) < 1e-12);
}

TEST_CASE("initial state: excited pair in the vacuum") {
  const auto psi = build_initial_state(AtomicState(1.0, 0.0, 0.0, 0.0), CoherentSpec(0.0), {3});
  for (auto l : kAtomLabels) {
    for (int n = 0; n <= 3; ++n) {
      const cplx expected = (l == AtomLabel::PP && n == 0) ? 1.0 : 0.0;
      CHECK(psi.amplitude(l, n) == expected);
    }
  }
}

TEST_CASE("initial state: A-state with nbar = 1") {
  const auto cutoff = default_cutoff(1.0);
  const auto psi = build_initial_state(preset_atomic_state(AtomicPreset::A, 0.0), CoherentSpec(1.0), cutoff);
  const double f1 = std::exp(-0.5);
  const double renorm = std::sqrt(retained_mass(CoherentSpec(1.0), cutoff));
  CHECK(psi.amplitude(AtomLabel::PM, 1).real() == doctest::Approx(f1 * kInvSqrt2 / renorm).epsilon(1e-13));
  CHECK(psi.amplitude(AtomLabel::PM, 1).real() == doctest::Approx(0.4289).epsilon(1e-4));
  CHECK(psi.amplitude(AtomLabel::PP, 1) == cplx{});
  CHECK(psi.amplitude(AtomLabel::PM, cutoff.nmax + 1) == cplx{});
  CHECK(psi.amplitude(AtomLabel::PM, -1) == cplx{});
}

TEST_CASE("initial states are normalized after truncation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> nb(0.0, 40.0), ph(-4.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto atomic = testing::random_atomic_state(rng);
    const double n1 = nb(rng), n2 = nb(rng) / 4.0;
    const auto one = build_initial_state(atomic, CoherentSpec(n1, ph(rng)), default_cutoff(n1));
    CHECK(std::abs(one.norm() - 1.0) < 1e-12);
    const auto two = build_initial_state(atomic, CoherentSpec(n1, ph(rng)), CoherentSpec(n2, ph(rng)),
                                         default_cutoff(n1), default_cutoff(n2));
    CHECK(std::abs(two.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("initial state construction propagates truncation errors") {
  CHECK_THROWS_AS(build_initial_state(preset_atomic_state(AtomicPreset::A, 0.0), CoherentSpec(30.0), {20}),
                  TruncationError);
}

TEST_CASE("joint basis layout") {
  const JointBasis b1({4});
  CHECK(b1.dimension() == 20);
  CHECK(b1.index(AtomLabel::MP, 3) == 2 * 5 + 3);
  const JointBasis b2({2}, {3});
  CHECK(b2.fock_size() == 12);
  CHECK(b2.index(AtomLabel::MM, 1, 2) == 3 * 12 + 1 * 4 + 2);
  CHECK_FALSE(b2.contains(3, 0));
  CHECK_FALSE(b2.contains(0, -1));
}
