#include "idjc/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "idjc/evolution.hpp"

namespace idjc {

namespace {

constexpr double kPi = std::numbers::pi;

Interval sorted(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

// Exact one-mode revival period at integer n for a frequency multiple `mult` (2 or 4).
double exact_period(int n, double mult, int k) {
  const double gap = std::abs(mult * rabi_one_mode(n + 1) - mult * rabi_one_mode(n));
  return 2.0 * kPi * k / gap;
}

}  // namespace

RevivalPrediction revival_periods_one_mode(double nbar, int k) {
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument("one-mode revival periods need nbar > 0");
  }
  if (k < 1) throw std::invalid_argument("revival index must be >= 1");
  const int lo = static_cast<int>(std::floor(nbar));
  const int hi = static_cast<int>(std::ceil(nbar));
  RevivalPrediction r{};
  r.kind = ModelKind::OneMode;
  r.index = k;
  r.t1r_asymptotic = kPi * k;
  r.t2r_asymptotic = kPi * k / 2.0;
  r.t1r_exact = sorted(exact_period(lo, 2.0, k), exact_period(hi, 2.0, k));
  r.t2r_exact = sorted(exact_period(lo, 4.0, k), exact_period(hi, 4.0, k));
  r.asymptotic_valid = nbar >= kLargeFieldThreshold;
  r.revivals_may_be_missing = false;
  return r;
}

RevivalPrediction revival_periods_two_mode(double n1bar, double n2bar, int k) {
  if (!(n1bar > 0.0) || !(n2bar > 0.0) || !std::isfinite(n1bar) || !std::isfinite(n2bar)) {
    throw std::invalid_argument("two-mode revival periods need positive mean photon numbers");
  }
  if (k < 1) throw std::invalid_argument("revival index must be >= 1");
  RevivalPrediction r{};
  r.kind = ModelKind::TwoMode;
  r.index = k;
  r.t1r_asymptotic = kPi * std::sqrt(double(k)) / std::sqrt(n1bar * n2bar);
  r.t2r_asymptotic = r.t1r_asymptotic / 2.0;
  r.asymptotic_valid = n1bar >= kLargeFieldThreshold && n2bar >= kLargeFieldThreshold;
  r.revivals_may_be_missing = true;
  return r;
}

std::string_view to_string(DisentanglementSeries s) {
  switch (s) {
    case DisentanglementSeries::T1: return "t1";
    case DisentanglementSeries::T2: return "t2";
    case DisentanglementSeries::T3: return "t3";
    case DisentanglementSeries::T4: return "t4";
  }
  return "?";
}

std::string_view to_string(DisentanglementClass c) {
  return c == DisentanglementClass::AB ? "AB" : "generic";
}

DisentanglementClass parse_disentanglement_class(std::string_view name) {
  if (name == "AB") return DisentanglementClass::AB;
  if (name == "generic") return DisentanglementClass::Generic;
  throw std::invalid_argument("unknown initial-state class '" + std::string(name) + "'");
}

DisentanglementPrediction disentanglement_times(ModelKind kind, DisentanglementClass cls,
                                                double nbar, std::size_t count) {
  DisentanglementPrediction p{kind, cls, {}};
  std::optional<Interval> t1r;
  if (kind == ModelKind::OneMode && nbar > 0.0) t1r = revival_periods_one_mode(nbar, 1).t1r_exact;
  auto scaled = [&](double factor) -> std::optional<Interval> {
    if (!t1r) return std::nullopt;
    return Interval{t1r->lo * factor, t1r->hi * factor};
  };

  if (kind == ModelKind::OneMode && cls == DisentanglementClass::AB) {
    // Odd multiples of pi/4 come from t1, even ones from t2.
    for (std::size_t j = 1; p.times.size() < count; ++j) {
      const double gt = kPi * double(j) / 4.0;
      if (j % 2 == 1) {
        const int k = static_cast<int>((j - 1) / 2);
        p.times.push_back({gt, DisentanglementSeries::T1, k, scaled((2.0 * k + 1.0) / 4.0)});
      } else {
        const int k = static_cast<int>(j / 2);
        p.times.push_back({gt, DisentanglementSeries::T2, k, std::nullopt});
      }
    }
  } else if (kind == ModelKind::OneMode) {
    for (std::size_t k = 1; k <= count; ++k) {
      p.times.push_back({kPi * double(k), DisentanglementSeries::T3, static_cast<int>(k),
                         scaled(double(k))});
    }
  } else if (cls == DisentanglementClass::AB) {
    for (std::size_t m = 1; m <= count; ++m) {
      p.times.push_back({kPi * double(m) / 2.0, DisentanglementSeries::T4, static_cast<int>(m),
                         std::nullopt});
    }
  } else {
    throw std::invalid_argument("no disentanglement series is predicted for generic two-mode states");
  }
  return p;
}

double rabi_one_mode_continuous(double n) { return std::sqrt((2.0 * n * (n + 3.0) + 5.0) / 2.0); }

double taylor_rabi_residual(double nbar, int n) {
  const double slope = (2.0 * nbar + 3.0) / std::sqrt(2.0 * (2.0 * nbar * (nbar + 3.0) + 5.0));
  return rabi_one_mode(n) - (rabi_one_mode_continuous(nbar) + slope * (n - nbar));
}

GenericConditionResidual generic_condition_residual(double nbar, double t) {
  const int n = static_cast<int>(std::lround(nbar));
  const double two_pi = 2.0 * kPi;
  auto wrap = [two_pi](double x) {
    double r = std::fmod(x, two_pi);
    return r < 0.0 ? r + two_pi : r;
  };
  const double lower = 2.0 * std::abs(rabi_one_mode(n + 1) - rabi_one_mode(n)) * t;
  const double upper = 2.0 * std::abs(rabi_one_mode(n + 2) - rabi_one_mode(n + 1)) * t;
  return {wrap(lower), wrap(upper)};
}

std::string_view to_string(InitialClass c) {
  switch (c) {
    case InitialClass::Phi1: return "Phi1";
    case InitialClass::Phi2: return "Phi2";
    case InitialClass::Phi3: return "Phi3";
    case InitialClass::Dark: return "eigenstate-dark";
    case InitialClass::AB: return "AB";
    case InitialClass::Phi12Span: return "Phi12-span";
    case InitialClass::Generic: return "generic";
  }
  return "?";
}

InitialClass classify_initial_state(const AtomicState& atomic, double theta) {
  constexpr double tol = 1e-9;
  auto overlap2 = [&](AtomicPreset p) {
    return std::norm(inner(preset_atomic_state(p, theta), atomic));
  };
  if (overlap2(AtomicPreset::Phi4) > 1.0 - tol) return InitialClass::Dark;
  if (overlap2(AtomicPreset::Phi3) > 1.0 - tol) return InitialClass::Phi3;
  if (overlap2(AtomicPreset::Phi1) > 1.0 - tol) return InitialClass::Phi1;
  if (overlap2(AtomicPreset::Phi2) > 1.0 - tol) return InitialClass::Phi2;
  if (overlap2(AtomicPreset::A) > 1.0 - tol || overlap2(AtomicPreset::B) > 1.0 - tol) {
    return InitialClass::AB;
  }
  if (overlap2(AtomicPreset::Phi1) + overlap2(AtomicPreset::Phi2) > 1.0 - tol) {
    return InitialClass::Phi12Span;
  }
  return InitialClass::Generic;
}

std::optional<DisentanglementClass> disentanglement_class_of(InitialClass c) {
  switch (c) {
    case InitialClass::AB:
    case InitialClass::Phi12Span: return DisentanglementClass::AB;
    case InitialClass::Generic: return DisentanglementClass::Generic;
    default: return std::nullopt;
  }
}

}  // namespace idjc
