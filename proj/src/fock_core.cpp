#include "idjc/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace idjc {

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::OneMode ? "one-mode" : "two-mode";
}

std::string_view to_string(AtomLabel label) {
  switch (label) {
    case AtomLabel::PP: return "PP";
    case AtomLabel::PM: return "PM";
    case AtomLabel::MP: return "MP";
    case AtomLabel::MM: return "MM";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// AtomicState

AtomicState::AtomicState(cplx alpha, cplx beta, cplx gamma, cplx delta)
    : amps_{alpha, beta, gamma, delta} {
  double n2 = 0.0;
  for (auto a : amps_) n2 += std::norm(a);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "atomic amplitudes not normalized: sum |c|^2 = " << n2;
    throw std::invalid_argument(os.str());
  }
}

AtomicState AtomicState::normalized(cplx alpha, cplx beta, cplx gamma, cplx delta) {
  std::array<cplx, 4> a{alpha, beta, gamma, delta};
  double n2 = 0.0;
  for (auto c : a) n2 += std::norm(c);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("atomic amplitudes must be finite and not all zero");
  }
  const double s = 1.0 / std::sqrt(n2);
  for (auto& c : a) c *= s;
  return AtomicState(a);
}

cplx inner(const AtomicState& lhs, const AtomicState& rhs) {
  cplx s{};
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(lhs.amplitudes()[i]) * rhs.amplitudes()[i];
  return s;
}

// ---------------------------------------------------------------------------
// Coherent field

CoherentSpec::CoherentSpec(double nbar, double phase) : nbar_(nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0) {
    throw std::invalid_argument("mean photon number must be finite and non-negative");
  }
  if (!std::isfinite(phase)) throw std::invalid_argument("phase must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phase_ = std::fmod(phase, two_pi);
  if (phase_ < 0.0) phase_ += two_pi;
}

namespace {

// log |F_n|
double log_poisson_amplitude(double nbar, int n) {
  return -0.5 * nbar + 0.5 * n * std::log(nbar) - 0.5 * std::lgamma(n + 1.0);
}

}  // namespace

double retained_mass(const CoherentSpec& spec, FockCutoff cutoff) {
  if (cutoff.nmax < 0) throw std::invalid_argument("cutoff must be non-negative");
  if (spec.nbar() == 0.0) return 1.0;
  double mass = 0.0;
  for (int n = 0; n <= cutoff.nmax; ++n) mass += std::exp(2.0 * log_poisson_amplitude(spec.nbar(), n));
  return mass;
}

std::vector<cplx> coherent_amplitudes(const CoherentSpec& spec, FockCutoff cutoff) {
  const double mass = retained_mass(spec, cutoff);
  if (mass < 1.0 - kMaxTruncatedMass) {
    std::ostringstream os;
    os << "Fock cutoff " << cutoff.nmax << " retains only " << mass
       << " of the coherent-state probability (nbar = " << spec.nbar() << ")";
    throw TruncationError(os.str());
  }
  std::vector<cplx> f(static_cast<std::size_t>(cutoff.nmax) + 1, cplx{});
  if (spec.nbar() == 0.0) {
    f[0] = 1.0;
    return f;
  }
  for (int n = 0; n <= cutoff.nmax; ++n) {
    f[n] = std::polar(std::exp(log_poisson_amplitude(spec.nbar(), n)), n * spec.phase());
  }
  return f;
}

FockCutoff default_cutoff(double nbar, double width) {
  if (!std::isfinite(width) || width < 0.0) {
    throw std::invalid_argument("cutoff width multiplier must be finite and non-negative");
  }
  const CoherentSpec spec(nbar);
  int nmax = std::max(2, static_cast<int>(std::ceil(nbar + width * std::sqrt(nbar))));
  while (retained_mass(spec, {nmax}) < 1.0 - kMaxTruncatedMass) ++nmax;
  return {nmax};
}

// ---------------------------------------------------------------------------
// Presets

namespace {

struct PresetName {
  AtomicPreset preset;
  std::string_view name;
};

constexpr std::array<PresetName, 10> kPresetNames{{
    {AtomicPreset::Phi1, "Phi1"},
    {AtomicPreset::Phi2, "Phi2"},
    {AtomicPreset::Phi3, "Phi3"},
    {AtomicPreset::Phi4, "Phi4"},
    {AtomicPreset::A, "A"},
    {AtomicPreset::B, "B"},
    {AtomicPreset::PP, "PP"},
    {AtomicPreset::PM, "PM"},
    {AtomicPreset::MP, "MP"},
    {AtomicPreset::MM, "MM"},
}};

}  // namespace

AtomicPreset parse_preset(std::string_view name) {
  for (const auto& p : kPresetNames) {
    if (p.name == name) return p.preset;
  }
  throw std::invalid_argument("unknown atomic preset '" + std::string(name) + "'");
}

std::string_view to_string(AtomicPreset preset) {
  for (const auto& p : kPresetNames) {
    if (p.preset == preset) return p.name;
  }
  return "?";
}

AtomicState preset_atomic_state(AtomicPreset preset, double theta) {
  const cplx e1 = std::polar(1.0, theta);
  const cplx e2 = std::polar(1.0, 2.0 * theta);
  const double r2 = std::numbers::sqrt2 / 2.0;
  switch (preset) {
    case AtomicPreset::Phi1: return AtomicState::normalized(0.5 * e2, 0.5 * e1, 0.5 * e1, 0.5);
    case AtomicPreset::Phi2: return AtomicState::normalized(0.5 * e2, -0.5 * e1, -0.5 * e1, 0.5);
    case AtomicPreset::Phi3: return AtomicState::normalized(-r2 * e2, 0.0, 0.0, r2);
    case AtomicPreset::Phi4: return AtomicState::normalized(0.0, r2, -r2, 0.0);
    case AtomicPreset::A: return AtomicState::normalized(0.0, r2, r2, 0.0);
    // (Phi1 + Phi2)/sqrt2
    case AtomicPreset::B: return AtomicState::normalized(r2 * e2, 0.0, 0.0, r2);
    case AtomicPreset::PP: return AtomicState(1.0, 0.0, 0.0, 0.0);
    case AtomicPreset::PM: return AtomicState(0.0, 1.0, 0.0, 0.0);
    case AtomicPreset::MP: return AtomicState(0.0, 0.0, 1.0, 0.0);
    case AtomicPreset::MM: return AtomicState(0.0, 0.0, 0.0, 1.0);
  }
  throw std::invalid_argument("unknown atomic preset");
}

// ---------------------------------------------------------------------------
// Joint space

JointBasis::JointBasis(FockCutoff cutoff)
    : kind_(ModelKind::OneMode), nmax_{cutoff.nmax, 0},
      fock_size_(static_cast<std::size_t>(cutoff.nmax) + 1) {
  if (cutoff.nmax < 0) throw std::invalid_argument("cutoff must be non-negative");
}

JointBasis::JointBasis(FockCutoff cutoff1, FockCutoff cutoff2)
    : kind_(ModelKind::TwoMode), nmax_{cutoff1.nmax, cutoff2.nmax},
      fock_size_((static_cast<std::size_t>(cutoff1.nmax) + 1) *
                 (static_cast<std::size_t>(cutoff2.nmax) + 1)) {
  if (cutoff1.nmax < 0 || cutoff2.nmax < 0) {
    throw std::invalid_argument("cutoffs must be non-negative");
  }
}

JointState::JointState(JointBasis basis) : basis_(basis), amps_(basis.dimension(), cplx{}) {}

JointState::JointState(JointBasis basis, std::vector<cplx> amplitudes)
    : basis_(basis), amps_(std::move(amplitudes)) {
  if (amps_.size() != basis_.dimension()) {
    throw std::invalid_argument("amplitude count does not match basis dimension");
  }
}

double JointState::norm() const {
  double s = 0.0;
  for (auto a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void JointState::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw std::invalid_argument("cannot normalize the zero state");
  for (auto& a : amps_) a /= n;
}

double max_abs_difference(const JointState& a, const JointState& b) {
  if (!(a.basis() == b.basis())) throw std::invalid_argument("states live in different bases");
  double m = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

JointState build_initial_state(const AtomicState& atomic, const CoherentSpec& field,
                               FockCutoff cutoff) {
  const auto f = coherent_amplitudes(field, cutoff);
  JointState psi{JointBasis(cutoff)};
  for (auto l : kAtomLabels) {
    for (int n = 0; n <= cutoff.nmax; ++n) psi.at(l, n) = atomic[l] * f[n];
  }
  psi.normalize();
  return psi;
}

JointState build_initial_state(const AtomicState& atomic, const CoherentSpec& field1,
                               const CoherentSpec& field2, FockCutoff cutoff1,
                               FockCutoff cutoff2) {
  const auto f1 = coherent_amplitudes(field1, cutoff1);
  const auto f2 = coherent_amplitudes(field2, cutoff2);
  JointState psi{JointBasis(cutoff1, cutoff2)};
  for (auto l : kAtomLabels) {
    for (int n1 = 0; n1 <= cutoff1.nmax; ++n1) {
      const cplx c = atomic[l] * f1[n1];
      for (int n2 = 0; n2 <= cutoff2.nmax; ++n2) psi.at(l, n1, n2) = c * f2[n2];
    }
  }
  psi.normalize();
  return psi;
}

}  // namespace idjc
