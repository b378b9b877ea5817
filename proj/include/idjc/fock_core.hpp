#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idjc {

using cplx = std::complex<double>;

enum class ModelKind { OneMode, TwoMode };

/// Two-atom basis labels, atom 1 first: |++>, |+->, |-+>, |-->.
enum class AtomLabel : std::size_t { PP = 0, PM = 1, MP = 2, MM = 3 };

inline constexpr std::array<AtomLabel, 4> kAtomLabels{AtomLabel::PP, AtomLabel::PM,
                                                      AtomLabel::MP, AtomLabel::MM};

constexpr std::size_t to_index(AtomLabel l) { return static_cast<std::size_t>(l); }

/// Number of excited atoms in a basis label.
constexpr int excited_atoms(AtomLabel l) {
  switch (l) {
    case AtomLabel::PP: return 2;
    case AtomLabel::PM:
    case AtomLabel::MP: return 1;
    case AtomLabel::MM: return 0;
  }
  return 0;
}

std::string_view to_string(ModelKind kind);
std::string_view to_string(AtomLabel label);

/// Retained Poisson mass fell below the admissible threshold.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normalized pure state of the atom pair, amplitudes (alpha, beta, gamma, delta)
/// over (|++>, |+->, |-+>, |-->).
class AtomicState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws std::invalid_argument unless the amplitudes are normalized.
  AtomicState(cplx alpha, cplx beta, cplx gamma, cplx delta);

  /// Rescales arbitrary (nonzero) amplitudes to unit norm.
  static AtomicState normalized(cplx alpha, cplx beta, cplx gamma, cplx delta);

  cplx operator[](AtomLabel l) const { return amps_[to_index(l)]; }
  const std::array<cplx, 4>& amplitudes() const { return amps_; }

  cplx alpha() const { return amps_[0]; }
  cplx beta() const { return amps_[1]; }
  cplx gamma() const { return amps_[2]; }
  cplx delta() const { return amps_[3]; }

 private:
  explicit AtomicState(const std::array<cplx, 4>& a) : amps_(a) {}
  std::array<cplx, 4> amps_;
};

/// <lhs|rhs>
cplx inner(const AtomicState& lhs, const AtomicState& rhs);

/// One coherent mode: mean photon number and phase (reduced to [0, 2pi)).
class CoherentSpec {
 public:
  CoherentSpec(double nbar, double phase = 0.0);

  double nbar() const { return nbar_; }
  double phase() const { return phase_; }

 private:
  double nbar_;
  double phase_;
};

/// Highest retained Fock index of one mode.
struct FockCutoff {
  int nmax = 0;
};

inline constexpr double kDefaultCutoffWidth = 5.0;
inline constexpr double kMaxTruncatedMass = 1e-6;

/// Smallest cutoff that is at least ceil(nbar + width*sqrt(nbar)), at least 2,
/// and keeps the discarded Poisson mass below kMaxTruncatedMass.
FockCutoff default_cutoff(double nbar, double width = kDefaultCutoffWidth);

/// F_n = exp(-nbar/2) nbar^{n/2} / sqrt(n!) e^{i n phase}, n = 0..nmax.
/// Throws TruncationError if sum |F_n|^2 < 1 - kMaxTruncatedMass.
std::vector<cplx> coherent_amplitudes(const CoherentSpec& spec, FockCutoff cutoff);

/// Sum of |F_n|^2 over the retained range, without the truncation check.
double retained_mass(const CoherentSpec& spec, FockCutoff cutoff);

enum class AtomicPreset { Phi1, Phi2, Phi3, Phi4, A, B, PP, PM, MP, MM };

AtomicPreset parse_preset(std::string_view name);
std::string_view to_string(AtomicPreset preset);

/// theta is phi (one mode) or phi1 + phi2 (two modes).
AtomicState preset_atomic_state(AtomicPreset preset, double theta);

/// Index layout of the truncated joint space: label-major, then Fock indices
/// (n1 major, n2 minor for two modes).
class JointBasis {
 public:
  JointBasis(FockCutoff cutoff);
  JointBasis(FockCutoff cutoff1, FockCutoff cutoff2);

  ModelKind kind() const { return kind_; }
  int nmax(std::size_t mode) const { return nmax_[mode]; }
  std::size_t modes() const { return kind_ == ModelKind::OneMode ? 1 : 2; }

  std::size_t fock_size() const { return fock_size_; }
  std::size_t dimension() const { return 4 * fock_size_; }

  bool contains(int n1, int n2 = 0) const {
    return n1 >= 0 && n1 <= nmax_[0] && n2 >= 0 && n2 <= nmax_[1];
  }
  std::size_t fock_index(int n1, int n2 = 0) const {
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(nmax_[1] + 1) +
           static_cast<std::size_t>(n2);
  }
  std::size_t index(AtomLabel l, int n1, int n2 = 0) const {
    return to_index(l) * fock_size_ + fock_index(n1, n2);
  }

  bool operator==(const JointBasis&) const = default;

 private:
  ModelKind kind_;
  std::array<int, 2> nmax_;
  std::size_t fock_size_;
};

/// Dense amplitude table over the truncated joint basis.
class JointState {
 public:
  explicit JointState(JointBasis basis);
  JointState(JointBasis basis, std::vector<cplx> amplitudes);

  const JointBasis& basis() const { return basis_; }
  ModelKind kind() const { return basis_.kind(); }

  /// Zero outside the cutoffs.
  cplx amplitude(AtomLabel l, int n1, int n2 = 0) const {
    return basis_.contains(n1, n2) ? amps_[basis_.index(l, n1, n2)] : cplx{};
  }
  cplx& at(AtomLabel l, int n1, int n2 = 0) { return amps_[basis_.index(l, n1, n2)]; }

  /// Contiguous Fock table of one atomic label.
  std::span<const cplx> label_slice(AtomLabel l) const {
    return {amps_.data() + to_index(l) * basis_.fock_size(), basis_.fock_size()};
  }

  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }

  double norm() const;
  void normalize();

 private:
  JointBasis basis_;
  std::vector<cplx> amps_;
};

/// Maximum |a_i - b_i| over matching bases; throws on basis mismatch.
double max_abs_difference(const JointState& a, const JointState& b);

/// Product state atomic (x) coherent field, renormalized after truncation.
JointState build_initial_state(const AtomicState& atomic, const CoherentSpec& field,
                               FockCutoff cutoff);
JointState build_initial_state(const AtomicState& atomic, const CoherentSpec& field1,
                               const CoherentSpec& field2, FockCutoff cutoff1,
                               FockCutoff cutoff2);

}  // namespace idjc
