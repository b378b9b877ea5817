#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "idjc/fock_core.hpp"

namespace idjc {

struct Interval {
  double lo;
  double hi;
};

/// Photon numbers below this are not considered "large field" for the asymptotic
/// formulas.
inline constexpr double kLargeFieldThreshold = 10.0;

struct RevivalPrediction {
  ModelKind kind;
  int index;                          // k (and m) of the series
  double t1r_asymptotic;              // g T1R
  double t2r_asymptotic;              // g T2R
  std::optional<Interval> t1r_exact;  // one mode only; Omega at floor/ceil of nbar
  std::optional<Interval> t2r_exact;
  bool asymptotic_valid;              // all mean photon numbers >= kLargeFieldThreshold
  bool revivals_may_be_missing;       // two-mode revivals are not guaranteed to occur
};

/// Exact: |2 Omega_{n+1} - 2 Omega_n| T1R = 2 pi k and |4 Omega_{n+1} - 4 Omega_n| T2R = 2 pi k
/// at n = nbar; asymptotic: g T1R = pi k, g T2R = pi k / 2. Requires nbar > 0, k >= 1.
RevivalPrediction revival_periods_one_mode(double nbar, int k);

/// g T'1R = pi sqrt(k) / sqrt(n1bar n2bar), g T'2R = g T'1R / 2.
RevivalPrediction revival_periods_two_mode(double n1bar, double n2bar, int k);

enum class DisentanglementSeries { T1, T2, T3, T4 };
std::string_view to_string(DisentanglementSeries s);

/// Initial-state classes that select a disentanglement series.
enum class DisentanglementClass { AB, Generic };
std::string_view to_string(DisentanglementClass c);
DisentanglementClass parse_disentanglement_class(std::string_view name);

struct DisentanglementTime {
  double gt;                     // asymptotic value
  DisentanglementSeries series;
  int index;                     // k or m
  std::optional<Interval> exact; // from the exact one-mode T1R where the series uses it
};

struct DisentanglementPrediction {
  ModelKind kind;
  DisentanglementClass cls;
  std::vector<DisentanglementTime> times;  // sorted by gt
};

/// One mode, AB: t1 = (2k+1) T1R/4 merged with t2 = k pi/2.
/// One mode, generic: t3 = k pi.
/// Two modes, AB: t4 = m pi/2 (m >= 1); two modes, generic: not predicted (throws).
/// `nbar` feeds the exact one-mode variant and may be 0 to skip it.
DisentanglementPrediction disentanglement_times(ModelKind kind, DisentanglementClass cls,
                                                double nbar, std::size_t count);

/// Omega_n minus its first-order Taylor expansion about nbar.
double taylor_rabi_residual(double nbar, int n);

/// Omega_n continued to real n.
double rabi_one_mode_continuous(double n);

/// Phases of the two neighbouring beat notes at n = round(nbar), reduced mod 2 pi:
/// |2 Omega_{n+1} - 2 Omega_n| t and |2 Omega_{n+2} - 2 Omega_{n+1}| t. Both vanish
/// (mod 2 pi) when every atomic initial state disentangles.
struct GenericConditionResidual {
  double lower;
  double upper;
};
GenericConditionResidual generic_condition_residual(double nbar, double t);

enum class InitialClass { Phi1, Phi2, Phi3, Dark, AB, Phi12Span, Generic };
std::string_view to_string(InitialClass c);

/// Detects Phi1..Phi4, A, B and span{Phi1, Phi2} up to a global phase (tolerance
/// 1e-9); theta is phi or phi1 + phi2.
InitialClass classify_initial_state(const AtomicState& atomic, double theta);

/// Series routing for a classified state; nullopt where no series applies
/// (eigenstates never entangle).
std::optional<DisentanglementClass> disentanglement_class_of(InitialClass c);

}  // namespace idjc
