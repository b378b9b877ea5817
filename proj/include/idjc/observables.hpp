#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

#include "idjc/evolution.hpp"
#include "idjc/fock_core.hpp"

namespace idjc {

/// rho_AT = Tr_F |psi><psi| over (|++>, |+->, |-+>, |-->).
struct ReducedAtomicDensity {
  Eigen::Matrix4cd rho;
};

ReducedAtomicDensity reduce_atomic(const JointState& psi);

/// Tr(rho^2) as the sum of |rho_ij|^2.
double purity(const ReducedAtomicDensity& rho);

inline constexpr double kMaxLinearEntropy = 0.75;
inline constexpr double kEntropyHealthTolerance = 1e-9;

/// S = 1 - Tr(rho^2), clamped to [0, 3/4]. A raw value outside that range by
/// more than kEntropyHealthTolerance is reported on stderr.
double linear_entropy(const ReducedAtomicDensity& rho);

/// Unclamped 1 - Tr(rho^2).
double raw_linear_entropy(const ReducedAtomicDensity& rho);

/// W_++ = sum over Fock indices of |amplitude(|++>, fock)|^2.
double prob_both_excited(const JointState& psi);

struct EntropySeries {
  std::vector<double> gt;
  std::vector<double> entropy;
  std::vector<double> w_pp;
  std::vector<double> norm;
  std::vector<double> purity;
  std::size_t health_warnings = 0;  // points with raw S outside [0, 3/4] beyond tolerance
};

/// `points` equally spaced values covering [t0, t1] inclusive.
std::vector<double> uniform_grid(double t0, double t1, std::size_t points);

/// Evolve, reduce, and record S, W_++ and the norm at each grid point. The grid
/// must be strictly increasing. `threads` = 0 picks the hardware concurrency;
/// the result does not depend on the thread count.
EntropySeries entropy_series(const EvolutionEngine& engine, std::span<const double> grid,
                             unsigned threads = 0);

}  // namespace idjc
