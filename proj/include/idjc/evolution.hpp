#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "idjc/fock_core.hpp"
#include "idjc/hamiltonians.hpp"

namespace idjc {

// ---------------------------------------------------------------------------
// Rabi frequencies (units of g)

/// Omega_n = sqrt((2n(n+3)+5)/2); the one-mode block at anchor n has
/// eigenvalues +-2 Omega_n and a doubly degenerate 0.
double rabi_one_mode(int n);

/// Omega1(n1,n2) = sqrt(2[(n1+1)^2 (n2+1)^2 + (n1+2)^2 (n2+2)^2]), the nonzero
/// eigenvalue magnitude of the two-mode block anchored at (n1,n2). Defined for
/// n1, n2 >= 0.
double rabi_two_mode_omega1(int n1, int n2);
/// Omega2(n1,n2) = Omega1(n1-2, n2-2); needs n1, n2 >= 2.
double rabi_two_mode_omega2(int n1, int n2);
/// Omega3(n1,n2) = Omega1(n1-1, n2-1); needs n1, n2 >= 1.
double rabi_two_mode_omega3(int n1, int n2);

struct RabiTriple {
  double omega1;
  std::optional<double> omega2;  // empty where the shifted anchor is negative
  std::optional<double> omega3;
};

RabiTriple rabi_two_mode(int n1, int n2);

/// X(n1,n2) = sqrt(n1 n2 (n1+1)(n2+1)), the auxiliary factor of the published
/// two-mode solution.
double x_factor(int n1, int n2);
/// Published Omega1 with X1(n1+1)(n2+1) read as X1 evaluated at (n1+1, n2+1).
double omega1_x_evaluated(int n1, int n2);
/// Published Omega1 with X1(n1+1)(n2+1) read as the product X1(n1,n2)(n1+1)(n2+1).
double omega1_x_product(int n1, int n2);

// ---------------------------------------------------------------------------
// Propagators

enum class EngineKind { ClosedForm, BlockExact, DenseOracle };

std::string_view to_string(EngineKind kind);
EngineKind parse_engine(std::string_view name);

/// Cached eigendecomposition of every excitation block.
class BlockSpectrum {
 public:
  explicit BlockSpectrum(const HamiltonianMatrix& h);

  const JointBasis& basis() const { return basis_; }
  std::size_t block_count() const { return blocks_.size(); }

  /// exp(-i H t) psi
  JointState apply(const JointState& psi, double t) const;

  /// Eigenvalues of block b in ascending order.
  std::vector<double> eigenvalues(std::size_t b) const;

 private:
  friend class BlockExactEngine;

  struct Block {
    std::uint8_t size;
    std::array<std::size_t, 4> index;
    std::array<double, 4> eval;
    std::array<double, 16> evec;  // column-major, column k = eigenvector k
  };

  JointBasis basis_;
  std::vector<Block> blocks_;
};

JointState evolve_block_exact(const BlockSpectrum& spectrum, const JointState& initial,
                              double t);
JointState evolve_block_exact(const HamiltonianMatrix& h, const JointState& initial, double t);

inline constexpr std::size_t kDenseOracleMaxDimension = 2000;

/// Full-matrix eigendecomposition; refuses dimensions above kDenseOracleMaxDimension.
class DenseSpectrum {
 public:
  explicit DenseSpectrum(const HamiltonianMatrix& h);

  const JointBasis& basis() const { return basis_; }
  JointState apply(const JointState& psi, double t) const;

 private:
  JointBasis basis_;
  Eigen::VectorXd eval_;
  Eigen::MatrixXcd evec_;
};

JointState evolve_dense_oracle(const HamiltonianMatrix& h, const JointState& initial, double t);

/// Closed-form amplitudes A_n, B_n, C_n, D_n of the one-mode model (with the
/// corrections listed in DISCREPANCIES.md). Couplings to Fock states beyond the
/// cutoff are dropped so the result lives in the same truncated space as the
/// matrix engines.
JointState evolve_closed_form_one_mode(const AtomicState& atomic, const CoherentSpec& field,
                                       FockCutoff cutoff, double t);

/// Two-mode counterpart of evolve_closed_form_one_mode.
JointState evolve_closed_form_two_mode(const AtomicState& atomic, const CoherentSpec& field1,
                                       const CoherentSpec& field2, FockCutoff cutoff1,
                                       FockCutoff cutoff2, double t);

// ---------------------------------------------------------------------------
// Engines bound to an initial condition

/// Product initial condition: atomic state times one or two coherent modes.
struct InitialCondition {
  ModelKind kind;
  AtomicState atomic;
  CoherentSpec field1;
  CoherentSpec field2{0.0};
  FockCutoff cutoff1;
  FockCutoff cutoff2{0};

  static InitialCondition one_mode(const AtomicState& atomic, const CoherentSpec& field,
                                   FockCutoff cutoff);
  static InitialCondition two_mode(const AtomicState& atomic, const CoherentSpec& field1,
                                   const CoherentSpec& field2, FockCutoff cutoff1,
                                   FockCutoff cutoff2);

  JointBasis basis() const;
  JointState build() const;
};

class EvolutionEngine {
 public:
  virtual ~EvolutionEngine() = default;

  virtual EngineKind kind() const = 0;
  virtual const JointState& initial() const = 0;
  /// Safe to call concurrently.
  virtual JointState state_at(double t) const = 0;
};

class BlockExactEngine final : public EvolutionEngine {
 public:
  BlockExactEngine(const HamiltonianMatrix& h, JointState initial);

  EngineKind kind() const override { return EngineKind::BlockExact; }
  const JointState& initial() const override { return initial_; }
  JointState state_at(double t) const override;

 private:
  BlockSpectrum spectrum_;
  JointState initial_;
  std::vector<std::array<cplx, 4>> projections_;  // eigenbasis coefficients per block
};

class DenseOracleEngine final : public EvolutionEngine {
 public:
  DenseOracleEngine(const HamiltonianMatrix& h, JointState initial);

  EngineKind kind() const override { return EngineKind::DenseOracle; }
  const JointState& initial() const override { return initial_; }
  JointState state_at(double t) const override { return spectrum_.apply(initial_, t); }

 private:
  DenseSpectrum spectrum_;
  JointState initial_;
};

class ClosedFormEngine final : public EvolutionEngine {
 public:
  explicit ClosedFormEngine(const InitialCondition& ic);

  EngineKind kind() const override { return EngineKind::ClosedForm; }
  const JointState& initial() const override { return initial_; }
  JointState state_at(double t) const override;

 private:
  InitialCondition ic_;
  JointState initial_;
};

std::unique_ptr<EvolutionEngine> make_engine(EngineKind kind, const InitialCondition& ic);

}  // namespace idjc
