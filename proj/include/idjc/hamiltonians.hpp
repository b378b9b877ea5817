#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "idjc/fock_core.hpp"

namespace idjc {

/// One basis vector |label; n1 (, n2)>.
struct BasisState {
  AtomLabel label;
  int n1;
  int n2 = 0;

  bool operator==(const BasisState&) const = default;
};

/// Invariant subspace {|++,m>, |+-,m+1>, |-+,m+1>, |--,m+2>} of the interaction,
/// with every Fock index of the two-mode model shifted together. Members outside
/// the cutoffs are dropped, so blocks at the edges have 1-3 members.
struct ExcitationBlock {
  ModelKind kind;
  std::array<int, 2> anchor;         // Fock indices of the |++> member
  std::vector<BasisState> members;   // subset of (PP, PM, MP, MM), in that order
  Eigen::MatrixXd coupling;          // H restricted to the members (real symmetric)
};

/// Photon factor <n+1| sqrt(a^+ a) a^+ |n> of the emission step, i.e. n+1 for
/// one mode and (n1+1)(n2+1) for the nondegenerate two-photon model.
double emission_factor(ModelKind kind, int n1, int n2 = 0);

/// Conserved excitation count: photons plus atomic excitations (each excitation
/// worth one photon in the one-mode model, two in the two-mode model).
int excitation_number(ModelKind kind, const BasisState& s);

/// Partition of the truncated joint basis into excitation blocks.
std::vector<ExcitationBlock> enumerate_blocks(const JointBasis& basis);

/// Interaction Hamiltonian (hbar = g = 1) stored block by block.
class HamiltonianMatrix {
 public:
  HamiltonianMatrix(JointBasis basis, std::vector<ExcitationBlock> blocks);

  ModelKind kind() const { return basis_.kind(); }
  const JointBasis& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.dimension(); }
  const std::vector<ExcitationBlock>& blocks() const { return blocks_; }

  /// <row|H|col>; zero between different blocks or outside the cutoffs.
  double element(const BasisState& row, const BasisState& col) const;

  Eigen::MatrixXcd dense() const;

 private:
  JointBasis basis_;
  std::vector<ExcitationBlock> blocks_;
  std::vector<std::size_t> block_of_;     // basis index -> block
  std::vector<std::size_t> position_in_;  // basis index -> member position
};

/// sum_i ( sqrt(a^+a) a^+ s_i^- + s_i^+ a sqrt(a^+a) ); requires nmax >= 2.
HamiltonianMatrix build_one_mode(FockCutoff cutoff);

/// sum_i ( sqrt(a1^+a1) a1^+ sqrt(a2^+a2) a2^+ s_i^- + h.c. ); requires nmax >= 2.
HamiltonianMatrix build_two_mode(FockCutoff cutoff1, FockCutoff cutoff2);

HamiltonianMatrix build_hamiltonian(const JointBasis& basis);

/// Semiclassical 4x4 Hamiltonian over (|++>, |+->, |-+>, |-->) with each field
/// operator replaced by its coherent amplitude v = sqrt(nbar) e^{i phi}.
Eigen::Matrix4cd build_semiclassical(cplx v);
Eigen::Matrix4cd build_semiclassical(cplx v1, cplx v2);

}  // namespace idjc
