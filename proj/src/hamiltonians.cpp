#include "idjc/hamiltonians.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace idjc {

double emission_factor(ModelKind kind, int n1, int n2) {
  if (kind == ModelKind::OneMode) return n1 + 1.0;
  return (n1 + 1.0) * (n2 + 1.0);
}

int excitation_number(ModelKind kind, const BasisState& s) {
  const int exc = excited_atoms(s.label);
  if (kind == ModelKind::OneMode) return s.n1 + exc;
  return s.n1 + s.n2 + 2 * exc;
}

namespace {

// Fock shift of each label relative to the block anchor.
constexpr std::array<int, 4> kShift{0, 1, 1, 2};

ExcitationBlock make_block(const JointBasis& basis, int m1, int m2) {
  const ModelKind kind = basis.kind();
  ExcitationBlock b{kind, {m1, m2}, {}, {}};
  for (auto l : kAtomLabels) {
    const int s = kShift[to_index(l)];
    const int n1 = m1 + s;
    const int n2 = kind == ModelKind::OneMode ? 0 : m2 + s;
    if (basis.contains(n1, n2)) b.members.push_back({l, n1, n2});
  }
  const auto k = static_cast<Eigen::Index>(b.members.size());
  b.coupling = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& from = b.members[i];
      const auto& to = b.members[j];
      // Emission: one atom de-excites, photon indices step up by one.
      if (excited_atoms(from.label) == excited_atoms(to.label) + 1 &&
          kShift[to_index(to.label)] == kShift[to_index(from.label)] + 1) {
        // |++> couples to both singly excited states; |+->,|-+> each couple to |-->.
        const double v = emission_factor(kind, from.n1, from.n2);
        b.coupling(i, j) = v;
        b.coupling(j, i) = v;
      }
    }
  }
  return b;
}

}  // namespace

std::vector<ExcitationBlock> enumerate_blocks(const JointBasis& basis) {
  std::vector<ExcitationBlock> blocks;
  if (basis.kind() == ModelKind::OneMode) {
    for (int m = -2; m <= basis.nmax(0); ++m) {
      auto b = make_block(basis, m, 0);
      if (!b.members.empty()) blocks.push_back(std::move(b));
    }
  } else {
    for (int m1 = -2; m1 <= basis.nmax(0); ++m1) {
      for (int m2 = -2; m2 <= basis.nmax(1); ++m2) {
        auto b = make_block(basis, m1, m2);
        if (!b.members.empty()) blocks.push_back(std::move(b));
      }
    }
  }
  return blocks;
}

HamiltonianMatrix::HamiltonianMatrix(JointBasis basis, std::vector<ExcitationBlock> blocks)
    : basis_(basis), blocks_(std::move(blocks)) {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  block_of_.assign(basis_.dimension(), unset);
  position_in_.assign(basis_.dimension(), 0);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& members = blocks_[b].members;
    for (std::size_t p = 0; p < members.size(); ++p) {
      const auto idx = basis_.index(members[p].label, members[p].n1, members[p].n2);
      if (block_of_[idx] != unset) throw std::logic_error("basis state in two blocks");
      block_of_[idx] = b;
      position_in_[idx] = p;
    }
  }
  for (auto b : block_of_) {
    if (b == unset) throw std::logic_error("blocks do not cover the basis");
  }
}

double HamiltonianMatrix::element(const BasisState& row, const BasisState& col) const {
  if (!basis_.contains(row.n1, row.n2) || !basis_.contains(col.n1, col.n2)) return 0.0;
  const auto r = basis_.index(row.label, row.n1, row.n2);
  const auto c = basis_.index(col.label, col.n1, col.n2);
  if (block_of_[r] != block_of_[c]) return 0.0;
  return blocks_[block_of_[r]].coupling(static_cast<Eigen::Index>(position_in_[r]),
                                        static_cast<Eigen::Index>(position_in_[c]));
}

Eigen::MatrixXcd HamiltonianMatrix::dense() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& b : blocks_) {
    for (std::size_t i = 0; i < b.members.size(); ++i) {
      const auto& mi = b.members[i];
      const auto ri = static_cast<Eigen::Index>(basis_.index(mi.label, mi.n1, mi.n2));
      for (std::size_t j = 0; j < b.members.size(); ++j) {
        const auto& mj = b.members[j];
        const auto cj = static_cast<Eigen::Index>(basis_.index(mj.label, mj.n1, mj.n2));
        h(ri, cj) = b.coupling(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return h;
}

HamiltonianMatrix build_one_mode(FockCutoff cutoff) {
  if (cutoff.nmax < 2) throw std::invalid_argument("one-mode Hamiltonian needs nmax >= 2");
  JointBasis basis(cutoff);
  return HamiltonianMatrix(basis, enumerate_blocks(basis));
}

HamiltonianMatrix build_two_mode(FockCutoff cutoff1, FockCutoff cutoff2) {
  if (cutoff1.nmax < 2 || cutoff2.nmax < 2) {
    throw std::invalid_argument("two-mode Hamiltonian needs nmax >= 2 in both modes");
  }
  JointBasis basis(cutoff1, cutoff2);
  return HamiltonianMatrix(basis, enumerate_blocks(basis));
}

HamiltonianMatrix build_hamiltonian(const JointBasis& basis) {
  if (basis.kind() == ModelKind::OneMode) return build_one_mode({basis.nmax(0)});
  return build_two_mode({basis.nmax(0)}, {basis.nmax(1)});
}

namespace {

// raise * (s1^+ + s2^+) + conj(raise) * (s1^- + s2^-)
Eigen::Matrix4cd collective_drive(cplx raise) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  const auto pp = 0, pm = 1, mp = 2, mm = 3;
  // s2^+ : |+-> -> |++>, |--> -> |-+>;  s1^+ : |-+> -> |++>, |--> -> |+->
  h(pp, pm) = raise;
  h(pp, mp) = raise;
  h(pm, mm) = raise;
  h(mp, mm) = raise;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) h(i, j) = std::conj(h(j, i));
  return h;
}

}  // namespace

Eigen::Matrix4cd build_semiclassical(cplx v) { return collective_drive(std::abs(v) * v); }

Eigen::Matrix4cd build_semiclassical(cplx v1, cplx v2) {
  return collective_drive(v1 * std::abs(v1) * v2 * std::abs(v2));
}

}  // namespace idjc
