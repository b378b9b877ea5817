#include "idjc/evolution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace idjc {

// ---------------------------------------------------------------------------
// Rabi frequencies

double rabi_one_mode(int n) {
  if (n < 0) throw std::invalid_argument("Rabi frequency index must be non-negative");
  return std::sqrt((2.0 * n * (n + 3.0) + 5.0) / 2.0);
}

namespace {

double omega1_unchecked(double n1, double n2) {
  const double a = (n1 + 1.0) * (n2 + 1.0);
  const double b = (n1 + 2.0) * (n2 + 2.0);
  return std::sqrt(2.0 * (a * a + b * b));
}

void require_non_negative(int n1, int n2, const char* what) {
  if (n1 < 0 || n2 < 0) {
    std::ostringstream os;
    os << what << " undefined at (" << n1 << ", " << n2 << "): shifted index is negative";
    throw std::domain_error(os.str());
  }
}

}  // namespace

double rabi_two_mode_omega1(int n1, int n2) {
  require_non_negative(n1, n2, "Omega1");
  return omega1_unchecked(n1, n2);
}

double rabi_two_mode_omega2(int n1, int n2) {
  require_non_negative(n1 - 2, n2 - 2, "Omega2");
  return omega1_unchecked(n1 - 2, n2 - 2);
}

double rabi_two_mode_omega3(int n1, int n2) {
  require_non_negative(n1 - 1, n2 - 1, "Omega3");
  return omega1_unchecked(n1 - 1, n2 - 1);
}

RabiTriple rabi_two_mode(int n1, int n2) {
  RabiTriple r{rabi_two_mode_omega1(n1, n2), std::nullopt, std::nullopt};
  if (n1 >= 2 && n2 >= 2) r.omega2 = rabi_two_mode_omega2(n1, n2);
  if (n1 >= 1 && n2 >= 1) r.omega3 = rabi_two_mode_omega3(n1, n2);
  return r;
}

double x_factor(int n1, int n2) {
  return std::sqrt(double(n1) * n2 * (n1 + 1.0) * (n2 + 1.0));
}

double omega1_x_evaluated(int n1, int n2) {
  // X2(k1,k2) = X1(k1+1, k2+1)
  return std::sqrt(2.0 * (x_factor(n1 + 1, n2 + 1) + x_factor(n1 + 3, n2 + 3)));
}

double omega1_x_product(int n1, int n2) {
  return std::sqrt(2.0 * (x_factor(n1, n2) * (n1 + 1.0) * (n2 + 1.0) +
                          x_factor(n1 + 1, n2 + 1) * (n1 + 2.0) * (n2 + 2.0)));
}

// ---------------------------------------------------------------------------

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::ClosedForm: return "closed-form";
    case EngineKind::BlockExact: return "block";
    case EngineKind::DenseOracle: return "dense";
  }
  return "?";
}

EngineKind parse_engine(std::string_view name) {
  if (name == "closed-form" || name == "closed") return EngineKind::ClosedForm;
  if (name == "block" || name == "block-exact") return EngineKind::BlockExact;
  if (name == "dense" || name == "dense-oracle") return EngineKind::DenseOracle;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Block-exact propagation

BlockSpectrum::BlockSpectrum(const HamiltonianMatrix& h) : basis_(h.basis()) {
  blocks_.reserve(h.blocks().size());
  for (const auto& eb : h.blocks()) {
    Block b{};
    b.size = static_cast<std::uint8_t>(eb.members.size());
    for (std::size_t i = 0; i < b.size; ++i) {
      const auto& m = eb.members[i];
      b.index[i] = basis_.index(m.label, m.n1, m.n2);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eb.coupling);
    if (es.info() != Eigen::Success) throw std::runtime_error("block eigensolver failed");
    for (int k = 0; k < b.size; ++k) {
      b.eval[k] = es.eigenvalues()(k);
      for (int i = 0; i < b.size; ++i) b.evec[4 * k + i] = es.eigenvectors()(i, k);
    }
    blocks_.push_back(b);
  }
}

std::vector<double> BlockSpectrum::eigenvalues(std::size_t b) const {
  const auto& blk = blocks_.at(b);
  return {blk.eval.begin(), blk.eval.begin() + blk.size};
}

JointState BlockSpectrum::apply(const JointState& psi, double t) const {
  if (!(psi.basis() == basis_)) throw std::invalid_argument("state basis does not match");
  JointState out(basis_);
  const auto in = psi.amplitudes();
  auto dst = out.amplitudes();
  for (const auto& b : blocks_) {
    std::array<cplx, 4> c{};
    for (int k = 0; k < b.size; ++k) {
      cplx s{};
      for (int i = 0; i < b.size; ++i) s += b.evec[4 * k + i] * in[b.index[i]];
      c[k] = s * std::polar(1.0, -b.eval[k] * t);
    }
    for (int i = 0; i < b.size; ++i) {
      cplx s{};
      for (int k = 0; k < b.size; ++k) s += b.evec[4 * k + i] * c[k];
      dst[b.index[i]] = s;
    }
  }
  return out;
}

JointState evolve_block_exact(const BlockSpectrum& spectrum, const JointState& initial,
                              double t) {
  if (t == 0.0) return initial;
  return spectrum.apply(initial, t);
}

JointState evolve_block_exact(const HamiltonianMatrix& h, const JointState& initial, double t) {
  return evolve_block_exact(BlockSpectrum(h), initial, t);
}

// ---------------------------------------------------------------------------
// Dense oracle

DenseSpectrum::DenseSpectrum(const HamiltonianMatrix& h) : basis_(h.basis()) {
  if (h.dimension() > kDenseOracleMaxDimension) {
    std::ostringstream os;
    os << "dense oracle refuses dimension " << h.dimension() << " (limit "
       << kDenseOracleMaxDimension << ")";
    throw std::length_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
  if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  eval_ = es.eigenvalues();
  evec_ = es.eigenvectors();
}

JointState DenseSpectrum::apply(const JointState& psi, double t) const {
  if (!(psi.basis() == basis_)) throw std::invalid_argument("state basis does not match");
  const auto in = psi.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> v(in.data(), static_cast<Eigen::Index>(in.size()));
  Eigen::VectorXcd c = evec_.adjoint() * v;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -eval_(k) * t);
  const Eigen::VectorXcd r = evec_ * c;
  return JointState(basis_, std::vector<cplx>(r.data(), r.data() + r.size()));
}

JointState evolve_dense_oracle(const HamiltonianMatrix& h, const JointState& initial, double t) {
  return DenseSpectrum(h).apply(initial, t);
}

// ---------------------------------------------------------------------------
// Closed form

namespace {

const cplx kI{0.0, 1.0};

/// Analytic propagator of one excitation block in the (|++>, |+->, |-+>, |-->)
/// order, for couplings a (|++> to each singly excited state) and b (each singly
/// excited state to |-->) and eigenfrequency w = sqrt(2(a^2+b^2)).
struct BlockAmplitudes {
  cplx pp_pp, pp_single, pp_mm;  // |++> <- |++>, |+-> or |-+>, |-->
  cplx single_same, single_swap;  // |+-> <- |+->, |+-> <- |-+>
  cplx single_mm;                 // |+-> <- |--> (and |--> <- |+->)
  cplx mm_mm;

  BlockAmplitudes(double a, double b, double w, double t) {
    const double c = std::cos(w * t);
    const double s = w > 0.0 ? std::sin(w * t) / w : 0.0;
    const double r2 = a * a + b * b;
    if (r2 > 0.0) {
      pp_pp = (b * b + a * a * c) / r2;
      pp_mm = a * b * (c - 1.0) / r2;
      mm_mm = (a * a + b * b * c) / r2;
    } else {
      pp_pp = 1.0;
      pp_mm = 0.0;
      mm_mm = 1.0;
    }
    pp_single = -kI * a * s;
    single_mm = -kI * b * s;
    single_same = 0.5 * (1.0 + c);
    single_swap = 0.5 * (c - 1.0);
  }
};

/// Couplings of the one-mode block anchored at m; a coupling vanishes when
/// either partner lies outside [0, nmax].
BlockAmplitudes one_mode_block(int m, int nmax, double t) {
  auto in = [nmax](int n) { return n >= 0 && n <= nmax; };
  const double a = in(m) && in(m + 1) ? m + 1.0 : 0.0;
  const double b = in(m + 1) && in(m + 2) ? m + 2.0 : 0.0;
  // interior blocks: eigenfrequency 2 Omega_m
  const double w = in(m) && in(m + 2) ? 2.0 * rabi_one_mode(m) : std::sqrt(2.0 * (a * a + b * b));
  return {a, b, w, t};
}

BlockAmplitudes two_mode_block(int m1, int m2, int nmax1, int nmax2, double t) {
  auto in = [=](int k1, int k2) { return k1 >= 0 && k1 <= nmax1 && k2 >= 0 && k2 <= nmax2; };
  const bool pp = in(m1, m2), single = in(m1 + 1, m2 + 1), mm = in(m1 + 2, m2 + 2);
  const double a = pp && single ? (m1 + 1.0) * (m2 + 1.0) : 0.0;
  const double b = single && mm ? (m1 + 2.0) * (m2 + 2.0) : 0.0;
  const double w = pp && mm ? rabi_two_mode_omega1(m1, m2) : std::sqrt(2.0 * (a * a + b * b));
  return {a, b, w, t};
}

std::vector<cplx> normalized_field(const CoherentSpec& spec, FockCutoff cutoff) {
  auto f = coherent_amplitudes(spec, cutoff);
  double n2 = 0.0;
  for (auto x : f) n2 += std::norm(x);
  const double s = 1.0 / std::sqrt(n2);
  for (auto& x : f) x *= s;
  return f;
}

}  // namespace

JointState evolve_closed_form_one_mode(const AtomicState& atomic, const CoherentSpec& field,
                                       FockCutoff cutoff, double t) {
  const auto f = normalized_field(field, cutoff);
  const int nmax = cutoff.nmax;
  auto F = [&](int n) { return n >= 0 && n <= nmax ? f[n] : cplx{}; };
  const cplx al = atomic.alpha(), be = atomic.beta(), ga = atomic.gamma(), de = atomic.delta();

  JointState psi{JointBasis(cutoff)};
  for (int n = 0; n <= nmax; ++n) {
    const BlockAmplitudes u0 = one_mode_block(n, nmax, t);      // Omega_n
    const BlockAmplitudes u1 = one_mode_block(n - 1, nmax, t);  // Omega_{n-1}
    const BlockAmplitudes u2 = one_mode_block(n - 2, nmax, t);  // Omega_{n-2}

    psi.at(AtomLabel::PP, n) =
        u0.pp_pp * al * F(n) + u0.pp_single * (be + ga) * F(n + 1) + u0.pp_mm * de * F(n + 2);
    psi.at(AtomLabel::PM, n) = u1.pp_single * al * F(n - 1) + u1.single_same * be * F(n) +
                               u1.single_swap * ga * F(n) + u1.single_mm * de * F(n + 1);
    psi.at(AtomLabel::MP, n) = u1.pp_single * al * F(n - 1) + u1.single_swap * be * F(n) +
                               u1.single_same * ga * F(n) + u1.single_mm * de * F(n + 1);
    psi.at(AtomLabel::MM, n) =
        u2.pp_mm * al * F(n - 2) + u2.single_mm * (be + ga) * F(n - 1) + u2.mm_mm * de * F(n);
  }
  return psi;
}

JointState evolve_closed_form_two_mode(const AtomicState& atomic, const CoherentSpec& field1,
                                       const CoherentSpec& field2, FockCutoff cutoff1,
                                       FockCutoff cutoff2, double t) {
  const auto f1 = normalized_field(field1, cutoff1);
  const auto f2 = normalized_field(field2, cutoff2);
  const int n1max = cutoff1.nmax, n2max = cutoff2.nmax;
  auto F = [&](int n1, int n2) {
    if (n1 < 0 || n1 > n1max || n2 < 0 || n2 > n2max) return cplx{};
    return f1[n1] * f2[n2];
  };
  const cplx al = atomic.alpha(), be = atomic.beta(), ga = atomic.gamma(), de = atomic.delta();

  JointState psi{JointBasis(cutoff1, cutoff2)};
  for (int n1 = 0; n1 <= n1max; ++n1) {
    for (int n2 = 0; n2 <= n2max; ++n2) {
      const auto u1 = two_mode_block(n1, n2, n1max, n2max, t);          // Omega1(n1,n2)
      const auto u3 = two_mode_block(n1 - 1, n2 - 1, n1max, n2max, t);  // Omega3(n1,n2)
      const auto u2 = two_mode_block(n1 - 2, n2 - 2, n1max, n2max, t);  // Omega2(n1,n2)

      psi.at(AtomLabel::PP, n1, n2) = u1.pp_pp * al * F(n1, n2) +
                                      u1.pp_single * (be + ga) * F(n1 + 1, n2 + 1) +
                                      u1.pp_mm * de * F(n1 + 2, n2 + 2);
      psi.at(AtomLabel::PM, n1, n2) = u3.pp_single * al * F(n1 - 1, n2 - 1) +
                                      u3.single_same * be * F(n1, n2) +
                                      u3.single_swap * ga * F(n1, n2) +
                                      u3.single_mm * de * F(n1 + 1, n2 + 1);
      psi.at(AtomLabel::MP, n1, n2) = u3.pp_single * al * F(n1 - 1, n2 - 1) +
                                      u3.single_swap * be * F(n1, n2) +
                                      u3.single_same * ga * F(n1, n2) +
                                      u3.single_mm * de * F(n1 + 1, n2 + 1);
      psi.at(AtomLabel::MM, n1, n2) = u2.pp_mm * al * F(n1 - 2, n2 - 2) +
                                      u2.single_mm * (be + ga) * F(n1 - 1, n2 - 1) +
                                      u2.mm_mm * de * F(n1, n2);
    }
  }
  return psi;
}

// ---------------------------------------------------------------------------
// Engines

InitialCondition InitialCondition::one_mode(const AtomicState& atomic, const CoherentSpec& field,
                                            FockCutoff cutoff) {
  return {ModelKind::OneMode, atomic, field, CoherentSpec(0.0), cutoff, FockCutoff{0}};
}

InitialCondition InitialCondition::two_mode(const AtomicState& atomic,
                                            const CoherentSpec& field1,
                                            const CoherentSpec& field2, FockCutoff cutoff1,
                                            FockCutoff cutoff2) {
  return {ModelKind::TwoMode, atomic, field1, field2, cutoff1, cutoff2};
}

JointBasis InitialCondition::basis() const {
  if (kind == ModelKind::OneMode) return JointBasis(cutoff1);
  return JointBasis(cutoff1, cutoff2);
}

JointState InitialCondition::build() const {
  if (kind == ModelKind::OneMode) return build_initial_state(atomic, field1, cutoff1);
  return build_initial_state(atomic, field1, field2, cutoff1, cutoff2);
}

BlockExactEngine::BlockExactEngine(const HamiltonianMatrix& h, JointState initial)
    : spectrum_(h), initial_(std::move(initial)) {
  if (!(initial_.basis() == spectrum_.basis())) {
    throw std::invalid_argument("initial state basis does not match the Hamiltonian");
  }
  const auto in = initial_.amplitudes();
  projections_.reserve(spectrum_.blocks_.size());
  for (const auto& b : spectrum_.blocks_) {
    std::array<cplx, 4> c{};
    for (int k = 0; k < b.size; ++k) {
      for (int i = 0; i < b.size; ++i) c[k] += b.evec[4 * k + i] * in[b.index[i]];
    }
    projections_.push_back(c);
  }
}

JointState BlockExactEngine::state_at(double t) const {
  if (t == 0.0) return initial_;
  JointState out(initial_.basis());
  auto dst = out.amplitudes();
  for (std::size_t bi = 0; bi < spectrum_.blocks_.size(); ++bi) {
    const auto& b = spectrum_.blocks_[bi];
    const auto& c = projections_[bi];
    std::array<cplx, 4> ct{};
    for (int k = 0; k < b.size; ++k) ct[k] = c[k] * std::polar(1.0, -b.eval[k] * t);
    for (int i = 0; i < b.size; ++i) {
      cplx s{};
      for (int k = 0; k < b.size; ++k) s += b.evec[4 * k + i] * ct[k];
      dst[b.index[i]] = s;
    }
  }
  return out;
}

DenseOracleEngine::DenseOracleEngine(const HamiltonianMatrix& h, JointState initial)
    : spectrum_(h), initial_(std::move(initial)) {
  if (!(initial_.basis() == spectrum_.basis())) {
    throw std::invalid_argument("initial state basis does not match the Hamiltonian");
  }
}

ClosedFormEngine::ClosedFormEngine(const InitialCondition& ic) : ic_(ic), initial_(ic.build()) {}

JointState ClosedFormEngine::state_at(double t) const {
  if (ic_.kind == ModelKind::OneMode) {
    return evolve_closed_form_one_mode(ic_.atomic, ic_.field1, ic_.cutoff1, t);
  }
  return evolve_closed_form_two_mode(ic_.atomic, ic_.field1, ic_.field2, ic_.cutoff1,
                                     ic_.cutoff2, t);
}

std::unique_ptr<EvolutionEngine> make_engine(EngineKind kind, const InitialCondition& ic) {
  switch (kind) {
    case EngineKind::ClosedForm: return std::make_unique<ClosedFormEngine>(ic);
    case EngineKind::BlockExact:
      return std::make_unique<BlockExactEngine>(build_hamiltonian(ic.basis()), ic.build());
    case EngineKind::DenseOracle:
      return std::make_unique<DenseOracleEngine>(build_hamiltonian(ic.basis()), ic.build());
  }
  throw std::invalid_argument("unknown engine kind");
}

}  // namespace idjc
