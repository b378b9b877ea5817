#include "idjc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <thread>

namespace idjc {

ReducedAtomicDensity reduce_atomic(const JointState& psi) {
  std::array<std::span<const cplx>, 4> slice;
  for (auto l : kAtomLabels) slice[to_index(l)] = psi.label_slice(l);
  const std::size_t m = psi.basis().fock_size();

  ReducedAtomicDensity out{Eigen::Matrix4cd::Zero()};
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      cplx s{};
      const auto& x = slice[a];
      const auto& y = slice[b];
      for (std::size_t k = 0; k < m; ++k) s += x[k] * std::conj(y[k]);
      out.rho(a, b) = s;
      out.rho(b, a) = std::conj(s);
    }
  }
  return out;
}

double purity(const ReducedAtomicDensity& rho) { return rho.rho.cwiseAbs2().sum(); }

double raw_linear_entropy(const ReducedAtomicDensity& rho) { return 1.0 - purity(rho); }

double linear_entropy(const ReducedAtomicDensity& rho) {
  const double s = raw_linear_entropy(rho);
  if (s < -kEntropyHealthTolerance || s > kMaxLinearEntropy + kEntropyHealthTolerance) {
    std::cerr << "warning: linear entropy " << s << " outside [0, 3/4]\n";
  }
  return std::clamp(s, 0.0, kMaxLinearEntropy);
}

double prob_both_excited(const JointState& psi) {
  double w = 0.0;
  for (auto a : psi.label_slice(AtomLabel::PP)) w += std::norm(a);
  return w;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t points) {
  if (points == 0) throw std::invalid_argument("grid needs at least one point");
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw std::invalid_argument("grid bounds must be finite");
  if (points == 1) return {t0};
  if (!(t1 > t0)) throw std::invalid_argument("grid end must exceed grid start");
  std::vector<double> g(points);
  const double h = (t1 - t0) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = t0 + h * static_cast<double>(i);
  g.back() = t1;
  return g;
}

EntropySeries entropy_series(const EvolutionEngine& engine, std::span<const double> grid,
                             unsigned threads) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("time grid must be strictly increasing");
  }
  const std::size_t n = grid.size();
  EntropySeries out;
  out.gt.assign(grid.begin(), grid.end());
  out.entropy.resize(n);
  out.w_pp.resize(n);
  out.norm.resize(n);
  out.purity.resize(n);
  std::vector<char> unhealthy(n, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const JointState psi = engine.state_at(grid[i]);
      const auto rho = reduce_atomic(psi);
      const double raw = raw_linear_entropy(rho);
      unhealthy[i] = raw < -kEntropyHealthTolerance ||
                     raw > kMaxLinearEntropy + kEntropyHealthTolerance;
      out.entropy[i] = std::clamp(raw, 0.0, kMaxLinearEntropy);
      out.purity[i] = 1.0 - raw;
      out.w_pp[i] = prob_both_excited(psi);
      out.norm[i] = psi.norm();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t b = w * chunk, e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (unhealthy[i]) {
      ++out.health_warnings;
      std::cerr << "warning: linear entropy " << 1.0 - out.purity[i] << " at gt = " << grid[i]
                << " outside [0, 3/4]\n";
    }
  }
  return out;
}

}  // namespace idjc
