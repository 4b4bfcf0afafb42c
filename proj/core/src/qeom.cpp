// Copyright 2026 The chiralq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chiralq/qeom.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "chiralq/error.hpp"
#include "chiralq/units.hpp"

namespace chiralq {

namespace {

std::size_t choose2(std::size_t n) { return n * (n - 1) / 2; }

template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

// Half-applied vectors for one excitation G.
struct Halves {
  Statevector e, d;    // G psi, G+ psi
  Statevector he, hd;  // H G psi, H G+ psi
  Statevector ephi, dphi;  // G H psi, G+ H psi
};

double re(const Statevector& a, const Statevector& b) {
  return inner(a, b).real();
}

void check_inputs(const QubitOperator& h, const ExcitationManifold& m,
                  const Statevector& psi0) {
  if (h.n_qubits() != psi0.n_qubits() || m.n_qubits() != psi0.n_qubits())
    throw DimensionError(fmt::format(
        "qEOM inputs disagree: H on {} qubits, manifold on {}, state on {}",
        h.n_qubits(), m.n_qubits(), psi0.n_qubits()));
}

void check_finite(const QeomMatrices& mats) {
  const Eigen::MatrixXd* blocks[] = {&mats.A, &mats.B, &mats.S, &mats.T};
  const char* names = "ABST";
  for (int b = 0; b < 4; ++b) {
    const auto& m = *blocks[b];
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (!std::isfinite(m(i, j)))
          throw ComputeError(fmt::format("non-finite {}({}, {}) in qEOM assembly",
                                         names[b], i, j));
  }
}

}  // namespace

std::string ExcitationOperator::label() const {
  std::string s;
  for (auto v : vir) s += fmt::format("{}^ ", v);
  for (auto it = occ.rbegin(); it != occ.rend(); ++it) s += fmt::format("{} ", *it);
  s.pop_back();
  return s;
}

ExcitationOperator make_excitation(std::vector<std::size_t> occ,
                                   std::vector<std::size_t> vir,
                                   std::size_t n_modes) {
  ExcitationOperator op;
  op.kind = occ.size() == 1 ? ExcitationKind::Single : ExcitationKind::Double;
  std::vector<Ladder> factors;
  for (auto v : vir) factors.push_back(create(v));
  for (auto it = occ.rbegin(); it != occ.rend(); ++it)
    factors.push_back(annihilate(*it));
  op.fermionic = FermionOperator(1.0, std::move(factors));
  op.qubit_form = jordan_wigner(op.fermionic, n_modes);
  op.occ = std::move(occ);
  op.vir = std::move(vir);
  return op;
}

std::size_t manifold_size(std::size_t n_occ, std::size_t n_vir) {
  return 2 * n_occ * n_vir + 2 * choose2(n_occ) * choose2(n_vir) +
         n_occ * n_occ * n_vir * n_vir;
}

ExcitationManifold generate_manifold(std::size_t n_occ, std::size_t n_vir) {
  if (n_occ == 0 || n_vir == 0)
    throw ConfigError("excitation manifold needs occupied and virtual orbitals");
  const std::size_t no = n_occ + n_vir;
  const std::size_t n_modes = 2 * no;
  ExcitationManifold m;
  m.n_occ_spatial = n_occ;
  m.n_vir_spatial = n_vir;
  m.operators.reserve(manifold_size(n_occ, n_vir));

  for (std::size_t spin = 0; spin < 2; ++spin) {
    const std::size_t off = spin * no;
    for (std::size_t i = 0; i < n_occ; ++i)
      for (std::size_t a = n_occ; a < no; ++a)
        m.operators.push_back(make_excitation({i + off}, {a + off}, n_modes));
  }
  for (std::size_t spin = 0; spin < 2; ++spin) {
    const std::size_t off = spin * no;
    for (std::size_t i = 0; i < n_occ; ++i)
      for (std::size_t j = i + 1; j < n_occ; ++j)
        for (std::size_t a = n_occ; a < no; ++a)
          for (std::size_t b = a + 1; b < no; ++b)
            m.operators.push_back(
                make_excitation({i + off, j + off}, {a + off, b + off}, n_modes));
  }
  for (std::size_t i = 0; i < n_occ; ++i)
    for (std::size_t j = 0; j < n_occ; ++j)
      for (std::size_t a = n_occ; a < no; ++a)
        for (std::size_t b = n_occ; b < no; ++b)
          m.operators.push_back(
              make_excitation({i, j + no}, {a, b + no}, n_modes));
  return m;
}

QeomMatrices assemble_matrices(const QubitOperator& hamiltonian,
                               const ExcitationManifold& manifold,
                               const Statevector& psi0, std::size_t workers) {
  check_inputs(hamiltonian, manifold, psi0);
  const std::size_t n = manifold.size();
  const Statevector phi = apply_operator(hamiltonian, psi0);

  std::vector<Halves> h(n);
  parallel_for(n, workers, [&](std::size_t k) {
    const QubitOperator& g = manifold.operators[k].qubit_form;
    const QubitOperator gd = g.adjoint();
    Halves& x = h[k];
    x.e = apply_operator(g, psi0);
    x.d = apply_operator(gd, psi0);
    x.he = apply_operator(hamiltonian, x.e);
    x.hd = apply_operator(hamiltonian, x.d);
    x.ephi = apply_operator(g, phi);
    x.dphi = apply_operator(gd, phi);
  });

  QeomMatrices mats;
  const auto nn = static_cast<Eigen::Index>(n);
  mats.A.resize(nn, nn);
  mats.B.resize(nn, nn);
  mats.S.resize(nn, nn);
  mats.T.resize(nn, nn);
  parallel_for(n, workers, [&](std::size_t mu) {
    const Halves& p = h[mu];
    for (std::size_t nu = 0; nu < n; ++nu) {
      const Halves& q = h[nu];
      const auto i = static_cast<Eigen::Index>(mu);
      const auto j = static_cast<Eigen::Index>(nu);
      mats.A(i, j) = re(p.e, q.he) + re(q.d, p.hd) -
                     0.5 * (re(p.ephi, q.e) + re(q.d, p.dphi) +
                            re(p.e, q.ephi) + re(q.dphi, p.d));
      mats.B(i, j) = -(re(p.e, q.hd) + re(q.e, p.hd) -
                       0.5 * (re(p.ephi, q.d) + re(q.e, p.dphi) +
                              re(p.e, q.dphi) + re(q.ephi, p.d)));
      mats.S(i, j) = re(p.e, q.e) - re(q.d, p.d);
      mats.T(i, j) = -(re(p.e, q.d) - re(q.e, p.d));
    }
  });
  check_finite(mats);
  return mats;
}

QeomMatrices assemble_matrices_symbolic(const QubitOperator& hamiltonian,
                                        const ExcitationManifold& manifold,
                                        const Statevector& psi0) {
  check_inputs(hamiltonian, manifold, psi0);
  const std::size_t n = manifold.size();
  auto dc = [&](const QubitOperator& x, const QubitOperator& y) {
    QubitOperator t = commutator(commutator(x, hamiltonian), y);
    t += commutator(x, commutator(hamiltonian, y));
    t *= 0.5;
    return expectation_complex(t, psi0).real();
  };
  auto ev = [&](const QubitOperator& op) {
    return expectation_complex(op, psi0).real();
  };
  QeomMatrices mats;
  const auto nn = static_cast<Eigen::Index>(n);
  mats.A.resize(nn, nn);
  mats.B.resize(nn, nn);
  mats.S.resize(nn, nn);
  mats.T.resize(nn, nn);
  for (std::size_t mu = 0; mu < n; ++mu) {
    const QubitOperator gmd = manifold.operators[mu].qubit_form.adjoint();
    for (std::size_t nu = 0; nu < n; ++nu) {
      const QubitOperator& gn = manifold.operators[nu].qubit_form;
      const QubitOperator gnd = gn.adjoint();
      const auto i = static_cast<Eigen::Index>(mu);
      const auto j = static_cast<Eigen::Index>(nu);
      mats.A(i, j) = dc(gmd, gn);
      mats.B(i, j) = -dc(gmd, gnd);
      mats.S(i, j) = ev(commutator(gmd, gn));
      mats.T(i, j) = -ev(commutator(gmd, gnd));
    }
  }
  check_finite(mats);
  return mats;
}

ExcitationManifold truncate_manifold(const ExcitationManifold& manifold,
                                     const QubitOperator& hamiltonian,
                                     const Statevector& psi0, std::size_t keep) {
  if (keep == 0) throw ConfigError("truncation must keep at least one operator");
  if (keep >= manifold.size()) return manifold;
  check_inputs(hamiltonian, manifold, psi0);

  const Statevector phi = apply_operator(hamiltonian, psi0);
  const std::size_t n = manifold.size();
  std::vector<double> score(n);
  for (std::size_t k = 0; k < n; ++k) {
    const QubitOperator& g = manifold.operators[k].qubit_form;
    const QubitOperator gd = g.adjoint();
    const Statevector e = apply_operator(g, psi0);
    const Statevector d = apply_operator(gd, psi0);
    const Statevector ephi = apply_operator(g, phi);
    const Statevector dphi = apply_operator(gd, phi);
    const double a = re(e, apply_operator(hamiltonian, e)) +
                     re(d, apply_operator(hamiltonian, d)) -
                     0.5 * (re(ephi, e) + re(d, dphi) + re(e, ephi) + re(dphi, d));
    const double s = re(e, e) - re(d, d);
    score[k] = s > 1e-8 ? a / s : std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  order.resize(keep);
  std::sort(order.begin(), order.end());

  ExcitationManifold out;
  out.n_occ_spatial = manifold.n_occ_spatial;
  out.n_vir_spatial = manifold.n_vir_spatial;
  for (auto k : order) out.operators.push_back(manifold.operators[k]);
  return out;
}

namespace {

struct Reduced {
  Eigen::MatrixXd E;       // symmetric left matrix
  Eigen::MatrixXd M;       // metric
  Eigen::MatrixXd basis;   // U |s|^-1/2, columns span the kept metric space
  Eigen::VectorXd sign;    // sign(s)
  Eigen::MatrixXd K;
  std::size_t discarded = 0;
};

Reduced reduce(const QeomMatrices& mats, const SecularOptions& opt) {
  const Eigen::Index n = mats.A.rows();
  if (mats.A.cols() != n || mats.B.rows() != n || mats.B.cols() != n ||
      mats.S.rows() != n || mats.S.cols() != n || mats.T.rows() != n ||
      mats.T.cols() != n)
    throw DimensionError("qEOM blocks must be square and of equal size");
  if (n == 0) throw DimensionError("empty qEOM problem");

  Eigen::MatrixXd B = mats.B, T = mats.T;
  if (opt.tda) {
    B.setZero();
    T.setZero();
  }
  Reduced r;
  r.E.resize(2 * n, 2 * n);
  r.E << mats.A, B, B, mats.A;
  r.E = 0.5 * (r.E + r.E.transpose()).eval();
  r.M.resize(2 * n, 2 * n);
  r.M << mats.S, T, -T, -mats.S;
  r.M = 0.5 * (r.M + r.M.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.M);
  if (es.info() != Eigen::Success)
    throw ComputeError("metric eigendecomposition failed");
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < 2 * n; ++k)
    if (std::abs(es.eigenvalues()(k)) >= opt.metric_cutoff) kept.push_back(k);
  r.discarded = static_cast<std::size_t>(2 * n) - kept.size();
  if (kept.empty())
    throw ComputeError(fmt::format(
        "qEOM metric is numerically zero (discarded dimension {})", r.discarded));

  const auto nk = static_cast<Eigen::Index>(kept.size());
  r.basis.resize(2 * n, nk);
  r.sign.resize(nk);
  for (Eigen::Index c = 0; c < nk; ++c) {
    const double s = es.eigenvalues()(kept[c]);
    r.basis.col(c) = es.eigenvectors().col(kept[c]) / std::sqrt(std::abs(s));
    r.sign(c) = s > 0.0 ? 1.0 : -1.0;
  }
  r.K = r.basis.transpose() * r.E * r.basis;
  r.K = 0.5 * (r.K + r.K.transpose()).eval();
  return r;
}

QeomState make_state(double omega, const Eigen::VectorXd& v_full,
                     const Eigen::MatrixXd& metric) {
  const Eigen::Index n = v_full.size() / 2;
  const Eigen::VectorXd v = v_full / v_full.norm();
  QeomState s;
  s.omega = omega;
  s.c = v.head(n);
  s.d = v.tail(n);
  s.norm = v.dot(metric * v);
  return s;
}

}  // namespace

QeomSolution solve_secular(const QeomMatrices& mats,
                           const SecularOptions& opt) {
  const Reduced r = reduce(mats, opt);
  QeomSolution sol;
  sol.discarded_dimension = r.discarded;
  sol.tda = opt.tda;

  Eigen::LLT<Eigen::MatrixXd> llt(r.K);
  if (llt.info() == Eigen::Success) {
    // K y = omega sigma y  <=>  L^-1 sigma L^-T w = w / omega, y = L^-T w
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::MatrixXd Linv =
        L.triangularView<Eigen::Lower>().solve(
            Eigen::MatrixXd::Identity(L.rows(), L.cols()));
    Eigen::MatrixXd W = Linv * r.sign.asDiagonal() * Linv.transpose();
    W = 0.5 * (W + W.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W);
    if (es.info() != Eigen::Success)
      throw ComputeError("qEOM eigensolver failed");
    for (Eigen::Index k = 0; k < W.rows(); ++k) {
      const double lambda = es.eigenvalues()(k);
      if (!(lambda > 0.0)) continue;
      const double omega = 1.0 / lambda;
      if (!(omega > opt.omega_min) || !std::isfinite(omega)) continue;
      const Eigen::VectorXd y = Linv.transpose() * es.eigenvectors().col(k);
      QeomState s = make_state(omega, r.basis * y, r.M);
      if (s.norm > opt.norm_cutoff) sol.states.push_back(std::move(s));
    }
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(r.sign.asDiagonal() * r.K);
    if (es.info() != Eigen::Success)
      throw ComputeError("qEOM eigensolver failed");
    for (Eigen::Index k = 0; k < r.K.rows(); ++k) {
      const std::complex<double> w = es.eigenvalues()(k);
      if (std::abs(w.imag()) > 1e-9 * std::max(1.0, std::abs(w.real()))) continue;
      if (!(w.real() > opt.omega_min)) continue;
      const Eigen::VectorXd y = es.eigenvectors().col(k).real();
      if (y.norm() == 0.0) continue;
      QeomState s = make_state(w.real(), r.basis * y, r.M);
      if (s.norm > opt.norm_cutoff) sol.states.push_back(std::move(s));
    }
    std::sort(sol.states.begin(), sol.states.end(),
              [](const QeomState& a, const QeomState& b) { return a.omega < b.omega; });
    // Metric Gram-Schmidt within near-degenerate groups.
    for (std::size_t a = 0; a < sol.states.size();) {
      std::size_t b = a + 1;
      while (b < sol.states.size() &&
             sol.states[b].omega - sol.states[a].omega < 1e-8)
        ++b;
      std::vector<Eigen::VectorXd> done;
      for (std::size_t k = a; k < b; ++k) {
        Eigen::VectorXd v(2 * sol.states[k].c.size());
        v << sol.states[k].c, sol.states[k].d;
        for (const auto& u : done) v -= u.dot(r.M * v) / u.dot(r.M * u) * u;
        sol.states[k] = make_state(sol.states[k].omega, v, r.M);
        done.push_back(v);
      }
      a = b;
    }
    std::erase_if(sol.states,
                  [&](const QeomState& s) { return !(s.norm > opt.norm_cutoff); });
  }
  std::stable_sort(sol.states.begin(), sol.states.end(),
                   [](const QeomState& a, const QeomState& b) { return a.omega < b.omega; });
  return sol;
}

std::vector<double> block_spectrum(const QeomMatrices& mats,
                                   const SecularOptions& opt) {
  const Reduced r = reduce(mats, opt);
  Eigen::EigenSolver<Eigen::MatrixXd> es(r.sign.asDiagonal() * r.K, false);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    out.push_back(es.eigenvalues()(k).real());
  std::sort(out.begin(), out.end());
  return out;
}

void write_manifold_csv(std::ostream& out, const ExcitationManifold& manifold) {
  out << fmt::format("manifold,{},{}\n", manifold.n_occ_spatial,
                     manifold.n_vir_spatial);
  out << "index,kind,occ,vir\n";
  for (std::size_t k = 0; k < manifold.size(); ++k) {
    const auto& op = manifold.operators[k];
    out << fmt::format("{},{},{},{}\n", k,
                       op.kind == ExcitationKind::Single ? "single" : "double",
                       fmt::join(op.occ, " "), fmt::join(op.vir, " "));
  }
}

ExcitationManifold read_manifold_csv(std::istream& in) {
  auto indices = [](const std::string& cell, std::size_t lineno) {
    std::vector<std::size_t> out;
    std::stringstream ss(cell);
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(fmt::format("bad orbital index '{}'", tok), lineno);
      }
    }
    return out;
  };
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line.rfind("manifold,", 0) != 0)
    throw ParseError("missing manifold header", lineno);
  ExcitationManifold m;
  {
    std::stringstream ss(line.substr(9));
    std::string a, b;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    const auto no = indices(a, lineno), nv = indices(b, lineno);
    if (no.size() != 1 || nv.size() != 1 || no[0] == 0 || nv[0] == 0)
      throw ParseError("manifold header needs two positive counts", lineno);
    m.n_occ_spatial = no[0];
    m.n_vir_spatial = nv[0];
  }
  ++lineno;
  if (!std::getline(in, line) || line != "index,kind,occ,vir")
    throw ParseError("missing manifold column header", lineno);
  const std::size_t n_modes = m.n_qubits();
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw ParseError("expected 4 columns", lineno);
    auto occ = indices(cells[2], lineno);
    auto vir = indices(cells[3], lineno);
    const std::size_t rank = cells[1] == "single" ? 1 : cells[1] == "double" ? 2 : 0;
    if (rank == 0 || occ.size() != rank || vir.size() != rank)
      throw ParseError(fmt::format("malformed {} excitation", cells[1]), lineno);
    for (auto v : occ)
      if (v >= n_modes) throw RangeError(fmt::format("line {}: mode {} out of range", lineno, v));
    for (auto v : vir)
      if (v >= n_modes) throw RangeError(fmt::format("line {}: mode {} out of range", lineno, v));
    m.operators.push_back(make_excitation(std::move(occ), std::move(vir), n_modes));
  }
  return m;
}

void write_solution_csv(std::ostream& out, const QeomSolution& sol) {
  out << "state_index,omega_hartree,omega_ev,norm\n";
  for (std::size_t k = 0; k < sol.states.size(); ++k) {
    const auto& s = sol.states[k];
    out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", k, s.omega,
                       units::hartree_to_ev(s.omega), s.norm);
  }
}

void write_amplitudes_csv(std::ostream& out, const QeomSolution& sol) {
  const std::size_t n = sol.states.empty() ? 0 : sol.states.front().c.size();
  out << "state_index,omega_hartree,norm";
  for (std::size_t k = 0; k < n; ++k) out << ",c" << k;
  for (std::size_t k = 0; k < n; ++k) out << ",d" << k;
  out << '\n';
  for (std::size_t k = 0; k < sol.states.size(); ++k) {
    const auto& s = sol.states[k];
    out << fmt::format("{},{:.17g},{:.17g}", k, s.omega, s.norm);
    for (Eigen::Index i = 0; i < s.c.size(); ++i) out << fmt::format(",{:.17g}", s.c(i));
    for (Eigen::Index i = 0; i < s.d.size(); ++i) out << fmt::format(",{:.17g}", s.d(i));
    out << '\n';
  }
}

QeomSolution read_amplitudes_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line.rfind("state_index,omega_hartree,norm", 0) != 0)
    throw ParseError("missing amplitude header", lineno);
  const auto ncols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (ncols < 3 || (ncols - 3) % 2 != 0)
    throw ParseError("amplitude header has an odd number of amplitude columns", lineno);
  const auto n = static_cast<Eigen::Index>((ncols - 3) / 2);

  QeomSolution sol;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError(fmt::format("bad number '{}'", cell), lineno);
      }
    }
    if (vals.size() != ncols)
      throw ParseError(fmt::format("expected {} columns, found {}", ncols, vals.size()),
                       lineno);
    QeomState s;
    s.omega = vals[1];
    s.norm = vals[2];
    s.c = Eigen::Map<Eigen::VectorXd>(vals.data() + 3, n);
    s.d = Eigen::Map<Eigen::VectorXd>(vals.data() + 3 + n, n);
    sol.states.push_back(std::move(s));
  }
  return sol;
}

}  // namespace chiralq
