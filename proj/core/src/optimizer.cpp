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

#include "chiralq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "chiralq/error.hpp"

namespace chiralq {

namespace {

constexpr double kAlpha = 0.25;
constexpr double kBeta = 2.1;
constexpr double kGamma = 0.5;
constexpr double kDelta = 1.1;

class CountedObjective {
 public:
  CountedObjective(const Objective& f, std::size_t budget)
      : f_(f), budget_(budget) {}

  bool exhausted() const noexcept { return count_ >= budget_; }
  std::size_t count() const noexcept { return count_; }

  double operator()(const Eigen::VectorXd& x) {
    ++count_;
    const double value = f_(std::span<const double>(x.data(), x.size()));
    if (!std::isfinite(value)) {
      throw ComputeError(
          fmt::format("objective returned {} at evaluation {}", value, count_));
    }
    return value;
  }

 private:
  const Objective& f_;
  std::size_t budget_;
  std::size_t count_ = 0;
};

void check_options(const OptimizerOptions& o, std::size_t n) {
  if (n == 0) throw ConfigError("optimizer needs at least one variable");
  if (!(o.rho_begin > 0.0) || !(o.rho_end > 0.0) || o.rho_end > o.rho_begin)
    throw ConfigError(fmt::format("invalid step sizes rho_begin={} rho_end={}",
                                  o.rho_begin, o.rho_end));
  if (o.max_evaluations < n + 1)
    throw ConfigError(fmt::format("evaluation budget {} below simplex size {}",
                                  o.max_evaluations, n + 1));
}

// Replaces column j of the simplex by dx and updates the inverse in place.
void replace_vertex(Eigen::MatrixXd& sim, Eigen::MatrixXd& simi,
                    Eigen::Index j, const Eigen::VectorXd& dx) {
  sim.col(j) = dx;
  simi.row(j) /= simi.row(j).dot(dx);
  for (Eigen::Index k = 0; k < sim.cols(); ++k) {
    if (k == j) continue;
    simi.row(k) -= simi.row(k).dot(dx) * simi.row(j);
  }
}

}  // namespace

OptimizerResult minimize_cobyla(const Objective& objective,
                                std::vector<double> x0,
                                const OptimizerOptions& options) {
  const auto n = static_cast<Eigen::Index>(x0.size());
  check_options(options, x0.size());
  CountedObjective f(objective, options.max_evaluations);

  double rho = options.rho_begin;
  const double rho_end = options.rho_end;

  Eigen::VectorXd pole = Eigen::Map<Eigen::VectorXd>(x0.data(), n);
  Eigen::MatrixXd sim = rho * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd simi = Eigen::MatrixXd::Identity(n, n) / rho;
  Eigen::VectorXd fsim(n);
  double fpole = f(pole);

  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd x = pole;
    x(j) += rho;
    const double fx = f(x);
    if (fpole <= fx) {
      fsim(j) = fx;
      continue;
    }
    // The new vertex becomes the pole; earlier displacements shift by -rho e_j.
    pole = x;
    fsim(j) = fpole;
    fpole = fx;
    for (Eigen::Index k = 0; k <= j; ++k) {
      sim(j, k) = -rho;
      double s = 0.0;
      for (Eigen::Index i = k; i <= j; ++i) s -= simi(i, k);
      simi(j, k) = s;
    }
  }

  OptimizerStatus status = OptimizerStatus::MaxEvaluations;
  bool geometry_allowed = false;
  double level_start = fpole;

  Eigen::VectorXd vsig(n), veta(n), dx(n);

  for (;;) {
    Eigen::Index nbest = -1;
    double phimin = fpole;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (fsim(j) < phimin) {
        nbest = j;
        phimin = fsim(j);
      }
    }
    if (nbest >= 0) {
      std::swap(fpole, fsim(nbest));
      const Eigen::VectorXd shift = sim.col(nbest);
      pole += shift;
      sim.col(nbest).setZero();
      sim.colwise() -= shift;
      simi.row(nbest) = -simi.colwise().sum().eval();
    }

    const double drift =
        (simi * sim - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (drift > 0.1) {
      status = OptimizerStatus::RoundingError;
      break;
    }

    const Eigen::VectorXd g = simi.transpose() * (fsim.array() - fpole).matrix();

    const double parsig = kAlpha * rho;
    const double pareta = kBeta * rho;
    bool acceptable = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      vsig(j) = 1.0 / simi.row(j).norm();
      veta(j) = sim.col(j).norm();
      if (vsig(j) < parsig || veta(j) > pareta) acceptable = false;
    }

    if (geometry_allowed && !acceptable) {
      Eigen::Index jdrop = -1;
      double worst = pareta;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (veta(j) > worst) {
          jdrop = j;
          worst = veta(j);
        }
      }
      if (jdrop < 0) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (vsig(j) < worst) {
            jdrop = j;
            worst = vsig(j);
          }
        }
      }
      dx = (kGamma * rho * vsig(jdrop)) * simi.row(jdrop).transpose();
      if (g.dot(dx) > 0.0) dx = -dx;
      if (f.exhausted()) break;
      replace_vertex(sim, simi, jdrop, dx);
      fsim(jdrop) = f(pole + dx);
      geometry_allowed = false;
      continue;
    }

    bool shrink = false;
    const double gnorm = g.norm();
    if (gnorm == 0.0) {
      geometry_allowed = false;
      shrink = true;
    } else {
      dx = (-rho / gnorm) * g;
      const double prerem = rho * gnorm;
      if (f.exhausted()) break;
      const double fnew = f(pole + dx);
      geometry_allowed = false;
      const double trured = fpole - fnew;

      double ratio = trured <= 0.0 ? 1.0 : 0.0;
      Eigen::Index jdrop = -1;
      Eigen::VectorXd sigbar(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double t = std::abs(simi.row(j).dot(dx));
        if (t > ratio) {
          jdrop = j;
          ratio = t;
        }
        sigbar(j) = t * vsig(j);
      }
      double edgmax = kDelta * rho;
      Eigen::Index far = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (sigbar(j) >= parsig || sigbar(j) >= vsig(j)) {
          const double len = trured > 0.0 ? (dx - sim.col(j)).norm() : veta(j);
          if (len > edgmax) {
            far = j;
            edgmax = len;
          }
        }
      }
      if (far >= 0) jdrop = far;

      if (jdrop < 0) {
        shrink = true;
      } else {
        replace_vertex(sim, simi, jdrop, dx);
        fsim(jdrop) = fnew;
        shrink = !(trured > 0.0 && trured >= 0.1 * prerem);
      }
    }
    if (!shrink) continue;

    if (!acceptable) {
      geometry_allowed = true;
      continue;
    }
    if (rho > rho_end) {
      const double best = std::min(fpole, fsim.minCoeff());
      level_start = best;
      rho *= 0.5;
      if (rho <= 1.5 * rho_end) rho = rho_end;
      continue;
    }
    status = OptimizerStatus::Converged;
    break;
  }

  // The pole is the best vertex unless the loop stopped between updates.
  Eigen::Index arg = -1;
  double best = fpole;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (fsim(j) < best) {
      best = fsim(j);
      arg = j;
    }
  }
  Eigen::VectorXd xbest = pole;
  if (arg >= 0) xbest += sim.col(arg);

  OptimizerResult result;
  result.x.assign(xbest.data(), xbest.data() + n);
  result.f = best;
  result.evaluations = f.count();
  result.status = status;
  result.final_rho = rho;
  result.last_level_decrease = level_start - best;
  return result;
}

OptimizerResult minimize_nelder_mead(const Objective& objective,
                                     std::vector<double> x0,
                                     const OptimizerOptions& options) {
  const auto n = static_cast<Eigen::Index>(x0.size());
  check_options(options, x0.size());
  CountedObjective f(objective, options.max_evaluations);

  std::vector<Eigen::VectorXd> pts(n + 1,
                                   Eigen::Map<Eigen::VectorXd>(x0.data(), n));
  for (Eigen::Index j = 0; j < n; ++j) pts[j + 1](j) += options.rho_begin;
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < pts.size(); ++i) fv[i] = f(pts[i]);

  std::vector<std::size_t> order(pts.size());
  OptimizerStatus status = OptimizerStatus::MaxEvaluations;
  double first_best = *std::min_element(fv.begin(), fv.end());
  double diameter = options.rho_begin;

  while (!f.exhausted()) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t lo = order.front();
    const std::size_t hi = order.back();
    const std::size_t second = order[order.size() - 2];

    diameter = 0.0;
    for (const auto& p : pts) diameter = std::max(diameter, (p - pts[lo]).norm());
    if (diameter <= options.rho_end &&
        fv[hi] - fv[lo] <= options.rho_end) {
      status = OptimizerStatus::Converged;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != hi) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd xr = centroid + (centroid - pts[hi]);
    const double fr = f(xr);
    if (fr < fv[lo]) {
      if (f.exhausted()) {
        pts[hi] = xr;
        fv[hi] = fr;
        break;
      }
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[hi]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[hi] = xe;
        fv[hi] = fe;
      } else {
        pts[hi] = xr;
        fv[hi] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      pts[hi] = xr;
      fv[hi] = fr;
      continue;
    }
    if (f.exhausted()) break;
    const bool outside = fr < fv[hi];
    const Eigen::VectorXd xc = outside ? centroid + 0.5 * (xr - centroid)
                                       : centroid + 0.5 * (pts[hi] - centroid);
    const double fc = f(xc);
    if (fc < std::min(fr, fv[hi])) {
      pts[hi] = xc;
      fv[hi] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == lo) continue;
      if (f.exhausted()) break;
      pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
      fv[i] = f(pts[i]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(fv.begin(), fv.end()) - fv.begin());
  OptimizerResult result;
  result.x.assign(pts[best].data(), pts[best].data() + n);
  result.f = fv[best];
  result.evaluations = f.count();
  result.status = status;
  result.final_rho = diameter;
  result.last_level_decrease = first_best - fv[best];
  return result;
}

OptimizerResult minimize(OptimizerKind kind, const Objective& f,
                         std::vector<double> x0,
                         const OptimizerOptions& options) {
  switch (kind) {
    case OptimizerKind::Cobyla:
      return minimize_cobyla(f, std::move(x0), options);
    case OptimizerKind::NelderMead:
      return minimize_nelder_mead(f, std::move(x0), options);
  }
  throw ConfigError("unknown optimizer");
}

const char* to_string(OptimizerKind kind) noexcept {
  return kind == OptimizerKind::Cobyla ? "cobyla" : "nelder-mead";
}

OptimizerKind parse_optimizer_kind(const std::string& text) {
  if (text == "cobyla") return OptimizerKind::Cobyla;
  if (text == "nelder-mead") return OptimizerKind::NelderMead;
  throw ConfigError(fmt::format("unknown optimizer '{}'", text));
}

}  // namespace chiralq
