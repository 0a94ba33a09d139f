#include "offgrid/solve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "offgrid/rng.hpp"
#include "offgrid/util.hpp"

namespace offgrid {

double bpdn_sigma_from_model(double eta, std::int64_t m, double tail) {
  if (eta < 0.0 || tail < 0.0) {
    throw std::invalid_argument("bpdn_sigma_from_model: negative budget");
  }
  if (m < 1) throw std::invalid_argument("bpdn_sigma_from_model: m must be positive");
  return eta + 2.0 * std::sqrt(static_cast<double>(m)) * tail;
}

Eigen::VectorXcd project_l1_ball(const Eigen::VectorXcd& x, double radius) {
  if (radius < 0.0) {
    throw std::invalid_argument("project_l1_ball: radius must be nonnegative");
  }
  if (radius == 0.0) return Eigen::VectorXcd::Zero(x.size());
  const Eigen::Index n = x.size();
  std::vector<double> a(static_cast<std::size_t>(n));
  double one_norm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)] = std::abs(x[i]);
    one_norm += a[static_cast<std::size_t>(i)];
  }
  if (one_norm <= radius) return x;

  // soft threshold on the moduli: lambda from the largest k with
  // a_(k) > (prefix_k - radius)/k, phases carried through unchanged
  std::sort(a.begin(), a.end(), std::greater<double>());
  double prefix = 0.0;
  double lambda = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    prefix += a[k];
    const double cand = (prefix - radius) / static_cast<double>(k + 1);
    if (a[k] > cand) {
      lambda = cand;
    } else {
      break;
    }
  }
  Eigen::VectorXcd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mod = std::abs(x[i]);
    out[i] = (mod > lambda) ? cplx(x[i] * ((mod - lambda) / mod)) : cplx(0.0, 0.0);
  }
  return out;
}

// ---- LASSO subproblem (spectral projected gradient) ---------------------------

SolveReport lasso_subproblem(const LinearOperator& A, const Eigen::VectorXcd& b,
                             double tau_ball, const Eigen::VectorXcd& x0,
                             const BpdnOptions& opts) {
  if (x0.size() != A.cols) {
    throw std::invalid_argument("lasso_subproblem: warm start has wrong length");
  }
  SolveReport rep;

  Eigen::VectorXcd x = project_l1_ball(x0, tau_ball);
  Eigen::VectorXcd r = b - A.forward(x);
  Eigen::VectorXcd atr = A.adjoint(r);  // = -gradient of (1/2)||Ax-b||^2
  double f = 0.5 * r.squaredNorm();

  std::deque<double> recent = {f};
  const double bnorm = b.norm();
  double step = 1.0 / std::max(1e-300, atr.template lpNorm<Eigen::Infinity>());
  step = std::clamp(step, opts.step_min, opts.step_max);

  double gap_rel = std::numeric_limits<double>::infinity();
  bool done = false;
  int it = 0;
  for (; it < opts.max_inner && !done; ++it) {
    // duality gap of the tau-ball problem; zero iff x is aligned with A*r on
    // the boundary
    const double atr_inf = atr.template lpNorm<Eigen::Infinity>();
    const double rnorm = std::sqrt(2.0 * f);
    const double gap =
        tau_ball * atr_inf - std::real(x.dot(atr));
    gap_rel = gap / std::max(1.0, rnorm);
    if (gap_rel <= opts.opt_tol || rnorm <= 1e-15 * std::max(1.0, bnorm)) {
      done = true;
      break;
    }

    // feasible descent direction from one projected gradient step
    const Eigen::VectorXcd xc = project_l1_ball(x + step * atr, tau_ball);
    const Eigen::VectorXcd d = xc - x;
    const double dnorm = d.norm();
    if (dnorm <= 1e-15 * std::max(1.0, x.norm())) {
      done = true;  // projected step is stationary
      break;
    }
    const Eigen::VectorXcd Ad = A.forward(d);
    const double gd = -std::real(atr.dot(d));  // directional derivative, <= 0

    // nonmonotone backtracking on the cached products
    const double f_ref = *std::max_element(recent.begin(), recent.end());
    double lam = 1.0;
    double f_new = f;
    Eigen::VectorXcd r_new;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      r_new = r - lam * Ad;
      f_new = 0.5 * r_new.squaredNorm();
      if (f_new <= f_ref + opts.suff_decrease * lam * gd) {
        accepted = true;
        break;
      }
      lam *= 0.5;
    }
    if (!accepted) {
      done = true;  // no progress possible at the smallest step
      break;
    }

    const Eigen::VectorXcd x_new = x + lam * d;
    const Eigen::VectorXcd atr_new = A.adjoint(r_new);

    // Barzilai-Borwein spectral step from the last displacement
    const Eigen::VectorXcd s = x_new - x;
    const Eigen::VectorXcd y = atr - atr_new;  // = grad_new - grad_old
    const double sy = std::real(s.dot(y));
    step = (sy > 0.0) ? std::clamp(s.squaredNorm() / sy, opts.step_min,
                                   opts.step_max)
                      : opts.step_max;

    x = x_new;
    r = r_new;
    atr = atr_new;
    f = f_new;
    recent.push_back(f);
    if (static_cast<int>(recent.size()) > std::max(1, opts.linesearch_memory)) {
      recent.pop_front();
    }
  }

  rep.solution = x;
  rep.residual_norm = std::sqrt(2.0 * f);
  rep.one_norm = x.template lpNorm<1>();
  rep.duality_gap = gap_rel;
  rep.iterations = it;
  rep.outer_iterations = 0;
  rep.converged = done;
  rep.history.emplace_back(rep.residual_norm, rep.one_norm);
  return rep;
}

// ---- BPDN via Pareto root finding ----------------------------------------------

SolveReport bpdn(const LinearOperator& A, const Eigen::VectorXcd& b,
                 const BpdnOptions& opts) {
  if (b.size() != A.rows) {
    throw std::invalid_argument("bpdn: data length does not match the operator");
  }
  if (opts.sigma < 0.0) throw std::invalid_argument("bpdn: sigma must be nonnegative");

  SolveReport rep;
  const double bnorm = b.norm();
  if (bnorm <= opts.sigma) {
    // zero is feasible and has minimal one-norm
    rep.solution = Eigen::VectorXcd::Zero(A.cols);
    rep.residual_norm = bnorm;
    rep.converged = true;
    rep.history.emplace_back(bnorm, 0.0);
    return rep;
  }

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(A.cols);
  Eigen::VectorXcd r = b;
  double rnorm = bnorm;
  double atr_inf = A.adjoint(r).template lpNorm<Eigen::Infinity>();
  if (!(atr_inf > 0.0)) {
    rep.solution = x;  // A*b = 0: the objective cannot be reduced at all
    rep.residual_norm = rnorm;
    rep.history.emplace_back(rnorm, 0.0);
    return rep;
  }

  double tau = (rnorm - opts.sigma) * rnorm / atr_inf;  // first Pareto step
  int outer = 0;
  for (; outer < opts.max_outer; ++outer) {
    SolveReport sub = lasso_subproblem(A, b, tau, x, opts);
    x = sub.solution;
    rep.iterations += sub.iterations;
    rep.duality_gap = sub.duality_gap;
    rnorm = sub.residual_norm;
    rep.history.emplace_back(rnorm, sub.one_norm);

    if (std::fabs(rnorm - opts.sigma) <= opts.opt_tol * std::max(1.0, rnorm)) {
      rep.converged = true;
      ++outer;
      break;
    }

    r = b - A.forward(x);
    atr_inf = A.adjoint(r).template lpNorm<Eigen::Infinity>();
    if (!(atr_inf > 0.0) || !std::isfinite(atr_inf)) break;
    const double tau_next = tau + (rnorm - opts.sigma) * rnorm / atr_inf;
    if (!(tau_next > 0.0) || !std::isfinite(tau_next)) break;
    if (std::fabs(tau_next - tau) <= 1e-14 * std::max(1.0, tau)) {
      ++outer;
      break;  // Pareto iteration has stalled
    }
    tau = tau_next;
  }

  rep.solution = x;
  rep.residual_norm = rnorm;
  rep.one_norm = x.template lpNorm<1>();
  rep.outer_iterations = outer;
  return rep;
}

// ---- least squares ---------------------------------------------------------------

SolveReport least_squares(const LinearOperator& A, const Eigen::VectorXcd& b,
                          double tol, int max_iter) {
  if (b.size() != A.rows) {
    throw std::invalid_argument("least_squares: data length does not match");
  }

  // operator norm estimate for the stopping scale
  double anorm = 0.0;
  {
    Rng rng(0x9e3779b97f4a7c15ull);
    Eigen::VectorXcd v(A.cols);
    for (Eigen::Index i = 0; i < A.cols; ++i) {
      v[i] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    double nrm = v.norm();
    if (nrm > 0.0) v /= nrm;
    for (int it = 0; it < 20; ++it) {
      Eigen::VectorXcd w = A.adjoint(A.forward(v));
      nrm = w.norm();
      if (nrm == 0.0) break;
      v = w / nrm;
    }
    anorm = std::sqrt(nrm);
  }

  // conjugate gradients on the normal equations A*A g = A*b
  SolveReport rep;
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(A.cols);
  Eigen::VectorXcd res = A.adjoint(b);  // normal-equations residual A*(b - Ag)
  Eigen::VectorXcd p = res;
  double rho = res.squaredNorm();
  const double stop = tol * std::max(anorm, 1e-300) * b.norm();

  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::sqrt(rho) <= stop) {
      rep.converged = true;
      break;
    }
    const Eigen::VectorXcd q = A.adjoint(A.forward(p));
    const double pq = std::real(p.dot(q));
    if (!(pq > 0.0)) break;  // curvature lost to rounding
    const double alpha = rho / pq;
    g += alpha * p;
    res -= alpha * q;
    const double rho_new = res.squaredNorm();
    p = res + (rho_new / rho) * p;
    rho = rho_new;
  }
  if (!rep.converged && std::sqrt(rho) <= stop) rep.converged = true;

  rep.solution = g;
  rep.residual_norm = (A.forward(g) - b).norm();
  rep.one_norm = g.template lpNorm<1>();
  rep.iterations = it;
  rep.history.emplace_back(rep.residual_norm, rep.one_norm);
  return rep;
}

}  // namespace offgrid
