#include "offgrid/sampling.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "offgrid/rng.hpp"

namespace offgrid {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(what) + " must be strictly positive");
  }
}

void validate(const DeviationDistribution& dist) {
  if (const auto* u = std::get_if<UniformJitter>(&dist)) {
    if (u->rho < 0.0) throw std::invalid_argument("uniform_jitter: rho must be >= 0");
  } else if (const auto* g = std::get_if<UniformGeneral>(&dist)) {
    if (g->p < 1) throw std::invalid_argument("uniform_general: p must be a positive integer");
  } else if (const auto* d = std::get_if<DiscreteUniform>(&dist)) {
    if (d->p < 1) throw std::invalid_argument("discrete_uniform: p must be a positive integer");
    if (d->nbar < 1) throw std::invalid_argument("discrete_uniform: nbar must be >= 1");
  } else if (const auto* n = std::get_if<Normal>(&dist)) {
    require_positive(n->sigma, "normal: sigma");
  } else if (const auto* l = std::get_if<Laplace>(&dist)) {
    require_positive(l->b, "laplace: b");
  } else if (const auto* e = std::get_if<Exponential>(&dist)) {
    require_positive(e->lambda, "exponential: lambda");
  }
}

// `count` independent draws from the deviation law of a size-`m` grid.  The
// two sizes are distinct on purpose: Monte-Carlo estimators need many more
// draws than the grid has points, while the width of the uniform families
// scales with the grid size m, not with how many samples we take.
std::vector<double> draw_scaled(const DeviationDistribution& dist,
                                std::int64_t count, std::int64_t m,
                                std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("draw_deviations: count must be >= 1");
  if (m < 1) throw std::invalid_argument("draw_deviations: m must be >= 1");
  validate(dist);
  std::vector<double> out(static_cast<std::size_t>(count));
  Rng rng(seed);
  const double md = static_cast<double>(m);
  if (const auto* u = std::get_if<UniformJitter>(&dist)) {
    const double h = u->rho / md;
    for (auto& v : out) v = rng.uniform(-h, h);
  } else if (const auto* g = std::get_if<UniformGeneral>(&dist)) {
    const double h = static_cast<double>(g->p) / (2.0 * md);
    for (auto& v : out) v = rng.uniform(g->mu - h, g->mu + h);
  } else if (const auto* d = std::get_if<DiscreteUniform>(&dist)) {
    const double lo = d->mu - static_cast<double>(d->p) / (2.0 * md);
    const double step = static_cast<double>(d->p) /
                        (md * static_cast<double>(d->nbar));
    for (auto& v : out) {
      v = lo + step * static_cast<double>(rng.integer(
                          static_cast<std::uint64_t>(d->nbar)));
    }
  } else if (const auto* n = std::get_if<Normal>(&dist)) {
    for (auto& v : out) v = rng.normal(n->mu, n->sigma);
  } else if (const auto* l = std::get_if<Laplace>(&dist)) {
    for (auto& v : out) v = rng.laplace(l->mu, l->b);
  } else if (const auto* e = std::get_if<Exponential>(&dist)) {
    for (auto& v : out) v = rng.exponential(e->lambda);
  } else {
    const auto& deg = std::get<Degenerate>(dist);
    for (auto& v : out) v = deg.value;
  }
  return out;
}

}  // namespace

std::vector<double> draw_deviations(const DeviationDistribution& dist,
                                    std::int64_t m, std::uint64_t seed) {
  return draw_scaled(dist, m, m, seed);
}

NonuniformGrid build_grid(const std::vector<double>& deviations, std::int64_t m) {
  if (static_cast<std::int64_t>(deviations.size()) != m) {
    throw std::invalid_argument("build_grid: deviation vector length must equal m");
  }
  NonuniformGrid grid;
  grid.m = m;
  grid.deviations = deviations;
  grid.points.resize(deviations.size());
  for (std::int64_t k = 1; k <= m; ++k) {
    const double base =
        static_cast<double>(k - 1) / static_cast<double>(m) - 0.5;
    grid.points[k - 1] = wrap_torus(base + deviations[k - 1]);
  }
  return grid;
}

NonuniformGrid make_grid(const DeviationDistribution& dist, std::int64_t m,
                         std::uint64_t seed) {
  return build_grid(draw_deviations(dist, m, seed), m);
}

namespace {

// |(1/nbar) sum_{k=0}^{nbar-1} e(x k)| building block, with the exact-zero
// structure preserved: the ratio sin(pi x nbar)/(nbar sin(pi x)) evaluates to
// an exact 0 whenever x*nbar is an integer while x is not.
cplx dirichlet_mean(double x, std::int64_t nbar) {
  const double nb = static_cast<double>(nbar);
  const double denom = sinpi(x);
  if (denom == 0.0) return cplx(1.0, 0.0);  // x integral: every term is e(xk) = 1
  const double ratio = sinpi(x * nb) / (nb * denom);
  // phase factor e(x (nbar-1)/2) from the symmetric regrouping of the sum
  return unit_exp(x * (nb - 1.0) / 2.0) * ratio;
}

}  // namespace

cplx char_function(const DeviationDistribution& dist, double t, std::int64_t m) {
  validate(dist);
  const double md = static_cast<double>(m);
  if (const auto* u = std::get_if<UniformJitter>(&dist)) {
    if (m < 1) throw std::invalid_argument("char_function: uniform_jitter needs m >= 1");
    // E e(t delta) for U[-rho/m, rho/m] = sin(2 pi t rho/m) / (2 pi t rho/m)
    const double a = 2.0 * t * u->rho / md;  // argument of sinpi below
    if (a == 0.0) return cplx(1.0, 0.0);
    return cplx(sinpi(a) / (pi * a), 0.0);
  }
  if (const auto* g = std::get_if<UniformGeneral>(&dist)) {
    if (m < 1) throw std::invalid_argument("char_function: uniform_general needs m >= 1");
    const double a = t * static_cast<double>(g->p) / md;  // half-width times 2t
    cplx shift = unit_exp(t * g->mu);
    if (a == 0.0) return shift;
    return shift * (sinpi(a) / (pi * a));
  }
  if (const auto* d = std::get_if<DiscreteUniform>(&dist)) {
    if (m < 1) throw std::invalid_argument("char_function: discrete_uniform needs m >= 1");
    // mean of e(t x_k) over x_k = mu - p/2m + p k/(m nbar)
    const double start = d->mu - static_cast<double>(d->p) / (2.0 * md);
    const double step = static_cast<double>(d->p) / (md * static_cast<double>(d->nbar));
    return unit_exp(t * start) * dirichlet_mean(t * step, d->nbar);
  }
  if (const auto* n = std::get_if<Normal>(&dist)) {
    const double s = 2.0 * pi * pi * t * t * n->sigma * n->sigma;
    return unit_exp(t * n->mu) * std::exp(-s);
  }
  if (const auto* l = std::get_if<Laplace>(&dist)) {
    const double w = 2.0 * pi * t * l->b;
    return unit_exp(t * l->mu) / (1.0 + w * w);
  }
  if (const auto* e = std::get_if<Exponential>(&dist)) {
    // lambda / (lambda - 2 pi i t)
    return e->lambda / cplx(e->lambda, -2.0 * pi * t);
  }
  const auto& deg = std::get<Degenerate>(dist);
  return unit_exp(t * deg.value);
}

std::int64_t theta_j_max(std::int64_t N, std::int64_t m) {
  return (2 * (N - 1)) / m;
}

double theta(const DeviationDistribution& dist, std::int64_t N, std::int64_t m) {
  if (N < 1 || N % 2 == 0) throw std::invalid_argument("theta: N must be odd");
  if (m < 1) throw std::invalid_argument("theta: m must be >= 1");
  if (m > N) {
    throw std::domain_error(
        "theta: the deviation model covers m <= N only; oversampled grids "
        "(m > N) do not use this diagnostic");
  }
  if (const auto* d = std::get_if<DiscreteUniform>(&dist)) {
    // the exact-cancellation claim needs nbar > 2(N-1)p/m; warn, then compute
    const double threshold = 2.0 * static_cast<double>((N - 1) * d->p) /
                             static_cast<double>(m);
    if (static_cast<double>(d->nbar) <= threshold) {
      std::cerr << "[offgrid] warning: discrete_uniform nbar = " << d->nbar
                << " is not above 2(N-1)p/m = " << threshold
                << "; theta may be nonzero for this configuration\n";
    }
  }
  const std::int64_t jmax = theta_j_max(N, m);
  double worst = 0.0;
  for (std::int64_t j = 1; j <= jmax; ++j) {
    const double t = static_cast<double>(j) * static_cast<double>(m);
    worst = std::max(worst, std::abs(char_function(dist, t, m)));
    worst = std::max(worst, std::abs(char_function(dist, -t, m)));
  }
  return 2.0 * static_cast<double>(N) / static_cast<double>(m) * worst;
}

ThetaEstimate theta_monte_carlo(const DeviationDistribution& dist,
                                std::int64_t N, std::int64_t m,
                                std::int64_t trials, std::uint64_t seed) {
  if (trials < 10000) {
    throw std::invalid_argument("theta_monte_carlo: trials must be >= 1e4");
  }
  if (N < 1 || N % 2 == 0) throw std::invalid_argument("theta_monte_carlo: N must be odd");
  if (m < 1 || m > N) {
    throw std::domain_error("theta_monte_carlo: requires 1 <= m <= N");
  }
  const std::vector<double> delta = draw_scaled(dist, trials, m, seed);
  const std::int64_t jmax = theta_j_max(N, m);
  const double scale = 2.0 * static_cast<double>(N) / static_cast<double>(m);
  const double td = static_cast<double>(trials);
  ThetaEstimate best;
  for (std::int64_t j = 1; j <= jmax; ++j) {
    const double t = static_cast<double>(j) * static_cast<double>(m);
    cplx mean(0.0, 0.0);
    for (double dv : delta) mean += unit_exp(t * dv);
    mean /= td;
    // variance of the complex sample mean; |e(t delta)|^2 == 1 termwise
    const double var = std::max(0.0, (1.0 - std::norm(mean)) / td);
    const double est = scale * std::abs(mean);
    if (est >= best.value) {
      best.value = est;
      best.std_error = scale * std::sqrt(var);
    }
  }
  return best;
}

const char* distribution_kind(const DeviationDistribution& dist) {
  if (std::holds_alternative<UniformJitter>(dist)) return "uniform_jitter";
  if (std::holds_alternative<UniformGeneral>(dist)) return "uniform_general";
  if (std::holds_alternative<DiscreteUniform>(dist)) return "discrete_uniform";
  if (std::holds_alternative<Normal>(dist)) return "normal";
  if (std::holds_alternative<Laplace>(dist)) return "laplace";
  if (std::holds_alternative<Exponential>(dist)) return "exponential";
  return "degenerate";
}

}  // namespace offgrid
