#include "offgrid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "offgrid/util.hpp"

namespace offgrid {

ErrorBreakdown interp_error_exact(const FourierSignal& sig,
                                  const NonuniformGrid& grid, std::int64_t N) {
  if (N < 3 || N % 2 == 0) {
    throw std::invalid_argument("interp_error_exact: N must be odd and >= 3");
  }
  const std::int64_t Nt = (N - 1) / 2;
  const double tail = tail_wiener_norm(sig, N);
  const std::int64_t m = grid.m;

  ErrorBreakdown out;
  out.per_sample = Eigen::VectorXcd::Zero(m);
  for (std::int64_t k = 0; k < m; ++k) {
    const double t = grid.points[static_cast<std::size_t>(k)];
    // a sample that lands exactly on a uniform grid point has zero error:
    // every out-of-band mode aliases onto its folded partner with exactly the
    // sign that cancels the difference
    const std::int64_t p_near = static_cast<std::int64_t>(
        std::llround((t + 0.5) * static_cast<double>(N))) + 1;
    if (p_near >= 1 && p_near <= N && t == uniform_grid_point(p_near, N)) {
      continue;
    }
    cplx acc(0.0, 0.0);
    for (const auto& [l, c] : sig.coeffs) {
      if (std::llabs(l) <= Nt) continue;
      const AliasFold fold = alias_fold(l, N);
      acc += c * (unit_exp(static_cast<double>(l) * t) -
                  static_cast<double>(fold.sign) *
                      unit_exp(static_cast<double>(fold.r) * t));
    }
    out.per_sample[k] = acc;
  }

  const double md = static_cast<double>(m);
  out.p_norm_bounds[1] = 2.0 * md * tail;
  out.p_norm_bounds[2] = 2.0 * std::sqrt(md) * tail;
  out.sup_bound = 2.0 * tail;
  return out;
}

double relative_error(const Eigen::VectorXcd& f_hat, const Eigen::VectorXcd& f) {
  if (f_hat.size() != f.size()) {
    throw std::invalid_argument("relative_error: length mismatch");
  }
  const double denom = f.norm();
  const double num = (f_hat - f).norm();
  if (denom == 0.0) {
    return (num == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return num / denom;
}

// ---- support enumeration ---------------------------------------------------------

namespace {

// C(n, s), saturating at cap + 1 to keep the overflow check cheap
std::int64_t combination_count(std::int64_t n, std::int64_t s, std::int64_t cap) {
  double c = 1.0;
  for (std::int64_t i = 0; i < s; ++i) {
    c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (c > static_cast<double>(cap)) return cap + 1;
  }
  return static_cast<std::int64_t>(std::llround(c));
}

bool next_combination(std::vector<std::int64_t>& idx, std::int64_t n) {
  const std::int64_t s = static_cast<std::int64_t>(idx.size());
  std::int64_t i = s - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - s + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (std::int64_t j = i + 1; j < s; ++j) {
    idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

double spectral_norm_hermitian(const Eigen::MatrixXcd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

// max over supports |T| = s of || (G - M)_T ||_2; the |T| < s cases are
// dominated by principal-submatrix monotonicity of the spectral norm
double max_support_norm(const Eigen::MatrixXcd& G, const Eigen::MatrixXcd& M,
                        std::int64_t s) {
  const std::int64_t n = G.cols();
  std::vector<std::int64_t> T(static_cast<std::size_t>(s));
  for (std::int64_t i = 0; i < s; ++i) T[static_cast<std::size_t>(i)] = i;
  Eigen::MatrixXcd sub(s, s);
  double worst = 0.0;
  do {
    for (std::int64_t a = 0; a < s; ++a) {
      for (std::int64_t b = 0; b < s; ++b) {
        const auto ia = T[static_cast<std::size_t>(a)];
        const auto ib = T[static_cast<std::size_t>(b)];
        sub(a, b) = G(ia, ib) - M(ia, ib);
      }
    }
    worst = std::max(worst, spectral_norm_hermitian(sub));
  } while (next_combination(T, n));
  return worst;
}

}  // namespace

double empirical_xm(const Eigen::MatrixXcd& A,
                    const std::function<Eigen::MatrixXcd(std::uint64_t)>& draw_member,
                    std::int64_t s, const XmOptions& opts) {
  const std::int64_t n = A.cols();
  if (s < 1 || s > 3) throw std::invalid_argument("empirical_xm: s must be in 1..3");
  if (n > 20) throw std::invalid_argument("empirical_xm: at most 20 columns");
  if (s > n) throw std::invalid_argument("empirical_xm: s exceeds the column count");
  if (combination_count(n, s, opts.max_supports) > opts.max_supports) {
    throw std::invalid_argument("empirical_xm: support budget exceeded");
  }

  const Eigen::MatrixXcd G = A.adjoint() * A;
  Eigen::MatrixXcd M;
  if (opts.exact_identity_mean) {
    M = Eigen::MatrixXcd::Identity(n, n);
  } else {
    if (!draw_member) {
      throw std::invalid_argument("empirical_xm: no ensemble to average over");
    }
    if (opts.draws < 1) throw std::invalid_argument("empirical_xm: draws must be >= 1");
    M = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < opts.draws; ++i) {
      const Eigen::MatrixXcd B = draw_member(opts.seed + static_cast<std::uint64_t>(i));
      if (B.cols() != n) {
        throw std::invalid_argument("empirical_xm: ensemble member has wrong width");
      }
      M += B.adjoint() * B;
    }
    M /= static_cast<double>(opts.draws);
  }
  return max_support_norm(G, M, s);
}

double empirical_ric(const Eigen::MatrixXcd& A, std::int64_t s,
                     std::int64_t max_supports) {
  const std::int64_t n = A.cols();
  if (s < 1) throw std::invalid_argument("empirical_ric: s must be positive");
  if (s > n) throw std::invalid_argument("empirical_ric: s exceeds the column count");
  if (combination_count(n, s, max_supports) > max_supports) {
    throw std::invalid_argument("empirical_ric: support budget exceeded");
  }
  const Eigen::MatrixXcd G = A.adjoint() * A;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  return max_support_norm(G, I, s);
}

double min_singular_check(const DirichletKernelOp& S) {
  if (S.N > 512) {
    throw std::invalid_argument("min_singular_check: dense check capped at N = 512");
  }
  const Eigen::MatrixXcd M = dense_matrix(dirichlet_operator(S));
  // sigma_min through the N x N Gram: the spectral floor of interest is far
  // from zero, so no precision is lost by squaring
  const Eigen::MatrixXcd G = M.adjoint() * M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G);
  return std::sqrt(std::max(0.0, eig.eigenvalues().minCoeff()));
}

BoundCheck ls_error_bound(double tau, std::int64_t N, std::int64_t m,
                          double d_norm, double tail) {
  BoundCheck out;
  if (!(tau > 0.0) || !(tau < 0.5)) {
    out.reason = "tau must lie strictly between 0 and 1/2";
    return out;
  }
  if (N < 1 || m < 1) {
    out.reason = "N and m must be positive";
    return out;
  }
  const double logN2 = std::log(2.0 * static_cast<double>(N));
  out.value = tau * d_norm / (3.0 * std::sqrt((1.0 - tau - 2.0 * tau * tau) * logN2)) +
              2.0 * std::sqrt(static_cast<double>(N)) * tail /
                  std::sqrt(1.0 - 2.0 * tau);
  const double min_m = ls_bound_min_m(tau, N);
  if (static_cast<double>(m) < min_m) {
    out.reason = "m is below the sample-size precondition";
    return out;
  }
  out.applicable = true;
  return out;
}

double ls_bound_min_m(double tau, std::int64_t N) {
  if (!(tau > 0.0) || !(tau < 0.5)) {
    throw std::invalid_argument("ls_bound_min_m: tau must lie in (0, 1/2)");
  }
  if (N < 1) throw std::invalid_argument("ls_bound_min_m: N must be positive");
  return 36.0 * static_cast<double>(N) * std::log(2.0 * static_cast<double>(N)) *
         (1.0 + tau) / (tau * tau);
}

}  // namespace offgrid
