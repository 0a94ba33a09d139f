#include "offgrid/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "offgrid/rng.hpp"
#include "offgrid/util.hpp"

namespace offgrid {

TransformKind transform_kind_from_string(const std::string& name) {
  if (name == "dft") return TransformKind::dft;
  if (name == "dft_adjoint") return TransformKind::dft_adjoint;
  if (name == "identity") return TransformKind::identity;
  if (name == "haar") return TransformKind::haar;
  if (name == "db2") return TransformKind::db2;
  throw std::invalid_argument("unknown transform kind: " + name);
}

const char* transform_kind_name(TransformKind kind) {
  switch (kind) {
    case TransformKind::dft: return "dft";
    case TransformKind::dft_adjoint: return "dft_adjoint";
    case TransformKind::identity: return "identity";
    case TransformKind::haar: return "haar";
    case TransformKind::db2: return "db2";
  }
  return "?";
}

// ---- filter taps -------------------------------------------------------------

const std::vector<double>& haar_taps() {
  static const std::vector<double> taps = {1.0 / std::sqrt(2.0),
                                           1.0 / std::sqrt(2.0)};
  return taps;
}

const std::vector<double>& db2_taps() {
  static const std::vector<double> taps = [] {
    const double s3 = std::sqrt(3.0);
    const double d = 4.0 * std::sqrt(2.0);
    return std::vector<double>{(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d,
                               (1.0 - s3) / d};
  }();
  return taps;
}

// ---- periodized DWT ----------------------------------------------------------

namespace {

bool is_pow2(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

// detail taps g_i = (-1)^i h_{T-1-i}
std::vector<double> detail_taps(const std::vector<double>& h) {
  const std::size_t T = h.size();
  std::vector<double> g(T);
  for (std::size_t i = 0; i < T; ++i) {
    g[i] = ((i % 2 == 0) ? 1.0 : -1.0) * h[T - 1 - i];
  }
  return g;
}

// One analysis level on the first `len` entries of x (len even):
// a_k = sum_i h_i x[(2k+i) mod len], d_k likewise with the detail taps.
void dwt_level(Eigen::VectorXcd& x, std::int64_t len,
               const std::vector<double>& h, const std::vector<double>& g) {
  const std::int64_t half = len / 2;
  Eigen::VectorXcd out(len);
  for (std::int64_t k = 0; k < half; ++k) {
    cplx a(0.0, 0.0), d(0.0, 0.0);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const cplx xv = x[(2 * k + static_cast<std::int64_t>(i)) % len];
      a += h[i] * xv;
      d += g[i] * xv;
    }
    out[k] = a;
    out[half + k] = d;
  }
  x.head(len) = out;
}

// One synthesis level (transpose of dwt_level, valid because the filter bank
// is orthonormal): scatter h_i a_k + g_i d_k back onto (2k+i) mod len.
void idwt_level(Eigen::VectorXcd& x, std::int64_t len,
                const std::vector<double>& h, const std::vector<double>& g) {
  const std::int64_t half = len / 2;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(len);
  for (std::int64_t k = 0; k < half; ++k) {
    const cplx a = x[k];
    const cplx d = x[half + k];
    for (std::size_t i = 0; i < h.size(); ++i) {
      out[(2 * k + static_cast<std::int64_t>(i)) % len] += h[i] * a + g[i] * d;
    }
  }
  x.head(len) = out;
}

void check_wavelet_args(std::int64_t n, std::int64_t levels, const char* who) {
  if (!is_pow2(n)) {
    throw std::invalid_argument(std::string(who) + ": length must be a power of two");
  }
  if (levels < 0 || (n >> levels) < 1) {
    throw std::invalid_argument(std::string(who) + ": bad decomposition depth");
  }
}

}  // namespace

Eigen::VectorXcd dwt_periodized(const Eigen::VectorXcd& x,
                                const std::vector<double>& taps,
                                std::int64_t levels) {
  check_wavelet_args(x.size(), levels, "dwt_periodized");
  const std::vector<double> g = detail_taps(taps);
  Eigen::VectorXcd out = x;
  std::int64_t len = x.size();
  for (std::int64_t lvl = 0; lvl < levels; ++lvl) {
    dwt_level(out, len, taps, g);
    len /= 2;
  }
  return out;
}

Eigen::VectorXcd idwt_periodized(const Eigen::VectorXcd& coeffs,
                                 const std::vector<double>& taps,
                                 std::int64_t levels) {
  check_wavelet_args(coeffs.size(), levels, "idwt_periodized");
  Eigen::VectorXcd out = coeffs;
  if (levels == 0) return out;
  const std::vector<double> g = detail_taps(taps);
  std::int64_t len = coeffs.size() >> (levels - 1);
  for (std::int64_t lvl = 0; lvl < levels; ++lvl) {
    idwt_level(out, len, taps, g);
    len *= 2;
  }
  return out;
}

std::int64_t wavelet_padded_length(std::int64_t N) {
  if (N < 1) throw std::invalid_argument("wavelet_padded_length: N must be positive");
  std::int64_t p = 1;
  while (p < N) p *= 2;
  return p;
}

std::int64_t wavelet_max_levels(std::int64_t padded, std::size_t tap_count,
                                std::int64_t min_approx_len) {
  if (!is_pow2(padded)) {
    throw std::invalid_argument("wavelet_max_levels: length must be a power of two");
  }
  std::int64_t levels = 0;
  std::int64_t len = padded;
  while (len > min_approx_len && len % 2 == 0 &&
         len >= static_cast<std::int64_t>(tap_count)) {
    len /= 2;
    ++levels;
  }
  return levels;
}

// ---- factories ---------------------------------------------------------------

namespace {

void validate_transform(const SparsifyingTransform& psi, const char* who) {
  if (!operator_validation_enabled()) return;
  const double defect = dot_test(psi.op, 1, 0x5eedf00d);
  if (!(defect <= 1e-10)) {
    throw std::runtime_error(std::string(who) +
                             ": forward/adjoint failed the dot test");
  }
}

SparsifyingTransform wavelet_transform(TransformKind kind, std::int64_t N,
                                       std::int64_t depth) {
  if (N < 1) throw std::invalid_argument("wavelet transform: N must be positive");
  const std::vector<double>& taps =
      (kind == TransformKind::haar) ? haar_taps() : db2_taps();
  const std::int64_t min_approx = (kind == TransformKind::haar) ? 1 : 4;
  const std::int64_t padded = wavelet_padded_length(N);
  const std::int64_t max_levels =
      wavelet_max_levels(padded, taps.size(), min_approx);
  std::int64_t levels = (depth < 0) ? max_levels : depth;
  if (levels < 0 || levels > max_levels) {
    throw std::invalid_argument("wavelet transform: depth out of range");
  }

  SparsifyingTransform psi;
  psi.kind = kind;
  psi.levels = levels;
  psi.op.rows = N;
  psi.op.cols = padded;
  const std::vector<double> h = taps;
  // synthesis: inverse DWT on the padded length, then keep the first N rows;
  // adjoint: zero-pad the samples to the padded length, then DWT. Because the
  // padded transform is orthonormal, synthesis o adjoint is exactly the
  // identity on sample space even when padded > N.
  psi.op.forward = [h, levels, N, padded](const Eigen::VectorXcd& c)
      -> Eigen::VectorXcd {
    if (c.size() != padded) {
      throw std::invalid_argument("wavelet synthesis: coefficient length mismatch");
    }
    return idwt_periodized(c, h, levels).head(N);
  };
  psi.op.adjoint = [h, levels, N, padded](const Eigen::VectorXcd& y)
      -> Eigen::VectorXcd {
    if (y.size() != N) {
      throw std::invalid_argument("wavelet adjoint: sample length mismatch");
    }
    Eigen::VectorXcd pad = Eigen::VectorXcd::Zero(padded);
    pad.head(N) = y;
    return dwt_periodized(pad, h, levels);
  };
  validate_transform(psi, "wavelet transform");
  return psi;
}

}  // namespace

SparsifyingTransform dft_transform(std::int64_t N) {
  SparsifyingTransform psi;
  psi.kind = TransformKind::dft;
  psi.op = centered_dft_operator(N);
  return psi;
}

SparsifyingTransform dft_adjoint_transform(std::int64_t N) {
  SparsifyingTransform psi;
  psi.kind = TransformKind::dft_adjoint;
  LinearOperator F = centered_dft_operator(N);
  // swap the roles: forward applies the analysis map, adjoint the synthesis
  psi.op.rows = N;
  psi.op.cols = N;
  auto base = std::make_shared<LinearOperator>(std::move(F));
  psi.op.forward = [base](const Eigen::VectorXcd& x) { return base->adjoint(x); };
  psi.op.adjoint = [base](const Eigen::VectorXcd& y) { return base->forward(y); };
  return psi;
}

SparsifyingTransform identity_transform(std::int64_t N) {
  SparsifyingTransform psi;
  psi.kind = TransformKind::identity;
  psi.op = identity_operator(N);
  return psi;
}

SparsifyingTransform haar_inverse(std::int64_t N, std::int64_t depth) {
  return wavelet_transform(TransformKind::haar, N, depth);
}

SparsifyingTransform db2_inverse(std::int64_t N, std::int64_t depth) {
  return wavelet_transform(TransformKind::db2, N, depth);
}

SparsifyingTransform make_transform(TransformKind kind, std::int64_t N,
                                    std::int64_t depth) {
  switch (kind) {
    case TransformKind::dft: return dft_transform(N);
    case TransformKind::dft_adjoint: return dft_adjoint_transform(N);
    case TransformKind::identity: return identity_transform(N);
    case TransformKind::haar: return haar_inverse(N, depth);
    case TransformKind::db2: return db2_inverse(N, depth);
  }
  throw std::invalid_argument("make_transform: unknown kind");
}

// ---- DFT-incoherence ----------------------------------------------------------

namespace {

// Dense analysis matrix (coefficient row u-1, sample column p-1), built from
// an exact twiddle table; used to turn each gamma column into one gemv.
Eigen::MatrixXcd analysis_matrix(std::int64_t N) {
  const std::int64_t Nt = (N - 1) / 2;
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  Eigen::VectorXcd w(N);
  for (std::int64_t r = 0; r < N; ++r) {
    w[r] = unit_exp(static_cast<double>(r) / static_cast<double>(N));
  }
  Eigen::MatrixXcd mat(N, N);
  for (std::int64_t u = 1; u <= N; ++u) {
    const std::int64_t nu = u - Nt - 1;
    const double center = (nu % 2 == 0) ? 1.0 : -1.0;
    for (std::int64_t p = 1; p <= N; ++p) {
      std::int64_t idx = ((p - 1) * nu) % N;
      if (idx < 0) idx += N;
      mat(u - 1, p - 1) = w[idx] * center * scale;
    }
  }
  return mat;
}

}  // namespace

double gamma(SparsifyingTransform& psi, bool allow_large, int threads) {
  if (psi.cached_gamma) return *psi.cached_gamma;
  const std::int64_t N = psi.op.rows;
  const std::int64_t n = psi.op.cols;
  if (N < 1) throw std::invalid_argument("gamma: sample dimension must be positive");
  if (N > 4096 && !allow_large) {
    throw std::invalid_argument(
        "gamma: dense column sweep beyond N = 4096 is expensive; pass "
        "allow_large to override");
  }

  // Precompute the analysis matrix when it fits; otherwise fall back to the
  // loop evaluator column by column.
  const bool dense = N <= 2048;
  Eigen::MatrixXcd fstar;
  if (dense) fstar = analysis_matrix(N);

  auto column_norm = [&](std::int64_t l) -> double {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e[l] = 1.0;
    const Eigen::VectorXcd col = psi.op.forward(e);
    const Eigen::VectorXcd c = dense ? Eigen::VectorXcd(fstar * col)
                                     : centered_dft_adjoint(col);
    return c.lpNorm<1>();
  };

  const int workers = std::max(
      1, std::min<int>(threads, static_cast<int>(std::min<std::int64_t>(n, 64))));
  double best = 0.0;
  if (workers == 1) {
    for (std::int64_t l = 0; l < n; ++l) best = std::max(best, column_norm(l));
  } else {
    // static contiguous chunks; each worker keeps a local max and the final
    // reduction runs in worker order, so the result is thread-count invariant
    std::vector<double> local(static_cast<std::size_t>(workers), 0.0);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (int wi = 0; wi < workers; ++wi) {
      pool.emplace_back([&, wi] {
        const std::int64_t lo = wi * chunk;
        const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
        double m = 0.0;
        for (std::int64_t l = lo; l < hi; ++l) m = std::max(m, column_norm(l));
        local[static_cast<std::size_t>(wi)] = m;
      });
    }
    for (auto& t : pool) t.join();
    for (double m : local) best = std::max(best, m);
  }
  psi.cached_gamma = best;
  return best;
}

// ---- extreme singular values ---------------------------------------------------

namespace {

Eigen::VectorXcd random_unit(Eigen::Index d, Rng& rng) {
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    v[i] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  }
  const double nrm = v.norm();
  return (nrm > 0.0) ? Eigen::VectorXcd(v / nrm) : v;
}

}  // namespace

SingularBounds singular_bounds_of(const LinearOperator& A, int iters,
                                  std::uint64_t seed) {
  if (iters < 50) {
    throw std::invalid_argument("singular_bounds: need at least 50 iterations");
  }
  const Eigen::Index d = std::min(A.rows, A.cols);
  const bool gram_on_rows = (A.rows <= A.cols);
  // Gram operator on the smaller side: AA* when the matrix is wide (so that
  // alpha is the smallest of the min(N, n) singular values), A*A otherwise.
  auto gram = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return gram_on_rows ? A.forward(A.adjoint(v)) : A.adjoint(A.forward(v));
  };

  SingularBounds out;

  if (d <= 600) {
    // small problems: exact dense decomposition of the Gram matrix
    const Eigen::MatrixXcd M = dense_matrix(A);
    const Eigen::MatrixXcd G =
        gram_on_rows ? Eigen::MatrixXcd(M * M.adjoint())
                     : Eigen::MatrixXcd(M.adjoint() * M);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G);
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const double lo = std::max(0.0, lam.minCoeff());
    const double hi = std::max(0.0, lam.maxCoeff());
    out.alpha = std::sqrt(lo);
    out.beta = std::sqrt(hi);
    const Eigen::VectorXcd vlo = eig.eigenvectors().col(0);
    const Eigen::VectorXcd vhi = eig.eigenvectors().col(d - 1);
    out.alpha_residual = (G * vlo - lam.minCoeff() * vlo).norm();
    out.beta_residual = (G * vhi - lam.maxCoeff() * vhi).norm();
    out.converged = true;
    return out;
  }

  Rng rng(seed);

  // largest eigenvalue of the Gram by plain power iteration
  Eigen::VectorXcd v = random_unit(d, rng);
  double lam_max = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd w = gram(v);
    const double nrm = w.norm();
    if (nrm == 0.0) break;  // A v = 0 for every probe direction
    lam_max = std::real((v.adjoint() * w)(0));
    v = w / nrm;
  }
  {
    const Eigen::VectorXcd w = gram(v);
    lam_max = std::real((v.adjoint() * w)(0));
    out.beta_residual = (w - lam_max * v).norm();
  }
  out.beta = std::sqrt(std::max(0.0, lam_max));

  // smallest eigenvalue via the spectrum flip H = mu I - G with mu just above
  // lambda_max, so the top of H is mu - lambda_min
  const double mu = lam_max * (1.0 + 1e-6) + 1e-12;
  Eigen::VectorXcd u = random_unit(d, rng);
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd w = mu * u - gram(u);
    const double nrm = w.norm();
    if (nrm == 0.0) break;
    u = w / nrm;
  }
  double lam_min = 0.0;
  {
    const Eigen::VectorXcd w = gram(u);
    lam_min = std::real((u.adjoint() * w)(0));
    out.alpha_residual = (w - lam_min * u).norm();
  }
  out.alpha = std::sqrt(std::max(0.0, lam_min));

  const double tol = 1e-8 * std::max(1.0, lam_max);
  out.converged = (out.alpha_residual <= tol) && (out.beta_residual <= tol);
  return out;
}

SingularBounds singular_bounds(SparsifyingTransform& psi, int iters,
                               std::uint64_t seed) {
  SingularBounds out = singular_bounds_of(psi.op, iters, seed);
  psi.cached_alpha_beta = std::make_pair(out.alpha, out.beta);
  return out;
}

// ---- best s-term approximation --------------------------------------------------

double best_sparse_error(const Eigen::VectorXcd& g, std::int64_t s) {
  if (s < 0) throw std::invalid_argument("best_sparse_error: s must be nonnegative");
  const std::int64_t n = g.size();
  if (s >= n) return 0.0;
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // stable sort by descending magnitude: ties keep the lower index in the
  // retained set
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    return std::abs(g[a]) > std::abs(g[b]);
  });
  double tail = 0.0;
  for (std::int64_t r = s; r < n; ++r) {
    tail += std::abs(g[order[static_cast<std::size_t>(r)]]);
  }
  return tail;
}

}  // namespace offgrid
