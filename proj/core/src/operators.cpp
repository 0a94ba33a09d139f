#include "offgrid/operators.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "offgrid/model.hpp"
#include "offgrid/rng.hpp"

namespace offgrid {

namespace {

std::atomic<bool> g_validate_ops{true};

void require_odd(std::int64_t N, const char* who) {
  if (N < 1 || N % 2 == 0) {
    throw std::invalid_argument(std::string(who) + ": N must be odd and positive");
  }
}

// The centered DFT pair is unitary for every length (any N consecutive
// integer frequencies work), and the wavelet diagnostics need it at
// power-of-two lengths; only the sampling-theory operators insist on odd N.
void require_positive(std::int64_t N, const char* who) {
  if (N < 1) {
    throw std::invalid_argument(std::string(who) + ": N must be positive");
  }
}

Eigen::VectorXcd random_probe(Eigen::Index n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  }
  return v;
}

// One-probe construction check; throws if the pair is not adjoint-consistent.
void validate_operator(const LinearOperator& A, const char* who) {
  if (!operator_validation_enabled()) return;
  const double defect = dot_test(A, 1, 0x5eedf00d);
  if (!(defect <= 1e-10)) {
    throw std::runtime_error(std::string(who) +
                             ": forward/adjoint failed the dot test");
  }
}

// Dense caches make desk-scale solves fast while keeping the same contract;
// large problems fall back to the O(N^2)/O(mN) loops.
constexpr std::int64_t kDenseCacheEntries = 1 << 23;  // 8M complex = 128 MiB

// Matrix of the analysis map (samples -> coefficients), or nullptr when the
// problem is too large to cache. Row u-1, column p-1 holds the conjugate
// phase e(-t_p (u - Nt - 1)) / sqrt(N), built from an exact twiddle table,
// so bin u accumulates the inner product against the mode of frequency
// u - Nt - 1.
std::shared_ptr<Eigen::MatrixXcd> centered_dft_dense(std::int64_t N) {
  if (N * N > kDenseCacheEntries) return nullptr;
  const std::int64_t Nt = (N - 1) / 2;
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  Eigen::VectorXcd w(N);
  for (std::int64_t r = 0; r < N; ++r) {
    w[r] = unit_exp(-static_cast<double>(r) / static_cast<double>(N));
  }
  auto mat = std::make_shared<Eigen::MatrixXcd>(N, N);
  for (std::int64_t u = 1; u <= N; ++u) {
    const std::int64_t nu = u - Nt - 1;
    const double center = (nu % 2 == 0) ? 1.0 : -1.0;  // e(nu/2)
    for (std::int64_t p = 1; p <= N; ++p) {
      std::int64_t idx = ((p - 1) * nu) % N;
      if (idx < 0) idx += N;
      (*mat)(u - 1, p - 1) = w[idx] * center * scale;
    }
  }
  return mat;
}

}  // namespace

void set_operator_validation(bool enabled) { g_validate_ops.store(enabled); }
bool operator_validation_enabled() { return g_validate_ops.load(); }

Eigen::VectorXcd LinearOperator::apply(const Eigen::VectorXcd& x) const {
  if (x.size() != cols) {
    throw std::invalid_argument("LinearOperator::apply: input length mismatch");
  }
  return forward(x);
}

Eigen::VectorXcd LinearOperator::apply_adjoint(const Eigen::VectorXcd& y) const {
  if (y.size() != rows) {
    throw std::invalid_argument("LinearOperator::apply_adjoint: input length mismatch");
  }
  return adjoint(y);
}

double dot_test(const LinearOperator& A, int probes, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const Eigen::VectorXcd u = random_probe(A.cols, rng);
    const Eigen::VectorXcd v = random_probe(A.rows, rng);
    const Eigen::VectorXcd Au = A.forward(u);
    const Eigen::VectorXcd Atv = A.adjoint(v);
    const cplx lhs = (v.adjoint() * Au)(0);   // <Au, v> in the same convention
    const cplx rhs = (Atv.adjoint() * u)(0);  // <u, A*v>
    const double scale = Au.norm() * v.norm() + u.norm() * Atv.norm();
    const double defect = std::abs(lhs - rhs) / (scale > 0.0 ? scale : 1.0);
    worst = std::max(worst, defect);
  }
  return worst;
}

// ---- centered DFT ----------------------------------------------------------

Eigen::VectorXcd centered_dft_adjoint(const Eigen::VectorXcd& f) {
  const std::int64_t N = f.size();
  require_positive(N, "centered_dft_adjoint");
  const std::int64_t Nt = (N - 1) / 2;
  // twiddle table w[r] = e(-r / N); -t_p (u-Nt-1) = -(p-1)(u-Nt-1)/N + (u-Nt-1)/2
  Eigen::VectorXcd w(N);
  for (std::int64_t r = 0; r < N; ++r) {
    w[r] = unit_exp(-static_cast<double>(r) / static_cast<double>(N));
  }
  Eigen::VectorXcd out(N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (std::int64_t u = 1; u <= N; ++u) {
    const std::int64_t nu = u - Nt - 1;  // frequency of output bin u
    cplx acc(0.0, 0.0);
    for (std::int64_t p = 1; p <= N; ++p) {
      // e(-t_p nu) = e(-(p-1) nu / N) * e(nu/2); the first factor via table
      std::int64_t idx = ((p - 1) * nu) % N;
      if (idx < 0) idx += N;
      acc += f[p - 1] * w[idx];
    }
    // e(nu/2) = (-1)^nu
    const double center = (nu % 2 == 0) ? 1.0 : -1.0;
    out[u - 1] = acc * center * scale;
  }
  return out;
}

Eigen::VectorXcd centered_dft_forward(const Eigen::VectorXcd& g) {
  const std::int64_t N = g.size();
  require_positive(N, "centered_dft_forward");
  const std::int64_t Nt = (N - 1) / 2;
  Eigen::VectorXcd w(N);
  for (std::int64_t r = 0; r < N; ++r) {
    w[r] = unit_exp(static_cast<double>(r) / static_cast<double>(N));
  }
  Eigen::VectorXcd out(N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (std::int64_t p = 1; p <= N; ++p) {
    cplx acc(0.0, 0.0);
    for (std::int64_t u = 1; u <= N; ++u) {
      const std::int64_t nu = u - Nt - 1;
      std::int64_t idx = ((p - 1) * nu) % N;
      if (idx < 0) idx += N;
      const double center = (nu % 2 == 0) ? 1.0 : -1.0;
      acc += g[u - 1] * w[idx] * center;
    }
    out[p - 1] = acc * scale;
  }
  return out;
}

LinearOperator centered_dft_operator(std::int64_t N) {
  require_positive(N, "centered_dft_operator");
  LinearOperator A;
  A.rows = N;
  A.cols = N;
  if (auto mat = centered_dft_dense(N)) {
    // unitary: synthesis is the conjugate transpose of the analysis matrix
    A.forward = [mat](const Eigen::VectorXcd& g) -> Eigen::VectorXcd {
      return mat->adjoint() * g;
    };
    A.adjoint = [mat](const Eigen::VectorXcd& f) -> Eigen::VectorXcd {
      return (*mat) * f;
    };
  } else {
    A.forward = [](const Eigen::VectorXcd& g) { return centered_dft_forward(g); };
    A.adjoint = [](const Eigen::VectorXcd& f) { return centered_dft_adjoint(f); };
  }
  validate_operator(A, "centered_dft_operator");
  return A;
}

// ---- NDFT -------------------------------------------------------------------

Eigen::VectorXcd ndft_apply(const NonuniformGrid& grid, const Eigen::VectorXcd& v,
                            std::int64_t N) {
  require_odd(N, "ndft_apply");
  if (v.size() != N) throw std::invalid_argument("ndft_apply: input length mismatch");
  const std::int64_t Nt = (N - 1) / 2;
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  Eigen::VectorXcd out(grid.m);
  for (std::int64_t k = 0; k < grid.m; ++k) {
    const double t = grid.points[static_cast<std::size_t>(k)];
    // direct per-entry evaluation, no phase recurrences: this operator is the
    // exactness reference, so no accumulated rounding is acceptable
    cplx acc(0.0, 0.0);
    for (std::int64_t u = 1; u <= N; ++u) {
      acc += v[u - 1] * unit_exp(t * static_cast<double>(u - Nt - 1));
    }
    out[k] = acc * scale;
  }
  return out;
}

namespace {

Eigen::VectorXcd ndft_adjoint_apply(const NonuniformGrid& grid,
                                    const Eigen::VectorXcd& y, std::int64_t N) {
  if (y.size() != grid.m) {
    throw std::invalid_argument("ndft_adjoint: input length mismatch");
  }
  const std::int64_t Nt = (N - 1) / 2;
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(N);
  for (std::int64_t k = 0; k < grid.m; ++k) {
    const double t = grid.points[static_cast<std::size_t>(k)];
    const cplx yk = y[k];
    for (std::int64_t u = 1; u <= N; ++u) {
      out[u - 1] += yk * unit_exp(-t * static_cast<double>(u - Nt - 1));
    }
  }
  return out * scale;
}

struct NdftCache {
  std::shared_ptr<Eigen::MatrixXcd> mat;  // m x N or empty
};

NdftCache build_ndft_cache(const NonuniformGrid& grid, std::int64_t N) {
  NdftCache cache;
  if (grid.m * N <= kDenseCacheEntries) {
    auto mat = std::make_shared<Eigen::MatrixXcd>(grid.m, N);
    const std::int64_t Nt = (N - 1) / 2;
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::int64_t k = 0; k < grid.m; ++k) {
      const double t = grid.points[static_cast<std::size_t>(k)];
      for (std::int64_t u = 1; u <= N; ++u) {
        (*mat)(k, u - 1) =
            scale * unit_exp(t * static_cast<double>(u - Nt - 1));
      }
    }
    cache.mat = std::move(mat);
  }
  return cache;
}

}  // namespace

LinearOperator ndft_operator(const NonuniformGrid& grid, std::int64_t N) {
  require_odd(N, "ndft_operator");
  LinearOperator A;
  A.rows = grid.m;
  A.cols = N;
  NdftCache cache = build_ndft_cache(grid, N);
  if (cache.mat) {
    auto mat = cache.mat;
    A.forward = [mat](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
      return (*mat) * v;
    };
    A.adjoint = [mat](const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
      return mat->adjoint() * y;
    };
  } else {
    NonuniformGrid g = grid;
    A.forward = [g, N](const Eigen::VectorXcd& v) { return ndft_apply(g, v, N); };
    A.adjoint = [g, N](const Eigen::VectorXcd& y) {
      return ndft_adjoint_apply(g, y, N);
    };
  }
  validate_operator(A, "ndft_operator");
  return A;
}

// ---- Dirichlet kernel -------------------------------------------------------

double dirichlet_kernel(double theta, std::int64_t N) {
  const double s = sinpi(theta);
  const double Nd = static_cast<double>(N);
  if (std::fabs(s) < 1e-12) {
    // removable singularity: limit is N cos(N pi z)/cos(pi z) = +-N; for odd
    // N the two cosines carry the same sign, so the value is +N at every
    // integer theta. Evaluate the ratio anyway for continuity just off it.
    return cospi(Nd * theta) / cospi(theta);
  }
  return sinpi(Nd * theta) / (Nd * s);
}

DirichletKernelOp make_dirichlet(const NonuniformGrid& grid, std::int64_t N,
                                 DirichletRepresentation repr) {
  require_odd(N, "make_dirichlet");
  DirichletKernelOp op;
  op.grid = grid;
  op.N = N;
  op.representation = repr;
  return op;
}

namespace {

Eigen::VectorXcd dirichlet_direct_forward(const DirichletKernelOp& op,
                                          const Eigen::VectorXcd& f) {
  const std::int64_t N = op.N;
  Eigen::VectorXcd out(op.grid.m);
  for (std::int64_t k = 0; k < op.grid.m; ++k) {
    const double t = op.grid.points[static_cast<std::size_t>(k)];
    cplx acc(0.0, 0.0);
    for (std::int64_t p = 1; p <= N; ++p) {
      acc += f[p - 1] * dirichlet_kernel(t - uniform_grid_point(p, N), N);
    }
    out[k] = acc;
  }
  return out;
}

Eigen::VectorXcd dirichlet_direct_adjoint(const DirichletKernelOp& op,
                                          const Eigen::VectorXcd& y) {
  const std::int64_t N = op.N;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(N);
  for (std::int64_t k = 0; k < op.grid.m; ++k) {
    const double t = op.grid.points[static_cast<std::size_t>(k)];
    const cplx yk = y[k];
    for (std::int64_t p = 1; p <= N; ++p) {
      out[p - 1] += yk * dirichlet_kernel(t - uniform_grid_point(p, N), N);
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXcd dirichlet_apply(const DirichletKernelOp& op,
                                 const Eigen::VectorXcd& f) {
  if (f.size() != op.N) {
    throw std::invalid_argument("dirichlet_apply: input length mismatch");
  }
  if (op.representation == DirichletRepresentation::direct_sum) {
    return dirichlet_direct_forward(op, f);
  }
  return ndft_apply(op.grid, centered_dft_adjoint(f), op.N);
}

LinearOperator dirichlet_operator(const DirichletKernelOp& op) {
  LinearOperator A;
  A.rows = op.grid.m;
  A.cols = op.N;
  if (op.representation == DirichletRepresentation::direct_sum) {
    DirichletKernelOp copy = op;
    A.forward = [copy](const Eigen::VectorXcd& f) {
      return dirichlet_direct_forward(copy, f);
    };
    A.adjoint = [copy](const Eigen::VectorXcd& y) {
      return dirichlet_direct_adjoint(copy, y);
    };
  } else {
    // S = NDFT o F*; adjoint = F o NDFT*. Reuse the (possibly dense-cached)
    // NDFT operator, and keep the two stages separate so the cost profile of
    // this representation stays one length-N transform plus one m-point one.
    auto ndft = std::make_shared<LinearOperator>(ndft_operator(op.grid, op.N));
    if (auto fstar = centered_dft_dense(op.N)) {
      A.forward = [ndft, fstar](const Eigen::VectorXcd& f) {
        return ndft->forward((*fstar) * f);
      };
      A.adjoint = [ndft, fstar](const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        return fstar->adjoint() * ndft->adjoint(y);
      };
    } else {
      A.forward = [ndft](const Eigen::VectorXcd& f) {
        return ndft->forward(centered_dft_adjoint(f));
      };
      A.adjoint = [ndft](const Eigen::VectorXcd& y) {
        return centered_dft_forward(ndft->adjoint(y));
      };
    }
  }
  validate_operator(A, "dirichlet_operator");
  return A;
}

// ---- combinators ------------------------------------------------------------

LinearOperator compose(const LinearOperator& A, const LinearOperator& B) {
  if (A.cols != B.rows) {
    throw std::invalid_argument("compose: inner dimensions do not match");
  }
  LinearOperator C;
  C.rows = A.rows;
  C.cols = B.cols;
  auto a = std::make_shared<LinearOperator>(A);
  auto b = std::make_shared<LinearOperator>(B);
  C.forward = [a, b](const Eigen::VectorXcd& x) { return a->forward(b->forward(x)); };
  C.adjoint = [a, b](const Eigen::VectorXcd& y) { return b->adjoint(a->adjoint(y)); };
  validate_operator(C, "compose");
  return C;
}

LinearOperator scale_operator(const LinearOperator& A, cplx factor) {
  LinearOperator C;
  C.rows = A.rows;
  C.cols = A.cols;
  auto a = std::make_shared<LinearOperator>(A);
  const cplx cf = std::conj(factor);
  C.forward = [a, factor](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
    return factor * a->forward(x);
  };
  C.adjoint = [a, cf](const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    return cf * a->adjoint(y);
  };
  return C;
}

LinearOperator identity_operator(Eigen::Index n) {
  LinearOperator I;
  I.rows = n;
  I.cols = n;
  I.forward = [](const Eigen::VectorXcd& x) { return x; };
  I.adjoint = [](const Eigen::VectorXcd& y) { return y; };
  return I;
}

LinearOperator concat_acquisitions(const std::vector<DirichletKernelOp>& ops) {
  if (ops.empty()) {
    throw std::invalid_argument("concat_acquisitions: need at least one operator");
  }
  const std::int64_t N = ops.front().N;
  Eigen::Index rows = 0;
  for (const auto& op : ops) {
    if (op.N != N) {
      throw std::invalid_argument("concat_acquisitions: all operators must share N");
    }
    rows += op.grid.m;
  }
  auto blocks = std::make_shared<std::vector<LinearOperator>>();
  blocks->reserve(ops.size());
  for (const auto& op : ops) blocks->push_back(dirichlet_operator(op));

  LinearOperator C;
  C.rows = rows;
  C.cols = N;
  C.forward = [blocks, rows](const Eigen::VectorXcd& f) {
    Eigen::VectorXcd out(rows);
    Eigen::Index at = 0;
    for (const auto& blk : *blocks) {
      out.segment(at, blk.rows) = blk.forward(f);
      at += blk.rows;
    }
    return out;
  };
  C.adjoint = [blocks, N](const Eigen::VectorXcd& y) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(N);
    Eigen::Index at = 0;
    for (const auto& blk : *blocks) {
      out += blk.adjoint(y.segment(at, blk.rows));
      at += blk.rows;
    }
    return out;
  };
  validate_operator(C, "concat_acquisitions");
  return C;
}

// ---- continuous evaluation ----------------------------------------------------

cplx continuous_eval(const Eigen::VectorXcd& coeff_vec, double x) {
  const std::int64_t N = coeff_vec.size();
  require_odd(N, "continuous_eval");
  const std::int64_t Nt = (N - 1) / 2;
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  cplx acc(0.0, 0.0);
  for (std::int64_t u = 1; u <= N; ++u) {
    acc += coeff_vec[u - 1] * unit_exp(x * static_cast<double>(u - Nt - 1));
  }
  return acc * scale;
}

// ---- dense views --------------------------------------------------------------

Eigen::MatrixXcd dense_matrix(const LinearOperator& A, std::int64_t max_entries) {
  if (static_cast<std::int64_t>(A.rows) * static_cast<std::int64_t>(A.cols) >
      max_entries) {
    throw std::invalid_argument("dense_matrix: operator exceeds the dense size cap");
  }
  Eigen::MatrixXcd M(A.rows, A.cols);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(A.cols);
  for (Eigen::Index j = 0; j < A.cols; ++j) {
    e[j] = 1.0;
    M.col(j) = A.forward(e);
    e[j] = 0.0;
  }
  return M;
}

}  // namespace offgrid
