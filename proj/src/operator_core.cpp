#include "qprep/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qprep {

namespace {

size_t idx(int dim, int r, int c) { return static_cast<size_t>(r) * dim + c; }

std::string dim_mismatch_msg(const char* what, int a, int b) {
  std::ostringstream os;
  os << what << ": dimension mismatch (" << a << " vs " << b << ")";
  return os.str();
}

}  // namespace

HermitianOperator::HermitianOperator(int dim, std::vector<cplx> entries) : dim_(dim) {
  if (dim < 1) throw invariant_error("HermitianOperator: dim must be >= 1");
  if (entries.size() != static_cast<size_t>(dim) * dim)
    throw invariant_error("HermitianOperator: entry count does not match dim*dim");
  for (int r = 0; r < dim; ++r) {
    for (int c = r; c < dim; ++c) {
      const cplx asym = entries[idx(dim, r, c)] - std::conj(entries[idx(dim, c, r)]);
      if (std::abs(asym) > kHermitianIngestTol) {
        std::ostringstream os;
        os << "HermitianOperator: asymmetry " << std::abs(asym) << " at (" << r << "," << c
           << ") exceeds " << kHermitianIngestTol;
        throw invariant_error(os.str());
      }
    }
  }
  // Symmetrize away ingestion rounding.
  entries_.resize(entries.size());
  for (int r = 0; r < dim; ++r) {
    entries_[idx(dim, r, r)] = cplx(entries[idx(dim, r, r)].real(), 0.0);
    for (int c = r + 1; c < dim; ++c) {
      const cplx v = 0.5 * (entries[idx(dim, r, c)] + std::conj(entries[idx(dim, c, r)]));
      entries_[idx(dim, r, c)] = v;
      entries_[idx(dim, c, r)] = std::conj(v);
    }
  }
}

HermitianOperator hermitian_unchecked(int dim, std::vector<cplx> entries) {
  HermitianOperator a;
  a.dim_ = dim;
  a.entries_ = std::move(entries);
  return a;
}

HermitianOperator HermitianOperator::zero(int dim) {
  if (dim < 1) throw invariant_error("HermitianOperator: dim must be >= 1");
  return hermitian_unchecked(dim, std::vector<cplx>(static_cast<size_t>(dim) * dim));
}

HermitianOperator HermitianOperator::identity(int dim) {
  HermitianOperator a = zero(dim);
  std::vector<cplx> e = a.entries();
  for (int r = 0; r < dim; ++r) e[idx(dim, r, r)] = 1.0;
  return hermitian_unchecked(dim, std::move(e));
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  HermitianOperator a = zero(n);
  std::vector<cplx> e = a.entries();
  for (int r = 0; r < n; ++r) e[idx(n, r, r)] = values[r];
  return hermitian_unchecked(n, std::move(e));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim_ != other.dim_) throw invariant_error(dim_mismatch_msg("operator+", dim_, other.dim_));
  std::vector<cplx> e(entries_.size());
  for (size_t i = 0; i < e.size(); ++i) e[i] = entries_[i] + other.entries_[i];
  return hermitian_unchecked(dim_, std::move(e));
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim_ != other.dim_) throw invariant_error(dim_mismatch_msg("operator-", dim_, other.dim_));
  std::vector<cplx> e(entries_.size());
  for (size_t i = 0; i < e.size(); ++i) e[i] = entries_[i] - other.entries_[i];
  return hermitian_unchecked(dim_, std::move(e));
}

HermitianOperator HermitianOperator::operator*(double scale) const {
  std::vector<cplx> e(entries_.size());
  for (size_t i = 0; i < e.size(); ++i) e[i] = entries_[i] * scale;
  return hermitian_unchecked(dim_, std::move(e));
}

double trace(const HermitianOperator& a) {
  double t = 0.0;
  for (int r = 0; r < a.dim(); ++r) t += a(r, r).real();
  return t;
}

double hs_norm(const HermitianOperator& a) {
  double s = 0.0;
  for (const cplx& v : a.entries()) s += std::norm(v);
  return std::sqrt(s);
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw invariant_error(dim_mismatch_msg("hs_inner", a.dim(), b.dim()));
  // tr(AB) = sum_{rc} A_rc B_cr = sum_{rc} A_rc conj(B_rc) for Hermitian B.
  double s = 0.0;
  const int n = a.dim();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const cplx x = a(r, c) * b(c, r);
      s += x.real();
    }
  return s;
}

std::vector<cplx> Spectrum::eigenvector(int j) const {
  std::vector<cplx> v(dim);
  for (int r = 0; r < dim; ++r) v[r] = vector_entry(r, j);
  return v;
}

Spectrum eig(const HermitianOperator& input, int max_sweeps) {
  const int n = input.dim();
  std::vector<cplx> a = input.entries();
  std::vector<cplx> u(static_cast<size_t>(n) * n, cplx(0.0));
  for (int r = 0; r < n; ++r) u[idx(n, r, r)] = 1.0;

  const double scale = std::max(1.0, hs_norm(input));
  const double stop = 1e-15 * scale;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += 2.0 * std::norm(a[idx(n, p, q)]);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > stop; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx g = a[idx(n, p, q)];
        const double r = std::abs(g);
        if (r <= 1e-18 * scale) continue;
        const cplx phase = g / r;  // g = r * e^{i phi}
        const double alpha = a[idx(n, p, p)].real();
        const double beta = a[idx(n, q, q)].real();
        // Zero the (p,q) entry: t = s/c solves t^2 + 2*tau*t - 1 = 0,
        // smaller-magnitude root for stability.
        const double tau = (alpha - beta) / (2.0 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx sp = s * phase;        // enters column q
        const cplx spc = std::conj(sp);   // enters column p

        // A <- U* A U with U the identity outside the (p,q) plane,
        // U_pp = c, U_pq = -s e^{i phi}, U_qp = s e^{-i phi}, U_qq = c.
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a[idx(n, k, p)];
          const cplx akq = a[idx(n, k, q)];
          a[idx(n, k, p)] = c * akp + spc * akq;
          a[idx(n, k, q)] = -sp * akp + c * akq;
          a[idx(n, p, k)] = std::conj(a[idx(n, k, p)]);
          a[idx(n, q, k)] = std::conj(a[idx(n, k, q)]);
        }
        const double app = alpha * c * c + beta * s * s + 2.0 * s * c * r;
        const double aqq = alpha * s * s + beta * c * c - 2.0 * s * c * r;
        a[idx(n, p, p)] = app;
        a[idx(n, q, q)] = aqq;
        a[idx(n, p, q)] = 0.0;
        a[idx(n, q, p)] = 0.0;

        for (int k = 0; k < n; ++k) {
          const cplx ukp = u[idx(n, k, p)];
          const cplx ukq = u[idx(n, k, q)];
          u[idx(n, k, p)] = c * ukp + spc * ukq;
          u[idx(n, k, q)] = -sp * ukp + c * ukq;
        }
      }
    }
  }
  if (off_norm() > stop) {
    std::ostringstream os;
    os << "eig: Jacobi iteration did not converge within " << max_sweeps << " sweeps";
    throw invariant_error(os.str());
  }

  Spectrum spec;
  spec.dim = n;
  spec.eigenvalues.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int k = 0; k < n; ++k) diag[k] = a[idx(n, k, k)].real();
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] > diag[y]; });
  spec.eigenvectors.resize(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    spec.eigenvalues[j] = diag[order[j]];
    for (int r = 0; r < n; ++r) spec.eigenvectors[idx(n, r, j)] = u[idx(n, r, order[j])];
  }

  // Spectrum invariants: reconstruction residual and eigenvector orthonormality.
  double resid = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx rec = 0.0;
      for (int k = 0; k < n; ++k)
        rec += spec.eigenvalues[k] * spec.vector_entry(r, k) * std::conj(spec.vector_entry(c, k));
      resid += std::norm(rec - input(r, c));
    }
  if (std::sqrt(resid) > 1e-10 * scale)
    throw invariant_error("eig: reconstruction residual above 1e-10 * max(1, ||A||_HS)");
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      cplx g = 0.0;
      for (int r = 0; r < n; ++r)
        g += std::conj(spec.vector_entry(r, j)) * spec.vector_entry(r, k);
      if (std::abs(g - (j == k ? 1.0 : 0.0)) > 1e-10)
        throw invariant_error("eig: eigenvector columns not orthonormal within 1e-10");
    }
  return spec;
}

double min_eigenvalue(const HermitianOperator& a) { return eig(a).eigenvalues.back(); }
double max_eigenvalue(const HermitianOperator& a) { return eig(a).eigenvalues.front(); }

HermitianOperator spectral_transform(const HermitianOperator& a,
                                     const std::function<double(double)>& f) {
  const Spectrum s = eig(a);
  const int n = a.dim();
  std::vector<cplx> e(static_cast<size_t>(n) * n, cplx(0.0));
  for (int k = 0; k < n; ++k) {
    const double fk = f(s.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        e[idx(n, r, c)] += fk * s.vector_entry(r, k) * std::conj(s.vector_entry(c, k));
  }
  // Clean the numerical skew before rewrapping.
  for (int r = 0; r < n; ++r) {
    e[idx(n, r, r)] = cplx(e[idx(n, r, r)].real(), 0.0);
    for (int c = r + 1; c < n; ++c) {
      const cplx v = 0.5 * (e[idx(n, r, c)] + std::conj(e[idx(n, c, r)]));
      e[idx(n, r, c)] = v;
      e[idx(n, c, r)] = std::conj(v);
    }
  }
  return hermitian_unchecked(n, std::move(e));
}

HermitianOperator psd_part(const HermitianOperator& a) {
  return spectral_transform(a, [](double x) { return x > 0.0 ? x : 0.0; });
}

HermitianOperator clip_spectrum(const HermitianOperator& a, double lo, double hi) {
  return spectral_transform(a, [lo, hi](double x) { return std::clamp(x, lo, hi); });
}

bool is_psd(const HermitianOperator& a, double tol) {
  return min_eigenvalue(a) >= -tol;
}

bool in_effect_interval(const HermitianOperator& a, double tol) {
  const Spectrum s = eig(a);
  return s.eigenvalues.back() >= -tol && s.eigenvalues.front() <= 1.0 + tol;
}

HermitianOperator unitary_conjugate(const HermitianOperator& a, const std::vector<cplx>& u) {
  const int n = a.dim();
  if (u.size() != static_cast<size_t>(n) * n)
    throw invariant_error("unitary_conjugate: unitary size does not match operator dim");
  // B = U A U*
  std::vector<cplx> ua(static_cast<size_t>(n) * n, cplx(0.0));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const cplx urk = u[idx(n, r, k)];
      if (urk == cplx(0.0)) continue;
      for (int c = 0; c < n; ++c) ua[idx(n, r, c)] += urk * a(k, c);
    }
  std::vector<cplx> b(static_cast<size_t>(n) * n, cplx(0.0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx v = 0.0;
      for (int k = 0; k < n; ++k) v += ua[idx(n, r, k)] * std::conj(u[idx(n, c, k)]);
      b[idx(n, r, c)] = v;
    }
  for (int r = 0; r < n; ++r) {
    b[idx(n, r, r)] = cplx(b[idx(n, r, r)].real(), 0.0);
    for (int c = r + 1; c < n; ++c) {
      const cplx v = 0.5 * (b[idx(n, r, c)] + std::conj(b[idx(n, c, r)]));
      b[idx(n, r, c)] = v;
      b[idx(n, c, r)] = std::conj(v);
    }
  }
  return hermitian_unchecked(n, std::move(b));
}

double commutator_hs_norm(const HermitianOperator& f, const HermitianOperator& g) {
  if (f.dim() != g.dim())
    throw invariant_error(dim_mismatch_msg("commutator_hs_norm", f.dim(), g.dim()));
  const int n = f.dim();
  double s = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx fg = 0.0, gf = 0.0;
      for (int k = 0; k < n; ++k) {
        fg += f(r, k) * g(k, c);
        gf += g(r, k) * f(k, c);
      }
      s += std::norm(fg - gf);
    }
  return std::sqrt(s);
}

HermitianOperator projector(const std::vector<cplx>& v) {
  const int n = static_cast<int>(v.size());
  double norm2 = 0.0;
  for (const cplx& x : v) norm2 += std::norm(x);
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw invariant_error("projector: input vector is not normalized within 1e-10");
  std::vector<cplx> e(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) e[idx(n, r, c)] = v[r] * std::conj(v[c]);
  return hermitian_unchecked(n, std::move(e));
}

State::State(HermitianOperator op, double tol) : op_(std::move(op)) {
  if (!is_psd(op_, tol)) throw invariant_error("State: operator is not positive semidefinite");
  if (std::abs(trace(op_) - 1.0) > tol)
    throw invariant_error("State: trace differs from 1 beyond tolerance");
}

Effect::Effect(HermitianOperator op, double tol) : op_(std::move(op)) {
  if (!in_effect_interval(op_, tol))
    throw invariant_error("Effect: spectrum not contained in [0, 1] within tolerance");
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

cplx Rng::gaussian_cplx() {
  const double re = gaussian();
  const double im = gaussian();
  return cplx(re, im);
}

HermitianOperator random_hermitian(int dim, Rng& rng) {
  std::vector<cplx> e(static_cast<size_t>(dim) * dim);
  for (int r = 0; r < dim; ++r) {
    e[idx(dim, r, r)] = rng.gaussian();
    for (int c = r + 1; c < dim; ++c) {
      const cplx v = rng.gaussian_cplx() / std::sqrt(2.0);
      e[idx(dim, r, c)] = v;
      e[idx(dim, c, r)] = std::conj(v);
    }
  }
  return hermitian_unchecked(dim, std::move(e));
}

std::vector<cplx> random_unit_vector(int dim, Rng& rng) {
  std::vector<cplx> v(dim);
  double norm2 = 0.0;
  do {
    for (int r = 0; r < dim; ++r) v[r] = rng.gaussian_cplx();
    norm2 = 0.0;
    for (const cplx& x : v) norm2 += std::norm(x);
  } while (norm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& x : v) x *= inv;
  return v;
}

State random_state(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim) throw invariant_error("random_state: rank must satisfy 1 <= rank <= dim");
  for (;;) {
    std::vector<cplx> g(static_cast<size_t>(dim) * rank);
    for (cplx& x : g) x = rng.gaussian_cplx();
    std::vector<cplx> e(static_cast<size_t>(dim) * dim, cplx(0.0));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        cplx v = 0.0;
        for (int k = 0; k < rank; ++k)
          v += g[static_cast<size_t>(r) * rank + k] * std::conj(g[static_cast<size_t>(c) * rank + k]);
        e[idx(dim, r, c)] = v;
      }
    HermitianOperator a = hermitian_unchecked(dim, std::move(e));
    const double t = trace(a);
    if (t < 1e-12) continue;
    a = a * (1.0 / t);
    if (rank == dim && min_eigenvalue(a) < 1e-12) continue;  // want genuinely full rank
    return State(std::move(a));
  }
}

State random_state(int dim, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(dim, rank, rng);
}

Effect random_effect(int dim, Rng& rng) {
  return Effect(clip_spectrum(random_hermitian(dim, rng), 0.0, 1.0));
}

Effect random_effect(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_effect(dim, rng);
}

}  // namespace qprep
