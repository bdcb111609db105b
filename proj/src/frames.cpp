#include "qprep/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qprep {

namespace {

// Real symmetric matrices ride through the complex eigensolver.
HermitianOperator wrap_real_symmetric(const std::vector<double>& m, int n) {
  std::vector<cplx> e(static_cast<size_t>(n) * n);
  for (size_t i = 0; i < e.size(); ++i) e[i] = m[i];
  return hermitian_unchecked(n, std::move(e));
}

std::vector<double> gram_matrix(const std::vector<HermitianOperator>& ops) {
  const int n = static_cast<int>(ops.size());
  std::vector<double> g(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = hs_inner(ops[i], ops[j]);
      g[static_cast<size_t>(i) * n + j] = v;
      g[static_cast<size_t>(j) * n + i] = v;
    }
  return g;
}

struct GramRank {
  int rank = 0;
  double min_singular = 0.0;
  bool borderline = false;
};

// The Gram matrix is PSD, so singular values are its eigenvalues (clipped at 0).
GramRank gram_rank(const std::vector<double>& gram, int n) {
  const Spectrum s = eig(wrap_real_symmetric(gram, n));
  GramRank out;
  const double top = std::max(0.0, s.eigenvalues.front());
  const double cutoff = 1e-10 * top;
  out.min_singular = std::max(0.0, s.eigenvalues.back());
  for (double ev : s.eigenvalues) {
    const double sv = std::max(0.0, ev);
    if (sv > cutoff) ++out.rank;
    if (cutoff > 0.0 && sv > cutoff / 10.0 && sv < cutoff * 10.0) out.borderline = true;
  }
  return out;
}

}  // namespace

Frame frame_validate(std::vector<HermitianOperator> elements, double tol) {
  if (elements.empty()) throw invariant_error("frame_validate: element list is empty");
  const int n = elements[0].dim();
  for (const auto& e : elements)
    if (e.dim() != n) throw invariant_error("frame_validate: elements have mixed dimensions");

  HermitianOperator sum = HermitianOperator::zero(n);
  for (const auto& e : elements) sum = sum + e;
  const HermitianOperator resid = sum - HermitianOperator::identity(n);
  double max_entry = 0.0;
  for (const cplx& v : resid.entries()) max_entry = std::max(max_entry, std::abs(v));
  if (max_entry > tol) {
    std::ostringstream os;
    os << "frame_validate: normalization failure, ||sum(F_i) - I||_HS = " << hs_norm(resid);
    throw invariant_error(os.str());
  }

  Frame f;
  f.dim = n;
  f.positive_flag = true;
  for (const auto& e : elements)
    if (!is_psd(e, kDefaultTol)) {
      f.positive_flag = false;
      break;
    }
  f.elements = std::move(elements);
  return f;
}

CompletenessReport completeness(const Frame& frame) {
  const GramRank r = gram_rank(gram_matrix(frame.elements), frame.size());
  CompletenessReport report;
  report.gram_rank = r.rank;
  report.is_complete = (r.rank == frame.dim * frame.dim);
  report.min_singular_value = r.min_singular;
  report.borderline = r.borderline;
  return report;
}

DualFrame dual_frame(const Frame& frame) {
  const int n = frame.dim;
  const int N = frame.size();
  if (N != n * n) {
    std::ostringstream os;
    os << "dual_frame: requires N = dim^2 elements (got N=" << N << ", dim=" << n << ")";
    throw invariant_error(os.str());
  }
  const std::vector<double> gram = gram_matrix(frame.elements);
  const Spectrum s = eig(wrap_real_symmetric(gram, N));
  const double top = std::max(0.0, s.eigenvalues.front());
  if (s.eigenvalues.back() <= 1e-10 * top)
    throw invariant_error("dual_frame: Gram matrix singular");

  // inv = V diag(1/lambda) V^T, symmetric by construction.
  std::vector<double> inv(static_cast<size_t>(N) * N, 0.0);
  for (int k = 0; k < N; ++k) {
    const double w = 1.0 / s.eigenvalues[k];
    for (int i = 0; i < N; ++i) {
      const double vik = s.vector_entry(i, k).real();
      for (int j = 0; j < N; ++j)
        inv[static_cast<size_t>(i) * N + j] += w * vik * s.vector_entry(j, k).real();
    }
  }

  DualFrame dual;
  dual.dim = n;
  dual.elements.reserve(N);
  for (int j = 0; j < N; ++j) {
    HermitianOperator d = HermitianOperator::zero(n);
    for (int i = 0; i < N; ++i)
      d = d + frame.elements[i] * inv[static_cast<size_t>(j) * N + i];
    dual.elements.push_back(std::move(d));
  }

  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double b = hs_inner(frame.elements[i], dual.elements[j]);
      if (std::abs(b - (i == j ? 1.0 : 0.0)) > 1e-8)
        throw invariant_error("dual_frame: biorthogonality residual above 1e-8");
    }
  for (int j = 0; j < N; ++j)
    if (std::abs(trace(dual.elements[j]) - 1.0) > 1e-8)
      throw invariant_error("dual_frame: dual element trace differs from 1 beyond 1e-8");
  return dual;
}

Frame random_positive_basis(int dim, std::uint64_t seed) {
  Rng rng(seed);
  const int N = dim * dim;
  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<HermitianOperator> rho;
    rho.reserve(N);
    for (int i = 0; i < N; ++i) rho.push_back(random_state(dim, 1, rng).op());

    // Independence plus a conditioning guard: a nearly dependent draw would
    // poison the dual-frame accuracy downstream.
    const Spectrum gs = eig(wrap_real_symmetric(gram_matrix(rho), N));
    if (gs.eigenvalues.back() < 1e-6 * gs.eigenvalues.front()) continue;

    HermitianOperator g = HermitianOperator::zero(dim);
    for (const auto& p : rho) g = g + p;
    const HermitianOperator g_inv_sqrt =
        spectral_transform(g, [](double x) { return 1.0 / std::sqrt(x); });

    std::vector<HermitianOperator> elements;
    elements.reserve(N);
    for (const auto& p : rho) {
      // F_i = G^{-1/2} rho_i G^{-1/2}, evaluated as a conjugation.
      const int n = dim;
      std::vector<cplx> tmp(static_cast<size_t>(n) * n, cplx(0.0));
      for (int rr = 0; rr < n; ++rr)
        for (int cc = 0; cc < n; ++cc) {
          cplx v = 0.0;
          for (int k = 0; k < n; ++k) v += g_inv_sqrt(rr, k) * p(k, cc);
          tmp[static_cast<size_t>(rr) * n + cc] = v;
        }
      std::vector<cplx> e(static_cast<size_t>(n) * n, cplx(0.0));
      for (int rr = 0; rr < n; ++rr)
        for (int cc = 0; cc < n; ++cc) {
          cplx v = 0.0;
          for (int k = 0; k < n; ++k) v += tmp[static_cast<size_t>(rr) * n + k] * g_inv_sqrt(k, cc);
          e[static_cast<size_t>(rr) * n + cc] = v;
        }
      for (int rr = 0; rr < n; ++rr) {
        e[static_cast<size_t>(rr) * n + rr] = cplx(e[static_cast<size_t>(rr) * n + rr].real(), 0.0);
        for (int cc = rr + 1; cc < n; ++cc) {
          const cplx v = 0.5 * (e[static_cast<size_t>(rr) * n + cc] +
                                std::conj(e[static_cast<size_t>(cc) * n + rr]));
          e[static_cast<size_t>(rr) * n + cc] = v;
          e[static_cast<size_t>(cc) * n + rr] = std::conj(v);
        }
      }
      elements.push_back(hermitian_unchecked(n, std::move(e)));
    }

    Frame f = frame_validate(std::move(elements));
    if (!f.positive_flag || !completeness(f).is_complete) continue;
    return f;
  }
  throw invariant_error("random_positive_basis: no well-conditioned independent draw found");
}

Frame theorem1_povm(const std::vector<Effect>& spanning_effects) {
  if (spanning_effects.empty())
    throw invariant_error("theorem1_povm: need at least one effect (or use the trivial frame [I])");
  const int n = spanning_effects[0].dim();
  const int m = static_cast<int>(spanning_effects.size());
  std::vector<HermitianOperator> elements;
  elements.reserve(m + 1);
  HermitianOperator first = HermitianOperator::identity(n);
  double weight = 1.0;
  for (int k = 0; k < m; ++k) {
    if (spanning_effects[k].dim() != n)
      throw invariant_error("theorem1_povm: effects have mixed dimensions");
    weight *= 0.5;  // 2^-(k+1)
    first = first - spanning_effects[k].op() * weight;
  }
  elements.push_back(std::move(first));
  weight = 1.0;
  for (int k = 0; k < m; ++k) {
    weight *= 0.5;
    elements.push_back(spanning_effects[k].op() * weight);
  }
  return frame_validate(std::move(elements));
}

HermitianOperator sub_frame_sum(const Frame& frame, const std::vector<int>& subset) {
  HermitianOperator sum = HermitianOperator::zero(frame.dim);
  for (int i : subset) {
    if (i < 0 || i >= frame.size()) {
      std::ostringstream os;
      os << "sub_frame_sum: index " << i << " out of range [0, " << frame.size() << ")";
      throw invariant_error(os.str());
    }
    sum = sum + frame.elements[i];
  }
  return sum;
}

Frame tetrahedral_frame() {
  static const double dirs[4][3] = {
      {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<HermitianOperator> elements;
  elements.reserve(4);
  for (const auto& d : dirs) {
    // (I + (n . sigma)/sqrt(3))/4 with n = d/sqrt(3), so the Bloch part is d/3.
    const double x = d[0] / 3.0, y = d[1] / 3.0, z = d[2] / 3.0;
    std::vector<cplx> e = {cplx(1.0 + z, 0.0) * 0.25, cplx(x, -y) * 0.25,
                           cplx(x, y) * 0.25, cplx(1.0 - z, 0.0) * 0.25};
    elements.push_back(HermitianOperator(2, std::move(e)));
  }
  return frame_validate(std::move(elements));
}

Frame projective_frame(const std::vector<cplx>& phi, const std::vector<cplx>& psi) {
  cplx overlap = 0.0;
  for (size_t k = 0; k < phi.size(); ++k) overlap += std::conj(phi[k]) * psi[k];
  if (phi.size() != psi.size() || phi.size() != 2 || std::abs(overlap) > 1e-10)
    throw invariant_error("projective_frame: need two orthonormal qubit vectors");
  return frame_validate({projector(phi), projector(psi)});
}

}  // namespace qprep
