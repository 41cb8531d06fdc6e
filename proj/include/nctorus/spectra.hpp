#pragma once

// Dirac spectra two independent ways (per-site 2x2 blocks, and a dense
// Hermitian Jacobi eigensolver), eigenvalue-growth diagnostics for the
// compact-resolvent criterion, and the Hochschild cycle evaluator.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nctorus/lattice.hpp"
#include "nctorus/opalg.hpp"
#include "nctorus/triple.hpp"

namespace nctorus {

struct SpectrumTable {
  std::vector<double> eigenvalues;   // ascending
  std::vector<long> multiplicities;  // same length
  double dedup_tol = 1e-9;
  SpinStructure spin;
  int n_max = 0;

  long total_multiplicity() const {
    long t = 0;
    for (long m : multiplicities) t += m;
    return t;
  }
};

namespace detail {
/// Sorts raw eigenvalues and clusters them (anchored at each cluster's first
/// member, so chains cannot creep past the tolerance).
inline SpectrumTable cluster_spectrum(std::vector<double> vals, double tol,
                                      SpinStructure spin, int n_max) {
  std::sort(vals.begin(), vals.end());
  SpectrumTable t;
  t.dedup_tol = tol;
  t.spin = spin;
  t.n_max = n_max;
  std::size_t i = 0;
  while (i < vals.size()) {
    const double anchor = vals[i];
    long mult = 0;
    while (i < vals.size() && vals[i] - anchor <= tol) {
      ++mult;
      ++i;
    }
    t.eigenvalues.push_back(anchor);
    t.multiplicities.push_back(mult);
  }
  return t;
}
}  // namespace detail

/// Per site (mu, nu) the 2x2 chirality block [[0, conj(d)], [d, 0]]
/// contributes the pair +-|d|; aggregation with the dedup tolerance.
inline SpectrumTable dirac_spectrum_blocks(const SpectralTripleBundle& b, double tol = 1e-9) {
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(b.dim()));
  const int h = b.map.n_max();
  for (int m = -h; m <= h; ++m)
    for (int n = -h; n <= h; ++n) {
      const int col = b.map.index_of({m, n, Chirality::plus});
      const int row = b.map.index_of({m, n, Chirality::minus});
      const double a = std::abs(b.dirac.m(row, col));
      vals.push_back(a);
      vals.push_back(-a);
    }
  return detail::cluster_spectrum(std::move(vals), tol, b.spin(), h);
}

/// All eigenvalues of a dense Hermitian matrix by cyclic Jacobi rotations.
/// Kept free of the block-analytic path so the two routes stay independent.
inline std::vector<double> eigensolver_oracle(const LinearOp& op) {
  const double herm_defect = (op.m - op.m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect >= 1e-12)
    throw std::invalid_argument("eigensolver_oracle: non-Hermitian input");

  const int n = op.dim();
  Matrix a = (op.m + op.m.adjoint()) / 2.0;  // symmetrize roundoff
  const double scale = std::max(a.norm(), 1e-300);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
  };

  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps && off_norm() > 1e-15 * scale; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex beta = a(p, q);
        const double babs = std::abs(beta);
        if (babs <= 1e-300) continue;
        const Complex w = beta / babs;  // unit phase of the pivot
        const double alpha = a(p, p).real();
        const double delta = a(q, q).real();
        // Smaller-angle root of |b| t^2 - (alpha - delta) t - |b| = 0.
        const double theta = (delta - alpha) / (2.0 * babs);
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const Complex s = t * c * w;

        // Column update [col_p col_q] <- [col_p col_q] * [[c, s], [-conj(s), c]]
        for (int r = 0; r < n; ++r) {
          const Complex arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - std::conj(s) * arq;
          a(r, q) = s * arp + c * arq;
        }
        // Row update [row_p; row_q] <- [[c, -s], [conj(s), c]] * [row_p; row_q]
        for (int r = 0; r < n; ++r) {
          const Complex apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = std::conj(s) * apr + c * aqr;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> evals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) evals[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(evals.begin(), evals.end());
  return evals;
}

inline long kernel_dimension(const SpectrumTable& t, double tol = 1e-9) {
  long k = 0;
  for (std::size_t i = 0; i < t.eigenvalues.size(); ++i)
    if (std::abs(t.eigenvalues[i]) <= tol) k += t.multiplicities[i];
  return k;
}

/// First `count` distinct |eigenvalue| values, ascending.
inline std::vector<double> distinct_abs_eigenvalues(const SpectrumTable& t,
                                                    std::size_t count = 10) {
  std::vector<double> abs_vals;
  for (std::size_t i = 0; i < t.eigenvalues.size(); ++i)
    for (long k = 0; k < t.multiplicities[i]; ++k) abs_vals.push_back(std::abs(t.eigenvalues[i]));
  SpectrumTable clustered = detail::cluster_spectrum(std::move(abs_vals), t.dedup_tol, t.spin, t.n_max);
  if (clustered.eigenvalues.size() > count) clustered.eigenvalues.resize(count);
  return clustered.eigenvalues;
}

struct ResolventCounts {
  std::vector<long> counts;  // one per radius
  double max_abs = 0.0;
};

/// Counting function N(R) = #{eigenvalues with |e| <= R} for each radius.
inline ResolventCounts resolvent_growth(const SpectralTripleBundle& b,
                                        const std::vector<double>& radii) {
  const SpectrumTable t = dirac_spectrum_blocks(b);
  ResolventCounts r;
  for (double radius : radii) {
    long c = 0;
    for (std::size_t i = 0; i < t.eigenvalues.size(); ++i)
      if (std::abs(t.eigenvalues[i]) <= radius) c += t.multiplicities[i];
    r.counts.push_back(c);
  }
  for (double e : t.eigenvalues) r.max_abs = std::max(r.max_abs, std::abs(e));
  return r;
}

enum class ResolventVerdict { unbounded_ok, bounded_bad, inconclusive };

inline const char* to_string(ResolventVerdict v) {
  switch (v) {
    case ResolventVerdict::unbounded_ok: return "UNBOUNDED_OK";
    case ResolventVerdict::bounded_bad: return "BOUNDED_BAD";
    default: return "INCONCLUSIVE";
  }
}

struct ResolventTrend {
  std::vector<int> n_maxes;
  std::vector<double> radii;
  std::vector<ResolventCounts> per_truncation;
  ResolventVerdict verdict = ResolventVerdict::inconclusive;
};

/// Trend diagnostic across truncations. UNBOUNDED_OK when every N(R)
/// stabilizes while the spectral radius keeps growing; BOUNDED_BAD when the
/// spectral radius stays put as the space grows. A trend verdict only,
/// never a statement about the untruncated operator.
inline ResolventTrend resolvent_trend(PhaseAngle lambda, const RealStructureParams& rp,
                                      const DiracParams& dp, SpinStructure spin,
                                      const std::vector<double>& radii,
                                      const std::vector<int>& n_maxes,
                                      double growth_tol = 0.1) {
  if (n_maxes.size() < 2)
    throw std::invalid_argument("resolvent_trend: need at least two truncations");
  ResolventTrend tr;
  tr.n_maxes = n_maxes;
  tr.radii = radii;
  for (int h : n_maxes)
    tr.per_truncation.push_back(
        resolvent_growth(make_bundle(Truncation(h, spin), lambda, rp, dp), radii));

  bool stabilized = true;
  for (std::size_t r = 0; r < radii.size(); ++r)
    for (std::size_t i = 1; i < tr.per_truncation.size(); ++i)
      if (tr.per_truncation[i].counts[r] != tr.per_truncation[0].counts[r]) stabilized = false;

  const double first_max = tr.per_truncation.front().max_abs;
  const double last_max = tr.per_truncation.back().max_abs;
  const bool bounded = (last_max - first_max) <= growth_tol;

  if (bounded)
    tr.verdict = ResolventVerdict::bounded_bad;
  else if (stabilized)
    tr.verdict = ResolventVerdict::unbounded_ok;
  else
    tr.verdict = ResolventVerdict::inconclusive;
  return tr;
}

// ---------------------------------------------------------------------------
// Hochschild cycle evaluation
// ---------------------------------------------------------------------------

struct CycleTerm {
  TorusPolynomial a0, a0_op, a1, a2;
};

using HochschildCycle = std::vector<CycleTerm>;

/// The volume cycle whose image is the grading when phi = psi = 0:
///   (V*U* x 1 x U x V - U*V* x 1 x V x U) / (tau1* tau2 - tau1 tau2*).
/// Refuses the degenerate prefactor tau1 tau2* = tau1* tau2.
inline HochschildCycle canonical_volume_cycle(PhaseAngle lambda, Complex tau1, Complex tau2) {
  const Complex denom = std::conj(tau1) * tau2 - tau1 * std::conj(tau2);
  if (std::abs(denom) < 1e-12)
    throw std::invalid_argument(
        "canonical_volume_cycle: degenerate prefactor (tau1 tau2* = tau1* tau2)");
  // V*U* = lambda^{-1} U^{-1} V^{-1} in the U-before-V normal form.
  HochschildCycle c;
  c.push_back({TorusPolynomial::monomial(-1, -1, lambda.pow(-1.0) / denom),
               TorusPolynomial::one(), TorusPolynomial::monomial(1, 0, 1.0),
               TorusPolynomial::monomial(0, 1, 1.0)});
  c.push_back({TorusPolynomial::monomial(-1, -1, Complex{-1.0, 0.0} / denom),
               TorusPolynomial::one(), TorusPolynomial::monomial(0, 1, 1.0),
               TorusPolynomial::monomial(1, 0, 1.0)});
  return c;
}

/// The unique nontrivial 2-cycle c0 = U*V* x V x U - V*U* x U x V (opposite
/// slot = 1). Its image must vanish for the exponential Dirac families.
inline HochschildCycle spurious_test_cycle(PhaseAngle lambda) {
  HochschildCycle c;
  c.push_back({TorusPolynomial::monomial(-1, -1, Complex{1.0, 0.0}), TorusPolynomial::one(),
               TorusPolynomial::monomial(0, 1, 1.0), TorusPolynomial::monomial(1, 0, 1.0)});
  c.push_back({TorusPolynomial::monomial(-1, -1, -lambda.pow(-1.0)), TorusPolynomial::one(),
               TorusPolynomial::monomial(1, 0, 1.0), TorusPolynomial::monomial(0, 1, 1.0)});
  return c;
}

/// Sum over terms of pi(a0) (J pi(a0_op)^* J^{-1}) [D, pi(a1)] [D, pi(a2)].
inline LinearOp hochschild_image(const SpectralTripleBundle& b, const HochschildCycle& cycle) {
  LinearOp acc = LinearOp::zero(b.dim());
  for (const CycleTerm& t : cycle) {
    const LinearOp p0 = rep_poly(t.a0, b.map, b.lambda);
    const LinearOp p0o = opposite_of(b.j, rep_poly(t.a0_op, b.map, b.lambda));
    const LinearOp c1 = commutator(b.dirac, rep_poly(t.a1, b.map, b.lambda));
    const LinearOp c2 = commutator(b.dirac, rep_poly(t.a2, b.map, b.lambda));
    acc = acc + compose_lin_lin(compose_lin_lin(p0, p0o), compose_lin_lin(c1, c2));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Homogeneous commutator scan (diagnostics for the exponential cases)
// ---------------------------------------------------------------------------

struct ScanRow {
  std::string label;
  int deg_p = 0, deg_q = 0;      // total multi-degree of a0 a1 a2
  Complex c_main{0.0, 0.0};      // coefficient against pi(a0 a1 a2)
  Complex c_extra{0.0, 0.0};     // coefficient against the D'-proportional part (mixed cases)
  double fit_residual = 0.0;     // interior residual after the fit
  Complex c_identity{0.0, 0.0};  // average diagonal (projection on the identity)
};

using ScanReport = std::vector<ScanRow>;

namespace detail {
inline std::vector<int> plus_block_interior(const SpectralTripleBundle& b, int depth) {
  std::vector<int> cols;
  const InteriorMask mask = interior_mask(b.map, depth);
  for (int idx : mask.indices())
    if (idx < b.map.block_size()) cols.push_back(idx);
  return cols;
}
}  // namespace detail

/// For monomial triples (a0, a1, a2), measures the decomposition of
/// pi(a0) [D, pi(a1)] [D, pi(a2)] restricted to the + block as
/// c_main pi(a0 a1 a2) (+ c_extra pi(a0 a1 a2) E in the mixed cases, where
/// E is the diagonal bounded part of D'). Requires phi != 0 or psi != 0.
inline ScanReport homogeneous_commutator_scan(const SpectralTripleBundle& b) {
  const DiracCase dc = dirac_case(b.rparams);
  if (dc == DiracCase::linear)
    throw std::invalid_argument("homogeneous_commutator_scan: requires phi != 0 or psi != 0");

  struct Probe {
    std::string label;
    TorusPolynomial a0, a1, a2;
  };
  const TorusPolynomial one = TorusPolynomial::one();
  const TorusPolynomial u = TorusPolynomial::monomial(1, 0, 1.0);
  const TorusPolynomial v = TorusPolynomial::monomial(0, 1, 1.0);
  const TorusPolynomial vsus = TorusPolynomial::monomial(-1, -1, b.lambda.pow(-1.0));  // V*U*
  const TorusPolynomial usvs = TorusPolynomial::monomial(-1, -1, Complex{1.0, 0.0});   // U*V*
  const std::vector<Probe> probes = {
      {"1,1,1", one, one, one},
      {"V*U*,U,V", vsus, u, v},
      {"U*V*,V,U", usvs, v, u},
      {"U,U,V", u, u, v},
      {"1,U,V", one, u, v},
  };

  // Diagonal bounded factor of the mixed-case D' restricted to the + block.
  Matrix extra = Matrix::Zero(b.dim(), b.dim());
  if (dc == DiracCase::exp_mu || dc == DiracCase::exp_nu) {
    for (int i = 0; i < b.dim(); ++i) {
      const Site x = b.map.site_of(i);
      const double arg = (dc == DiracCase::exp_mu) ? -2.0 * b.rparams.phi * b.map.mu_of(x)
                                                   : -2.0 * b.rparams.psi * b.map.nu_of(x);
      extra(i, i) = std::polar(1.0, arg);
    }
  }

  const std::vector<int> cols = detail::plus_block_interior(b, 4);
  if (cols.empty()) throw std::invalid_argument("homogeneous_commutator_scan: n_max too small");

  ScanReport report;
  for (const Probe& pr : probes) {
    const LinearOp t = compose_lin_lin(
        rep_poly(pr.a0, b.map, b.lambda),
        compose_lin_lin(commutator(b.dirac, rep_poly(pr.a1, b.map, b.lambda)),
                        commutator(b.dirac, rep_poly(pr.a2, b.map, b.lambda))));
    const TorusPolynomial prod =
        poly_mul(poly_mul(pr.a0, pr.a1, b.lambda), pr.a2, b.lambda);
    const LinearOp p = rep_poly(prod, b.map, b.lambda);

    ScanRow row;
    row.label = pr.label;
    for (const auto& [pq, c] : prod.terms) {
      (void)c;
      row.deg_p = pq.first;
      row.deg_q = pq.second;
    }

    // Least squares over the interior + columns against {P} or {P, P*E}.
    const bool mixed = dc == DiracCase::exp_mu || dc == DiracCase::exp_nu;
    Matrix basis2;
    if (mixed) basis2 = p.m * extra;
    Complex g11{0, 0}, g12{0, 0}, g22{0, 0}, r1{0, 0}, r2{0, 0};
    for (int c : cols) {
      g11 += p.m.col(c).dot(p.m.col(c));
      r1 += p.m.col(c).dot(t.m.col(c));
      if (mixed) {
        g12 += p.m.col(c).dot(basis2.col(c));
        g22 += basis2.col(c).dot(basis2.col(c));
        r2 += basis2.col(c).dot(t.m.col(c));
      }
    }
    if (!mixed) {
      row.c_main = (std::abs(g11) > 0) ? r1 / g11 : Complex{0, 0};
    } else {
      const Complex det = g11 * g22 - g12 * std::conj(g12);
      if (std::abs(det) > 1e-20) {
        row.c_main = (g22 * r1 - g12 * r2) / det;
        row.c_extra = (g11 * r2 - std::conj(g12) * r1) / det;
      } else if (std::abs(g11) > 0) {
        row.c_main = r1 / g11;
      }
    }
    Matrix fitted = row.c_main * p.m;
    if (mixed) fitted += row.c_extra * basis2;
    double worst = 0.0;
    Complex diag_sum{0, 0};
    for (int c : cols) {
      worst = std::max(worst, (t.m.col(c) - fitted.col(c)).norm());
      diag_sum += t.m(c, c);
    }
    row.fit_residual = worst;
    row.c_identity = diag_sum / static_cast<double>(cols.size());
    report.push_back(std::move(row));
  }
  return report;
}

}  // namespace nctorus
