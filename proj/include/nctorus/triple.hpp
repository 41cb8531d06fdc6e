#pragma once

// Builders for the operator content of the equivariant spectral triples:
// the torus representation pi(U), pi(V) and its polynomial extension, the
// derivations, the grading, the (phi, psi, theta) family of reality
// structures J for all four spin structures, the opposite (commutant)
// operators, the automorphism witness W, and the four Dirac families.
//
// Conventions fixed here and property-tested in the suite:
//   pi(U) e_{mu,nu,s}  = e_{mu+1,nu,s}
//   pi(V) e_{mu,nu,s}  = lambda^{-mu} e_{mu,nu+1,s}
//   J e_{mu,nu,+}      = +exp(+i(phi mu + psi nu)) exp(i theta) lambda^{-mu nu} e_{-mu,-nu,-}
//   J e_{mu,nu,-}      = -exp(-i(phi mu + psi nu)) exp(i theta) lambda^{-mu nu} e_{-mu,-nu,+}
//   D e_{mu,nu,+}      = d(mu,nu) e_{mu,nu,-},  D e_{mu,nu,-} = conj(d) e_{mu,nu,+}
// theta enters as a global phase of J (not sign-split across the blocks);
// that is the unique placement for which J^2 = -1 holds for every theta.
//
// Shift targets that leave the truncation window are dropped (zero column),
// never wrapped; identities are therefore exact on interior masks.

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

#include "nctorus/lattice.hpp"
#include "nctorus/opalg.hpp"

namespace nctorus {

/// Finite sum of terms coeff * U^p V^q; negative powers mean adjoints.
struct TorusPolynomial {
  std::map<std::pair<int, int>, Complex> terms;

  TorusPolynomial() = default;
  static TorusPolynomial one() { return monomial(0, 0, 1.0); }
  static TorusPolynomial monomial(int p, int q, Complex c) {
    TorusPolynomial a;
    a.terms[{p, q}] = c;
    return a;
  }

  /// Accumulates into an existing (p, q) key, keeping keys unique.
  void add_term(int p, int q, Complex c) {
    auto [it, inserted] = terms.try_emplace({p, q}, c);
    if (!inserted) it->second += c;
  }
};

/// Product in the deformed algebra: V^q U^r = lambda^{-q r} U^r V^q.
inline TorusPolynomial poly_mul(const TorusPolynomial& a, const TorusPolynomial& b,
                                PhaseAngle lambda) {
  TorusPolynomial out;
  for (const auto& [pa, ca] : a.terms)
    for (const auto& [pb, cb] : b.terms) {
      const Complex swap = lambda.pow(-static_cast<double>(pa.second) * pb.first);
      out.add_term(pa.first + pb.first, pa.second + pb.second, ca * cb * swap);
    }
  return out;
}

struct RealStructureParams {
  double phi = 0.0;
  double psi = 0.0;
  double theta_glob = 0.0;
};

struct DiracParams {
  Complex tau1{1.0, 0.0};
  Complex tau2{0.0, 1.0};
  Complex tau0{0.0, 0.0};
  Complex eps_const{0.0, 0.0};
};

/// Generic phase-weighted shift: e_{m,n,s} -> phase(site) e_{m+dm, n+dn, s}.
/// The underlying primitive of every representation-type operator.
inline LinearOp shift_phase_op(const BasisIndexMap& map, int dm, int dn,
                               const std::function<Complex(const Site&)>& phase) {
  Matrix out = Matrix::Zero(map.dim(), map.dim());
  for (int col = 0; col < map.dim(); ++col) {
    const Site x = map.site_of(col);
    if (!map.in_window(x.m + dm, x.n + dn)) continue;
    const int row = map.index_of({x.m + dm, x.n + dn, x.s});
    out(row, col) = phase(x);
  }
  return LinearOp(std::move(out));
}

inline LinearOp rep_u(const BasisIndexMap& map, PhaseAngle /*lambda*/) {
  return shift_phase_op(map, 1, 0, [](const Site&) { return Complex{1.0, 0.0}; });
}

inline LinearOp rep_v(const BasisIndexMap& map, PhaseAngle lambda) {
  return shift_phase_op(map, 0, 1,
                        [&](const Site& x) { return lambda.pow(-map.mu_of(x)); });
}

/// pi(U)^p pi(V)^q collapsed to a single phase-shift: lambda^{-q mu} and a
/// (p, q) lattice shift. Valid for negative powers (adjoints) as well.
inline LinearOp rep_monomial(const BasisIndexMap& map, PhaseAngle lambda, int p, int q) {
  return shift_phase_op(map, p, q,
                        [&](const Site& x) { return lambda.pow(-q * map.mu_of(x)); });
}

inline LinearOp rep_poly(const TorusPolynomial& a, const BasisIndexMap& map,
                         PhaseAngle lambda) {
  Matrix out = Matrix::Zero(map.dim(), map.dim());
  for (const auto& [pq, c] : a.terms) out += c * rep_monomial(map, lambda, pq.first, pq.second).m;
  return LinearOp(std::move(out));
}

/// rho(delta_1) = diag(mu), rho(delta_2) = diag(nu), same on both blocks.
inline std::pair<LinearOp, LinearOp> derivation_ops(const BasisIndexMap& map) {
  Matrix d1 = Matrix::Zero(map.dim(), map.dim());
  Matrix d2 = Matrix::Zero(map.dim(), map.dim());
  for (int i = 0; i < map.dim(); ++i) {
    const Site x = map.site_of(i);
    d1(i, i) = map.mu_of(x);
    d2(i, i) = map.nu_of(x);
  }
  return {LinearOp(std::move(d1)), LinearOp(std::move(d2))};
}

inline LinearOp grading_op(const BasisIndexMap& map) {
  Matrix g = Matrix::Zero(map.dim(), map.dim());
  for (int i = 0; i < map.dim(); ++i)
    g(i, i) = (i < map.block_size()) ? 1.0 : -1.0;
  return LinearOp(std::move(g));
}

namespace detail {
/// Integer label of the reflected site: mu -> -mu means m -> -m - 2*eps.
inline int reflect_label(int m, HalfOffset eps) {
  return -m - (eps == HalfOffset::half ? 1 : 0);
}
inline bool reflected_in_window(const BasisIndexMap& map, const Site& x) {
  return map.in_window(reflect_label(x.m, map.spin().eps_mu),
                       reflect_label(x.n, map.spin().eps_nu));
}
inline Site reflect_site(const BasisIndexMap& map, const Site& x, Chirality s) {
  return {reflect_label(x.m, map.spin().eps_mu), reflect_label(x.n, map.spin().eps_nu), s};
}
}  // namespace detail

/// Core antilinear builder: J e_{mu,nu,+} = f(mu,nu) e_{-mu,-nu,-} and
/// J e_{mu,nu,-} = -f(mu,nu) e_{-mu,-nu,+}. For any reflection-symmetric
/// unit phase f this satisfies J^2 = -1 and J gamma = -gamma J exactly
/// wherever the reflected site stays inside the window.
inline AntilinearOp real_structure_custom(
    const BasisIndexMap& map, const std::function<Complex(double, double)>& f) {
  Matrix out = Matrix::Zero(map.dim(), map.dim());
  for (int col = 0; col < map.dim(); ++col) {
    const Site x = map.site_of(col);
    if (!detail::reflected_in_window(map, x)) continue;
    const Site y = detail::reflect_site(map, x, flip(x.s));
    const Complex phase = f(map.mu_of(x), map.nu_of(x));
    out(map.index_of(y), col) = (x.s == Chirality::plus) ? phase : -phase;
  }
  return AntilinearOp(std::move(out));
}

/// The (phi, psi, theta) reality structure. phi and psi flip sign between
/// the chirality blocks; theta is a global phase.
inline AntilinearOp real_structure(const BasisIndexMap& map, PhaseAngle lambda,
                                   const RealStructureParams& rp) {
  Matrix out = Matrix::Zero(map.dim(), map.dim());
  const Complex global = std::polar(1.0, rp.theta_glob);
  for (int col = 0; col < map.dim(); ++col) {
    const Site x = map.site_of(col);
    if (!detail::reflected_in_window(map, x)) continue;
    const Site y = detail::reflect_site(map, x, flip(x.s));
    const double mu = map.mu_of(x), nu = map.nu_of(x);
    const Complex lam = lambda.pow(-mu * nu);
    if (x.s == Chirality::plus)
      out(map.index_of(y), col) = std::polar(1.0, rp.phi * mu + rp.psi * nu) * global * lam;
    else
      out(map.index_of(y), col) = -std::polar(1.0, -(rp.phi * mu + rp.psi * nu)) * global * lam;
  }
  return AntilinearOp(std::move(out));
}

/// Canonical opposite (right-action) operators:
///   U' e_{mu,nu,s} = lambda^{-nu} e_{mu+1,nu,s},  V' e_{mu,nu,s} = e_{mu,nu+1,s}.
/// Cross-checked in tests against J pi(.)^* J^{-1}.
inline std::pair<LinearOp, LinearOp> opposite_ops(const BasisIndexMap& map, PhaseAngle lambda) {
  LinearOp uo = shift_phase_op(map, 1, 0,
                               [&](const Site& x) { return lambda.pow(-map.nu_of(x)); });
  LinearOp vo = shift_phase_op(map, 0, 1, [](const Site&) { return Complex{1.0, 0.0}; });
  return {std::move(uo), std::move(vo)};
}

/// J^{-1} with the J^2 = -1 convention.
inline AntilinearOp real_structure_inverse(const AntilinearOp& j) {
  return AntilinearOp(-j.m);
}

/// b -> J pi(b)^* J^{-1}, the commutant image used by the order checks.
inline LinearOp opposite_of(const AntilinearOp& j, const LinearOp& rep_b) {
  return compose_anti_anti(compose_anti_lin(j, adjoint(rep_b)), real_structure_inverse(j));
}

/// Diagonal unitary with entries exp(+-i(phi mu + psi nu + theta)) on the
/// +- blocks; conjugation by it rotates U and V by constant phases.
inline LinearOp automorphism_witness(const BasisIndexMap& map, const RealStructureParams& rp) {
  Matrix w = Matrix::Zero(map.dim(), map.dim());
  for (int i = 0; i < map.dim(); ++i) {
    const Site x = map.site_of(i);
    const double arg = rp.phi * map.mu_of(x) + rp.psi * map.nu_of(x) + rp.theta_glob;
    w(i, i) = std::polar(1.0, x.s == Chirality::plus ? arg : -arg);
  }
  return LinearOp(std::move(w));
}

/// Off-diagonal-in-chirality operator from a site function:
/// D e_+ = g(mu,nu) e_-, D e_- = conj(g(mu,nu)) e_+. Hermitian by construction.
inline LinearOp dirac_diagonal(const BasisIndexMap& map,
                               const std::function<Complex(double, double)>& g) {
  Matrix d = Matrix::Zero(map.dim(), map.dim());
  for (int col = 0; col < map.dim(); ++col) {
    const Site x = map.site_of(col);
    const Site y{x.m, x.n, flip(x.s)};
    const Complex val = g(map.mu_of(x), map.nu_of(x));
    d(map.index_of(y), col) = (x.s == Chirality::plus) ? val : std::conj(val);
  }
  return LinearOp(std::move(d));
}

/// Which of the four solution families applies, by the (phi, psi) zero pattern.
enum class DiracCase { linear, exp_mu, exp_nu, exp_both };

inline DiracCase dirac_case(const RealStructureParams& rp) {
  const bool p = rp.phi != 0.0, q = rp.psi != 0.0;
  if (!p && !q) return DiracCase::linear;
  if (p && !q) return DiracCase::exp_mu;
  if (!p && q) return DiracCase::exp_nu;
  return DiracCase::exp_both;
}

/// The equivariant Dirac operator for the (phi, psi) case of `rp`:
///   phi = psi = 0 : d = tau1 mu + tau2 nu            (requires eps = 0)
///   phi != 0,psi=0: d = tau2 nu + tau0 e^{-2i phi mu} + eps
///   phi = 0,psi!=0: d = tau1 mu + tau0 e^{-2i psi nu} + eps
///   both nonzero  : d = tau0 e^{-2i(phi mu + psi nu)} + eps
/// The exponential cases require tau0 = -eps (the J D = D J constraint).
inline LinearOp dirac_op(const BasisIndexMap& map, const DiracParams& dp,
                         const RealStructureParams& rp) {
  const DiracCase c = dirac_case(rp);
  if (c == DiracCase::linear) {
    if (dp.eps_const != Complex{0.0, 0.0})
      throw std::invalid_argument("dirac_op: eps_const must be 0 when phi = psi = 0");
  } else {
    if (dp.tau0 != -dp.eps_const)
      throw std::invalid_argument("dirac_op: tau0 = -eps_const required when phi or psi is nonzero");
  }
  switch (c) {
    case DiracCase::linear:
      return dirac_diagonal(map, [&](double mu, double nu) {
        return dp.tau1 * mu + dp.tau2 * nu + dp.eps_const;
      });
    case DiracCase::exp_mu:
      return dirac_diagonal(map, [&](double mu, double nu) {
        return dp.tau2 * nu + dp.tau0 * std::polar(1.0, -2.0 * rp.phi * mu) + dp.eps_const;
      });
    case DiracCase::exp_nu:
      return dirac_diagonal(map, [&](double mu, double nu) {
        return dp.tau1 * mu + dp.tau0 * std::polar(1.0, -2.0 * rp.psi * nu) + dp.eps_const;
      });
    case DiracCase::exp_both:
    default:
      return dirac_diagonal(map, [&](double mu, double nu) {
        return dp.tau0 * std::polar(1.0, -2.0 * (rp.phi * mu + rp.psi * nu)) + dp.eps_const;
      });
  }
}

/// Everything one spectral triple needs, built once and shared read-only.
struct SpectralTripleBundle {
  BasisIndexMap map;
  PhaseAngle lambda;
  RealStructureParams rparams;
  DiracParams dparams;
  LinearOp pi_u, pi_v, gamma, dirac;
  LinearOp delta1, delta2;
  AntilinearOp j;

  SpectralTripleBundle(Truncation trunc, PhaseAngle lam, RealStructureParams rp, DiracParams dp)
      : map(trunc),
        lambda(lam),
        rparams(rp),
        dparams(dp),
        pi_u(rep_u(map, lam)),
        pi_v(rep_v(map, lam)),
        gamma(grading_op(map)),
        dirac(dirac_op(map, dp, rp)),
        j(real_structure(map, lam, rp)) {
    auto derivations = derivation_ops(map);
    delta1 = std::move(derivations.first);
    delta2 = std::move(derivations.second);
  }

  SpinStructure spin() const { return map.spin(); }
  int dim() const { return map.dim(); }
};

inline SpectralTripleBundle make_bundle(Truncation trunc, PhaseAngle lambda,
                                        const RealStructureParams& rp, const DiracParams& dp) {
  return SpectralTripleBundle(trunc, lambda, rp, dp);
}

}  // namespace nctorus
