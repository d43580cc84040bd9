#include "nct/conic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nct/scalar.hpp"

namespace nct {

Eigen::MatrixXd projectPsd(const Eigen::MatrixXd& m, double herm_tol) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > herm_tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("projectPsd: matrix is not symmetric");
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXcd projectPsd(const Eigen::MatrixXcd& m, double herm_tol) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > herm_tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("projectPsd: matrix is not hermitian");
  Eigen::MatrixXcd s = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXd AffineBlock::eval(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd b = constant;
  for (int d = 0; d < static_cast<int>(coeff.size()); ++d)
    if (y[d] != 0.0) b += y[d] * coeff[static_cast<size_t>(d)];
  return b;
}

Eigen::VectorXd AffineBlock::applyAdjoint(const Eigen::MatrixXd& w) const {
  Eigen::VectorXd out(coeff.size());
  for (size_t d = 0; d < coeff.size(); ++d) out[static_cast<long>(d)] = coeff[d].cwiseProduct(w).sum();
  return out;
}

ConicProblem ConicProblem::make(int dim) {
  ConicProblem p;
  p.dim = dim;
  p.S = Eigen::MatrixXd::Zero(0, dim);
  p.t = Eigen::VectorXd::Zero(0);
  p.q = Eigen::VectorXd::Zero(dim);
  p.L = Eigen::MatrixXd::Zero(0, dim);
  p.c = Eigen::VectorXd::Zero(0);
  return p;
}

double ConicProblem::objective(const Eigen::VectorXd& y) const {
  double v = 0;
  if (S.rows() > 0) v += (S * y - t).squaredNorm();
  if (q.size() > 0) v += q.dot(y);
  if (ridge > 0) v += ridge * y.squaredNorm();
  return v;
}

ConicSolution solveConic(const ConicProblem& p, const ConicSolveOptions& opts) {
  const int dim = p.dim;
  ConicSolution sol;

  // equality constraints are eliminated: y = y_p + N z
  Eigen::VectorXd y_p = Eigen::VectorXd::Zero(dim);
  Eigen::MatrixXd n_basis = Eigen::MatrixXd::Identity(dim, dim);
  if (p.L.rows() > 0) {
    y_p = p.L.colPivHouseholderQr().solve(p.c);
    double resid = (p.L * y_p - p.c).cwiseAbs().maxCoeff();
    if (resid > 1e-8 * std::max(1.0, p.c.cwiseAbs().maxCoeff())) {
      sol.status = SolveStatus::infeasible_certificate;
      sol.note = "equality constraints are inconsistent (least-squares residual " +
                 std::to_string(resid) + ")";
      sol.y = y_p;
      return sol;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(p.L);
    lu.setThreshold(1e-10);
    Eigen::MatrixXd kernel = lu.kernel();
    if (lu.dimensionOfKernel() == 0) {
      // fully determined by the equalities
      sol.y = y_p;
      sol.objective_value = p.objective(y_p);
      sol.iterations = 0;
      sol.primal_residual = 0;
      sol.min_eig = 0;
      for (const auto& blk : p.blocks) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk.eval(y_p), Eigen::EigenvaluesOnly);
        sol.min_eig = std::min(sol.min_eig, es.eigenvalues().minCoeff());
        sol.primal_residual = std::max(sol.primal_residual, std::max(0.0, -sol.min_eig));
      }
      sol.status = sol.min_eig >= -opts.tol ? SolveStatus::converged : SolveStatus::max_iter;
      return sol;
    }
    n_basis = Eigen::HouseholderQR<Eigen::MatrixXd>(kernel)
                  .householderQ() *
              Eigen::MatrixXd::Identity(dim, lu.dimensionOfKernel());
  }
  const long nz = n_basis.cols();

  // constant pieces of the quadratic form
  Eigen::MatrixXd h0 = 2.0 * p.S.transpose() * p.S;
  h0.diagonal().array() += 2.0 * p.ridge + 1e-12;
  Eigen::VectorXd b0 = 2.0 * p.S.transpose() * p.t - p.q;
  std::vector<Eigen::MatrixXd> gram;  // per block: Gram of the coefficient maps
  for (const auto& blk : p.blocks) {
    Eigen::MatrixXd g(dim, dim);
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        double v = blk.coeff[static_cast<size_t>(a)].cwiseProduct(blk.coeff[static_cast<size_t>(b)]).sum();
        g(a, b) = v;
        g(b, a) = v;
      }
    gram.push_back(std::move(g));
  }

  double rho = opts.rho;
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::MatrixXd h_total;
  auto refactor = [&]() {
    h_total = h0;
    for (const auto& g : gram) h_total += rho * g;
    llt.compute(n_basis.transpose() * h_total * n_basis);
    if (llt.info() != Eigen::Success) throw std::runtime_error("solveConic: factorization failed");
  };
  refactor();

  Eigen::VectorXd y = opts.warm_start ? *opts.warm_start : y_p;
  if (opts.warm_start) {
    // project the warm start onto the equality manifold
    y = y_p + n_basis * (n_basis.transpose() * (y - y_p));
  }
  std::vector<Eigen::MatrixXd> z, u;
  for (const auto& blk : p.blocks) {
    Eigen::MatrixXd b = blk.eval(y);
    z.push_back(projectPsd(b, 1e-6));
    u.push_back(Eigen::MatrixXd::Zero(blk.size(), blk.size()));
  }

  const double alpha = opts.over_relaxation;
  double r_norm = 0, s_norm = 0;
  long it = 0;
  bool converged = false;
  for (it = 1; it <= opts.max_iter; ++it) {
    // y-update: quadratic + augmented terms, equalities eliminated
    Eigen::VectorXd b = b0;
    for (size_t j = 0; j < p.blocks.size(); ++j)
      b += rho * p.blocks[j].applyAdjoint(z[j] - u[j] - p.blocks[j].constant);
    Eigen::VectorXd zsol = llt.solve(n_basis.transpose() * (b - h_total * y_p));
    y = y_p + n_basis * zsol;

    // relaxed projection step
    r_norm = 0;
    s_norm = 0;
    for (size_t j = 0; j < p.blocks.size(); ++j) {
      Eigen::MatrixXd v = p.blocks[j].eval(y);
      Eigen::MatrixXd v_rel = alpha * v + (1.0 - alpha) * z[j];
      Eigen::MatrixXd z_arg = v_rel + u[j];
      Eigen::MatrixXd z_new = projectPsd(z_arg, 1e-3);
      u[j] += v_rel - z_new;
      s_norm = std::max(s_norm, rho * p.blocks[j].applyAdjoint(z_new - z[j]).norm());
      z[j] = z_new;
      r_norm = std::max(r_norm, (v - z_new).norm());
    }
    if (p.blocks.empty()) {
      converged = true;
      break;
    }
    if (r_norm <= opts.tol && s_norm <= opts.tol) {
      converged = true;
      break;
    }
    if (opts.rho_update_every > 0 && it % opts.rho_update_every == 0) {
      if (r_norm > 10.0 * s_norm) {
        rho *= 2.0;
        for (auto& uu : u) uu *= 0.5;
        refactor();
      } else if (s_norm > 10.0 * r_norm) {
        rho *= 0.5;
        for (auto& uu : u) uu *= 2.0;
        refactor();
      }
    }
    double u_scale = 0;
    for (const auto& uu : u) u_scale = std::max(u_scale, uu.cwiseAbs().maxCoeff());
    if (u_scale * rho > 1e12) {
      sol.note = "dual iterates diverging; the problem may be infeasible";
      break;
    }
  }

  sol.y = y;
  sol.iterations = std::min(it, opts.max_iter);
  sol.objective_value = p.objective(y);
  sol.primal_residual = r_norm;
  sol.dual_residual = s_norm;
  sol.min_eig = p.blocks.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& blk : p.blocks) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk.eval(y), Eigen::EigenvaluesOnly);
    sol.min_eig = std::min(sol.min_eig, es.eigenvalues().minCoeff());
  }
  sol.psd_blocks = z;
  // on convergence the spectral defect is dominated by the primal residual
  if (converged && sol.min_eig >= -opts.tol)
    sol.status = SolveStatus::converged;
  else
    sol.status = SolveStatus::max_iter;
  return sol;
}

// ---- positive extension -----------------------------------------------------

FiniteCone FiniteCone::polyhedral(Eigen::MatrixXd gens) {
  FiniteCone c;
  c.kind = Kind::polyhedral;
  c.ambient = static_cast<int>(gens.rows());
  for (int j = 0; j < gens.cols(); ++j)
    if (gens.col(j).norm() == 0.0) throw std::invalid_argument("FiniteCone: zero generator");
  c.generators = std::move(gens);
  return c;
}

FiniteCone FiniteCone::spectrahedral(std::vector<Eigen::MatrixXd> lmi_maps, int ambient) {
  FiniteCone c;
  c.kind = Kind::spectrahedral;
  c.ambient = ambient;
  if (static_cast<int>(lmi_maps.size()) != ambient)
    throw std::invalid_argument("FiniteCone: need one LMI matrix per ambient coordinate");
  c.lmi = std::move(lmi_maps);
  return c;
}

namespace {

// symmetric basis of s x s matrices; returns the list of (i, j, matrix)
std::vector<Eigen::MatrixXd> symBasis(int s) {
  std::vector<Eigen::MatrixXd> out;
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(s, s);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      out.push_back(std::move(e));
    }
  return out;
}

std::optional<Rat> ratReconstruct(double x, long max_den = 1000000) {
  // continued fractions with a denominator cap
  double v = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(v);
    if (fl > 1e15 || fl < -1e15) return std::nullopt;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = v - fl;
    if (std::abs(static_cast<double>(p1) / q1 - x) < 1e-12 * std::max(1.0, std::abs(x))) break;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  if (q1 == 0) return std::nullopt;
  Rat r(p1, q1);
  r.canonicalize();
  if (std::abs(r.get_d() - x) > 1e-9 * std::max(1.0, std::abs(x))) return std::nullopt;
  return r;
}

bool certifyPolyhedralExact(const FiniteCone& cone, const Eigen::MatrixXd& f_basis,
                            const Eigen::VectorXd& phi, const Eigen::VectorXd& psi) {
  int dim = cone.ambient;
  std::vector<Rat> y(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    auto r = ratReconstruct(psi[i]);
    if (!r) return false;
    y[static_cast<size_t>(i)] = *r;
  }
  auto ratOfD = [](double x) { return ratReconstruct(x); };
  // psi|_F == phi exactly
  for (int j = 0; j < f_basis.cols(); ++j) {
    Rat acc(0);
    for (int i = 0; i < dim; ++i) {
      auto f = ratOfD(f_basis(i, j));
      if (!f) return false;
      acc += *f * y[static_cast<size_t>(i)];
    }
    auto ph = ratOfD(phi[j]);
    if (!ph || acc != *ph) return false;
  }
  // psi >= 0 on every generator
  for (int g = 0; g < cone.generators.cols(); ++g) {
    Rat acc(0);
    for (int i = 0; i < dim; ++i) {
      auto gv = ratOfD(cone.generators(i, g));
      if (!gv) return false;
      acc += *gv * y[static_cast<size_t>(i)];
    }
    if (acc < 0) return false;
  }
  return true;
}

// Dual-cone parametrization: psi = map * vars with vars subject to the
// problem's PSD/positivity blocks.
struct DualParam {
  ConicProblem prob;          // blocks + dims set; objective filled by caller
  Eigen::MatrixXd psi_of_vars;  // ambient x dim
};

DualParam dualConeParam(const FiniteCone& cone) {
  DualParam d;
  if (cone.kind == FiniteCone::Kind::polyhedral) {
    int dim = cone.ambient;
    d.prob = ConicProblem::make(dim);
    for (int g = 0; g < cone.generators.cols(); ++g) {
      AffineBlock blk;
      blk.constant = Eigen::MatrixXd::Zero(1, 1);
      for (int i = 0; i < dim; ++i)
        blk.coeff.push_back(cone.generators(i, g) * Eigen::MatrixXd::Identity(1, 1));
      d.prob.blocks.push_back(std::move(blk));
    }
    d.psi_of_vars = Eigen::MatrixXd::Identity(dim, dim);
  } else {
    int s = static_cast<int>(cone.lmi[0].rows());
    auto basis = symBasis(s);
    int nvars = static_cast<int>(basis.size());
    d.prob = ConicProblem::make(nvars);
    AffineBlock blk;
    blk.constant = Eigen::MatrixXd::Zero(s, s);
    blk.coeff = basis;
    d.prob.blocks.push_back(std::move(blk));
    d.psi_of_vars = Eigen::MatrixXd(cone.ambient, nvars);
    for (int a = 0; a < cone.ambient; ++a)
      for (int v = 0; v < nvars; ++v)
        d.psi_of_vars(a, v) = cone.lmi[static_cast<size_t>(a)].cwiseProduct(basis[static_cast<size_t>(v)]).sum();
  }
  return d;
}

// minimum of phi over B ∩ span(F) with a normalization that bounds the point
std::pair<double, Eigen::VectorXd> minimizeOverConeSlice(const FiniteCone& cone,
                                                         const Eigen::MatrixXd& f_basis,
                                                         const Eigen::VectorXd& phi,
                                                         const ConicSolveOptions& opts) {
  int f = static_cast<int>(f_basis.cols());
  if (cone.kind == FiniteCone::Kind::polyhedral) {
    int ng = static_cast<int>(cone.generators.cols());
    // vars = (lambda, s): G lambda = F s, sum lambda = 1, lambda >= 0
    ConicProblem p = ConicProblem::make(ng + f);
    p.L = Eigen::MatrixXd::Zero(cone.ambient + 1, ng + f);
    p.L.block(0, 0, cone.ambient, ng) = cone.generators;
    p.L.block(0, ng, cone.ambient, f) = -f_basis;
    p.L.row(cone.ambient).head(ng).setOnes();
    p.c = Eigen::VectorXd::Zero(cone.ambient + 1);
    p.c[cone.ambient] = 1.0;
    for (int g = 0; g < ng; ++g) {
      AffineBlock blk;
      blk.constant = Eigen::MatrixXd::Zero(1, 1);
      for (int v = 0; v < ng + f; ++v)
        blk.coeff.push_back((v == g ? 1.0 : 0.0) * Eigen::MatrixXd::Identity(1, 1));
      p.blocks.push_back(std::move(blk));
    }
    p.q.tail(f) = phi;
    p.ridge = 1e-9;
    ConicSolution s = solveConic(p, opts);
    if (s.status != SolveStatus::converged)
      return {0.0, Eigen::VectorXd::Zero(cone.ambient)};  // no violation found
    Eigen::VectorXd coords = s.y.tail(f);
    return {phi.dot(coords), f_basis * coords};
  }
  // spectrahedral: vars = coordinates s in F; blocks: LMI(F s) and the Schur
  // normalization [[I, s], [s', 1]] which bounds |s| <= 1
  ConicProblem p = ConicProblem::make(f);
  int s_rows = static_cast<int>(cone.lmi[0].rows());
  AffineBlock lmi_blk;
  lmi_blk.constant = Eigen::MatrixXd::Zero(s_rows, s_rows);
  for (int v = 0; v < f; ++v) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s_rows, s_rows);
    for (int amb = 0; amb < cone.ambient; ++amb) a += f_basis(amb, v) * cone.lmi[static_cast<size_t>(amb)];
    lmi_blk.coeff.push_back(std::move(a));
  }
  p.blocks.push_back(std::move(lmi_blk));
  AffineBlock ball;  // [[I, s], [s', 1]] >= 0 bounds |s| <= 1
  ball.constant = Eigen::MatrixXd::Identity(f + 1, f + 1);
  for (int v = 0; v < f; ++v) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(f + 1, f + 1);
    a(v, f) = 1.0;
    a(f, v) = 1.0;
    ball.coeff.push_back(std::move(a));
  }
  p.blocks.push_back(std::move(ball));
  p.q = phi;
  p.ridge = 1e-9;
  ConicSolution s = solveConic(p, opts);
  if (s.status != SolveStatus::converged)
    return {0.0, Eigen::VectorXd::Zero(cone.ambient)};
  return {phi.dot(s.y), f_basis * s.y};
}

}  // namespace

ExtensionResult positiveExtension(const FiniteCone& cone, const Eigen::MatrixXd& f_basis,
                                  const Eigen::VectorXd& phi, double eps, ExtensionMode mode,
                                  const std::vector<Eigen::MatrixXd>& chain,
                                  const ConicSolveOptions& solver_opts) {
  if (f_basis.rows() != cone.ambient)
    throw std::invalid_argument("positiveExtension: F basis does not live in the ambient space");
  if (phi.size() != f_basis.cols())
    throw std::invalid_argument("positiveExtension: phi dimension mismatch");
  ExtensionResult res;

  // precondition: phi >= 0 on B ∩ span F
  auto [minval, argmin] = minimizeOverConeSlice(cone, f_basis, phi, solver_opts);
  double scale = std::max(1.0, phi.cwiseAbs().maxCoeff());
  if (minval < -1e-6 * scale) {
    res.precondition_ok = false;
    res.witness = argmin;
    res.witness_value = minval;
    res.status = SolveStatus::infeasible_certificate;
    return res;
  }

  DualParam dual = dualConeParam(cone);

  std::vector<Eigen::MatrixXd> stages;
  if (mode == ExtensionMode::chain) {
    if (chain.empty()) throw std::invalid_argument("positiveExtension: chain mode needs a chain");
    for (size_t i = 0; i < chain.size(); ++i) {
      if (chain[i].rows() != cone.ambient)
        throw std::invalid_argument("positiveExtension: chain bases must live in the ambient space");
      if (i == 0 && (chain[0].cols() != f_basis.cols() || (chain[0] - f_basis).norm() > 1e-12))
        throw std::invalid_argument("positiveExtension: chain must start at F");
      if (i > 0) {
        if (chain[i].cols() < chain[i - 1].cols() ||
            (chain[i].leftCols(chain[i - 1].cols()) - chain[i - 1]).norm() > 1e-12)
          throw std::invalid_argument("positiveExtension: chain bases must be prefix-nested");
      }
    }
    stages = chain;
  } else {
    stages = {f_basis};
  }

  Eigen::VectorXd target = phi;
  Eigen::VectorXd vars;
  bool all_converged = true;
  size_t steps = mode == ExtensionMode::direct ? 1 : std::max<size_t>(1, stages.size() - 1);
  for (size_t i = 0; i < steps; ++i) {
    const Eigen::MatrixXd& f_prev = stages[i];
    ConicProblem p = dual.prob;
    p.S = f_prev.transpose() * dual.psi_of_vars;
    p.t = target;
    ConicSolveOptions opts = solver_opts;
    if (vars.size() > 0) opts.warm_start = vars;
    ConicSolution s = solveConic(p, opts);
    res.status = s.status;
    all_converged = all_converged && s.status == SolveStatus::converged;
    vars = s.y;
    res.psi = dual.psi_of_vars * vars;
    if (mode == ExtensionMode::chain) {
      res.step_errors.push_back((f_prev.transpose() * res.psi - target).norm());
      res.step_budgets.push_back(eps / std::pow(2.0, static_cast<double>(i + 1)));
      if (i + 1 < stages.size()) target = stages[i + 1].transpose() * res.psi;
    }
  }

  res.distance = (f_basis.transpose() * res.psi - phi).norm();
  res.within_eps = res.distance <= eps;
  if (!all_converged) res.status = SolveStatus::max_iter;
  if (cone.kind == FiniteCone::Kind::polyhedral && res.distance <= 1e-7)
    res.certified_exact = certifyPolyhedralExact(cone, f_basis, phi, res.psi);
  return res;
}

}  // namespace nct
