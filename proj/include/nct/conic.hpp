#ifndef NCT_CONIC_HPP
#define NCT_CONIC_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace nct {

// nearest PSD matrix in Frobenius distance (negative eigenvalues clipped)
Eigen::MatrixXd projectPsd(const Eigen::MatrixXd& m, double herm_tol = 1e-9);
Eigen::MatrixXcd projectPsd(const Eigen::MatrixXcd& m, double herm_tol = 1e-9);

// affine map y -> C + sum_d y_d A_d into symmetric matrices
struct AffineBlock {
  Eigen::MatrixXd constant;
  std::vector<Eigen::MatrixXd> coeff;  // one symmetric matrix per variable

  int size() const { return static_cast<int>(constant.rows()); }
  Eigen::MatrixXd eval(const Eigen::VectorXd& y) const;
  // adjoint: d-th entry is <coeff[d], W>_F
  Eigen::VectorXd applyAdjoint(const Eigen::MatrixXd& w) const;
};

// minimize ||S y - t||^2 + q.y + ridge ||y||^2
//   s.t.  L y = c,  each AffineBlock(y) PSD
struct ConicProblem {
  int dim = 0;
  Eigen::MatrixXd S;  // 0 x dim allowed (pure feasibility)
  Eigen::VectorXd t;
  Eigen::VectorXd q;  // empty = zero
  double ridge = 0.0;
  Eigen::MatrixXd L;  // 0 x dim allowed
  Eigen::VectorXd c;
  std::vector<AffineBlock> blocks;

  static ConicProblem make(int dim);
  double objective(const Eigen::VectorXd& y) const;
};

enum class SolveStatus { converged, max_iter, infeasible_certificate };

struct ConicSolveOptions {
  double tol = 1e-8;
  long max_iter = 50000;
  double rho = 1.0;
  double over_relaxation = 1.6;
  long rho_update_every = 50;
  std::optional<Eigen::VectorXd> warm_start;
};

struct ConicSolution {
  Eigen::VectorXd y;
  double objective_value = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double min_eig = 0;
  long iterations = 0;
  SolveStatus status = SolveStatus::max_iter;
  std::string note;
  std::vector<Eigen::MatrixXd> psd_blocks;  // projected iterates, exactly PSD
};

// ADMM splitting between the affine-plus-quadratic part and the PSD
// projections; deterministic given inputs.
ConicSolution solveConic(const ConicProblem& p, const ConicSolveOptions& opts = {});

// ---- positive extension ----------------------------------------------------

struct FiniteCone {
  enum class Kind { polyhedral, spectrahedral };
  Kind kind = Kind::polyhedral;
  int ambient = 0;
  Eigen::MatrixXd generators;          // ambient x N, nonzero columns
  std::vector<Eigen::MatrixXd> lmi;    // { x : sum_d x_d lmi[d] PSD }

  static FiniteCone polyhedral(Eigen::MatrixXd gens);
  static FiniteCone spectrahedral(std::vector<Eigen::MatrixXd> lmi_maps, int ambient);
};

enum class ExtensionMode { direct, chain };

struct ExtensionResult {
  bool precondition_ok = true;
  Eigen::VectorXd witness;  // point of B ∩ F with phi < 0, when violated
  double witness_value = 0;
  Eigen::VectorXd psi;      // functional on the ambient space
  double distance = 0;      // ||psi|_F - phi|| in F_basis coordinates
  bool within_eps = false;
  bool certified_exact = false;  // rational feasibility re-check (polyhedral)
  std::vector<double> step_errors;   // chain mode
  std::vector<double> step_budgets;  // eps / 2^i
  SolveStatus status = SolveStatus::max_iter;
};

// Extends phi (given in F_basis coordinates, nonnegative on B ∩ span F) to a
// functional psi nonnegative on B with ||psi|_F - phi|| <= eps. Direct mode
// solves once over the dual cone; chain mode extends along a prefix-nested
// subspace chain with per-step budget eps/2^i.
//
// The direct-mode infimum over a spectrahedral dual cone need not be
// attained (projections of spectrahedra are not always closed); the solver
// then reports the achieved iterate and distance, and the chain mode is the
// step-budgeted alternative.
ExtensionResult positiveExtension(const FiniteCone& cone, const Eigen::MatrixXd& f_basis,
                                  const Eigen::VectorXd& phi, double eps,
                                  ExtensionMode mode = ExtensionMode::direct,
                                  const std::vector<Eigen::MatrixXd>& chain = {},
                                  const ConicSolveOptions& solver_opts = {});

}  // namespace nct

#endif
