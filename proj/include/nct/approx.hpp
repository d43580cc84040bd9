#ifndef NCT_APPROX_HPP
#define NCT_APPROX_HPP

#include <optional>
#include <string>
#include <vector>

#include "nct/conic.hpp"
#include "nct/genmat.hpp"
#include "nct/trace.hpp"

namespace nct {

// Sum-of-hermitian-squares witness modulo commutators: a PSD Gram matrix
// over words of degree <= d together with the extracted squares.
struct GramCertificate {
  int d = 0;
  Eigen::MatrixXcd gram;
  std::vector<CPoly> squares;
  double residual = 0;       // coefficient norm of cyclicNormalForm(P - sum P_i* P_i)
  int rank = 0;
  long caratheodory_bound = 0;  // (n+1)^{2d}
};

enum class SosStatus { feasible, infeasible, inconclusive };

struct SosResult {
  SosStatus status = SosStatus::inconclusive;
  std::optional<GramCertificate> certificate;
  // separating positive truncated trace with tau(P) < 0, when infeasible
  std::optional<TruncatedTrace> witness;
  double witness_value = 0;
  double fit_residual = 0;  // achieved ||class sums - target||
  ConicSolution diagnostics;
};

struct SosOptions {
  double residual_tol = 1e-6;
  int jk = 0;  // when > 0, check membership modulo J_k as well
  ConicSolveOptions solver{.tol = 1e-10, .max_iter = 200000};
};

// Membership of a hermitian P in the closed cone of tracial sums of squares
// (optionally modulo J_k) at truncation 2d.
SosResult tracialSosCheck(const XPoly& p, int d, const SosOptions& opts = {});

// eigendecomposition-based extraction; count of squares = numerical rank
std::vector<CPoly> extractSquares(const Eigen::MatrixXcd& gram, int d, int n,
                                  double rank_tol = 1e-9);

// ---- trace approximation -----------------------------------------------------

struct ApproximationReport {
  int k = 0, m = 0, working_degree = 0;
  double distance = 0;  // coordinate 2-norm restricted to degree <= m slots
  TruncatedTrace tau_k;
  int jk_dim = 0;
  std::string status;  // "converged" | "max_iter" | "infeasible_certificate"
  long iterations = 0;
  double min_eig = 0;
  double max_identity_violation = 0;
};

struct ApproxOptions {
  double tol = 1e-8;
  uint64_t seed = 0;  // drives the identity-basis sampling and the fallback warm start
  long psi_warm_start_samples = 4000;
  ConicSolveOptions solver{.tol = 1e-9, .max_iter = 200000};
};

// Nearest (in degree <= m coordinates) unital trace with PSD moment matrix of
// order M/2 vanishing on the degree <= M truncation of J_k.
ApproximationReport approximateTrace(const TruncatedTrace& tau, int k, int working_degree,
                                     const ApproxOptions& opts = {});

std::vector<std::pair<int, double>> convergenceReport(const TruncatedTrace& tau,
                                                      const std::vector<int>& ks,
                                                      int working_degree,
                                                      const ApproxOptions& opts = {});

// moment-matrix PSD block over the real class coordinates (shared helper)
AffineBlock momentBlock(const ClassIndex& index, int d);

}  // namespace nct

#endif
