#ifndef NCT_NORMS_HPP
#define NCT_NORMS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nct/trace.hpp"

namespace nct {

// phi(n) = 2^{n/2 - 1} for even n, phi(n) = phi(n+1) for odd n
long phiExponent(long n);
// psi(p) = phi(2 phi(p/2) + 4), even p
long psiExponent(long p);
// (q, q') with q = 2^{2^{p/4-1}+1} (requires 4 | p) and q' = 2^{p/2+1}
std::pair<long, long> theoremExponents(long p);

// ||a||_p = tau((a*a)^{p/2})^{1/p}, even p; degree(a) * p must fit the
// truncation for trace-backed norms
double pNorm(const TruncatedTrace& tau, const CPoly& a, long p);
// matrix-backed norm, computed by binary powering of a*a
double pNorm(const MatrixTupleC& t, const CPoly& a, long p);

// eigenvalue route, used as the independent oracle and by the verifiers
double schattenPNorm(const Eigen::MatrixXcd& a, long p, int k);

struct ViolationReport {
  std::string inequality;
  long trials = 0;
  double worst_slack = 0;  // (lhs - rhs) / max(|rhs|, eps); <= 0 when satisfied
  uint64_t worst_seed = 0;
  bool pass = true;

  static constexpr double slack_tol = 1e-9;
};

// |tau(a_1...a_r)| <= prod ||a_i||_{2 phi(r)} on random matrix tracial algebras
ViolationReport verifyCauchySchwarz(int max_factors, long trials, uint64_t seed);
// |tau((a_1+...+a_s)^r)| <= (sum_i ||a_i||_{2 phi(r)})^r
ViolationReport verifySumLemma(int max_factors, int max_summands, long trials, uint64_t seed);
// ||ab||_p <= ||a||_{phi(p+4)} ||b||_{phi(p+4)} for p in ps
ViolationReport verifyHoelder(const std::vector<long>& ps, long trials, uint64_t seed);
// ||a+b||_p <= ||a||_{psi(p)} + ||b||_{psi(p)} for p in ps
ViolationReport verifyMinkowski(const std::vector<long>& ps, long trials, uint64_t seed);

// quotient of the degree <= d word space by the kernel of the moment matrix;
// the reduced moment matrix is strictly positive definite
struct TraceReduction {
  std::vector<Word> quotient_basis;        // words kept (lowest deglex)
  std::vector<Word> eliminated;            // pivot words, expressed in the basis
  Eigen::MatrixXcd representation;         // all words (deg <= d) -> quotient coords
  Eigen::MatrixXcd reduced_moment;
  double min_eig = 0;
};

TraceReduction traceReduction(const TruncatedTrace& tau, int d, double tol = 1e-9);

}  // namespace nct

#endif
