#ifndef NCT_TRACE_HPP
#define NCT_TRACE_HPP

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include "nct/cyclic.hpp"
#include "nct/genmat.hpp"
#include "nct/linalg_exact.hpp"
#include "nct/poly.hpp"

namespace nct {

// A unital tracial functional truncated at degree m, stored as real
// coordinates over the cyclic class index: one slot per self-paired class,
// (re, im) per conjugate pair. Trace property and conjugate symmetry hold
// by construction, tau(1) = 1 is slot 0.
struct TruncatedTrace {
  std::shared_ptr<const ClassIndex> index;
  Eigen::VectorXd values;

  TruncatedTrace() = default;
  explicit TruncatedTrace(std::shared_ptr<const ClassIndex> idx)
      : index(std::move(idx)), values(Eigen::VectorXd::Zero(index->realDim())) {
    values[0] = 1.0;  // class 0 is the unit word
  }

  int n() const { return index->n(); }
  int m() const { return index->m(); }

  std::complex<double> classValue(int c) const {
    double re = values[index->reSlot(c)];
    double im = index->imSlot(c) < 0 ? 0.0 : index->imSign(c) * values[index->imSlot(c)];
    return {re, im};
  }
  void setClassValue(int c, std::complex<double> v) {
    values[index->reSlot(c)] = v.real();
    if (index->imSlot(c) >= 0) values[index->imSlot(c)] = index->imSign(c) * v.imag();
  }
  std::complex<double> wordValue(const Word& w) const { return classValue(index->classOf(w)); }

  std::complex<double> evaluate(const CPoly& p) const;
  std::complex<double> evaluate(const XPoly& p) const { return evaluate(toComplexPoly(p)); }
};

// exact mirror used by the rational backends
struct ExactTrace {
  std::shared_ptr<const ClassIndex> index;
  std::vector<GRat> class_values;  // one per class, conjugate-consistent

  ExactTrace() = default;
  explicit ExactTrace(std::shared_ptr<const ClassIndex> idx)
      : index(std::move(idx)), class_values(static_cast<size_t>(index->classCount())) {
    class_values[0] = GRat(1);
  }

  int n() const { return index->n(); }
  int m() const { return index->m(); }

  const GRat& wordValue(const Word& w) const {
    return class_values[static_cast<size_t>(index->classOf(w))];
  }
  GRat evaluate(const XPoly& p) const;
};

TruncatedTrace toFloat(const ExactTrace& t);

// ---- moment matrices -------------------------------------------------------

// M_{u,v} = tau(u* v) over deglex words of degree <= d; requires 2d <= m
Eigen::MatrixXcd momentMatrix(const TruncatedTrace& tau, int d);
Mat<GRat> momentMatrixExact(const ExactTrace& tau, int d);

double momentMinEig(const TruncatedTrace& tau, int d);
bool isPositive(const TruncatedTrace& tau, int d, double tol = 1e-9);
bool isPositiveExact(const ExactTrace& tau, int d);

// ---- trace constructors ----------------------------------------------------

// tau(w) = tr(eval(w, t))/k on cyclic classes; requires a self-adjoint tuple
TruncatedTrace traceFromMatrices(const MatrixTupleC& t, int m);
ExactTrace traceFromMatricesExact(const MatrixTupleX& t, int m);

// Monte Carlo estimate of the psi-normalized trace with psi the standard
// Gaussian density on self-adjoint tuples (GUE scaling, entry variance 1/k).
// Exactly unital and cyclically symmetric by construction; per-slot standard
// errors reported.
struct PsiTrace {
  TruncatedTrace trace;
  Eigen::VectorXd stderrs;  // per real slot; slot 0 is exact
  long samples = 0;

  // conservative standard error of evaluate(trace, p) for hermitian p
  double evalStderr(const CPoly& p) const;
};

PsiTrace psiNormalizedTrace(int k, int n, int m, long samples, uint64_t seed);

// tau(word) = number of non-crossing pair partitions matching equal letters
ExactTrace semicircularTrace(int n, int m);

// ---- kernels (Z_tau truncations) -------------------------------------------

// null space of the order-d moment matrix: coefficient vectors over words of
// degree <= d with vanishing 2-norm
std::vector<Eigen::VectorXcd> traceKernel(const TruncatedTrace& tau, int d, double tol = 1e-9);
std::vector<std::vector<GRat>> traceKernelExact(const ExactTrace& tau, int d);

}  // namespace nct

#endif
