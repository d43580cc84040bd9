#include "nct/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "nct/rng.hpp"

namespace nct {

long phiExponent(long n) {
  if (n < 1) throw std::domain_error("phiExponent: need n >= 1");
  if (n % 2 != 0) n += 1;
  long e = n / 2 - 1;
  if (e > 60) throw std::domain_error("phiExponent: exponent overflow");
  return 1L << e;
}

long psiExponent(long p) {
  if (p < 2 || p % 2 != 0) throw std::domain_error("psiExponent: need even p >= 2");
  return phiExponent(2 * phiExponent(p / 2) + 4);
}

std::pair<long, long> theoremExponents(long p) {
  if (p < 2 || p % 2 != 0) throw std::domain_error("theoremExponents: need even p >= 2");
  long qprime = 1L << (p / 2 + 1);
  if (p % 4 != 0)
    throw std::domain_error("theoremExponents: q = 2^{2^{p/4-1}+1} needs 4 | p; use psiExponent");
  long inner = 1L << (p / 4 - 1);
  if (inner + 1 > 60) throw std::domain_error("theoremExponents: exponent overflow");
  long q = 1L << (inner + 1);
  return {q, qprime};
}

double pNorm(const TruncatedTrace& tau, const CPoly& a, long p) {
  if (p < 2 || p % 2 != 0) throw std::domain_error("pNorm: need even p >= 2");
  auto deg = a.degree();
  if (deg && *deg * p > tau.m()) throw std::out_of_range("pNorm: degree * p exceeds the truncation");
  CPoly b = involution(a) * a;
  CPoly acc = b;
  for (long i = 1; i < p / 2; ++i) acc = acc * b;
  double v = tau.evaluate(acc).real();
  return std::pow(std::max(v, 0.0), 1.0 / static_cast<double>(p));
}

double pNorm(const MatrixTupleC& t, const CPoly& a, long p) {
  if (p < 2 || p % 2 != 0) throw std::domain_error("pNorm: need even p >= 2");
  Eigen::MatrixXcd av = evalPoly(a, t);
  Eigen::MatrixXcd b = av.adjoint() * av;
  // binary powering of b^(p/2)
  long e = p / 2;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(b.rows(), b.cols());
  Eigen::MatrixXcd base = b;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  double v = (acc.trace().real()) / static_cast<double>(t.k);
  return std::pow(std::max(v, 0.0), 1.0 / static_cast<double>(p));
}

double schattenPNorm(const Eigen::MatrixXcd& a, long p, int k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  double s = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    s += std::pow(std::max(es.eigenvalues()[i], 0.0), static_cast<double>(p) / 2.0);
  return std::pow(s / k, 1.0 / static_cast<double>(p));
}

// ---- verifier suites --------------------------------------------------------

namespace {

struct Sampler {
  int k;
  MatrixTupleC tuple;

  static Sampler make(uint64_t seed) {
    Rng rng(seed);
    Sampler s;
    s.k = static_cast<int>(rng.uniformInt(2, 5));
    int nl = static_cast<int>(rng.uniformInt(2, 3));
    s.tuple = randomSelfAdjointTupleC(s.k, nl, rng.next());
    return s;
  }

  // random degree <= 2 element, evaluated
  Eigen::MatrixXcd element(uint64_t seed) const {
    Rng rng(seed);
    int n = static_cast<int>(tuple.mats.size());
    CPoly p(n);
    for (const Word& w : wordsUpToDegree(n, 2))
      p.addTerm(w, std::complex<double>(rng.gaussian(), rng.gaussian()) * 0.5);
    return evalPoly(p, tuple);
  }
};

double relSlack(double lhs, double rhs) { return (lhs - rhs) / std::max(std::abs(rhs), 1e-30); }

void record(ViolationReport& rep, double slack, uint64_t seed) {
  if (slack > rep.worst_slack || rep.trials == 0) {
    rep.worst_slack = slack;
    rep.worst_seed = seed;
  }
  ++rep.trials;
  rep.pass = rep.worst_slack <= ViolationReport::slack_tol;
}

}  // namespace

ViolationReport verifyCauchySchwarz(int max_factors, long trials, uint64_t seed) {
  ViolationReport rep{.inequality = "generalized-cauchy-schwarz"};
  for (long t = 0; t < trials; ++t) {
    uint64_t s = Rng::derive(seed, static_cast<uint64_t>(t));
    Rng rng(s);
    Sampler alg = Sampler::make(rng.next());
    int r = static_cast<int>(rng.uniformInt(2, max_factors));
    long phi = phiExponent(r);
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(alg.k, alg.k);
    double rhs = 1.0;
    for (int i = 0; i < r; ++i) {
      Eigen::MatrixXcd a = alg.element(rng.next());
      prod = prod * a;
      rhs *= schattenPNorm(a, 2 * phi, alg.k);
    }
    double lhs = std::abs(prod.trace() / static_cast<double>(alg.k));
    record(rep, relSlack(lhs, rhs), s);
  }
  return rep;
}

ViolationReport verifySumLemma(int max_factors, int max_summands, long trials, uint64_t seed) {
  ViolationReport rep{.inequality = "sum-lemma"};
  for (long t = 0; t < trials; ++t) {
    uint64_t s = Rng::derive(seed, static_cast<uint64_t>(t));
    Rng rng(s);
    Sampler alg = Sampler::make(rng.next());
    int r = static_cast<int>(rng.uniformInt(1, max_factors));
    int summands = static_cast<int>(rng.uniformInt(1, max_summands));
    long phi = phiExponent(r);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(alg.k, alg.k);
    double rhs_base = 0.0;
    for (int i = 0; i < summands; ++i) {
      Eigen::MatrixXcd a = alg.element(rng.next());
      sum += a;
      rhs_base += schattenPNorm(a, 2 * phi, alg.k);
    }
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(alg.k, alg.k);
    for (int i = 0; i < r; ++i) power = power * sum;
    double lhs = std::abs(power.trace() / static_cast<double>(alg.k));
    double rhs = std::pow(rhs_base, static_cast<double>(r));
    record(rep, relSlack(lhs, rhs), s);
  }
  return rep;
}

ViolationReport verifyHoelder(const std::vector<long>& ps, long trials, uint64_t seed) {
  ViolationReport rep{.inequality = "hoelder"};
  for (long t = 0; t < trials; ++t) {
    uint64_t s = Rng::derive(seed, static_cast<uint64_t>(t));
    Rng rng(s);
    Sampler alg = Sampler::make(rng.next());
    long p = ps[static_cast<size_t>(rng.uniformInt(0, static_cast<long>(ps.size()) - 1))];
    Eigen::MatrixXcd a = alg.element(rng.next());
    Eigen::MatrixXcd b = alg.element(rng.next());
    long mixed = phiExponent(p + 4);
    double lhs = schattenPNorm(a * b, p, alg.k);
    double rhs = schattenPNorm(a, mixed, alg.k) * schattenPNorm(b, mixed, alg.k);
    record(rep, relSlack(lhs, rhs), s);
  }
  return rep;
}

ViolationReport verifyMinkowski(const std::vector<long>& ps, long trials, uint64_t seed) {
  ViolationReport rep{.inequality = "minkowski"};
  for (long t = 0; t < trials; ++t) {
    uint64_t s = Rng::derive(seed, static_cast<uint64_t>(t));
    Rng rng(s);
    Sampler alg = Sampler::make(rng.next());
    long p = ps[static_cast<size_t>(rng.uniformInt(0, static_cast<long>(ps.size()) - 1))];
    Eigen::MatrixXcd a = alg.element(rng.next());
    Eigen::MatrixXcd b = alg.element(rng.next());
    long psi = psiExponent(p);
    double lhs = schattenPNorm(a + b, p, alg.k);
    double rhs = schattenPNorm(a, psi, alg.k) + schattenPNorm(b, psi, alg.k);
    record(rep, relSlack(lhs, rhs), s);
  }
  return rep;
}

// ---- trace reduction ----------------------------------------------------------

TraceReduction traceReduction(const TruncatedTrace& tau, int d, double tol) {
  Eigen::MatrixXcd mm = momentMatrix(tau, d);
  std::vector<Word> words = wordsUpToDegree(tau.n(), d);
  const int w = static_cast<int>(words.size());

  std::vector<Eigen::VectorXcd> kernel = traceKernel(tau, d, tol);
  // row-reduce the kernel with pivots on the highest deglex words, so the
  // quotient keeps the lowest words (the unit survives)
  int nk = static_cast<int>(kernel.size());
  Eigen::MatrixXcd rows(nk, w);
  for (int i = 0; i < nk; ++i) rows.row(i) = kernel[static_cast<size_t>(i)].transpose();
  std::vector<int> pivot_of_row(static_cast<size_t>(nk), -1);
  std::vector<bool> is_pivot(static_cast<size_t>(w), false);
  int rank = 0;
  for (int col = w - 1; col >= 0 && rank < nk; --col) {
    int sel = -1;
    double best = 1e-8;
    for (int r = rank; r < nk; ++r)
      if (std::abs(rows(r, col)) > best) {
        best = std::abs(rows(r, col));
        sel = r;
      }
    if (sel < 0) continue;
    rows.row(sel).swap(rows.row(rank));
    rows.row(rank) /= rows(rank, col);
    for (int r = 0; r < nk; ++r)
      if (r != rank && std::abs(rows(r, col)) > 0) rows.row(r) -= rows(r, col) * rows.row(rank);
    pivot_of_row[static_cast<size_t>(rank)] = col;
    is_pivot[static_cast<size_t>(col)] = true;
    ++rank;
  }

  TraceReduction red;
  std::vector<int> quotient_cols;
  for (int j = 0; j < w; ++j)
    if (!is_pivot[static_cast<size_t>(j)]) {
      quotient_cols.push_back(j);
      red.quotient_basis.push_back(words[static_cast<size_t>(j)]);
    }
  const int q = static_cast<int>(quotient_cols.size());

  red.representation = Eigen::MatrixXcd::Zero(q, w);
  for (int qi = 0; qi < q; ++qi) red.representation(qi, quotient_cols[static_cast<size_t>(qi)]) = 1.0;
  for (int r = 0; r < rank; ++r) {
    int pcol = pivot_of_row[static_cast<size_t>(r)];
    red.eliminated.push_back(words[static_cast<size_t>(pcol)]);
    // e_p = -sum_{free j} rows(r, j) e_j modulo the kernel
    for (int qi = 0; qi < q; ++qi)
      red.representation(qi, pcol) = -rows(r, quotient_cols[static_cast<size_t>(qi)]);
  }

  Eigen::MatrixXcd sel(w, q);
  sel.setZero();
  for (int qi = 0; qi < q; ++qi) sel(quotient_cols[static_cast<size_t>(qi)], qi) = 1.0;
  red.reduced_moment = sel.adjoint() * mm * sel;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(red.reduced_moment, Eigen::EigenvaluesOnly);
  red.min_eig = es.eigenvalues().size() > 0 ? es.eigenvalues().minCoeff() : 0.0;
  return red;
}

}  // namespace nct
