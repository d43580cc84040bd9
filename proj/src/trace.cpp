#include "nct/trace.hpp"

#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "nct/rng.hpp"

namespace nct {

namespace {

void checkDegree(int have_m, std::optional<int> deg, const char* who) {
  if (deg && *deg > have_m)
    throw std::out_of_range(std::string(who) + ": degree exceeds trace truncation");
}

void checkOrder(int m, int d, const char* who) {
  if (d < 0 || 2 * d > m)
    throw std::out_of_range(std::string(who) + ": need 2d <= m");
}

}  // namespace

std::complex<double> TruncatedTrace::evaluate(const CPoly& p) const {
  checkDegree(m(), p.degree(), "TruncatedTrace::evaluate");
  std::complex<double> acc = 0.0;
  for (const auto& [w, c] : p.terms()) acc += c * wordValue(w);
  return acc;
}

GRat ExactTrace::evaluate(const XPoly& p) const {
  checkDegree(m(), p.degree(), "ExactTrace::evaluate");
  GRat acc;
  for (const auto& [w, c] : p.terms()) acc += c * wordValue(w);
  return acc;
}

TruncatedTrace toFloat(const ExactTrace& t) {
  TruncatedTrace out(t.index);
  for (int c = 0; c < t.index->classCount(); ++c)
    if (c == t.index->holder(c)) out.setClassValue(c, toComplex(t.class_values[static_cast<size_t>(c)]));
  return out;
}

// ---- moment matrices -------------------------------------------------------

Eigen::MatrixXcd momentMatrix(const TruncatedTrace& tau, int d) {
  checkOrder(tau.m(), d, "momentMatrix");
  std::vector<Word> words = wordsUpToDegree(tau.n(), d);
  int w = static_cast<int>(words.size());
  Eigen::MatrixXcd mm(w, w);
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j)
      mm(i, j) = tau.wordValue(words[static_cast<size_t>(i)].reversed().concat(words[static_cast<size_t>(j)]));
  return mm;
}

Mat<GRat> momentMatrixExact(const ExactTrace& tau, int d) {
  checkOrder(tau.m(), d, "momentMatrixExact");
  std::vector<Word> words = wordsUpToDegree(tau.n(), d);
  int w = static_cast<int>(words.size());
  Mat<GRat> mm(w, w);
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j)
      mm(i, j) = tau.wordValue(words[static_cast<size_t>(i)].reversed().concat(words[static_cast<size_t>(j)]));
  return mm;
}

double momentMinEig(const TruncatedTrace& tau, int d) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(momentMatrix(tau, d), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool isPositive(const TruncatedTrace& tau, int d, double tol) {
  return momentMinEig(tau, d) >= -tol;
}

bool isPositiveExact(const ExactTrace& tau, int d) {
  return exactPsdCheck(momentMatrixExact(tau, d));
}

// ---- trace constructors ----------------------------------------------------

TruncatedTrace traceFromMatrices(const MatrixTupleC& t, int m) {
  if (!isSelfAdjoint(t)) throw std::invalid_argument("traceFromMatrices: tuple is not self-adjoint");
  auto index = ClassIndex::build(static_cast<int>(t.mats.size()), m);
  TruncatedTrace tau(index);
  WordCache<Eigen::MatrixXcd> cache(t.mats, Eigen::MatrixXcd::Identity(t.k, t.k));
  for (int c = 0; c < index->classCount(); ++c) {
    if (c != index->holder(c)) continue;
    tau.setClassValue(c, cache.get(index->representative(c)).trace() / static_cast<double>(t.k));
  }
  return tau;
}

ExactTrace traceFromMatricesExact(const MatrixTupleX& t, int m) {
  if (!isSelfAdjoint(t)) throw std::invalid_argument("traceFromMatricesExact: tuple is not self-adjoint");
  auto index = ClassIndex::build(static_cast<int>(t.mats.size()), m);
  ExactTrace tau(index);
  WordCache<Mat<GRat>> cache(t.mats, Mat<GRat>::identity(t.k, GRat(1)));
  GRat inv_k(Rat(1, t.k));
  for (int c = 0; c < index->classCount(); ++c) {
    int h = index->holder(c);
    if (c == h) {
      tau.class_values[static_cast<size_t>(c)] = traceOf(cache.get(index->representative(c))) * inv_k;
    } else {
      tau.class_values[static_cast<size_t>(c)] =
          conj(traceOf(cache.get(index->representative(h))) * inv_k);
    }
  }
  return tau;
}

// ---- psi-normalized trace ---------------------------------------------------

namespace {

struct BlockStats {
  std::vector<double> sum_re, sum_im, sq_re, sq_im;
};

BlockStats psiBlock(int k, int n, const std::vector<Word>& holders, long count, uint64_t seed) {
  BlockStats st;
  st.sum_re.assign(holders.size(), 0.0);
  st.sum_im.assign(holders.size(), 0.0);
  st.sq_re.assign(holders.size(), 0.0);
  st.sq_im.assign(holders.size(), 0.0);
  double stddev = 1.0 / std::sqrt(static_cast<double>(k));
  for (long s = 0; s < count; ++s) {
    MatrixTupleC t = randomSelfAdjointTupleC(k, n, Rng::derive(seed, static_cast<uint64_t>(s)), stddev);
    WordCache<Eigen::MatrixXcd> cache(t.mats, Eigen::MatrixXcd::Identity(k, k));
    for (size_t h = 0; h < holders.size(); ++h) {
      std::complex<double> z = cache.get(holders[h]).trace() / static_cast<double>(k);
      st.sum_re[h] += z.real();
      st.sum_im[h] += z.imag();
      st.sq_re[h] += z.real() * z.real();
      st.sq_im[h] += z.imag() * z.imag();
    }
  }
  return st;
}

}  // namespace

PsiTrace psiNormalizedTrace(int k, int n, int m, long samples, uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("psiNormalizedTrace: need samples >= 1");
  if (k < 1) throw std::invalid_argument("psiNormalizedTrace: need k >= 1");
  auto index = ClassIndex::build(n, m);

  std::vector<Word> holders;
  std::vector<int> holder_class;
  for (int c = 0; c < index->classCount(); ++c) {
    if (c != index->holder(c) || c == 0) continue;  // unit class is exact
    holders.push_back(index->representative(c));
    holder_class.push_back(c);
  }

  const long block_size = 4096;
  long nblocks = (samples + block_size - 1) / block_size;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<BlockStats> stats(static_cast<size_t>(nblocks));
  for (long b0 = 0; b0 < nblocks; b0 += workers) {
    std::vector<std::future<BlockStats>> futs;
    for (long b = b0; b < std::min(nblocks, b0 + static_cast<long>(workers)); ++b) {
      long count = std::min(block_size, samples - b * block_size);
      futs.push_back(std::async(std::launch::async, psiBlock, k, n, std::cref(holders), count,
                                Rng::derive(seed, 0x7000 + static_cast<uint64_t>(b))));
    }
    for (long b = b0; b < std::min(nblocks, b0 + static_cast<long>(workers)); ++b)
      stats[static_cast<size_t>(b)] = futs[static_cast<size_t>(b - b0)].get();
  }

  PsiTrace out;
  out.trace = TruncatedTrace(index);
  out.stderrs = Eigen::VectorXd::Zero(index->realDim());
  out.samples = samples;
  double ns = static_cast<double>(samples);
  for (size_t h = 0; h < holders.size(); ++h) {
    double sre = 0, sim = 0, qre = 0, qim = 0;
    for (const auto& st : stats) {
      sre += st.sum_re[h];
      sim += st.sum_im[h];
      qre += st.sq_re[h];
      qim += st.sq_im[h];
    }
    double mre = sre / ns, mim = sim / ns;
    int c = holder_class[h];
    out.trace.setClassValue(c, {mre, mim});
    double var_re = std::max(0.0, qre / ns - mre * mre);
    double var_im = std::max(0.0, qim / ns - mim * mim);
    out.stderrs[index->reSlot(c)] = std::sqrt(var_re / ns);
    if (index->imSlot(c) >= 0) out.stderrs[index->imSlot(c)] = std::sqrt(var_im / ns);
  }
  return out;
}

double PsiTrace::evalStderr(const CPoly& p) const {
  // |se(sum c_w tau(w))| <= sum |c_w| * se(class slots touched by w)
  double acc = 0.0;
  const auto& idx = *trace.index;
  for (const auto& [w, c] : p.terms()) {
    int cls = idx.classOf(w);
    double se = stderrs[idx.reSlot(cls)];
    if (idx.imSlot(cls) >= 0) se += stderrs[idx.imSlot(cls)];
    acc += std::abs(c) * se;
  }
  return acc;
}

// ---- semicircular trace ------------------------------------------------------

namespace {

long countNonCrossingPairings(const std::vector<int>& letters, int lo, int hi,
                              std::vector<std::vector<long>>& memo) {
  if (lo > hi) return 1;
  if ((hi - lo + 1) % 2 != 0) return 0;
  long& m = memo[static_cast<size_t>(lo)][static_cast<size_t>(hi)];
  if (m >= 0) return m;
  long total = 0;
  for (int t = lo + 1; t <= hi; t += 2) {
    if (letters[static_cast<size_t>(t)] != letters[static_cast<size_t>(lo)]) continue;
    total += countNonCrossingPairings(letters, lo + 1, t - 1, memo) *
             countNonCrossingPairings(letters, t + 1, hi, memo);
  }
  m = total;
  return total;
}

}  // namespace

ExactTrace semicircularTrace(int n, int m) {
  auto index = ClassIndex::build(n, m);
  ExactTrace tau(index);
  for (int c = 1; c < index->classCount(); ++c) {
    const Word& w = index->representative(c);
    int d = w.degree();
    std::vector<std::vector<long>> memo(static_cast<size_t>(d),
                                        std::vector<long>(static_cast<size_t>(d), -1));
    long count = countNonCrossingPairings(w.letters(), 0, d - 1, memo);
    tau.class_values[static_cast<size_t>(c)] = GRat(count);
  }
  return tau;
}

// ---- kernels -----------------------------------------------------------------

std::vector<Eigen::VectorXcd> traceKernel(const TruncatedTrace& tau, int d, double tol) {
  Eigen::MatrixXcd mm = momentMatrix(tau, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mm);
  double lead = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Eigen::VectorXcd> out;
  for (int i = 0; i < mm.rows(); ++i)
    if (std::abs(es.eigenvalues()[i]) <= tol * lead) out.push_back(es.eigenvectors().col(i));
  return out;
}

std::vector<std::vector<GRat>> traceKernelExact(const ExactTrace& tau, int d) {
  return nullspace(momentMatrixExact(tau, d));
}

}  // namespace nct
