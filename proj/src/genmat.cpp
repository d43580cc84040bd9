#include "nct/genmat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nct {

namespace {

constexpr int kMaxMatrixSize = 4;
constexpr int kMaxDegree = 8;
constexpr int kMaxAlphabet = 4;

void checkEnvelope(int k, int n, int m) {
  if (k < 1 || k > kMaxMatrixSize || n < 1 || n > kMaxAlphabet || m < 0 || m > kMaxDegree)
    throw std::domain_error("identity ideal: supported envelope is k <= 4, n <= 4, degree <= 8");
}

Mat<GRat> grIdentity(int k) { return Mat<GRat>::identity(k, GRat(1)); }

}  // namespace

// ---- random tuples ---------------------------------------------------------

MatrixTupleX randomSelfAdjointTupleX(int k, int n, uint64_t seed) {
  Rng rng(seed);
  MatrixTupleX t;
  t.k = k;
  t.selfadjoint = true;
  for (int l = 0; l < n; ++l) {
    Mat<GRat> b(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        b(i, j) = GRat(ratOf(rng.uniformInt(-20, 20)), ratOf(rng.uniformInt(-20, 20)));
    Mat<GRat> h = b + adjointOf(b);
    t.mats.push_back(h.scaled(GRat(Rat(1, 2))));
  }
  return t;
}

MatrixTupleX randomComplexTupleX(int k, int n, uint64_t seed) {
  Rng rng(seed);
  MatrixTupleX t;
  t.k = k;
  t.selfadjoint = false;
  for (int l = 0; l < n; ++l) {
    Mat<GRat> b(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        b(i, j) = GRat(ratOf(rng.uniformInt(-20, 20)), ratOf(rng.uniformInt(-20, 20)));
    t.mats.push_back(std::move(b));
  }
  return t;
}

MatrixTupleC randomSelfAdjointTupleC(int k, int n, uint64_t seed, double entry_stddev) {
  Rng rng(seed);
  MatrixTupleC t;
  t.k = k;
  t.selfadjoint = true;
  for (int l = 0; l < n; ++l) {
    Eigen::MatrixXcd b(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        b(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian()) * entry_stddev;
    t.mats.push_back(0.5 * (b + b.adjoint().eval()));
  }
  return t;
}

bool isSelfAdjoint(const MatrixTupleX& t) {
  for (const auto& m : t.mats)
    if (!(adjointOf(m) == m)) return false;
  return true;
}

bool isSelfAdjoint(const MatrixTupleC& t, double tol) {
  for (const auto& m : t.mats)
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

// ---- evaluation ------------------------------------------------------------

Mat<GRat> evalPoly(const XPoly& p, const MatrixTupleX& t) {
  if (static_cast<int>(t.mats.size()) != p.alphabetSize())
    throw std::invalid_argument("evalPoly: tuple arity mismatch");
  WordCache<Mat<GRat>> cache(t.mats, grIdentity(t.k));
  Mat<GRat> acc(t.k, t.k);
  for (const auto& [w, c] : p.terms()) acc += cache.get(w).scaled(c);
  return acc;
}

Eigen::MatrixXcd evalPoly(const CPoly& p, const MatrixTupleC& t) {
  if (static_cast<int>(t.mats.size()) != p.alphabetSize())
    throw std::invalid_argument("evalPoly: tuple arity mismatch");
  WordCache<Eigen::MatrixXcd> cache(t.mats, Eigen::MatrixXcd::Identity(t.k, t.k));
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(t.k, t.k);
  for (const auto& [w, c] : p.terms()) acc += c * cache.get(w);
  return acc;
}

Eigen::MatrixXcd evalPoly(const XPoly& p, const MatrixTupleC& t) {
  return evalPoly(toComplexPoly(p), t);
}

// ---- standard polynomial ---------------------------------------------------

XPoly standardPoly(int k) {
  if (k < 1 || k > 4) throw std::domain_error("standardPoly: supported range is 1 <= k <= 4");
  int len = 2 * k;
  std::vector<int> perm(static_cast<size_t>(len));
  std::iota(perm.begin(), perm.end(), 0);
  XPoly p(len);
  do {
    int inversions = 0;
    for (int i = 0; i < len; ++i)
      for (int j = i + 1; j < len; ++j)
        if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inversions;
    p.addTerm(Word(perm), GRat(inversions % 2 == 0 ? 1 : -1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

// ---- identity basis --------------------------------------------------------

namespace {

// hermitian coordinate on the span of a word and its reversal
struct HermCoord {
  Word w;
  enum Type { palindrome, sum, diff } type;  // w | w + w* | i(w - w*)
};

XPoly coordPoly(const HermCoord& h, int n) {
  XPoly p(n);
  switch (h.type) {
    case HermCoord::palindrome:
      p.addTerm(h.w, GRat(1));
      break;
    case HermCoord::sum:
      p.addTerm(h.w, GRat(1));
      p.addTerm(h.w.reversed(), GRat(1));
      break;
    case HermCoord::diff:
      p.addTerm(h.w, grI());
      p.addTerm(h.w.reversed(), -grI());
      break;
  }
  return p;
}

void enumCompositions(int n, int budget, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int d = 0; d <= budget; ++d) {
    cur.push_back(d);
    enumCompositions(n, budget - d, cur, out);
    cur.pop_back();
  }
}

std::vector<Word> wordsWithMultidegree(const std::vector<int>& mdeg) {
  std::vector<int> letters;
  for (size_t l = 0; l < mdeg.size(); ++l)
    for (int c = 0; c < mdeg[l]; ++c) letters.push_back(static_cast<int>(l));
  std::vector<Word> out;
  if (letters.empty()) {
    out.push_back(Word::unit());
    return out;
  }
  do {
    out.emplace_back(letters);
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

// lazily grown pool of sampled tuples with per-tuple evaluation caches
class TuplePool {
 public:
  TuplePool(int k, int n, uint64_t seed) : k_(k), n_(n), seed_(seed) {}

  WordCache<Mat<GRat>>& cache(int i) {
    while (static_cast<int>(caches_.size()) <= i) {
      auto t = randomSelfAdjointTupleX(k_, n_, Rng::derive(seed_, caches_.size()));
      caches_.emplace_back(std::move(t.mats), grIdentity(k_));
    }
    return caches_[static_cast<size_t>(i)];
  }

  int used() const { return static_cast<int>(caches_.size()); }

 private:
  int k_, n_;
  uint64_t seed_;
  std::vector<WordCache<Mat<GRat>>> caches_;
};

// k^2 real coordinates of a hermitian Gaussian-rational matrix
void hermitianRealCoords(const Mat<GRat>& e, std::vector<Rat>& out) {
  int k = e.rows();
  for (int i = 0; i < k; ++i) {
    if (!(e(i, i).im == 0)) throw std::logic_error("hermitianRealCoords: non-real diagonal");
    out.push_back(e(i, i).re);
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      out.push_back(e(i, j).re);
      out.push_back(e(i, j).im);
    }
}

Mat<GRat> evalCoord(const HermCoord& h, WordCache<Mat<GRat>>& cache) {
  const Mat<GRat>& ew = cache.get(h.w);
  switch (h.type) {
    case HermCoord::palindrome:
      return ew;
    case HermCoord::sum:
      return ew + adjointOf(ew);
    case HermCoord::diff:
      return (ew - adjointOf(ew)).scaled(grI());
  }
  throw std::logic_error("unreachable");
}

}  // namespace

IdentityBasis identityBasis(int k, int n, int m, uint64_t seed) {
  checkEnvelope(k, n, m);
  IdentityBasis basis;
  basis.k = k;
  basis.n = n;
  basis.m = m;
  basis.word_basis = wordsUpToDegree(n, m);

  TuplePool pool(k, n, seed);

  // The ideal is multihomogeneous (scale each letter separately and use a
  // Vandermonde argument), so the kernel splits across multidegree blocks.
  std::vector<std::vector<int>> mdegs;
  {
    std::vector<int> cur;
    enumCompositions(n, m, cur, mdegs);
  }

  for (const auto& mdeg : mdegs) {
    std::vector<Word> words = wordsWithMultidegree(mdeg);
    std::vector<HermCoord> coords;
    for (const Word& w : words) {
      Word rev = w.reversed();
      if (w == rev) {
        coords.push_back({w, HermCoord::palindrome});
      } else if (w.letters() < rev.letters()) {
        coords.push_back({w, HermCoord::sum});
        coords.push_back({w, HermCoord::diff});
      }
    }
    int cols = static_cast<int>(coords.size());
    if (cols == 0) continue;

    int tuples = std::max(2, (2 * cols + k * k - 1) / (k * k));
    const int verify_tuples = 3;
    std::vector<XPoly> block_gens;
    bool settled = false;
    for (int attempt = 0; attempt < 12 && !settled; ++attempt) {
      Mat<Rat> a(tuples * k * k, cols);
      for (int t = 0; t < tuples; ++t) {
        auto& cache = pool.cache(t);
        for (int c = 0; c < cols; ++c) {
          std::vector<Rat> col_coords;
          hermitianRealCoords(evalCoord(coords[static_cast<size_t>(c)], cache), col_coords);
          for (int r = 0; r < k * k; ++r) a(t * k * k + r, c) = col_coords[static_cast<size_t>(r)];
        }
      }
      block_gens.clear();
      bool all_verified = true;
      for (const auto& v : nullspace(std::move(a))) {
        XPoly gen(n);
        for (int c = 0; c < cols; ++c)
          if (!(v[static_cast<size_t>(c)] == 0))
            gen += coordPoly(coords[static_cast<size_t>(c)], n) * GRat(v[static_cast<size_t>(c)]);
        for (int vt = 0; vt < verify_tuples; ++vt) {
          Mat<GRat> e(k, k);
          auto& cache = pool.cache(tuples + vt);
          for (const auto& [w, coef] : gen.terms()) e += cache.get(w).scaled(coef);
          if (!isZeroMat(e)) {
            all_verified = false;
            break;
          }
        }
        if (!all_verified) break;
        block_gens.push_back(std::move(gen));
      }
      if (all_verified) {
        settled = true;
      } else {
        tuples += verify_tuples;  // absorb the failing fresh samples and redo
      }
    }
    if (!settled) throw std::logic_error("identityBasis: randomized kernel failed to stabilize");
    for (auto& g : block_gens) basis.hermitian_generators.push_back(std::move(g));
  }
  basis.sample_count = pool.used();

  // canonical form: complexify the hermitian generators and reduce over the
  // deglex word basis
  if (!basis.hermitian_generators.empty()) {
    int cols = static_cast<int>(basis.word_basis.size());
    std::map<Word, int, DeglexLess> col_of;
    for (int j = 0; j < cols; ++j) col_of.emplace(basis.word_basis[static_cast<size_t>(j)], j);
    Mat<GRat> g(static_cast<int>(basis.hermitian_generators.size()), cols);
    for (size_t r = 0; r < basis.hermitian_generators.size(); ++r)
      for (const auto& [w, c] : basis.hermitian_generators[r].terms())
        g(static_cast<int>(r), col_of.at(w)) = c;
    rref(g);
    for (int r = 0; r < g.rows(); ++r) {
      std::vector<GRat> v(static_cast<size_t>(cols));
      bool nonzero = false;
      for (int j = 0; j < cols; ++j) {
        v[static_cast<size_t>(j)] = g(r, j);
        nonzero = nonzero || !g(r, j).isZero();
      }
      if (nonzero) basis.vectors.push_back(std::move(v));
    }
    if (basis.vectors.size() != basis.hermitian_generators.size())
      throw std::logic_error("identityBasis: hermitian generators collapsed under complex reduction");
  }
  return basis;
}

std::vector<XPoly> IdentityBasis::polys() const {
  std::vector<XPoly> out;
  for (const auto& v : vectors) {
    XPoly p(n);
    for (size_t j = 0; j < v.size(); ++j)
      if (!v[j].isZero()) p.addTerm(word_basis[j], v[j]);
    out.push_back(std::move(p));
  }
  return out;
}

bool isIdentity(const XPoly& p, const IdentityBasis& basis) {
  if (p.alphabetSize() != basis.n)
    throw std::invalid_argument("isIdentity: alphabet mismatch with basis");
  auto deg = p.degree();
  if (!deg) return true;
  if (*deg > basis.m) throw std::invalid_argument("isIdentity: degree beyond basis truncation");

  std::map<Word, int, DeglexLess> col_of;
  for (size_t j = 0; j < basis.word_basis.size(); ++j)
    col_of.emplace(basis.word_basis[j], static_cast<int>(j));
  std::vector<GRat> rem(basis.word_basis.size());
  for (const auto& [w, c] : p.terms()) rem[static_cast<size_t>(col_of.at(w))] = c;
  for (const auto& v : basis.vectors) {
    size_t pivot = 0;
    while (pivot < v.size() && v[pivot].isZero()) ++pivot;
    if (pivot == v.size()) continue;
    GRat f = rem[pivot];  // pivot entry of v is 1
    if (f.isZero()) continue;
    for (size_t j = pivot; j < v.size(); ++j) rem[j] -= f * v[j];
  }
  for (const auto& c : rem)
    if (!c.isZero()) return false;
  return true;
}

bool isIdentity(const XPoly& p, int k, uint64_t seed) {
  auto deg = p.degree();
  if (!deg) return true;
  IdentityBasis basis = identityBasis(k, p.alphabetSize(), *deg, seed);
  bool in_span = isIdentity(p, basis);
  if (in_span) {
    // members of J_k vanish on arbitrary complex tuples as well
    Mat<GRat> e = evalPoly(p, randomComplexTupleX(k, p.alphabetSize(), Rng::derive(seed, 0x9d5)));
    if (!isZeroMat(e)) throw std::logic_error("isIdentity: span member failed the complex-tuple check");
  }
  return in_span;
}

double identityWitnessMagnitude(const XPoly& p, int k, uint64_t seed) {
  MatrixTupleC t = randomSelfAdjointTupleC(k, p.alphabetSize(), seed);
  for (auto& m : t.mats) m /= m.norm();
  return evalPoly(p, t).cwiseAbs().maxCoeff();
}

// ---- generic matrices ------------------------------------------------------

void CommutativePoly::addTerm(const std::vector<int>& expo, const GRat& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms.emplace(expo, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms.erase(it);
  }
}

CommutativePoly& CommutativePoly::operator+=(const CommutativePoly& o) {
  for (const auto& [e, c] : o.terms) addTerm(e, c);
  return *this;
}

CommutativePoly& CommutativePoly::operator-=(const CommutativePoly& o) {
  for (const auto& [e, c] : o.terms) addTerm(e, -c);
  return *this;
}

CommutativePoly operator*(const CommutativePoly& a, const CommutativePoly& b) {
  CommutativePoly r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.addTerm(e, ca * cb);
    }
  return r;
}

CommutativePoly genericInvolution(const CommutativePoly& p, int n, int k) {
  CommutativePoly r;
  for (const auto& [e, c] : p.terms) {
    std::vector<int> te(e.size(), 0);
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          te[static_cast<size_t>(genericVarIndex(l, j, i, k))] =
              e[static_cast<size_t>(genericVarIndex(l, i, j, k))];
    r.addTerm(te, conj(c));
  }
  return r;
}

Mat<CommutativePoly> evalGeneric(const XPoly& p, int k) {
  int n = p.alphabetSize();
  auto deg = p.degree();
  int d = deg.value_or(0);
  double est = static_cast<double>(p.termCount()) * std::pow(static_cast<double>(k), std::max(d - 1, 0));
  if (k < 1 || k > 3 || d > 6 || est > 2e6)
    throw std::domain_error("evalGeneric: term-growth budget exceeded (k <= 3, degree <= 6)");

  int nvars = n * k * k;
  std::vector<Mat<CommutativePoly>> letters;
  for (int l = 0; l < n; ++l) {
    Mat<CommutativePoly> y(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        std::vector<int> e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(genericVarIndex(l, i, j, k))] = 1;
        y(i, j).addTerm(e, GRat(1));
      }
    letters.push_back(std::move(y));
  }
  Mat<CommutativePoly> id(k, k);
  {
    CommutativePoly one;
    one.addTerm(std::vector<int>(static_cast<size_t>(nvars), 0), GRat(1));
    for (int i = 0; i < k; ++i) id(i, i) = one;
  }
  WordCache<Mat<CommutativePoly>> cache(std::move(letters), std::move(id));
  Mat<CommutativePoly> acc(k, k);
  for (const auto& [w, c] : p.terms()) {
    const auto& ew = cache.get(w);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        CommutativePoly scaled;
        for (const auto& [e, cc] : ew(i, j).terms) scaled.addTerm(e, cc * c);
        acc(i, j) += scaled;
      }
  }
  return acc;
}

bool isZeroGenericMatrix(const Mat<CommutativePoly>& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).isZero()) return false;
  return true;
}

}  // namespace nct
