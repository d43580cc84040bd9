#include "nct/approx.hpp"

#include <cmath>
#include <stdexcept>

#include "nct/rng.hpp"

namespace nct {

namespace {

// real row vector of the functional tau -> Re tau(p) over the class slots;
// exact for hermitian p, where tau(p) is real automatically
Eigen::VectorXd coefficientRow(const CPoly& p, const ClassIndex& index) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(index.realDim());
  for (const auto& [w, c] : p.terms()) {
    int cls = index.classOf(w);
    row[index.reSlot(cls)] += c.real();
    if (index.imSlot(cls) >= 0) row[index.imSlot(cls)] -= c.imag() * index.imSign(cls);
  }
  return row;
}

}  // namespace

AffineBlock momentBlock(const ClassIndex& index, int d) {
  if (2 * d > index.m()) throw std::out_of_range("momentBlock: need 2d <= m");
  std::vector<Word> words = wordsUpToDegree(index.n(), d);
  int w = static_cast<int>(words.size());
  AffineBlock blk;
  blk.constant = Eigen::MatrixXd::Zero(2 * w, 2 * w);
  blk.coeff.assign(static_cast<size_t>(index.realDim()), Eigen::MatrixXd::Zero(2 * w, 2 * w));
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) {
      Word p = words[static_cast<size_t>(i)].reversed().concat(words[static_cast<size_t>(j)]);
      int cls = index.classOf(p);
      // entry value = y[re] + i * sign * y[im]; hermitian embeds as [[X,-Y],[Y,X]]
      Eigen::MatrixXd& re_mat = blk.coeff[static_cast<size_t>(index.reSlot(cls))];
      re_mat(i, j) += 1.0;
      re_mat(i + w, j + w) += 1.0;
      if (index.imSlot(cls) >= 0) {
        Eigen::MatrixXd& im_mat = blk.coeff[static_cast<size_t>(index.imSlot(cls))];
        double sign = index.imSign(cls);
        im_mat(i + w, j) += sign;
        im_mat(i, j + w) -= sign;
      }
    }
  return blk;
}

// ---- square extraction -------------------------------------------------------

std::vector<CPoly> extractSquares(const Eigen::MatrixXcd& gram, int d, int n, double rank_tol) {
  std::vector<Word> words = wordsUpToDegree(n, d);
  if (gram.rows() != static_cast<long>(words.size()))
    throw std::invalid_argument("extractSquares: Gram size does not match the word basis");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (gram + gram.adjoint()));
  double lead = std::max(es.eigenvalues().maxCoeff(), 0.0);
  if (es.eigenvalues().minCoeff() < -1e-7 * std::max(1.0, lead))
    throw std::invalid_argument("extractSquares: matrix is not PSD within tolerance");
  std::vector<CPoly> squares;
  for (int i = gram.rows() - 1; i >= 0; --i) {
    double lam = es.eigenvalues()[i];
    if (lam <= rank_tol * std::max(lead, 1e-30) || lam <= 1e-14) continue;
    // sum_i P_i* P_i = sum_{u,v} G_{u,v} u* v  with  P_i = sqrt(lam) conj(v_i)
    CPoly p(n);
    double s = std::sqrt(lam);
    for (size_t u = 0; u < words.size(); ++u)
      p.addTerm(words[u], s * std::conj(es.eigenvectors()(static_cast<long>(u), i)));
    if (!p.isZero()) squares.push_back(std::move(p));
  }
  return squares;
}

// ---- tracial sums of squares ---------------------------------------------------

SosResult tracialSosCheck(const XPoly& p, int d, const SosOptions& opts) {
  if (!isHermitian(p)) throw std::invalid_argument("tracialSosCheck: polynomial must be hermitian");
  auto deg = p.degree();
  if (deg && *deg > 2 * d) throw std::invalid_argument("tracialSosCheck: degree exceeds 2d");
  const int n = p.alphabetSize();
  auto index = ClassIndex::build(n, 2 * d);
  std::vector<Word> words = wordsUpToDegree(n, d);
  const int w = static_cast<int>(words.size());

  // hermitian Gram parametrization: diag + (re, im) above the diagonal
  struct ParamId {
    int re(int i, int j) const { return map_re[static_cast<size_t>(i * w_ + j)]; }
    int im(int i, int j) const { return map_im[static_cast<size_t>(i * w_ + j)]; }
    std::vector<int> map_re, map_im;
    int w_ = 0;
  } pid;
  pid.w_ = w;
  pid.map_re.assign(static_cast<size_t>(w * w), -1);
  pid.map_im.assign(static_cast<size_t>(w * w), -1);
  int nparams = 0;
  for (int i = 0; i < w; ++i) {
    pid.map_re[static_cast<size_t>(i * w + i)] = nparams++;
    for (int j = i + 1; j < w; ++j) {
      pid.map_re[static_cast<size_t>(i * w + j)] = nparams++;
      pid.map_im[static_cast<size_t>(i * w + j)] = nparams++;
    }
  }

  // optional J_k augmentation: P = sum G_uv u*v + sum mu_l h_l (mod C_cyc)
  std::vector<CPoly> jk_gens;
  if (opts.jk > 0) {
    IdentityBasis jb = identityBasis(opts.jk, n, 2 * d, 0);
    for (const auto& g : jb.hermitian_generators) jk_gens.push_back(toComplexPoly(g));
  }
  const int nvars = nparams + static_cast<int>(jk_gens.size());

  ConicProblem prob = ConicProblem::make(nvars);

  // PSD block: the 2w x 2w real embedding of G
  {
    AffineBlock blk;
    blk.constant = Eigen::MatrixXd::Zero(2 * w, 2 * w);
    blk.coeff.assign(static_cast<size_t>(nvars), Eigen::MatrixXd::Zero(2 * w, 2 * w));
    for (int i = 0; i < w; ++i) {
      Eigen::MatrixXd& di = blk.coeff[static_cast<size_t>(pid.re(i, i))];
      di(i, i) = 1.0;
      di(i + w, i + w) = 1.0;
      for (int j = i + 1; j < w; ++j) {
        Eigen::MatrixXd& re = blk.coeff[static_cast<size_t>(pid.re(i, j))];
        re(i, j) = re(j, i) = 1.0;
        re(i + w, j + w) = re(j + w, i + w) = 1.0;
        Eigen::MatrixXd& im = blk.coeff[static_cast<size_t>(pid.im(i, j))];
        im(i + w, j) = 1.0;
        im(j, i + w) = 1.0;
        im(i, j + w) = -1.0;
        im(j + w, i) = -1.0;
      }
    }
    prob.blocks.push_back(std::move(blk));
  }

  // least-squares rows: per cyclic class, sum of Gram entries = coefficient of
  // the class in the cyclic normal form of P
  XPoly pnf = cyclicNormalForm(p);
  std::vector<CPoly> jk_nf;
  for (const auto& g : jk_gens) jk_nf.push_back(cyclicNormalForm(g));
  {
    int rows = 2 * index->classCount();
    prob.S = Eigen::MatrixXd::Zero(rows, nvars);
    prob.t = Eigen::VectorXd::Zero(rows);
    for (int cls = 0; cls < index->classCount(); ++cls) {
      std::complex<double> target = toComplex(pnf.coeff(index->representative(cls)));
      prob.t[2 * cls] = target.real();
      prob.t[2 * cls + 1] = target.imag();
    }
    for (int i = 0; i < w; ++i)
      for (int j = 0; j < w; ++j) {
        Word prod = words[static_cast<size_t>(i)].reversed().concat(words[static_cast<size_t>(j)]);
        int cls = index->classOf(prod);
        // G_ij = re_ij + i im_ij (i<j), conj for i>j, real for i==j
        int re_id = i <= j ? pid.re(i, j) : pid.re(j, i);
        prob.S(2 * cls, re_id) += 1.0;
        if (i != j) {
          int im_id = i < j ? pid.im(i, j) : pid.im(j, i);
          prob.S(2 * cls + 1, im_id) += i < j ? 1.0 : -1.0;
        }
      }
    for (size_t l = 0; l < jk_nf.size(); ++l)
      for (const auto& [wd, c] : jk_nf[l].terms()) {
        int cls = index->classOfCanonical(wd);
        prob.S(2 * cls, nparams + static_cast<int>(l)) += c.real();
        prob.S(2 * cls + 1, nparams + static_cast<int>(l)) += c.imag();
      }
  }

  SosResult res;
  res.diagnostics = solveConic(prob, opts.solver);
  res.fit_residual = std::sqrt(std::max(0.0, res.diagnostics.objective_value));

  // reconstruct G from the projected (exactly PSD) iterate
  Eigen::MatrixXcd gram(w, w);
  {
    const Eigen::MatrixXd& b = res.diagnostics.psd_blocks.at(0);
    Eigen::MatrixXd x = 0.5 * (b.topLeftCorner(w, w) + b.bottomRightCorner(w, w));
    Eigen::MatrixXd y = 0.5 * (b.bottomLeftCorner(w, w) - b.topRightCorner(w, w));
    gram.real() = x;
    gram.imag() = y;
  }

  GramCertificate cert;
  cert.d = d;
  cert.gram = gram;
  cert.caratheodory_bound = 1;
  for (int i = 0; i < 2 * d; ++i) cert.caratheodory_bound *= (n + 1);
  cert.squares = extractSquares(gram, d, n, 1e-9);
  cert.rank = static_cast<int>(cert.squares.size());
  {
    CPoly sum(n);
    for (const auto& s : cert.squares) sum += involution(s) * s;
    CPoly diff = toComplexPoly(p) - sum;
    for (size_t l = 0; l < jk_gens.size(); ++l) {
      CPoly scaled = jk_gens[l];
      scaled *= std::complex<double>(res.diagnostics.y[nparams + static_cast<long>(l)], 0.0);
      diff -= scaled;
    }
    cert.residual = coeffNorm(cyclicNormalForm(diff));
  }

  if (cert.residual <= opts.residual_tol) {
    res.status = SosStatus::feasible;
    res.certificate = cert;
    return res;
  }

  // dual search: a positive unital truncated trace (vanishing on the J_k
  // generators when given) with tau(P) < 0 separates P from the cone
  {
    ConicProblem dual = ConicProblem::make(index->realDim());
    dual.blocks.push_back(momentBlock(*index, d));
    // bounded feasible region: sum of diagonal moments <= C
    {
      AffineBlock cap;
      double bound = 16.0 * w;
      cap.constant = bound * Eigen::MatrixXd::Identity(1, 1);
      cap.coeff.assign(static_cast<size_t>(index->realDim()), Eigen::MatrixXd::Zero(1, 1));
      for (int i = 0; i < w; ++i) {
        Word diag = words[static_cast<size_t>(i)].reversed().concat(words[static_cast<size_t>(i)]);
        cap.coeff[static_cast<size_t>(index->reSlot(index->classOf(diag)))](0, 0) -= 1.0;
      }
      dual.blocks.push_back(std::move(cap));
    }
    int extra_rows = static_cast<int>(jk_gens.size());
    dual.L = Eigen::MatrixXd::Zero(1 + extra_rows, index->realDim());
    dual.c = Eigen::VectorXd::Zero(1 + extra_rows);
    dual.L(0, 0) = 1.0;
    dual.c[0] = 1.0;
    for (int l = 0; l < extra_rows; ++l)
      dual.L.row(1 + l) = coefficientRow(jk_gens[static_cast<size_t>(l)], *index).transpose();
    dual.q = coefficientRow(toComplexPoly(p), *index);
    ConicSolution ds = solveConic(dual, opts.solver);
    if (ds.status == SolveStatus::converged) {
      TruncatedTrace witness(index);
      witness.values = ds.y;
      double val = dual.q.dot(ds.y);
      if (val < -1e-7 && isPositive(witness, d, 1e-7)) {
        res.status = SosStatus::infeasible;
        res.witness = witness;
        res.witness_value = val;
        res.certificate = cert;  // best-effort Gram kept for diagnostics
        return res;
      }
    }
  }

  res.status = SosStatus::inconclusive;
  res.certificate = cert;
  return res;
}

// ---- trace approximation --------------------------------------------------------

ApproximationReport approximateTrace(const TruncatedTrace& tau, int k, int working_degree,
                                     const ApproxOptions& opts) {
  const int n = tau.n();
  const int m = tau.m();
  const int bigm = working_degree;
  if (bigm < m || bigm % 2 != 0)
    throw std::invalid_argument("approximateTrace: working degree must be even and >= m");
  if (!isPositive(tau, m / 2, 1e-3))
    throw std::invalid_argument("approximateTrace: input trace is not positive at order m/2");

  auto index = ClassIndex::build(n, bigm);
  IdentityBasis jk = identityBasis(k, n, bigm, opts.seed);

  // zero-extension of the input onto the working class index
  TruncatedTrace extended(index);
  for (int c = 0; c < tau.index->classCount(); ++c)
    if (c == tau.index->holder(c)) {
      int cc = index->classOfCanonical(tau.index->representative(c));
      extended.setClassValue(cc, tau.classValue(c));
    }

  ConicProblem prob = ConicProblem::make(index->realDim());
  prob.blocks.push_back(momentBlock(*index, bigm / 2));

  int ngens = static_cast<int>(jk.hermitian_generators.size());
  prob.L = Eigen::MatrixXd::Zero(1 + ngens, index->realDim());
  prob.c = Eigen::VectorXd::Zero(1 + ngens);
  prob.L(0, 0) = 1.0;
  prob.c[0] = 1.0;
  for (int l = 0; l < ngens; ++l)
    prob.L.row(1 + l) =
        coefficientRow(toComplexPoly(jk.hermitian_generators[static_cast<size_t>(l)]), *index)
            .transpose();

  // objective: distance to the input on the degree <= m slots
  std::vector<int> low_slots;
  for (int c = 0; c < index->classCount(); ++c) {
    if (c != index->holder(c) || index->representative(c).degree() > m) continue;
    low_slots.push_back(index->reSlot(c));
    if (index->imSlot(c) >= 0) low_slots.push_back(index->imSlot(c));
  }
  prob.S = Eigen::MatrixXd::Zero(static_cast<int>(low_slots.size()), index->realDim());
  prob.t = Eigen::VectorXd::Zero(static_cast<int>(low_slots.size()));
  for (size_t r = 0; r < low_slots.size(); ++r) {
    prob.S(static_cast<int>(r), low_slots[r]) = 1.0;
    prob.t[static_cast<int>(r)] = extended.values[low_slots[r]];
  }

  // warm start: the input itself when feasible, else a psi-normalized trace
  // (always feasible for the J_k constraints up to Monte Carlo error)
  ConicSolveOptions sopts = opts.solver;
  sopts.tol = std::min(sopts.tol, opts.tol);
  {
    double eq_violation = (prob.L * extended.values - prob.c).cwiseAbs().maxCoeff();
    double eig = momentMinEig(extended, bigm / 2);
    if (eq_violation <= 1e-8 && eig >= -1e-8) {
      sopts.warm_start = extended.values;
    } else {
      PsiTrace psi = psiNormalizedTrace(k, n, bigm, opts.psi_warm_start_samples,
                                        Rng::derive(opts.seed, 0x9bd1));
      sopts.warm_start = psi.trace.values;
    }
  }

  ConicSolution sol = solveConic(prob, sopts);

  ApproximationReport rep;
  rep.k = k;
  rep.m = m;
  rep.working_degree = bigm;
  rep.jk_dim = jk.dimension();
  rep.tau_k = TruncatedTrace(index);
  rep.tau_k.values = sol.y;
  rep.distance = (prob.S * sol.y - prob.t).norm();
  rep.iterations = sol.iterations;
  rep.min_eig = sol.min_eig;
  rep.max_identity_violation =
      ngens > 0 ? (prob.L.bottomRows(ngens) * sol.y).cwiseAbs().maxCoeff() : 0.0;
  switch (sol.status) {
    case SolveStatus::converged:
      rep.status = "converged";
      break;
    case SolveStatus::max_iter:
      rep.status = "max_iter";
      break;
    case SolveStatus::infeasible_certificate:
      rep.status = "infeasible_certificate";
      break;
  }
  return rep;
}

std::vector<std::pair<int, double>> convergenceReport(const TruncatedTrace& tau,
                                                      const std::vector<int>& ks,
                                                      int working_degree, const ApproxOptions& opts) {
  std::vector<std::pair<int, double>> out;
  for (int k : ks) out.emplace_back(k, approximateTrace(tau, k, working_degree, opts).distance);
  return out;
}

}  // namespace nct
