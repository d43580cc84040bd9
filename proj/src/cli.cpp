#include "nct/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "nct/approx.hpp"
#include "nct/jsonio.hpp"
#include "nct/norms.hpp"
#include "nct/parse.hpp"

namespace nct {

namespace {

struct Output {
  std::string format = "json";
  std::string path;

  void emit(const std::string& command, const Json& result, const std::string& text,
            std::ostream& out) const {
    std::string payload =
        format == "json" ? envelope(command, result).dump(2) + "\n" : text;
    if (path.empty()) {
      out << payload;
    } else {
      std::ofstream f(path);
      if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
      f << payload;
    }
  }
};

Json violationToJson(const ViolationReport& r) {
  return Json{{"inequality", r.inequality},
              {"trials", r.trials},
              {"worst_slack", jround(r.worst_slack)},
              {"worst_seed", r.worst_seed},
              {"pass", r.pass}};
}

Json approxToJson(const ApproximationReport& r) {
  return Json{{"k", r.k},
              {"m", r.m},
              {"M", r.working_degree},
              {"distance", jround(r.distance)},
              {"jk_dim", r.jk_dim},
              {"status", r.status},
              {"iterations", r.iterations},
              {"min_eig", jround(r.min_eig)},
              {"max_identity_violation", jround(r.max_identity_violation)},
              {"tau_k", traceToJson(r.tau_k)}};
}

// restriction of a trace to a lower truncation degree
TruncatedTrace truncateTrace(const TruncatedTrace& tau, int m) {
  if (m == tau.m()) return tau;
  auto index = ClassIndex::build(tau.n(), m);
  TruncatedTrace out(index);
  for (int c = 0; c < index->classCount(); ++c)
    if (c == index->holder(c)) out.setClassValue(c, tau.wordValue(index->representative(c)));
  return out;
}

int cmdParse(const std::string& poly_text, int vars, const Output& fmt, std::ostream& out) {
  XPoly p = parsePolynomial(poly_text, vars > 0 ? std::optional<int>(vars) : std::nullopt);
  Json res{{"poly", printPolynomial(p)},
           {"vars", p.alphabetSize()},
           {"degree", p.degree() ? Json(*p.degree()) : Json(nullptr)},
           {"hermitian", isHermitian(p)},
           {"terms", p.termCount()}};
  fmt.emit("parse", res, printPolynomial(p) + "\n", out);
  return 0;
}

int cmdCyclic(const std::string& poly_text, int vars, const Output& fmt, std::ostream& out) {
  XPoly p = parsePolynomial(poly_text, vars > 0 ? std::optional<int>(vars) : std::nullopt);
  XPoly nf = cyclicNormalForm(p);
  Json res{{"normal_form", printPolynomial(nf)}, {"in_c_cyc", nf.isZero()}};
  fmt.emit("cyclic", res,
           "normal form: " + printPolynomial(nf) + "\nin C_cyc: " + (nf.isZero() ? "yes" : "no") +
               "\n",
           out);
  return 0;
}

int cmdStandard(int k, const Output& fmt, std::ostream& out) {
  XPoly j = standardPoly(k);
  Json res{{"k", k}, {"vars", j.alphabetSize()}, {"terms", j.termCount()},
           {"poly", printPolynomial(j)}};
  fmt.emit("standard", res, printPolynomial(j) + "\n", out);
  return 0;
}

int cmdJkBasis(int k, int deg, int vars, uint64_t seed, const Output& fmt, std::ostream& out) {
  IdentityBasis basis = identityBasis(k, vars, deg, seed);
  Json vecs = Json::array();
  for (const auto& p : basis.polys()) vecs.push_back(printPolynomial(p));
  Json res{{"k", k},
           {"deg", deg},
           {"vars", vars},
           {"seed", seed},
           {"dimension", basis.dimension()},
           {"sample_count", basis.sample_count},
           {"basis", std::move(vecs)}};
  std::ostringstream text;
  text << "dim J_" << k << " (deg <= " << deg << ", " << vars << " vars) = " << basis.dimension()
       << "\n";
  for (const auto& p : basis.polys()) text << "  " << printPolynomial(p) << "\n";
  fmt.emit("jk-basis", res, text.str(), out);
  return 0;
}

int cmdIsIdentity(const std::string& poly_text, int k, int vars, uint64_t seed, const Output& fmt,
                  std::ostream& out) {
  XPoly p = parsePolynomial(poly_text, vars > 0 ? std::optional<int>(vars) : std::nullopt);
  bool ok = isIdentity(p, k, seed);
  Json res{{"k", k}, {"is_identity", ok}};
  if (!ok) res["witness_magnitude"] = jround(identityWitnessMagnitude(p, k, seed));
  fmt.emit("is-identity", res,
           std::string(ok ? "identity" : "not an identity") + " of " + std::to_string(k) + "x" +
               std::to_string(k) + " matrices\n",
           out);
  return ok ? 0 : 1;
}

int cmdSos(const std::string& poly_text, int deg, int vars, int jk, double tol, const Output& fmt,
           std::ostream& out) {
  XPoly p = parsePolynomial(poly_text, vars > 0 ? std::optional<int>(vars) : std::nullopt);
  SosOptions opts;
  opts.residual_tol = tol;
  opts.jk = jk;
  int d = deg;
  if (d <= 0) d = (p.degree().value_or(0) + 1) / 2;
  SosResult r = tracialSosCheck(p, d, opts);
  Json res;
  std::ostringstream text;
  int code = 2;
  switch (r.status) {
    case SosStatus::feasible: {
      Json squares = Json::array();
      for (const auto& s : r.certificate->squares) {
        std::ostringstream ss;
        bool first = true;
        for (const auto& [w, c] : s.terms()) {
          ss << (first ? "" : " + ") << "(" << jround(c.real()) << "," << jround(c.imag()) << ")*"
             << w.str();
          first = false;
        }
        squares.push_back(ss.str());
      }
      res = Json{{"status", "feasible"},
                 {"rank", r.certificate->rank},
                 {"caratheodory_bound", r.certificate->caratheodory_bound},
                 {"residual", jround(r.certificate->residual)},
                 {"squares", std::move(squares)}};
      text << "feasible: " << r.certificate->rank << " squares, residual "
           << r.certificate->residual << "\n";
      code = 0;
      break;
    }
    case SosStatus::infeasible:
      res = Json{{"status", "infeasible"},
                 {"witness_value", jround(r.witness_value)},
                 {"witness", traceToJson(*r.witness)}};
      text << "infeasible: separating trace with tau(P) = " << r.witness_value << "\n";
      code = 1;
      break;
    case SosStatus::inconclusive:
      res = Json{{"status", "inconclusive"}, {"fit_residual", jround(r.fit_residual)}};
      text << "inconclusive (solver fit residual " << r.fit_residual << ")\n";
      code = 2;
      break;
  }
  fmt.emit("sos", res, text.str(), out);
  return code;
}

int cmdTraceCheck(const std::string& trace_path, int order, const Output& fmt, std::ostream& out) {
  TruncatedTrace tau = readTraceFile(trace_path);
  double eig = momentMinEig(tau, order);
  bool pos = eig >= -1e-9;
  Json res{{"order", order}, {"positive", pos}, {"min_eig", jround(eig)}};
  fmt.emit("trace-check", res,
           std::string(pos ? "positive" : "not positive") + " at order " + std::to_string(order) +
               " (min eigenvalue " + std::to_string(eig) + ")\n",
           out);
  return pos ? 0 : 1;
}

int cmdApprox(const std::string& trace_path, int k, int deg, int working_deg, double tol,
              uint64_t seed, const Output& fmt, std::ostream& out) {
  TruncatedTrace tau = readTraceFile(trace_path);
  int m = deg > 0 ? deg : tau.m();
  if (m > tau.m()) throw std::invalid_argument("--deg exceeds the trace file truncation");
  tau = truncateTrace(tau, m);
  int bigm = working_deg > 0 ? working_deg : m + (m % 2);
  ApproxOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  ApproximationReport rep = approximateTrace(tau, k, bigm, opts);
  std::ostringstream text;
  text << "k = " << rep.k << ": distance " << rep.distance << " (" << rep.status << ", jk_dim "
       << rep.jk_dim << ")\n";
  fmt.emit("approx", approxToJson(rep), text.str(), out);
  return rep.status == "converged" ? 0 : 2;
}

int cmdConverge(const std::string& trace_path, int kmax, int deg, int working_deg, double tol,
                uint64_t seed, const Output& fmt, std::ostream& out) {
  TruncatedTrace tau = readTraceFile(trace_path);
  int m = deg > 0 ? deg : tau.m();
  if (m > tau.m()) throw std::invalid_argument("--deg exceeds the trace file truncation");
  tau = truncateTrace(tau, m);
  int bigm = working_deg > 0 ? working_deg : m + (m % 2);
  ApproxOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  Json points = Json::array();
  std::ostringstream text;
  bool all_ok = true;
  for (int k = 1; k <= kmax; ++k) {
    ApproximationReport rep = approximateTrace(tau, k, bigm, opts);
    points.push_back(Json{{"k", k},
                          {"distance", jround(rep.distance)},
                          {"jk_dim", rep.jk_dim},
                          {"status", rep.status}});
    text << "k = " << k << ": distance " << rep.distance << "\n";
    all_ok = all_ok && rep.status == "converged";
  }
  fmt.emit("converge", Json{{"m", m}, {"M", bigm}, {"points", std::move(points)}}, text.str(), out);
  return all_ok ? 0 : 2;
}

int cmdIneq(const std::string& suite, long trials, uint64_t seed, const Output& fmt,
            std::ostream& out) {
  std::vector<ViolationReport> reports;
  if (suite == "cs" || suite == "all") reports.push_back(verifyCauchySchwarz(6, trials, seed));
  if (suite == "sum" || suite == "all") reports.push_back(verifySumLemma(6, 4, trials, seed));
  if (suite == "hoelder" || suite == "all") reports.push_back(verifyHoelder({2, 4, 6, 8}, trials, seed));
  if (suite == "minkowski" || suite == "all") reports.push_back(verifyMinkowski({4, 8}, trials, seed));
  if (reports.empty())
    throw CLI::ValidationError("--suite must be one of cs, sum, hoelder, minkowski, all");
  Json arr = Json::array();
  std::ostringstream text;
  bool pass = true;
  for (const auto& r : reports) {
    arr.push_back(violationToJson(r));
    pass = pass && r.pass;
    text << r.inequality << ": " << (r.pass ? "pass" : "FAIL") << " (worst slack " << r.worst_slack
         << " over " << r.trials << " trials)\n";
  }
  fmt.emit("ineq", Json{{"reports", std::move(arr)}, {"pass", pass}}, text.str(), out);
  return pass ? 0 : 1;
}

int cmdPsiTrace(int k, int vars, int deg, long samples, uint64_t seed, const Output& fmt,
                std::ostream& out) {
  PsiTrace psi = psiNormalizedTrace(k, vars, deg, samples, seed);
  Json res = traceToJson(psi.trace);
  Json se = Json::object();
  const ClassIndex& idx = *psi.trace.index;
  for (int c = 0; c < idx.classCount(); ++c) {
    if (c != idx.holder(c) || c == 0) continue;
    double s = psi.stderrs[idx.reSlot(c)];
    if (idx.imSlot(c) >= 0) s = std::max(s, psi.stderrs[idx.imSlot(c)]);
    se[idx.representative(c).str()] = jround(s);
  }
  res["stderr"] = std::move(se);
  res["samples"] = psi.samples;
  res["k"] = k;
  std::ostringstream text;
  text << "psi-normalized trace, k = " << k << ", " << samples << " samples\n";
  fmt.emit("psi-trace", res, text.str(), out);
  return 0;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"trace polynomials, identity ideals and tracial positivity"};
  app.set_help_flag("--help", "print help");
  Output fmt;
  app.add_option("--format", fmt.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", fmt.path, "write the report to a file instead of stdout");
  app.require_subcommand(1);

  std::string poly_text, trace_path, suite = "all";
  int k = 1, deg = 0, vars = 0, working_deg = 0, order = 1, kmax = 3, sos_jk = 0;
  long trials = 1000, samples = 10000;
  uint64_t seed = 0;
  double tol_sos = 1e-6, tol_approx = 1e-8;

  auto* c_parse = app.add_subcommand("parse", "parse a polynomial and re-emit it canonically");
  c_parse->add_option("poly", poly_text)->required();
  c_parse->add_option("--vars", vars);

  auto* c_cyclic = app.add_subcommand("cyclic", "cyclic normal form modulo commutators");
  c_cyclic->add_option("poly", poly_text)->required();
  c_cyclic->add_option("--vars", vars);

  auto* c_std = app.add_subcommand("standard", "the standard polynomial j_k");
  c_std->add_option("--k", k)->required();

  auto* c_jk = app.add_subcommand("jk-basis", "exact basis of the degree-truncated identity ideal");
  c_jk->add_option("--k", k)->required();
  c_jk->add_option("--deg", deg)->required();
  c_jk->add_option("--vars", vars)->required();
  c_jk->add_option("--seed", seed);

  auto* c_isid = app.add_subcommand("is-identity", "membership in the identity ideal J_k");
  c_isid->add_option("poly", poly_text)->required();
  c_isid->add_option("--k", k)->required();
  c_isid->add_option("--vars", vars);
  c_isid->add_option("--seed", seed);

  auto* c_sos = app.add_subcommand("sos", "tracial sum-of-hermitian-squares certificate");
  c_sos->add_option("poly", poly_text)->required();
  c_sos->add_option("--deg", deg, "half-degree of the squares");
  c_sos->add_option("--vars", vars);
  c_sos->add_option("--jk", sos_jk, "check membership modulo J_k");
  c_sos->add_option("--tol", tol_sos);

  auto* c_tc = app.add_subcommand("trace-check", "moment-matrix positivity of a trace file");
  c_tc->add_option("--trace", trace_path)->required();
  c_tc->add_option("--order", order)->required();

  auto* c_approx = app.add_subcommand("approx", "nearest J_k-vanishing positive trace");
  c_approx->add_option("--trace", trace_path)->required();
  c_approx->add_option("--k", k)->required();
  c_approx->add_option("--deg", deg, "distance degree m (default: trace file truncation)");
  c_approx->add_option("--working-deg", working_deg);
  c_approx->add_option("--tol", tol_approx);
  c_approx->add_option("--seed", seed);

  auto* c_conv = app.add_subcommand("converge", "distances for k = 1..kmax");
  c_conv->add_option("--trace", trace_path)->required();
  c_conv->add_option("--kmax", kmax)->required();
  c_conv->add_option("--deg", deg);
  c_conv->add_option("--working-deg", working_deg);
  c_conv->add_option("--tol", tol_approx);
  c_conv->add_option("--seed", seed);

  auto* c_ineq = app.add_subcommand("ineq", "tracial norm inequality verifier suites");
  c_ineq->add_option("--suite", suite)->check(CLI::IsMember({"cs", "sum", "hoelder", "minkowski", "all"}));
  c_ineq->add_option("--trials", trials);
  c_ineq->add_option("--seed", seed);

  auto* c_psi = app.add_subcommand("psi-trace", "Monte Carlo psi-normalized trace");
  c_psi->add_option("--k", k)->required();
  c_psi->add_option("--vars", vars)->required();
  c_psi->add_option("--deg", deg)->required();
  c_psi->add_option("--samples", samples);
  c_psi->add_option("--seed", seed);

  for (CLI::App* sub : {c_parse, c_cyclic, c_std, c_jk, c_isid, c_sos, c_tc, c_approx, c_conv,
                        c_ineq, c_psi})
    sub->fallthrough();

  std::vector<std::string> rargs(args.rbegin(), args.rend());
  try {
    app.parse(rargs);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 64;
  }

  try {
    if (c_parse->parsed()) return cmdParse(poly_text, vars, fmt, out);
    if (c_cyclic->parsed()) return cmdCyclic(poly_text, vars, fmt, out);
    if (c_std->parsed()) return cmdStandard(k, fmt, out);
    if (c_jk->parsed()) return cmdJkBasis(k, deg, vars, seed, fmt, out);
    if (c_isid->parsed()) return cmdIsIdentity(poly_text, k, vars, seed, fmt, out);
    if (c_sos->parsed()) return cmdSos(poly_text, deg, vars, sos_jk, tol_sos, fmt, out);
    if (c_tc->parsed()) return cmdTraceCheck(trace_path, order, fmt, out);
    if (c_approx->parsed()) return cmdApprox(trace_path, k, deg, working_deg, tol_approx, seed, fmt, out);
    if (c_conv->parsed()) return cmdConverge(trace_path, kmax, deg, working_deg, tol_approx, seed, fmt, out);
    if (c_ineq->parsed()) return cmdIneq(suite, trials, seed, fmt, out);
    if (c_psi->parsed()) return cmdPsiTrace(k, vars, deg, samples, seed, fmt, out);
  } catch (const ParseError& e) {
    err << "polynomial syntax error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 64;
  } catch (const std::domain_error& e) {
    err << "unsupported request: " << e.what() << "\n";
    return 64;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
    return 64;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return 64;
  }
  err << "no subcommand given\n";
  return 64;
}

CliResult runCliCapture(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = runCli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace nct
