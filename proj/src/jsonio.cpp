#include "nct/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace nct {

double jround(double x) {
  if (!std::isfinite(x)) return x;
  if (x == 0.0) return 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

Json grToJson(const GRat& v) {
  auto component = [](const Rat& r) -> Json {
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) {
      long num = r.get_num().get_si();
      if (num >= -(1L << 53) && num <= (1L << 53)) return Json(num);
    }
    return Json(ratToString(r));
  };
  return Json::array({component(v.re), component(v.im)});
}

double valueComponent(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return ratFromString(j.get<std::string>()).get_d();
  throw std::invalid_argument(std::string("trace JSON: ") + what +
                              " must be a number or a \"p/q\" string");
}

}  // namespace

Json traceToJson(const TruncatedTrace& tau) {
  Json values = Json::object();
  const ClassIndex& idx = *tau.index;
  for (int c = 0; c < idx.classCount(); ++c) {
    if (c != idx.holder(c)) continue;
    std::complex<double> v = tau.classValue(c);
    if (c != 0 && v.real() == 0.0 && v.imag() == 0.0) continue;
    values[idx.representative(c).str()] = Json::array({jround(v.real()), jround(v.imag())});
  }
  return Json{{"n", tau.n()}, {"m", tau.m()}, {"values", std::move(values)}};
}

Json traceToJson(const ExactTrace& tau) {
  Json values = Json::object();
  const ClassIndex& idx = *tau.index;
  for (int c = 0; c < idx.classCount(); ++c) {
    if (c != idx.holder(c)) continue;
    const GRat& v = tau.class_values[static_cast<size_t>(c)];
    if (c != 0 && v.isZero()) continue;
    values[idx.representative(c).str()] = grToJson(v);
  }
  return Json{{"n", tau.n()}, {"m", tau.m()}, {"values", std::move(values)}};
}

TruncatedTrace traceFromJson(const Json& j) {
  if (j.contains("result") && j.contains("tool")) return traceFromJson(j.at("result"));
  if (!j.contains("n") || !j.contains("m"))
    throw std::invalid_argument("trace JSON: missing \"n\" or \"m\"");
  int n = j.at("n").get<int>();
  int m = j.at("m").get<int>();
  auto index = ClassIndex::build(n, m);
  TruncatedTrace tau(index);
  std::vector<bool> seen(static_cast<size_t>(index->classCount()), false);
  if (j.contains("values")) {
    for (const auto& [key, val] : j.at("values").items()) {
      Word w = Word::fromStr(key);
      if (w.maxLetter() >= n)
        throw std::invalid_argument("trace JSON: word '" + key + "' uses letters beyond n");
      if (w.degree() > m)
        throw std::invalid_argument("trace JSON: word '" + key + "' exceeds degree m");
      if (!val.is_array() || val.size() != 2)
        throw std::invalid_argument("trace JSON: value of '" + key + "' must be [re, im]");
      std::complex<double> z(valueComponent(val[0], "re"), valueComponent(val[1], "im"));
      int cls = index->classOf(w);
      int holder = index->holder(cls);
      if (seen[static_cast<size_t>(holder)])
        throw std::invalid_argument("trace JSON: class of '" + key + "' assigned twice");
      seen[static_cast<size_t>(holder)] = true;
      if (cls != holder) z = std::conj(z);
      if (holder == 0) {
        if (std::abs(z.real() - 1.0) > 1e-9 || std::abs(z.imag()) > 1e-9)
          throw std::invalid_argument("trace JSON: \"1\" must map to [1, 0]");
        continue;
      }
      tau.setClassValue(holder, z);
    }
  }
  return tau;
}

TruncatedTrace readTraceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open trace file '" + path + "'");
  Json j;
  in >> j;
  return traceFromJson(j);
}

Json envelope(const std::string& command, Json result) {
  return Json{{"tool", "nctrace"}, {"version", "0.1.0"}, {"command", command},
              {"result", std::move(result)}};
}

}  // namespace nct
