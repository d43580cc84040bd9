#include "nct/parse.hpp"

#include <cctype>
#include <vector>

namespace nct {
namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  void skipWs() {
    while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skipWs();
    return pos >= s.size();
  }
  char peek() {
    skipWs();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    skipWs();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "' " + what, pos);
  }
};

bool startsNumber(char c) { return isdigit(static_cast<unsigned char>(c)) || c == '.'; }

// digits[.digits][e[+-]digits][/digits]
Rat parseNumber(Cursor& cur) {
  cur.skipWs();
  size_t start = cur.pos;
  while (cur.pos < cur.s.size()) {
    char c = cur.s[cur.pos];
    if (isdigit(static_cast<unsigned char>(c)) || c == '.') {
      ++cur.pos;
    } else if ((c == 'e' || c == 'E') && cur.pos + 1 < cur.s.size() &&
               (isdigit(static_cast<unsigned char>(cur.s[cur.pos + 1])) ||
                ((cur.s[cur.pos + 1] == '+' || cur.s[cur.pos + 1] == '-') &&
                 cur.pos + 2 < cur.s.size() &&
                 isdigit(static_cast<unsigned char>(cur.s[cur.pos + 2]))))) {
      cur.pos += 2;
    } else {
      break;
    }
  }
  if (cur.pos == start) throw ParseError("expected a number", cur.pos);
  std::string num = cur.s.substr(start, cur.pos - start);
  if (cur.pos < cur.s.size() && cur.s[cur.pos] == '/') {
    ++cur.pos;
    size_t dstart = cur.pos;
    while (cur.pos < cur.s.size() && isdigit(static_cast<unsigned char>(cur.s[cur.pos]))) ++cur.pos;
    if (cur.pos == dstart) throw ParseError("expected denominator digits", cur.pos);
    num += "/" + cur.s.substr(dstart, cur.pos - dstart);
  }
  try {
    return ratFromString(num);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), start);
  }
}

// signed component of a complex literal
Rat parseSignedNumber(Cursor& cur) {
  bool neg = false;
  if (cur.accept('-'))
    neg = true;
  else
    cur.accept('+');
  Rat r = parseNumber(cur);
  return neg ? Rat(-r) : r;
}

struct FactorResult {
  Word word;
  GRat coeff{1};
  int max_letter = -1;
};

FactorResult parseFactor(Cursor& cur) {
  FactorResult f;
  cur.skipWs();
  char c = cur.peek();
  if (c == 'x' || c == 'X') {
    ++cur.pos;
    size_t dstart = cur.pos;
    while (cur.pos < cur.s.size() && isdigit(static_cast<unsigned char>(cur.s[cur.pos]))) ++cur.pos;
    if (cur.pos == dstart) throw ParseError("expected letter index after 'x'", cur.pos);
    int idx = std::stoi(cur.s.substr(dstart, cur.pos - dstart));
    if (idx < 1) throw ParseError("letter index must be >= 1", dstart);
    f.word = Word::letter(idx - 1);
    f.max_letter = idx - 1;
  } else if (c == '(') {
    ++cur.pos;
    Rat re = parseSignedNumber(cur);
    cur.expect(',', "between complex components");
    Rat im = parseSignedNumber(cur);
    cur.expect(')', "closing complex literal");
    f.coeff = GRat(re, im);
  } else if (startsNumber(c)) {
    f.coeff = GRat(parseNumber(cur));
  } else {
    throw ParseError("expected a letter, number or complex literal", cur.pos);
  }
  if (cur.accept('^')) {
    cur.skipWs();
    size_t estart = cur.pos;
    while (cur.pos < cur.s.size() && isdigit(static_cast<unsigned char>(cur.s[cur.pos]))) ++cur.pos;
    if (cur.pos == estart) throw ParseError("expected exponent digits after '^'", cur.pos);
    long e = std::stol(cur.s.substr(estart, cur.pos - estart));
    if (e > 64) throw ParseError("exponent too large", estart);
    FactorResult powed;
    powed.max_letter = f.max_letter;
    GRat base = f.coeff;
    Word wbase = f.word;
    for (long i = 0; i < e; ++i) {
      powed.coeff *= base;
      powed.word = powed.word.concat(wbase);
    }
    return powed;
  }
  return f;
}

}  // namespace

XPoly parsePolynomial(const std::string& text, std::optional<int> alphabet) {
  Cursor cur{text};
  struct Term {
    Word w;
    GRat c;
  };
  std::vector<Term> terms;
  int max_letter = -1;
  bool first = true;
  while (!cur.done()) {
    GRat sign(1);
    if (cur.accept('-'))
      sign = GRat(-1);
    else if (cur.accept('+')) {
      if (first) throw ParseError("leading '+' not allowed", cur.pos);
    } else if (!first) {
      throw ParseError("expected '+' or '-' between terms", cur.pos);
    }
    if (cur.done()) throw ParseError("dangling sign", cur.pos);
    FactorResult acc = parseFactor(cur);
    while (cur.accept('*')) {
      FactorResult nxt = parseFactor(cur);
      acc.coeff *= nxt.coeff;
      acc.word = acc.word.concat(nxt.word);
      acc.max_letter = std::max(acc.max_letter, nxt.max_letter);
    }
    terms.push_back({acc.word, sign * acc.coeff});
    max_letter = std::max(max_letter, acc.max_letter);
    first = false;
  }
  if (first) throw ParseError("empty polynomial", 0);
  int n = alphabet.value_or(std::max(max_letter + 1, 1));
  if (n < 1) throw ParseError("alphabet size must be >= 1", 0);
  if (max_letter >= n)
    throw ParseError("letter x" + std::to_string(max_letter + 1) + " beyond alphabet size " +
                         std::to_string(n),
                     0);
  XPoly p(n);
  for (auto& t : terms) p.addTerm(t.w, t.c);
  return p;
}

namespace {

std::string wordText(const Word& w) {
  std::string out;
  const auto& ls = w.letters();
  size_t i = 0;
  while (i < ls.size()) {
    size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(ls[i] + 1);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

// magnitude text of a real rational or complex coefficient, plus whether
// the printed form already carries its sign
std::string coeffText(const GRat& c, bool& sign_absorbed) {
  if (c.isReal()) {
    sign_absorbed = false;
    Rat mag = c.re < 0 ? Rat(-c.re) : c.re;
    return ratToString(mag);
  }
  sign_absorbed = true;
  return "(" + ratToString(c.re) + "," + ratToString(c.im) + ")";
}

}  // namespace

std::string printPolynomial(const XPoly& p) {
  if (p.isZero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    bool negative = c.isReal() && c.re < 0;
    bool sign_absorbed = false;
    std::string ctext = coeffText(c, sign_absorbed);
    std::string body;
    if (w.isUnit()) {
      body = ctext;
    } else if (!sign_absorbed && ctext == "1") {
      body = wordText(w);
    } else {
      body = ctext + "*" + wordText(w);
    }
    if (first) {
      if (negative && !sign_absorbed) out += "-";
      out += body;
      first = false;
    } else {
      out += negative && !sign_absorbed ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace nct
