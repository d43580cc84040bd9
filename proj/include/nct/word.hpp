#ifndef NCT_WORD_HPP
#define NCT_WORD_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nct {

// A word over the alphabet x1..xn, stored as 0-based letter indices.
// The empty word is the unit of the free monoid.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}
  static Word unit() { return Word(); }
  static Word letter(int i) { return Word({i}); }

  int degree() const { return static_cast<int>(letters_.size()); }
  bool isUnit() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }
  int at(int i) const { return letters_[static_cast<size_t>(i)]; }

  Word concat(const Word& o) const {
    std::vector<int> v = letters_;
    v.insert(v.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(v));
  }

  Word reversed() const {
    std::vector<int> v(letters_.rbegin(), letters_.rend());
    return Word(std::move(v));
  }

  Word rotated(int r) const {
    int d = degree();
    if (d == 0) return *this;
    r = ((r % d) + d) % d;
    std::vector<int> v;
    v.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) v.push_back(letters_[static_cast<size_t>((i + r) % d)]);
    return Word(std::move(v));
  }

  Word dropLast() const {
    std::vector<int> v(letters_.begin(), letters_.end() - 1);
    return Word(std::move(v));
  }

  int maxLetter() const {
    int m = -1;
    for (int l : letters_) m = std::max(m, l);
    return m;
  }

  std::vector<int> multidegree(int n) const {
    std::vector<int> d(static_cast<size_t>(n), 0);
    for (int l : letters_) ++d[static_cast<size_t>(l)];
    return d;
  }

  // x1.x1.x2 form; unit word is "1"
  std::string str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += '.';
      s += 'x';
      s += std::to_string(letters_[i] + 1);
    }
    return s;
  }

  static Word fromStr(const std::string& s) {
    if (s == "1") return unit();
    std::vector<int> v;
    size_t pos = 0;
    while (pos < s.size()) {
      if (s[pos] != 'x') throw std::invalid_argument("bad word string '" + s + "'");
      ++pos;
      size_t start = pos;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) throw std::invalid_argument("bad word string '" + s + "'");
      int idx = std::stoi(s.substr(start, pos - start));
      if (idx < 1) throw std::invalid_argument("letter index must be >= 1 in '" + s + "'");
      v.push_back(idx - 1);
      if (pos < s.size()) {
        if (s[pos] != '.') throw std::invalid_argument("bad word string '" + s + "'");
        ++pos;
        if (pos == s.size()) throw std::invalid_argument("trailing '.' in '" + s + "'");
      }
    }
    return Word(std::move(v));
  }

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

 private:
  std::vector<int> letters_;
};

// Degree-first, then lexicographic with x1 < x2 < ...; a strict total
// order. This single order fixes every matrix/vector indexing downstream.
inline bool deglexLess(const Word& a, const Word& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.letters() < b.letters();
}

struct DeglexLess {
  bool operator()(const Word& a, const Word& b) const { return deglexLess(a, b); }
};

// All words of degree <= m over n letters, in deglex order.
inline std::vector<Word> wordsUpToDegree(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("wordsUpToDegree: need n >= 1, m >= 0");
  std::vector<Word> out;
  std::vector<Word> cur{Word::unit()};
  out.push_back(Word::unit());
  for (int d = 1; d <= m; ++d) {
    std::vector<Word> next;
    next.reserve(cur.size() * static_cast<size_t>(n));
    for (const Word& w : cur)
      for (int l = 0; l < n; ++l) next.push_back(w.concat(Word::letter(l)));
    out.insert(out.end(), next.begin(), next.end());
    cur = std::move(next);
  }
  return out;
}

}  // namespace nct

#endif
