#ifndef NCT_CYCLIC_HPP
#define NCT_CYCLIC_HPP

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "nct/poly.hpp"
#include "nct/word.hpp"

namespace nct {

// Deglex-least rotation of a word (Booth's least-rotation algorithm);
// rotations have equal degree, so deglex-least = lexicographically least.
Word canonicalRotation(const Word& w);

// Every word replaced by its canonical rotation, coefficients merged.
// P - cyclicNormalForm(P) is a sum of commutators; linear, degree-preserving.
template <class S>
Polynomial<S> cyclicNormalForm(const Polynomial<S>& p) {
  Polynomial<S> r(p.alphabetSize());
  for (const auto& [w, c] : p.terms()) r.addTerm(canonicalRotation(w), c);
  return r;
}

template <class S>
bool inCcyc(const Polynomial<S>& p) {
  return cyclicNormalForm(p).isZero();
}

// P = P1 + i*P2 with P1, P2 hermitian; P1 = (P+P*)/2, P2 = (P-P*)/(2i).
std::pair<XPoly, XPoly> hermitianSplit(const XPoly& p);

// Enumeration of cyclic-equivalence classes of words of degree <= m,
// paired under involution. This is the coordinate system on which
// truncated traces live.
//
// Slot layout (real coordinates): a self-paired class holds one real slot;
// a conjugate pair {c, c*} with c < c* holds (re, im) slots on c, and the
// partner's value is the conjugate.
class ClassIndex {
 public:
  static std::shared_ptr<const ClassIndex> build(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int classCount() const { return static_cast<int>(classes_.size()); }
  int realDim() const { return real_dim_; }
  const std::vector<Word>& classes() const { return classes_; }
  const Word& representative(int c) const { return classes_[static_cast<size_t>(c)]; }
  int pairing(int c) const { return pairing_[static_cast<size_t>(c)]; }
  bool selfPaired(int c) const { return pairing_[static_cast<size_t>(c)] == c; }
  // the class owning the slots of c's conjugate pair
  int holder(int c) const { return std::min(c, pairing(c)); }
  int reSlot(int c) const { return re_slot_[static_cast<size_t>(holder(c))]; }
  // -1 when self-paired
  int imSlot(int c) const { return im_slot_[static_cast<size_t>(holder(c))]; }
  // +1 on the holder, -1 on the partner
  int imSign(int c) const { return c == holder(c) ? 1 : -1; }

  int classOfCanonical(const Word& canonical) const;
  int classOf(const Word& w) const { return classOfCanonical(canonicalRotation(w)); }

 private:
  ClassIndex() = default;
  int n_ = 0, m_ = 0, real_dim_ = 0;
  std::vector<Word> classes_;
  std::vector<int> pairing_;
  std::vector<int> re_slot_, im_slot_;
  std::map<Word, int, DeglexLess> lookup_;
};

}  // namespace nct

#endif
