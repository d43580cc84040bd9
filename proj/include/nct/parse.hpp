#ifndef NCT_PARSE_HPP
#define NCT_PARSE_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "nct/poly.hpp"

namespace nct {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
  size_t pos;
};

// Text grammar shared with the CLI: letters x1,x2,...; concatenation '*';
// powers '^'; complex literal (re,im) with decimal or p/q components; bare
// real literals. Whitespace insignificant.
//   e.g.  2*x1*x2 - x2*x1 + (0,1)*x3^2
// If alphabet is not given, the alphabet size is inferred from the largest
// letter index (at least 1).
XPoly parsePolynomial(const std::string& text, std::optional<int> alphabet = std::nullopt);

// Canonical text form: terms in deglex order, exact coefficients, letter
// runs contracted to powers. parse(print(P)) == P.
std::string printPolynomial(const XPoly& p);

}  // namespace nct

#endif
