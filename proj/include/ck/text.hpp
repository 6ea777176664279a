#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ck/polynomial.hpp"

namespace ck {

struct Token {
  enum class Kind { Identifier, Number, Punct, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
  std::size_t offset;  // byte offset of the first character
  std::size_t length;  // byte length in the source
};

/// Splits source text into identifiers, unsigned integers and single-char
/// punctuation. "#" and "//" start comments; U+2212 is read as '-'.
/// Throws ParseError on stray characters.
std::vector<Token> tokenize(std::string_view source);

/// Resolves identifiers that are not ring variables (named polynomials).
using PolyLookup = std::function<std::optional<Polynomial>(const std::string&)>;

/// Largest exponent accepted by the expression parser.
inline constexpr unsigned kMaxExponent = 255;

/// Recursive-descent reader for polynomial expressions over a token stream:
/// sums, products, integer powers, rational constants, parentheses and
/// "{c0,c1,..}" extension-field literals.
class ExprParser {
 public:
  ExprParser(const std::vector<Token>& tokens, std::size_t& pos, RingPtr ring, PolyLookup lookup = {});

  Polynomial parse_expression();

 private:
  Polynomial parse_term();
  Polynomial parse_factor();
  Polynomial parse_atom();
  const Token& peek() const { return tokens_[pos_]; }
  bool accept(std::string_view punct);
  void expect(std::string_view punct);
  unsigned parse_small_number(const char* what);
  [[noreturn]] void fail(const std::string& message) const;

  const std::vector<Token>& tokens_;
  std::size_t& pos_;
  RingPtr ring_;
  PolyLookup lookup_;
};

/// Parses a whole string as one polynomial of `ring`.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, PolyLookup lookup = {});

}  // namespace ck
