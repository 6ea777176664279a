#include "ck/text.hpp"

#include <cctype>
#include <stdexcept>

#include "ck/error.hpp"

namespace ck {

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  const auto advance = [&](std::size_t n) {
    i += n;
    col += n;
  };
  while (i < src.size()) {
    const unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t start = i, start_col = col;
    if (std::isalpha(c) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) advance(1);
      out.push_back({Token::Kind::Identifier, std::string(src.substr(start, i - start)), line, start_col, start, i - start});
      continue;
    }
    if (std::isdigit(c)) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
      out.push_back({Token::Kind::Number, std::string(src.substr(start, i - start)), line, start_col, start, i - start});
      continue;
    }
    if (src.substr(i, 3) == "\xE2\x88\x92") {
      i += 3;
      col += 1;
      out.push_back({Token::Kind::Punct, "-", line, start_col, start, 3});
      continue;
    }
    static constexpr std::string_view kPunct = ";=[](){},/^*+-:";
    if (kPunct.find(static_cast<char>(c)) != std::string_view::npos) {
      advance(1);
      out.push_back({Token::Kind::Punct, std::string(1, static_cast<char>(c)), line, start_col, start, 1});
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "'", line, col);
  }
  out.push_back({Token::Kind::End, "", line, col, src.size(), 0});
  return out;
}

ExprParser::ExprParser(const std::vector<Token>& tokens, std::size_t& pos, RingPtr ring, PolyLookup lookup)
    : tokens_(tokens), pos_(pos), ring_(std::move(ring)), lookup_(std::move(lookup)) {}

void ExprParser::fail(const std::string& message) const {
  const auto& t = peek();
  throw ParseError(message + (t.kind == Token::Kind::End ? " at end of input" : " near '" + t.text + "'"), t.line, t.column);
}

bool ExprParser::accept(std::string_view punct) {
  if (peek().kind == Token::Kind::Punct && peek().text == punct) {
    ++pos_;
    return true;
  }
  return false;
}

void ExprParser::expect(std::string_view punct) {
  if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
}

unsigned ExprParser::parse_small_number(const char* what) {
  if (peek().kind != Token::Kind::Number) fail(std::string("expected ") + what);
  const auto& text = peek().text;
  if (text.size() > 6 || std::stoul(text) > kMaxExponent) fail(std::string(what) + " too large");
  const unsigned v = static_cast<unsigned>(std::stoul(text));
  ++pos_;
  return v;
}

Polynomial ExprParser::parse_expression() {
  Polynomial acc(ring_);
  bool negate_first = false;
  if (accept("-"))
    negate_first = true;
  else
    accept("+");
  acc = parse_term();
  if (negate_first) acc = -acc;
  while (true) {
    if (accept("+"))
      acc = acc + parse_term();
    else if (accept("-"))
      acc = acc - parse_term();
    else
      break;
  }
  return acc;
}

Polynomial ExprParser::parse_term() {
  Polynomial acc = parse_factor();
  while (true) {
    if (accept("*")) {
      acc = acc * parse_factor();
    } else if (peek().kind == Token::Kind::Punct && peek().text == "/") {
      const auto& tok = peek();
      ++pos_;
      Polynomial d = parse_factor();
      if (!d.is_unit()) throw ParseError("division is only allowed by nonzero constants", tok.line, tok.column);
      acc = acc.scalar_mul(ring_->field().inv(d.leading_coeff()));
    } else {
      break;
    }
  }
  return acc;
}

Polynomial ExprParser::parse_factor() {
  Polynomial base = parse_atom();
  if (accept("^")) return base.pow(parse_small_number("exponent"));
  return base;
}

Polynomial ExprParser::parse_atom() {
  const Token& t = peek();
  const auto& field = ring_->field();
  switch (t.kind) {
    case Token::Kind::Number: {
      ++pos_;
      return Polynomial::constant(ring_, field.from_integer(mpz_class(t.text)));
    }
    case Token::Kind::Identifier: {
      ++pos_;
      if (auto idx = ring_->index_of(t.text)) return Polynomial::variable(ring_, *idx);
      if (lookup_) {
        if (auto p = lookup_(t.text)) {
          if (!same_ring(p->ring(), ring_)) throw ParseError("'" + t.text + "' belongs to a different ring", t.line, t.column);
          return *p;
        }
      }
      throw ParseError("undeclared name '" + t.text + "'", t.line, t.column);
    }
    case Token::Kind::Punct:
      if (t.text == "(") {
        ++pos_;
        Polynomial inner = parse_expression();
        expect(")");
        return inner;
      }
      if (t.text == "-") {
        ++pos_;
        return -parse_factor();
      }
      if (t.text == "{") {
        if (field.is_rational() || field.degree() == 1) fail("extension-field literal in a prime or rational field");
        ++pos_;
        std::array<std::uint64_t, 3> coords{};
        for (int i = 0; i < field.degree(); ++i) {
          if (i) expect(",");
          if (peek().kind != Token::Kind::Number) fail("expected a coordinate");
          const mpz_class v(peek().text);
          coords[i] = mpz_fdiv_ui(v.get_mpz_t(), field.characteristic());
          ++pos_;
        }
        expect("}");
        return Polynomial::constant(ring_, field.from_coordinates(coords));
      }
      break;
    case Token::Kind::End:
      break;
  }
  fail("expected a polynomial");
}

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, PolyLookup lookup) {
  const auto tokens = tokenize(text);
  std::size_t pos = 0;
  ExprParser parser(tokens, pos, ring, std::move(lookup));
  Polynomial p = parser.parse_expression();
  if (tokens[pos].kind != Token::Kind::End)
    throw ParseError("trailing input near '" + tokens[pos].text + "'", tokens[pos].line, tokens[pos].column);
  return p;
}

}  // namespace ck
