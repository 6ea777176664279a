#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ck/groebner.hpp"

namespace ck {

struct RingDecl {
  std::string name;
  RingSpec spec;
};

struct IdealDecl {
  std::string name;
  std::string ring;
  IdealHandle ideal;
};

struct PolyDecl {
  std::string name;
  std::string ring;
  Polynomial value;
};

struct PairDecl {
  std::string name;
  std::string ring;
  Polynomial first;
  Polynomial second;
};

/// One argument slot of a check command.
struct Argument {
  enum class Kind { Poly, Tuple, Ideal, Integer };

  Kind kind = Kind::Poly;
  /// Declared name when the source referred to one (printed back as is).
  std::string ref;
  std::vector<Polynomial> polys;
  std::optional<IdealHandle> ideal;
  long long integer = 0;
};

struct CheckCommand {
  std::string name;
  /// Slots in signature order; absent optional slots are nullopt.
  std::vector<std::optional<Argument>> args;
  /// Ring the command is evaluated in (its ideal's, or the ring in scope).
  std::string ring;
  RingSpec spec;
  std::size_t line = 0;
  std::size_t column = 0;
};

using Statement = std::variant<RingDecl, IdealDecl, PolyDecl, PairDecl, CheckCommand>;

struct Session {
  std::vector<Statement> statements;

  std::vector<const CheckCommand*> commands() const;
  std::size_t declarations() const;
};

struct ParseOptions {
  /// Replaces the coefficient field of every ring (the --field override).
  std::optional<Field> field;
};

/// Throws ParseError with the 1-based line and column of the offending token.
Session parse_session(std::string_view text, const ParseOptions& options = {});

/// Canonical text, one statement per line. parse(print(s)) prints the same.
std::string print(const Session& session);
std::string print(const CheckCommand& command);

/// Command names in the order they are documented.
const std::vector<std::string>& command_names();

}  // namespace ck
