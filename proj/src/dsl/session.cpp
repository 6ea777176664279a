#include "ck/session.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ck/error.hpp"
#include "ck/text.hpp"

namespace ck {

namespace {

using Kind = Argument::Kind;

struct Slot {
  const char* keyword;  // token that introduces the slot, or nullptr
  Kind kind;
  std::size_t arity;  // tuples only; 0 means any positive length
  bool optional;
  long long max_integer;
};

struct Signature {
  const char* name;
  std::vector<Slot> slots;
};

const std::vector<Signature>& signatures() {
  static const std::vector<Signature> table = {
      {"member", {{nullptr, Kind::Poly, 0, false, 0}, {"in", Kind::Ideal, 0, false, 0}}},
      {"radical-member", {{nullptr, Kind::Poly, 0, false, 0}, {"in", Kind::Ideal, 0, false, 0}}},
      {"equal", {{nullptr, Kind::Ideal, 0, false, 0}, {",", Kind::Ideal, 0, false, 0}}},
      {"radical-equal", {{nullptr, Kind::Ideal, 0, false, 0}, {",", Kind::Ideal, 0, false, 0}}},
      {"nzd", {{nullptr, Kind::Poly, 0, false, 0}, {"mod", Kind::Ideal, 0, false, 0}}},
      {"regular-sequence", {{nullptr, Kind::Tuple, 0, false, 0}, {"mod", Kind::Ideal, 0, true, 0}}},
      {"dimension", {{nullptr, Kind::Ideal, 0, false, 0}}},
      {"koszul-exact", {{nullptr, Kind::Tuple, 2, false, 0}, {"mod", Kind::Ideal, 0, true, 0}}},
      {"resolution", {{nullptr, Kind::Ideal, 0, false, 0}, {"length", Kind::Integer, 0, true, 12}}},
      {"ext", {{nullptr, Kind::Ideal, 0, false, 0}, {nullptr, Kind::Integer, 0, false, 12}}},
      {"conormal-rank", {{nullptr, Kind::Ideal, 0, false, 0}, {nullptr, Kind::Integer, 0, false, 64}}},
      {"lci", {{nullptr, Kind::Ideal, 0, false, 0}}},
      {"mod-square", {{nullptr, Kind::Ideal, 0, false, 0}, {"with", Kind::Tuple, 0, false, 0}}},
      {"regularize", {{nullptr, Kind::Ideal, 0, false, 0}, {"with", Kind::Tuple, 0, false, 0}}},
      {"ci", {{nullptr, Kind::Ideal, 0, false, 0}, {"with", Kind::Tuple, 2, false, 0}}},
      {"stci", {{nullptr, Kind::Ideal, 0, false, 0}, {"with", Kind::Tuple, 2, false, 0}}},
      {"stci-search", {{nullptr, Kind::Ideal, 0, false, 0}}},
      {"local-generation",
       {{nullptr, Kind::Ideal, 0, false, 0}, {"with", Kind::Tuple, 0, false, 0}, {"bound", Kind::Integer, 0, true, 6}}},
  };
  return table;
}

const Signature* find_signature(const std::string& name) {
  for (const auto& s : signatures())
    if (name == s.name) return &s;
  return nullptr;
}

constexpr std::array<std::string_view, 10> kReserved = {"ring", "ideal", "poly", "pair", "check",
                                                        "in",   "mod",   "with", "length", "bound"};

bool reserved(std::string_view word) { return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end(); }

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : tokens_(tokenize(text)), options_(options) {}

  Session run() {
    while (peek().kind != Token::Kind::End) {
      const Token& t = peek();
      if (t.kind != Token::Kind::Identifier) fail("expected 'ring', 'ideal', 'poly', 'pair' or 'check'");
      if (t.text == "ring")
        ring_decl();
      else if (t.text == "ideal")
        ideal_decl();
      else if (t.text == "poly")
        poly_decl();
      else if (t.text == "pair")
        pair_decl();
      else if (t.text == "check")
        check();
      else
        fail("expected 'ring', 'ideal', 'poly', 'pair' or 'check'");
    }
    return std::move(session_);
  }

 private:
  enum class Symbol { Ring, Ideal, Poly, Pair };

  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& message) const { fail_at(peek(), message); }

  [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
    throw ParseError(message + (t.kind == Token::Kind::End ? " at end of input" : ", found '" + t.text + "'"), t.line,
                     t.column);
  }

  bool at_punct(std::string_view p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  bool at_word(std::string_view w) const { return peek().kind == Token::Kind::Identifier && peek().text == w; }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
    ++pos_;
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("expected '" + std::string(w) + "'");
    ++pos_;
  }

  std::string identifier(const char* what) {
    if (peek().kind != Token::Kind::Identifier) fail(std::string("expected ") + what);
    return tokens_[pos_++].text;
  }

  long long number(const char* what, long long max) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number) fail(std::string("expected ") + what);
    if (t.text.size() > 18 || std::stoll(t.text) > max)
      fail_at(t, std::string(what) + " exceeds " + std::to_string(max));
    ++pos_;
    return std::stoll(t.text);
  }

  /// Name for a new declaration: not reserved, not taken, not a variable of
  /// the ring in scope.
  std::string fresh_name(const char* what) {
    const Token& t = peek();
    const std::string name = identifier(what);
    if (reserved(name)) fail_at(t, "'" + name + "' is a reserved word");
    if (symbols_.count(name)) fail_at(t, "'" + name + "' is already declared");
    if (current_ && current_->spec.ring->index_of(name))
      fail_at(t, "'" + name + "' is a variable of ring '" + current_->name + "'");
    return name;
  }

  const RingDecl& current_ring(const Token& at) const {
    if (!current_) fail_at(at, "undeclared ring: no ring is declared before this statement");
    return *current_;
  }

  PolyLookup lookup() const {
    return [this](const std::string& name) -> std::optional<Polynomial> {
      if (auto it = polys_.find(name); it != polys_.end()) return it->second;
      return std::nullopt;
    };
  }

  Polynomial expression(const RingPtr& ring) {
    ExprParser parser(tokens_, pos_, ring, lookup());
    return parser.parse_expression();
  }

  /// "(" e1, ..., ek ")"
  std::vector<Polynomial> expression_list(const RingPtr& ring) {
    expect_punct("(");
    std::vector<Polynomial> out;
    out.push_back(expression(ring));
    while (at_punct(",")) {
      ++pos_;
      out.push_back(expression(ring));
    }
    expect_punct(")");
    return out;
  }

  Field field() {
    const Token& t = peek();
    const std::string name = identifier("a field (QQ, Fp(p) or GF(p^k))");
    try {
      if (name == "QQ") return Field::rationals();
      if (name == "Fp") {
        expect_punct("(");
        const auto p = number("a prime", 1LL << 62);
        expect_punct(")");
        return Field::prime(static_cast<std::uint64_t>(p));
      }
      if (name == "GF") {
        expect_punct("(");
        const auto p = number("a prime", 1LL << 62);
        long long k = 1;
        if (at_punct("^")) {
          ++pos_;
          k = number("an extension degree", 3);
        }
        expect_punct(")");
        return k == 1 ? Field::prime(static_cast<std::uint64_t>(p))
                      : Field::extension(static_cast<std::uint64_t>(p), static_cast<int>(k));
      }
    } catch (const std::invalid_argument& e) {
      fail_at(t, e.what());
    }
    fail_at(t, "expected a field (QQ, Fp(p) or GF(p^k))");
  }

  MonomialOrder order(std::size_t nvars) {
    const Token& t = peek();
    const std::string name = identifier("a monomial order (lex, grevlex or elim(k))");
    if (name == "lex") return MonomialOrder::lex(nvars);
    if (name == "grevlex") return MonomialOrder::grevlex(nvars);
    if (name == "elim") {
      expect_punct("(");
      const auto k = number("a block size", static_cast<long long>(nvars));
      expect_punct(")");
      return MonomialOrder::elimination(nvars, static_cast<std::size_t>(k));
    }
    fail_at(t, "expected a monomial order (lex, grevlex or elim(k))");
  }

  void ring_decl() {
    ++pos_;
    const std::string name = fresh_name("a ring name");
    expect_punct("=");
    Field k = field();
    if (options_.field) k = *options_.field;
    expect_punct("[");
    std::vector<std::string> vars;
    do {
      if (!vars.empty()) ++pos_;
      const Token& t = peek();
      const std::string v = identifier("a variable name");
      if (reserved(v)) fail_at(t, "'" + v + "' is a reserved word");
      if (std::find(vars.begin(), vars.end(), v) != vars.end()) fail_at(t, "duplicate variable '" + v + "'");
      if (symbols_.count(v)) fail_at(t, "'" + v + "' is already declared");
      vars.push_back(v);
    } while (at_punct(","));
    expect_punct("]");
    // The base ideal is read once the order is known.
    std::optional<std::size_t> base_at;
    if (at_punct("/")) {
      ++pos_;
      base_at = pos_;
      skip_balanced();
    }
    MonomialOrder ord = MonomialOrder::grevlex(vars.size());
    if (at_word("order")) {
      ++pos_;
      ord = order(vars.size());
    }
    expect_punct(";");
    const std::size_t end = pos_;
    RingSpec spec{make_ring(vars, k, ord), {}};
    if (base_at) {
      pos_ = *base_at;
      for (auto& g : expression_list(spec.ring))
        if (!g.is_zero()) spec.base.push_back(std::move(g));
      pos_ = end;
    }
    symbols_[name] = Symbol::Ring;
    session_.statements.push_back(RingDecl{name, std::move(spec)});
    current_ = std::get<RingDecl>(session_.statements.back());
    rings_[name] = current_->spec;
  }

  /// Skips a parenthesised group, checking only that brackets balance.
  void skip_balanced() {
    if (!at_punct("(")) fail("expected '('");
    int depth = 0;
    do {
      if (peek().kind == Token::Kind::End) fail("unbalanced '('");
      if (at_punct("(")) ++depth;
      if (at_punct(")")) --depth;
      ++pos_;
    } while (depth > 0);
  }

  void ideal_decl() {
    const Token& kw = peek();
    ++pos_;
    const auto& ring = current_ring(kw);
    const std::string name = fresh_name("an ideal name");
    expect_punct("=");
    auto gens = expression_list(ring.spec.ring);
    expect_punct(";");
    symbols_[name] = Symbol::Ideal;
    IdealDecl d{name, ring.name, IdealHandle(ring.spec, std::move(gens))};
    ideals_.emplace(name, d.ideal);
    ideal_rings_[name] = ring.name;
    session_.statements.push_back(std::move(d));
  }

  void poly_decl() {
    const Token& kw = peek();
    ++pos_;
    const auto& ring = current_ring(kw);
    const std::string name = fresh_name("a polynomial name");
    expect_punct("=");
    Polynomial value = expression(ring.spec.ring);
    expect_punct(";");
    symbols_[name] = Symbol::Poly;
    polys_.emplace(name, value);
    session_.statements.push_back(PolyDecl{name, ring.name, std::move(value)});
  }

  void pair_decl() {
    const Token& kw = peek();
    ++pos_;
    const auto& ring = current_ring(kw);
    const Token& name_tok = peek();
    const std::string name = fresh_name("a pair name");
    expect_punct("=");
    auto both = expression_list(ring.spec.ring);
    if (both.size() != 2)
      fail_at(name_tok, "arity mismatch: pair '" + name + "' needs 2 polynomials, got " + std::to_string(both.size()));
    expect_punct(";");
    symbols_[name] = Symbol::Pair;
    pairs_.emplace(name, std::make_pair(both[0], both[1]));
    pair_rings_[name] = ring.name;
    session_.statements.push_back(PairDecl{name, ring.name, both[0], both[1]});
  }

  /// A slot still waiting for its ring: expressions are parsed once every
  /// ideal argument is known.
  struct Pending {
    std::size_t slot;
    std::size_t start;
    const Token* at;
  };

  void check() {
    const Token& kw = peek();
    ++pos_;
    const Token& name_tok = peek();
    std::string name = identifier("a command name");
    while (at_punct("-") && peek(1).kind == Token::Kind::Identifier) {
      name += "-" + peek(1).text;
      pos_ += 2;
    }
    const Signature* sig = find_signature(name);
    if (!sig) {
      std::string list;
      for (const auto& n : command_names()) list += (list.empty() ? "" : ", ") + n;
      fail_at(name_tok, "unknown command '" + name + "', expected one of: " + list);
    }

    CheckCommand cmd;
    cmd.name = name;
    cmd.line = kw.line;
    cmd.column = kw.column;
    cmd.args.resize(sig->slots.size());
    std::vector<Pending> pending;
    std::optional<std::string> ring_name;

    for (std::size_t i = 0; i < sig->slots.size(); ++i) {
      const Slot& slot = sig->slots[i];
      if (slot.keyword) {
        const bool present = std::string_view(slot.keyword) == ","
                                 ? at_punct(",")
                                 : at_word(slot.keyword);
        if (!present) {
          if (slot.optional) continue;
          fail("arity mismatch: '" + name + "' expects '" + slot.keyword + "'");
        }
        ++pos_;
      }
      Argument arg;
      arg.kind = slot.kind;
      const Token& at = peek();
      switch (slot.kind) {
        case Kind::Ideal: {
          const std::string ref = identifier("an ideal name");
          const auto it = ideals_.find(ref);
          if (it == ideals_.end()) {
            if (symbols_.count(ref)) fail_at(at, "'" + ref + "' is not an ideal");
            fail_at(at, "undeclared name '" + ref + "'");
          }
          const std::string& r = ideal_rings_.at(ref);
          if (ring_name && *ring_name != r)
            fail_at(at, "ideal '" + ref + "' lives in ring '" + r + "', not '" + *ring_name + "'");
          ring_name = r;
          arg.ref = ref;
          arg.ideal = it->second;
          break;
        }
        case Kind::Integer:
          arg.integer = number("an integer", slot.max_integer);
          break;
        case Kind::Poly:
          pending.push_back({i, pos_, &at});
          skip_expression();
          break;
        case Kind::Tuple:
          if (at.kind == Token::Kind::Identifier) {
            const auto it = pairs_.find(at.text);
            if (it == pairs_.end()) fail_at(at, "undeclared pair '" + at.text + "'");
            pending.push_back({i, pos_, &at});
            ++pos_;
          } else {
            pending.push_back({i, pos_, &at});
            skip_balanced();
          }
          break;
      }
      cmd.args[i] = std::move(arg);
    }
    if (!at_punct(";")) fail("expected ';' after the arguments of '" + name + "'");
    const std::size_t end = ++pos_;

    if (!ring_name) {
      // Pair references pin the ring; otherwise the ring in scope.
      for (const auto& p : pending)
        if (auto it = pair_rings_.find(p.at->text); it != pair_rings_.end() && cmd.args[p.slot]->kind == Kind::Tuple)
          ring_name = it->second;
      if (!ring_name) ring_name = current_ring(kw).name;
    }
    cmd.ring = *ring_name;
    cmd.spec = rings_.at(*ring_name);
    const RingPtr& ring = cmd.spec.ring;

    for (const auto& p : pending) {
      Argument& arg = *cmd.args[p.slot];
      pos_ = p.start;
      if (arg.kind == Kind::Poly) {
        const Token& next = tokens_[pos_ + 1];
        const bool lone = peek().kind == Token::Kind::Identifier &&
                          ((next.kind == Token::Kind::Punct && (next.text == ";" || next.text == ",")) ||
                           at_word_at(pos_ + 1));
        arg.polys.push_back(expression(ring));
        if (lone && polys_.count(p.at->text)) arg.ref = p.at->text;
      } else if (p.at->kind == Token::Kind::Identifier) {
        const auto& [f, g] = pairs_.at(p.at->text);
        if (!same_ring(f.ring(), ring))
          fail_at(*p.at, "pair '" + p.at->text + "' lives in ring '" + pair_rings_.at(p.at->text) + "', not '" +
                             *ring_name + "'");
        arg.ref = p.at->text;
        arg.polys = {f, g};
      } else {
        arg.polys = expression_list(ring);
      }
      const std::size_t want = sig->slots[p.slot].arity;
      if (arg.kind == Kind::Tuple && want && arg.polys.size() != want)
        fail_at(*p.at, "arity mismatch: '" + name + "' expects " + std::to_string(want) + " polynomials, got " +
                           std::to_string(arg.polys.size()));
    }
    pos_ = end;
    session_.statements.push_back(std::move(cmd));
  }

  bool at_word_at(std::size_t i) const { return tokens_[i].kind == Token::Kind::Identifier && reserved(tokens_[i].text); }

  /// Skips to the next ';' or reserved word outside parentheses.
  void skip_expression() {
    const std::size_t start = pos_;
    int depth = 0;
    while (true) {
      const Token& t = peek();
      if (t.kind == Token::Kind::End) break;
      if (depth == 0 && ((t.kind == Token::Kind::Punct && (t.text == ";" || t.text == ",")) ||
                         (t.kind == Token::Kind::Identifier && reserved(t.text))))
        break;
      if (at_punct("(")) ++depth;
      if (at_punct(")") && --depth < 0) fail("unbalanced ')'");
      ++pos_;
    }
    if (pos_ == start) fail("expected a polynomial");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const ParseOptions& options_;
  Session session_;
  std::optional<RingDecl> current_;
  std::map<std::string, Symbol> symbols_;
  std::map<std::string, RingSpec> rings_;
  std::map<std::string, IdealHandle> ideals_;
  std::map<std::string, std::string> ideal_rings_;
  std::map<std::string, Polynomial> polys_;
  std::map<std::string, std::pair<Polynomial, Polynomial>> pairs_;
  std::map<std::string, std::string> pair_rings_;
};

std::string join(const std::vector<Polynomial>& fs) {
  std::string out;
  for (const auto& f : fs) out += (out.empty() ? "" : ", ") + format(f);
  return out;
}

std::string print_argument(const Argument& a) {
  if (!a.ref.empty()) return a.ref;
  switch (a.kind) {
    case Kind::Poly:
      return format(a.polys.front());
    case Kind::Tuple:
      return "(" + join(a.polys) + ")";
    case Kind::Integer:
      return std::to_string(a.integer);
    case Kind::Ideal:
      break;
  }
  return a.ref;
}

}  // namespace

std::vector<const CheckCommand*> Session::commands() const {
  std::vector<const CheckCommand*> out;
  for (const auto& s : statements)
    if (const auto* c = std::get_if<CheckCommand>(&s)) out.push_back(c);
  return out;
}

std::size_t Session::declarations() const { return statements.size() - commands().size(); }

Session parse_session(std::string_view text, const ParseOptions& options) {
  Parser parser(text, options);
  return parser.run();
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : signatures()) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

std::string print(const CheckCommand& command) {
  const Signature* sig = find_signature(command.name);
  if (!sig) throw std::invalid_argument("unknown command '" + command.name + "'");
  std::string out = "check " + command.name;
  for (std::size_t i = 0; i < sig->slots.size(); ++i) {
    if (!command.args[i]) continue;
    const char* kw = sig->slots[i].keyword;
    if (kw && std::string_view(kw) == ",")
      out += ",";
    else if (kw)
      out += std::string(" ") + kw;
    out += " " + print_argument(*command.args[i]);
  }
  return out + ";";
}

std::string print(const Session& session) {
  std::ostringstream out;
  for (const auto& st : session.statements) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, RingDecl>) {
            const auto& ring = *s.spec.ring;
            out << "ring " << s.name << " = " << ring.field().name() << "[";
            for (std::size_t i = 0; i < ring.nvars(); ++i) out << (i ? "," : "") << ring.variables()[i];
            out << "]";
            if (s.spec.is_quotient()) out << " / (" << join(s.spec.base) << ")";
            out << " order " << ring.order().name() << ";\n";
          } else if constexpr (std::is_same_v<T, IdealDecl>) {
            out << "ideal " << s.name << " = (" << join(s.ideal.generators()) << ");\n";
          } else if constexpr (std::is_same_v<T, PolyDecl>) {
            out << "poly " << s.name << " = " << format(s.value) << ";\n";
          } else if constexpr (std::is_same_v<T, PairDecl>) {
            out << "pair " << s.name << " = (" << format(s.first) << ", " << format(s.second) << ");\n";
          } else {
            out << print(s) << "\n";
          }
        },
        st);
  }
  return out.str();
}

}  // namespace ck
