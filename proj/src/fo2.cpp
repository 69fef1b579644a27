#include "fo2sp/fo2.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_map>

#include "fo2sp/errors.hpp"

namespace fo2sp::fo2 {

using Kind = Formula::Kind;

namespace {

FormulaRef make(Kind kind, std::string pred, Var a, Var b, std::vector<FormulaRef> kids) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->pred = std::move(pred);
  f->a = a;
  f->b = b;
  f->kids = std::move(kids);
  return f;
}

}  // namespace

FormulaRef unary(std::string pred, Var v) { return make(Kind::Unary, std::move(pred), v, Var::X, {}); }
FormulaRef succ_l(Var u, Var v) { return make(Kind::SuccL, "", u, v, {}); }
FormulaRef succ_p(Var u, Var v) { return make(Kind::SuccP, "", u, v, {}); }
FormulaRef eq(Var u, Var v) { return make(Kind::Eq, "", u, v, {}); }
FormulaRef negate(FormulaRef f) { return make(Kind::Not, "", Var::X, Var::X, {std::move(f)}); }
FormulaRef conj(std::vector<FormulaRef> fs) { return make(Kind::And, "", Var::X, Var::X, std::move(fs)); }
FormulaRef disj(std::vector<FormulaRef> fs) { return make(Kind::Or, "", Var::X, Var::X, std::move(fs)); }
FormulaRef implies(FormulaRef lhs, FormulaRef rhs) {
  return make(Kind::Implies, "", Var::X, Var::X, {std::move(lhs), std::move(rhs)});
}
FormulaRef iff(FormulaRef lhs, FormulaRef rhs) {
  return make(Kind::Iff, "", Var::X, Var::X, {std::move(lhs), std::move(rhs)});
}
FormulaRef exists(Var v, FormulaRef f) {
  return make(Kind::Exists, "", v, Var::X, {std::move(f)});
}
FormulaRef forall(Var v, FormulaRef f) {
  return make(Kind::Forall, "", v, Var::X, {std::move(f)});
}

bool equal(const Formula& lhs, const Formula& rhs) {
  if (lhs.kind != rhs.kind || lhs.pred != rhs.pred || lhs.a != rhs.a || lhs.b != rhs.b ||
      lhs.kids.size() != rhs.kids.size())
    return false;
  for (std::size_t i = 0; i < lhs.kids.size(); ++i)
    if (!equal(*lhs.kids[i], *rhs.kids[i])) return false;
  return true;
}

std::set<Var> free_vars(const Formula& f) {
  switch (f.kind) {
    case Kind::Unary:
      return {f.a};
    case Kind::SuccL:
    case Kind::SuccP:
    case Kind::Eq:
      return {f.a, f.b};
    case Kind::Exists:
    case Kind::Forall: {
      auto vars = free_vars(*f.kids[0]);
      vars.erase(f.a);
      return vars;
    }
    default: {
      std::set<Var> vars;
      for (const auto& kid : f.kids) vars.merge(free_vars(*kid));
      return vars;
    }
  }
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

std::set<std::string> collect_predicates(const Formula& f) {
  std::set<std::string> preds;
  if (f.kind == Kind::Unary) preds.insert(f.pred);
  for (const auto& kid : f.kids) preds.merge(collect_predicates(*kid));
  return preds;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Structure compiled to integer positions: element i is order[i], succL is
// position adjacency, succP is class-index adjacency.
struct EvalContext {
  int n = 0;
  std::vector<int> class_of;                                     // by position
  std::unordered_map<std::string, std::vector<char>> predicate;  // by position

  explicit EvalContext(const structures::OrderedStructure& s) {
    n = static_cast<int>(s.order.size());
    std::unordered_map<structures::Element, int> pos;
    pos.reserve(s.order.size());
    for (int i = 0; i < n; ++i) pos.emplace(s.order[i], i);

    class_of.assign(n, 0);
    for (std::size_t c = 0; c < s.classes.size(); ++c)
      for (const auto& e : s.classes[c]) {
        auto it = pos.find(e);
        if (it != pos.end()) class_of[it->second] = static_cast<int>(c);
      }

    for (const auto& [pred, elems] : s.labels) {
      std::vector<char> bits(n, 0);
      for (const auto& e : elems) {
        auto it = pos.find(e);
        if (it != pos.end()) bits[it->second] = 1;
      }
      predicate.emplace(pred, std::move(bits));
    }
  }

  bool holds(const std::string& pred, int e) const {
    auto it = predicate.find(pred);
    return it != predicate.end() && it->second[e];
  }
};

constexpr int kUnbound = -1;

bool eval(const EvalContext& ctx, const Formula& f, int xi, int yi) {
  auto value = [&](Var v) {
    int e = v == Var::X ? xi : yi;
    if (e == kUnbound)
      throw UnboundVariable(std::string("unbound variable: ") + var_name(v));
    return e;
  };

  switch (f.kind) {
    case Kind::Unary:
      return ctx.holds(f.pred, value(f.a));
    case Kind::SuccL:
      return value(f.b) == value(f.a) + 1;
    case Kind::SuccP:
      return ctx.class_of[value(f.b)] == ctx.class_of[value(f.a)] + 1;
    case Kind::Eq:
      return value(f.a) == value(f.b);
    case Kind::Not:
      return !eval(ctx, *f.kids[0], xi, yi);
    case Kind::And:
      for (const auto& kid : f.kids)
        if (!eval(ctx, *kid, xi, yi)) return false;
      return true;
    case Kind::Or:
      for (const auto& kid : f.kids)
        if (eval(ctx, *kid, xi, yi)) return true;
      return false;
    case Kind::Implies:
      return !eval(ctx, *f.kids[0], xi, yi) || eval(ctx, *f.kids[1], xi, yi);
    case Kind::Iff:
      return eval(ctx, *f.kids[0], xi, yi) == eval(ctx, *f.kids[1], xi, yi);
    case Kind::Exists:
      for (int e = 0; e < ctx.n; ++e)
        if (eval(ctx, *f.kids[0], f.a == Var::X ? e : xi, f.a == Var::Y ? e : yi)) return true;
      return false;
    case Kind::Forall:
      for (int e = 0; e < ctx.n; ++e)
        if (!eval(ctx, *f.kids[0], f.a == Var::X ? e : xi, f.a == Var::Y ? e : yi)) return false;
      return true;
  }
  return false;  // unreachable
}

}  // namespace

bool evaluate(const structures::OrderedStructure& s, const Formula& f, const Assignment& a) {
  EvalContext ctx(s);
  auto resolve = [&](const std::optional<structures::Element>& binding) {
    if (!binding) return kUnbound;
    auto it = std::find(s.order.begin(), s.order.end(), *binding);
    if (it == s.order.end()) throw UnknownElement("assignment names unknown element: " + *binding);
    return static_cast<int>(it - s.order.begin());
  };
  return eval(ctx, f, resolve(a.x), resolve(a.y));
}

// ---------------------------------------------------------------------------
// S-expression reader / printer

namespace {

struct Token {
  enum class Type { LParen, RParen, Symbol, End };
  Type type;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';' || c == '#') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) return {Token::Type::End, "", line_, column_};
    int line = line_, column = column_;
    char c = text_[pos_];
    if (c == '(') {
      advance();
      return {Token::Type::LParen, "(", line, column};
    }
    if (c == ')') {
      advance();
      return {Token::Type::RParen, ")", line, column};
    }
    std::string sym;
    while (pos_ < text_.size()) {
      c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || c == '#' || c == ' ' || c == '\t' || c == '\r' ||
          c == '\n')
        break;
      sym.push_back(c);
      advance();
    }
    return {Token::Type::Symbol, std::move(sym), line, column};
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  FormulaRef parse() {
    FormulaRef f = formula();
    if (look_.type != Token::Type::End)
      throw ParseError("trailing input after formula", look_.line, look_.column);
    return f;
  }

 private:
  void shift() { look_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, look_.line, look_.column);
  }

  Var variable() {
    if (look_.type != Token::Type::Symbol) fail("expected variable");
    if (look_.text == "x") {
      shift();
      return Var::X;
    }
    if (look_.text == "y") {
      shift();
      return Var::Y;
    }
    fail("expected variable 'x' or 'y', got '" + look_.text + "'");
  }

  void expect_rparen() {
    if (look_.type != Token::Type::RParen) fail("expected ')'");
    shift();
  }

  FormulaRef formula() {
    if (look_.type != Token::Type::LParen) fail("expected '('");
    shift();
    if (look_.type != Token::Type::Symbol) fail("expected operator or predicate");
    std::string head = look_.text;
    shift();

    if (head == "not") {
      FormulaRef f = formula();
      expect_rparen();
      return negate(std::move(f));
    }
    if (head == "and" || head == "or") {
      std::vector<FormulaRef> kids;
      while (look_.type == Token::Type::LParen) kids.push_back(formula());
      expect_rparen();
      return head == "and" ? conj(std::move(kids)) : disj(std::move(kids));
    }
    if (head == "implies" || head == "iff") {
      FormulaRef lhs = formula();
      FormulaRef rhs = formula();
      expect_rparen();
      return head == "implies" ? implies(std::move(lhs), std::move(rhs))
                               : iff(std::move(lhs), std::move(rhs));
    }
    if (head == "exists" || head == "forall") {
      Var v = variable();
      FormulaRef f = formula();
      expect_rparen();
      return head == "exists" ? exists(v, std::move(f)) : forall(v, std::move(f));
    }
    if (head == "succL" || head == "succP" || head == "=") {
      Var u = variable();
      Var v = variable();
      expect_rparen();
      if (head == "succL") return succ_l(u, v);
      if (head == "succP") return succ_p(u, v);
      return eq(u, v);
    }
    // Anything else is a unary predicate.
    Var v = variable();
    expect_rparen();
    return unary(std::move(head), v);
  }

  Lexer lexer_;
  Token look_;
};

void print_compact(const Formula& f, std::ostream& out) {
  switch (f.kind) {
    case Kind::Unary:
      out << '(' << f.pred << ' ' << var_name(f.a) << ')';
      return;
    case Kind::SuccL:
    case Kind::SuccP:
    case Kind::Eq: {
      const char* head = f.kind == Kind::SuccL ? "succL" : f.kind == Kind::SuccP ? "succP" : "=";
      out << '(' << head << ' ' << var_name(f.a) << ' ' << var_name(f.b) << ')';
      return;
    }
    case Kind::Not:
      out << "(not ";
      print_compact(*f.kids[0], out);
      out << ')';
      return;
    case Kind::And:
    case Kind::Or:
      out << '(' << (f.kind == Kind::And ? "and" : "or");
      for (const auto& kid : f.kids) {
        out << ' ';
        print_compact(*kid, out);
      }
      out << ')';
      return;
    case Kind::Implies:
    case Kind::Iff:
      out << '(' << (f.kind == Kind::Implies ? "implies" : "iff") << ' ';
      print_compact(*f.kids[0], out);
      out << ' ';
      print_compact(*f.kids[1], out);
      out << ')';
      return;
    case Kind::Exists:
    case Kind::Forall:
      out << '(' << (f.kind == Kind::Exists ? "exists" : "forall") << ' ' << var_name(f.a) << ' ';
      print_compact(*f.kids[0], out);
      out << ')';
      return;
  }
}

constexpr std::size_t kWrapWidth = 100;

void print_pretty(const Formula& f, std::ostream& out, int indent) {
  std::string flat = print_formula(f);
  if (flat.size() + static_cast<std::size_t>(indent) <= kWrapWidth) {
    out << flat;
    return;
  }

  std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  switch (f.kind) {
    case Kind::Not:
      out << "(not\n" << pad;
      print_pretty(*f.kids[0], out, indent + 2);
      out << ')';
      return;
    case Kind::And:
    case Kind::Or:
      out << '(' << (f.kind == Kind::And ? "and" : "or");
      for (const auto& kid : f.kids) {
        out << '\n' << pad;
        print_pretty(*kid, out, indent + 2);
      }
      out << ')';
      return;
    case Kind::Implies:
    case Kind::Iff:
      out << '(' << (f.kind == Kind::Implies ? "implies" : "iff") << '\n' << pad;
      print_pretty(*f.kids[0], out, indent + 2);
      out << '\n' << pad;
      print_pretty(*f.kids[1], out, indent + 2);
      out << ')';
      return;
    case Kind::Exists:
    case Kind::Forall:
      out << '(' << (f.kind == Kind::Exists ? "exists" : "forall") << ' ' << var_name(f.a) << '\n'
          << pad;
      print_pretty(*f.kids[0], out, indent + 2);
      out << ')';
      return;
    default:
      out << flat;  // atoms never exceed the width
      return;
  }
}

}  // namespace

FormulaRef parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string print_formula(const Formula& f) {
  std::ostringstream out;
  print_compact(f, out);
  return out.str();
}

std::string print_formula_pretty(const Formula& f) {
  std::ostringstream out;
  print_pretty(f, out, 0);
  return out.str();
}

}  // namespace fo2sp::fo2
