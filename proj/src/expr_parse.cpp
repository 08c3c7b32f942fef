#include <cctype>

#include "germcalc/errors.hpp"
#include "germcalc/expr.hpp"

namespace germcalc {

namespace {

struct Token {
  enum class Kind { LParen, RParen, LBracket, RBracket, Comma, Atom, End } kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= text_.size()) return {Token::Kind::End, "", start};
    char c = text_[i_];
    switch (c) {
      case '(': ++i_; return {Token::Kind::LParen, "(", start};
      case ')': ++i_; return {Token::Kind::RParen, ")", start};
      case '[': ++i_; return {Token::Kind::LBracket, "[", start};
      case ']': ++i_; return {Token::Kind::RBracket, "]", start};
      case ',': ++i_; return {Token::Kind::Comma, ",", start};
      default: break;
    }
    std::string atom;
    while (i_ < text_.size()) {
      char d = text_[i_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '[' ||
          d == ']' || d == ',')
        break;
      atom.push_back(d);
      ++i_;
    }
    return {Token::Kind::Atom, atom, start};
  }

private:
  const std::string& text_;
  std::size_t i_ = 0;
};

[[noreturn]] void parse_fail(std::size_t pos, const std::string& msg) {
  fail(ErrorKind::ParseError, "parse error at offset " + std::to_string(pos) + ": " + msg);
}

class Parser {
public:
  explicit Parser(const std::string& text) : lexer_(text) { advance(); }

  ExprPtr parse_top() {
    ExprPtr e = parse_expr();
    if (cur_.kind != Token::Kind::End) parse_fail(cur_.pos, "trailing input");
    return e;
  }

  Polynomial parse_poly_top(int dim) {
    int max_var = 0;
    PolySpec spec = parse_polyspec(max_var);
    if (cur_.kind != Token::Kind::End) parse_fail(cur_.pos, "trailing input");
    if (max_var > dim)
      parse_fail(0, "polynomial uses z" + std::to_string(max_var) + " but only " +
                        std::to_string(dim) + " variable(s) are declared");
    return spec.build(dim);
  }

private:
  // Deferred polynomial tree: the variable count is only known once the base
  // point has been read, so building happens afterwards.
  struct PolySpec {
    enum class Op { Add, Sub, Mul, Pow, Var, Lit } op;
    std::vector<PolySpec> args;
    int var = 0;
    unsigned long exponent = 0;
    GaussianRational lit;

    Polynomial build(int dim) const {
      switch (op) {
        case Op::Var: return Polynomial::variable(dim, var);
        case Op::Lit: return Polynomial::constant(dim, lit);
        case Op::Add: {
          Polynomial p(dim);
          for (const auto& a : args) p += a.build(dim);
          return p;
        }
        case Op::Sub: {
          if (args.size() == 1) return -args[0].build(dim);
          Polynomial p = args[0].build(dim);
          for (std::size_t i = 1; i < args.size(); ++i) p -= args[i].build(dim);
          return p;
        }
        case Op::Mul: {
          Polynomial p = Polynomial::constant(dim, GaussianRational(1));
          for (const auto& a : args) p = p * a.build(dim);
          return p;
        }
        case Op::Pow: return args[0].build(dim).pow(exponent);
      }
      fail(ErrorKind::ParseError, "corrupt polynomial spec");
    }
  };

  void advance() { cur_ = lexer_.next(); }

  Token expect(Token::Kind k, const char* what) {
    if (cur_.kind != k) parse_fail(cur_.pos, std::string("expected ") + what);
    Token t = cur_;
    advance();
    return t;
  }

  GaussianRational parse_number_token(const Token& t) {
    try {
      return GaussianRational::parse_literal(t.text);
    } catch (const CalcError&) {
      parse_fail(t.pos, "malformed rational literal '" + t.text + "'");
    }
  }

  Point parse_base() {
    Point base;
    if (cur_.kind == Token::Kind::Atom) {
      // Unbracketed shorthand for one-dimensional base points.
      base.push_back(parse_number_token(cur_));
      advance();
      return base;
    }
    expect(Token::Kind::LBracket, "'[' opening a base point");
    bool first = true;
    while (cur_.kind != Token::Kind::RBracket) {
      if (!first && cur_.kind == Token::Kind::Comma) advance();
      Token t = expect(Token::Kind::Atom, "rational literal in base point");
      // A trailing standalone "i" attaches to the previous literal ("1/2+3/4 i").
      if (cur_.kind == Token::Kind::Atom && cur_.text == "i") {
        t.text += "i";
        advance();
      }
      base.push_back(parse_number_token(t));
      first = false;
    }
    advance();  // ']'
    if (base.empty()) parse_fail(cur_.pos, "empty base point");
    return base;
  }

  PolySpec parse_polyspec(int& max_var) {
    if (cur_.kind == Token::Kind::Atom) {
      Token t = cur_;
      advance();
      if (t.text == "z" || (t.text.size() >= 2 && t.text[0] == 'z' &&
                            std::isdigit(static_cast<unsigned char>(t.text[1])))) {
        int var = 1;
        if (t.text != "z") {
          try {
            var = std::stoi(t.text.substr(1));
          } catch (...) {
            parse_fail(t.pos, "malformed variable '" + t.text + "'");
          }
        }
        if (var < 1) parse_fail(t.pos, "variable index must be >= 1");
        max_var = std::max(max_var, var);
        PolySpec s;
        s.op = PolySpec::Op::Var;
        s.var = var;
        return s;
      }
      PolySpec s;
      s.op = PolySpec::Op::Lit;
      s.lit = parse_number_token(t);
      return s;
    }
    Token open = expect(Token::Kind::LParen, "'(' or atom in polynomial");
    Token head = expect(Token::Kind::Atom, "polynomial operator");
    PolySpec s;
    if (head.text == "+")
      s.op = PolySpec::Op::Add;
    else if (head.text == "-")
      s.op = PolySpec::Op::Sub;
    else if (head.text == "*")
      s.op = PolySpec::Op::Mul;
    else if (head.text == "^")
      s.op = PolySpec::Op::Pow;
    else
      parse_fail(head.pos, "unknown polynomial operator '" + head.text + "'");
    while (cur_.kind != Token::Kind::RParen && cur_.kind != Token::Kind::End)
      s.args.push_back(parse_polyspec(max_var));
    expect(Token::Kind::RParen, "')'");
    if (s.op == PolySpec::Op::Pow) {
      if (s.args.size() != 2 || s.args[1].op != PolySpec::Op::Lit || !s.args[1].lit.is_real() ||
          s.args[1].lit.re().get_den() != 1 || sgn(s.args[1].lit.re()) < 0)
        parse_fail(open.pos, "'^' needs a base and a non-negative integer exponent");
      s.exponent = s.args[1].lit.re().get_num().get_ui();
      s.args.pop_back();
    } else if (s.args.empty() || (s.op == PolySpec::Op::Sub && s.args.size() > 2)) {
      parse_fail(open.pos, "arity mismatch in polynomial operator");
    }
    return s;
  }

  ExprPtr parse_expr() {
    Token open = expect(Token::Kind::LParen, "'(' opening an expression");
    Token head = expect(Token::Kind::Atom, "operator name");
    const std::string& op = head.text;

    if (op == "germ") {
      Token name = expect(Token::Kind::Atom, "germ name");
      Point base = parse_base();
      expect(Token::Kind::RParen, "')'");
      return make_germ(name.text, std::move(base));
    }
    if (op == "poly" || op == "gpoly") {
      int max_var = 0;
      PolySpec spec = parse_polyspec(max_var);
      Point base = parse_base();
      expect(Token::Kind::RParen, "')'");
      if (max_var > static_cast<int>(base.size()))
        parse_fail(head.pos, "polynomial uses z" + std::to_string(max_var) +
                                 " but the base point has " + std::to_string(base.size()) +
                                 " coordinate(s)");
      Polynomial p = spec.build(static_cast<int>(base.size()));
      return make_poly(std::move(p), std::move(base), op == "gpoly");
    }
    if (op == "schwarz") {
      ExprPtr e = parse_expr();
      expect(Token::Kind::RParen, "')'");
      return make_schwarz(std::move(e));
    }
    if (op == "compose") {
      ExprPtr outer = parse_expr();
      std::vector<ExprPtr> inner;
      while (cur_.kind != Token::Kind::RParen && cur_.kind != Token::Kind::End)
        inner.push_back(parse_expr());
      expect(Token::Kind::RParen, "')'");
      if (inner.empty()) parse_fail(open.pos, "compose needs at least one inner expression");
      return make_compose(std::move(outer), std::move(inner));
    }
    if (op == "partial") {
      Token j = expect(Token::Kind::Atom, "axis");
      int axis = 0;
      try {
        axis = std::stoi(j.text);
      } catch (...) {
        parse_fail(j.pos, "malformed axis '" + j.text + "'");
      }
      if (axis < 1) parse_fail(j.pos, "axis must be >= 1");
      ExprPtr e = parse_expr();
      expect(Token::Kind::RParen, "')'");
      return make_partial(axis, std::move(e));
    }
    if (op == "implicit") {
      ExprPtr e = parse_expr();
      expect(Token::Kind::RParen, "')'");
      return make_implicit(std::move(e));
    }
    if (op == "mdiv") {
      ExprPtr e = parse_expr();
      expect(Token::Kind::RParen, "')'");
      return make_monomial_div(std::move(e));
    }
    if (op == "deram") {
      Token m = expect(Token::Kind::Atom, "deramification index");
      long mv = 0;
      try {
        mv = std::stol(m.text);
      } catch (...) {
        parse_fail(m.pos, "malformed deramification index '" + m.text + "'");
      }
      if (mv < 1) parse_fail(m.pos, "deramification index must be >= 1");
      ExprPtr e = parse_expr();
      expect(Token::Kind::RParen, "')'");
      return make_deram(static_cast<unsigned>(mv), std::move(e));
    }
    parse_fail(head.pos, "unknown operator '" + op + "'");
  }

  Lexer lexer_;
  Token cur_{Token::Kind::End, "", 0};
};

std::string base_to_string(const Point& base) {
  std::string s = "[";
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (i) s += ", ";
    s += base[i].literal();
  }
  return s + "]";
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse_top(); }

Polynomial parse_polynomial(const std::string& text, int dim) {
  return Parser(text).parse_poly_top(dim);
}

ExprPtr make_germ(std::string name, Point base) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::InputGerm;
  n->name = std::move(name);
  n->base = std::move(base);
  return n;
}

ExprPtr make_poly(Polynomial p, Point base, bool gaussian) {
  require(p.dim() == static_cast<int>(base.size()), ErrorKind::DimensionMismatch,
          "polynomial node: base point dimension mismatch");
  // Every coefficient in this engine already lives in Q(i), so a Gaussian
  // polynomial node differs from a plain one only by its declared kind.
  auto n = std::make_shared<ExprNode>();
  n->kind = gaussian ? ExprKind::GaussianPoly : ExprKind::Poly;
  n->poly = std::move(p);
  n->base = std::move(base);
  return n;
}

ExprPtr make_schwarz(ExprPtr e) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Schwarz;
  n->children.push_back(std::move(e));
  return n;
}

ExprPtr make_compose(ExprPtr outer, std::vector<ExprPtr> inner) {
  require(!inner.empty(), ErrorKind::BadArgument, "compose needs inner expressions");
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Compose;
  n->children.push_back(std::move(outer));
  for (auto& e : inner) n->children.push_back(std::move(e));
  return n;
}

ExprPtr make_partial(int axis, ExprPtr e) {
  require(axis >= 1, ErrorKind::BadArgument, "axis must be >= 1");
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Partial;
  n->axis = axis;
  n->children.push_back(std::move(e));
  return n;
}

ExprPtr make_implicit(ExprPtr e) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Implicit;
  n->children.push_back(std::move(e));
  return n;
}

ExprPtr make_monomial_div(ExprPtr e) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::MonomialDiv;
  n->children.push_back(std::move(e));
  return n;
}

ExprPtr make_deram(unsigned m, ExprPtr e) {
  require(m >= 1, ErrorKind::BadArgument, "deramification index must be >= 1");
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Deram;
  n->deram_m = m;
  n->children.push_back(std::move(e));
  return n;
}

std::string to_string(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::InputGerm:
      return "(germ " + e->name + " " + base_to_string(e->base) + ")";
    case ExprKind::Poly:
    case ExprKind::GaussianPoly:
      return std::string("(") + (e->kind == ExprKind::Poly ? "poly " : "gpoly ") +
             e->poly.to_string() + " " + base_to_string(e->base) + ")";
    case ExprKind::Schwarz:
      return "(schwarz " + to_string(e->children[0]) + ")";
    case ExprKind::Compose: {
      std::string s = "(compose";
      for (const auto& c : e->children) s += " " + to_string(c);
      return s + ")";
    }
    case ExprKind::Partial:
      return "(partial " + std::to_string(e->axis) + " " + to_string(e->children[0]) + ")";
    case ExprKind::Implicit:
      return "(implicit " + to_string(e->children[0]) + ")";
    case ExprKind::MonomialDiv:
      return "(mdiv " + to_string(e->children[0]) + ")";
    case ExprKind::Deram:
      return "(deram " + std::to_string(e->deram_m) + " " + to_string(e->children[0]) + ")";
  }
  return "?";
}

}  // namespace germcalc
