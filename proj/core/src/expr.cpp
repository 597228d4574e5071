#include "tangential/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>
#include <utility>

namespace tangential {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct FunctionName {
  std::string_view name;
  UnaryOp op;
};

constexpr std::array<FunctionName, 6> kFunctions{{
    {"sin", UnaryOp::Sin},
    {"cos", UnaryOp::Cos},
    {"exp", UnaryOp::Exp},
    {"log", UnaryOp::Log},
    {"abs", UnaryOp::Abs},
    {"sqrt", UnaryOp::Sqrt},
}};

std::string_view function_name(UnaryOp op) {
  for (const auto& f : kFunctions) {
    if (f.op == op) return f.name;
  }
  return "neg";
}

char binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
  }
  return '?';
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format constant");
  return std::string(buf.data(), end);
}

// Recursive-descent parser. Precedence, loosest first: + -, * /, unary -, ^.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  bool at_number() {
    skip_space();
    return pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
  }

  double read_number() {
    skip_space();
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  // Number literal, optionally preceded by '-'; used for cplx(...) arguments.
  double read_signed_number() {
    bool negative = accept('-');
    if (!at_number()) fail("expected numeric literal");
    double v = read_number();
    return negative ? -v : v;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) {
      // "-2.5" is a negative literal; "-2^2" is -(2^2).
      if (at_number()) {
        std::size_t save = pos_;
        double v = read_number();
        if (!peek('^')) return Expr::constant(-v);
        pos_ = save;
      }
      return Expr::unary(UnaryOp::Neg, parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!accept('^')) return base;
    skip_space();
    std::size_t exp_at = pos_;
    Expr exponent = parse_unary();
    if (!exponent.is_constant()) fail_at("non-integer exponent", exp_at);
    Complex v = std::get<ConstantNode>(exponent.node().data).value;
    if (v.imag() != 0.0 || v.real() != std::trunc(v.real()) || std::abs(v.real()) > 1e6)
      fail_at("non-integer exponent", exp_at);
    return Expr::power(base, static_cast<int>(v.real()));
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Expr inner = parse_sum();
      expect(')');
      return inner;
    }
    if (at_number()) return Expr::constant(read_number());

    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string_view ident = text_.substr(start, pos_ - start);
    if (ident.empty()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");

    if (ident == "x") return Expr::variable();
    if (ident == "pi") return Expr::constant(std::acos(-1.0));
    if (ident == "cplx") {
      expect('(');
      double re = read_signed_number();
      expect(',');
      double im = read_signed_number();
      expect(')');
      return Expr::constant({re, im});
    }
    for (const auto& f : kFunctions) {
      if (f.name == ident) {
        expect('(');
        Expr arg = parse_sum();
        expect(')');
        return Expr::unary(f.op, arg);
      }
    }
    fail_at("unknown identifier '" + std::string(ident) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const Expr& e, std::string& out) {
  std::visit(overloaded{
                 [&](const ConstantNode& c) {
                   if (c.value.imag() != 0.0) {
                     out += "cplx(" + format_double(c.value.real()) + "," + format_double(c.value.imag()) + ")";
                   } else if (std::signbit(c.value.real())) {
                     out += "(" + format_double(c.value.real()) + ")";
                   } else {
                     out += format_double(c.value.real());
                   }
                 },
                 [&](const VariableNode&) { out += "x"; },
                 [&](const UnaryNode& u) {
                   if (u.op == UnaryOp::Neg) {
                     out += "(-(";
                     print(u.arg, out);
                     out += "))";
                   } else {
                     out += function_name(u.op);
                     out += "(";
                     print(u.arg, out);
                     out += ")";
                   }
                 },
                 [&](const BinaryNode& b) {
                   out += "(";
                   print(b.lhs, out);
                   out += " ";
                   out += binary_symbol(b.op);
                   out += " ";
                   print(b.rhs, out);
                   out += ")";
                 },
                 [&](const PowerNode& p) {
                   out += "(";
                   print(p.base, out);
                   out += "^";
                   if (p.exponent < 0) {
                     out += "(" + std::to_string(p.exponent) + ")";
                   } else {
                     out += std::to_string(p.exponent);
                   }
                   out += ")";
                 },
             },
             e.node().data);
}

Complex eval_node(const Expr& e, double x) {
  auto domain = [&](const char* reason) -> DomainError { return DomainError(to_string(e), x, reason); };

  Complex v = std::visit(
      overloaded{
          [&](const ConstantNode& c) { return c.value; },
          [&](const VariableNode&) { return Complex(x, 0.0); },
          [&](const UnaryNode& u) -> Complex {
            Complex a = eval_node(u.arg, x);
            switch (u.op) {
              case UnaryOp::Neg: return -a;
              case UnaryOp::Sin: return std::sin(a);
              case UnaryOp::Cos: return std::cos(a);
              case UnaryOp::Exp: return std::exp(a);
              case UnaryOp::Abs: return Complex(std::abs(a), 0.0);
              case UnaryOp::Log:
                if (a.imag() == 0.0 && a.real() <= 0.0) throw domain("log of nonpositive real");
                return std::log(a);
              case UnaryOp::Sqrt:
                if (a.imag() == 0.0) {
                  if (a.real() < 0.0) throw domain("sqrt of negative real");
                  return Complex(std::sqrt(a.real()), 0.0);
                }
                return std::sqrt(a);
            }
            return {};
          },
          [&](const BinaryNode& b) -> Complex {
            Complex l = eval_node(b.lhs, x);
            Complex r = eval_node(b.rhs, x);
            switch (b.op) {
              case BinaryOp::Add: return l + r;
              case BinaryOp::Sub: return l - r;
              case BinaryOp::Mul:
                if (l.imag() == 0.0 && r.imag() == 0.0) return Complex(l.real() * r.real(), 0.0);
                return l * r;
              case BinaryOp::Div:
                if (r == Complex(0.0, 0.0)) throw domain("division by zero");
                if (l.imag() == 0.0 && r.imag() == 0.0) return Complex(l.real() / r.real(), 0.0);
                return l / r;
            }
            return {};
          },
          [&](const PowerNode& p) -> Complex {
            Complex base = eval_node(p.base, x);
            int n = p.exponent;
            if (n < 0 && base == Complex(0.0, 0.0)) throw domain("negative power of zero");
            // Repeated squaring keeps real bases real and matches x*x exactly for n = 2.
            Complex result(1.0, 0.0);
            Complex factor = base;
            unsigned k = static_cast<unsigned>(n < 0 ? -n : n);
            bool first = true;
            while (k > 0) {
              if (k & 1u) {
                result = first ? factor : result * factor;
                first = false;
              }
              k >>= 1u;
              if (k > 0) factor = factor * factor;
            }
            if (n < 0) result = Complex(1.0, 0.0) / result;
            return result;
          },
      },
      e.node().data);

  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw domain("non-finite value");
  return v;
}

Expr diff_node(const Expr& e) {
  return std::visit(
      overloaded{
          [](const ConstantNode&) { return Expr::constant(0.0); },
          [](const VariableNode&) { return Expr::constant(1.0); },
          [&](const UnaryNode& u) -> Expr {
            if (u.op == UnaryOp::Abs) throw DifferentiationError("cannot differentiate abs(" + to_string(u.arg) + ")");
            Expr du = diff_node(u.arg);
            switch (u.op) {
              case UnaryOp::Neg: return -du;
              case UnaryOp::Sin: return apply(UnaryOp::Cos, u.arg) * du;
              case UnaryOp::Cos: return -(apply(UnaryOp::Sin, u.arg) * du);
              case UnaryOp::Exp: return e * du;
              case UnaryOp::Log: return du / u.arg;
              case UnaryOp::Sqrt: return du / (Expr::constant(2.0) * e);
              case UnaryOp::Abs: break;
            }
            return {};
          },
          [&](const BinaryNode& b) -> Expr {
            Expr dl = diff_node(b.lhs);
            Expr dr = diff_node(b.rhs);
            switch (b.op) {
              case BinaryOp::Add: return dl + dr;
              case BinaryOp::Sub: return dl - dr;
              case BinaryOp::Mul: return dl * b.rhs + b.lhs * dr;
              case BinaryOp::Div: return (dl * b.rhs - b.lhs * dr) / pow(b.rhs, 2);
            }
            return {};
          },
          [&](const PowerNode& p) -> Expr {
            Expr db = diff_node(p.base);
            return Expr::constant(static_cast<double>(p.exponent)) * pow(p.base, p.exponent - 1) * db;
          },
      },
      e.node().data);
}

Complex constant_value(const Expr& e) { return std::get<ConstantNode>(e.node().data).value; }

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

DomainError::DomainError(const std::string& subexpression, double x, const std::string& reason)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "domain error: " << reason << " in " << subexpression << " at x = " << x;
        return os.str();
      }()),
      subexpression_(subexpression),
      x_(x) {}

Expr::Expr() : node_(std::make_shared<const ExprNode>(ExprNode{ConstantNode{0.0}})) {}

Expr Expr::constant(Complex value) { return Expr(std::make_shared<const ExprNode>(ExprNode{ConstantNode{value}})); }

Expr Expr::variable() { return Expr(std::make_shared<const ExprNode>(ExprNode{VariableNode{}})); }

Expr Expr::unary(UnaryOp op, Expr arg) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{UnaryNode{op, std::move(arg)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

Expr Expr::power(Expr base, int exponent) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{PowerNode{std::move(base), exponent}}));
}

bool Expr::is_constant() const { return std::holds_alternative<ConstantNode>(node_->data); }

bool Expr::is_constant(double value) const {
  return is_constant() && constant_value(*this) == Complex(value, 0.0);
}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return true;
  if (a.node().data.index() != b.node().data.index()) return false;
  return std::visit(
      overloaded{
          [&](const ConstantNode& c) { return c.value == std::get<ConstantNode>(b.node().data).value; },
          [&](const VariableNode&) { return true; },
          [&](const UnaryNode& u) {
            const auto& v = std::get<UnaryNode>(b.node().data);
            return u.op == v.op && structurally_equal(u.arg, v.arg);
          },
          [&](const BinaryNode& l) {
            const auto& r = std::get<BinaryNode>(b.node().data);
            return l.op == r.op && structurally_equal(l.lhs, r.lhs) && structurally_equal(l.rhs, r.rhs);
          },
          [&](const PowerNode& p) {
            const auto& q = std::get<PowerNode>(b.node().data);
            return p.exponent == q.exponent && structurally_equal(p.base, q.base);
          },
      },
      a.node().data);
}

Complex evaluate(const Expr& e, double x) { return eval_node(e, x); }

Expr differentiate(const Expr& e) { return diff_node(e); }

std::vector<Expr> derivatives(const Expr& e, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  std::vector<Expr> out{e};
  out.reserve(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i < order; ++i) out.push_back(differentiate(out.back()));
  return out;
}

bool contains_abs(const Expr& e) {
  return std::visit(overloaded{
                        [](const ConstantNode&) { return false; },
                        [](const VariableNode&) { return false; },
                        [](const UnaryNode& u) { return u.op == UnaryOp::Abs || contains_abs(u.arg); },
                        [](const BinaryNode& b) { return contains_abs(b.lhs) || contains_abs(b.rhs); },
                        [](const PowerNode& p) { return contains_abs(p.base); },
                    },
                    e.node().data);
}

std::size_t node_count(const Expr& e) {
  return std::visit(overloaded{
                        [](const ConstantNode&) -> std::size_t { return 1; },
                        [](const VariableNode&) -> std::size_t { return 1; },
                        [](const UnaryNode& u) { return 1 + node_count(u.arg); },
                        [](const BinaryNode& b) { return 1 + node_count(b.lhs) + node_count(b.rhs); },
                        [](const PowerNode& p) { return 1 + node_count(p.base); },
                    },
                    e.node().data);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(constant_value(a) + constant_value(b));
  return Expr::binary(BinaryOp::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  if (a.is_constant() && b.is_constant()) return Expr::constant(constant_value(a) - constant_value(b));
  return Expr::binary(BinaryOp::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(constant_value(a) * constant_value(b));
  return Expr::binary(BinaryOp::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant() && b.is_constant() && !b.is_constant(0.0))
    return Expr::constant(constant_value(a) / constant_value(b));
  return Expr::binary(BinaryOp::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-constant_value(a));
  if (const auto* u = std::get_if<UnaryNode>(&a.node().data); u && u->op == UnaryOp::Neg) return u->arg;
  return Expr::unary(UnaryOp::Neg, a);
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr::constant(1.0);
  if (exponent == 1) return base;
  if (base.is_constant() && (exponent > 0 || !base.is_constant(0.0)))
    return Expr::constant(evaluate(Expr::power(base, exponent), 0.0));
  return Expr::power(base, exponent);
}

Expr apply(UnaryOp op, const Expr& arg) {
  if (op == UnaryOp::Neg) return -arg;
  return Expr::unary(op, arg);
}

Expr combine_complex(const Expr& re, const Expr& im) { return re + Expr::constant({0.0, 1.0}) * im; }

}  // namespace tangential
