#include "bsk/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

#include "bsk/errors.hpp"

namespace bsk::expr {
namespace {

NodePtr make(Op op, std::vector<NodePtr> args = {}) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->args = std::move(args);
  return node;
}

NodePtr constant(double value) {
  auto node = std::make_shared<Node>();
  node->op = Op::constant;
  node->value = value;
  return node;
}

NodePtr variable(int axis) {
  auto node = std::make_shared<Node>();
  node->op = Op::variable;
  node->variable = axis;
  return node;
}

struct FunctionName {
  std::string_view name;
  Op op;
  int min_args;
  int max_args;
};

constexpr FunctionName kFunctions[] = {
    {"abs", Op::abs, 1, 1},   {"min", Op::min, 2, 2}, {"max", Op::max, 2, 2},   {"step", Op::step, 1, 2},
    {"exp", Op::exp, 1, 1},   {"log", Op::log, 1, 1}, {"sqrt", Op::sqrt, 1, 1}, {"sin", Op::sin, 1, 1},
    {"cos", Op::cos, 1, 1},
};

class Parser {
 public:
  Parser(std::string_view text, int d) : text_(text), d_(d) {}

  NodePtr parse_all() {
    NodePtr node = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expression() {
    NodePtr left = term();
    while (true) {
      if (accept('+'))
        left = make(Op::add, {left, term()});
      else if (accept('-'))
        left = make(Op::subtract, {left, term()});
      else
        return left;
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    while (true) {
      if (accept('*'))
        left = make(Op::multiply, {left, unary()});
      else if (accept('/'))
        left = make(Op::divide, {left, unary()});
      else
        return left;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::negate, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::power, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (accept('(')) {
      NodePtr inner = expression();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || end != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return constant(value);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") {
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (digits == pos_) {
        pos_ = start;
        fail("variable needs an index, e.g. x1");
      }
      int index = 0;
      std::from_chars(text_.data() + digits, text_.data() + pos_, index);
      if (index < 1 || index > d_)
        throw ArityError("variable x" + std::to_string(index) + " is not defined for d=" + std::to_string(d_));
      return variable(index - 1);
    }
    if (name == "pi") return constant(std::numbers::pi);
    for (const auto& fn : kFunctions) {
      if (fn.name != name) continue;
      expect('(');
      std::vector<NodePtr> args{expression()};
      while (accept(',')) args.push_back(expression());
      expect(')');
      if (static_cast<int>(args.size()) < fn.min_args || static_cast<int>(args.size()) > fn.max_args) {
        pos_ = start;
        fail("wrong number of arguments to " + std::string(name));
      }
      return make(fn.op, std::move(args));
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  int d_;
  std::size_t pos_ = 0;
};

int precedence(const Node& node) {
  switch (node.op) {
    case Op::add:
    case Op::subtract: return 1;
    case Op::multiply:
    case Op::divide: return 2;
    case Op::negate: return 3;
    case Op::power: return 4;
    case Op::constant: return node.value < 0.0 || std::signbit(node.value) ? 0 : 5;
    default: return 5;
  }
}

std::string_view function_name(Op op) {
  for (const auto& fn : kFunctions)
    if (fn.op == op) return fn.name;
  return "?";
}

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string wrap(const NodePtr& node, bool parenthesize) {
  const std::string s = to_string(node);
  return parenthesize ? "(" + s + ")" : s;
}

// Algebraic builders that fold the trivial cases produced by differentiation.
bool is_constant(const NodePtr& n, double v) { return n->op == Op::constant && n->value == v; }
bool is_constant(const NodePtr& n) { return n->op == Op::constant; }

NodePtr add(NodePtr a, NodePtr b) {
  if (is_constant(a, 0.0)) return b;
  if (is_constant(b, 0.0)) return a;
  if (is_constant(a) && is_constant(b)) return constant(a->value + b->value);
  return make(Op::add, {a, b});
}

NodePtr subtract(NodePtr a, NodePtr b) {
  if (is_constant(b, 0.0)) return a;
  if (is_constant(a) && is_constant(b)) return constant(a->value - b->value);
  if (is_constant(a, 0.0)) return make(Op::negate, {b});
  return make(Op::subtract, {a, b});
}

NodePtr multiply(NodePtr a, NodePtr b) {
  if (is_constant(a, 0.0) || is_constant(b, 0.0)) return constant(0.0);
  if (is_constant(a, 1.0)) return b;
  if (is_constant(b, 1.0)) return a;
  if (is_constant(a) && is_constant(b)) return constant(a->value * b->value);
  return make(Op::multiply, {a, b});
}

NodePtr divide(NodePtr a, NodePtr b) {
  if (is_constant(a, 0.0)) return constant(0.0);
  if (is_constant(b, 1.0)) return a;
  return make(Op::divide, {a, b});
}

NodePtr negate(NodePtr a) {
  if (is_constant(a)) return constant(-a->value);
  return make(Op::negate, {a});
}

struct Affine {
  std::vector<double> coefficients;
  double offset = 0.0;
};

std::optional<Affine> affine(const Node& node, int d) {
  auto both = [&](auto combine) -> std::optional<Affine> {
    auto a = affine(*node.args[0], d);
    auto b = affine(*node.args[1], d);
    if (!a || !b) return std::nullopt;
    return combine(*a, *b);
  };
  auto is_const = [](const Affine& a) {
    return std::all_of(a.coefficients.begin(), a.coefficients.end(), [](double c) { return c == 0.0; });
  };
  auto scaled = [](Affine a, double s) {
    for (double& c : a.coefficients) c *= s;
    a.offset *= s;
    return a;
  };
  switch (node.op) {
    case Op::constant: return Affine{std::vector<double>(d, 0.0), node.value};
    case Op::variable: {
      Affine a{std::vector<double>(d, 0.0), 0.0};
      a.coefficients[node.variable] = 1.0;
      return a;
    }
    case Op::negate: {
      auto a = affine(*node.args[0], d);
      if (!a) return std::nullopt;
      return scaled(*a, -1.0);
    }
    case Op::add:
    case Op::subtract:
      return both([&](Affine a, const Affine& b) -> std::optional<Affine> {
        const double sign = node.op == Op::add ? 1.0 : -1.0;
        for (int i = 0; i < d; ++i) a.coefficients[i] += sign * b.coefficients[i];
        a.offset += sign * b.offset;
        return a;
      });
    case Op::multiply:
      return both([&](const Affine& a, const Affine& b) -> std::optional<Affine> {
        if (is_const(a)) return scaled(b, a.offset);
        if (is_const(b)) return scaled(a, b.offset);
        return std::nullopt;
      });
    case Op::divide:
      return both([&](const Affine& a, const Affine& b) -> std::optional<Affine> {
        if (is_const(b) && b.offset != 0.0) return scaled(a, 1.0 / b.offset);
        return std::nullopt;
      });
    default: return std::nullopt;
  }
}

// Root of an affine form that depends on exactly one variable.
std::optional<Singularity> single_variable_root(const Affine& a, SingularityKind kind) {
  int axis = -1;
  for (int i = 0; i < static_cast<int>(a.coefficients.size()); ++i) {
    if (a.coefficients[i] == 0.0) continue;
    if (axis >= 0) return std::nullopt;
    axis = i;
  }
  if (axis < 0) return std::nullopt;
  const double root = -a.offset / a.coefficients[axis];
  if (!(root > 0.0 && root < 1.0)) return std::nullopt;
  return Singularity{axis, root, kind};
}

void collect_singularities(const Node& node, int d, std::vector<Singularity>& out) {
  for (const auto& arg : node.args) collect_singularities(*arg, d, out);
  std::optional<Affine> form;
  SingularityKind kind = SingularityKind::kink;
  switch (node.op) {
    case Op::abs: form = affine(*node.args[0], d); break;
    case Op::min:
    case Op::max: {
      auto a = affine(*node.args[0], d);
      auto b = affine(*node.args[1], d);
      if (a && b) {
        for (int i = 0; i < d; ++i) a->coefficients[i] -= b->coefficients[i];
        a->offset -= b->offset;
        form = a;
      }
      break;
    }
    case Op::step: {
      kind = SingularityKind::jump;
      form = affine(*node.args[0], d);
      if (form && node.args.size() == 2) {
        auto threshold = affine(*node.args[1], d);
        if (!threshold) {
          form.reset();
        } else {
          for (int i = 0; i < d; ++i) form->coefficients[i] -= threshold->coefficients[i];
          form->offset -= threshold->offset;
        }
      }
      break;
    }
    default: return;
  }
  if (!form) return;
  if (auto s = single_variable_root(*form, kind))
    if (std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
}

bool is_nonsmooth(Op op) { return op == Op::abs || op == Op::min || op == Op::max || op == Op::step; }

void collect_nonsmooth_axes(const Node& node, int d, std::uint32_t& mask) {
  if (is_nonsmooth(node.op))
    for (int i = 0; i < d; ++i)
      if (depends_on(node, i)) mask |= 1u << i;
  for (const auto& arg : node.args) collect_nonsmooth_axes(*arg, d, mask);
}

}  // namespace

NodePtr parse(std::string_view text, int d) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  return Parser(text, d).parse_all();
}

std::string to_string(const NodePtr& node) {
  const Node& n = *node;
  switch (n.op) {
    case Op::constant: {
      const std::string s = format_number(n.value);
      return precedence(n) == 0 ? "(" + s + ")" : s;
    }
    case Op::variable: return "x" + std::to_string(n.variable + 1);
    case Op::negate: return "-" + wrap(n.args[0], precedence(*n.args[0]) < 3);
    case Op::add:
    case Op::subtract:
    case Op::multiply:
    case Op::divide: {
      const int p = precedence(n);
      const char symbol = n.op == Op::add ? '+' : n.op == Op::subtract ? '-' : n.op == Op::multiply ? '*' : '/';
      const std::string left = wrap(n.args[0], precedence(*n.args[0]) < p);
      const std::string right = wrap(n.args[1], precedence(*n.args[1]) <= p);
      return p == 1 ? left + " " + symbol + " " + right : left + symbol + right;
    }
    case Op::power:
      return wrap(n.args[0], precedence(*n.args[0]) < 5) + "^" + wrap(n.args[1], precedence(*n.args[1]) < 3);
    default: {
      std::string s(function_name(n.op));
      s += "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) s += ", ";
        s += to_string(n.args[i]);
      }
      return s + ")";
    }
  }
}

bool equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->op != b->op || a->args.size() != b->args.size()) return false;
  if (a->op == Op::constant && !(a->value == b->value)) return false;
  if (a->op == Op::variable && a->variable != b->variable) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

double evaluate(const Node& node, std::span<const double> x) {
  auto arg = [&](std::size_t i) { return evaluate(*node.args[i], x); };
  switch (node.op) {
    case Op::constant: return node.value;
    case Op::variable: return x[node.variable];
    case Op::negate: return -arg(0);
    case Op::add: return arg(0) + arg(1);
    case Op::subtract: return arg(0) - arg(1);
    case Op::multiply: return arg(0) * arg(1);
    case Op::divide: return arg(0) / arg(1);
    case Op::power: {
      const double exponent = arg(1);
      const double base = arg(0);
      if (exponent == 2.0) return base * base;
      return std::pow(base, exponent);
    }
    case Op::abs: return std::abs(arg(0));
    case Op::min: return std::min(arg(0), arg(1));
    case Op::max: return std::max(arg(0), arg(1));
    case Op::step: return arg(0) >= (node.args.size() == 2 ? arg(1) : 0.0) ? 1.0 : 0.0;
    case Op::exp: return std::exp(arg(0));
    case Op::log: return std::log(arg(0));
    case Op::sqrt: return std::sqrt(arg(0));
    case Op::sin: return std::sin(arg(0));
    case Op::cos: return std::cos(arg(0));
  }
  return 0.0;
}

bool depends_on(const Node& node, int axis) {
  if (node.op == Op::variable) return node.variable == axis;
  return std::any_of(node.args.begin(), node.args.end(), [axis](const NodePtr& a) { return depends_on(*a, axis); });
}

NodePtr differentiate(const NodePtr& node, int axis) {
  const Node& n = *node;
  if (!depends_on(n, axis)) return constant(0.0);
  auto d = [axis](const NodePtr& a) { return differentiate(a, axis); };
  switch (n.op) {
    case Op::constant: return constant(0.0);
    case Op::variable: return constant(1.0);
    case Op::negate: return negate(d(n.args[0]));
    case Op::add: return add(d(n.args[0]), d(n.args[1]));
    case Op::subtract: return subtract(d(n.args[0]), d(n.args[1]));
    case Op::multiply:
      return add(multiply(d(n.args[0]), n.args[1]), multiply(n.args[0], d(n.args[1])));
    case Op::divide: {
      const NodePtr& u = n.args[0];
      const NodePtr& v = n.args[1];
      return divide(subtract(multiply(d(u), v), multiply(u, d(v))), make(Op::power, {v, constant(2.0)}));
    }
    case Op::power: {
      const NodePtr& u = n.args[0];
      const NodePtr& v = n.args[1];
      if (!depends_on(*v, axis)) {
        const NodePtr reduced = is_constant(v) ? constant(v->value - 1.0) : subtract(v, constant(1.0));
        const NodePtr lowered = is_constant(reduced, 1.0) ? u : make(Op::power, {u, reduced});
        return multiply(multiply(v, lowered), d(u));
      }
      // u^v (v' log u + v u' / u)
      const NodePtr inner = add(multiply(d(v), make(Op::log, {u})), divide(multiply(v, d(u)), u));
      return multiply(node, inner);
    }
    case Op::abs:
    case Op::min:
    case Op::max:
    case Op::step:
      throw DerivativeUnavailable("'" + to_string(node) + "' is not differentiable in x" + std::to_string(axis + 1));
    case Op::exp: return multiply(node, d(n.args[0]));
    case Op::log: return divide(d(n.args[0]), n.args[0]);
    case Op::sqrt: return divide(d(n.args[0]), multiply(constant(2.0), node));
    case Op::sin: return multiply(make(Op::cos, {n.args[0]}), d(n.args[0]));
    case Op::cos: return negate(multiply(make(Op::sin, {n.args[0]}), d(n.args[0])));
  }
  return constant(0.0);
}

std::vector<Singularity> detect_singularities(const NodePtr& node, int d) {
  std::vector<Singularity> result;
  collect_singularities(*node, d, result);
  return result;
}

ScalarField to_field(const NodePtr& node, int d, std::string label) {
  if (label.empty()) label = to_string(node);
  ScalarField field(d, [node](std::span<const double> x) { return evaluate(*node, x); }, std::move(label));
  for (const auto& s : detect_singularities(node, d)) field.add_singularity(s);
  std::uint32_t nonsmooth = 0;
  collect_nonsmooth_axes(*node, d, nonsmooth);
  for (int i = 0; i < d; ++i)
    if ((nonsmooth >> i) & 1u) field.mark_nonsmooth(i);

  const auto alphas = d <= 6 ? MultiIndexAlpha::all_nonzero(d) : std::vector<MultiIndexAlpha>{};
  for (const auto& alpha : alphas) {
    try {
      NodePtr partial = node;
      for (int i = 0; i < d; ++i)
        if (alpha.touches(i)) partial = differentiate(partial, i);
      field.set_partial(alpha, [partial](std::span<const double> x) { return evaluate(*partial, x); });
    } catch (const DerivativeUnavailable&) {
    }
  }
  if (d > 6) {
    for (int i = 0; i < d; ++i) {
      try {
        NodePtr partial = differentiate(node, i);
        field.set_partial(MultiIndexAlpha::unit(d, i), [partial](std::span<const double> x) { return evaluate(*partial, x); });
      } catch (const DerivativeUnavailable&) {
      }
    }
  }
  return field;
}

ScalarField parse_function(std::string_view text, int d) { return to_field(parse(text, d), d, std::string(text)); }

}  // namespace bsk::expr
