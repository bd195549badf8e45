#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bsk/field.hpp"

// Arithmetic expressions over x1..xd.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?          right-associative, binds tighter than unary minus
//   primary := number | 'x' digits | 'pi' | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Functions: abs, min, max, step(u) = [u >= 0], step(u, c) = [u >= c],
// exp, log, sqrt, sin, cos.
namespace bsk::expr {

enum class Op {
  constant,
  variable,
  negate,
  add,
  subtract,
  multiply,
  divide,
  power,
  abs,
  min,
  max,
  step,
  exp,
  log,
  sqrt,
  sin,
  cos,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::constant;
  double value = 0.0;  // constant
  int variable = 0;    // 0-based axis
  std::vector<NodePtr> args;
};

/// Throws ParseError (with offset) on bad syntax, ArityError for x_i, i > d.
NodePtr parse(std::string_view text, int d);

/// Prints with the minimal parentheses that re-parse to the same tree.
std::string to_string(const NodePtr& node);

bool equal(const NodePtr& a, const NodePtr& b);

double evaluate(const Node& node, std::span<const double> x);

bool depends_on(const Node& node, int axis);

/// Symbolic d/dx_axis. Throws DerivativeUnavailable when a kinked or
/// discontinuous operation (abs, min, max, step) depends on x_axis.
NodePtr differentiate(const NodePtr& node, int axis);

/// Kinks and jumps whose argument is affine in a single variable, e.g.
/// abs(x1 - 0.5) gives a kink at x1 = 0.5. Only locations inside [0,1].
std::vector<Singularity> detect_singularities(const NodePtr& node, int d);

/// ScalarField for the expression with every exact mixed partial the
/// symbolic differentiator can produce.
ScalarField to_field(const NodePtr& node, int d, std::string label = {});

/// parse + to_field.
ScalarField parse_function(std::string_view text, int d);

}  // namespace bsk::expr
