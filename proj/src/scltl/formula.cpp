#include "tlfleet/scltl/formula.hpp"

#include <stdexcept>

namespace tlfleet::scltl {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> children;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::top() { return Formula(std::make_shared<const Node>(Node{Op::True, {}, {}})); }

Formula Formula::bottom() { return Formula(std::make_shared<const Node>(Node{Op::False, {}, {}})); }

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(name), {}}));
}

Formula Formula::negated_atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::NegAtom, std::move(name), {}}));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::And, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::Or, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::next(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Op::Next, {}, {std::move(child)}}));
}

Formula Formula::until(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::Until, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::eventually(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Op::Eventually, {}, {std::move(child)}}));
}

Op Formula::op() const { return node_->op; }

const std::string &Formula::name() const { return node_->name; }

std::size_t Formula::arity() const { return node_->children.size(); }

const Formula &Formula::lhs() const {
  if (node_->children.empty())
    throw std::logic_error("formula node has no operands");
  return node_->children.front();
}

const Formula &Formula::rhs() const {
  if (node_->children.size() < 2)
    throw std::logic_error("formula node has no right operand");
  return node_->children[1];
}

PropositionSet Formula::propositions() const {
  PropositionSet out;
  std::vector<const Formula *> stack{this};
  while (!stack.empty()) {
    const Formula *f = stack.back();
    stack.pop_back();
    if (f->op() == Op::Atom || f->op() == Op::NegAtom)
      out.insert(f->name());
    for (const auto &c : f->node_->children)
      stack.push_back(&c);
  }
  return out;
}

std::size_t Formula::operator_count() const {
  std::size_t n = 0;
  switch (op()) {
  case Op::True:
  case Op::False:
  case Op::Atom:
    return 0;
  case Op::NegAtom:
    return 1;
  default:
    n = 1;
  }
  for (const auto &c : node_->children)
    n += c.operator_count();
  return n;
}

bool operator==(const Formula &a, const Formula &b) {
  if (a.node_ == b.node_)
    return true;
  if (a.op() != b.op() || a.name() != b.name() || a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.node_->children[i] == b.node_->children[i]))
      return false;
  return true;
}

std::string to_string(const Formula &f) {
  switch (f.op()) {
  case Op::True:
    return "true";
  case Op::False:
    return "false";
  case Op::Atom:
    return f.name();
  case Op::NegAtom:
    return "!" + f.name();
  case Op::And:
    return "(" + to_string(f.lhs()) + " & " + to_string(f.rhs()) + ")";
  case Op::Or:
    return "(" + to_string(f.lhs()) + " | " + to_string(f.rhs()) + ")";
  case Op::Next:
    return "X " + to_string(f.lhs());
  case Op::Until:
    return "(" + to_string(f.lhs()) + " U " + to_string(f.rhs()) + ")";
  case Op::Eventually:
    return "F " + to_string(f.lhs());
  }
  return {};
}

} // namespace tlfleet::scltl
