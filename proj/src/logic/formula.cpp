#include <algorithm>
#include <array>
#include <bitset>

#include "formlab/error.hpp"
#include "formlab/logic.hpp"

namespace formlab::logic {

namespace {

constexpr std::array<std::string_view, 7> kConnectiveNames = {"NOT",  "AND", "OR",   "IMPL",
                                                              "BIIM", "XOR", "CONST"};

}  // namespace

std::string_view connective_name(Connective c) { return kConnectiveNames[std::size_t(c)]; }

std::optional<Connective> connective_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kConnectiveNames.size(); ++i)
    if (kConnectiveNames[i] == name) return Connective(i);
  return std::nullopt;
}

std::vector<Connective> ConnectiveSet::members() const {
  std::vector<Connective> out;
  for (Connective c : kAllConnectives)
    if (contains(c)) out.push_back(c);
  return out;
}

std::string to_string(ConnectiveSet set) {
  std::string out = "{";
  for (Connective c : set.members()) {
    if (out.size() > 1) out += ", ";
    out += connective_name(c);
  }
  return out + "}";
}

Formula Formula::var(char name) {
  if (name < 'A' || name > 'Z')
    throw DomainError(std::string("variable name must be a letter A-Z, got '") + name + "'");
  return Formula(std::make_shared<const Node>(Node{Kind::Var, name, nullptr, nullptr, 1}));
}

Formula Formula::constant(bool value) {
  // Two shared leaves are enough for every constant in every formula.
  static const auto t = std::make_shared<const Node>(Node{Kind::True, 0, nullptr, nullptr, 1});
  static const auto f = std::make_shared<const Node>(Node{Kind::False, 0, nullptr, nullptr, 1});
  return Formula(value ? t : f);
}

Formula Formula::negation(Formula operand) {
  std::size_t size = operand.size() + 1;
  return Formula(std::make_shared<const Node>(
      Node{Kind::Not, 0, std::move(operand.node_), nullptr, size}));
}

Formula Formula::binary(Kind kind, Formula lhs, Formula rhs) {
  if (kind < Kind::And) throw DomainError("Formula::binary needs a binary connective");
  std::size_t size = lhs.size() + rhs.size() + 1;
  return Formula(std::make_shared<const Node>(
      Node{kind, 0, std::move(lhs.node_), std::move(rhs.node_), size}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Formula::Kind::Var:
      return a.name() == b.name();
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Not:
      return a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

std::string_view infix(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::And: return " & ";
    case Formula::Kind::Or: return " | ";
    case Formula::Kind::Impl: return " => ";
    case Formula::Kind::Biim: return " <=> ";
    case Formula::Kind::Xor: return " ^ ";
    default: return "";
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Var: out += f.name(); return;
    case Formula::Kind::True: out += 'T'; return;
    case Formula::Kind::False: out += 'F'; return;
    case Formula::Kind::Not:
      out += '~';
      render_into(f.lhs(), out);
      return;
    default:
      out += '(';
      render_into(f.lhs(), out);
      out += infix(f.kind());
      render_into(f.rhs(), out);
      out += ')';
  }
}

void collect_vars(const Formula& f, std::bitset<26>& seen) {
  switch (f.kind()) {
    case Formula::Kind::Var: seen.set(std::size_t(f.name() - 'A')); return;
    case Formula::Kind::True:
    case Formula::Kind::False: return;
    case Formula::Kind::Not: collect_vars(f.lhs(), seen); return;
    default:
      collect_vars(f.lhs(), seen);
      collect_vars(f.rhs(), seen);
  }
}

Connective tag(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Not: return Connective::Not;
    case Formula::Kind::And: return Connective::And;
    case Formula::Kind::Or: return Connective::Or;
    case Formula::Kind::Impl: return Connective::Impl;
    case Formula::Kind::Biim: return Connective::Biim;
    case Formula::Kind::Xor: return Connective::Xor;
    default: return Connective::Const;
  }
}

void collect_connectives(const Formula& f, ConnectiveSet& out) {
  if (f.kind() == Formula::Kind::Var) return;
  out.insert(tag(f.kind()));
  if (f.kind() == Formula::Kind::Not) {
    collect_connectives(f.lhs(), out);
  } else if (f.is_binary()) {
    collect_connectives(f.lhs(), out);
    collect_connectives(f.rhs(), out);
  }
}

// Evaluates with a per-letter lookup table; bound[] marks letters present.
bool eval_table(const Formula& f, const std::array<bool, 26>& value,
                const std::array<bool, 26>& bound) {
  switch (f.kind()) {
    case Formula::Kind::Var: {
      std::size_t i = std::size_t(f.name() - 'A');
      if (!bound[i]) throw UnboundVariable(std::string(1, f.name()));
      return value[i];
    }
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Not: return !eval_table(f.lhs(), value, bound);
    default: break;
  }
  bool a = eval_table(f.lhs(), value, bound);
  bool b = eval_table(f.rhs(), value, bound);
  switch (f.kind()) {
    case Formula::Kind::And: return a && b;
    case Formula::Kind::Or: return a || b;
    case Formula::Kind::Impl: return !a || b;
    case Formula::Kind::Biim: return a == b;
    default: return a != b;
  }
}

}  // namespace

std::string render_formula(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::string variables_of(const Formula& f) {
  std::bitset<26> seen;
  collect_vars(f, seen);
  std::string out;
  for (std::size_t i = 0; i < 26; ++i)
    if (seen[i]) out += char('A' + i);
  return out;
}

ConnectiveSet connectives_of(const Formula& f) {
  ConnectiveSet out;
  collect_connectives(f, out);
  return out;
}

bool evaluate(const Formula& f, const Assignment& a) {
  std::array<bool, 26> value{};
  std::array<bool, 26> bound{};
  for (const auto& [name, v] : a) {
    if (name.size() == 1 && name[0] >= 'A' && name[0] <= 'Z') {
      value[std::size_t(name[0] - 'A')] = v;
      bound[std::size_t(name[0] - 'A')] = true;
    }
  }
  return eval_table(f, value, bound);
}

std::string truth_signature(const Formula& f, std::string_view var_order) {
  if (var_order.size() > kMaxSignatureVariables)
    throw ResourceLimit("truth_signature supports at most " +
                        std::to_string(kMaxSignatureVariables) + " variables, got " +
                        std::to_string(var_order.size()));
  std::array<bool, 26> bound{};
  for (char c : var_order) {
    if (c < 'A' || c > 'Z') throw DomainError(std::string("not a variable name: '") + c + "'");
    bound[std::size_t(c - 'A')] = true;
  }
  const std::size_t rows = std::size_t(1) << var_order.size();
  std::string out(rows, '0');
  std::array<bool, 26> value{};
  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t k = 0; k < var_order.size(); ++k)
      value[std::size_t(var_order[k] - 'A')] = ((row >> (var_order.size() - 1 - k)) & 1u) != 0;
    if (eval_table(f, value, bound)) out[row] = '1';
  }
  return out;
}

}  // namespace formlab::logic
