#pragma once

// Propositional logic: formulas, parsing, semantic checks (sequent search,
// truth tables, SAT, resolution), 3-CNF encoding and the {=>, ^} translation.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace formlab::logic {

enum class Connective : std::uint8_t { Not, And, Or, Impl, Biim, Xor, Const };

inline constexpr Connective kAllConnectives[] = {
    Connective::Not,  Connective::And, Connective::Or,   Connective::Impl,
    Connective::Biim, Connective::Xor, Connective::Const};

std::string_view connective_name(Connective c);
std::optional<Connective> connective_from_name(std::string_view name);

/// Subset of the seven connective tags.
class ConnectiveSet {
 public:
  ConnectiveSet() = default;
  ConnectiveSet(std::initializer_list<Connective> cs) {
    for (Connective c : cs) insert(c);
  }

  void insert(Connective c) { bits_ |= bit(c); }
  bool contains(Connective c) const { return (bits_ & bit(c)) != 0; }
  bool empty() const { return bits_ == 0; }
  bool subset_of(ConnectiveSet other) const { return (bits_ & ~other.bits_) == 0; }
  ConnectiveSet minus(ConnectiveSet other) const {
    ConnectiveSet r;
    r.bits_ = bits_ & ~other.bits_;
    return r;
  }
  std::vector<Connective> members() const;

  friend bool operator==(ConnectiveSet, ConnectiveSet) = default;

 private:
  static std::uint8_t bit(Connective c) { return std::uint8_t(1u << unsigned(c)); }
  std::uint8_t bits_ = 0;
};

/// "{IMPL, XOR}"
std::string to_string(ConnectiveSet set);

/// Immutable propositional formula. Subtrees are shared, never mutated.
class Formula {
 public:
  enum class Kind : std::uint8_t { Var, True, False, Not, And, Or, Impl, Biim, Xor };

  /// Throws DomainError unless name is in A-Z.
  static Formula var(char name);
  static Formula constant(bool value);
  static Formula negation(Formula operand);
  /// kind must be one of And, Or, Impl, Biim, Xor.
  static Formula binary(Kind kind, Formula lhs, Formula rhs);

  Kind kind() const { return node_->kind; }
  bool is_binary() const { return kind() >= Kind::And; }
  /// Variable name; only meaningful for Var.
  char name() const { return node_->name; }
  /// Operand of Not, left operand of a binary node.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  /// Node count.
  std::size_t size() const { return node_->size; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    char name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t size;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline Formula make_var(char name) { return Formula::var(name); }
inline Formula make_true() { return Formula::constant(true); }
inline Formula make_false() { return Formula::constant(false); }
inline Formula make_not(Formula f) { return Formula::negation(std::move(f)); }
inline Formula make_and(Formula a, Formula b) {
  return Formula::binary(Formula::Kind::And, std::move(a), std::move(b));
}
inline Formula make_or(Formula a, Formula b) {
  return Formula::binary(Formula::Kind::Or, std::move(a), std::move(b));
}
inline Formula make_impl(Formula a, Formula b) {
  return Formula::binary(Formula::Kind::Impl, std::move(a), std::move(b));
}
inline Formula make_biim(Formula a, Formula b) {
  return Formula::binary(Formula::Kind::Biim, std::move(a), std::move(b));
}
inline Formula make_xor(Formula a, Formula b) {
  return Formula::binary(Formula::Kind::Xor, std::move(a), std::move(b));
}

/// Formula DSL. Tightest first: `~`, `&`, `|`, `^`, `=>` (right assoc),
/// `<=>`; all other binary operators associate left. Constants `T`, `F`.
Formula parse_formula(std::string_view text);

/// Fully parenthesized rendering; parse_formula(render_formula(f)) == f.
std::string render_formula(const Formula& f);

/// Sorted set of variable letters occurring in f, as a string.
std::string variables_of(const Formula& f);

ConnectiveSet connectives_of(const Formula& f);

using Assignment = std::map<std::string, bool>;

/// Throws UnboundVariable if a variable of f is missing from a.
bool evaluate(const Formula& f, const Assignment& a);

inline constexpr std::size_t kMaxSignatureVariables = 20;

/// Bit string of length 2^n, one character per truth-table row. Rows run
/// from all-false to all-true with var_order[0] as the most significant bit.
std::string truth_signature(const Formula& f, std::string_view var_order);

/// Validity of the sequent premises |- conclusions by backward proof search.
bool wang_proves(std::span<const Formula> premises, std::span<const Formula> conclusions);

/// wang_proves([f],[g]) && wang_proves([g],[f]).
bool equivalent(const Formula& f, const Formula& g);

// ---------------------------------------------------------------------------
// Clausal form

struct Literal {
  std::string var;
  bool positive = true;

  Literal negated() const { return {var, !positive}; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::set<Literal>;
using CnfFormula = std::vector<Clause>;

std::string render_literal(const Literal& l);
/// "{X, ~t1} {Y}"
std::string render_cnf(const CnfFormula& cnf);

bool is_tautologous(const Clause& c);

/// Syntactic: conjunction of disjunctions of literals (constants allowed as units).
bool is_cnf(const Formula& f);
bool is_3cnf(const CnfFormula& cnf);

struct TseitinResult {
  CnfFormula cnf;
  Literal root;
  /// Preorder index of a node in the constant-folded formula -> fresh variable.
  std::map<std::size_t, std::string> fresh;
};

/// Equisatisfiable 3-CNF. Includes the unit clause asserting the root.
TseitinResult tseitin_3cnf(const Formula& f);

/// A satisfying assignment over every variable mentioned in cnf, or nullopt.
std::optional<Assignment> dpll_satisfiable(const CnfFormula& cnf);

inline constexpr std::size_t kDefaultResolutionCap = 100'000;

/// Saturates under binary resolution; true iff the empty clause is derived.
/// Throws ResourceLimit if the clause store outgrows clause_cap.
bool resolution_refutes(const CnfFormula& cnf,
                        std::size_t clause_cap = kDefaultResolutionCap);

/// Reference translation into an equivalent formula over {=>, ^} only.
/// Constants are expressed through the variable P.
Formula translate_to_impl_xor(const Formula& f);

struct RestrictedVerdict {
  enum class Kind { Correct, WrongConnectives, NotEquivalent };
  Kind kind = Kind::Correct;
  ConnectiveSet offending;
  Assignment witness;
};

RestrictedVerdict restricted_equivalent(const Formula& candidate, const Formula& reference,
                                        ConnectiveSet allowed);

}  // namespace formlab::logic
