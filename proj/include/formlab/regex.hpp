#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formlab/automata.hpp"

namespace formlab::regular {

/// Immutable regular expression tree.
class Regex {
 public:
  enum class Kind : unsigned char { EmptySet, EmptyStr, Symbol, Star, Concat, Union };

  static Regex symbol(Symbol c);
  static Regex empty_str();
  static Regex empty_set();
  static Regex concat(Regex a, Regex b);
  static Regex alt(Regex a, Regex b);
  static Regex star(Regex a);

  Kind kind() const { return node_->kind; }
  Symbol sym() const { return node_->sym; }
  /// Operand of Star, left operand of Concat/Union.
  Regex lhs() const { return Regex(node_->lhs); }
  Regex rhs() const { return Regex(node_->rhs); }
  std::size_t size() const { return node_->size; }

  /// Structural total order.
  friend std::strong_ordering operator<=>(const Regex& a, const Regex& b);
  friend bool operator==(const Regex& a, const Regex& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    Kind kind;
    Symbol sym;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t size;
  };
  explicit Regex(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Regex DSL: `|` union, juxtaposition concatenation, postfix `*`, `_` for
/// the empty string, `#` for the empty set, parentheses for grouping. Any
/// other non-whitespace character is a literal symbol.
Regex parse_regex(std::string_view text);

/// Fully parenthesized; parse_regex(render_regex(r)) == r.
std::string render_regex(const Regex& r);

/// Sorted distinct symbols of r.
std::string regex_symbols(const Regex& r);

bool nullable(const Regex& r);
bool is_union_free(const Regex& r);

/// foldr1 Concat; the empty list gives EmptyStr.
Regex concat_all(std::span<const Regex> parts);
/// foldr1 Union; the empty list gives EmptySet.
Regex union_all(std::span<const Regex> parts);

/// Rewrites under ACI of union, unit/zero laws of concatenation and
/// star idempotence. Equal languages are not guaranteed equal forms.
Regex similarity_normalize(const Regex& r);

/// Brzozowski derivative with respect to a, in similarity-normal form.
Regex derivative(const Regex& r, Symbol a);

inline constexpr std::size_t kMaxDerivativeStates = 4096;

/// Derivative automaton; states are distinct normalized derivatives in
/// breadth-first discovery order. Throws AlphabetMismatch if r uses a
/// symbol outside alphabet and ResourceLimit beyond max_states.
Dfa regex_to_dfa(const Regex& r, std::string_view alphabet,
                 std::size_t max_states = kMaxDerivativeStates);

/// Union-free parts whose languages union to L(r).
std::vector<Regex> union_free_decomposition(const Regex& r);

}  // namespace formlab::regular
