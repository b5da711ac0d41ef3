#pragma once

// Finite automata: checked DFA/NFA models, raw (unvalidated) descriptions,
// conversions, minimisation, products and the closure constructions.

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "formlab/defect.hpp"

namespace formlab::regular {

using State = int;
using Symbol = char;

/// Reserved NFA label for epsilon moves; never part of an alphabet.
inline constexpr Symbol kEpsilon = '\0';

/// Deterministic automaton with a total transition function over states x alphabet.
struct Dfa {
  std::set<State> states;
  std::string alphabet;  // distinct symbols, in declared order
  std::map<std::pair<State, Symbol>, State> delta;
  State start = 0;
  std::set<State> accepts;

  /// Throws DomainError if (q, a) has no transition.
  State next(State q, Symbol a) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;
};

struct NfaEdge {
  State from;
  Symbol symbol;  // kEpsilon for an epsilon move
  State to;

  friend auto operator<=>(const NfaEdge&, const NfaEdge&) = default;
};

/// Nondeterministic automaton with a set of start states and epsilon moves.
struct Nfa {
  std::set<State> states;
  std::string alphabet;
  std::set<NfaEdge> edges;
  std::set<State> starts;
  std::set<State> accepts;

  friend bool operator==(const Nfa&, const Nfa&) = default;
};

enum class AutomatonKind { Dfa, Nfa };

/// A transition as written by a user; the label is "" for epsilon.
struct RawTransition {
  State from;
  std::string label;
  State to;
};

/// Unchecked machine description, as read from a file or a candidate.
struct RawAutomaton {
  AutomatonKind kind = AutomatonKind::Dfa;
  std::vector<State> states;
  std::string alphabet;
  std::vector<RawTransition> transitions;
  std::vector<State> starts;
  std::vector<State> accepts;
};

/// Every violated invariant, in a stable order. Empty means well-formed.
std::vector<Defect> validate_automaton(const RawAutomaton& raw);

/// Throw IllFormed when validate_automaton reports defects. to_nfa also
/// accepts a DFA-kind description.
Dfa to_dfa(const RawAutomaton& raw);
Nfa to_nfa(const RawAutomaton& raw);

RawAutomaton to_raw(const Dfa& d);
RawAutomaton to_raw(const Nfa& n);

Nfa as_nfa(const Dfa& d);

/// Throws DomainError on a symbol outside the alphabet.
bool dfa_accepts(const Dfa& d, std::string_view w);
/// Symbols outside the alphabet reject.
bool nfa_accepts(const Nfa& n, std::string_view w);

std::set<State> epsilon_closure(const Nfa& n, std::set<State> states);

inline constexpr std::size_t kMaxSubsets = std::size_t(1) << 20;

/// Subset construction over reachable epsilon-closed subsets, numbered in
/// breadth-first discovery order.
Dfa determinize(const Nfa& n, std::size_t max_states = kMaxSubsets);

/// Flips every edge and swaps start and accept sets.
Nfa reverse(const Nfa& n);

/// Double reversal: determinize(reverse(determinize(reverse(d)))).
Dfa brzozowski_minimize(const Dfa& d);

std::set<State> reachable_states(const Dfa& d);

/// Table filling. Pairs are ordered (p < q).
std::set<std::pair<State, State>> distinguishable_pairs(const Dfa& d);

/// All states reachable and pairwise distinguishable.
bool is_minimal(const Dfa& d);

/// Sorted alphabet, unreachable states dropped, states renumbered 0.. in
/// breadth-first order. Equal languages give equal canonical minimal DFAs.
Dfa canonical_form(const Dfa& d);

enum class RegularOp { Union, Concat, Star };

/// Textbook epsilon-NFA constructions. The first operand keeps its state
/// numbers; the second is shifted by 1 + max |state| of the first.
/// Throws AlphabetMismatch when binary operands disagree on the alphabet and
/// DomainError on the wrong number of operands.
Nfa nfa_regular_op(RegularOp op, std::span<const Nfa> operands);

enum class Combine { And, Or, Xor, Diff };

/// Product over reachable pairs, numbered in breadth-first discovery order.
Dfa dfa_product(const Dfa& a, const Dfa& b, Combine combine);

Dfa dfa_complement(const Dfa& d);

enum class Side { OnlyFirst, OnlySecond };

struct Counterexample {
  std::string word;
  Side side;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct EquivalenceResult {
  bool equivalent = true;
  std::vector<Counterexample> examples;
};

/// Shortest words (length, then alphabet order) accepted by exactly one machine.
EquivalenceResult equivalence_counterexamples(const Dfa& a, const Dfa& b, std::size_t limit);

/// Accepted words up to max_len, length-then-lexicographic.
std::vector<std::string> enumerate_language(const Dfa& d, std::size_t max_len);

/// Two copies of d joined by epsilon moves that stand in for one skipped symbol.
Nfa skip_construction(const Dfa& d);

/// The DFA for { a^n : d divides n }. Throws DomainError for d <= 0.
Dfa multiples_dfa(int d);

/// Display form of a word; the empty word is shown as "" (empty).
std::string quote_word(std::string_view w);

}  // namespace formlab::regular
