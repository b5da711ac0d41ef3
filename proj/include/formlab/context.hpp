#pragma once

// Context-free grammars (CNF, CYK tree counting, closure constructions) and
// deterministic pushdown automata with bounded emulation.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formlab/automata.hpp"
#include "formlab/defect.hpp"

namespace formlab::context {

using regular::Dfa;
using regular::State;

/// A production. Right-hand symbols are variable names or single-character
/// terminals; an empty right-hand side is an epsilon rule.
struct Rule {
  std::string lhs;
  std::vector<std::string> rhs;

  friend auto operator<=>(const Rule&, const Rule&) = default;
};

struct Cfg {
  std::vector<std::string> variables;  // declaration order
  std::string terminals;
  std::vector<Rule> rules;
  std::string start;

  bool is_variable(std::string_view s) const;
  friend bool operator==(const Cfg&, const Cfg&) = default;
};

std::vector<Defect> validate_cfg(const Cfg& g);

/// Rules only of the forms A -> B C, A -> a, plus S -> epsilon for a start
/// variable that occurs on no right-hand side.
bool is_cnf(const Cfg& g);

/// New start, epsilon-rule removal, unit-rule removal, terminal lifting,
/// binarization, then removal of useless variables. Fresh variables are
/// named X1, X2, ... in first-use order, skipping names already taken.
Cfg cfg_to_cnf(const Cfg& g);

inline constexpr std::uint64_t kDefaultTreeCap = 2;

/// Number of parse trees of w, saturating at cap. Throws NotCnf.
std::uint64_t cyk_trees(const Cfg& cnf, std::string_view w, std::uint64_t cap = kDefaultTreeCap);

/// Membership through CNF conversion and CYK.
bool cfg_member(const Cfg& g, std::string_view w);

enum class CfgOp { Union, Concat, Star, Reverse };

/// Union/Concat take two grammars, Star/Reverse one. Variables of the second
/// operand that clash with the first are renamed to fresh names.
Cfg cfg_closure_op(CfgOp op, std::span<const Cfg> operands);

inline constexpr std::size_t kMaxIntersectionTriples = 1'000'000;

/// Triple construction over the CNF of g. Throws ResourceLimit when
/// |states|^2 * |variables| exceeds cap.
Cfg cfg_intersect_dfa(const Cfg& g, const Dfa& d, std::size_t cap = kMaxIntersectionTriples);

/// Right-linear grammar with one variable per state.
Cfg dfa_to_cfg(const Dfa& d);

/// Printable grammar, one variable per line: "S -> a S b | _".
std::string render_cfg(const Cfg& g);

// ---------------------------------------------------------------------------
// Deterministic pushdown automata

using StackSymbol = std::string;

/// Fires on (from, next input or epsilon, stack top or epsilon). The first
/// element of `push` ends up on top of the stack.
struct DpdaTransition {
  State from;
  std::optional<char> input;
  std::optional<StackSymbol> pop;
  State to;
  std::vector<StackSymbol> push;

  friend bool operator==(const DpdaTransition&, const DpdaTransition&) = default;
};

struct Dpda {
  std::vector<State> states;
  std::string input_alphabet;
  std::vector<StackSymbol> stack_alphabet;
  std::vector<DpdaTransition> transitions;
  State start = 0;
  std::vector<State> accepts;

  friend bool operator==(const Dpda&, const Dpda&) = default;
};

/// Membership defects plus one NotDeterministic defect per clashing pair.
std::vector<Defect> validate_dpda(const Dpda& p);

enum class RunTag { Accepted, Rejected, StepLimit };

struct RunOutcome {
  RunTag tag;
  std::size_t steps_used;

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

inline constexpr std::size_t kDefaultStepLimit = 10'000;

/// Acceptance by final state once the whole input is consumed. A stuck
/// configuration rejects.
RunOutcome dpda_run(const Dpda& p, std::string_view w, std::size_t step_limit = kDefaultStepLimit);

/// Three-state DPDA whose stack top tracks the DFA state.
Dpda dfa_to_dpda3(const Dfa& d);

std::string_view run_tag_name(RunTag tag);

}  // namespace formlab::context
