#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>

#include "formlab/automata.hpp"
#include "formlab/error.hpp"

namespace formlab::regular {

namespace {

bool same_symbols(std::string a, std::string b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Offset for the second layer/operand: 1 + max |q| over the first, plus
// enough to lift any negative state of the second above zero.
State shift_past(const std::set<State>& first, const std::set<State>& second) {
  State m = 0;
  for (State q : first) m = std::max(m, std::abs(q));
  const State lift = second.empty() ? 0 : std::max(0, -*second.begin());
  return m + 1 + lift;
}

Nfa shifted(const Nfa& n, State by) {
  Nfa r;
  r.alphabet = n.alphabet;
  for (State q : n.states) r.states.insert(q + by);
  for (const NfaEdge& e : n.edges) r.edges.insert({e.from + by, e.symbol, e.to + by});
  for (State q : n.starts) r.starts.insert(q + by);
  for (State q : n.accepts) r.accepts.insert(q + by);
  return r;
}

State fresh_state(const std::set<State>& states) {
  return states.empty() ? 0 : *states.rbegin() + 1;
}

bool combine(Combine c, bool x, bool y) {
  switch (c) {
    case Combine::And: return x && y;
    case Combine::Or: return x || y;
    case Combine::Xor: return x != y;
    case Combine::Diff: return x && !y;
  }
  return false;
}

// Dense view of a DFA for word enumeration.
struct DenseDfa {
  std::vector<std::vector<std::size_t>> succ;
  std::vector<char> accepting;
  std::size_t start = 0;
};

DenseDfa densify(const Dfa& d) {
  const std::vector<State> ids(d.states.begin(), d.states.end());
  auto index = [&](State q) {
    return std::size_t(std::lower_bound(ids.begin(), ids.end(), q) - ids.begin());
  };
  DenseDfa out;
  out.succ.resize(ids.size());
  out.accepting.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (char a : d.alphabet) out.succ[i].push_back(index(d.next(ids[i], a)));
    out.accepting[i] = d.accepts.count(ids[i]) ? 1 : 0;
  }
  out.start = index(d.start);
  return out;
}

// True if infinitely many words are accepted: some state that is reachable
// and co-reachable lies on a cycle.
bool infinite_language(const DenseDfa& d) {
  const std::size_t n = d.succ.size();
  std::vector<char> reach(n, 0), coreach(n, 0);
  std::vector<std::size_t> work{d.start};
  reach[d.start] = 1;
  while (!work.empty()) {
    std::size_t q = work.back();
    work.pop_back();
    for (std::size_t r : d.succ[q])
      if (!reach[r]) {
        reach[r] = 1;
        work.push_back(r);
      }
  }
  std::vector<std::vector<std::size_t>> pred(n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t r : d.succ[q]) pred[r].push_back(q);
  for (std::size_t q = 0; q < n; ++q)
    if (d.accepting[q]) {
      coreach[q] = 1;
      work.push_back(q);
    }
  while (!work.empty()) {
    std::size_t q = work.back();
    work.pop_back();
    for (std::size_t p : pred[q])
      if (!coreach[p]) {
        coreach[p] = 1;
        work.push_back(p);
      }
  }
  // Cycle detection restricted to useful states (iterative three-colour DFS).
  std::vector<char> colour(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] || !reach[root] || !coreach[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [q, next] = stack.back();
      if (next == d.succ[q].size()) {
        colour[q] = 2;
        stack.pop_back();
        continue;
      }
      std::size_t r = d.succ[q][next++];
      if (!reach[r] || !coreach[r]) continue;
      if (colour[r] == 1) return true;
      if (colour[r] == 0) {
        colour[r] = 1;
        stack.push_back({r, 0});
      }
    }
  }
  return false;
}

// Words accepted by d in length-then-alphabet order, at most `limit` of them
// and none longer than max_len.
std::vector<std::string> accepted_words(const Dfa& dfa, std::size_t limit, std::size_t max_len) {
  std::vector<std::string> out;
  if (limit == 0) return out;
  const DenseDfa d = densify(dfa);
  const std::size_t n = d.succ.size();
  const bool infinite = infinite_language(d);
  // live[k][q]: an accepting state is reachable from q in exactly k steps.
  std::vector<std::vector<char>> live{d.accepting};
  std::string word;

  auto extend_live = [&](std::size_t k) {
    while (live.size() <= k) {
      const auto& prev = live.back();
      std::vector<char> next(n, 0);
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r : d.succ[q])
          if (prev[r]) {
            next[q] = 1;
            break;
          }
      live.push_back(std::move(next));
    }
  };

  auto dfs = [&](auto&& self, std::size_t q, std::size_t remaining) -> void {
    if (out.size() >= limit) return;
    if (remaining == 0) {
      out.push_back(word);
      return;
    }
    for (std::size_t s = 0; s < dfa.alphabet.size(); ++s) {
      std::size_t r = d.succ[q][s];
      if (!live[remaining - 1][r]) continue;
      word.push_back(dfa.alphabet[s]);
      self(self, r, remaining - 1);
      word.pop_back();
      if (out.size() >= limit) return;
    }
  };

  for (std::size_t len = 0; len <= max_len && out.size() < limit; ++len) {
    // Longest word of a finite language is shorter than the state count.
    if (!infinite && len >= n) break;
    extend_live(len);
    if (live[len][d.start]) dfs(dfs, d.start, len);
  }
  return out;
}

}  // namespace

Nfa nfa_regular_op(RegularOp op, std::span<const Nfa> operands) {
  const std::size_t arity = op == RegularOp::Star ? 1 : 2;
  if (operands.size() != arity)
    throw DomainError("regular operation expects " + std::to_string(arity) + " operand(s), got " +
                      std::to_string(operands.size()));
  const Nfa& a = operands[0];
  Nfa out;
  if (op == RegularOp::Star) {
    out = a;
    const State s = fresh_state(a.states);
    out.states.insert(s);
    for (State q : a.starts) out.edges.insert({s, kEpsilon, q});
    for (State q : a.accepts) out.edges.insert({q, kEpsilon, s});
    out.starts = {s};
    out.accepts = {s};
    return out;
  }

  if (!same_symbols(a.alphabet, operands[1].alphabet))
    throw AlphabetMismatch("operands have different alphabets: \"" + a.alphabet + "\" and \"" +
                           operands[1].alphabet + "\"");
  const Nfa b = shifted(operands[1], shift_past(a.states, operands[1].states));
  out.alphabet = a.alphabet;
  out.states = a.states;
  out.states.insert(b.states.begin(), b.states.end());
  out.edges = a.edges;
  out.edges.insert(b.edges.begin(), b.edges.end());
  if (op == RegularOp::Union) {
    const State s = fresh_state(out.states);
    out.states.insert(s);
    for (State q : a.starts) out.edges.insert({s, kEpsilon, q});
    for (State q : b.starts) out.edges.insert({s, kEpsilon, q});
    out.starts = {s};
    out.accepts = a.accepts;
    out.accepts.insert(b.accepts.begin(), b.accepts.end());
  } else {
    for (State f : a.accepts)
      for (State q : b.starts) out.edges.insert({f, kEpsilon, q});
    out.starts = a.starts;
    out.accepts = b.accepts;
  }
  return out;
}

Dfa dfa_product(const Dfa& a, const Dfa& b, Combine how) {
  if (!same_symbols(a.alphabet, b.alphabet))
    throw AlphabetMismatch("product needs equal alphabets: \"" + a.alphabet + "\" and \"" +
                           b.alphabet + "\"");
  Dfa out;
  out.alphabet = a.alphabet;
  out.start = 0;
  std::map<std::pair<State, State>, State> number{{{a.start, b.start}, 0}};
  std::deque<std::pair<State, State>> queue{{a.start, b.start}};
  while (!queue.empty()) {
    const auto pair = queue.front();
    queue.pop_front();
    const State id = number.at(pair);
    out.states.insert(id);
    if (combine(how, a.accepts.count(pair.first) > 0, b.accepts.count(pair.second) > 0))
      out.accepts.insert(id);
    for (char s : out.alphabet) {
      const std::pair<State, State> target{a.next(pair.first, s), b.next(pair.second, s)};
      auto [it, fresh] = number.emplace(target, State(number.size()));
      if (fresh) queue.push_back(target);
      out.delta[{id, s}] = it->second;
    }
  }
  return out;
}

Dfa dfa_complement(const Dfa& d) {
  Dfa out = d;
  out.accepts.clear();
  for (State q : d.states)
    if (!d.accepts.count(q)) out.accepts.insert(q);
  return out;
}

EquivalenceResult equivalence_counterexamples(const Dfa& a, const Dfa& b, std::size_t limit) {
  const Dfa diff = dfa_product(a, b, Combine::Xor);
  EquivalenceResult result;
  // Emptiness is decided on reachability alone; the limit only bounds the examples.
  const std::set<State> reach = reachable_states(diff);
  result.equivalent = std::none_of(reach.begin(), reach.end(),
                                   [&](State q) { return diff.accepts.count(q) > 0; });
  if (result.equivalent) return result;
  for (std::string& w : accepted_words(diff, limit, std::numeric_limits<std::size_t>::max())) {
    const Side side = dfa_accepts(a, w) ? Side::OnlyFirst : Side::OnlySecond;
    result.examples.push_back({std::move(w), side});
  }
  return result;
}

std::vector<std::string> enumerate_language(const Dfa& d, std::size_t max_len) {
  return accepted_words(d, std::numeric_limits<std::size_t>::max(), max_len);
}

Nfa skip_construction(const Dfa& d) {
  const State by = shift_past(d.states, d.states);
  Nfa out;
  out.alphabet = d.alphabet;
  for (State q : d.states) {
    out.states.insert(q);
    out.states.insert(q + by);
  }
  for (const auto& [key, r] : d.delta) {
    out.edges.insert({key.first, key.second, r});
    out.edges.insert({key.first + by, key.second, r + by});
    out.edges.insert({key.first, kEpsilon, r + by});
  }
  out.starts = {d.start};
  for (State q : d.accepts) out.accepts.insert(q + by);
  return out;
}

Dfa multiples_dfa(int d) {
  if (d <= 0) throw DomainError("multiples_dfa needs a positive modulus, got " + std::to_string(d));
  Dfa out;
  out.alphabet = "a";
  for (State i = 0; i < d; ++i) {
    out.states.insert(i);
    out.delta[{i, 'a'}] = (i + 1) % d;
  }
  out.start = 0;
  out.accepts = {0};
  return out;
}

}  // namespace formlab::regular
