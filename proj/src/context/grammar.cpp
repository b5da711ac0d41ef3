#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "fresh_names.hpp"
#include "formlab/context.hpp"
#include "formlab/error.hpp"

namespace formlab::context {

bool Cfg::is_variable(std::string_view s) const {
  return std::find(variables.begin(), variables.end(), s) != variables.end();
}

namespace {

std::string show_rule(const Rule& r) {
  std::string out = r.lhs + " ->";
  if (r.rhs.empty()) out += " _";
  for (const auto& s : r.rhs) out += " " + s;
  return out;
}

// Appends rules, dropping exact duplicates but keeping first-seen order.
class RuleList {
 public:
  bool add(Rule r) {
    if (!seen_.insert(r).second) return false;
    rules_.push_back(std::move(r));
    return true;
  }
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::set<Rule> seen_;
  std::vector<Rule> rules_;
};

}  // namespace

Cfg detail::remove_useless(Cfg g) {
  std::set<std::string> generating;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& r : g.rules) {
      if (generating.count(r.lhs)) continue;
      if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](const std::string& s) {
            return !g.is_variable(s) || generating.count(s);
          })) {
        generating.insert(r.lhs);
        changed = true;
      }
    }
  }
  auto uses_only_generating = [&](const Rule& r) {
    return generating.count(r.lhs) &&
           std::all_of(r.rhs.begin(), r.rhs.end(), [&](const std::string& s) {
             return !g.is_variable(s) || generating.count(s);
           });
  };
  std::erase_if(g.rules, [&](const Rule& r) { return !uses_only_generating(r); });

  std::set<std::string> reachable{g.start};
  std::deque<std::string> work{g.start};
  while (!work.empty()) {
    const std::string a = work.front();
    work.pop_front();
    for (const Rule& r : g.rules)
      if (r.lhs == a)
        for (const auto& s : r.rhs)
          if (g.is_variable(s) && reachable.insert(s).second) work.push_back(s);
  }
  std::erase_if(g.rules, [&](const Rule& r) { return !reachable.count(r.lhs); });
  std::erase_if(g.variables, [&](const std::string& v) { return !reachable.count(v); });
  return g;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  return std::min(cap, a + b);
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap;
  return std::min(cap, a * b);
}

}  // namespace

std::vector<Defect> validate_cfg(const Cfg& g) {
  std::vector<Defect> out;
  std::set<std::string> vars;
  for (const auto& v : g.variables) {
    if (v.empty()) {
      out.push_back({DefectKind::StateOutsideStateSet, "variable names must be non-empty"});
      continue;
    }
    if (!vars.insert(v).second)
      out.push_back({DefectKind::DuplicateState, "variable " + v + " is declared more than once"});
    if (v.size() == 1 && g.terminals.find(v[0]) != std::string::npos)
      out.push_back({DefectKind::DuplicateState,
                     "symbol " + v + " is declared both as a variable and as a terminal"});
  }
  if (!vars.count(g.start))
    out.push_back({DefectKind::BadStart, "start variable " + g.start + " is not declared"});
  for (const Rule& r : g.rules) {
    if (!vars.count(r.lhs))
      out.push_back({DefectKind::StateOutsideStateSet,
                     "rule " + show_rule(r) + " has undeclared variable " + r.lhs + " on the left"});
    for (const auto& s : r.rhs) {
      if (vars.count(s)) continue;
      if (s.size() == 1 && g.terminals.find(s[0]) != std::string::npos) continue;
      if (s.size() == 1 && !(s[0] >= 'A' && s[0] <= 'Z'))
        out.push_back({DefectKind::SymbolOutsideAlphabet,
                       "rule " + show_rule(r) + " uses terminal '" + s +
                           "', which is outside the terminals \"" + g.terminals + "\""});
      else
        out.push_back({DefectKind::StateOutsideStateSet,
                       "rule " + show_rule(r) + " uses undeclared variable " + s});
    }
  }
  return out;
}

bool is_cnf(const Cfg& g) {
  for (const Rule& r : g.rules) {
    if (r.rhs.empty()) {
      if (r.lhs != g.start) return false;
      continue;
    }
    if (r.rhs.size() == 1) {
      if (g.is_variable(r.rhs[0])) return false;
      continue;
    }
    if (r.rhs.size() != 2) return false;
    for (const auto& s : r.rhs)
      if (!g.is_variable(s) || s == g.start) return false;
  }
  return true;
}

Cfg cfg_to_cnf(const Cfg& g) {
  if (auto defects = validate_cfg(g); !defects.empty()) throw IllFormed(std::move(defects));
  detail::FreshNames fresh({g.variables.begin(), g.variables.end()});

  Cfg out;
  out.terminals = g.terminals;
  out.start = fresh.next();
  out.variables.push_back(out.start);
  out.variables.insert(out.variables.end(), g.variables.begin(), g.variables.end());
  std::vector<Rule> rules{{out.start, {g.start}}};
  rules.insert(rules.end(), g.rules.begin(), g.rules.end());

  // Epsilon rules.
  std::set<std::string> nullable;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& r : rules)
      if (!nullable.count(r.lhs) &&
          std::all_of(r.rhs.begin(), r.rhs.end(), [&](const auto& s) { return nullable.count(s); })) {
        nullable.insert(r.lhs);
        changed = true;
      }
  }
  RuleList no_eps;
  for (const Rule& r : rules) {
    std::vector<std::size_t> optional_at;
    for (std::size_t i = 0; i < r.rhs.size(); ++i)
      if (nullable.count(r.rhs[i])) optional_at.push_back(i);
    for (std::size_t mask = 0; mask < (std::size_t(1) << optional_at.size()); ++mask) {
      Rule v{r.lhs, {}};
      for (std::size_t i = 0, k = 0; i < r.rhs.size(); ++i) {
        if (k < optional_at.size() && optional_at[k] == i) {
          if (!(mask >> k & 1u)) v.rhs.push_back(r.rhs[i]);
          ++k;
        } else {
          v.rhs.push_back(r.rhs[i]);
        }
      }
      if (v.rhs.empty() && v.lhs != out.start) continue;
      no_eps.add(std::move(v));
    }
  }

  // Unit rules.
  auto is_unit = [&](const Rule& r) { return r.rhs.size() == 1 && out.is_variable(r.rhs[0]); };
  RuleList no_unit;
  for (const auto& a : out.variables) {
    std::vector<std::string> closure{a};
    std::set<std::string> in{a};
    for (std::size_t i = 0; i < closure.size(); ++i)
      for (const Rule& r : no_eps.rules())
        if (r.lhs == closure[i] && is_unit(r) && in.insert(r.rhs[0]).second)
          closure.push_back(r.rhs[0]);
    for (const auto& b : closure)
      for (const Rule& r : no_eps.rules())
        if (r.lhs == b && !is_unit(r)) no_unit.add({a, r.rhs});
  }

  // Terminals inside long rules get their own variables.
  std::map<std::string, std::string> lifted;
  std::vector<Rule> lifted_rules;
  std::vector<Rule> short_rules;
  for (Rule r : no_unit.rules()) {
    if (r.rhs.size() >= 2) {
      for (auto& s : r.rhs) {
        if (out.is_variable(s)) continue;
        auto it = lifted.find(s);
        if (it == lifted.end()) {
          it = lifted.emplace(s, fresh.next()).first;
          out.variables.push_back(it->second);
          lifted_rules.push_back({it->second, {s}});
        }
        s = it->second;
      }
    }
    short_rules.push_back(std::move(r));
  }
  short_rules.insert(short_rules.end(), lifted_rules.begin(), lifted_rules.end());

  // Binarization.
  RuleList cnf;
  for (Rule r : short_rules) {
    while (r.rhs.size() > 2) {
      const std::string tail = fresh.next();
      out.variables.push_back(tail);
      cnf.add({r.lhs, {r.rhs[0], tail}});
      r = Rule{tail, std::vector<std::string>(r.rhs.begin() + 1, r.rhs.end())};
    }
    cnf.add(std::move(r));
  }
  out.rules = cnf.rules();
  return detail::remove_useless(std::move(out));
}

std::uint64_t cyk_trees(const Cfg& g, std::string_view w, std::uint64_t cap) {
  if (!is_cnf(g)) throw NotCnf("cyk_trees needs a grammar in Chomsky normal form");
  if (cap == 0) return 0;
  cap = std::min<std::uint64_t>(cap, std::uint64_t(1) << 62);
  if (w.empty()) {
    for (const Rule& r : g.rules)
      if (r.lhs == g.start && r.rhs.empty()) return 1;
    return 0;
  }

  std::map<std::string, std::size_t> index;
  for (const auto& v : g.variables) index.emplace(v, index.size());
  const std::size_t nv = index.size();
  struct Binary {
    std::size_t a, b, c;
  };
  std::vector<Binary> binary;
  std::vector<std::pair<std::size_t, char>> unary;
  for (const Rule& r : g.rules) {
    if (r.rhs.size() == 2)
      binary.push_back({index.at(r.lhs), index.at(r.rhs[0]), index.at(r.rhs[1])});
    else if (r.rhs.size() == 1)
      unary.emplace_back(index.at(r.lhs), r.rhs[0][0]);
  }

  const std::size_t n = w.size();
  // table[len-1][i][A]: trees deriving w[i, i+len) from A.
  std::vector<std::vector<std::vector<std::uint64_t>>> table(
      n, std::vector<std::vector<std::uint64_t>>(n, std::vector<std::uint64_t>(nv, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [a, t] : unary)
      if (t == w[i]) table[0][i][a] = sat_add(table[0][i][a], 1, cap);
  for (std::size_t len = 2; len <= n; ++len)
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto& cell = table[len - 1][i];
      for (std::size_t k = 1; k < len; ++k) {
        const auto& left = table[k - 1][i];
        const auto& right = table[len - k - 1][i + k];
        for (const Binary& r : binary)
          cell[r.a] = sat_add(cell[r.a], sat_mul(left[r.b], right[r.c], cap), cap);
      }
    }
  return table[n - 1][0][index.at(g.start)];
}

bool cfg_member(const Cfg& g, std::string_view w) {
  return cyk_trees(cfg_to_cnf(g), w, 1) > 0;
}

std::string render_cfg(const Cfg& g) {
  std::string out;
  for (const auto& v : g.variables) {
    std::string line;
    for (const Rule& r : g.rules) {
      if (r.lhs != v) continue;
      line += line.empty() ? v + " -> " : " | ";
      if (r.rhs.empty()) line += "_";
      for (std::size_t i = 0; i < r.rhs.size(); ++i) line += (i ? " " : "") + r.rhs[i];
    }
    if (!line.empty()) out += line + "\n";
  }
  return out;
}

}  // namespace formlab::context
