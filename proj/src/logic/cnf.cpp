#include <algorithm>
#include <set>

#include "formlab/error.hpp"
#include "formlab/logic.hpp"

namespace formlab::logic {

std::string render_literal(const Literal& l) { return (l.positive ? "" : "~") + l.var; }

std::string render_cnf(const CnfFormula& cnf) {
  std::string out;
  for (const Clause& c : cnf) {
    if (!out.empty()) out += ' ';
    out += '{';
    bool first = true;
    for (const Literal& l : c) {
      if (!first) out += ", ";
      first = false;
      out += render_literal(l);
    }
    out += '}';
  }
  return out;
}

bool is_tautologous(const Clause& c) {
  for (const Literal& l : c)
    if (l.positive && c.count(l.negated())) return true;
  return false;
}

namespace {

using Kind = Formula::Kind;

bool is_literal(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::True:
    case Kind::False: return true;
    case Kind::Not: return f.lhs().kind() == Kind::Var;
    default: return false;
  }
}

bool is_disjunction(const Formula& f) {
  if (f.kind() == Kind::Or) return is_disjunction(f.lhs()) && is_disjunction(f.rhs());
  return is_literal(f);
}

// Removes constants bottom-up. The result is either a constant leaf or
// contains no constants at all.
Formula fold_constants(const Formula& f) {
  if (f.kind() == Kind::Var || f.kind() == Kind::True || f.kind() == Kind::False) return f;
  auto is_const = [](const Formula& g) {
    return g.kind() == Kind::True || g.kind() == Kind::False;
  };
  if (f.kind() == Kind::Not) {
    Formula a = fold_constants(f.lhs());
    if (is_const(a)) return Formula::constant(a.kind() == Kind::False);
    return make_not(a);
  }
  Formula a = fold_constants(f.lhs());
  Formula b = fold_constants(f.rhs());
  if (!is_const(a) && !is_const(b)) return Formula::binary(f.kind(), a, b);

  if (is_const(a) && is_const(b)) {
    bool x = a.kind() == Kind::True;
    bool y = b.kind() == Kind::True;
    switch (f.kind()) {
      case Kind::And: return Formula::constant(x && y);
      case Kind::Or: return Formula::constant(x || y);
      case Kind::Impl: return Formula::constant(!x || y);
      case Kind::Biim: return Formula::constant(x == y);
      default: return Formula::constant(x != y);
    }
  }
  // Exactly one side is constant.
  const bool const_left = is_const(a);
  const bool c = (const_left ? a : b).kind() == Kind::True;
  const Formula& other = const_left ? b : a;
  switch (f.kind()) {
    case Kind::And: return c ? other : Formula::constant(false);
    case Kind::Or: return c ? Formula::constant(true) : other;
    case Kind::Biim: return c ? other : make_not(other);
    case Kind::Xor: return c ? make_not(other) : other;
    case Kind::Impl:
      if (const_left) return c ? other : Formula::constant(true);
      return c ? Formula::constant(true) : make_not(other);
    default: return f;
  }
}

class TseitinEncoder {
 public:
  TseitinResult run(const Formula& f) {
    Formula g = fold_constants(f);
    TseitinResult r;
    if (g.kind() == Kind::True || g.kind() == Kind::False) {
      std::string t = fresh(0);
      r.root = Literal{t, true};
      out_.push_back({r.root});
      if (g.kind() == Kind::False) out_.push_back({r.root.negated()});
      r.cnf = std::move(out_);
      r.fresh = std::move(map_);
      return r;
    }
    out_.push_back({});  // placeholder for the root unit clause
    r.root = encode(g);
    out_[0] = Clause{r.root};
    r.cnf = std::move(out_);
    r.fresh = std::move(map_);
    return r;
  }

 private:
  std::string fresh(std::size_t node_index) {
    std::string name = "t" + std::to_string(++counter_);
    map_.emplace(node_index, name);
    return name;
  }

  void emit(std::initializer_list<Literal> lits) {
    Clause c(lits);
    if (!is_tautologous(c)) out_.push_back(std::move(c));
  }

  Literal encode(const Formula& f) {
    const std::size_t index = preorder_++;
    switch (f.kind()) {
      case Kind::Var: return Literal{std::string(1, f.name()), true};
      case Kind::Not: return encode(f.lhs()).negated();
      default: break;
    }
    const Literal t{fresh(index), true};
    const Literal a = encode(f.lhs());
    const Literal b = encode(f.rhs());
    const Literal nt = t.negated(), na = a.negated(), nb = b.negated();
    switch (f.kind()) {
      case Kind::And:
        emit({nt, a});
        emit({nt, b});
        emit({t, na, nb});
        break;
      case Kind::Or:
        emit({nt, a, b});
        emit({t, na});
        emit({t, nb});
        break;
      case Kind::Impl:
        emit({nt, na, b});
        emit({t, a});
        emit({t, nb});
        break;
      case Kind::Biim:
        emit({nt, na, b});
        emit({nt, a, nb});
        emit({t, a, b});
        emit({t, na, nb});
        break;
      case Kind::Xor:
        emit({nt, a, b});
        emit({nt, na, nb});
        emit({t, na, b});
        emit({t, a, nb});
        break;
      default: break;
    }
    return t;
  }

  CnfFormula out_;
  std::map<std::size_t, std::string> map_;
  std::size_t counter_ = 0;
  std::size_t preorder_ = 0;
};

// Literals as 2*var + (negative ? 1 : 0).
struct IndexedCnf {
  std::vector<std::string> names;
  std::vector<std::vector<int>> clauses;
};

IndexedCnf index_cnf(const CnfFormula& cnf) {
  IndexedCnf out;
  std::set<std::string> vars;
  for (const Clause& c : cnf)
    for (const Literal& l : c) vars.insert(l.var);
  out.names.assign(vars.begin(), vars.end());
  auto id = [&](const std::string& v) {
    return int(std::lower_bound(out.names.begin(), out.names.end(), v) - out.names.begin());
  };
  for (const Clause& c : cnf) {
    std::vector<int> lits;
    for (const Literal& l : c) lits.push_back(2 * id(l.var) + (l.positive ? 0 : 1));
    std::sort(lits.begin(), lits.end());
    out.clauses.push_back(std::move(lits));
  }
  return out;
}

class Dpll {
 public:
  explicit Dpll(const IndexedCnf& cnf) : cnf_(cnf), value_(cnf.names.size(), kUnset) {}

  bool solve() { return search(); }

  Assignment model() const {
    Assignment a;
    for (std::size_t v = 0; v < cnf_.names.size(); ++v) a[cnf_.names[v]] = value_[v] == kTrue;
    return a;
  }

 private:
  static constexpr signed char kUnset = -1, kFalse = 0, kTrue = 1;

  signed char lit_value(int lit) const {
    signed char v = value_[std::size_t(lit >> 1)];
    if (v == kUnset) return kUnset;
    return (lit & 1) ? static_cast<signed char>(1 - v) : v;
  }

  void assign(int lit) {
    value_[std::size_t(lit >> 1)] = (lit & 1) ? kFalse : kTrue;
    trail_.push_back(lit >> 1);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[std::size_t(trail_.back())] = kUnset;
      trail_.pop_back();
    }
  }

  // Unit propagation to fixpoint; false on conflict.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : cnf_.clauses) {
        int unassigned = 0, last = -1;
        bool satisfied = false;
        for (int lit : clause) {
          signed char v = lit_value(lit);
          if (v == kTrue) {
            satisfied = true;
            break;
          }
          if (v == kUnset) {
            ++unassigned;
            last = lit;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(last);
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    const std::size_t mark = trail_.size();
    if (!propagate()) {
      undo(mark);
      return false;
    }
    auto it = std::find(value_.begin(), value_.end(), kUnset);
    if (it == value_.end()) return true;
    const int var = int(it - value_.begin());
    for (int lit : {2 * var, 2 * var + 1}) {
      const std::size_t inner = trail_.size();
      assign(lit);
      if (search()) return true;
      undo(inner);
    }
    undo(mark);
    return false;
  }

  const IndexedCnf& cnf_;
  std::vector<signed char> value_;
  std::vector<int> trail_;
};

bool tautologous(const std::vector<int>& sorted_lits) {
  for (std::size_t i = 1; i < sorted_lits.size(); ++i)
    if ((sorted_lits[i] >> 1) == (sorted_lits[i - 1] >> 1)) return true;
  return false;
}

bool subsumes(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool is_cnf(const Formula& f) {
  if (f.kind() == Kind::And) return is_cnf(f.lhs()) && is_cnf(f.rhs());
  return is_disjunction(f);
}

bool is_3cnf(const CnfFormula& cnf) {
  return std::all_of(cnf.begin(), cnf.end(), [](const Clause& c) { return c.size() <= 3; });
}

TseitinResult tseitin_3cnf(const Formula& f) { return TseitinEncoder().run(f); }

std::optional<Assignment> dpll_satisfiable(const CnfFormula& cnf) {
  IndexedCnf indexed = index_cnf(cnf);
  Dpll solver(indexed);
  if (!solver.solve()) return std::nullopt;
  return solver.model();
}

bool resolution_refutes(const CnfFormula& cnf, std::size_t clause_cap) {
  IndexedCnf indexed = index_cnf(cnf);
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> pending;
  for (auto& c : indexed.clauses) {
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (tautologous(c)) continue;
    if (seen.insert(c).second) pending.push_back(c);
  }
  // Given-clause loop, shortest clauses first.
  std::vector<std::vector<int>> active;
  while (!pending.empty()) {
    auto shortest = std::min_element(pending.begin(), pending.end(),
                                     [](const auto& a, const auto& b) {
                                       return a.size() != b.size() ? a.size() < b.size() : a < b;
                                     });
    std::vector<int> given = std::move(*shortest);
    pending.erase(shortest);
    if (given.empty()) return true;
    if (std::any_of(active.begin(), active.end(),
                    [&](const auto& a) { return subsumes(a, given); }))
      continue;
    std::erase_if(active, [&](const auto& a) { return subsumes(given, a); });

    for (const auto& other : active) {
      for (int lit : given) {
        const int complement = lit ^ 1;
        if (!std::binary_search(other.begin(), other.end(), complement)) continue;
        std::vector<int> resolvent;
        for (int l : given)
          if (l != lit) resolvent.push_back(l);
        for (int l : other)
          if (l != complement) resolvent.push_back(l);
        std::sort(resolvent.begin(), resolvent.end());
        resolvent.erase(std::unique(resolvent.begin(), resolvent.end()), resolvent.end());
        if (tautologous(resolvent)) continue;
        if (seen.insert(resolvent).second) {
          if (seen.size() > clause_cap)
            throw ResourceLimit("resolution exceeded the cap of " + std::to_string(clause_cap) +
                                " clauses");
          pending.push_back(std::move(resolvent));
        }
      }
    }
    active.push_back(std::move(given));
  }
  return false;
}

}  // namespace formlab::logic
