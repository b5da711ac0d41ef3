#include <cstdint>
#include <vector>

#include "formlab/logic.hpp"

namespace formlab::logic {

namespace {

using Kind = Formula::Kind;

struct Cell {
  Kind kind;
  char name;
  int lhs;
  int rhs;
};

// Flattened formulas; sequents refer to cells by index.
class Arena {
 public:
  int add(const Formula& f) {
    Cell c{f.kind(), f.name(), -1, -1};
    if (f.kind() == Kind::Not) {
      c.lhs = add(f.lhs());
    } else if (f.is_binary()) {
      c.lhs = add(f.lhs());
      c.rhs = add(f.rhs());
    }
    cells_.push_back(c);
    return int(cells_.size() - 1);
  }
  const Cell& operator[](int i) const { return cells_[std::size_t(i)]; }

 private:
  std::vector<Cell> cells_;
};

// Two-sided sequent; atoms already decomposed are kept as letter bitmasks.
struct Sequent {
  std::vector<int> left;
  std::vector<int> right;
  std::uint32_t left_atoms = 0;
  std::uint32_t right_atoms = 0;
};

bool prove(const Arena& arena, Sequent s) {
  for (;;) {
    if (s.left_atoms & s.right_atoms) return true;

    bool on_left = !s.left.empty();
    if (!on_left && s.right.empty()) return false;
    std::vector<int>& side = on_left ? s.left : s.right;
    const Cell c = arena[side.back()];
    side.pop_back();

    auto branch = [&](std::vector<int> l1, std::vector<int> r1, std::vector<int> l2,
                      std::vector<int> r2) {
      Sequent a = s;
      Sequent b = std::move(s);
      a.left.insert(a.left.end(), l1.begin(), l1.end());
      a.right.insert(a.right.end(), r1.begin(), r1.end());
      b.left.insert(b.left.end(), l2.begin(), l2.end());
      b.right.insert(b.right.end(), r2.begin(), r2.end());
      return prove(arena, std::move(a)) && prove(arena, std::move(b));
    };

    if (on_left) {
      switch (c.kind) {
        case Kind::Var: s.left_atoms |= 1u << (c.name - 'A'); break;
        case Kind::True: break;
        case Kind::False: return true;
        case Kind::Not: s.right.push_back(c.lhs); break;
        case Kind::And:
          s.left.push_back(c.lhs);
          s.left.push_back(c.rhs);
          break;
        case Kind::Or: return branch({c.lhs}, {}, {c.rhs}, {});
        case Kind::Impl: return branch({}, {c.lhs}, {c.rhs}, {});
        case Kind::Biim: return branch({c.lhs, c.rhs}, {}, {}, {c.lhs, c.rhs});
        case Kind::Xor: return branch({c.lhs}, {c.rhs}, {c.rhs}, {c.lhs});
      }
    } else {
      switch (c.kind) {
        case Kind::Var: s.right_atoms |= 1u << (c.name - 'A'); break;
        case Kind::True: return true;
        case Kind::False: break;
        case Kind::Not: s.left.push_back(c.lhs); break;
        case Kind::And: return branch({}, {c.lhs}, {}, {c.rhs});
        case Kind::Or:
          s.right.push_back(c.lhs);
          s.right.push_back(c.rhs);
          break;
        case Kind::Impl:
          s.left.push_back(c.lhs);
          s.right.push_back(c.rhs);
          break;
        case Kind::Biim: return branch({c.lhs}, {c.rhs}, {c.rhs}, {c.lhs});
        case Kind::Xor: return branch({c.lhs, c.rhs}, {}, {}, {c.lhs, c.rhs});
      }
    }
  }
}

}  // namespace

bool wang_proves(std::span<const Formula> premises, std::span<const Formula> conclusions) {
  Arena arena;
  Sequent s;
  for (const Formula& f : premises) s.left.push_back(arena.add(f));
  for (const Formula& f : conclusions) s.right.push_back(arena.add(f));
  return prove(arena, std::move(s));
}

bool equivalent(const Formula& f, const Formula& g) {
  return wang_proves(std::span(&f, 1), std::span(&g, 1)) &&
         wang_proves(std::span(&g, 1), std::span(&f, 1));
}

}  // namespace formlab::logic
