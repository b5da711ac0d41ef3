#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "formlab/error.hpp"

namespace formlab {

/// Ill-formedness categories shared by automata, grammars and pushdown machines.
enum class DefectKind {
  NotDeterministic,
  MissingTransition,
  SymbolOutsideAlphabet,
  StateOutsideStateSet,
  BadStart,
  BadAccept,
  DuplicateState,
};

std::string_view defect_kind_name(DefectKind kind);

struct Defect {
  DefectKind kind;
  std::string detail;

  friend bool operator==(const Defect&, const Defect&) = default;
};

/// Thrown when a raw description is promoted to a checked model but has defects.
class IllFormed : public Error {
 public:
  explicit IllFormed(std::vector<Defect> defects);
  const std::vector<Defect>& defects() const noexcept { return defects_; }

 private:
  std::vector<Defect> defects_;
};

}  // namespace formlab
