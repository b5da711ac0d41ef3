#include "formlab/defect.hpp"

namespace formlab {

std::string_view defect_kind_name(DefectKind kind) {
  switch (kind) {
    case DefectKind::NotDeterministic: return "NotDeterministic";
    case DefectKind::MissingTransition: return "MissingTransition";
    case DefectKind::SymbolOutsideAlphabet: return "SymbolOutsideAlphabet";
    case DefectKind::StateOutsideStateSet: return "StateOutsideStateSet";
    case DefectKind::BadStart: return "BadStart";
    case DefectKind::BadAccept: return "BadAccept";
    case DefectKind::DuplicateState: return "DuplicateState";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<Defect>& defects) {
  std::string out = "ill-formed:";
  for (const Defect& d : defects) out += " " + d.detail + ";";
  if (!defects.empty()) out.pop_back();
  return out;
}

}  // namespace

IllFormed::IllFormed(std::vector<Defect> defects)
    : Error(summarize(defects)), defects_(std::move(defects)) {}

}  // namespace formlab
