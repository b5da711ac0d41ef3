#pragma once

#include <set>
#include <string>

#include "formlab/context.hpp"

namespace formlab::context::detail {

/// X1, X2, ... skipping anything already taken.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}

  std::string next() {
    std::string name;
    do {
      name = "X" + std::to_string(++counter_);
    } while (taken_.count(name));
    taken_.insert(name);
    return name;
  }

  void reserve(const std::string& name) { taken_.insert(name); }

 private:
  std::set<std::string> taken_;
  unsigned counter_ = 0;
};

/// Drops non-generating, then unreachable variables. Keeps the start.
Cfg remove_useless(Cfg g);

}  // namespace formlab::context::detail
