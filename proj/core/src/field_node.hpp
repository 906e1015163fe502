#pragma once

#include <string>

#include "cx/fields.hpp"

namespace cx::detail {

struct NodeEval {
  Jet jet;
  bool on_interface = false;
  /// The field vanishes identically in a neighborhood of the point.
  bool zero = false;
};

class FieldNode {
 public:
  virtual ~FieldNode() = default;

  virtual NodeEval eval(Point x, int order) const = 0;
  virtual std::string describe() const = 0;

  SingularSet singular;
  bool vanishes_near_vertex = false;
};

}  // namespace cx::detail
