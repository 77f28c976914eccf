#pragma once

#include <string>
#include <vector>

#include "aspcost/strips.hpp"
#include "test_support.hpp"

namespace aspcost::testing::mutex {

/// A deleter `a` and a consumer `b` of fluent f, both applicable in the
/// initial state {f, q}. The goal x needs only `a`.
struct DeleteCase {
  const char* name;
  ActionSpec a;
  ActionSpec b;
};

inline const std::vector<DeleteCase> kDeleteCases{
    {"case1", {"a", {"q"}, {"x"}, {"f"}, 1}, {"b", {"f"}, {"y"}, {}, 1}},
    {"case2", {"a", {"f"}, {"x"}, {"f"}, 1}, {"b", {"f"}, {"y"}, {}, 1}},
    {"case3", {"a", {"q"}, {"x"}, {"f"}, 1}, {"b", {"f"}, {"y"}, {"f"}, 1}},
    {"case4", {"a", {"f"}, {"x"}, {"f"}, 1}, {"b", {"f"}, {"y"}, {"f"}, 1}},
};

/// Rules forcing both `a` and `b` into layer 0.
inline const std::string kBothAtZero =
    "{happens(a,0); happens(b,0)}.\n:- not happens(a,0).\n:- not happens(b,0).\n";

inline GroundProblem delete_case_problem(const DeleteCase& c, bool keep_deletes = true) {
  auto a = c.a;
  auto b = c.b;
  if (!keep_deletes) {
    a.del.clear();
    b.del.clear();
  }
  return add_preserving_actions(make_problem({"f", "q", "x", "y"}, {a, b}, {"f", "q"}, {"x"}));
}

/// `a` adds f and `b` deletes it. With goal f the pair conflicts; with goal y
/// it does not.
inline GroundProblem conflicting_effects_problem(bool f_needed) {
  return add_preserving_actions(make_problem({"f", "q", "r", "y"},
                                             {{"a", {"q"}, {"f"}, {}, 1}, {"b", {"r"}, {"y"}, {"f"}, 1}},
                                             {"q", "r"}, {f_needed ? "f" : "y"}));
}

/// x and y both consume p, so f and g are mutex at layer 1 and the layer-1
/// actions a (needs f) and b (needs g) have mutex preconditions.
inline GroundProblem mutex_precondition_problem() {
  return add_preserving_actions(make_problem(
      {"p", "f", "g", "h", "i"},
      {{"x", {"p"}, {"f"}, {"p"}, 1}, {"y", {"p"}, {"g"}, {"p"}, 1}, {"a", {"f"}, {"h"}, {}, 1},
       {"b", {"g"}, {"i"}, {}, 1}},
      {"p"}, {"h"}));
}

/// Forces b at layer 1 on top of the goal, which needs a at layer 1.
inline const std::string kForceBAtOne = "{happens(b,1)}.\n:- not happens(b,1).\n";

}  // namespace aspcost::testing::mutex
