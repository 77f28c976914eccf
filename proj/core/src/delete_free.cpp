#include "aspcost/delete_free.hpp"

#include <algorithm>

#include "aspcost/errors.hpp"

namespace aspcost {

DeleteFreeSolve solve_delete_free(const GroundProblem& problem, DeleteFreeDirection direction,
                                  const SolverDriver& driver, std::chrono::duration<double> timeout,
                                  std::stop_token stop) {
  const auto program = emit_delete_free(problem, direction);
  SolveRequest req;
  req.program = program.text;
  req.timeout = timeout;
  req.name = program.kind;
  const auto res = driver.solve(req, stop);

  DeleteFreeSolve out;
  out.status = res.status;
  out.wall_time = res.wall_time;
  if (!res.best_model) return out;
  Cost cost = 0;
  for (const auto& atom : *res.best_model) {
    if (!atom.is("happens", 1)) throw MalformedModel("unexpected atom " + atom.render());
    const auto id = problem.find_action(atom.arg(0).render());
    if (!id || problem.action(*id).preserving) throw MalformedModel("unknown action in " + atom.render());
    out.actions.push_back(*id);
    cost += problem.action(*id).cost;
  }
  std::sort(out.actions.begin(), out.actions.end());
  out.cost = cost;
  return out;
}

}  // namespace aspcost
