#pragma once

#include <string>

#include "dcopkit/errors.hpp"

namespace dcopkit {

template <typename Visit>
void for_each_assignment(const Problem& p, const Budget& budget, Visit&& visit) {
  const std::size_t total = search_space_size(p);
  if (total > budget.max_tuples)
    throw ResourceError("search space of " + std::to_string(total) +
                        " tuples exceeds the enumeration budget of " +
                        std::to_string(budget.max_tuples));
  if (total == 0) return;

  std::vector<std::size_t> odometer(p.variables.size(), 0);
  Assignment current;
  for (const Variable& v : p.variables) current[v.id] = v.domain.front();
  while (true) {
    visit(static_cast<const Assignment&>(current));
    std::size_t pos = p.variables.size();
    while (pos > 0) {
      --pos;
      const Variable& v = p.variables[pos];
      if (++odometer[pos] < v.domain.size()) {
        current[v.id] = v.domain[odometer[pos]];
        break;
      }
      odometer[pos] = 0;
      current[v.id] = v.domain.front();
      if (pos == 0) return;
    }
    if (p.variables.empty()) return;
  }
}

}  // namespace dcopkit
