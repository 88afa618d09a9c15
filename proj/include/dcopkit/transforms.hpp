#pragma once

#include "dcopkit/model.hpp"

namespace dcopkit {

// Replaces every constraint by one constraint over all variables whose table
// holds the aggregate cost of each full tuple. A problem that already has a
// single constraint over all variables (in id order) is returned unchanged.
// Entry revelation costs do not survive the merge and are dropped.
Problem merge_topology(const Problem& p, const Budget& budget = {});

// Re-encodes a constraint-owned problem as a domain-owned one. Each original
// constraint becomes a dual variable whose labels 1..k index the constraint's
// scope tuples in enumeration order; its unary constraint carries the
// original table, and hard compatibility constraints tie dual variables that
// share original variables.
Problem primal_dual_convert(const Problem& p);

// The scope tuple a dual label stands for (label k is the k-th tuple of the
// scope domains in declared order, counting from 1).
Tuple dual_label_tuple(const Problem& primal, const Constraint& c, Value label);

// Projects a full dual assignment back onto the original variables covered
// by some constraint.
Assignment recover_primal_assignment(const Problem& primal, const Assignment& dual);

// Sets x3.costs and x4 to agree with the problem content.
void reconcile_descriptor(Problem& p);

}  // namespace dcopkit
