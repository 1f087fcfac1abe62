#ifndef POLYIMAGE_LP_HPP
#define POLYIMAGE_LP_HPP

#include "polyimage/rat.hpp"

#include <vector>

namespace polyimage {

// a . x <= b over free variables
struct LPConstraint {
    RatVec a;
    Rat b;
};

enum class LPSense { Minimize, Maximize, Feasibility };

struct LPProblem {
    std::size_t n = 0;
    LPSense sense = LPSense::Minimize;
    RatVec objective;  // ignored for Feasibility
    std::vector<LPConstraint> constraints;
};

struct LPResult {
    enum class Kind { Optimal, Unbounded, Infeasible } kind;
    Rat value;    // objective value (0 for Feasibility)
    RatVec point;  // optimal / feasible point
};

// Exact simplex with Bland's rule; no tolerances anywhere. When the optimal
// face is bounded the returned point is its lexicographically smallest point,
// which is a vertex of the feasible region.
LPResult lp_solve(const LPProblem& p);

// Single phase-II style solve without the lexicographic refinement.
LPResult lp_solve_basic(const LPProblem& p);

}  // namespace polyimage

#endif
