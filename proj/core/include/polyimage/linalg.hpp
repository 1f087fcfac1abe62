#ifndef POLYIMAGE_LINALG_HPP
#define POLYIMAGE_LINALG_HPP

#include "polyimage/rat.hpp"

#include <optional>
#include <vector>

namespace polyimage {

struct LinearSolveResult {
    enum class Kind { Unique, Inconsistent, Parametric } kind;
    RatVec particular;               // valid for Unique and Parametric
    std::vector<RatVec> null_basis;  // nonempty exactly for Parametric
};

// Exact Gaussian elimination. Returns the unique solution, reports
// inconsistency, or returns a particular solution plus a null-space basis.
LinearSolveResult linear_solve(const RatMat& A, const RatVec& b);

std::size_t rank(const RatMat& A);
std::vector<RatVec> null_space(const RatMat& A);
std::optional<RatMat> inverse(const RatMat& A);
Rat determinant(const RatMat& A);

// Deterministically extends the given independent rows to a basis of R^n by
// appending standard basis vectors (smallest index first).
RatMat complete_to_basis(const std::vector<RatVec>& rows, std::size_t n);

}  // namespace polyimage

#endif
