#include "polyimage/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace polyimage {

namespace {

// Row-reduces [A | b] in place, returns pivot column per pivot row.
// When b is null, reduces A alone.
std::vector<std::size_t> rref(RatMat& A, RatVec* b) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
        std::size_t p = r;
        while (p < A.rows && A.at(p, c) == 0) ++p;
        if (p == A.rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < A.cols; ++j) std::swap(A.at(p, j), A.at(r, j));
            if (b) std::swap((*b)[p], (*b)[r]);
        }
        Rat inv = Rat(1) / A.at(r, c);
        for (std::size_t j = c; j < A.cols; ++j) A.at(r, j) *= inv;
        if (b) (*b)[r] *= inv;
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i == r || A.at(i, c) == 0) continue;
            Rat f = A.at(i, c);
            for (std::size_t j = c; j < A.cols; ++j) A.at(i, j) -= f * A.at(r, j);
            if (b) (*b)[i] -= f * (*b)[r];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

LinearSolveResult linear_solve(const RatMat& A_in, const RatVec& b_in) {
    if (A_in.rows != b_in.size())
        throw std::invalid_argument("linear_solve: dimension mismatch");
    RatMat A = A_in;
    RatVec b = b_in;
    std::vector<std::size_t> pivots = rref(A, &b);

    for (std::size_t i = pivots.size(); i < A.rows; ++i)
        if (b[i] != 0) return {LinearSolveResult::Kind::Inconsistent, {}, {}};

    RatVec x(A.cols, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];

    if (pivots.size() == A.cols)
        return {LinearSolveResult::Kind::Unique, x, {}};

    // free columns span the null space
    std::vector<RatVec> basis;
    std::vector<bool> is_pivot(A.cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < A.cols; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(A.cols, Rat(0));
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -A.at(r, c);
        basis.push_back(std::move(v));
    }
    return {LinearSolveResult::Kind::Parametric, x, basis};
}

std::size_t rank(const RatMat& A_in) {
    RatMat A = A_in;
    return rref(A, nullptr).size();
}

std::vector<RatVec> null_space(const RatMat& A) {
    RatVec zero(A.rows, Rat(0));
    LinearSolveResult res = linear_solve(A, zero);
    return res.null_basis;
}

std::optional<RatMat> inverse(const RatMat& A_in) {
    assert(A_in.rows == A_in.cols);
    std::size_t n = A_in.rows;
    RatMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = A_in.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<std::size_t> pivots = rref(aug, nullptr);
    if (pivots.size() != n) return std::nullopt;
    RatMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

Rat determinant(const RatMat& A_in) {
    assert(A_in.rows == A_in.cols);
    RatMat A = A_in;
    std::size_t n = A.rows;
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && A.at(p, c) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A.at(p, j), A.at(c, j));
            det = -det;
        }
        det *= A.at(c, c);
        Rat inv = Rat(1) / A.at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (A.at(i, c) == 0) continue;
            Rat f = A.at(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) A.at(i, j) -= f * A.at(c, j);
        }
    }
    return det;
}

RatMat complete_to_basis(const std::vector<RatVec>& rows, std::size_t n) {
    std::vector<RatVec> chosen = rows;
    for (std::size_t e = 0; e < n && chosen.size() < n; ++e) {
        RatVec cand(n, Rat(0));
        cand[e] = 1;
        RatMat m(chosen.size() + 1, n);
        for (std::size_t i = 0; i < chosen.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = chosen[i][j];
        for (std::size_t j = 0; j < n; ++j) m.at(chosen.size(), j) = cand[j];
        if (rank(m) == chosen.size() + 1) chosen.push_back(cand);
    }
    if (chosen.size() != n)
        throw std::invalid_argument("complete_to_basis: input rows dependent");
    RatMat out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = chosen[i][j];
    return out;
}

}  // namespace polyimage
