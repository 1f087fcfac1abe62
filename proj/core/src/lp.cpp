#include "polyimage/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace polyimage {

namespace {

// Dense tableau simplex over exact rationals.
//
// Maximizes c.z subject to M z = b (b >= 0), z >= 0, starting from the given
// basic feasible basis. Bland's rule (smallest index) guarantees termination.
struct Tableau {
    std::size_t m, nvars;
    RatMat M;
    RatVec b;
    RatVec c;
    std::vector<std::size_t> basis;

    enum class Out { Optimal, Unbounded };
    std::size_t active_cols = 0;  // columns eligible to enter the basis

    Rat objective_value() const {
        Rat v(0);
        for (std::size_t i = 0; i < m; ++i) v += c[basis[i]] * b[i];
        return v;
    }

    void pivot(std::size_t row, std::size_t col) {
        Rat inv = Rat(1) / M.at(row, col);
        for (std::size_t j = 0; j < nvars; ++j) M.at(row, j) *= inv;
        b[row] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || M.at(i, col) == 0) continue;
            Rat f = M.at(i, col);
            for (std::size_t j = 0; j < nvars; ++j) M.at(i, j) -= f * M.at(row, j);
            b[i] -= f * b[row];
        }
        basis[row] = col;
    }

    // reduced cost of column j: c_j - c_B . M_col(j)
    Rat reduced_cost(std::size_t j) const {
        Rat r = c[j];
        for (std::size_t i = 0; i < m; ++i) {
            if (M.at(i, j) == 0) continue;
            r -= c[basis[i]] * M.at(i, j);
        }
        return r;
    }

    Out run() {
        if (active_cols == 0) active_cols = nvars;
        for (;;) {
            std::size_t enter = nvars;
            for (std::size_t j = 0; j < active_cols; ++j) {
                if (reduced_cost(j) > 0) { enter = j; break; }
            }
            if (enter == nvars) return Out::Optimal;

            std::size_t leave = m;
            Rat best;
            for (std::size_t i = 0; i < m; ++i) {
                if (M.at(i, enter) <= 0) continue;
                Rat ratio = b[i] / M.at(i, enter);
                if (leave == m || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return Out::Unbounded;
            pivot(leave, enter);
        }
    }
};

// Builds the phase-I / phase-II machinery for: optimize c.x over a.x <= b.
// Free x is split as x = u - v.
class SimplexSolver {
public:
    SimplexSolver(const LPProblem& p, bool maximize)
        : n_(p.n), m_(p.constraints.size()), maximize_(maximize) {
        for (const auto& cstr : p.constraints)
            if (cstr.a.size() != n_)
                throw std::invalid_argument("lp_solve: constraint dimension mismatch");
        if (p.sense != LPSense::Feasibility && p.objective.size() != n_)
            throw std::invalid_argument("lp_solve: objective dimension mismatch");
        build(p);
    }

    LPResult solve(const RatVec& objective) {
        if (!phase1()) return {LPResult::Kind::Infeasible, Rat(0), {}};
        // phase II; artificial columns may not re-enter the basis
        t_.active_cols = 2 * n_ + m_;
        t_.c.assign(total_, Rat(0));
        for (std::size_t j = 0; j < n_; ++j) {
            Rat cj = objective.empty() ? Rat(0) : objective[j];
            if (!maximize_) cj = -cj;
            t_.c[j] = cj;        // u_j
            t_.c[n_ + j] = -cj;  // v_j
        }
        Tableau::Out out = t_.run();
        if (out == Tableau::Out::Unbounded)
            return {LPResult::Kind::Unbounded, Rat(0), {}};
        Rat val = t_.objective_value();
        if (!maximize_) val = -val;
        return {LPResult::Kind::Optimal, val, extract_point()};
    }

private:
    std::size_t n_, m_, total_ = 0;
    bool maximize_;
    Tableau t_;
    std::vector<std::size_t> artificials_;

    void build(const LPProblem& p) {
        // columns: u(0..n-1), v(n..2n-1), slack(2n..2n+m-1), artificials appended
        std::size_t base_cols = 2 * n_ + m_;
        std::vector<std::size_t> art_rows;
        for (std::size_t i = 0; i < m_; ++i)
            if (p.constraints[i].b < 0) art_rows.push_back(i);
        total_ = base_cols + art_rows.size();

        t_.m = m_;
        t_.nvars = total_;
        t_.M = RatMat(m_, total_);
        t_.b.assign(m_, Rat(0));
        t_.c.assign(total_, Rat(0));
        t_.basis.assign(m_, 0);

        std::size_t next_art = base_cols;
        for (std::size_t i = 0; i < m_; ++i) {
            const LPConstraint& cstr = p.constraints[i];
            int s = cstr.b < 0 ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) {
                t_.M.at(i, j) = Rat(s) * cstr.a[j];
                t_.M.at(i, n_ + j) = Rat(-s) * cstr.a[j];
            }
            t_.M.at(i, 2 * n_ + i) = Rat(s);
            t_.b[i] = Rat(s) * cstr.b;
            if (s == 1) {
                t_.basis[i] = 2 * n_ + i;
            } else {
                t_.M.at(i, next_art) = 1;
                t_.basis[i] = next_art;
                artificials_.push_back(next_art);
                ++next_art;
            }
        }
    }

    bool phase1() {
        if (artificials_.empty()) return true;
        t_.c.assign(total_, Rat(0));
        for (std::size_t a : artificials_) t_.c[a] = -1;
        t_.run();  // maximize -(sum of artificials); bounded below by -sum b
        if (t_.objective_value() != 0) return false;
        // pivot any artificial still in the basis out of it
        std::size_t first_art = 2 * n_ + m_;
        for (std::size_t i = 0; i < m_; ++i) {
            if (t_.basis[i] < first_art) continue;
            std::size_t col = total_;
            for (std::size_t j = 0; j < first_art; ++j)
                if (t_.M.at(i, j) != 0) { col = j; break; }
            if (col != total_) t_.pivot(i, col);
            // else: the row is identically zero over the real columns and
            // stays parked on its zero-valued artificial
        }
        return true;
    }

    RatVec extract_point() const {
        RatVec z(total_, Rat(0));
        for (std::size_t i = 0; i < m_; ++i) z[t_.basis[i]] = t_.b[i];
        RatVec x(n_);
        for (std::size_t j = 0; j < n_; ++j) x[j] = z[j] - z[n_ + j];
        return x;
    }
};

}  // namespace

LPResult lp_solve_basic(const LPProblem& p) {
    if (p.sense == LPSense::Feasibility) {
        SimplexSolver s(p, true);
        RatVec zero(p.n, Rat(0));
        LPResult r = s.solve(zero);
        if (r.kind == LPResult::Kind::Optimal) r.value = 0;
        return r;
    }
    SimplexSolver s(p, p.sense == LPSense::Maximize);
    return s.solve(p.objective);
}

LPResult lp_solve(const LPProblem& p) {
    LPResult r = lp_solve_basic(p);
    if (r.kind != LPResult::Kind::Optimal) return r;
    if (p.sense == LPSense::Feasibility) return r;

    // Lexicographic refinement: pin the objective value, then minimize the
    // coordinates one at a time. Aborted coordinate-wise if unbounded (the
    // optimal face has no lexicographic minimum in that case).
    LPProblem q;
    q.n = p.n;
    q.sense = LPSense::Minimize;
    q.constraints = p.constraints;
    RatVec c = p.objective;
    Rat v = r.value;
    q.constraints.push_back({c, v});
    RatVec negc(p.n);
    for (std::size_t j = 0; j < p.n; ++j) negc[j] = -c[j];
    q.constraints.push_back({negc, -v});

    RatVec point = r.point;
    for (std::size_t i = 0; i < p.n; ++i) {
        RatVec obj(p.n, Rat(0));
        obj[i] = 1;
        q.objective = obj;
        LPResult ri = lp_solve_basic(q);
        if (ri.kind != LPResult::Kind::Optimal) return r;  // unbounded face
        point = ri.point;
        RatVec e(p.n, Rat(0));
        e[i] = 1;
        q.constraints.push_back({e, ri.value});
        RatVec ne(p.n, Rat(0));
        ne[i] = -1;
        q.constraints.push_back({ne, -ri.value});
    }
    r.point = point;
    return r;
}

}  // namespace polyimage
