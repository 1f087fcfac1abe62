#include <doctest.h>

#include "polyimage/linalg.hpp"
#include "polyimage/lp.hpp"
#include "polyimage/rat.hpp"
#include "polyimage/uroots.hpp"

#include <random>

using namespace polyimage;

namespace {

RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

RatMat mat(std::size_t r, std::size_t c, std::initializer_list<long> xs) {
    RatMat m(r, c);
    std::size_t k = 0;
    for (long x : xs) m.data[k++] = Rat(x);
    return m;
}

// Independent LP oracle: enumerate all n-subsets of constraints, solve the
// equality systems, keep feasible intersection points, compare objectives.
// Only meaningful when the optimum is attained at a vertex.
struct OracleOpt {
    bool feasible_vertex = false;
    Rat best;
};

OracleOpt lp_vertex_oracle(const LPProblem& p) {
    OracleOpt out;
    std::size_t m = p.constraints.size(), n = p.n;
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    std::vector<std::size_t> comb;
    auto consider = [&](const std::vector<std::size_t>& sel) {
        RatMat A(sel.size(), n);
        RatVec b(sel.size());
        for (std::size_t r = 0; r < sel.size(); ++r) {
            for (std::size_t j = 0; j < n; ++j) A.at(r, j) = p.constraints[sel[r]].a[j];
            b[r] = p.constraints[sel[r]].b;
        }
        auto res = linear_solve(A, b);
        if (res.kind != LinearSolveResult::Kind::Unique) return;
        for (const auto& c : p.constraints) {
            Rat lhs = vec_dot(c.a, res.particular);
            if (lhs > c.b) return;
        }
        Rat val = vec_dot(p.objective, res.particular);
        if (!out.feasible_vertex) {
            out.feasible_vertex = true;
            out.best = val;
        } else if (p.sense == LPSense::Maximize ? val > out.best : val < out.best) {
            out.best = val;
        }
    };
    // all subsets of size n
    std::vector<std::size_t> sel(n);
    std::vector<std::size_t> stack;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                            std::size_t depth) {
        if (depth == n) {
            consider(stack);
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            stack.push_back(idx[i]);
            rec(i + 1, depth + 1);
            stack.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(rat_parse("3/6") == Rat(1, 2));
    CHECK(rat_parse("-4/2") == Rat(-2));
    CHECK(rat_str(rat_parse("10/-4")) == "-5/2");
    CHECK(rat_parse("7") == Rat(7));
    CHECK_THROWS(rat_parse("1/0"));
    Rat q = rat_parse("-6/8");
    CHECK(q.get_den() == 4);  // positive denominator, reduced
    CHECK(q.get_num() == -3);
}

TEST_CASE("linear_solve identity case") {
    auto r = linear_solve(RatMat::identity(2), rv({1, 2}));
    REQUIRE(r.kind == LinearSolveResult::Kind::Unique);
    CHECK(r.particular == rv({1, 2}));
}

TEST_CASE("linear_solve inconsistent rows") {
    auto r = linear_solve(mat(2, 2, {1, 1, 1, 1}), rv({1, 2}));
    CHECK(r.kind == LinearSolveResult::Kind::Inconsistent);
}

TEST_CASE("linear_solve one-equation family") {
    auto r = linear_solve(mat(1, 2, {1, 1}), rv({1}));
    REQUIRE(r.kind == LinearSolveResult::Kind::Parametric);
    REQUIRE(r.null_basis.size() == 1);
    // particular + basis span: check A x = b for particular and A v = 0
    CHECK(r.particular[0] + r.particular[1] == Rat(1));
    CHECK(r.null_basis[0][0] + r.null_basis[0][1] == Rat(0));
}

TEST_CASE("linear_solve of A*x reproduces a solution exactly") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 3;
        RatMat A(n, n);
        RatVec x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rat(static_cast<long>(rng() % 19) - 9, 1 + rng() % 4);
            for (std::size_t j = 0; j < n; ++j)
                A.at(i, j) = Rat(static_cast<long>(rng() % 11) - 5);
        }
        RatVec b = A.apply(x);
        auto r = linear_solve(A, b);
        REQUIRE(r.kind != LinearSolveResult::Kind::Inconsistent);
        CHECK(A.apply(r.particular) == b);
    }
}

TEST_CASE("lp_solve single variable") {
    LPProblem p;
    p.n = 1;
    p.sense = LPSense::Maximize;
    p.objective = rv({1});
    p.constraints.push_back({rv({1}), Rat(3)});
    p.constraints.push_back({rv({-1}), Rat(0)});
    auto r = lp_solve(p);
    REQUIRE(r.kind == LPResult::Kind::Optimal);
    CHECK(r.value == Rat(3));
    CHECK(r.point == rv({3}));
}

TEST_CASE("lp_solve open direction is unbounded") {
    LPProblem p;
    p.n = 1;
    p.sense = LPSense::Maximize;
    p.objective = rv({1});
    p.constraints.push_back({rv({-1}), Rat(0)});
    CHECK(lp_solve(p).kind == LPResult::Kind::Unbounded);
}

TEST_CASE("lp_solve contradictory bounds infeasible") {
    LPProblem p;
    p.n = 1;
    p.sense = LPSense::Feasibility;
    p.constraints.push_back({rv({1}), Rat(-1)});   // x <= -1
    p.constraints.push_back({rv({-1}), Rat(0)});   // x >= 0
    CHECK(lp_solve(p).kind == LPResult::Kind::Infeasible);
}

TEST_CASE("lp optimum is a vertex and satisfies constraints exactly") {
    std::mt19937 rng(13);
    int solved = 0;
    for (int trial = 0; trial < 40; ++trial) {
        LPProblem p;
        p.n = 2;
        p.sense = LPSense::Maximize;
        p.objective = {Rat(static_cast<long>(rng() % 7) - 3),
                       Rat(static_cast<long>(rng() % 7) - 3)};
        // random constraints plus a bounding box so the optimum is attained
        p.constraints.push_back({rv({1, 0}), Rat(5)});
        p.constraints.push_back({rv({-1, 0}), Rat(5)});
        p.constraints.push_back({rv({0, 1}), Rat(5)});
        p.constraints.push_back({rv({0, -1}), Rat(5)});
        for (int k = 0; k < 3; ++k) {
            RatVec a = {Rat(static_cast<long>(rng() % 9) - 4),
                        Rat(static_cast<long>(rng() % 9) - 4)};
            p.constraints.push_back({a, Rat(static_cast<long>(rng() % 9) - 1)});
        }
        auto r = lp_solve(p);
        if (r.kind != LPResult::Kind::Optimal) continue;
        ++solved;
        for (const auto& c : p.constraints) CHECK(vec_dot(c.a, r.point) <= c.b);
        CHECK(vec_dot(p.objective, r.point) == r.value);
        auto oracle = lp_vertex_oracle(p);
        REQUIRE(oracle.feasible_vertex);
        CHECK(oracle.best == r.value);
        // exactly n linearly independent active constraints at the point
        std::vector<RatVec> active;
        for (const auto& c : p.constraints)
            if (vec_dot(c.a, r.point) == c.b) active.push_back(c.a);
        RatMat m(active.size(), 2);
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = 0; j < 2; ++j) m.at(i, j) = active[i][j];
        CHECK(rank(m) == 2);
    }
    CHECK(solved > 10);
}

TEST_CASE("root isolation: t^2 - 2") {
    UPoly f = {Rat(-2), Rat(0), Rat(1)};
    auto iso = isolate_real_roots(f);
    REQUIRE(iso.intervals.size() == 2);
    for (auto& iv : iso.intervals) {
        refine_root(f, iv, Rat(1, 1000000));
        CHECK(iv.width() <= Rat(1, 1000000));
    }
    // roots straddle +-sqrt(2)
    CHECK(iso.intervals[0].hi < 0);
    CHECK(iso.intervals[1].lo > 0);
    CHECK(sign_at(f, iso.intervals[1].lo) * sign_at(f, iso.intervals[1].hi) <= 0);
}

TEST_CASE("root isolation: t(1+t^2) has exactly one real root") {
    UPoly f = {Rat(0), Rat(1), Rat(0), Rat(1)};
    auto iso = isolate_real_roots(f);
    REQUIRE(iso.intervals.size() == 1);
    CHECK(iso.intervals[0].lo <= 0);
    CHECK(iso.intervals[0].hi >= 0);
}

TEST_CASE("root isolation: triple root at zero") {
    UPoly f = {Rat(0), Rat(0), Rat(0), Rat(1)};  // t^3
    auto iso = isolate_real_roots(f);
    REQUIRE(iso.intervals.size() == 1);
    CHECK(iso.intervals[0].lo <= 0);
    CHECK(iso.intervals[0].hi >= 0);
}

TEST_CASE("sturm count matches a dense sampling oracle") {
    // (t-1)(t+2)(2t-3) = 2t^3 + ... expand: (t-1)(t+2) = t^2+t-2;
    // times (2t-3): 2t^3 + 2t^2 - 4t - 3t^2 - 3t + 6 = 2t^3 - t^2 - 7t + 6
    UPoly f = {Rat(6), Rat(-7), Rat(-1), Rat(2)};
    CHECK(count_distinct_real_roots(f) == 3);
    CHECK(count_distinct_roots_in(f, Rat(0), Rat(2)) == 2);   // 1 and 3/2
    CHECK(count_distinct_roots_in(f, Rat(-3), Rat(0)) == 1);  // -2
    auto iso = isolate_real_roots(f);
    REQUIRE(iso.intervals.size() == 3);
    for (auto& iv : iso.intervals) {
        refine_root(f, iv, Rat(1, 1024));
        if (iv.exact())
            CHECK(upeval(f, iv.lo) == 0);
        else
            CHECK(sign_at(f, iv.lo) * sign_at(f, iv.hi) < 0);
    }
}
