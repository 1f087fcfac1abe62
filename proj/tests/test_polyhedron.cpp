#include <doctest.h>

#include "polyimage/lp.hpp"
#include "polyimage/polyhedron.hpp"

#include <random>

using namespace polyimage;

namespace {

HalfSpace hs(std::initializer_list<long> coeffs) {
    HalfSpace h;
    for (long c : coeffs) h.coeffs.push_back(Rat(c));
    return h;
}

Polyhedron unit_square() {
    return Polyhedron::box({{Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}});
}

RatVec pt(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

AffineMap random_invertible(std::mt19937& rng, std::size_t n) {
    for (;;) {
        RatMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) = rat(static_cast<long>(rng() % 7) - 3);
        if (determinant(m) == 0) continue;
        RatVec t(n);
        for (auto& v : t) v = rat(static_cast<long>(rng() % 9) - 4);
        return AffineMap(m, t);
    }
}

}  // namespace

TEST_CASE("minimal presentation drops the redundant member") {
    // {x1 >= 0, x2 >= 0, x1 + x2 >= -1}: third is redundant
    Polyhedron K(2, {hs({0, 1, 0}), hs({0, 0, 1}), hs({1, 1, 1})});
    auto idx = K.minimal_indices();
    REQUIRE(idx.size() == 2);
    CHECK(idx[0] == 0);
    CHECK(idx[1] == 1);

    // oracle: membership is unchanged after dropping the member
    Polyhedron M = K.minimal_presentation();
    std::mt19937 rng(2);
    for (int t = 0; t < 200; ++t) {
        RatVec x = {rat(static_cast<long>(rng() % 21) - 10, 1 + rng() % 3),
                    rat(static_cast<long>(rng() % 21) - 10, 1 + rng() % 3)};
        CHECK(K.contains(x, false) == M.contains(x, false));
    }
}

TEST_CASE("R^n has the empty presentation") {
    Polyhedron K(3, {});
    CHECK(K.is_full_space());
    CHECK(K.minimal_indices().empty());
    CHECK(K.classify() == PolyClass::FullSpace);
}

TEST_CASE("unit square is already minimal") {
    Polyhedron K = unit_square();
    CHECK(K.minimal_indices().size() == 4);
}

TEST_CASE("dim and lineality") {
    Polyhedron half(3, {hs({0, 1, 0, 0})});
    CHECK(half.dim() == 3);
    CHECK(half.lineality_basis().size() == 2);

    Polyhedron sq = unit_square();
    CHECK(sq.dim() == 2);
    CHECK(sq.lineality_basis().empty());

    // layer {-1 <= x1 <= 1} in R^2
    Polyhedron layer(2, {hs({1, 1, 0}), hs({1, -1, 0})});
    CHECK(layer.dim() == 2);
    CHECK(layer.lineality_basis().size() == 1);
    CHECK(layer.classify() == PolyClass::Layer);
}

TEST_CASE("boundedness") {
    Polyhedron cube = Polyhedron::box(
        {{Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}});
    CHECK(cube.is_bounded());
    CHECK(!Polyhedron::orthant(3).is_bounded());
    // {x1>=0, x2>=0, x1+x2<=1}
    Polyhedron tri(2, {hs({0, 1, 0}), hs({0, 0, 1}), hs({1, -1, -1})});
    CHECK(tri.is_bounded());
    // LP oracle cross-check: every coordinate attains finite extrema
    for (std::size_t i = 0; i < 2; ++i) {
        RatVec f(3, Rat(0));
        f[i + 1] = 1;
        CHECK(tri.maximize(f).kind == Polyhedron::Extremum::Kind::Value);
        CHECK(tri.minimize(f).kind == Polyhedron::Extremum::Kind::Value);
    }
}

TEST_CASE("classification") {
    Polyhedron layer(2, {hs({1, 1, 0}), hs({1, -1, 0})});
    CHECK(layer.classify() == PolyClass::Layer);

    Polyhedron half(2, {hs({0, 1, 0})});
    CHECK(half.classify() == PolyClass::Halfspace);

    CHECK(Polyhedron::orthant(2).classify() == PolyClass::Nondegenerate);

    // hyperplane {x1 = 0} in R^2 as two opposite half-spaces
    Polyhedron hyp(2, {hs({0, 1, 0}), hs({0, -1, 0})});
    CHECK(hyp.classify() == PolyClass::Hyperplane);

    // segment {0} x [0,1] in R^2
    Polyhedron seg(2, {hs({0, 1, 0}), hs({0, -1, 0}), hs({0, 0, 1}), hs({1, 0, -1})});
    CHECK(seg.classify() == PolyClass::LowerDimensional);
    CHECK(seg.dim() == 1);

    // prism: triangle x R in R^3
    Polyhedron prism(3, {hs({0, 1, 0, 0}), hs({0, 0, 1, 0}), hs({1, -1, -1, 0})});
    CHECK(prism.classify() == PolyClass::DegenerateProduct);

    // scaled layer whose two normals are proportional but not equal-length
    Polyhedron layer2(2, {hs({0, 2, 0}), hs({1, -1, 0})});
    CHECK(layer2.classify() == PolyClass::Layer);
}

TEST_CASE("classify is invariant under invertible affine maps") {
    std::mt19937 rng(9);
    std::vector<Polyhedron> polys = {
        unit_square(),
        Polyhedron::orthant(2),
        Polyhedron(2, {hs({1, 1, 0}), hs({1, -1, 0})}),
        Polyhedron(2, {hs({0, 1, 0})}),
    };
    for (const auto& K : polys) {
        PolyClass c = K.classify();
        for (int t = 0; t < 6; ++t) {
            AffineMap T = random_invertible(rng, 2);
            CHECK(K.transformed(T).classify() == c);
        }
    }
}

TEST_CASE("find_vertex") {
    auto [v3, act3] = Polyhedron::orthant(3).find_vertex();
    CHECK(v3 == pt({0, 0, 0}));
    CHECK(act3.size() == 3);

    Polyhedron shifted(2, {hs({-1, 1, 0}), hs({-2, 0, 1})});  // x1>=1, x2>=2
    auto [v2, act2] = shifted.find_vertex();
    CHECK(v2 == pt({1, 2}));

    // simplex conv{0, e1, e2}: lexicographically smallest vertex is (0,0)
    Polyhedron tri(2, {hs({0, 1, 0}), hs({0, 0, 1}), hs({1, -1, -1})});
    auto [vt, actt] = tri.find_vertex();
    CHECK(vt == pt({0, 0}));

    Polyhedron degen(2, {hs({0, 1, 0})});
    CHECK_THROWS(degen.find_vertex());
}

TEST_CASE("fiber_interval") {
    Polyhedron sq = unit_square();
    FiberInterval f = sq.fiber_interval({Rat(0)});
    CHECK(f.status == FiberInterval::Status::Segment);
    CHECK(*f.lower == Rat(-1));
    CHECK(*f.upper == Rat(1));

    FiberInterval e = Polyhedron::orthant(2).fiber_interval({Rat(-1)});
    CHECK(e.status == FiberInterval::Status::Empty);

    // K1 = {x1+x3>=0, x1-x3>=0} in R^3, fiber over (a1,a2) with a1>=0 is [-a1,a1]
    Polyhedron K1(3, {hs({0, 1, 0, 1}), hs({0, 1, 0, -1})});
    FiberInterval g = K1.fiber_interval({Rat(2), Rat(7)});
    CHECK(g.status == FiberInterval::Status::Segment);
    CHECK(*g.lower == Rat(-2));
    CHECK(*g.upper == Rat(2));
    FiberInterval g0 = K1.fiber_interval({Rat(0), Rat(7)});
    CHECK(g0.status == FiberInterval::Status::Point);

    // endpoint lemma: a finite endpoint lies on a facet nonparallel to e_n
    FiberInterval q = Polyhedron::orthant(2).fiber_interval({Rat(3)});
    CHECK(q.status == FiberInterval::Status::UpperRay);
    CHECK(*q.lower == Rat(0));
}

TEST_CASE("containment, closed and interior") {
    Polyhedron sq = unit_square();
    CHECK(sq.contains(pt({0, 0}), true));
    CHECK(!sq.contains(pt({1, 0}), true));
    CHECK(sq.contains(pt({1, 0}), false));
    CHECK(!Polyhedron::orthant(2).contains(pt({0, 0}), true));
    CHECK(Polyhedron::orthant(2).contains(pt({0, 0}), false));

    // interior membership implies closed membership at sampled points
    std::mt19937 rng(21);
    for (int t = 0; t < 100; ++t) {
        RatVec x = {rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3),
                    rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3)};
        if (sq.contains(x, true)) CHECK(sq.contains(x, false));
    }

    // relative interior of the segment {0} x [0,1]
    Polyhedron seg(2, {hs({0, 1, 0}), hs({0, -1, 0}), hs({0, 0, 1}), hs({1, 0, -1})});
    CHECK(seg.contains({Rat(0), rat(1, 2)}, true));
    CHECK(!seg.contains(pt({0, 0}), true));
    CHECK(seg.contains(pt({0, 0}), false));
    CHECK(!seg.contains({rat(1, 100), rat(1, 2)}, true));
}

TEST_CASE("bounding box") {
    CHECK(unit_square().bounding_box() ==
          std::vector<std::pair<Rat, Rat>>{{Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}});

    Polyhedron tri(2, {hs({0, 1, 0}), hs({0, 0, 1}), hs({1, -1, -1})});
    CHECK(tri.bounding_box() ==
          std::vector<std::pair<Rat, Rat>>{{Rat(0), Rat(1)}, {Rat(0), Rat(1)}});

    // degenerate segment {0} x [0,1]
    Polyhedron seg(2, {hs({0, 1, 0}), hs({0, -1, 0}), hs({0, 0, 1}), hs({1, 0, -1})});
    CHECK(seg.bounding_box() ==
          std::vector<std::pair<Rat, Rat>>{{Rat(0), Rat(0)}, {Rat(0), Rat(1)}});

    CHECK_THROWS(Polyhedron::orthant(2).bounding_box());
}

TEST_CASE("facet witness exists for every minimal member") {
    std::vector<Polyhedron> polys = {
        unit_square(),
        Polyhedron::orthant(3),
        Polyhedron(2, {hs({0, 1, 0}), hs({0, 0, 1}), hs({-1, 1, 1})}),
    };
    for (const auto& K : polys) {
        auto idx = K.minimal_indices();
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            // maximize t subject to h_i = 0, h_j >= t for j != i, t <= 1
            std::size_t n = K.ambient_dim();
            LPProblem p;
            p.n = n + 1;
            p.sense = LPSense::Maximize;
            p.objective.assign(n + 1, Rat(0));
            p.objective[n] = 1;
            auto add = [&](RatVec a, Rat b) { p.constraints.push_back({a, b}); };
            for (std::size_t k = 0; k < idx.size(); ++k) {
                const HalfSpace& h = K.halfspaces()[idx[k]];
                RatVec a(n + 1, Rat(0));
                for (std::size_t j = 0; j < n; ++j) a[j] = -h.coeffs[j + 1];
                if (k == pos) {
                    add(a, h.coeffs[0]);  // h_i <= 0 via -h_i >= 0? (h_i = 0 below)
                    RatVec na(n + 1, Rat(0));
                    for (std::size_t j = 0; j < n; ++j) na[j] = h.coeffs[j + 1];
                    add(na, -h.coeffs[0]);  // h_i >= 0
                } else {
                    a[n] = 1;
                    add(a, h.coeffs[0]);  // h_j >= t
                }
            }
            RatVec cap(n + 1, Rat(0));
            cap[n] = 1;
            add(cap, Rat(1));
            LPResult r = lp_solve(p);
            REQUIRE(r.kind == LPResult::Kind::Optimal);
            CHECK(r.value > 0);
        }
    }
}

TEST_CASE("empty polyhedron is detected and guarded") {
    Polyhedron empty(2, {hs({-1, 1, 0}), hs({-1, -1, 0})});  // x1>=1 and x1<=-1
    CHECK(empty.is_empty());
    CHECK(empty.classify() == PolyClass::Empty);
    CHECK(empty.dim() == -1);
    CHECK_THROWS(empty.minimal_indices());
}
