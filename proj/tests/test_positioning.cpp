#include <doctest.h>

#include "polyimage/positioning.hpp"

#include <random>

using namespace polyimage;

namespace {

HalfSpace hs(std::initializer_list<long> coeffs) {
    HalfSpace h;
    for (long c : coeffs) h.coeffs.push_back(Rat(c));
    return h;
}

Polyhedron cube2() { return Polyhedron::box({{Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}}); }

// K1 of the orthant construction in R^3
Polyhedron orthant_K1() {
    return Polyhedron(3, {hs({0, 1, 0, 1}), hs({0, 1, 0, -1})});
}

RatVec random_base(std::mt19937& rng, std::size_t m) {
    RatVec a(m);
    for (auto& v : a) v = rat(static_cast<long>(rng() % 17) - 8, 1 + rng() % 3);
    return a;
}

}  // namespace

TEST_CASE("first position: bounded polyhedra are strong") {
    auto rep = check_first_position(cube2());
    CHECK(rep.strong_or_better());
}

TEST_CASE("first position: the orthant-lemma cone is optimal") {
    auto rep = check_first_position(orthant_K1());
    CHECK(rep.strength == PositionReport::Strength::Optimal);
}

TEST_CASE("first position: half-plane with ray fibers is not weak") {
    Polyhedron K(2, {hs({0, 0, 1})});  // x2 >= 0
    auto rep = check_first_position(K);
    CHECK(rep.strength == PositionReport::Strength::NotInPosition);
}

TEST_CASE("second position: lower half-plane is extreme and optimal") {
    Polyhedron K(2, {hs({0, 0, -1})});  // x2 <= 0
    auto rep = check_second_position(K);
    CHECK(rep.at_least_weak());
    CHECK(rep.strength == PositionReport::Strength::Optimal);
    REQUIRE(rep.extreme_facet.has_value());
}

TEST_CASE("second position: bounded polyhedra are strong, upper rays fail") {
    CHECK(check_second_position(cube2()).strong_or_better());
    Polyhedron up(2, {hs({0, 0, 1})});
    CHECK(check_second_position(up).strength == PositionReport::Strength::NotInPosition);
}

TEST_CASE("place_extreme_first: bounded case") {
    Polyhedron K = cube2();
    for (std::size_t pos = 0; pos < K.minimal_indices().size(); ++pos) {
        AffineMap T = place_extreme_first(K, pos);
        Polyhedron TK = K.transformed(T);
        auto rep = check_first_position(TK);
        CHECK(rep.at_least_weak());
        REQUIRE(rep.extreme_facet.has_value());
        // inverse composes to the identity exactly
        AffineMap I = T.inverse().after(T);
        CHECK(I.linear().data == RatMat::identity(2).data);
        CHECK(vec_is_zero(I.translation()));
    }
}

TEST_CASE("place_extreme_first: orthant in R^3 gets bounded fibers") {
    Polyhedron K = Polyhedron::orthant(3);
    AffineMap T = place_extreme_first(K, 2);  // facet {x3 = 0}
    Polyhedron TK = K.transformed(T);
    auto rep = check_first_position(TK);
    CHECK(rep.at_least_weak());
    REQUIRE(rep.extreme_facet.has_value());

    std::mt19937 rng(4);
    for (int t = 0; t < 50; ++t) {
        FiberInterval f = TK.fiber_interval(random_base(rng, 2));
        CHECK((f.status == FiberInterval::Status::Empty ||
               f.status == FiberInterval::Status::Point ||
               f.status == FiberInterval::Status::Segment));
    }
}

TEST_CASE("place_extreme_first: n = 2 facet fallback") {
    // truncated cone {x1>=0, x2>=0, x1+x2>=1}: some facet admits the placement
    Polyhedron K(2, {hs({0, 1, 0}), hs({0, 0, 1}), hs({-1, 1, 1})});
    bool placed = false;
    for (std::size_t pos = 0; pos < K.minimal_indices().size() && !placed; ++pos) {
        try {
            AffineMap T = place_extreme_first(K, pos);
            auto rep = check_first_position(K.transformed(T));
            CHECK(rep.at_least_weak());
            CHECK(rep.extreme_facet.has_value());
            placed = true;
        } catch (const PlacementError&) {
        }
    }
    CHECK(placed);

    // the left-opening cone {x1 <= -|x2|} is in weak first position but no
    // facet admits an extreme placement: both facet directions are recession
    // directions, so every facet must fail (the n = 2 base-map case)
    Polyhedron C(2, {hs({0, -1, 1}), hs({0, -1, -1})});
    CHECK(check_first_position(C).at_least_weak());
    for (std::size_t pos = 0; pos < C.minimal_indices().size(); ++pos)
        CHECK_THROWS_AS(place_extreme_first(C, pos), PlacementError);
}

TEST_CASE("place_extreme_second") {
    // {x1 <= 0} in R^2, facet {x1 = 0}
    Polyhedron K(2, {hs({0, -1, 0})});
    AffineMap T = place_extreme_second(K, 0);
    Polyhedron TK = K.transformed(T);
    RatVec f = {Rat(0), Rat(0), Rat(1)};
    auto mx = TK.maximize(f);
    REQUIRE(mx.kind == Polyhedron::Extremum::Kind::Value);
    CHECK(mx.value == 0);

    // cube facet {x1 = 1}: find its minimal position first
    Polyhedron cube = cube2();
    std::size_t pos = 0;
    for (std::size_t p = 0; p < cube.minimal_indices().size(); ++p) {
        const HalfSpace& h = cube.halfspaces()[cube.minimal_indices()[p]];
        if (h.coeffs[1] == -1) pos = p;  // 1 - x1 >= 0
    }
    AffineMap T2 = place_extreme_second(cube, pos);
    Polyhedron TK2 = cube.transformed(T2);
    auto mx2 = TK2.maximize(f);
    REQUIRE(mx2.kind == Polyhedron::Extremum::Kind::Value);
    CHECK(mx2.value == 0);
    auto rep = check_second_position(TK2);
    CHECK(rep.strong_or_better());
    CHECK(rep.extreme_facet.has_value());
}

TEST_CASE("facet removal keeps first trimming position") {
    // families: cube and simplex, placed extreme first w.r.t. facet 0
    std::vector<Polyhedron> ks = {
        cube2(),
        Polyhedron(2, {hs({0, 1, 0}), hs({0, 0, 1}), hs({1, -1, -1})}),
        Polyhedron(3, {hs({0, 1, 0, 0}), hs({0, 0, 1, 0}), hs({0, 0, 0, 1}),
                       hs({1, -1, -1, -1})}),
    };
    for (const auto& K : ks) {
        AffineMap T = place_extreme_first(K, 0);
        Polyhedron TK = K.transformed(T);
        auto rep = check_first_position(TK);
        REQUIRE(rep.at_least_weak());
        REQUIRE(rep.extreme_facet.has_value());
        Polyhedron dropped = TK.drop_minimal_member(*rep.extreme_facet);
        auto rep2 = check_first_position(dropped);
        CHECK(rep2.at_least_weak());
        if (rep.strong_or_better()) CHECK(rep2.strong_or_better());
    }
}

TEST_CASE("region_bounds on the cube") {
    Polyhedron K = cube2();
    RegionBounds rb = region_bounds(K, PositionKind::First);
    REQUIRE(!rb.region_empty);
    REQUIRE(rb.box.size() == 1);
    CHECK(rb.box[0].first == Rat(-1));
    CHECK(rb.box[0].second == Rat(0));
    CHECK(rb.N >= Rat(1));

    // sampled a in the region: fiber endpoints stay within [-N, N]
    std::mt19937 rng(8);
    for (int t = 0; t < 100; ++t) {
        Rat a = rat(-(static_cast<long>(rng() % 100)), 100);
        if (a < rb.box[0].first) continue;
        FiberInterval f = K.fiber_interval({a});
        if (f.status == FiberInterval::Status::Empty) continue;
        if (f.lower) CHECK(rat_abs(*f.lower) <= rb.N);
        if (f.upper) CHECK(rat_abs(*f.upper) <= rb.N);
    }
}

TEST_CASE("region_bounds on a shifted triangle") {
    // conv{(0,0), (-1,-1), (-2, 0)}
    Polyhedron T(2, {hs({0, 0, -1}),        // -x2 >= 0
                     hs({0, -1, 1}),        // x2 >= x1 (edge (0,0)-(-1,-1))
                     hs({2, 1, 1})});       // 2 + x1 + x2 >= 0 (edge (-2,0)-(-1,-1))
    CHECK(T.is_bounded());
    RegionBounds rb = region_bounds(T, PositionKind::First);
    REQUIRE(!rb.region_empty);
    std::mt19937 rng(15);
    for (int t = 0; t < 100; ++t) {
        Rat a = rat(-(static_cast<long>(rng() % 200)), 100);
        if (a < rb.box[0].first || a > rb.box[0].second) continue;
        FiberInterval f = T.fiber_interval({a});
        if (f.status == FiberInterval::Status::Empty) continue;
        if (f.lower) CHECK(rat_abs(*f.lower) <= rb.N);
        if (f.upper) CHECK(rat_abs(*f.upper) <= rb.N);
    }
}

TEST_CASE("fiber endpoints lie on facets nonparallel to e_n") {
    std::vector<Polyhedron> ks = {cube2(), orthant_K1()};
    std::mt19937 rng(5);
    for (const auto& K : ks) {
        std::size_t n = K.ambient_dim();
        for (int t = 0; t < 60; ++t) {
            RatVec a = random_base(rng, n - 1);
            FiberInterval f = K.fiber_interval(a);
            auto on_nonparallel_facet = [&](const Rat& xn) {
                RatVec x = a;
                x.push_back(xn);
                for (std::size_t i : K.minimal_indices()) {
                    const HalfSpace& h = K.halfspaces()[i];
                    if (h.coeffs[n] != 0 && h.eval(x) == 0) return true;
                }
                return false;
            };
            if (f.lower) CHECK(on_nonparallel_facet(*f.lower));
            if (f.upper) CHECK(on_nonparallel_facet(*f.upper));
        }
    }
}
