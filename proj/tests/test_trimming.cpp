#include <doctest.h>

#include "polyimage/trimming.hpp"

#include <random>

using namespace polyimage;

namespace {

HalfSpace hs(std::initializer_list<long> coeffs) {
    HalfSpace h;
    for (long c : coeffs) h.coeffs.push_back(Rat(c));
    return h;
}

RatVec random_point(std::mt19937& rng, std::size_t n, long range = 6) {
    RatVec x(n);
    for (auto& v : x) v = rat(static_cast<long>(rng() % (2 * range + 1)) - range, 1 + rng() % 4);
    return x;
}

// value of d(last component)/dx_axis at x
Rat derivative_value(const Stage& s, const RatVec& x) {
    const RatFn& beta = s.components.back();
    MPoly dnum = beta.derivative_numerator(*s.axis);
    Rat den = beta.den().eval(x);
    return dnum.eval(x) / (den * den);
}

}  // namespace

TEST_CASE("build_P over facets nonparallel to e_n") {
    // K1 = {x1+x3>=0, x1-x3>=0} in R^3: P = (x1+x3)(x1-x3)
    Polyhedron K1(3, {hs({0, 1, 0, 1}), hs({0, 1, 0, -1})});
    MPoly P = build_P(K1);
    // factors are normalized to x_n-coefficient 1: (x1+x3)(x3-x1) = x3^2-x1^2
    MPoly expect = MPoly::variable(3, 2, 2) - MPoly::variable(3, 0, 2);
    CHECK(P == expect);
    CHECK(P.degree_in(2) == 2);
    CHECK(P.total_degree() == 2);

    // lower half-plane: single facet, normalized to x2-coefficient 1
    Polyhedron H(2, {hs({0, 0, -1})});
    CHECK(build_P(H) == MPoly::variable(2, 1));

    // cube in R^2: two horizontal facets
    Polyhedron C = Polyhedron::box({{Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}});
    MPoly PC = build_P(C);
    CHECK(PC.degree_in(1) == 2);
    MPoly expC = MPoly::variable(2, 1, 2) - MPoly::constant(2, Rat(1));
    CHECK(PC == expC);

    // no facet nonparallel to e_n
    Polyhedron V(2, {hs({0, 1, 0})});  // {x1 >= 0}
    CHECK_THROWS_AS(build_P(V), NoTrimNeeded);
}

TEST_CASE("choose_Q weak reproduces the recipe for P = x2") {
    MPoly P = MPoly::variable(2, 1);
    ChosenQ q = choose_Q(P, TrimMode::Weak);
    CHECK(q.M == Rat(5));
    MPoly expect = (MPoly::constant(2, Rat(1)) + MPoly::variable(2, 0, 2)) *
                   one_plus_norm2(2);
    expect = expect.scaled(Rat(5));
    CHECK(q.Q == expect);
    CHECK(q.Q.degree_in(1) == 2);  // = 2 deg(P)
}

TEST_CASE("choose_Q strong uses the box bound") {
    MPoly P = MPoly::variable(2, 1);
    RegionBounds rb;
    rb.box = {{Rat(-1), Rat(0)}};
    rb.N = Rat(1);
    ChosenQ q = choose_Q(P, TrimMode::Strong, rb);
    CHECK(q.M == Rat(3));
    CHECK(q.Q.is_constant());

    RegionBounds empty;
    empty.region_empty = true;
    ChosenQ q1 = choose_Q(P, TrimMode::Strong, empty);
    CHECK(q1.M == Rat(1));
}

TEST_CASE("trim1 evaluation matches the beta formula") {
    MPoly P = MPoly::variable(2, 1);
    ChosenQ one{MPoly::constant(2, Rat(1)), DenCert::make_constant(Rat(1)), Rat(1)};
    Stage s = make_trim1(P, one);
    CHECK(s.eval({Rat(0), Rat(5)}) == RatVec{Rat(0), Rat(5)});
    CHECK(s.eval({Rat(1), Rat(1)}) == RatVec{Rat(1), Rat(0)});
    CHECK(s.eval({Rat(-1), Rat(2)}) == RatVec{Rat(-1), Rat(10)});

    // two independent code paths: stage components vs direct formula
    std::mt19937 rng(2);
    for (int t = 0; t < 50; ++t) {
        RatVec x = random_point(rng, 2);
        Rat beta = x[1] * (Rat(1) - x[0] * P.eval(x) * P.eval(x));
        CHECK(s.eval(x)[1] == beta);
    }
}

TEST_CASE("trim stages fix the leading coordinates") {
    Polyhedron K1(3, {hs({0, 1, 0, 1}), hs({0, 1, 0, -1})});
    MPoly P = build_P(K1);
    Stage t1 = make_trim1(P, choose_Q(P, TrimMode::Weak));
    Stage t2 = make_trim2(P, choose_M2(P, TrimMode::Weak), Trim2Variant::Reg);
    std::mt19937 rng(3);
    for (int t = 0; t < 60; ++t) {
        RatVec x = random_point(rng, 3);
        RatVec y1 = t1.eval(x), y2 = t2.eval(x);
        for (std::size_t i = 0; i + 1 < 3; ++i) {
            CHECK(y1[i] == x[i]);
            CHECK(y2[i] == x[i]);
        }
    }
}

TEST_CASE("fixed point sets") {
    MPoly P = MPoly::variable(2, 1);
    Stage t1 = make_trim1(P, choose_Q(P, TrimMode::Weak));
    CHECK(t1.eval({Rat(0), Rat(7)}) == RatVec{Rat(0), Rat(7)});
    CHECK(t1.eval({Rat(5), Rat(0)}) == RatVec{Rat(5), Rat(0)});
    CHECK(t1.eval({Rat(1), Rat(1)})[1] != Rat(1));

    Stage t2p = make_trim2(P, Rat(1), Trim2Variant::Poly);
    CHECK(t2p.eval({Rat(3), Rat(0)}) == RatVec{Rat(3), Rat(0)});
    CHECK(t2p.eval({Rat(4), Rat(1)})[1] == Rat(0));
}

TEST_CASE("trim2 regular denominator never vanishes") {
    MPoly P = MPoly::variable(2, 1);
    Stage s = make_trim2(P, choose_M2(P, TrimMode::Weak), Trim2Variant::Reg);
    const RatFn& gamma = s.components.back();
    std::mt19937 rng(5);
    for (int t = 0; t < 200; ++t) {
        RatVec x = random_point(rng, 2);
        CHECK(gamma.den().eval(x) > 0);
    }
    RatVec x = {Rat(0), Rat(1)};  // 1 - x_n P^2 = 0 here
    CHECK(gamma.den().eval(x) > 0);
}

TEST_CASE("derivative positivity, weak constants") {
    MPoly P = MPoly::variable(2, 1) *
              (MPoly::variable(2, 1) + MPoly::variable(2, 0).scaled(Rat(3)));
    REQUIRE(P.total_degree() == P.degree_in(1));
    Stage t1 = make_trim1(P, choose_Q(P, TrimMode::Weak));
    std::mt19937 rng(7);
    for (int t = 0; t < 2000; ++t) {
        RatVec x = random_point(rng, 2);
        if (x[0] > 0) x[0] = -x[0];  // {x_{n-1} <= 0}
        CHECK(derivative_value(t1, x) > 0);
    }

    for (int t = 0; t < 50; ++t) {
        RatVec x = random_point(rng, 2);
        x[0] = 0;
        CHECK(derivative_value(t1, x) == Rat(1));
        RatVec y = random_point(rng, 2);
        y[1] = 0;  // P = 0 on {x2 = 0}
        CHECK(derivative_value(t1, y) == Rat(1));
    }

    Stage t2 = make_trim2(P, choose_M2(P, TrimMode::Weak), Trim2Variant::Reg);
    for (int t = 0; t < 2000; ++t) {
        RatVec x = random_point(rng, 2);
        if (x[1] > 0) x[1] = -x[1];  // {x_n <= 0}
        CHECK(derivative_value(t2, x) > rat(1, 2));
    }
    for (int t = 0; t < 50; ++t) {
        RatVec x = random_point(rng, 2);
        x[1] = 0;
        CHECK(derivative_value(t2, x) == Rat(1));
    }
}

TEST_CASE("the four displayed bounds hold for the weak type-II constant") {
    std::mt19937 rng(11);
    std::vector<MPoly> ps;
    ps.push_back(MPoly::variable(2, 1));
    ps.push_back(MPoly::variable(2, 1) *
                 (MPoly::variable(2, 1) - MPoly::variable(2, 0).scaled(Rat(2))));
    ps.push_back(MPoly::variable(3, 2) *
                 (MPoly::variable(3, 2) + MPoly::variable(3, 0).scaled(Rat(3))));
    for (const MPoly& P : ps) {
        std::size_t n = P.nvars();
        long d = P.total_degree();
        REQUIRE(d == P.degree_in(n - 1));
        Rat M = choose_M2(P, TrimMode::Weak);
        MPoly f = MPoly::constant(n, Rat(1)) -
                  MPoly::variable(n, n - 1) * P * P;
        MPoly df = f.partial(n - 1);
        MPoly dP = P.partial(n - 1);
        for (int t = 0; t < 2000; ++t) {
            RatVec x = random_point(rng, n);
            Rat base = Rat(1) + vec_norm2(x);
            Rat Dpow(1);
            for (long k = 0; k < d + 1; ++k) Dpow *= M * base;
            Rat eps = x[n - 1] * P.eval(x) / Dpow;
            CHECK(rat_abs(x[n - 1]) * rat_abs(df.eval(x)) * eps * eps < rat(1, 16));
            CHECK(rat_abs(x[n - 1] * eps) < rat(1, 8));
            CHECK(rat_abs(eps) < rat(1, 2));
            Rat deps = (P.eval(x) + x[n - 1] * dP.eval(x)) / Dpow -
                       Rat(2) * Rat(d + 1) * x[n - 1] * x[n - 1] * P.eval(x) /
                           (Dpow * base);
            CHECK(rat_abs(deps) < rat(1, 4));
        }
    }
}

TEST_CASE("negative control: an undersized M breaks positivity") {
    MPoly P = MPoly::variable(2, 1) +
              MPoly::variable(2, 0).scaled(rat(7, 10));  // x2 + 0.7 x1
    Stage bad = make_trim2(P, rat(1, 1000), Trim2Variant::Reg);
    std::mt19937 rng(13);
    bool witness = false;
    for (int t = 0; t < 5000 && !witness; ++t) {
        RatVec x = random_point(rng, 2);
        if (x[1] > 0) x[1] = -x[1];
        if (derivative_value(bad, x) <= rat(1, 2)) witness = true;
    }
    CHECK(witness);
}

TEST_CASE("monotone bounds: any larger constant still passes") {
    MPoly P = MPoly::variable(2, 1);
    Rat M = choose_M2(P, TrimMode::Weak);
    Stage bigger = make_trim2(P, M * 16, Trim2Variant::Reg);
    std::mt19937 rng(17);
    for (int t = 0; t < 500; ++t) {
        RatVec x = random_point(rng, 2);
        if (x[1] > 0) x[1] = -x[1];
        CHECK(derivative_value(bigger, x) > rat(1, 2));
    }
}

TEST_CASE("trim1 numerator has odd fiber degree") {
    Polyhedron K1(3, {hs({0, 1, 0, 1}), hs({0, 1, 0, -1})});
    MPoly P = build_P(K1);
    ChosenQ q = choose_Q(P, TrimMode::Weak);
    Stage s = make_trim1(P, q);
    const RatFn& beta = s.components.back();
    long dn = beta.num().degree_in(2);
    long dd = beta.den().degree_in(2);
    CHECK((dn - dd) % 2 == 1);
    CHECK(dn == 2 * P.total_degree() + 1);
}
