#include <doctest.h>

#include "polyimage/mpoly.hpp"
#include "polyimage/ratfn.hpp"
#include "polyimage/uroots.hpp"

#include <functional>
#include <random>

using namespace polyimage;

namespace {

MPoly random_poly(std::mt19937& rng, std::size_t nvars, unsigned max_deg, int terms) {
    MPoly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Exponents e(nvars);
        for (auto& x : e) x = rng() % (max_deg + 1);
        p.add_term(e, rat(static_cast<long>(rng() % 13) - 6, 1 + rng() % 3));
    }
    return p;
}

RatVec random_point(std::mt19937& rng, std::size_t nvars, long range = 8) {
    RatVec x(nvars);
    for (auto& v : x) v = rat(static_cast<long>(rng() % (2 * range + 1)) - range, 1 + rng() % 4);
    return x;
}

// independent derivative oracle: the coefficient of h in f(a + h e_i)
Rat derivative_at_oracle(const MPoly& f, std::size_t i, const RatVec& a) {
    std::vector<MPoly> args;
    for (std::size_t j = 0; j < f.nvars(); ++j) {
        MPoly arg = MPoly::constant(1, a[j]);
        if (j == i) arg = arg + MPoly::variable(1, 0);
        args.push_back(arg);
    }
    MPoly g = f.compose(args);
    return g.coeff({1});
}

}  // namespace

TEST_CASE("eval: direct substitution") {
    MPoly f(2);
    f.add_term({1, 1}, Rat(1));
    f.add_term({0, 0}, Rat(1));  // x1 x2 + 1
    CHECK(f.eval({Rat(2), Rat(3)}) == Rat(7));
    CHECK(MPoly(2).eval({Rat(5), Rat(-1)}) == Rat(0));
}

TEST_CASE("eval of a regular function") {
    // x2 / (1 + x1^2)
    MPoly num = MPoly::variable(2, 1);
    MPoly den = MPoly::constant(2, Rat(1)) + MPoly::variable(2, 0, 2);
    RatFn f(num, den, DenCert::make_coeff_positive());
    CHECK(f.eval({Rat(1), Rat(4)}) == Rat(2));
}

TEST_CASE("compose: univariate expansion and identity") {
    MPoly sq = MPoly::variable(1, 0, 2);
    MPoly xp1 = MPoly::variable(1, 0) + MPoly::constant(1, Rat(1));
    MPoly c = sq.compose({xp1});
    MPoly expect(1);
    expect.add_term({2}, Rat(1));
    expect.add_term({1}, Rat(2));
    expect.add_term({0}, Rat(1));
    CHECK(c == expect);

    MPoly idf = MPoly::variable(1, 0);
    std::mt19937 rng(3);
    MPoly h = random_poly(rng, 1, 4, 4);
    CHECK(idf.compose({h}) == h);
}

TEST_CASE("compose with rational arguments keeps certificates") {
    // f = x1 x2, args = [x1, 1/(1+x1^2)] -> x1/(1+x1^2)
    MPoly f(2);
    f.add_term({1, 1}, Rat(1));
    RatFn a0 = RatFn::from_poly(MPoly::variable(1, 0));
    MPoly den = MPoly::constant(1, Rat(1)) + MPoly::variable(1, 0, 2);
    RatFn a1(MPoly::constant(1, Rat(1)), den, DenCert::make_coeff_positive());
    RatFn out = compose(f, {a0, a1});
    CHECK(out.num() == MPoly::variable(1, 0));
    CHECK(out.den() == den);
    CHECK(cert_check(out.den(), out.cert()));
    CHECK(out.eval({Rat(3)}) == Rat(3, 10));
}

TEST_CASE("compose arity mismatch is an error") {
    MPoly f = MPoly::variable(2, 0);
    CHECK_THROWS(compose(f, {RatFn::from_poly(MPoly::variable(1, 0))}));
}

TEST_CASE("partial derivatives: stated examples") {
    MPoly f(2);
    f.add_term({1, 2}, Rat(1));  // x1 x2^2
    MPoly d = f.partial(1);
    MPoly expect(2);
    expect.add_term({1, 1}, Rat(2));
    CHECK(d == expect);

    CHECK(MPoly::constant(2, Rat(9)).partial(0).is_zero());

    // d/dx2 of x2 (1 - x1 x2^2) = 1 - 3 x1 x2^2
    MPoly g = MPoly::variable(2, 1) *
              (MPoly::constant(2, Rat(1)) - MPoly::variable(2, 0) * MPoly::variable(2, 1, 2));
    MPoly dg = g.partial(1);
    MPoly expect2 = MPoly::constant(2, Rat(1));
    expect2.add_term({1, 2}, Rat(-3));
    CHECK(dg == expect2);

    // derived oracle: coefficient of h in g(a + h e2)
    std::mt19937 rng(11);
    for (int t = 0; t < 25; ++t) {
        RatVec a = random_point(rng, 2);
        CHECK(dg.eval(a) == derivative_at_oracle(g, 1, a));
    }
}

TEST_CASE("product rule on random pairs") {
    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) {
        MPoly f = random_poly(rng, 3, 3, 4);
        MPoly g = random_poly(rng, 3, 3, 4);
        for (std::size_t i = 0; i < 3; ++i) {
            MPoly lhs = (f * g).partial(i);
            MPoly rhs = f.partial(i) * g + g.partial(i) * f;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("coeff_abs_sum and the coefficient bound") {
    MPoly f(2);
    f.add_term({2, 1}, Rat(3));
    f.add_term({0, 1}, Rat(-2));
    f.add_term({0, 0}, Rat(1));
    CHECK(f.coeff_abs_sum() == Rat(6));
    CHECK(MPoly(2).coeff_abs_sum() == Rat(0));

    // |P| <= M (1 + ||x||^2)^m whenever deg P <= 2m, across random samples
    std::mt19937 rng(17);
    for (int t = 0; t < 10; ++t) {
        MPoly p = random_poly(rng, 2, 4, 5);
        if (p.is_zero()) continue;
        Rat M = p.coeff_abs_sum();
        long d = p.total_degree();
        unsigned m = static_cast<unsigned>((d + 1) / 2);
        for (int s = 0; s < 40; ++s) {
            RatVec x = random_point(rng, 2);
            Rat lhs = rat_abs(p.eval(x));
            Rat base = Rat(1) + vec_norm2(x);
            Rat rhs = M;
            for (unsigned k = 0; k < m; ++k) rhs *= base;
            CHECK(lhs <= rhs);
        }
    }
    // the spec's spot check: P = x2, |x2| <= 1 * (1 + ||x||^2) at (5, 7)
    MPoly p2 = MPoly::variable(2, 1);
    CHECK(rat_abs(p2.eval({Rat(5), Rat(7)})) <= Rat(1) * (Rat(1) + Rat(25 + 49)));
}

TEST_CASE("degrees") {
    MPoly f(2);
    f.add_term({1, 3}, Rat(1));
    f.add_term({4, 0}, Rat(1));  // x1 x2^3 + x1^4
    CHECK(f.degree_in(1) == 3);
    CHECK(f.total_degree() == 4);
    CHECK(MPoly::constant(2, Rat(5)).total_degree() == 0);
    CHECK(MPoly(2).total_degree() == -1);

    // product of r degree-one factors with x2 coefficient 1
    std::mt19937 rng(23);
    for (int r = 1; r <= 4; ++r) {
        MPoly prod = MPoly::constant(2, Rat(1));
        for (int k = 0; k < r; ++k) {
            MPoly lin = MPoly::constant(2, rat(static_cast<long>(rng() % 7) - 3));
            lin = lin + MPoly::variable(2, 0).scaled(rat(static_cast<long>(rng() % 5) - 2));
            lin = lin + MPoly::variable(2, 1);
            prod = prod * lin;
        }
        CHECK(prod.degree_in(1) == r);
        CHECK(prod.total_degree() == r);
    }
}

TEST_CASE("bound_on_box") {
    MPoly f(2);
    f.add_term({1, 1}, Rat(1));
    CHECK(f.bound_on_box({{Rat(-1), Rat(1)}, {Rat(-2), Rat(2)}}) == Rat(2));

    MPoly zero = MPoly::variable(2, 0) - MPoly::variable(2, 0);
    CHECK(zero.bound_on_box({{Rat(0), Rat(1)}, {Rat(0), Rat(1)}}) == Rat(0));

    MPoly g(2);
    g.add_term({2, 1}, Rat(2));  // 2 x1^2 x2 on [-1,2] x [0,3]
    Rat B = g.bound_on_box({{Rat(-1), Rat(2)}, {Rat(0), Rat(3)}});
    CHECK(B == Rat(24));
    // grid-sample oracle: the sup over the box never exceeds the bound
    for (int i = 0; i <= 12; ++i)
        for (int j = 0; j <= 12; ++j) {
            Rat x = Rat(-1) + rat(i, 4);
            Rat y = rat(j, 4);
            CHECK(rat_abs(g.eval({x, y})) <= B);
        }
    CHECK_THROWS(g.bound_on_box({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
}

TEST_CASE("compositional soundness at random rational points") {
    std::mt19937 rng(31);
    for (int t = 0; t < 8; ++t) {
        MPoly f = random_poly(rng, 2, 3, 4);
        MPoly g0 = random_poly(rng, 2, 2, 3);
        MPoly g1 = random_poly(rng, 2, 2, 3);
        RatFn comp = compose(f, {RatFn::from_poly(g0), RatFn::from_poly(g1)});
        for (int s = 0; s < 10; ++s) {
            RatVec x = random_point(rng, 2, 4);
            CHECK(comp.eval(x) == f.eval({g0.eval(x), g1.eval(x)}));
        }
    }
}

TEST_CASE("denominator certificates reject broken structure") {
    MPoly den = MPoly::constant(1, Rat(1)) - MPoly::variable(1, 0, 2);  // 1 - t^2
    CHECK(!cert_check(den, DenCert::make_coeff_positive()));
    CHECK_THROWS(RatFn(MPoly::variable(1, 0), den, DenCert::make_coeff_positive()));

    // sos-incompatible: den = f^2 G + g^2 with u f + v g = 1;
    // f = 1 - x1 x2^2, g = x1 x2^2 gives u = 1, v = 1
    MPoly f = MPoly::constant(2, Rat(1)) - MPoly::variable(2, 0) * MPoly::variable(2, 1, 2);
    MPoly g = MPoly::variable(2, 0) * MPoly::variable(2, 1, 2);
    MPoly G = MPoly::constant(2, Rat(1)) + MPoly::variable(2, 0, 2);
    MPoly d = f * f * G + g * g;
    DenCert cert = DenCert::make_sos_incompatible(f, g, G, MPoly::constant(2, Rat(1)),
                                                  MPoly::constant(2, Rat(1)));
    CHECK(cert_check(d, cert));
    // wrong Bezout cofactors fail
    DenCert bad = DenCert::make_sos_incompatible(f, g, G, MPoly::constant(2, Rat(1)),
                                                 MPoly::variable(2, 0));
    CHECK(!cert_check(d, bad));
}

TEST_CASE("root isolation refines below any requested width") {
    UPoly f = {Rat(-2), Rat(0), Rat(1)};  // t^2 - 2
    auto iso = isolate_real_roots(f);
    REQUIRE(iso.intervals.size() == 2);
    for (auto& iv : iso.intervals) {
        refine_root(f, iv, rat(1, 1000000000));
        CHECK(iv.width() <= rat(1, 1000000000));
    }
}
