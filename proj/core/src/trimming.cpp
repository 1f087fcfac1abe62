#include "polyimage/trimming.hpp"

#include <cassert>
#include <stdexcept>

namespace polyimage {

MPoly build_P(const Polyhedron& K) {
    std::size_t n = K.ambient_dim();
    if (K.dim() != static_cast<long>(n))
        throw std::invalid_argument("build_P: K must be n-dimensional");
    MPoly P = MPoly::constant(n, Rat(1));
    bool found = false;
    for (std::size_t i : K.minimal_indices()) {
        const HalfSpace& h = K.halfspaces()[i];
        Rat cn = h.coeffs[n];
        if (cn == 0) continue;
        found = true;
        MPoly f = MPoly::constant(n, h.coeffs[0] / cn);
        for (std::size_t j = 0; j < n; ++j)
            if (h.coeffs[j + 1] != 0)
                f = f + MPoly::variable(n, j).scaled(h.coeffs[j + 1] / cn);
        P = P * f;
    }
    if (!found)
        throw NoTrimNeeded("build_P: every facet is parallel to e_n");
    assert(P.total_degree() == P.degree_in(n - 1));
    return P;
}

namespace {

void check_P(const MPoly& P) {
    std::size_t n = P.nvars();
    long d = P.total_degree();
    if (d < 1 || d != P.degree_in(n - 1))
        throw std::invalid_argument("trim constants: need deg(P) = deg_{x_n}(P) >= 1");
}

std::vector<std::pair<Rat, Rat>> extended_box(const RegionBounds& rb) {
    auto box = rb.box;
    box.emplace_back(-rb.N, rb.N);
    return box;
}

}  // namespace

ChosenQ choose_Q(const MPoly& P, TrimMode mode, const RegionBounds& rb) {
    check_P(P);
    std::size_t n = P.nvars();
    long d = P.total_degree();

    if (mode == TrimMode::Strong) {
        Rat M(1);
        if (!rb.region_empty) {
            // bound of |2 x_{n-1} x_n P dP/dx_n| over box x [-N, N], plus one
            MPoly W = MPoly::variable(n, n - 2).scaled(Rat(2)) *
                      MPoly::variable(n, n - 1) * P * P.partial(n - 1);
            M = W.bound_on_box(extended_box(rb)) + 1;
        }
        ChosenQ q;
        q.M = M;
        q.Q = MPoly::constant(n, M);
        q.cert = DenCert::make_constant(M);
        return q;
    }

    // weak: Q = M (1 + x_{n-1}^2)(1 + ||x||^2)^d with M from the coefficient
    // bound so that |x_n P dP/dx_n| + d P^2 <= (M/2)(1+||x||^2)^d
    MPoly xnPdP = MPoly::variable(n, n - 1) * P * P.partial(n - 1);
    Rat M = Rat(2) * (xnPdP.coeff_abs_sum() + Rat(d) * (P * P).coeff_abs_sum()) + 1;
    MPoly Q = (MPoly::constant(n, Rat(1)) + MPoly::variable(n, n - 2, 2)) *
              one_plus_norm2(n).pow(static_cast<unsigned>(d));
    Q = Q.scaled(M);
    ChosenQ q;
    q.M = M;
    q.Q = Q;
    q.cert = DenCert::make_coeff_positive();
    if (!cert_check(q.Q, q.cert))
        throw std::logic_error("choose_Q: weak Q lost coefficient positivity");
    return q;
}

Stage make_trim1(const MPoly& P, const ChosenQ& q) {
    check_P(P);
    std::size_t n = P.nvars();
    long d = P.total_degree();
    if (q.Q.degree_in(n - 1) > 2 * d)
        throw std::invalid_argument("make_trim1: deg_{x_n}(Q) exceeds 2 deg(P)");
    if (!cert_check(q.Q, q.cert))
        throw std::invalid_argument("make_trim1: positivity certificate missing");

    Stage s;
    s.kind = StageKind::Trim1;
    s.in_dim = s.out_dim = n;
    s.P = P;
    s.Q = q.Q;
    s.M = q.M;
    s.axis = n - 1;
    s.cut_axis = n - 2;
    for (std::size_t i = 0; i + 1 < n; ++i)
        s.components.push_back(RatFn::from_poly(MPoly::variable(n, i)));
    // x_n (Q - x_{n-1} P^2) / Q
    MPoly num = MPoly::variable(n, n - 1) * (q.Q - MPoly::variable(n, n - 2) * P * P);
    s.components.push_back(RatFn(num, q.Q, q.cert));
    return s;
}

Rat choose_M2(const MPoly& P, TrimMode mode, const RegionBounds& rb) {
    check_P(P);
    std::size_t n = P.nvars();
    long d = P.total_degree();
    MPoly xn = MPoly::variable(n, n - 1);

    if (mode == TrimMode::Strong) {
        Rat M(1);
        if (!rb.region_empty) {
            MPoly W = xn * xn * P * P.partial(n - 1);
            W = W.scaled(Rat(4));
            Rat b = W.bound_on_box(extended_box(rb));
            if (b > M) M = b;
        }
        return M + 1;
    }

    // weak: the four displayed bounds of the derivative lemma, each turned
    // into a coefficient-sum requirement; f = 1 - x_n P^2
    MPoly f = MPoly::constant(n, Rat(1)) - xn * P * P;
    MPoly df = f.partial(n - 1);
    Rat m1 = Rat(16) * (xn.pow(3) * df * P * P).coeff_abs_sum();
    Rat m2 = Rat(8) * (xn * xn * P).coeff_abs_sum();
    Rat m3 = Rat(2) * (xn * P).coeff_abs_sum();
    Rat m4 = Rat(8) * (P + xn * P.partial(n - 1)).coeff_abs_sum();
    Rat m5 = Rat(16) * Rat(d + 1) * (xn * xn * P).coeff_abs_sum();
    Rat M = m1;
    for (const Rat& m : {m2, m3, m4, m5})
        if (m > M) M = m;
    return M + 1;
}

Stage make_trim2(const MPoly& P, const Rat& M, Trim2Variant variant) {
    check_P(P);
    if (M <= 0) throw std::invalid_argument("make_trim2: M must be positive");
    std::size_t n = P.nvars();
    long d = P.total_degree();
    MPoly xn = MPoly::variable(n, n - 1);

    Stage s;
    s.kind = variant == Trim2Variant::Poly ? StageKind::Trim2Poly : StageKind::Trim2Reg;
    s.in_dim = s.out_dim = n;
    s.P = P;
    s.M = M;
    s.axis = n - 1;
    for (std::size_t i = 0; i + 1 < n; ++i)
        s.components.push_back(RatFn::from_poly(MPoly::variable(n, i)));

    if (variant == Trim2Variant::Poly) {
        // x_n (M - x_n P^2)^2 / M^2
        MPoly t = MPoly::constant(n, M) - xn * P * P;
        MPoly num = xn * t * t;
        Rat m2 = M * M;
        s.components.push_back(RatFn(num, MPoly::constant(n, m2), DenCert::make_constant(m2)));
        return s;
    }

    // regular variant, cleared of inner denominators:
    //   gamma^r = x_n f^2 D / (f^2 D + g^2),  f = 1 - x_n P^2, g = x_n P,
    //   D = (M (1 + ||x||^2))^{2d+2}
    MPoly f = MPoly::constant(n, Rat(1)) - xn * P * P;
    MPoly g = xn * P;
    MPoly D = one_plus_norm2(n).scaled(M).pow(static_cast<unsigned>(2 * d + 2));
    MPoly num = xn * f * f * D;
    MPoly den = f * f * D + g * g;
    // {f = 0, g = 0} is empty: 1 * f + P * g = 1
    DenCert cert = DenCert::make_sos_incompatible(f, g, D, MPoly::constant(n, Rat(1)), P);
    s.components.push_back(RatFn(num, den, cert));
    return s;
}

}  // namespace polyimage
