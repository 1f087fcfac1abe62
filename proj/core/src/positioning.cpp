#include "polyimage/positioning.hpp"

#include "polyimage/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace polyimage {

std::string strength_name(PositionReport::Strength s) {
    switch (s) {
        case PositionReport::Strength::NotInPosition: return "not-in-position";
        case PositionReport::Strength::Weak: return "weak";
        case PositionReport::Strength::UnknownTreatAsWeak: return "unknown-treat-as-weak";
        case PositionReport::Strength::Strong: return "strong";
        case PositionReport::Strength::Optimal: return "optimal";
    }
    return "?";
}

Polyhedron project_out_last(const Polyhedron& K) {
    std::size_t n = K.ambient_dim();
    assert(n >= 1);
    std::vector<HalfSpace> lower, upper, flat;
    for (const auto& h : K.halfspaces()) {
        Rat cn = h.coeffs[n];
        if (cn == 0)
            flat.push_back(h);
        else if (cn > 0)
            lower.push_back(h);  // x_n >= -(rest)/cn
        else
            upper.push_back(h);
    }
    std::vector<HalfSpace> out;
    auto push = [&](RatVec coeffs) {
        HalfSpace h{std::move(coeffs)};
        if (h.linear_part_zero() && h.coeffs[0] >= 0) return;  // trivially true
        out.push_back(std::move(h));
    };
    for (const auto& h : flat) push(RatVec(h.coeffs.begin(), h.coeffs.end() - 1));
    for (const auto& lo : lower) {
        for (const auto& up : upper) {
            // cn_lo > 0 > cn_up: cn_lo * up - cn_up * lo eliminates x_n
            Rat a = lo.coeffs[n], b = up.coeffs[n];
            RatVec c(n, Rat(0));
            for (std::size_t i = 0; i < n; ++i)
                c[i] = a * up.coeffs[i] - b * lo.coeffs[i];
            push(std::move(c));
        }
    }
    return Polyhedron(n - 1, std::move(out));
}

Polyhedron zero_slice(const Polyhedron& K) {
    std::size_t n = K.ambient_dim();
    std::vector<HalfSpace> out;
    for (const auto& h : K.halfspaces()) {
        RatVec c(h.coeffs.begin(), h.coeffs.end() - 1);
        HalfSpace s{std::move(c)};
        if (s.linear_part_zero() && s.coeffs[0] >= 0) continue;
        out.push_back(std::move(s));
    }
    return Polyhedron(n - 1, std::move(out));
}

bool polyhedron_subset(const Polyhedron& P, const Polyhedron& Q) {
    if (P.is_empty()) return true;
    for (const auto& h : Q.halfspaces()) {
        auto m = P.minimize(h.coeffs);
        if (m.kind != Polyhedron::Extremum::Kind::Value || m.value < 0) return false;
    }
    return true;
}

namespace {

RatVec unit_direction(std::size_t n, std::size_t i) {
    RatVec v(n, Rat(0));
    v[i] = 1;
    return v;
}

bool direction_admissible(const Polyhedron& K, const RatVec& v) {
    if (vec_is_zero(v)) return false;
    RatVec neg = vec_scale(Rat(-1), v);
    return !K.recession_contains(v) && !K.recession_contains(neg);
}

// Marks the extreme facet when K lies in {x_c <= 0} with a minimal member
// whose hyperplane is {x_c = 0}.
std::optional<std::size_t> extreme_facet_at(const Polyhedron& K, std::size_t coord) {
    std::size_t n = K.ambient_dim();
    RatVec f(n + 1, Rat(0));
    f[coord + 1] = 1;
    auto mx = K.maximize(f);
    if (mx.kind != Polyhedron::Extremum::Kind::Value || mx.value != 0)
        return std::nullopt;
    const auto& minimal = K.minimal_indices();
    for (std::size_t pos = 0; pos < minimal.size(); ++pos) {
        HalfSpace h = K.halfspaces()[minimal[pos]].normalized();
        bool match = (h.coeffs[0] == 0);
        for (std::size_t j = 0; j < n && match; ++j)
            if (h.coeffs[j + 1] != (j == coord ? Rat(-1) : Rat(0))) match = false;
        if (match) return pos;
    }
    return std::nullopt;
}

// The exceptional base region is proj(K) minus the zero slice, intersected
// with {a_{n-1} <= 0} for the first position.
bool region_provably_empty(const Polyhedron& K, PositionKind kind) {
    Polyhedron proj = project_out_last(K);
    if (kind == PositionKind::First) {
        std::size_t m = proj.ambient_dim();
        RatVec c(m + 1, Rat(0));
        c[m] = -1;  // a_{n-1} <= 0
        proj = proj.with_halfspace({c});
    }
    if (proj.is_empty()) return true;
    return polyhedron_subset(proj, zero_slice(K));
}

PositionReport check_position(const Polyhedron& K, PositionKind kind) {
    std::size_t n = K.ambient_dim();
    if (K.is_empty() || K.dim() != static_cast<long>(n))
        throw std::invalid_argument("check_position: K must be n-dimensional");
    PositionReport rep;
    rep.kind = kind;

    RatVec en = unit_direction(n, n - 1);
    bool weak;
    if (kind == PositionKind::First) {
        weak = direction_admissible(K, en);
        rep.extreme_facet = extreme_facet_at(K, n - 2);
    } else {
        weak = !K.recession_contains(en);
        rep.extreme_facet = extreme_facet_at(K, n - 1);
    }
    if (!weak) {
        rep.strength = PositionReport::Strength::NotInPosition;
        return rep;
    }

    if (region_provably_empty(K, kind)) {
        rep.strength = PositionReport::Strength::Optimal;
        rep.region_box = std::vector<std::pair<Rat, Rat>>{};
        rep.N = Rat(0);
        return rep;
    }
    if (K.is_bounded()) {
        rep.strength = PositionReport::Strength::Strong;
        RegionBounds rb = region_bounds(K, kind);
        rep.region_box = rb.box;
        rep.N = rb.N;
        return rep;
    }
    rep.strength = PositionReport::Strength::UnknownTreatAsWeak;
    return rep;
}

// Builds the coordinate change with the facet functional (negated) at
// target_row; when v is present it is sent to e_n and the remaining rows are
// filled from the annihilator of v, otherwise by standard completion.
AffineMap build_placement(const HalfSpace& facet_h, std::size_t n,
                          std::size_t target_row, const std::optional<RatVec>& v) {
    RatVec neg_normal(n);
    for (std::size_t j = 0; j < n; ++j) neg_normal[j] = -facet_h.coeffs[j + 1];

    std::vector<RatVec> rows(n);
    rows[target_row] = neg_normal;

    if (v) {
        assert(target_row != n - 1);
        Rat vv = vec_dot(*v, *v);
        rows[n - 1] = vec_scale(Rat(1) / vv, *v);
        RatMat vm(1, n);
        for (std::size_t j = 0; j < n; ++j) vm.at(0, j) = (*v)[j];
        std::vector<RatVec> ann = null_space(vm);
        std::vector<RatVec> chosen = {neg_normal};
        for (const auto& w : ann) {
            if (chosen.size() == n - 1) break;
            RatMat test(chosen.size() + 1, n);
            for (std::size_t r = 0; r < chosen.size(); ++r)
                for (std::size_t j = 0; j < n; ++j) test.at(r, j) = chosen[r][j];
            for (std::size_t j = 0; j < n; ++j) test.at(chosen.size(), j) = w[j];
            if (rank(test) == chosen.size() + 1) chosen.push_back(w);
        }
        if (chosen.size() != n - 1)
            throw PlacementError("placement: annihilator completion failed");
        std::size_t next = 1;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == target_row || r == n - 1) continue;
            rows[r] = chosen[next++];
        }
    } else {
        RatMat full = complete_to_basis({neg_normal}, n);
        std::size_t next = 1;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == target_row) continue;
            rows[r] = full.row(next++);
        }
    }

    RatMat M(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) M.at(r, j) = rows[r][j];
    RatVec t(n, Rat(0));
    t[target_row] = -facet_h.coeffs[0];
    AffineMap T(M, t);
    if (!T.invertible()) throw PlacementError("placement: coordinate change singular");
    return T;
}

}  // namespace

PositionReport check_first_position(const Polyhedron& K) {
    return check_position(K, PositionKind::First);
}

PositionReport check_second_position(const Polyhedron& K) {
    return check_position(K, PositionKind::Second);
}

AffineMap halfspace_to_coordinate(const HalfSpace& h, std::size_t n,
                                  std::size_t target_coord) {
    return build_placement(h, n, target_coord, std::nullopt);
}

AffineMap place_extreme_second(const Polyhedron& K, std::size_t facet_pos) {
    std::size_t n = K.ambient_dim();
    const auto& minimal = K.minimal_indices();
    if (facet_pos >= minimal.size())
        throw std::invalid_argument("place_extreme_second: bad facet index");
    const HalfSpace& h = K.halfspaces()[minimal[facet_pos]];
    return build_placement(h, n, n - 1, std::nullopt);
}

AffineMap place_extreme_first(const Polyhedron& K, std::size_t facet_pos) {
    std::size_t n = K.ambient_dim();
    if (n < 2) throw std::invalid_argument("place_extreme_first: need n >= 2");
    const auto& minimal = K.minimal_indices();
    if (facet_pos >= minimal.size())
        throw std::invalid_argument("place_extreme_first: bad facet index");
    if (K.dim() != static_cast<long>(n))
        throw std::invalid_argument("place_extreme_first: K must be n-dimensional");
    const HalfSpace& h = K.halfspaces()[minimal[facet_pos]];

    if (K.is_bounded()) return build_placement(h, n, n - 2, std::nullopt);

    if (K.classify() != PolyClass::Nondegenerate)
        throw std::invalid_argument("place_extreme_first: degenerate polyhedron");

    // direct search for an admissible direction inside the facet hyperplane
    RatMat hn(1, n);
    for (std::size_t j = 0; j < n; ++j) hn.at(0, j) = h.coeffs[j + 1];
    std::vector<RatVec> basis = null_space(hn);
    std::vector<RatVec> candidates = basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            candidates.push_back(vec_add(basis[i], basis[j]));
            candidates.push_back(vec_sub(basis[i], basis[j]));
        }
    for (const auto& v : candidates)
        if (direction_admissible(K, v)) return build_placement(h, n, n - 2, v);

    if (n == 2)
        throw PlacementError(
            "place_extreme_first: no admissible direction on this facet (n = 2)");

    // guaranteed route: vertex cone coordinates, then slices of the sum
    // functional are bounded and any facet direction with zero last
    // coordinate is admissible
    auto [vertex, active] = K.find_vertex();
    (void)vertex;
    RatMat Phi(n, n);
    RatVec phi_t(n);
    for (std::size_t r = 0; r < n; ++r) {
        const HalfSpace& a = K.halfspaces()[active[r]];
        for (std::size_t j = 0; j < n; ++j) Phi.at(r, j) = a.coeffs[j + 1];
        phi_t[r] = a.coeffs[0];
    }
    AffineMap phi(Phi, phi_t);  // y_i = l_i(x), vertex -> 0

    RatMat Psi = RatMat::identity(n);
    for (std::size_t j = 0; j < n; ++j) Psi.at(n - 1, j) = 1;  // z_n = sum y_i
    AffineMap psi(Psi, RatVec(n, Rat(0)));

    AffineMap pre = psi.after(phi);
    Polyhedron Kp = K.transformed(pre);
    RatVec hp = pre.push_functional(h.coeffs);
    HalfSpace hph{hp};

    RatMat sys(2, n);
    for (std::size_t j = 0; j < n; ++j) {
        sys.at(0, j) = hp[j + 1];
        sys.at(1, j) = (j == n - 1) ? Rat(1) : Rat(0);
    }
    for (const auto& v : null_space(sys)) {
        if (!direction_admissible(Kp, v)) continue;
        AffineMap theta = build_placement(hph, n, n - 2, v);
        return theta.after(pre);
    }
    throw PlacementError("place_extreme_first: no admissible direction found");
}

RegionBounds region_bounds(const Polyhedron& K, PositionKind kind) {
    std::size_t n = K.ambient_dim();
    RegionBounds rb;
    if (!K.is_bounded())
        throw std::invalid_argument(
            "region_bounds: unbounded polyhedron outside the strong pipeline");
    auto full_box = K.bounding_box();
    rb.box.assign(full_box.begin(), full_box.end() - 1);
    if (kind == PositionKind::First) {
        auto& last = rb.box.back();
        if (last.first > 0) {
            rb.region_empty = true;
            rb.box.clear();
            rb.N = Rat(0);
            return rb;
        }
        if (last.second > 0) last.second = Rat(0);
    }
    // Fiber endpoints come from the facet equations solved for x_n; N bounds
    // every g_i over the box, maximized over facets nonparallel to e_n.
    Rat N(0);
    for (std::size_t i : K.minimal_indices()) {
        const HalfSpace& h = K.halfspaces()[i];
        Rat cn = h.coeffs[n];
        if (cn == 0) continue;
        MPoly g(n - 1);
        g.add_term(Exponents(n - 1, 0), -h.coeffs[0] / cn);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            Exponents e(n - 1, 0);
            e[j] = 1;
            g.add_term(e, -h.coeffs[j + 1] / cn);
        }
        Rat bnd = g.bound_on_box(rb.box);
        if (bnd > N) N = bnd;
    }
    rb.N = N;
    return rb;
}

}  // namespace polyimage
