#include "polyimage/constructions.hpp"

#include "polyimage/linalg.hpp"
#include "polyimage/positioning.hpp"

#include <cassert>
#include <sstream>

namespace polyimage {

namespace {

MPoly var(std::size_t n, std::size_t i) { return MPoly::variable(n, i); }

HalfSpace make_hs(std::size_t n, const Rat& c0, const std::vector<std::pair<std::size_t, Rat>>& lin) {
    HalfSpace h;
    h.coeffs.assign(n + 1, Rat(0));
    h.coeffs[0] = c0;
    for (const auto& [i, c] : lin) h.coeffs[i + 1] = c;
    return h;
}

void append_chain(MapChain& chain, const MapChain& sub) {
    for (const auto& s : sub.stages) chain.push(s);
}

void append_lifted(MapChain& chain, const MapChain& sub, std::size_t new_dim,
                   std::size_t shift) {
    for (const auto& s : sub.stages) chain.push(lifted_stage(s, new_dim, shift));
}

std::string canonical_polygon(const Polyhedron& K) {
    std::vector<std::string> rows;
    for (std::size_t i : K.minimal_indices()) {
        HalfSpace h = K.halfspaces()[i].normalized();
        std::ostringstream os;
        for (std::size_t j = 0; j < h.coeffs.size(); ++j) {
            if (j) os << ' ';
            os << rat_str(h.coeffs[j]);
        }
        rows.push_back(os.str());
    }
    std::sort(rows.begin(), rows.end());
    std::ostringstream os;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ';';
        os << rows[i];
    }
    return os.str();
}

// trim1 stage for the polyhedron `trimmed` (the one being trimmed), with
// constants certified from `region_source` when a strong region is available
Stage trim1_for(const Polyhedron& trimmed, const PositionReport& rep,
                const std::optional<Polyhedron>& region_source) {
    MPoly P = build_P(trimmed);
    ChosenQ q;
    if (rep.strength == PositionReport::Strength::Optimal) {
        RegionBounds empty;
        empty.region_empty = true;
        q = choose_Q(P, TrimMode::Strong, empty);
    } else if (rep.strong_or_better() && region_source) {
        q = choose_Q(P, TrimMode::Strong, region_bounds(*region_source, PositionKind::First));
    } else {
        q = choose_Q(P, TrimMode::Weak);
    }
    Stage s = make_trim1(P, q);
    s.trim_source = trimmed;
    return s;
}

Stage trim2_for(const Polyhedron& trimmed, const PositionReport& rep,
                const std::optional<Polyhedron>& region_source) {
    MPoly P = build_P(trimmed);
    if (rep.strength == PositionReport::Strength::Optimal) {
        RegionBounds empty;
        empty.region_empty = true;
        Rat M = choose_M2(P, TrimMode::Strong, empty);
        Stage s = make_trim2(P, M, Trim2Variant::Poly);
        s.trim_source = trimmed;
        return s;
    }
    if (rep.strong_or_better() && region_source) {
        Rat M = choose_M2(P, TrimMode::Strong,
                          region_bounds(*region_source, PositionKind::Second));
        Stage s = make_trim2(P, M, Trim2Variant::Poly);
        s.trim_source = trimmed;
        return s;
    }
    Rat M = choose_M2(P, TrimMode::Weak);
    Stage s = make_trim2(P, M, Trim2Variant::Reg);
    s.trim_source = trimmed;
    return s;
}

}  // namespace

Stage presemial_stage(const MPoly& g, bool strict, std::size_t n) {
    if (g.nvars() != n)
        throw std::invalid_argument("presemial_stage: g must have n variables");
    std::size_t N = n + 1;
    MPoly gh = g.embedded(N, 0);
    MPoly t = var(N, n);
    MPoly one = MPoly::constant(N, Rat(1));
    MPoly core = t * (one + t * t * gh);
    Stage s;
    s.kind = strict ? StageKind::PresemialF2 : StageKind::PresemialF1;
    s.in_dim = s.out_dim = N;
    s.presemial_g = gh;
    s.axis = n;
    for (std::size_t i = 0; i < n; ++i)
        s.components.push_back(RatFn::from_poly(var(N, i)));
    if (!strict) {
        s.components.push_back(RatFn::from_poly(core));
    } else {
        MPoly shifted = t - one;
        s.components.push_back(RatFn::from_poly(core * (gh * gh + shifted * shifted)));
    }
    return s;
}

MapChain lower_dim_complement(std::size_t n, const AffineMap& placement,
                              const std::vector<std::pair<MPoly, bool>>& slice_ineqs) {
    if (n < 2) throw UnsupportedCase("lower-dimensional complements need n >= 2");
    std::size_t m = n - 1;
    for (const auto& [g, strict] : slice_ineqs)
        if (g.nvars() != m)
            throw std::invalid_argument("slice inequality variable count mismatch");

    // witness outside S': try stock points, then the explicit per-inequality
    // construction g(a) = -1 along the gradient
    auto outside = [&](const RatVec& a) {
        for (const auto& [g, strict] : slice_ineqs) {
            Rat v = g.eval(a);
            if (strict ? v <= 0 : v < 0) return true;
        }
        return false;
    };
    std::optional<RatVec> witness;
    std::vector<RatVec> cands;
    cands.push_back(RatVec(m, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        RatVec e(m, Rat(0));
        e[i] = 1;
        cands.push_back(e);
        e[i] = -1;
        cands.push_back(e);
    }
    for (const auto& [g, strict] : slice_ineqs) {
        if (g.total_degree() != 1) continue;
        RatVec c(m);
        Rat c0 = g.coeff(Exponents(m, 0));
        Rat norm2(0);
        for (std::size_t i = 0; i < m; ++i) {
            Exponents e(m, 0);
            e[i] = 1;
            c[i] = g.coeff(e);
            norm2 += c[i] * c[i];
        }
        if (norm2 == 0) continue;
        cands.push_back(vec_scale(-(c0 + 1) / norm2, c));
    }
    for (const auto& a : cands)
        if (outside(a)) {
            witness = a;
            break;
        }
    if (!witness)
        throw UnsupportedCase("lower-dimensional complement: no point outside the slice set");

    MapChain chain;
    chain.push(make_affine_stage(placement));
    RatVec shift_vec(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i) shift_vec[i] = -(*witness)[i];
    AffineMap shift = AffineMap::translation_map(shift_vec);
    chain.push(make_affine_stage(shift));
    chain.push(make_f0_lift_stage(m));
    // inequalities relative to the shifted frame: g'(y) = g(y + witness)
    std::vector<MPoly> args;
    for (std::size_t i = 0; i < m; ++i)
        args.push_back(MPoly::variable(m, i) + MPoly::constant(m, (*witness)[i]));
    for (const auto& [g, strict] : slice_ineqs)
        chain.push(presemial_stage(g.compose(args), strict, m));
    chain.push(make_affine_stage(shift.inverse()));
    chain.push(make_affine_stage(placement.inverse()));
    chain.target = TargetSet::lower_dim_complement(n, placement, slice_ineqs);
    return chain;
}

MapChain orthant_complement(std::size_t n, ComplementMode mode, const Registry& bases) {
    if (n < 2) throw UnsupportedCase("orthant complements need n >= 2");
    if (n == 2) {
        BaseMapKey key;
        key.kind = mode == ComplementMode::Set ? BaseMapKey::Kind::ClosedQuadrantComplement
                                               : BaseMapKey::Kind::OpenQuadrantComplement;
        MapChain base = bases.get(key);
        base.target = mode == ComplementMode::Set
                          ? TargetSet::complement(Polyhedron::orthant(2))
                          : TargetSet::interior_complement(Polyhedron::orthant(2));
        return base;
    }

    MapChain sub = orthant_complement(n - 1, mode, bases);
    MapChain chain;
    append_lifted(chain, sub, n, 0);

    // g1 maps the lifted orthant product onto the cone K1
    RatMat G1(n, n);
    for (std::size_t i = 0; i + 3 < n; ++i) G1.at(i, i) = 1;
    G1.at(n - 3, n - 3) = rat(1, 2);
    G1.at(n - 3, n - 2) = rat(1, 2);
    G1.at(n - 2, n - 1) = 1;
    G1.at(n - 1, n - 3) = rat(1, 2);
    G1.at(n - 1, n - 2) = rat(-1, 2);
    chain.push(make_affine_stage(AffineMap(G1, RatVec(n, Rat(0)))));

    std::vector<HalfSpace> k1hs;
    for (std::size_t i = 0; i + 3 < n; ++i) k1hs.push_back(make_hs(n, Rat(0), {{i, Rat(1)}}));
    k1hs.push_back(make_hs(n, Rat(0), {{n - 3, Rat(1)}, {n - 1, Rat(1)}}));
    k1hs.push_back(make_hs(n, Rat(0), {{n - 3, Rat(1)}, {n - 1, Rat(-1)}}));
    Polyhedron K1(n, k1hs, "cone-K1");

    PositionReport rep1 = check_first_position(K1);
    chain.push(trim1_for(K1, rep1, std::nullopt));

    if (mode == ComplementMode::Set) {
        RatMat G2(n, n);
        for (std::size_t i = 0; i + 3 < n; ++i) G2.at(i, i) = 1;
        G2.at(n - 3, n - 3) = 1;
        G2.at(n - 3, n - 1) = 1;
        G2.at(n - 2, n - 2) = -1;
        G2.at(n - 1, n - 3) = 1;
        G2.at(n - 1, n - 1) = -1;
        chain.push(make_affine_stage(AffineMap(G2, RatVec(n, Rat(0)))));
        chain.target = TargetSet::complement(Polyhedron::orthant(n));
        return chain;
    }

    // interior: swap the last two coordinates, trim the new vertical facet
    chain.push(make_affine_stage(AffineMap::swap_coords(n, n - 2, n - 1)));
    std::vector<HalfSpace> k2hs;
    for (std::size_t i = 0; i + 3 < n; ++i) k2hs.push_back(make_hs(n, Rat(0), {{i, Rat(1)}}));
    k2hs.push_back(make_hs(n, Rat(0), {{n - 3, Rat(1)}, {n - 2, Rat(1)}}));
    k2hs.push_back(make_hs(n, Rat(0), {{n - 3, Rat(1)}, {n - 2, Rat(-1)}}));
    k2hs.push_back(make_hs(n, Rat(0), {{n - 1, Rat(-1)}}));
    Polyhedron K2(n, k2hs, "cone-K1-cut");
    PositionReport rep2 = check_second_position(K2);
    chain.push(trim2_for(K2, rep2, std::nullopt));

    RatMat G2(n, n);
    for (std::size_t i = 0; i + 3 < n; ++i) G2.at(i, i) = 1;
    G2.at(n - 3, n - 3) = 1;
    G2.at(n - 3, n - 2) = 1;
    G2.at(n - 2, n - 3) = 1;
    G2.at(n - 2, n - 2) = -1;
    G2.at(n - 1, n - 1) = -1;
    chain.push(make_affine_stage(AffineMap(G2, RatVec(n, Rat(0)))));
    chain.target = TargetSet::interior_complement(Polyhedron::orthant(n));
    return chain;
}

namespace {

// scaled standard simplex containing box(K) with margin 1: constraints
// x_i >= t_i (i != n-1), x_{n-1} <= t_top, sum (x_i - t_i) - (x_{n-1} - t_top) <= s
Polyhedron enclosing_simplex(const Polyhedron& K) {
    std::size_t n = K.ambient_dim();
    auto box = K.bounding_box();
    RatVec t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = (i == n - 2) ? Rat(box[i].second + 1) : Rat(box[i].first - 1);
    Rat s(1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == n - 2)
            s += t[i] - box[i].first;
        else
            s += box[i].second - t[i];
    }
    std::vector<HalfSpace> hs;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == n - 2)
            hs.push_back(make_hs(n, t[i], {{i, Rat(-1)}}));  // x_{n-1} <= t_top
        else
            hs.push_back(make_hs(n, -t[i], {{i, Rat(1)}}));  // x_i >= t_i
    }
    HalfSpace sum;
    sum.coeffs.assign(n + 1, Rat(0));
    sum.coeffs[0] = s;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == n - 2) {
            sum.coeffs[0] -= t[i];
            sum.coeffs[i + 1] = 1;  // -(x_{n-1} - t_top) term, negated below
        } else {
            sum.coeffs[0] += t[i];
            sum.coeffs[i + 1] = -1;
        }
    }
    hs.push_back(sum);
    return Polyhedron(n, std::move(hs), "enclosing-simplex");
}

// conjugated trim block for re-adding the half-space {h >= 0} to `before`:
// set mode emits [place, trim1, unplace]; interior mode adds the swap and
// the type-II trim
void push_cut_block(MapChain& chain, const Polyhedron& before, const HalfSpace& h,
                    ComplementMode mode) {
    std::size_t n = before.ambient_dim();
    AffineMap place = halfspace_to_coordinate(h, n, n - 2);
    Polyhedron L = before.transformed(place);
    Polyhedron after = before.with_halfspace(h).transformed(place);

    chain.push(make_affine_stage(place));
    PositionReport rep = check_first_position(L);
    // bounded L gives the strong constants directly; otherwise the caller
    // arranged optimal position or accepts the weak regular stage
    chain.push(trim1_for(L, rep, L.is_bounded() ? std::optional<Polyhedron>(L)
                                                : std::nullopt));
    if (mode == ComplementMode::Interior) {
        AffineMap swap = AffineMap::swap_coords(n, n - 2, n - 1);
        chain.push(make_affine_stage(swap));
        Polyhedron cut = after.transformed(swap);
        PositionReport rep2 = check_second_position(cut);
        chain.push(trim2_for(cut, rep2, cut.is_bounded() ? std::optional<Polyhedron>(cut)
                                                         : std::nullopt));
        chain.push(make_affine_stage(swap));
    }
    chain.push(make_affine_stage(place.inverse()));
}

}  // namespace

MapChain bounded_complement(const Polyhedron& K, ComplementMode mode,
                            const Registry& bases) {
    std::size_t n = K.ambient_dim();
    if (n < 2) throw UnsupportedCase("bounded complements need n >= 2");
    if (!K.is_bounded() || K.dim() != static_cast<long>(n))
        throw std::invalid_argument("bounded_complement: K must be bounded and full-dimensional");

    Polyhedron simplex = enclosing_simplex(K);
    Polyhedron sm = simplex.minimal_presentation();

    // the top facet {x_{n-1} <= t_top} comes off first; the rest form a cone
    std::size_t top_pos = 0;
    {
        bool found = false;
        const auto& mins = sm.minimal_indices();
        for (std::size_t pos = 0; pos < mins.size(); ++pos) {
            const HalfSpace& h = sm.halfspaces()[mins[pos]];
            bool is_top = h.coeffs[n - 1] < 0;
            for (std::size_t j = 1; j <= n && is_top; ++j)
                if (j != n - 1 && h.coeffs[j] != 0) is_top = false;
            if (is_top) {
                top_pos = pos;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("enclosing simplex lost its top facet");
    }
    Polyhedron cone = sm.drop_minimal_member(top_pos);
    HalfSpace top = sm.halfspaces()[sm.minimal_indices()[top_pos]];

    // cone complement: conjugated orthant chain
    MapChain chain;
    {
        MapChain orth = orthant_complement(n, mode, bases);
        append_chain(chain, orth);
        const auto& mins = cone.minimal_indices();
        assert(mins.size() == n);
        RatMat rowsm(n, n);
        RatVec tr(n);
        for (std::size_t r = 0; r < n; ++r) {
            const HalfSpace& h = cone.halfspaces()[mins[r]];
            for (std::size_t j = 0; j < n; ++j) rowsm.at(r, j) = h.coeffs[j + 1];
            tr[r] = h.coeffs[0];
        }
        AffineMap cone_map(rowsm, tr);  // cone -> closed orthant
        chain.push(make_affine_stage(cone_map.inverse()));
    }

    // re-add the simplex top facet, then each member of K's presentation
    push_cut_block(chain, cone, top, mode);
    Polyhedron current = simplex;
    for (std::size_t i : K.minimal_indices()) {
        push_cut_block(chain, current, K.halfspaces()[i], mode);
        current = current.with_halfspace(K.halfspaces()[i]);
    }

    chain.target = mode == ComplementMode::Set ? TargetSet::complement(K)
                                               : TargetSet::interior_complement(K);
    return chain;
}

std::size_t bounded_stage_count(const Polyhedron& K, ComplementMode mode) {
    // orthant chain: base length + (3 or 5) per added dimension; the cone
    // conjugation adds 1, each cut block 3 (set) or 6 (interior)
    std::size_t n = K.ambient_dim();
    std::size_t m = K.minimal_indices().size();
    std::size_t per_dim = mode == ComplementMode::Set ? 3 : 5;
    std::size_t base_len = 1;  // both stock quadrant fixtures are single stages
    std::size_t orth = base_len + per_dim * (n - 2);
    std::size_t block = mode == ComplementMode::Set ? 3 : 6;
    return orth + 1 + block * (m + 1);
}

MapChain unbounded_complement(const Polyhedron& K, ComplementMode mode,
                              const Registry& bases) {
    std::size_t n = K.ambient_dim();
    PolyClass cls = K.classify();
    if (cls == PolyClass::Layer || cls == PolyClass::Hyperplane)
        throw UnsupportedCase(poly_class_name(cls) +
                              " disconnects R^n; its complement is not a connected image");

    if (cls == PolyClass::Halfspace) {
        const HalfSpace& h = K.halfspaces()[K.minimal_indices()[0]];
        AffineMap B = halfspace_to_coordinate(h, n, 0);
        MapChain chain;
        if (mode == ComplementMode::Set) {
            chain.push(make_halfplane_g2_stage(n));
            chain.push(make_affine_stage(B.inverse()));
            chain.target = TargetSet::complement(K);
        } else {
            chain.push(make_square1_stage(n, +1));
            chain.push(make_affine_stage(B.inverse()));
            chain.target = TargetSet::interior_complement(K);
        }
        return chain;
    }

    if (cls == PolyClass::DegenerateProduct) {
        // split off the lineality directions: constraints live on the first k
        // coordinates after the change of basis
        std::vector<RatVec> rows;
        for (std::size_t i : K.minimal_indices()) {
            RatVec nrm = K.halfspaces()[i].normal();
            RatMat test(rows.size() + 1, n);
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t j = 0; j < n; ++j) test.at(r, j) = rows[r][j];
            for (std::size_t j = 0; j < n; ++j) test.at(rows.size(), j) = nrm[j];
            if (rank(test) == rows.size() + 1) rows.push_back(nrm);
        }
        std::size_t k = rows.size();
        assert(k >= 2 && k < n);
        RatMat M = complete_to_basis(rows, n);
        AffineMap T(M, RatVec(n, Rat(0)));
        Polyhedron placed = K.transformed(T);
        std::vector<HalfSpace> factor_hs;
        for (const auto& h : placed.halfspaces()) {
            for (std::size_t j = k; j < n; ++j) assert(h.coeffs[j + 1] == 0);
            RatVec c(h.coeffs.begin(), h.coeffs.begin() + k + 1);
            factor_hs.push_back({std::move(c)});
        }
        Polyhedron factor(k, std::move(factor_hs), K.name() + "-factor");
        MapChain sub = complement(factor, mode, bases);
        MapChain chain;
        chain.push(make_affine_stage(T));
        append_lifted(chain, sub, n, 0);
        chain.push(make_affine_stage(T.inverse()));
        chain.target = mode == ComplementMode::Set ? TargetSet::complement(K)
                                                   : TargetSet::interior_complement(K);
        return chain;
    }

    assert(cls == PolyClass::Nondegenerate);
    std::size_t m = K.minimal_indices().size();
    if (m == n) {
        const auto& mins = K.minimal_indices();
        RatMat rowsm(n, n);
        RatVec tr(n);
        for (std::size_t r = 0; r < n; ++r) {
            const HalfSpace& h = K.halfspaces()[mins[r]];
            for (std::size_t j = 0; j < n; ++j) rowsm.at(r, j) = h.coeffs[j + 1];
            tr[r] = h.coeffs[0];
        }
        AffineMap cone_map(rowsm, tr);
        if (!cone_map.invertible())
            throw std::logic_error("nondegenerate cone with dependent facet normals");
        MapChain chain = orthant_complement(n, mode, bases);
        chain.push(make_affine_stage(cone_map.inverse()));
        chain.target = mode == ComplementMode::Set ? TargetSet::complement(K)
                                                   : TargetSet::interior_complement(K);
        return chain;
    }

    // m > n: place extreme, recurse on the facet-dropped polyhedron, trim
    for (std::size_t pos = 0; pos < m; ++pos) {
        AffineMap T;
        try {
            T = place_extreme_first(K, pos);
        } catch (const PlacementError&) {
            continue;
        }
        Polyhedron placed = K.transformed(T);
        PositionReport prep = check_first_position(placed);
        if (!prep.extreme_facet) continue;
        Polyhedron dropped = placed.drop_minimal_member(*prep.extreme_facet);

        MapChain chain = unbounded_complement(dropped, mode, bases);
        PositionReport drep = check_first_position(dropped);
        chain.push(trim1_for(dropped, drep, std::nullopt));
        if (mode == ComplementMode::Interior) {
            AffineMap swap = AffineMap::swap_coords(n, n - 2, n - 1);
            chain.push(make_affine_stage(swap));
            Polyhedron cut = placed.transformed(swap);
            PositionReport srep = check_second_position(cut);
            chain.push(trim2_for(cut, srep, std::nullopt));
            chain.push(make_affine_stage(swap));
        }
        chain.push(make_affine_stage(T.inverse()));
        chain.target = mode == ComplementMode::Set ? TargetSet::complement(K)
                                                   : TargetSet::interior_complement(K);
        return chain;
    }

    if (n == 2) {
        BaseMapKey key;
        key.kind = mode == ComplementMode::Set ? BaseMapKey::Kind::PolygonComplement
                                               : BaseMapKey::Kind::PolygonInteriorComplement;
        key.polygon = canonical_polygon(K);
        MapChain base = bases.get(key);
        base.target = mode == ComplementMode::Set ? TargetSet::complement(K)
                                                  : TargetSet::interior_complement(K);
        return base;
    }
    throw std::logic_error("unbounded_complement: no facet admitted a placement");
}

RadialCoeffs radial_poly(std::size_t n) {
    if (n < 2) throw std::invalid_argument("radial_poly: n >= 2");
    long ln = static_cast<long>(n);
    Rat n1 = Rat(1 + ln);
    Rat n3 = Rat(ln) * Rat(ln) * Rat(ln);
    RadialCoeffs rc;
    rc.a = Rat(1 + 2 * ln) / (2 * n3 * n1 * n1);
    rc.b = -Rat(1 + 2 * ln + 3 * ln * ln + 4 * ln * ln * ln) / (2 * n3 * n1 * n1);
    rc.c = Rat(3 + 6 * ln + 4 * ln * ln + 2 * ln * ln * ln) / (2 * Rat(ln) * n1 * n1);
    return rc;
}

MapChain ball_complement(std::size_t n, bool closed, const Registry& bases) {
    if (n < 2) throw UnsupportedCase("ball complements need n >= 2");
    std::vector<std::pair<Rat, Rat>> bounds(n, {Rat(-1), Rat(1)});
    MapChain cube = bounded_complement(Polyhedron::box(bounds), ComplementMode::Set, bases);
    RadialCoeffs rc = radial_poly(n);
    MapChain open_chain = cube;
    open_chain.push(make_radial_stage(n, rc.a, rc.b, rc.c));
    open_chain.target = TargetSet::open_ball_complement(n);
    if (!closed) return open_chain;

    MapChain chain;
    chain.push(make_halfplane_g2_stage(n + 1));
    append_lifted(chain, open_chain, n + 1, 1);
    chain.push(make_scale_collapse_stage(n));
    chain.target = TargetSet::closed_ball_complement(n);
    return chain;
}

MapChain complement(const Polyhedron& K, ComplementMode mode, const Registry& bases) {
    std::size_t n = K.ambient_dim();
    if (n < 2) throw UnsupportedCase("complements need ambient dimension >= 2");
    if (K.is_full_space())
        throw std::invalid_argument("complement: K = R^n has empty complement");
    if (K.is_empty())
        throw std::invalid_argument("complement: empty polyhedron");
    PolyClass cls = K.classify();
    if (cls == PolyClass::Layer || cls == PolyClass::Hyperplane)
        throw UnsupportedCase(poly_class_name(cls) +
                              " disconnects R^n; its complement is not a connected image");

    long d = K.dim();
    if (d < static_cast<long>(n)) {
        // place the affine hull into {x_{d+1} = ... = x_n = 0}
        std::vector<RatVec> eq_rows;
        std::vector<Rat> eq_consts;
        for (std::size_t i : K.equality_indices()) {
            const HalfSpace& h = K.halfspaces()[i];
            RatVec nrm = h.normal();
            RatMat test(eq_rows.size() + 1, n);
            for (std::size_t r = 0; r < eq_rows.size(); ++r)
                for (std::size_t j = 0; j < n; ++j) test.at(r, j) = eq_rows[r][j];
            for (std::size_t j = 0; j < n; ++j) test.at(eq_rows.size(), j) = nrm[j];
            if (rank(test) == eq_rows.size() + 1) {
                eq_rows.push_back(nrm);
                eq_consts.push_back(h.coeffs[0]);
            }
        }
        std::size_t codim = eq_rows.size();
        assert(codim == n - static_cast<std::size_t>(d));
        // rows: completion first (tangent coordinates), then the equalities
        RatMat full = complete_to_basis(eq_rows, n);
        RatMat Mrows(n, n);
        RatVec tr(n, Rat(0));
        for (std::size_t r = 0; r < n - codim; ++r)
            for (std::size_t j = 0; j < n; ++j)
                Mrows.at(r, j) = full.at(codim + r, j);
        for (std::size_t r = 0; r < codim; ++r) {
            for (std::size_t j = 0; j < n; ++j)
                Mrows.at(n - codim + r, j) = eq_rows[r][j];
            tr[n - codim + r] = eq_consts[r];
        }
        AffineMap T(Mrows, tr);
        if (!T.invertible()) throw std::logic_error("hull placement singular");

        // S' over the first n-1 placed coordinates: transformed facet
        // inequalities with the last coordinate set to zero, plus equality
        // pairs for the middle coordinates
        std::vector<std::pair<MPoly, bool>> ineqs;
        bool strict = mode == ComplementMode::Interior;
        for (std::size_t i : K.facet_indices()) {
            RatVec pushed = T.push_functional(K.halfspaces()[i].coeffs);
            MPoly g = MPoly::constant(n - 1, pushed[0]);
            for (std::size_t j = 0; j + 1 < n; ++j)
                if (pushed[j + 1] != 0)
                    g = g + MPoly::variable(n - 1, j).scaled(pushed[j + 1]);
            // the facet functional restricted to the slice must not pick up
            // the dropped coordinate; it cannot, since the hull lies in the
            // slice and the facet cuts within the hull
            ineqs.emplace_back(std::move(g), strict);
        }
        for (std::size_t j = static_cast<std::size_t>(d); j + 1 < n; ++j) {
            MPoly y = MPoly::variable(n - 1, j);
            ineqs.emplace_back(y, false);
            ineqs.emplace_back(-y, false);
        }
        return lower_dim_complement(n, T, ineqs);
    }

    if (K.is_bounded()) return bounded_complement(K, mode, bases);
    return unbounded_complement(K, mode, bases);
}

}  // namespace polyimage
