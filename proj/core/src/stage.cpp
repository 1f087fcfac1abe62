#include "polyimage/stage.hpp"

#include <cassert>
#include <stdexcept>

namespace polyimage {

std::string stage_kind_name(StageKind k) {
    switch (k) {
        case StageKind::Affine: return "affine";
        case StageKind::Trim1: return "trim1";
        case StageKind::Trim2Poly: return "trim2-poly";
        case StageKind::Trim2Reg: return "trim2-reg";
        case StageKind::PresemialF1: return "presemial-f1";
        case StageKind::PresemialF2: return "presemial-f2";
        case StageKind::F0Lift: return "f0-lift";
        case StageKind::Radial: return "radial";
        case StageKind::HalfplaneG2: return "halfplane-g2";
        case StageKind::ScaleCollapse: return "scale-collapse";
        case StageKind::Square1: return "square1";
        case StageKind::Base2D: return "base2d";
    }
    return "?";
}

std::optional<StageKind> stage_kind_from_name(const std::string& s) {
    for (StageKind k :
         {StageKind::Affine, StageKind::Trim1, StageKind::Trim2Poly, StageKind::Trim2Reg,
          StageKind::PresemialF1, StageKind::PresemialF2, StageKind::F0Lift,
          StageKind::Radial, StageKind::HalfplaneG2, StageKind::ScaleCollapse,
          StageKind::Square1, StageKind::Base2D})
        if (stage_kind_name(k) == s) return k;
    return std::nullopt;
}

bool Stage::is_polynomial() const {
    for (const auto& c : components)
        if (!c.is_polynomial()) return false;
    return true;
}

RatVec Stage::eval(const RatVec& x) const {
    if (x.size() != in_dim) throw std::invalid_argument("Stage::eval: dimension mismatch");
    if (kind == StageKind::Affine) return affine->apply(x);
    RatVec y(out_dim);
    for (std::size_t i = 0; i < out_dim; ++i) y[i] = components[i].eval(x);
    return y;
}

std::vector<double> Stage::eval_double(const std::vector<double>& x) const {
    assert(x.size() == in_dim);
    std::vector<double> y(out_dim);
    for (std::size_t i = 0; i < out_dim; ++i) y[i] = components[i].eval_double(x);
    return y;
}

long Stage::max_component_degree() const {
    long d = 0;
    for (const auto& c : components) {
        d = std::max(d, c.num().total_degree());
        d = std::max(d, c.den().total_degree());
    }
    return d;
}

namespace {

std::vector<RatFn> identity_components(std::size_t n) {
    std::vector<RatFn> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(RatFn::from_poly(MPoly::variable(n, i)));
    return out;
}

}  // namespace

Stage make_affine_stage(const AffineMap& T) {
    Stage s;
    s.kind = StageKind::Affine;
    s.in_dim = T.dim_in();
    s.out_dim = T.dim_out();
    s.affine = T;
    for (std::size_t i = 0; i < s.out_dim; ++i) {
        MPoly p = MPoly::constant(s.in_dim, T.translation()[i]);
        for (std::size_t j = 0; j < s.in_dim; ++j)
            if (T.linear().at(i, j) != 0)
                p = p + MPoly::variable(s.in_dim, j).scaled(T.linear().at(i, j));
        s.components.push_back(RatFn::from_poly(p));
    }
    return s;
}

Stage make_f0_lift_stage(std::size_t n) {
    // (x_1, ..., x_{n+1}) -> (x_1 x_{n+1}, ..., x_n x_{n+1}, x_{n+1})
    Stage s;
    s.kind = StageKind::F0Lift;
    s.in_dim = s.out_dim = n + 1;
    for (std::size_t i = 0; i < n; ++i)
        s.components.push_back(RatFn::from_poly(
            MPoly::variable(n + 1, i) * MPoly::variable(n + 1, n)));
    s.components.push_back(RatFn::from_poly(MPoly::variable(n + 1, n)));
    return s;
}

Stage make_radial_stage(std::size_t n, const Rat& a, const Rat& b, const Rat& c) {
    // x -> (a ||x||^4 + b ||x||^2 + c) x
    Stage s;
    s.kind = StageKind::Radial;
    s.in_dim = s.out_dim = n;
    MPoly norm2(n);
    for (std::size_t i = 0; i < n; ++i) norm2 = norm2 + MPoly::variable(n, i, 2);
    MPoly g = norm2 * norm2 * MPoly::constant(n, a) + norm2.scaled(b) + MPoly::constant(n, c);
    for (std::size_t i = 0; i < n; ++i)
        s.components.push_back(RatFn::from_poly(g * MPoly::variable(n, i)));
    return s;
}

Stage make_halfplane_g2_stage(std::size_t n) {
    assert(n >= 2);
    Stage s;
    s.kind = StageKind::HalfplaneG2;
    s.in_dim = s.out_dim = n;
    MPoly x = MPoly::variable(n, 0), y = MPoly::variable(n, 1);
    MPoly sxy = x * y - MPoly::constant(n, Rat(1));
    s.components.push_back(RatFn::from_poly(sxy * sxy + x * x));
    s.components.push_back(RatFn::from_poly(y * sxy));
    for (std::size_t i = 2; i < n; ++i)
        s.components.push_back(RatFn::from_poly(MPoly::variable(n, i)));
    return s;
}

Stage make_scale_collapse_stage(std::size_t n) {
    Stage s;
    s.kind = StageKind::ScaleCollapse;
    s.in_dim = n + 1;
    s.out_dim = n;
    MPoly scale = MPoly::constant(n + 1, Rat(1)) + MPoly::variable(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        s.components.push_back(RatFn::from_poly(scale * MPoly::variable(n + 1, i + 1)));
    return s;
}

Stage make_square1_stage(std::size_t n, int sign) {
    Stage s;
    s.kind = StageKind::Square1;
    s.in_dim = s.out_dim = n;
    s.components.push_back(RatFn::from_poly(
        MPoly::variable(n, 0, 2).scaled(Rat(sign >= 0 ? 1 : -1))));
    for (std::size_t i = 1; i < n; ++i)
        s.components.push_back(RatFn::from_poly(MPoly::variable(n, i)));
    return s;
}

Stage make_base2d_stage(std::vector<RatFn> components, std::string key) {
    if (components.size() != 2 || components[0].nvars() != 2)
        throw std::invalid_argument("base2d stage must map R^2 -> R^2");
    Stage s;
    s.kind = StageKind::Base2D;
    s.in_dim = s.out_dim = 2;
    s.components = std::move(components);
    s.base_key = std::move(key);
    return s;
}

Stage lifted_stage(const Stage& s, std::size_t new_in, std::size_t shift) {
    assert(s.in_dim == s.out_dim);  // only square stages are lifted
    assert(shift + s.in_dim <= new_in);
    Stage out;
    out.kind = s.kind;
    out.in_dim = out.out_dim = new_in;
    if (s.P) out.P = s.P->embedded(new_in, shift);
    if (s.Q) out.Q = s.Q->embedded(new_in, shift);
    out.M = s.M;
    if (s.presemial_g)
        out.presemial_g = s.presemial_g->embedded(new_in, shift);
    out.base_key = s.base_key;
    if (s.axis) out.axis = *s.axis + shift;
    if (s.cut_axis) out.cut_axis = *s.cut_axis + shift;
    if (s.trim_source) out.trim_source = s.trim_source->embedded(new_in, shift);
    std::size_t k = 0;
    for (std::size_t i = 0; i < new_in; ++i) {
        if (i >= shift && i < shift + s.in_dim) {
            const RatFn& c = s.components[i - shift];
            MPoly num = c.num().embedded(new_in, shift);
            MPoly den = c.den().embedded(new_in, shift);
            // re-derive the certificate in the larger variable space
            if (c.is_polynomial()) {
                out.components.push_back(
                    RatFn(num, den, DenCert::make_constant(den.constant_value())));
            } else {
                DenCert cp = DenCert::make_coeff_positive();
                if (cert_check(den, cp)) {
                    out.components.push_back(RatFn(num, den, cp));
                } else {
                    DenCert cert = c.cert();
                    // embed the pieces of a sos-incompatible certificate
                    if (cert.kind == DenCert::Kind::SosIncompatible) {
                        DenCert e = DenCert::make_sos_incompatible(
                            cert.f.embedded(new_in, shift), cert.g.embedded(new_in, shift),
                            cert.G.embedded(new_in, shift), cert.u.embedded(new_in, shift),
                            cert.v.embedded(new_in, shift));
                        out.components.push_back(RatFn(num, den, e));
                    } else {
                        throw std::logic_error("lifted_stage: cannot embed certificate");
                    }
                }
            }
        } else {
            out.components.push_back(RatFn::from_poly(MPoly::variable(new_in, i)));
        }
        ++k;
    }
    if (s.kind == StageKind::Affine && s.affine) {
        // rebuild the block-diagonal affine map
        RatMat L = RatMat::identity(new_in);
        RatVec t(new_in, Rat(0));
        for (std::size_t i = 0; i < s.in_dim; ++i) {
            t[shift + i] = s.affine->translation()[i];
            for (std::size_t j = 0; j < s.in_dim; ++j)
                L.at(shift + i, shift + j) = s.affine->linear().at(i, j);
        }
        out.affine = AffineMap(L, t);
    }
    return out;
}

}  // namespace polyimage
