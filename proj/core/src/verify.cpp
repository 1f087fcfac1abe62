#include "polyimage/verify.hpp"

#include "polyimage/interval.hpp"
#include "polyimage/uroots.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace polyimage {

bool VerifyReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void VerifyReport::add(CheckResult r) { checks.push_back(std::move(r)); }

void VerifyReport::merge(const VerifyReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
}

// ---------------------------------------------------------------------------
// sampler

Sampler::Sampler(std::size_t dim, const SamplerConfig& cfg)
    : dim_(dim), radii_(cfg.radius_schedule), state_(cfg.seed ^ 0x9e3779b97f4a7c15ULL),
      structured_(cfg.structured_extras) {
    if (radii_.empty()) radii_ = {1};
}

std::uint64_t Sampler::next_u64() {
    // splitmix64: deterministic and platform-stable
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long Sampler::next_range(long lo, long hi) {
    return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

RatVec Sampler::next() {
    std::size_t k = emitted_++;
    if (structured_ && k < 6 * dim_ + 1) {
        // origin, +-e_i, +-(1/2) e_i, +-r_max e_i
        if (k == 0) return RatVec(dim_, Rat(0));
        std::size_t j = k - 1;
        std::size_t i = (j / 2) % dim_;
        int sign = (j % 2 == 0) ? 1 : -1;
        RatVec x(dim_, Rat(0));
        std::size_t tier = j / (2 * dim_);
        switch (tier) {
            case 0: x[i] = Rat(sign); break;
            case 1: x[i] = rat(sign, 2); break;
            default: x[i] = rat(sign * radii_.back(), 1); break;
        }
        return x;
    }
    long r = radii_[next_u64() % radii_.size()];
    RatVec x(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        long den = next_range(1, 8);
        long num = next_range(-r * den, r * den);
        x[i] = rat(num, den);
    }
    return x;
}

// ---------------------------------------------------------------------------
// forward membership with interval escalation

namespace {

constexpr mpfr_prec_t kPrecLevels[] = {96, 384, 1536};

std::vector<Ival> chain_eval_interval(const MapChain& chain, const RatVec& x,
                                      mpfr_prec_t prec, bool& ok) {
    std::vector<Ival> y;
    y.reserve(x.size());
    for (const Rat& v : x) y.push_back(Ival::from_rat(v, prec));
    for (const auto& s : chain.stages) {
        std::vector<Ival> z;
        z.reserve(s.out_dim);
        for (const auto& comp : s.components) {
            auto val = ival_eval(comp, y, prec);
            if (!val) {
                ok = false;
                return {};
            }
            z.push_back(std::move(*val));
        }
        y = std::move(z);
    }
    ok = true;
    return y;
}

// tri-state membership on interval data: 1 member, 0 not, -1 undecided
int member_interval(const TargetSet& t, const std::vector<Ival>& y, mpfr_prec_t prec) {
    switch (t.kind) {
        case TargetSet::Kind::Complement: {
            bool undecided = false;
            for (const auto& h : t.K.halfspaces()) {
                Ival v = Ival::from_rat(h.coeffs[0], prec);
                for (std::size_t i = 0; i < t.dim; ++i)
                    v = v + Ival::from_rat(h.coeffs[i + 1], prec) * y[i];
                int s = v.sign();
                if (s < 0) return 1;
                if (s == 0) undecided = true;
            }
            return undecided ? -1 : 0;
        }
        case TargetSet::Kind::InteriorComplement: {
            bool undecided = false;
            for (std::size_t i : t.K.minimal_indices()) {
                const auto& h = t.K.halfspaces()[i];
                Ival v = Ival::from_rat(h.coeffs[0], prec);
                for (std::size_t j = 0; j < t.dim; ++j)
                    v = v + Ival::from_rat(h.coeffs[j + 1], prec) * y[j];
                int s = v.sign();
                if (s < 0) return 1;
                if (s == 0) undecided = true;  // possibly exactly on the boundary
            }
            return undecided ? -1 : 0;
        }
        case TargetSet::Kind::OpenBallComplement:
        case TargetSet::Kind::ClosedBallComplement: {
            Ival n2(prec);
            for (const auto& v : y) n2 = n2 + v * v;
            Ival diff = n2 - Ival::from_long(1, prec);
            int s = diff.sign();
            if (s > 0) return 1;
            if (s < 0) return 0;
            return -1;
        }
        case TargetSet::Kind::LowerDimComplement: {
            const AffineMap& T = *t.placement;
            std::vector<Ival> z;
            for (std::size_t i = 0; i < t.dim; ++i) {
                Ival v = Ival::from_rat(T.translation()[i], prec);
                for (std::size_t j = 0; j < t.dim; ++j)
                    v = v + Ival::from_rat(T.linear().at(i, j), prec) * y[j];
                z.push_back(std::move(v));
            }
            int s_last = z[t.dim - 1].sign();
            if (s_last != 0) return 1;  // off the slice hyperplane
            return -1;
        }
    }
    return -1;
}

}  // namespace

bool forward_member(const MapChain& chain, const RatVec& x, bool* used_exact) {
    if (used_exact) *used_exact = false;
    for (mpfr_prec_t prec : kPrecLevels) {
        bool ok = false;
        std::vector<Ival> y = chain_eval_interval(chain, x, prec, ok);
        if (!ok) continue;
        int m = member_interval(chain.target, y, prec);
        if (m >= 0) return m == 1;
    }
    if (used_exact) *used_exact = true;
    RatVec y = chain.eval(x);
    return chain.target.member(y);
}

VerifyReport forward_containment(const MapChain& chain, const SamplerConfig& cfg) {
    VerifyReport rep;
    CheckResult res;
    res.name = "forward-containment";
    Sampler sampler(chain.in_dim, cfg);
    for (std::size_t k = 0; k < cfg.forward_count; ++k) {
        RatVec x = sampler.next();
        ++res.tested;
        if (!forward_member(chain, x)) {
            ++res.failures;
            if (res.witnesses.size() < 5) res.witnesses.push_back(vec_str(x));
            res.pass = false;
        }
    }
    rep.add(std::move(res));
    return rep;
}

// ---------------------------------------------------------------------------
// coverage: backward walk

namespace {

UPoly fiber_restrict(const MPoly& f, const RatVec& vals, std::size_t axis) {
    MPoly g = f;
    for (std::size_t i = 0; i < f.nvars(); ++i)
        if (i != axis) g = g.substitute(i, vals[i]);
    UPoly u;
    for (const auto& [e, c] : g.terms()) {
        unsigned d = e[axis];
        if (u.size() <= d) u.resize(d + 1, Rat(0));
        u[d] += c;
    }
    return u;
}

struct WalkCfg {
    Rat width;   // root refinement width
    long budget; // remaining recursion nodes
    std::uint64_t newton_seed = 7;
};

std::optional<RatVec> walk(const std::vector<Stage>& stages, std::size_t k, RatVec z,
                           WalkCfg& cfg);

std::vector<Rat> fiber_candidates(const Stage& s, const RatVec& z, WalkCfg& cfg) {
    std::size_t axis = *s.axis;
    const RatFn& comp = s.components[axis];
    UPoly num = fiber_restrict(comp.num(), z, axis);
    UPoly den = fiber_restrict(comp.den(), z, axis);
    UPoly eq = upsub(num, upscale(z[axis], den));
    std::vector<Rat> out;
    if (updeg(eq) < 1) return out;
    for (RootInterval iv : isolate_real_roots(eq).intervals) {
        refine_root(eq, iv, cfg.width);
        out.push_back(iv.exact() ? iv.lo : iv.mid());
    }
    return out;
}

// points outside the stage's source polyhedron first
void order_by_source(const Stage& s, const RatVec& base, std::size_t axis,
                     std::vector<Rat>& cands) {
    if (!s.trim_source) return;
    std::stable_sort(cands.begin(), cands.end(), [&](const Rat& a, const Rat& b) {
        RatVec xa = base, xb = base;
        xa[axis] = a;
        xb[axis] = b;
        bool oa = !s.trim_source->contains(xa, false);
        bool ob = !s.trim_source->contains(xb, false);
        return oa && !ob;
    });
}

// restrict a polynomial using only variables a and b to two variables
MPoly collapse_two(const MPoly& f, std::size_t a, std::size_t b) {
    MPoly out(2);
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != a && i != b) assert(e[i] == 0);
        out.add_term({e[a], e[b]}, c);
    }
    return out;
}

// damped Newton in doubles for opaque 2-D polynomial blocks (base maps,
// possibly lifted into a larger space where they move coordinates a, a+1)
std::optional<RatVec> newton_2d(const Stage& s, const RatVec& zfull, WalkCfg& cfg,
                                std::size_t block) {
    const MPoly f0 = collapse_two(s.components[block].num(), block, block + 1);
    const MPoly f1 = collapse_two(s.components[block + 1].num(), block, block + 1);
    RatVec z = {zfull[block], zfull[block + 1]};
    double d0 = rat_double(s.components[block].den().constant_value());
    double d1 = rat_double(s.components[block + 1].den().constant_value());
    double t0 = rat_double(z[0]), t1 = rat_double(z[1]);
    MPoly f0x = f0.partial(0), f0y = f0.partial(1);
    MPoly f1x = f1.partial(0), f1y = f1.partial(1);

    std::uint64_t rs = cfg.newton_seed;
    auto rnd = [&rs]() {
        rs ^= rs << 13;
        rs ^= rs >> 7;
        rs ^= rs << 17;
        return static_cast<double>(rs % 20001) / 10000.0 - 1.0;
    };
    std::vector<std::pair<double, double>> starts;
    double mag = std::pow(std::abs(t0) + std::abs(t1) + 1.0, 1.0 / 6.0);
    starts.push_back({0.0, 0.0});  // fixed points sit on the axes
    starts.push_back({1.0, 0.0});
    starts.push_back({0.0, 1.0});
    for (double sx : {-1.0, -0.4, 0.4, 1.0})
        for (double sy : {-1.0, -0.4, 0.4, 1.0}) starts.push_back({sx * mag, sy * mag});
    for (int i = 0; i < 48; ++i) starts.push_back({3 * mag * rnd(), 3 * mag * rnd()});

    for (auto [x, y] : starts) {
        for (int it = 0; it < 80; ++it) {
            std::vector<double> p = {x, y};
            double r0 = f0.eval_double(p) / d0 - t0;
            double r1 = f1.eval_double(p) / d1 - t1;
            if (std::abs(r0) + std::abs(r1) <
                1e-10 * (1 + std::abs(t0) + std::abs(t1))) {
                // exact rational Newton polish: a few steps reach residuals
                // far below anything the downstream stages can amplify
                RatVec w = {rat_round(Rat(x), 80), rat_round(Rat(y), 80)};
                Rat c0 = s.components[block].den().constant_value();
                Rat c1 = s.components[block + 1].den().constant_value();
                for (int ps = 0; ps < 4; ++ps) {
                    Rat g0 = f0.eval(w) / c0 - z[0];
                    Rat g1 = f1.eval(w) / c1 - z[1];
                    Rat ja = f0.partial(0).eval(w) / c0, jb = f0.partial(1).eval(w) / c0;
                    Rat jc = f1.partial(0).eval(w) / c1, jd = f1.partial(1).eval(w) / c1;
                    Rat det = ja * jd - jb * jc;
                    if (det == 0) break;
                    w[0] = rat_round(w[0] - (jd * g0 - jb * g1) / det, 700);
                    w[1] = rat_round(w[1] - (-jc * g0 + ja * g1) / det, 700);
                }
                return w;
            }
            double a = f0x.eval_double(p) / d0, b = f0y.eval_double(p) / d0;
            double c = f1x.eval_double(p) / d1, d = f1y.eval_double(p) / d1;
            double det = a * d - b * c;
            if (std::abs(det) < 1e-14) {
                x += 0.3 * rnd();
                y += 0.3 * rnd();
                continue;
            }
            double dx = (d * r0 - b * r1) / det;
            double dy = (-c * r0 + a * r1) / det;
            double step = 1.0;
            if (std::abs(dx) + std::abs(dy) > 4.0)
                step = 4.0 / (std::abs(dx) + std::abs(dy));
            x -= step * dx;
            y -= step * dy;
            if (!std::isfinite(x) || !std::isfinite(y)) break;
        }
    }
    return std::nullopt;
}

std::optional<RatVec> stage_backward(const std::vector<Stage>& stages, std::size_t k,
                                     const RatVec& z, WalkCfg& cfg) {
    const Stage& s = stages[k - 1];
    switch (s.kind) {
        case StageKind::Affine: {
            if (!s.affine->invertible()) return std::nullopt;
            return walk(stages, k - 1, s.affine->inverse().apply(z), cfg);
        }
        case StageKind::Trim1:
        case StageKind::Trim2Poly:
        case StageKind::Trim2Reg:
        case StageKind::PresemialF1:
        case StageKind::PresemialF2: {
            std::size_t axis = *s.axis;
            std::vector<Rat> cands = fiber_candidates(s, z, cfg);
            order_by_source(s, z, axis, cands);
            for (const Rat& t : cands) {
                RatVec w = z;
                w[axis] = t;
                if (auto r = walk(stages, k - 1, w, cfg)) return r;
                if (cfg.budget <= 0) return std::nullopt;
            }
            return std::nullopt;
        }
        case StageKind::F0Lift: {
            std::size_t n1 = s.in_dim;
            RatVec w(n1, Rat(0));
            Rat t = z[n1 - 1];
            if (t == 0) {
                for (std::size_t i = 0; i + 1 < n1; ++i)
                    if (z[i] != 0) return std::nullopt;
                return walk(stages, k - 1, w, cfg);
            }
            for (std::size_t i = 0; i + 1 < n1; ++i) w[i] = z[i] / t;
            w[n1 - 1] = t;
            return walk(stages, k - 1, w, cfg);
        }
        case StageKind::Radial: {
            Rat u = vec_norm2(z);
            if (u == 0) return std::nullopt;
            // s * (a s^4 u^2 + b s^2 u + c) = 1 along the ray x = s z, with
            // the radial coefficients read back from the first component
            const MPoly& comp = s.components[0].num();
            Exponents ea(s.in_dim, 0), eb(s.in_dim, 0), ec(s.in_dim, 0);
            ea[0] = 1;
            if (s.in_dim >= 2) ea[1] = 4;
            eb[0] = 1;
            if (s.in_dim >= 2) eb[1] = 2;
            ec[0] = 1;
            Rat a = comp.coeff(ea), b = comp.coeff(eb), c = comp.coeff(ec);
            UPoly eq = {Rat(-1), c, Rat(0), b * u, Rat(0), a * u * u};
            std::vector<Rat> roots;
            for (RootInterval iv : isolate_real_roots(eq).intervals) {
                refine_root(eq, iv, cfg.width);
                roots.push_back(iv.exact() ? iv.lo : iv.mid());
            }
            std::sort(roots.begin(), roots.end(), [](const Rat& p, const Rat& q) {
                return rat_abs(p) > rat_abs(q);
            });
            for (const Rat& sc : roots) {
                if (auto r = walk(stages, k - 1, vec_scale(sc, z), cfg)) return r;
                if (cfg.budget <= 0) return std::nullopt;
            }
            return std::nullopt;
        }
        case StageKind::ScaleCollapse: {
            Rat u = vec_norm2(z);
            if (u <= 1) return std::nullopt;
            std::vector<Rat> lambdas;
            for (int e = 1; e <= 60 && lambdas.size() < 8; ++e) {
                Rat lam = Rat(1) + rat(1, 1L << std::min(e, 40));
                if (lam * lam < u) lambdas.push_back(lam);
            }
            for (const Rat& lam : lambdas) {
                RatVec w(s.in_dim);
                w[0] = lam - 1;
                for (std::size_t i = 0; i + 1 < s.in_dim; ++i) w[i + 1] = z[i] / lam;
                if (auto r = walk(stages, k - 1, w, cfg)) return r;
                if (cfg.budget <= 0) return std::nullopt;
            }
            return std::nullopt;
        }
        case StageKind::HalfplaneG2: {
            Rat u = z[0], v = z[1];
            if (u <= 0) return std::nullopt;
            std::vector<std::pair<Rat, Rat>> xy;
            if (v == 0) {
                UPoly eq = {-u, Rat(0), Rat(1)};  // x^2 = u, y = 1/x
                for (RootInterval iv : isolate_real_roots(eq).intervals) {
                    refine_root(eq, iv, cfg.width);
                    Rat x = iv.exact() ? iv.lo : iv.mid();
                    if (x > 0) xy.push_back({x, Rat(1) / x});
                }
            } else {
                // s^2 (v^2 + (1+s)^2) - u v^2 = 0
                UPoly eq = {-u * v * v, Rat(0), v * v + Rat(1), Rat(2), Rat(1)};
                for (RootInterval iv : isolate_real_roots(eq).intervals) {
                    refine_root(eq, iv, cfg.width);
                    Rat sr = iv.exact() ? iv.lo : iv.mid();
                    if (sr == 0) continue;
                    xy.push_back({sr * (Rat(1) + sr) / v, v / sr});
                }
            }
            for (const auto& [x, yv] : xy) {
                RatVec w = z;
                w[0] = x;
                w[1] = yv;
                if (auto r = walk(stages, k - 1, w, cfg)) return r;
                if (cfg.budget <= 0) return std::nullopt;
            }
            return std::nullopt;
        }
        case StageKind::Square1: {
            Exponents e2(s.in_dim, 0);
            e2[0] = 2;
            Rat lead = s.components[0].num().coeff(e2);
            Rat want = z[0] / lead;
            if (want < 0) return std::nullopt;
            UPoly eq = {-want, Rat(0), Rat(1)};
            for (RootInterval iv : isolate_real_roots(eq).intervals) {
                refine_root(eq, iv, cfg.width);
                Rat root = iv.exact() ? iv.lo : iv.mid();
                RatVec w = z;
                w[0] = root;
                if (auto r = walk(stages, k - 1, w, cfg)) return r;
                if (cfg.budget <= 0) return std::nullopt;
            }
            return std::nullopt;
        }
        case StageKind::Base2D: {
            // locate the moving 2x2 block (identity elsewhere after lifting)
            std::size_t block = s.in_dim;
            for (std::size_t i = 0; i + 1 < s.in_dim; ++i) {
                if (!(s.components[i].num() == MPoly::variable(s.in_dim, i))) {
                    block = i;
                    break;
                }
            }
            if (block + 1 >= s.in_dim + 1 && s.in_dim >= 2) block = 0;
            if (block + 1 > s.in_dim - 1 && s.in_dim == 2) block = 0;
            if (block >= s.in_dim) block = 0;
            auto pre = newton_2d(s, z, cfg, block);
            if (!pre) return std::nullopt;
            RatVec w = z;
            w[block] = (*pre)[0];
            w[block + 1] = (*pre)[1];
            return walk(stages, k - 1, w, cfg);
        }
    }
    return std::nullopt;
}

std::optional<RatVec> walk(const std::vector<Stage>& stages, std::size_t k, RatVec z,
                           WalkCfg& cfg) {
    if (--cfg.budget <= 0) return std::nullopt;
    if (k == 0) return z;
    return stage_backward(stages, k, z, cfg);
}

bool residual_below(const MapChain& chain, const RatVec& x, const RatVec& y,
                    const Rat& eps) {
    for (mpfr_prec_t prec : kPrecLevels) {
        bool ok = false;
        std::vector<Ival> img = chain_eval_interval(chain, x, prec, ok);
        if (!ok) continue;
        bool certified = true, refuted = false;
        for (std::size_t i = 0; i < y.size(); ++i) {
            Ival diff = img[i] - Ival::from_rat(y[i], prec);
            Ival lo = diff + Ival::from_rat(eps, prec);   // want > 0
            Ival hi = diff - Ival::from_rat(eps, prec);   // want < 0
            if (!(lo.sign() > 0 && hi.sign() < 0)) certified = false;
            if (lo.sign() < 0 || hi.sign() > 0) refuted = true;
        }
        if (certified) return true;
        if (refuted) return false;
    }
    RatVec img = chain.eval(x);
    for (std::size_t i = 0; i < y.size(); ++i)
        if (rat_abs(img[i] - y[i]) >= eps) return false;
    return true;
}

}  // namespace

std::optional<RatVec> cover_point(const MapChain& chain, const RatVec& y, const Rat& eps) {
    for (int attempt = 0; attempt < 3; ++attempt) {
        WalkCfg cfg;
        cfg.width = rat(1, 1);
        for (int e = 0; e < 64 + 96 * attempt; ++e) cfg.width /= 2;
        cfg.budget = 20000;
        cfg.newton_seed = 7 + 1000 * attempt;
        auto x = walk(chain.stages, chain.stages.size(), y, cfg);
        if (x && residual_below(chain, *x, y, eps)) return x;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// coverage target sampling

namespace {

std::vector<RatVec> sample_targets(const MapChain& chain, const SamplerConfig& cfg) {
    const TargetSet& t = chain.target;
    std::vector<RatVec> targets;
    SamplerConfig scfg = cfg;
    scfg.seed = cfg.seed ^ 0xc0ffeeULL;
    Sampler sampler(t.dim, scfg);

    if (cfg.structured_extras) {
        switch (t.kind) {
            case TargetSet::Kind::Complement:
            case TargetSet::Kind::InteriorComplement: {
                bool interior = t.kind == TargetSet::Kind::InteriorComplement;
                for (std::size_t pos : t.K.minimal_indices()) {
                    const HalfSpace& h = t.K.halfspaces()[pos];
                    RatVec flip(t.dim + 1);
                    for (std::size_t i = 0; i <= t.dim; ++i) flip[i] = -h.coeffs[i];
                    Polyhedron face = t.K.with_halfspace({flip});
                    if (face.is_empty()) continue;
                    RatVec obj(t.dim + 1, Rat(0));
                    for (std::size_t i = 0; i < t.dim; ++i) obj[i + 1] = 1;
                    auto ext = face.minimize(obj);
                    if (ext.kind != Polyhedron::Extremum::Kind::Value) continue;
                    RatVec w = ext.point;
                    RatVec nrm = h.normal();
                    Rat n2 = vec_norm2(nrm);
                    for (const Rat& delta : {rat(1, 1000), rat(1, 2), Rat(1)}) {
                        RatVec y = vec_sub(w, vec_scale(delta / n2, nrm));
                        if (t.member(y)) targets.push_back(y);
                    }
                    if (interior && t.member(w)) targets.push_back(w);
                }
                break;
            }
            case TargetSet::Kind::OpenBallComplement:
            case TargetSet::Kind::ClosedBallComplement: {
                bool open_ball = t.kind == TargetSet::Kind::OpenBallComplement;
                std::vector<Rat> radii = open_ball
                                             ? std::vector<Rat>{Rat(1), rat(3, 2), Rat(10)}
                                             : std::vector<Rat>{rat(1001, 1000), rat(3, 2), Rat(10)};
                for (const Rat& r : radii) {
                    RatVec y(t.dim, Rat(0));
                    y[0] = r;
                    if (t.member(y)) targets.push_back(y);
                    if (t.dim >= 2) {
                        RatVec p(t.dim, Rat(0));
                        p[0] = r * rat(3, 5);
                        p[1] = r * rat(4, 5);
                        if (t.member(p)) targets.push_back(p);
                    }
                }
                break;
            }
            case TargetSet::Kind::LowerDimComplement: {
                AffineMap inv = t.placement->inverse();
                Sampler base(t.dim - 1, scfg);
                for (int k = 0; k < 40; ++k) {
                    RatVec a = base.next();
                    for (const Rat& delta : {rat(1, 1000), rat(-1, 1000), Rat(1)}) {
                        RatVec z = a;
                        z.push_back(delta);
                        RatVec y = inv.apply(z);
                        if (t.member(y)) targets.push_back(y);
                    }
                    RatVec z0 = a;
                    z0.push_back(Rat(0));
                    RatVec y0 = inv.apply(z0);
                    if (t.member(y0)) targets.push_back(y0);
                }
                break;
            }
        }
    }
    std::size_t guard = 0;
    while (targets.size() < cfg.coverage_count &&
           guard < 100 * cfg.coverage_count + 1000) {
        ++guard;
        RatVec y = sampler.next();
        if (t.member(y)) targets.push_back(y);
    }
    if (targets.size() > cfg.coverage_count) targets.resize(cfg.coverage_count);
    return targets;
}

}  // namespace

VerifyReport coverage(const MapChain& chain, const SamplerConfig& cfg,
                      const std::vector<RatVec>& extra_targets) {
    VerifyReport rep;
    CheckResult res;
    res.name = "coverage";
    std::vector<RatVec> targets = sample_targets(chain, cfg);
    for (const auto& y : extra_targets)
        if (chain.target.member(y)) targets.push_back(y);
    for (const auto& y : targets) {
        ++res.tested;
        if (!cover_point(chain, y, cfg.eps)) {
            ++res.failures;
            res.pass = false;
            if (res.witnesses.size() < 5) res.witnesses.push_back(vec_str(y));
        }
    }
    rep.add(std::move(res));
    return rep;
}

// ---------------------------------------------------------------------------
// derivative positivity and fixed points

namespace {

bool is_trim1(const Stage& s) { return s.kind == StageKind::Trim1; }
bool is_trim2(const Stage& s) {
    return s.kind == StageKind::Trim2Poly || s.kind == StageKind::Trim2Reg;
}

// exact value comparison d(last)/dx_axis ? c at x, via numerator polynomials
int compare_derivative(const Stage& s, const RatVec& x, const Rat& c) {
    const RatFn& f = s.components[*s.axis];
    MPoly dnum = f.derivative_numerator(*s.axis);
    Rat lhs = dnum.eval(x);
    Rat den = f.den().eval(x);
    Rat rhs = c * den * den;
    return lhs > rhs ? 1 : (lhs == rhs ? 0 : -1);
}

// exact points on {P = 0} when the source polyhedron is known: solve the
// facet equation for the axis coordinate
std::optional<RatVec> p_zero_point(const Stage& s, Sampler& sampler) {
    if (!s.trim_source) return std::nullopt;
    std::size_t n = s.in_dim, axis = *s.axis;
    const Polyhedron& L = *s.trim_source;
    for (std::size_t i : L.minimal_indices()) {
        const HalfSpace& h = L.halfspaces()[i];
        if (h.coeffs[axis + 1] == 0) continue;
        RatVec x = sampler.next();
        Rat rest = h.coeffs[0];
        for (std::size_t j = 0; j < n; ++j)
            if (j != axis) rest += h.coeffs[j + 1] * x[j];
        x[axis] = -rest / h.coeffs[axis + 1];
        return x;
    }
    return std::nullopt;
}

RatVec sample_in_region(Sampler& sampler, const Stage& s,
                        const std::optional<RegionBounds>& region,
                        std::uint64_t& mix) {
    std::size_t n = s.in_dim;
    RatVec x = sampler.next();
    if (region && !region->region_empty) {
        // coordinates constrained to box x [-N, N]
        for (std::size_t i = 0; i + 1 < n && i < region->box.size(); ++i) {
            const auto& [lo, hi] = region->box[i];
            // map x[i] into [lo, hi] deterministically
            Rat t = x[i] - x[i].get_num() / x[i].get_den();  // fractional-ish
            mix = mix * 6364136223846793005ULL + 1442695040888963407ULL;
            Rat frac = rat(static_cast<long>(mix % 1025), 1024);
            x[i] = lo + frac * (hi - lo);
            (void)t;
        }
        mix = mix * 6364136223846793005ULL + 1442695040888963407ULL;
        Rat frac = rat(static_cast<long>(mix % 1025), 1024);
        x[n - 1] = -region->N + frac * (2 * region->N);
    }
    return x;
}

}  // namespace

VerifyReport derivative_positivity(const Stage& stage, const SamplerConfig& cfg,
                                   const std::optional<RegionBounds>& strong_region) {
    if (!is_trim1(stage) && !is_trim2(stage))
        throw std::invalid_argument("derivative_positivity: trim stage required");
    VerifyReport rep;
    std::size_t n = stage.in_dim;
    std::size_t axis = *stage.axis;
    bool constant_q = stage.kind == StageKind::Trim1
                          ? stage.Q->is_constant()
                          : stage.kind == StageKind::Trim2Poly;

    CheckResult pos;
    pos.name = std::string(stage_kind_name(stage.kind)) + "-derivative-positive";
    if (constant_q && (!strong_region || strong_region->region_empty)) {
        pos.note = "empty exceptional region: positivity vacuous";
    } else {
        Sampler sampler(n, cfg);
        std::uint64_t mix = cfg.seed ^ 0xabcdef;
        Rat threshold = stage.kind == StageKind::Trim2Reg ? rat(1, 2) : Rat(0);
        std::size_t half_coord = stage.kind == StageKind::Trim1 ? *stage.cut_axis : axis;
        for (std::size_t k = 0; k < cfg.derivative_count; ++k) {
            RatVec x = constant_q ? sample_in_region(sampler, stage, strong_region, mix)
                                  : sampler.next();
            if (x[half_coord] > 0) x[half_coord] = -x[half_coord];
            ++pos.tested;
            if (compare_derivative(stage, x, threshold) <= 0) {
                ++pos.failures;
                pos.pass = false;
                if (pos.witnesses.size() < 5) pos.witnesses.push_back(vec_str(x));
            }
        }
    }
    rep.add(std::move(pos));

    CheckResult one;
    one.name = std::string(stage_kind_name(stage.kind)) + "-derivative-one-on-zero-set";
    {
        SamplerConfig zcfg = cfg;
        zcfg.seed = cfg.seed ^ 0x515151;
        Sampler sampler(n, zcfg);
        std::size_t count = std::max<std::size_t>(16, cfg.derivative_count / 100);
        for (std::size_t k = 0; k < count; ++k) {
            RatVec x = sampler.next();
            if (stage.kind == StageKind::Trim1)
                x[*stage.cut_axis] = 0;  // {x_{n-1} = 0}
            else
                x[axis] = 0;  // {x_n = 0}
            ++one.tested;
            if (compare_derivative(stage, x, Rat(1)) != 0) {
                ++one.failures;
                one.pass = false;
                if (one.witnesses.size() < 5) one.witnesses.push_back(vec_str(x));
            }
            if (auto pz = p_zero_point(stage, sampler)) {
                ++one.tested;
                if (compare_derivative(stage, *pz, Rat(1)) != 0) {
                    ++one.failures;
                    one.pass = false;
                    if (one.witnesses.size() < 5) one.witnesses.push_back(vec_str(*pz));
                }
            }
        }
    }
    rep.add(std::move(one));
    return rep;
}

VerifyReport fixed_points(const Stage& stage, const SamplerConfig& cfg) {
    if (!is_trim1(stage) && !is_trim2(stage))
        throw std::invalid_argument("fixed_points: trim stage required");
    VerifyReport rep;
    std::size_t n = stage.in_dim;
    std::size_t axis = *stage.axis;
    const MPoly& P = *stage.P;

    CheckResult fixed;
    fixed.name = std::string(stage_kind_name(stage.kind)) + "-fixed-points";
    SamplerConfig fcfg = cfg;
    fcfg.seed = cfg.seed ^ 0x717171;
    Sampler sampler(n, fcfg);
    std::size_t count = std::max<std::size_t>(32, cfg.derivative_count / 100);
    for (std::size_t k = 0; k < count; ++k) {
        RatVec x = sampler.next();
        switch (k % 3) {
            case 0:
                x[axis] = 0;
                break;
            case 1:
                if (stage.kind == StageKind::Trim1) {
                    x[*stage.cut_axis] = 0;
                    break;
                }
                [[fallthrough]];
            default: {
                if (auto pz = p_zero_point(stage, sampler)) {
                    x = *pz;
                } else {
                    x[axis] = 0;
                }
                break;
            }
        }
        ++fixed.tested;
        if (!(stage.eval(x) == x)) {
            ++fixed.failures;
            fixed.pass = false;
            if (fixed.witnesses.size() < 5) fixed.witnesses.push_back(vec_str(x));
        }
    }
    rep.add(std::move(fixed));

    if (stage.kind == StageKind::Trim1) {
        CheckResult moved;
        moved.name = "trim1-moves-generic-points";
        for (std::size_t k = 0; k < count; ++k) {
            RatVec x = sampler.next();
            if (x[*stage.cut_axis] == 0 || x[axis] == 0 || P.eval(x) == 0) continue;
            ++moved.tested;
            if (stage.eval(x) == x) {
                ++moved.failures;
                moved.pass = false;
                if (moved.witnesses.size() < 5) moved.witnesses.push_back(vec_str(x));
            }
        }
        rep.add(std::move(moved));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// per-fiber certification of the trim lemmas

namespace {

// fiber of K along `axis` with the other coordinates fixed at x (axis entry
// ignored); statuses as in fiber_interval
FiberInterval fiber_along(const Polyhedron& K, const RatVec& x, std::size_t axis) {
    std::size_t n = K.ambient_dim();
    std::optional<Rat> lower, upper;
    bool empty = false;
    for (const auto& h : K.halfspaces()) {
        Rat ca = h.coeffs[axis + 1];
        Rat rest = h.coeffs[0];
        for (std::size_t i = 0; i < n; ++i)
            if (i != axis) rest += h.coeffs[i + 1] * x[i];
        if (ca == 0) {
            if (rest < 0) empty = true;
        } else if (ca > 0) {
            Rat b = -rest / ca;
            if (!lower || b > *lower) lower = b;
        } else {
            Rat b = -rest / ca;
            if (!upper || b < *upper) upper = b;
        }
        if (empty) break;
    }
    FiberInterval f;
    if (empty || (lower && upper && *lower > *upper)) {
        f.status = FiberInterval::Status::Empty;
        return f;
    }
    if (lower && upper) {
        f.status = (*lower == *upper) ? FiberInterval::Status::Point
                                      : FiberInterval::Status::Segment;
        f.lower = lower;
        f.upper = upper;
    } else if (lower) {
        f.status = FiberInterval::Status::UpperRay;
        f.lower = lower;
    } else if (upper) {
        f.status = FiberInterval::Status::LowerRay;
        f.upper = upper;
    } else {
        f.status = FiberInterval::Status::FullLine;
    }
    return f;
}

// open interior fiber (strict inequalities) of K along axis: nullopt when
// empty, otherwise the open interval (lo, hi) with infinite ends as nullopt
struct OpenFiber {
    bool empty = true;
    std::optional<Rat> lo, hi;
};

OpenFiber interior_fiber_along(const Polyhedron& K, const RatVec& x, std::size_t axis) {
    std::size_t n = K.ambient_dim();
    OpenFiber f;
    std::optional<Rat> lower, upper;
    for (std::size_t idx : K.minimal_indices()) {
        const HalfSpace& h = K.halfspaces()[idx];
        Rat ca = h.coeffs[axis + 1];
        Rat rest = h.coeffs[0];
        for (std::size_t i = 0; i < n; ++i)
            if (i != axis) rest += h.coeffs[i + 1] * x[i];
        if (ca == 0) {
            if (rest <= 0) return f;  // strict failure: empty interior fiber
        } else if (ca > 0) {
            Rat b = -rest / ca;
            if (!lower || b > *lower) lower = b;
        } else {
            Rat b = -rest / ca;
            if (!upper || b < *upper) upper = b;
        }
    }
    if (lower && upper && *lower >= *upper) return f;
    f.empty = false;
    f.lo = lower;
    f.hi = upper;
    return f;
}

struct FiberFn {
    UPoly num, den, dnum;  // dnum = derivative numerator restricted
    long rdeg() const { return updeg(num) - updeg(den); }
    Rat eval(const Rat& t) const { return upeval(num, t) / upeval(den, t); }
};

FiberFn restrict_stage(const Stage& s, const RatVec& a) {
    const RatFn& f = s.components[*s.axis];
    FiberFn out;
    out.num = fiber_restrict(f.num(), a, *s.axis);
    out.den = fiber_restrict(f.den(), a, *s.axis);
    out.dnum = fiber_restrict(f.derivative_numerator(*s.axis), a, *s.axis);
    return out;
}

// no derivative-numerator roots in [lo, hi] and positive at lo => increasing
bool increasing_on(const FiberFn& f, const Rat& lo, const Rat& hi) {
    if (lo > hi) return true;
    if (count_distinct_roots_in(f.dnum, lo, hi) != 0) return false;
    Rat mid = (lo + hi) / 2;
    return upeval(f.dnum, mid) > 0 || upeval(f.dnum, lo) > 0;
}

// some real root of num - c*den lies weakly outside (p, q); exactness via
// refinement against the rational bounds
bool attained_outside(const FiberFn& f, const Rat& c, const std::optional<Rat>& p,
                      const std::optional<Rat>& q) {
    UPoly eq = upsub(f.num, upscale(c, f.den));
    if (updeg(eq) < 1) return false;
    for (RootInterval iv : isolate_real_roots(eq).intervals) {
        for (int r = 0; r < 60; ++r) {
            if (iv.exact()) break;
            bool left_of_p = p && iv.hi <= *p;
            bool right_of_q = q && iv.lo >= *q;
            bool inside = p && q && iv.lo >= *p && iv.hi <= *q;
            if (left_of_p || right_of_q) return true;
            if (!p && q && iv.hi <= *q) return true;   // interval ends handled
            if (inside) break;
            refine_root(eq, iv, iv.width() / 4);
        }
        if (iv.exact()) {
            Rat t = iv.lo;
            bool in_open = (!p || t > *p) && (!q || t < *q);
            if (!in_open) return true;
        }
    }
    return false;
}

std::string fiber_witness(const RatVec& a, std::size_t axis) {
    RatVec b;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (i != axis) b.push_back(a[i]);
    return vec_str(b);
}

bool certify_trim1_fiber(const Stage& s, const RatVec& a, std::string& why) {
    std::size_t axis = *s.axis, cut = *s.cut_axis;
    const Polyhedron& L = *s.trim_source;
    FiberInterval I = fiber_along(L, a, axis);
    FiberFn f = restrict_stage(s, a);
    UPoly Pa = fiber_restrict(*s.P, a, axis);
    Rat acut = a[cut];

    if (I.status == FiberInterval::Status::UpperRay ||
        I.status == FiberInterval::Status::LowerRay ||
        I.status == FiberInterval::Status::FullLine) {
        why = "source fiber unbounded: not in weak first trimming position";
        return false;
    }
    long deg = f.rdeg();
    if (I.status == FiberInterval::Status::Empty) {
        if (deg >= 1 && deg % 2 == 1) return true;
        why = "empty fiber: beta^a lacks odd positive degree";
        return false;
    }

    Rat p = *I.lower, q = *I.upper;
    // endpoints sit on zeros of P and are fixed by beta
    if (upeval(Pa, p) != 0 || upeval(Pa, q) != 0) {
        why = "fiber endpoint misses the zero set of P";
        return false;
    }
    if (upeval(f.num, p) != p * upeval(f.den, p) ||
        upeval(f.num, q) != q * upeval(f.den, q)) {
        why = "beta does not fix a fiber endpoint";
        return false;
    }
    if (deg < 1 || deg % 2 == 0) {
        why = "beta^a lacks odd positive degree";
        return false;
    }

    if (acut <= 0) {
        // image must equal M_a = R \ [p, q]
        if (sign_at_plus_inf(f.num) <= 0) {
            why = "leading coefficient not positive on a_{n-1} <= 0 fiber";
            return false;
        }
        if (q < 0 && !increasing_on(f, q, Rat(0))) {
            why = "beta not increasing on [q, 0]";
            return false;
        }
        if (p > 0 && !increasing_on(f, Rat(0), p)) {
            why = "beta not increasing on [0, p]";
            return false;
        }
        // probes: targets just outside and strictly inside the removed block
        Rat outside = q + 1;
        if (!attained_outside(f, outside, p, q)) {
            why = "probe target above q unattained in M_a";
            return false;
        }
        if (p < q) {
            Rat inside = (p + q) / 2;
            UPoly eq = upsub(f.num, upscale(inside, f.den));
            // the inside target must NOT be attained from M_a
            if (attained_outside(f, inside, p, q)) {
                why = "image leaks into the removed block";
                return false;
            }
            (void)eq;
        }
        return true;
    }

    // a_{n-1} > 0: the image must be the whole line
    if (sign_at_plus_inf(f.num) < 0) {
        if (p == q) {
            // degenerate single-point fiber: derivative exactly 1 at p
            Rat lhs = upeval(f.dnum, p);
            Rat rhs = upeval(f.den, p);
            if (lhs != rhs * rhs) {
                why = "p = q fiber: derivative at p differs from 1";
                return false;
            }
        }
        return true;
    }
    // positive leading coefficient: the fold-back argument is unavailable;
    // decide by probing the midpoint of the removed block
    Rat probe = (p + q) / 2;
    if (!attained_outside(f, probe, p, q)) {
        why = "Case 3 fiber with positive leading coefficient misses (p, q)";
        return false;
    }
    return true;
}

bool certify_trim2_fiber(const Stage& s, const RatVec& a, std::string& why) {
    std::size_t axis = *s.axis;
    const Polyhedron& L = *s.trim_source;
    FiberInterval I = fiber_along(L, a, axis);
    if (I.status == FiberInterval::Status::UpperRay ||
        I.status == FiberInterval::Status::FullLine) {
        why = "source fiber not upperly bounded: not in second trimming position";
        return false;
    }
    FiberFn f = restrict_stage(s, a);
    UPoly Pa = fiber_restrict(*s.P, a, axis);
    OpenFiber in = interior_fiber_along(L, a, axis);

    long deg = f.rdeg();
    if (deg < 1 || deg % 2 == 0) {
        why = "gamma^a lacks odd positive degree";
        return false;
    }
    if (in.empty) return true;  // M_a = R, image R by odd degree

    // interior fiber (pl, qu); qu finite by second position
    if (!in.hi) {
        why = "interior fiber unbounded above";
        return false;
    }
    Rat qu = *in.hi;
    if (upeval(Pa, qu) != 0 ||
        upeval(f.num, qu) != qu * upeval(f.den, qu)) {
        why = "upper interior endpoint not fixed by gamma";
        return false;
    }
    if (sign_at_plus_inf(f.num) <= 0) {
        why = "gamma lacks +infinity growth";
        return false;
    }

    // delta fold: for the poly variant M - t P^2, for the regular 1 - t P^2;
    // monic P makes its leading coefficient negative, so a zero t0 exists
    // past qu, and gamma(t) >= 0 for t >= max(qu, 0) by its squared factor
    if (updeg(Pa) < 0 || Pa.back() != 1) {
        why = "P(a, .) not monic: leading structure broken";
        return false;
    }

    if (qu < 0 && !increasing_on(f, qu, Rat(0))) {
        why = "gamma not increasing on [qu, 0]";
        return false;
    }
    if (in.lo) {
        Rat pl = *in.lo;
        if (upeval(Pa, pl) != 0 ||
            upeval(f.num, pl) != pl * upeval(f.den, pl)) {
            why = "lower interior endpoint not fixed by gamma";
            return false;
        }
        if (pl < 0) {
            // increasing on (-inf, pl]: no derivative roots up to pl
            Rat B = root_bound(f.dnum.empty() ? UPoly{Rat(1)} : f.dnum) + rat_abs(pl) + 1;
            if (count_distinct_roots_in(f.dnum, -B, pl) != 0 ||
                upeval(f.dnum, pl - 1) <= 0) {
                why = "gamma not increasing on (-inf, pl]";
                return false;
            }
        }
    }
    if (sign_at_minus_inf(f.num) >= 0) {
        why = "gamma lacks -infinity decay";
        return false;
    }

    // probes: a target below min(qu, 0) - 1 and one above both must be hit
    Rat below = (qu < 0 ? qu : Rat(0)) - 1;
    UPoly eq_b = upsub(f.num, upscale(below, f.den));
    if (count_distinct_real_roots(eq_b) == 0) {
        why = "low probe target unattained";
        return false;
    }
    Rat above = rat_abs(qu) + 1;
    UPoly eq_a = upsub(f.num, upscale(above, f.den));
    if (count_distinct_real_roots(eq_a) == 0) {
        why = "high probe target unattained";
        return false;
    }
    return true;
}

}  // namespace

VerifyReport fiber_contract_check(const Stage& stage, const SamplerConfig& cfg) {
    if ((!is_trim1(stage) && !is_trim2(stage)) || !stage.trim_source)
        throw std::invalid_argument(
            "fiber_contract_check: trim stage with source polyhedron required");
    VerifyReport rep;
    CheckResult res;
    res.name = std::string(stage_kind_name(stage.kind)) + "-fiber-contract";
    std::size_t n = stage.in_dim, axis = *stage.axis;

    SamplerConfig fcfg = cfg;
    fcfg.seed = cfg.seed ^ 0xf1be5;
    Sampler sampler(n, fcfg);
    const Polyhedron& L = *stage.trim_source;

    // targeted degenerate fibers: based points where two opposite facet
    // functions agree (p = q), found by solving on the coincidence hyperplane
    std::vector<RatVec> bases;
    {
        const auto& idx = L.minimal_indices();
        for (std::size_t i : idx) {
            for (std::size_t j : idx) {
                const HalfSpace& hi = L.halfspaces()[i];
                const HalfSpace& hj = L.halfspaces()[j];
                if (hi.coeffs[axis + 1] <= 0 || hj.coeffs[axis + 1] >= 0) continue;
                // g_i(a) = g_j(a): (b0i + <bi, a>)/(-ci) = ... solve linearly
                RatVec x = sampler.next();
                RatVec diff(n + 1, Rat(0));
                for (std::size_t k = 0; k <= n; ++k)
                    diff[k] = hi.coeffs[k] / hi.coeffs[axis + 1] -
                              hj.coeffs[k] / hj.coeffs[axis + 1];
                // find a coordinate (not the axis) to solve for
                std::size_t solve_at = n;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != axis && diff[k + 1] != 0) solve_at = k;
                if (solve_at == n) continue;
                Rat rest = diff[0];
                for (std::size_t k = 0; k < n; ++k)
                    if (k != axis && k != solve_at) rest += diff[k + 1] * x[k];
                x[solve_at] = -rest / diff[solve_at + 1];
                bases.push_back(x);
                if (bases.size() >= 8) break;
            }
            if (bases.size() >= 8) break;
        }
    }
    while (bases.size() < cfg.fiber_count) bases.push_back(sampler.next());

    for (const auto& a : bases) {
        ++res.tested;
        std::string why;
        bool ok = is_trim1(stage) ? certify_trim1_fiber(stage, a, why)
                                  : certify_trim2_fiber(stage, a, why);
        if (!ok) {
            ++res.failures;
            res.pass = false;
            if (res.witnesses.size() < 5)
                res.witnesses.push_back(fiber_witness(a, axis) + " : " + why);
        }
    }
    rep.add(std::move(res));
    return rep;
}

VerifyReport validate_chain(const MapChain& chain, const SamplerConfig& cfg) {
    VerifyReport rep = forward_containment(chain, cfg);
    rep.merge(coverage(chain, cfg));
    SamplerConfig stage_cfg = cfg;
    stage_cfg.derivative_count = std::max<std::size_t>(200, cfg.derivative_count / 10);
    stage_cfg.fiber_count = std::max<std::size_t>(20, cfg.fiber_count / 2);
    std::size_t idx = 0;
    for (const auto& s : chain.stages) {
        ++idx;
        if ((is_trim1(s) || is_trim2(s)) && s.trim_source) {
            VerifyReport sub = fiber_contract_check(s, stage_cfg);
            sub.merge(fixed_points(s, stage_cfg));
            // weak stages get the global half-space derivative suite; strong
            // stages were built from a region that is re-derived here
            std::optional<RegionBounds> region;
            bool constant_q = s.kind == StageKind::Trim1 ? s.Q->is_constant()
                                                         : s.kind == StageKind::Trim2Poly;
            if (constant_q && s.trim_source->is_bounded())
                region = region_bounds(*s.trim_source,
                                       s.kind == StageKind::Trim1 ? PositionKind::First
                                                                  : PositionKind::Second);
            else if (constant_q) {
                RegionBounds rb;
                rb.region_empty = true;
                region = rb;
            }
            sub.merge(derivative_positivity(s, stage_cfg, region));
            for (auto& c : sub.checks) {
                c.name = "stage" + std::to_string(idx) + "-" + c.name;
                rep.add(c);
            }
        }
    }
    return rep;
}

}  // namespace polyimage
