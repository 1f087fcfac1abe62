#include "polyimage/polyhedron.hpp"

#include "polyimage/linalg.hpp"
#include "polyimage/lp.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace polyimage {

Rat HalfSpace::eval(const RatVec& x) const {
    assert(x.size() + 1 == coeffs.size());
    Rat v = coeffs[0];
    for (std::size_t i = 0; i < x.size(); ++i) v += coeffs[i + 1] * x[i];
    return v;
}

RatVec HalfSpace::normal() const {
    return RatVec(coeffs.begin() + 1, coeffs.end());
}

bool HalfSpace::linear_part_zero() const {
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) return false;
    return true;
}

MPoly HalfSpace::to_poly() const {
    std::size_t n = dim();
    MPoly p = MPoly::constant(n, coeffs[0]);
    for (std::size_t i = 0; i < n; ++i)
        if (coeffs[i + 1] != 0)
            p = p + MPoly::variable(n, i).scaled(coeffs[i + 1]);
    return p;
}

HalfSpace HalfSpace::normalized() const {
    // positive scaling only: the set is orientation-sensitive
    Int num_gcd(0), den_lcm(1);
    for (const Rat& c : coeffs) {
        if (c == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    if (num_gcd == 0) return *this;
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    HalfSpace h;
    h.coeffs.reserve(coeffs.size());
    for (const Rat& c : coeffs) h.coeffs.push_back(c * scale);
    return h;
}

std::string poly_class_name(PolyClass c) {
    switch (c) {
        case PolyClass::Layer: return "layer";
        case PolyClass::Hyperplane: return "hyperplane";
        case PolyClass::Halfspace: return "halfspace";
        case PolyClass::DegenerateProduct: return "degenerate-product";
        case PolyClass::Nondegenerate: return "nondegenerate";
        case PolyClass::LowerDimensional: return "lower-dimensional";
        case PolyClass::FullSpace: return "full-space";
        case PolyClass::Empty: return "empty";
    }
    return "?";
}

Polyhedron::Polyhedron(std::size_t n, std::vector<HalfSpace> halfspaces, std::string name)
    : n_(n), hs_(std::move(halfspaces)), name_(std::move(name)) {
    for (const auto& h : hs_) {
        if (h.coeffs.size() != n_ + 1)
            throw std::invalid_argument("Polyhedron: half-space dimension mismatch");
        if (h.linear_part_zero() && h.coeffs[0] >= 0)
            throw std::invalid_argument("Polyhedron: trivial half-space (zero linear part)");
        // a half-space with zero linear part and negative constant makes the
        // set empty; keep it, emptiness is detected by LP
    }
}

namespace {

LPProblem feasibility_problem(std::size_t n, const std::vector<HalfSpace>& hs) {
    LPProblem p;
    p.n = n;
    p.sense = LPSense::Feasibility;
    for (const auto& h : hs) {
        // h.coeffs[0] + <c, x> >= 0  <=>  <-c, x> <= coeffs[0]
        LPConstraint c;
        c.a.resize(n);
        for (std::size_t i = 0; i < n; ++i) c.a[i] = -h.coeffs[i + 1];
        c.b = h.coeffs[0];
        p.constraints.push_back(std::move(c));
    }
    return p;
}

}  // namespace

bool Polyhedron::is_empty() const {
    if (!cache_.empty) {
        LPResult r = lp_solve_basic(feasibility_problem(n_, hs_));
        cache_.empty = (r.kind == LPResult::Kind::Infeasible);
    }
    return *cache_.empty;
}

bool Polyhedron::is_full_space() const {
    if (hs_.empty()) return true;
    // all members redundant against the empty system means each h >= 0 holds
    // on all of R^n, i.e. the linear part is zero; constructor rejects those
    return false;
}

Polyhedron::Extremum Polyhedron::maximize(const RatVec& functional) const {
    assert(functional.size() == n_ + 1);
    LPProblem p = feasibility_problem(n_, hs_);
    p.sense = LPSense::Maximize;
    p.objective.assign(functional.begin() + 1, functional.end());
    LPResult r = lp_solve(p);
    switch (r.kind) {
        case LPResult::Kind::Optimal:
            return {Extremum::Kind::Value, r.value + functional[0], r.point};
        case LPResult::Kind::Unbounded:
            return {Extremum::Kind::Unbounded, Rat(0), {}};
        case LPResult::Kind::Infeasible:
            return {Extremum::Kind::Infeasible, Rat(0), {}};
    }
    return {Extremum::Kind::Infeasible, Rat(0), {}};
}

Polyhedron::Extremum Polyhedron::minimize(const RatVec& functional) const {
    RatVec neg(functional.size());
    for (std::size_t i = 0; i < functional.size(); ++i) neg[i] = -functional[i];
    Extremum e = maximize(neg);
    if (e.kind == Extremum::Kind::Value) e.value = -e.value;
    return e;
}

void Polyhedron::require_nonempty(const char* op) const {
    if (is_empty())
        throw std::invalid_argument(std::string(op) + ": empty polyhedron");
}

const std::vector<std::size_t>& Polyhedron::equality_indices() const {
    if (!cache_.equalities) {
        require_nonempty("equality_indices");
        std::vector<std::size_t> eq;
        for (std::size_t i = 0; i < hs_.size(); ++i) {
            Extremum e = maximize(hs_[i].coeffs);
            if (e.kind == Extremum::Kind::Value && e.value == 0) eq.push_back(i);
        }
        cache_.equalities = std::move(eq);
    }
    return *cache_.equalities;
}

const std::vector<std::size_t>& Polyhedron::minimal_indices() const {
    if (!cache_.minimal) {
        require_nonempty("minimal_indices");
        // 1. normalize and deduplicate
        std::vector<std::size_t> alive;
        {
            std::set<RatVec> seen;
            for (std::size_t i = 0; i < hs_.size(); ++i) {
                HalfSpace h = hs_[i].normalized();
                if (seen.insert(h.coeffs).second) alive.push_back(i);
            }
        }
        // 2. members of the affine hull stay; the remaining inequalities are
        //    pruned one at a time by exact LP redundancy relative to the rest
        std::set<std::size_t> eq(equality_indices().begin(), equality_indices().end());
        std::vector<std::size_t> kept = alive;
        for (std::size_t pos = 0; pos < kept.size();) {
            std::size_t idx = kept[pos];
            if (eq.count(idx)) {
                ++pos;
                continue;
            }
            std::vector<HalfSpace> others;
            for (std::size_t j : kept)
                if (j != idx) others.push_back(hs_[j]);
            // also keep equalities that were deduplicated away
            Polyhedron rest(n_, others);
            Extremum m = rest.minimize(hs_[idx].coeffs);
            bool redundant = (m.kind == Extremum::Kind::Value && m.value >= 0);
            if (redundant)
                kept.erase(kept.begin() + pos);
            else
                ++pos;
        }
        cache_.minimal = std::move(kept);
    }
    return *cache_.minimal;
}

Polyhedron Polyhedron::minimal_presentation() const {
    std::vector<HalfSpace> hs;
    for (std::size_t i : minimal_indices()) hs.push_back(hs_[i]);
    return Polyhedron(n_, std::move(hs), name_);
}

std::vector<std::size_t> Polyhedron::facet_indices() const {
    std::set<std::size_t> eq(equality_indices().begin(), equality_indices().end());
    std::vector<std::size_t> out;
    for (std::size_t i : minimal_indices())
        if (!eq.count(i)) out.push_back(i);
    return out;
}

long Polyhedron::dim() const {
    if (!cache_.dim) {
        if (is_empty()) {
            cache_.dim = -1;
        } else {
            const auto& eq = equality_indices();
            if (eq.empty()) {
                cache_.dim = static_cast<long>(n_);
            } else {
                RatMat A(eq.size(), n_);
                for (std::size_t r = 0; r < eq.size(); ++r)
                    for (std::size_t j = 0; j < n_; ++j)
                        A.at(r, j) = hs_[eq[r]].coeffs[j + 1];
                cache_.dim = static_cast<long>(n_) - static_cast<long>(rank(A));
            }
        }
    }
    return *cache_.dim;
}

const std::vector<RatVec>& Polyhedron::lineality_basis() const {
    if (!cache_.lineality) {
        require_nonempty("lineality_basis");
        if (hs_.empty()) {
            std::vector<RatVec> basis;
            for (std::size_t i = 0; i < n_; ++i) {
                RatVec e(n_, Rat(0));
                e[i] = 1;
                basis.push_back(std::move(e));
            }
            cache_.lineality = std::move(basis);
        } else {
            RatMat A(hs_.size(), n_);
            for (std::size_t r = 0; r < hs_.size(); ++r)
                for (std::size_t j = 0; j < n_; ++j) A.at(r, j) = hs_[r].coeffs[j + 1];
            cache_.lineality = null_space(A);
        }
    }
    return *cache_.lineality;
}

bool Polyhedron::is_bounded() const {
    if (!cache_.bounded) {
        require_nonempty("is_bounded");
        bool bounded = true;
        for (std::size_t i = 0; i < n_ && bounded; ++i) {
            RatVec f(n_ + 1, Rat(0));
            f[i + 1] = 1;
            if (maximize(f).kind != Extremum::Kind::Value) bounded = false;
            if (bounded && minimize(f).kind != Extremum::Kind::Value) bounded = false;
        }
        cache_.bounded = bounded;
    }
    return *cache_.bounded;
}

PolyClass Polyhedron::classify() const {
    if (is_empty()) return PolyClass::Empty;
    if (hs_.empty()) return PolyClass::FullSpace;
    long d = dim();
    if (d < static_cast<long>(n_)) {
        // a hyperplane is exactly an affine subspace of dimension n-1
        if (d == static_cast<long>(n_) - 1 && facet_indices().empty())
            return PolyClass::Hyperplane;
        return PolyClass::LowerDimensional;
    }
    const auto& minimal = minimal_indices();
    std::size_t lin = lineality_basis().size();
    if (minimal.empty()) return PolyClass::FullSpace;
    if (minimal.size() == 1) return PolyClass::Halfspace;
    if (lin == n_ - 1 && minimal.size() == 2) {
        RatVec a = hs_[minimal[0]].normal();
        RatVec b = hs_[minimal[1]].normal();
        std::size_t k = 0;
        while (k < n_ && b[k] == 0) ++k;
        if (k < n_) {
            Rat lambda = a[k] / b[k];
            bool proportional = true;
            for (std::size_t i = 0; i < n_; ++i)
                if (a[i] != lambda * b[i]) proportional = false;
            if (proportional && lambda < 0) return PolyClass::Layer;
        }
    }
    if (lin >= 1) return PolyClass::DegenerateProduct;
    return PolyClass::Nondegenerate;
}

std::pair<RatVec, std::vector<std::size_t>> Polyhedron::find_vertex() const {
    PolyClass cls = classify();
    if (cls != PolyClass::Nondegenerate)
        throw std::invalid_argument("find_vertex: polyhedron is degenerate");
    // objective: sum of normalized minimal normals; strictly positive on the
    // recession cone minus the origin, so the minimum is attained
    RatVec obj(n_ + 1, Rat(0));
    for (std::size_t i : minimal_indices()) {
        HalfSpace h = hs_[i].normalized();
        for (std::size_t j = 0; j < n_; ++j) obj[j + 1] += h.coeffs[j + 1];
    }
    Extremum e = minimize(obj);
    if (e.kind != Extremum::Kind::Value)
        throw std::logic_error("find_vertex: LP unexpectedly unbounded");
    RatVec v = e.point;

    std::vector<std::size_t> active;
    std::vector<RatVec> normals;
    for (std::size_t i : minimal_indices()) {
        if (hs_[i].eval(v) != 0) continue;
        RatVec nrm = hs_[i].normal();
        RatMat m(normals.size() + 1, n_);
        for (std::size_t r = 0; r < normals.size(); ++r)
            for (std::size_t j = 0; j < n_; ++j) m.at(r, j) = normals[r][j];
        for (std::size_t j = 0; j < n_; ++j) m.at(normals.size(), j) = nrm[j];
        if (rank(m) == normals.size() + 1) {
            normals.push_back(nrm);
            active.push_back(i);
            if (active.size() == n_) break;
        }
    }
    if (active.size() != n_)
        throw std::logic_error("find_vertex: point is not a vertex");
    return {v, active};
}

FiberInterval Polyhedron::fiber_interval(const RatVec& a) const {
    if (a.size() + 1 != n_)
        throw std::invalid_argument("fiber_interval: base point dimension mismatch");
    std::optional<Rat> lower, upper;
    bool empty = false;
    for (const auto& h : hs_) {
        Rat cn = h.coeffs[n_];
        Rat rest = h.coeffs[0];
        for (std::size_t i = 0; i + 1 < n_; ++i) rest += h.coeffs[i + 1] * a[i];
        if (cn == 0) {
            if (rest < 0) empty = true;
        } else if (cn > 0) {
            Rat bound = -rest / cn;
            if (!lower || bound > *lower) lower = bound;
        } else {
            Rat bound = -rest / cn;
            if (!upper || bound < *upper) upper = bound;
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
        f.status = FiberInterval::Status::UpperRay;  // [lower, +inf)
        f.lower = lower;
    } else if (upper) {
        f.status = FiberInterval::Status::LowerRay;  // (-inf, upper]
        f.upper = upper;
    } else {
        f.status = FiberInterval::Status::FullLine;
    }
    return f;
}

bool Polyhedron::contains(const RatVec& x, bool interior) const {
    assert(x.size() == n_);
    if (!interior) {
        for (const auto& h : hs_)
            if (h.eval(x) < 0) return false;
        return true;
    }
    if (is_empty()) return false;
    if (dim() == static_cast<long>(n_)) {
        for (std::size_t i : minimal_indices())
            if (hs_[i].eval(x) <= 0) return false;
        return true;
    }
    // relative interior for lower-dimensional K
    for (std::size_t i : equality_indices())
        if (hs_[i].eval(x) != 0) return false;
    for (std::size_t i : facet_indices())
        if (hs_[i].eval(x) <= 0) return false;
    return true;
}

std::vector<std::pair<Rat, Rat>> Polyhedron::bounding_box() const {
    if (!is_bounded()) throw std::invalid_argument("bounding_box: unbounded polyhedron");
    std::vector<std::pair<Rat, Rat>> box;
    for (std::size_t i = 0; i < n_; ++i) {
        RatVec f(n_ + 1, Rat(0));
        f[i + 1] = 1;
        Extremum lo = minimize(f), hi = maximize(f);
        assert(lo.kind == Extremum::Kind::Value && hi.kind == Extremum::Kind::Value);
        box.emplace_back(lo.value, hi.value);
    }
    return box;
}

bool Polyhedron::recession_contains(const RatVec& v) const {
    assert(v.size() == n_);
    for (const auto& h : hs_) {
        Rat d(0);
        for (std::size_t i = 0; i < n_; ++i) d += h.coeffs[i + 1] * v[i];
        if (d < 0) return false;
    }
    return true;
}

Polyhedron Polyhedron::with_halfspace(const HalfSpace& h) const {
    std::vector<HalfSpace> hs = hs_;
    hs.push_back(h);
    return Polyhedron(n_, std::move(hs), name_);
}

Polyhedron Polyhedron::drop_minimal_member(std::size_t minimal_pos) const {
    const auto& minimal = minimal_indices();
    assert(minimal_pos < minimal.size());
    std::vector<HalfSpace> hs;
    for (std::size_t k = 0; k < minimal.size(); ++k)
        if (k != minimal_pos) hs.push_back(hs_[minimal[k]]);
    return Polyhedron(n_, std::move(hs), name_);
}

Polyhedron Polyhedron::transformed(const AffineMap& T) const {
    if (!T.invertible())
        throw std::invalid_argument("Polyhedron::transformed: map must be invertible");
    std::vector<HalfSpace> hs;
    hs.reserve(hs_.size());
    for (const auto& h : hs_) hs.push_back({T.push_functional(h.coeffs)});
    return Polyhedron(n_, std::move(hs), name_);
}

Polyhedron Polyhedron::embedded(std::size_t new_n, std::size_t shift) const {
    assert(shift + n_ <= new_n);
    std::vector<HalfSpace> hs;
    hs.reserve(hs_.size());
    for (const auto& h : hs_) {
        RatVec c(new_n + 1, Rat(0));
        c[0] = h.coeffs[0];
        for (std::size_t j = 0; j < n_; ++j) c[shift + j + 1] = h.coeffs[j + 1];
        hs.push_back({std::move(c)});
    }
    return Polyhedron(new_n, std::move(hs), name_);
}

Polyhedron Polyhedron::box(const std::vector<std::pair<Rat, Rat>>& bounds) {
    std::size_t n = bounds.size();
    std::vector<HalfSpace> hs;
    for (std::size_t i = 0; i < n; ++i) {
        HalfSpace lo, hi;
        lo.coeffs.assign(n + 1, Rat(0));
        lo.coeffs[0] = -bounds[i].first;
        lo.coeffs[i + 1] = 1;  // x_i >= lo
        hi.coeffs.assign(n + 1, Rat(0));
        hi.coeffs[0] = bounds[i].second;
        hi.coeffs[i + 1] = -1;  // x_i <= hi
        hs.push_back(lo);
        hs.push_back(hi);
    }
    return Polyhedron(n, std::move(hs));
}

Polyhedron Polyhedron::orthant(std::size_t n) {
    std::vector<HalfSpace> hs;
    for (std::size_t i = 0; i < n; ++i) {
        HalfSpace h;
        h.coeffs.assign(n + 1, Rat(0));
        h.coeffs[i + 1] = 1;
        hs.push_back(h);
    }
    return Polyhedron(n, std::move(hs));
}

}  // namespace polyimage
