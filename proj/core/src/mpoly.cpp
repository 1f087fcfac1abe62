#include "polyimage/mpoly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polyimage {

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MPoly MPoly::constant(std::size_t nvars, const Rat& c) {
    MPoly p(nvars);
    if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
    return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t i, unsigned power) {
    assert(i < nvars);
    MPoly p(nvars);
    Exponents e(nvars, 0);
    e[i] = power;
    p.terms_[e] = 1;
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Exponents(nvars_, 0);
}

Rat MPoly::constant_value() const {
    assert(is_constant());
    return terms_.empty() ? Rat(0) : terms_.begin()->second;
}

void MPoly::add_term(const Exponents& e, const Rat& c) {
    assert(e.size() == nvars_);
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rat MPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

MPoly MPoly::operator+(const MPoly& o) const {
    assert(nvars_ == o.nvars_);
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    assert(nvars_ == o.nvars_);
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    assert(nvars_ == o.nvars_);
    MPoly r(nvars_);
    Exponents e(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MPoly MPoly::scaled(const Rat& c) const {
    MPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = c * v;
    return r;
}

MPoly MPoly::pow(unsigned k) const {
    MPoly r = MPoly::constant(nvars_, Rat(1));
    MPoly base = *this;
    while (k) {
        if (k & 1) r = r * base;
        base = (k >>= 1) ? base * base : base;
    }
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

Rat MPoly::eval(const RatVec& x) const {
    if (x.size() != nvars_)
        throw std::invalid_argument("MPoly::eval: dimension mismatch");
    Rat s(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            Rat p = x[i];
            unsigned k = e[i];
            Rat acc(1);
            while (k) {
                if (k & 1) acc *= p;
                k >>= 1;
                if (k) p *= p;
            }
            t *= acc;
        }
        s += t;
    }
    return s;
}

double MPoly::eval_double(const std::vector<double>& x) const {
    assert(x.size() == nvars_);
    double s = 0;
    for (const auto& [e, c] : terms_) {
        double t = rat_double(c);
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
        s += t;
    }
    return s;
}

MPoly MPoly::partial(std::size_t i) const {
    assert(i < nvars_);
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents d = e;
        d[i] -= 1;
        r.add_term(d, c * Rat(static_cast<long>(e[i])));
    }
    return r;
}

long MPoly::degree_in(std::size_t i) const {
    assert(i < nvars_);
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[i]));
    return d;
}

long MPoly::total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
        long t = 0;
        for (unsigned x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

Rat MPoly::coeff_abs_sum() const {
    Rat s(0);
    for (const auto& [e, c] : terms_) s += rat_abs(c);
    return s;
}

Rat MPoly::bound_on_box(const std::vector<std::pair<Rat, Rat>>& box) const {
    if (box.size() != nvars_)
        throw std::invalid_argument("bound_on_box: box dimension mismatch");
    RatVec m(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
        if (box[i].first > box[i].second)
            throw std::invalid_argument("bound_on_box: empty interval");
        m[i] = std::max(rat_abs(box[i].first), rat_abs(box[i].second));
    }
    Rat s(0);
    for (const auto& [e, c] : terms_) {
        Rat t = rat_abs(c);
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= m[i];
        s += t;
    }
    return s;
}

MPoly MPoly::substitute(std::size_t i, const Rat& value) const {
    assert(i < nvars_);
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (unsigned k = 0; k < e[i]; ++k) t *= value;
        Exponents d = e;
        d[i] = 0;
        r.add_term(d, t);
    }
    return r;
}

MPoly MPoly::compose(const std::vector<MPoly>& args) const {
    if (args.size() != nvars_)
        throw std::invalid_argument("MPoly::compose: arity mismatch");
    std::size_t out_vars = args.empty() ? 0 : args[0].nvars();
    for (const auto& a : args) assert(a.nvars() == out_vars);
    MPoly r(out_vars);
    for (const auto& [e, c] : terms_) {
        MPoly t = MPoly::constant(out_vars, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] > 0) t = t * args[i].pow(e[i]);
        r = r + t;
    }
    return r;
}

MPoly MPoly::embedded(std::size_t new_nvars, std::size_t shift) const {
    assert(nvars_ + shift <= new_nvars);
    MPoly r(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponents d(new_nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i) d[i + shift] = e[i];
        r.terms_[d] = c;
    }
    return r;
}

MPoly MPoly::truncated(std::size_t new_nvars) const {
    assert(new_nvars <= nvars_);
    MPoly r(new_nvars);
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = new_nvars; i < nvars_; ++i) assert(e[i] == 0);
        Exponents d(e.begin(), e.begin() + new_nvars);
        r.terms_[d] = c;
    }
    return r;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << "*x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

MPoly one_plus_norm2(std::size_t nvars) {
    MPoly p = MPoly::constant(nvars, Rat(1));
    for (std::size_t i = 0; i < nvars; ++i)
        p = p + MPoly::variable(nvars, i, 2);
    return p;
}

UPoly to_univariate(const MPoly& f) {
    assert(f.nvars() <= 1);
    UPoly u;
    for (const auto& [e, c] : f.terms()) {
        unsigned d = e.empty() ? 0 : e[0];
        if (u.size() <= d) u.resize(d + 1, Rat(0));
        u[d] = c;
    }
    return u;
}

MPoly from_univariate(const UPoly& u) {
    MPoly f(1);
    for (std::size_t d = 0; d < u.size(); ++d)
        if (u[d] != 0) f.add_term({static_cast<unsigned>(d)}, u[d]);
    return f;
}

long updeg(const UPoly& u) {
    for (std::size_t i = u.size(); i > 0; --i)
        if (u[i - 1] != 0) return static_cast<long>(i - 1);
    return -1;
}

Rat upeval(const UPoly& u, const Rat& t) {
    Rat s(0);
    for (std::size_t i = u.size(); i > 0; --i) s = s * t + u[i - 1];
    return s;
}

UPoly upderiv(const UPoly& u) {
    if (u.size() <= 1) return {};
    UPoly d(u.size() - 1);
    for (std::size_t i = 1; i < u.size(); ++i) d[i - 1] = u[i] * Rat(static_cast<long>(i));
    return d;
}

UPoly upadd(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

UPoly upsub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

UPoly upmul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

UPoly upscale(const Rat& c, const UPoly& a) {
    UPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

}  // namespace polyimage
