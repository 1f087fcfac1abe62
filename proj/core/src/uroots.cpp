#include "polyimage/uroots.hpp"

#include <cassert>
#include <stdexcept>

namespace polyimage {

namespace {

UPoly trimmed(UPoly u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
    return u;
}

UPoly monic(const UPoly& u) {
    UPoly t = trimmed(u);
    if (t.empty()) return t;
    return upscale(Rat(1) / t.back(), t);
}

}  // namespace

void updivmod(const UPoly& a_in, const UPoly& b_in, UPoly& quot, UPoly& rem) {
    UPoly a = trimmed(a_in), b = trimmed(b_in);
    if (b.empty()) throw std::invalid_argument("updivmod: division by zero");
    quot.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
    rem = a;
    long db = updeg(b);
    while (updeg(rem) >= db) {
        long dr = updeg(rem);
        Rat c = rem[dr] / b[db];
        quot[dr - db] += c;
        for (long i = 0; i <= db; ++i) rem[dr - db + i] -= c * b[i];
        rem = trimmed(rem);
        if (rem.empty()) break;
    }
    quot = trimmed(quot);
}

UPoly upgcd(const UPoly& a_in, const UPoly& b_in) {
    UPoly a = trimmed(a_in), b = trimmed(b_in);
    while (!b.empty()) {
        UPoly q, r;
        updivmod(a, b, q, r);
        a = b;
        b = monic(r);  // normalization keeps coefficient growth in check
    }
    return monic(a);
}

UPoly square_free_part(const UPoly& f) {
    UPoly g = upgcd(f, upderiv(f));
    if (updeg(g) <= 0) return trimmed(f);
    UPoly q, r;
    updivmod(f, g, q, r);
    assert(trimmed(r).empty());
    return q;
}

int sign_at(const UPoly& f, const Rat& t) { return rat_sign(upeval(f, t)); }

int sign_at_plus_inf(const UPoly& f) {
    UPoly t = trimmed(f);
    if (t.empty()) return 0;
    return rat_sign(t.back());
}

int sign_at_minus_inf(const UPoly& f) {
    UPoly t = trimmed(f);
    if (t.empty()) return 0;
    int s = rat_sign(t.back());
    return (updeg(t) % 2 == 0) ? s : -s;
}

Rat root_bound(const UPoly& f_in) {
    UPoly f = trimmed(f_in);
    if (f.empty()) throw std::invalid_argument("root_bound: zero polynomial");
    Rat m(0);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        Rat r = rat_abs(f[i] / f.back());
        if (r > m) m = r;
    }
    return m + 1;
}

std::vector<UPoly> sturm_chain(const UPoly& f) {
    std::vector<UPoly> chain;
    UPoly p0 = trimmed(f);
    if (p0.empty()) return chain;
    chain.push_back(p0);
    UPoly p1 = trimmed(upderiv(p0));
    if (p1.empty()) return chain;
    chain.push_back(p1);
    for (;;) {
        UPoly q, r;
        updivmod(chain[chain.size() - 2], chain.back(), q, r);
        r = trimmed(r);
        if (r.empty()) break;
        for (Rat& c : r) c = -c;
        // scale to a convenient size without changing signs
        Rat lead = rat_abs(r.back());
        chain.push_back(upscale(Rat(1) / lead, r));
    }
    return chain;
}

namespace {

int variations_at(const std::vector<UPoly>& chain, const Rat& t) {
    int var = 0, prev = 0;
    for (const UPoly& p : chain) {
        int s = sign_at(p, t);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

}  // namespace

int sturm_count(const std::vector<UPoly>& chain, const Rat& a, const Rat& b) {
    assert(a <= b);
    return variations_at(chain, a) - variations_at(chain, b);
}

int count_distinct_real_roots(const UPoly& f) {
    UPoly sf = square_free_part(f);
    if (updeg(sf) <= 0) return 0;
    Rat b = root_bound(sf);
    auto chain = sturm_chain(sf);
    return sturm_count(chain, -b, b);
}

int count_distinct_roots_in(const UPoly& f, const Rat& a, const Rat& b) {
    UPoly sf = square_free_part(f);
    if (updeg(sf) <= 0) return 0;
    auto chain = sturm_chain(sf);
    int c = sturm_count(chain, a, b);
    if (sign_at(sf, a) == 0) ++c;  // make the count inclusive of both endpoints
    return c;
}

RootIsolation isolate_real_roots(const UPoly& f) {
    UPoly t = trimmed(f);
    if (t.empty()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    RootIsolation out;
    UPoly sf = square_free_part(t);
    if (updeg(sf) <= 0) return out;
    Rat b = root_bound(sf);
    out.intervals = isolate_roots_in(t, -b, b);
    return out;
}

std::vector<RootInterval> isolate_roots_in(const UPoly& f, const Rat& lo, const Rat& hi) {
    UPoly sf = square_free_part(f);
    std::vector<RootInterval> found;
    if (updeg(sf) <= 0 || lo > hi) return found;
    auto chain = sturm_chain(sf);

    struct Seg { Rat a, b; int count; };
    // (a, b] counting; handle a possible root exactly at lo up front
    std::vector<Seg> work;
    if (sign_at(sf, lo) == 0) found.push_back({lo, lo});
    if (lo < hi) {
        int c = sturm_count(chain, lo, hi);
        if (c > 0) work.push_back({lo, hi, c});
    }
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.count == 1) {
            // tighten: if the right endpoint is the root, record it exactly
            if (sign_at(sf, s.b) == 0) {
                found.push_back({s.b, s.b});
            } else {
                found.push_back({s.a, s.b});
            }
            continue;
        }
        Rat m = (s.a + s.b) / 2;
        if (sign_at(sf, m) == 0) found.push_back({m, m});
        int cl = sturm_count(chain, s.a, m);
        if (sign_at(sf, m) == 0) --cl;  // the (a, m] count includes m itself
        int cr = sturm_count(chain, m, s.b);
        if (cl > 0) work.push_back({s.a, m, cl});
        if (cr > 0) work.push_back({m, s.b, cr});
    }
    std::sort(found.begin(), found.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return found;
}

void refine_root(const UPoly& f, RootInterval& iv, const Rat& width) {
    if (iv.exact()) return;
    UPoly sf = square_free_part(f);
    auto chain = sturm_chain(sf);
    while (iv.width() > width) {
        Rat m = iv.mid();
        if (sign_at(sf, m) == 0) {
            iv.lo = iv.hi = m;
            return;
        }
        if (sturm_count(chain, iv.lo, m) == 1)
            iv.hi = m;
        else
            iv.lo = m;
    }
}

}  // namespace polyimage
