#include "polyimage/rat.hpp"

#include <sstream>
#include <stdexcept>
#include <cassert>

namespace polyimage {

Rat rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat rat_parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    Rat q;
    if (q.set_str(t, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

std::string vec_str(const RatVec& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        os << rat_str(v[i]);
    }
    return os.str();
}

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

int rat_sign(const Rat& q) { return sgn(q); }

double rat_double(const Rat& q) { return q.get_d(); }

Rat rat_round(const Rat& q, unsigned bits) {
    Int scale = Int(1) << bits;
    Rat scaled = q * Rat(scale);
    Int num = scaled.get_num(), den = scaled.get_den();
    // round half toward zero; exactness is irrelevant for callers
    Int quot, rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rat out(quot, scale);
    out.canonicalize();
    return out;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec vec_scale(const Rat& c, const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

Rat vec_dot(const RatVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat vec_norm2(const RatVec& a) {
    Rat s(0);
    for (const Rat& x : a) s += x * x;
    return s;
}

Rat vec_inf_norm(const RatVec& a) {
    Rat m(0);
    for (const Rat& x : a) {
        Rat ax = rat_abs(x);
        if (ax > m) m = ax;
    }
    return m;
}

bool vec_is_zero(const RatVec& a) {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

RatMat RatMat::identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatVec RatMat::row(std::size_t i) const {
    RatVec r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

RatVec RatMat::apply(const RatVec& x) const {
    assert(x.size() == cols);
    RatVec y(rows, Rat(0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (at(i, j) != 0) y[i] += at(i, j) * x[j];
    return y;
}

RatMat RatMat::mul(const RatMat& other) const {
    assert(cols == other.rows);
    RatMat r(rows, other.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < other.cols; ++j)
                r.at(i, j) += at(i, k) * other.at(k, j);
        }
    return r;
}

RatMat RatMat::transposed() const {
    RatMat r(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

}  // namespace polyimage
