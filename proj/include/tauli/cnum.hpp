// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <utility>

namespace tauli {

/// Minimal complex value type over an arbitrary real type R.
/// std::complex is only specified for builtin floating types, so the
/// handful of operations the zero sums and Euler-Maclaurin evaluation
/// need are spelled out here.  Works for R = Real and R = long double.
template <class R>
struct CNum {
    R re{}, im{};

    CNum() = default;
    CNum(R r) : re(std::move(r)) {}
    CNum(R r, R i) : re(std::move(r)), im(std::move(i)) {}

    CNum& operator+=(const CNum& o) { re += o.re; im += o.im; return *this; }
    CNum& operator-=(const CNum& o) { re -= o.re; im -= o.im; return *this; }
    CNum& operator*=(const CNum& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    CNum& operator/=(const CNum& o) {
        R d = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = r;
        return *this;
    }
};

template <class R> CNum<R> operator+(CNum<R> a, const CNum<R>& b) { return a += b; }
template <class R> CNum<R> operator-(CNum<R> a, const CNum<R>& b) { return a -= b; }
template <class R> CNum<R> operator*(CNum<R> a, const CNum<R>& b) { return a *= b; }
template <class R> CNum<R> operator/(CNum<R> a, const CNum<R>& b) { return a /= b; }
template <class R> CNum<R> operator-(const CNum<R>& a) { return {-a.re, -a.im}; }

template <class R> CNum<R> operator+(CNum<R> a, const R& b) { a.re += b; return a; }
template <class R> CNum<R> operator+(const R& b, CNum<R> a) { a.re += b; return a; }
template <class R> CNum<R> operator-(CNum<R> a, const R& b) { a.re -= b; return a; }
template <class R> CNum<R> operator-(const R& b, const CNum<R>& a) { return {b - a.re, -a.im}; }
template <class R> CNum<R> operator*(CNum<R> a, const R& b) { a.re *= b; a.im *= b; return a; }
template <class R> CNum<R> operator*(const R& b, CNum<R> a) { a.re *= b; a.im *= b; return a; }
template <class R> CNum<R> operator/(CNum<R> a, const R& b) { a.re /= b; a.im /= b; return a; }
template <class R> CNum<R> operator/(const R& b, const CNum<R>& a) { return CNum<R>(b) / a; }

template <class R> CNum<R> conj(const CNum<R>& a) { return {a.re, -a.im}; }

template <class R> R norm(const CNum<R>& a) { return a.re * a.re + a.im * a.im; }

template <class R> R abs(const CNum<R>& a) {
    using std::sqrt;
    return sqrt(norm(a));
}

/// exp(a) for complex a.
template <class R> CNum<R> exp(const CNum<R>& a) {
    using std::cos;
    using std::exp;
    using std::sin;
    R m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
}

/// Principal log.
template <class R> CNum<R> log(const CNum<R>& a) {
    using std::atan2;
    using std::log;
    return {log(abs(a)), atan2(a.im, a.re)};
}

/// Integer power by repeated squaring.
template <class R> CNum<R> pow_ui(CNum<R> base, unsigned long e) {
    CNum<R> acc(R(1));
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// base^a for positive real base: exp(a * log base).
template <class R> CNum<R> pow_real_base(const R& base, const CNum<R>& a) {
    using std::log;
    R lb = log(base);
    return exp(CNum<R>(a.re * lb, a.im * lb));
}

} // namespace tauli
