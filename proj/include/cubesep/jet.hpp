#pragma once

#include <array>
#include <cmath>

namespace cubesep {

// Truncated Taylor series (jet) arithmetic of fixed order. Used to expand the
// far-regime density around the diagonal endpoint, where direct evaluation of
// the closed form cancels catastrophically. c[k] is the coefficient of x^k.
template <int Order>
struct Jet {
    std::array<double, Order + 1> c{};

    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }

    // Seed for the expansion variable: value v, derivative dv (usually +-1).
    static Jet variable(double v, double dv) {
        Jet j;
        j.c[0] = v;
        if constexpr (Order >= 1) j.c[1] = dv;
        return j;
    }
};

template <int N>
Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (int i = 0; i <= N; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (int i = 0; i <= N; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (int i = 0; i <= N; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j) s += a.c[j] * b.c[i - j];
        r.c[i] = s;
    }
    return r;
}

template <int N>
Jet<N> operator*(double s, const Jet<N>& a) {
    Jet<N> r;
    for (int i = 0; i <= N; ++i) r.c[i] = s * a.c[i];
    return r;
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    r.c[0] = a.c[0] / b.c[0];
    for (int i = 1; i <= N; ++i) {
        double s = a.c[i];
        for (int j = 1; j <= i; ++j) s -= b.c[j] * r.c[i - j];
        r.c[i] = s / b.c[0];
    }
    return r;
}

// Requires a positive leading coefficient.
template <int N>
Jet<N> sqrt(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::sqrt(a.c[0]);
    for (int i = 1; i <= N; ++i) {
        double s = a.c[i];
        for (int j = 1; j < i; ++j) s -= r.c[j] * r.c[i - j];
        r.c[i] = s / (2.0 * r.c[0]);
    }
    return r;
}

// w = acos(u), requires |u(0)| < 1: w' = -u' / sqrt(1 - u^2), integrated
// coefficient-wise.
template <int N>
Jet<N> acos(const Jet<N>& u) {
    const Jet<N> v = sqrt(Jet<N>::constant(1.0) - u * u);
    Jet<N> du;  // series of u', stored one degree down
    for (int i = 0; i < N; ++i) du.c[i] = (i + 1) * u.c[i + 1];
    const Jet<N> q = du / v;
    Jet<N> w;
    w.c[0] = std::acos(u.c[0]);
    for (int k = 1; k <= N; ++k) w.c[k] = -q.c[k - 1] / k;
    return w;
}

}  // namespace cubesep
