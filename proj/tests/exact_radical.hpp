#pragma once

// Exact arithmetic over Q-linear combinations of square roots of integers.
// Every entry of the truncated ladder matrices is c * sqrt(r) with rational c
// and squarefree r, and the commutators of interest close inside that ring,
// so algebraic identities can be checked with no floating-point slack at all.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace radical {

struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize()
    {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0)
            den = 1;
    }

    friend Rat operator+(Rat a, Rat b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rat operator-(Rat a, Rat b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rat operator*(Rat a, Rat b) { return {a.num * b.num, a.den * b.den}; }
    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    bool is_zero() const { return num == 0; }
    double value() const { return double(num) / double(den); }
};

// Pulls the largest perfect-square factor out of r, returning (s, f) with
// r = s^2 * f and f squarefree.
inline std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t r)
{
    std::int64_t s = 1;
    for (std::int64_t p = 2; p * p <= r; ++p)
        while (r % (p * p) == 0) {
            r /= p * p;
            s *= p;
        }
    return {s, r};
}

// Sum of c_f * sqrt(f) over squarefree radicands f; the zero element is the
// empty map.
struct Rad {
    std::map<std::int64_t, Rat> terms;

    static Rad of(Rat c, std::int64_t radicand)
    {
        Rad out;
        if (c.is_zero() || radicand == 0)
            return out;
        auto [s, f] = squarefree_split(radicand);
        out.terms[f] = c * Rat(s);
        return out;
    }

    void add_term(Rat c, std::int64_t squarefree)
    {
        if (c.is_zero())
            return;
        auto [it, fresh] = terms.emplace(squarefree, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }

    friend Rad operator+(const Rad& a, const Rad& b)
    {
        Rad out = a;
        for (const auto& [f, c] : b.terms)
            out.add_term(c, f);
        return out;
    }

    friend Rad operator-(const Rad& a, const Rad& b)
    {
        Rad out = a;
        for (const auto& [f, c] : b.terms)
            out.add_term(Rat(-c.num, c.den), f);
        return out;
    }

    friend Rad operator*(const Rad& a, const Rad& b)
    {
        Rad out;
        for (const auto& [fa, ca] : a.terms)
            for (const auto& [fb, cb] : b.terms) {
                auto [s, f] = squarefree_split(fa * fb);
                out.add_term(ca * cb * Rat(s), f);
            }
        return out;
    }

    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const Rad& a, const Rad& b) { return (a - b).is_zero(); }

    double value() const
    {
        double v = 0.0;
        for (const auto& [f, c] : terms)
            v += c.value() * std::sqrt(double(f));
        return v;
    }
};

using Mat = std::vector<std::vector<Rad>>;

inline Mat zeros(int dim) { return Mat(std::size_t(dim), std::vector<Rad>(std::size_t(dim))); }

inline Mat mul(const Mat& a, const Mat& b)
{
    const int dim = int(a.size());
    Mat out = zeros(dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            if (a[std::size_t(i)][std::size_t(k)].is_zero())
                continue;
            for (int j = 0; j < dim; ++j)
                out[std::size_t(i)][std::size_t(j)] =
                    out[std::size_t(i)][std::size_t(j)] +
                    a[std::size_t(i)][std::size_t(k)] * b[std::size_t(k)][std::size_t(j)];
        }
    return out;
}

inline Mat sub(const Mat& a, const Mat& b)
{
    const int dim = int(a.size());
    Mat out = zeros(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            out[std::size_t(i)][std::size_t(j)] =
                a[std::size_t(i)][std::size_t(j)] - b[std::size_t(i)][std::size_t(j)];
    return out;
}

inline Mat commutator(const Mat& a, const Mat& b) { return sub(mul(a, b), mul(b, a)); }

inline Mat scaled(const Mat& a, Rat c)
{
    const int dim = int(a.size());
    Mat out = zeros(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (const auto& [f, coeff] : a[std::size_t(i)][std::size_t(j)].terms)
                out[std::size_t(i)][std::size_t(j)].add_term(coeff * c, f);
    return out;
}

// Truncated boson operators with exact entries: a |n> = sqrt(n) |n-1>, the
// two-photon ladder K+ = adag^2/2, K- = a^2/2, K0 = (n_hat + 1/2)/2.
inline Mat lowering(int dim)
{
    Mat m = zeros(dim);
    for (int n = 1; n < dim; ++n)
        m[std::size_t(n - 1)][std::size_t(n)] = Rad::of(Rat(1), n);
    return m;
}

inline Mat raising(int dim)
{
    Mat m = zeros(dim);
    for (int n = 0; n + 1 < dim; ++n)
        m[std::size_t(n + 1)][std::size_t(n)] = Rad::of(Rat(1), n + 1);
    return m;
}

inline Mat two_photon_raise(int dim)
{
    Mat m = zeros(dim);
    for (int n = 0; n + 2 < dim; ++n)
        m[std::size_t(n + 2)][std::size_t(n)] =
            Rad::of(Rat(1, 2), std::int64_t(n + 1) * std::int64_t(n + 2));
    return m;
}

inline Mat two_photon_lower(int dim)
{
    Mat m = zeros(dim);
    for (int n = 2; n < dim; ++n)
        m[std::size_t(n - 2)][std::size_t(n)] =
            Rad::of(Rat(1, 2), std::int64_t(n) * std::int64_t(n - 1));
    return m;
}

inline Mat two_photon_number(int dim)
{
    Mat m = zeros(dim);
    for (int n = 0; n < dim; ++n)
        m[std::size_t(n)][std::size_t(n)] = Rad::of(Rat(2 * n + 1, 4), 1);
    return m;
}

// True iff every entry of the residual with both indices at least `margin`
// below the truncation edge vanishes identically.
inline bool interior_zero(const Mat& m, int margin)
{
    const int dim = int(m.size());
    for (int i = 0; i + margin < dim; ++i)
        for (int j = 0; j + margin < dim; ++j)
            if (!m[std::size_t(i)][std::size_t(j)].is_zero())
                return false;
    return true;
}

inline bool interior_equal(const Mat& a, const Mat& b, int margin)
{
    return interior_zero(sub(a, b), margin);
}

} // namespace radical
