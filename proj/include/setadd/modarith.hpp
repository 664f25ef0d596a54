#pragma once

// Small number-theory and modular linear algebra helpers shared by the
// group constructions and automorphism checks.

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace setadd {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Smallest prime factor by trial division; nullopt for n <= 1.
inline std::optional<std::uint64_t> smallest_prime_factor(std::uint64_t n)
{
    if (n <= 1)
        return std::nullopt;
    if (n % 2 == 0)
        return 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return d;
    return n;
}

inline bool is_prime(std::uint64_t n)
{
    auto p = smallest_prime_factor(n);
    return p && *p == n;
}

/// Least t >= 1 with u^t = 1 mod m, or nullopt when gcd(u, m) != 1 or t > cap.
inline std::optional<std::uint64_t> multiplicative_order(std::uint64_t u, std::uint64_t m,
                                                         std::uint64_t cap)
{
    if (m == 1)
        return 1;
    u %= m;
    if (std::gcd(u, m) != 1)
        return std::nullopt;
    std::uint64_t x = u;
    for (std::uint64_t t = 1; t <= cap; ++t) {
        if (x == 1)
            return t;
        x = mulmod(x, u, m);
    }
    return std::nullopt;
}

/// Square matrix over Z/m, row-major.
class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(std::size_t dim, std::uint64_t modulus)
        : dim_(dim), modulus_(modulus), data_(dim * dim, 0) {}

    static ModMatrix identity(std::size_t dim, std::uint64_t modulus)
    {
        ModMatrix m(dim, modulus);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = 1 % modulus;
        return m;
    }

    std::size_t dim() const { return dim_; }
    std::uint64_t modulus() const { return modulus_; }

    std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    ModMatrix operator*(const ModMatrix& rhs) const
    {
        ModMatrix out(dim_, modulus_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t k = 0; k < dim_; ++k) {
                const std::uint64_t a = (*this)(i, k);
                if (!a)
                    continue;
                for (std::size_t j = 0; j < dim_; ++j)
                    out(i, j) = (out(i, j) + mulmod(a, rhs(k, j), modulus_)) % modulus_;
            }
        return out;
    }

    ModMatrix pow(std::uint64_t e) const
    {
        ModMatrix result = identity(dim_, modulus_);
        ModMatrix base = *this;
        while (e) {
            if (e & 1)
                result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    /// y = M x over Z/m; x and y have dim() entries.
    void apply(const std::uint64_t* x, std::uint64_t* y) const
    {
        for (std::size_t i = 0; i < dim_; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < dim_; ++j)
                acc = (acc + mulmod((*this)(i, j), x[j], modulus_)) % modulus_;
            y[i] = acc;
        }
    }

    bool is_identity() const { return *this == identity(dim_, modulus_); }

    /// Determinant mod m by cofactor expansion (dimensions here are tiny).
    std::uint64_t determinant() const
    {
        return det_rec(data_, dim_);
    }

    bool operator==(const ModMatrix&) const = default;

private:
    std::uint64_t det_rec(const std::vector<std::uint64_t>& a, std::size_t n) const
    {
        if (n == 0)
            return 1 % modulus_;
        if (n == 1)
            return a[0] % modulus_;
        std::uint64_t det = 0;
        std::vector<std::uint64_t> minor((n - 1) * (n - 1));
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t w = 0;
            for (std::size_t r = 1; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (c != col)
                        minor[w++] = a[r * n + c];
            const std::uint64_t term = mulmod(a[col] % modulus_, det_rec(minor, n - 1), modulus_);
            det = (col % 2 == 0) ? (det + term) % modulus_ : (det + modulus_ - term) % modulus_;
        }
        return det;
    }

    std::size_t dim_ = 0;
    std::uint64_t modulus_ = 1;
    std::vector<std::uint64_t> data_;
};

} // namespace setadd
