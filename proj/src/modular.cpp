#include "depthlab/modular.hpp"

#include <algorithm>
#include <string>

#include "depthlab/errors.hpp"

namespace depthlab {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kPrimeCeiling = std::uint64_t{1} << 62;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

using Poly = std::vector<std::uint64_t>;

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

Poly poly_mod(const PrimeField& F, Poly a, const Poly& b)
{
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t lead_inv = F.inv(b.back());
    while (a.size() >= b.size()) {
        const std::uint64_t c = F.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const PrimeField& F, const Poly& a, const Poly& b, const Poly& m)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    return poly_mod(F, std::move(r), m);
}

Poly poly_powmod(const PrimeField& F, Poly base, std::uint64_t e, const Poly& m)
{
    Poly r{1};
    r = poly_mod(F, r, m);
    base = poly_mod(F, std::move(base), m);
    while (e) {
        if (e & 1)
            r = poly_mulmod(F, r, base, m);
        base = poly_mulmod(F, base, base, m);
        e >>= 1;
    }
    return r;
}

Poly monic(const PrimeField& F, Poly f)
{
    trim(f);
    if (f.empty())
        return f;
    const std::uint64_t li = F.inv(f.back());
    for (auto& c : f)
        c = F.mul(c, li);
    return f;
}

Poly poly_gcd(const PrimeField& F, Poly a, Poly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, std::move(a));
}

Poly poly_sub(const PrimeField& F, Poly a, const Poly& b)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = F.sub(a[i], b[i]);
    trim(a);
    return a;
}

Poly poly_div(const PrimeField& F, Poly a, const Poly& b)
{
    trim(a);
    if (a.size() < b.size())
        return {};
    Poly q(a.size() - b.size() + 1, 0);
    const std::uint64_t lead_inv = F.inv(b.back());
    while (a.size() >= b.size()) {
        const std::uint64_t c = F.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
        trim(a);
    }
    return q;
}

// Equal-degree splitting of a squarefree product of distinct linear factors.
void split_linear(const PrimeField& F, const Poly& f, std::uint64_t& seed, std::vector<std::uint64_t>& out)
{
    if (f.size() <= 1)
        return;
    if (f.size() == 2) {
        out.push_back(F.neg(F.mul(f[0], F.inv(f[1]))));
        return;
    }
    const std::uint64_t p = F.prime();
    if (p == 2) {
        for (std::uint64_t x = 0; x < 2; ++x) {
            std::uint64_t v = 0;
            for (std::size_t i = f.size(); i-- > 0;)
                v = F.add(F.mul(v, x), f[i]);
            if (v == 0)
                out.push_back(x);
        }
        return;
    }
    for (;;) {
        const std::uint64_t a = seed++ % p;
        Poly h = poly_powmod(F, Poly{a, 1}, (p - 1) / 2, f);
        h = poly_sub(F, std::move(h), Poly{1});
        Poly g = poly_gcd(F, f, h);
        if (g.size() > 1 && g.size() < f.size()) {
            split_linear(F, g, seed, out);
            split_linear(F, monic(F, poly_div(F, f, g)), seed, out);
            return;
        }
    }
}

}  // namespace

PrimeField::PrimeField(std::uint64_t p) : p_(p)
{
    if (p < 2 || p >= kPrimeCeiling || !is_prime(p))
        throw IntegrityError("PrimeField: modulus " + std::to_string(p) + " is not a prime below 2^62");
}

std::uint64_t PrimeField::reduce(std::int64_t x) const
{
    const auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = x % m;
    if (r < 0)
        r += m;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::add(std::uint64_t a, std::uint64_t b) const
{
    std::uint64_t r = a + b;
    return r >= p_ ? r - p_ : r;
}

std::uint64_t PrimeField::sub(std::uint64_t a, std::uint64_t b) const
{
    return a >= b ? a - b : a + p_ - b;
}

std::uint64_t PrimeField::mul(std::uint64_t a, std::uint64_t b) const
{
    return mulmod(a, b, p_);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const
{
    return powmod(a, e, p_);
}

std::uint64_t PrimeField::inv(std::uint64_t a) const
{
    if (a % p_ == 0)
        throw IntegrityError("PrimeField: inverse of zero");
    return powmod(a, p_ - 2, p_);
}

std::int64_t PrimeField::symmetric(std::uint64_t a) const
{
    return a > p_ / 2 ? -static_cast<std::int64_t>(p_ - a) : static_cast<std::int64_t>(a);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0)
            return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::uint64_t prime_congruent_one(std::uint64_t modulus, std::uint64_t lower_bound)
{
    if (modulus == 0)
        throw IntegrityError("prime_congruent_one: zero modulus");
    if (lower_bound >= kPrimeCeiling)
        throw ResourceError("no prime = 1 mod " + std::to_string(modulus) + " above bound " +
                            std::to_string(lower_bound) + " fits below 2^62");
    // First candidate of the form k*modulus + 1 strictly above lower_bound.
    std::uint64_t k = lower_bound / modulus;
    std::uint64_t candidate = k * modulus + 1;
    if (candidate <= lower_bound)
        candidate += modulus;
    for (; candidate < kPrimeCeiling; candidate += modulus) {
        if (is_prime(candidate))
            return candidate;
    }
    throw ResourceError("no prime = 1 mod " + std::to_string(modulus) + " below 2^62");
}

std::vector<std::uint64_t> distinct_roots(const PrimeField& F, std::vector<std::uint64_t> poly)
{
    Poly f = monic(F, std::move(poly));
    if (f.empty())
        throw IntegrityError("distinct_roots: zero polynomial");
    if (f.size() == 1)
        return {};
    // g = gcd(f, x^p - x) collects each F_p-root exactly once.
    Poly xp = poly_powmod(F, Poly{0, 1}, F.prime(), f);
    Poly g = poly_gcd(F, f, poly_sub(F, std::move(xp), Poly{0, 1}));
    std::vector<std::uint64_t> roots;
    std::uint64_t seed = 1;
    split_linear(F, g, seed, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace depthlab
