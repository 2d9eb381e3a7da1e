#pragma once

#include <cstdint>
#include <vector>

namespace depthlab {

/// Arithmetic in Z/pZ for a prime p < 2^62. Residues are kept in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t prime() const { return p_; }

    std::uint64_t reduce(std::int64_t x) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;  // throws IntegrityError on 0

    /// Representative in (-p/2, p/2].
    std::int64_t symmetric(std::uint64_t a) const;

private:
    std::uint64_t p_;
};

/// A residue tagged with its modulus; the carrier for modular character values.
struct ModularScalar {
    std::uint64_t residue = 0;
    std::uint64_t prime = 0;

    bool operator==(const ModularScalar&) const = default;
};

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Smallest prime p with p = 1 (mod modulus) and p > lower_bound. Throws ResourceError
/// if no such prime exists below 2^62.
std::uint64_t prime_congruent_one(std::uint64_t modulus, std::uint64_t lower_bound);

/// Distinct roots in F_p of a nonzero polynomial (coefficients low-to-high), sorted
/// ascending. Factors without roots in F_p are ignored.
std::vector<std::uint64_t> distinct_roots(const PrimeField& field, std::vector<std::uint64_t> poly);

}  // namespace depthlab
