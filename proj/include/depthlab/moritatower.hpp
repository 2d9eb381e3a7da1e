#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "depthlab/depthcore.hpp"
#include "depthlab/permgroup.hpp"

namespace depthlab::moritatower {

using depthcore::DepthReport;
using depthcore::InclusionMatrix;
using permgroup::SubgroupEmbedding;

/// Integer combination of group elements, keyed by parent element index.
using GroupAlgebraElement = std::map<std::size_t, std::int64_t>;

/// E: CG -> CU keeps the coefficients on U; x_i runs over left-coset
/// representatives g_i (G = union of g_i U) and y_i = g_i^-1.
struct FrobeniusSystem {
    const SubgroupEmbedding* embedding = nullptr;
    std::vector<std::size_t> x;
    std::vector<std::size_t> y;

    GroupAlgebraElement E(const GroupAlgebraElement& a) const;
    std::size_t size() const { return x.size(); }
};

GroupAlgebraElement multiply(const permgroup::PermGroup& g, const GroupAlgebraElement& a,
                             const GroupAlgebraElement& b);

/// Verifies the bimodule property of E on generators, surjectivity, and both
/// dual-basis identities on every group element (IntegrityError on failure).
/// The embedding must outlive the result.
FrobeniusSystem frobenius_system(const SubgroupEmbedding& emb);

inline constexpr std::size_t kDefaultRingCap = 5'000;
inline constexpr std::uint64_t kExhaustiveTriples = 1'000'000;

/// A (x) c with c a right-coset representative, stored as a * L + coset position.
/// Products of basis elements are basis elements or zero.
struct EMultiplicationRing {
    const SubgroupEmbedding* embedding = nullptr;
    std::size_t dim = 0;
    std::vector<std::size_t> unit;  // basis indices of sum x_i (x) y_i
    std::uint64_t triples_checked = 0;
    bool exhaustive = false;

    /// (a (x) y)(d (x) y') = a E(y d) (x) y'.
    std::optional<std::size_t> product(std::size_t lhs, std::size_t rhs) const;
    std::size_t basis_index(std::size_t a, std::size_t c) const;
};

/// Builds the ring on A (x)_B A and verifies dim = |G| [G:U], associativity (all
/// triples up to 10^6, seeded samples beyond), the two-sided unit and unit^2 = unit.
EMultiplicationRing e_multiplication_ring(const FrobeniusSystem& sys, std::size_t cap = kDefaultRingCap,
                                          std::uint64_t seed = 1);

/// Dimension of the center, by exact rational rank of the commutator conditions.
std::size_t center_dimension(const EMultiplicationRing& ring);

struct TowerStep {
    int level = 0;
    InclusionMatrix matrix;
    DepthReport report;
};

inline constexpr int kMaxTowerSteps = 16;

/// Step 0 carries M and every further step the transpose of the previous one.
/// Period two (step n and n+2 agree) is checked before returning.
std::vector<TowerStep> tower_sequence(const InclusionMatrix& m, int steps);

struct MoritaCheck {
    std::size_t samples = 0;
    depthcore::DepthFlavors reference;
    bool passed = false;
};

/// Depth flavors of P M Q for the identity and `samples` seeded random row/column permutations.
MoritaCheck morita_invariance_check(const InclusionMatrix& m, std::size_t samples = 10, std::uint64_t seed = 1);

}  // namespace depthlab::moritatower
