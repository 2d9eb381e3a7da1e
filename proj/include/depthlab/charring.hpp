#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depthlab/class_function.hpp"
#include "depthlab/modular.hpp"
#include "depthlab/permgroup.hpp"

namespace depthlab::charring {

using permgroup::GroupPtr;
using permgroup::SubgroupEmbedding;

/// Irreducible characters of a group as residues modulo a prime p = 1 (mod exponent).
/// Rows are ordered by ascending degree, then lexicographically by residue vector,
/// so row 0 is always the trivial character.
struct CharacterTable {
    GroupPtr group;
    std::uint64_t prime = 0;
    /// Lifted multiplicities must lie in [0, bound); bound < prime.
    std::uint64_t bound = 0;
    std::vector<ClassFunction> irreducibles;
    std::vector<std::int64_t> degrees;

    PrimeField field() const { return PrimeField(prime); }
    std::size_t size() const { return irreducibles.size(); }
    static constexpr std::size_t trivial_index() { return 0; }
};

struct MultiplicityVector {
    std::vector<std::uint64_t> coefficients;

    std::vector<std::size_t> support() const;
    bool operator==(const MultiplicityVector&) const = default;
};

/// max(2|G|^2, index^(r+1)) with r the class count of G, saturating at 2^62.
/// Covers lifts of chi_Q^n multiplicities for n <= r+1 and of tensor multiplicities
/// <chi_i * psi, chi_j> for psi of degree at most |G|.
std::uint64_t multiplicity_bound(const permgroup::PermGroup& g, std::size_t index = 1);

/// Smallest prime p = 1 (mod exponent of g) above the bound.
std::uint64_t select_prime(const permgroup::PermGroup& g, std::uint64_t bound);

/// Burnside-Dixon: joint eigenvectors of the class-multiplication matrices mod p.
/// A zero bound means multiplicity_bound(*g).
CharacterTable character_table(const GroupPtr& g, std::uint64_t bound = 0);

/// Table over a prescribed prime (used to put a subgroup and its parent over one field).
CharacterTable character_table_over(const GroupPtr& g, std::uint64_t prime, std::uint64_t bound);

/// (1/|G|) sum_c |c| a(c) b(c^-1) lifted to [0, bound). Throws IntegrityError past the bound.
std::uint64_t inner_product(const ClassFunction& a, const ClassFunction& b, const PrimeField& F,
                            std::uint64_t bound);
std::uint64_t inner_product(const ClassFunction& a, const ClassFunction& b, const CharacterTable& table);

ClassFunction restrict(const ClassFunction& chi, const SubgroupEmbedding& emb);
ClassFunction induce(const ClassFunction& chi, const SubgroupEmbedding& emb);

/// Pointwise product. Integer inputs stay integer (ResourceError on overflow);
/// a modular input makes the result modular over its prime.
ClassFunction tensor(const ClassFunction& a, const ClassFunction& b);

/// n-th tensor power; power 0 is the trivial character.
ClassFunction tensor_power(const ClassFunction& chi, std::size_t n);

/// Coefficients <chi, chi_i>; the reconstruction sum m_i chi_i = chi is checked mod p.
MultiplicityVector decompose(const ClassFunction& chi, const CharacterTable& table);

/// Sum of m_i chi_i as a modular class function.
ClassFunction compose(const MultiplicityVector& m, const CharacterTable& table);

/// Regular character: |G| at the identity class, 0 elsewhere.
ClassFunction regular_character(const GroupPtr& g);
ClassFunction trivial_character(const GroupPtr& g);

/// Smallest g^((p-1)/e), g = 2, 3, ..., of exact multiplicative order e; e must divide p-1.
std::uint64_t primitive_root_of_unity(const PrimeField& F, std::uint64_t e);

/// Eigenvalue multiplicities of chi on each class: entry [c][k] counts the eigenvalue
/// omega^(k e/o) of a class representative of order o, where omega has order e (a
/// multiple of every element order). Prime independent once omega is fixed.
std::vector<std::vector<std::int64_t>> eigenvalue_profile(const ClassFunction& chi, const CharacterTable& table,
                                                          std::uint64_t omega, std::uint64_t e);

/// Row permutation taking each irreducible of `from` to the irreducible of `to` with the
/// same eigenvalue profile; roots of order e are chosen the same way in both fields.
/// Both tables must describe the same group (IntegrityError when no bijection exists).
std::vector<std::size_t> align_tables(const CharacterTable& from, const CharacterTable& to, std::uint64_t e);

/// Tab-separated dump: a header with the prime, then one row per irreducible
/// (lifted degree followed by its residues).
std::string dump_table(const CharacterTable& table);

}  // namespace depthlab::charring
