#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depthlab/charring.hpp"
#include "depthlab/permgroup.hpp"

namespace depthlab::depthcore {

using charring::CharacterTable;
using permgroup::SubgroupEmbedding;

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Marker for a search that ran past its bound. Never produced for group pairs.
inline constexpr int kNotFound = -1;

/// Zero pattern of a nonnegative matrix, with products over the boolean semiring.
class BoolPattern {
public:
    BoolPattern() = default;
    BoolPattern(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

    static BoolPattern identity(std::size_t n);
    static BoolPattern of(const IntMatrix& m);
    static BoolPattern row_vector(std::size_t cols, const std::vector<std::size_t>& support);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v = true) { bits_[i * cols_ + j] = v; }

    BoolPattern operator*(const BoolPattern& rhs) const;
    BoolPattern transposed() const;
    /// Column indices of the nonzero entries of row i.
    std::vector<std::size_t> row_support(std::size_t i) const;
    bool has_positive_diagonal() const;

    bool operator==(const BoolPattern&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);
IntMatrix identity_matrix(std::size_t n);

/// Restriction/induction multiplicities: rows are irreducibles of U, columns of G.
struct InclusionMatrix {
    IntMatrix entries;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::int64_t> row_degrees;
    std::vector<std::int64_t> col_degrees;

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return entries[i][j]; }

    /// Rows and columns swap roles, as do the label and degree vectors.
    InclusionMatrix transposed() const;
    /// Rows, columns permuted: result(i, j) = this(row_perm[i], col_perm[j]).
    InclusionMatrix relabeled(const std::vector<std::size_t>& row_perm, const std::vector<std::size_t>& col_perm) const;
    /// Generic labels and unit degrees; every row and column must be nonzero.
    static InclusionMatrix from_entries(IntMatrix entries);
};

/// M_ij = <chi_i^U, Res chi_j^G>. Frobenius reciprocity, nonzero rows/columns and
/// the induction dimension count are verified before returning (IntegrityError).
InclusionMatrix inclusion_matrix(const SubgroupEmbedding& emb, const CharacterTable& table_u,
                                 const CharacterTable& table_g);

struct DepthFlavors {
    int d_odd = kNotFound;
    int d_even_left = kNotFound;
    int d_even_right = kNotFound;
    int d_even = kNotFound;
    int d_h = kNotFound;
    int d_min = kNotFound;

    bool operator==(const DepthFlavors&) const = default;
};

/// Whether the depth-k condition holds for M (k >= 1): odd k = 2n+1 compares
/// (MM^T)^n with (MM^T)^(n+1); even k = 2n compares (MM^T)^(n-1)M with (MM^T)^n M
/// (left) or the transposed products (right).
bool depth_condition(const InclusionMatrix& m, int k);
/// h-depth 2n-1 compares (M^T M)^(n-1) with (M^T M)^n.
bool h_depth_condition(const InclusionMatrix& m, int k);

/// Minimum of each flavor. Search bound: 2 max(r, s) + 3 on the power index.
DepthFlavors depth_flavors(const InclusionMatrix& m);

enum class ChainSide { Subalgebra, Parent };

/// Supports of the tensor powers Q^(n) for n = 0 .. ell + 1, with Q^(0) the trivial
/// module: e0 (MM^T)^n on the subalgebra side, e0 M (M^T M)^(n-1) on the parent side.
struct QuotientChain {
    int ell = kNotFound;
    std::vector<std::vector<std::size_t>> supports;
};

QuotientChain quotient_chain(const InclusionMatrix& m, ChainSide which, std::size_t trivial_row = 0);

/// Supports of chi^n for n = 0 .. max_power, from the boolean tensor-by-chi matrix.
std::vector<std::vector<std::size_t>> constituent_chain(const ClassFunction& chi, const CharacterTable& table,
                                                        std::size_t max_power);

struct TheoremCheck {
    bool even_equality = false;  // d_even = 2 ell_QR + 2
    bool h_equality = false;     // d_h = 2 ell_QH + 1
    bool ineq1 = false;          // 2 ell_QR + 1 < d_even
    bool ineq2 = false;          // 2 ell_QH + 1 <= d_h
    bool passed() const { return even_equality && h_equality && ineq1 && ineq2; }
};

TheoremCheck verify_precise_theorem(const DepthFlavors& flavors, int ell_qr, int ell_qh);

struct CoreCheck {
    std::size_t kernel_order = 0;
    std::size_t core_order = 0;
    bool kernel_equals_core = false;
    bool chi_q_faithful = false;
    bool faithful_iff_corefree = false;
    bool passed() const { return kernel_equals_core && faithful_iff_corefree; }
};

/// Kernel of chi_Q^ell (exact integers) against the subgroup core, as element sets.
CoreCheck core_ideal_check(const SubgroupEmbedding& emb, int ell_qh);

/// Least n >= 1 with <chi^n, 1> != 0; nullopt past 2r + 3.
std::optional<std::size_t> ord_of(const ClassFunction& chi, const CharacterTable& table);

struct BurnsideBrauerResult {
    std::size_t distinct_values = 0;
    std::size_t covered = 0;  // irreducibles met by chi^0 .. chi^(v-1)
    bool passed = false;
};

/// chi must be integer-valued and faithful (PreconditionError otherwise).
BurnsideBrauerResult burnside_brauer_check(const ClassFunction& chi, const CharacterTable& table);

struct DrinfeldDepth {
    int ell_ad = kNotFound;
    int module_depth = kNotFound;
};

/// Module depth of the adjoint representation in the odd scaling 2 ell + 1 (1 when trivial).
DrinfeldDepth drinfeld_double_depth(const permgroup::GroupPtr& g, const CharacterTable& table);

enum class BimoduleSide { BB, BA, AB, AA };
const char* to_string(BimoduleSide side);

inline constexpr std::size_t kDefaultPointCap = 1'000'000;

/// Number of classes of tuples in the n-fold fiber product G x_U ... x_U G.
std::uint64_t fiber_points(const SubgroupEmbedding& emb, int n);

/// Multiplicities of the irreducible bimodules in A^(n) over B or A on each side,
/// from the permutation character of the fiber product under left/right translation.
/// Computed over the oracle's own tables, then reindexed to the rows of the reference
/// tables (those of pair_tables when omitted).
/// ResourceError when fiber_points exceeds the cap; n must be in [1, 3].
IntMatrix brute_force_bimodule_oracle(const SubgroupEmbedding& emb, int n, BimoduleSide side,
                                      std::uint64_t point_cap = kDefaultPointCap);
IntMatrix brute_force_bimodule_oracle(const SubgroupEmbedding& emb, int n, BimoduleSide side,
                                      const CharacterTable& ref_u, const CharacterTable& ref_g,
                                      std::uint64_t point_cap = kDefaultPointCap);

/// (MM^T)^n, (MM^T)^(n-1) M, M^T (MM^T)^(n-1) or (M^T M)^(n-1).
IntMatrix matrix_rule(const InclusionMatrix& m, int n, BimoduleSide side);

struct DepthReport {
    std::string pair;
    std::uint64_t prime = 0;
    std::size_t group_order = 0;
    std::size_t subgroup_order = 0;
    std::size_t index = 0;
    bool normal = false;
    InclusionMatrix matrix;
    DepthFlavors flavors;
    QuotientChain chain_r;
    QuotientChain chain_h;
    std::size_t core_order = 0;
    bool chi_q_faithful = false;
    std::optional<std::size_t> ord_q;
    std::vector<std::uint64_t> chi_q_multiplicities;  // over the rows of the parent table
    std::vector<std::pair<std::string, bool>> verification;

    int ell_qr() const { return chain_r.ell; }
    int ell_qh() const { return chain_h.ell; }
    bool all_verified() const;
};

/// Matrix-level report: flavors with parity, monotonicity and h-depth checks. With
/// chains, row 0 and column 0 are the trivial modules of a Hopf pair and both quotient
/// chains and the theorem checks are added; without, the chains stay empty.
DepthReport matrix_report(const InclusionMatrix& m, std::string name, bool with_chains);

/// Full pipeline for one pair: tables over a shared prime, inclusion matrix, depth
/// flavors, both quotient chains with their character-side cross-checks, theorem,
/// core, normality and Burnside-Brauer verifications.
DepthReport analyze_pair(const SubgroupEmbedding& emb, std::string pair_name);

/// Tables over the prime selected for this pair.
std::pair<CharacterTable, CharacterTable> pair_tables(const SubgroupEmbedding& emb);

}  // namespace depthlab::depthcore
