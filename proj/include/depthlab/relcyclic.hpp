#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "depthlab/rational.hpp"

namespace depthlab::relcyclic {

using linalg::LinearMap;
using linalg::Rational;
using linalg::SparseVector;

inline constexpr std::size_t kMaxAlgebraDim = 16;
inline constexpr std::size_t kMaxExtensionDim = 64;
inline constexpr std::size_t kDefaultAmbientCap = 5'000;
inline constexpr std::size_t kMaxDegree = 4;

/// Finite-dimensional associative unital algebra over Q by structure constants.
struct SCAlgebra {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<SparseVector>> table;  // table[i][j] = e_i e_j
    SparseVector unit;

    const SparseVector& product(std::size_t i, std::size_t j) const { return table[i][j]; }
    SparseVector multiply(const SparseVector& a, const SparseVector& b) const;
};

struct StructureConstant {
    std::size_t i, j, k;
    Rational value;
};

/// Verifies associativity on all basis triples and the two-sided unit (InputError).
SCAlgebra make_algebra(std::vector<std::string> labels, const std::vector<StructureConstant>& constants,
                       SparseVector unit);

SCAlgebra ground_field();
SCAlgebra dual_numbers();
/// M_m(Q) with matrix units e_ij at index i*m + j.
SCAlgebra matrix_algebra(std::size_t m);

/// Subalgebra S of R given by a basis of vectors in R.
struct SubalgebraSpec {
    std::vector<SparseVector> basis;
    bool contains_unit = false;
};

/// Checks independence, closure under multiplication and 1_R in S (InputError).
SubalgebraSpec subalgebra(const SCAlgebra& r, std::vector<SparseVector> basis);
SubalgebraSpec scalar_subalgebra(const SCAlgebra& r);
SubalgebraSpec full_subalgebra(const SCAlgebra& r);

struct AlgebraPair {
    SCAlgebra algebra;
    SubalgebraSpec sub;
};

/// Line-oriented text format; '#' starts a comment:
///   dim 2
///   labels 1 x
///   unit 1 0
///   c 1 1 0 0          (e_1 e_1 = 0 * e_0; i j k value, zero-based, rational values like -3/2)
///   sub 1 0            (one subalgebra basis row per line; omitted means S = Q 1)
/// Errors carry the line number (InputError).
AlgebraPair parse_algebra(std::string_view text);
AlgebraPair load_algebra_file(const std::string& path);

struct MatrixExtension {
    std::size_t m = 1;
    AlgebraPair base;      // (R, S)
    AlgebraPair extended;  // (M_m(R), M_m(S)); basis e_ij (x) r_k at (i*m + j)*dim R + k
};

/// ResourceError when m^2 dim R exceeds 64.
MatrixExtension matrix_extension(const SCAlgebra& r, const SubalgebraSpec& s, std::size_t m);

/// Z_n(R,S) = R^(n+1) modulo moving S across each of the n+1 cyclic gaps, for
/// n = 0 .. top, with the face, degeneracy and cyclic operators induced on the quotients.
///   d_i: r_i r_(i+1) for i < n;  d_n: r_n r_0 (x) r_1 (x) ... (x) r_(n-1)
///   s_j: inserts 1 after position j;  t_n: (r_n, r_0, ..., r_(n-1))
class CyclicModule {
public:
    /// ResourceError when dim R^(top+1) exceeds the ambient cap; top <= 4.
    CyclicModule(SCAlgebra r, SubalgebraSpec s, std::size_t top, std::size_t ambient_cap = kDefaultAmbientCap);

    std::size_t top() const { return top_; }
    const SCAlgebra& algebra() const { return r_; }
    const SubalgebraSpec& sub() const { return s_; }
    std::size_t ambient_dim(std::size_t n) const;
    const linalg::Quotient& space(std::size_t n) const { return spaces_.at(n); }
    std::size_t dim(std::size_t n) const { return spaces_.at(n).dim(); }

    /// Z_n -> Z_(n-1), n >= 1, 0 <= i <= n.
    const LinearMap& face(std::size_t n, std::size_t i) const { return faces_.at(n).at(i); }
    /// Z_n -> Z_(n+1), n < top, 0 <= j <= n.
    const LinearMap& degeneracy(std::size_t n, std::size_t j) const { return degeneracies_.at(n).at(j); }
    const LinearMap& cyclic(std::size_t n) const { return cyclic_.at(n); }
    /// b = sum (-1)^i d_i.
    LinearMap boundary(std::size_t n) const;
    /// lambda_n = (-1)^n t_n.
    LinearMap lambda(std::size_t n) const;

private:
    SCAlgebra r_;
    SubalgebraSpec s_;
    std::size_t top_;
    std::vector<linalg::Quotient> spaces_;
    std::vector<std::vector<LinearMap>> faces_;
    std::vector<std::vector<LinearMap>> degeneracies_;
    std::vector<LinearMap> cyclic_;
};

CyclicModule cyclic_module(const SCAlgebra& r, const SubalgebraSpec& s, std::size_t top,
                           std::size_t ambient_cap = kDefaultAmbientCap);

struct IdentityReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

/// Simplicial, mixed and cyclic identities for every degree n whose maps exist in z,
/// plus t_n^(n+1) = id, b^2 = 0 and b preserving im(1 - lambda).
IdentityReport cyclic_identities_check(const CyclicModule& z);

struct HCResult {
    std::vector<std::size_t> dims;  // HC_0 .. HC_N
    std::vector<std::size_t> lambda_dims;
};

/// HC_n = dim ker b - rank b on C^lambda_n = Z_n / im(1 - lambda_n), n = 0 .. N.
HCResult relative_HC(const CyclicModule& z, std::size_t degree);
HCResult relative_HC(const SCAlgebra& r, const SubalgebraSpec& s, std::size_t degree,
                     std::size_t ambient_cap = kDefaultAmbientCap);

struct DennisTrace {
    std::size_t n = 0;
    LinearMap map;  // Z_n(M_m R, M_m S) -> Z_n(R, S)
    std::size_t rank = 0;
    bool bijective = false;
};

/// Matrix-entry contraction on Z_n, verified well defined on the relation quotient,
/// commuting with every d_i, s_j and t_n, and bijective (IntegrityError otherwise).
/// Both modules need degrees n-1 .. n+1 (n+1 must not exceed either top).
DennisTrace dennis_trace(const MatrixExtension& ext, const CyclicModule& big, const CyclicModule& small,
                         std::size_t n);

}  // namespace depthlab::relcyclic
