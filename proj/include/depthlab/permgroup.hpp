#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace depthlab {

class ClassFunction;

namespace permgroup {

using Point = std::uint16_t;

inline constexpr std::size_t kDefaultOrderCap = 10'000;

/// A permutation of {0, ..., degree-1} stored as its image word.
/// Composition is left-to-right: (a * b)(x) = b(a(x)), so groups act on the right.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<Point> images);

    static Perm identity(std::size_t degree);
    /// Cycles use 0-based points; every point must be < degree.
    static Perm from_cycles(std::size_t degree, const std::vector<std::vector<std::size_t>>& cycles);

    std::size_t degree() const { return images_.size(); }
    Point operator[](std::size_t x) const { return images_[x]; }
    std::span<const Point> images() const { return images_; }

    Perm operator*(const Perm& rhs) const;
    Perm inverse() const;
    /// Extends by fixed points; degree must not shrink.
    Perm padded(std::size_t degree) const;

    bool is_identity() const;
    std::size_t order() const;
    /// Cycle lengths in descending order, including fixed points.
    std::vector<std::size_t> cycle_type() const;
    /// 1-based cycle notation, "()" for the identity.
    std::string to_string() const;

    auto operator<=>(const Perm&) const = default;
    bool operator==(const Perm&) const = default;

private:
    std::vector<Point> images_;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};

struct ConjClass {
    std::size_t representative = 0;  // element index, least in the class
    std::size_t size = 0;
    std::vector<std::size_t> member_indices;  // sorted
    std::size_t rep_order = 1;
};

/// A fully enumerated finite permutation group with its conjugacy classes.
/// Element 0 is the identity. Immutable after construction.
class PermGroup {
public:
    /// Breadth-first closure over the generators; each new layer is sorted
    /// lexicographically, so equal inputs give identical element lists.
    static PermGroup generate(std::size_t degree, const std::vector<Perm>& generators,
                              std::size_t order_cap = kDefaultOrderCap);

    std::size_t degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return generators_; }
    const std::vector<Perm>& elements() const { return elements_; }
    const Perm& element(std::size_t i) const { return elements_[i]; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<ConjClass>& classes() const { return classes_; }
    std::size_t num_classes() const { return classes_.size(); }
    std::size_t class_of(std::size_t element) const { return class_of_[element]; }
    std::size_t exponent() const { return exponent_; }

    std::optional<std::size_t> index_of(const Perm& p) const;
    bool contains(const Perm& p) const { return index_of(p).has_value(); }
    std::size_t multiply(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    /// Class containing the inverses of class c.
    std::size_t inverse_class(std::size_t c) const { return inverse_class_[c]; }
    std::size_t centralizer_order(std::size_t c) const { return order() / classes_[c].size; }
    bool is_abelian() const { return classes_.size() == elements_.size(); }

private:
    PermGroup() = default;
    void compute_classes();

    std::size_t degree_ = 0;
    std::vector<Perm> generators_;
    std::vector<Perm> elements_;
    std::unordered_map<Perm, std::size_t, PermHash> lookup_;
    std::vector<std::size_t> inverse_;
    std::vector<ConjClass> classes_;
    std::vector<std::size_t> class_of_;
    std::vector<std::size_t> inverse_class_;
    std::size_t exponent_ = 1;
};

using GroupPtr = std::shared_ptr<const PermGroup>;

/// Named families and explicit generators. The text form is parsed by parse_group_spec.
struct GroupSpec {
    enum class Kind { Explicit, Symmetric, Alternating, Cyclic, Dihedral, Semidirect, Trivial };
    Kind kind = Kind::Trivial;
    std::size_t n = 1;            // Sym/Alt/Cyclic degree, Dihedral order, Semidirect p
    std::size_t q = 1;            // Semidirect: order of the acting cyclic group
    std::size_t action = 1;       // Semidirect: multiplier a with a^q = 1 mod p
    std::size_t degree = 1;       // Explicit
    std::vector<Perm> generators; // Explicit
    std::string text;
};

/// Parses `S4`, `A5`, `C12`, `D8`, `C11:C5@3`, `trivial`, or `perm:(1 2)(3 4),(1 2 3)`.
/// Errors carry the offending character position.
GroupSpec parse_group_spec(std::string_view text);

/// Standard generators for a spec: adjacent transpositions for Sym(n), 3-cycles (1 2 k)
/// for Alt(n), an n-cycle for Cyclic(n), rotation plus reflection for Dihedral,
/// translation plus multiplication for the semidirect product.
std::vector<Perm> standard_generators(const GroupSpec& spec);
std::size_t natural_degree(const GroupSpec& spec);

GroupPtr build_group(const GroupSpec& spec, std::size_t order_cap = kDefaultOrderCap);
GroupPtr build_group(std::string_view text, std::size_t order_cap = kDefaultOrderCap);

/// A subgroup U of G with fusion of classes and right cosets U\G.
class SubgroupEmbedding {
public:
    const GroupPtr& parent() const { return parent_; }
    const GroupPtr& subgroup() const { return subgroup_; }
    /// Subgroup class -> parent class.
    const std::vector<std::size_t>& fusion() const { return fusion_; }
    /// Least parent element index in each right coset Ux, ordered by that index.
    const std::vector<std::size_t>& right_cosets() const { return right_cosets_; }
    std::size_t index() const { return right_cosets_.size(); }
    /// Parent element index of subgroup element i.
    std::size_t to_parent(std::size_t i) const { return to_parent_[i]; }
    bool in_subgroup(std::size_t parent_element) const { return in_subgroup_[parent_element]; }
    /// Position in right_cosets() of the coset U g.
    std::size_t right_coset_of(std::size_t parent_element) const { return right_coset_of_[parent_element]; }

    friend SubgroupEmbedding embed_subgroup(GroupPtr parent, const std::vector<Perm>& subgens,
                                            std::size_t order_cap);

private:
    GroupPtr parent_;
    GroupPtr subgroup_;
    std::vector<std::size_t> fusion_;
    std::vector<std::size_t> right_cosets_;
    std::vector<std::size_t> to_parent_;
    std::vector<bool> in_subgroup_;
    std::vector<std::size_t> right_coset_of_;
};

/// Generators are padded to the parent degree; each must lie in the parent.
SubgroupEmbedding embed_subgroup(GroupPtr parent, const std::vector<Perm>& subgens,
                                 std::size_t order_cap = kDefaultOrderCap);

/// Group generated by a set of parent elements (greedy generator selection).
GroupPtr subgroup_from_elements(const PermGroup& parent, const std::vector<std::size_t>& elements);

/// Intersection of all conjugates of U: the largest normal subgroup of G inside U.
GroupPtr core(const SubgroupEmbedding& emb);

/// Kernel of the right action of G on U\G. Equals core(emb).
GroupPtr action_kernel(const SubgroupEmbedding& emb);

bool is_normal(const SubgroupEmbedding& emb);

/// Sorted parent element indices of a subgroup given as its own PermGroup.
std::vector<std::size_t> parent_indices(const PermGroup& parent, const PermGroup& sub);

/// chi_Q(g) = number of right cosets fixed by g; integer-valued.
ClassFunction coset_permutation_character(const SubgroupEmbedding& emb);

/// chi_ad(g) = |C_G(g)|, the character of the conjugation module.
ClassFunction adjoint_character(const GroupPtr& g);

}  // namespace permgroup
}  // namespace depthlab
