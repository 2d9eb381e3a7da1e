#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace depthlab::linalg {

using Rational = mpq_class;

/// Sorted (index, value) pairs with no stored zeros.
class SparseVector {
public:
    SparseVector() = default;
    static SparseVector unit(std::size_t i, Rational v = 1);

    const std::vector<std::pair<std::size_t, Rational>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t nonzeros() const { return terms_.size(); }
    Rational at(std::size_t i) const;

    /// this += c * other
    void add_scaled(const SparseVector& other, const Rational& c);
    void add(std::size_t i, const Rational& v);
    void scale(const Rational& c);

    bool operator==(const SparseVector&) const = default;

private:
    std::vector<std::pair<std::size_t, Rational>> terms_;
};

/// Subspace of Q^ambient kept in fully reduced row echelon form: each row has a
/// leading 1 at its pivot and zeros in every other row's pivot column.
class Subspace {
public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }

    /// Adds v to the span; true when the dimension grew.
    bool insert(SparseVector v);
    /// Canonical representative of v modulo the subspace; supported off the pivots.
    SparseVector reduce(const SparseVector& v) const;
    bool contains(const SparseVector& v) const { return reduce(v).empty(); }
    /// Non-pivot coordinates, ascending. They index a basis of the quotient.
    std::vector<std::size_t> free_columns() const;
    /// Echelon rows in pivot order.
    std::vector<SparseVector> basis() const;

private:
    std::size_t ambient_;
    std::map<std::size_t, SparseVector> rows_;  // pivot -> row
};

/// V / W with basis the images of the free coordinate vectors of W's echelon form.
class Quotient {
public:
    Quotient() = default;
    explicit Quotient(Subspace relations);

    std::size_t ambient() const { return relations_.ambient(); }
    std::size_t dim() const { return basis_.size(); }
    /// Coordinate index in V of quotient basis vector i.
    std::size_t lift(std::size_t i) const { return basis_[i]; }
    /// Coordinates of the class of v in the quotient basis.
    SparseVector coordinates(const SparseVector& v) const;
    bool is_zero(const SparseVector& v) const { return relations_.contains(v); }
    const Subspace& relations() const { return relations_; }

private:
    Subspace relations_;
    std::vector<std::size_t> basis_;
    std::map<std::size_t, std::size_t> position_;
};

/// Linear map between coordinate spaces, stored by columns.
struct LinearMap {
    std::size_t rows = 0;
    std::vector<SparseVector> columns;

    std::size_t cols() const { return columns.size(); }
    SparseVector apply(const SparseVector& v) const;
    std::size_t rank() const;
    bool is_zero() const;
};

LinearMap compose(const LinearMap& after, const LinearMap& before);
LinearMap identity_map(std::size_t n);
LinearMap subtract(const LinearMap& a, const LinearMap& b);
LinearMap scaled(const LinearMap& a, const Rational& c);
bool operator==(const LinearMap& a, const LinearMap& b);

}  // namespace depthlab::linalg
