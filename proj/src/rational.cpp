#include "depthlab/rational.hpp"

#include <algorithm>

#include "depthlab/errors.hpp"

namespace depthlab::linalg {

SparseVector SparseVector::unit(std::size_t i, Rational v)
{
    SparseVector s;
    if (v != 0)
        s.terms_.emplace_back(i, std::move(v));
    return s;
}

Rational SparseVector::at(std::size_t i) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                               [](const auto& t, std::size_t k) { return t.first < k; });
    return it != terms_.end() && it->first == i ? it->second : Rational(0);
}

void SparseVector::add_scaled(const SparseVector& other, const Rational& c)
{
    if (c == 0 || other.empty())
        return;
    std::vector<std::pair<std::size_t, Rational>> out;
    out.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end()) {
        if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            out.emplace_back(b->first, c * b->second);
            ++b;
        } else {
            Rational v = a->second + c * b->second;
            if (v != 0)
                out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
}

void SparseVector::add(std::size_t i, const Rational& v)
{
    add_scaled(unit(i, 1), v);
}

void SparseVector::scale(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return;
    }
    for (auto& t : terms_)
        t.second *= c;
}

bool Subspace::insert(SparseVector v)
{
    SparseVector r = reduce(v);
    if (r.empty())
        return false;
    const std::size_t pivot = r.terms().front().first;
    if (pivot >= ambient_)
        throw PreconditionError("Subspace: coordinate out of range");
    const Rational lead = r.terms().front().second;
    r.scale(1 / lead);
    for (auto& [p, row] : rows_) {
        const Rational c = row.at(pivot);
        if (c != 0)
            row.add_scaled(r, -c);
    }
    rows_.emplace(pivot, std::move(r));
    return true;
}

SparseVector Subspace::reduce(const SparseVector& v) const
{
    SparseVector out = v;
    for (const auto& [i, val] : v.terms()) {
        auto it = rows_.find(i);
        if (it != rows_.end())
            out.add_scaled(it->second, -val);
    }
    return out;
}

std::vector<std::size_t> Subspace::free_columns() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ambient_; ++i)
        if (!rows_.count(i))
            out.push_back(i);
    return out;
}

std::vector<SparseVector> Subspace::basis() const
{
    std::vector<SparseVector> out;
    out.reserve(rows_.size());
    for (const auto& [p, row] : rows_)
        out.push_back(row);
    return out;
}

Quotient::Quotient(Subspace relations) : relations_(std::move(relations)), basis_(relations_.free_columns())
{
    for (std::size_t k = 0; k < basis_.size(); ++k)
        position_.emplace(basis_[k], k);
}

SparseVector Quotient::coordinates(const SparseVector& v) const
{
    SparseVector out;
    const SparseVector r = relations_.reduce(v);
    for (const auto& [i, val] : r.terms())
        out.add(position_.at(i), val);
    return out;
}

SparseVector LinearMap::apply(const SparseVector& v) const
{
    SparseVector out;
    for (const auto& [j, val] : v.terms()) {
        if (j >= columns.size())
            throw PreconditionError("LinearMap: input coordinate out of range");
        out.add_scaled(columns[j], val);
    }
    return out;
}

std::size_t LinearMap::rank() const
{
    Subspace s(rows);
    for (const auto& c : columns)
        s.insert(c);
    return s.dim();
}

bool LinearMap::is_zero() const
{
    for (const auto& c : columns)
        if (!c.empty())
            return false;
    return true;
}

LinearMap compose(const LinearMap& after, const LinearMap& before)
{
    if (after.cols() != before.rows)
        throw PreconditionError("compose: shape mismatch");
    LinearMap out{after.rows, {}};
    for (const auto& c : before.columns)
        out.columns.push_back(after.apply(c));
    return out;
}

LinearMap identity_map(std::size_t n)
{
    LinearMap out{n, {}};
    for (std::size_t i = 0; i < n; ++i)
        out.columns.push_back(SparseVector::unit(i));
    return out;
}

LinearMap subtract(const LinearMap& a, const LinearMap& b)
{
    if (a.rows != b.rows || a.cols() != b.cols())
        throw PreconditionError("subtract: shape mismatch");
    LinearMap out = a;
    for (std::size_t j = 0; j < a.cols(); ++j)
        out.columns[j].add_scaled(b.columns[j], -1);
    return out;
}

LinearMap scaled(const LinearMap& a, const Rational& c)
{
    LinearMap out = a;
    for (auto& col : out.columns)
        col.scale(c);
    return out;
}

bool operator==(const LinearMap& a, const LinearMap& b)
{
    return a.rows == b.rows && a.columns == b.columns;
}

}  // namespace depthlab::linalg
