#include "depthlab/relcyclic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

#include "depthlab/errors.hpp"

namespace depthlab::relcyclic {

using linalg::Quotient;
using linalg::Subspace;

// ---------------------------------------------------------------- algebras

SparseVector SCAlgebra::multiply(const SparseVector& a, const SparseVector& b) const
{
    SparseVector out;
    for (const auto& [i, x] : a.terms())
        for (const auto& [j, y] : b.terms())
            out.add_scaled(table[i][j], x * y);
    return out;
}

SCAlgebra make_algebra(std::vector<std::string> labels, const std::vector<StructureConstant>& constants,
                       SparseVector unit)
{
    const std::size_t d = labels.size();
    if (d == 0 || d > kMaxAlgebraDim)
        throw InputError("algebra: dimension must lie in [1, 16]");
    SCAlgebra a;
    a.dim = d;
    a.labels = std::move(labels);
    a.table.assign(d, std::vector<SparseVector>(d));
    for (const auto& c : constants) {
        if (c.i >= d || c.j >= d || c.k >= d)
            throw InputError("algebra: structure constant index out of range");
        a.table[c.i][c.j].add(c.k, c.value);
    }
    for (const auto& [i, x] : unit.terms())
        if (i >= d)
            throw InputError("algebra: unit index out of range");
    a.unit = std::move(unit);

    for (std::size_t i = 0; i < d; ++i) {
        const SparseVector ei = SparseVector::unit(i);
        if (a.multiply(a.unit, ei) != ei || a.multiply(ei, a.unit) != ei)
            throw InputError("algebra: unit is not a two-sided identity on " + a.labels[i]);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (a.multiply(a.table[i][j], SparseVector::unit(k)) != a.multiply(ei, a.table[j][k]))
                    throw InputError("algebra: associativity fails on (" + a.labels[i] + ", " + a.labels[j] + ", " +
                                     a.labels[k] + ")");
    }
    return a;
}

SCAlgebra ground_field()
{
    return make_algebra({"1"}, {{0, 0, 0, 1}}, SparseVector::unit(0));
}

SCAlgebra dual_numbers()
{
    return make_algebra({"1", "x"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}}, SparseVector::unit(0));
}

SCAlgebra matrix_algebra(std::size_t m)
{
    if (m == 0)
        throw InputError("matrix_algebra: size must be positive");
    std::vector<std::string> labels;
    std::vector<StructureConstant> constants;
    SparseVector unit;
    for (std::size_t i = 0; i < m; ++i) {
        unit.add(i * m + i, 1);
        for (std::size_t j = 0; j < m; ++j) {
            labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
            for (std::size_t l = 0; l < m; ++l)
                constants.push_back({i * m + j, j * m + l, i * m + l, 1});
        }
    }
    return make_algebra(std::move(labels), constants, std::move(unit));
}

SubalgebraSpec subalgebra(const SCAlgebra& r, std::vector<SparseVector> basis)
{
    Subspace span(r.dim);
    for (const auto& v : basis) {
        for (const auto& [i, x] : v.terms())
            if (i >= r.dim)
                throw InputError("subalgebra: basis vector index out of range");
        if (!span.insert(v))
            throw InputError("subalgebra: basis vectors are dependent");
    }
    for (const auto& a : basis)
        for (const auto& b : basis)
            if (!span.contains(r.multiply(a, b)))
                throw InputError("subalgebra: not closed under multiplication");
    SubalgebraSpec s;
    s.contains_unit = span.contains(r.unit);
    if (!s.contains_unit)
        throw InputError("subalgebra: does not contain the unit");
    s.basis = std::move(basis);
    return s;
}

SubalgebraSpec scalar_subalgebra(const SCAlgebra& r)
{
    return subalgebra(r, {r.unit});
}

SubalgebraSpec full_subalgebra(const SCAlgebra& r)
{
    std::vector<SparseVector> basis;
    for (std::size_t i = 0; i < r.dim; ++i)
        basis.push_back(SparseVector::unit(i));
    return subalgebra(r, std::move(basis));
}

// ---------------------------------------------------------------- file format

namespace {

Rational parse_rational(const std::string& tok, std::size_t line)
{
    static const std::regex re(R"(([+-]?\d+)(?:/(\d+))?)");
    std::smatch m;
    if (!std::regex_match(tok, m, re))
        throw InputError("algebra file line " + std::to_string(line) + ": bad number '" + tok + "'");
    if (m[2].matched && std::all_of(m[2].first, m[2].second, [](char c) { return c == '0'; }))
        throw InputError("algebra file line " + std::to_string(line) + ": zero denominator");
    Rational q(m[1].str() + (m[2].matched ? "/" + m[2].str() : std::string("/1")), 10);
    q.canonicalize();
    return q;
}

std::size_t parse_index(const std::string& tok, std::size_t line)
{
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        tok.size() > 6)
        throw InputError("algebra file line " + std::to_string(line) + ": bad index '" + tok + "'");
    return std::stoul(tok);
}

}  // namespace

AlgebraPair parse_algebra(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<StructureConstant> constants;
    std::vector<std::vector<Rational>> unit_rows, sub_rows;
    auto fail = [&](const std::string& msg) {
        throw InputError("algebra file line " + std::to_string(line) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        const std::string& key = tok[0];
        auto values = [&]() {
            if (dim == 0)
                fail("'dim' must come first");
            if (tok.size() != dim + 1)
                fail("expected " + std::to_string(dim) + " values");
            std::vector<Rational> v;
            for (std::size_t i = 1; i < tok.size(); ++i)
                v.push_back(parse_rational(tok[i], line));
            return v;
        };
        if (key == "dim") {
            if (dim != 0)
                fail("duplicate 'dim'");
            if (tok.size() != 2)
                fail("'dim' takes one value");
            dim = parse_index(tok[1], line);
            if (dim == 0 || dim > kMaxAlgebraDim)
                fail("dimension must lie in [1, 16]");
        } else if (key == "labels") {
            if (dim == 0)
                fail("'dim' must come first");
            if (tok.size() != dim + 1)
                fail("expected " + std::to_string(dim) + " labels");
            labels.assign(tok.begin() + 1, tok.end());
        } else if (key == "unit") {
            unit_rows.push_back(values());
        } else if (key == "sub") {
            sub_rows.push_back(values());
        } else if (key == "c") {
            if (dim == 0)
                fail("'dim' must come first");
            if (tok.size() != 5)
                fail("'c' takes i j k value");
            const std::size_t i = parse_index(tok[1], line), j = parse_index(tok[2], line),
                              k = parse_index(tok[3], line);
            if (i >= dim || j >= dim || k >= dim)
                fail("structure constant index out of range");
            constants.push_back({i, j, k, parse_rational(tok[4], line)});
        } else {
            fail("unknown keyword '" + key + "'");
        }
    }
    if (dim == 0)
        throw InputError("algebra file: missing 'dim'");
    if (unit_rows.size() != 1)
        throw InputError("algebra file: exactly one 'unit' line required");
    if (labels.empty())
        for (std::size_t i = 0; i < dim; ++i)
            labels.push_back("b" + std::to_string(i));
    auto to_sparse = [](const std::vector<Rational>& row) {
        SparseVector v;
        for (std::size_t i = 0; i < row.size(); ++i)
            v.add(i, row[i]);
        return v;
    };
    AlgebraPair pair;
    pair.algebra = make_algebra(labels, constants, to_sparse(unit_rows[0]));
    if (sub_rows.empty()) {
        pair.sub = scalar_subalgebra(pair.algebra);
    } else {
        std::vector<SparseVector> basis;
        for (const auto& row : sub_rows)
            basis.push_back(to_sparse(row));
        pair.sub = subalgebra(pair.algebra, std::move(basis));
    }
    return pair;
}

AlgebraPair load_algebra_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open algebra file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_algebra(ss.str());
}

// ---------------------------------------------------------------- matrix extensions

MatrixExtension matrix_extension(const SCAlgebra& r, const SubalgebraSpec& s, std::size_t m)
{
    if (m == 0)
        throw InputError("matrix_extension: size must be positive");
    const std::size_t d = r.dim;
    if (m * m * d > kMaxExtensionDim)
        throw ResourceError("matrix_extension: dimension " + std::to_string(m * m * d) + " exceeds 64");
    auto idx = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * m + j) * d + k; };

    std::vector<std::string> labels;
    std::vector<StructureConstant> constants;
    SparseVector unit;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1) + "*" + r.labels[k]);
                for (std::size_t l = 0; l < m; ++l)
                    for (std::size_t k2 = 0; k2 < d; ++k2)
                        for (const auto& [t, c] : r.product(k, k2).terms())
                            constants.push_back({idx(i, j, k), idx(j, l, k2), idx(i, l, t), c});
            }
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [k, c] : r.unit.terms())
            unit.add(idx(i, i, k), c);

    MatrixExtension ext;
    ext.m = m;
    ext.base = {r, s};
    // Bypass the dim-16 input limit: the extension is built, not read.
    SCAlgebra big;
    big.dim = m * m * d;
    big.labels = std::move(labels);
    big.table.assign(big.dim, std::vector<SparseVector>(big.dim));
    for (const auto& c : constants)
        big.table[c.i][c.j].add(c.k, c.value);
    big.unit = std::move(unit);
    for (std::size_t a = 0; a < big.dim; ++a) {
        const SparseVector ea = SparseVector::unit(a);
        if (big.multiply(big.unit, ea) != ea || big.multiply(ea, big.unit) != ea)
            throw IntegrityError("matrix_extension: unit fails");
        for (std::size_t b = 0; b < big.dim; ++b)
            for (std::size_t c = 0; c < big.dim; ++c)
                if (big.multiply(big.table[a][b], SparseVector::unit(c)) != big.multiply(ea, big.table[b][c]))
                    throw IntegrityError("matrix_extension: associativity fails");
    }

    std::vector<SparseVector> sub;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (const auto& sv : s.basis) {
                SparseVector v;
                for (const auto& [k, c] : sv.terms())
                    v.add(idx(i, j, k), c);
                sub.push_back(std::move(v));
            }
    ext.extended.sub = subalgebra(big, std::move(sub));
    ext.extended.algebra = std::move(big);
    return ext;
}

// ---------------------------------------------------------------- cyclic module

namespace {

using Tuple = std::vector<std::size_t>;

std::size_t ipow(std::size_t d, std::size_t e)
{
    std::size_t r = 1;
    while (e--)
        r *= d;
    return r;
}

Tuple decode(std::size_t index, std::size_t len, std::size_t d)
{
    Tuple t(len);
    for (std::size_t k = len; k-- > 0;) {
        t[k] = index % d;
        index /= d;
    }
    return t;
}

std::size_t encode(const Tuple& t, std::size_t d)
{
    std::size_t index = 0;
    for (auto a : t)
        index = index * d + a;
    return index;
}

/// Expands a tensor of factor vectors into ambient coordinates.
SparseVector tensor(const std::vector<SparseVector>& factors, std::size_t d)
{
    std::vector<std::pair<std::size_t, Rational>> acc{{0, Rational(1)}};
    for (const auto& f : factors) {
        std::vector<std::pair<std::size_t, Rational>> next;
        for (const auto& [idx, c] : acc)
            for (const auto& [k, x] : f.terms())
                next.emplace_back(idx * d + k, c * x);
        acc = std::move(next);
    }
    SparseVector out;
    for (const auto& [idx, c] : acc)
        out.add(idx, c);
    return out;
}

std::vector<SparseVector> units_of(const Tuple& t)
{
    std::vector<SparseVector> f;
    for (auto a : t)
        f.push_back(SparseVector::unit(a));
    return f;
}

using TupleOp = std::function<SparseVector(const Tuple&)>;

SparseVector apply_op(const SparseVector& v, std::size_t len, std::size_t d, const TupleOp& op)
{
    SparseVector out;
    for (const auto& [idx, c] : v.terms())
        out.add_scaled(op(decode(idx, len, d)), c);
    return out;
}

/// Operator induced on quotients; every relation basis vector must map to a relation.
LinearMap induce(const Quotient& src, std::size_t src_len, std::size_t src_d, const Quotient& dst, const TupleOp& op,
                 const std::string& what)
{
    for (const auto& w : src.relations().basis())
        if (!dst.is_zero(apply_op(w, src_len, src_d, op)))
            throw IntegrityError(what + " does not preserve the relation space");
    LinearMap m{dst.dim(), {}};
    for (std::size_t i = 0; i < src.dim(); ++i)
        m.columns.push_back(dst.coordinates(op(decode(src.lift(i), src_len, src_d))));
    return m;
}

TupleOp face_op(const SCAlgebra& r, std::size_t n, std::size_t i)
{
    return [&r, n, i](const Tuple& t) {
        std::vector<SparseVector> f;
        if (i < n) {
            for (std::size_t k = 0; k <= n; ++k) {
                if (k == i) {
                    f.push_back(r.product(t[i], t[i + 1]));
                    ++k;
                } else {
                    f.push_back(SparseVector::unit(t[k]));
                }
            }
        } else {
            f.push_back(r.product(t[n], t[0]));
            for (std::size_t k = 1; k < n; ++k)
                f.push_back(SparseVector::unit(t[k]));
        }
        return tensor(f, r.dim);
    };
}

TupleOp degeneracy_op(const SCAlgebra& r, std::size_t j)
{
    return [&r, j](const Tuple& t) {
        auto f = units_of(t);
        f.insert(f.begin() + static_cast<std::ptrdiff_t>(j) + 1, r.unit);
        return tensor(f, r.dim);
    };
}

TupleOp cyclic_op(std::size_t d)
{
    return [d](const Tuple& t) {
        Tuple rot(t.size());
        rot[0] = t.back();
        std::copy(t.begin(), t.end() - 1, rot.begin() + 1);
        return SparseVector::unit(encode(rot, d));
    };
}

Subspace relations(const SCAlgebra& r, const SubalgebraSpec& s, std::size_t n)
{
    const std::size_t d = r.dim;
    const std::size_t len = n + 1;
    Subspace w(ipow(d, len));
    for (std::size_t idx = 0; idx < w.ambient(); ++idx) {
        const Tuple t = decode(idx, len, d);
        for (const auto& sv : s.basis) {
            for (std::size_t g = 0; g <= n; ++g) {
                auto lhs = units_of(t);
                auto rhs = units_of(t);
                const std::size_t next = g == n ? 0 : g + 1;
                lhs[g] = r.multiply(lhs[g], sv);
                rhs[next] = r.multiply(sv, rhs[next]);
                SparseVector rel = tensor(lhs, d);
                rel.add_scaled(tensor(rhs, d), -1);
                w.insert(std::move(rel));
            }
        }
    }
    return w;
}

}  // namespace

CyclicModule::CyclicModule(SCAlgebra r, SubalgebraSpec s, std::size_t top, std::size_t ambient_cap)
    : r_(std::move(r)), s_(std::move(s)), top_(top)
{
    if (top_ > kMaxDegree)
        throw PreconditionError("cyclic_module: degree above 4");
    const std::size_t d = r_.dim;
    for (std::size_t n = 0, amb = d; n <= top_; ++n, amb *= d)
        if (amb > ambient_cap)
            throw ResourceError("cyclic_module: ambient dimension " + std::to_string(amb) + " exceeds the cap");

    for (std::size_t n = 0; n <= top_; ++n)
        spaces_.emplace_back(relations(r_, s_, n));
    faces_.resize(top_ + 1);
    degeneracies_.resize(top_ + 1);
    for (std::size_t n = 0; n <= top_; ++n) {
        const std::string deg = " at degree " + std::to_string(n);
        cyclic_.push_back(induce(spaces_[n], n + 1, d, spaces_[n], cyclic_op(d), "t" + deg));
        if (n >= 1)
            for (std::size_t i = 0; i <= n; ++i)
                faces_[n].push_back(induce(spaces_[n], n + 1, d, spaces_[n - 1], face_op(r_, n, i),
                                           "d" + std::to_string(i) + deg));
        if (n < top_)
            for (std::size_t j = 0; j <= n; ++j)
                degeneracies_[n].push_back(induce(spaces_[n], n + 1, d, spaces_[n + 1], degeneracy_op(r_, j),
                                                  "s" + std::to_string(j) + deg));
    }
}

std::size_t CyclicModule::ambient_dim(std::size_t n) const
{
    return ipow(r_.dim, n + 1);
}

LinearMap CyclicModule::boundary(std::size_t n) const
{
    if (n == 0 || n > top_)
        throw PreconditionError("boundary: degree out of range");
    LinearMap b{dim(n - 1), std::vector<SparseVector>(dim(n))};
    for (std::size_t i = 0; i <= n; ++i)
        b = linalg::subtract(b, linalg::scaled(face(n, i), i % 2 == 0 ? -1 : 1));
    return b;
}

LinearMap CyclicModule::lambda(std::size_t n) const
{
    return n % 2 == 0 ? cyclic(n) : linalg::scaled(cyclic(n), -1);
}

CyclicModule cyclic_module(const SCAlgebra& r, const SubalgebraSpec& s, std::size_t top, std::size_t ambient_cap)
{
    return CyclicModule(r, s, top, ambient_cap);
}

IdentityReport cyclic_identities_check(const CyclicModule& z)
{
    using linalg::compose;
    IdentityReport rep;
    auto expect = [&](const LinearMap& a, const LinearMap& b, const std::string& name) {
        ++rep.checked;
        if (!(a == b))
            rep.failures.push_back(name);
    };
    auto at = [](std::size_t n) { return " at n=" + std::to_string(n); };
    const std::size_t top = z.top();

    for (std::size_t n = 0; n <= top; ++n) {
        LinearMap p = linalg::identity_map(z.dim(n));
        for (std::size_t k = 0; k <= n; ++k)
            p = compose(z.cyclic(n), p);
        expect(p, linalg::identity_map(z.dim(n)), "t^(n+1) = id" + at(n));
    }
    for (std::size_t n = 2; n <= top; ++n)
        for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t i = 0; i < j; ++i)
                expect(compose(z.face(n - 1, i), z.face(n, j)), compose(z.face(n - 1, j - 1), z.face(n, i)),
                       "d" + std::to_string(i) + " d" + std::to_string(j) + at(n));
    for (std::size_t n = 0; n + 2 <= top; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i <= j; ++i)
                expect(compose(z.degeneracy(n + 1, i), z.degeneracy(n, j)),
                       compose(z.degeneracy(n + 1, j + 1), z.degeneracy(n, i)),
                       "s" + std::to_string(i) + " s" + std::to_string(j) + at(n));
    for (std::size_t n = 0; n + 1 <= top; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i <= n + 1; ++i) {
                const LinearMap lhs = compose(z.face(n + 1, i), z.degeneracy(n, j));
                const std::string name = "d" + std::to_string(i) + " s" + std::to_string(j) + at(n);
                if (i < j)
                    expect(lhs, compose(z.degeneracy(n - 1, j - 1), z.face(n, i)), name);
                else if (i == j || i == j + 1)
                    expect(lhs, linalg::identity_map(z.dim(n)), name);
                else
                    expect(lhs, compose(z.degeneracy(n - 1, j), z.face(n, i - 1)), name);
            }
    for (std::size_t n = 1; n <= top; ++n) {
        for (std::size_t i = 1; i <= n; ++i)
            expect(compose(z.face(n, i), z.cyclic(n)), compose(z.cyclic(n - 1), z.face(n, i - 1)),
                   "d" + std::to_string(i) + " t" + at(n));
        expect(compose(z.face(n, 0), z.cyclic(n)), z.face(n, n), "d0 t = dn" + at(n));
    }
    for (std::size_t n = 0; n + 1 <= top; ++n) {
        for (std::size_t i = 1; i <= n; ++i)
            expect(compose(z.degeneracy(n, i), z.cyclic(n)), compose(z.cyclic(n + 1), z.degeneracy(n, i - 1)),
                   "s" + std::to_string(i) + " t" + at(n));
        expect(compose(z.degeneracy(n, 0), z.cyclic(n)),
               compose(z.cyclic(n + 1), compose(z.cyclic(n + 1), z.degeneracy(n, n))), "s0 t = t^2 sn" + at(n));
    }
    for (std::size_t n = 2; n <= top; ++n) {
        ++rep.checked;
        if (!compose(z.boundary(n - 1), z.boundary(n)).is_zero())
            rep.failures.push_back("b^2 = 0" + at(n));
    }
    for (std::size_t n = 1; n <= top; ++n) {
        const LinearMap one_minus = linalg::subtract(linalg::identity_map(z.dim(n)), z.lambda(n));
        const LinearMap below = linalg::subtract(linalg::identity_map(z.dim(n - 1)), z.lambda(n - 1));
        Subspace image(z.dim(n - 1));
        for (const auto& c : below.columns)
            image.insert(c);
        ++rep.checked;
        for (const auto& c : compose(z.boundary(n), one_minus).columns)
            if (!image.contains(c)) {
                rep.failures.push_back("b preserves im(1 - lambda)" + at(n));
                break;
            }
    }
    return rep;
}

HCResult relative_HC(const CyclicModule& z, std::size_t degree)
{
    if (degree + 1 > z.top())
        throw PreconditionError("relative_HC: module must reach degree N+1");
    std::vector<Quotient> c;
    for (std::size_t n = 0; n <= degree + 1; ++n) {
        Subspace image(z.dim(n));
        for (const auto& col : linalg::subtract(linalg::identity_map(z.dim(n)), z.lambda(n)).columns)
            image.insert(col);
        c.emplace_back(std::move(image));
    }
    std::vector<std::size_t> rank(degree + 2, 0);  // rank of bbar_n: C_n -> C_(n-1)
    for (std::size_t n = 1; n <= degree + 1; ++n) {
        const LinearMap b = z.boundary(n);
        LinearMap bbar{c[n - 1].dim(), {}};
        for (std::size_t j = 0; j < c[n].dim(); ++j)
            bbar.columns.push_back(c[n - 1].coordinates(b.apply(SparseVector::unit(c[n].lift(j)))));
        rank[n] = bbar.rank();
    }
    HCResult res;
    for (std::size_t n = 0; n <= degree; ++n) {
        res.lambda_dims.push_back(c[n].dim());
        res.dims.push_back(c[n].dim() - rank[n] - rank[n + 1]);
    }
    return res;
}

HCResult relative_HC(const SCAlgebra& r, const SubalgebraSpec& s, std::size_t degree, std::size_t ambient_cap)
{
    return relative_HC(CyclicModule(r, s, degree + 1, ambient_cap), degree);
}

DennisTrace dennis_trace(const MatrixExtension& ext, const CyclicModule& big, const CyclicModule& small, std::size_t n)
{
    if (n + 1 > big.top() || n + 1 > small.top())
        throw PreconditionError("dennis_trace: modules must reach degree n+1");
    const std::size_t m = ext.m;
    const std::size_t d = small.algebra().dim;
    const std::size_t D = big.algebra().dim;
    if (D != m * m * d)
        throw PreconditionError("dennis_trace: modules do not match the extension");

    auto contraction = [m, d](const Tuple& t) {
        const std::size_t len = t.size();
        Tuple k(len);
        for (std::size_t p = 0; p < len; ++p) {
            const std::size_t j = t[p] / d % m;
            const std::size_t i_next = t[(p + 1) % len] / d / m;
            if (j != i_next)
                return SparseVector();
            k[p] = t[p] % d;
        }
        return SparseVector::unit(encode(k, d));
    };
    auto trace_at = [&](std::size_t deg) {
        return induce(big.space(deg), deg + 1, D, small.space(deg), contraction,
                      "Dennis trace at degree " + std::to_string(deg));
    };

    DennisTrace tr;
    tr.n = n;
    tr.map = trace_at(n);
    using linalg::compose;
    auto require = [](bool ok, const std::string& what) {
        if (!ok)
            throw IntegrityError("dennis_trace: does not commute with " + what);
    };
    if (n >= 1) {
        const LinearMap below = trace_at(n - 1);
        for (std::size_t i = 0; i <= n; ++i)
            require(compose(below, big.face(n, i)) == compose(small.face(n, i), tr.map), "d" + std::to_string(i));
    }
    const LinearMap above = trace_at(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        require(compose(above, big.degeneracy(n, j)) == compose(small.degeneracy(n, j), tr.map),
                "s" + std::to_string(j));
    require(compose(tr.map, big.cyclic(n)) == compose(small.cyclic(n), tr.map), "t");

    tr.rank = tr.map.rank();
    tr.bijective = tr.rank == big.dim(n) && tr.rank == small.dim(n);
    if (!tr.bijective)
        throw IntegrityError("dennis_trace: not bijective at degree " + std::to_string(n));
    return tr;
}

}  // namespace depthlab::relcyclic
