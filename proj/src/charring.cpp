#include "depthlab/charring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "depthlab/errors.hpp"

namespace depthlab::charring {

using permgroup::PermGroup;

namespace {

constexpr std::uint64_t kBoundCeiling = std::uint64_t{1} << 62;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    return r >= kBoundCeiling ? kBoundCeiling : static_cast<std::uint64_t>(r);
}

using Vec = std::vector<std::uint64_t>;
using Mat = std::vector<Vec>;

/// Row-reduced echelon basis of a subspace of F_p^k.
struct Subspace {
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;
};

Subspace rref(const PrimeField& F, std::vector<Vec> rows)
{
    Subspace s;
    if (rows.empty())
        return s;
    const std::size_t k = rows[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < k && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        const std::uint64_t inv = F.inv(rows[r][col]);
        for (auto& x : rows[r])
            x = F.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0)
                continue;
            const std::uint64_t f = rows[i][col];
            for (std::size_t j = 0; j < k; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        s.pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    s.rows = std::move(rows);
    return s;
}

/// Null space of a square matrix, as row vectors.
std::vector<Vec> kernel(const PrimeField& F, Mat a)
{
    const std::size_t n = a.size();
    Subspace s = rref(F, a);
    std::vector<bool> is_pivot(n, false);
    for (auto p : s.pivots)
        is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        Vec v(n, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < s.pivots.size(); ++r)
            v[s.pivots[r]] = F.neg(s.rows[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Characteristic polynomial (low-to-high, monic) by Faddeev-LeVerrier; needs n < p.
Vec char_poly(const PrimeField& F, const Mat& a)
{
    const std::size_t n = a.size();
    Vec c(n + 1, 0);
    c[n] = 1;
    Mat m(n, Vec(n, 0));  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        Mat next(n, Vec(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                if (a[i][l] == 0)
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    next[i][j] = F.add(next[i][j], F.mul(a[i][l], m[l][j]));
            }
        for (std::size_t i = 0; i < n; ++i)
            next[i][i] = F.add(next[i][i], c[n - k + 1]);
        m = std::move(next);
        std::uint64_t tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                tr = F.add(tr, F.mul(a[i][l], m[l][i]));
        c[n - k] = F.neg(F.mul(tr, F.inv(k % F.prime())));
    }
    return c;
}

std::int64_t isqrt_exact(std::uint64_t x)
{
    auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<long double>(x))));
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return r * r == x ? static_cast<std::int64_t>(r) : -1;
}

void check_same_group(const ClassFunction& a, const ClassFunction& b)
{
    if (a.group() != b.group())
        throw PreconditionError("class functions live on different groups");
}

PrimeField common_field(const ClassFunction& a, const ClassFunction& b)
{
    if (!a.is_integer() && !b.is_integer() && a.prime() != b.prime())
        throw PreconditionError("modular class functions over different primes");
    return PrimeField(a.is_integer() ? b.prime() : a.prime());
}

}  // namespace

std::vector<std::size_t> MultiplicityVector::support() const
{
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        if (coefficients[i] != 0)
            s.push_back(i);
    return s;
}

std::uint64_t multiplicity_bound(const PermGroup& g, std::size_t index)
{
    const std::uint64_t order = g.order();
    std::uint64_t b = saturating_mul(2, saturating_mul(order, order));
    std::uint64_t power = 1;
    for (std::size_t i = 0; i <= g.num_classes(); ++i)
        power = saturating_mul(power, index);
    return std::max(b, power);
}

std::uint64_t select_prime(const PermGroup& g, std::uint64_t bound)
{
    return prime_congruent_one(g.exponent(), bound);
}

CharacterTable character_table(const GroupPtr& g, std::uint64_t bound)
{
    if (bound == 0)
        bound = multiplicity_bound(*g);
    return character_table_over(g, select_prime(*g, bound), bound);
}

CharacterTable character_table_over(const GroupPtr& gp, std::uint64_t prime, std::uint64_t bound)
{
    const PermGroup& g = *gp;
    const PrimeField F(prime);
    if ((prime - 1) % g.exponent() != 0)
        throw PreconditionError("character_table_over: prime is not 1 mod the group exponent");
    if (bound >= prime || bound < 2 * g.order())
        throw PreconditionError("character_table_over: bound must lie in [2|G|, p)");
    const std::size_t k = g.num_classes();

    // a[i][j][l] = #{x in C_i : x^-1 r_l in C_j}.
    std::vector<Mat> structure(k, Mat(k, Vec(k, 0)));
    for (std::size_t l = 0; l < k; ++l) {
        const std::size_t rep = g.classes()[l].representative;
        for (std::size_t x = 0; x < g.order(); ++x) {
            const std::size_t y = g.multiply(g.inverse(x), rep);
            auto& cell = structure[g.class_of(x)][g.class_of(y)][l];
            cell = F.add(cell, 1);
        }
    }

    std::vector<Subspace> spaces;
    {
        std::vector<Vec> id(k, Vec(k, 0));
        for (std::size_t i = 0; i < k; ++i)
            id[i][i] = 1;
        spaces.push_back(rref(F, std::move(id)));
    }
    for (std::size_t i = 1; i < k; ++i) {
        bool all_lines = std::all_of(spaces.begin(), spaces.end(), [](const Subspace& s) { return s.rows.size() == 1; });
        if (all_lines)
            break;
        const Mat& mi = structure[i];
        std::vector<Subspace> next;
        for (auto& w : spaces) {
            const std::size_t d = w.rows.size();
            if (d == 1) {
                next.push_back(std::move(w));
                continue;
            }
            // Restriction of M_i to w in the coordinates given by the pivot columns.
            Mat a(d, Vec(d, 0));
            for (std::size_t t = 0; t < d; ++t) {
                Vec v(k, 0);
                for (std::size_t j = 0; j < k; ++j)
                    for (std::size_t l = 0; l < k; ++l)
                        if (mi[j][l])
                            v[j] = F.add(v[j], F.mul(mi[j][l], w.rows[t][l]));
                for (std::size_t s = 0; s < d; ++s)
                    a[s][t] = v[w.pivots[s]];
            }
            const auto roots = distinct_roots(F, char_poly(F, a));
            std::size_t covered = 0;
            for (auto lambda : roots) {
                Mat shifted = a;
                for (std::size_t s = 0; s < d; ++s)
                    shifted[s][s] = F.sub(shifted[s][s], lambda);
                auto coords = kernel(F, shifted);
                std::vector<Vec> vecs;
                for (const auto& c : coords) {
                    Vec v(k, 0);
                    for (std::size_t t = 0; t < d; ++t)
                        if (c[t])
                            for (std::size_t j = 0; j < k; ++j)
                                v[j] = F.add(v[j], F.mul(c[t], w.rows[t][j]));
                    vecs.push_back(std::move(v));
                }
                covered += vecs.size();
                next.push_back(rref(F, std::move(vecs)));
            }
            if (covered != d)
                throw IntegrityError("character_table: class matrix is not diagonalizable mod p");
        }
        spaces = std::move(next);
    }
    if (spaces.size() != k)
        throw IntegrityError("character_table: joint eigenspaces did not split into lines");

    CharacterTable table;
    table.group = gp;
    table.prime = prime;
    table.bound = bound;
    std::vector<std::pair<std::int64_t, Vec>> rows;
    const std::uint64_t order_mod = F.reduce(static_cast<std::int64_t>(g.order()));
    for (const auto& w : spaces) {
        Vec omega = w.rows[0];
        if (omega[0] == 0)
            throw IntegrityError("character_table: central character vanishes at the identity");
        const std::uint64_t scale = F.inv(omega[0]);
        for (auto& x : omega)
            x = F.mul(x, scale);
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t cls = F.reduce(static_cast<std::int64_t>(g.classes()[j].size));
            s = F.add(s, F.mul(F.mul(omega[j], omega[g.inverse_class(j)]), F.inv(cls)));
        }
        const std::uint64_t deg_sq = F.mul(order_mod, F.inv(s));
        const std::int64_t deg = deg_sq <= g.order() ? isqrt_exact(deg_sq) : -1;
        if (deg <= 0 || g.order() % static_cast<std::uint64_t>(deg) != 0)
            throw IntegrityError("character_table: degree does not lift to a divisor of |G|");
        Vec values(k);
        const std::uint64_t degm = F.reduce(deg);
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t cls = F.reduce(static_cast<std::int64_t>(g.classes()[j].size));
            values[j] = F.mul(F.mul(degm, omega[j]), F.inv(cls));
        }
        rows.emplace_back(deg, std::move(values));
    }
    std::sort(rows.begin(), rows.end());
    std::int64_t sum_sq = 0;
    for (auto& [deg, values] : rows) {
        sum_sq += deg * deg;
        table.degrees.push_back(deg);
        table.irreducibles.push_back(ClassFunction::modular(gp, prime, std::move(values)));
    }
    if (sum_sq != static_cast<std::int64_t>(g.order()))
        throw IntegrityError("character_table: squared degrees do not sum to |G|");
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (inner_product(table.irreducibles[a], table.irreducibles[b], table) != (a == b ? 1u : 0u))
                throw IntegrityError("character_table: rows are not orthonormal");
    return table;
}

std::uint64_t inner_product(const ClassFunction& a, const ClassFunction& b, const PrimeField& F, std::uint64_t bound)
{
    check_same_group(a, b);
    const PermGroup& g = *a.group();
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < g.num_classes(); ++c) {
        const std::uint64_t size = F.reduce(static_cast<std::int64_t>(g.classes()[c].size));
        acc = F.add(acc, F.mul(size, F.mul(a.residue(c, F), b.residue(g.inverse_class(c), F))));
    }
    const std::uint64_t lifted = F.mul(acc, F.inv(F.reduce(static_cast<std::int64_t>(g.order()))));
    if (lifted >= bound)
        throw IntegrityError("inner_product: residue " + std::to_string(lifted) + " exceeds multiplicity bound " +
                             std::to_string(bound) + " (prime " + std::to_string(F.prime()) + ")");
    return lifted;
}

std::uint64_t inner_product(const ClassFunction& a, const ClassFunction& b, const CharacterTable& table)
{
    return inner_product(a, b, table.field(), table.bound);
}

ClassFunction restrict(const ClassFunction& chi, const SubgroupEmbedding& emb)
{
    if (chi.group() != emb.parent())
        throw PreconditionError("restrict: character is not defined on the parent group");
    const auto& fusion = emb.fusion();
    if (chi.is_integer()) {
        std::vector<std::int64_t> v(fusion.size());
        for (std::size_t c = 0; c < fusion.size(); ++c)
            v[c] = chi.integer_value(fusion[c]);
        return ClassFunction::integer(emb.subgroup(), std::move(v));
    }
    const PrimeField F(chi.prime());
    std::vector<std::uint64_t> v(fusion.size());
    for (std::size_t c = 0; c < fusion.size(); ++c)
        v[c] = chi.residue(fusion[c], F);
    return ClassFunction::modular(emb.subgroup(), chi.prime(), std::move(v));
}

ClassFunction induce(const ClassFunction& chi, const SubgroupEmbedding& emb)
{
    if (chi.group() != emb.subgroup())
        throw PreconditionError("induce: character is not defined on the subgroup");
    const PermGroup& G = *emb.parent();
    const PermGroup& U = *emb.subgroup();
    const auto& fusion = emb.fusion();
    // (Ind chi)(c) = |C_G(g_c)| / |U| * sum over U-classes d fusing to c of |d| chi(d).
    if (chi.is_integer()) {
        std::vector<std::int64_t> sums(G.num_classes(), 0);
        for (std::size_t d = 0; d < U.num_classes(); ++d)
            sums[fusion[d]] += static_cast<std::int64_t>(U.classes()[d].size) * chi.integer_value(d);
        std::vector<std::int64_t> v(G.num_classes());
        for (std::size_t c = 0; c < G.num_classes(); ++c) {
            const std::int64_t num = sums[c] * static_cast<std::int64_t>(G.centralizer_order(c));
            if (num % static_cast<std::int64_t>(U.order()) != 0)
                throw IntegrityError("induce: induced value is not an integer");
            v[c] = num / static_cast<std::int64_t>(U.order());
        }
        return ClassFunction::integer(emb.parent(), std::move(v));
    }
    const PrimeField F(chi.prime());
    std::vector<std::uint64_t> sums(G.num_classes(), 0);
    for (std::size_t d = 0; d < U.num_classes(); ++d)
        sums[fusion[d]] = F.add(sums[fusion[d]],
                                F.mul(F.reduce(static_cast<std::int64_t>(U.classes()[d].size)), chi.residue(d, F)));
    const std::uint64_t inv_u = F.inv(F.reduce(static_cast<std::int64_t>(U.order())));
    std::vector<std::uint64_t> v(G.num_classes());
    for (std::size_t c = 0; c < G.num_classes(); ++c)
        v[c] = F.mul(F.mul(sums[c], F.reduce(static_cast<std::int64_t>(G.centralizer_order(c)))), inv_u);
    return ClassFunction::modular(emb.parent(), chi.prime(), std::move(v));
}

ClassFunction tensor(const ClassFunction& a, const ClassFunction& b)
{
    check_same_group(a, b);
    if (a.is_integer() && b.is_integer()) {
        std::vector<std::int64_t> v(a.size());
        for (std::size_t c = 0; c < v.size(); ++c)
            if (__builtin_mul_overflow(a.integer_value(c), b.integer_value(c), &v[c]))
                throw ResourceError("tensor: integer character values overflow 64 bits");
        return ClassFunction::integer(a.group(), std::move(v));
    }
    const PrimeField F = common_field(a, b);
    std::vector<std::uint64_t> v(a.size());
    for (std::size_t c = 0; c < v.size(); ++c)
        v[c] = F.mul(a.residue(c, F), b.residue(c, F));
    return ClassFunction::modular(a.group(), F.prime(), std::move(v));
}

ClassFunction tensor_power(const ClassFunction& chi, std::size_t n)
{
    ClassFunction acc = trivial_character(chi.group());
    for (std::size_t i = 0; i < n; ++i)
        acc = tensor(acc, chi);
    return acc;
}

MultiplicityVector decompose(const ClassFunction& chi, const CharacterTable& table)
{
    if (chi.group() != table.group)
        throw PreconditionError("decompose: character and table belong to different groups");
    MultiplicityVector m;
    for (const auto& irr : table.irreducibles)
        m.coefficients.push_back(inner_product(chi, irr, table));
    const PrimeField F = table.field();
    const ClassFunction back = compose(m, table);
    for (std::size_t c = 0; c < chi.size(); ++c)
        if (back.residue(c, F) != chi.residue(c, F))
            throw IntegrityError("decompose: reconstruction does not match the character");
    return m;
}

ClassFunction compose(const MultiplicityVector& m, const CharacterTable& table)
{
    const PrimeField F = table.field();
    const std::size_t k = table.group->num_classes();
    std::vector<std::uint64_t> v(k, 0);
    for (std::size_t i = 0; i < m.coefficients.size(); ++i) {
        const std::uint64_t coef = m.coefficients[i] % F.prime();
        if (coef == 0)
            continue;
        for (std::size_t c = 0; c < k; ++c)
            v[c] = F.add(v[c], F.mul(coef, table.irreducibles[i].residue(c, F)));
    }
    return ClassFunction::modular(table.group, table.prime, std::move(v));
}

ClassFunction regular_character(const GroupPtr& g)
{
    std::vector<std::int64_t> v(g->num_classes(), 0);
    v[0] = static_cast<std::int64_t>(g->order());
    return ClassFunction::integer(g, std::move(v));
}

ClassFunction trivial_character(const GroupPtr& g)
{
    return ClassFunction::integer(g, std::vector<std::int64_t>(g->num_classes(), 1));
}

std::string dump_table(const CharacterTable& table)
{
    std::ostringstream os;
    os << "# prime\t" << table.prime << '\n';
    const PrimeField F = table.field();
    for (std::size_t i = 0; i < table.size(); ++i) {
        os << table.degrees[i];
        for (std::size_t c = 0; c < table.group->num_classes(); ++c)
            os << '\t' << table.irreducibles[i].residue(c, F);
        os << '\n';
    }
    return os.str();
}

std::uint64_t primitive_root_of_unity(const PrimeField& F, std::uint64_t e)
{
    const std::uint64_t p = F.prime();
    if (e == 0 || (p - 1) % e != 0)
        throw PreconditionError("primitive_root_of_unity: order must divide p - 1");
    std::vector<std::uint64_t> prime_factors;
    for (std::uint64_t q = 2, r = e; r > 1; ++q)
        if (r % q == 0) {
            prime_factors.push_back(q);
            while (r % q == 0)
                r /= q;
        }
    for (std::uint64_t g = 2; g < p; ++g) {
        const std::uint64_t x = F.pow(g, (p - 1) / e);
        if (std::all_of(prime_factors.begin(), prime_factors.end(),
                        [&](std::uint64_t q) { return F.pow(x, e / q) != 1; }))
            return x;
    }
    return 1;  // e == 1
}

std::vector<std::vector<std::int64_t>> eigenvalue_profile(const ClassFunction& chi, const CharacterTable& table,
                                                          std::uint64_t omega, std::uint64_t e)
{
    const PermGroup& G = *table.group;
    const PrimeField F = table.field();
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& cls : G.classes()) {
        std::vector<std::size_t> powers{0};
        for (std::size_t h = cls.representative; h != 0; h = G.multiply(h, cls.representative))
            powers.push_back(h);
        const std::uint64_t o = powers.size();
        if (e % o != 0)
            throw PreconditionError("eigenvalue_profile: element order does not divide e");
        const std::uint64_t w = F.pow(omega, e / o);
        const std::uint64_t o_inv = F.inv(F.reduce(static_cast<std::int64_t>(o)));
        std::vector<std::int64_t> row(o);
        for (std::uint64_t k = 0; k < o; ++k) {
            std::uint64_t acc = 0;
            for (std::uint64_t j = 0; j < o; ++j)
                acc = F.add(acc, F.mul(chi.residue(G.class_of(powers[j]), F), F.pow(w, (o - (j * k) % o) % o)));
            row[k] = F.symmetric(F.mul(acc, o_inv));
            if (row[k] < 0)
                throw IntegrityError("eigenvalue_profile: negative eigenvalue multiplicity");
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<std::size_t> align_tables(const CharacterTable& from, const CharacterTable& to, std::uint64_t e)
{
    if (from.size() != to.size() || from.group->order() != to.group->order() ||
        from.group->num_classes() != to.group->num_classes())
        throw IntegrityError("align_tables: tables describe different groups");
    const std::uint64_t wf = primitive_root_of_unity(from.field(), e);
    const std::uint64_t wt = primitive_root_of_unity(to.field(), e);
    std::map<std::vector<std::vector<std::int64_t>>, std::size_t> target;
    for (std::size_t i = 0; i < to.size(); ++i)
        target.emplace(eigenvalue_profile(to.irreducibles[i], to, wt, e), i);
    std::vector<std::size_t> perm(from.size());
    std::vector<bool> used(to.size(), false);
    for (std::size_t i = 0; i < from.size(); ++i) {
        auto it = target.find(eigenvalue_profile(from.irreducibles[i], from, wf, e));
        if (it == target.end() || used[it->second])
            throw IntegrityError("align_tables: no matching irreducible");
        used[it->second] = true;
        perm[i] = it->second;
    }
    return perm;
}

}  // namespace depthlab::charring
