#include "depthlab/depthcore.hpp"

#include <algorithm>
#include <set>

#include "depthlab/errors.hpp"

namespace depthlab::depthcore {

using permgroup::PermGroup;

// ---------------------------------------------------------------- patterns

BoolPattern BoolPattern::identity(std::size_t n)
{
    BoolPattern p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        p.set(i, i);
    return p;
}

BoolPattern BoolPattern::of(const IntMatrix& m)
{
    BoolPattern p(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
            if (m[i][j] < 0)
                throw PreconditionError("BoolPattern: negative entry");
            p.set(i, j, m[i][j] != 0);
        }
    return p;
}

BoolPattern BoolPattern::row_vector(std::size_t cols, const std::vector<std::size_t>& support)
{
    BoolPattern p(1, cols);
    for (auto j : support)
        p.set(0, j);
    return p;
}

BoolPattern BoolPattern::operator*(const BoolPattern& rhs) const
{
    if (cols_ != rhs.rows_)
        throw PreconditionError("BoolPattern: shape mismatch");
    BoolPattern out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (!get(i, k))
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                if (rhs.get(k, j))
                    out.set(i, j);
        }
    return out;
}

BoolPattern BoolPattern::transposed() const
{
    BoolPattern t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.set(j, i, get(i, j));
    return t;
}

std::vector<std::size_t> BoolPattern::row_support(std::size_t i) const
{
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < cols_; ++j)
        if (get(i, j))
            s.push_back(j);
    return s;
}

bool BoolPattern::has_positive_diagonal() const
{
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        if (!get(i, i))
            return false;
    return true;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b)
{
    const std::size_t inner = a.empty() ? 0 : a[0].size();
    if (inner != b.size())
        throw PreconditionError("multiply: shape mismatch");
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    IntMatrix out(a.size(), std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t j = 0; j < cols; ++j) {
                std::int64_t t;
                if (__builtin_mul_overflow(a[i][k], b[k][j], &t) || __builtin_add_overflow(out[i][j], t, &out[i][j]))
                    throw ResourceError("multiply: integer overflow");
            }
    return out;
}

IntMatrix transpose(const IntMatrix& a)
{
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    IntMatrix t(cols, std::vector<std::int64_t>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t[j][i] = a[i][j];
    return t;
}

IntMatrix identity_matrix(std::size_t n)
{
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

// ---------------------------------------------------------------- inclusion matrix

InclusionMatrix InclusionMatrix::transposed() const
{
    return {transpose(entries), col_labels, row_labels, col_degrees, row_degrees};
}

InclusionMatrix InclusionMatrix::relabeled(const std::vector<std::size_t>& row_perm,
                                           const std::vector<std::size_t>& col_perm) const
{
    if (row_perm.size() != rows() || col_perm.size() != cols())
        throw PreconditionError("relabeled: permutation size mismatch");
    InclusionMatrix out;
    out.entries.assign(rows(), std::vector<std::int64_t>(cols()));
    for (std::size_t i = 0; i < rows(); ++i) {
        out.row_labels.push_back(row_labels[row_perm[i]]);
        out.row_degrees.push_back(row_degrees[row_perm[i]]);
        for (std::size_t j = 0; j < cols(); ++j)
            out.entries[i][j] = entries[row_perm[i]][col_perm[j]];
    }
    for (std::size_t j = 0; j < cols(); ++j) {
        out.col_labels.push_back(col_labels[col_perm[j]]);
        out.col_degrees.push_back(col_degrees[col_perm[j]]);
    }
    return out;
}

namespace {

void check_nonzero_lines(const IntMatrix& m)
{
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    if (m.empty() || cols == 0)
        throw IntegrityError("inclusion matrix: empty");
    std::vector<bool> col_hit(cols, false);
    for (const auto& row : m) {
        if (row.size() != cols)
            throw IntegrityError("inclusion matrix: ragged rows");
        bool any = false;
        for (std::size_t j = 0; j < cols; ++j) {
            if (row[j] < 0)
                throw IntegrityError("inclusion matrix: negative entry");
            if (row[j] != 0)
                any = col_hit[j] = true;
        }
        if (!any)
            throw IntegrityError("inclusion matrix: zero row");
    }
    if (std::find(col_hit.begin(), col_hit.end(), false) != col_hit.end())
        throw IntegrityError("inclusion matrix: zero column");
}

}  // namespace

InclusionMatrix InclusionMatrix::from_entries(IntMatrix entries)
{
    check_nonzero_lines(entries);
    InclusionMatrix m;
    m.entries = std::move(entries);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        m.row_labels.push_back("r" + std::to_string(i));
        m.row_degrees.push_back(1);
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        m.col_labels.push_back("c" + std::to_string(j));
        m.col_degrees.push_back(1);
    }
    return m;
}

InclusionMatrix inclusion_matrix(const SubgroupEmbedding& emb, const CharacterTable& table_u,
                                 const CharacterTable& table_g)
{
    if (table_u.group != emb.subgroup() || table_g.group != emb.parent())
        throw PreconditionError("inclusion_matrix: tables do not match the embedding");
    InclusionMatrix m;
    const std::size_t s = table_u.size();
    const std::size_t r = table_g.size();
    m.entries.assign(s, std::vector<std::int64_t>(r, 0));
    std::vector<ClassFunction> restricted, induced;
    for (const auto& chi : table_g.irreducibles)
        restricted.push_back(charring::restrict(chi, emb));
    for (const auto& psi : table_u.irreducibles)
        induced.push_back(charring::induce(psi, emb));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const auto res = charring::inner_product(table_u.irreducibles[i], restricted[j], table_u);
            const auto ind = charring::inner_product(induced[i], table_g.irreducibles[j], table_g);
            if (res != ind)
                throw IntegrityError("inclusion_matrix: Frobenius reciprocity fails");
            m.entries[i][j] = static_cast<std::int64_t>(res);
        }
    check_nonzero_lines(m.entries);
    const auto index = static_cast<std::int64_t>(emb.index());
    for (std::size_t i = 0; i < s; ++i) {
        std::int64_t dim = 0;
        for (std::size_t j = 0; j < r; ++j)
            dim += m.entries[i][j] * table_g.degrees[j];
        if (dim != index * table_u.degrees[i])
            throw IntegrityError("inclusion_matrix: induced dimension count fails");
    }
    for (std::size_t i = 0; i < s; ++i) {
        m.row_labels.push_back("U" + std::to_string(i) + "[" + std::to_string(table_u.degrees[i]) + "]");
        m.row_degrees.push_back(table_u.degrees[i]);
    }
    for (std::size_t j = 0; j < r; ++j) {
        m.col_labels.push_back("G" + std::to_string(j) + "[" + std::to_string(table_g.degrees[j]) + "]");
        m.col_degrees.push_back(table_g.degrees[j]);
    }
    return m;
}

// ---------------------------------------------------------------- depth

namespace {

int search_bound(const InclusionMatrix& m)
{
    return 2 * static_cast<int>(std::max(m.rows(), m.cols())) + 3;
}

BoolPattern power(const BoolPattern& p, int n)
{
    BoolPattern out = BoolPattern::identity(p.rows());
    for (int i = 0; i < n; ++i)
        out = out * p;
    return out;
}

struct Patterns {
    BoolPattern m, mt, p, qhat;
    explicit Patterns(const InclusionMatrix& im)
        : m(BoolPattern::of(im.entries)), mt(m.transposed()), p(m * mt), qhat(mt * m)
    {
    }
};

bool left_even(const Patterns& pt, int n)
{
    const BoolPattern a = power(pt.p, n - 1) * pt.m;
    return a == pt.p * a;
}

bool right_even(const Patterns& pt, int n)
{
    const BoolPattern a = pt.mt * power(pt.p, n - 1);
    return a == a * pt.p;
}

}  // namespace

bool depth_condition(const InclusionMatrix& m, int k)
{
    if (k < 1)
        throw PreconditionError("depth_condition: k must be positive");
    const Patterns pt(m);
    if (k % 2 == 1) {
        const BoolPattern a = power(pt.p, (k - 1) / 2);
        return a == a * pt.p;
    }
    return left_even(pt, k / 2) || right_even(pt, k / 2);
}

bool h_depth_condition(const InclusionMatrix& m, int k)
{
    if (k < 1 || k % 2 == 0)
        throw PreconditionError("h_depth_condition: k must be odd and positive");
    const Patterns pt(m);
    const BoolPattern a = power(pt.qhat, (k - 1) / 2);
    return a == a * pt.qhat;
}

DepthFlavors depth_flavors(const InclusionMatrix& m)
{
    const Patterns pt(m);
    if (!pt.p.has_positive_diagonal() || !pt.qhat.has_positive_diagonal())
        throw IntegrityError("depth_flavors: MM^T or M^T M has a zero diagonal entry");
    const int bound = search_bound(m);
    DepthFlavors f;

    BoolPattern pn = BoolPattern::identity(pt.p.rows());
    for (int n = 0; n <= bound; ++n) {
        const BoolPattern next = pn * pt.p;
        if (next == pn) {
            f.d_odd = 2 * n + 1;
            break;
        }
        pn = next;
    }

    BoolPattern left = pt.m;
    BoolPattern right = pt.mt;
    for (int n = 1; n <= bound; ++n) {
        const BoolPattern left_next = pt.p * left;
        const BoolPattern right_next = right * pt.p;
        if (f.d_even_left == kNotFound && left_next == left)
            f.d_even_left = 2 * n;
        if (f.d_even_right == kNotFound && right_next == right)
            f.d_even_right = 2 * n;
        if (f.d_even_left != kNotFound && f.d_even_right != kNotFound)
            break;
        left = left_next;
        right = right_next;
    }
    if (f.d_even_left != f.d_even_right)
        throw IntegrityError("depth_flavors: left and right even depth disagree");
    f.d_even = f.d_even_left;

    BoolPattern qn = BoolPattern::identity(pt.qhat.rows());
    for (int n = 1; n <= bound; ++n) {
        const BoolPattern next = qn * pt.qhat;
        if (next == qn) {
            f.d_h = 2 * n - 1;
            break;
        }
        qn = next;
    }

    // Conditions interleave in k; the least odd and least even depth decide.
    if (f.d_odd != kNotFound && f.d_even != kNotFound)
        f.d_min = std::min(f.d_odd, f.d_even);
    else if (f.d_odd != kNotFound)
        f.d_min = f.d_odd;
    else
        f.d_min = f.d_even;
    return f;
}

QuotientChain quotient_chain(const InclusionMatrix& m, ChainSide which, std::size_t trivial_row)
{
    if (trivial_row >= m.rows())
        throw PreconditionError("quotient_chain: trivial row out of range");
    const Patterns pt(m);
    const int bound = search_bound(m);
    QuotientChain chain;

    const BoolPattern e0 = BoolPattern::row_vector(m.rows(), {trivial_row});
    std::vector<BoolPattern> vs;
    BoolPattern step;
    if (which == ChainSide::Subalgebra) {
        vs.push_back(e0);
        step = pt.p;
    } else {
        // Q^(0) is the trivial G-module, column 0 under the table ordering.
        vs.push_back(BoolPattern::row_vector(m.cols(), {0}));
        vs.push_back(e0 * pt.m);
        step = pt.qhat;
    }
    while (static_cast<int>(vs.size()) <= bound + 1)
        vs.push_back(vs.back() * step);

    for (std::size_t n = 0; n + 1 < vs.size(); ++n) {
        if (vs[n] == vs[n + 1]) {
            chain.ell = static_cast<int>(n);
            break;
        }
    }
    const std::size_t upto = chain.ell == kNotFound ? vs.size() - 1 : static_cast<std::size_t>(chain.ell) + 1;
    for (std::size_t n = 0; n <= upto; ++n) {
        chain.supports.push_back(vs[n].row_support(0));
        if (n > 0 && !std::includes(chain.supports[n].begin(), chain.supports[n].end(),
                                    chain.supports[n - 1].begin(), chain.supports[n - 1].end()))
            throw IntegrityError("quotient_chain: chain is not monotone");
    }
    return chain;
}

std::vector<std::vector<std::size_t>> constituent_chain(const ClassFunction& chi, const CharacterTable& table,
                                                        std::size_t max_power)
{
    const std::size_t r = table.size();
    BoolPattern t(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        const ClassFunction prod = charring::tensor(table.irreducibles[i], chi);
        for (std::size_t j = 0; j < r; ++j)
            t.set(i, j, charring::inner_product(prod, table.irreducibles[j], table) != 0);
    }
    std::vector<std::vector<std::size_t>> chain;
    BoolPattern v = BoolPattern::row_vector(r, {CharacterTable::trivial_index()});
    for (std::size_t n = 0; n <= max_power; ++n) {
        chain.push_back(v.row_support(0));
        v = v * t;
    }
    return chain;
}

TheoremCheck verify_precise_theorem(const DepthFlavors& flavors, int ell_qr, int ell_qh)
{
    TheoremCheck c;
    if (flavors.d_even == kNotFound || flavors.d_h == kNotFound || ell_qr == kNotFound || ell_qh == kNotFound)
        return c;
    c.even_equality = flavors.d_even == 2 * ell_qr + 2;
    c.h_equality = flavors.d_h == 2 * ell_qh + 1;
    c.ineq1 = 2 * ell_qr + 1 < flavors.d_even;
    c.ineq2 = 2 * ell_qh + 1 <= flavors.d_h;
    return c;
}

CoreCheck core_ideal_check(const SubgroupEmbedding& emb, int ell_qh)
{
    if (ell_qh < 0)
        throw PreconditionError("core_ideal_check: chain length not found");
    const PermGroup& G = *emb.parent();
    const ClassFunction chi_q = permgroup::coset_permutation_character(emb);
    const ClassFunction power = charring::tensor_power(chi_q, static_cast<std::size_t>(ell_qh));

    std::vector<std::size_t> kernel;
    for (std::size_t g = 0; g < G.order(); ++g)
        if (power.integer_value(G.class_of(g)) == power.integer_value(0))
            kernel.push_back(g);
    const auto core_elements = permgroup::parent_indices(G, *permgroup::core(emb));

    CoreCheck c;
    c.kernel_order = kernel.size();
    c.core_order = core_elements.size();
    c.kernel_equals_core = kernel == core_elements;
    c.chi_q_faithful = true;
    for (std::size_t k = 1; k < G.num_classes(); ++k)
        if (chi_q.integer_value(k) == chi_q.integer_value(0))
            c.chi_q_faithful = false;
    c.faithful_iff_corefree = c.chi_q_faithful == (c.core_order == 1);
    return c;
}

std::optional<std::size_t> ord_of(const ClassFunction& chi, const CharacterTable& table)
{
    const std::size_t bound = 2 * table.size() + 3;
    const auto chain = constituent_chain(chi, table, bound);
    for (std::size_t n = 1; n <= bound; ++n)
        if (std::binary_search(chain[n].begin(), chain[n].end(), CharacterTable::trivial_index()))
            return n;
    return std::nullopt;
}

BurnsideBrauerResult burnside_brauer_check(const ClassFunction& chi, const CharacterTable& table)
{
    if (!chi.is_integer())
        throw PreconditionError("burnside_brauer_check: character must be integer-valued");
    const auto& values = chi.integers();
    for (std::size_t c = 1; c < values.size(); ++c)
        if (values[c] == values[0])
            throw PreconditionError("burnside_brauer_check: character is not faithful");
    BurnsideBrauerResult res;
    res.distinct_values = std::set<std::int64_t>(values.begin(), values.end()).size();
    const auto chain = constituent_chain(chi, table, res.distinct_values - 1);
    std::set<std::size_t> met;
    for (const auto& s : chain)
        met.insert(s.begin(), s.end());
    res.covered = met.size();
    res.passed = res.covered == table.size();
    return res;
}

DrinfeldDepth drinfeld_double_depth(const permgroup::GroupPtr& g, const CharacterTable& table)
{
    if (table.group != g)
        throw PreconditionError("drinfeld_double_depth: table belongs to another group");
    const ClassFunction ad = permgroup::adjoint_character(g);
    const std::size_t bound = 2 * table.size() + 3;
    const auto chain = constituent_chain(ad, table, bound + 1);
    DrinfeldDepth d;
    for (std::size_t n = 0; n <= bound; ++n)
        if (chain[n] == chain[n + 1]) {
            d.ell_ad = static_cast<int>(n);
            d.module_depth = 2 * d.ell_ad + 1;
            break;
        }
    return d;
}

// ---------------------------------------------------------------- bimodule oracle

const char* to_string(BimoduleSide side)
{
    switch (side) {
    case BimoduleSide::BB: return "BB";
    case BimoduleSide::BA: return "BA";
    case BimoduleSide::AB: return "AB";
    case BimoduleSide::AA: return "AA";
    }
    return "?";
}

std::uint64_t fiber_points(const SubgroupEmbedding& emb, int n)
{
    if (n < 1)
        throw PreconditionError("fiber_points: n must be positive");
    unsigned __int128 pts = emb.parent()->order();
    for (int i = 1; i < n; ++i) {
        pts *= emb.index();
        if (pts > (std::uint64_t{1} << 62))
            return std::uint64_t{1} << 62;
    }
    return static_cast<std::uint64_t>(pts);
}

IntMatrix brute_force_bimodule_oracle(const SubgroupEmbedding& emb, int n, BimoduleSide side,
                                      std::uint64_t point_cap)
{
    const auto [tu, tg] = pair_tables(emb);
    return brute_force_bimodule_oracle(emb, n, side, tu, tg, point_cap);
}

IntMatrix brute_force_bimodule_oracle(const SubgroupEmbedding& emb, int n, BimoduleSide side,
                                      const CharacterTable& ref_u, const CharacterTable& ref_g,
                                      std::uint64_t point_cap)
{
    if (n < 1 || n > 3)
        throw PreconditionError("brute_force_bimodule_oracle: n must be in [1, 3]");
    const std::uint64_t points = fiber_points(emb, n);
    if (points > point_cap)
        throw ResourceError("brute_force_bimodule_oracle: " + std::to_string(points) + " points exceed the cap");

    const PermGroup& G = *emb.parent();
    const PermGroup& U = *emb.subgroup();
    const std::size_t N = G.order();
    const std::size_t L = emb.index();

    // Left cosets gU: g = rep * u with rep the least index in gU.
    std::vector<std::size_t> subgroup_elements(U.order());
    for (std::size_t u = 0; u < U.order(); ++u)
        subgroup_elements[u] = emb.to_parent(u);
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> coset_id(N, kUnset), coset_rep, u_part(N);
    for (std::size_t g = 0; g < N; ++g) {
        if (coset_id[g] != kUnset)
            continue;
        const std::size_t id = coset_rep.size();
        coset_rep.push_back(g);
        for (auto u : subgroup_elements) {
            const std::size_t h = G.multiply(g, u);
            coset_id[h] = id;
            u_part[h] = u;
        }
    }

    auto canonical = [&](std::vector<std::size_t> t) {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) {
            code = code * L + coset_id[t[i]];
            t[i + 1] = G.multiply(u_part[t[i]], t[i + 1]);
        }
        return code * N + t.back();
    };
    auto decode = [&](std::uint64_t code) {
        std::vector<std::size_t> t(static_cast<std::size_t>(n));
        t.back() = static_cast<std::size_t>(code % N);
        code /= N;
        for (int i = n - 2; i >= 0; --i) {
            t[static_cast<std::size_t>(i)] = coset_rep[code % L];
            code /= L;
        }
        return t;
    };
    std::vector<std::vector<std::size_t>> tuples(points);
    for (std::uint64_t c = 0; c < points; ++c) {
        tuples[c] = decode(c);
        if (canonical(tuples[c]) != c)
            throw IntegrityError("brute_force_bimodule_oracle: tuple normal form is not canonical");
    }

    const bool left_parent = side == BimoduleSide::AB || side == BimoduleSide::AA;
    const bool right_parent = side == BimoduleSide::BA || side == BimoduleSide::AA;

    std::uint64_t bound = std::max<std::uint64_t>(charring::multiplicity_bound(G), points + 1);
    const std::uint64_t prime = charring::select_prime(G, bound);
    const CharacterTable tg = charring::character_table_over(emb.parent(), prime, bound);
    const CharacterTable tu = charring::character_table_over(emb.subgroup(), prime, bound);
    const CharacterTable& tx = left_parent ? tg : tu;
    const CharacterTable& ty = right_parent ? tg : tu;
    const PermGroup& X = *tx.group;
    const PermGroup& Y = *ty.group;
    auto rep_in_parent = [&](const PermGroup& H, bool is_parent, std::size_t c) {
        const std::size_t r = H.classes()[c].representative;
        return is_parent ? r : emb.to_parent(r);
    };

    const PrimeField F(prime);
    // pi(c, d): tuples fixed by (x, y) with t -> x t y^-1.
    std::vector<std::vector<std::uint64_t>> pi(X.num_classes(), std::vector<std::uint64_t>(Y.num_classes()));
    for (std::size_t c = 0; c < X.num_classes(); ++c) {
        const std::size_t x = rep_in_parent(X, left_parent, c);
        for (std::size_t d = 0; d < Y.num_classes(); ++d) {
            const std::size_t y_inv = G.inverse(rep_in_parent(Y, right_parent, d));
            std::uint64_t fixed = 0;
            for (std::uint64_t code = 0; code < points; ++code) {
                auto t = tuples[code];
                t.front() = G.multiply(x, t.front());
                t.back() = G.multiply(t.back(), y_inv);
                fixed += canonical(std::move(t)) == code;
            }
            pi[c][d] = fixed;
        }
    }

    const std::uint64_t norm = F.inv(F.mul(F.reduce(X.order()), F.reduce(Y.order())));
    IntMatrix out(tx.size(), std::vector<std::int64_t>(ty.size(), 0));
    for (std::size_t a = 0; a < tx.size(); ++a)
        for (std::size_t b = 0; b < ty.size(); ++b) {
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < X.num_classes(); ++c) {
                const std::uint64_t xa = tx.irreducibles[a].residue(X.inverse_class(c), F);
                const std::uint64_t wc = F.mul(F.reduce(X.classes()[c].size), xa);
                for (std::size_t d = 0; d < Y.num_classes(); ++d) {
                    const std::uint64_t wd = F.mul(F.reduce(Y.classes()[d].size), ty.irreducibles[b].residue(d, F));
                    acc = F.add(acc, F.mul(F.mul(wc, wd), F.reduce(pi[c][d])));
                }
            }
            const std::uint64_t m = F.mul(acc, norm);
            if (m >= bound)
                throw IntegrityError("brute_force_bimodule_oracle: multiplicity lift out of range");
            out[a][b] = static_cast<std::int64_t>(m);
        }

    const std::uint64_t e = G.exponent();
    const auto px = charring::align_tables(tx, left_parent ? ref_g : ref_u, e);
    const auto py = charring::align_tables(ty, right_parent ? ref_g : ref_u, e);
    IntMatrix aligned(tx.size(), std::vector<std::int64_t>(ty.size(), 0));
    for (std::size_t a = 0; a < tx.size(); ++a)
        for (std::size_t b = 0; b < ty.size(); ++b)
            aligned[px[a]][py[b]] = out[a][b];
    return aligned;
}

IntMatrix matrix_rule(const InclusionMatrix& m, int n, BimoduleSide side)
{
    if (n < 1)
        throw PreconditionError("matrix_rule: n must be positive");
    const IntMatrix& M = m.entries;
    const IntMatrix Mt = transpose(M);
    const IntMatrix P = multiply(M, Mt);
    IntMatrix Pk = identity_matrix(m.rows());
    for (int i = 1; i < n; ++i)
        Pk = multiply(Pk, P);
    switch (side) {
    case BimoduleSide::BB: return multiply(Pk, P);
    case BimoduleSide::BA: return multiply(Pk, M);
    case BimoduleSide::AB: return multiply(Mt, Pk);
    case BimoduleSide::AA: {
        const IntMatrix Q = multiply(Mt, M);
        IntMatrix Qk = identity_matrix(m.cols());
        for (int i = 1; i < n; ++i)
            Qk = multiply(Qk, Q);
        return Qk;
    }
    }
    return {};
}

// ---------------------------------------------------------------- report

bool DepthReport::all_verified() const
{
    return std::all_of(verification.begin(), verification.end(), [](const auto& kv) { return kv.second; });
}

std::pair<CharacterTable, CharacterTable> pair_tables(const SubgroupEmbedding& emb)
{
    const std::uint64_t bound = charring::multiplicity_bound(*emb.parent(), emb.index());
    const std::uint64_t prime = charring::select_prime(*emb.parent(), bound);
    return {charring::character_table_over(emb.subgroup(), prime, bound),
            charring::character_table_over(emb.parent(), prime, bound)};
}

namespace {

bool chain_matches_characters(const QuotientChain& chain, const SubgroupEmbedding& emb, const CharacterTable& tu,
                              const CharacterTable& tg, ChainSide side)
{
    const ClassFunction chi_q = permgroup::coset_permutation_character(emb);
    for (std::size_t n = 0; n < chain.supports.size(); ++n) {
        const ClassFunction p = charring::tensor_power(chi_q, n);
        const auto support = side == ChainSide::Parent ? charring::decompose(p, tg).support()
                                                       : charring::decompose(charring::restrict(p, emb), tu).support();
        if (support != chain.supports[n])
            return false;
    }
    return true;
}

}  // namespace

DepthReport matrix_report(const InclusionMatrix& m, std::string name, bool with_chains)
{
    DepthReport rep;
    rep.pair = std::move(name);
    rep.matrix = m;
    rep.flavors = depth_flavors(m);
    auto& v = rep.verification;
    const auto& f = rep.flavors;

    const bool finite = f.d_min != kNotFound && f.d_odd != kNotFound && f.d_even != kNotFound && f.d_h != kNotFound;
    v.emplace_back("finite_values", finite);
    v.emplace_back("left_right_even_agree", f.d_even_left == f.d_even_right);
    v.emplace_back("parity", f.d_odd % 2 == 1 && f.d_h % 2 == 1 && f.d_even % 2 == 0 &&
                                 (f.d_min == 1 || f.d_min == std::min(f.d_odd, f.d_even)));
    bool monotone = finite;
    for (int k = f.d_min; finite && k <= std::max({f.d_odd, f.d_even, f.d_h}) + 2; ++k)
        monotone = monotone && depth_condition(m, k);
    v.emplace_back("depth_monotone", monotone);
    v.emplace_back("h_depth_within_two", finite && std::abs(f.d_h - f.d_min) <= 2);

    if (!with_chains)
        return rep;
    rep.chain_r = quotient_chain(m, ChainSide::Subalgebra);
    rep.chain_h = quotient_chain(m, ChainSide::Parent);
    v.emplace_back("chains_finite", rep.ell_qr() != kNotFound && rep.ell_qh() != kNotFound);
    const TheoremCheck th = verify_precise_theorem(f, rep.ell_qr(), rep.ell_qh());
    v.emplace_back("theorem_even_depth", th.even_equality);
    v.emplace_back("theorem_h_depth", th.h_equality);
    v.emplace_back("ineq1", th.ineq1);
    v.emplace_back("ineq2", th.ineq2);
    return rep;
}

DepthReport analyze_pair(const SubgroupEmbedding& emb, std::string pair_name)
{
    const auto [tu, tg] = pair_tables(emb);
    DepthReport rep = matrix_report(inclusion_matrix(emb, tu, tg), std::move(pair_name), true);
    rep.prime = tg.prime;
    rep.group_order = emb.parent()->order();
    rep.subgroup_order = emb.subgroup()->order();
    rep.index = emb.index();
    rep.normal = permgroup::is_normal(emb);
    auto& v = rep.verification;
    const auto& f = rep.flavors;

    v.emplace_back("chain_parent_matches_characters",
                   chain_matches_characters(rep.chain_h, emb, tu, tg, ChainSide::Parent));
    v.emplace_back("chain_subgroup_matches_characters",
                   chain_matches_characters(rep.chain_r, emb, tu, tg, ChainSide::Subalgebra));

    const CoreCheck cc = core_ideal_check(emb, std::max(rep.ell_qh(), 0));
    rep.core_order = cc.core_order;
    rep.chi_q_faithful = cc.chi_q_faithful;
    v.emplace_back("core_ideal", cc.passed());

    const bool equal = rep.index == 1;
    v.emplace_back("normal_iff_depth_at_most_two", rep.normal == (f.d_min <= 2));
    v.emplace_back("equal_iff_h_depth_one", equal == (f.d_h == 1));
    v.emplace_back("h_depth_one_implies_depth_one", f.d_h != 1 || f.d_min == 1);
    // Depth one exactly when G = U C_G(x) for every x in U: each G-class meeting U is one U-class.
    bool cover = true;
    for (std::size_t c = 0; c < emb.subgroup()->num_classes(); ++c)
        cover = cover && emb.subgroup()->classes()[c].size == emb.parent()->classes()[emb.fusion()[c]].size;
    v.emplace_back("depth_one_iff_centralizer_cover", cover == (f.d_min == 1));

    // A transitive permutation module contains the trivial module exactly once.
    const ClassFunction chi_q = permgroup::coset_permutation_character(emb);
    v.emplace_back("trivial_summand_of_quotient", charring::inner_product(chi_q, tg.irreducibles[0], tg) == 1);
    rep.ord_q = ord_of(chi_q, tg);
    rep.chi_q_multiplicities = charring::decompose(chi_q, tg).coefficients;

    if (cc.chi_q_faithful)
        v.emplace_back("burnside_brauer", burnside_brauer_check(chi_q, tg).passed);
    return rep;
}

}  // namespace depthlab::depthcore
