#include "depthlab/moritatower.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "depthlab/errors.hpp"
#include "depthlab/rational.hpp"

namespace depthlab::moritatower {

using permgroup::PermGroup;

namespace {

void add_term(GroupAlgebraElement& a, std::size_t g, std::int64_t c)
{
    if (c == 0)
        return;
    auto [it, fresh] = a.emplace(g, c);
    if (!fresh && (it->second += c) == 0)
        a.erase(it);
}

GroupAlgebraElement basis(std::size_t g)
{
    return {{g, 1}};
}

}  // namespace

GroupAlgebraElement multiply(const PermGroup& g, const GroupAlgebraElement& a, const GroupAlgebraElement& b)
{
    GroupAlgebraElement out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b)
            add_term(out, g.multiply(x, y), cx * cy);
    return out;
}

GroupAlgebraElement FrobeniusSystem::E(const GroupAlgebraElement& a) const
{
    GroupAlgebraElement out;
    for (const auto& [g, c] : a)
        if (embedding->in_subgroup(g))
            out.emplace(g, c);
    return out;
}

FrobeniusSystem frobenius_system(const SubgroupEmbedding& emb)
{
    const PermGroup& G = *emb.parent();
    const PermGroup& U = *emb.subgroup();
    FrobeniusSystem sys;
    sys.embedding = &emb;

    std::vector<bool> seen(G.order(), false);
    for (std::size_t g = 0; g < G.order(); ++g) {
        if (seen[g])
            continue;
        sys.x.push_back(g);
        sys.y.push_back(G.inverse(g));
        for (std::size_t u = 0; u < U.order(); ++u)
            seen[G.multiply(g, emb.to_parent(u))] = true;
    }
    if (sys.size() != emb.index())
        throw IntegrityError("frobenius_system: left coset count differs from the index");

    std::vector<std::size_t> gens;
    for (const auto& p : U.generators())
        gens.push_back(*G.index_of(p));

    for (std::size_t u = 0; u < U.order(); ++u)
        if (sys.E(basis(emb.to_parent(u))) != basis(emb.to_parent(u)))
            throw IntegrityError("frobenius_system: E is not the identity on U");

    for (std::size_t a = 0; a < G.order(); ++a) {
        const GroupAlgebraElement ea = sys.E(basis(a));
        for (auto u : gens) {
            if (sys.E(basis(G.multiply(u, a))) != multiply(G, basis(u), ea) ||
                sys.E(basis(G.multiply(a, u))) != multiply(G, ea, basis(u)))
                throw IntegrityError("frobenius_system: E is not a U-bimodule map");
        }
        GroupAlgebraElement left, right;
        for (std::size_t i = 0; i < sys.size(); ++i) {
            for (const auto& [g, c] : multiply(G, sys.E(basis(G.multiply(a, sys.x[i]))), basis(sys.y[i])))
                add_term(left, g, c);
            for (const auto& [g, c] : multiply(G, basis(sys.x[i]), sys.E(basis(G.multiply(sys.y[i], a)))))
                add_term(right, g, c);
        }
        if (left != basis(a) || right != basis(a))
            throw IntegrityError("frobenius_system: dual basis identity fails at " + G.element(a).to_string());
    }
    return sys;
}

std::size_t EMultiplicationRing::basis_index(std::size_t a, std::size_t c) const
{
    const PermGroup& G = *embedding->parent();
    const std::size_t pos = embedding->right_coset_of(c);
    const std::size_t rep = embedding->right_cosets()[pos];
    const std::size_t u = G.multiply(c, G.inverse(rep));
    return G.multiply(a, u) * embedding->index() + pos;
}

std::optional<std::size_t> EMultiplicationRing::product(std::size_t lhs, std::size_t rhs) const
{
    const PermGroup& G = *embedding->parent();
    const std::size_t L = embedding->index();
    const std::size_t y = embedding->right_cosets()[lhs % L];
    const std::size_t yd = G.multiply(y, rhs / L);
    if (!embedding->in_subgroup(yd))
        return std::nullopt;
    return G.multiply(lhs / L, yd) * L + rhs % L;
}

EMultiplicationRing e_multiplication_ring(const FrobeniusSystem& sys, std::size_t cap, std::uint64_t seed)
{
    const SubgroupEmbedding& emb = *sys.embedding;
    EMultiplicationRing ring;
    ring.embedding = &emb;
    ring.dim = emb.parent()->order() * emb.index();
    if (ring.dim > cap)
        throw ResourceError("e_multiplication_ring: dimension " + std::to_string(ring.dim) + " exceeds the cap");

    for (std::size_t i = 0; i < sys.size(); ++i)
        ring.unit.push_back(ring.basis_index(sys.x[i], sys.y[i]));
    std::sort(ring.unit.begin(), ring.unit.end());
    if (std::adjacent_find(ring.unit.begin(), ring.unit.end()) != ring.unit.end())
        throw IntegrityError("e_multiplication_ring: unit terms collide");

    for (std::size_t b = 0; b < ring.dim; ++b) {
        std::vector<std::size_t> left, right;
        for (auto e : ring.unit) {
            if (auto p = ring.product(e, b))
                left.push_back(*p);
            if (auto p = ring.product(b, e))
                right.push_back(*p);
        }
        if (left != std::vector<std::size_t>{b} || right != std::vector<std::size_t>{b})
            throw IntegrityError("e_multiplication_ring: sum x_i (x) y_i is not a two-sided unit");
    }
    std::vector<std::size_t> square;
    for (auto e : ring.unit)
        for (auto f : ring.unit)
            if (auto p = ring.product(e, f))
                square.push_back(*p);
    std::sort(square.begin(), square.end());
    if (square != ring.unit)
        throw IntegrityError("e_multiplication_ring: unit is not idempotent");

    auto associative = [&](std::size_t a, std::size_t b, std::size_t c) {
        const auto ab = ring.product(a, b);
        const auto bc = ring.product(b, c);
        const auto lhs = ab ? ring.product(*ab, c) : std::nullopt;
        const auto rhs = bc ? ring.product(a, *bc) : std::nullopt;
        return lhs == rhs;
    };
    const std::uint64_t n = ring.dim;
    ring.exhaustive = n * n * n <= kExhaustiveTriples;
    if (ring.exhaustive) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (!associative(a, b, c))
                        throw IntegrityError("e_multiplication_ring: associativity fails");
        ring.triples_checked = n * n * n;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::uint64_t t = 0; t < kExhaustiveTriples; ++t)
            if (!associative(pick(rng), pick(rng), pick(rng)))
                throw IntegrityError("e_multiplication_ring: associativity fails");
        ring.triples_checked = kExhaustiveTriples;
    }
    return ring;
}

std::size_t center_dimension(const EMultiplicationRing& ring)
{
    // z = sum z_k e_k is central iff for each basis b and target t the coefficient
    // of e_t in z e_b - e_b z vanishes: one linear condition on z per (b, t).
    linalg::Subspace conditions(ring.dim);
    for (std::size_t b = 0; b < ring.dim; ++b) {
        std::map<std::size_t, linalg::SparseVector> rows;
        for (std::size_t k = 0; k < ring.dim; ++k) {
            if (auto t = ring.product(k, b))
                rows[*t].add(k, 1);
            if (auto t = ring.product(b, k))
                rows[*t].add(k, -1);
        }
        for (auto& [t, row] : rows)
            conditions.insert(std::move(row));
    }
    return ring.dim - conditions.dim();
}

std::vector<TowerStep> tower_sequence(const InclusionMatrix& m, int steps)
{
    if (steps < 1 || steps > kMaxTowerSteps)
        throw PreconditionError("tower_sequence: steps must lie in [1, 16]");
    std::vector<TowerStep> tower;
    InclusionMatrix current = m;
    for (int n = 0; n < steps; ++n) {
        TowerStep step;
        step.level = n;
        step.matrix = current;
        step.report = depthcore::matrix_report(current, "level " + std::to_string(n), false);
        tower.push_back(std::move(step));
        current = current.transposed();
    }
    for (std::size_t n = 0; n + 2 < tower.size(); ++n) {
        const auto& a = tower[n];
        const auto& b = tower[n + 2];
        if (a.matrix.entries != b.matrix.entries || !(a.report.flavors == b.report.flavors))
            throw IntegrityError("tower_sequence: period two fails at level " + std::to_string(n));
    }
    return tower;
}

MoritaCheck morita_invariance_check(const InclusionMatrix& m, std::size_t samples, std::uint64_t seed)
{
    MoritaCheck check;
    check.reference = depthcore::depth_flavors(m);
    std::vector<std::size_t> rows(m.rows()), cols(m.cols());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    check.passed = true;
    for (std::size_t s = 0; s <= samples; ++s) {
        if (s > 0) {
            std::shuffle(rows.begin(), rows.end(), rng);
            std::shuffle(cols.begin(), cols.end(), rng);
        }
        const auto f = depthcore::depth_flavors(m.relabeled(rows, cols));
        check.passed = check.passed && f == check.reference;
        ++check.samples;
    }
    return check;
}

}  // namespace depthlab::moritatower
