#include <doctest.h>

#include <random>
#include <set>

#include "depthlab/charring.hpp"
#include "depthlab/errors.hpp"
#include "oracles.hpp"

using namespace depthlab;
using namespace depthlab::permgroup;
using namespace depthlab::charring;

namespace {

SubgroupEmbedding embed(const std::string& parent, const std::string& sub)
{
    auto G = build_group(parent);
    return embed_subgroup(G, standard_generators(parse_group_spec(sub)));
}

/// Tables for U and G over the prime the pair pipeline would use.
std::pair<CharacterTable, CharacterTable> pair_tables(const SubgroupEmbedding& emb)
{
    const auto bound = multiplicity_bound(*emb.parent(), emb.index());
    const auto p = select_prime(*emb.parent(), bound);
    return {character_table_over(emb.subgroup(), p, bound), character_table_over(emb.parent(), p, bound)};
}

std::size_t class_with_cycle_type(const PermGroup& g, std::vector<std::size_t> type)
{
    for (std::size_t c = 0; c < g.num_classes(); ++c)
        if (g.element(g.classes()[c].representative).cycle_type() == type)
            return c;
    FAIL("no class with requested cycle type");
    return 0;
}

/// Integer characters of S_n computable without any character theory:
/// trivial, sign, fixed points minus one, and its sign twist.
std::vector<std::vector<std::int64_t>> hook_characters(const PermGroup& g)
{
    std::vector<std::vector<std::int64_t>> rows(4);
    for (const auto& cls : g.classes()) {
        const auto& p = g.element(cls.representative);
        oracle::Word w(p.images().begin(), p.images().end());
        std::int64_t fixed = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            fixed += w[i] == static_cast<int>(i);
        const std::int64_t sign = oracle::is_even(w) ? 1 : -1;
        rows[0].push_back(1);
        rows[1].push_back(sign);
        rows[2].push_back(fixed - 1);
        rows[3].push_back(sign * (fixed - 1));
    }
    return rows;
}

/// S4 acting on its three perfect matchings of {0,1,2,3}: fixed matchings minus one
/// is the two-dimensional irreducible.
std::vector<std::int64_t> s4_matching_character(const PermGroup& g)
{
    const std::vector<std::set<std::set<int>>> matchings = {
        {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
    std::vector<std::int64_t> row;
    for (const auto& cls : g.classes()) {
        const auto& p = g.element(cls.representative);
        std::int64_t fixed = 0;
        for (const auto& m : matchings) {
            std::set<std::set<int>> img;
            for (const auto& pair : m) {
                std::set<int> q;
                for (int x : pair)
                    q.insert(p[static_cast<std::size_t>(x)]);
                img.insert(q);
            }
            fixed += img == m;
        }
        row.push_back(fixed - 1);
    }
    return row;
}

std::vector<std::uint64_t> reduce(const std::vector<std::int64_t>& v, const PrimeField& F)
{
    std::vector<std::uint64_t> out;
    for (auto x : v)
        out.push_back(F.reduce(x));
    return out;
}

std::set<std::vector<std::uint64_t>> rows_of(const CharacterTable& t)
{
    std::set<std::vector<std::uint64_t>> out;
    for (const auto& chi : t.irreducibles)
        out.insert(chi.residues(t.field()));
    return out;
}

}  // namespace

TEST_CASE("modular helpers")
{
    CHECK(is_prime(2));
    CHECK(is_prime(1'000'000'007));
    CHECK_FALSE(is_prime(1'000'000'007ull * 3));
    CHECK(prime_congruent_one(12, 48) == 61);
    PrimeField F(61);
    CHECK(F.mul(F.inv(7), 7) == 1);
    CHECK(F.symmetric(60) == -1);
    // (x - 3)(x - 5)(x^2 + 1) over F_61: x^2 + 1 has roots since 61 = 1 mod 4.
    auto roots = distinct_roots(F, {F.reduce(15 * 1), F.reduce(-8), F.reduce(16), F.reduce(-8), 1});
    for (auto r : roots) {
        std::uint64_t v = 0;
        for (std::int64_t c : {1, -8, 16, -8, 15})
            v = F.add(F.mul(v, r), F.reduce(c));
        CHECK(v == 0);
    }
    CHECK(roots.size() == 4);
}

TEST_CASE("character_table: small groups")
{
    SUBCASE("C2")
    {
        auto t = character_table(build_group("C2"));
        const auto p = t.prime;
        CHECK(t.degrees == std::vector<std::int64_t>{1, 1});
        CHECK(t.irreducibles[0].residues(t.field()) == std::vector<std::uint64_t>{1, 1});
        CHECK(t.irreducibles[1].residues(t.field()) == std::vector<std::uint64_t>{1, p - 1});
    }
    SUBCASE("S3 against trivial, sign and standard")
    {
        auto g = build_group("S3");
        auto t = character_table(g);
        CHECK(t.degrees == std::vector<std::int64_t>{1, 1, 2});
        const auto hooks = hook_characters(*g);
        const auto F = t.field();
        CHECK(t.irreducibles[0].residues(F) == reduce(hooks[0], F));
        CHECK(t.irreducibles[1].residues(F) == reduce(hooks[1], F));
        CHECK(t.irreducibles[2].residues(F) == reduce(hooks[2], F));
    }
    SUBCASE("S4 against hooks and the matching character")
    {
        auto g = build_group("S4");
        auto t = character_table(g);
        CHECK(t.degrees == std::vector<std::int64_t>{1, 1, 2, 3, 3});
        const auto F = t.field();
        auto hooks = hook_characters(*g);
        std::set<std::vector<std::uint64_t>> expected;
        for (const auto& h : hooks)
            expected.insert(reduce(h, F));
        expected.insert(reduce(s4_matching_character(*g), F));
        CHECK(rows_of(t) == expected);
        // Ordering: among degree 3, the one with +1 on transpositions comes first.
        const std::size_t tr = class_with_cycle_type(*g, {2, 1, 1});
        CHECK(t.irreducibles[3].residue(tr, F) == 1);
        CHECK(t.irreducibles[4].residue(tr, F) == F.prime() - 1);
    }
}

TEST_CASE("character_table: orthogonality and degree invariants")
{
    for (const char* spec : {"C1", "C5", "C12", "S3", "S4", "S5", "A4", "A5", "D8", "D10", "C11:C5@3", "S6"}) {
        CAPTURE(spec);
        auto g = build_group(spec);
        auto t = character_table(g);
        const auto F = t.field();
        CHECK(t.size() == g->num_classes());
        CHECK((t.prime - 1) % g->exponent() == 0);
        std::int64_t sum_sq = 0;
        for (auto d : t.degrees) {
            sum_sq += d * d;
            CHECK(static_cast<std::int64_t>(g->order()) % d == 0);
        }
        CHECK(sum_sq == static_cast<std::int64_t>(g->order()));
        for (std::size_t a = 0; a < t.size(); ++a)
            for (std::size_t b = 0; b < t.size(); ++b)
                CHECK(inner_product(t.irreducibles[a], t.irreducibles[b], t) == (a == b ? 1u : 0u));
        for (std::size_t c = 0; c < g->num_classes(); ++c)
            for (std::size_t d = 0; d < g->num_classes(); ++d) {
                std::uint64_t s = 0;
                for (const auto& chi : t.irreducibles)
                    s = F.add(s, F.mul(chi.residue(c, F), chi.residue(g->inverse_class(d), F)));
                CHECK(s == (c == d ? F.reduce(static_cast<std::int64_t>(g->centralizer_order(c))) : 0));
            }
        CHECK(t.irreducibles[0].residues(F) == std::vector<std::uint64_t>(g->num_classes(), 1));
    }
}

TEST_CASE("inner_product")
{
    auto emb = embed("S4", "S3");
    auto [tu, tg] = pair_tables(emb);
    const auto one = trivial_character(emb.parent());
    CHECK(inner_product(one, one, tg) == 1);
    CHECK(inner_product(coset_permutation_character(emb), one, tg) == 1);

    auto s3 = build_group("S3");
    auto t3 = character_table(s3);
    // <chi_ad, chi_std> = (1*6*2 + 3*2*0 + 2*3*(-1)) / 6 = 1.
    CHECK(inner_product(adjoint_character(s3), t3.irreducibles[2], t3) == 1);

    // A lift past the bound signals a configuration bug.
    auto huge = ClassFunction::integer(s3, {static_cast<std::int64_t>(6 * t3.bound), 0, 0});
    CHECK_THROWS_AS(inner_product(huge, trivial_character(s3), t3), IntegrityError);
}

TEST_CASE("restrict and induce")
{
    auto emb = embed("S4", "S3");
    auto [tu, tg] = pair_tables(emb);
    const auto FU = tu.field();

    CHECK(restrict(trivial_character(emb.parent()), emb).integers() == std::vector<std::int64_t>(3, 1));

    // Standard character of S4 (fixed points minus one) restricted to S3.
    const auto std4 = tg.irreducibles[3];
    const auto res = restrict(std4, emb);
    const auto& U = *emb.subgroup();
    CHECK(res.residue(class_with_cycle_type(U, {1, 1, 1, 1}), FU) == 3);
    CHECK(res.residue(class_with_cycle_type(U, {2, 1, 1}), FU) == 1);
    CHECK(res.residue(class_with_cycle_type(U, {3, 1}), FU) == 0);
    CHECK(decompose(res, tu).coefficients == std::vector<std::uint64_t>{1, 0, 1});

    const auto ind = induce(trivial_character(emb.subgroup()), emb);
    CHECK(ind.integers() == coset_permutation_character(emb).integers());

    auto whole = embed("S4", "S4");
    auto [tw, tw2] = pair_tables(whole);
    for (std::size_t i = 0; i < tw.size(); ++i) {
        const auto up = induce(tw.irreducibles[i], whole);
        const auto down = restrict(tw2.irreducibles[i], whole);
        CHECK(up.residues(tw2.field()) == tw.irreducibles[i].residues(tw.field()));
        CHECK(down.residues(tw.field()) == tw2.irreducibles[i].residues(tw2.field()));
    }
}

TEST_CASE("decompose")
{
    auto emb = embed("S4", "S3");
    auto [tu, tg] = pair_tables(emb);
    CHECK(decompose(regular_character(emb.parent()), tg).coefficients ==
          std::vector<std::uint64_t>{1, 1, 2, 3, 3});
    CHECK(decompose(coset_permutation_character(emb), tg).coefficients ==
          std::vector<std::uint64_t>{1, 0, 0, 1, 0});

    auto s3 = build_group("S3");
    auto t3 = character_table(s3);
    CHECK(decompose(adjoint_character(s3), t3).coefficients == std::vector<std::uint64_t>{3, 1, 1});
}

TEST_CASE("tensor")
{
    auto emb = embed("S4", "S3");
    auto [tu, tg] = pair_tables(emb);
    const auto chi = coset_permutation_character(emb);
    CHECK(tensor(trivial_character(emb.parent()), chi).integers() == chi.integers());
    const auto sq = tensor(chi, chi);
    for (std::size_t c = 0; c < chi.size(); ++c)
        CHECK(sq.integer_value(c) == chi.integer_value(c) * chi.integer_value(c));
    std::vector<std::int64_t> sorted = sq.integers();
    std::sort(sorted.rbegin(), sorted.rend());
    CHECK(sorted == std::vector<std::int64_t>{16, 4, 1, 0, 0});

    const auto lin = tensor(tg.irreducibles[1], tg.irreducibles[1]);
    CHECK(inner_product(lin, lin, tg) == 1);
    CHECK(lin.residue(0, tg.field()) == 1);
    CHECK(tensor_power(chi, 0).integers() == std::vector<std::int64_t>(chi.size(), 1));
}

TEST_CASE("property: Frobenius reciprocity, round trips, trivial constituent of chi_Q")
{
    std::mt19937_64 rng(7);
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"S3", "C2"}, {"S4", "S3"}, {"S4", "A4"}, {"S4", "D8"}, {"S5", "S4"}, {"S5", "A5"},
        {"C11:C5@3", "C11"}, {"S4", "trivial"}, {"A5", "A4"}};
    for (const auto& [parent, sub] : pairs) {
        CAPTURE(parent);
        CAPTURE(sub);
        auto emb = embed(parent, sub);
        auto [tu, tg] = pair_tables(emb);
        for (std::size_t i = 0; i < tu.size(); ++i)
            for (std::size_t j = 0; j < tg.size(); ++j)
                CHECK(inner_product(induce(tu.irreducibles[i], emb), tg.irreducibles[j], tg) ==
                      inner_product(tu.irreducibles[i], restrict(tg.irreducibles[j], emb), tu));

        for (int trial = 0; trial < 5; ++trial) {
            MultiplicityVector m;
            for (std::size_t i = 0; i < tg.size(); ++i)
                m.coefficients.push_back(rng() % 6);
            CHECK(decompose(compose(m, tg), tg) == m);
        }

        const auto q = decompose(coset_permutation_character(emb), tg);
        CHECK(q.coefficients[CharacterTable::trivial_index()] == 1);
    }
}

TEST_CASE("tables over different primes align by eigenvalue profiles")
{
    for (const char* name : {"C7", "C11:C5@3", "A4", "S4", "D8"}) {
        INFO(name);
        const auto G = build_group(name);
        const auto bound = multiplicity_bound(*G);
        const auto p = select_prime(*G, bound);
        const auto q = select_prime(*G, p + 1);
        const auto tp = character_table_over(G, p, bound);
        const auto tq = character_table_over(G, q, bound);
        const auto e = G->exponent();

        const PrimeField F(p);
        const auto w = primitive_root_of_unity(F, e);
        CHECK(F.pow(w, e) == 1);
        for (std::uint64_t k = 1; k < e; ++k)
            CHECK(F.pow(w, k) != 1);

        std::vector<std::size_t> identity(tp.size());
        for (std::size_t i = 0; i < identity.size(); ++i)
            identity[i] = i;
        CHECK(align_tables(tp, tp, e) == identity);

        const auto forward = align_tables(tp, tq, e);
        const auto back = align_tables(tq, tp, e);
        CHECK(std::set<std::size_t>(forward.begin(), forward.end()).size() == tp.size());
        CHECK(forward[0] == 0);
        for (std::size_t i = 0; i < tp.size(); ++i) {
            CHECK(back[forward[i]] == i);
            CHECK(tp.degrees[i] == tq.degrees[forward[i]]);
        }
        // Integer characters decompose the same way on both sides.
        const auto reg = regular_character(G);
        const auto mp = decompose(reg, tp).coefficients;
        const auto mq = decompose(reg, tq).coefficients;
        for (std::size_t i = 0; i < tp.size(); ++i)
            CHECK(mp[i] == mq[forward[i]]);

        // The profile of the trivial character is one eigenvalue 1 on every class.
        for (const auto& row : eigenvalue_profile(tp.irreducibles[0], tp, w, e)) {
            CHECK(row[0] == 1);
            for (std::size_t k = 1; k < row.size(); ++k)
                CHECK(row[k] == 0);
        }
    }
}

TEST_CASE("dump_table")
{
    auto t = character_table(build_group("C2"));
    const auto text = dump_table(t);
    CHECK(text.starts_with("# prime\t" + std::to_string(t.prime) + "\n"));
    CHECK(text.find("1\t1\t1\n") != std::string::npos);
}
