#include <doctest.h>

#include <random>

#include "depthlab/class_function.hpp"
#include "depthlab/errors.hpp"
#include "depthlab/permgroup.hpp"
#include "oracles.hpp"

using namespace depthlab;
using namespace depthlab::permgroup;

namespace {

oracle::Word to_word(const Perm& p)
{
    return {p.images().begin(), p.images().end()};
}

std::vector<oracle::Word> words(const PermGroup& g)
{
    std::vector<oracle::Word> out;
    for (const auto& e : g.elements())
        out.push_back(to_word(e));
    return out;
}

std::size_t class_with_cycle_type(const PermGroup& g, std::vector<std::size_t> type)
{
    for (std::size_t c = 0; c < g.num_classes(); ++c)
        if (g.element(g.classes()[c].representative).cycle_type() == type)
            return c;
    FAIL("no class with requested cycle type");
    return 0;
}

std::vector<std::size_t> sorted_sizes(const PermGroup& g)
{
    std::vector<std::size_t> s;
    for (const auto& c : g.classes())
        s.push_back(c.size);
    std::sort(s.begin(), s.end());
    return s;
}

SubgroupEmbedding embed(const std::string& parent, const std::string& sub)
{
    auto G = build_group(parent);
    auto spec = parse_group_spec(sub);
    return embed_subgroup(G, standard_generators(spec));
}

const char* kF55 = "C11:C5@3";
const char* kC5InF55 = "perm:(2 4 10 6 5)(3 7 8 11 9)";

}  // namespace

TEST_CASE("Perm composition acts left to right")
{
    Perm a = Perm::from_cycles(3, {{0, 1}});
    Perm b = Perm::from_cycles(3, {{1, 2}});
    Perm ab = a * b;
    CHECK(ab[0] == 2);  // 0 -> 1 under a, 1 -> 2 under b
    CHECK((ab * ab.inverse()).is_identity());
    CHECK(ab.order() == 3);
    CHECK(Perm::from_cycles(4, {{0, 1}, {2, 3}}).to_string() == "(1 2)(3 4)");
    CHECK(Perm::identity(3).to_string() == "()");
    CHECK_THROWS_AS(Perm(std::vector<Point>{0, 0}), InputError);
}

TEST_CASE("group spec parsing")
{
    CHECK(parse_group_spec("S4").kind == GroupSpec::Kind::Symmetric);
    CHECK(parse_group_spec(" A5 ").n == 5);
    auto sd = parse_group_spec("C11:C5@3");
    CHECK(sd.kind == GroupSpec::Kind::Semidirect);
    CHECK(sd.q == 5);
    auto ex = parse_group_spec("perm:(1 2)(3 4),(1 2 3)");
    CHECK(ex.degree == 4);
    CHECK(ex.generators.size() == 2);

    SUBCASE("errors report the position")
    {
        try {
            parse_group_spec("perm:(1 2)(3 x)");
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("position 13") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_group_spec("Q8"), InputError);
        CHECK_THROWS_AS(parse_group_spec("S"), InputError);
        CHECK_THROWS_AS(parse_group_spec("C11:C5@2"), InputError);  // 2 has order 10 mod 11
        CHECK_THROWS_AS(parse_group_spec("D7"), InputError);
        CHECK_THROWS_AS(parse_group_spec("perm:(1 2"), InputError);
        CHECK_THROWS_AS(parse_group_spec("perm:(0 1)"), InputError);
        CHECK_THROWS_AS(parse_group_spec("S4x"), InputError);
    }
}

TEST_CASE("build_group: named families")
{
    auto c1 = build_group("C1");
    CHECK(c1->order() == 1);
    CHECK(c1->num_classes() == 1);

    auto s3 = build_group("S3");
    CHECK(s3->order() == 6);
    CHECK(sorted_sizes(*s3) == oracle::class_sizes(oracle::all_perms(3)));
    CHECK(sorted_sizes(*s3) == std::vector<std::size_t>{1, 2, 3});

    auto f55 = build_group(kF55);
    CHECK(f55->order() == 55);
    // Oracle: close the two generators naively and compute orbits under all conjugations.
    const auto f55_words = oracle::closure({to_word(f55->generators()[0]), to_word(f55->generators()[1])}, 11);
    CHECK(f55_words.size() == 55);
    CHECK(sorted_sizes(*f55) == oracle::class_sizes(f55_words));
    CHECK(f55->num_classes() == 7);

    auto a5 = build_group("A5");
    CHECK(a5->order() == 60);
    CHECK(a5->num_classes() == 5);
    CHECK(build_group("D8")->order() == 8);
    CHECK(build_group("C12")->exponent() == 12);
    CHECK(build_group("S4")->exponent() == 12);
    CHECK(build_group("trivial")->order() == 1);

    CHECK_THROWS_AS(build_group("S8", 10'000), ResourceError);
}

TEST_CASE("build_group: generators of unequal degree are rejected")
{
    std::vector<Perm> gens{Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(4, {{0, 1}})};
    CHECK_THROWS_AS(PermGroup::generate(3, gens), InputError);
}

TEST_CASE("group invariants hold on a range of groups")
{
    for (const char* spec : {"S3", "S4", "S5", "A4", "A5", "D8", "D10", "C12", kF55, "perm:(1 2)(3 4),(1 3)(2 4)"}) {
        CAPTURE(spec);
        auto g = build_group(spec);
        CHECK(g->element(0).is_identity());
        std::size_t total = 0;
        for (std::size_t c = 0; c < g->num_classes(); ++c) {
            const auto& cls = g->classes()[c];
            total += cls.size;
            CHECK(cls.size == cls.member_indices.size());
            CHECK(cls.representative == cls.member_indices.front());
            for (auto m : cls.member_indices)
                CHECK(g->class_of(m) == c);
        }
        CHECK(total == g->order());
        CHECK(g->order() % g->exponent() == 0);
        CHECK(sorted_sizes(*g) == oracle::class_sizes(words(*g)));
        // Closure: a sample of products and inverses stays inside.
        for (std::size_t a = 0; a < g->order(); a += 7)
            for (std::size_t b = 0; b < g->order(); b += 5) {
                CHECK(g->contains(g->element(a) * g->element(b)));
                CHECK(g->multiply(a, g->inverse(a)) == 0);
            }
    }
}

TEST_CASE("element enumeration is deterministic")
{
    auto a = build_group("S5");
    auto b = build_group("S5");
    CHECK(a->elements() == b->elements());
    auto c = build_group(kF55);
    auto d = build_group(kF55);
    CHECK(c->elements() == d->elements());
}

TEST_CASE("embed_subgroup")
{
    SUBCASE("trivial subgroup")
    {
        auto emb = embed("S3", "trivial");
        CHECK(emb.index() == 6);
        CHECK(emb.fusion() == std::vector<std::size_t>{0});
    }
    SUBCASE("S3 in S4 fuses by cycle type")
    {
        auto emb = embed("S4", "S3");
        const auto& G = *emb.parent();
        const auto& U = *emb.subgroup();
        CHECK(emb.index() == 4);
        CHECK(U.num_classes() == 3);
        std::set<std::size_t> targets(emb.fusion().begin(), emb.fusion().end());
        CHECK(targets == std::set<std::size_t>{class_with_cycle_type(G, {1, 1, 1, 1}),
                                               class_with_cycle_type(G, {2, 1, 1}),
                                               class_with_cycle_type(G, {3, 1})});
        for (std::size_t d = 0; d < U.num_classes(); ++d) {
            const auto& rep = U.element(U.classes()[d].representative);
            CHECK(G.class_of(*G.index_of(rep)) == emb.fusion()[d]);
        }
        CHECK(emb.right_cosets().size() * U.order() == G.order());
    }
    SUBCASE("full subgroup")
    {
        auto emb = embed("S4", "S4");
        CHECK(emb.index() == 1);
        for (std::size_t c = 0; c < emb.fusion().size(); ++c)
            CHECK(emb.parent()->class_of(*emb.parent()->index_of(
                      emb.subgroup()->element(emb.subgroup()->classes()[c].representative))) == emb.fusion()[c]);
        std::set<std::size_t> image(emb.fusion().begin(), emb.fusion().end());
        CHECK(image.size() == emb.parent()->num_classes());
    }
    SUBCASE("coset representatives are least element indices")
    {
        auto emb = embed("S4", "S3");
        for (std::size_t k = 0; k < emb.index(); ++k) {
            const std::size_t rep = emb.right_cosets()[k];
            for (std::size_t g = 0; g < rep; ++g)
                CHECK(emb.right_coset_of(g) != k);
        }
    }
    SUBCASE("generator outside the parent")
    {
        auto G = build_group("A4");
        CHECK_THROWS_AS(embed_subgroup(G, {Perm::from_cycles(4, {{0, 1}})}), InputError);
    }
}

TEST_CASE("core")
{
    auto whole = embed("S4", "S4");
    CHECK(core(whole)->order() == 24);

    auto s3s4 = embed("S4", "S3");
    CHECK(core(s3s4)->order() == 1);

    auto G = build_group(kF55);
    auto c11 = embed_subgroup(G, standard_generators(parse_group_spec("C11")));
    auto n = core(c11);
    CHECK(parent_indices(*G, *n) == parent_indices(*G, *c11.subgroup()));

    auto c5 = embed_subgroup(G, parse_group_spec(kC5InF55).generators);
    CHECK(c5.subgroup()->order() == 5);
    CHECK(core(c5)->order() == 1);
}

TEST_CASE("coset permutation character")
{
    auto whole = embed("S3", "S3");
    CHECK(coset_permutation_character(whole).integers() == std::vector<std::int64_t>{1, 1, 1});

    auto emb = embed("S4", "S3");
    const auto chi = coset_permutation_character(emb);
    const auto& G = *emb.parent();
    CHECK(chi.integer_value(class_with_cycle_type(G, {1, 1, 1, 1})) == 4);
    CHECK(chi.integer_value(class_with_cycle_type(G, {2, 1, 1})) == 2);
    CHECK(chi.integer_value(class_with_cycle_type(G, {3, 1})) == 1);
    CHECK(chi.integer_value(class_with_cycle_type(G, {2, 2})) == 0);
    CHECK(chi.integer_value(class_with_cycle_type(G, {4})) == 0);

    // Oracle: explicit coset sets.
    const auto gw = words(G);
    const auto uw = words(*emb.subgroup());
    for (std::size_t c = 0; c < G.num_classes(); ++c)
        CHECK(chi.integer_value(c) == oracle::fixed_right_cosets(gw, uw, gw[G.classes()[c].representative]));

    SUBCASE("S_n in S_(n+1) counts fixed points")
    {
        for (int n = 2; n <= 5; ++n) {
            auto e = embed("S" + std::to_string(n + 1), "S" + std::to_string(n));
            const auto ch = coset_permutation_character(e);
            for (std::size_t c = 0; c < e.parent()->num_classes(); ++c) {
                const auto type = e.parent()->element(e.parent()->classes()[c].representative).cycle_type();
                CHECK(ch.integer_value(c) == std::count(type.begin(), type.end(), 1u));
            }
        }
    }
}

TEST_CASE("adjoint character")
{
    CHECK(adjoint_character(build_group("C1")).integers() == std::vector<std::int64_t>{1});
    auto s3 = build_group("S3");
    const auto chi = adjoint_character(s3);
    const auto w = words(*s3);
    for (std::size_t c = 0; c < s3->num_classes(); ++c)
        CHECK(static_cast<std::size_t>(chi.integer_value(c)) ==
              oracle::centralizer_order(w, w[s3->classes()[c].representative]));
    std::vector<std::int64_t> sorted = chi.integers();
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<std::int64_t>{2, 3, 6});

    auto c12 = build_group("C12");
    const auto ad12 = adjoint_character(c12);
    for (auto v : ad12.integers())
        CHECK(v == 12);
}

TEST_CASE("action kernel")
{
    CHECK(action_kernel(embed("S4", "S4"))->order() == 24);
    CHECK(action_kernel(embed("S4", "S3"))->order() == 1);
    auto C4 = build_group("C4");
    auto c2 = embed_subgroup(C4, {C4->element(0) * C4->generators()[0] * C4->generators()[0]});
    CHECK(c2.subgroup()->order() == 2);
    auto k = action_kernel(c2);
    CHECK(parent_indices(*C4, *k) == parent_indices(*C4, *c2.subgroup()));
}

TEST_CASE("property: kernel equals core, core is normal inside U, coset character is transitive")
{
    std::mt19937_64 rng(20261018);
    for (const char* parent : {"S4", "S5", "A5", "D10", kF55}) {
        auto G = build_group(parent);
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<Perm> gens;
            const int ngens = 1 + static_cast<int>(rng() % 2);
            for (int i = 0; i < ngens; ++i)
                gens.push_back(G->element(rng() % G->order()));
            auto emb = embed_subgroup(G, gens);
            CAPTURE(parent);
            CAPTURE(emb.subgroup()->order());

            auto n = core(emb);
            auto k = action_kernel(emb);
            const auto nidx = parent_indices(*G, *n);
            CHECK(nidx == parent_indices(*G, *k));
            for (auto x : nidx) {
                CHECK(emb.in_subgroup(x));
                for (const auto& s : G->generators()) {
                    const auto si = *G->index_of(s);
                    CHECK(std::binary_search(nidx.begin(), nidx.end(),
                                             G->multiply(G->multiply(G->inverse(si), x), si)));
                }
            }

            const auto chi = coset_permutation_character(emb);
            CHECK(chi.integer_value(0) == static_cast<std::int64_t>(emb.index()));
            std::int64_t weighted = 0;
            for (std::size_t c = 0; c < G->num_classes(); ++c)
                weighted += static_cast<std::int64_t>(G->classes()[c].size) * chi.integer_value(c);
            CHECK(weighted == static_cast<std::int64_t>(G->order()));
            CHECK(is_normal(emb) == (n->order() == emb.subgroup()->order()));
        }
        const auto ad = adjoint_character(G);
        for (std::size_t c = 0; c < G->num_classes(); ++c)
            CHECK(ad.integer_value(c) * static_cast<std::int64_t>(G->classes()[c].size) ==
                  static_cast<std::int64_t>(G->order()));
    }
}
