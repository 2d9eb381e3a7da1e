#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "depthlab/charring.hpp"
#include "depthlab/moritatower.hpp"
#include "depthlab/permgroup.hpp"
#include "depthlab/relcyclic.hpp"

using namespace depthlab;
using cli::Json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> check;
};

Json run_cli(std::vector<std::string> args, int& code)
{
    args.insert(args.begin(), "depthlab");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str().empty() ? Json() : Json::parse(out.str());
}

std::string corpus_text(int& code)
{
    std::vector<const char*> argv{"depthlab", "corpus", "--seed", "1"};
    std::ostringstream out, err;
    code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

const Json& corpus()
{
    static const Json j = [] {
        int code = 0;
        return Json::parse(corpus_text(code));
    }();
    return j;
}

const Json* entry(const std::string& name)
{
    for (const auto& e : corpus()["entries"])
        if (e["name"] == name)
            return &e;
    return nullptr;
}

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (const auto& x : v)
        s += (s.empty() ? "" : ", ") + x;
    return s;
}

Outcome depth_s3_s4()
{
    int code = 0;
    const Json j = run_cli({"depth", "--group", "S4", "--subgroup", "S3"}, code);
    const int d = j["report"]["depth"]["d_min"].get<int>();
    return {code == 0 && d == 5, "d_min = " + std::to_string(d)};
}

Outcome reflected_depth()
{
    int code = 0;
    const Json j = run_cli({"tower", "--group", "S4", "--subgroup", "S3", "--steps", "2"}, code);
    const int d0 = j["levels"][0]["depth"]["d_min"].get<int>();
    const int d1 = j["levels"][1]["depth"]["d_min"].get<int>();
    return {code == 0 && d0 == 5 && d1 == 6, "levels " + std::to_string(d0) + ", " + std::to_string(d1)};
}

Outcome symmetric_h_depth()
{
    bool ok = true;
    std::vector<std::string> seen;
    for (int n = 2; n <= 4; ++n) {
        const Json* e = entry("S" + std::to_string(n) + " in S" + std::to_string(n + 1));
        const int dh = e ? (*e)["depth"]["d_h"].get<int>() : -1;
        ok = ok && dh == 2 * n + 1;
        seen.push_back("n=" + std::to_string(n) + ": " + std::to_string(dh));
    }
    return {ok, join(seen)};
}

Outcome quotient_is_trivial_plus_standard()
{
    bool ok = true;
    std::vector<std::string> seen;
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto G = permgroup::build_group("S" + std::to_string(n + 1));
        const auto emb = permgroup::embed_subgroup(
            G, permgroup::standard_generators(permgroup::parse_group_spec("S" + std::to_string(n))));
        const auto [tu, tg] = depthcore::pair_tables(emb);
        const PrimeField F = tg.field();
        // Standard character: fixed points on n+1 letters minus one.
        std::size_t standard = tg.size();
        for (std::size_t i = 0; i < tg.size(); ++i) {
            bool match = true;
            for (std::size_t c = 0; c < G->num_classes(); ++c) {
                const auto& g = G->element(G->classes()[c].representative);
                std::int64_t fixed = 0;
                for (std::size_t x = 0; x <= n; ++x)
                    fixed += g[x] == x;
                match = match && tg.irreducibles[i].residue(c, F) == F.reduce(fixed - 1);
            }
            if (match)
                standard = i;
        }
        const auto m = charring::decompose(permgroup::coset_permutation_character(emb), tg).coefficients;
        std::vector<std::uint64_t> want(tg.size(), 0);
        want[0] = 1;
        if (standard < tg.size())
            want[standard] = 1;
        ok = ok && standard < tg.size() && m == want;
        std::string v;
        for (auto x : m)
            v += std::to_string(x);
        seen.push_back("S" + std::to_string(n + 1) + ": " + v);
    }
    return {ok, join(seen)};
}

Outcome theorem_on_corpus()
{
    std::vector<std::string> bad;
    for (const auto& e : corpus()["entries"]) {
        const auto& d = e["depth"];
        const int ell_r = e["ell_QR"].get<int>(), ell_h = e["ell_QH"].get<int>();
        const int d_even = d["d_even"].get<int>(), d_h = d["d_h"].get<int>();
        const bool ok = d_even == 2 * ell_r + 2 && d_h == 2 * ell_h + 1 && 2 * ell_r + 1 < d_even &&
                        2 * ell_h + 1 <= d_h && e["verification"]["theorem_even_depth"] == true &&
                        e["verification"]["theorem_h_depth"] == true && e["verification"]["ineq1"] == true &&
                        e["verification"]["ineq2"] == true;
        if (!ok)
            bad.push_back(e["name"]);
    }
    return {bad.empty(), std::to_string(corpus()["entries"].size()) + " pairs" +
                             (bad.empty() ? "" : "; failing: " + join(bad))};
}

Outcome normality_law()
{
    std::vector<std::string> normal_bad, equal_bad;
    for (const auto& e : corpus()["entries"]) {
        const int d = e["depth"]["d_min"].get<int>();
        if ((d <= 2) != e["normal"].get<bool>())
            normal_bad.push_back(e["name"]);
        if ((d == 1) != (e["index"].get<std::size_t>() == 1))
            equal_bad.push_back(e["name"].get<std::string>() + " (d_min " + std::to_string(d) + ")");
    }
    std::string detail = "d_min<=2 iff normal: " + (normal_bad.empty() ? "holds" : "fails on " + join(normal_bad));
    detail += "; d_min=1 iff U=G: " + (equal_bad.empty() ? "holds" : "fails on " + join(equal_bad));
    return {normal_bad.empty() && equal_bad.empty(), detail};
}

Outcome oracle_agreement()
{
    std::size_t checked = 0;
    std::vector<std::string> bad;
    bool required_covered = true;
    for (const auto& e : corpus()["entries"]) {
        std::size_t here = 0;
        for (const auto& o : e["oracle"]) {
            if (o.contains("skipped"))
                continue;
            ++here;
            if (o["pattern_agrees"] != true)
                bad.push_back(e["name"].get<std::string>() + " n=" + std::to_string(o["n"].get<int>()) + " " +
                              o["side"].get<std::string>());
        }
        if ((e["name"] == "C2 in S3" || e["name"] == "S3 in S4") && here != 8)
            required_covered = false;
        checked += here;
    }
    return {bad.empty() && required_covered && checked > 0,
            std::to_string(checked) + " (pair, n, side) comparisons" + (bad.empty() ? "" : "; failing: " + join(bad))};
}

Outcome core_ideal()
{
    std::vector<std::string> bad;
    for (const auto& e : corpus()["entries"])
        if (e["verification"]["core_ideal"] != true)
            bad.push_back(e["name"]);
    return {bad.empty(), bad.empty() ? "kernel = core on every pair" : "failing: " + join(bad)};
}

Outcome frobenius()
{
    std::vector<std::string> seen;
    bool ok = true;
    for (auto [g, u, dim] : {std::tuple{"S3", "C2", std::size_t{18}}, std::tuple{"S4", "S3", std::size_t{96}}}) {
        const auto emb = permgroup::embed_subgroup(permgroup::build_group(g),
                                                   permgroup::standard_generators(permgroup::parse_group_spec(u)));
        const auto sys = moritatower::frobenius_system(emb);
        const auto ring = moritatower::e_multiplication_ring(sys);
        ok = ok && ring.dim == dim && ring.exhaustive && ring.triples_checked == dim * dim * dim;
        seen.push_back(std::string(u) + " in " + g + ": dim " + std::to_string(ring.dim) + ", " +
                       std::to_string(ring.triples_checked) + " triples");
    }
    return {ok, join(seen)};
}

Outcome cyclic_identities()
{
    using namespace relcyclic;
    const auto k = ground_field();
    const auto dual = dual_numbers();
    const auto m2 = matrix_algebra(2);
    std::size_t checked = 0;
    std::vector<std::string> bad;
    for (const auto& [name, r, s] : {std::tuple{"(k,k)", k, full_subalgebra(k)},
                                     std::tuple{"(k[x]/x^2,k)", dual, scalar_subalgebra(dual)},
                                     std::tuple{"(M2,M2)", m2, full_subalgebra(m2)}}) {
        const auto rep = cyclic_identities_check(cyclic_module(r, s, 3));
        checked += rep.checked;
        for (const auto& f : rep.failures)
            bad.push_back(std::string(name) + " " + f);
    }
    return {bad.empty(), std::to_string(checked) + " identities" + (bad.empty() ? "" : "; failing: " + join(bad))};
}

Outcome cyclic_homology()
{
    int c1 = 0, c2 = 0;
    const Json field = run_cli({"hc", "--algebra", "builtin:field", "--degree", "2", "--m", "2"}, c1);
    const Json dual = run_cli({"hc", "--algebra", "builtin:dual", "--degree", "1", "--m", "2"}, c2);
    bool dennis = true;
    for (const auto& d : dual["dennis_trace"])
        dennis = dennis && d["bijective"] == true;
    const bool ok = c1 == 0 && c2 == 0 && field["HC"]["base"] == Json({1, 0, 1}) &&
                    dual["HC"]["base"] == dual["HC"]["extended"] && dual["dennis_trace"].size() == 2 && dennis;
    return {ok, "HC(k) = " + field["HC"]["base"].dump() + ", dual " + dual["HC"]["base"].dump() + " vs M2 " +
                    dual["HC"]["extended"].dump() + ", Dennis trace bijective at n=0,1: " + (dennis ? "yes" : "no")};
}

Outcome determinism()
{
    int a = 0, b = 0;
    const std::string first = corpus_text(a);
    const std::string second = corpus_text(b);
    return {a == 0 && b == 0 && first == second, std::to_string(first.size()) + " bytes, identical: " +
                                                     (first == second ? "yes" : "no")};
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "depth of S3 in S4 is 5", 5, depth_s3_s4},
        {2, "reflected tower level has depth 6", 5, reflected_depth},
        {3, "h-depth of S_n in S_(n+1) is 2n+1 for n = 2..4", 60, symmetric_h_depth},
        {4, "chi_Q of S_n in S_(n+1) is trivial + standard", 10, quotient_is_trivial_plus_standard},
        {5, "chain-length equalities and inequalities on the corpus", 60, theorem_on_corpus},
        {6, "normality law: d_min <= 2 iff normal, d_min = 1 iff U = G", 60, normality_law},
        {7, "bimodule oracle patterns equal the matrix rule for n <= 2", 120, oracle_agreement},
        {8, "core ideal on the corpus", 60, core_ideal},
        {9, "Frobenius systems and E-multiplication rings", 30, frobenius},
        {10, "cyclic object identities", 60, cyclic_identities},
        {11, "cyclic homology and the Dennis trace", 120, cyclic_homology},
        {12, "byte-identical corpus reports", 120, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = o.pass && secs < c.limit_seconds;
        failed += !pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, c.limit_seconds);
        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << o.detail
                  << "] (" << timing << ")\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
