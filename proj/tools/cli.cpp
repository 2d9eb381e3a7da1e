#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "depthlab/errors.hpp"
#include "depthlab/moritatower.hpp"
#include "depthlab/permgroup.hpp"
#include "depthlab/relcyclic.hpp"

namespace depthlab::cli {

using depthcore::BimoduleSide;
using depthcore::DepthFlavors;
using depthcore::DepthReport;
using depthcore::InclusionMatrix;

namespace {

Json optional_int(int v)
{
    return v == depthcore::kNotFound ? Json(nullptr) : Json(v);
}

Json flavors_json(const DepthFlavors& f)
{
    return {{"d_min", optional_int(f.d_min)},       {"d_odd", optional_int(f.d_odd)},
            {"d_even", optional_int(f.d_even)},     {"d_even_left", optional_int(f.d_even_left)},
            {"d_even_right", optional_int(f.d_even_right)}, {"d_h", optional_int(f.d_h)}};
}

Json matrix_json(const InclusionMatrix& m)
{
    return {{"rows", m.row_labels}, {"cols", m.col_labels}, {"entries", m.entries}};
}

Json verification_json(const std::vector<std::pair<std::string, bool>>& v)
{
    Json out = Json::object();
    for (const auto& [name, ok] : v)
        out[name] = ok;
    return out;
}

Json report_json(const DepthReport& r)
{
    return {{"pair", r.pair},
            {"group_order", r.group_order},
            {"subgroup_order", r.subgroup_order},
            {"index", r.index},
            {"normal", r.normal},
            {"prime", r.prime},
            {"matrix", matrix_json(r.matrix)},
            {"depth", flavors_json(r.flavors)},
            {"ell_QR", optional_int(r.ell_qr())},
            {"ell_QH", optional_int(r.ell_qh())},
            {"QR_supports", r.chain_r.supports},
            {"QH_supports", r.chain_h.supports},
            {"core_order", r.core_order},
            {"chi_Q_faithful", r.chi_q_faithful},
            {"chi_Q_multiplicities", r.chi_q_multiplicities},
            {"ord_Q", r.ord_q ? Json(*r.ord_q) : Json(nullptr)}};
}

void check_caps(const RunConfig& cfg)
{
    if (cfg.cap_order == 0 || cfg.cap_points == 0 || cfg.cap_ambient == 0)
        throw InputError("caps must be positive");
}

/// Writes to --out when given, else to the stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text)
{
    if (cfg.out.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream f(cfg.out);
    if (!f)
        throw InputError("cannot write '" + cfg.out + "'");
    f << text << '\n';
}

std::string dump(const Json& j)
{
    return j.dump(2);
}

void check_format(const RunConfig& cfg, bool dot_allowed)
{
    if (cfg.format != "json" && !(dot_allowed && cfg.format == "dot"))
        throw InputError("unsupported format '" + cfg.format + "'");
}

Expectation expectation_from(const Json& j)
{
    Expectation e;
    auto field = [&](const char* key, std::optional<int>& slot) {
        if (!j.contains(key))
            return;
        if (!j[key].is_number_integer())
            throw InputError(std::string("corpus: expected value '") + key + "' must be an integer");
        slot = j[key].get<int>();
    };
    field("d_min", e.d_min);
    field("d_h", e.d_h);
    field("ell_QR", e.ell_qr);
    field("ell_QH", e.ell_qh);
    for (const auto& [key, value] : j.items())
        if (key != "d_min" && key != "d_h" && key != "ell_QR" && key != "ell_QH")
            throw InputError("corpus: unknown expected value '" + key + "'");
    return e;
}

}  // namespace

// ---------------------------------------------------------------- corpus

std::vector<CorpusEntry> builtin_corpus(bool include_s5)
{
    const std::string chain = "symmetric chain: d_min = 2n-1, d_h = 2n+1";
    const std::string normal = "proper normal subgroup: d_min = 2, d_h = 3";
    std::vector<CorpusEntry> c = {
        {"S2 in S3", "S3", "S2", {3, 5, {}, 2}, chain},
        {"S3 in S4", "S4", "S3", {5, 7, 2, 3}, "reflected-graph example with both quotient chains"},
        {"S4 in S5", "S5", "S4", {7, 9, {}, 4}, chain},
        {"A3 in S3", "S3", "A3", {2, 3, 0, 1}, normal},
        {"A4 in S4", "S4", "A4", {2, 3, 0, 1}, normal},
        {"A5 in S5", "S5", "A5", {2, 3, 0, 1}, normal},
        {"C2 in S3", "S3", "C2", {3, 5, {}, 2}, chain},
        {"D8 in S4", "S4", "D8", {}, ""},
        {"C11 in C11:C5", "C11:C5@3", "C11", {2, 3, 0, 1}, normal},
        {"C5 in C11:C5", "C11:C5@3", "perm:(2 4 10 6 5)(3 7 8 11 9)", {}, ""},
        {"trivial in S4", "S4", "trivial", {1, 3, 0, 1}, "trivial subgroup: one simple module below"},
        {"S3 in S3", "S3", "S3", {1, 1, 0, 0}, "equal algebras"},
        {"C6 in C6", "C6", "C6", {1, 1, 0, 0}, "equal algebras"},
    };
    if (include_s5)
        c.insert(c.begin() + 3, CorpusEntry{"S5 in S6", "S6", "S5", {9, 11, {}, 5}, chain});
    return c;
}

std::vector<CorpusEntry> parse_corpus(const std::string& text)
{
    if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }))
        throw InputError("corpus file is empty");
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("corpus: ") + e.what());
    }
    if (!j.is_array())
        throw InputError("corpus: top level must be an array of entries");
    if (j.empty())
        throw InputError("corpus has no entries");
    std::vector<CorpusEntry> out;
    for (const auto& e : j) {
        if (!e.is_object())
            throw InputError("corpus: each entry must be an object");
        auto str = [&](const char* key, bool required) {
            if (!e.contains(key)) {
                if (required)
                    throw InputError(std::string("corpus: entry lacks '") + key + "'");
                return std::string();
            }
            if (!e[key].is_string())
                throw InputError(std::string("corpus: '") + key + "' must be a string");
            return e[key].get<std::string>();
        };
        CorpusEntry c;
        c.group = str("group", true);
        c.subgroup = str("subgroup", true);
        c.name = str("name", false);
        if (c.name.empty())
            c.name = c.subgroup + " in " + c.group;
        c.source = str("source", false);
        if (e.contains("expect")) {
            if (!e["expect"].is_object())
                throw InputError("corpus: 'expect' must be an object");
            c.expect = expectation_from(e["expect"]);
            if (c.source.empty())
                throw InputError("corpus: entry '" + c.name + "' has expected values without a source");
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open corpus file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

// ---------------------------------------------------------------- analysis

PairResult analyze(const std::string& group, const std::string& subgroup, const RunConfig& cfg,
                   const Expectation& expect)
{
    const auto G = permgroup::build_group(group, cfg.cap_order);
    const auto emb =
        permgroup::embed_subgroup(G, permgroup::standard_generators(permgroup::parse_group_spec(subgroup)),
                                  cfg.cap_order);
    PairResult res;
    res.report = depthcore::analyze_pair(emb, subgroup + " in " + group);
    auto& v = res.report.verification;

    const auto [tu, tg] = depthcore::pair_tables(emb);
    Json oracle = Json::array();
    for (int n = 1; n <= 2; ++n) {
        const std::uint64_t points = depthcore::fiber_points(emb, n);
        if (points > cfg.cap_points) {
            oracle.push_back({{"n", n}, {"points", points}, {"skipped", "point cap"}});
            continue;
        }
        for (auto side : {BimoduleSide::BB, BimoduleSide::BA, BimoduleSide::AB, BimoduleSide::AA}) {
            const auto brute = depthcore::brute_force_bimodule_oracle(emb, n, side, tu, tg, cfg.cap_points);
            const auto rule = depthcore::matrix_rule(res.report.matrix, n, side);
            const bool pattern = depthcore::BoolPattern::of(brute) == depthcore::BoolPattern::of(rule);
            oracle.push_back({{"n", n},
                              {"side", depthcore::to_string(side)},
                              {"points", points},
                              {"pattern_agrees", pattern},
                              {"multiplicities_agree", brute == rule}});
            v.emplace_back("oracle_n" + std::to_string(n) + "_" + depthcore::to_string(side), pattern);
        }
    }

    Json golden = Json::object();
    auto compare = [&](const char* key, const std::optional<int>& want, int got) {
        if (!want)
            return;
        golden[key] = {{"expected", *want}, {"actual", optional_int(got)}};
        v.emplace_back(std::string("expected_") + key, *want == got);
    };
    const auto& f = res.report.flavors;
    compare("d_min", expect.d_min, f.d_min);
    compare("d_h", expect.d_h, f.d_h);
    compare("ell_QR", expect.ell_qr, res.report.ell_qr());
    compare("ell_QH", expect.ell_qh, res.report.ell_qh());

    res.ok = res.report.all_verified();
    res.json = report_json(res.report);
    res.json["oracle"] = std::move(oracle);
    if (!golden.empty())
        res.json["expected"] = std::move(golden);
    res.json["verification"] = verification_json(v);
    res.json["verified"] = res.ok;
    return res;
}

Json meta(const RunConfig& cfg)
{
    return {{"tool", "depthlab"},
            {"version", DEPTHLAB_VERSION},
            {"command", cfg.command},
            {"seed", cfg.seed},
            {"caps", {{"order", cfg.cap_order}, {"points", cfg.cap_points}, {"ambient", cfg.cap_ambient}}}};
}

std::string to_dot(const InclusionMatrix& m, const std::string& name)
{
    std::ostringstream os;
    os << "graph \"" << name << "\" {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < m.rows(); ++i)
        os << "  r" << i << " [label=\"" << m.row_labels[i] << "\", shape=box];\n";
    for (std::size_t j = 0; j < m.cols(); ++j)
        os << "  c" << j << " [label=\"" << m.col_labels[j] << "\", shape=ellipse];\n";
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                os << "  r" << i << " -- c" << j << " [label=\"" << m(i, j) << "\"];\n";
    os << "}";
    return os.str();
}

// ---------------------------------------------------------------- commands

int cmd_depth(const RunConfig& cfg, std::ostream& out)
{
    check_format(cfg, true);
    check_caps(cfg);
    if (cfg.group.empty() || cfg.subgroup.empty())
        throw InputError("depth needs --group and --subgroup");
    const PairResult r = analyze(cfg.group, cfg.subgroup, cfg);
    if (cfg.format == "dot") {
        emit(cfg, out, to_dot(r.report.matrix, r.report.pair));
    } else {
        Json j = meta(cfg);
        j["report"] = r.json;
        emit(cfg, out, dump(j));
    }
    return r.ok ? kOk : kVerification;
}

int cmd_tower(const RunConfig& cfg, std::ostream& out)
{
    check_format(cfg, true);
    check_caps(cfg);
    if (cfg.group.empty() || cfg.subgroup.empty())
        throw InputError("tower needs --group and --subgroup");
    const PairResult r = analyze(cfg.group, cfg.subgroup, cfg);
    const auto tower = moritatower::tower_sequence(r.report.matrix, cfg.steps);
    const auto morita = moritatower::morita_invariance_check(r.report.matrix, 10, cfg.seed);
    bool ok = r.ok && morita.passed;

    if (cfg.format == "dot") {
        std::ostringstream os;
        os << "graph \"" << r.report.pair << " tower\" {\n";
        for (const auto& step : tower) {
            std::string body = to_dot(step.matrix, "level " + std::to_string(step.level));
            const std::string prefix = "L" + std::to_string(step.level) + "_";
            std::string renamed;
            std::istringstream lines(body.substr(body.find('\n') + 1));
            for (std::string line; std::getline(lines, line);) {
                if (line == "}" || line.find("rankdir") != std::string::npos)
                    continue;
                for (const char* node : {"  r", "  c", "-- r", "-- c"}) {
                    const std::string n(node);
                    if (auto p = line.find(n); p != std::string::npos)
                        line.insert(p + n.size() - 1, prefix);
                }
                renamed += "  " + line + "\n";
            }
            os << "  subgraph cluster_" << step.level << " {\n    label=\"level " << step.level << "\";\n"
               << renamed << "  }\n";
        }
        os << "}";
        emit(cfg, out, os.str());
        return ok ? kOk : kVerification;
    }

    Json levels = Json::array();
    for (const auto& step : tower) {
        ok = ok && step.report.all_verified();
        levels.push_back({{"level", step.level},
                          {"matrix", matrix_json(step.matrix)},
                          {"depth", flavors_json(step.report.flavors)},
                          {"verification", verification_json(step.report.verification)}});
    }
    Json j = meta(cfg);
    j["report"] = r.json;
    j["levels"] = std::move(levels);
    j["period_two"] = true;
    j["morita"] = {{"samples", morita.samples}, {"passed", morita.passed}};
    j["verified"] = ok;
    emit(cfg, out, dump(j));
    return ok ? kOk : kVerification;
}

int cmd_hc(const RunConfig& cfg, std::ostream& out)
{
    using namespace relcyclic;
    check_format(cfg, false);
    check_caps(cfg);
    if (cfg.algebra.empty())
        throw InputError("hc needs --algebra");
    if (cfg.degree > kMaxDegree - 1)
        throw InputError("--degree must be at most 3");
    if (cfg.m == 0)
        throw InputError("--m must be positive");

    AlgebraPair base;
    if (cfg.algebra == "builtin:field") {
        base.algebra = ground_field();
        base.sub = full_subalgebra(base.algebra);
    } else if (cfg.algebra == "builtin:dual") {
        base.algebra = dual_numbers();
        base.sub = scalar_subalgebra(base.algebra);
    } else if (cfg.algebra == "builtin:m2") {
        base.algebra = matrix_algebra(2);
        base.sub = full_subalgebra(base.algebra);
    } else {
        base = load_algebra_file(cfg.algebra);
    }
    const auto ext = matrix_extension(base.algebra, base.sub, cfg.m);
    const std::size_t top = cfg.degree + 1;
    const CyclicModule small(base.algebra, base.sub, top, cfg.cap_ambient);
    const CyclicModule big(ext.extended.algebra, ext.extended.sub, top, cfg.cap_ambient);

    const HCResult hs = relative_HC(small, cfg.degree);
    const HCResult hb = relative_HC(big, cfg.degree);
    const IdentityReport is = cyclic_identities_check(small);
    const IdentityReport ib = cyclic_identities_check(big);

    Json dennis = Json::array();
    for (std::size_t n = 0; n <= cfg.degree; ++n) {
        const DennisTrace tr = dennis_trace(ext, big, small, n);
        dennis.push_back({{"n", n}, {"rank", tr.rank}, {"dim", small.dim(n)}, {"bijective", tr.bijective}});
    }
    auto identities = [](const IdentityReport& r) {
        return Json{{"checked", r.checked}, {"failures", r.failures}, {"passed", r.passed()}};
    };
    const bool ok = hs.dims == hb.dims && is.passed() && ib.passed();

    Json j = meta(cfg);
    j["algebra"] = {{"dim", base.algebra.dim}, {"labels", base.algebra.labels}, {"sub_dim", base.sub.basis.size()}};
    j["m"] = cfg.m;
    j["degree"] = cfg.degree;
    j["HC"] = {{"base", hs.dims}, {"extended", hb.dims}, {"agree", hs.dims == hb.dims}};
    j["lambda_dims"] = {{"base", hs.lambda_dims}, {"extended", hb.lambda_dims}};
    j["identities"] = {{"base", identities(is)}, {"extended", identities(ib)}};
    j["dennis_trace"] = std::move(dennis);
    j["verified"] = ok;
    emit(cfg, out, dump(j));
    return ok ? kOk : kVerification;
}

int cmd_corpus(const RunConfig& cfg, std::ostream& out)
{
    check_format(cfg, false);
    check_caps(cfg);
    const auto entries = cfg.corpus.empty() ? builtin_corpus(cfg.include_s5) : load_corpus(cfg.corpus);

    struct Outcome {
        Json json;
        int code = kOk;
    };
    std::vector<Outcome> results(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next++) < entries.size();) {
            const auto& e = entries[i];
            Json head = {{"name", e.name}, {"group", e.group}, {"subgroup", e.subgroup}};
            if (!e.source.empty())
                head["source"] = e.source;
            try {
                PairResult r = analyze(e.group, e.subgroup, cfg, e.expect);
                head.update(r.json);
                results[i].code = r.ok ? kOk : kVerification;
            } catch (const InputError& ex) {
                head["error"] = ex.what();
                results[i].code = kInput;
            } catch (const ResourceError& ex) {
                head["error"] = ex.what();
                results[i].code = kResource;
            } catch (const Error& ex) {
                head["error"] = ex.what();
                results[i].code = kVerification;
            }
            head["ok"] = results[i].code == kOk;
            results[i].json = std::move(head);
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(entries.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    Json list = Json::array();
    std::size_t passed = 0;
    bool input = false, resource = false;
    for (auto& r : results) {
        passed += r.code == kOk;
        input = input || r.code == kInput;
        resource = resource || r.code == kResource;
        list.push_back(std::move(r.json));
    }
    Json j = meta(cfg);
    j["corpus"] = cfg.corpus.empty() ? Json("builtin") : Json(cfg.corpus);
    j["entries"] = std::move(list);
    j["summary"] = {{"entries", entries.size()}, {"passed", passed}, {"failed", entries.size() - passed}};
    emit(cfg, out, dump(j));
    if (input)
        return kInput;
    if (resource)
        return kResource;
    return passed == entries.size() ? kOk : kVerification;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (cfg.command == "depth")
            return cmd_depth(cfg, out);
        if (cfg.command == "tower")
            return cmd_tower(cfg, out);
        if (cfg.command == "hc")
            return cmd_hc(cfg, out);
        if (cfg.command == "corpus")
            return cmd_corpus(cfg, out);
        throw InputError("unknown command '" + cfg.command + "'");
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const PreconditionError& e) {
        err << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const ResourceError& e) {
        err << "resource cap: " << e.what() << '\n';
        return kResource;
    } catch (const Error& e) {
        err << "verification failure: " << e.what() << '\n';
        return kVerification;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Depth invariants of finite group algebra inclusions", "depthlab"};
    app.set_version_flag("--version", DEPTHLAB_VERSION);
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
        sub->add_option("--out", cfg.out, "Write the report to this path");
        sub->add_option("--cap-order", cfg.cap_order, "Largest group order enumerated");
        sub->add_option("--cap-points", cfg.cap_points, "Largest fiber product for the bimodule oracle");
        sub->add_option("--cap-ambient", cfg.cap_ambient, "Largest tensor ambient dimension");
        sub->add_option("--seed", cfg.seed, "Seed for relabeling samples");
    };
    auto pair = [&](CLI::App* sub) {
        sub->add_option("--group", cfg.group, "Parent group, e.g. S4, A5, D8, C11:C5@3, perm:(1 2 3)")->required();
        sub->add_option("--subgroup", cfg.subgroup, "Subgroup generators, same syntax")->required();
    };
    auto* depth = app.add_subcommand("depth", "Depth report for one subgroup pair");
    common(depth);
    pair(depth);
    auto* tower = app.add_subcommand("tower", "Depth along the reflected tower");
    common(tower);
    pair(tower);
    tower->add_option("--steps", cfg.steps, "Tower levels")->check(CLI::Range(1, moritatower::kMaxTowerSteps));
    auto* hc = app.add_subcommand("hc", "Relative cyclic homology and the Dennis trace");
    common(hc);
    hc->add_option("--algebra", cfg.algebra, "Algebra file, or builtin:field, builtin:dual, builtin:m2")
        ->required();
    hc->add_option("--degree", cfg.degree, "Top HC degree")->check(CLI::Range(0, 3));
    hc->add_option("--m", cfg.m, "Matrix size of the extension")->check(CLI::Range(1, 8));
    auto* corpus = app.add_subcommand("corpus", "Run every corpus pair");
    common(corpus);
    corpus->add_option("--corpus", cfg.corpus, "JSON corpus file instead of the built-in one");
    corpus->add_flag("--with-s5", cfg.include_s5, "Add S5 in S6 to the built-in corpus");
    corpus->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << DEPTHLAB_VERSION << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kInput;
    }
    for (auto* sub : {depth, tower, hc, corpus})
        if (sub->parsed())
            cfg.command = sub->get_name();
    return run(cfg, out, err);
}

}  // namespace depthlab::cli
