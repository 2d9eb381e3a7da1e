#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "depthlab/depthcore.hpp"

namespace depthlab::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInput = 1, kVerification = 2, kResource = 3 };

struct RunConfig {
    std::string command;
    std::string group;
    std::string subgroup;
    std::string format = "json";
    std::string out;
    std::size_t cap_order = 10'000;
    std::uint64_t cap_points = 1'000'000;
    std::size_t cap_ambient = 5'000;
    std::uint64_t seed = 1;
    int steps = 2;
    std::size_t degree = 2;
    std::size_t m = 2;
    std::string algebra;
    std::string corpus;
    bool include_s5 = false;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct Expectation {
    std::optional<int> d_min, d_h, ell_qr, ell_qh;
};

struct CorpusEntry {
    std::string name;
    std::string group;
    std::string subgroup;
    Expectation expect;
    std::string source;  // where the expected values come from
};

std::vector<CorpusEntry> builtin_corpus(bool include_s5);
/// JSON array of {name, group, subgroup, expect: {d_min, d_h, ell_QR, ell_QH}, source}.
std::vector<CorpusEntry> parse_corpus(const std::string& text);
std::vector<CorpusEntry> load_corpus(const std::string& path);

struct PairResult {
    depthcore::DepthReport report;
    Json json;
    bool ok = false;
};

/// Full analysis of one pair with the bimodule oracle for n <= 2 where within the point cap.
PairResult analyze(const std::string& group, const std::string& subgroup, const RunConfig& cfg,
                   const Expectation& expect = {});

Json meta(const RunConfig& cfg);
std::string to_dot(const depthcore::InclusionMatrix& m, const std::string& name);

int cmd_depth(const RunConfig& cfg, std::ostream& out);
int cmd_tower(const RunConfig& cfg, std::ostream& out);
int cmd_hc(const RunConfig& cfg, std::ostream& out);
int cmd_corpus(const RunConfig& cfg, std::ostream& out);

/// Dispatches on cfg.command and maps library errors to exit codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses arguments with CLI11 and runs; argv[0] is the program name.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace depthlab::cli
