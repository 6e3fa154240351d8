#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "structcode/cli.hpp"

using namespace structcode;

namespace {

const std::string data_dir = STRUCTCODE_DATA_DIR;

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    for (auto& a : args)
        if (auto p = a.find("{data}"); p != std::string::npos) a.replace(p, 6, data_dir);
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("structcode_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST(Cli, IsomorphicToItself) {
    const CliRun r = run({"iso", "--left", "{data}/k3.g", "--right", "{data}/k3.g"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, NotIsomorphicIsANegativeAnswer) {
    const CliRun r = run({"iso", "--left", "{data}/k2.g", "--right", "{data}/k3.g"});
    EXPECT_EQ(r.code, 1) << r.err;
}

TEST(Cli, EncodeThenDecodeIsIsomorphic) {
    const CliRun enc = run({"encode", "--structure", "{data}/fig1.st"});
    ASSERT_EQ(enc.code, 0) << enc.err;
    const std::string graph = temp_file("fig1.g", enc.out);
    const CliRun dec = run({"decode", "--graph", graph, "--sig", "R/3"});
    ASSERT_EQ(dec.code, 0) << dec.err;
    const FinStructure back = parse_structure(dec.out);
    const FinStructure original = parse_structure(cli_detail::read_file(data_dir + "/fig1.st"));
    EXPECT_TRUE(find_isomorphism(original, back));
}

TEST(Cli, SpoilerWinsK2K3InThreeRounds) {
    const CliRun r = run({"ef", "--left", "{data}/k2.g", "--right", "{data}/k3.g", "--rounds", "3"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("Spoiler"), std::string::npos) << r.out;
    const CliRun d = run({"ef", "--left", "{data}/k2.g", "--right", "{data}/k3.g", "--rounds", "2"});
    EXPECT_EQ(d.code, 0);
    EXPECT_NE(d.out.find("Duplicator"), std::string::npos) << d.out;
}

TEST(Cli, ParseErrorIsInputError) {
    const std::string bad = temp_file("bad.st", "sig R/2\nsize 2\nfact R 0\n");
    const CliRun r = run({"encode", "--structure", bad});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Cli, MissingFileIsInputError) {
    EXPECT_EQ(run({"encode", "--structure", "/nonexistent/file.st"}).code, 3);
}

TEST(Cli, UnknownFlagIsInputError) {
    EXPECT_EQ(run({"encode", "--no-such-flag"}).code, 3);
    EXPECT_EQ(run({}).code, 3);
}

TEST(Cli, BudgetExhaustion) {
    EXPECT_EQ(run({"--budget", "1", "iso", "--left", "{data}/k3.g", "--right", "{data}/k3.g"}).code, 2);
}

TEST(Cli, Deterministic) {
    const std::vector<std::string> args{"corpus", "--kind", "structure", "--size", "3", "--corpus-size", "4", "--seed", "9"};
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
}

TEST(Cli, DecodeFRecoversTheGraph) {
    const CliRun r = run({"decode-f", "--structure", "{data}/k3f.st"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse_graph(r.out), parse_graph(cli_detail::read_file(data_dir + "/k3.g")));
}

TEST(Cli, EveryTableEntryRuns) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : command_table()) {
        EXPECT_TRUE(seen.insert({e.module, e.operation}).second) << e.module << " " << e.operation;
        EXPECT_EQ(e.args.front(), e.subcommand);
        const CliRun r = run(e.args);
        EXPECT_TRUE(r.code == 0 || r.code == 1) << e.module << " " << e.operation << ": " << r.code << " " << r.err;
    }
    std::map<std::string, std::size_t> per_module;
    for (const auto& [m, op] : seen) ++per_module[m];
    EXPECT_EQ(per_module.size(), 9u);
}
