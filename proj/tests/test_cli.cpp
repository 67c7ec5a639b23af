#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "mcg/cli.hpp"
#include "mcg/model.hpp"
#include "support.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = mcg::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string script(const char* name) { return mcgtest::source_path(std::string("scripts/") + name); }

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify exit codes") {
    CHECK(cli({"verify", script("thmA.mcg"), "--n", "17"}).code == 0);
    auto starved = cli({"verify", script("thmA.mcg"), "--n", "17", "--budget", "1"});
    CHECK(starved.code == 1);
    CHECK(starved.out.find("Unknown") != std::string::npos);
    CHECK(cli({"verify", "/nonexistent/x.mcg"}).code == 2);
    CHECK(cli({"verify", script("thmA.mcg"), "--window", "1"}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
  }

  TEST_CASE("a broken script is a usage error with a position") {
    auto p = temp_file("mcg_cli_bad.mcg", "MODEL sn\nPARAM n = 17\nLET F2 = CONJ(F9, R)\n");
    auto r = cli({"verify", p.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("3:15") != std::string::npos);
  }

  TEST_CASE("corrupted model file") {
    std::string text(mcg::builtin_model_text("sn"));
    text.replace(text.find("meet A[i,j] ~ B[i,j]"), 20, "meet A[i,j] ~~ B[i,j]");
    auto p = temp_file("mcg_cli_bad.model", text);
    auto r = cli({"selfcheck", "--model", p.string(), "--n", "16"});
    CHECK(r.code == 2);
    CHECK(std::regex_search(r.err, std::regex("[0-9]+:[0-9]+")));
  }

  TEST_CASE("selfcheck") {
    auto r = cli({"selfcheck", "--model", "jacob"});
    CHECK(r.code == 0);
    auto w = cli({"selfcheck", "--window", "1"});
    CHECK(w.code == 2);
    CHECK(w.err.find("below displacement bound") != std::string::npos);
  }

  TEST_CASE("shiftmap") {
    CHECK(cli({"shiftmap", "--check"}).code == 0);
    auto at = cli({"shiftmap", "--at", "0,3/4"});
    CHECK(at.code == 0);
    CHECK(at.out.find("(1/2, 3/4)") != std::string::npos);
    CHECK(cli({"shiftmap", "--at", "0,5/4"}).code == 2);
  }

  TEST_CASE("project and normalize") {
    auto p = cli({"project", "R^3 tau", "--n", "5"});
    CHECK(p.code == 0);
    CHECK(p.out.find("(1 5 3)(2 4)") != std::string::npos);
    CHECK(cli({"project", "tau1", "--model", "jacob"}).code == 2);
    auto n = cli({"normalize", "A[1,1] B[1,1] A[1,1] B~[1,1] A~[1,1] B~[1,1]", "--n", "5"});
    CHECK(n.code == 0);
    CHECK(n.out.find("1") != std::string::npos);
    CHECK(cli({"normalize", "A[0,1]", "--n", "5"}).code == 2);
  }

  TEST_CASE("json reports differ only in the timestamp") {
    auto strip = [](std::string s) { return std::regex_replace(s, std::regex("\"timestamp\": *\"[^\"]*\""), ""); };
    auto a = cli({"verify", script("thmC.mcg"), script("thmD.mcg"), "--format", "json"});
    auto b = cli({"verify", script("thmC.mcg"), script("thmD.mcg"), "--format", "json"});
    REQUIRE(a.code == 0);
    CHECK(a.out.find("\"timestamp\"") != std::string::npos);
    for (const char* field : {"\"statement\"", "\"verdict\"", "\"oracle\"", "\"budget_used\"", "\"witness\""})
      CHECK(a.out.find(field) != std::string::npos);
    CHECK(strip(a.out) == strip(b.out));
  }
}
