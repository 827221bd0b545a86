#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "strata/json_io.hpp"
#include "strata/types.hpp"
#include "support.hpp"

using namespace strata;
using testing_support::P;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char ch : s) q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return q + "'";
}

Run cli(const std::vector<std::string>& args) {
  std::string cmd = quote(STRATA_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

json cli_json(std::vector<std::string> args, int expected_code) {
  args.push_back("--format");
  args.push_back("json");
  Run r = cli(args);
  CHECK(r.code == expected_code);
  return json::parse(r.out);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("reduce: Ω cycles at level 0") {
    Run r = cli({"reduce", "--calculus", "cbv", "--level", "0", R"((\x.x x)(\x.x x))"});
    CHECK(r.code == 0);
    CHECK(r.out.find("outcome: cycle") != std::string::npos);
    json j = cli_json({"reduce", "--level", "0", R"((\x.x x)(\x.x x))"}, 0);
    CHECK(j.at("outcome") == "cycle");
  }

  TEST_CASE("genericity: two steps to the identity") {
    Run r = cli({"genericity", "--context", R"((\y.\x.x)(\z.@))", "--hole", R"((\x.x x)(\x.x x))", "--level",
                 "omega"});
    CHECK(r.code == 0);
    CHECK(r.out.find("i = 2") != std::string::npos);
    CHECK(r.out.find(R"(NF: \x0.x0)") != std::string::npos);
    json j = cli_json({"genericity", "--context", R"((\y.\x.x)(\z.@))", "--hole-term", R"((\x.x x)(\x.x x))",
                       "--probes", R"(x,\x.x,y z)"},
                      0);
    CHECK(j.at("i") == 2);
    CHECK(j.at("probes").size() == 3);
    CHECK(alpha_eq(parse(j.at("normal_form").get<std::string>()), terms::id()));

    Run pre = cli({"genericity", "--context", "@", "--hole", R"((\x.x x)(\x.x x))"});
    CHECK(pre.code == 1);
    CHECK(pre.out.find("precondition failed") != std::string::npos);

    Run surf = cli({"genericity", "--surface", "--context", "@ x", "--hole", R"((\x.x x)(\x.x x))"});
    CHECK(surf.code == 0);
    CHECK(surf.out.find("no claim") != std::string::npos);
  }

  TEST_CASE("eq: level 2 separates the pair") {
    Run r = cli({"eq", "--level", "2", R"((\x.x (\y.x)) z)", R"((\x.x (\z.z)) z)"});
    CHECK(r.code == 1);
    CHECK(r.out == "false\n");
    CHECK(cli({"eq", "--level", "1", R"((\x.x (\y.x)) z)", R"((\x.x (\z.z)) z)"}).code == 0);
  }

  TEST_CASE("meaning, approximant and nf-check") {
    CHECK(cli({"meaning", R"((\x.x x)(\x.x x))"}).code == 1);
    CHECK(cli({"meaning", R"(\x.(\x.x x)(\x.x x))"}).code == 0);
    CHECK(cli({"meaning", "-c", "cbn", R"(\x.(\x.x x)(\x.x x))"}).code == 1);
    CHECK(cli({"meaning", "--fuel", "3", R"((\x.x x x)(\x.x x x))"}).code == 2);

    json a = cli_json({"approximant", "--level", "1", R"(\x.x (\y.(\x.x)(\x.x)) (\z.(\x.x)((\x.x x)(\x.x x))))"}, 0);
    CHECK(alpha_eq(parse(a.at("approximant").get<std::string>()), P(R"(\x.x (\y.(\x.x)(\x.x)) (\z.bot))")));
    CHECK(a.at("bno") == true);

    json n = cli_json({"nf-check", "--level", "0", R"(\x.(\x.x x)(\x.x x))"}, 0);
    CHECK(n.at("class") == "no");
    CHECK(cli({"nf-check", R"((\x.x) y)"}).code == 1);
  }

  TEST_CASE("type-infer and type-check") {
    json j = cli_json({"type-infer", R"((\x.x)(\x.x))"}, 0);
    CHECK(j.at("result") == "typed");
    Derivation d = derivation_from_json(j.at("derivation"));
    CHECK(check_derivation(d).empty());
    CHECK(cli({"type-infer", R"((\x.x x)(\x.x x))"}).code == 1);

    const std::string path = "cli_test_derivation.json";
    {
      std::ofstream out(path);
      out << j.at("derivation").dump();
    }
    CHECK(cli({"type-check", path}).code == 0);
    json broken = j.at("derivation");
    broken["type"] = "zz";
    {
      std::ofstream out(path);
      out << broken.dump();
    }
    CHECK(cli({"type-check", path}).code == 1);
    {
      std::ofstream out(path);
      out << "{not json";
    }
    CHECK(cli({"type-check", path}).code == 3);
    std::remove(path.c_str());
  }

  TEST_CASE("judge verdict classes") {
    CHECK(cli({"judge", "--theory", "lambda", R"((\x.x x)(\x.x x))", R"((x x)[x\\x.x x])"}).code == 0);
    CHECK(cli({"judge", "--theory", "h", R"(\x.x)", R"(\x.\y.x y)"}).code == 1);
    CHECK(cli({"judge", "--theory", "hstar", R"(\x.x)", R"(\x.\y.x y)"}).code == 2);
    json j = cli_json({"judge", "--theory", "hstar", R"(\x.x)", R"((\x.x x)(\x.x x))"}, 1);
    CHECK(j.at("verdict") == "not-equal");
  }

  TEST_CASE("axioms") {
    json j = cli_json({"axioms", "--count", "40", "--seed", "5", "--max-size", "8"}, 0);
    CHECK(j.at("terms") == 40);
    CHECK(j.at("ok") == true);
  }

  TEST_CASE("usage errors exit 3") {
    CHECK(cli({}).code == 3);
    CHECK(cli({"frobnicate"}).code == 3);
    CHECK(cli({"reduce", R"(\x.)"}).code == 3);
    CHECK(cli({"reduce", "--calculus", "cbx", "x"}).code == 3);
    CHECK(cli({"judge", "--theory", "b", "x", "y"}).code == 3);
    CHECK(cli({"reduce", "--level", "many", "x"}).code == 3);
  }

  TEST_CASE("STRATA_FUEL overrides the default fuel") {
    std::string cmd = "STRATA_FUEL=3 " + quote(STRATA_CLI_PATH) + " meaning " + quote(R"((\x.x x x)(\x.x x x))") +
                      " >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(st) == 2);
  }
}
