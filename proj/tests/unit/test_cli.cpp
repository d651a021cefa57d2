#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "schottky/bundled.hpp"
#include "schottky/cli.hpp"

namespace {

struct Outcome {
  int rc;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "schottky-zeta");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int rc = schottky::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bundled groups match data/groups") {
  for (const auto& name : schottky::bundled_group_names()) {
    std::ifstream in(std::string(SCHOTTKY_SOURCE_DIR) + "/data/groups/" + name + ".json");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == schottky::bundled_group_text(name));
  }
  CHECK(schottky::bundled_group_names().size() == 4);
}

TEST_CASE("classes") {
  Outcome o = cli({"classes", "--rank", "2", "--max-len", "3", "--count-only"});
  REQUIRE(o.rc == 0);
  auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["schema"] == "schottky-zeta/1");
  CHECK(doc["counts"] == nlohmann::json({4, 4, 8}));
  CHECK_FALSE(doc.contains("classes"));
  auto full = nlohmann::json::parse(cli({"classes", "--max-len", "2"}).out);
  CHECK(full["classes"].size() == 8);
}

TEST_CASE("malformed group JSON is an input error") {
  std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/schottky_bad_group.json";
  std::ofstream(path) << "{ \"rank\": 2, \"generators\": [ ";
  Outcome o = cli({"--group", path, "products", "--what", "f1"});
  CHECK(o.rc == 2);
  CHECK(o.err.find("ParseError") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("ratio on a complex group is a computation error") {
  Outcome o = cli({"--group", "bundled:B", "products", "--what", "ratio", "--k", "2", "--max-len", "4"});
  CHECK(o.rc == 1);
  CHECK(nlohmann::json::parse(o.out)["error"]["code"] == "NotRealGroup");
}

TEST_CASE("products and shell tables") {
  Outcome o = cli({"--group", "bundled:A1", "products", "--what", "fk", "--k", "2", "--max-len", "6"});
  REQUIRE(o.rc == 0);
  auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["result"]["max_len"] == 6);
  Outcome c = cli({"--group", "bundled:A1", "products", "--what", "f1", "--max-len", "4", "--csv"});
  REQUIRE(c.rc == 0);
  CHECK(c.out.rfind("length,", 0) == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 5);
}

TEST_CASE("invalid parameters") {
  CHECK(cli({"--precision", "32", "constants"}).rc == 2);
  CHECK(cli({"nonsense"}).rc == 2);
  CHECK(cli({"tate-check", "--z0", "1"}).rc == 2);
  CHECK(cli({"expand", "--g", "2", "--x-values", "3"}).rc == 2);
  CHECK(cli({"--group", "bundled:nope", "periods"}).rc == 2);
}

TEST_CASE("precision from the environment") {
  setenv("SCHOTTKY_PRECISION_BITS", "96", 1);
  auto doc = nlohmann::json::parse(cli({"constants"}).out);
  unsetenv("SCHOTTKY_PRECISION_BITS");
  CHECK(doc["precision_bits"] == 96);
  auto doc2 = nlohmann::json::parse(cli({"--precision", "200", "constants"}).out);
  CHECK(doc2["precision_bits"] == 200);
}

TEST_CASE("identical invocations give identical output") {
  for (std::vector<std::string> args : {std::vector<std::string>{"constants", "--g", "3"},
                                        {"--group", "bundled:B", "zeta", "--s", "2.5,0.5", "--max-len", "6"},
                                        {"expand", "--g", "2", "--x-values", "3", "--degree", "6", "--f1", "--mod-p", "2,3"},
                                        {"verify", "--suite", "1,2,3,10,11"}}) {
    Outcome a = cli(args), b = cli(args);
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::accept(a.out));
  }
}

TEST_CASE("expand a word") {
  Outcome o = cli({"expand", "--g", "2", "--x-values", "3", "--degree", "6", "--word", "1,-2"});
  REQUIRE(o.rc == 0);
  auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["divisible_by_word_monomial"] == true);
  CHECK(doc["series"].get<std::string>().find("y1*y2") != std::string::npos);
}
