#include "doctest.h"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "gsample/cli.hpp"
#include "gsample/oracle.hpp"
#include "gsample/stream_io.hpp"

using namespace gsample;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("gsample_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Query on the whole stream and on the merge of per-shard sketches.
void check_sharded(const Stream& s, const std::vector<std::string>& flags, int shards) {
  TempDir dir;
  write_stream_file(dir / "all.txt", s);
  std::vector<std::string> merge_args{"merge"};
  for (int i = 0; i < shards; ++i) {
    Stream part = s;
    part.updates.clear();
    for (std::size_t j = static_cast<std::size_t>(i); j < s.updates.size(); j += static_cast<std::size_t>(shards))
      part.updates.push_back(s.updates[j]);
    const auto name = dir / ("shard" + std::to_string(i));
    write_stream_file(name + ".txt", part);
    std::vector<std::string> a{"sketch", name + ".txt", "--out", name + ".gsk"};
    a.insert(a.end(), flags.begin(), flags.end());
    REQUIRE(cli(a).code == 0);
    merge_args.push_back(name + ".gsk");
  }
  merge_args.insert(merge_args.end(), {"--out", dir / "merged.gsk"});
  REQUIRE(cli(merge_args).code == 0);

  std::vector<std::string> whole{"sketch", dir / "all.txt", "--out", dir / "all.gsk"};
  whole.insert(whole.end(), flags.begin(), flags.end());
  REQUIRE(cli(whole).code == 0);
  CHECK(slurp(dir / "merged.gsk") == slurp(dir / "all.gsk"));

  std::vector<std::string> direct{"query", dir / "all.txt"};
  direct.insert(direct.end(), flags.begin(), flags.end());
  const auto a = cli(direct);
  const auto b = cli({"query", dir / "merged.gsk"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
}

}  // namespace

TEST_CASE("gen writes a parseable stream with known optima") {
  TempDir dir;
  const auto r = cli({"gen", "--family", "planted_matching", "--n", "80", "--k", "4", "--churn", "0.5", "--seed", "3",
                      "--out", dir / "s.txt"});
  REQUIRE(r.code == 0);
  const auto text = slurp(dir / "s.txt");
  CHECK(text.find("# known matching 4") != std::string::npos);
  const auto s = parse_stream_text(text);
  CHECK(s.n == 80);
  CHECK(oracle_solve(materialize(s), Problem::matching).size == 4);
}

TEST_CASE("sketch then query equals direct query") {
  TempDir dir;
  REQUIRE(cli({"gen", "--n", "200", "--k", "5", "--churn", "0.3", "--seed", "11", "--out", dir / "s.txt"}).code == 0);
  for (const std::string mode : {"exact-matching", "large-matching", "arboricity"}) {
    CAPTURE(mode);
    const std::vector<std::string> flags{"--mode", mode, "--k", "5", "--alpha", "2", "--seed", "4"};
    std::vector<std::string> a{"sketch", dir / "s.txt", "--out", dir / "s.gsk"};
    a.insert(a.end(), flags.begin(), flags.end());
    REQUIRE(cli(a).code == 0);
    std::vector<std::string> q{"query", dir / "s.txt"};
    q.insert(q.end(), flags.begin(), flags.end());
    const auto direct = cli(q);
    const auto via = cli({"query", dir / "s.gsk"});
    REQUIRE(direct.code == 0);
    CHECK(direct.out == via.out);
    const auto doc = nlohmann::json::parse(direct.out);
    CHECK(doc["schema"] == "gsample.result/1");
    CHECK(doc["mode"] == mode);
  }
}

TEST_CASE("sharded sketches merge to the whole-stream sketch") {
  GeneratorSpec g;
  g.n = 150;
  g.k = 4;
  g.churn = 0.4;
  g.seed = 21;
  const auto s = generate(g).stream;
  check_sharded(s, {"--mode", "exact-matching", "--k", "4"}, 2);
  check_sharded(s, {"--mode", "exact-matching", "--k", "4", "--cell-mode", "l0"}, 3);
  check_sharded(s, {"--mode", "large-matching", "--k", "4", "--alpha", "2"}, 4);
  check_sharded(s, {"--mode", "semi-streaming", "--r-const", "0.2"}, 2);
  check_sharded(s, {"--mode", "arboricity", "--nu", "2"}, 3);
  check_sharded(s, {"--mode", "contraction", "--k", "4", "--prop", "max_forest"}, 2);

  g.family = "planted_hitting_set";
  g.k = 2;
  g.d = 3;
  const auto h = generate(g).stream;
  check_sharded(h, {"--mode", "hitting-set", "--k", "2", "--d", "3"}, 2);

  g.family = "planted_matching";
  g.weights = 4;
  const auto w = generate(g).stream;
  check_sharded(w, {"--mode", "weighted-matching", "--k", "2"}, 2);
  check_sharded(w, {"--mode", "weighted-large", "--k", "2", "--w-max", "4", "--r-const", "0.2"}, 2);
}

TEST_CASE("oracle document") {
  TempDir dir;
  std::ofstream(dir / "s.txt") << "+ 0 1\n+ 1 2\n+ 2 3\n- 0 1\n+ 4 5\n";
  auto r = cli({"oracle", dir / "s.txt"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["value"] == 2);
  CHECK(doc["schema"] == "gsample.result/1");
  CHECK(doc["components"]["shallow"] == 3);
  CHECK(doc["certificate"]["size"] == 2);
  r = cli({"oracle", dir / "s.txt", "--problem", "vertex_cover"});
  CHECK(nlohmann::json::parse(r.out)["value"] == 2);
  CHECK(cli({"oracle", dir / "s.txt", "--problem", "nope"}).code != 0);
}

TEST_CASE("compare emits rates") {
  auto r = cli({"compare", "--mode", "exact-matching", "--k", "2", "--trials", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("matching_equal") != std::string::npos);
  r = cli({"compare", "--mode", "hitting-set", "--k", "2", "--d", "3", "--trials", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["per_trial"].size() == 3);
  CHECK(doc["rates"].contains("covers"));
}

TEST_CASE("errors exit nonzero with a diagnostic") {
  TempDir dir;
  std::ofstream(dir / "bad.txt") << "+ 1 2\n* 3 4\n";
  auto r = cli({"query", dir / "bad.txt"});
  CHECK(r.code != 0);
  CHECK(r.err.find("line 2") != std::string::npos);

  CHECK(cli({"query", dir / "missing.txt"}).code != 0);
  CHECK(cli({"sketch", dir / "bad.txt"}).code != 0);
  CHECK(cli({"frobnicate"}).code != 0);
  CHECK(cli({"query", dir / "bad.txt", "--mode", "nope"}).code != 0);

  std::ofstream(dir / "s.txt") << "n 10 arity 2 weighted 0\n+ 1 2\n";
  REQUIRE(cli({"sketch", dir / "s.txt", "--out", dir / "a.gsk", "--seed", "1"}).code == 0);
  REQUIRE(cli({"sketch", dir / "s.txt", "--out", dir / "b.gsk", "--seed", "2"}).code == 0);
  r = cli({"merge", dir / "a.gsk", dir / "b.gsk", "--out", dir / "c.gsk"});
  CHECK(r.code != 0);
  CHECK_FALSE(r.err.empty());

  std::ofstream(dir / "junk.gsk") << "GSMPxx";
  CHECK(cli({"query", dir / "junk.gsk"}).code != 0);
}

TEST_CASE("default seed from the environment") {
  ::setenv(kSeedEnv, "77", 1);
  CHECK(default_seed() == 77);
  TempDir dir;
  std::ofstream(dir / "s.txt") << "+ 1 2\n";
  const auto doc = nlohmann::json::parse(cli({"query", dir / "s.txt"}).out);
  CHECK(doc["params"]["seed"] == 77);
  ::setenv(kSeedEnv, "x", 1);
  CHECK(default_seed() == 1);
  ::unsetenv(kSeedEnv);
  CHECK(default_seed() == 1);
}
