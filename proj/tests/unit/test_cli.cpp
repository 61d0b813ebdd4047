#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "synthetic.hpp"
#include "woe/cli.hpp"
#include "woe/knowledge_base.hpp"
#include "worked_example.hpp"

using namespace woe;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("woe-cli-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name), std::ios::binary) << text;
    return file(name);
  }
};

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::size_t count(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (auto at = text.find(what); at != std::string::npos; at = text.find(what, at + 1)) ++n;
  return n;
}

struct Fixture {
  TempDir dir;
  std::string schema, data;
  Fixture() {
    testing::SyntheticSpec spec;
    spec.cases = 300;
    spec.categorical = 4;
    spec.continuous = 1;
    spec.informative = 2;
    spec.effect = 1.2;
    spec.missing_rate = 0.05;
    spec.seed = 21;
    Dataset d = testing::make_synthetic(spec);
    schema = dir.write("schema.json", render_schema(d.schema()));
    data = dir.write("data.csv", render_cases(d));
  }
  Result mine(const std::string& out, std::vector<std::string> extra = {}) {
    std::vector<std::string> args = {"mine", "--schema", schema, "--data", data, "--out", out};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  }
};

}  // namespace

TEST_CASE("mine writes a reproducible knowledge base") {
  Fixture f;
  Result r = f.mine(f.dir.file("a.json"));
  INFO(r.err);
  REQUIRE(r.status == 0);
  CHECK(r.out.find("# woe mine") != std::string::npos);
  CHECK(r.out.find("# min_support = 5") != std::string::npos);
  CHECK(r.out.find("significant rules: ") != std::string::npos);
  CHECK(r.out.find("prior: ") != std::string::npos);
  CHECK(fs::exists(f.dir.file("a.json")));

  REQUIRE(f.mine(f.dir.file("b.json"), {"--shards", "4"}).status == 0);
  CHECK(testing::read_text(f.dir.file("a.json")) == testing::read_text(f.dir.file("b.json")));
}

TEST_CASE("mine refuses single-class data") {
  TempDir dir;
  Schema s = parse_schema(R"([{"name": "pain", "kind": "categorical", "values": ["a", "b"]}])");
  std::string schema = dir.write("s.json", render_schema(s));
  std::string data = dir.write("d.csv", "pain,surgical_lesion\na,yes\nb,yes\n");
  Result r = run({"mine", "--schema", schema, "--data", data, "--out", dir.file("kb.json")});
  CHECK(r.status != 0);
  CHECK(r.err.find("degenerate hypothesis") != std::string::npos);
  CHECK_FALSE(fs::exists(dir.file("kb.json")));
}

TEST_CASE("predict prints the worked ledger") {
  TempDir dir;
  std::string kb = dir.write("kb.json", save_kb(testing::worked_kb()));
  std::string cases = testing::data_path("worked_case.csv");
  Result r = run({"predict", "--kb", kb, "--case", cases, "--compat-odds"});
  INFO(r.err);
  REQUIRE(r.status == 0);
  CHECK(r.out.find("# probability_mode = compat-odds") != std::string::npos);
  CHECK(r.out.find("0.530") != std::string::npos);
  CHECK(r.out.find("3.573") != std::string::npos);
  CHECK(r.out.find("4.103") != std::string::npos);
  CHECK(r.out.find("0.804") != std::string::npos);

  Result canonical = run({"predict", "--kb", kb, "--case", cases});
  CHECK(canonical.out.find("0.984") != std::string::npos);

  Result json = run({"predict", "--kb", kb, "--case", cases, "--json"});
  CHECK(json.status == 0);
  CHECK(json.out.front() == '[');
}

TEST_CASE("predict with no matching rules prints the prior") {
  TempDir dir;
  KnowledgeBase empty = testing::worked_kb();
  empty.rules.clear();
  std::string kb = dir.write("kb.json", save_kb(empty));
  Result r = run({"predict", "--kb", kb, "--case", testing::data_path("worked_case.csv")});
  CHECK(r.status == 0);
  CHECK(r.out.find("No matching evidence.") != std::string::npos);
}

TEST_CASE("predict fails on a missing or mismatched knowledge base") {
  TempDir dir;
  Result missing = run({"predict", "--kb", dir.file("nope.json"), "--case", testing::data_path("worked_case.csv")});
  CHECK(missing.status != 0);
  CHECK(missing.err.find("error:") != std::string::npos);

  std::string kb = dir.write("kb.json", save_kb(testing::worked_kb()));
  Schema other = parse_schema(R"([{"name": "pain", "kind": "categorical", "values": ["a", "b"]}])");
  std::string schema = dir.write("s.json", render_schema(other));
  Result mismatch = run({"predict", "--kb", kb, "--case", testing::data_path("worked_case.csv"), "--schema", schema});
  CHECK(mismatch.status != 0);
  CHECK(mismatch.err.find("digest") != std::string::npos);
}

TEST_CASE("evaluate prints both predictive-value rows") {
  TempDir dir;
  std::string kb = dir.write("kb.json", save_kb(testing::worked_kb()));
  Dataset worked = testing::worked_case();
  std::vector<Case> cases;
  for (int i = 0; i < 4; ++i) {
    Case c = worked[0];
    c.id = "h" + std::to_string(i);
    c.outcomes.surgical_lesion = i % 2 == 0;
    cases.push_back(c);
  }
  std::string data = dir.write("eval.csv", render_cases(Dataset(worked.schema(), cases)));
  std::string preds = dir.file("preds.csv");
  Result r = run({"evaluate", "--kb", kb, "--data", data, "--predictions", preds});
  INFO(r.err);
  REQUIRE(r.status == 0);
  CHECK(r.out.find("Comparison of Predictive Power (4 Cases)") != std::string::npos);
  CHECK(r.out.find("Negative Predictive Value") != std::string::npos);
  CHECK(r.out.find("Positive Predictive Value") != std::string::npos);
  CHECK(r.out.find("Weight of Evidence") != std::string::npos);
  CHECK(r.out.find("Logistic Regression") != std::string::npos);
  CHECK(count(testing::read_text(preds), "\n") == 5);

  for (auto& c : cases) c.outcomes.surgical_lesion.reset();
  std::string unlabeled = dir.write("none.csv", render_cases(Dataset(worked.schema(), cases)));
  Result none = run({"evaluate", "--kb", kb, "--data", unlabeled});
  CHECK(none.status != 0);
}

TEST_CASE("inspect lists the top rules and fuzzy profiles") {
  Fixture f;
  std::string kb = f.dir.file("kb.json");
  REQUIRE(f.mine(kb, {"--z-crit", "0.5"}).status == 0);
  REQUIRE(load_kb(testing::read_text(kb)).rules.size() >= 5);
  Result top = run({"inspect", "--kb", kb, "--top", "5"});
  REQUIRE(top.status == 0);
  auto table = top.out.substr(top.out.find("group\n") + 6);
  CHECK(count(table, "\n") == 5);

  Result fuzzy = run({"inspect", "--kb", kb, "--fuzzy", "num0:high", "--data", f.data});
  INFO(fuzzy.err);
  CHECK(fuzzy.status == 0);
  CHECK(fuzzy.out.find("zadeh_probability") != std::string::npos);

  CHECK(run({"inspect", "--kb", kb, "--fuzzy", "num0"}).status != 0);
}

TEST_CASE("usage errors exit nonzero") {
  CHECK(run({}).status != 0);
  CHECK(run({"mine"}).status != 0);
  CHECK(run({"predict", "--kb"}).status != 0);
  Result help = run({"--help"});
  CHECK(help.status == 0);
}
