#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cache.hpp"
#include "cli.hpp"
#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"

using namespace ffg;

namespace {

const Field& F3() { return Field::prime(3); }

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ffg");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const ClassSystem& c7() {
  static const ClassSystem s = class_enumeration(QuatAlgebra::get(F3(), parse_poly("t^3-t-1", F3())));
  return s;
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() / ("ffg_test_" + tag);
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("cache roundtrip") {
  CHECK(cli::cache_roundtrip(c7()));
  const std::string text = cli::serialize_class_system(c7());
  const ClassSystem back = cli::deserialize_class_system(text);
  CHECK(back.alg == c7().alg);
  CHECK(back.R == c7().R);
  CHECK(back.weights() == c7().weights());
  CHECK(cli::serialize_class_system(back) == text);
}

TEST_CASE("cache rejects damaged or foreign content") {
  const std::string text = cli::serialize_class_system(c7());
  CHECK_THROWS_AS(cli::deserialize_class_system(text.substr(0, 100)), PreconditionError);
  auto j = nlohmann::ordered_json::parse(text);
  j["version"] = cli::kCacheVersion + 1;
  CHECK_THROWS_AS(cli::deserialize_class_system(j.dump()), PreconditionError);
  j = nlohmann::ordered_json::parse(text);
  j["classes"][1]["weight"] = 2;
  CHECK_THROWS_AS(cli::deserialize_class_system(j.dump()), PreconditionError);
  j = nlohmann::ordered_json::parse(text);
  j["classes"].erase(j["classes"].begin());
  CHECK_THROWS_AS(cli::deserialize_class_system(j.dump()), PreconditionError);
  j = nlohmann::ordered_json::parse(text);
  j["classes"][1]["order"] = j["classes"][2]["ideal"];
  CHECK_THROWS_AS(cli::deserialize_class_system(j.dump()), PreconditionError);
}

TEST_CASE("cache directory: miss, hit, rebuild") {
  const auto dir = temp_dir("cache");
  const QuatAlgebra& alg = *c7().alg;
  const auto a = cli::load_or_build(alg, dir.string());
  CHECK_FALSE(a.hit);
  CHECK(std::filesystem::exists(cli::cache_file(dir.string(), alg)));
  const auto b = cli::load_or_build(alg, dir.string());
  CHECK(b.hit);
  CHECK(b.warning.empty());
  CHECK(cli::serialize_class_system(b.sys) == cli::serialize_class_system(a.sys));
  {
    std::ofstream f(cli::cache_file(dir.string(), alg), std::ios::trunc);
    f << "{not json";
  }
  const auto c = cli::load_or_build(alg, dir.string());
  CHECK_FALSE(c.hit);
  CHECK_FALSE(c.warning.empty());
  CHECK(cli::load_or_build(alg, dir.string()).hit);
  std::filesystem::remove_all(dir);
}

TEST_CASE("classnum and quat classes") {
  const Result r = run_cli({"classnum", "--q", "3", "--D", "t^3+2*t+1"});
  CHECK(r.code == 0);
  CHECK(r.out == "7\n");
  const Result s = run_cli({"quat", "classes", "--q", "3", "--P0", "t^3-t-1"});
  CHECK(s.code == 0);
  CHECK(s.out == "n=4\nweights=4,1,1,1\nmass=13/4\n");
}

TEST_CASE("drinfeld ss through the run prefix") {
  const Result r = run_cli({"run", "drinfeld", "ss", "--q", "3", "--P0", "t^3-t-1", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == cli::kSchemaVersion);
  CHECK(j["command"] == "drinfeld ss");
  CHECK(j["result"]["count"] == 4);
  CHECK(j["result"]["mass"] == "13/4");
  CHECK(j["result"]["j"].size() == 4);
  const Result csv = run_cli({"drinfeld", "ss", "--P0", "t^3-t-1", "--format", "csv"});
  CHECK(csv.out.rfind("j,weight\n0,4\n", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"quat", "classes", "--P0", "t^4+2"}).code == 2);         // even degree
  CHECK(run_cli({"classnum", "--D", "t^3+"}).code == 2);                  // parse error
  CHECK(run_cli({"classnum", "--q", "9", "--D", "t"}).code == 2);         // q not prime
  CHECK(run_cli({"gross", "--P0", "t^3-t-1", "--D", "t"}).code == 2);     // P0 splits
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("CSV exports") {
  const Result b = run_cli({"brandt", "--P0", "t^3-t-1", "--deg-max", "1"});
  REQUIRE(b.code == 0);
  std::istringstream in(b.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "T,i,j,B");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3 * 16);
  const Result e = run_cli({"equidist", "--P0", "t^3-t-1", "--deg-max", "3"});
  REQUIRE(e.code == 0);
  CHECK(e.out.rfind("q,P_0,D,degD,hD,n,N_1,N_2,N_3,N_4,m_1,m_2,m_3,m_4,discrepancy,envelope,runtime_ms\n", 0) == 0);
}

TEST_CASE("gross and rankin") {
  const Result g = run_cli({"gross", "--P0", "t^3-t-1", "--D", "t^3+2*t+1", "--format", "json"});
  REQUIRE(g.code == 0);
  const auto j = nlohmann::json::parse(g.out);
  int total = 0;
  for (int m : j["result"]["m"]) total += m;
  CHECK(total == 14);
  CHECK(j["result"]["spectral_residual"].get<double>() < 1e-8);

  const Result r = run_cli({"rankin", "--P0", "t^3+2*t+1", "--D", "t", "--deg-max", "6"});
  REQUIRE(r.code == 0);
  const auto k = nlohmann::json::parse(r.out);
  REQUIRE(k["result"]["rows"].size() == 3);
  for (const auto& row : k["result"]["rows"]) {
    CHECK(row["m"] == 3);
    CHECK(row["coefficients"].size() == 4);
    CHECK(row["lindelof_lhs"].get<double>() <= row["lindelof_rhs"].get<double>());
  }
  // too small a cap to see the tail
  CHECK(run_cli({"rankin", "--P0", "t^3+2*t+1", "--D", "t", "--deg-min", "2", "--deg-max", "3"}).code == 2);
}
