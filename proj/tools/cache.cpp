#include "cache.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ffg/error.hpp"
#include "ffg/polyalg.hpp"

namespace ffg::cli {

using json = nlohmann::ordered_json;

namespace {

json lattice_json(const QLattice& L) {
  json rows = json::array();
  for (const QVec& r : L.hnf()) {
    json row = json::array();
    for (const Poly& c : r) row.push_back(format_poly(c));
    rows.push_back(row);
  }
  return json{{"den", format_poly(L.den())}, {"rows", rows}};
}

QLattice lattice_from(const QuatAlgebra& alg, const json& j) {
  const Field& f = alg.F();
  std::vector<QVec> rows;
  for (const auto& r : j.at("rows")) {
    require(r.size() == 4, "lattice row must have 4 entries");
    QVec v;
    for (int k = 0; k < 4; ++k) v[k] = parse_poly(r.at(k).get<std::string>(), f);
    rows.push_back(v);
  }
  require(rows.size() == 4, "lattice must have 4 rows");
  QLattice L = QLattice::from_rows(alg, rows, parse_poly(j.at("den").get<std::string>(), f));
  require(lattice_json(L) == j, "stored lattice is not in canonical form");
  return L;
}

}  // namespace

std::string serialize_class_system(const ClassSystem& sys) {
  const QuatAlgebra& alg = *sys.alg;
  json j;
  j["version"] = kCacheVersion;
  j["kind"] = "class_system";
  j["q"] = alg.F().order();
  j["P0"] = format_poly(alg.P0());
  j["delta"] = alg.delta();
  j["R"] = lattice_json(sys.R);
  json cls = json::array();
  for (const auto& c : sys.classes)
    cls.push_back(json{{"weight", c.weight}, {"ideal", lattice_json(c.ideal)}, {"order", lattice_json(c.order)}});
  j["classes"] = cls;
  return j.dump(1) + "\n";
}

ClassSystem deserialize_class_system(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("cache file is not valid JSON: ") + e.what());
  }
  try {
    require(j.at("version").get<int>() == kCacheVersion, "cache version mismatch");
    require(j.at("kind").get<std::string>() == "class_system", "cache file holds a different kind of data");
    const Field& f = Field::prime(j.at("q").get<std::uint32_t>());
    const QuatAlgebra& alg = QuatAlgebra::get(f, parse_poly(j.at("P0").get<std::string>(), f), j.at("delta").get<Elem>());
    ClassSystem sys;
    sys.alg = &alg;
    sys.R = lattice_from(alg, j.at("R"));
    require(sys.R == standard_maximal_order(alg), "cached base order differs from the standard maximal order");
    for (const auto& c : j.at("classes")) {
      IdealClass ic;
      ic.ideal = lattice_from(alg, c.at("ideal"));
      ic.order = lattice_from(alg, c.at("order"));
      ic.weight = c.at("weight").get<int>();
      require(ic.ideal.left_order_fast() == sys.R, "cached ideal is not a left R-ideal");
      require(ic.ideal.right_order_fast() == ic.order, "cached right order does not match its ideal");
      require(unit_weight(ic.order) == ic.weight, "cached weight does not match the unit group");
      sys.classes.push_back(std::move(ic));
    }
    require(sys.mass() == mass_formula(alg), "cached classes do not satisfy the mass formula");
    require(sys.n() == h_P0_formula(f.order(), alg.P0().deg()), "cached class count is wrong");
    for (int a = 0; a < sys.n(); ++a)
      for (int b = a + 1; b < sys.n(); ++b)
        require(!is_left_equivalent(sys.classes[a].ideal, sys.classes[b].ideal), "cached classes are not distinct");
    return sys;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("cache file is malformed: ") + e.what());
  }
}

bool cache_roundtrip(const ClassSystem& sys) {
  const std::string a = serialize_class_system(sys);
  const ClassSystem back = deserialize_class_system(a);
  if (serialize_class_system(back) != a || back.n() != sys.n()) return false;
  for (int i = 0; i < sys.n(); ++i)
    if (back.classes[i].ideal != sys.classes[i].ideal || back.classes[i].order != sys.classes[i].order ||
        back.classes[i].weight != sys.classes[i].weight)
      return false;
  return true;
}

std::string cache_file(const std::string& dir, const QuatAlgebra& alg) {
  std::ostringstream name;
  name << "classes_q" << alg.F().order() << "_P0_";
  for (int k = alg.P0().deg(); k >= 0; --k) name << alg.P0().coeff(k);
  name << "_d" << alg.delta() << ".json";
  return (std::filesystem::path(dir) / name.str()).string();
}

CachedSystem load_or_build(const QuatAlgebra& alg, const std::string& dir) {
  CachedSystem out;
  if (dir.empty()) {
    out.sys = class_enumeration(alg);
    return out;
  }
  const std::string path = cache_file(dir, alg);
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      ClassSystem s = deserialize_class_system(ss.str());
      if (s.alg == &alg) {
        out.sys = std::move(s);
        out.hit = true;
        return out;
      }
      out.warning = "cache file " + path + " belongs to a different algebra; rebuilding";
    } catch (const PreconditionError& e) {
      out.warning = "ignoring cache file " + path + ": " + e.what() + "; rebuilding";
    }
  }
  out.sys = class_enumeration(alg);
  std::filesystem::create_directories(dir);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    o << serialize_class_system(out.sys);
    if (!o) throw PreconditionError("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, path);
  return out;
}

}  // namespace ffg::cli
