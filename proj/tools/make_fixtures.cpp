// Writes the fixture directory: semigroup tables, the MAG family and a few
// small graphs used by the command-line examples.

#include <iostream>

#include "smv/json_io.hpp"

using namespace smv;

namespace {

json simple_graph(const std::string& sg, int n, const std::vector<std::pair<int, int>>& edges, const std::string& d) {
  json vs = json::array(), es = json::array();
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  for (auto [a, b] : edges) es.push_back({{"u", "v" + std::to_string(a)}, {"v", "v" + std::to_string(b)}, {"d", d}});
  return {{"semigroup", sg}, {"vertices", vs}, {"edges", es}};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  namespace fs = std::filesystem;
  const fs::path dir = argv[1];
  fs::create_directories(dir / "graphs");
  try {
    for (std::string name : {"U1", "U2", "U3", "U4", "Z3", "Z4", "Z5", "SAUER", "DT1", "DT2", "DIV6", "DIV12", "DIV30",
                             "EX310"}) {
      auto S = builtin_fixture(name);
      write_json_file((dir / (name + ".json")).string(), semigroup_to_json(*S));
    }
    for (auto p : {MagicParams{3, 1, 3, 8, 0}, MagicParams{4, 1, 4, 10, 0}}) {
      p.M = magic_M_range(p.delta, p.C, p.K1, p.K2).front();
      auto ms = magic_semigroup(p);
      write_json_file((dir / (mag_name(p) + ".json")).string(), semigroup_to_json(ms.semigroup));
      write_json_file((dir / (mag_name(p) + "_family.json")).string(),
                      family_to_json(ms.semigroup, build_forbidden_family(p, 6).family));
    }
    auto g = [&](const std::string& f, const json& j) { write_json_file((dir / "graphs" / f).string(), j); };
    g("U2_bad_cycle.json", {{"semigroup", "U2"},
                            {"vertices", {"a", "b", "c", "d"}},
                            {"edges",
                             {{{"u", "a"}, {"v", "b"}, {"d", "2"}},
                              {{"u", "b"}, {"v", "c"}, {"d", "1"}},
                              {{"u", "c"}, {"v", "d"}, {"d", "1"}},
                              {{"u", "d"}, {"v", "a"}, {"d", "1"}}}}});
    g("U2_path.json", {{"semigroup", "U2"},
                       {"vertices", {"a", "b", "c"}},
                       {"edges", {{{"u", "a"}, {"v", "b"}, {"d", "1"}}, {{"u", "b"}, {"v", "c"}, {"d", "2"}}}}});
    g("edge.json", simple_graph("U1", 2, {{0, 1}}, "1"));
    g("vertex.json", simple_graph("U1", 1, {}, "1"));
    g("K3.json", simple_graph("U1", 3, {{0, 1}, {1, 2}, {0, 2}}, "1"));
    std::vector<std::pair<int, int>> k5;
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) k5.push_back({a, b});
    g("K5.json", simple_graph("U1", 5, k5, "1"));
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 0;
}
