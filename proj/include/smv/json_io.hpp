#pragma once
// JSON formats for semigroups, graphs, families, structures with ball
// vertices and convexly ordered spaces, plus the named fixture registry.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>

#include <json.hpp>

#include "classifier.hpp"
#include "convex.hpp"
#include "fixtures.hpp"
#include "magic.hpp"

namespace smv {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

// Field access with input errors instead of library exceptions.
inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + what + "' has the wrong type");
  }
}

// ---------------------------------------------------------------------------
// Semigroups.

inline json semigroup_to_json(const Semigroup& S) {
  const int n = S.size();
  json op = json::array(), le = json::array();
  for (int a = 0; a < n; ++a) {
    json r1 = json::array(), r2 = json::array();
    for (int b = 0; b < n; ++b) {
      r1.push_back(S.op(a, b));
      r2.push_back(S.leq(a, b));
    }
    op.push_back(r1);
    le.push_back(r2);
  }
  return {{"elements", S.names()}, {"oplus", op}, {"leq", le}};
}

inline Semigroup semigroup_from_json(const json& j) {
  auto names = as<std::vector<std::string>>(field(j, "elements"), "elements");
  auto op = as<std::vector<std::vector<int>>>(field(j, "oplus"), "oplus");
  auto le = as<std::vector<std::vector<bool>>>(field(j, "leq"), "leq");
  const size_t n = names.size();
  if (op.size() != n || le.size() != n) throw InputError("semigroup tables do not match element count");
  std::vector<int> opf;
  std::vector<char> lef;
  for (size_t a = 0; a < n; ++a) {
    if (op[a].size() != n || le[a].size() != n) throw InputError("semigroup tables must be square");
    for (size_t b = 0; b < n; ++b) {
      opf.push_back(op[a][b]);
      lef.push_back(le[a][b] ? 1 : 0);
    }
  }
  return Semigroup(names, opf, lef);
}

inline std::string fixture_dir() {
  if (const char* d = std::getenv("SMV_FIXTURES"); d && *d) return d;
#ifdef SMV_FIXTURE_DIR
  return SMV_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

// MAG(δ,K1,K2,C) with the least admissible M, or MAG(δ,K1,K2,C,M).
inline std::optional<MagicParams> parse_mag_name(const std::string& name) {
  static const std::regex re(R"(MAG[(_](\d+)[,_](\d+)[,_](\d+)[,_](\d+)(?:[,_](\d+))?\)?)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) return std::nullopt;
  MagicParams p{std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4]), 0};
  if (m[5].matched) {
    p.M = std::stoi(m[5]);
  } else {
    auto Ms = magic_M_range(p.delta, p.C, p.K1, p.K2);
    if (Ms.empty()) throw InputError("no admissible M for " + name);
    p.M = Ms.front();
  }
  return p;
}

inline std::string mag_name(const MagicParams& p) {
  return "MAG_" + std::to_string(p.delta) + "_" + std::to_string(p.K1) + "_" + std::to_string(p.K2) + "_" +
         std::to_string(p.C) + "_" + std::to_string(p.M);
}

// Built-in generators by fixture name.
inline std::optional<Semigroup> builtin_fixture(const std::string& name) {
  std::smatch m;
  static const std::regex num(R"((U|Z|DT|DIV)(\d+))");
  if (std::regex_match(name, m, num)) {
    const int k = std::stoi(m[2]);
    if (m[1] == "U") return make_U(k);
    if (m[1] == "Z") return make_Z(k);
    if (m[1] == "DT") return make_DT(k);
    return make_DIV(k);
  }
  if (name == "SAUER") return make_sauer_example();
  if (name == "EX310") return make_flat(3);
  if (auto p = parse_mag_name(name)) return magic_semigroup(*p).semigroup;
  return std::nullopt;
}

// A path to a semigroup file, a file in the fixture directory, or a built-in name.
inline Semigroup load_semigroup(const std::string& ref) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(ref)) return semigroup_from_json(read_json_file(ref));
  const fs::path in_dir = fs::path(fixture_dir()) / (ref + ".json");
  if (fs::is_regular_file(in_dir)) return semigroup_from_json(read_json_file(in_dir.string()));
  if (auto s = builtin_fixture(ref)) return *s;
  throw InputError("unknown semigroup '" + ref + "'");
}

inline Semigroup semigroup_from_ref(const json& j) {
  if (j.is_string()) return load_semigroup(j.get<std::string>());
  return semigroup_from_json(j);
}

inline int element_index(const Semigroup& S, const json& j) {
  if (j.is_number_integer()) {
    const int i = j.get<int>();
    if (i < 0 || i >= S.size()) throw InputError("element index out of range");
    return i;
  }
  auto nm = as<std::string>(j, "element");
  auto i = S.find(nm);
  if (!i) throw InputError("unknown element '" + nm + "'");
  return *i;
}

inline json element_names(const Semigroup& S, const std::vector<int>& xs) {
  json r = json::array();
  for (int x : xs) r.push_back(S.name(x));
  return r;
}

// ---------------------------------------------------------------------------
// Blocks.

inline json blocks_to_json(const Semigroup& S, const BlockLattice& L) {
  json bs = json::array();
  for (auto& b : L.blocks) bs.push_back({{"id", b.id}, {"members", element_names(S, b.members)}});
  json order = json::array();
  for (int a = 0; a < L.size(); ++a)
    for (int b = 0; b < L.size(); ++b)
      if (L.lt(a, b)) order.push_back({a, b});
  return {{"blocks", bs},
          {"order", order},
          {"meet_irreducible", L.meet_irreducibles},
          {"meet_reducible", L.meet_reducibles},
          {"lattice", L.is_lattice},
          {"distributive", L.is_distributive}};
}

inline int block_from_json(const BlockLattice& L, const json& j) {
  int b = -1;
  if (j.is_number_integer()) b = j.get<int>();
  else if (j.is_string()) {
    try {
      b = std::stoi(j.get<std::string>());
    } catch (const std::exception&) {
      throw InputError("block ids are integers");
    }
  } else {
    throw InputError("block ids are integers");
  }
  if (b < 0 || b >= L.size()) throw InputError("block id out of range");
  return b;
}

// ---------------------------------------------------------------------------
// Graphs and families.

inline json graph_to_json(const Graph& G, const json& semigroup_ref) {
  json edges = json::array();
  const Semigroup& S = G.semigroup();
  for (int u = 0; u < G.size(); ++u)
    for (int v = u + 1; v < G.size(); ++v)
      if (G.has_edge(u, v)) edges.push_back({{"u", G.name(u)}, {"v", G.name(v)}, {"d", S.name(G.label(u, v))}});
  return {{"semigroup", semigroup_ref}, {"vertices", G.names()}, {"edges", edges}};
}

inline json graph_to_json(const Graph& G) { return graph_to_json(G, semigroup_to_json(G.semigroup())); }

inline Graph graph_from_json(const json& j, SemigroupPtr S = nullptr) {
  if (!S) S = share(semigroup_from_ref(field(j, "semigroup")));
  auto names = as<std::vector<std::string>>(field(j, "vertices"), "vertices");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw InputError("duplicate vertex names");
  Graph G(S, names);
  if (j.contains("edges"))
    for (auto& e : j.at("edges")) {
      const int u = G.index(as<std::string>(field(e, "u"), "u"));
      const int v = G.index(as<std::string>(field(e, "v"), "v"));
      const int d = element_index(*S, field(e, "d"));
      if (G.has_edge(u, v) && G.label(u, v) != d) throw InputError("conflicting labels on one edge");
      G.set_edge(u, v, d);
    }
  return G;
}

inline json family_to_json(const Semigroup& S, const CycleFamily& F) {
  switch (F.kind) {
    case CycleFamily::Kind::OddPerimeterBelow:
      return {{"kind", "odd_perimeter_below"}, {"p", F.p}};
    case CycleFamily::Kind::All:
      return {{"kind", "all"}};
    case CycleFamily::Kind::Finite:
      break;
  }
  json cs = json::array();
  for (auto& c : F.cycles) cs.push_back(element_names(S, c));
  return {{"cycles", cs}};
}

inline CycleFamily family_from_json(const Semigroup& S, const json& j) {
  if (j.contains("kind")) {
    auto k = as<std::string>(j.at("kind"), "kind");
    if (k == "odd_perimeter_below") return CycleFamily::odd_perimeter_below(as<long long>(field(j, "p"), "p"));
    if (k == "all") return CycleFamily::all();
    if (k != "finite") throw InputError("unknown family kind '" + k + "'");
  }
  CycleFamily F;
  if (j.contains("cycles"))
    for (auto& c : j.at("cycles")) {
      std::vector<int> idx;
      for (auto& x : c) idx.push_back(element_index(S, x));
      F.add(idx);
    }
  return F;
}

// ---------------------------------------------------------------------------
// Structures with ball vertices.

inline json star_to_json(const StarStructure& A, const json& semigroup_ref) {
  const Semigroup& S = *A.S;
  auto nm = [&](int v) { return A.vertices.at(v).name; };
  json vs = json::array();
  for (auto& v : A.vertices) {
    json kind = v.block < 0 ? json("original") : json{{"ball", v.block}};
    vs.push_back({{"id", v.name}, {"kind", kind}});
  }
  json ds = json::array();
  for (auto& [uv, d] : A.dist) ds.push_back({{"u", nm(uv.first)}, {"v", nm(uv.second)}, {"d", S.name(d)}});
  json fB = json::array();
  for (auto& [k, b] : A.fB) fB.push_back({{"v", nm(k.first)}, {"block", k.second}, {"ball", nm(b)}});
  json fBB = json::array();
  for (auto& [k, b] : A.fBB) fBB.push_back({{"ball", nm(k.first)}, {"block", k.second}, {"up", nm(b)}});
  json rels = json::array();
  for (auto& r : A.rels) {
    json xs = json::array(), ys = json::array();
    for (int x : r.xs) xs.push_back(nm(x));
    for (int y : r.ys) ys.push_back(nm(y));
    rels.push_back({{"k", r.blocks.size()},
                    {"type", {{"blocks", r.blocks}, {"members", element_names(S, r.type)}}},
                    {"xs", xs},
                    {"ys", ys}});
  }
  json out = {{"semigroup", semigroup_ref}, {"vertices", vs}, {"distances", ds},
              {"fB", fB},                   {"fBB", fBB},     {"type_rels", rels}};
  if (!A.order.empty()) {
    json o = json::array();
    for (int v : A.order) o.push_back(nm(v));
    out["order"] = o;
  }
  return out;
}

inline json star_to_json(const StarStructure& A) { return star_to_json(A, semigroup_to_json(*A.S)); }

inline StarStructure star_from_json(const json& j, TypeOracle& oracle) {
  StarStructure A(oracle.semigroup_ptr(), oracle.lattice_ptr());
  const Semigroup& S = *A.S;
  const BlockLattice& L = *A.L;
  std::set<std::string> seen;
  for (auto& v : field(j, "vertices")) {
    auto id = as<std::string>(field(v, "id"), "id");
    if (!seen.insert(id).second) throw InputError("duplicate vertex id '" + id + "'");
    const json& k = field(v, "kind");
    if (k.is_string() && k.get<std::string>() == "original") A.add_original(id);
    else if (k.is_object() && k.contains("ball")) A.add_ball(id, block_from_json(L, k.at("ball")));
    else throw InputError("vertex kind must be \"original\" or {\"ball\": block}");
  }
  auto vid = [&](const json& x) { return A.index(as<std::string>(x, "vertex")); };
  if (j.contains("distances"))
    for (auto& d : j.at("distances")) A.set_distance(vid(field(d, "u")), vid(field(d, "v")), element_index(S, field(d, "d")));
  if (j.contains("fB"))
    for (auto& f : j.at("fB")) A.fB[{vid(field(f, "v")), block_from_json(L, field(f, "block"))}] = vid(field(f, "ball"));
  if (j.contains("fBB"))
    for (auto& f : j.at("fBB"))
      A.fBB[{vid(field(f, "ball")), block_from_json(L, field(f, "block"))}] = vid(field(f, "up"));
  if (j.contains("type_rels"))
    for (auto& r : j.at("type_rels")) {
      TypeRel t;
      const json& ty = field(r, "type");
      for (auto& b : field(ty, "blocks")) t.blocks.push_back(block_from_json(L, b));
      for (auto& m : field(ty, "members")) t.type.push_back(element_index(S, m));
      std::sort(t.type.begin(), t.type.end());
      for (auto& x : field(r, "xs")) t.xs.push_back(vid(x));
      for (auto& y : field(r, "ys")) t.ys.push_back(vid(y));
      if (r.contains("k") && as<size_t>(r.at("k"), "k") != t.blocks.size())
        throw InputError("type relation arity disagrees with its blocks");
      A.rels.insert(t);
    }
  if (j.contains("order"))
    for (auto& v : j.at("order")) A.order.push_back(vid(v));
  if (!A.order.empty() && static_cast<int>(A.order.size()) != A.size())
    throw InputError("order must list every vertex exactly once");
  return A;
}

// ---------------------------------------------------------------------------
// Convexly ordered spaces.

inline json convex_to_json(const ConvexOrderedSpace& X, const json& semigroup_ref) {
  json j = graph_to_json(X.space, semigroup_ref);
  json orders = json::object();
  for (auto& [b, pairs] : X.orders) {
    json ps = json::array();
    for (auto& [u, v] : pairs) ps.push_back({X.space.name(u), X.space.name(v)});
    orders[std::to_string(b)] = ps;
  }
  j["orders"] = orders;
  return j;
}

inline ConvexOrderedSpace convex_from_json(const json& j, const BlockLattice& L, SemigroupPtr S = nullptr) {
  ConvexOrderedSpace X(graph_from_json(j, std::move(S)));
  if (j.contains("orders"))
    for (auto& [key, ps] : j.at("orders").items()) {
      const int b = block_from_json(L, json(key));
      auto& set = X.orders[b];
      for (auto& p : ps) {
        if (!p.is_array() || p.size() != 2) throw InputError("order pairs are [u, v]");
        set.insert({X.space.index(as<std::string>(p[0], "u")), X.space.index(as<std::string>(p[1], "v"))});
      }
    }
  return X;
}

// ---------------------------------------------------------------------------
// Census catalog lines.

inline json catalog_entry_to_json(const TriangleIndex& T, const CatalogEntry& e) {
  json tris = json::array();
  for (auto& t : triangles_of(T, {T.labels(), e.mask})) tris.push_back(t);
  return {{"labels", T.labels()},
          {"mask", e.mask},
          {"triangles", tris},
          {"strong", e.strong},
          {"primitive", e.primitive},
          {"free_like", e.free_like},
          {"free_label", e.has_free_label}};
}

}  // namespace smv
