// smv: command-line front end over the JSON formats.
//
// Exit codes: 0 success or property holds, 1 property fails (witness on
// stdout), 2 input error, 3 resource limit, 4 internal error.

#include <CLI11.hpp>
#include <iostream>
#include <random>
#include <sstream>

#include "smv/json_io.hpp"

using namespace smv;

namespace {

struct Output {
  bool human = false;
  std::string path;

  void emit(const json& j) const {
    std::ostringstream s;
    if (human) render(s, j, 0);
    else s << j.dump(2) << '\n';
    if (path.empty()) {
      std::cout << s.str();
    } else {
      std::ofstream out(path);
      if (!out) throw InputError("cannot write '" + path + "'");
      out << s.str();
    }
  }

  static void render(std::ostream& o, const json& j, int depth) {
    const std::string pad(2 * depth, ' ');
    if (j.is_object()) {
      for (auto& [k, v] : j.items()) {
        if (v.is_structured() && !flat(v)) {
          o << pad << k << ":\n";
          render(o, v, depth + 1);
        } else {
          o << pad << k << ": " << inline_text(v) << '\n';
        }
      }
    } else if (j.is_array() && !flat(j)) {
      for (auto& v : j) {
        if (v.is_structured() && !flat(v)) {
          o << pad << "-\n";
          render(o, v, depth + 1);
        } else {
          o << pad << "- " << inline_text(v) << '\n';
        }
      }
    } else {
      o << pad << inline_text(j) << '\n';
    }
  }
  static bool flat(const json& j) {
    if (!j.is_array()) return !j.is_object();
    for (auto& v : j)
      if (v.is_object() || (v.is_array() && !flat(v))) return false;
    return true;
  }
  static std::string inline_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array()) {
      std::string s = "(";
      for (size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + inline_text(j[i]);
      return s + ")";
    }
    return j.dump();
  }
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<int> vertex_list(const Graph& G, const std::string& s) {
  std::vector<int> out;
  for (auto& nm : split(s)) out.push_back(G.index(nm));
  return out;
}

json vertex_names(const Graph& G, const std::vector<int>& vs) {
  json r = json::array();
  for (int v : vs) r.push_back(G.name(v));
  return r;
}

CycleFamily load_family(const Semigroup& S, const std::string& path) {
  if (path.empty()) return {};
  return family_from_json(S, read_json_file(path));
}

json graph_semigroup_ref(const json& j) { return j.contains("semigroup") ? j.at("semigroup") : json(); }

json nonmetric_witness(const Graph& G, const CycleWitness& w) {
  const Semigroup& S = G.semigroup();
  json out{{"vertices", vertex_names(G, w.vertices)}, {"cycle", element_names(S, w.labels)}};
  // the offending edge against the first path edge and the rest of the path
  if (w.labels.size() >= 3) {
    int rest = -1;
    for (size_t i = 1; i + 1 < w.labels.size(); ++i) rest = rest < 0 ? w.labels[i] : S.op(rest, w.labels[i]);
    out["triangle"] = element_names(S, {w.labels.back(), w.labels[0], rest});
  }
  return out;
}

BoundedCheckConfig bounded_options(CLI::App* sub, BoundedCheckConfig& cfg) {
  sub->add_option("--max-cycle-len", cfg.max_cycle_len, "longest family cycle examined");
  sub->add_option("--max-path-len", cfg.max_path_len, "longest path examined");
  sub->add_option("--max-family-size", cfg.max_family_size, "largest path family examined");
  sub->add_option("--max-space-vertices", cfg.max_space_vertices, "largest test space");
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"Semigroup-valued metric spaces: blocks, completions, expansions and classes"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--human", out.human, "render tables instead of JSON");
  app.add_option("-o,--output", out.path, "write data here instead of stdout");
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0: all cores)");
  unsigned seed = 1;
  app.add_option("--seed", seed, "seed for randomized suites");
  int code = 0;

  // verify-semigroup --------------------------------------------------------
  std::string sg_ref;
  auto* verify = app.add_subcommand("verify-semigroup", "check the semigroup axioms");
  verify->add_option("semigroup", sg_ref, "file, fixture name or built-in")->required();
  verify->callback([&] {
    auto S = load_semigroup(sg_ref);
    json vs = json::array();
    for (auto& v : verify_semigroup(S)) vs.push_back({{"axiom", v.axiom}, {"witness", element_names(S, v.witness)}});
    out.emit({{"valid", vs.empty()}, {"violations", vs}});
    code = vs.empty() ? 0 : 1;
  });

  // blocks ------------------------------------------------------------------
  auto* blocks = app.add_subcommand("blocks", "block lattice of a semigroup");
  blocks->add_option("semigroup", sg_ref, "file, fixture name or built-in")->required();
  blocks->callback([&] {
    auto S = load_semigroup(sg_ref);
    require_valid(S);
    auto j = blocks_to_json(S, compute_blocks(S));
    j["archimedean"] = is_archimedean(S).archimedean;
    out.emit(j);
  });

  // complete ----------------------------------------------------------------
  std::string graph_path, family_path;
  auto* complete = app.add_subcommand("complete", "shortest path completion");
  complete->add_option("graph", graph_path)->required();
  complete->add_option("--family", family_path, "forbidden cycles");
  complete->callback([&] {
    auto j = read_json_file(graph_path);
    Graph G = graph_from_json(j);
    auto F = load_family(G.semigroup(), family_path);
    try {
      out.emit(graph_to_json(shortest_path_completion(G, F), graph_semigroup_ref(j)));
    } catch (const NonMetricInput& e) {
      out.emit({{"completion", nullptr}, {"reason", "non-metric cycle"}, {"witness", nonmetric_witness(G, e.witness)}});
      code = 1;
    } catch (const ForbViolationInput& e) {
      out.emit({{"completion", nullptr},
                {"reason", "forbidden cycle"},
                {"witness", {{"cycle", element_names(G.semigroup(), e.cycle)}, {"image", vertex_names(G, e.image)}}}});
      code = 1;
    } catch (const UndefinedInfimum& e) {
      json paths = json::array();
      for (auto& p : e.paths) paths.push_back(vertex_names(G, p));
      out.emit({{"completion", nullptr},
                {"reason", "undefined infimum"},
                {"witness", {{"u", G.name(e.u)}, {"v", G.name(e.v)}, {"paths", paths}}}});
      code = 1;
    }
  });

  // amalgamate --------------------------------------------------------------
  std::string b1_path, b2_path, a_path, emb1, emb2;
  auto* amalg = app.add_subcommand("amalgamate", "strong amalgam of two metric spaces over a shared one");
  amalg->add_option("B1", b1_path)->required();
  amalg->add_option("B2", b2_path)->required();
  amalg->add_option("A", a_path)->required();
  amalg->add_option("--emb1", emb1, "images in B1 of A's vertices, comma separated")->required();
  amalg->add_option("--emb2", emb2, "images in B2 of A's vertices, comma separated")->required();
  amalg->add_option("--family", family_path);
  amalg->callback([&] {
    auto j1 = read_json_file(b1_path);
    Graph B1 = graph_from_json(j1);
    Graph B2 = graph_from_json(read_json_file(b2_path), B1.semigroup_ptr());
    Graph A = graph_from_json(read_json_file(a_path), B1.semigroup_ptr());
    auto F = load_family(B1.semigroup(), family_path);
    auto am = strong_amalgam(B1, B2, A, vertex_list(B1, emb1), vertex_list(B2, emb2), F);
    out.emit({{"amalgam", graph_to_json(am.graph, graph_semigroup_ref(j1))},
              {"map1", vertex_names(am.graph, am.map1)},
              {"map2", vertex_names(am.graph, am.map2)}});
  });

  // forb-check --------------------------------------------------------------
  int forb_len = 8;
  auto* forb = app.add_subcommand("forb-check", "homomorphic images of forbidden cycles");
  forb->add_option("graph", graph_path)->required();
  forb->add_option("family", family_path)->required();
  forb->add_option("--max-len", forb_len, "closed-walk bound for parametric families");
  forb->callback([&] {
    Graph G = graph_from_json(read_json_file(graph_path));
    auto F = load_family(G.semigroup(), family_path);
    auto r = check_forb(G, F, forb_len);
    json j{{"omits", r.omits}};
    if (!r.omits) j["witness"] = {{"cycle", element_names(G.semigroup(), r.cycle)}, {"image", vertex_names(G, r.image)}};
    out.emit(j);
    code = r.omits ? 0 : 1;
  });

  // family-check ------------------------------------------------------------
  std::string property = "omissible", labels_csv;
  BoundedCheckConfig fcfg;
  auto* fam = app.add_subcommand("family-check", "omissible, disobedient, meet-sync or confined");
  fam->add_option("semigroup", sg_ref)->required();
  fam->add_option("family", family_path)->required();
  fam->add_option("--property", property)->check(CLI::IsMember({"omissible", "disobedient", "meet-sync", "confined"}));
  fam->add_option("--labels", labels_csv, "label subset for confined, comma separated");
  bounded_options(fam, fcfg);
  fam->callback([&] {
    auto Sp = share(load_semigroup(sg_ref));
    const Semigroup& S = *Sp;
    require_valid(S);
    auto F = load_family(S, family_path);
    std::function<json(const FamilyReport&)> report = [&](const FamilyReport& r) {
      json w = json::array();
      for (auto& c : r.witness) w.push_back(element_names(S, c));
      json parts = json::array();
      for (auto& p : r.parts) parts.push_back(report(p));
      return json{{"property", r.property}, {"verdict", verdict_name(r.verdict)}, {"detail", r.detail},
                  {"witness", w}, {"parts", parts}};
    };
    if (property == "omissible") {
      auto r = check_omissible(S, F, fcfg);
      out.emit(report(r));
      code = r.ok() ? 0 : 1;
    } else if (property == "meet-sync") {
      auto r = check_meet_sync(Sp, F, fcfg);
      out.emit(report(r));
      code = r.ok() ? 0 : 1;
    } else if (property == "disobedient") {
      json cs = json::array();
      for (auto& w : find_disobedient_configurations(Sp, F, fcfg))
        cs.push_back({{"kind", w.kind}, {"cycle", element_names(S, w.cycle)}});
      out.emit({{"disobedient", cs}});
      code = cs.empty() ? 0 : 1;
    } else {
      std::vector<int> labels;
      for (auto& nm : split(labels_csv)) labels.push_back(element_index(S, json(nm)));
      auto r = is_confined(S, F, labels);
      out.emit({{"confined", r.confined}, {"count", r.count}, {"divergent", r.divergent}});
      code = r.confined ? 0 : 1;
    }
  });

  // lift --------------------------------------------------------------------
  auto* lift = app.add_subcommand("lift", "lift a complete metric space to its ball expansion");
  lift->add_option("graph", graph_path)->required();
  lift->add_option("--family", family_path);
  lift->callback([&] {
    auto j = read_json_file(graph_path);
    Graph G = graph_from_json(j);
    TypeOracle oracle(G.semigroup_ptr(), load_family(G.semigroup(), family_path));
    out.emit(star_to_json(lift_star(G, oracle), graph_semigroup_ref(j)));
  });

  // complete-star -----------------------------------------------------------
  std::string star_path;
  CompleteStarOptions sopt;
  auto* cstar = app.add_subcommand("complete-star", "complete a structure with ball vertices");
  cstar->add_option("structure", star_path)->required();
  cstar->add_option("--family", family_path);
  cstar->add_option("--star-cycle-len", sopt.star_cycle_len);
  cstar->callback([&] {
    auto j = read_json_file(star_path);
    auto Sp = share(semigroup_from_ref(field(j, "semigroup")));
    TypeOracle oracle(Sp, load_family(*Sp, family_path));
    auto A = star_from_json(j, oracle);
    try {
      auto r = complete_star(A, oracle, sopt);
      json emb = json::array();
      for (int v : r.embedding) emb.push_back(r.result.vertices[v].name);
      out.emit({{"completion", star_to_json(r.result, j.at("semigroup"))}, {"embedding", emb}});
    } catch (const StarCycleFound& e) {
      json vs = json::array(), opts = json::array();
      for (int v : e.witness.vertices) vs.push_back(A.vertices[v].name);
      for (auto& o : e.witness.options) opts.push_back(element_names(*Sp, o));
      out.emit({{"completion", nullptr}, {"reason", e.what()}, {"witness", {{"vertices", vs}, {"options", opts}}}});
      code = 1;
    }
  });

  // convex-validate ---------------------------------------------------------
  std::string convex_path;
  auto* cval = app.add_subcommand("convex-validate", "check that ball orders are convex");
  cval->add_option("space", convex_path)->required();
  cval->callback([&] {
    auto j = read_json_file(convex_path);
    auto Sp = share(semigroup_from_ref(field(j, "semigroup")));
    auto L = compute_blocks(*Sp);
    auto X = convex_from_json(j, L, Sp);
    auto r = validate_convex_order(X);
    json bs = json::array();
    for (auto& b : r.blocks) bs.push_back({{"block", b.block}, {"ok", b.ok}, {"witness", b.witness}});
    out.emit({{"valid", r.valid}, {"blocks", bs}});
    code = r.valid ? 0 : 1;
  });

  // convex-complete ---------------------------------------------------------
  std::string ext_csv;
  auto* ccomp = app.add_subcommand("convex-complete", "ordered completion of a partially ordered structure");
  ccomp->add_option("structure", star_path, "structure JSON with optional \"less\": [[u, v]...]")->required();
  ccomp->add_option("--family", family_path);
  ccomp->add_option("--extension", ext_csv, "linear extension of the vertices, comma separated");
  ccomp->callback([&] {
    auto j = read_json_file(star_path);
    auto Sp = share(semigroup_from_ref(field(j, "semigroup")));
    TypeOracle oracle(Sp, load_family(*Sp, family_path));
    PartialOrderStar P{star_from_json(j, oracle), {}};
    if (j.contains("less"))
      for (auto& p : j.at("less")) {
        if (!p.is_array() || p.size() != 2) throw InputError("order pairs are [u, v]");
        P.less.insert({P.structure.index(as<std::string>(p[0], "u")), P.structure.index(as<std::string>(p[1], "v"))});
      }
    std::optional<std::vector<int>> ext;
    if (!ext_csv.empty()) {
      ext.emplace();
      for (auto& nm : split(ext_csv)) ext->push_back(P.structure.index(nm));
    }
    auto tb = default_tie_break(oracle.lattice());
    try {
      auto r = complete_ordered(P, oracle, tb, ext);
      json emb = json::array();
      for (int v : r.embedding) emb.push_back(r.result.vertices[v].name);
      out.emit({{"completion", star_to_json(r.result, j.at("semigroup"))}, {"embedding", emb}});
    } catch (const OrderCycle& e) {
      json cyc = json::array();
      for (int v : e.cycle) cyc.push_back(P.structure.vertices[v].name);
      out.emit({{"completion", nullptr}, {"reason", e.what()}, {"witness", {{"order_cycle", cyc}}}});
      code = 1;
    }
  });

  // magic -------------------------------------------------------------------
  MagicParams mp{3, 1, 3, 8, -1};
  int max_len = 6;
  std::string out_dir;
  auto* magic = app.add_subcommand("magic", "magic semigroup and its forbidden family");
  magic->add_option("--delta", mp.delta)->required();
  magic->add_option("--K1", mp.K1)->required();
  magic->add_option("--K2", mp.K2)->required();
  magic->add_option("--C", mp.C)->required();
  magic->add_option("--M", mp.M, "default: least admissible value in [K1, K2]");
  magic->add_option("--max-len", max_len, "longest family cycle (3..10)");
  magic->add_option("--out-dir", out_dir, "also write <name>.json and <name>_family.json here");
  magic->callback([&] {
    if (mp.M < 0) {
      auto Ms = magic_M_range(mp.delta, mp.C, mp.K1, mp.K2);
      if (Ms.empty()) throw InputError("no admissible M for these parameters");
      mp.M = Ms.front();
    }
    auto rel = check_relevant(mp);
    if (!rel.relevant) {
      out.emit({{"relevant", false}, {"failed", rel.failed}});
      code = 1;
      return;
    }
    auto ms = magic_semigroup(mp);
    auto fam = build_forbidden_family(mp, max_len);
    if (!ms.orders_agree())
      std::cerr << "warning: " << ms.order_disagreements.size()
                << " order pairs differ between the closed form and the natural order; using the natural order\n";
    json dis = json::array();
    for (auto [a, b] : ms.order_disagreements) dis.push_back({a, b});
    const std::string name = mag_name(mp);
    json sg = semigroup_to_json(ms.semigroup), fj = family_to_json(ms.semigroup, fam.family);
    if (!out_dir.empty()) {
      write_json_file((std::filesystem::path(out_dir) / (name + ".json")).string(), sg);
      write_json_file((std::filesystem::path(out_dir) / (name + "_family.json")).string(), fj);
    }
    out.emit({{"name", name},
              {"params", {{"delta", mp.delta}, {"K1", mp.K1}, {"K2", mp.K2}, {"C", mp.C}, {"M", mp.M}}},
              {"semigroup", sg},
              {"family", fj},
              {"family_count_by_length", fam.count_by_length},
              {"order_disagreements", dis}});
  });

  // enumerate ---------------------------------------------------------------
  int n_labels = 4;
  CensusOptions copt;
  bool no_strong = false, no_primitive = false, allow_free = false;
  auto* enumerate = app.add_subcommand("enumerate", "census of triangle-constrained classes (JSON lines)");
  enumerate->add_option("--labels", n_labels)->required()->check(CLI::Range(1, 5));
  enumerate->add_flag("--no-strong", no_strong, "keep classes without strong amalgamation");
  enumerate->add_flag("--no-primitive", no_primitive, "keep imprimitive classes");
  enumerate->add_flag("--allow-free", allow_free, "keep free_like classes");
  enumerate->add_option("--shards", copt.shards);
  enumerate->add_option("--checkpoint", copt.checkpoint, "resumable progress file");
  enumerate->add_option("--time-budget", copt.time_budget_seconds, "seconds; 0 for none");
  enumerate->add_option("--base-cap", copt.base_cap, "amalgamation base bound (default n^2)");
  enumerate->callback([&] {
    copt.filters = {!no_strong, !no_primitive, !allow_free};
    copt.threads = threads;
    auto c = enumerate_triangle_classes(n_labels, copt);
    TriangleIndex T(n_labels);
    std::ostringstream s;
    for (auto& e : c.classes) s << catalog_entry_to_json(T, e).dump() << '\n';
    json summary{{"labels", c.labels},
                 {"listed", c.classes.size()},
                 {"canonical_classified", c.canonical_total},
                 {"strong", c.strong},
                 {"strong_primitive", c.strong_primitive},
                 {"strong_primitive_not_free_like", c.strong_primitive_non_free},
                 {"strong_primitive_without_free_label", c.strong_primitive_no_free_label},
                 {"shards_done", c.shards_done},
                 {"shards_total", c.shards_total},
                 {"complete", c.complete}};
    s << json{{"summary", summary}}.dump() << '\n';
    if (out.path.empty()) std::cout << s.str();
    else std::ofstream(out.path) << s.str();
    if (!c.complete) code = 3;
  });

  // fit-semigroup -----------------------------------------------------------
  uint64_t mask = 0;
  std::string tri_csv;
  FitOptions fopt;
  auto* fit = app.add_subcommand("fit-semigroup", "semigroups whose metric triangles yield a class");
  fit->add_option("--labels", n_labels)->required()->check(CLI::Range(1, 4));
  fit->add_option("--mask", mask, "allowed-triangle bitmask");
  fit->add_option("--triangles", tri_csv, "allowed triangles as label triples, e.g. 001;012");
  fit->add_option("--family-len", fopt.family_len);
  fit->callback([&] {
    TriangleIndex T(n_labels);
    TriangleClass C{n_labels, mask};
    if (!tri_csv.empty()) {
      std::vector<std::array<int, 3>> tris;
      for (auto& t : split(tri_csv, ';')) {
        if (t.size() != 3) throw InputError("triangles are three label digits");
        tris.push_back({t[0] - '0', t[1] - '0', t[2] - '0'});
      }
      C = triangle_class_from(T, tris);
    }
    if (C.mask > T.full()) throw InputError("mask has bits beyond the triangle count");
    auto r = fit_semigroup(T, C, fopt);
    json fits = json::array();
    for (auto& f : r.fits)
      fits.push_back({{"semigroup", semigroup_to_json(f.semigroup)}, {"family", family_to_json(f.semigroup, f.family)}});
    out.emit({{"fits", fits},
              {"primitive_hypothesis", r.primitive_hypothesis},
              {"semigroups_examined", r.semigroups_examined}});
    code = r.fits.empty() ? 1 : 0;
  });

  // arrow -------------------------------------------------------------------
  std::string c_path, b_path;
  int colours = 2, budget = 16;
  bool adversarial = false;
  auto* arrow = app.add_subcommand("arrow", "partition arrow C -> (B)^A_k by exhaustive search");
  arrow->add_option("C", c_path)->required();
  arrow->add_option("B", b_path)->required();
  arrow->add_option("A", a_path)->required();
  arrow->add_option("--colours", colours);
  arrow->add_option("--budget", budget, "largest |Emb(A, C)| searched exhaustively");
  arrow->add_flag("--adversarial", adversarial, "look for one bad colouring instead");
  arrow->callback([&] {
    Graph C = graph_from_json(read_json_file(c_path));
    Graph B = graph_from_json(read_json_file(b_path), C.semigroup_ptr());
    Graph A = graph_from_json(read_json_file(a_path), C.semigroup_ptr());
    auto v = brute_force_arrow(C, B, A, colours, budget, adversarial);
    const char* res = v.result == ArrowVerdict::Result::Holds ? "holds"
                      : v.result == ArrowVerdict::Result::Fails ? "fails"
                                                                 : "unknown";
    json j{{"arrow", res}, {"embeddings", v.embeddings.size()}};
    if (v.result == ArrowVerdict::Result::Fails) {
      json col = json::array();
      for (size_t i = 0; i < v.embeddings.size(); ++i)
        col.push_back({{"embedding", vertex_names(C, v.embeddings[i])}, {"colour", v.colouring[i]}});
      j["colouring"] = col;
    }
    out.emit(j);
    code = v.result == ArrowVerdict::Result::Holds ? 0 : 1;
  });

  // sir-check ---------------------------------------------------------------
  std::string a_csv, b_csv, c_csv;
  int random_trials = 0;
  auto* sir = app.add_subcommand("sir-check", "stationary independence A |_C B in a completed space");
  sir->add_option("graph", graph_path)->required();
  sir->add_option("--A", a_csv);
  sir->add_option("--B", b_csv);
  sir->add_option("--C", c_csv);
  sir->add_option("--random", random_trials, "check symmetry and monotonicity on seeded random triples");
  sir->callback([&] {
    Graph G = graph_from_json(read_json_file(graph_path));
    if (!G.complete()) G = shortest_path_completion(G);
    if (random_trials <= 0) {
      const bool ind = sir_independent(G, vertex_list(G, a_csv), vertex_list(G, b_csv), vertex_list(G, c_csv));
      out.emit({{"independent", ind}});
      code = ind ? 0 : 1;
      return;
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> part(0, 3);
    long long sym_fail = 0, mono_fail = 0, independent = 0;
    json witness;
    for (int t = 0; t < random_trials; ++t) {
      std::vector<int> A, B, Cs;
      for (int v = 0; v < G.size(); ++v) {
        const int p = part(rng);
        if (p == 1) A.push_back(v);
        if (p == 2) B.push_back(v);
        if (p == 3) Cs.push_back(v);
      }
      if (Cs.empty() && !G.semigroup().maximum()) continue;
      const bool ab = sir_independent(G, A, B, Cs);
      independent += ab;
      if (ab != sir_independent(G, B, A, Cs)) {
        ++sym_fail;
        if (witness.is_null()) witness = {{"axiom", "symmetry"}, {"A", vertex_names(G, A)}, {"B", vertex_names(G, B)}, {"C", vertex_names(G, Cs)}};
      }
      // A ⊥_C B∪D implies A ⊥_C B and A ⊥_{C∪B} D
      if (ab && B.size() >= 2) {
        std::vector<int> B1(B.begin(), B.begin() + B.size() / 2), D(B.begin() + B.size() / 2, B.end());
        std::vector<int> CB = Cs;
        CB.insert(CB.end(), B1.begin(), B1.end());
        if (!sir_independent(G, A, B1, Cs) || !sir_independent(G, A, D, CB)) {
          ++mono_fail;
          if (witness.is_null()) witness = {{"axiom", "monotonicity"}, {"A", vertex_names(G, A)}, {"B", vertex_names(G, B)}, {"C", vertex_names(G, Cs)}};
        }
      }
    }
    out.emit({{"trials", random_trials},
              {"independent", independent},
              {"symmetry_failures", sym_fail},
              {"monotonicity_failures", mono_fail},
              {"witness", witness}});
    code = sym_fail + mono_fail == 0 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int c = app.exit(e);
    return c == 0 ? 0 : 2;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
