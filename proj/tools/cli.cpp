#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "syncverif/ag.hpp"
#include "syncverif/format.hpp"
#include "syncverif/oracle.hpp"
#include "syncverif/sidecond.hpp"
#include "syncverif/sim.hpp"

namespace sv::cli {

namespace {

using Json = nlohmann::ordered_json;
constexpr int kSchemaVersion = 1;

struct Config {
  std::string file, system, formula, rel, partition, proof, props, mode, output;
  size_t bound = 0;
  size_t prefixBound = 8;
  bool json = false, assumeFairness = false, bisim = false;
};

struct Out {
  std::ostream& out;
  const Config& cfg;
  Json doc;
  std::ostringstream text;

  Out(std::ostream& o, const Config& c, const std::string& command) : out(o), cfg(c) {
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["verdict"] = nullptr;
  }
  int finish(const std::string& verdict, int code) {
    doc["verdict"] = verdict;
    if (cfg.json)
      out << doc.dump(2) << '\n';
    else
      out << text.str();
    return code;
  }
};

bool isStructureText(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line.compare(a, 2, "--") == 0) continue;
    return line.compare(a, 11, "structure 1") == 0;
  }
  return false;
}

std::string pickSystem(const Model& m, const Config& cfg) {
  if (!cfg.system.empty()) {
    m.system(cfg.system);
    return cfg.system;
  }
  if (m.names.empty()) throw InputError("specification declares no system");
  return m.names.back();
}

// The split to analyse: a structure file, or the selected system of a spec.
PlainStructure loadSplit(const Config& cfg, size_t bound) {
  std::string text = read_file(cfg.file);
  if (isStructureText(text)) return read_structure(text);
  Model m = load_model_file(cfg.file, bound);
  return split_compound(*m.system(pickSystem(m, cfg)), bound);
}

Json stateJson(const PlainStructure& p, int s) {
  Json j = Json::object();
  if (!p.hasProvenance()) {
    j["state"] = s;
    return j;
  }
  for (size_t c = 0; c < p.components.size(); ++c)
    j[p.components[c]] = p.stageName(static_cast<int>(c), p.prov[static_cast<size_t>(s)][c]);
  return j;
}

Json traceJson(const PlainStructure& p, const Trace& t) {
  Json j;
  j["kind"] = t.kind == Trace::Kind::Lasso ? "lasso" : "finite";
  j["prefix"] = Json::array();
  for (int s : t.prefix) j["prefix"].push_back(stateJson(p, s));
  if (t.kind == Trace::Kind::Lasso) {
    j["cycle"] = Json::array();
    for (int s : t.cycle) j["cycle"].push_back(stateJson(p, s));
  }
  return j;
}

std::string stateText(const PlainStructure& p, int s) {
  if (!p.hasProvenance()) return "#" + std::to_string(s);
  std::string out = "<";
  for (size_t c = 0; c < p.components.size(); ++c)
    out += (c ? ", " : "") + p.stageName(static_cast<int>(c), p.prov[static_cast<size_t>(s)][c]);
  return out + ">";
}

void printTrace(std::ostream& o, const PlainStructure& p, const Trace& t, const std::string& indent = "  ") {
  o << indent << (t.kind == Trace::Kind::Lasso ? "lasso" : "finite path") << '\n';
  int i = 0;
  for (int s : t.prefix) o << indent << "  " << i++ << ": " << stateText(p, s) << '\n';
  if (t.kind == Trace::Kind::Lasso) {
    o << indent << "  -- cycle\n";
    for (int s : t.cycle) o << indent << "  " << i++ << ": " << stateText(p, s) << '\n';
  }
  if (!p.hasProvenance() || p.components.size() < 2) return;
  o << indent << "projections\n";
  auto proj = [&](const std::vector<int>& path, int c) {
    std::string line;
    auto stages = project_path(p, path, c);
    for (size_t k = 0; k < stages.size(); ++k) line += (k ? " -> " : "") + p.stageName(c, stages[k]);
    return line;
  };
  for (size_t c = 0; c < p.components.size(); ++c) {
    o << indent << "  " << p.components[c] << ": " << proj(t.prefix, static_cast<int>(c));
    if (t.kind == Trace::Kind::Lasso) o << " | cycle: " << proj(t.cycle, static_cast<int>(c));
    o << '\n';
  }
}

std::pair<FormulaPtr, FormulaPtr> splitAg(const std::string& text, const PlainStructure& scope) {
  auto k = text.find("|>");
  if (k == std::string::npos) throw InputError("expected 'alpha |> gamma'");
  return {parse_formula(text.substr(0, k), scope), parse_formula(text.substr(k + 2), scope)};
}

int cmdCheck(const Config& cfg, std::ostream& os, size_t bound) {
  Out o(os, cfg, "check");
  if (cfg.formula.empty()) throw InputError("--formula is required");
  PlainStructure p = loadSplit(cfg, bound);
  FormulaPtr f = parse_formula(cfg.formula, p);
  Verdict v = model_check(p, f);
  o.doc["report"] = {{"formula", printFormula(*f)}, {"states", p.size()}};
  o.text << "formula: " << printFormula(*f) << '\n' << "states: " << p.size() << '\n';
  o.text << "verdict: " << (v.holds ? "holds" : "fails") << '\n';
  if (!v.holds && v.trace) {
    o.doc["trace"] = traceJson(p, *v.trace);
    printTrace(o.text, p, *v.trace);
  }
  return o.finish(v.holds ? "holds" : "fails", v.holds ? 0 : 1);
}

int cmdSplit(const Config& cfg, std::ostream& os, size_t bound) {
  Out o(os, cfg, "split");
  PlainStructure p = loadSplit(cfg, bound);
  std::string text = write_structure(p);
  o.doc["report"] = {{"states", p.size()}, {"edges", p.numEdges()}, {"structure", text}};
  o.text << text;
  return o.finish("ok", 0);
}

int cmdAgCheck(const Config& cfg, std::ostream& os, size_t bound) {
  Out o(os, cfg, "ag check");
  std::string text = read_file(cfg.file);
  std::map<std::string, std::shared_ptr<PlainStructure>> splits;
  auto structureFor = [&](const std::function<PlainStructure()>& make, const std::string& name) {
    auto& slot = splits[name];
    if (!slot) slot = std::make_shared<PlainStructure>(make());
    return slot;
  };
  struct Job {
    std::string system;
    std::shared_ptr<PlainStructure> split;
    FormulaPtr alpha, gamma;
  };
  std::vector<Job> all;
  if (isStructureText(text)) {
    if (cfg.formula.empty()) throw InputError("--formula 'alpha |> gamma' is required for structure files");
    auto p = std::make_shared<PlainStructure>(read_structure(text));
    auto [a, g] = splitAg(cfg.formula, *p);
    all.push_back({"structure", p, a, g});
  } else {
    Model m = load_model_file(cfg.file, bound);
    if (!cfg.formula.empty()) {
      std::string name = pickSystem(m, cfg);
      auto p = structureFor([&] { return split_compound(*m.system(name), bound); }, name);
      auto [a, g] = splitAg(cfg.formula, *p);
      all.push_back({name, p, a, g});
    } else {
      for (const auto& ag : m.spec.ags) {
        if (!cfg.system.empty() && ag.system != cfg.system) continue;
        SystemRef sys = m.system(ag.system);
        auto p = structureFor([&] { return split_compound(*sys, bound); }, ag.system);
        all.push_back({ag.system, p, resolve_formula(*ag.alpha, *sys), resolve_formula(*ag.gamma, *sys)});
      }
      if (all.empty()) throw InputError("no ag declarations to check");
    }
  }
  bool allHold = true;
  Json results = Json::array();
  for (const auto& j : all) {
    Verdict v = ag_check(*j.split, j.alpha, j.gamma);
    allHold = allHold && v.holds;
    Json r = {{"system", j.system},
              {"statement", printFormula(*j.alpha) + " |> " + printFormula(*j.gamma)},
              {"verdict", v.holds ? "holds" : "fails"}};
    o.text << j.system << " |= " << printFormula(*j.alpha) << " |> " << printFormula(*j.gamma) << ": "
           << (v.holds ? "holds" : "fails") << '\n';
    if (!v.holds && v.trace) {
      r["trace"] = traceJson(*j.split, *v.trace);
      if (!o.doc.contains("trace")) o.doc["trace"] = r["trace"];
      printTrace(o.text, *j.split, *v.trace);
    }
    results.push_back(r);
  }
  o.doc["report"] = {{"statements", results}};
  return o.finish(allHold ? "holds" : "fails", allHold ? 0 : 1);
}

Json validityJson(const Validity& v) {
  auto row = [&](uint64_t bits) {
    Json j = Json::object();
    for (size_t i = 0; i < v.atoms.size(); ++i) j[v.atoms[i]->key] = ((bits >> i) & 1u) != 0;
    return j;
  };
  Json j;
  j["prefix"] = Json::array();
  for (auto b : v.prefix) j["prefix"].push_back(row(b));
  j["cycle"] = Json::array();
  for (auto b : v.cycle) j["cycle"].push_back(row(b));
  return j;
}

int cmdAgCompose(const Config& cfg, std::ostream& os, size_t bound) {
  Out o(os, cfg, "ag compose");
  Model m = load_model_file(cfg.file, bound);
  std::string proof = cfg.proof;
  if (proof.empty()) {
    if (m.spec.proofs.size() != 1) throw InputError("--proof is required when the file has " + std::to_string(m.spec.proofs.size()) + " proofs");
    proof = m.spec.proofs.front().name;
  }
  ObligationSet obl = obligations_from_proof(m, proof);
  obl.assumeFairness = cfg.assumeFairness;
  ComposeReport rep = ag_compose(obl, bound);
  std::string target = printFormula(*obl.alpha) + " |> " + printFormula(*obl.gamma);
  o.text << "proof " << proof << " for " << obl.system->name << ": " << target << '\n';
  Json steps = Json::array();
  for (const auto& s : rep.steps) {
    Json j = {{"condition", s.condition}, {"component", s.component}, {"obligation", s.index}, {"ok", s.ok}, {"detail", s.detail}};
    o.text << "  [" << s.condition << "] " << (s.component.empty() ? "compound" : s.component) << ": "
           << (s.ok ? "ok" : "FAILED") << " - " << s.detail << '\n';
    if (s.trace && s.traceStructure) {
      j["trace"] = traceJson(*s.traceStructure, *s.trace);
      printTrace(o.text, *s.traceStructure, *s.trace, "    ");
      if (!o.doc.contains("trace")) o.doc["trace"] = j["trace"];
    }
    if (s.countermodel) {
      j["countermodel"] = validityJson(*s.countermodel);
      o.text << "    countermodel: " << j["countermodel"].dump() << '\n';
    }
    steps.push_back(j);
  }
  for (const auto& n : rep.notes) o.text << "note: " << n << '\n';
  o.text << "verdict: " << (rep.derived ? "derived" : "not derived") << '\n';
  o.doc["report"] = {{"proof", proof},
                     {"system", obl.system->name},
                     {"target", target},
                     {"steps", steps},
                     {"condition2", printFormula(*rep.condition2)},
                     {"notes", rep.notes}};
  return o.finish(rep.derived ? "derived" : "not derived", rep.derived ? 0 : 1);
}

int cmdAnalyze(const Config& cfg, std::ostream& os, size_t bound) {
  Out o(os, cfg, "analyze " + cfg.mode);
  Model m = load_model_file(cfg.file, bound);
  std::string name = pickSystem(m, cfg);
  PlainStructure p = split_compound(*m.system(name), bound);
  Json ws = Json::array();
  size_t count = 0;
  if (cfg.mode == "deadlock") {
    auto dl = find_deadlocks(p);
    count = dl.size();
    o.text << name << ": " << dl.size() << " deadlock" << (dl.size() == 1 ? "" : "s") << '\n';
    for (const auto& w : dl) {
      Trace t;
      t.prefix = w.path;
      Json j = {{"deadlock", true}, {"trace", traceJson(p, t)}};
      Json ext = Json::array();
      for (size_t c = 0; c < w.extendable.size(); ++c)
        if (w.extendable[c]) ext.push_back(p.components[c]);
      j["locally_extendable"] = ext;
      o.text << "deadlock at " << stateText(p, w.state) << '\n';
      printTrace(o.text, p, t);
      ws.push_back(j);
    }
  } else {
    auto st = find_starvation(p);
    count = st.size();
    o.text << name << ": " << st.size() << " starvation witness" << (st.size() == 1 ? "" : "es") << '\n';
    for (const auto& w : st) {
      Trace t;
      t.prefix = w.prefix;
      if (w.kind == StarvationWitness::Kind::Infinite) {
        t.kind = Trace::Kind::Lasso;
        t.cycle = w.cycle;
      }
      const std::string& comp = p.components[static_cast<size_t>(w.component)];
      Json j = {{"starved_component", comp}, {"stage", p.stageName(w.component, w.stage)}, {"trace", traceJson(p, t)}};
      o.text << comp << " starves at " << p.stageName(w.component, w.stage) << '\n';
      printTrace(o.text, p, t);
      ws.push_back(j);
    }
  }
  o.doc["report"] = {{"system", name}, {"witnesses", ws}};
  if (!ws.empty()) o.doc["trace"] = ws.front()["trace"];
  return o.finish(count ? "fails" : "holds", count ? 1 : 0);
}

void describeSim(std::ostream& o, const std::string& dir, const SimResult& r, const LabeledGraph* l, const LabeledGraph* rg) {
  o << dir << ": " << (r.ok ? "ok" : "fails");
  if (!r.ok) {
    o << " (" << r.clause << ")";
    if (l && r.left >= 0) o << " at " << l->names[static_cast<size_t>(r.left)];
    if (rg && r.right >= 0) o << " ~ " << rg->names[static_cast<size_t>(r.right)];
    if (!r.detail.empty()) o << ": " << r.detail;
  }
  o << '\n';
}

Json simJson(const SimResult& r) {
  Json j = {{"ok", r.ok}};
  if (!r.ok) j.update({{"clause", r.clause}, {"left", r.left}, {"right", r.right}, {"left_next", r.leftNext}, {"detail", r.detail}});
  return j;
}

int cmdSimulate(const Config& cfg, std::ostream& os, size_t bound) {
  Out o(os, cfg, "simulate");
  if (cfg.rel.empty()) throw InputError("--rel is required");
  Model m = load_model_file(cfg.file, bound);
  RelFile rf = parse_rel(read_file(cfg.rel));
  SystemRef L = m.system(rf.left), R = m.system(rf.right);
  SimResult fwd, bwd;
  bool haveBwd = false;
  if (!rf.compound) {
    if (!L->isLeaf() || !R->isLeaf()) throw InputError("compound systems need one map block per component");
    StageRelation rel = resolve_rel(rf.blocks.front(), *L->leaf, *R->leaf);
    if (cfg.bisim) {
      auto b = check_bisimulation(*L->leaf, *R->leaf, rel);
      fwd = b.forward, bwd = b.backward, haveBwd = true;
    } else {
      fwd = check_simulation(*L->leaf, *R->leaf, rel);
    }
  } else {
    PlainStructure ls = split_compound(*L, bound), rs = split_compound(*R, bound);
    std::vector<StageRelation> rels(ls.components.size());
    std::vector<char> seen(ls.components.size(), 0);
    for (const auto& b : rf.blocks) {
      int n = ls.componentIndex(b.left);
      if (n < 0) throw InputError(rf.left + " has no component " + b.left);
      if (seen[static_cast<size_t>(n)]++) throw InputError("component " + b.left + " mapped twice");
      if (static_cast<size_t>(n) >= rs.components.size() || rs.components[static_cast<size_t>(n)] != b.right)
        throw InputError("map " + b.left + " -> " + b.right + " does not match the component order of " + rf.right);
      rels[static_cast<size_t>(n)] = resolve_rel(b, *ls.componentStructs[static_cast<size_t>(n)],
                                                 *rs.componentStructs[static_cast<size_t>(n)]);
    }
    for (size_t n = 0; n < seen.size(); ++n)
      if (!seen[n]) throw InputError("component " + ls.components[n] + " has no map block");
    StageRelation rel = compose_relations(rels, ls, rs);
    if (cfg.bisim) {
      auto b = check_bisimulation(ls, rs, rel);
      fwd = b.forward, bwd = b.backward, haveBwd = true;
    } else {
      fwd = check_simulation(ls, rs, rel);
    }
  }
  bool ok = fwd.ok && (!haveBwd || bwd.ok);
  o.text << rf.left << " -> " << rf.right << (cfg.bisim ? " (bisimulation)" : " (simulation)") << '\n';
  describeSim(o.text, "forward", fwd, nullptr, nullptr);
  if (haveBwd) describeSim(o.text, "backward", bwd, nullptr, nullptr);
  o.text << "verdict: " << (ok ? "ok" : "fails") << '\n';
  Json rep = {{"left", rf.left}, {"right", rf.right}, {"forward", simJson(fwd)}};
  if (haveBwd) rep["backward"] = simJson(bwd);
  o.doc["report"] = rep;
  return o.finish(ok ? "ok" : "fails", ok ? 0 : 1);
}

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int cmdQuotient(const Config& cfg, std::ostream& os, size_t bound) {
  Out o(os, cfg, "quotient");
  Model m = load_model_file(cfg.file, bound);
  std::string sysName = cfg.system;
  std::vector<std::string> props;
  Partition part;
  const AtomicStructure* a = nullptr;
  if (!cfg.partition.empty()) {
    PartitionFile pf = parse_partition(read_file(cfg.partition));
    if (!sysName.empty() && sysName != pf.system) throw InputError("--system differs from the partition file");
    sysName = pf.system;
    SystemRef s = m.system(sysName);
    if (!s->isLeaf()) throw InputError("quotients apply to atomic systems");
    a = s->leaf.get();
    props = pf.props;
    part = resolve_partition(pf, *a);
  } else {
    if (sysName.empty() || cfg.props.empty()) throw InputError("give --partition, or --system with --props");
    SystemRef s = m.system(sysName);
    if (!s->isLeaf()) throw InputError("quotients apply to atomic systems");
    a = s->leaf.get();
    props = splitList(cfg.props);
    part = predicate_abstraction(*a, props);
  }
  Quotient q = quotient(*a, part, props);
  SimResult sim = check_simulation(*a, *q.structure, q.relation);
  o.text << sysName << ": " << a->size() << " stages, " << q.blocks.size() << " blocks\n";
  Json blocks = Json::array();
  for (size_t b = 0; b < q.blocks.size(); ++b) {
    Json members = Json::array();
    o.text << "  block " << b << ":";
    for (int g : q.blocks[b]) {
      members.push_back(a->describe(g));
      o.text << ' ' << a->describe(g);
    }
    o.text << '\n';
    Json succ = Json::array();
    for (int t : q.structure->succ[b]) succ.push_back(t);
    blocks.push_back({{"members", members}, {"successors", succ}});
  }
  o.text << "simulation into the quotient: " << (sim.ok ? "ok" : "fails") << '\n';
  o.doc["report"] = {{"system", sysName}, {"stages", a->size()}, {"blocks", blocks}, {"simulation", simJson(sim)}};
  return o.finish(sim.ok ? "ok" : "fails", sim.ok ? 0 : 1);
}

int cmdOracle(const Config& cfg, std::ostream& os, size_t bound) {
  Out o(os, cfg, "oracle");
  PlainStructure p = loadSplit(cfg, bound);
  Json rep;
  bool ok = true;
  if (!cfg.formula.empty()) {
    FormulaPtr f = parse_formula(cfg.formula, p);
    auto paths = enumerate_maximal_paths(p, cfg.prefixBound);
    Json sat = Json::array();
    size_t n = 0;
    for (const auto& path : paths) {
      if (!path_satisfies(p, path, f)) continue;
      ++n;
      sat.push_back(traceJson(p, path));
      o.text << "path " << n << '\n';
      printTrace(o.text, p, path);
    }
    o.text << n << " of " << paths.size() << " maximal paths (at most " << cfg.prefixBound << " states) satisfy "
           << printFormula(*f) << '\n';
    rep = {{"formula", printFormula(*f)}, {"prefix_bound", cfg.prefixBound}, {"maximal_paths", paths.size()},
           {"satisfying", n}, {"paths", sat}};
  } else {
    Prop5Report r = check_prop5(p, cfg.prefixBound);
    ok = r.ok();
    o.text << "split paths: " << r.splitPaths << "\ncompatible tuples: " << r.compatibleTuples << '\n';
    for (const auto& mm : r.mismatches) o.text << "mismatch: " << mm << '\n';
    o.text << "path correspondence: " << (ok ? "ok" : "fails") << '\n';
    rep = {{"prefix_bound", cfg.prefixBound}, {"split_paths", r.splitPaths},
           {"compatible_tuples", r.compatibleTuples}, {"mismatches", r.mismatches}};
  }
  o.doc["report"] = rep;
  return o.finish(ok ? "ok" : "fails", ok ? 0 : 1);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Compositional verification of synchronously composed transition systems", "syncverif"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", cfg.json, "Emit one JSON document");
  app.add_option("--bound-states", cfg.bound, "Maximum number of explored states")->check(CLI::PositiveNumber);

  auto fileArg = [&](CLI::App* c) { c->add_option("file", cfg.file, "Specification or structure file")->required(); };
  auto sysOpt = [&](CLI::App* c) { c->add_option("--system", cfg.system, "System or composition name"); };

  auto* check = app.add_subcommand("check", "Model check a formula on the split of a system");
  fileArg(check);
  sysOpt(check);
  check->add_option("--formula", cfg.formula, "Formula to check");

  auto* split = app.add_subcommand("split", "Print the split structure");
  fileArg(split);
  sysOpt(split);

  auto* ag = app.add_subcommand("ag", "Assume/guarantee statements");
  ag->require_subcommand(1);
  ag->fallthrough();
  auto* agCheck = ag->add_subcommand("check", "Check assume/guarantee statements directly");
  fileArg(agCheck);
  sysOpt(agCheck);
  agCheck->add_option("--formula", cfg.formula, "Statement 'alpha |> gamma'");
  auto* agCompose = ag->add_subcommand("compose", "Derive a compound statement from component obligations");
  fileArg(agCompose);
  agCompose->add_option("--proof", cfg.proof, "compose-proof name");
  agCompose->add_flag("--assume-fairness", cfg.assumeFairness, "Accept fairness obligations without a certificate");

  auto* analyze = app.add_subcommand("analyze", "Deadlock and fairness analysis");
  analyze->add_option("mode", cfg.mode, "deadlock or fairness")->required()->check(CLI::IsMember({"deadlock", "fairness"}));
  fileArg(analyze);
  sysOpt(analyze);

  auto* simulate = app.add_subcommand("simulate", "Check a stuttering simulation given by a relation file");
  fileArg(simulate);
  simulate->add_option("--rel", cfg.rel, "Relation file");
  simulate->add_flag("--bisim", cfg.bisim, "Check both directions");

  auto* quot = app.add_subcommand("quotient", "Quotient an atomic system by a partition");
  fileArg(quot);
  sysOpt(quot);
  quot->add_option("--partition", cfg.partition, "Partition file");
  quot->add_option("--props", cfg.props, "Observed properties for predicate abstraction");

  auto* oracle = app.add_subcommand("oracle", "Enumeration-based cross-checks");
  fileArg(oracle);
  sysOpt(oracle);
  oracle->add_option("--prefix-bound", cfg.prefixBound, "Maximum path length in states")->check(CLI::PositiveNumber);
  oracle->add_option("--formula", cfg.formula, "List the maximal paths satisfying this formula");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  size_t bound = cfg.bound ? cfg.bound : defaultBound();
  try {
    if (check->parsed()) return cmdCheck(cfg, out, bound);
    if (split->parsed()) return cmdSplit(cfg, out, bound);
    if (agCheck->parsed()) return cmdAgCheck(cfg, out, bound);
    if (agCompose->parsed()) return cmdAgCompose(cfg, out, bound);
    if (analyze->parsed()) return cmdAnalyze(cfg, out, bound);
    if (simulate->parsed()) return cmdSimulate(cfg, out, bound);
    if (quot->parsed()) return cmdQuotient(cfg, out, bound);
    if (oracle->parsed()) return cmdOracle(cfg, out, bound);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    err << "resource bound: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace sv::cli
