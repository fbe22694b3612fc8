#include "syncverif/format.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

namespace sv {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string squeeze(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t') out += c;
  return out;
}

std::vector<std::string> splitOn(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  size_t at = 0;
  for (;;) {
    size_t k = s.find(sep, at);
    if (k == std::string::npos) {
      out.push_back(trim(s.substr(at)));
      return out;
    }
    out.push_back(trim(s.substr(at, k - at)));
    at = k + sep.size();
  }
}

// Commas outside brackets.
std::vector<std::string> splitTop(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

// Lines with `--` comments and blanks removed, paired with 1-based line numbers.
std::vector<std::pair<int, std::string>> contentLines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto k = line.find("--"); k != std::string::npos) line = line.substr(0, k);
    line = trim(line);
    if (!line.empty()) out.emplace_back(n, line);
  }
  return out;
}

InputError lineError(int n, const std::string& msg) { return InputError("line " + std::to_string(n) + ": " + msg); }

bool startsWith(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// Arguments come back as values whose printed form matches the key; symbols get
// a one-symbol enum of their own since their declaration is not recorded.
Value argValue(const std::string& a) {
  if (a == "true" || a == "false") return Value::boolean(a == "true");
  try {
    size_t used = 0;
    long long x = std::stoll(a, &used);
    if (used == a.size()) return Value::integer(x, ValueType::integer(x, x));
  } catch (const std::logic_error&) {
  }
  if (a.empty() || !std::all_of(a.begin(), a.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
    throw InputError("unsupported property argument " + a);
  auto e = std::make_shared<EnumDecl>();
  e->name = a;
  e->symbols = {a};
  return Value::symbol(e, 0);
}

QualifiedProp propFromKey(const std::string& key) {
  auto d = key.find('$');
  if (d == std::string::npos || d == 0 || d + 1 == key.size()) throw InputError("malformed property key " + key);
  QualifiedProp q{key.substr(0, d), key.substr(d + 1), {}};
  if (auto lp = q.name.find('('); lp != std::string::npos) {
    if (q.name.back() != ')') throw InputError("malformed property key " + key);
    std::string args = q.name.substr(lp + 1, q.name.size() - lp - 2);
    q.name = q.name.substr(0, lp);
    for (const auto& a : splitTop(args)) q.params.push_back(argValue(a));
  }
  if (q.key() != key) throw InputError("malformed property key " + key);
  return q;
}

struct TypeReader {
  const std::string& s;
  size_t i = 0;
  std::map<std::string, EnumRef>& enums;

  void ws() {
    while (i < s.size() && s[i] == ' ') ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string word() {
    ws();
    size_t a = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '-' || s[i] == '.')) ++i;
    return s.substr(a, i - a);
  }
  [[noreturn]] void fail() { throw InputError("malformed type " + s); }

  EnumRef enumDecl() {
    std::string name = word();
    if (name.empty() || !eat('{')) fail();
    auto e = std::make_shared<EnumDecl>();
    e->name = name;
    e->scope = "shared";
    if (!eat('}')) {
      do {
        std::string sym = word();
        if (sym.empty()) fail();
        e->symbols.push_back(sym);
      } while (eat(','));
      if (!eat('}')) fail();
    }
    auto it = enums.find(name);
    if (it == enums.end()) return enums[name] = e;
    if (it->second->symbols != e->symbols) throw InputError("enum " + name + " declared with different symbols");
    return it->second;
  }

  TypeRef type() {
    ws();
    if (eat('(')) {
      std::vector<TypeRef> el;
      do el.push_back(type());
      while (eat(','));
      if (!eat(')')) fail();
      return ValueType::tuple(std::move(el));
    }
    size_t save = i;
    std::string w = word();
    if (w == "bool") return ValueType::boolean();
    if (w == "int") return ValueType::anyInt();
    if (w == "enum") return ValueType::enumeration(enumDecl());
    if (w == "set") return ValueType::setOf(enumDecl());
    i = save;
    ws();
    size_t a = i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (s.compare(i, 2, "..") != 0) fail();
    int64_t lo = std::stoll(s.substr(a, i - a));
    i += 2;
    size_t b = i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (b == i) fail();
    return ValueType::integer(lo, std::stoll(s.substr(b, i - b)));
  }
};

TypeRef parseTypeWith(const std::string& text, std::map<std::string, EnumRef>& enums) {
  TypeReader r{text, 0, enums};
  TypeRef t = r.type();
  r.ws();
  if (r.i != text.size()) r.fail();
  return t;
}

std::string enumText(const EnumRef& e) {
  std::string s = (e ? e->name : std::string("?")) + "{";
  for (size_t i = 0; e && i < e->symbols.size(); ++i) s += (i ? "," : "") + e->symbols[i];
  return s + "}";
}

}  // namespace

std::string type_text(const TypeRef& t) {
  switch (t->kind) {
    case ValueType::Kind::Bool: return "bool";
    case ValueType::Kind::Int: return t->isAnyInt() ? "int" : std::to_string(t->lo) + ".." + std::to_string(t->hi);
    case ValueType::Kind::Enum: return "enum " + enumText(t->en);
    case ValueType::Kind::Set: return "set " + enumText(t->en);
    case ValueType::Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < t->elems.size(); ++i) s += (i ? ", " : "") + type_text(t->elems[i]);
      return s + ")";
    }
  }
  return "?";
}

TypeRef parse_type_text(const std::string& text) {
  std::map<std::string, EnumRef> enums;
  return parseTypeWith(text, enums);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PlainStructure canonical_order(const PlainStructure& p) {
  const size_t n = p.size();
  std::vector<int> order, pos(n, -1);
  auto visit = [&](int s) {
    std::deque<int> q{s};
    pos[static_cast<size_t>(s)] = static_cast<int>(order.size());
    order.push_back(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : p.succ[static_cast<size_t>(u)])
        if (pos[static_cast<size_t>(v)] < 0) {
          pos[static_cast<size_t>(v)] = static_cast<int>(order.size());
          order.push_back(v);
          q.push_back(v);
        }
    }
  };
  if (n) visit(p.initial);
  for (size_t s = 0; s < n; ++s)
    if (pos[s] < 0) visit(static_cast<int>(s));

  PlainStructure out = p;
  const size_t np = p.propKeys.size();
  out.initial = n ? 0 : p.initial;
  for (size_t k = 0; k < n; ++k) {
    size_t old = static_cast<size_t>(order[k]);
    out.succ[k].clear();
    for (int v : p.succ[old]) out.succ[k].push_back(pos[static_cast<size_t>(v)]);
    std::copy_n(p.propTable.begin() + static_cast<std::ptrdiff_t>(old * np), np,
                out.propTable.begin() + static_cast<std::ptrdiff_t>(k * np));
    if (p.hasProvenance()) out.prov[k] = p.prov[old];
  }
  return out;
}

std::string write_structure(const PlainStructure& in) {
  PlainStructure p = canonical_order(in);
  std::ostringstream o;
  o << "structure 1\n";
  o << "components";
  for (const auto& c : p.components) o << ' ' << c;
  o << '\n';
  for (const auto& c : p.criteria) o << "criterion " << c.str() << '\n';
  for (size_t k = 0; k < p.propKeys.size(); ++k) o << "prop " << p.propKeys[k].key() << " : " << type_text(p.propTypes[k]) << '\n';
  o << "states " << p.size() << '\n';
  for (size_t s = 0; s < p.size(); ++s) {
    o << s << " | ";
    if (p.hasProvenance()) {
      for (size_t c = 0; c < p.components.size(); ++c)
        o << (c ? " ; " : "") << p.stageName(static_cast<int>(c), p.prov[s][c]);
    } else {
      o << '-';
    }
    o << " |";
    for (size_t k = 0; k < p.propKeys.size(); ++k)
      o << (k ? " ; " : " ") << p.propKeys[k].key() << '=' << p.prop(static_cast<int>(s), static_cast<int>(k)).str();
    o << '\n';
  }
  o << "edges " << p.numEdges() << '\n';
  for (size_t s = 0; s < p.size(); ++s)
    for (int t : p.succ[s]) o << s << " -> " << t << '\n';
  return o.str();
}

PlainStructure read_structure(const std::string& text) {
  auto lines = contentLines(text);
  PlainStructure p;
  std::map<std::string, EnumRef> enums;
  size_t i = 0;
  auto need = [&](const std::string& what) -> const std::pair<int, std::string>& {
    if (i >= lines.size()) throw InputError("structure ends before " + what);
    return lines[i];
  };
  if (need("the header").second != "structure 1") throw lineError(lines[i].first, "expected 'structure 1'");
  ++i;
  {
    auto& [n, l] = need("components");
    if (!startsWith(l, "components")) throw lineError(n, "expected components");
    std::istringstream ws(l.substr(10));
    std::string c;
    while (ws >> c) p.components.push_back(c);
    ++i;
  }
  while (i < lines.size() && startsWith(lines[i].second, "criterion ")) {
    auto parts = splitOn(lines[i].second.substr(10), "==");
    if (parts.size() != 2) throw lineError(lines[i].first, "malformed criterion");
    p.criteria.push_back({propFromKey(squeeze(parts[0])), propFromKey(squeeze(parts[1]))});
    ++i;
  }
  std::map<std::string, size_t> keyIndex;
  while (i < lines.size() && startsWith(lines[i].second, "prop ")) {
    const std::string& l = lines[i].second;
    auto colon = l.find(" : ");
    if (colon == std::string::npos) throw lineError(lines[i].first, "malformed prop line");
    std::string key = trim(l.substr(5, colon - 5));
    if (!keyIndex.emplace(key, p.propKeys.size()).second) throw lineError(lines[i].first, "duplicate property " + key);
    p.propKeys.push_back(propFromKey(key));
    p.propTypes.push_back(parseTypeWith(trim(l.substr(colon + 3)), enums));
    ++i;
  }
  const size_t np = p.propKeys.size();
  p.propDomain.assign(np, {});

  auto count = [&](const std::string& word) {
    auto& [n, l] = need(word);
    if (!startsWith(l, word + " ")) throw lineError(n, "expected " + word);
    ++i;
    try {
      return static_cast<size_t>(std::stoull(l.substr(word.size() + 1)));
    } catch (const std::logic_error&) {
      throw lineError(n, "bad count");
    }
  };
  const size_t ns = count("states");
  p.succ.assign(ns, {});
  p.propTable.assign(ns * np, 0);
  std::vector<std::map<std::string, int>> stageIds(p.components.size());
  p.stageNames.assign(p.components.size(), {});
  bool anyProv = false, noProv = false;
  std::vector<std::map<std::string, uint32_t>> interned(np);
  for (size_t s = 0; s < ns; ++s) {
    auto& [n, l] = need("state " + std::to_string(s));
    auto f = splitOn(l, "|");
    if (f.size() != 3 || f[0] != std::to_string(s)) throw lineError(n, "expected state " + std::to_string(s));
    if (f[1] == "-") {
      noProv = true;
    } else {
      anyProv = true;
      auto descs = splitOn(f[1], ";");
      if (descs.size() != p.components.size()) throw lineError(n, "provenance arity differs from components");
      std::vector<int> tuple;
      for (size_t c = 0; c < descs.size(); ++c) {
        auto [it, fresh] = stageIds[c].emplace(descs[c], static_cast<int>(p.stageNames[c].size()));
        if (fresh) p.stageNames[c].push_back(descs[c]);
        tuple.push_back(it->second);
      }
      p.prov.push_back(std::move(tuple));
    }
    std::vector<char> seen(np, 0);
    if (!f[2].empty()) {
      for (const auto& kv : splitOn(f[2], ";")) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw lineError(n, "expected key=value");
        auto it = keyIndex.find(trim(kv.substr(0, eq)));
        if (it == keyIndex.end()) throw lineError(n, "undeclared property " + kv.substr(0, eq));
        size_t k = it->second;
        if (seen[k]++) throw lineError(n, "property given twice");
        std::string raw = trim(kv.substr(eq + 1));
        auto [slot, fresh] = interned[k].emplace(raw, static_cast<uint32_t>(p.propDomain[k].size()));
        if (fresh) p.propDomain[k].push_back(parseValue(raw, p.propTypes[k]));
        p.propTable[s * np + k] = slot->second;
      }
    }
    for (size_t k = 0; k < np; ++k)
      if (!seen[k]) throw lineError(n, "missing value for " + p.propKeys[k].key());
    ++i;
  }
  if (anyProv && noProv) throw InputError("provenance given for some states only");
  if (!anyProv) p.stageNames.clear();
  const size_t ne = count("edges");
  for (size_t e = 0; e < ne; ++e) {
    auto& [n, l] = need("edge");
    auto f = splitOn(l, "->");
    size_t a = 0, b = 0;
    try {
      if (f.size() != 2) throw std::invalid_argument("edge");
      a = std::stoull(f[0]);
      b = std::stoull(f[1]);
    } catch (const std::logic_error&) {
      throw lineError(n, "malformed edge");
    }
    if (a >= ns || b >= ns) throw lineError(n, "edge endpoint out of range");
    p.succ[a].push_back(static_cast<int>(b));
    ++i;
  }
  if (i != lines.size()) throw lineError(lines[i].first, "trailing content");
  if (ns == 0) throw InputError("structure has no states");
  return p;
}

namespace {

std::vector<std::pair<std::string, std::string>> parseProps(int n, const std::string& body) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : splitTop(body)) {
    if (item.empty()) throw lineError(n, "empty property in list");
    auto as = item.find(" as ");
    if (as == std::string::npos)
      out.emplace_back(squeeze(item), squeeze(item));
    else
      out.emplace_back(squeeze(item.substr(0, as)), squeeze(item.substr(as + 4)));
  }
  return out;
}

}  // namespace

RelFile parse_rel(const std::string& text) {
  RelFile f;
  RelBlock top;
  RelBlock* cur = nullptr;
  bool inMap = false;
  for (auto& [n, l] : contentLines(text)) {
    if (startsWith(l, "left ")) {
      f.left = trim(l.substr(5));
    } else if (startsWith(l, "right ")) {
      f.right = trim(l.substr(6));
    } else if (startsWith(l, "map ")) {
      if (inMap) throw lineError(n, "nested map");
      auto parts = splitOn(l.substr(4), "->");
      if (parts.size() != 2) throw lineError(n, "expected map A -> B");
      f.blocks.push_back({parts[0], parts[1], {}, false, {}});
      f.compound = true;
      cur = &f.blocks.back();
      inMap = true;
    } else if (l == "end") {
      if (!inMap) throw lineError(n, "end outside map");
      inMap = false;
      cur = nullptr;
    } else {
      RelBlock* b = cur;
      if (!b) {
        if (f.compound) throw lineError(n, "relation content outside a map block");
        b = &top;
      }
      if (startsWith(l, "props ")) {
        auto ps = parseProps(n, l.substr(6));
        b->props.insert(b->props.end(), ps.begin(), ps.end());
      } else if (l == "identity") {
        b->identity = true;
      } else {
        auto parts = splitOn(l, "->");
        if (parts.size() != 2) throw lineError(n, "expected descriptor -> descriptor");
        b->pairs.emplace_back(parts[0], parts[1]);
      }
    }
  }
  if (inMap) throw InputError("unterminated map block");
  if (f.left.empty() || f.right.empty()) throw InputError("relation file needs left and right");
  if (!f.compound) {
    top.left = f.left;
    top.right = f.right;
    f.blocks.push_back(std::move(top));
  }
  for (auto& b : f.blocks)
    if (b.identity && !b.pairs.empty()) throw InputError("block " + b.left + " mixes identity and explicit pairs");
  return f;
}

StageRelation resolve_rel(const RelBlock& b, const AtomicStructure& l, const AtomicStructure& r) {
  if (b.identity) {
    if (l.size() != r.size()) throw InputError("identity relation between structures of different size");
    StageRelation rel = StageRelation::identity(l.size(), {});
    rel.props = b.props;
    return rel;
  }
  StageRelation rel;
  rel.props = b.props;
  for (auto& [a, c] : b.pairs) {
    int x = l.findStage(a), y = r.findStage(c);
    if (x < 0) throw InputError(l.name + " has no stage " + a);
    if (y < 0) throw InputError(r.name + " has no stage " + c);
    rel.pairs.emplace_back(x, y);
  }
  return rel;
}

PartitionFile parse_partition(const std::string& text) {
  PartitionFile f;
  for (auto& [n, l] : contentLines(text)) {
    if (startsWith(l, "system ")) {
      f.system = trim(l.substr(7));
    } else if (startsWith(l, "props ")) {
      for (auto& pr : parseProps(n, l.substr(6))) f.props.push_back(pr.first);
    } else {
      auto parts = splitOn(l, "->");
      if (parts.size() != 2 || parts[1].empty()) throw lineError(n, "expected descriptor -> block");
      f.members.emplace_back(parts[0], parts[1]);
    }
  }
  if (f.system.empty()) throw InputError("partition file needs a system line");
  return f;
}

Partition resolve_partition(const PartitionFile& f, const AtomicStructure& a) {
  Partition part(a.size(), -1);
  std::map<std::string, int> ids;
  for (auto& [d, block] : f.members) {
    int g = a.findStage(d);
    if (g < 0) throw InputError(a.name + " has no stage " + d);
    if (part[static_cast<size_t>(g)] >= 0) throw InputError("stage " + d + " listed twice");
    part[static_cast<size_t>(g)] = ids.emplace(block, static_cast<int>(ids.size())).first->second;
  }
  for (size_t g = 0; g < a.size(); ++g)
    if (part[g] < 0) throw InputError("partition misses stage " + a.describe(static_cast<int>(g)));
  return part;
}

}  // namespace sv
