#include "syncverif/value.hpp"

#include <algorithm>
#include <limits>

namespace sv {

int EnumDecl::index(const std::string& sym) const {
  for (size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == sym) return static_cast<int>(i);
  return -1;
}

TypeRef ValueType::boolean() {
  static const TypeRef t = std::make_shared<ValueType>();
  return t;
}

TypeRef ValueType::integer(int64_t lo, int64_t hi) {
  auto t = std::make_shared<ValueType>();
  t->kind = Kind::Int;
  t->lo = lo;
  t->hi = hi;
  return t;
}

TypeRef ValueType::anyInt() {
  static const TypeRef t = integer(std::numeric_limits<int64_t>::min(),
                                   std::numeric_limits<int64_t>::max());
  return t;
}

TypeRef ValueType::enumeration(EnumRef e) {
  auto t = std::make_shared<ValueType>();
  t->kind = Kind::Enum;
  t->en = std::move(e);
  return t;
}

TypeRef ValueType::setOf(EnumRef e) {
  auto t = std::make_shared<ValueType>();
  t->kind = Kind::Set;
  t->en = std::move(e);
  return t;
}

TypeRef ValueType::tuple(std::vector<TypeRef> elems) {
  auto t = std::make_shared<ValueType>();
  t->kind = Kind::Tuple;
  t->elems = std::move(elems);
  return t;
}

bool ValueType::isAnyInt() const {
  return kind == Kind::Int && lo == std::numeric_limits<int64_t>::min() &&
         hi == std::numeric_limits<int64_t>::max();
}

std::string ValueType::str() const {
  switch (kind) {
    case Kind::Bool: return "bool";
    case Kind::Int:
      if (isAnyInt()) return "int";
      return std::to_string(lo) + ".." + std::to_string(hi);
    case Kind::Enum: return en ? en->name : "?";
    case Kind::Set: return "set " + (en ? en->name : std::string("?"));
    case Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < elems.size(); ++i) {
        if (i) s += ", ";
        s += elems[i]->str();
      }
      return s + ")";
    }
  }
  return "?";
}

bool comparable(const ValueType& a, const ValueType& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ValueType::Kind::Bool: return true;
    case ValueType::Kind::Int: return a.lo == b.lo && a.hi == b.hi;
    case ValueType::Kind::Enum:
    case ValueType::Kind::Set: return a.en == b.en;
    case ValueType::Kind::Tuple:
      if (a.elems.size() != b.elems.size()) return false;
      for (size_t i = 0; i < a.elems.size(); ++i)
        if (!comparable(*a.elems[i], *b.elems[i])) return false;
      return true;
  }
  return false;
}

bool assignable(const ValueType& to, const ValueType& from) {
  if (to.kind != from.kind) return false;
  switch (to.kind) {
    case ValueType::Kind::Int: return true;
    case ValueType::Kind::Set:
      // the empty set literal carries no enum until it meets one
      return to.en == from.en || !to.en || !from.en;
    case ValueType::Kind::Tuple:
      if (to.elems.size() != from.elems.size()) return false;
      for (size_t i = 0; i < to.elems.size(); ++i)
        if (!assignable(*to.elems[i], *from.elems[i])) return false;
      return true;
    default: return comparable(to, from);
  }
}

Value Value::boolean(bool b) {
  Value v;
  v.type = ValueType::boolean();
  v.n = b ? 1 : 0;
  return v;
}

Value Value::integer(int64_t x, TypeRef t) {
  Value v;
  v.type = t ? std::move(t) : ValueType::anyInt();
  v.n = x;
  return v;
}

Value Value::symbol(EnumRef e, int idx) {
  Value v;
  v.type = ValueType::enumeration(std::move(e));
  v.n = idx;
  return v;
}

Value Value::set(EnumRef e, uint64_t mask) {
  Value v;
  v.type = ValueType::setOf(std::move(e));
  v.n = static_cast<int64_t>(mask);
  return v;
}

Value Value::tuple(std::vector<Value> elems) {
  Value v;
  std::vector<TypeRef> ts;
  for (auto& e : elems) ts.push_back(e.type);
  v.type = ValueType::tuple(std::move(ts));
  v.elems = std::move(elems);
  return v;
}

bool Value::operator==(const Value& o) const {
  return n == o.n && elems == o.elems;
}

bool Value::operator<(const Value& o) const {
  if (n != o.n) return n < o.n;
  return elems < o.elems;
}

std::string Value::str() const {
  if (!type) return "?";
  switch (type->kind) {
    case ValueType::Kind::Bool: return n ? "true" : "false";
    case ValueType::Kind::Int: return std::to_string(n);
    case ValueType::Kind::Enum:
      if (type->en && n >= 0 && n < static_cast<int64_t>(type->en->symbols.size()))
        return type->en->symbols[static_cast<size_t>(n)];
      return "#" + std::to_string(n);
    case ValueType::Kind::Set: {
      std::string s = "{";
      bool first = true;
      for (int i = 0; i < 64; ++i) {
        if (!((static_cast<uint64_t>(n) >> i) & 1u)) continue;
        if (!first) s += ",";
        first = false;
        s += type->en ? type->en->symbols[static_cast<size_t>(i)] : std::to_string(i);
      }
      return s + "}";
    }
    case ValueType::Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < elems.size(); ++i) {
        if (i) s += ",";
        s += elems[i].str();
      }
      return s + ")";
    }
  }
  return "?";
}

size_t hashValue(const Value& v) {
  size_t h = std::hash<int64_t>()(v.n);
  for (auto& e : v.elems) h = h * 1000003u ^ hashValue(e);
  return h;
}

std::vector<Value> domain(const TypeRef& t, size_t cap) {
  std::vector<Value> out;
  switch (t->kind) {
    case ValueType::Kind::Bool:
      out.push_back(Value::boolean(false));
      out.push_back(Value::boolean(true));
      break;
    case ValueType::Kind::Int:
      if (t->isAnyInt() || t->hi - t->lo + 1 > static_cast<int64_t>(cap))
        throw ResourceError("domain of type " + t->str() + " exceeds " + std::to_string(cap));
      for (int64_t i = t->lo; i <= t->hi; ++i) out.push_back(Value::integer(i, t));
      break;
    case ValueType::Kind::Enum:
      for (size_t i = 0; i < t->en->symbols.size(); ++i) {
        Value v;
        v.type = t;
        v.n = static_cast<int64_t>(i);
        out.push_back(v);
      }
      break;
    case ValueType::Kind::Set: {
      size_t k = t->en->symbols.size();
      if (k >= 63 || (uint64_t(1) << k) > cap)
        throw ResourceError("domain of type " + t->str() + " exceeds " + std::to_string(cap));
      for (uint64_t m = 0; m < (uint64_t(1) << k); ++m) {
        Value v;
        v.type = t;
        v.n = static_cast<int64_t>(m);
        out.push_back(v);
      }
      break;
    }
    case ValueType::Kind::Tuple: {
      std::vector<std::vector<Value>> parts;
      size_t total = 1;
      for (auto& e : t->elems) {
        parts.push_back(domain(e, cap));
        total *= parts.back().size();
        if (total > cap) throw ResourceError("domain of type " + t->str() + " exceeds cap");
      }
      std::vector<size_t> idx(parts.size(), 0);
      for (size_t c = 0; c < total; ++c) {
        Value v;
        v.type = t;
        for (size_t i = 0; i < parts.size(); ++i) v.elems.push_back(parts[i][idx[i]]);
        out.push_back(v);
        for (size_t i = parts.size(); i-- > 0;) {
          if (++idx[i] < parts[i].size()) break;
          idx[i] = 0;
        }
      }
      break;
    }
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// Split on commas that are not nested inside parens or braces.
std::vector<std::string> splitTop(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
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

}  // namespace

Value parseValue(const std::string& raw, const TypeRef& t) {
  std::string s = trim(raw);
  auto bad = [&]() { return InputError("cannot read '" + s + "' as " + t->str()); };
  switch (t->kind) {
    case ValueType::Kind::Bool:
      if (s == "true") return Value::boolean(true);
      if (s == "false") return Value::boolean(false);
      throw bad();
    case ValueType::Kind::Int:
      try {
        size_t used = 0;
        long long x = std::stoll(s, &used);
        if (used != s.size()) throw bad();
        if (!t->isAnyInt() && (x < t->lo || x > t->hi)) throw bad();
        return Value::integer(x, t);
      } catch (const std::logic_error&) {
        throw bad();
      }
    case ValueType::Kind::Enum: {
      int i = t->en->index(s);
      if (i < 0) throw bad();
      Value v;
      v.type = t;
      v.n = i;
      return v;
    }
    case ValueType::Kind::Set: {
      if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw bad();
      uint64_t mask = 0;
      for (auto& part : splitTop(s.substr(1, s.size() - 2))) {
        if (part.empty()) continue;
        int i = t->en->index(part);
        if (i < 0) throw bad();
        mask |= uint64_t(1) << i;
      }
      Value v;
      v.type = t;
      v.n = static_cast<int64_t>(mask);
      return v;
    }
    case ValueType::Kind::Tuple: {
      if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw bad();
      auto parts = splitTop(s.substr(1, s.size() - 2));
      if (parts.size() != t->elems.size()) throw bad();
      Value v;
      v.type = t;
      for (size_t i = 0; i < parts.size(); ++i) v.elems.push_back(parseValue(parts[i], t->elems[i]));
      return v;
    }
  }
  throw bad();
}

}  // namespace sv
