#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sv {

// Error categories map onto CLI exit codes: input -> 2, resource -> 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumDecl {
  std::string name;
  std::vector<std::string> symbols;
  std::string scope;  // "shared" or the owning system

  int index(const std::string& sym) const;
};
using EnumRef = std::shared_ptr<const EnumDecl>;

struct ValueType;
using TypeRef = std::shared_ptr<const ValueType>;

struct ValueType {
  enum class Kind { Bool, Int, Enum, Set, Tuple };
  Kind kind = Kind::Bool;
  int64_t lo = 0, hi = 0;     // Int
  EnumRef en;                 // Enum, Set
  std::vector<TypeRef> elems; // Tuple

  static TypeRef boolean();
  static TypeRef integer(int64_t lo, int64_t hi);
  static TypeRef anyInt();  // result type of arithmetic before range checks
  static TypeRef enumeration(EnumRef e);
  static TypeRef setOf(EnumRef e);
  static TypeRef tuple(std::vector<TypeRef> elems);

  bool isAnyInt() const;
  std::string str() const;
};

// Structural identity with enums compared by declaration.
bool comparable(const ValueType& a, const ValueType& b);
// Looser check used for assignments and operators: ints of any range mix.
bool assignable(const ValueType& to, const ValueType& from);

struct Value {
  TypeRef type;
  int64_t n = 0;            // bool, int, symbol index, or set bitmask
  std::vector<Value> elems; // tuple components

  static Value boolean(bool b);
  static Value integer(int64_t v, TypeRef t = nullptr);
  static Value symbol(EnumRef e, int idx);
  static Value set(EnumRef e, uint64_t mask);
  static Value tuple(std::vector<Value> elems);

  bool asBool() const { return n != 0; }
  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }
  bool operator<(const Value& o) const;
  std::string str() const;
};

size_t hashValue(const Value& v);

// All values of a finite type in canonical order; throws ResourceError past cap.
std::vector<Value> domain(const TypeRef& t, size_t cap = 4096);

// Parse the printed form of a value back, guided by its type.
Value parseValue(const std::string& text, const TypeRef& t);

}  // namespace sv
