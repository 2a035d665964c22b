#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

// Minimal ordered JSON document builder. Keys keep insertion order and
// doubles are rendered with 17 significant digits, so a report produced
// from the same inputs is byte-identical across runs.

namespace certnorm {

class Json {
 public:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };

  Json() : kind_(Kind::Null) {}
  static Json boolean(bool b);
  static Json integer(std::int64_t v);
  static Json number(double v);
  static Json string(std::string s);
  static Json array();
  static Json object();

  Kind kind() const { return kind_; }

  // Object helpers (no-ops unless this is an object/array).
  Json& set(const std::string& key, Json value);
  Json& push(Json value);

  // Convenience setters.
  Json& set(const std::string& key, bool b) { return set(key, boolean(b)); }
  Json& set(const std::string& key, int v) { return set(key, integer(v)); }
  Json& set(const std::string& key, std::int64_t v) { return set(key, integer(v)); }
  Json& set(const std::string& key, std::uint64_t v);
  Json& set(const std::string& key, double v) { return set(key, number(v)); }
  Json& set(const std::string& key, const char* s) { return set(key, string(s)); }
  Json& set(const std::string& key, const std::string& s) { return set(key, string(s)); }

  static Json from_vector(const std::vector<double>& v);

  std::string dump(int indent = 0) const;

 private:
  void dump_to(std::string& out, int indent, int depth) const;

  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<Json> array_;
  std::vector<std::pair<std::string, Json>> object_;
};

}  // namespace certnorm
