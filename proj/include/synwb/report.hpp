#pragma once

// Machine-readable run reports. One stable JSON schema (version field
// included) carries every verdict; the human text is rendered from the same
// document, so the two can not drift apart.

#include <cstdint>
#include <sstream>
#include <string>

#include "json.hpp"
#include "synwb/errors.hpp"

namespace synwb {

inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

class Report {
 public:
  explicit Report(std::string command) {
    doc_["schema_version"] = 1;
    doc_["tool"] = "synwb";
    doc_["command"] = std::move(command);
    doc_["inputs"] = nlohmann::ordered_json::array();
    doc_["result"] = nlohmann::ordered_json::object();
  }

  void add_input(const std::string& name, const std::string& content) {
    doc_["inputs"].push_back({{"name", name}, {"digest", fnv1a_hex(content)}});
  }

  nlohmann::ordered_json& result() { return doc_["result"]; }
  const nlohmann::ordered_json& doc() const { return doc_; }

  void set_timing_ms(double ms) { doc_["timing_ms"] = ms; }

  std::string machine() const { return doc_.dump(2) + "\n"; }

  /// Human text, derived field by field from the machine document.
  std::string human() const {
    std::ostringstream out;
    out << "# " << doc_["command"].get<std::string>() << "\n";
    for (const auto& input : doc_["inputs"])
      out << "input " << input["name"].get<std::string>() << " digest "
          << input["digest"].get<std::string>() << "\n";
    render(out, doc_["result"], 0);
    if (doc_.contains("timing_ms")) out << "timing_ms " << doc_["timing_ms"].dump() << "\n";
    return out.str();
  }

 private:
  static void render(std::ostringstream& out, const nlohmann::ordered_json& node, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (node.is_object()) {
      for (const auto& [key, value] : node.items()) {
        if (value.is_object() || (value.is_array() && !scalars_only(value))) {
          out << pad << key << ":\n";
          render(out, value, depth + 1);
        } else {
          out << pad << key << ": " << inline_value(value) << "\n";
        }
      }
    } else if (node.is_array()) {
      int i = 0;
      for (const auto& item : node) {
        if (item.is_object() || item.is_array()) {
          out << pad << "- [" << i << "]\n";
          render(out, item, depth + 1);
        } else {
          out << pad << "- " << inline_value(item) << "\n";
        }
        ++i;
      }
    } else {
      out << pad << inline_value(node) << "\n";
    }
  }

  static bool scalars_only(const nlohmann::ordered_json& arr) {
    for (const auto& item : arr)
      if (item.is_object() || item.is_array()) return false;
    return true;
  }

  static std::string inline_value(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string out = "[";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ", ";
        out += item.is_string() ? item.get<std::string>() : item.dump();
        first = false;
      }
      return out + "]";
    }
    return v.dump();
  }

  nlohmann::ordered_json doc_;
};

}  // namespace synwb
