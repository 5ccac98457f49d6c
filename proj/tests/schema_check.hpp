#ifndef CGT_TEST_SCHEMA_CHECK_HPP
#define CGT_TEST_SCHEMA_CHECK_HPP

// Just enough JSON-Schema (draft-07 subset) to check CLI output against
// schema/cli_output.schema.json: type, const, enum, properties, required,
// items, oneOf and local $ref.

#include <string>

#include "json.hpp"

namespace cgt_test {

using nlohmann::json;

inline const json& schema_resolve(const json& root, const json& node) {
  if (node.is_object() && node.contains("$ref")) {
    std::string ref = node["$ref"].get<std::string>();
    const json* at = &root;
    std::size_t pos = 2;  // skip "#/"
    while (pos < ref.size()) {
      std::size_t next = ref.find('/', pos);
      std::string key = ref.substr(pos, next - pos);
      at = &at->at(key);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return *at;
  }
  return node;
}

inline bool schema_validate(const json& root, const json& schema_in,
                            const json& instance, std::string& error) {
  const json& schema = schema_resolve(root, schema_in);
  if (schema.contains("oneOf")) {
    int matches = 0;
    for (const auto& option : schema["oneOf"]) {
      std::string ignored;
      if (schema_validate(root, option, instance, ignored)) ++matches;
    }
    if (matches != 1) {
      error = "oneOf matched " + std::to_string(matches) + " branches";
      return false;
    }
    return true;
  }
  if (schema.contains("const")) {
    if (instance != schema["const"]) {
      error = "const mismatch";
      return false;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema["enum"])
      if (instance == candidate) found = true;
    if (!found) {
      error = "enum mismatch";
      return false;
    }
  }
  if (schema.contains("type")) {
    std::string type = schema["type"].get<std::string>();
    bool ok = (type == "object" && instance.is_object()) ||
              (type == "array" && instance.is_array()) ||
              (type == "string" && instance.is_string()) ||
              (type == "integer" && instance.is_number_integer()) ||
              (type == "number" && instance.is_number()) ||
              (type == "boolean" && instance.is_boolean());
    if (!ok) {
      error = "expected type " + type;
      return false;
    }
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!instance.contains(key.get<std::string>())) {
        error = "missing required key " + key.get<std::string>();
        return false;
      }
    }
  }
  if (schema.contains("properties") && instance.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (!instance.contains(key)) continue;
      if (!schema_validate(root, sub, instance.at(key), error)) {
        error = key + ": " + error;
        return false;
      }
    }
  }
  if (schema.contains("items") && instance.is_array()) {
    for (const auto& element : instance) {
      if (!schema_validate(root, schema["items"], element, error)) {
        error = "items: " + error;
        return false;
      }
    }
  }
  return true;
}

}  // namespace cgt_test

#endif  // CGT_TEST_SCHEMA_CHECK_HPP
