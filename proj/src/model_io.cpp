#include "bf/model_io.hpp"

#include <json.hpp>

namespace bf {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string type_name(const ordered_json& j) { return j.type_name(); }

const ordered_json& expect(const ordered_json& j, const char* key, const std::string& locus) {
  auto it = j.find(key);
  if (it == j.end()) fail(errc::parse_error, locus + ": missing '" + key + "'");
  return *it;
}

std::string expect_string(const ordered_json& j, const std::string& locus) {
  if (!j.is_string()) fail(errc::parse_error, locus + ": expected a string, got " + type_name(j));
  return j.get<std::string>();
}

std::vector<std::string> expect_string_array(const ordered_json& j, const std::string& locus) {
  if (!j.is_array()) fail(errc::parse_error, locus + ": expected an array, got " + type_name(j));
  std::vector<std::string> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(expect_string(j[i], locus + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<MassEntrySpec> read_entries(const ordered_json& j, const std::string& locus) {
  if (!j.is_array()) fail(errc::parse_error, locus + ": expected an array, got " + type_name(j));
  std::vector<MassEntrySpec> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string here = locus + "[" + std::to_string(i) + "]";
    const ordered_json& entry = j[i];
    if (!entry.is_object())
      fail(errc::parse_error, here + ": expected an object, got " + type_name(entry));
    for (const auto& [key, _] : entry.items())
      if (key != "set" && key != "value") fail(errc::parse_error, here + ": unknown key '" + key + "'");
    MassEntrySpec spec;
    spec.members = expect_string_array(expect(entry, "set", here), here + ".set");
    spec.value = expect_string(expect(entry, "value", here), here + ".value");
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace

ModelDocument parse_model_document(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::parse_error, e.what());
  }
  if (!root.is_object())
    fail(errc::parse_error, "model document must be an object, got " + type_name(root));

  ModelDocument doc;
  bool has_frame = false, has_mass = false, has_prices = false;
  for (const auto& [key, value] : root.items()) {
    if (key == "name") {
      doc.name = expect_string(value, "name");
    } else if (key == "description") {
      doc.description = expect_string(value, "description");
    } else if (key == "source") {
      doc.source = expect_string(value, "source");
    } else if (key == "frame") {
      has_frame = true;
      doc.frame_labels = expect_string_array(value, "frame");
    } else if (key == "product") {
      if (!value.is_object())
        fail(errc::parse_error, "product: expected an object, got " + type_name(value));
      for (const auto& [k, _] : value.items())
        if (k != "left" && k != "right") fail(errc::parse_error, "product: unknown key '" + k + "'");
      doc.product = true;
      doc.left_labels = expect_string_array(expect(value, "left", "product"), "product.left");
      doc.right_labels = expect_string_array(expect(value, "right", "product"), "product.right");
    } else if (key == "mass") {
      has_mass = true;
      doc.entries = read_entries(value, "mass");
    } else if (key == "prices") {
      has_prices = true;
      doc.prices = true;
      doc.entries = read_entries(value, "prices");
    } else if (key == "rvs") {
      if (!value.is_object())
        fail(errc::parse_error, "rvs: expected an object, got " + type_name(value));
      for (const auto& [rv_name, block] : value.items()) {
        const std::string here = "rvs." + rv_name;
        if (!block.is_object())
          fail(errc::parse_error, here + ": expected an object, got " + type_name(block));
        RvSpec spec;
        spec.name = rv_name;
        for (const auto& [label, v] : block.items())
          spec.values.emplace_back(label, expect_string(v, here + "." + label));
        doc.rvs.push_back(std::move(spec));
      }
    } else {
      fail(errc::parse_error, "unknown key '" + key + "'");
    }
  }

  if (has_frame && doc.product)
    fail(errc::parse_error, "give either 'frame' or 'product', not both");
  if (!has_frame && !doc.product) fail(errc::parse_error, "missing 'frame' or 'product'");
  if (has_mass && has_prices) fail(errc::parse_error, "give either 'mass' or 'prices', not both");
  if (!has_mass && !has_prices) fail(errc::parse_error, "missing 'mass' or 'prices'");
  return doc;
}

std::string write_model_document(const ModelDocument& doc) {
  ordered_json root = ordered_json::object();
  if (!doc.name.empty()) root["name"] = doc.name;
  if (!doc.description.empty()) root["description"] = doc.description;
  if (!doc.source.empty()) root["source"] = doc.source;
  if (doc.product) {
    root["product"] = {{"left", doc.left_labels}, {"right", doc.right_labels}};
  } else {
    root["frame"] = doc.frame_labels;
  }
  ordered_json entries = ordered_json::array();
  for (const MassEntrySpec& e : doc.entries)
    entries.push_back({{"set", e.members}, {"value", e.value}});
  root[doc.prices ? "prices" : "mass"] = std::move(entries);
  if (!doc.rvs.empty()) {
    ordered_json rvs = ordered_json::object();
    for (const RvSpec& spec : doc.rvs) {
      ordered_json block = ordered_json::object();
      for (const auto& [label, v] : spec.values) block[label] = v;
      rvs[spec.name] = std::move(block);
    }
    root["rvs"] = std::move(rvs);
  }
  return root.dump(2) + "\n";
}

}  // namespace bf
