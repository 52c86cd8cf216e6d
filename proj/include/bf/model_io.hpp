#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bf/errors.hpp"
#include "bf/expectation.hpp"
#include "bf/frame.hpp"
#include "bf/mass.hpp"
#include "bf/products.hpp"
#include "bf/rational.hpp"

namespace bf {

// String-level view of a model file. Parsing stops here; numbers stay text so
// the numeric mode decides how to read them.
struct MassEntrySpec {
  std::vector<std::string> members;
  std::string value;
};

struct RvSpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> values;  // outcome label, value text
};

struct ModelDocument {
  std::string name;
  std::string description;
  std::string source;
  bool product = false;
  std::vector<std::string> frame_labels;  // plain frame
  std::vector<std::string> left_labels;   // product frame
  std::vector<std::string> right_labels;
  bool prices = false;  // entries are candidate prices instead of a mass
  std::vector<MassEntrySpec> entries;
  std::vector<RvSpec> rvs;
};

ModelDocument parse_model_document(const std::string& text);
std::string write_model_document(const ModelDocument& doc);

template <typename S>
struct Model {
  std::string name;
  std::string description;
  std::string source;
  FramePtr frame;
  std::optional<ProductFrame> product;
  std::optional<MassFunction<S>> mass;
  std::optional<SetFunction<S>> price_table;
  std::vector<std::pair<std::string, RandomVariable<S>>> rvs;  // sorted by name

  const MassFunction<S>& require_mass() const {
    if (!mass) fail(errc::parse_error, "model holds prices, not a mass");
    return *mass;
  }

  const RandomVariable<S>& require_rv(const std::string& rv_name) const {
    for (const auto& [n, rv] : rvs)
      if (n == rv_name) return rv;
    fail(errc::parse_error, "model has no random variable named '" + rv_name + "'");
  }
};

namespace detail {

template <typename S>
S scalar_from_text(const std::string& text, const std::string& locus) {
  try {
    return scalar_traits<S>::from_string(text);
  } catch (const Error& e) {
    fail(errc::parse_error, locus + ": " + e.what());
  }
}

template <typename S>
std::string scalar_to_text(const S& v) {
  if constexpr (scalar_traits<S>::exact) {
    return to_fraction_string(v);
  } else {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
  }
}

inline SubsetMask encode_with_locus(const Frame& frame, const std::vector<std::string>& members,
                                    const std::string& locus) {
  try {
    return encode_subset(frame, members);
  } catch (const Error& e) {
    fail(errc::parse_error, locus + ": " + e.what());
  }
}

}  // namespace detail

template <typename S>
Model<S> instantiate_model(const ModelDocument& doc) {
  Model<S> model;
  model.name = doc.name;
  model.description = doc.description;
  model.source = doc.source;

  if (doc.product) {
    ProductFrame pf = ProductFrame::make(build_frame(doc.left_labels), build_frame(doc.right_labels));
    model.frame = pf.product();
    model.product = std::move(pf);
  } else {
    model.frame = build_frame(doc.frame_labels);
  }

  std::vector<std::pair<SubsetMask, S>> resolved;
  resolved.reserve(doc.entries.size());
  const char* kind = doc.prices ? "prices" : "mass";
  for (size_t i = 0; i < doc.entries.size(); ++i) {
    const std::string locus = std::string(kind) + "[" + std::to_string(i) + "]";
    SubsetMask set = detail::encode_with_locus(*model.frame, doc.entries[i].members, locus);
    S value = detail::scalar_from_text<S>(doc.entries[i].value, locus);
    resolved.emplace_back(set, std::move(value));
  }

  if (doc.prices) {
    SetFunction<S> table = SetFunction<S>::zeros(model.frame);
    std::vector<bool> seen(model.frame->subset_count(), false);
    for (size_t i = 0; i < resolved.size(); ++i) {
      std::uint32_t bits = resolved[i].first.bits();
      if (seen[bits])
        fail(errc::parse_error,
             "prices[" + std::to_string(i) + "]: set listed twice", bits);
      seen[bits] = true;
      table.set(bits, std::move(resolved[i].second));
    }
    model.price_table = std::move(table);
  } else {
    try {
      model.mass = MassFunction<S>::make(model.frame, resolved);
    } catch (const Error& e) {
      fail(e.code(), std::string("mass entries: ") + e.what(), e.subset_bits());
    }
  }

  for (const RvSpec& spec : doc.rvs) {
    const std::string locus = "rvs." + spec.name;
    std::vector<S> values(static_cast<size_t>(model.frame->size()), scalar_traits<S>::zero());
    std::vector<bool> given(values.size(), false);
    for (const auto& [label, text] : spec.values) {
      if (!model.frame->has_label(label))
        fail(errc::parse_error, locus + ": unknown outcome '" + label + "'");
      int idx = model.frame->index_of(label);
      if (given[static_cast<size_t>(idx)])
        fail(errc::parse_error, locus + ": outcome '" + label + "' listed twice");
      given[static_cast<size_t>(idx)] = true;
      values[static_cast<size_t>(idx)] = detail::scalar_from_text<S>(text, locus);
    }
    for (int i = 0; i < model.frame->size(); ++i)
      if (!given[static_cast<size_t>(i)])
        fail(errc::parse_error, locus + ": no value for outcome '" + model.frame->label(i) + "'");
    model.rvs.emplace_back(spec.name, RandomVariable<S>::make(model.frame, std::move(values)));
  }
  std::sort(model.rvs.begin(), model.rvs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  return model;
}

template <typename S>
Model<S> load_model(const std::string& text) {
  return instantiate_model<S>(parse_model_document(text));
}

// Canonical string form: entries sorted by subset bits, values in lowest
// terms, members listed in frame order. save(load(save(x))) is byte-identical
// to save(load(x)).
template <typename S>
ModelDocument canonical_document(const Model<S>& model) {
  ModelDocument doc;
  doc.name = model.name;
  doc.description = model.description;
  doc.source = model.source;
  if (model.product) {
    doc.product = true;
    for (int i = 0; i < model.product->left()->size(); ++i)
      doc.left_labels.push_back(model.product->left()->label(i));
    for (int j = 0; j < model.product->right()->size(); ++j)
      doc.right_labels.push_back(model.product->right()->label(j));
  } else {
    for (int i = 0; i < model.frame->size(); ++i)
      doc.frame_labels.push_back(model.frame->label(i));
  }

  if (model.price_table) {
    doc.prices = true;
    for (std::uint32_t bits = 0; bits < model.frame->subset_count(); ++bits) {
      const S& v = model.price_table->value(bits);
      if (scalar_traits<S>::is_zero(v)) continue;
      doc.entries.push_back(
          {decode_subset(*model.frame, SubsetMask(bits, model.frame->size())),
           detail::scalar_to_text<S>(v)});
    }
  } else {
    for (const auto& [bits, v] : model.mass->entries())
      doc.entries.push_back(
          {decode_subset(*model.frame, SubsetMask(bits, model.frame->size())),
           detail::scalar_to_text<S>(v)});
  }

  for (const auto& [rv_name, rv] : model.rvs) {
    RvSpec spec;
    spec.name = rv_name;
    for (int i = 0; i < model.frame->size(); ++i)
      spec.values.emplace_back(model.frame->label(i), detail::scalar_to_text<S>(rv.value(i)));
    doc.rvs.push_back(std::move(spec));
  }
  std::sort(doc.rvs.begin(), doc.rvs.end(),
            [](const RvSpec& a, const RvSpec& b) { return a.name < b.name; });
  return doc;
}

template <typename S>
std::string save_model(const Model<S>& model) {
  return write_model_document(canonical_document(model));
}

}  // namespace bf
