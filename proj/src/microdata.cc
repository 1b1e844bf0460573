// Copyright 2026 The Ganon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ganon/microdata.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "ganon/apportion.h"
#include "ganon/random.h"
#include "ganon/status_macros.h"

namespace ganon {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

absl::StatusOr<size_t> RequireAttribute(const AttributeSchema& schema,
                                        absl::string_view name) {
  auto index = schema.IndexOf(name);
  if (!index.has_value()) {
    return absl::NotFoundError(absl::StrCat("unknown attribute '", name, "'"));
  }
  return *index;
}

// Resolves the parameter order to code ids, one per signal position.
absl::StatusOr<std::vector<CodeId>> ResolveOrder(const AttributeSchema& schema,
                                                 size_t attribute,
                                                 const ParameterSpec& spec) {
  if (spec.order.size() < 2) {
    return absl::InvalidArgumentError(
        "parameter order must list at least two values");
  }
  std::vector<CodeId> ids;
  ids.reserve(spec.order.size());
  absl::flat_hash_set<absl::string_view> seen;
  for (const std::string& code : spec.order) {
    if (!seen.insert(code).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("parameter value '", code, "' listed twice"));
    }
    auto id = schema.CodeIndex(attribute, code);
    if (!id.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "parameter value '", code, "' is not a code of attribute '",
          spec.attribute, "'"));
    }
    ids.push_back(*id);
  }
  return ids;
}

}  // namespace

absl::StatusOr<AttributeSchema> AttributeSchema::Create(
    std::vector<Attribute> attributes) {
  AttributeSchema schema;
  for (size_t i = 0; i < attributes.size(); ++i) {
    const Attribute& attribute = attributes[i];
    if (attribute.name.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", i, " has an empty name"));
    }
    if (!schema.name_index_.emplace(attribute.name, i).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute name '", attribute.name, "'"));
    }
    if (attribute.codes.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute '", attribute.name, "' has an empty domain"));
    }
    auto& codes = schema.code_index_.emplace_back();
    for (size_t c = 0; c < attribute.codes.size(); ++c) {
      const std::string& code = attribute.codes[c];
      if (code.find_first_of(",\n\r") != std::string::npos) {
        return absl::InvalidArgumentError(absl::StrCat(
            "code '", code, "' of attribute '", attribute.name,
            "' contains a separator character"));
      }
      if (!codes.emplace(code, static_cast<CodeId>(c)).second) {
        return absl::InvalidArgumentError(absl::StrCat(
            "duplicate code '", code, "' in attribute '", attribute.name, "'"));
      }
    }
  }
  schema.attributes_ = std::move(attributes);
  return schema;
}

std::optional<size_t> AttributeSchema::IndexOf(absl::string_view name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<CodeId> AttributeSchema::CodeIndex(size_t attribute,
                                                 absl::string_view code) const {
  const auto& codes = code_index_[attribute];
  auto it = codes.find(code);
  if (it == codes.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<AttributeSchema> AttributeSchema::WithCode(
    size_t attribute, std::string code) const {
  std::vector<Attribute> attributes = attributes_;
  attributes[attribute].codes.push_back(std::move(code));
  return Create(std::move(attributes));
}

absl::StatusOr<Microfile> Microfile::WithReassigned(
    AttributeSchema schema, size_t attribute,
    std::span<const std::pair<size_t, CodeId>> changes) const {
  if (schema.size() != schema_.size()) {
    return absl::InvalidArgumentError("replacement schema changes arity");
  }
  for (size_t a = 0; a < schema.size(); ++a) {
    const auto& old_codes = schema_.attribute(a).codes;
    const auto& new_codes = schema.attribute(a).codes;
    if (schema.attribute(a).name != schema_.attribute(a).name ||
        new_codes.size() < old_codes.size() ||
        !std::equal(old_codes.begin(), old_codes.end(), new_codes.begin())) {
      return absl::InvalidArgumentError(absl::StrCat(
          "replacement schema does not extend attribute '",
          schema_.attribute(a).name, "'"));
    }
  }
  if (attribute >= schema.size()) {
    return absl::OutOfRangeError(absl::StrCat("no attribute ", attribute));
  }
  Microfile copy(std::move(schema));
  copy.cells_ = cells_;
  const size_t width = copy.schema_.size();
  const size_t domain = copy.schema_.attribute(attribute).codes.size();
  for (const auto& [record, id] : changes) {
    if (record >= record_count()) {
      return absl::OutOfRangeError(absl::StrCat("no record ", record));
    }
    if (id >= domain) {
      return absl::InvalidArgumentError(
          absl::StrCat("code id ", id, " outside attribute domain"));
    }
    copy.cells_[record * width + attribute] = id;
  }
  return copy;
}

MicrofileBuilder::MicrofileBuilder(AttributeSchema schema)
    : file_(std::move(schema)) {}

absl::Status MicrofileBuilder::AddRecord(
    std::span<const absl::string_view> codes) {
  const AttributeSchema& schema = file_.schema_;
  if (codes.size() != schema.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "record has ", codes.size(), " values, expected ", schema.size()));
  }
  const size_t start = file_.cells_.size();
  for (size_t a = 0; a < codes.size(); ++a) {
    auto id = schema.CodeIndex(a, codes[a]);
    if (!id.has_value()) {
      file_.cells_.resize(start);
      return absl::InvalidArgumentError(
          absl::StrCat("unknown code '", codes[a], "' for attribute '",
                       schema.attribute(a).name, "'"));
    }
    file_.cells_.push_back(*id);
  }
  return absl::OkStatus();
}

void MicrofileBuilder::AddRecordIds(std::span<const CodeId> ids) {
  file_.cells_.insert(file_.cells_.end(), ids.begin(), ids.end());
}

void MicrofileBuilder::Reserve(size_t records) {
  file_.cells_.reserve(records * file_.schema_.size());
}

absl::StatusOr<Microfile> LoadMicrofile(std::istream& input,
                                        const AttributeSchema& schema) {
  std::string line;
  if (!std::getline(input, line)) {
    return absl::InvalidArgumentError("line 1: missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<absl::string_view> header = absl::StrSplit(line, ',');
  std::vector<std::string> expected;
  for (const Attribute& attribute : schema.attributes()) {
    expected.push_back(attribute.name);
  }
  if (!std::equal(header.begin(), header.end(), expected.begin(),
                  expected.end())) {
    return absl::InvalidArgumentError(
        absl::StrCat("line 1: header '", line, "' does not match schema '",
                     absl::StrJoin(expected, ","), "'"));
  }

  MicrofileBuilder builder(schema);
  std::vector<absl::string_view> fields;
  fields.reserve(schema.size());
  size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fields.clear();
    for (absl::string_view field : absl::StrSplit(line, ',')) {
      fields.push_back(field);
    }
    absl::Status status = builder.AddRecord(fields);
    if (!status.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, " (record ", line_number - 1,
          "): ", status.message()));
    }
  }
  if (input.bad()) return absl::DataLossError("read error");
  return std::move(builder).Build();
}

absl::Status WriteMicrofile(const Microfile& file, std::ostream& output) {
  const AttributeSchema& schema = file.schema();
  for (size_t a = 0; a < schema.size(); ++a) {
    if (a > 0) output << ',';
    output << schema.attribute(a).name;
  }
  output << '\n';
  std::string row;
  for (size_t r = 0; r < file.record_count(); ++r) {
    row.clear();
    for (size_t a = 0; a < schema.size(); ++a) {
      if (a > 0) row.push_back(',');
      absl::StrAppend(&row, file.code(r, a));
    }
    row.push_back('\n');
    output.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!output) return absl::DataLossError("write error");
  return absl::OkStatus();
}

int64_t QuantitySignal::total() const {
  return std::accumulate(counts.begin(), counts.end(), int64_t{0});
}

std::vector<double> QuantitySignal::AsDoubles() const {
  return std::vector<double>(counts.begin(), counts.end());
}

absl::StatusOr<Microfile> ApplySplitRules(const Microfile& file,
                                          const ParameterSpec& spec,
                                          uint64_t seed) {
  if (spec.split_rules.empty()) return file;
  GANON_ASSIGN_OR_RETURN(const size_t attribute,
                         RequireAttribute(file.schema(), spec.attribute));

  AttributeSchema schema = file.schema();
  std::vector<std::pair<size_t, CodeId>> changes;
  std::mt19937_64 gen(seed);
  absl::flat_hash_set<std::string> sources;
  for (const SplitRule& rule : spec.split_rules) {
    if (!sources.insert(rule.source).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("split source '", rule.source, "' listed twice"));
    }
    auto source_id = file.schema().CodeIndex(attribute, rule.source);
    if (!source_id.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("split source '", rule.source,
                       "' is not a code of attribute '", spec.attribute, "'"));
    }
    if (rule.shares.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("split rule for '", rule.source, "' has no shares"));
    }
    double weight_sum = 0.0;
    // A lone share may carry the whole weight, which renames the code.
    const bool rename = rule.shares.size() == 1;
    for (const DerivedShare& share : rule.shares) {
      if (!(share.weight > 0.0 && (share.weight < 1.0 || rename))) {
        return absl::InvalidArgumentError(absl::StrCat(
            "split weight for '", share.code, "' must lie in (0,1)"));
      }
      weight_sum += share.weight;
    }
    if (std::abs(weight_sum - 1.0) > kWeightSumTolerance) {
      return absl::InvalidArgumentError(
          absl::StrCat("split weights for '", rule.source, "' sum to ",
                       weight_sum, ", expected 1"));
    }

    std::vector<CodeId> derived_ids;
    for (const DerivedShare& share : rule.shares) {
      if (schema.CodeIndex(attribute, share.code).has_value()) {
        return absl::InvalidArgumentError(
            absl::StrCat("derived code '", share.code,
                         "' collides with an existing code of '",
                         spec.attribute, "'"));
      }
      GANON_ASSIGN_OR_RETURN(schema, schema.WithCode(attribute, share.code));
      derived_ids.push_back(*schema.CodeIndex(attribute, share.code));
    }

    std::vector<size_t> members;
    for (size_t r = 0; r < file.record_count(); ++r) {
      if (file.code_id(r, attribute) == *source_id) members.push_back(r);
    }
    if (seed != 0) {
      PartialShuffle(std::span<size_t>(members), members.size(), gen);
    }
    std::vector<double> quotas;
    for (const DerivedShare& share : rule.shares) {
      quotas.push_back(share.weight * static_cast<double>(members.size()));
    }
    // Renormalise so the quotas sum to the member count exactly.
    const double scale =
        members.empty() ? 0.0
                        : static_cast<double>(members.size()) /
                              std::accumulate(quotas.begin(), quotas.end(), 0.0);
    for (double& quota : quotas) quota *= scale;
    GANON_ASSIGN_OR_RETURN(
        std::vector<int64_t> sizes,
        LargestRemainder(quotas, static_cast<int64_t>(members.size())));
    size_t next = 0;
    for (size_t s = 0; s < sizes.size(); ++s) {
      for (int64_t k = 0; k < sizes[s]; ++k) {
        changes.emplace_back(members[next++], derived_ids[s]);
      }
    }
  }
  return file.WithReassigned(std::move(schema), attribute, changes);
}

absl::StatusOr<SelectionMatcher> SelectionMatcher::Create(
    const AttributeSchema& schema, const VitalSelection& selection) {
  SelectionMatcher matcher;
  if (selection.attributes.empty()) {
    return absl::InvalidArgumentError("vital selection names no attributes");
  }
  if (selection.combinations.empty()) {
    return absl::InvalidArgumentError(
        "vital selection has no value combinations");
  }
  for (const std::string& name : selection.attributes) {
    GANON_ASSIGN_OR_RETURN(const size_t index, RequireAttribute(schema, name));
    if (std::find(matcher.attributes_.begin(), matcher.attributes_.end(),
                  index) != matcher.attributes_.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("vital attribute '", name, "' listed twice"));
    }
    matcher.attributes_.push_back(index);
  }
  for (const auto& combination : selection.combinations) {
    if (combination.size() != matcher.attributes_.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "vital combination (", absl::StrJoin(combination, ","),
          ") has arity ", combination.size(), ", expected ",
          matcher.attributes_.size()));
    }
    std::vector<CodeId> tuple;
    for (size_t i = 0; i < combination.size(); ++i) {
      auto id = schema.CodeIndex(matcher.attributes_[i], combination[i]);
      if (!id.has_value()) {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown code '", combination[i], "' for attribute '",
                         selection.attributes[i], "'"));
      }
      tuple.push_back(*id);
    }
    matcher.tuples_.push_back(std::move(tuple));
  }
  std::sort(matcher.tuples_.begin(), matcher.tuples_.end());
  matcher.tuples_.erase(
      std::unique(matcher.tuples_.begin(), matcher.tuples_.end()),
      matcher.tuples_.end());
  return matcher;
}

bool SelectionMatcher::Matches(const Microfile& file, size_t record) const {
  // Lexicographic binary search of the record's tuple among the sorted ones.
  size_t lo = 0;
  size_t hi = tuples_.size();
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    int cmp = 0;
    for (size_t i = 0; i < attributes_.size() && cmp == 0; ++i) {
      const CodeId value = file.code_id(record, attributes_[i]);
      if (tuples_[mid][i] < value) cmp = -1;
      if (tuples_[mid][i] > value) cmp = 1;
    }
    if (cmp == 0) return true;
    if (cmp < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return false;
}

absl::StatusOr<QuantitySignal> ComputeQuantitySignal(
    const Microfile& file, const std::optional<VitalSelection>& selection,
    const ParameterSpec& spec) {
  const AttributeSchema& schema = file.schema();
  GANON_ASSIGN_OR_RETURN(const size_t parameter,
                         RequireAttribute(schema, spec.attribute));
  GANON_ASSIGN_OR_RETURN(const std::vector<CodeId> order,
                         ResolveOrder(schema, parameter, spec));

  std::optional<SelectionMatcher> matcher;
  if (selection.has_value()) {
    GANON_ASSIGN_OR_RETURN(matcher,
                           SelectionMatcher::Create(schema, *selection));
    for (size_t index : matcher->attribute_indices()) {
      if (index == parameter) {
        return absl::InvalidArgumentError(
            absl::StrCat("parameter attribute '", spec.attribute,
                         "' cannot also be a vital attribute"));
      }
    }
  }

  constexpr size_t kUnlisted = static_cast<size_t>(-1);
  std::vector<size_t> position(schema.attribute(parameter).codes.size(),
                               kUnlisted);
  for (size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  QuantitySignal signal;
  signal.label = selection.has_value() ? "selection" : "all records";
  signal.counts.assign(order.size(), 0);
  for (size_t r = 0; r < file.record_count(); ++r) {
    if (matcher.has_value() && !matcher->Matches(file, r)) continue;
    const size_t slot = position[file.code_id(r, parameter)];
    if (slot == kUnlisted) {
      if (spec.strict) {
        return absl::InvalidArgumentError(absl::StrCat(
            "record ", r + 1, " has parameter value '",
            file.code(r, parameter), "' missing from the parameter order"));
      }
      continue;
    }
    ++signal.counts[slot];
  }
  return signal;
}

absl::StatusOr<ConcentrationSignal> ComputeConcentrationSignal(
    const QuantitySignal& numerator, const QuantitySignal& superset) {
  if (numerator.counts.size() != superset.counts.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "signal lengths differ: ", numerator.counts.size(), " vs ",
        superset.counts.size()));
  }
  ConcentrationSignal signal;
  signal.label = absl::StrCat(numerator.label, " / ", superset.label);
  signal.values.resize(numerator.counts.size());
  for (size_t i = 0; i < numerator.counts.size(); ++i) {
    const int64_t part = numerator.counts[i];
    const int64_t whole = superset.counts[i];
    if (part < 0 || whole < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("negative count at position ", i + 1));
    }
    if (part > whole) {
      return absl::InvalidArgumentError(absl::StrCat(
          "position ", i + 1, ": numerator ", part,
          " exceeds superset ", whole, "; not a superset"));
    }
    signal.values[i] =
        whole == 0 ? 0.0
                   : static_cast<double>(part) / static_cast<double>(whole);
  }
  return signal;
}

}  // namespace ganon
