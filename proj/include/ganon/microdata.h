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

// Microfiles: rectangular tables of respondent records over categorical
// attributes, plus the quantity and concentration signals extracted from them.
//
// Codes are opaque strings. Internally each cell stores the index of its code
// in the attribute's domain, so a microfile with a few million records stays
// compact.

#ifndef GANON_MICRODATA_H_
#define GANON_MICRODATA_H_

#include <cstdint>
#include <initializer_list>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace ganon {

using CodeId = uint32_t;

struct Attribute {
  std::string name;
  std::vector<std::string> codes;
};

class AttributeSchema {
 public:
  // Fails on duplicate attribute names, empty domains or duplicate codes
  // within one domain.
  static absl::StatusOr<AttributeSchema> Create(
      std::vector<Attribute> attributes);

  AttributeSchema() = default;

  size_t size() const { return attributes_.size(); }
  const Attribute& attribute(size_t index) const { return attributes_[index]; }
  const std::vector<Attribute>& attributes() const { return attributes_; }

  std::optional<size_t> IndexOf(absl::string_view name) const;
  std::optional<CodeId> CodeIndex(size_t attribute,
                                  absl::string_view code) const;

  // Returns a copy with `code` appended to the attribute's domain. Existing
  // code ids are unchanged.
  absl::StatusOr<AttributeSchema> WithCode(size_t attribute,
                                           std::string code) const;

 private:
  std::vector<Attribute> attributes_;
  absl::flat_hash_map<std::string, size_t> name_index_;
  std::vector<absl::flat_hash_map<std::string, CodeId>> code_index_;
};

// Immutable once built. Row order is preserved from the source.
class Microfile {
 public:
  explicit Microfile(AttributeSchema schema) : schema_(std::move(schema)) {}

  const AttributeSchema& schema() const { return schema_; }
  size_t record_count() const {
    return schema_.size() == 0 ? 0 : cells_.size() / schema_.size();
  }
  size_t attribute_count() const { return schema_.size(); }

  CodeId code_id(size_t record, size_t attribute) const {
    return cells_[record * schema_.size() + attribute];
  }
  absl::string_view code(size_t record, size_t attribute) const {
    return schema_.attribute(attribute).codes[code_id(record, attribute)];
  }

  // Copy with the given cells of one attribute rewritten. Every new id must
  // belong to `schema`, which may only extend the current schema's domains.
  absl::StatusOr<Microfile> WithReassigned(
      AttributeSchema schema, size_t attribute,
      std::span<const std::pair<size_t, CodeId>> changes) const;

  friend class MicrofileBuilder;

 private:
  AttributeSchema schema_;
  std::vector<CodeId> cells_;
};

class MicrofileBuilder {
 public:
  explicit MicrofileBuilder(AttributeSchema schema);

  // Appends one record given as codes in schema order.
  absl::Status AddRecord(std::span<const absl::string_view> codes);
  absl::Status AddRecord(std::initializer_list<absl::string_view> codes) {
    return AddRecord(std::span<const absl::string_view>(codes.begin(),
                                                       codes.size()));
  }
  void AddRecordIds(std::span<const CodeId> ids);
  void Reserve(size_t records);

  size_t record_count() const { return file_.record_count(); }
  Microfile Build() && { return std::move(file_); }

 private:
  Microfile file_;
};

// Reads the CSV exchange format: a header line of attribute names followed by
// one comma-separated record per line. Errors carry the 1-based line number.
absl::StatusOr<Microfile> LoadMicrofile(std::istream& input,
                                        const AttributeSchema& schema);
absl::Status WriteMicrofile(const Microfile& file, std::ostream& output);

// Vital attributes and the code tuples over them whose distribution is being
// protected.
struct VitalSelection {
  std::vector<std::string> attributes;
  std::vector<std::vector<std::string>> combinations;
};

struct DerivedShare {
  std::string code;
  double weight = 0.0;
};

// Splits every record carrying `source` into the derived codes in proportion
// to their weights.
struct SplitRule {
  std::string source;
  std::vector<DerivedShare> shares;
};

struct ParameterSpec {
  std::string attribute;
  // Signal index order.
  std::vector<std::string> order;
  std::vector<SplitRule> split_rules;
  // Reject matching records whose parameter value is missing from `order`.
  bool strict = true;
};

struct QuantitySignal {
  std::string label;
  std::vector<int64_t> counts;

  int64_t total() const;
  std::vector<double> AsDoubles() const;
};

struct ConcentrationSignal {
  std::string label;
  std::vector<double> values;
};

// Reassigns records whose parameter value is a split-rule source. With
// seed == 0 the source records keep their file order and the first
// apportioned block goes to the first derived code; any other seed permutes
// them first. Derived codes are appended to the parameter domain.
absl::StatusOr<Microfile> ApplySplitRules(const Microfile& file,
                                          const ParameterSpec& spec,
                                          uint64_t seed);

// Counts records whose vital tuple is in the selection, per parameter value.
// A missing selection counts every record (the whole-file superset).
absl::StatusOr<QuantitySignal> ComputeQuantitySignal(
    const Microfile& file, const std::optional<VitalSelection>& selection,
    const ParameterSpec& spec);

absl::StatusOr<ConcentrationSignal> ComputeConcentrationSignal(
    const QuantitySignal& numerator, const QuantitySignal& superset);

// Per-record membership test for a vital selection, resolved against a
// schema.
class SelectionMatcher {
 public:
  static absl::StatusOr<SelectionMatcher> Create(
      const AttributeSchema& schema, const VitalSelection& selection);

  bool Matches(const Microfile& file, size_t record) const;
  std::span<const size_t> attribute_indices() const { return attributes_; }

 private:
  std::vector<size_t> attributes_;
  std::vector<std::vector<CodeId>> tuples_;  // sorted
};

}  // namespace ganon

#endif  // GANON_MICRODATA_H_
