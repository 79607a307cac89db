// Copyright 2026 The stancedebate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stancedebate/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "stancedebate/errors.hpp"

namespace stancedebate {
namespace {

using nlohmann::json;

const std::string& string_field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw SchemaError(std::string("missing field '") + name + "'");
  if (!doc[name].is_string()) throw SchemaError(std::string("field '") + name + "' must be a string");
  return doc[name].get_ref<const std::string&>();
}

}  // namespace

CorpusRecord record_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("line is not a JSON object");
  CorpusRecord rec;
  rec.claim_id = string_field(doc, "claim_id");
  if (rec.claim_id.empty()) throw SchemaError("claim_id is empty");
  rec.claim_text = string_field(doc, "claim_text");
  rec.label = string_field(doc, "label");
  if (!parse_label(rec.label)) {
    throw SchemaError("label must be \"rumor\" or \"non-rumor\", got \"" + rec.label + "\"");
  }
  if (doc.contains("locale")) {
    rec.locale = string_field(doc, "locale");
    if (!parse_locale(rec.locale)) throw SchemaError("unknown locale \"" + rec.locale + "\"");
  }
  if (!doc.contains("comments")) throw SchemaError("missing field 'comments'");
  if (!doc["comments"].is_array()) throw SchemaError("field 'comments' must be an array");
  std::size_t i = 0;
  for (const auto& item : doc["comments"]) {
    const std::string where = "comments[" + std::to_string(i++) + "]";
    if (!item.is_object()) throw SchemaError(where + " is not an object");
    CorpusComment c;
    if (!item.contains("text") || !item["text"].is_string()) {
      throw SchemaError(where + ".text must be a string");
    }
    c.text = item["text"].get<std::string>();
    if (!item.contains("delay_s") || !item["delay_s"].is_number()) {
      throw SchemaError(where + ".delay_s must be a number");
    }
    c.delay_s = item["delay_s"].get<double>();
    if (c.delay_s < 0.0) throw SchemaError(where + ".delay_s is negative");
    rec.comments.push_back(std::move(c));
  }
  return rec;
}

Thread thread_from_record(const CorpusRecord& record) {
  const auto label = parse_label(record.label);
  const auto locale = parse_locale(record.locale);
  if (!label) throw SchemaError("bad label \"" + record.label + "\"");
  if (!locale) throw SchemaError("bad locale \"" + record.locale + "\"");
  try {
    std::vector<Comment> comments;
    comments.reserve(record.comments.size());
    for (const auto& c : record.comments) comments.emplace_back(c.text, c.delay_s);
    return Thread(Claim(record.claim_id, record.claim_text, label, *locale), std::move(comments));
  } catch (const ContractError& e) {
    throw SchemaError(e.what());
  }
}

json record_to_json(const CorpusRecord& record) {
  json comments = json::array();
  for (const auto& c : record.comments) {
    comments.push_back({{"text", c.text}, {"delay_s", c.delay_s}});
  }
  return {{"claim_id", record.claim_id},
          {"claim_text", record.claim_text},
          {"label", record.label},
          {"locale", record.locale},
          {"comments", std::move(comments)}};
}

CorpusRecord record_from_thread(const Thread& thread) {
  const Claim& claim = thread.claim();
  if (!claim.label()) throw ContractError("claim '" + claim.id() + "' has no label");
  CorpusRecord rec;
  rec.claim_id = claim.id();
  rec.claim_text = claim.text();
  rec.label = std::string(to_string(*claim.label()));
  rec.locale = std::string(to_string(claim.locale()));
  for (const auto& c : thread.comments()) rec.comments.push_back({c.text(), c.delay()});
  return rec;
}

CorpusLoad parse_corpus(std::istream& in) {
  CorpusLoad out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    try {
      auto doc = json::parse(line, nullptr, false);
      if (doc.is_discarded()) throw SchemaError("invalid JSON");
      Thread thread = thread_from_record(record_from_json(doc));
      if (!seen.insert(thread.claim().id()).second) {
        throw SchemaError("duplicate claim_id \"" + thread.claim().id() + "\"");
      }
      out.threads.push_back(std::move(thread));
    } catch (const SchemaError& e) {
      out.errors.push_back({line_no, e.what()});
    }
  }
  return out;
}

CorpusLoad load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus " + path.string());
  return parse_corpus(in);
}

void write_records(std::ostream& out, std::span<const CorpusRecord> records) {
  for (const auto& rec : records) out << record_to_json(rec).dump() << '\n';
}

void write_corpus(std::ostream& out, std::span<const Thread> threads) {
  for (const auto& t : threads) out << record_to_json(record_from_thread(t)).dump() << '\n';
}

void write_error_report(std::ostream& out, std::span<const LineError> errors) {
  for (const auto& e : errors) {
    out << json{{"line_no", e.line_no}, {"reason", e.reason}}.dump() << '\n';
  }
}

Thread truncate_by_count(const Thread& thread, std::size_t n) {
  const auto& all = thread.comments();
  const auto keep = static_cast<std::ptrdiff_t>(std::min(n, all.size()));
  return Thread(thread.claim(), std::vector<Comment>(all.begin(), all.begin() + keep));
}

}  // namespace stancedebate
