// Copyright 2026 The lmprobe Authors.
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

#include "lmprobe/task_data.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/text.hpp"

namespace lmprobe {
namespace {

using nlohmann::json;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), StatusCode::kIo, "cannot open file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), StatusCode::kIo, "cannot write file: " + path);
  return out;
}

[[noreturn]] void parse_fail(const std::string& path, size_t line_no,
                             const std::string& what) {
  fail(StatusCode::kParse,
       path + ":" + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

size_t published_size(PsychSubset subset) {
  switch (subset) {
    case PsychSubset::kCprag: return 34;
    case PsychSubset::kRole: return 88;
    case PsychSubset::kNegSimp: return 36;
    case PsychSubset::kNegNat: return 16;
    default: return 16;
  }
}

}  // namespace

ProbeTask load_olmpics(const std::string& path, const std::string& task_name,
                       Split split) {
  const TaskInfo* info = lookup_task_info(task_name);
  return load_olmpics(path, task_name, split,
                      info ? info->format : TaskFormat::kMcMlm);
}

ProbeTask load_olmpics(const std::string& path, const std::string& task_name,
                       Split split, TaskFormat format) {
  std::ifstream in = open_input(path);
  ProbeTask task;
  task.name = task_name;
  task.split = split;
  task.format = format;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      parse_fail(path, line_no, std::string("bad JSON: ") + e.what());
    }
    if (!record.is_object() || !record.contains("stem") ||
        !record.contains("choices") || !record.contains("answer")) {
      parse_fail(path, line_no,
                 "record needs 'stem', 'choices' and 'answer' fields");
    }
    ProbeQuestion q;
    try {
      q.stem = record.at("stem").get<std::string>();
      q.choices = record.at("choices").get<std::vector<std::string>>();
      q.gold_index = record.at("answer").get<int>();
    } catch (const json::exception& e) {
      parse_fail(path, line_no, std::string("bad field type: ") + e.what());
    }
    if (record.contains("metadata") && record["metadata"].is_object()) {
      for (const auto& [k, v] : record["metadata"].items())
        if (v.is_string()) q.metadata[k] = v.get<std::string>();
    }
    q.metadata["line"] = std::to_string(line_no);
    try {
      q.validate(format);
    } catch (const Error& e) {
      fail(e.code(), path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    task.questions.push_back(std::move(q));
  }
  task.validate();
  return task;
}

void save_olmpics(const ProbeTask& task, const std::string& path) {
  std::ofstream out = open_output(path);
  for (const auto& q : task.questions) {
    json record;
    record["stem"] = q.stem;
    record["choices"] = q.choices;
    record["answer"] = q.gold_index;
    json meta = json::object();
    for (const auto& [k, v] : q.metadata)
      if (k != "line") meta[k] = v;
    if (!meta.empty()) record["metadata"] = meta;
    out << record.dump() << "\n";
  }
}

std::vector<PsychItem> load_psych(const std::string& path, PsychSubset subset,
                                  bool check_size) {
  std::ifstream in = open_input(path);
  std::vector<PsychItem> items;
  std::string line;
  size_t line_no = 0;
  const bool neg = subset == PsychSubset::kNegSimp ||
                   subset == PsychSubset::kNegNat ||
                   subset == PsychSubset::kNegLnat;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split_tabs(line);
    PsychItem item;
    item.subset = subset;
    if (subset == PsychSubset::kCprag) {
      if (cols.size() != 5)
        parse_fail(path, line_no, "CPRAG rows need 5 columns");
      item.context = cols[1];
      item.expected = cols[2];
      item.good_completions = {cols[2]};
      item.bad_completions = {cols[3], cols[4]};
      item.condition = PsychCondition::kNone;
    } else if (subset == PsychSubset::kRole) {
      if (cols.size() != 4)
        parse_fail(path, line_no, "ROLE rows need 4 columns");
      item.context = cols[1];
      item.expected = cols[2];
      item.good_completions = {cols[2]};
      item.bad_completions = {cols[3]};
      item.condition = PsychCondition::kNone;
    } else {
      if (cols.size() != 5)
        parse_fail(path, line_no, "NEG rows need 5 columns");
      if (cols[1] == "affirmative") {
        item.condition = PsychCondition::kAffirmative;
      } else if (cols[1] == "negated") {
        item.condition = PsychCondition::kNegated;
      } else {
        parse_fail(path, line_no, "condition must be affirmative|negated");
      }
      item.context = cols[2];
      item.expected = cols[3];
      item.good_completions = {cols[3]};
      item.bad_completions = {cols[4]};
    }
    require(!item.context.empty(), StatusCode::kValidation,
            path + ":" + std::to_string(line_no) + ": empty context");
    items.push_back(std::move(item));
  }

  if (neg) {
    // Affirm/negate rows are adjacent; the pair id comes from row order.
    require(items.size() % 2 == 0, StatusCode::kValidation,
            path + ": NEG subset must pair affirmative/negated rows");
    for (size_t i = 0; i < items.size(); i += 2) {
      require(items[i].condition == PsychCondition::kAffirmative &&
                  items[i + 1].condition == PsychCondition::kNegated,
              StatusCode::kValidation,
              path + ": rows " + std::to_string(i + 1) + "/" +
                  std::to_string(i + 2) +
                  " do not form an affirmative,negated pair");
      const std::string pid = "pair-" + std::to_string(i / 2);
      items[i].pair_id = pid;
      items[i + 1].pair_id = pid;
    }
  }

  if (check_size) {
    require(items.size() == published_size(subset), StatusCode::kValidation,
            path + ": subset " + to_string(subset) + " should have " +
                std::to_string(published_size(subset)) + " items, found " +
                std::to_string(items.size()) +
                " (pass check_size=false for custom files)");
  }
  return items;
}

void save_psych(const std::vector<PsychItem>& items, const std::string& path) {
  std::ofstream out = open_output(path);
  size_t i = 0;
  for (const auto& item : items) {
    switch (item.subset) {
      case PsychSubset::kCprag:
        out << "cprag-" << i << '\t' << item.context << '\t' << item.expected
            << '\t' << item.bad_completions.at(0) << '\t'
            << item.bad_completions.at(1) << "\n";
        break;
      case PsychSubset::kRole:
        out << "role-" << i << '\t' << item.context << '\t' << item.expected
            << '\t' << item.bad_completions.at(0) << "\n";
        break;
      default:
        out << item.pair_id << '\t' << to_string(item.condition) << '\t'
            << item.context << '\t' << item.expected << '\t'
            << item.bad_completions.at(0) << "\n";
    }
    ++i;
  }
}

ProbeQuestion apply_perturbation(const ProbeQuestion& q,
                                 const PerturbationSpec& spec) {
  ProbeQuestion out = q;
  if (spec.kind == PerturbationKind::kAppendPeriod) {
    if (out.stem.empty() || (out.stem.back() != '.' &&
                             out.stem.back() != '!' &&
                             out.stem.back() != '?')) {
      out.stem.push_back('.');
    }
  }
  return out;
}

ProbeTask apply_perturbation(const ProbeTask& task,
                             const PerturbationSpec& spec) {
  ProbeTask out = task;
  for (auto& q : out.questions) q = apply_perturbation(q, spec);
  return out;
}

ProbeQuestion apply_prompt_template(const ProbeQuestion& q,
                                    const PromptTemplate& t) {
  std::map<std::string, std::string> fragments;
  fragments["stem"] = q.stem;

  if (!t.fragments.pattern.empty()) {
    std::regex re;
    try {
      re.assign(t.fragments.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      fail(StatusCode::kTemplate,
           "bad fragment pattern in template '" + t.name + "': " + e.what());
    }
    std::smatch m;
    if (std::regex_match(q.stem, m, re)) {
      require(m.size() >= t.fragments.names.size() + 1,
              StatusCode::kTemplate,
              "template '" + t.name + "': pattern has fewer capture groups "
              "than fragment names");
      for (size_t i = 0; i < t.fragments.names.size(); ++i)
        fragments[t.fragments.names[i]] = m[i + 1].str();
    }
    // A non-matching stem only fails if the pattern references a fragment.
  }

  std::string stem;
  const std::string& pat = t.pattern;
  for (size_t i = 0; i < pat.size();) {
    if (pat[i] != '{') {
      stem.push_back(pat[i]);
      ++i;
      continue;
    }
    const size_t close = pat.find('}', i);
    require(close != std::string::npos, StatusCode::kTemplate,
            "template '" + t.name + "': unclosed placeholder in pattern");
    std::string key = pat.substr(i + 1, close - i - 1);
    bool cap = false;
    if (const size_t colon = key.find(':'); colon != std::string::npos) {
      const std::string mod = key.substr(colon + 1);
      require(mod == "cap", StatusCode::kTemplate,
              "template '" + t.name + "': unknown modifier '" + mod + "'");
      cap = true;
      key = key.substr(0, colon);
    }
    auto it = fragments.find(key);
    require(it != fragments.end(), StatusCode::kTemplate,
            "template '" + t.name + "': fragment '" + key +
                "' is not resolvable from stem: " + q.stem);
    stem += cap ? capitalize_first(it->second) : it->second;
    i = close + 1;
  }

  ProbeQuestion out;
  out.stem = std::move(stem);
  out.metadata = q.metadata;
  out.metadata["template"] = t.name;
  out.gold_index = q.gold_index;
  if (t.verbalizers.empty()) {
    out.choices = q.choices;
  } else {
    require(t.verbalizers.size() == q.choices.size(), StatusCode::kTemplate,
            "template '" + t.name + "' has " +
                std::to_string(t.verbalizers.size()) +
                " verbalizers for a question with " +
                std::to_string(q.choices.size()) + " choices");
    out.choices = t.verbalizers;
  }
  return out;
}

ProbeTask apply_prompt_template(const ProbeTask& task,
                                const PromptTemplate& t) {
  ProbeTask out;
  out.name = task.name;
  out.format = task.format;
  out.split = task.split;
  out.questions.reserve(task.questions.size());
  for (const auto& q : task.questions)
    out.questions.push_back(apply_prompt_template(q, t));
  out.validate();
  return out;
}

PromptSet load_prompt_set(const std::string& path) {
  std::ifstream in = open_input(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(StatusCode::kParse, path + ": " + e.what());
  }
  PromptSet set;
  set.task = doc.value("task", "");
  FragmentRules rules;
  if (doc.contains("fragments")) {
    rules.pattern = doc["fragments"].value("pattern", "");
    if (doc["fragments"].contains("names"))
      rules.names =
          doc["fragments"]["names"].get<std::vector<std::string>>();
  }
  require(doc.contains("templates") && doc["templates"].is_array(),
          StatusCode::kParse, path + ": missing 'templates' array");
  for (const auto& jt : doc["templates"]) {
    PromptTemplate t;
    t.name = jt.value("name", "");
    t.pattern = jt.value("pattern", "");
    require(!t.name.empty() && !t.pattern.empty(), StatusCode::kParse,
            path + ": templates need 'name' and 'pattern'");
    if (jt.contains("verbalizers") && jt["verbalizers"].is_array())
      t.verbalizers = jt["verbalizers"].get<std::vector<std::string>>();
    t.fragments = rules;
    set.templates.push_back(std::move(t));
  }
  return set;
}

std::vector<std::pair<std::string, ProbeTask>> slice_by_age(
    const ProbeTask& task, const std::vector<int>& bin_edges) {
  require(bin_edges.size() >= 2, StatusCode::kSlicing,
          "slice_by_age needs at least two bin edges");
  for (size_t i = 1; i < bin_edges.size(); ++i)
    require(bin_edges[i - 1] < bin_edges[i], StatusCode::kSlicing,
            "bin edges must be strictly increasing");

  std::vector<std::pair<std::string, ProbeTask>> slices;
  for (size_t i = 0; i + 1 < bin_edges.size(); ++i) {
    std::ostringstream name;
    name << "[" << bin_edges[i] << "," << bin_edges[i + 1] << ")";
    ProbeTask t;
    t.name = task.name;
    t.format = task.format;
    t.split = task.split;
    slices.emplace_back(name.str(), std::move(t));
  }

  for (size_t qi = 0; qi < task.questions.size(); ++qi) {
    const auto& q = task.questions[qi];
    const auto key = first_integer(q.stem);
    require(key.has_value(), StatusCode::kSlicing,
            "question " + std::to_string(qi) +
                " has no parseable integer age: " + q.stem);
    bool placed = false;
    for (size_t i = 0; i + 1 < bin_edges.size(); ++i) {
      if (*key >= bin_edges[i] && *key < bin_edges[i + 1]) {
        slices[i].second.questions.push_back(q);
        placed = true;
        break;
      }
    }
    require(placed, StatusCode::kSlicing,
            "question " + std::to_string(qi) + " slice key " +
                std::to_string(*key) + " falls outside the bin range: " +
                q.stem);
  }
  return slices;
}

}  // namespace lmprobe
