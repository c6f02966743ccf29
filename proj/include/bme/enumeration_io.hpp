#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bme/enumeration.hpp"

namespace bme {

// Wire format:
//
//   {"stages":[{"s":0,"new":[[]]},{"s":1,"new":[[0],[1]]},{"s":2,"new":[[0,0]]}]}
//
// Sequences are arrays of non-negative integers, "s" strictly increasing.
// Stage indices that do not fit a JSON number are carried as decimal
// strings.

inline Nat nat_from_json(const nlohmann::json& j, const char* what) {
  if (j.is_string()) return Nat(j.get<std::string>());
  if (j.is_number_unsigned()) return Nat(j.get<std::uint64_t>());
  throw std::invalid_argument(std::string("enumeration json: ") + what +
                              " must be a non-negative integer");
}

inline nlohmann::json nat_to_json(const Nat& n) {
  if (n <= Nat(std::uint64_t(-1) / 2)) return nlohmann::json(n.convert_to<std::uint64_t>());
  return nlohmann::json(n.str());
}

inline Enumeration enumeration_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("stages") || !j["stages"].is_array()) {
    throw std::invalid_argument("enumeration json: expected {\"stages\":[...]}");
  }
  std::vector<Stage> stages;
  for (const auto& js : j["stages"]) {
    if (!js.is_object() || !js.contains("s") || !js.contains("new") || !js["new"].is_array()) {
      throw std::invalid_argument(
          "enumeration json: each stage must be {\"s\":nat,\"new\":[[..]..]}");
    }
    Stage st;
    st.index = nat_from_json(js["s"], "stage index");
    for (const auto& jseq : js["new"]) {
      if (!jseq.is_array()) {
        throw std::invalid_argument("enumeration json: sequences must be arrays");
      }
      Seq s;
      for (const auto& je : jseq) {
        if (!je.is_number_unsigned()) {
          throw std::invalid_argument(
              "enumeration json: sequence entries must be non-negative integers");
        }
        s.push_back(je.get<Entry>());
      }
      st.new_elements.push_back(std::move(s));
    }
    stages.push_back(std::move(st));
  }
  return Enumeration(std::move(stages));
}

inline Enumeration enumeration_from_json_text(const std::string& text) {
  return enumeration_from_json(nlohmann::json::parse(text));
}

inline nlohmann::json enumeration_to_json(const Enumeration& e) {
  nlohmann::json stages = nlohmann::json::array();
  for (const Stage& st : e.stages()) {
    nlohmann::json news = nlohmann::json::array();
    for (const Seq& s : st.new_elements) {
      news.push_back(nlohmann::json(s));
    }
    stages.push_back(nlohmann::json{{"s", nat_to_json(st.index)}, {"new", news}});
  }
  return nlohmann::json{{"stages", stages}};
}

// DOT rendering of the enumerated tree. Nodes are grouped into one box per
// stage; nodes present only through prefix closure sit outside the boxes.
// When `dashed_after_first` is set (the Ackermann-tree view), edges into
// nodes of later stages are dashed and nodes carry their decoded meaning.
struct DotOptions {
  bool dashed_after_first = false;
  // optional extra label per node (e.g. "A(2,1)")
  std::map<Seq, std::string> annotations;
};

inline std::string enumeration_to_dot(const Enumeration& e, const DotOptions& opts = {}) {
  detail::require_valid_enumeration(e, "enumeration_to_dot");
  const EnumTree tree = tree_of_elements(e.all_elements());
  std::map<Seq, std::size_t> id;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) id[tree.nodes[i]] = i;
  std::map<Seq, Nat> stage_of;
  for (const Stage& st : e.stages()) {
    for (const Seq& s : st.new_elements) stage_of[s] = st.index;
  }
  const Nat first_index = e.stages().empty() ? Nat(0) : e.stages().front().index;

  std::ostringstream out;
  out << "digraph enumeration {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  auto label = [&](const Seq& s) {
    std::string l = seq_to_string(s);
    if (auto it = opts.annotations.find(s); it != opts.annotations.end()) {
      l += "\\n" + it->second;
    }
    return l;
  };
  std::size_t cluster = 0;
  for (const Stage& st : e.stages()) {
    out << "  subgraph cluster_" << cluster++ << " {\n    label=\"stage " << st.index.str()
        << "\";\n    color=gray;\n";
    for (const Seq& s : st.new_elements) {
      out << "    n" << id[s] << " [label=\"" << label(s) << "\"];\n";
    }
    out << "  }\n";
  }
  for (const Seq& s : tree.nodes) {
    if (!stage_of.count(s)) {
      out << "  n" << id[s] << " [label=\"" << label(s) << "\"];\n";
    }
  }
  for (const Seq& s : tree.nodes) {
    if (s.empty()) continue;
    Seq parent(s.begin(), s.end() - 1);
    bool dashed = false;
    if (opts.dashed_after_first) {
      auto it = stage_of.find(s);
      dashed = it != stage_of.end() && it->second != first_index;
    }
    out << "  n" << id[parent] << " -> n" << id[s] << (dashed ? " [style=dashed]" : "")
        << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace bme
