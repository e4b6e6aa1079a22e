#include "apc/report.hpp"

#include <set>

#include "apc/containment.hpp"
#include "json.hpp"

namespace apc::lj {

Report make_report(const RunOutcome& outcome, Mode mode, size_t max_paths) {
  Report r;
  r.mode = to_string(mode);
  switch (outcome.status) {
    case RunOutcome::Status::Ok:
      r.result = render_value(outcome.result, outcome.heap);
      break;
    case RunOutcome::Status::Violation:
      r.result = "<violation>";
      break;
    default:
      r.result = "<error>";
      break;
  }
  r.wall_time_ms = outcome.wall_time_ms;

  std::set<std::string> seen_reads, seen_writes;
  PathTrie all;
  for (const auto& entry : outcome.monitor) {
    all = PathTrie::unite(all, entry.paths);
    auto paths = entry.paths.flatten(max_paths);
    for (const auto& p : paths) {
      std::string text = to_string(p);
      switch (entry.kind) {
        case EffectKind::Read:
          if (seen_reads.insert(text).second) r.reads.push_back(text);
          r.log_lines.push_back("READ " + text);
          break;
        case EffectKind::Write:
          if (seen_writes.insert(text).second) r.writes.push_back(text);
          r.log_lines.push_back("WRITE " + text);
          break;
        case EffectKind::ReadViolation:
        case EffectKind::WriteViolation: {
          std::string kind =
              entry.kind == EffectKind::ReadViolation ? "read" : "write";
          std::string contract =
              entry.contract ? apc::to_string(*entry.contract) : "";
          r.violations.push_back(ViolationRecord{kind, text, contract});
          r.log_lines.push_back("VIOLATION " + kind + " " + text +
                                " CONTRACT " + contract);
          break;
        }
      }
    }
  }
  r.trie_stats = all.stats();
  return r;
}

std::string to_json(const Report& r) {
  nlohmann::json j;
  j["schema_version"] = r.schema_version;
  j["mode"] = r.mode;
  j["result"] = r.result;
  j["reads"] = r.reads;
  j["writes"] = r.writes;
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : r.violations) {
    nlohmann::json jv;
    jv["kind"] = v.kind;
    jv["path"] = v.path;
    jv["contract"] = v.contract;
    vs.push_back(jv);
  }
  j["violations"] = vs;
  j["trie_stats"] = {{"node_count", r.trie_stats.node_count},
                     {"path_count", r.trie_stats.path_count},
                     {"char_count", r.trie_stats.char_count}};
  j["wall_time_ms"] = r.wall_time_ms;
  return j.dump(2);
}

std::string to_text(const Report& r) {
  std::string out;
  for (const auto& line : r.log_lines) {
    out += line;
    out += '\n';
  }
  out += "RESULT " + r.result + "\n";
  out += "MODE " + r.mode + "\n";
  out += "TRIE nodes=" + std::to_string(r.trie_stats.node_count) +
         " paths=" + std::to_string(r.trie_stats.path_count) +
         " chars=" + std::to_string(r.trie_stats.char_count) + "\n";
  return out;
}

}  // namespace apc::lj
