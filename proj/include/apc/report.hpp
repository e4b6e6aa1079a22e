#pragma once

#include <string>
#include <vector>

#include "apc/lambda_j.hpp"
#include "apc/path_trie.hpp"

namespace apc::lj {

struct ViolationRecord {
  std::string kind;  // "read" | "write"
  std::string path;
  std::string contract;
};

/// Machine-readable run protocol; the JSON schema is fixed and versioned.
struct Report {
  int schema_version = 1;
  std::string mode;
  std::string result;
  std::vector<std::string> reads;   // deduplicated, in occurrence order
  std::vector<std::string> writes;  // deduplicated, in occurrence order
  std::vector<ViolationRecord> violations;
  TrieStats trie_stats;  // union of every logged trie
  uint64_t wall_time_ms = 0;
  std::vector<std::string> log_lines;  // chronological text log (not in JSON)
};

/// Flattens the outcome's monitor; max_paths caps each flatten
/// (TrieOverflowError beyond it).
Report make_report(const RunOutcome& outcome, Mode mode,
                   size_t max_paths = 1000000);

std::string to_json(const Report& r);
std::string to_text(const Report& r);

}  // namespace apc::lj
