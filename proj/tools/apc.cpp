#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "apc/containment.hpp"
#include "apc/contract.hpp"
#include "apc/lambda_j.hpp"
#include "apc/path_trie.hpp"
#include "apc/report.hpp"
#include "json.hpp"

namespace {

using namespace apc;

size_t max_paths_from_env() {
  if (const char* v = std::getenv("APC_MAX_PATHS")) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && n > 0) return size_t(n);
  }
  return 1000000;
}

int cmd_run(const std::string& file, const std::string& mode_name,
            const std::string& format, bool no_log) {
  lj::Options opts;
  if (mode_name == "strict")
    opts.mode = lj::Mode::Strict;
  else if (mode_name == "observer")
    opts.mode = lj::Mode::Observer;
  else if (mode_name == "protector")
    opts.mode = lj::Mode::Protector;
  else {
    std::cerr << "unknown mode: " << mode_name << "\n";
    return 1;
  }
  opts.log_paths = !no_log;

  std::ifstream in(file);
  if (!in) {
    std::cerr << "cannot open " << file << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  lj::RunOutcome outcome = lj::run_program(buf.str(), opts);
  if (outcome.status == lj::RunOutcome::Status::ParseError ||
      outcome.status == lj::RunOutcome::Status::RuntimeError) {
    if (format == "json") {
      nlohmann::json j;
      j["schema_version"] = 1;
      j["error"] = outcome.error;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "error: " << outcome.error << "\n";
    }
    return 1;
  }
  try {
    lj::Report report = lj::make_report(outcome, opts.mode, max_paths_from_env());
    if (format == "json")
      std::cout << lj::to_json(report) << "\n";
    else
      std::cout << lj::to_text(report);
  } catch (const TrieOverflowError& e) {
    std::cerr << "error: " << e.what() << " (APC_MAX_PATHS)\n";
    return 1;
  }
  return outcome.status == lj::RunOutcome::Status::Violation ? 2 : 0;
}

int with_contract(const std::string& src, auto&& fn) {
  try {
    return fn(parse_contract(src));
  } catch (const ContractParseError& e) {
    std::cerr << "parse error: " << e.what() << " at offset " << e.position
              << "\n";
    return 1;
  }
}

int cmd_bench_trie(size_t walks, size_t depth) {
  using clock = std::chrono::steady_clock;
  std::cout << "suite\tpaths_logged\tflat_props\tflat_chars\ttrie_nodes\t"
               "trie_chars\tratio\tms\n";
  if (walks == 0 || depth == 0) return 0;
  auto t0 = clock::now();
  PathTrie trie;
  size_t logged = 0, flat_props = 0, flat_chars = 0;
  // A program walking a b-chain of the given depth, once per walk; every
  // prefix access logs its full path, the trie shares them all.
  for (size_t w = 0; w < walks; ++w) {
    AccessPath path{Property::name("a")};
    for (size_t d = 0; d < depth; ++d) {
      path.push_back(Property::name("b"));
      trie = trie.insert(path);
      ++logged;
      flat_props += path.size();
      for (const auto& p : path) flat_chars += p.text().size();
    }
  }
  auto stats = trie.stats();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() -
                                                                  t0)
                .count();
  double ratio = double(stats.node_count) / double(flat_props);
  std::cout << "trie\t" << logged << "\t" << flat_props << "\t" << flat_chars
            << "\t" << stats.node_count << "\t" << stats.char_count << "\t"
            << ratio << "\t" << ms << "\n";
  return 0;
}

int cmd_bench_derive(size_t iters) {
  using clock = std::chrono::steady_clock;
  std::cout << "suite\tstep\tcontract_size\treduced_size\tms\n";
  if (iters == 0) return 0;
  Contract c = parse_contract("a*.a*");
  Property a = Property::name("a");
  auto t0 = clock::now();
  for (size_t i = 1; i <= iters; ++i) {
    Contract d = derive(c, a);
    Contract r = reduce(d);
    auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0)
            .count();
    std::cout << "derive\t" << i << "\t" << d.size() << "\t" << r.size() << "\t"
              << ms << "\n";
    c = r;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"access permission contracts: run, query, bench"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a program file with monitoring");
  std::string file, mode = "observer", format = "text";
  bool no_log = false;
  run->add_option("file", file, "program file")->required();
  run->add_option("--mode", mode, "strict|observer|protector");
  run->add_option("--format", format, "text|json");
  run->add_flag("--no-log", no_log, "enforce contracts without path logging");

  auto* contains_cmd = app.add_subcommand("contains", "decide C1 ⊑ C2");
  std::string c1, c2;
  contains_cmd->add_option("C1", c1)->required();
  contains_cmd->add_option("C2", c2)->required();

  auto* derive_cmd = app.add_subcommand("derive", "derivative of C by a path");
  std::string dc, dpath;
  derive_cmd->add_option("C", dc)->required();
  derive_cmd->add_option("path", dpath)->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "containment reduction of C");
  std::string rc;
  reduce_cmd->add_option("C", rc)->required();

  auto* nullable_cmd = app.add_subcommand("nullable", "ν(C)");
  std::string nc;
  nullable_cmd->add_option("C", nc)->required();

  auto* bench = app.add_subcommand("bench", "path-store and derivative timings");
  std::string suite = "trie";
  size_t walks = 100, depth = 100, iters = 20;
  bench->add_option("--suite", suite, "trie|derive");
  bench->add_option("--walks", walks, "trie suite: number of list walks");
  bench->add_option("--depth", depth, "trie suite: list depth");
  bench->add_option("--iters", iters, "derive suite: derivative steps");

  CLI11_PARSE(app, argc, argv);

  if (*run) return cmd_run(file, mode, format, no_log);
  if (*contains_cmd)
    return with_contract(c1, [&](Contract a) {
      return with_contract(c2, [&](Contract b) {
        std::cout << (contains(a, b) ? "true" : "false") << "\n";
        return 0;
      });
    });
  if (*derive_cmd)
    return with_contract(dc, [&](Contract c) {
      std::cout << to_string(derive(c, parse_path(dpath))) << "\n";
      return 0;
    });
  if (*reduce_cmd)
    return with_contract(rc, [&](Contract c) {
      std::cout << to_string(reduce(c)) << "\n";
      return 0;
    });
  if (*nullable_cmd)
    return with_contract(nc, [&](Contract c) {
      std::cout << (nullable(c) ? "true" : "false") << "\n";
      return 0;
    });
  if (*bench) {
    if (suite == "trie") return cmd_bench_trie(walks, depth);
    if (suite == "derive") return cmd_bench_derive(iters);
    std::cerr << "unknown suite: " << suite << "\n";
    return 1;
  }
  return 1;
}
