#pragma once

// Command dispatch behind the command-line tool. run() is pure given the
// config (plus the seed), which keeps reports reproducible and lets the
// tests drive the tool in-process.

#include <string>
#include <vector>

#include "ramp1/report.hpp"

namespace ramp1 {

struct RunConfig {
  uint64_t p = 0;
  uint32_t k = 1;
  std::vector<uint32_t> modulus;  // empty selects the canonical one

  std::string command;
  std::vector<std::string> maps;      // --map
  std::vector<std::string> conds;     // --cond  "P:e"
  std::vector<std::string> branches;  // --branch "P:e->V"
  int d = 0;                          // --d
  std::vector<int> e_list;            // --e
  std::vector<int> delta_list;        // --delta
  int genus = 0;                      // --g
  int g_source = 0, g_target = 0;     // --gc, --gd
  int wild_count = 0;                 // --m
  std::string c_value = "1";          // --c
  std::string cp_value = "1";         // --cp
  std::string filter = "exact";       // at-least | exact | nowhere-else

  uint32_t tower = 2;
  uint64_t budget = 100'000'000ULL;
  uint64_t seed = 0;
  std::string format = "table";  // table | json
  int workers = 1;
};

struct RunResult {
  Json doc;
  std::string table;  // human-readable form of the same payload
  int exit_code = 0;  // 0 ok, 1 verification failure, 2 usage/parse error
};

RunResult run(const RunConfig& config);

// parse "P:e" and "P:e->V" condition syntax
RamCondition parse_condition(const std::string& text, const FieldSpec* spec);
BranchCondition parse_branch_condition(const std::string& text,
                                       const FieldSpec* spec);

}  // namespace ramp1
