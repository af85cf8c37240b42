// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Uses the C interface only.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liedrag/liedrag.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitCheckFailed = 4;

int report(liedrag_status s, const char* context) {
  std::fprintf(stderr, "%s: %s: %s\n", context, liedrag_status_name(s), liedrag_last_error());
  if (s == LIEDRAG_ERR_CONFIG || s == LIEDRAG_ERR_ARGUMENT) return kExitConfig;
  if (s == LIEDRAG_ERR_BLOWUP) return kExitBlowup;
  return kExitError;
}

int print_document(liedrag_status (*fn)(char**), const char* context) {
  char* text = nullptr;
  const liedrag_status s = fn(&text);
  if (s != LIEDRAG_OK) return report(s, context);
  std::fputs(text, stdout);
  liedrag_string_free(text);
  return kExitOk;
}

int cmd_run(const std::string& path) {
  liedrag_config* cfg = nullptr;
  liedrag_status s = liedrag_config_load(path.c_str(), &cfg);
  if (s == LIEDRAG_ERR_IO) {
    std::fprintf(stderr, "run: %s\n", liedrag_last_error());
    return kExitConfig;
  }
  if (s != LIEDRAG_OK) return report(s, "run");
  double last_valid = 0.0;
  s = liedrag_run(cfg, &last_valid);
  liedrag_config_free(cfg);
  if (s == LIEDRAG_ERR_BLOWUP) {
    std::fprintf(stderr, "run: numerical blowup after t = %.17g: %s\n", last_valid, liedrag_last_error());
    return kExitBlowup;
  }
  if (s != LIEDRAG_OK) return report(s, "run");
  std::printf("run complete at t = %.17g\n", last_valid);
  return kExitOk;
}

void print_criterion(const char* id, const char* title, int passed, double seconds, const char* error,
                     const liedrag_check_line* lines, size_t count, void*) {
  std::printf("%-4s %s  %s (%.1f s)\n", id, passed ? "PASS" : "FAIL", title, seconds);
  if (error && *error) std::printf("       error: %s\n", error);
  for (size_t i = 0; i < count; ++i) {
    const liedrag_check_line& c = lines[i];
    std::printf("       [%s] %-62s %.3e %s", c.passed ? " ok " : "FAIL", c.label, c.measured, c.relation);
    if (c.relation[0] != 'i') std::printf(" %.3g", c.threshold);
    std::printf("\n");
  }
  std::fflush(stdout);
}

int cmd_check(const std::vector<std::string>& names, const std::string& mutation) {
  std::vector<const char*> ids;
  for (const std::string& n : names) {
    if (n != "all") ids.push_back(n.c_str());
  }
  int all_passed = 0;
  const liedrag_status s = liedrag_check(ids.data(), ids.size(), mutation.empty() ? nullptr : mutation.c_str(),
                                         print_criterion, nullptr, &all_passed);
  if (s != LIEDRAG_OK) return report(s, "check");
  return all_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-dragged invariants for ideal MHD and gas dynamics"};
  app.set_version_flag("--version", liedrag_version());
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: LIEDRAG_THREADS or 1)");

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run a scenario from a config file");
  run->add_option("config", config_path, "config file (JSON object of dotted keys)")->required();

  std::vector<std::string> names;
  std::string mutation;
  CLI::App* check = app.add_subcommand("check", "evaluate acceptance criteria");
  check->add_option("criteria", names, "criterion ids such as A3, or all (default)");
  check->add_option("--mutation", mutation, "inject a negative control (see list-checks)");

  CLI::App* list_inits = app.add_subcommand("list-inits", "list initial-condition recipes");
  CLI::App* list_checks = app.add_subcommand("list-checks", "list acceptance criteria and mutations");
  CLI::App* schema = app.add_subcommand("dump-schema", "print the config and diagnostics schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (threads == 0) {
    if (const char* env = std::getenv("LIEDRAG_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0 && liedrag_set_threads(threads) != LIEDRAG_OK) return report(LIEDRAG_ERR_ARGUMENT, "threads");

  if (*run) return cmd_run(config_path);
  if (*check) return cmd_check(names, mutation);
  if (*list_inits) return print_document(liedrag_list_inits, "list-inits");
  if (*list_checks) return print_document(liedrag_list_checks, "list-checks");
  if (*schema) return print_document(liedrag_schema, "dump-schema");
  return kExitError;
}
