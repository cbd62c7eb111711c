// One line per acceptance criterion; exit status 1 when any fails.
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "funalg/acceptance.hpp"

using namespace funalg;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run shell(const std::string& cmd) {
  Run r;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

CriterionResult cli_criterion(const std::string& cli, const std::string& corpus) {
  CriterionResult r;
  r.id = 13;
  r.title = "CLI determinism and round-trip";
  const std::string tmp = (std::filesystem::temp_directory_path() / "funalg_roundtrip.cl").string();
  for (const char* f : {"explicit.cl", "recursive.cl", "relaxed.cl"}) {
    const Run once = shell(cli + " parse " + corpus + "/" + f);
    std::ofstream(tmp) << once.out;
    const Run twice = shell(cli + " parse " + tmp);
    if (once.status != 0 || twice.status != 0 || once.out != twice.out) {
      r.detail = std::string("parse/print is not a fixpoint on ") + f;
      return r;
    }
  }
  std::filesystem::remove(tmp);
  for (const std::string args : {"enum --class DA --count 40", "enum --class TA --count 40",
                                 "eval --d \"(comp S S)\" --arg 5",
                                 "meter --d X --mode one --sizes 8,16,32 --seed 3 --trials 2"}) {
    const Run a = shell(cli + " " + args), b = shell(cli + " " + args);
    if (a.status != 0 || a.out != b.out || a.out.empty()) {
      r.detail = "output differs between identical runs of '" + args + "'";
      return r;
    }
  }
  if (shell(cli + " enum --class DA --count 1").out != "X\n") {
    r.detail = "first DA derivation is not X";
    return r;
  }
  const Run usage = shell(cli + " eval --arg 3");
  const Run missing = shell(cli + " parse " + corpus + "/missing.cl");
  if (usage.status != 2 || missing.status != 1) {
    r.detail = "exit codes for usage and domain errors";
    return r;
  }
  const Run self = shell(cli + " selftest --corpus " + corpus);
  if (self.status != 0) {
    r.detail = "selftest exited " + std::to_string(self.status);
    return r;
  }
  r.pass = true;
  r.detail = "3 corpus files, 4 repeated commands, selftest exit 0";
  return r;
}

}  // namespace

int main() {
  AcceptanceOptions opts;
  opts.corpus_dir = FUNALG_CORPUS_DIR;
  bool ok = true;
  for (int id = 1; id <= 12; ++id) {
    const CriterionResult r = run_criterion(id, opts);
    std::cout << r.line() << std::endl;
    ok &= r.pass;
  }
  const CriterionResult r13 = cli_criterion(FUNALG_CLI, FUNALG_CORPUS_DIR);
  std::cout << r13.line() << std::endl;
  ok &= r13.pass;
  return ok ? 0 : 1;
}
