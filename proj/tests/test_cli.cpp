#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "commexp/catalog.hpp"
#include "commexp/json_io.hpp"

using namespace commexp;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed binary with stderr dropped; stdout is captured.
RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(COMMEXP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string pair_file(const CMatrix& a, const CMatrix& b) {
  NamedPair np;
  np.name = "x";
  np.a = a;
  np.b = b;
  std::string body = emit_named_pair_json(np);
  // reuse the emitter, then strip to {"A":..., "B":...}
  auto apos = body.find("\"A\":");
  auto epos = body.find(",\"expected\"");
  std::string json = "{" + body.substr(apos, epos - apos) + "}";
  std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                     "/commexp_cli_pair.json";
  std::ofstream f(path, std::ios::trunc);
  f << json;
  f.close();
  return path;
}

}  // namespace

TEST_CASE("analyze the fixed pair end to end") {
  const auto& tu = catalog()[0];
  std::string path = pair_file(tu.a, tu.b);
  RunResult r = run("analyze " + path);
  CHECK(r.exit_code == 0);
  AnalysisReport rep = parse_report_json(r.out);
  CHECK(rep.condition3);
  CHECK(rep.exceptional.members.empty());
  CHECK(rep.star.has_value());
}

TEST_CASE("analyze from stdin honors tmax") {
  const auto& sc = catalog()[1];
  std::string path = pair_file(sc.a, sc.b);
  RunResult r = run("analyze - --tmax 10 < " + path);
  CHECK(r.exit_code == 0);
  AnalysisReport rep = parse_report_json(r.out);
  CHECK(rep.exceptional.sweep_bound == 10);
  CHECK(rep.exceptional.members == std::vector<long>{2, 3, 4});
}

TEST_CASE("sweep emits one line per t") {
  const auto& sc = catalog()[1];
  std::string path = pair_file(sc.a, sc.b);
  RunResult r = run("sweep " + path + " --tmax 6");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 6);
  CHECK(r.out.find("\"pass\":false") != std::string::npos);
}

TEST_CASE("validation failures exit with 2") {
  std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                     "/commexp_cli_bad.json";
  std::ofstream(path, std::ios::trunc) << "{\"A\": 3}";
  CHECK(run("analyze " + path).exit_code == 2);
  CHECK(run("analyze /nonexistent/file.json").exit_code == 2);
  CHECK(run("catalog").exit_code == 2);
  CHECK(run("catalog --name missing").exit_code == 2);
  CHECK(run("analyze - --tmax -3 < " + path).exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("oversized input names the dimension limit") {
  // 4x4 zero pair.
  std::string row = "[[0,0],[0,0],[0,0],[0,0]]";
  std::string m = "[" + row + "," + row + "," + row + "," + row + "]";
  std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                     "/commexp_cli_4x4.json";
  std::ofstream(path, std::ios::trunc) << "{\"A\":" + m + ",\"B\":" + m + "}";
  CHECK(run("analyze " + path).exit_code == 2);
}

TEST_CASE("catalog listing and lookup") {
  RunResult names = run("catalog --list");
  CHECK(names.exit_code == 0);
  CHECK(names.out.find("tu") != std::string::npos);
  CHECK(names.out.find("tu-scaled") != std::string::npos);
  CHECK(names.out.find("dim2-remark") != std::string::npos);

  RunResult tu = run("catalog --name tu");
  CHECK(tu.exit_code == 0);
  CHECK(tu.out.find("6.2831853071795862") != std::string::npos);
}

TEST_CASE("selftest passes healthy and fails sabotaged") {
  RunResult ok = run("selftest --seeds 1 --tmax 5");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("\"fail\":0") != std::string::npos);

  RunResult bad = run("selftest --seeds 1 --tmax 5 --inject-fault");
  CHECK(bad.exit_code == 3);
  CHECK(bad.out.find("\"fail\":0") == std::string::npos);
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("analyze --help").exit_code == 0);
}
