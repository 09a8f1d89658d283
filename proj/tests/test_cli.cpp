#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(HALFTURN_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("arith test on sqrt(-2)") {
  const Run r = run("arith test --field \"t^2+2\" --rho0 t --rho1 t --rho2 t --format json");
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["summary"]["verdict"] == "nearly_arithmetic_candidate");
  CHECK(j["summary"]["invariant_trace_field"]["label"] == "Q(√-2)");
}

TEST_CASE("exit codes") {
  CHECK(run("rep build --rho0 2 --rho1 2 --rho2 2").code == 1);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("rep build").code == 2);
  CHECK(run("rep build --rho 3 --precision 32").code == 2);
  CHECK(run("rep build --rho 3 --format xml").code == 2);
  CHECK(run("rep build --field \"t^2-1\" --rho t").code == 1);  // reducible
  CHECK(run("--help").code == 0);
}

TEST_CASE("bounds report") {
  const Run r = run("bounds --rho-star 6.4 --format json");
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["summary"]["K"] == "70.56");
  CHECK(j["config"]["rho_star"] == "6.4");
}

TEST_CASE("determinism modulo timestamp") {
  const std::string args = "klein check --rho \"-1/2+0.5i\" --format json";
  auto a = json_of(run(args)), b = json_of(run(args));
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a == b);
}

TEST_CASE("environment precision") {
  const Run r = run("klein check --rho -7 --format json");
  REQUIRE(r.code == 0);
  CHECK(json_of(r)["config"]["precision_bits"] == 128);
  const Run e = run("klein check --rho -7 --format json", "HALFTURN_PRECISION=192");
  REQUIRE(e.code == 0);
  CHECK(json_of(e)["config"]["precision_bits"] == 192);
}

TEST_CASE("other subcommands run") {
  CHECK(run("klein constants --format json").code == 0);
  CHECK(run("klein scan --box \"7,8,0,1\" --count 2").code == 0);
  CHECK(run("relators verify --figure 5 --format csv").code == 0);
  CHECK(run("relators search --field \"t^2+3\" --rho \"(-1+t)/2\" --max-length 6").code == 0);
  const Run svg = run("plot circles --rho -7");
  CHECK(svg.code == 0);
  CHECK(svg.out.find("<svg") != std::string::npos);
  const Run md = run("enumerate regular --bound 2 --format markdown");
  CHECK(md.code == 0);
  CHECK(md.out.find("N | ρ | Field") != std::string::npos);
}
