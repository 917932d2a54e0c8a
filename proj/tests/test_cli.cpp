#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "lazard/homology.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const char* exe = std::getenv("LAZARD_CLI");
  REQUIRE_MESSAGE(exe != nullptr, "LAZARD_CLI must point at the lazard binary");
  const std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::string last_line(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s.substr(s.rfind('\n') == std::string::npos ? 0 : s.rfind('\n') + 1);
}

}  // namespace

TEST_CASE("eval examples") {
  Run a = cli("eval --ring bp --p 2 --expr pseries --t-window 0:4 --mod 2");
  CHECK(a.code == 0);
  CHECK(a.out.rfind("v1*t^2", 0) == 0);
  Run b = cli("eval --ring bp --p 2 --op phi --elem v1 --slice -2 --mod 2");
  CHECK(b.code == 0);
  CHECK(b.out == "1\n");
  Run c = cli("eval --ring universal --expr F --order 2");
  CHECK(c.code == 0);
  CHECK(c.out == "x + y + 2*b1*x*y\n");
}

TEST_CASE("eval reports an insufficient window with exit 3") {
  Run r = cli("eval --ring bp --p 2 --expr pseries --order 4 --t-window 0:8");
  CHECK(r.code == 3);
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli("verify --suite bogus").code == 1);
  CHECK(cli("verify --suite st_vn --grid \"p=4:n=1\"").code == 1);
  CHECK(cli("eval --ring bp --p 2 --expr \"F\" --op st --elem v1").code == 1);
  CHECK(cli("eval --ring bp --p 2 --op phi --elem \"v1 + * v2\"").code == 1);
  CHECK(cli("verify --suite hopf --sample 1").code == 1);
  CHECK(cli("").code == 1);
}

TEST_CASE("verify examples pass") {
  CHECK(cli("verify --suite st_vn --grid \"p=2:n=1,2; p=3:n=1\"").code == 0);
  CHECK(cli("verify --suite hopf").code == 0);
  CHECK(cli("verify --suite artin_hasse --grid \"p=2,3,5; N=20\"").code == 0);
  CHECK(cli("verify --suite tor").code == 0);
  CHECK(cli("verify --suite filtration").code == 0);
}

TEST_CASE("a codegree too small for the grid is inconclusive, not a pass") {
  Run r = cli("verify --suite st_vn --codeg 1");
  CHECK(r.code == 3);
  CHECK(contains(r.out, "INCONCLUSIVE"));
}

TEST_CASE("JSON and human output agree and JSON round-trips byte for byte") {
  for (const std::string args : {"verify --suite st_vn", "verify --suite tor --grid \"p=2:n=2:offset=-1\"",
                                 "verify --suite st_vn --codeg 1"}) {
    Run human = cli(args);
    Run machine = cli(args + " --json");
    CHECK(human.code == machine.code);
    json j = json::parse(machine.out);
    CHECK(j["schema"] == 1);
    CHECK(contains(last_line(human.out), j["verdict"].get<std::string>()));
    CHECK(j.dump(2) + "\n" == machine.out);
  }
}

TEST_CASE("worker count does not change the report") {
  Run one = cli("verify --suite phi_divide --json --jobs 1");
  Run four = cli("verify --suite phi_divide --json --jobs 4");
  CHECK(one.code == 0);
  json a = json::parse(one.out), b = json::parse(four.out);
  CHECK(a["checks"] == b["checks"]);
  Run s1 = cli("verify --suite phi_divide --json --sample 5 --seed 11");
  Run s2 = cli("verify --suite phi_divide --json --sample 5 --seed 11 --jobs 3");
  CHECK(json::parse(s1.out)["checks"] == json::parse(s2.out)["checks"]);
  CHECK(json::parse(s1.out)["checks"].size() == 5);
}

TEST_CASE("filtrate examples") {
  Run a = cli("filtrate --p 2 --r 1 --ann \"p^2\"");
  CHECK(a.code == 0);
  CHECK(a.out == "[I(1)@1, I(1)@1]\n");
  Run b = cli("filtrate --p 2 --r 3 --ann \"p, v1\" --check-depth 6");
  CHECK(b.code == 0);
  CHECK(contains(b.out, "[I(2)@3]"));
  CHECK(contains(b.out, "certificate check: PASS"));
  Run c = cli("filtrate --p 2 --r 2 --ann \"p, v1^2\"");
  CHECK(c.code == 2);
  CHECK(contains(c.out, "NonRealizableWitness(DEGREE_BOUND)"));
  Run d = cli("filtrate --p 2 --r 2 --ann \"p, v1^2\" --json");
  CHECK(d.code == 2);
  CHECK(json::parse(d.out)["status"] == "non_realizable");
}

TEST_CASE("tor examples") {
  CHECK(cli("tor --p 2 --n 2 --degx 3 --d 3 --strict").code == 0);
  Run fail = cli("tor --p 2 --n 2 --degx 2 --d 2 --strict");
  CHECK(fail.code == 2);
  CHECK(contains(fail.out, "FAIL"));
  CHECK(cli("tor --p 3 --n 1 --degx 1 --d 1 --strict").code == 0);
  CHECK(cli("tor --p 2 --sum \"1@1,2@3\"").code == 1);
  CHECK(cli("tor --p 2 --sum \"1@1,2@3\" --assume-generated --strict").code == 0);
}

TEST_CASE("Tor JSON round-trips through the report type") {
  Run r = cli("tor --p 3 --n 2 --degx 4 --json");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  json check = j["check"];
  j.erase("check");
  CHECK(lazard::to_json(lazard::tor_report_from_json(j)) == j);
  j["check"] = check;
  CHECK(j.dump(2) + "\n" == r.out);
}
