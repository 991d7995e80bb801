#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI with stderr discarded.
Run cli(const std::string& args) {
  const std::string cmd = std::string(ASYMPTOTICA_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json cli_json(const std::string& args, int expected = 0) {
  const Run r = cli(args + " --format json");
  INFO(args << "\n" << r.out);
  CHECK(r.code == expected);
  json j;
  CHECK_NOTHROW(j = json::parse(r.out));
  return j;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classify") {
    const json j = cli_json("classify --field t1");
    REQUIRE(j.contains("counts"));
    CHECK(j["counts"].value("Hyperbolic", 0) == 64 * 5 * 5);
    const json flat = cli_json("classify --field flat");
    CHECK(flat["counts"].value("FullyDegenerate", 0) == 64 * 5 * 5);
  }

  TEST_CASE("usage errors") {
    CHECK(cli("classify --field custom --xi '1+,0,1'").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("poincare --field t1 --curve circle").code == 2);
    const Run r = cli("classify --field custom --xi 'sin(,0,1' --format json");
    CHECK(r.code == 2);
    const json j = json::parse(r.out);
    CHECK(j["exit_code"] == 2);
    CHECK(j["error"].contains("message"));
  }

  TEST_CASE("poincare") {
    const json z = cli_json("poincare --field zero-monodromy --fd-check");
    CHECK_FALSE(z["hyperbolic"].get<bool>());
    for (const json& ev : z["eigenvalues"]) CHECK(ev["abs"].get<double>() == doctest::Approx(1.0));
    REQUIRE(z.contains("fd_check"));
    CHECK(z["fd_check"].contains("jacobian"));
    CHECK(z["fd_check"]["pass"].get<bool>());
  }

  TEST_CASE("verify-paper") {
    CHECK(cli("verify-paper --only t5").code == 0);
    CHECK(cli("verify-paper --only 4,6 --inject-failure").code == 1);
    const json j = cli_json("verify-paper --only circle,gauge");
    CHECK(j["checks"].size() == 2);
  }

  TEST_CASE("every command emits one JSON document") {
    cli_json("integrate --field t1 --start 0,1e-5,0 --to 6.283185307179586");
    cli_json("integrate --surface arnold:2,3 --start -0.4,0,0 --to 0.4");
    cli_json("curvature --field circle-example --point 1,0,0 --direction 0,1,0");
    cli_json("integrability --field circle-example --point 1,0,0");
    cli_json("starlike --curve circle");
    cli_json("starlike --polygon '1,0;0,1;-1,0;0,-1'");
    cli_json("arnold-surface --surface arnold:2,3 --samples 16");
    cli_json("symbol --curve t1 --at 0");
  }

  TEST_CASE("numerical failure exit code") {
    // Large start leaves the tube immediately.
    CHECK(cli("integrate --field t1 --start 0,0.5,0 --to 1").code == 3);
  }
}
