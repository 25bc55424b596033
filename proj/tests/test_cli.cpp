#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Run run(const std::string& args) {
  const std::string cmd = std::string(FREENC_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "freenc_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("canon") {
    const Run r = run("canon --cyclic x2 x1");
    CHECK(r.status == 0);
    CHECK(r.out == "x1 x2\n");
    CHECK(run("canon --star x2 x1*").out == run("canon --star x1 x2*").out);
  }

  TEST_CASE("identity verdicts exit 0") {
    Run r = run("identity --standard 4 --n 2 --exact");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("IDENTITY\n", 0) == 0);
    r = run("identity --standard 4 --n 3 --exact");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("NON-IDENTITY\n", 0) == 0);
    CHECK(r.out.find("MTX1") != std::string::npos);
  }

  TEST_CASE("formal inversion through files") {
    const std::string f = write("catalan.ncp", "NCPOLY1\n1 : x1\n-1 : x1 x1\n");
    const Run r = run("invert --formal --degree 5 --poly " + f);
    CHECK(r.status == 0);
    CHECK(r.out.find("14 : x1 x1 x1 x1 x1") != std::string::npos);
  }

  TEST_CASE("usage and input errors exit 1") {
    CHECK(run("no-such-command").status == 1);
    CHECK(run("taylor").status == 1);
    const std::string bad = write("bad.ncp", "NCPOLY1\n1 : x1\n1 : x1 q\n");
    const std::string at = write("at.mtx", "MTX1 n=1 g=1 field=real\n2\n");
    const Run r = run("eval --poly " + bad + " --at " + at);
    CHECK(r.status == 1);
    CHECK(r.out.find("line 3, column") != std::string::npos);
    CHECK(run("eval --poly /nonexistent/file --at " + at).status == 1);
  }

  TEST_CASE("verification failures exit 2 with FAIL lines") {
    const std::string tr = write("tr.trp", "TRPOLY1\n1 : tr(x1)\n");
    const Run r = run("taylor --certify --degree 1 --map trace:" + tr);
    CHECK(r.status == 2);
    CHECK(r.out.find("FAIL certificate level=") != std::string::npos);
    const Run c = run("check --map trace:" + tr + " --trials 5");
    CHECK(c.status == 2);
    // FAIL lines are sorted by check name, then level.
    std::vector<std::string> fails;
    std::istringstream in(c.out);
    for (std::string line; std::getline(in, line);)
      if (line.rfind("FAIL ", 0) == 0) fails.push_back(line);
    REQUIRE(!fails.empty());
    CHECK(std::is_sorted(fails.begin(), fails.end(), [](const std::string& a, const std::string& b) {
      auto key = [](const std::string& s) {
        std::istringstream is(s);
        std::string fail, check, level;
        is >> fail >> check >> level;
        return std::make_pair(check, std::stoul(level.substr(6)));
      };
      return key(a) < key(b);
    }));
  }

  TEST_CASE("json mode emits one object per line") {
    const Run r = run("--json demo roundtrip --count 3");
    CHECK(r.status == 0);
    std::istringstream in(r.out);
    int lines = 0;
    for (std::string line; std::getline(in, line); ++lines) CHECK_NOTHROW((void)nlohmann::json::parse(line));
    CHECK(lines > 0);
  }

  TEST_CASE("primary output is deterministic") {
    const std::string a = (scratch() / "t1.ncp").string(), b = (scratch() / "t2.ncp").string();
    CHECK(run("--seed 3 --out " + a + " taylor --map sinxxt --degree 4").status == 0);
    CHECK(run("--seed 3 --out " + b + " taylor --map sinxxt --degree 4").status == 0);
    const std::string sa = slurp(a), sb = slurp(b);
    CHECK(!sa.empty());
    CHECK(std::hash<std::string>{}(sa) == std::hash<std::string>{}(sb));
    const Run r1 = run("--seed 9 identity --standard 6 --n 2");
    const Run r2 = run("--seed 9 identity --standard 6 --n 2");
    CHECK(r1.out == r2.out);
  }

  TEST_CASE("demos") {
    const Run r = run("demo nonuniform --n 3");
    CHECK(r.status == 0);
    CHECK(r.out.find("MTX1") != std::string::npos);
    CHECK(r.out.find("h_3(x)") != std::string::npos);
    CHECK(r.out.find("f(y)") != std::string::npos);
    CHECK(run("demo nope").status == 1);
  }
}
