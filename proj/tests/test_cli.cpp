#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

// Drives the installed binary end to end through a shell, checking exit
// codes, stream contents, and byte-level determinism.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string temp_name(const char* tag) {
  static int counter = 0;
  return "/tmp/chm_cli_test_" + std::to_string(getpid()) + "_" +
         std::to_string(counter++) + "_" + tag;
}

// Runs a shell command in which every "%C" is replaced by the binary path.
RunResult run_shell(std::string cmd, const std::string& stdin_text = "") {
  const std::string binary = CHM_CLI_PATH;
  for (size_t pos = cmd.find("%C"); pos != std::string::npos;
       pos = cmd.find("%C", pos))
    cmd.replace(pos, 2, binary);

  const std::string in = temp_name("in"), out = temp_name("out"),
                    err = temp_name("err");
  {
    std::ofstream f(in, std::ios::binary);
    f << stdin_text;
  }
  // Parenthesised so the redirections wrap a whole pipeline instead of
  // binding to its last command.
  const std::string full =
      "( " + cmd + " ) < " + in + " > " + out + " 2> " + err;
  const int status = std::system(full.c_str());

  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::remove(in.c_str());
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("list prints one row per catalogue entry") {
  const RunResult r = run_shell("%C list");
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.out) == 69);  // header + 68 entries
  CHECK(r.out.find("F16") != std::string::npos);
  CHECK(r.out.find("P13") != std::string::npos);
  CHECK(r.out.find("nonlinear") != std::string::npos);
}

TEST_CASE("gen piped into verify accepts a family member") {
  const RunResult r =
      run_shell("%C gen F6 --param a=0 --param b=0 | %C verify -");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("gen output is byte-identical across runs and -o targets") {
  const RunResult a = run_shell("%C gen F6 --param a=1.25 --param b=0.5");
  const RunResult b = run_shell("%C gen F6 --param a=1.25 --param b=0.5");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const std::string path = temp_name("gen");
  const RunResult c = run_shell("%C gen F6 --param a=1.25 --param b=0.5 -o " +
                                path);
  CHECK(c.exit_code == 0);
  CHECK(c.out.empty());
  CHECK(slurp(path) == a.out);
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit with code 64") {
  CHECK(run_shell("%C gen NOPE").exit_code == 64);
  CHECK(run_shell("%C gen F6 --param c=1").exit_code == 64);
  CHECK(run_shell("%C gen F7 --param a=1").exit_code == 64);
  CHECK(run_shell("%C gen F6 --param a").exit_code == 64);
  CHECK(run_shell("%C gen F6 --param a=zzz").exit_code == 64);
  CHECK(run_shell("%C gen").exit_code == 64);
  CHECK(run_shell("%C nosuchcommand").exit_code == 64);
  CHECK(run_shell("%C info NOPE").exit_code == 64);
  const RunResult r = run_shell("%C gen NOPE");
  CHECK(r.err.find("NOPE") != std::string::npos);
}

TEST_CASE("verify distinguishes failing, malformed, and missing input") {
  const std::string not_hadamard =
      R"({"format_version":"1","n":2,"representation":"phases_turns",)"
      R"("phases_turns":[["0/1","0/1"],["0/1","0/1"]]})";
  const RunResult fail = run_shell("%C verify -", not_hadamard);
  CHECK(fail.exit_code == 2);
  CHECK(fail.out.find("\"pass\": false") != std::string::npos);

  CHECK(run_shell("%C verify -", "{ not json").exit_code == 65);
  CHECK(run_shell("%C verify /tmp/definitely_not_here.json").exit_code == 74);
}

TEST_CASE("the default tolerance honors CHM_DEFAULT_TOL") {
  const std::string not_hadamard =
      R"({"format_version":"1","n":2,"representation":"phases_turns",)"
      R"("phases_turns":[["0/1","0/1"],["0/1","0/1"]]})";
  CHECK(run_shell("CHM_DEFAULT_TOL=5 %C verify -", not_hadamard).exit_code ==
        0);
  CHECK(run_shell("CHM_DEFAULT_TOL=abc %C verify -", not_hadamard).exit_code ==
        64);
  CHECK(run_shell("%C verify --tol 5 -", not_hadamard).exit_code == 0);
}

TEST_CASE("turn-valued parameters keep documents exact") {
  const RunResult r = run_shell("%C --turns gen F4 --param a=1/4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"representation\": \"phases_turns\"") !=
        std::string::npos);
  CHECK(run_shell("%C --turns gen F4 --param a=0.25").exit_code == 64);
}

TEST_CASE("defect prints the integer and an optional kernel basis") {
  const std::string s6 = temp_name("s6");
  CHECK(run_shell("%C gen S6 -o " + s6).exit_code == 0);
  const RunResult r = run_shell("%C defect " + s6);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\n");
  std::remove(s6.c_str());

  const RunResult k =
      run_shell("%C gen F4 --param a=0 | %C defect --kernel -");
  CHECK(k.exit_code == 0);
  CHECK(count_lines(k.out) == 2);
  CHECK(k.out.substr(0, 2) == "1\n");
}

TEST_CASE("invariants prints the clustered value set") {
  const RunResult r = run_shell("%C gen F2 | %C invariants -");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"values\"") != std::string::npos);
  const RunResult again = run_shell("%C gen F2 | %C invariants -");
  CHECK(again.out == r.out);
}

TEST_CASE("equiv finds the documented column swap between family members") {
  const std::string a = temp_name("f4a"), b = temp_name("f4b");
  CHECK(run_shell("%C gen F4 --param a=0 -o " + a).exit_code == 0);
  CHECK(run_shell("%C gen F4 --param a=3.14159265 -o " + b).exit_code == 0);

  const RunResult found = run_shell("%C equiv " + a + " " + b);
  CHECK(found.exit_code == 0);
  CHECK(found.out.find("\"p2\"") != std::string::npos);

  const RunResult tight = run_shell("%C equiv --budget 1 " + a + " " + b);
  CHECK(tight.exit_code == 4);

  const std::string f2 = temp_name("f2"), t4 = temp_name("t4");
  CHECK(run_shell("%C gen F2 -o " + f2).exit_code == 0);
  CHECK(run_shell("%C tensor " + f2 + " " + f2 + " -o " + t4).exit_code == 0);
  CHECK(run_shell("%C equiv " + a + " " + t4).exit_code == 3);

  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove(f2.c_str());
  std::remove(t4.c_str());
}

TEST_CASE("mub reports unbiasedness through the exit code") {
  const std::string f2 = temp_name("f2"), b = temp_name("b2");
  CHECK(run_shell("%C gen F2 -o " + f2).exit_code == 0);
  {
    std::ofstream f(b);
    f << R"({"format_version":"1","n":2,"representation":"phases_turns",)"
      << R"("phases_turns":[["0/1","0/1"],["1/4","3/4"]]})";
  }
  const RunResult yes = run_shell("%C mub " + f2 + " " + b);
  CHECK(yes.exit_code == 0);
  CHECK(yes.out == "unbiased: true\n");
  const RunResult no = run_shell("%C mub " + f2 + " " + f2);
  CHECK(no.exit_code == 2);
  CHECK(no.out == "unbiased: false\n");
  std::remove(f2.c_str());
  std::remove(b.c_str());
}

TEST_CASE("constructions compose through pipes") {
  CHECK(run_shell("%C gen C6 | %C dephase - | %C verify -").exit_code == 0);

  const std::string f2 = temp_name("f2"), f3 = temp_name("f3"),
                    f4 = temp_name("f4");
  CHECK(run_shell("%C gen F2 -o " + f2).exit_code == 0);
  CHECK(run_shell("%C gen F3 -o " + f3).exit_code == 0);
  CHECK(run_shell("%C gen F4 -o " + f4).exit_code == 0);

  CHECK(run_shell("%C dita " + f2 + " " + f4 + " " + f4 +
                  " --phases 0.3,1.1,2.2 | %C verify -")
            .exit_code == 0);
  CHECK(run_shell("%C double " + f3 + " " + f3 +
                  " --phases 0.8,2.2 | %C verify -")
            .exit_code == 0);
  CHECK(run_shell("%C quadruple " + f2 + " " + f2 + " " + f2 + " " + f2 +
                  " | %C verify -")
            .exit_code == 0);
  CHECK(run_shell("%C dita " + f2 + " " + f4 + " " + f3).exit_code == 64);

  std::remove(f2.c_str());
  std::remove(f3.c_str());
  std::remove(f4.c_str());
}

TEST_CASE("chains prints one complex value per column") {
  const RunResult r = run_shell("%C gen F4 --param a=0 | %C chains - 1 3");
  CHECK(r.exit_code == 0);
  REQUIRE(count_lines(r.out) == 4);
  std::istringstream is(r.out);
  const double want[4] = {1, -1, 1, -1};
  for (int k = 0; k < 4; ++k) {
    double re = 0, im = 1;
    is >> re >> im;
    CHECK(re == doctest::Approx(want[k]).epsilon(1e-12));
    CHECK(im == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  }
  CHECK(run_shell("%C gen F4 --param a=0 | %C chains - 3 1").exit_code == 64);
}

TEST_CASE("patterns lists the maximal spaces of small matrices") {
  const RunResult r = run_shell("%C gen F4 --param a=0 | %C patterns -");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("maximal spaces: 1") != std::string::npos);
  CHECK(r.out.find("dimension 1") != std::string::npos);
  CHECK(run_shell("%C gen F8 | %C patterns -").exit_code == 64);
}

TEST_CASE("info describes a single entry") {
  const RunResult r = run_shell("%C info F6");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("params: 2 (a, b)") != std::string::npos);
  CHECK(r.out.find("kind: affine") != std::string::npos);

  const RunResult loose = run_shell("%C info C7C");
  CHECK(loose.out.find("tolerance: 0.0001") != std::string::npos);
}
