#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helmlab/config.hpp"
#include "helmlab/error.hpp"

using namespace helmlab;
using doctest::Approx;

TEST_CASE("full config") {
  auto p = parse_problem_text(R"(# two layers
omega = 3.5
bc = dirichlet_impedance
g_left = 1 -2
g_right = 0.5
source = polynomial 1 0 0 2

[a]
breakpoints = -1 0 1
segment = constant 2
segment = linear 1 3   # rising

[c]
breakpoints = -1 1
segment = constant 1.5
)");
  CHECK(p.omega == 3.5);
  CHECK(p.bc == BoundaryConfig::dirichlet_impedance);
  CHECK(p.g_left == Complex{1.0, -2.0});
  CHECK(p.g_right == Complex{0.5, 0.0});
  CHECK(eval_source(p.f, 2.0) == Complex{1.0, 4.0});
  CHECK(p.a.eval(-0.5) == 2.0);
  CHECK(p.a.eval(0.5) == Approx(2.0));
  CHECK(p.c.eval(0.3) == 1.5);
  // c is refined to the partition of a
  CHECK(p.c.breakpoints().size() == 3);
}

TEST_CASE("sine segments") {
  auto p = parse_problem_text(R"(omega = 1
[a]
breakpoints = -1 -0.75 -0.25 0.25 0.75 1
segment = sine 2 1 1 increasing
segment = sine 2 1 1 nonincreasing
segment = sine 2 1 1 increasing
segment = sine 2 1 1 nonincreasing
segment = sine 2 1 1 increasing
[c]
breakpoints = -1 1
segment = constant 1
)");
  CHECK(p.a.eval(0.1) == Approx(2.0 + std::sin(0.2 * std::numbers::pi)).epsilon(1e-15));
  CHECK(p.a.min() == Approx(1.0));
  CHECK(p.a.max() == Approx(3.0));
}

TEST_CASE("malformed configs name the line") {
  auto message = [](const std::string& text) {
    try {
      parse_problem_text(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string body = "\n[a]\nbreakpoints = -1 1\nsegment = constant 1\n[c]\nbreakpoints = -1 1\nsegment = constant 1\n";
  CHECK(message("omega = x" + body) == "line 1: expected a number, got 'x'");
  CHECK(message("omega = 1\nfoo = 2" + body) == "line 2: unknown key 'foo'");
  CHECK(message("omega = 1\nbc = open" + body).rfind("line 2: unknown boundary configuration", 0) == 0);
  CHECK(message(body) == "missing omega");
  CHECK(message("omega = 1\n[b]\n") == "line 2: unknown section [b] (expected [a] or [c])");
  CHECK(message("omega = 1\n[a]\nbreakpoints = -1 1\n[c]\nbreakpoints = -1 1\nsegment = constant 1\n") ==
        "section [a]: 2 breakpoints need 1 segments, got 0");
  CHECK(message("omega = 1\n[a]\nbreakpoints = -1 1\nsegment = cubic 1\n").rfind("line 4: unknown segment kind", 0) == 0);
  CHECK(message("omega = 1\nsource = polynomial 1" + body) ==
        "line 2: source = polynomial <re0> <im0> [<re1> <im1> ...]");
}

TEST_CASE("invalid problem data surfaces the problem's own error") {
  const std::string body = "\n[a]\nbreakpoints = -1 1\nsegment = constant 1\n[c]\nbreakpoints = -1 1\nsegment = constant 1\n";
  CHECK_THROWS_WITH_AS(parse_problem_text("omega = -2" + body), "problem: omega must be positive and finite",
                       InvalidArgument);
  CHECK_THROWS_AS(parse_problem_text("omega = 1\n[a]\nbreakpoints = -1 1\nsegment = constant -1\n[c]\n"
                                     "breakpoints = -1 1\nsegment = constant 1\n"),
                  Error);
  CHECK_THROWS_AS(load_problem("/nonexistent/problem.cfg"), Error);
}
