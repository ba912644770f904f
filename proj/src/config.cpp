#include "helmlab/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "helmlab/error.hpp"

namespace helmlab {

namespace {

struct CoefficientSection {
  std::optional<std::vector<double>> breakpoints;
  std::vector<Segment> segments;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double number(const std::string& word, int line) {
  char* end = nullptr;
  const double v = std::strtod(word.c_str(), &end);
  if (word.empty() || *end != '\0') fail(line, "expected a number, got '" + word + "'");
  if (!std::isfinite(v)) fail(line, "non-finite number '" + word + "'");
  return v;
}

std::vector<double> numbers(const std::vector<std::string>& w, std::size_t from, int line) {
  std::vector<double> out;
  for (std::size_t i = from; i < w.size(); ++i) out.push_back(number(w[i], line));
  return out;
}

Complex complex_value(const std::string& value, int line) {
  const auto v = numbers(words(value), 0, line);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  fail(line, "expected 're' or 're im'");
}

SignTag sign_tag(const std::string& word, int line) {
  if (word == "increasing") return SignTag::positive_derivative;
  if (word == "nonincreasing") return SignTag::nonpositive_derivative;
  fail(line, "unknown sign tag '" + word + "' (expected increasing or nonincreasing)");
}

Segment segment(const std::string& value, int line) {
  const auto w = words(value);
  if (w.empty()) fail(line, "empty segment");
  const std::string& kind = w[0];
  if (kind == "constant") {
    if (w.size() != 2) fail(line, "segment = constant <value>");
    return Segment::constant(number(w[1], line));
  }
  if (kind == "linear") {
    if (w.size() != 3) fail(line, "segment = linear <left> <right>");
    return Segment::linear(number(w[1], line), number(w[2], line));
  }
  if (kind == "sine") {
    if (w.size() != 5) fail(line, "segment = sine <offset> <amplitude> <frequency> <tag>");
    const double offset = number(w[1], line), amp = number(w[2], line), freq = number(w[3], line);
    const double k = 2.0 * std::numbers::pi * freq;
    return Segment::smooth([=](double x) { return offset + amp * std::sin(k * x); },
                           [=](double x) { return amp * k * std::cos(k * x); }, sign_tag(w[4], line));
  }
  fail(line, "unknown segment kind '" + kind + "' (expected constant, linear or sine)");
}

PiecewiseCoefficient build(const CoefficientSection& s, const std::string& name) {
  if (!s.breakpoints) throw ConfigError("section [" + name + "]: missing breakpoints");
  if (s.breakpoints->size() != s.segments.size() + 1) {
    throw ConfigError("section [" + name + "]: " + std::to_string(s.breakpoints->size()) +
                      " breakpoints need " + std::to_string(s.breakpoints->size() - 1) +
                      " segments, got " + std::to_string(s.segments.size()));
  }
  return PiecewiseCoefficient(Breakpoints(*s.breakpoints), s.segments);
}

}  // namespace

HelmholtzProblem parse_problem(std::istream& in) {
  std::optional<double> omega;
  BoundaryConfig bc = BoundaryConfig::pure_impedance;
  Complex g_left{0.0, 0.0}, g_right{0.0, 0.0};
  Source f = ZeroSource{};
  CoefficientSection a, c;
  CoefficientSection* section = nullptr;
  bool seen_a = false, seen_c = false;

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text == "[a]") {
        if (seen_a) fail(line, "duplicate section [a]");
        seen_a = true;
        section = &a;
      } else if (text == "[c]") {
        if (seen_c) fail(line, "duplicate section [c]");
        seen_c = true;
        section = &c;
      } else {
        fail(line, "unknown section " + text + " (expected [a] or [c])");
      }
      section->line = line;
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (section) {
      if (key == "breakpoints") {
        if (section->breakpoints) fail(line, "duplicate breakpoints");
        section->breakpoints = numbers(words(value), 0, line);
      } else if (key == "segment") {
        section->segments.push_back(segment(value, line));
      } else {
        fail(line, "unknown key '" + key + "' in coefficient section");
      }
      continue;
    }
    if (key == "omega") {
      omega = number(value, line);
    } else if (key == "bc") {
      try {
        bc = boundary_config_from_string(value);
      } catch (const InvalidArgument& e) {
        fail(line, e.what());
      }
    } else if (key == "g_left") {
      g_left = complex_value(value, line);
    } else if (key == "g_right") {
      g_right = complex_value(value, line);
    } else if (key == "source") {
      const auto w = words(value);
      if (w.empty()) fail(line, "empty source");
      if (w[0] == "zero") {
        if (w.size() != 1) fail(line, "source = zero takes no coefficients");
        f = ZeroSource{};
      } else if (w[0] == "polynomial") {
        const auto v = numbers(w, 1, line);
        if (v.empty() || v.size() % 2 != 0) fail(line, "source = polynomial <re0> <im0> [<re1> <im1> ...]");
        PolynomialSource p;
        for (std::size_t i = 0; i < v.size(); i += 2) p.coeffs.emplace_back(v[i], v[i + 1]);
        f = p;
      } else {
        fail(line, "unknown source '" + w[0] + "' (expected zero or polynomial)");
      }
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  if (!omega) throw ConfigError("missing omega");
  if (!seen_a) throw ConfigError("missing section [a]");
  if (!seen_c) throw ConfigError("missing section [c]");
  return HelmholtzProblem(build(a, "a"), build(c, "c"), *omega, bc, g_left, g_right, f);
}

HelmholtzProblem parse_problem_text(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in);
}

HelmholtzProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open config file '" + path + "'");
  return parse_problem(in);
}

}  // namespace helmlab
