#include "utm/config.hpp"

#include <fstream>
#include <sstream>

#include "utm/evolution.hpp"

namespace utm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, "bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return parse_real(parts[0]);
  if (parts.size() == 2) return {parse_real(parts[0]), parse_real(parts[1])};
  throw Error(ErrorCode::InvalidArgument, "expected 're,im', got '" + text + "'");
}

CVector parse_coefficients(const std::string& text) {
  std::vector<cplx> vals;
  for (const auto& item : split(text, ',')) {
    if (item.size() >= 2 && item.front() == '(' && item.back() == ')') {
      const auto parts = split(item.substr(1, item.size() - 2), ';');
      if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "complex entry must be (re;im)");
      vals.emplace_back(parse_real(parts[0]), parse_real(parts[1]));
    } else {
      vals.emplace_back(parse_real(item));
    }
  }
  if (vals.empty()) throw Error(ErrorCode::InvalidArgument, "empty coefficient list");
  CVector out(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) out[static_cast<Eigen::Index>(i)] = vals[i];
  return out;
}

ProblemFile parse_problem_file(std::istream& in, const std::string& source) {
  ProblemFile pf;
  std::optional<int> order;
  std::optional<cplx> a;
  std::vector<CVector> rows;
  std::vector<int> row_lines;
  std::string line;
  int lineno = 0;

  auto fail = [&](int at, const std::string& what) {
    std::ostringstream os;
    os << source << ":" << at << ": " << what;
    throw Error(ErrorCode::ConfigParse, os.str());
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key=value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    try {
      if (key == "order") {
        const double v = parse_real(value);
        if (v != static_cast<int>(v)) fail(lineno, "order must be an integer");
        order = static_cast<int>(v);
      } else if (key == "a") {
        a = parse_complex(value);
      } else if (key == "bc") {
        rows.push_back(parse_coefficients(value));
        row_lines.push_back(lineno);
      } else if (key == "label") {
        pf.problem.label = value;
      } else if (key == "allow_complex_bc") {
        if (value != "true" && value != "false") fail(lineno, "allow_complex_bc must be true or false");
        pf.allow_complex_bc = value == "true";
      } else if (key == "datum.kernel") {
        pf.datum.kernel = parse_coefficients(value);
      } else if (key == "datum.support") {
        pf.datum.support = parse_real(value);
        if (!(pf.datum.support > 0.0)) fail(lineno, "datum.support must be positive");
      } else if (key == "datum.seed") {
        const double v = parse_real(value);
        if (v < 0.0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) fail(lineno, "datum.seed must be a nonnegative integer");
        pf.datum.seed = static_cast<std::uint64_t>(v);
      } else if (key == "quad.rel_tol") {
        pf.quad.rel_tol = parse_real(value);
      } else if (key == "quad.abs_tol") {
        pf.quad.abs_tol = parse_real(value);
      } else if (key == "quad.density") {
        pf.quad.oscillation_density = parse_real(value);
      } else if (key == "quad.max_order") {
        const double v = parse_real(value);
        if (v < 4 || v != static_cast<int>(v) || static_cast<int>(v) % 2 != 0) fail(lineno, "quad.max_order must be an even integer >= 4");
        pf.quad.max_panel_order = static_cast<int>(v);
      } else if (key == "solve.xs") {
        pf.xs = parse_grid(value);
      } else if (key == "solve.ts") {
        pf.ts = parse_grid(value);
      } else {
        fail(lineno, "unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigParse) throw;
      fail(lineno, e.what());
    }
  }

  if (!order) fail(lineno, "missing order");
  if (!a) fail(lineno, "missing a");
  if (rows.empty()) fail(lineno, "missing bc");
  pf.problem.n = *order;
  pf.problem.a = *a;
  pf.problem.boundary = CMatrix::Zero(static_cast<Eigen::Index>(rows.size()), *order);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != *order) fail(row_lines[r], "bc needs exactly order coefficients");
    pf.problem.boundary.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  }
  if (pf.datum.kernel && pf.datum.kernel->size() != *order) fail(lineno, "datum.kernel needs exactly order coefficients");
  return pf;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, path + ": cannot open");
  return parse_problem_file(in, path);
}

}  // namespace utm
