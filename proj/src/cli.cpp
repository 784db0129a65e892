#include "utm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "utm/char_matrix.hpp"
#include "utm/contour.hpp"
#include "utm/evolution.hpp"
#include "utm/spectral.hpp"
#include "utm/verify.hpp"

namespace utm {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

struct Flags {
  std::string builtin;
  std::string problem_file;
  std::string out_dir;
  std::optional<double> tol;
  std::string xs;
  std::string ts;
  std::optional<std::uint64_t> seed;
};

const std::vector<std::string> catalog_names{"lkdv-dirichlet", "lkdv-reverse", "heat-dirichlet", "heat-neumann",
                                              "robin-4"};

void add_common(CLI::App* sub, Flags& f, bool grids) {
  sub->add_option("--builtin", f.builtin, "catalog problem")->check(CLI::IsMember(catalog_names));
  sub->add_option("--problem", f.problem_file, "problem file")->check(CLI::ExistingFile);
  sub->add_option("--out", f.out_dir, "directory for CSV output");
  sub->add_option("--tol", f.tol, "pass threshold")->check(CLI::PositiveNumber);
  sub->add_option("--seed", f.seed, "bump seed");
  if (grids) {
    sub->add_option("--xs", f.xs, "x grid: a,b,c or start:step:stop");
    sub->add_option("--ts", f.ts, "t grid: a,b,c or start:step:stop");
  }
}

RunConfig load_config(const Flags& f) {
  RunConfig c;
  if (f.builtin.empty() == f.problem_file.empty()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --builtin and --problem");
  }
  if (!f.builtin.empty()) {
    c.source = f.builtin;
    c.problem = *find_builtin(f.builtin);
  } else {
    const ProblemFile pf = load_problem_file(f.problem_file);
    c.source = f.problem_file;
    c.problem = pf.problem;
    c.allow_complex_bc = pf.allow_complex_bc;
    c.datum = pf.datum;
    c.quad = pf.quad;
    c.xs = pf.xs;
    c.ts = pf.ts;
  }
  if (f.tol) c.tol = *f.tol;
  if (f.seed) c.datum.seed = *f.seed;
  if (!f.xs.empty()) c.xs = parse_grid(f.xs);
  if (!f.ts.empty()) c.ts = parse_grid(f.ts);
  c.out_dir = f.out_dir;
  if (!c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    const auto probe = std::filesystem::path(c.out_dir) / ".write-test";
    if (!std::ofstream(probe)) throw Error(ErrorCode::InvalidArgument, "output directory not writable: " + c.out_dir);
    std::filesystem::remove(probe);
  }
  return c;
}

InitialDatum build_datum(const ValidatedProblem& p, const DatumSpec& d) {
  const CVector kernel = d.kernel ? *d.kernel : generic_kernel_coeffs(p, d.support);
  return make_datum(p, d.support, kernel, d.seed, 1.0);
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.quad = c.quad;
  return o;
}

void require_positive(const std::vector<double>& xs) {
  for (double x : xs) {
    if (!(x > 0.0)) throw Error(ErrorCode::NonpositiveX, "x = " + format_double(x));
  }
}

// CSV goes to <out>/<name>.csv with the summary on `out`, or to `out` with the
// summary on `err`.
void emit(const RunConfig& c, const std::string& name, const std::string& csv, const std::string& summary,
          std::ostream& out, std::ostream& err) {
  if (c.out_dir.empty()) {
    out << csv;
    err << summary;
    return;
  }
  const auto path = std::filesystem::path(c.out_dir) / (name + ".csv");
  std::ofstream file(path, std::ios::binary);
  file << csv;
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << "wrote " << path.string() << "\n" << summary;
}

int cmd_classify(const Flags& f, int order, const std::string& a_text, std::ostream& out) {
  int n = order;
  cplx a;
  if (!f.builtin.empty()) {
    const auto p = *find_builtin(f.builtin);
    n = p.n;
    a = p.a;
  } else {
    if (order <= 0 || a_text.empty()) throw Error(ErrorCode::InvalidArgument, "classify needs --order and --a, or --builtin");
    a = parse_complex(a_text);
  }
  const WellPosednessClass wc = classify(n, a);
  if (wc.admissible) {
    out << "N=" << wc.N << "\n";
  } else {
    out << "inadmissible\n";
  }
  return 0;
}

int cmd_contours(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ValidatedProblem p = validate(c.problem, c.allow_complex_bc);
  const CharMatrix cm(p);
  const double R = cm.choose_R();
  const ContourSystem cs = build_contours(p, R, std::min(0.1, R / 10.0));
  std::ostringstream csv;
  csv << "contour,segment,s,re,im\n";
  auto write = [&](int k, const Contour& g) {
    for (std::size_t s = 0; s < g.size(); ++s) {
      for (const auto& [param, z] : sample_segment(g[s], 65, 3.0 * R)) {
        csv << k << "," << s << "," << format_double(param) << "," << format_double(z.real()) << ","
            << format_double(z.imag()) << "\n";
      }
    }
  };
  write(0, cs.gamma0);
  for (std::size_t k = 0; k < cs.gammas.size(); ++k) write(static_cast<int>(k) + 1, cs.gammas[k]);
  std::ostringstream sum;
  sum << "R=" << format_double(R) << " components=" << cs.gammas.size() << "\n";
  emit(c, "contours", csv.str(), sum.str(), out, err);
  return 0;
}

int cmd_delta_roots(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ValidatedProblem p = validate(c.problem, c.allow_complex_bc);
  const CharMatrix cm(p);
  std::ostringstream csv;
  csv << "re,im,multiplicity\n";
  double biggest = 0.0;
  const auto roots = cm.roots();
  for (const auto& r : roots) {
    csv << format_double(r.value.real()) << "," << format_double(r.value.imag()) << "," << r.multiplicity << "\n";
    biggest = std::max(biggest, std::abs(r.value));
  }
  std::ostringstream sum;
  sum << "roots=" << roots.size() << " max|root|=" << format_double(biggest) << " R=" << format_double(cm.choose_R())
      << "\n";
  emit(c, "delta-roots", csv.str(), sum.str(), out, err);
  return 0;
}

int cmd_reconstruct(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ValidatedProblem p = validate(c.problem, c.allow_complex_bc);
  const InitialDatum f = build_datum(p, c.datum);
  std::vector<double> xs = c.xs;
  if (xs.empty()) {
    for (int i = 0; i < 20; ++i) xs.push_back(c.datum.support * (0.05 + 0.95 * i / 19.0));
  }
  require_positive(xs);
  const TransformPair tp(p, f, solver_options(c));
  const CVector rec = tp.reconstruct(xs);
  std::ostringstream csv;
  csv << "x,f,re_recon,im_recon,abs_err\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const cplx v = rec[static_cast<Eigen::Index>(i)];
    const cplx fx = f.value(xs[i]);
    const double e = std::abs(v - fx);
    worst = std::max(worst, e);
    csv << format_double(xs[i]) << "," << format_double(fx.real()) << "," << format_double(v.real()) << ","
        << format_double(v.imag()) << "," << format_double(e) << "\n";
  }
  const bool pass = worst < c.tol;
  std::ostringstream sum;
  sum << "max abs_err " << format_double(worst) << " tol " << format_double(c.tol) << " "
      << (pass ? "PASS" : "FAIL") << "\n";
  emit(c, "reconstruct", csv.str(), sum.str(), out, err);
  return pass ? 0 : 1;
}

int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ValidatedProblem p = validate(c.problem, c.allow_complex_bc);
  const InitialDatum f = build_datum(p, c.datum);
  const std::vector<double> xs = c.xs.empty() ? parse_grid("0.25:0.25:2") : c.xs;
  const std::vector<double> ts = c.ts.empty() ? parse_grid("0,0.05,0.1") : c.ts;
  require_positive(xs);
  for (double t : ts) {
    if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
  }
  const SolutionField field = solve_grid(p, f, xs, ts, solver_options(c));
  std::ostringstream csv;
  csv << "x,t,re_q,im_q\n";
  for (std::size_t j = 0; j < ts.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const cplx q = field.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      csv << format_double(xs[i]) << "," << format_double(ts[j]) << "," << format_double(q.real()) << ","
          << format_double(q.imag()) << "\n";
    }
  }
  std::ostringstream sum;
  sum << "points=" << xs.size() * ts.size() << "\n";
  emit(c, "solve", csv.str(), sum.str(), out, err);
  return 0;
}

int cmd_spectral(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ValidatedProblem p = validate(c.problem, c.allow_complex_bc);
  const InitialDatum f = build_datum(p, c.datum);
  const std::vector<double> xs = c.xs.empty() ? std::vector<double>{0.3, 0.7, 1.2} : c.xs;
  require_positive(xs);
  const TransformPair tp(p, f, solver_options(c));
  const SpectralReport rep = spectral_representation_check(tp, xs, c.tol);
  const Verdict expected = type_one_predicate(p.order(), p.dispersion()) ? Verdict::Pass : Verdict::Divergent;

  std::ostringstream csv;
  csv << "k,x,type,residual,verdict\n";
  bool pass = true;
  std::ostringstream sum;
  sum << "k  x        type  verdict    expected\n";
  for (const auto& e : rep.entries) {
    csv << e.k << "," << format_double(e.x) << "," << e.type << "," << format_double(e.residual) << ","
        << to_string(e.verdict) << "\n";
    const Verdict want = e.type == "I" ? expected : Verdict::Pass;
    if (e.verdict != want) pass = false;
    sum << std::left << std::setw(3) << e.k << std::setw(9) << e.x << std::setw(6) << e.type << std::setw(11)
        << to_string(e.verdict) << to_string(want) << "\n";
  }
  double identity = 0.0;
  for (double g : rep.type_two_gap()) identity = std::max(identity, g);
  if (!(identity < c.tol)) pass = false;
  sum << "type-II identity gap " << format_double(identity) << "\n";
  if (rep.type_one_split) {
    double gap = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) gap = std::max({gap, rep.type_one_gap[i], rep.gamma0_gap[i]});
    if (!(gap < c.tol)) pass = false;
    sum << "type-I split identity gap " << format_double(gap) << "\n";
  }
  sum << rep.remainder.convention << "\n";
  sum << (pass ? "PASS" : "FAIL") << "\n";
  emit(c, "spectral-check", csv.str(), sum.str(), out, err);
  return pass ? 0 : 1;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const ValidatedProblem p = validate(c.problem, c.allow_complex_bc);
  VerifySettings s;
  s.support = c.datum.support;
  s.seed = c.datum.seed;
  s.tol = c.tol;
  s.solver = solver_options(c);
  bool pass = true;
  const std::string label = p.label().empty() ? c.source : p.label();
  for (const auto& r : verify_problem(p, s)) {
    const char* verdict = !r.applicable ? "N/A " : (r.pass ? "PASS" : "FAIL");
    if (r.applicable && !r.pass) pass = false;
    std::string name = r.name;
    name.resize(std::max<std::size_t>(name.size(), 24), ' ');
    out << label << " criterion " << r.criterion << " " << name << " " << verdict << "  " << r.detail << "\n";
  }
  out << label << (pass ? " PASS" : " FAIL") << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unified transform solver for half-line linear evolution equations", "utm"};
  app.require_subcommand(1);
  Flags flags;
  int order = 0;
  std::string a_text;

  auto* classify_cmd = app.add_subcommand("classify", "number of boundary conditions and admissibility");
  classify_cmd->add_option("--order", order, "spatial order n")->check(CLI::PositiveNumber);
  classify_cmd->add_option("--a", a_text, "dispersion coefficient, re,im");
  classify_cmd->add_option("--builtin", flags.builtin, "catalog problem")->check(CLI::IsMember(catalog_names));

  auto* contours_cmd = app.add_subcommand("contours", "CSV of the integration contours");
  add_common(contours_cmd, flags, false);
  auto* roots_cmd = app.add_subcommand("delta-roots", "CSV of the characteristic determinant roots");
  add_common(roots_cmd, flags, false);
  auto* rec_cmd = app.add_subcommand("reconstruct", "inverse of the forward transform at t = 0");
  add_common(rec_cmd, flags, true);
  auto* solve_cmd = app.add_subcommand("solve", "CSV of q(x, t)");
  add_common(solve_cmd, flags, true);
  auto* spec_cmd = app.add_subcommand("spectral-check", "type-I and type-II remainder checks");
  add_common(spec_cmd, flags, true);
  auto* verify_cmd = app.add_subcommand("verify", "every acceptance criterion for one problem");
  add_common(verify_cmd, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(flags, order, a_text, out);
    const RunConfig c = load_config(flags);
    if (contours_cmd->parsed()) return cmd_contours(c, out, err);
    if (roots_cmd->parsed()) return cmd_delta_roots(c, out, err);
    if (rec_cmd->parsed()) return cmd_reconstruct(c, out, err);
    if (solve_cmd->parsed()) return cmd_solve(c, out, err);
    if (spec_cmd->parsed()) return cmd_spectral(c, out, err);
    if (verify_cmd->parsed()) return cmd_verify(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace utm
