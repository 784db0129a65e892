#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "utm/cli.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome call(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"utm"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  Outcome o;
  o.code = utm::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("utm_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("classify") {
  CHECK(call({"classify", "--order", "3", "--a", "0,-1"}).out == "N=1\n");
  CHECK(call({"classify", "--order", "3", "--a", "0,1"}).out == "N=2\n");
  CHECK(call({"classify", "--order", "2", "--a", "1"}).out == "N=1\n");
  CHECK(call({"classify", "--order", "3", "--a", "1,0"}).out == "inadmissible\n");
  const auto bad = call({"classify", "--order", "2", "--a", "-1"});
  CHECK(bad.code == 0);
  CHECK(bad.out == "inadmissible\n");
  CHECK(call({"classify", "--builtin", "robin-4"}).out == "N=2\n");
  CHECK(call({"classify", "--builtin", "nope"}).code == 2);
  CHECK(call({"classify", "--order", "3"}).code == 2);
}

TEST_CASE("delta-roots and contours headers") {
  const auto roots = call({"delta-roots", "--builtin", "lkdv-dirichlet"});
  CHECK(roots.code == 0);
  CHECK(roots.out.rfind("re,im,multiplicity\n", 0) == 0);
  CHECK(roots.err.find("R=") != std::string::npos);

  const auto contours = call({"contours", "--builtin", "robin-4"});
  CHECK(contours.code == 0);
  CHECK(contours.out.rfind("contour,segment,s,re,im\n", 0) == 0);
  CHECK(contours.err.find("components=2") != std::string::npos);
}

TEST_CASE("reconstruct passes") {
  const auto r = call({"reconstruct", "--builtin", "heat-neumann", "--xs", "0.5,1,2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,f,re_recon,im_recon,abs_err\n", 0) == 0);
  CHECK(r.err.find("PASS") != std::string::npos);
}

TEST_CASE("solve output is deterministic") {
  const auto a = call({"solve", "--builtin", "heat-dirichlet", "--xs", "0.5,1", "--ts", "0,0.1"});
  const auto b = call({"solve", "--builtin", "heat-dirichlet", "--xs", "0.5,1", "--ts", "0,0.1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("x,t,re_q,im_q\n", 0) == 0);
  CHECK(call({"solve", "--builtin", "heat-dirichlet", "--xs", "0,1"}).code == 2);
  CHECK(call({"solve", "--builtin", "heat-dirichlet", "--xs", "1:-1:2"}).code == 2);
}

TEST_CASE("spectral-check on the reversed third-order problem") {
  const auto r = call({"spectral-check", "--builtin", "lkdv-reverse", "--xs", "0.7"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("k,x,type,residual,verdict\n", 0) == 0);
  CHECK(r.out.find("DIVERGENT") != std::string::npos);
}

TEST_CASE("--out writes CSV files") {
  const auto dir = scratch_dir("out");
  const auto r = call({"delta-roots", "--builtin", "robin-4", "--out", dir.c_str()});
  CHECK(r.code == 0);
  std::ifstream file(dir / "delta-roots.csv");
  REQUIRE(file.good());
  std::string header;
  std::getline(file, header);
  CHECK(header == "re,im,multiplicity");
  CHECK(r.out.find("wrote") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("problem files and usage errors") {
  const auto dir = scratch_dir("cfg");
  const auto good = dir / "good.cfg";
  std::ofstream(good) << "order=2\na=1\nbc=0,1\n";
  const auto bad = dir / "bad.cfg";
  std::ofstream(bad) << "order=2\na=1\nbc=0,1\nwhat=3\n";

  CHECK(call({"delta-roots", "--problem", good.c_str()}).code == 0);
  const auto e = call({"delta-roots", "--problem", bad.c_str()});
  CHECK(e.code == 2);
  CHECK(e.err.find(":4:") != std::string::npos);

  CHECK(call({"delta-roots"}).code == 2);
  CHECK(call({"delta-roots", "--builtin", "robin-4", "--problem", good.c_str()}).code == 2);
  CHECK(call({"delta-roots", "--problem", (dir / "missing.cfg").c_str()}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"classify", "--help"}).code == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 123456.789, 0.0}) {
    const std::string s = utm::format_double(v);
    double back = 1.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(utm::format_double(0.5) == "0.5");
}

TEST_CASE("verify one problem") {
  const auto r = call({"verify", "--builtin", "heat-dirichlet"});
  CHECK(r.code == 0);
  CHECK(r.out.find("heat-dirichlet PASS") != std::string::npos);
  CHECK(r.out.find("criterion 9") != std::string::npos);
}
