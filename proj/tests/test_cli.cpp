// Drives the gibtool binary end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gib/json_io.hpp"

namespace fs = std::filesystem;
using gib::Json;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("gib_cli_" + std::to_string(rd()));
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  fs::path operator/(const std::string& name) const { return dir / name; }

  // exit status of `gibtool args`, stdout to out.txt, stderr to err.txt
  int run(const std::string& args) const {
    std::string cmd = "cd '" + dir.string() + "' && GIB_STORE_DIR=store '" + std::string(GIBTOOL_PATH) + "' " +
                      args + " > out.txt 2> err.txt";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(dir / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
};

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("certify exit codes") {
  Sandbox sb;
  CHECK(sb.run("certify --poly \"-1,3,-1,1\" --degree 3") == 0);
  Json out = Json::parse(sb.read("out.txt"));
  CHECK(out.begin().key() == "header");
  CHECK(out["result"]["outcome"] == "certificate");
  CHECK(out["result"]["multiplicities"] == Json::array({1, 2}));

  // leading -1: the negated list is certified, with a note
  CHECK(sb.run("certify --poly \"1,-3,1,-1\"") == 0);
  CHECK(sb.read("err.txt").find("negated") != std::string::npos);

  CHECK(sb.run("certify --poly \"-1,0,1\"") == 2);
  CHECK(Json::parse(sb.read("out.txt"))["result"]["reason"] == "UnitModulusRoot");

  CHECK(sb.run("certify --poly \"-1,3,-1,1\" --degree 4") == 1);
  CHECK(sb.run("certify --poly \"1,2,3\"") == 1);
  CHECK(sb.run("certify --poly \"a,b\"") == 1);
  CHECK_FALSE(sb.read("err.txt").empty());
  CHECK(sb.run("certify --matrix missing.json") == 1);
  CHECK(sb.run("no-such-command") == 1);

  // equal moduli on distinct factors cannot be certified: undecided
  CHECK(sb.run("certify --poly \"1,-1,0,1,1,-1,0,1,1\"") == 3);
  CHECK(Json::parse(sb.read("out.txt"))["result"]["outcome"] == "undecided");
  CHECK(sb.run("certify --poly \"-1,3,-1,1\" --precision 16") == 1);
}

TEST_CASE("certify --matrix with the block matrix") {
  Sandbox sb;
  sb.write("block.json", "[[2,1,0,0],[1,1,0,0],[0,0,2,1],[0,0,1,1]]");
  CHECK(sb.run("certify --matrix block.json -o cert.json") == 0);
  Json c = Json::parse(sb.read("cert.json"));
  CHECK(c["result"]["multiplicities"] == Json::array({2, 2}));
  CHECK(c["result"]["certificate"].contains("matrix"));

  CHECK(sb.run("build-verify --cert cert.json --out-report rep.json --out-data data.json") == 0);
  Json rep = Json::parse(sb.read("rep.json"));
  CHECK(rep.begin().key() == "header");
  CHECK(rep["all_pass"] == true);
  bool leaf4 = false;
  for (const auto& e : rep["report"]) leaf4 = leaf4 || (e["check"] == "leaf_closure_dim" && e["residual"] == 4);
  CHECK(leaf4);
  Json data = Json::parse(sb.read("data.json"));
  CHECK(data["data"]["q"] == 2);
  CHECK(data["data"]["m"] == 2);
}

TEST_CASE("build-verify: pass, corrupted scale, literal scale") {
  Sandbox sb;
  REQUIRE(sb.run("certify --poly \"-1,3,-1,1\" -o cert.json") == 0);
  CHECK(sb.run("build-verify --cert cert.json --samples 100 --seed 0 --out-report a.json") == 0);
  CHECK(sb.run("build-verify --cert cert.json --samples 100 --seed 0 --out-report b.json") == 0);
  CHECK(sb.read("a.json") == sb.read("b.json"));
  Json rep = Json::parse(sb.read("a.json"));
  CHECK(rep["header"]["seed"] == 0);
  CHECK(rep["header"]["tolerances"].contains("pullback"));

  CHECK(sb.run("build-verify --cert cert.json --t-scale 0.365") == 2);
  CHECK(sb.read("out.txt").find("FAIL") != std::string::npos);
  CHECK(sb.run("build-verify --cert cert.json --literal-glide") == 2);
  CHECK(sb.read("out.txt").find("FAIL  glide.pullback[N]") != std::string::npos);
  CHECK(sb.run("build-verify --cert cert.json --e-class A") == 0);
  CHECK(sb.run("build-verify --cert cert.json --e-class Z") == 1);
  CHECK(sb.run("build-verify --cert nothing.json") == 1);
}

TEST_CASE("search: worker count does not change the file, rerun is cached") {
  Sandbox sb;
  sb.write("s.toml", "# cubic box\ndegrees = 3\nbound = 3\npattern = [1, 2]\n");
  CHECK(sb.run("search --spec s.toml -o one.jsonl -j 1 --store st1") == 0);
  CHECK(sb.run("search --spec s.toml -o eight.jsonl -j 8 --store st8") == 0);
  const std::string one = sb.read("one.jsonl");
  CHECK(one == sb.read("eight.jsonl"));
  CHECK(one.find("[-1,3,-1,1]") != std::string::npos);
  CHECK(Json::parse(one.substr(0, one.find('\n'))).begin().key() == "header");
  CHECK(sb.read("out.txt").find("degree 3:") != std::string::npos);

  const std::size_t store_lines = lines(sb.read("st1/store.jsonl"));
  CHECK(sb.run("search --spec s.toml -o again.jsonl -j 4 --store st1") == 0);
  CHECK(sb.read("out.txt").find("cached") != std::string::npos);
  CHECK(lines(sb.read("st1/store.jsonl")) == store_lines);
  CHECK(sb.read("again.jsonl") == one);

  // default store directory comes from the environment
  CHECK(sb.run("search --spec s.toml -o env.jsonl") == 0);
  CHECK(fs::exists(sb / "store/index.json"));

  sb.write("bad.toml", "degrees = three\n");
  CHECK(sb.run("search --spec bad.toml") == 1);
  CHECK(sb.run("search --spec none.toml") == 1);
}

TEST_CASE("search: no match exits 2") {
  Sandbox sb;
  sb.write("s.toml", "degrees = 2\nbound = 1\npattern = [1, 3]\n");
  CHECK(sb.run("search --spec s.toml -o r.jsonl") == 2);
  CHECK(lines(sb.read("r.jsonl")) == 7);
}

TEST_CASE("geometry subcommand") {
  Sandbox sb;
  sb.write("i2.json", "[[1,0],[0,1]]");
  sb.write("d12.json", "[[1,0],[0,2]]");
  sb.write("nil.json", "[[0,1],[0,0]]");
  CHECK(sb.run("geometry --matrix i2.json --mode curvature -o c.json --csv c.csv") == 0);
  Json c = Json::parse(sb.read("c.json"));
  CHECK(c.begin().key() == "header");
  CHECK(std::abs(c["curvature"]["min"].get<double>() + 1) < 1e-9);
  CHECK(std::abs(c["curvature"]["max"].get<double>() + 1) < 1e-9);
  CHECK(sb.read("c.csv").rfind("kind,", 0) == 0);

  CHECK(sb.run("geometry --matrix d12.json --mode curvature") == 0);
  CHECK(sb.run("geometry --matrix nil.json --mode curvature") == 2);

  CHECK(sb.run("geometry --model uhs --dim 1 --mode jacobi --alpha 1 -o j.json") == 0);
  Json j = Json::parse(sb.read("j.json"));
  CHECK(std::abs(j["jacobi"]["ratio"].get<double>() - std::exp(-1.0)) < 1e-6);

  CHECK(sb.run("geometry --matrix d12.json --mode jacobi --direction 0,1") == 0);
  sb.write("bad.json", "[[1,0],[0]]");
  CHECK(sb.run("geometry --matrix bad.json") == 1);
  CHECK(sb.run("geometry --matrix i2.json --mode sideways") == 1);
}
