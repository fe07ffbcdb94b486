#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "lexnav/corpus.hpp"
#include "lexnav/topology.hpp"
#include "lexnav/util.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace lexnav;

namespace {

struct CliFixture {
  fs::path dir;

  CliFixture() {
    dir = fs::temp_directory_path() / ("lexnav_cli_" + std::to_string(::getpid()) + "_" +
                                       std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~CliFixture() { fs::remove_all(dir); }

  static int& counter() {
    static int c = 0;
    return c;
  }

  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

  std::string out(const std::string& name) const { return (dir / name).string(); }

  // Runs the CLI, returns the exit code; stdout goes to `capture` when given.
  int run(const std::string& args, const std::string& capture = "") const {
    std::string cmd = std::string(LEXNAV_BIN) + " " + args;
    cmd += capture.empty() ? " >/dev/null" : (" >" + (dir / capture).string());
    cmd += " 2>" + (dir / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }

  std::string slurp(const std::string& name) const { return read_file(dir / name); }

  // Three pages in a line: p0 -> p1 -> p2.
  void write_small_corpus() const {
    file("pages.tsv",
         "http://p0\tzero\tweb crawler navigation\n"
         "http://p1\tone\tweb crawler search index\n"
         "http://p2\ttwo\tgraph routing theory\n");
    file("links.tsv", "http://p0\thttp://p1\nhttp://p1\thttp://p2\n");
  }
};

}  // namespace

TEST_CASE("usage errors exit 2") {
  CliFixture fx;
  CHECK(fx.run("") == 2);
  CHECK(fx.run("bogus-subcommand") == 2);
  CHECK(fx.run("pairs --no-such-flag") == 2);
  CHECK(fx.run("--help") == 0);
  CHECK(fx.run("--version") == 0);
  // randomized subcommands demand an explicit seed
  fx.write_small_corpus();
  CHECK(fx.run("pairs --pages " + fx.out("pages.tsv") + " --links " + fx.out("links.tsv") +
               " --count 3 --out " + fx.out("o")) == 2);
}

TEST_CASE("runtime failures exit 1 with a diagnostic") {
  CliFixture fx;
  CHECK(fx.run("ingest --pages /no/such/file --links /no/such/file --out " + fx.out("o")) == 1);
  CHECK(fx.slurp("stderr.txt").find("error") != std::string::npos);

  fx.file("bad.tsv", "only two\tfields\n");
  fx.file("links.tsv", "");
  CHECK(fx.run("ingest --pages " + fx.out("bad.tsv") + " --links " + fx.out("links.tsv") +
               " --out " + fx.out("o")) == 1);
  CHECK(fx.slurp("stderr.txt").find("line 1") != std::string::npos);
}

TEST_CASE("ingest reports a corpus summary and manifest") {
  CliFixture fx;
  fx.write_small_corpus();
  REQUIRE(fx.run("ingest --pages " + fx.out("pages.tsv") + " --links " + fx.out("links.tsv") +
                 " --out " + fx.out("ing"), "stdout.txt") == 0);
  CHECK(fx.slurp("stdout.txt").find("pages=3") != std::string::npos);

  const auto summary = nlohmann::json::parse(fx.slurp("ing/summary.json"));
  CHECK(summary["pages"] == 3);
  CHECK(summary["links_kept"] == 2);

  const auto manifest = nlohmann::json::parse(fx.slurp("ing/manifest.json"));
  CHECK(manifest["command"] == "ingest");
  CHECK(manifest["version"].is_string());
  CHECK(manifest["parameters"].contains("weighting"));
  CHECK(manifest["duration_seconds"].is_number());
}

TEST_CASE("estimate on a tiny fixture matches the direct evaluation") {
  CliFixture fx;
  fx.write_small_corpus();
  const std::string corpus_flags =
      " --pages " + fx.out("pages.tsv") + " --links " + fx.out("links.tsv");
  REQUIRE(fx.run("pairs" + corpus_flags + " --count 3 --seed 1 --out " + fx.out("p")) == 0);
  REQUIRE(fx.run("estimate --pairs " + fx.out("p/pairs.csv") +
                 " --lambdas 0 --bins 1 --rho-min 0.001 --rho-max 1000 --out " + fx.out("e")) == 0);

  const auto pairs = pairs_from_csv(fx.slurp("p/pairs.csv"), "pairs");
  REQUIRE(pairs.size() == 3);
  const auto brute = oracles::brute_force_linkage(pairs, 0.0, {0.001, 1000.0});
  const auto dist = distribution_from_csv(fx.slurp("e/dist_lambda=0.csv"), "dist");
  REQUIRE(dist.bins.size() == 1);
  CHECK(dist.bins[0].total == brute.total[0]);
  CHECK(dist.bins[0].linked == brute.linked[0]);
  const auto p = dist.bins[0].probability();
  REQUIRE(p.has_value());
  CHECK(*p == static_cast<double>(brute.linked[0]) / static_cast<double>(brute.total[0]));
}

TEST_CASE("fit recovers the exponent of a noiseless fixture") {
  CliFixture fx;
  // probability = 0.5 * center^-2 with dyadic centers: exact in binary
  std::string csv = "rho_center,total,linked,probability\n";
  for (int k = 0; k <= 5; ++k) {
    const double center = std::pow(2.0, k);
    const int64_t total = int64_t{1} << (2 * k + 1);
    csv += format_double(center) + "," + std::to_string(total) + ",1," +
           format_double(0.5 * std::pow(center, -2.0)) + "\n";
  }
  fx.file("dist_lambda=0.1.csv", csv);
  REQUIRE(fx.run("fit --dists " + fx.out("dist_lambda=0.1.csv") + " --out " + fx.out("f")) == 0);
  const auto rows = fits_from_csv(fx.slurp("f/fits.csv"), "fits");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].lambda == 0.1);  // recovered from the filename
  CHECK(std::abs(rows[0].fit.alpha - 2.0) < 1e-9);
  CHECK(rows[0].fit.r_squared == 1.0);
}

TEST_CASE("alphas regresses the fit summary") {
  CliFixture fx;
  std::string csv = "lambda,alpha,intercept,r_squared,tail_start,points_used\n";
  for (double l : {0.0, 0.25, 0.5}) {  // dyadic, so the line is exact in binary
    csv += format_double(l) + "," + format_double(2.0 * l + 1.0) + ",0,1,1,5\n";
  }
  fx.file("fits.csv", csv);
  REQUIRE(fx.run("alphas --fits " + fx.out("fits.csv") + " --out " + fx.out("a"),
                 "stdout.txt") == 0);
  CHECK(fx.slurp("stdout.txt").find("slope=2") != std::string::npos);
  const auto out = fx.slurp("a/alpha_lambda.csv");
  CHECK(out.starts_with("slope,intercept,pearson,points\n"));
  CHECK(out.find("2,1,1,3") != std::string::npos);
}

TEST_CASE("navigate prints the run record") {
  CliFixture fx;
  REQUIRE(fx.run("generate --kind lattice --dims 1 --side 12 --alpha 0 --q 0 --seed 3 --out " +
                 fx.out("g")) == 0);
  REQUIRE(fx.run("navigate --graph " + fx.out("g/graph.txt") + " --source 0 --target 3",
                 "stdout.txt") == 0);
  const auto out = fx.slurp("stdout.txt");
  CHECK(out.find("success=true") != std::string::npos);
  CHECK(out.find("links_traversed=3") != std::string::npos);
  CHECK(out.find("path=0,1,2,3") != std::string::npos);
}

TEST_CASE("seeded commands are byte-reproducible") {
  CliFixture fx;
  fx.write_small_corpus();
  const std::string corpus_flags =
      " --pages " + fx.out("pages.tsv") + " --links " + fx.out("links.tsv");

  SUBCASE("pairs") {
    REQUIRE(fx.run("pairs" + corpus_flags + " --count 2 --seed 9 --out " + fx.out("a")) == 0);
    REQUIRE(fx.run("pairs" + corpus_flags + " --count 2 --seed 9 --out " + fx.out("b")) == 0);
    CHECK(fx.slurp("a/pairs.csv") == fx.slurp("b/pairs.csv"));
    REQUIRE(fx.run("pairs" + corpus_flags + " --count 2 --seed 10 --out " + fx.out("c")) == 0);
    CHECK(fx.slurp("a/pairs.csv") != fx.slurp("c/pairs.csv"));
  }
  SUBCASE("generate") {
    const std::string spec = "generate --kind lexical --dims 2 --side 6 --alpha 1.5 --q 2 ";
    REQUIRE(fx.run(spec + "--seed 4 --out " + fx.out("a")) == 0);
    REQUIRE(fx.run(spec + "--seed 4 --out " + fx.out("b")) == 0);
    REQUIRE(fx.run(spec + "--seed 5 --out " + fx.out("c")) == 0);
    CHECK(fx.slurp("a/graph.txt") == fx.slurp("b/graph.txt"));
    CHECK(fx.slurp("a/graph.txt") != fx.slurp("c/graph.txt"));
  }
  SUBCASE("experiment, independent of thread count") {
    const std::string spec =
        "experiment --kind lattice --dims 2 --sides 8,12 --alphas 0,2 --trials 20 --seed 6 ";
    REQUIRE(fx.run(spec + "--threads 1 --out " + fx.out("a")) == 0);
    REQUIRE(fx.run(spec + "--threads 4 --out " + fx.out("b")) == 0);
    CHECK(fx.slurp("a/experiment.csv") == fx.slurp("b/experiment.csv"));
  }
}

TEST_CASE("plot renders SVG and gnuplot data from CSVs alone") {
  CliFixture fx;
  fx.write_small_corpus();
  const std::string corpus_flags =
      " --pages " + fx.out("pages.tsv") + " --links " + fx.out("links.tsv");
  REQUIRE(fx.run("pairs" + corpus_flags + " --count 3 --seed 1 --out " + fx.out("p")) == 0);
  REQUIRE(fx.run("estimate --pairs " + fx.out("p/pairs.csv") +
                 " --lambdas 0,0.4 --bins 4 --rho-min 0.5 --rho-max 50 --out " + fx.out("e")) == 0);

  // synthetic fits/alphas so the overlay and inset have content
  fx.file("fits.csv",
          "lambda,alpha,intercept,r_squared,tail_start,points_used\n"
          "0,1,0,1,1,5\n0.4,2,0,1,1,5\n");
  fx.file("alpha_lambda.csv", "slope,intercept,pearson,points\n2.5,1,1,2\n");

  REQUIRE(fx.run("plot --dists " + fx.out("e/dist_lambda=0.csv") + " " +
                 fx.out("e/dist_lambda=0.4.csv") + " --fits " + fx.out("fits.csv") +
                 " --alphas " + fx.out("alpha_lambda.csv") + " --out " + fx.out("plots")) == 0);
  const auto svg = fx.slurp("plots/linkage.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("lambda=0.4") != std::string::npos);
  CHECK(!fx.slurp("plots/linkage.dat").empty());
  CHECK(!fx.slurp("plots/alpha_lambda.dat").empty());

  REQUIRE(fx.run("experiment --kind lattice --dims 2 --sides 8 --alphas 0,1 --trials 5 --seed 2 "
                 "--out " + fx.out("x")) == 0);
  REQUIRE(fx.run("plot --experiment " + fx.out("x/experiment.csv") + " --out " + fx.out("px")) ==
          0);
  CHECK(fx.slurp("px/experiment.svg").find("<svg") != std::string::npos);
  CHECK(!fx.slurp("px/experiment.dat").empty());
  CHECK(fx.run("plot --out " + fx.out("nothing")) == 1);
}
