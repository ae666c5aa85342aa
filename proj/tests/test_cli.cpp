#include <doctest.h>

#include "gaugelab/cli.hpp"
#include "gaugelab/growth.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gaugelab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gaugelab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

nlohmann::json strip_time(nlohmann::json j) {
  j.erase("wall_time_s");
  return j;
}

}  // namespace

TEST_CASE("growth CSV matches growth_table") {
  Run r = run({"growth", "--group", "heis", "--radius", "8", "--format", "csv"});
  CHECK(r.code == 0);
  GroupSpec h = GroupSpec::heisenberg();
  GrowthReport g = growth_table(h, standard_generators(h), 8);
  std::string expect = "n,sphere,ball\n";
  for (int n = 0; n <= 8; ++n)
    expect += std::to_string(n) + "," + std::to_string(g.sphere[n]) + "," + std::to_string(g.ball[n]) + "\n";
  CHECK(r.out == expect);
}

TEST_CASE("exit codes encode verdicts") {
  Run m = run({"mconvex-probe", "--group", "z", "--scale", "word_pow:2", "--nmax", "12"});
  CHECK(m.code == 1);
  auto j = nlohmann::json::parse(m.out);
  CHECK(j["status"] == "violated");
  CHECK(j["result"]["witness"]["chain"].size() == 12);

  CHECK(run({"bounds-ad", "--group", "axb", "--scale", "const:1", "--samples", "200", "--seed", "7"}).code == 1);
  CHECK(run({"mconvex-probe", "--group", "z", "--scale", "one_plus_abs", "--nmax", "12"}).code == 0);
  CHECK(run({"integrability", "--group", "z", "--scale", "one_plus_abs", "--p", "2", "--radius", "200"}).code == 0);
  CHECK(run({"integrability", "--group", "z", "--scale", "one_plus_abs", "--p", "1", "--radius", "200"}).code == 1);
  CHECK(run({"msubpoly", "--group", "z", "--scale", "word_weight", "--nmax", "3"}).code == 2);

  // The ax+b G-space weight is 2 at the identity, so it is not a weight in the strict sense.
  Run w = run({"check-axioms", "--group", "axb", "--scale", "axb_omega", "--samples", "50"});
  CHECK(w.code == 1);
  CHECK(nlohmann::json::parse(w.out)["result"]["witness"]["axiom"] == "equals 1 at identity");
}

TEST_CASE("usage and runtime errors") {
  CHECK(run({"growth", "--group", "z", "--bogus", "1"}).code == 3);
  CHECK(run({"growth"}).code == 3);
  CHECK(run({"growth", "--group", "nonsense"}).code == 3);
  CHECK(run({"growth", "--group", "z", "--radius", "x"}).code == 3);
  CHECK(run({"no-such-command"}).code == 3);
  CHECK(run({"growth", "--group", "z", "--format", "xml"}).code == 3);
  CHECK(run({"bounds-ad", "--group", "axb", "--scale", "const:1"}).code == 3);  // --samples is mandatory
  // Element outside the enumerated ball.
  Run nf = run({"gauge", "--group", "z", "--radius", "3", "--element", "9"});
  CHECK(nf.code == 4);
  CHECK(nf.err.find("outside") != std::string::npos);
}

TEST_CASE("JSON reports round-trip and repeat byte-for-byte") {
  std::vector<std::string> args = {"dominates", "--group", "z", "--scale", "abs", "--scale2", "sqrt_abs", "--radius", "20"};
  Run a = run(args), b = run(args);
  auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  CHECK(nlohmann::json::parse(ja.dump()) == ja);
  CHECK(strip_time(ja) == strip_time(jb));
  CHECK(ja["version"] == kVersion);
  CHECK(ja["result"]["verdict"] == "holds-on-evidence");

  std::vector<std::string> sampled = {"type-r", "--group", "sl2", "--samples", "50", "--seed", "3"};
  CHECK(strip_time(nlohmann::json::parse(run(sampled).out)) == strip_time(nlohmann::json::parse(run(sampled).out)));
}

TEST_CASE("text mode states the checked inequality") {
  Run t = run({"subpoly", "--group", "z", "--scale", "one_plus_abs", "--format", "text"});
  CHECK(t.code == 0);
  CHECK(t.out.find("checks: sigma(gh) <= C * (1+sigma(g))^d * (1+sigma(h))^d") != std::string::npos);
  CHECK(t.out.find("status: holds-on-evidence") != std::string::npos);
}

TEST_CASE("help lists every subcommand") {
  Run h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(subcommands().size() == 25);
  for (const auto& info : subcommands()) {
    CHECK_MESSAGE(h.out.find(info.name) != std::string::npos, info.name);
    CHECK_FALSE(info.summary.empty());
  }
}

TEST_CASE("config files mirror flags and flags win") {
  std::string cfg = temp_file("gaugelab_cfg.toml", "# growth settings\ngroup = \"z:2\"\nradius = 3\nformat = csv\n");
  Run a = run({"growth", "--config", cfg});
  CHECK(a.code == 0);
  CHECK(a.out == "n,sphere,ball\n0,1,1\n1,4,5\n2,8,13\n3,12,25\n");
  Run b = run({"growth", "--config", cfg, "--radius", "1"});
  CHECK(b.out == "n,sphere,ball\n0,1,1\n1,4,5\n");
  std::string bad = temp_file("gaugelab_bad.toml", "group = z\nwhatever = 1\n");
  CHECK(run({"growth", "--config", bad}).code == 3);
}

TEST_CASE("CSV headers are fixed per subcommand") {
  auto header = [](const Run& r) { return r.out.substr(0, r.out.find('\n')); };
  CHECK(header(run({"integrability", "--group", "z", "--scale", "one_plus_abs", "--p", "2", "--radius", "20",
                    "--format", "csv"})) == "n,sphere,ball,log_value_term,log_value_partial_sum");
  CHECK(header(run({"diverge-demo", "--which", "inverse-sqrt", "--M", "100", "--format", "csv"})) ==
        "M,value,log_value");
  CHECK(header(run({"dominates", "--group", "z", "--scale", "abs", "--scale2", "exp_abs", "--format", "csv"})) ==
        "level,log_value_required");
  CHECK(header(run({"conv-power", "--nmax", "2", "--grid", "1/32", "--format", "csv"})) ==
        "n,log_value_norm,log_value_bound,relative_error_budget,log_value_root,log_value_root_bound");
}

TEST_CASE("every subcommand runs") {
  std::string f = temp_file("gaugelab_f.txt", "# phi\n0 1/2\n1 1\n-2 3/4\n");
  std::string g = temp_file("gaugelab_g.txt", "1 2\n");
  std::vector<std::vector<std::string>> cmds = {
      {"growth", "--group", "free:2", "--radius", "6"},
      {"gauge", "--group", "heis", "--element", "(0,1,0);(1,0,0)"},
      {"check-axioms", "--group", "z", "--scale", "one_plus_abs"},
      {"check-axioms", "--group", "sl2", "--scale", "theta", "--samples", "50"},
      {"dominates", "--group", "z", "--scale", "abs", "--scale2", "sqrt_abs"},
      {"strong-dominates", "--group", "z", "--scale", "sqrt_abs", "--scale2", "abs"},
      {"translation-equiv", "--group", "z", "--scale", "one_plus_abs", "--shifts", "5"},
      {"subpoly", "--group", "z", "--scale", "one_plus_abs"},
      {"msubpoly", "--group", "z", "--scale", "word_weight"},
      {"mconvex-probe", "--group", "z", "--scale", "one_plus_abs"},
      {"bounds-ad", "--group", "sl2", "--scale", "theta", "--samples", "100"},
      {"type-r", "--group", "heis", "--samples", "50"},
      {"unipotent-bound", "--group", "unip:3", "--radius", "8"},
      {"axb-decompose", "--a", "0", "--b", "5"},
      {"sl2-scales", "--element", "[[2,0],[0,0.5]]"},
      {"convolve", "--group", "z", "--f", f, "--g", g},
      {"seminorm", "--group", "z", "--f", f, "--scale", "one_plus_abs", "--m", "2"},
      {"involution", "--group", "z", "--f", f},
      {"delta-ratio", "--group", "z", "--scale", "one_plus_abs", "--chain", "1;1;1;1;1"},
      {"diverge-demo", "--which", "superexp-square", "--M", "5"},
      {"tempered-demo", "--q", "2", "--n", "3"},
      {"integrability", "--group", "free:2", "--scale", "word_weight", "--p", "2", "--radius", "8"},
      {"holder-check", "--group", "z", "--f", f, "--scale", "one_plus_abs", "--p", "2", "--radius", "500"},
      {"conv-power", "--nmax", "2", "--grid", "1/64"},
      {"gspace-check", "--preset", "z-line", "--samples", "100"},
      {"induced-scale", "--r", "0.5", "--point", "0"},
  };
  for (const auto& c : cmds) {
    Run r = run(c);
    CHECK_MESSAGE(r.code == 0, (std::string(c[0]) + ": " + r.err));
    for (const char* fmt : {"json", "csv", "text"}) {
      auto with = c;
      with.push_back("--format");
      with.push_back(fmt);
      CHECK_MESSAGE(run(with).code == 0, (std::string(c[0]) + " " + fmt));
    }
  }
  auto conv = nlohmann::json::parse(run({"convolve", "--group", "z", "--f", f, "--g", g}).out);
  CHECK(conv["result"]["coefficients"][0] == nlohmann::json::array({"-1", "3/2"}));
  auto semi = nlohmann::json::parse(run({"seminorm", "--group", "z", "--f", f, "--scale", "one_plus_abs", "--m", "2"}).out);
  // 1/2 * 1 + 1 * 4 + 3/4 * 9
  CHECK(semi["result"]["exact"] == "45/4");
  auto temp = nlohmann::json::parse(run({"tempered-demo", "--q", "2", "--n", "3"}).out);
  CHECK(temp["result"]["norm"] == "27");
}
