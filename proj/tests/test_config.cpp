#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "holoschwarz/config.hpp"
#include "holoschwarz/errors.hpp"
#include "holoschwarz/run.hpp"

using namespace holoschwarz;

namespace {

std::string kind_of(const std::string& text, int* line = nullptr) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  return "ok";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("defaults and a full file") {
    const RunConfig d = parse_config("");
    CHECK(d.command == Command::CheckCriterion);
    CHECK(d.grid.n_r == 64);

    const RunConfig c = parse_config(R"(
# covering run
run.command = covering
run.seed = 42
curve.kind = polynomial
curve.coeffs = 0,1,0.5:0.25 ; 0,0,0.1   # two components
nehari.kind = inverse_square
grid.n_r = 32
covering.radii = 0.2, 0.4
)");
    CHECK(c.command == Command::Covering);
    CHECK(c.seed == 42);
    REQUIRE(c.curve.coeffs.size() == 2);
    CHECK(c.curve.coeffs[0][2] == cplx(0.5, 0.25));
    CHECK(c.curve.coeffs[1].size() == 3);
    CHECK(c.nehari.kind == "inverse_square");
    CHECK(c.grid.n_r == 32);
    CHECK(c.covering_radii == std::vector<double>{0.2, 0.4});
    CHECK(build_curve(c.curve).dimension() == 2);
  }

  TEST_CASE("error kinds carry line numbers") {
    int line = 0;
    CHECK(kind_of("grid.n_r = 16\nthis is not a key\n", &line) == "syntax");
    CHECK(line == 2);
    CHECK(kind_of("\n\ngrid.colour = red\n", &line) == "unknown-key");
    CHECK(line == 3);
    CHECK(kind_of("grid.n_r = many\n", &line) == "invalid-value");
    CHECK(line == 1);
    CHECK(kind_of("grid.n_r = 4\n") == "invalid-value");
    CHECK(kind_of("grid.r_max = 1.0\n") == "invalid-value");
    CHECK(kind_of("run.command = frobnicate\n") == "invalid-value");
    CHECK(kind_of("grid.n_r =\n") == "syntax");
    CHECK(kind_of("curve.kind = example1\ncurve.c = 1000\n", &line) == "invalid-value");
    CHECK(line == 2);
    CHECK(kind_of("curve.kind = mobius\ncurve.coeffs = 1,0,0\n") == "invalid-value");
    CHECK(kind_of("curve.kind = polynomial\n") == "invalid-value");
    CHECK(kind_of("example.which = 3\n") == "invalid-value");
    CHECK(kind_of("injectivity.delta = -1\n") == "invalid-value");
  }

  TEST_CASE("reference lists every section") {
    const std::string ref = config_reference();
    for (const char* k : {"run.command", "curve.kind", "nehari.kind", "grid.n_r", "injectivity.samples",
                          "covering.radii", "boundary.eps", "example.which", "tolerance.lemma2"})
      CHECK(ref.find(k) != std::string::npos);
  }

  TEST_CASE("command names round-trip") {
    for (auto c : {Command::CheckCriterion, Command::ExtremalProfile, Command::Covering, Command::VerifyIdentities,
                   Command::Injectivity, Command::ReproduceExample, Command::Boundary})
      CHECK(parse_command(to_string(c)) == c);
  }
}

TEST_SUITE("run") {
  TEST_CASE("exit codes") {
    RunConfig ex1 = parse_config("curve.kind = example1\ngrid.n_r = 16\ngrid.n_theta = 16\n");
    CHECK(run(ex1).exit_code == exit_code::kPass);

    RunConfig steep = parse_config("curve.kind = tan\ncurve.coeffs = 1,2\ngrid.n_r = 8\ngrid.n_theta = 8\n");
    CHECK(run(steep).exit_code == exit_code::kCriterionFails);

    RunConfig sq = parse_config(
        "run.command = injectivity\ncurve.kind = polynomial\ncurve.coeffs = 0,0,1\ninjectivity.r_min = 0.1\n"
        "injectivity.samples = 2000\n");
    CHECK(run(sq).exit_code == exit_code::kCollision);

    RunConfig tight = parse_config("run.command = verify-identities\nsuite.points = 2\ntolerance.lemma2 = 1e-30\n");
    CHECK(run(tight).exit_code == exit_code::kIdentityFailure);

    // zero tangent at the origin: a domain problem surfacing at run time
    RunConfig flat = parse_config("curve.kind = polynomial\ncurve.coeffs = 0,0,1\ngrid.n_r = 8\ngrid.n_theta = 8\n");
    CHECK(run(flat).exit_code == exit_code::kConfigError);

    // a weight that is not Nehari is a failed check, not a crash
    RunConfig bad = parse_config("run.command = extremal-profile\nnehari.kind = constant\nnehari.value = 4\n");
    const RunReport br = run(bad);
    CHECK(br.exit_code == exit_code::kCriterionFails);
    CHECK(br.summary.find("valid=false") != std::string::npos);
  }

  TEST_CASE("artifacts are written under the output directory") {
    const auto dir = std::filesystem::temp_directory_path() / "holoschwarz_run_test";
    std::filesystem::remove_all(dir);
    RunConfig c = parse_config("curve.kind = example2\nnehari.kind = inverse_square\ngrid.n_r = 8\ngrid.n_theta = 8\n");
    c.output_dir = dir.string();
    const RunReport r = run(c);
    CHECK(r.exit_code == exit_code::kPass);
    REQUIRE_FALSE(r.artifacts.empty());
    for (const auto& a : r.artifacts) CHECK(std::filesystem::exists(a));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("summaries do not depend on the worker count") {
    const RunConfig c = parse_config("curve.kind = example2\nnehari.kind = inverse_square\ngrid.refine = 1\n");
    const RunConfig inj = parse_config("run.command = injectivity\ncurve.kind = example1\ninjectivity.samples = 3000\n");
    setenv("HOLOSCHWARZ_WORKERS", "1", 1);
    const std::string a = run(c).summary, ai = run(inj).summary;
    setenv("HOLOSCHWARZ_WORKERS", "3", 1);
    const std::string b = run(c).summary, bi = run(inj).summary;
    unsetenv("HOLOSCHWARZ_WORKERS");
    CHECK(a == b);
    CHECK(ai == bi);
  }
}
