#include <algorithm>
#include <filesystem>
#include <fstream>
#include <locale>
#include <numbers>
#include <sstream>

#include "cars/commands.hpp"
#include "cars/diagnostics.hpp"
#include "cars/errors.hpp"
#include "cars/model_io.hpp"
#include "doctest.h"

using namespace cars;

namespace {

const std::filesystem::path kData = CARS_TEST_DATA_DIR;

std::string message_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(RunConfig cfg) {
  std::ostringstream out, err;
  const int code = run_command(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command, const std::string& file = "") {
  RunConfig c;
  c.command = command;
  if (!file.empty()) c.input = kData / file;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse_model: minimal achiral tensor-form file") {
  const ModelFile m = parse_model(R"({"modes": [{"name": "m", "shift_cm1": 1000,
      "alpha34": [1,0,0, 0,1,0, 0,0,1], "alpha12": [2,0,0, 0,1,0, 0,0,1]}]})");
  REQUIRE(m.modes.size() == 1);
  CHECK(m.modes[0].tensors.achiral());
  CHECK(m.modes[0].tensors.gprime34 == Rank2{});
  CHECK(m.modes[0].tensors.a34 == Rank3SymLast{});
  CHECK(m.modes[0].tensors.alpha12(0, 0) == 2.0);
  CHECK(m.constants.c == kSpeedOfLightAu);
  CHECK(!m.is_states());
}

TEST_CASE("parse_model: asymmetric alpha names the mode") {
  try {
    load_model(kData / "asymmetric_alpha.json");
    FAIL("expected SymmetryError");
  } catch (const SymmetryError& e) {
    CHECK(std::string(e.what()).find("bad-mode") != std::string::npos);
    CHECK(std::string(e.what()).find("alpha34") != std::string::npos);
  }
}

TEST_CASE("parse_model: states form reproduces the single-intermediate polarizability") {
  const ModelFile m = load_model(kData / "single_intermediate.json");
  REQUIRE(m.is_states());
  const FrequencyQuad w = FrequencyQuad::conserving(*m.beams.omega1, *m.beams.omega2, *m.beams.omega3);
  const SosTensors t = build_property_tensors(*m.states, w);
  CHECK(t.tensors.alpha34(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(t.tensors.alpha12(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(t.tensors.alpha34(1, 1) == 0.0);
}

TEST_CASE("parse_model: schema errors carry the field path") {
  CHECK(message_of("{").find("malformed JSON") != std::string::npos);
  CHECK(message_of("[]").find("(root)") != std::string::npos);
  CHECK(message_of("{}").find("exactly one of") != std::string::npos);
  CHECK(message_of(R"({"modes": [{"name": "m", "shift_cm1": 1, "alpha34": [1,0,0,0,1,0,0,0,1]}]})")
            .find("modes[0].alpha12: missing required field") != std::string::npos);
  CHECK(message_of(R"({"modes": [{"name": "m", "shift_cm1": 1, "alpha34": [1,0,0,0,1,0,0,0,1],
      "alpha12": [1,0,0,0,1,0,0,"x",1]}]})")
            .find("modes[0].alpha12[7]: expected a number") != std::string::npos);
  CHECK(message_of(R"({"modes": [{"name": "m", "shift_cm1": 1, "alpha34": [1], "alpha12": [1]}]})")
            .find("expected an array of 9 numbers") != std::string::npos);
  CHECK(message_of(R"({"modes": [], "bogus": 1})").find("bogus: unknown field") != std::string::npos);
  CHECK(message_of(R"({"constants": {"units": "si"}, "modes": []})").find("constants.units") != std::string::npos);
  CHECK_THROWS_AS(parse_model(R"({"modes": []})"), SchemaError);
}

TEST_CASE("parse_model: states-form role errors") {
  const std::string base = R"({"states": {"levels": [{"id": "g", "energy": 0}, {"id": "e", "energy": 0.3}],
      "dipoles": [{"bra": "e", "ket": "g", "value": [1, 0, 0]}],
      "roles": ROLES}})";
  auto with = [&](const std::string& roles) {
    std::string s = base;
    s.replace(s.find("ROLES"), 5, roles);
    return s;
  };
  CHECK_NOTHROW(parse_model(with(R"({"g": "g", "s": "g", "f": "g", "t": ["e"], "r": ["e"]})")));
  CHECK_THROWS_AS(parse_model(with(R"({"g": "g", "s": "x", "f": "g", "t": ["e"], "r": ["e"]})")), RoleError);
  CHECK_THROWS_AS(parse_model(with(R"({"g": "g", "s": "g", "f": "g", "t": [], "r": ["e"]})")), RoleError);
  CHECK_THROWS_AS(parse_model(with(R"({"g": "g", "s": "g", "f": "g", "t": ["e"]})")), SchemaError);
  CHECK_THROWS_AS(parse_model(R"({"states": {"levels": [{"id": "g", "energy": 0}],
      "dipoles": [{"bra": "g", "ket": "nowhere", "value": [1, 0, 0]}],
      "roles": {"g": "g", "s": "g", "f": "g", "t": ["g"], "r": ["g"]}}})"),
                  RoleError);
}

TEST_CASE("property: serialize(parse(x)) is idempotent") {
  for (const char* name : {"achiral.json", "isotropic_chiral.json", "single_intermediate.json"}) {
    const std::string once = serialize_model(load_model(kData / name));
    const std::string twice = serialize_model(parse_model(once));
    CHECK(once == twice);
  }
  for (const char* name : {"achiral.json", "chiral_modes.json", "two_state_sos.json"}) {
    const std::string once = serialize_model(load_model(std::filesystem::path(CARS_MODELS_DIR) / name));
    CHECK(serialize_model(parse_model(once)) == once);
  }
}

TEST_CASE("format_number") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_number(2.0 / 3.0) == "0.6666666666666666");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  // at most 17 significant digits, exact round trip
  for (double v : {std::numbers::pi, 1.0 / 7.0, 123456.789e10, 2.2250738585072014e-308}) {
    const std::string s = format_number(v);
    CHECK(std::stod(s) == v);
    std::size_t digits = 0;
    for (char ch : s.substr(0, s.find('e'))) digits += (ch >= '0' && ch <= '9');
    CHECK(digits <= 18);  // a leading "0." adds one
  }
}

TEST_CASE("format_number ignores the global locale") {
  std::locale previous;
  try {
    previous = std::locale::global(std::locale("de_DE.UTF-8"));
  } catch (const std::runtime_error&) {
    MESSAGE("de_DE locale not installed; comma-decimal check skipped");
    return;
  }
  CHECK(format_number(1.5) == "1.5");
  std::locale::global(previous);
}

TEST_CASE("scan argument") {
  const ScanGrid g = parse_scan_argument("900,1100,100");
  CHECK(g.start == 900.0);
  CHECK(g.stop == 1100.0);
  CHECK(g.step == 100.0);
  CHECK_THROWS_AS(parse_scan_argument("900,1100"), ValidationError);
  CHECK_THROWS_AS(parse_scan_argument("900;1100;1"), ValidationError);
  CHECK_THROWS_AS(parse_scan_argument("900,1100,1x"), ValidationError);
  CHECK_THROWS_AS(parse_scan_argument("1100,900,1"), ValidationError);
}

TEST_CASE("run_command: verify on the built-in isotropic case exits 2") {
  RunConfig c = config("verify");
  c.verify_case = "isotropic";
  const Run r = run(c);
  CHECK(r.code == 2);
  CHECK(r.out.find("FAIL  magnetic (natural, cross-check)") != std::string::npos);
  CHECK(r.out.find("PASS  magnetic (isotropic, authoritative)") != std::string::npos);
}

TEST_CASE("run_command: delta on an achiral model") {
  const Run r = run(config("delta", "achiral.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("delta        0\n") != std::string::npos);
  CHECK(r.out.find("delta_eq12   0 ") != std::string::npos);
  CHECK(r.out.find("delta_eq13   0 ") != std::string::npos);
}

TEST_CASE("run_command: delta on the isotropic chiral model gives 4 g0 / c") {
  RunConfig c = config("delta", "isotropic_chiral.json");
  c.normalize = true;
  const Run r = run(c);
  CHECK(r.code == 0);
  const std::size_t at = r.out.find("delta        ");
  REQUIRE(at != std::string::npos);
  const double delta = std::stod(r.out.substr(at + 13, r.out.find('\n', at) - at - 13));
  CHECK(delta == doctest::Approx(4.0 * 0.01 / kSpeedOfLightAu).epsilon(1e-14));
  CHECK(r.out.find("INCONSISTENT") != std::string::npos);
}

TEST_CASE("run_command: spectrum CSV") {
  const Run a = run(config("spectrum", "achiral.json"));
  CHECK(a.code == 0);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "shift_cm1,omega2_au,rate_R,rate_L,delta");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "0");
  }
  CHECK(rows == 3);
  CHECK(run(config("spectrum", "achiral.json")).out == a.out);

  RunConfig c = config("spectrum", "isotropic_chiral.json");
  c.scan = ScanGrid{990.0, 1010.0, 5.0};
  const Run s = run(c);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 6);
}

TEST_CASE("run_command: spectrum writes the output file byte-identically") {
  const auto dir = std::filesystem::temp_directory_path();
  RunConfig c = config("spectrum", "isotropic_chiral.json");
  c.output = dir / "cars_spectrum_a.csv";
  CHECK(run(c).code == 0);
  c.output = dir / "cars_spectrum_b.csv";
  CHECK(run(c).code == 0);
  CHECK(slurp(dir / "cars_spectrum_a.csv") == slurp(dir / "cars_spectrum_b.csv"));
  CHECK(slurp(dir / "cars_spectrum_a.csv").rfind("shift_cm1,", 0) == 0);
}

TEST_CASE("run_command: invariants") {
  const Run r = run(config("invariants", "isotropic_chiral.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("[alpha]  1:") != std::string::npos);
  CHECK(r.out.find("a0(11)=") != std::string::npos);
  CHECK(r.out.find("k@omega4") != std::string::npos);
}

TEST_CASE("run_command: operational errors exit 1") {
  CHECK(run(config("delta")).code == 1);
  CHECK(run(config("nonsense")).code == 1);
  RunConfig c = config("delta", "achiral.json");
  c.samples = 10;
  const Run r = run(c);
  CHECK(r.code == 1);
  CHECK(r.err.find("error: --samples") == 0);
  const Run bad = run(config("delta", "asymmetric_alpha.json"));
  CHECK(bad.code == 1);
  CHECK(bad.err.find("bad-mode") != std::string::npos);
  RunConfig no_beams = config("delta", "asymmetric_alpha.json");
  no_beams.input = kData / "missing.json";
  CHECK(run(no_beams).code == 1);
}
