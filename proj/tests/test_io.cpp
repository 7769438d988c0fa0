#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sbfl/error.hpp"
#include "sbfl/io.hpp"
#include "support.hpp"

using namespace sbfl;

namespace {

const std::filesystem::path kFixtures = SBFL_FIXTURE_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class F>
std::string parse_error(const std::string& text, F parse) {
  std::istringstream in(text);
  try {
    parse(in);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    return e.what();
  }
  FAIL("expected parse error");
  return {};
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("sbfl_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("running example files") {
  const auto expected = testing::running_example();
  const auto s = load_bundle(kFixtures / "running_example");
  CHECK(s.name == "running_example");
  CHECK(s.spectrum.hits == expected.spectrum.hits);
  CHECK(s.spectrum.tests == expected.spectrum.tests);
  CHECK(s.traces == expected.traces);
  CHECK(s.faults.faulty == expected.faults.faulty);
}

TEST_CASE("bundle member files name the bundle") {
  const auto a = load_bundle(kFixtures / "running_example.spectrum");
  CHECK(a.name == "running_example");
  CHECK(a.traces == load_bundle(kFixtures / "running_example").traces);
  CHECK(bundle_prefix("x/y.trace") == std::filesystem::path("x/y"));
  CHECK(bundle_prefix("x/y.csv") == std::filesystem::path("x/y.csv"));
}

TEST_CASE("emitters reproduce the fixtures byte for byte") {
  const auto s = load_bundle(kFixtures / "running_example");
  CHECK(emit_spectrum(s.spectrum) == slurp(kFixtures / "running_example.spectrum"));
  CHECK(emit_traces(s.traces) == slurp(kFixtures / "running_example.trace"));
  CHECK(emit_faults(s.spectrum, s.faults) == slurp(kFixtures / "running_example.faults"));
}

TEST_CASE("spectrum round trip") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 50; ++i) {
    const auto s = testing::random_spectrum(rng, 1 + i % 9, 1 + i % 7);
    std::istringstream in(emit_spectrum(s));
    const auto back = parse_spectrum(in);
    CHECK(back.hits == s.hits);
    CHECK(back.tests == s.tests);
    CHECK(emit_spectrum(back) == emit_spectrum(s));
  }
}

TEST_CASE("spectrum tolerates CRLF and blank lines") {
  std::istringstream in("method,t1,t2\r\n\r\na,1,0\r\n__outcome__,F,P\r\n\n");
  const auto s = parse_spectrum(in);
  CHECK(s.hits == std::vector<std::uint8_t>{1, 0});
  CHECK(s.tests[1].outcome == Outcome::Passed);
}

TEST_CASE("spectrum parse errors") {
  auto parse = [](std::istream& in) { parse_spectrum(in, "x.spectrum"); };
  CHECK(parse_error("", parse).find("missing header") != std::string::npos);
  const auto row = parse_error("method,t1,t2\na,1,0\nb,1\n__outcome__,F,P\n", parse);
  CHECK(row.find("x.spectrum:3") != std::string::npos);
  CHECK(row.find("2 cells") != std::string::npos);
  CHECK(parse_error("method,t1\na,2\n__outcome__,F\n", parse).find("non-binary") !=
        std::string::npos);
  CHECK(parse_error("method,t1\na,1\n", parse).find("__outcome__") != std::string::npos);
  CHECK(!parse_error("method,t1\na,1\n__outcome__,X\n", parse).empty());
  CHECK(!parse_error("method,t1\n__outcome__,F\na,1\n", parse).empty());
}

TEST_CASE("trace parsing groups interleaved records") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 100; ++round) {
    std::vector<TestTrace> traces;
    for (int t = 0; t < 4; ++t) traces.push_back(testing::random_trace(rng, "t" + std::to_string(t), 5, 10));
    // interleave the records randomly, keeping per-test order
    std::vector<std::size_t> cursor(traces.size(), 0);
    std::string text;
    std::vector<std::string> first_seen;
    for (;;) {
      std::vector<std::size_t> live;
      for (std::size_t t = 0; t < traces.size(); ++t) {
        if (cursor[t] < traces[t].events.size()) live.push_back(t);
      }
      if (live.empty()) break;
      const std::size_t t = live[rng() % live.size()];
      const auto& ev = traces[t].events[cursor[t]++];
      if (std::find(first_seen.begin(), first_seen.end(), traces[t].test) == first_seen.end()) {
        first_seen.push_back(traces[t].test);
      }
      text += traces[t].test + (ev.kind == EventKind::Enter ? ",E," : ",X,") + ev.method + "\n";
    }
    std::istringstream in(text);
    const auto parsed = parse_traces(in);
    REQUIRE(parsed.size() == first_seen.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      CHECK(parsed[i].test == first_seen[i]);
      const auto& original = *std::find_if(traces.begin(), traces.end(),
                                           [&](const TestTrace& x) { return x.test == first_seen[i]; });
      CHECK(parsed[i].events == original.events);
    }
  }
}

TEST_CASE("trace errors") {
  std::istringstream stray("t1,E,a\nt1,X,a\nt1,X,b\n");
  try {
    parse_traces(stray);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedTrace);
    CHECK(std::string(e.what()).find("t1") != std::string::npos);
  }
  auto parse = [](std::istream& in) { parse_traces(in, "x.trace"); };
  CHECK(parse_error("t1,Q,a\n", parse).find("x.trace:1") != std::string::npos);
  CHECK(!parse_error("t1,E\n", parse).empty());
}

TEST_CASE("bundle checks") {
  const auto dir = scratch_dir("bundle");
  const auto prefix = dir / "s";
  write_bundle(prefix, testing::running_example());
  CHECK(load_bundle(prefix).traces == testing::running_example().traces);

  {
    std::ofstream f(dir / "s.faults");
    f << "zz\n";
  }
  try {
    load_bundle(prefix);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Reference);
  }

  write_bundle(prefix, testing::running_example());
  {
    std::ofstream f(dir / "s.trace", std::ios::app);
    f << "t1,E,q\nt1,X,q\n";
  }
  CHECK_THROWS_AS(load_bundle(prefix), Error);

  write_bundle(prefix, testing::running_example());
  {
    std::ofstream f(dir / "s.trace", std::ios::app);
    f << "t9,E,a\nt9,X,a\n";
  }
  CHECK_THROWS_AS(load_bundle(prefix), Error);
  std::filesystem::remove_all(dir);
}
