#include "sbfl/io.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "sbfl/error.hpp"

namespace sbfl {

namespace {

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    cells.emplace_back(line.substr(begin, comma - begin));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return cells;
}

// Reads lines, stripping '\r' and skipping blanks; remembers line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(number_, message); }

  [[noreturn]] void fail_at(std::size_t line, const std::string& message) const {
    throw Error(ErrorKind::Parse, std::string(source_) + ":" + std::to_string(line) + ": " + message);
  }

  std::size_t line_number() const { return number_; }

 private:
  std::istream& in_;
  std::string_view source_;
  std::size_t number_ = 0;
};

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path.string() + "'");
  return in;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

HitSpectrum parse_spectrum(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::string line;
  if (!reader.next(line)) reader.fail("missing header");

  const auto header = split_csv(line);
  if (header.front() != "method") reader.fail("header must start with 'method'");
  if (header.size() < 2) reader.fail("header names no tests");

  HitSpectrum spectrum;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i].empty()) reader.fail("empty test id in header column " + std::to_string(i + 1));
    spectrum.tests.push_back(TestCase{header[i], Outcome::Passed});
  }
  const std::size_t width = header.size();

  bool have_outcomes = false;
  while (reader.next(line)) {
    if (have_outcomes) reader.fail("data after the " + std::string(kOutcomeMarker) + " row");
    const auto cells = split_csv(line);
    if (cells.size() != width) {
      reader.fail("row has " + std::to_string(cells.size()) + " cells, expected " +
                  std::to_string(width));
    }
    if (cells.front() == kOutcomeMarker) {
      for (std::size_t i = 1; i < width; ++i) {
        if (cells[i] == "F") {
          spectrum.tests[i - 1].outcome = Outcome::Failed;
        } else if (cells[i] != "P") {
          reader.fail("outcome must be P or F, got '" + cells[i] + "'");
        }
      }
      have_outcomes = true;
      continue;
    }
    if (cells.front().empty()) reader.fail("empty method id");
    spectrum.methods.push_back(MethodId{cells.front(), ""});
    for (std::size_t i = 1; i < width; ++i) {
      if (cells[i] == "0" || cells[i] == "1") {
        spectrum.hits.push_back(cells[i] == "1" ? 1 : 0);
      } else {
        reader.fail("non-binary hit value '" + cells[i] + "' in column " + std::to_string(i + 1));
      }
    }
  }
  if (!have_outcomes) {
    reader.fail_at(reader.line_number(), "missing " + std::string(kOutcomeMarker) + " row");
  }
  return spectrum;
}

std::string emit_spectrum(const HitSpectrum& spectrum) {
  std::string out = "method";
  for (const auto& t : spectrum.tests) out += "," + t.id;
  out += '\n';
  for (std::size_t m = 0; m < spectrum.methods.size(); ++m) {
    out += spectrum.methods[m].id;
    for (std::size_t t = 0; t < spectrum.tests.size(); ++t) {
      out += spectrum.hit(m, t) ? ",1" : ",0";
    }
    out += '\n';
  }
  out += kOutcomeMarker;
  for (const auto& t : spectrum.tests) out += t.failed() ? ",F" : ",P";
  out += '\n';
  return out;
}

std::vector<TestTrace> parse_traces(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<TestTrace> traces;
  std::unordered_map<std::string, std::size_t> by_test;
  std::string line;
  while (reader.next(line)) {
    const auto cells = split_csv(line);
    if (cells.size() != 3) {
      reader.fail("expected 'testId,E|X,methodId', got " + std::to_string(cells.size()) + " cells");
    }
    if (cells[0].empty()) reader.fail("empty test id");
    if (cells[2].empty()) reader.fail("empty method id");
    EventKind kind;
    if (cells[1] == "E") {
      kind = EventKind::Enter;
    } else if (cells[1] == "X") {
      kind = EventKind::Exit;
    } else {
      reader.fail("event kind must be E or X, got '" + cells[1] + "'");
    }
    auto [it, inserted] = by_test.emplace(cells[0], traces.size());
    if (inserted) traces.push_back(TestTrace{cells[0], {}});
    traces[it->second].events.push_back(CallEvent{kind, cells[2]});
  }
  for (const auto& trace : traces) check_balanced(trace);
  return traces;
}

std::string emit_traces(std::span<const TestTrace> traces) {
  std::string out;
  for (const auto& trace : traces) {
    for (const auto& ev : trace.events) {
      out += trace.test;
      out += ev.kind == EventKind::Enter ? ",E," : ",X,";
      out += ev.method;
      out += '\n';
    }
  }
  return out;
}

std::vector<std::string> parse_faults(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<std::string> ids;
  std::string line;
  while (reader.next(line)) {
    if (line.find(',') != std::string::npos) reader.fail("fault id must not contain ','");
    ids.push_back(line);
  }
  if (ids.empty()) reader.fail("no fault ids");
  return ids;
}

std::string emit_faults(const HitSpectrum& spectrum, const FaultSet& faults) {
  std::string out;
  for (std::size_t f : faults.faulty) out += spectrum.methods.at(f).id + '\n';
  return out;
}

HitSpectrum read_spectrum_file(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_spectrum(in, path.string());
}

std::vector<TestTrace> read_trace_file(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_traces(in, path.string());
}

std::vector<std::string> read_fault_file(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_faults(in, path.string());
}

std::filesystem::path bundle_prefix(const std::filesystem::path& path) {
  const auto ext = path.extension();
  if (ext == ".spectrum" || ext == ".trace" || ext == ".faults") {
    return std::filesystem::path(path).replace_extension();
  }
  return path;
}

BundlePaths BundlePaths::from_prefix(const std::filesystem::path& prefix) {
  const std::string base = bundle_prefix(prefix).string();
  return {base + ".spectrum", base + ".trace", base + ".faults"};
}

Subject load_bundle(const std::filesystem::path& prefix) {
  const auto paths = BundlePaths::from_prefix(prefix);
  Subject subject;
  subject.name = bundle_prefix(prefix).filename().string();
  subject.spectrum = read_spectrum_file(paths.spectrum);
  const auto validation = validate_spectrum(subject.spectrum);
  if (!validation.ok()) {
    throw Error(ErrorKind::Structural,
                paths.spectrum.string() + ": invalid spectrum: " + validation.violations.front());
  }
  subject.traces = align_traces(read_trace_file(paths.trace), subject.spectrum.tests);
  for (const auto& trace : subject.traces) {
    for (const auto& ev : trace.events) {
      if (find_method(subject.spectrum.methods, ev.method) == subject.spectrum.methods.size()) {
        throw Error(ErrorKind::Reference, paths.trace.string() + ": test '" + trace.test +
                                              "' calls unknown method '" + ev.method + "'");
      }
    }
  }
  subject.faults = resolve_faults(subject.spectrum, read_fault_file(paths.faults));
  return subject;
}

void write_bundle(const std::filesystem::path& prefix, const Subject& subject) {
  const auto paths = BundlePaths::from_prefix(prefix);
  write_file(paths.spectrum, emit_spectrum(subject.spectrum));
  write_file(paths.trace, emit_traces(subject.traces));
  write_file(paths.faults, emit_faults(subject.spectrum, subject.faults));
}

}  // namespace sbfl
