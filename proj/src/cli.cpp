#include "sbfl/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "sbfl/error.hpp"
#include "sbfl/io.hpp"
#include "sbfl/metrics.hpp"
#include "sbfl/report.hpp"
#include "sbfl/synthetic.hpp"

namespace sbfl {

namespace {

struct CommonOptions {
  std::string formula = "dstar";
  unsigned star = 2;
  std::string mode = "mid";
  bool no_tiebreak = false;
  int jobs = 0;
  std::string out;
  std::string format = "table";
};

struct InputOptions {
  std::string bundle;
  std::string spectrum;
  std::string traces;
  std::string faults;
};

void add_common(CLI::App& cmd, CommonOptions& o, bool allow_all) {
  std::vector<std::string> names = {"tarantula", "ochiai", "dstar", "gp13", "confidence"};
  if (allow_all) names.push_back("all");
  cmd.add_option("--formula", o.formula, "Suspiciousness formula")
      ->check(CLI::IsMember(names))
      ->capture_default_str();
  cmd.add_option("--star", o.star, "DStar exponent")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--out", o.out, "Write the result to this file instead of stdout");
  cmd.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
}

void add_inputs(CLI::App& cmd, InputOptions& in, bool traces) {
  cmd.add_option("bundle", in.bundle, "Subject path prefix (<prefix>.spectrum/.trace/.faults)");
  cmd.add_option("--spectrum", in.spectrum, "Spectrum file");
  if (traces) cmd.add_option("--traces", in.traces, "Trace file");
  cmd.add_option("--faults", in.faults, "Fault file");
}

Subject load_inputs(const InputOptions& in, bool need_traces) {
  if (!in.bundle.empty()) {
    if (need_traces) return load_bundle(in.bundle);
    Subject s;
    s.name = bundle_prefix(in.bundle).filename().string();
    s.spectrum = read_spectrum_file(BundlePaths::from_prefix(in.bundle).spectrum);
    const auto faults = BundlePaths::from_prefix(in.bundle).faults;
    if (std::filesystem::exists(faults)) {
      s.faults = resolve_faults(s.spectrum, read_fault_file(faults));
    }
    return s;
  }
  if (in.spectrum.empty()) {
    throw Error(ErrorKind::EmptyInput, "give a bundle prefix or --spectrum");
  }
  Subject s;
  s.name = std::filesystem::path(in.spectrum).stem().string();
  s.spectrum = read_spectrum_file(in.spectrum);
  const auto validation = validate_spectrum(s.spectrum);
  if (!validation.ok()) {
    throw Error(ErrorKind::Structural, in.spectrum + ": invalid spectrum: " +
                                           validation.violations.front());
  }
  if (need_traces) {
    if (in.traces.empty()) throw Error(ErrorKind::EmptyInput, "--traces is required");
    s.traces = align_traces(read_trace_file(in.traces), s.spectrum.tests);
  }
  if (!in.faults.empty()) s.faults = resolve_faults(s.spectrum, read_fault_file(in.faults));
  return s;
}

PipelineOptions pipeline_options(const CommonOptions& o, FormulaKind kind) {
  PipelineOptions p;
  p.formula = Formula{kind, o.star};
  p.tiebreak = !o.no_tiebreak;
  return p;
}

void emit(const CommonOptions& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw Error(ErrorKind::Parse, "cannot write '" + o.out + "'");
  file << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + '\n'; }

int cmd_score(const CommonOptions& o, const InputOptions& in, std::ostream& out) {
  const Subject subject = load_inputs(in, false);
  const RankMode mode = *parse_rank_mode(o.mode);
  SubjectAnalysis a;
  a.counters = compute_counters(subject.spectrum);
  a.scores = score_all(Formula{*parse_formula(o.formula), o.star}, a.counters);
  a.before = build_ranking(a.scores);

  if (o.format == "table") {
    emit(o, render_score_table(subject, a, mode), out);
    return 0;
  }
  nlohmann::json methods = nlohmann::json::array();
  for (std::size_t m = 0; m < subject.spectrum.methods.size(); ++m) {
    const auto& c = a.counters[m];
    const auto& r = a.before.ranks[m];
    methods.push_back({{"id", subject.spectrum.methods[m].id},
                       {"ef", c.ef},
                       {"ep", c.ep},
                       {"nf", c.nf},
                       {"np", c.np},
                       {"score", std::isinf(a.scores[m]) ? nlohmann::json("inf")
                                                         : nlohmann::json(a.scores[m])},
                       {"rank", {{"min", r.min.value()}, {"mid", r.mid.value()}, {"max", r.max.value()}}}});
  }
  emit(o, dump({{"subject", subject.name}, {"formula", o.formula}, {"methods", methods}}), out);
  return 0;
}

int cmd_tiebreak(const CommonOptions& o, const InputOptions& in, std::ostream& out) {
  const Subject subject = load_inputs(in, true);
  const auto options = pipeline_options(o, *parse_formula(o.formula));
  const SubjectAnalysis a = analyze_subject(subject, options);
  if (o.format == "table") {
    emit(o, render_tiebreak_table(subject, a, *parse_rank_mode(o.mode)), out);
  } else {
    emit(o, dump(analysis_to_json(subject, a, options)), out);
  }
  return 0;
}

int cmd_eval(const CommonOptions& o, const std::vector<std::string>& bundles, std::ostream& out) {
  std::vector<Subject> subjects;
  subjects.reserve(bundles.size());
  for (const auto& b : bundles) {
    subjects.push_back(load_bundle(b));
    if (subjects.back().faults.faulty.empty()) {
      throw Error(ErrorKind::EmptyInput, b + ": no faults");
    }
  }

  std::vector<FormulaKind> kinds;
  if (o.formula == "all") {
    kinds.assign(kAllFormulas.begin(), kAllFormulas.end());
  } else {
    kinds.push_back(*parse_formula(o.formula));
  }
  std::vector<EvalReport> reports;
  for (auto kind : kinds) reports.push_back(evaluate(subjects, pipeline_options(o, kind), o.jobs));

  if (o.format == "table") {
    emit(o, render_eval_tables(reports), out);
  } else {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) j.push_back(report_to_json(r));
    emit(o, dump({{"reports", j}}), out);
  }
  return 0;
}

struct GenOptions {
  std::string out;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::size_t methods = 20;
  std::size_t tests = 20;
  std::size_t faults = 1;
  double tie_pressure = 0.3;
};

int cmd_gen(const GenOptions& g, std::ostream& out) {
  std::filesystem::create_directories(g.out);
  for (std::size_t k = 0; k < g.count; ++k) {
    GeneratorParams p{g.seed + k, g.methods, g.tests, g.faults, g.tie_pressure};
    auto synthetic = generate_subject(p);
    char name[32];
    std::snprintf(name, sizeof name, "subject_%04zu", k);
    const auto prefix = std::filesystem::path(g.out) / name;
    write_bundle(prefix, synthetic.subject);
    out << prefix.string() << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrum-based fault localization with call-frequency tie-breaking", "sbfl"};
  app.require_subcommand(1);

  CommonOptions score_opts, tiebreak_opts, eval_opts;
  InputOptions score_in, tiebreak_in;
  std::vector<std::string> eval_bundles;
  GenOptions gen_opts;

  auto* score = app.add_subcommand("score", "Score and rank the methods of one subject");
  add_common(*score, score_opts, false);
  add_inputs(*score, score_in, false);
  score->add_option("--mode", score_opts.mode, "Rank mode")
      ->check(CLI::IsMember({"min", "mid", "max"}))
      ->capture_default_str();

  auto* tiebreak = app.add_subcommand("tiebreak", "Ranks before and after call-frequency tie-breaking");
  add_common(*tiebreak, tiebreak_opts, false);
  add_inputs(*tiebreak, tiebreak_in, true);
  tiebreak->add_option("--mode", tiebreak_opts.mode, "Rank mode")
      ->check(CLI::IsMember({"min", "mid", "max"}))
      ->capture_default_str();
  tiebreak->add_flag("--no-tiebreak", tiebreak_opts.no_tiebreak, "Skip the tie-breaking stage");

  auto* eval = app.add_subcommand("eval", "Evaluate tie-breaking over subject bundles");
  eval_opts.formula = "all";
  add_common(*eval, eval_opts, true);
  eval->add_option("bundles", eval_bundles, "Subject path prefixes")->required();
  eval->add_flag("--no-tiebreak", eval_opts.no_tiebreak, "Skip the tie-breaking stage");
  eval->add_option("--jobs", eval_opts.jobs, "Subjects evaluated in parallel (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  auto* gen = app.add_subcommand("gen", "Write synthetic subject bundles");
  gen->add_option("--out", gen_opts.out, "Output directory")->required();
  gen->add_option("--count", gen_opts.count, "Number of subjects")->capture_default_str();
  gen->add_option("--seed", gen_opts.seed, "Seed of the first subject")->capture_default_str();
  gen->add_option("--methods", gen_opts.methods, "Methods per subject")->capture_default_str();
  gen->add_option("--tests", gen_opts.tests, "Tests per subject")->capture_default_str();
  gen->add_option("--faults", gen_opts.faults, "Faults per subject")->capture_default_str();
  gen->add_option("--tie-pressure", gen_opts.tie_pressure, "Coverage-row duplication probability")
      ->capture_default_str();

  std::vector<const char*> argv{"sbfl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*score) return cmd_score(score_opts, score_in, out);
    if (*tiebreak) return cmd_tiebreak(tiebreak_opts, tiebreak_in, out);
    if (*eval) return cmd_eval(eval_opts, eval_bundles, out);
    if (*gen) return cmd_gen(gen_opts, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sbfl
