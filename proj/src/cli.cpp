#include "mcg/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mcg/homology.hpp"
#include "mcg/perm.hpp"
#include "mcg/script.hpp"
#include "mcg/shift_map.hpp"

namespace mcg {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_builtin(const std::string& name) { return name == "sn" || name == "jacob" || name == "lochness"; }

// Model given as a builtin kind or a path to a model file.
ModelPtr load_model(const std::string& which, std::optional<int> n) {
  if (is_builtin(which) && !std::filesystem::exists(which)) {
    if (which == "sn" && !n) throw InputError("model sn needs --n");
    return make_builtin_model(which, n);
  }
  std::string text = read_file(which);
  auto spec = parse_model(text, which);
  if (spec.kind == ModelKind::Sn && !n) throw InputError("model " + which + " needs --n");
  return make_model(text, n, which);
}

void check_window(int window, int bound) {
  if (window < bound)
    throw Error(ErrorCode::OutOfWindow,
                "window " + std::to_string(window) + " below displacement bound " + std::to_string(bound));
}

struct Common {
  long long budget = default_budget();
  int window = kDefaultWindow;
  std::optional<int> n;
  std::string model;
};

int verify(const std::vector<std::string>& scripts, const Common& c, const std::string& format,
           const std::string& out_path, bool verbose, std::ostream& out) {
  struct Job {
    std::string path;
    ProofScript script;
    ReplayOptions opt;
  };
  std::vector<Job> jobs;
  for (const auto& path : scripts) {
    std::string text = read_file(path);
    Job job;
    job.path = path;
    std::optional<ModelSpec> spec;
    if (!c.model.empty() && !is_builtin(c.model)) spec = parse_model(read_file(c.model), c.model);
    try {
      job.script = parse_script(text, spec ? &*spec : nullptr);
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.detail(), e.pos());
    }
    job.opt.budget = c.budget;
    job.opt.window = c.window;
    job.opt.n = c.n;
    if (!c.model.empty()) {
      std::optional<int> n = c.n;
      for (const auto& [name, e] : job.script.header.params)
        if (name == "n" && !n && e.is_constant()) n = static_cast<int>(e.value());
      job.opt.model = load_model(c.model, n);
    }
    check_window(c.window, 2);
    jobs.push_back(std::move(job));
  }
  std::vector<std::future<ReplayReport>> futures;
  for (const auto& job : jobs)
    futures.push_back(std::async(std::launch::async, [&job] { return replay(job.script, job.opt, job.path); }));
  std::vector<ReplayReport> reports;
  for (auto& f : futures) reports.push_back(f.get());

  std::string text;
  if (format == "json") {
    text = format_json(reports);
  } else {
    for (const auto& r : reports) text += format_text(r, verbose);
  }
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream o(out_path, std::ios::binary);
    if (!o) throw InputError("cannot write " + out_path);
    o << text;
  }
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); }) ? kOk : kFailed;
}

int selfcheck(const Common& c, std::ostream& out) {
  std::string which = c.model.empty() ? "sn" : c.model;
  std::optional<int> n = c.n;
  if (!n && which == "sn") n = 16;
  ModelPtr model = load_model(which, n);
  check_window(c.window, displacement_bound(Word(model)));
  int failures = 0;
  auto line = [&](bool ok, const std::string& what) {
    out << (ok ? "ok   " : "FAIL ") << what << "\n";
    failures += !ok;
  };
  out << "model " << model->description() << ", window " << c.window << "\n";

  auto v = validate_model(*model, c.window);
  line(v.clean(), "model validation: " + std::to_string(v.labels_checked) + " labels, " +
                      std::to_string(v.pairs_checked) + " pairs, " + std::to_string(v.findings.size()) + " findings");
  for (std::size_t k = 0; k < v.findings.size() && k < 20; ++k)
    out << "       " << v.findings[k].kind << ": " << v.findings[k].message << "\n";

  HomologyOracle oracle(model, c.window);
  auto st = transvection_self_test(oracle);
  line(st.empty(), "transvection convention t_a(b) = b + a");
  for (const auto& f : st) out << "       " << f << "\n";

  auto sw = relation_sweep(oracle, c.window);
  line(sw.failures.empty(), "relation sweep: " + std::to_string(sw.labels) + " labels, " + std::to_string(sw.pairs) +
                                " pairs, " + std::to_string(sw.commuting) + " commuting, " +
                                std::to_string(sw.braiding) + " braiding, " + std::to_string(sw.homologous) +
                                " homologous, " + std::to_string(sw.generators) + " matrices preserve the pairing");
  for (const auto& f : sw.failures) out << "       " << f << "\n";

  if (model->has_ends()) {
    const int deg = *model->n();
    auto cert = certify_full_symmetric({rotation(deg), parse_cycles("(1 2)", deg)}, deg);
    line(cert.full, "Schreier-Sims: |<(1 ... n), (1 2)>| = " + cert.order.str());
    BigInt cyc = group_order({rotation(deg)});
    line(cyc == deg, "Schreier-Sims: |<(1 ... n)>| = " + cyc.str());
    std::vector<Permutation> dih;
    for (const auto& s : model->primitive_symmetries())
      if (auto p = model->end_permutation(s); p && model->has_label_action(s)) dih.emplace_back(*p);
    BigInt d = group_order(dih);
    line(d == 2 * deg, "Schreier-Sims: dihedral subgroup order " + d.str());
  }
  out << (failures ? "selfcheck: FAILED\n" : "selfcheck: clean\n");
  return failures ? kFailed : kOk;
}

Rational parse_rational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw InputError("not a rational number: " + s);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic checks for mapping class group identities", "mcg"};
  app.require_subcommand(1);
  Common c;
  std::string format = "text", out_path, word_text, at;
  std::vector<std::string> scripts;
  bool verbose = false, check = false, trace = false;
  int samples = 8;

  auto add_common = [&](CLI::App* sub, bool budget, bool window) {
    sub->add_option("--n", c.n, "Number of ends for S(n)");
    sub->add_option("--model", c.model, "Builtin model (sn, jacob, lochness) or model file");
    if (budget) sub->add_option("--budget", c.budget, "Rewrite budget per assertion")->check(CLI::PositiveNumber);
    if (window) sub->add_option("--window", c.window, "Homology window");
  };

  auto* v = app.add_subcommand("verify", "Replay proof scripts");
  v->add_option("scripts", scripts, "Script files")->required();
  add_common(v, true, true);
  v->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  v->add_option("--out", out_path, "Write the report to a file");
  v->add_flag("--verbose", verbose, "Show bindings, witnesses and homology detail");

  auto* s = app.add_subcommand("selfcheck", "Model validation and oracle self-tests");
  add_common(s, false, false);
  int sweep_window = 20;
  s->add_option("--window", sweep_window, "Window for the sweeps");

  auto* sh = app.add_subcommand("shiftmap", "Handle shift of the strip");
  sh->add_flag("--check", check, "Run the exact property checks");
  sh->add_option("--samples", samples, "Grid points per unit")->check(CLI::PositiveNumber);
  sh->add_option("--at", at, "Evaluate at x,y (rationals like 3/4)");

  auto* p = app.add_subcommand("project", "Image of a word in Sym_n");
  p->add_option("word", word_text, "Word")->required();
  add_common(p, false, false);

  auto* nz = app.add_subcommand("normalize", "Normal form of a word");
  nz->add_option("word", word_text, "Word")->required();
  add_common(nz, true, false);
  nz->add_flag("--trace", trace, "Print the rewrite trace");
  bool matrix = false;
  int matrix_window = 3;
  nz->add_flag("--matrix", matrix, "Print the homology matrix as an integer grid");
  nz->add_option("--window", matrix_window, "Window for --matrix");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "mcg: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (v->parsed()) return verify(scripts, c, format, out_path, verbose, out);
    if (s->parsed()) {
      c.window = sweep_window;
      return selfcheck(c, out);
    }
    if (sh->parsed()) {
      if (!at.empty()) {
        auto comma = at.find(',');
        if (comma == std::string::npos) throw InputError("--at expects x,y");
        StripPoint q = handle_shift_point({parse_rational(at.substr(0, comma)), parse_rational(at.substr(comma + 1))});
        out << to_string(q) << "\n";
        if (!check) return kOk;
      }
      auto r = check_shift_properties(samples);
      out << format_report(r);
      return r.passed() ? kOk : kFailed;
    }
    if (p->parsed()) {
      ModelPtr model = load_model(c.model.empty() ? "sn" : c.model, c.n ? c.n : std::optional<int>(17));
      out << to_string(project(parse_word(word_text, model))) << "\n";
      return kOk;
    }
    if (nz->parsed()) {
      std::string which = c.model.empty() ? "sn" : c.model;
      ModelPtr model = load_model(which, c.n ? c.n : std::optional<int>(17));
      Word w = parse_word(word_text, model);
      auto r = normalize(w, c.budget);
      out << to_string(r.word) << "\n";
      if (trace)
        for (const auto& t : r.trace) out << "  " << t << "\n";
      out << r.rewrites << " rewrites" << (r.complete ? "" : ", budget exhausted") << "\n";
      if (matrix) {
        check_window(matrix_window, displacement_bound(w));
        HomologyOracle oracle(model, matrix_window);
        for (int k = 0; k < oracle.basis().dim(); ++k) out << (k ? " " : "basis ") << oracle.basis().name(k);
        out << "\n" << oracle.word_matrix(w).to_grid();
      }
      return r.complete ? kOk : kFailed;
    }
  } catch (const Error& e) {
    err << "mcg: " << e.what() << "\n";
    return kBadInput;
  } catch (const InputError& e) {
    err << "mcg: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace mcg
