#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "u2/classify.hpp"
#include "u2/error.hpp"
#include "u2/families.hpp"
#include "u2/ordinary.hpp"
#include "u2/specfile.hpp"

#ifndef U2_VERSION
#define U2_VERSION "0.0.0"
#endif

namespace u2::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return "sha256:" + os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SyntaxError, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join_dims(const std::vector<std::size_t>& dims) {
  if (dims.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? " → " : "") + std::to_string(dims[i]);
  return s;
}

std::string axiom_kind(AxiomKind k) {
  switch (k) {
    case AxiomKind::Alternating: return "Alternating";
    case AxiomKind::Jacobi: return "Jacobi";
    case AxiomKind::Restrictedness: return "Restrictedness";
  }
  return "?";
}

Backend parse_backend(const std::string& s) {
  if (s == "auto") return Backend::Auto;
  if (s == "reference") return Backend::Reference;
  if (s == "dense-serial") return Backend::DenseSerial;
  if (s == "dense-parallel") return Backend::DenseParallel;
  throw Error(ErrorCode::BadParameters, "unknown backend '" + s + "'");
}

Json series_json(const DerivedSeries& s) {
  Json j;
  j["outcome"] = s.reached_zero ? "ReachedZero" : "Stabilized";
  j["dims"] = s.dims;
  j["length"] = s.length;
  j["stable_dim"] = s.stable_dim;
  return j;
}

std::string series_text(const DerivedSeries& s) {
  if (s.reached_zero) return "ReachedZero, derived length " + std::to_string(s.length) + ", dims: " + join_dims(s.dims);
  return "Stabilized at dim " + std::to_string(s.stable_dim) + " after " + std::to_string(s.length) +
         " steps, dims: " + join_dims(s.dims);
}

struct Loaded {
  AlgebraSpec spec;
  std::string digest;
  std::string name;
};

Loaded load(const std::string& path, bool skip_axioms) {
  const std::string text = read_file(path);
  SpecOptions opt;
  opt.check_axioms = !skip_axioms;
  return {parse_spec(text, opt), sha256_hex(text), fs::path(path).filename().string()};
}

const RestrictedLieAlgebra& need_restricted(const Loaded& in) {
  if (!in.spec.restricted) throw Error(ErrorCode::PreconditionFailed, in.name + " is an ordinary algebra; use the ordinary command");
  return in.spec.algebra;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["outcome"] = to_string(v.outcome);
  j["summary"] = v.summary();
  if (v.outcome == Outcome::Solvable && v.certificate) {
    const Certificate& c = *v.certificate;
    j["condition"] = to_string(c.tag);
    j["extension_degree"] = v.extension_degree;
    if (v.extension_field) j["extension_field"] = v.extension_field->to_string();
    if (v.core) j["core_dim"] = v.core->space.dim();
    j["alternative_core"] = v.alternative_core;
    Json els = Json::object();
    if (v.matched)
      for (const auto& [name, vec] : c.elements) els[name] = v.matched->format(vec);
    j["elements"] = els;
    if (c.ideal && v.matched) {
      Json ideal = Json::array();
      for (const auto& b : c.ideal->basis()) ideal.push_back(v.matched->format(b));
      j["ideal"] = ideal;
    }
    if (c.rescale && v.matched) j["rescale"] = v.matched->field().format(*c.rescale);
    j["relations"] = c.relations;
  }
  if (v.outcome == Outcome::NotSolvable && v.reason) {
    j["reason"] = to_string(*v.reason);
    if (v.necessary_tag) j["necessary_test"] = to_string(*v.necessary_tag);
    if (!v.witness_text.empty()) j["witness"] = v.witness_text;
    if (*v.reason == NotSolvableReason::OracleStabilized) j["stable_dim"] = v.stable_dim;
  }
  if (v.outcome == Outcome::Inconclusive) j["inconclusive_reason"] = v.inconclusive_reason;
  if (v.oracle) j["oracle"] = series_json(*v.oracle);
  if (v.oracle_agrees) j["oracle_agrees"] = *v.oracle_agrees;
  return j;
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << v.summary() << "\n";
  if (v.outcome == Outcome::Solvable && v.certificate && v.matched) {
    for (const auto& [name, vec] : v.certificate->elements) os << "  " << name << " = " << v.matched->format(vec) << "\n";
    for (const auto& r : v.certificate->relations) os << "  " << r << "\n";
  }
  if (!v.witness_text.empty()) os << "  witness: " << v.witness_text << "\n";
  if (v.oracle) os << "  oracle: " << series_text(*v.oracle) << "\n";
  if (v.oracle_agrees) os << "  oracle agrees: " << (*v.oracle_agrees ? "yes" : "no") << "\n";
  return os.str();
}

Json ord_verdict_json(const LieAlgebra& l, const ordinary::OrdVerdict& v) {
  Json j;
  j["outcome"] = ordinary::to_string(v.outcome);
  j["summary"] = v.summary();
  if (v.certificate) {
    j["condition"] = ordinary::to_string(v.certificate->tag);
    Json els = Json::object();
    for (const auto& [name, vec] : v.certificate->elements) els[name] = l.format(vec);
    j["elements"] = els;
    if (v.certificate->ideal) {
      Json ideal = Json::array();
      for (const auto& b : v.certificate->ideal->basis()) ideal.push_back(l.format(b));
      j["ideal"] = ideal;
    }
    j["relations"] = v.certificate->relations;
  }
  if (v.witness) {
    j["witness_pattern"] = v.witness->pattern;
    j["witness"] = v.witness->text;
  }
  if (v.outcome != ordinary::OrdOutcome::Solvable) j["detail"] = v.detail;
  return j;
}

/// Collects the report and prints it as text or JSON.
struct Reporter {
  bool json = false;
  bool timings = false;
  std::string command;
  Json input = Json::object();
  Json budgets = Json::object();
  Json result = Json::object();
  std::string text;
  std::map<std::string, double> times_ms;

  template <class F>
  auto timed(const std::string& name, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    times_ms[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

  void emit(std::ostream& out) const {
    if (!json) {
      out << text;
      if (timings)
        for (const auto& [k, v] : times_ms) out << "time " << k << ": " << v << " ms\n";
      return;
    }
    Json doc;
    doc["tool"] = "u2lie";
    doc["version"] = U2_VERSION;
    doc["command"] = command;
    doc["input"] = input;
    doc["budgets"] = budgets;
    doc["result"] = result;
    if (timings) {
      Json t = Json::object();
      for (const auto& [k, v] : times_ms) t[k] = v;
      doc["timings_ms"] = t;
    }
    out << doc.dump(2) << "\n";
  }
};

void set_input(Reporter& r, const Loaded& in) {
  r.input["file"] = in.name;
  r.input["digest"] = in.digest;
  r.input["restricted"] = in.spec.restricted;
  r.input["field"] = in.spec.algebra.field().descriptor().to_string();
  r.input["dim"] = in.spec.algebra.dim();
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::BadParameters:
    case ErrorCode::PreconditionFailed: return kUsage;
    case ErrorCode::SyntaxError:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::AxiomViolation:
    case ErrorCode::ReducibleModulus: return kInputError;
    default: return kDisagreement;
  }
}

struct CorpusTally {
  std::size_t instances = 0, solvable = 0, not_solvable = 0, inconclusive = 0, disagreements = 0;
};

void tally(CorpusTally& t, Outcome o, bool disagree) {
  ++t.instances;
  if (o == Outcome::Solvable) ++t.solvable;
  if (o == Outcome::NotSolvable) ++t.not_solvable;
  if (o == Outcome::Inconclusive) ++t.inconclusive;
  if (disagree) ++t.disagreements;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie solvability of restricted enveloping algebras in characteristic 2", "u2lie"};
  app.require_subcommand(1);
  Reporter rep;
  bool skip_axioms = false;
  app.add_flag("--json", rep.json, "Print a structured JSON report");
  app.add_flag("--timings", rep.timings, "Include wall-clock timings (not deterministic)");
  app.add_flag("--skip-axioms", skip_axioms, "Do not run the axiom checks when parsing");

  std::string file;
  std::string backend = "auto";

  auto* axioms = app.add_subcommand("axioms", "Check the Lie and restricted axioms");
  axioms->add_option("file", file, "Algebra spec file")->required();

  auto* solvable = app.add_subcommand("solvable", "Derived series of u(L) by brute force");
  solvable->add_option("file", file, "Algebra spec file")->required();
  solvable->add_option("--backend", backend, "auto, reference, dense-serial or dense-parallel");

  ClassifyOptions copt;
  bool no_oracle = false;
  auto* classify_cmd = app.add_subcommand("classify", "Structural classification with certificate");
  classify_cmd->add_option("file", file, "Algebra spec file")->required();
  classify_cmd->add_option("--ladder", copt.extension_ladder_max, "Largest extension degree m in GF(2^(k m))")
      ->check(CLI::Range(1, 8));
  classify_cmd->add_option("--core-dim", copt.exhaustive_core_dim_limit, "Largest dim L for alternative cores");
  classify_cmd->add_option("--oracle-max-dim", copt.oracle_max_dim, "Largest dim L for the oracle cross-check");
  classify_cmd->add_flag("--no-oracle", no_oracle, "Skip the oracle cross-check");
  classify_cmd->add_option("--backend", backend, "Oracle backend");

  auto* sz = app.add_subcommand("sz-index", "Nilpotency index of the ideal generated by [[R,R],[R,R],R]");
  sz->add_option("file", file, "Algebra spec file")->required();
  sz->add_option("--backend", backend, "auto, reference, dense-serial or dense-parallel");

  std::string tag, out_path, modulus_hex;
  families::FamilySpec fspec;
  int field_k = 1;
  bool as_ordinary = false;
  auto* family = app.add_subcommand("family", "Emit the spec file of a family instance");
  family->add_option("tag", tag, "fam-i, fam-ii, fam-iii, fam-iv, fam-v, heisenberg, n7, witness-chain, "
                                 "example-7-1, example-7-1-ext, random")
      ->required();
  family->add_option("--size", fspec.size, "Family size parameter");
  family->add_option("--variant", fspec.variant, "Family variant");
  family->add_option("--seed", fspec.seed, "Seed for random instances");
  family->add_option("--k", field_k, "Field degree k of GF(2^k)")->check(CLI::Range(1, 20));
  family->add_option("--modulus", modulus_hex, "Modulus in hex (default: smallest irreducible)");
  family->add_flag("--ordinary", as_ordinary, "Write the underlying ordinary Lie algebra");
  family->add_option("-o,--output", out_path, "Output path (default: stdout)");

  auto* e71 = app.add_subcommand("example-7-1", "Three-part report on the seven-dimensional example");

  ordinary::WitnessBudget wb;
  std::size_t m_max = 3;
  auto* ord = app.add_subcommand("ordinary", "Ordinary Lie algebras and U(L)");
  ord->require_subcommand(1);
  auto add_budget = [&](CLI::App* c) {
    c->add_option("file", file, "Ordinary (or restricted) algebra spec file")->required();
    c->add_option("--depth", wb.depth, "Largest degree of one pattern argument");
    c->add_option("--degree", wb.degree, "Largest total degree of the pattern arguments");
    c->add_option("--max-evals", wb.max_evaluations, "Pattern evaluations before giving up");
  };
  auto* ord_classify = ord->add_subcommand("classify", "Structural test of the four conditions");
  add_budget(ord_classify);
  auto* ord_witness = ord->add_subcommand("witness", "Search for a nonzero [[a,b],[c,d],e] in U(L)");
  add_budget(ord_witness);
  auto* ord_env = ord->add_subcommand("envelope", "Spans of the universal 2-envelope inside U(L)");
  ord_env->add_option("file", file, "Ordinary algebra spec file")->required();
  ord_env->add_option("--m-max", m_max, "Number of squaring rounds");

  std::string dir;
  std::uint64_t seed = 1;
  std::size_t random_count = 0, random_dim = 5;
  auto* corpus = app.add_subcommand("corpus", "Classifier/oracle agreement sweep");
  corpus->add_option("dir", dir, "Directory of spec files (*.json, *.alg)")->required();
  corpus->add_option("--seed", seed, "Seed for random instances");
  corpus->add_option("--random", random_count, "Random instances to add (half over GF(2), half over GF(4))");
  corpus->add_option("--max-dim", random_dim, "Largest dimension of random instances")->check(CLI::Range(2, 8));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    int status = kOk;
    if (axioms->parsed()) {
      rep.command = "axioms";
      const Loaded in = load(file, true);
      set_input(rep, in);
      const AxiomReport ar = in.spec.restricted ? in.spec.algebra.check_axioms() : in.spec.lie().check_lie_axioms();
      rep.result["ok"] = ar.ok();
      Json vs = Json::array();
      for (const auto& v : ar.violations) {
        Json j;
        j["kind"] = axiom_kind(v.kind);
        j["indices"] = {v.i, v.j, v.k};
        j["detail"] = v.detail;
        vs.push_back(j);
      }
      rep.result["violations"] = vs;
      rep.text = ar.ok() ? "axioms ok\n" : ar.to_string();
      status = ar.ok() ? kOk : kInputError;
    } else if (solvable->parsed()) {
      rep.command = "solvable";
      const Loaded in = load(file, skip_axioms);
      set_input(rep, in);
      rep.budgets["backend"] = backend;
      const EnvAlgebra u(need_restricted(in));
      const Backend b = parse_backend(backend);
      const DerivedSeries s = rep.timed("oracle", [&] { return lie_derived_series(u, b); });
      rep.result = series_json(s);
      rep.text = series_text(s) + "\n";
    } else if (classify_cmd->parsed()) {
      rep.command = "classify";
      const Loaded in = load(file, skip_axioms);
      set_input(rep, in);
      copt.oracle_crosscheck = !no_oracle;
      copt.oracle_backend = parse_backend(backend);
      rep.budgets["ladder"] = copt.extension_ladder_max;
      rep.budgets["core_dim"] = copt.exhaustive_core_dim_limit;
      rep.budgets["oracle"] = copt.oracle_crosscheck;
      rep.budgets["oracle_max_dim"] = copt.oracle_max_dim;
      const Verdict v = rep.timed("classify", [&] { return classify(need_restricted(in), copt); });
      rep.result = verdict_json(v);
      rep.text = verdict_text(v);
      if (v.oracle_agrees && !*v.oracle_agrees) status = kDisagreement;
    } else if (sz->parsed()) {
      rep.command = "sz-index";
      const Loaded in = load(file, skip_axioms);
      set_input(rep, in);
      rep.budgets["backend"] = backend;
      const EnvAlgebra u(need_restricted(in));
      const SzResult r = rep.timed("sz", [&] { return sz_nilpotency(u, parse_backend(backend)); });
      rep.result["nilpotent"] = r.nilpotent;
      if (r.nilpotent) rep.result["index"] = r.index;
      rep.result["ideal_dim"] = r.ideal_dim;
      rep.result["power_dims"] = r.power_dims;
      if (!r.nilpotent) rep.result["witness"] = u.format(r.witness);
      std::ostringstream os;
      if (r.nilpotent) os << "Nilpotent, index " << r.index;
      else os << "NotNilpotent, witness " << u.format(r.witness);
      os << ", ideal dim " << r.ideal_dim << ", power dims: " << join_dims(r.power_dims) << "\n";
      rep.text = os.str();
    } else if (family->parsed()) {
      rep.command = "family";
      const auto t = families::parse_tag(tag);
      if (!t) throw Error(ErrorCode::BadParameters, "unknown family tag '" + tag + "'");
      fspec.tag = *t;
      std::uint64_t modulus = smallest_irreducible(field_k);
      if (!modulus_hex.empty()) modulus = std::stoull(modulus_hex, nullptr, 16);
      fspec.field = FieldDescriptor::gf2k(field_k, modulus);
      const RestrictedLieAlgebra l = families::make(fspec);
      const std::string text = as_ordinary ? serialize_ordinary_spec(l) : serialize_spec(l);
      rep.input["tag"] = tag;
      rep.input["size"] = fspec.size;
      rep.input["variant"] = fspec.variant;
      rep.input["seed"] = fspec.seed;
      rep.input["field"] = fspec.field.to_string();
      rep.result["dim"] = l.dim();
      rep.result["digest"] = sha256_hex(text);
      if (out_path.empty()) {
        rep.text = text;
        if (rep.json) rep.result["spec"] = Json::parse(text);
      } else {
        std::ofstream o(out_path, std::ios::binary);
        if (!o) throw Error(ErrorCode::BadParameters, "cannot write " + out_path);
        o << text;
        rep.result["path"] = fs::path(out_path).filename().string();
        rep.text = "wrote " + out_path + " (dim " + std::to_string(l.dim()) + ")\n";
      }
    } else if (e71->parsed()) {
      rep.command = "example-7-1";
      const auto r = rep.timed("report", [] { return families::example_7_1_report(); });
      rep.result["part1"] = {{"obstruction", r.obstruction_text}, {"nonzero", r.obstruction_nonzero}};
      rep.result["part2"] = {{"v", r.v_text},
                             {"w", r.w_text},
                             {"central", r.j_central},
                             {"restricted_ideal", r.j_restricted_ideal},
                             {"two_nilpotent", r.j_2nilpotent},
                             {"holds", r.part2()}};
      rep.result["part3"] = {{"ideal", r.ideal_text},   {"quotient_dim", r.quotient_dim},
                             {"ideal_dim", r.ideal_dim}, {"abelian", r.ideal_abelian},
                             {"codim1", r.ideal_codim1}, {"holds", r.part3()}};
      rep.text = r.to_string();
    } else if (ord->parsed()) {
      const Loaded in = load(file, skip_axioms);
      set_input(rep, in);
      const LieAlgebra& l = in.spec.lie();
      if (ord_classify->parsed() || ord_witness->parsed()) {
        rep.budgets["depth"] = wb.depth;
        rep.budgets["degree"] = wb.degree;
        rep.budgets["max_evaluations"] = wb.max_evaluations;
      }
      if (ord_classify->parsed()) {
        rep.command = "ordinary classify";
        const auto v = rep.timed("classify", [&] { return ordinary::corollary_classify(l, wb); });
        rep.result = ord_verdict_json(l, v);
        rep.text = v.summary() + "\n";
        if (v.certificate)
          for (const auto& [name, vec] : v.certificate->elements) rep.text += "  " + name + " = " + l.format(vec) + "\n";
        if (v.witness) rep.text += "  witness: " + v.witness->text + "\n";
      } else if (ord_witness->parsed()) {
        rep.command = "ordinary witness";
        const auto w = rep.timed("search", [&] { return ordinary::witness_search(l, wb); });
        rep.result["found"] = !w.exhausted();
        rep.result["evaluations"] = w.evaluations;
        rep.result["budget_hit"] = w.budget_hit;
        if (w.witness) {
          rep.result["pattern"] = w.witness->pattern;
          rep.result["witness"] = w.witness->text;
          rep.text = "Witness (" + w.witness->pattern + "): " + w.witness->text + "\n";
        } else {
          rep.text = "Exhausted after " + std::to_string(w.evaluations) + " evaluations" +
                     (w.budget_hit ? " (evaluation cap reached)" : "") + "\n";
        }
      } else {
        rep.command = "ordinary envelope";
        rep.budgets["m_max"] = m_max;
        const auto env = rep.timed("envelope", [&] { return ordinary::two_envelope(l, m_max); });
        std::vector<std::size_t> dims;
        for (const auto& s : env.spans) dims.push_back(s.dim());
        rep.result["stabilized"] = env.stabilized;
        rep.result["span_dims"] = dims;
        rep.result["total_dims"] = env.total_dims;
        rep.text = std::string(env.stabilized ? "Stabilized" : "NotStabilized") + ", span dims: " + join_dims(dims) +
                   ", cumulative: " + join_dims(env.total_dims) + "\n";
        if (env.algebra) {
          const Verdict v = classify(*env.algebra);
          rep.result["envelope_classify"] = verdict_json(v);
          rep.text += "  2-envelope: " + v.summary() + "\n";
        }
      }
    } else if (corpus->parsed()) {
      rep.command = "corpus";
      rep.input["seed"] = seed;
      rep.budgets["random"] = random_count;
      rep.budgets["max_dim"] = random_dim;
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && (e.path().extension() == ".json" || e.path().extension() == ".alg"))
          files.push_back(e.path());
      std::sort(files.begin(), files.end());
      CorpusTally t;
      Json rows = Json::array();
      std::ostringstream os;
      auto row = [&](const std::string& name, const std::string& outcome, bool disagree) {
        rows.push_back({{"instance", name}, {"outcome", outcome}, {"disagreement", disagree}});
        os << name << ": " << outcome << (disagree ? "  DISAGREEMENT" : "") << "\n";
      };
      for (const auto& p : files) {
        const Loaded in = load(p.string(), false);
        if (in.spec.restricted) {
          const Verdict v = classify(in.spec.algebra);
          const bool disagree = v.oracle_agrees && !*v.oracle_agrees;
          tally(t, v.outcome, disagree);
          row(in.name, v.summary(), disagree);
        } else {
          const auto v = ordinary::corollary_classify(in.spec.lie());
          const auto w = ordinary::witness_search(in.spec.lie());
          const bool disagree = v.outcome == ordinary::OrdOutcome::Solvable && w.witness;
          const Outcome o = v.outcome == ordinary::OrdOutcome::Solvable      ? Outcome::Solvable
                            : v.outcome == ordinary::OrdOutcome::NotSolvable ? Outcome::NotSolvable
                                                                             : Outcome::Inconclusive;
          tally(t, o, disagree);
          row(in.name, v.summary(), disagree);
        }
      }
      const Field fields[2] = {Field::gf2(), Field::gf2k(2, 0b111)};
      for (std::size_t i = 0; i < random_count; ++i) {
        const Field& f = fields[i % 2];
        const std::size_t n = 2 + (i / 2) % (random_dim - 1);
        const std::uint64_t s = seed * 1000003u + i;
        const RestrictedLieAlgebra l = families::random_instance(n, f, s);
        const Verdict v = classify(l);
        const bool disagree = v.oracle_agrees && !*v.oracle_agrees;
        tally(t, v.outcome, disagree);
        row("random n=" + std::to_string(n) + " " + f.descriptor().to_string() + " seed=" + std::to_string(s),
            v.summary(), disagree);
      }
      rep.result["instances"] = rows;
      rep.result["totals"] = {{"instances", t.instances},       {"solvable", t.solvable},
                              {"not_solvable", t.not_solvable}, {"inconclusive", t.inconclusive},
                              {"disagreements", t.disagreements}};
      os << "total " << t.instances << ", solvable " << t.solvable << ", not solvable " << t.not_solvable
         << ", inconclusive " << t.inconclusive << ", disagreements " << t.disagreements << "\n";
      rep.text = os.str();
      if (t.disagreements) status = kDisagreement;
    }
    rep.emit(out);
    return status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace u2::cli
