// Command-line front end: build named constructions, validate user
// arrangements, run certifications, emit Betti data. JSON in/out for
// scripting; identical invocations produce byte-identical output.
//
// Exit codes: 0 success / verdict true, 3 verdict false, 4 verdict
// unknown, 1 malformed input, 2 unsupported parameter range.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "wonder/betti.hpp"
#include "wonder/blowup.hpp"
#include "wonder/certify.hpp"
#include "wonder/constructions.hpp"
#include "wonder/errors.hpp"
#include "wonder/io.hpp"
#include "wonder/lattice.hpp"
#include "wonder/space.hpp"

namespace {

using namespace wonder;

struct Options {
  std::string instance;
  int n = -1;
  int d = -1;
  std::string base;
  int base_dim = 1;
  std::vector<std::string> assumptions;
  std::string output;
  std::string format;
  std::string derivation = "theorem";
};

struct Instance {
  std::optional<BuildingSet> building_set;
  std::optional<BlowupTrace> trace;
  std::optional<TowerDescription> tower;
  std::optional<io::json> certificate;
};

std::map<std::string, FactOverride> parse_assumptions(
    const std::vector<std::string>& list) {
  std::map<std::string, FactOverride> out;
  for (const std::string& a : list) {
    auto colon = a.find(':');
    auto eq = a.find('=');
    if (colon == std::string::npos || eq == std::string::npos || colon == 0 ||
        eq < colon + 2)
      throw std::invalid_argument("assumption must look like atom:flag=value: " + a);
    std::string name = a.substr(0, colon);
    std::string flag = a.substr(colon + 1, eq - colon - 1);
    Tristate value = tristate_from_string(a.substr(eq + 1));
    FactOverride& o = out[name];
    if (flag == "ordinary")
      o.ordinary = value;
    else if (flag == "hodge_witt")
      o.hodge_witt = value;
    else
      throw std::invalid_argument("unknown flag '" + flag + "' in assumption " + a);
  }
  return out;
}

Space make_base(const Options& opt) {
  if (opt.base.empty())
    throw std::invalid_argument("this generator needs --base");
  static const std::regex proj("^P([0-9]+)$");
  std::smatch m;
  if (std::regex_match(opt.base, m, proj)) return projective_space(std::stoi(m[1]));
  if (opt.base_dim < 1)
    throw std::invalid_argument("--base-dim must be >= 1");
  return atom(opt.base, opt.base_dim, Tristate::Unknown, Tristate::Unknown);
}

int require_n(const Options& opt, const char* generator) {
  if (opt.n < 0)
    throw std::invalid_argument(std::string(generator) + " needs --n");
  return opt.n;
}

BuildingSet override_building_set(const BuildingSet& bs,
                                  const std::map<std::string, FactOverride>& o) {
  std::vector<ElementDescriptor> elements;
  for (const auto& [id, e] : bs.arrangement.elements())
    elements.push_back(make_element(e.id, apply_fact_overrides(e.space, o), e.origin));
  BuildingSet out;
  out.arrangement =
      Arrangement::from_tables(apply_fact_overrides(bs.arrangement.ambient(), o),
                               std::move(elements), bs.arrangement.table());
  out.members = bs.members;
  return out;
}

BlowupTrace override_trace(const BlowupTrace& trace,
                           const std::map<std::string, FactOverride>& o) {
  BlowupTrace out;
  out.building_set = override_building_set(trace.building_set, o);
  out.order = trace.order;
  for (const TraceStage& stage : trace.stages) {
    TraceStage s;
    s.center_id = stage.center_id;
    s.center_codim = stage.center_codim;
    s.ambient = apply_fact_overrides(stage.ambient, o);
    for (const auto& [id, e] : stage.elements) {
      StageElement se = e;
      se.space = apply_fact_overrides(e.space, o);
      s.elements.emplace(id, std::move(se));
    }
    s.meet = stage.meet;
    out.stages.push_back(std::move(s));
  }
  out.final_space = apply_fact_overrides(trace.final_space, o);
  return out;
}

TowerDescription override_tower(const TowerDescription& tower,
                                const std::map<std::string, FactOverride>& o) {
  TowerDescription out;
  out.base = apply_fact_overrides(tower.base, o);
  for (const TowerStep& step : tower.steps) {
    TowerStep s;
    s.label = step.label;
    for (const Space& c : step.centers) s.centers.push_back(apply_fact_overrides(c, o));
    out.steps.push_back(std::move(s));
  }
  return out;
}

std::set<std::string> instance_atoms(const Instance& inst) {
  std::set<std::string> names;
  auto absorb = [&](const Space& s) {
    auto sub = atom_names(s);
    names.insert(sub.begin(), sub.end());
  };
  if (inst.building_set) {
    absorb(inst.building_set->arrangement.ambient());
    for (const auto& [id, e] : inst.building_set->arrangement.elements())
      absorb(e.space);
  }
  if (inst.trace) {
    absorb(inst.trace->building_set.arrangement.ambient());
    for (const auto& [id, e] : inst.trace->building_set.arrangement.elements())
      absorb(e.space);
  }
  if (inst.tower) {
    absorb(inst.tower->base);
    for (const TowerStep& step : inst.tower->steps)
      for (const Space& c : step.centers) absorb(c);
  }
  return names;
}

Instance resolve_instance(const Options& opt) {
  Instance inst;
  if (opt.instance == "fm" || opt.instance == "ulyanov") {
    int n = require_n(opt, opt.instance.c_str());
    if (n > 7)
      throw UnsupportedRangeError(
          "diagonal building sets beyond n = 7 exceed desk scale");
    Space base = make_base(opt);
    inst.building_set = opt.instance == "fm" ? fm_building_set(base, n)
                                             : ulyanov_building_set(base, n);
  } else if (opt.instance == "kapranov") {
    inst.building_set = kapranov_m0n(require_n(opt, "kapranov"));
  } else if (opt.instance == "keel") {
    inst.tower = keel_tower(require_n(opt, "keel"));
  } else if (opt.instance == "tdn") {
    if (opt.d < 1) throw std::invalid_argument("tdn needs --d >= 1");
    inst.tower = tdn_tower(opt.d, require_n(opt, "tdn"));
  } else {
    std::ifstream in(opt.instance);
    if (!in) throw std::invalid_argument("cannot open input " + opt.instance);
    io::json j = io::json::parse(in, nullptr, true);
    std::string kind = j.value("kind", "");
    if (kind == "arrangement")
      inst.building_set = io::building_set_from_json(j);
    else if (kind == "trace")
      inst.trace = io::trace_from_json(j);
    else if (kind == "tower")
      inst.tower = io::tower_from_json(j);
    else if (kind == "certificate")
      inst.certificate = j;
    else
      throw std::invalid_argument("input file has unknown kind '" + kind + "'");
  }

  auto overrides = parse_assumptions(opt.assumptions);
  if (!overrides.empty()) {
    if (inst.certificate)
      throw std::invalid_argument("assumptions do not apply to certificate files");
    std::set<std::string> names = instance_atoms(inst);
    for (const auto& [name, o] : overrides)
      if (!names.count(name))
        throw std::invalid_argument("assumption references unknown atom " + name);
    if (inst.building_set)
      inst.building_set = override_building_set(*inst.building_set, overrides);
    if (inst.trace) inst.trace = override_trace(*inst.trace, overrides);
    if (inst.tower) inst.tower = override_tower(*inst.tower, overrides);
  }
  return inst;
}

void write_output(const std::string& bytes, const std::string& path) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << bytes;
}

std::string format_or(const Options& opt, const char* fallback) {
  return opt.format.empty() ? fallback : opt.format;
}

void expect_json_format(const Options& opt, const char* command) {
  if (format_or(opt, "json") != "json")
    throw std::invalid_argument(std::string(command) + " emits JSON only");
}

int run_build(const Options& opt) {
  expect_json_format(opt, "build");
  Instance inst = resolve_instance(opt);
  if (inst.building_set) {
    BlowupTrace trace = wonderful(*inst.building_set);
    write_output(io::dump(io::trace_to_json(trace)), opt.output);
  } else if (inst.trace) {
    write_output(io::dump(io::trace_to_json(*inst.trace)), opt.output);
  } else if (inst.tower) {
    write_output(io::dump(io::tower_to_json(*inst.tower)), opt.output);
  } else {
    throw std::invalid_argument("build expects a generator, arrangement, trace or tower");
  }
  return 0;
}

int run_validate(const Options& opt) {
  expect_json_format(opt, "validate");
  Instance inst = resolve_instance(opt);
  const BuildingSet* bs = nullptr;
  if (inst.building_set) bs = &*inst.building_set;
  else if (inst.trace) bs = &inst.trace->building_set;
  else
    throw std::invalid_argument("validate expects a building-set instance");
  ValidationReport report = is_building_set(bs->arrangement, bs->members);
  write_output(io::dump(io::validation_report_to_json(report)), opt.output);
  return 0;
}

int verdict_exit_code(Tristate v) {
  switch (v) {
    case Tristate::True: return 0;
    case Tristate::False: return 3;
    default: return 4;
  }
}

int run_certify(const Options& opt) {
  Instance inst = resolve_instance(opt);
  CertPtr cert;
  if (inst.building_set) {
    BlowupTrace trace = wonderful(*inst.building_set);
    cert = certify_trace(trace);
    CertPtr theorem = certify_wonderful(trace);
    if (theorem->claim.verdict != cert->claim.verdict)
      throw std::logic_error(
          "internal error: trace and theorem verdicts disagree");
  } else if (inst.trace) {
    cert = certify_trace(*inst.trace);
  } else if (inst.tower) {
    cert = certify_space(realize_tower(*inst.tower));
  } else {
    throw std::invalid_argument("certify expects a generator, arrangement, trace or tower");
  }
  std::string fmt = format_or(opt, "json");
  if (fmt == "json")
    write_output(io::dump(io::certificate_to_json(*cert)), opt.output);
  else if (fmt == "text")
    write_output(explain_text(*cert), opt.output);
  else
    throw std::invalid_argument("unknown format '" + fmt + "'");
  return verdict_exit_code(cert->claim.verdict);
}

int run_betti(const Options& opt) {
  Instance inst = resolve_instance(opt);
  Space target;
  if (inst.building_set)
    target = wonderful(*inst.building_set).final_space;
  else if (inst.trace)
    target = inst.trace->final_space;
  else if (inst.tower)
    target = realize_tower(*inst.tower);
  else
    throw std::invalid_argument("betti expects a generator, arrangement, trace or tower");
  PoincarePolynomial p = poincare(target);
  std::string fmt = format_or(opt, "text");
  if (fmt == "text")
    write_output(p.str() + "\n", opt.output);
  else if (fmt == "json")
    write_output(io::dump(io::poincare_to_json(p)), opt.output);
  else
    throw std::invalid_argument("unknown format '" + fmt + "'");
  return 0;
}

int run_explain(const Options& opt) {
  Instance inst = resolve_instance(opt);
  if (!inst.certificate)
    throw std::invalid_argument("explain expects a certificate file");
  CertPtr cert = io::certificate_from_json(*inst.certificate);
  std::string fmt = format_or(opt, "text");
  if (fmt == "text")
    write_output(explain_text(*cert), opt.output);
  else if (fmt == "json")
    write_output(io::dump(io::certificate_to_json(*cert)), opt.output);
  else
    throw std::invalid_argument("unknown format '" + fmt + "'");
  return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("instance", opt.instance,
                  "generator (fm, ulyanov, kapranov, keel, tdn) or input file")
      ->required();
  cmd->add_option("--n", opt.n, "size parameter for fm/ulyanov/kapranov/keel/tdn");
  cmd->add_option("--d", opt.d, "dimension parameter for tdn");
  cmd->add_option("--base", opt.base,
                  "base atom for fm/ulyanov: P<d> preset or a named atom");
  cmd->add_option("--base-dim", opt.base_dim,
                  "dimension of a named base atom (default 1)");
  cmd->add_option("--assume", opt.assumptions,
                  "fact override atom:flag=value, e.g. X:ordinary=false");
  cmd->add_option("--output", opt.output, "output path (default stdout)");
  cmd->add_option("--format", opt.format, "json or text");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "wonder: builds wonderful-compactification blowup towers from building "
      "sets, certifies ordinarity with machine-checkable derivations, and "
      "cross-checks Poincare polynomials"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* build = app.add_subcommand("build", "construct a blowup trace or tower");
  CLI::App* validate = app.add_subcommand("validate", "check the building-set axioms");
  CLI::App* certify = app.add_subcommand("certify", "derive an ordinarity verdict");
  CLI::App* betti = app.add_subcommand("betti", "Poincare polynomial of the result");
  CLI::App* explain = app.add_subcommand("explain", "render a certificate file");
  for (CLI::App* cmd : {build, validate, certify, betti, explain})
    add_common(cmd, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return run_build(opt);
    if (validate->parsed()) return run_validate(opt);
    if (certify->parsed()) return run_certify(opt);
    if (betti->parsed()) return run_betti(opt);
    if (explain->parsed()) return run_explain(opt);
  } catch (const UnsupportedRangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
