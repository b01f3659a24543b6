// Command-line front end: one JSON config in, one JSON document out.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mfchern/config.hpp"
#include "mfchern/verify.hpp"

namespace {

using nlohmann::json;
using namespace mfc;

enum Exit { Ok = 0, Internal = 1, Validation = 2, Undecided = 3, CheckFailed = 4 };

struct Options {
  std::string input, command, output, bracket = "transported";
  int u_trunc = 3;
  int degree_bound = 6;
  std::uint64_t seed = 1;
  std::vector<std::string> suite{"all"};
};

json lines(const std::string& s) {
  json out = json::array();
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

json cochain_json(const CechCochain& c) { return c.is_zero() ? json::array({"0"}) : lines(c.str()); }

json family_json(const EquivariantFamily& f) {
  json out = json::object();
  for (size_t g = 0; g < f.comp.size(); ++g) out[f.G->names.at(g)] = cochain_json(f.comp[g]);
  return out;
}

BracketConvention bracket_of(const Options& o) {
  return o.bracket == "front-patch" ? BracketConvention::FrontPatch : BracketConvention::Transported;
}

json conventions(const Options& o) {
  return {{"sign_ledger", "1"},
          {"shift", "P[1] raises every degree by one and negates δ"},
          {"epsilon", hkr_epsilon()},
          {"bracket", o.bracket},
          {"total_degree", "p - q + 2m"}};
}

void need(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw ConfigError(where, what);
}

int run(const Options& o, json& doc) {
  doc["command"] = o.command;
  doc["conventions"] = conventions(o);
  doc["u_trunc"] = o.u_trunc;
  BracketConvention conv = bracket_of(o);

  if (o.command == "verify") {
    SuiteSizes sz;
    sz.u_trunc = o.u_trunc;
    auto reports = run_suite(o.suite, o.seed, sz);
    json arr = json::array();
    bool all = true;
    for (const auto& r : reports) {
      all = all && r.pass;
      arr.push_back({{"name", r.name},
                     {"identity", r.anchor},
                     {"sampled", r.instance},
                     {"instances", r.instances},
                     {"pass", r.pass},
                     {"residual", lines(r.residual)},
                     {"seed", r.seed}});
    }
    doc["seed"] = o.seed;
    doc["checks"] = arr;
    doc["all_pass"] = all;
    return all ? Ok : CheckFailed;
  }

  JobInput job = load_job_file(o.input);
  need(job.P != nullptr, "/mf", "this command needs a matrix factorization");
  Connection c = job.connection_or_default();

  if (o.command == "chern") {
    CechCochain ch = chern_hn(*job.P, c, o.u_trunc, conv);
    bool cocycle = is_cocycle(ch);
    doc["chern_hn"] = cochain_json(ch);
    doc["chern_hh"] = cochain_json(ch.u_slice(0));
    doc["cocycle"] = cocycle;
    return cocycle ? Ok : CheckFailed;
  }
  if (o.command == "atiyah") {
    CechCochain at = atiyah_cocycle(c, 0);
    CechCochain R = total_curvature(*job.P, c, true, o.u_trunc, conv);
    doc["atiyah_cocycle"] = cochain_json(at);
    doc["cech_closed"] = cech_differential(at).is_zero();
    doc["curvature"] = cochain_json(R);
    return Ok;
  }
  if (o.command == "chern-localized") {
    need(job.support.has_value(), "/support", "chern-localized needs a support split");
    CechCochain ch = chern_localized(*job.P, *job.support, c, o.u_trunc, conv);
    bool cocycle = is_cocycle(ch);
    doc["chern_localized"] = cochain_json(ch);
    doc["relative"] = in_relative_subcomplex(ch, *job.support);
    doc["cocycle"] = cocycle;
    if (!cocycle) return CheckFailed;
    ClassComparison cmp = cohomologous(ch, CechCochain::scalar(job.X, o.u_trunc), o.degree_bound);
    doc["degree_bound"] = o.degree_bound;
    if (cmp.status == SolveStatus::Solved) {
      doc["class"] = "zero";
      doc["primitive"] = cochain_json(cmp.primitive);
      return Ok;
    }
    doc["class"] = "undecided: no primitive within the degree bound";
    return Undecided;
  }
  if (o.command == "chern-equivariant") {
    need(job.equivariant.has_value(), "/equivariant", "chern-equivariant needs a group and φ");
    EquivariantFamily hh = chern_equivariant_hh(*job.equivariant, c, conv);
    EquivariantFamily hn = chern_equivariant_hn(*job.equivariant, c, o.u_trunc, conv);
    doc["chern_hh"] = family_json(hh);
    doc["chern_hn"] = family_json(hn);
    bool cocycles = true;
    for (const auto& comp : hn.comp) cocycles = cocycles && is_cocycle(comp);
    doc["cocycle"] = cocycles;
    doc["coinvariant"] = coinvariant_project(hn) == hn;
    return cocycles ? Ok : CheckFailed;
  }
  if (o.command == "boundary-bulk") {
    need(job.equivariant.has_value(), "/equivariant", "boundary-bulk needs a group and φ");
    CechCochain kappa = job.kappa ? *job.kappa : CechCochain::identity(job.P->bundle, 0);
    EquivariantFamily f = boundary_bulk(kappa, *job.equivariant, c, conv);
    doc["boundary_bulk"] = family_json(f);
    bool cocycles = true;
    for (const auto& comp : f.comp) cocycles = cocycles && is_cocycle(comp);
    doc["cocycle"] = cocycles;
    return cocycles ? Ok : CheckFailed;
  }
  throw ConfigError("--command", "unknown command " + o.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern characters of global matrix factorizations in exact arithmetic"};
  Options o;
  app.add_option("--input,-i", o.input, "JSON config describing the scheme, MF, connection and group");
  app.add_option("--command,-c", o.command, "what to compute")
      ->required()
      ->check(CLI::IsMember({"chern", "chern-localized", "chern-equivariant", "boundary-bulk", "verify", "atiyah"}));
  app.add_option("--u-trunc", o.u_trunc, "highest power of u kept")->check(CLI::NonNegativeNumber);
  app.add_option("--degree-bound", o.degree_bound, "monomial bound for primitive searches")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "seed for the verify suite");
  app.add_option("--suite", o.suite, "checks to run under verify (default all)");
  app.add_option("--bracket", o.bracket, "how [∇, κ] treats Čech cochains")
      ->check(CLI::IsMember({"transported", "front-patch"}));
  app.add_option("--output,-o", o.output, "write the document here instead of stdout");
  CLI11_PARSE(app, argc, argv);

  json doc;
  int code = Ok;
  try {
    if (o.command != "verify" && o.input.empty()) throw ConfigError("--input", "required for " + o.command);
    code = run(o, doc);
  } catch (const ConfigError& e) {
    doc = {{"command", o.command}, {"error", "validation"}, {"where", e.where()}, {"message", e.what()}};
    code = Validation;
  } catch (const std::invalid_argument& e) {
    doc = {{"command", o.command}, {"error", "validation"}, {"message", e.what()}};
    code = Validation;
  } catch (const std::exception& e) {
    doc = {{"command", o.command}, {"error", "internal"}, {"message", e.what()}};
    code = Internal;
  }
  doc["exit_code"] = code;
  std::string text = doc.dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.output);
    out << text;
  }
  if (code == Validation || code == Internal) std::cerr << doc.value("message", "") << "\n";
  return code;
}
