// Copyright 2026 The opalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "opalg/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <iostream>

#include "opalg/io.hpp"

namespace opalg::cli {

namespace {

struct Options {
  std::string format = "json";
  std::string output;
  double tol = kTol;
  std::uint64_t seed = 1;
  std::size_t trials = 100;

  std::string input;
  std::string input2;
  std::string kind = "ea";
  std::string check;
  std::string theory;
  std::string family;
  std::string states_file;
  std::size_t dim = 2;
  std::size_t cap = kDefaultEffectCap;
  bool dual = false;
  bool selfdual = false;
  bool faces = false;
};

Json detail_vec(const QVec& v) { return io::to_json(v); }

Report cmd_quotient(const Options& o) {
  Report r;
  r.command = "quotient";
  const auto theory = io::theory_from_json(io::load_json(o.input));
  const auto wea = build_wea(theory, o.cap);
  r.add("effect_classes", "quotient/effects", true, Json{{"count", wea.size()}});

  bool distinct = true;
  std::set<QVec> sigs;
  for (const auto& e : wea.effects()) distinct = sigs.insert(e.signature).second && distinct;
  r.add("separating_states", "quotient/separating-states", distinct);

  std::optional<std::array<std::size_t, 2>> bad_pair;
  for (std::size_t x = 0; x < wea.size() && !bad_pair; ++x)
    for (std::size_t y = 0; y < wea.size() && !bad_pair; ++y)
      if (auto s = wea.sum(x, y)) {
        if (add(wea.effects()[x].signature, wea.effects()[y].signature) != wea.effects()[*s].signature) {
          bad_pair = std::array<std::size_t, 2>{x, y};
        }
      }
  r.add("induced_states_additive", "quotient/well-defined-sum", !bad_pair,
        bad_pair ? Json{{"counterexample", *bad_pair}} : Json::object());

  FinitePAS p{{}, wea.oplus(), wea.zero()};
  for (const auto& e : wea.effects()) p.names.push_back(std::to_string(e.id));
  const auto axioms = check_effect_algebra(p, wea.unit());
  for (const char* name : {"EA1", "weak_associativity", "EA3", "EA4", "unit_complement_is_zero"}) {
    AxiomReport one;
    one.verdicts.push_back(axioms.at(name));
    r.add(one);
  }
  r.data = io::to_json(wea);
  return r;
}

Report cmd_complete(const Options& o) {
  Report r;
  r.command = "complete";
  const auto theory = io::theory_from_json(io::load_json(o.input));
  const auto c = complete_wea(build_wea(theory, o.cap), o.cap);
  r.add("fixpoint_reached", "quotient/completion", true,
        Json{{"adjoined", c.adjoined.size()}, {"forced_sums", c.trace.size()}});
  const auto sa = check_strong_associativity(c.algebra);
  r.add("strong_associativity", "quotient/strong-associativity", sa.holds,
        sa.counterexample ? Json{{"counterexample", *sa.counterexample}} : Json::object());
  r.add("is_effect_algebra", "quotient/completion", c.is_effect_algebra);
  r.data = io::to_json(c);
  return r;
}

Report cmd_axioms(const Options& o) {
  Report r;
  r.command = "axioms";
  const Json j = io::load_json(o.input);
  if (o.kind == "pas") {
    r.add(check_pas_properties(io::pas_from_json(j)));
  } else if (o.kind == "ea") {
    const auto p = io::pas_from_json(j);
    const auto rep = check_effect_algebra(p, io::element_from_json(p, j, "one"));
    r.add(rep);
    if (rep.orthosupplement) r.data["orthosupplement"] = *rep.orthosupplement;
  } else if (o.kind == "oa") {
    const auto rep = check_operation_algebra(io::oa_from_json(j));
    r.add(rep);
    if (rep.top_set) r.data["top_set"] = *rep.top_set;
  } else if (o.kind == "convex") {
    r.add(check_convex_table(io::convex_from_json(j)));
  } else {
    throw Error(ErrorCode::UnknownCommand, "axiom kind '" + o.kind + "'");
  }
  return r;
}

Report cmd_cone(const Options& o) {
  Report r;
  r.command = "cone";
  const Json j = io::load_json(o.input);
  const PolyCone c = io::cone_from_json(j);
  const auto reg = check_regularity(c);
  r.add("regularity", "cones/regularity", reg.generating && reg.pointed,
        Json{{"convex", reg.convex}, {"closed", reg.closed}, {"generating", reg.generating},
             {"pointed", reg.pointed},
             {"line_witness", reg.line_witness ? detail_vec(*reg.line_witness) : Json(nullptr)}});
  if (o.dual) {
    const PolyCone d = dual_cone(c);
    Json gens = Json::array();
    for (const auto& g : d.generators()) gens.push_back(detail_vec(g));
    const bool involutive = cones_equal(dual_cone(d), c);
    r.add("double_dual_is_cone", "cones/dual", involutive);
    r.data["dual"] = Json{{"dim", d.dim()}, {"generators", std::move(gens)}};
  }
  if (o.selfdual) {
    const bool sd = is_self_dual(c);
    r.add("self_dual", "cones/self-duality", true, Json{{"self_dual", sd}});
    r.data["self_dual"] = sd;
  }
  if (!o.states_file.empty()) {
    const Json u = io::load_json(o.states_file);
    const LinearEffectAlgebra lea(c, io::qvec_from_json(u.is_object() ? u.at("unit") : u));
    const auto sp = state_polytope(lea);
    bool ok = true;
    for (const auto& v : sp.vertices) ok = ok && dot(v, lea.unit()) == 1 && in_dual(c, v);
    Json vs = Json::array();
    for (const auto& v : sp.vertices) vs.push_back(detail_vec(v));
    r.add("state_slice", "cones/state-slice", ok, Json{{"vertices", sp.vertices.size()}});
    r.data["state_vertices"] = std::move(vs);
  }
  if (o.faces) {
    const auto fl = face_lattice(c.generators());
    Json faces = Json::array();
    for (auto m : fl.faces) {
      Json members = Json::array();
      for (std::size_t i = 0; i < c.generators().size(); ++i)
        if (m & (1u << i)) members.push_back(i);
      faces.push_back(std::move(members));
    }
    r.add("face_lattice", "cones/faces", true,
          Json{{"faces", fl.faces.size()}, {"extreme_points", fl.extreme_points()}});
    r.data["faces"] = std::move(faces);
  }
  return r;
}

Report cmd_quantum(const Options& o) {
  Report r;
  r.command = "quantum";
  Rng rng(o.seed);
  const std::size_t d = o.dim;
  if (o.check == "bcfrm") {
    std::size_t good = 0;
    double worst_gap = 0, worst_eig = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < o.trials; ++t) {
      const DensityState rho = random_density(d, rng);
      const auto v = bcfrm_check(herm_to_vec(rho.op()), 20, rng, o.tol);
      if (v.pass) ++good;
      worst_gap = std::max(worst_gap, max_abs(v.reconstructed.mat() - rho.op().mat()));
      worst_eig = std::min(worst_eig, v.min_eigenvalue);
    }
    r.add("dual_functionals_are_states", "quantum/dual-cone-states", good == o.trials,
          Json{{"trials", o.trials}, {"passed", good}, {"max_reconstruction_error", worst_gap},
               {"min_eigenvalue", worst_eig}});
    std::size_t rejected = 0;
    const std::size_t bad = std::max<std::size_t>(1, o.trials / 10);
    for (std::size_t t = 0; t < bad; ++t) {
      const HermOp x = random_non_state(d, rng);
      const auto v = bcfrm_check(herm_to_vec(x), 20, rng, o.tol);
      if (v.failure == ErrorCode::NegativeOnCone && v.witness && is_effect(*v.witness)) ++rejected;
    }
    r.add("non_states_rejected", "quantum/dual-cone-states", rejected == bad,
          Json{{"trials", bad}, {"rejected", rejected}});
  } else if (o.check == "selfdual") {
    const auto p = psd_self_duality_probe(d, o.trials, rng, o.tol);
    r.add("psd_pairs_nonnegative", "quantum/psd-self-duality", p.min_pair_trace >= -o.tol,
          Json{{"pairs", p.pairs}, {"min_trace", p.min_pair_trace}});
    r.add("non_psd_witnessed", "quantum/psd-self-duality", p.max_witness_trace < 0,
          Json{{"samples", p.non_psd}, {"max_witness_trace", p.max_witness_trace}});
  } else if (o.check == "oa") {
    const auto s = operation_algebra_sweep(d, o.trials, rng, o.tol);
    r.add("OA7", "operation-algebra/OA7", s.oa7 <= o.tol, Json{{"max_defect", s.oa7}});
    r.add("OA8_right", "operation-algebra/OA8", s.oa8_right <= o.tol, Json{{"max_defect", s.oa8_right}});
    r.add("OA8_left", "operation-algebra/OA8", s.oa8_left <= o.tol, Json{{"max_defect", s.oa8_left}});
    r.add("cancellativity", "operation-algebra/OA3", s.cancellativity <= o.tol,
          Json{{"max_defect", s.cancellativity}});
    r.add("positivity", "operation-algebra/OA4", s.positivity <= o.tol, Json{{"max_defect", s.positivity}});
    r.add("top_set_is_trace_preserving", "quantum/top-set", s.top_disagreements == 0,
          Json{{"checked", s.top_checked}, {"disagreements", s.top_disagreements}});
    if (d == 2) r.add(check_operation_algebra(qubit_instrument_algebra()));
  } else {
    throw Error(ErrorCode::UnknownCommand, "quantum check '" + o.check + "'");
  }
  return r;
}

Report cmd_testability(const Options& o) {
  Report r;
  r.command = "testability";
  const EATheory th = io::ea_theory_from_json(io::load_json(o.input));
  const auto rep = check_axiom_testability(th);
  for (std::size_t s = 0; s < rep.per_state.size(); ++s) {
    const auto& t = rep.per_state[s];
    Json d{{"state", s}, {"best_value", t.best_value}};
    if (t.certificate) {
      d["margin"] = t.certificate->margin;
      d["others_checked"] = t.certificate->others_checked;
    }
    if (!t.note.empty()) d["note"] = t.note;
    r.add("state_testable", "composites/testability", t.certificate.has_value(), std::move(d));
  }
  if (rep.per_state.empty()) r.add("no_states", "report/empty", true);
  return r;
}

Report cmd_nosignal(const Options& o) {
  Report r;
  r.command = "nosignal";
  const Json j = io::load_json(o.input);
  const BipartiteTable t = j.contains("measurements") ? bipartite_from_theory(io::theory_from_json(j))
                                                      : io::bipartite_from_json(j);
  const auto v = influence_free(t);
  Json d = Json::object();
  if (v.witness) {
    const auto& w = *v.witness;
    d = Json{{"state", w.state},          {"side", std::string(1, w.side)},
             {"choice", w.choice},        {"outcome", w.outcome},
             {"other_choice", w.other_choice}, {"other_choice_alt", w.other_choice_alt},
             {"p_first", to_string(w.p_first)}, {"p_second", to_string(w.p_second)}};
  }
  r.add("influence_free", "composites/influence-freedom", v.influence_free, std::move(d));
  return r;
}

Report cmd_dynamics(const Options& o) {
  Report r;
  r.command = "dynamics";
  const Json mj = io::load_json(o.input);
  const AffineStateMap sigma = io::state_map_from_json(mj);
  const EATheory th = io::ea_theory_from_json(io::load_json(o.theory));
  if (o.check == "schrodinger") {
    const auto s = check_schrodinger(sigma, th, o.trials, o.tol);
    r.add("state_set_preserved", "dynamics/schrodinger", s.pass,
          Json{{"generators", s.generators_checked}, {"affinity_pairs", s.affinity_checked}, {"note", s.note}});
  } else if (o.check == "heisenberg") {
    const auto h = heisenberg_representable(sigma, th, o.tol);
    Json d{{"effects_checked", h.effects_checked}, {"note", h.note}};
    if (h.witness_rational) d["witness"] = detail_vec(*h.witness_rational);
    if (h.witness_quantum) d["witness"] = io::to_json(h.witness_quantum->mat());
    if (h.witness_image) {
      const auto sep = separability(*h.witness_image, th.d_a, th.d_b, false, o.tol);
      d["witness_image_min_pt_eigenvalue"] = sep.min_pt_eigenvalue;
    }
    r.add("heisenberg_representable", "dynamics/heisenberg", h.representable, std::move(d));
  } else if (o.check == "pure") {
    const auto p = check_pure_to_pure(sigma, th, io::inverse_from_json(mj), o.trials, o.tol);
    r.add("pure_to_pure", "dynamics/pure-to-pure", p.pure_preserved,
          Json{{"checked", p.checked}, {"min_purity", p.min_purity}, {"inverse_verified", p.inverse_verified}});
  } else if (o.check == "contraction") {
    const auto h = heisenberg_representable(sigma, th, o.tol);
    if (!h.representable) {
      r.add("heisenberg_representable", "dynamics/heisenberg", false, Json{{"note", h.note}});
      return r;
    }
    Rng rng(o.seed);
    std::vector<QuantumMeasurement> family{computational_basis(th.dim())};
    for (int k = 0; k < 20; ++k) family.push_back(random_projective_measurement(th.dim(), rng));
    double worst = -1;
    for (std::size_t t = 0; t < o.trials; ++t) {
      const auto c = contraction_check(sigma, *h.gamma, random_density(th.dim(), rng),
                                       random_density(th.dim(), rng), family, o.tol);
      worst = std::max(worst, c.d_after - c.d_before);
    }
    r.add("contraction", "dynamics/contraction", worst <= o.tol,
          Json{{"pairs", o.trials}, {"max_violation", worst}});
  } else {
    throw Error(ErrorCode::UnknownCommand, "dynamics check '" + o.check + "'");
  }
  return r;
}

Report cmd_distinguish(const Options& o) {
  Report r;
  r.command = "distinguish";
  const DensityState a = io::state_from_json(io::load_json(o.input));
  const DensityState b = io::state_from_json(io::load_json(o.input2));
  const auto family = io::family_from_json(io::load_json(o.family));
  const auto d = distinguishability(a, b, family, total_variation, o.tol);
  const double td = trace_distance(a, b);
  r.add("bounded_by_trace_distance", "dynamics/distinguishability", d.value <= td + o.tol,
        Json{{"distinguishability", d.value}, {"argmax", d.argmax}, {"trace_distance", td}});
  return r;
}

}  // namespace

double tolerance_from_env(double fallback) {
  const char* env = std::getenv("OPALG_TOL");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0)) {
    throw Error(ErrorCode::ParseError, std::string("OPALG_TOL is not a positive number: ") + env);
  }
  return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"opalg: finite operational theories, effect algebras and their checks"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output,-o", o.output, "write the report here instead of stdout");
  app.add_option("--seed", o.seed, "seed for every randomized check");
  app.add_option("--trials", o.trials, "number of random trials");
  auto* tol_opt = app.add_option("--tol", o.tol, "numerical tolerance (overrides OPALG_TOL)");
  app.fallthrough();

  std::map<std::string, std::function<Report(const Options&)>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<Report(const Options&)> fn) {
    handlers[name] = std::move(fn);
    return app.add_subcommand(name, help);
  };
  auto* q = sub("quotient", "quotient a theory by probabilistic equivalence", cmd_quotient);
  q->add_option("theory", o.input)->required();
  q->add_option("--cap", o.cap, "effect cap");
  auto* c = sub("complete", "saturate the sum table of the quotient", cmd_complete);
  c->add_option("theory", o.input)->required();
  c->add_option("--cap", o.cap, "element cap");
  auto* a = sub("axioms", "check a tabulated structure", cmd_axioms);
  a->add_option("structure", o.input)->required();
  a->add_option("--kind", o.kind)->check(CLI::IsMember({"pas", "ea", "oa", "convex"}));
  auto* k = sub("cone", "polyhedral cone geometry", cmd_cone);
  k->add_option("cone", o.input)->required();
  k->add_flag("--dual", o.dual);
  k->add_flag("--selfdual", o.selfdual);
  k->add_option("--states", o.states_file, "file holding the unit vector");
  k->add_flag("--faces", o.faces);
  auto* qu = sub("quantum", "quantum instance checks", cmd_quantum);
  qu->add_option("--check", o.check)->required()->check(CLI::IsMember({"bcfrm", "selfdual", "oa"}));
  qu->add_option("--dim", o.dim);
  auto* t = sub("testability", "are all listed states testable", cmd_testability);
  t->add_option("theory", o.input)->required();
  auto* n = sub("nosignal", "influence-freedom of a bipartite table", cmd_nosignal);
  n->add_option("table", o.input)->required();
  auto* dy = sub("dynamics", "Schrodinger and Heisenberg dynamics", cmd_dynamics);
  dy->add_option("map", o.input)->required();
  dy->add_option("--theory", o.theory)->required();
  dy->add_option("--check", o.check)
      ->required()
      ->check(CLI::IsMember({"schrodinger", "heisenberg", "pure", "contraction"}));
  auto* di = sub("distinguish", "distinguishability over a measurement family", cmd_distinguish);
  di->add_option("state1", o.input)->required();
  di->add_option("state2", o.input2)->required();
  di->add_option("--family", o.family)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (tol_opt->count() == 0) o.tol = tolerance_from_env(kTol);
    const std::string name = app.get_subcommands().front()->get_name();
    const Report report = handlers.at(name)(o);
    const std::string text = o.format == "text" ? render_text(report) : render_json(report);
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream f(o.output);
      if (!f) throw Error(ErrorCode::ParseError, "cannot write " + o.output);
      f << text;
    }
    return report.all_pass() ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace opalg::cli
