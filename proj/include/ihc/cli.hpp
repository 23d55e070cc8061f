#pragma once

// Command-line front end. `run` takes the argument list (without argv[0]) and
// returns the process exit status:
//   0 pass, 1 conjecture check failed or undetermined, 2 invalid input,
//   3 internal oracle disagreement.

#include "ihc/catalog.hpp"
#include "ihc/errors.hpp"
#include "ihc/fan_io.hpp"
#include "ihc/gpoly.hpp"
#include "ihc/report.hpp"
#include "ihc/sheaf.hpp"
#include "ihc/stanley_reisner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace ihc::cli {

enum Exit : int { Pass = 0, CheckFailed = 1, InvalidInput = 2, OracleFailure = 3 };

struct RunConfig {
  std::string input;
  std::string example;
  std::optional<int> degree_bound;
  std::string format = "text";
  bool skip_sheaf = false;
  bool skip_lefschetz = false;
  bool emit_sheaf_debug = false;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline FanSpec load_spec(const RunConfig& cfg) {
  if (cfg.input.empty() == cfg.example.empty())
    throw ParseError("give exactly one of a fan file or --example <name>");
  if (!cfg.example.empty()) return example_spec(cfg.example);
  std::ifstream in(cfg.input);
  if (!in) throw ParseError("cannot read fan file '" + cfg.input + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fan_spec(buf.str());
}

inline void check_degree_bound(const RunConfig& cfg, const Fan& f) {
  if (cfg.degree_bound && (*cfg.degree_bound < 2 * f.dim() || *cfg.degree_bound % 2 != 0))
    throw DegreeBoundTooLow("--degree-bound must be even and at least 2n = " + std::to_string(2 * f.dim()));
}

inline std::string vector_text(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "]";
}

struct Validation {
  bool complete = false;
  bool simplicial = false;
  std::optional<bool> polytopal;
  std::optional<PiecewisePolynomial> support_function;
  bool valid() const { return complete && polytopal.value_or(false); }
};

inline Validation validate(const Fan& f) {
  Validation v;
  v.complete = f.flags().complete;
  v.simplicial = f.flags().simplicial;
  if (v.complete) {
    auto p = check_polytopal(f);
    v.polytopal = p.polytopal;
    v.support_function = std::move(p.support_function);
  }
  return v;
}

inline std::vector<Rational> linear_coefficients(const Polynomial& p) {
  std::vector<Rational> c(p.variables());
  for (const auto& [e, coeff] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] == 1) c[i] = coeff;
  return c;
}

inline Json validation_json(const Fan& f, const Validation& v) {
  Json j;
  j["fan"] = {{"name", f.name()}, {"n", f.dim()}, {"rays", f.rays().size()}, {"cones", f.size()}};
  j["complete"] = v.complete;
  j["simplicial"] = v.simplicial;
  j["polytopal"] = v.polytopal ? Json(*v.polytopal) : Json();
  j["support_function"] = Json::array();
  if (v.support_function)
    for (auto s : f.maximal_cones()) {
      Json coeffs = Json::array();
      for (const auto& c : linear_coefficients(v.support_function->on(s))) coeffs.push_back(c.get_str());
      j["support_function"].push_back({{"cone", s}, {"rays", f.cone(s).rays}, {"linear_form", coeffs}});
    }
  j["cones"] = Json::array();
  for (ConeId id = 0; id < f.size(); ++id) {
    auto m = cone_multiplicity(f, id);
    j["cones"].push_back({{"id", id},
                          {"rays", f.cone(id).rays},
                          {"dim", f.cone(id).dim},
                          {"simplicial", m.is_simplicial},
                          {"multiplicity", m.multiplicity ? Json(m.multiplicity->get_str()) : Json()},
                          {"smooth", m.is_smooth}});
  }
  j["valid"] = v.valid();
  return j;
}

inline std::string validation_text(const Fan& f, const Validation& v) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream os;
  os << "fan name=" << (f.name().empty() ? "-" : f.name()) << " n=" << f.dim() << " rays=" << f.rays().size()
     << " cones=" << f.size() << "\n";
  os << "complete=" << yn(v.complete) << " simplicial=" << yn(v.simplicial)
     << " polytopal=" << (v.polytopal ? yn(*v.polytopal) : "unchecked") << "\n";
  if (v.support_function)
    for (auto s : f.maximal_cones())
      os << "support_function cone=" << s << " rays=" << ihc::detail::ray_list(f.cone(s).rays)
         << " linear_form=" << vector_text(linear_coefficients(v.support_function->on(s))) << "\n";
  for (ConeId id = 0; id < f.size(); ++id) {
    auto m = cone_multiplicity(f, id);
    os << "cone id=" << id << " rays=" << ihc::detail::ray_list(f.cone(id).rays) << " dim=" << f.cone(id).dim
       << " simplicial=" << yn(m.is_simplicial)
       << " multiplicity=" << (m.multiplicity ? m.multiplicity->get_str() : "-") << " smooth=" << yn(m.is_smooth)
       << "\n";
  }
  os << "valid=" << yn(v.valid()) << "\n";
  return os.str();
}

struct Dims {
  std::vector<long long> gpoly;
  std::optional<std::vector<std::size_t>> sheaf;
  std::optional<std::vector<std::size_t>> sr;
};

inline Json dims_json(const Dims& d) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < d.gpoly.size(); ++k)
    rows.push_back({{"k", k},
                    {"d_gpoly", d.gpoly[k]},
                    {"d_sheaf", d.sheaf ? Json((*d.sheaf)[k]) : Json()},
                    {"d_sr", d.sr ? Json((*d.sr)[k]) : Json()}});
  return rows;
}

inline std::string dims_text(const Dims& d) {
  std::ostringstream os;
  for (std::size_t k = 0; k < d.gpoly.size(); ++k)
    os << "k=" << k << " d_gpoly=" << d.gpoly[k] << " d_sheaf=" << (d.sheaf ? std::to_string((*d.sheaf)[k]) : "-")
       << " d_sr=" << (d.sr ? std::to_string((*d.sr)[k]) : "-") << "\n";
  return os.str();
}

struct LocalRow {
  ConeId id;
  GHPolynomial g;
  std::optional<std::vector<int>> generator_degrees;
};

inline Json local_json(const Fan& f, const std::vector<LocalRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"cone", r.id},
                   {"rays", f.cone(r.id).rays},
                   {"g", r.g.coeffs()},
                   {"generator_degrees", r.generator_degrees ? Json(*r.generator_degrees) : Json()}});
  return out;
}

inline std::string local_text(const Fan& f, const std::vector<LocalRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << "local cone=" << r.id << " rays=" << ihc::detail::ray_list(f.cone(r.id).rays)
       << " g=" << ihc::join(r.g.coeffs(), ",") << " generator_degrees=";
    if (r.generator_degrees) {
      os << (r.generator_degrees->empty() ? "-" : ihc::join(*r.generator_degrees, ","));
    } else {
      os << "-";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace detail

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  auto f = build(detail::load_spec(cfg));
  auto v = detail::validate(f);
  if (cfg.format == "machine")
    out << detail::validation_json(f, v).dump(2) << "\n";
  else
    out << detail::validation_text(f, v);
  return v.valid() ? Pass : InvalidInput;
}

inline int cmd_ih_dims(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto f = build(detail::load_spec(cfg));
  detail::check_degree_bound(cfg, f);
  detail::Dims d;
  d.gpoly = h_vector(f);
  if (f.flags().simplicial) d.sr = sr_graded_dims(f);
  if (!cfg.skip_sheaf) {
    auto model = build_minimal_extension_sheaf(f, cfg.degree_bound);
    if (cfg.emit_sheaf_debug) err << dump_sheaf(model);
    d.sheaf = global_ih(model).dims();
  }
  bool agree = true;
  for (std::size_t k = 0; k < d.gpoly.size(); ++k) {
    if (d.sheaf) agree = agree && static_cast<long long>((*d.sheaf)[k]) == d.gpoly[k];
    if (d.sr) agree = agree && static_cast<long long>((*d.sr)[k]) == d.gpoly[k];
  }
  if (cfg.format == "machine") {
    detail::Json j;
    j["fan"] = {{"name", f.name()}, {"n", f.dim()}};
    j["degrees"] = detail::dims_json(d);
    j["agree"] = agree;
    out << j.dump(2) << "\n";
  } else {
    out << "fan name=" << (f.name().empty() ? "-" : f.name()) << " n=" << f.dim() << "\n"
        << detail::dims_text(d) << "agree=" << (agree ? "yes" : "no") << "\n";
  }
  return agree ? Pass : OracleFailure;
}

inline PipelineOptions pipeline_options(const RunConfig& cfg) {
  return {cfg.degree_bound, cfg.skip_sheaf, cfg.skip_lefschetz};
}

inline int verdict_status(const VerificationReport& r) {
  return r.verdict() == Verdict::Pass && r.properties_hold() ? Pass : CheckFailed;
}

inline int cmd_verify_hodge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto f = build(detail::load_spec(cfg));
  detail::check_degree_bound(cfg, f);
  VerificationReport r;
  if (cfg.emit_sheaf_debug && !cfg.skip_sheaf) {
    auto model = build_minimal_extension_sheaf(f, cfg.degree_bound);
    err << dump_sheaf(model);
    r = rank_check(model, pipeline_options(cfg));
  } else {
    r = verify_hodge(f, pipeline_options(cfg));
  }
  out << (cfg.format == "machine" ? render_machine(r) : render_text(r));
  return verdict_status(r);
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto f = build(detail::load_spec(cfg));
  detail::check_degree_bound(cfg, f);
  auto v = detail::validate(f);
  if (!v.valid()) {
    if (cfg.format == "machine")
      out << detail::Json{{"validation", detail::validation_json(f, v)}}.dump(2) << "\n";
    else
      out << detail::validation_text(f, v);
    return InvalidInput;
  }
  std::vector<detail::LocalRow> local;
  GPolynomials g(f);
  std::optional<SheafModel> model;
  if (!cfg.skip_sheaf) {
    model.emplace(build_minimal_extension_sheaf(f, cfg.degree_bound));
    if (cfg.emit_sheaf_debug) err << dump_sheaf(*model);
  }
  for (ConeId id = 0; id < f.size(); ++id)
    local.push_back({id, g.of(id),
                     model ? std::optional(model->module(id).generator_degrees) : std::nullopt});
  auto r = model ? rank_check(*model, pipeline_options(cfg)) : gpoly_only_report(f);
  if (cfg.format == "machine") {
    detail::Json j;
    j["validation"] = detail::validation_json(f, v);
    j["local"] = detail::local_json(f, local);
    j["verification"] = to_json(r);
    out << j.dump(2) << "\n";
  } else {
    out << "== validation\n"
        << detail::validation_text(f, v) << "== local\n"
        << detail::local_text(f, local) << "== verification\n"
        << render_text(r);
  }
  return verdict_status(r);
}

inline int cmd_examples(const std::string& action, const std::string& name, const std::string& format,
                        std::ostream& out) {
  if (action == "emit") {
    if (name.empty()) throw UnknownExample("examples emit needs a name");
    out << emit_fan(example_spec(name));
    return Pass;
  }
  if (action != "list") throw ParseError("examples action must be 'list' or 'emit'");
  detail::Json rows = detail::Json::array();
  std::ostringstream text;
  for (const auto& e : catalog()) {
    auto f = example(e.name);
    rows.push_back({{"name", e.name},
                    {"n", f.dim()},
                    {"rays", f.rays().size()},
                    {"simplicial", f.flags().simplicial},
                    {"description", e.description}});
    char line[160];
    std::snprintf(line, sizeof line, "%-30s n=%d rays=%-3zu simplicial=%-3s %s\n", e.name.c_str(), f.dim(),
                  f.rays().size(), f.flags().simplicial ? "yes" : "no", e.description.c_str());
    text << line;
  }
  out << (format == "machine" ? rows.dump(2) + "\n" : text.str());
  return Pass;
}

/// Parses and dispatches. Diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial intersection cohomology of rational fans", "ihc"};
  app.require_subcommand(1);
  RunConfig cfg;
  int bound = 0;
  auto add_common = [&](CLI::App* sub, bool sheaf_flags) {
    sub->add_option("file", cfg.input, "fan file (JSON with n, rays, max_cones)");
    sub->add_option("--example", cfg.example, "built-in example name");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "machine"}));
    if (sheaf_flags) {
      sub->add_option("--degree-bound", bound, "even degree bound, at least 2n");
      sub->add_flag("--skip-sheaf", cfg.skip_sheaf, "use the g-polynomial and Stanley–Reisner routes only");
      sub->add_flag("--skip-lefschetz", cfg.skip_lefschetz, "skip the hard Lefschetz checks");
      sub->add_flag("--emit-sheaf-debug", cfg.emit_sheaf_debug, "write the sheaf model to stderr");
    }
  };
  auto* validate = app.add_subcommand("validate", "check completeness, simpliciality and polytopality");
  add_common(validate, false);
  auto* dims = app.add_subcommand("ih-dims", "intersection cohomology dimensions from each route");
  add_common(dims, true);
  auto* verify = app.add_subcommand("verify-hodge", "run the cycle-class rank check");
  add_common(verify, true);
  auto* report = app.add_subcommand("report", "validation, local data and verification together");
  add_common(report, true);
  auto* examples = app.add_subcommand("examples", "list or emit built-in fans");
  std::string action = "list", name;
  examples->add_option("action", action, "list | emit")->check(CLI::IsMember({"list", "emit"}));
  examples->add_option("name", name, "example to emit");
  examples->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "machine"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return InvalidInput;
  }
  for (auto* sub : {dims, verify, report})
    if (sub->parsed() && sub->count("--degree-bound")) cfg.degree_bound = bound;

  try {
    if (validate->parsed()) return cmd_validate(cfg, out);
    if (dims->parsed()) return cmd_ih_dims(cfg, out, err);
    if (verify->parsed()) return cmd_verify_hodge(cfg, out, err);
    if (report->parsed()) return cmd_report(cfg, out, err);
    return cmd_examples(action, name, cfg.format, out);
  } catch (const OracleDisagreement& e) {
    err << "oracle disagreement: " << e.what() << "\n";
    return OracleFailure;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return InvalidInput;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return OracleFailure;
  }
}

}  // namespace ihc::cli
