#pragma once

// End-to-end verification: target dimensions, sheaf dimensions, cycle-class
// ranks, Lefschetz ranks and the property suite, collected in one report.

#include "ihc/errors.hpp"
#include "ihc/fan.hpp"
#include "ihc/gpoly.hpp"
#include "ihc/hodge.hpp"
#include "ihc/piecewise.hpp"
#include "ihc/sheaf.hpp"
#include "ihc/stanley_reisner.hpp"

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace ihc {

enum class Verdict { Pass, Fail, Undetermined };
enum class CheckStatus { Pass, Fail, Skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "undetermined";
  }
}

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "skipped";
  }
}

struct DegreeRow {
  int k = 0;
  long long d_gpoly = 0;
  std::optional<std::size_t> d_sheaf;
  std::optional<std::size_t> d_sr;
  std::optional<std::size_t> hodge_rank;
  Verdict verdict = Verdict::Undetermined;
};

struct ClassRow {
  ConeId cone = 0;
  RaySet rays;
  int k = 0;
  std::optional<std::string> multiplicity;  // absent for non-simplicial cones
  bool smooth = false;
  std::optional<std::size_t> supported_dim;
  std::size_t class_dim = 0;
};

struct LefschetzRow {
  int k = 0;
  int power = 0;
  std::size_t rank = 0;
  long long expected = 0;
  bool ok() const { return static_cast<long long>(rank) == expected; }
};

struct PropertyCheck {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string detail;
};

struct VerificationReport {
  std::string fan_name;
  int n = 0;
  std::size_t ray_count = 0;
  std::size_t cone_count = 0;
  bool complete = false;
  bool simplicial = false;
  bool polytopal = false;
  bool empirical = false;
  std::vector<DegreeRow> degrees;
  std::vector<ClassRow> classes;
  std::vector<LefschetzRow> lefschetz;
  std::vector<PropertyCheck> properties;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> timings;

  /// pass iff every degree passes; undetermined if any degree could not be decided.
  Verdict verdict() const {
    bool undetermined = false;
    for (const auto& d : degrees) {
      if (d.verdict == Verdict::Fail) return Verdict::Fail;
      if (d.verdict == Verdict::Undetermined) undetermined = true;
    }
    return undetermined || degrees.empty() ? Verdict::Undetermined : Verdict::Pass;
  }

  bool properties_hold() const {
    return std::none_of(properties.begin(), properties.end(),
                        [](const PropertyCheck& p) { return p.status == CheckStatus::Fail; });
  }

  const PropertyCheck* property(const std::string& name) const {
    for (const auto& p : properties)
      if (p.name == name) return &p;
    return nullptr;
  }
};

struct PipelineOptions {
  std::optional<int> degree_bound;
  bool skip_sheaf = false;
  bool skip_lefschetz = false;
};

namespace detail {

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline void add_check(VerificationReport& r, std::string name, bool ok, std::string detail = "") {
  r.properties.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)});
}

inline void skip_check(VerificationReport& r, std::string name, std::string detail) {
  r.properties.push_back({std::move(name), CheckStatus::Skipped, std::move(detail)});
}

inline std::string dims_table(const std::vector<long long>& h, const std::vector<std::size_t>& sheaf) {
  std::ostringstream os;
  os << "k gpoly sheaf\n";
  for (std::size_t k = 0; k < std::max(h.size(), sheaf.size()); ++k)
    os << k << " " << (k < h.size() ? std::to_string(h[k]) : "-") << " "
       << (k < sheaf.size() ? std::to_string(sheaf[k]) : "-") << "\n";
  return os.str();
}

/// Classical h-vector from face counts of a simplicial complete fan.
inline std::vector<long long> f_vector_h(const Fan& f) {
  const int n = f.dim();
  std::vector<long long> fv(static_cast<std::size_t>(n) + 1, 0);  // fv[j] = #j-dimensional cones
  for (const auto& c : f.cones()) ++fv[static_cast<std::size_t>(c.dim)];
  auto binom = [](long long a, long long b) {
    if (b < 0 || b > a) return 0LL;
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::vector<long long> h;
  for (int k = 0; k <= n; ++k) {
    long long s = 0;
    for (int j = 0; j <= k; ++j) s += ((k - j) % 2 ? -1 : 1) * binom(n - j, k - j) * fv[static_cast<std::size_t>(j)];
    h.push_back(s);
  }
  return h;
}

inline PiecewisePolynomial courant_monomial(const Fan& f, const Exponent& e) {
  auto p = PiecewisePolynomial::constant(f, 1);
  for (std::size_t r = 0; r < e.size(); ++r)
    for (int j = 0; j < e[r]; ++j) p = multiply(p, courant_function(f, r));
  return p;
}

inline bool proportional_nonzero(const RationalVector& a, const RationalVector& b) {
  return !is_zero(a) && !is_zero(b) && proportional(a, b);
}

inline std::optional<std::string> multiplicity_label(const Fan& f, ConeId id) {
  auto m = cone_multiplicity(f, id);
  if (!m.multiplicity) return std::nullopt;
  return m.multiplicity->get_str();
}

}  // namespace detail

/// Fan-level checks shared by every route: flags, h-vector and its symmetry.
inline VerificationReport start_report(const Fan& f, std::optional<PiecewisePolynomial>* psi_out = nullptr) {
  VerificationReport r;
  r.fan_name = f.name();
  r.n = f.dim();
  r.ray_count = f.rays().size();
  r.cone_count = f.size();
  r.complete = f.flags().complete;
  r.simplicial = f.flags().simplicial;
  r.empirical = f.dim() >= 4;
  if (!r.complete) throw NotComplete("verification requires a complete fan");
  auto poly = check_polytopal(f);
  r.polytopal = poly.polytopal;
  if (!r.polytopal) throw NotPolytopal("fan admits no strictly convex support function");
  if (psi_out) *psi_out = std::move(poly.support_function);
  return r;
}

/// The sheaf route: both oracles, cycle classes, rank check and property suite.
inline VerificationReport rank_check(const SheafModel& model, const PipelineOptions& opt = {}) {
  const Fan& f = model.fan();
  detail::Stopwatch clock;
  std::optional<PiecewisePolynomial> psi;
  auto r = start_report(f, &psi);
  const auto n = static_cast<std::size_t>(f.dim());

  auto h = h_vector(f);
  r.timings.emplace_back("gpoly", clock.lap());
  auto ih = global_ih(model);
  auto sheaf_dims = ih.dims();
  r.timings.emplace_back("sheaf", clock.lap());
  for (std::size_t k = 0; k <= n; ++k)
    if (static_cast<long long>(sheaf_dims[k]) != h[k])
      throw OracleDisagreement("intersection cohomology dimensions disagree between the g-polynomial and sheaf "
                               "routes\n" + detail::dims_table(h, sheaf_dims));

  detail::add_check(r, "palindromy", is_palindromic(h));
  detail::add_check(r, "unimodality", is_unimodal_to_middle(h));
  detail::add_check(r, "h_endpoints", h.front() == 1 && h.back() == 1);
  if (f.flags().simplicial)
    detail::add_check(r, "f_vector_h", detail::f_vector_h(f) == h);
  else
    detail::skip_check(r, "f_vector_h", "fan is not simplicial");
  detail::add_check(r, "oracle_agreement", true);

  // local: generator degrees against g, and vanishing of Ē(∂σ) from degree dim σ on
  {
    GPolynomials g(f);
    bool local_ok = true, purity_ok = true;
    std::string local_detail, purity_detail;
    for (ConeId id = 0; id < f.size(); ++id) {
      const auto& m = model.module(id);
      std::vector<long long> counts;
      for (int d : m.generator_degrees) {
        auto j = static_cast<std::size_t>(d / 2);
        if (counts.size() <= j) counts.resize(j + 1, 0);
        ++counts[j];
      }
      if (GHPolynomial(counts) != g.of(id)) {
        local_ok = false;
        if (local_detail.empty()) local_detail = "cone " + f.describe(id);
      }
      for (std::size_t t = 0; t < m.boundary_reduced_dims.size(); ++t)
        if (static_cast<int>(2 * t) >= f.cone(id).dim && m.boundary_reduced_dims[t] != 0) {
          purity_ok = false;
          if (purity_detail.empty()) purity_detail = "cone " + f.describe(id);
        }
    }
    detail::add_check(r, "local_g_agreement", local_ok, local_detail);
    detail::add_check(r, "local_purity", purity_ok, purity_detail);
  }
  {
    bool ok = true;
    for (std::size_t t = 0; t < ih.section_dims.size(); ++t)
      ok = ok && ih.section_dims[t] == free_module_dim(h, n, static_cast<int>(2 * t));
    detail::add_check(r, "hilbert_identity", ok, ok ? "" : "OUT-OF-MODEL");
    if (!ok) r.warnings.push_back("OUT-OF-MODEL: global sections are not free over the polynomial ring");
  }
  detail::add_check(r, "restriction_diamonds", restrictions_commute(model));
  r.timings.emplace_back("local_checks", clock.lap());

  auto classes = all_cycle_classes(model, ih);
  std::vector<GradedSubspace> hodge;
  for (std::size_t k = 0; k <= n; ++k) hodge.push_back(hodge_space(classes, ih, static_cast<int>(k)));
  std::optional<SRRing> sr;
  if (f.flags().simplicial) sr.emplace(f);
  for (std::size_t k = 0; k <= n; ++k) {
    DegreeRow row;
    row.k = static_cast<int>(k);
    row.d_gpoly = h[k];
    row.d_sheaf = sheaf_dims[k];
    if (sr) row.d_sr = sr->dims()[k];
    row.hodge_rank = hodge[k].dim();
    row.verdict = static_cast<long long>(hodge[k].dim()) == h[k] ? Verdict::Pass : Verdict::Fail;
    r.degrees.push_back(row);
  }
  bool any_zero = false;
  for (const auto& c : classes) {
    r.classes.push_back({c.cone, f.cone(c.cone).rays, c.k, detail::multiplicity_label(f, c.cone),
                         cone_multiplicity(f, c.cone).is_smooth, c.supported_dim, c.subspace.dim()});
    if (c.is_zero()) {
      any_zero = true;
      r.warnings.push_back("WARN zero cycle class for cone " + f.describe(c.cone));
    }
  }
  detail::add_check(r, "no_zero_classes", !any_zero);
  if (n <= 3)
    detail::add_check(r, "divisor_spanning", static_cast<long long>(hodge[1].dim()) == h[1]);
  else
    detail::skip_check(r, "divisor_spanning", "only asserted for n <= 3");
  r.timings.emplace_back("cycle_classes", clock.lap());

  if (sr) {
    bool triple = true, span = true, monomial = true, pipeline = true;
    for (std::size_t k = 0; k <= n; ++k) {
      triple = triple && static_cast<long long>(sr->dims()[k]) == h[k];
      const auto& piece = sr->piece(static_cast<int>(k));
      auto mono = sr_cycle_monomials(*sr, static_cast<int>(k));
      std::vector<RationalVector> vs;
      for (const auto& [id, v] : mono) vs.push_back(v);
      span = span && echelon_basis(vs, piece.dim()).size() == sr->dims()[k];

      // Φ: standard monomials -> classes of Courant products in Ē^{2k}
      const auto& ipiece = ih.pieces[k];
      RationalMatrix phi(ipiece.dim(), piece.dim());
      for (std::size_t c = 0; c < piece.dim(); ++c) {
        const auto& e = piece.basis.monomials[piece.quotient.lifts[c]];
        auto img = ipiece.project(section_from_piecewise(model, ipiece.sections, detail::courant_monomial(f, e)));
        for (std::size_t i = 0; i < img.size(); ++i) phi(i, c) = img[i];
      }
      pipeline = pipeline && rank(phi) == piece.dim() && piece.dim() == ipiece.dim();
      for (const auto& c : classes) {
        if (c.k != static_cast<int>(k)) continue;
        auto product = ipiece.project(
            section_from_piecewise(model, ipiece.sections, detail::courant_monomial(f, sr->cone_monomial(c.cone))));
        monomial = monomial && c.principal && detail::proportional_nonzero(*c.principal, product);
        pipeline = pipeline && c.principal && detail::proportional_nonzero(*c.principal, phi.apply(mono.at(c.cone)));
      }
    }
    detail::add_check(r, "sr_triple_oracle", triple);
    detail::add_check(r, "sr_monomial_span", span);
    detail::add_check(r, "monomial_consistency", monomial);
    detail::add_check(r, "sr_pipeline_consistency", pipeline);
  } else {
    for (auto name : {"sr_triple_oracle", "sr_monomial_span", "monomial_consistency", "sr_pipeline_consistency"})
      detail::skip_check(r, name, "fan is not simplicial");
  }
  r.timings.emplace_back("stanley_reisner", clock.lap());

  if (opt.skip_lefschetz) {
    detail::skip_check(r, "hard_lefschetz", "skipped on request");
    detail::skip_check(r, "lefschetz_cycle_compatibility", "skipped on request");
  } else {
    auto op = lefschetz_operator(model, ih, *psi);
    auto ranks = lefschetz_ranks(op, ih);
    bool ok = true;
    for (std::size_t k = 0; k < ranks.size(); ++k) {
      r.lefschetz.push_back({static_cast<int>(k), static_cast<int>(n - 2 * k), ranks[k], h[k]});
      ok = ok && r.lefschetz.back().ok();
    }
    detail::add_check(r, "hard_lefschetz", ok);
    if (n == 3 && f.flags().simplicial) {
      // ψ_pos = m_σ0 - ψ is a nonnegative combination of Courant functions
      const ConeId s0 = f.maximal_cones().front();
      PiecewisePolynomial pos(f, 2);
      for (auto s : f.maximal_cones()) pos.set(s, psi->on(s0) - psi->on(s));
      auto lpos = multiplication_operator(model, ih, pos);
      detail::add_check(r, "lefschetz_cycle_compatibility", hodge[2].contains(apply(lpos, hodge[1])));
    } else {
      detail::skip_check(r, "lefschetz_cycle_compatibility", "only asserted for simplicial n = 3");
    }
    r.timings.emplace_back("lefschetz", clock.lap());
  }
  return r;
}

/// Route without the sheaf: g/h targets, and for simplicial fans the
/// Stanley–Reisner monomial classes decide the verdict.
inline VerificationReport gpoly_only_report(const Fan& f) {
  detail::Stopwatch clock;
  auto r = start_report(f);
  const auto n = static_cast<std::size_t>(f.dim());
  auto h = h_vector(f);
  detail::add_check(r, "palindromy", is_palindromic(h));
  detail::add_check(r, "unimodality", is_unimodal_to_middle(h));
  detail::add_check(r, "h_endpoints", h.front() == 1 && h.back() == 1);
  r.timings.emplace_back("gpoly", clock.lap());
  std::optional<SRRing> sr;
  if (f.flags().simplicial) {
    sr.emplace(f);
    detail::add_check(r, "f_vector_h", detail::f_vector_h(f) == h);
  } else {
    detail::skip_check(r, "f_vector_h", "fan is not simplicial");
  }
  for (std::size_t k = 0; k <= n; ++k) {
    DegreeRow row;
    row.k = static_cast<int>(k);
    row.d_gpoly = h[k];
    if (sr) {
      const auto kk = static_cast<int>(k);
      row.d_sr = sr->dims()[k];
      std::vector<RationalVector> vs;
      for (const auto& [id, v] : sr_cycle_monomials(*sr, kk)) {
        vs.push_back(v);
        r.classes.push_back({id, f.cone(id).rays, kk, detail::multiplicity_label(f, id),
                             cone_multiplicity(f, id).is_smooth, std::nullopt, is_zero(v) ? 0u : 1u});
      }
      row.hodge_rank = echelon_basis(vs, sr->piece(kk).dim()).size();
      row.verdict = static_cast<long long>(*row.d_sr) == h[k] && static_cast<long long>(*row.hodge_rank) == h[k]
                        ? Verdict::Pass
                        : Verdict::Fail;
    }
    r.degrees.push_back(row);
  }
  if (sr) {
    bool triple = true;
    for (std::size_t k = 0; k <= n; ++k) triple = triple && static_cast<long long>(sr->dims()[k]) == h[k];
    detail::add_check(r, "sr_triple_oracle", triple, "sheaf skipped; gpoly and Stanley–Reisner only");
  } else {
    r.warnings.push_back("UNDETERMINED: non-simplicial fan and the sheaf route was skipped");
  }
  r.timings.emplace_back("stanley_reisner", clock.lap());
  return r;
}

inline VerificationReport verify_hodge(const Fan& f, const PipelineOptions& opt = {}) {
  if (opt.skip_sheaf) return gpoly_only_report(f);
  if (opt.degree_bound && (*opt.degree_bound < 2 * f.dim() || *opt.degree_bound % 2 != 0))
    throw DegreeBoundTooLow("degree bound must be even and at least 2n");
  detail::Stopwatch clock;
  auto model = build_minimal_extension_sheaf(f, opt.degree_bound);
  double build = clock.lap();
  auto r = rank_check(model, opt);
  r.timings.insert(r.timings.begin(), {"sheaf_build", build});
  return r;
}

// ---- rendering ----

namespace detail {

inline std::string opt_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }
inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string ray_list(const RaySet& rays) {
  std::string s;
  for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? "," : "") + std::to_string(rays[i]);
  return s.empty() ? "-" : s;
}

}  // namespace detail

inline constexpr const char* kIndexConvention =
    "k is half the cohomological degree: row k describes IH^{2k}, and L^{n-2k} maps IH^{2k} onto IH^{2(n-k)}";

inline std::string render_text(const VerificationReport& r, bool with_timings = true) {
  using detail::opt_str;
  using detail::yes_no;
  std::ostringstream os;
  os << "fan name=" << (r.fan_name.empty() ? "-" : r.fan_name) << " n=" << r.n << " rays=" << r.ray_count
     << " cones=" << r.cone_count << " complete=" << yes_no(r.complete) << " simplicial=" << yes_no(r.simplicial)
     << " polytopal=" << yes_no(r.polytopal) << " empirical=" << yes_no(r.empirical) << "\n";
  os << "convention " << kIndexConvention << "\n";
  if (r.empirical) os << "note EMPIRICAL: n >= 4, the verdict is a computation, not a known theorem\n";
  for (const auto& d : r.degrees)
    os << "k=" << d.k << " d_gpoly=" << d.d_gpoly << " d_sheaf=" << opt_str(d.d_sheaf) << " d_sr=" << opt_str(d.d_sr)
       << " hodge_rank=" << opt_str(d.hodge_rank) << " verdict=" << to_string(d.verdict) << "\n";
  for (const auto& c : r.classes)
    os << "class cone=" << c.cone << " rays=" << detail::ray_list(c.rays) << " k=" << c.k
       << " multiplicity=" << c.multiplicity.value_or("-") << " smooth=" << yes_no(c.smooth)
       << " supported_dim=" << opt_str(c.supported_dim) << " class_dim=" << c.class_dim << "\n";
  for (const auto& l : r.lefschetz)
    os << "lefschetz k=" << l.k << " power=" << l.power << " rank=" << l.rank << " expected=" << l.expected
       << " ok=" << yes_no(l.ok()) << "\n";
  for (const auto& p : r.properties) {
    os << "property name=" << p.name << " status=" << to_string(p.status);
    if (!p.detail.empty()) os << " detail=" << p.detail;
    os << "\n";
  }
  for (const auto& w : r.warnings) os << "warning " << w << "\n";
  os << "verdict=" << to_string(r.verdict()) << " properties=" << (r.properties_hold() ? "hold" : "fail") << "\n";
  if (with_timings)
    for (const auto& [stage, seconds] : r.timings) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", seconds);
      os << "timing stage=" << stage << " seconds=" << buf << "\n";
    }
  return os.str();
}

inline nlohmann::ordered_json to_json(const VerificationReport& r) {
  using nlohmann::ordered_json;
  auto opt = [](const std::optional<std::size_t>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["fan"] = {{"name", r.fan_name},       {"n", r.n},
              {"rays", r.ray_count},      {"cones", r.cone_count},
              {"complete", r.complete},   {"simplicial", r.simplicial},
              {"polytopal", r.polytopal}, {"empirical", r.empirical}};
  j["index_convention"] = kIndexConvention;
  j["degrees"] = ordered_json::array();
  for (const auto& d : r.degrees)
    j["degrees"].push_back({{"k", d.k},
                            {"d_gpoly", d.d_gpoly},
                            {"d_sheaf", opt(d.d_sheaf)},
                            {"d_sr", opt(d.d_sr)},
                            {"hodge_rank", opt(d.hodge_rank)},
                            {"verdict", to_string(d.verdict)}});
  j["cycle_classes"] = ordered_json::array();
  for (const auto& c : r.classes)
    j["cycle_classes"].push_back({{"cone", c.cone},
                                  {"rays", c.rays},
                                  {"k", c.k},
                                  {"multiplicity", c.multiplicity ? ordered_json(*c.multiplicity) : ordered_json()},
                                  {"smooth", c.smooth},
                                  {"supported_dim", opt(c.supported_dim)},
                                  {"class_dim", c.class_dim}});
  j["lefschetz"] = ordered_json::array();
  for (const auto& l : r.lefschetz)
    j["lefschetz"].push_back(
        {{"k", l.k}, {"power", l.power}, {"rank", l.rank}, {"expected", l.expected}, {"ok", l.ok()}});
  j["properties"] = ordered_json::array();
  for (const auto& p : r.properties)
    j["properties"].push_back({{"name", p.name}, {"status", to_string(p.status)}, {"detail", p.detail}});
  j["warnings"] = r.warnings;
  j["verdict"] = to_string(r.verdict());
  j["properties_hold"] = r.properties_hold();
  return j;
}

inline std::string render_machine(const VerificationReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace ihc
