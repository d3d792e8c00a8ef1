#include "revolv/serialize.hpp"

#include "revolv/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace revolv {

using nlohmann::json;

namespace {

// NaN and infinities have no JSON spelling; they become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

json bump_json(const BumpTerm& b) {
  return json{{"center", b.center}, {"half_width", b.half_width}, {"amplitude", b.amplitude}};
}

BumpTerm bump_from(const json& j) {
  return BumpTerm{j.at("center").get<double>(), j.at("half_width").get<double>(),
                  j.at("amplitude").get<double>()};
}

json profile_json(const Profile& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    json term = bump_json(t.bump);
    term["sign"] = t.sign;
    term["reflected"] = t.reflected;
    terms.push_back(std::move(term));
  }
  const bool branch = p.kind() == Profile::Kind::LevelBranch;
  return json{{"variant", branch ? "level_branch" : "term_sum"},
              {"base", "semicircle"},
              {"terms", std::move(terms)},
              {"shift", branch ? bump_json(p.shift()) : json(nullptr)}};
}

Profile profile_from(const json& j) {
  const auto base = j.value("base", std::string("semicircle"));
  if (base != "semicircle") throw DomainError("unknown profile base '" + base + "'");
  const auto variant = j.at("variant").get<std::string>();
  if (variant == "level_branch") return klee_profile(bump_from(j.at("shift")));
  if (variant != "term_sum") throw DomainError("unknown profile variant '" + variant + "'");
  std::vector<PerturbationTerm> terms;
  for (const auto& t : j.value("terms", json::array())) {
    terms.push_back(PerturbationTerm{bump_from(t), t.at("sign").get<int>(),
                                     t.value("reflected", false)});
  }
  return terms.empty() ? Profile::semicircle() : Profile::term_sum(std::move(terms));
}

json body_json(const BodyOfRevolution& b) {
  return json{{"d", b.dimension()}, {"lambda", b.scale()}, {"profile", profile_json(b.profile())}};
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed document: ") + e.what());
  }
}

json claims_json(const std::vector<ClaimResult>& claims) {
  json out = json::array();
  for (const auto& c : claims) {
    out.push_back(json{{"name", c.name},
                       {"pass", c.pass},
                       {"value", number(c.value)},
                       {"threshold", number(c.threshold)},
                       {"lower_bound", c.lower_bound}});
  }
  return out;
}

template <class Field>
json column(const std::vector<FunctionalRow>& rows, Field field) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(number(r.*field));
  return out;
}

json axis_json(const AxisFunctionals& a) {
  return json{{"A", number(a.central)}, {"M", number(a.maximal)}, {"P", number(a.projection)}};
}

}  // namespace

std::string profile_to_json(const Profile& profile, int indent) {
  return profile_json(profile).dump(indent);
}

Profile profile_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] { return profile_from(j); });
}

std::string body_to_json(const BodyOfRevolution& body, int indent) {
  return body_json(body).dump(indent);
}

BodyOfRevolution body_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] {
    return BodyOfRevolution(j.at("d").get<int>(), profile_from(j.at("profile")),
                            j.value("lambda", 1.0));
  });
}

std::string pair_to_json(const BonnesenPair& pair, int indent) {
  const auto& x = pair.solution.coefficients;
  const auto& red = pair.solution.reduced_residuals;
  const auto& full = pair.solution.full_residuals;
  json j{{"d", pair.plus.dimension()},
         {"eps", pair.eps},
         {"delta", pair.system.delta()},
         {"coefficients", numbers(std::vector<double>(x.data(), x.data() + x.size()))},
         {"reduced_residuals", numbers(std::vector<double>(red.data(), red.data() + red.size()))},
         {"moment_residuals", numbers(std::vector<double>(full.data(), full.data() + full.size()))},
         {"plus", body_json(pair.plus)},
         {"minus", body_json(pair.minus)}};
  return j.dump(indent);
}

std::string report_to_json(const VerificationReport& r, int indent) {
  const auto& gap = r.max_rel_discrepancy;
  json j{{"grid", numbers(r.grid)},
         {"A1", column(r.rows1, &FunctionalRow::central)},
         {"A2", column(r.rows2, &FunctionalRow::central)},
         {"M1", column(r.rows1, &FunctionalRow::maximal)},
         {"M2", column(r.rows2, &FunctionalRow::maximal)},
         {"P1", column(r.rows1, &FunctionalRow::projection)},
         {"P2", column(r.rows2, &FunctionalRow::projection)},
         {"h_star1", column(r.rows1, &FunctionalRow::intercept)},
         {"h_star2", column(r.rows2, &FunctionalRow::intercept)},
         {"axis1", axis_json(r.axis1)},
         {"axis2", axis_json(r.axis2)},
         {"max_rel_discrepancy",
          {{"A", number(gap.central)}, {"M", number(gap.maximal)}, {"P", number(gap.projection)}}},
         {"concavity_margin", {number(r.concavity_margin1), number(r.concavity_margin2)}},
         {"chord_bounds_pass", r.chord_bounds_pass},
         {"mirror_identity_residual", number(r.mirror_identity_residual)},
         {"support_pair_gap", number(r.support_pair_gap)},
         {"radial_pair_gap", number(r.radial_pair_gap)},
         {"section_power_residual", number(r.section_power_residual)},
         {"cross_max_residual", number(r.cross_max_residual)},
         {"essential_difference",
          {{"linf_direct", number(r.linf_direct)}, {"linf_mirror", number(r.linf_mirror)}}},
         {"reduced_moment_residuals", numbers(r.reduced_moment_residuals)},
         {"moment_residuals", numbers(r.moment_residuals)},
         {"claims", claims_json(r.claims)},
         {"pass", r.pass}};
  return j.dump(indent);
}

std::string report_to_json(const KleeReport& r, int indent) {
  json j{{"grid", numbers(r.grid)},
         {"M", numbers(r.maximal)},
         {"M_distribution", numbers(r.distribution)},
         {"level", numbers(r.levels)},
         {"level_error", numbers(r.level_errors)},
         {"target", number(r.target)},
         {"axis_M", number(r.axis_maximal)},
         {"max_rel_deviation", number(r.max_rel_deviation)},
         {"max_rel_distribution_gap", number(r.max_rel_distribution_gap)},
         {"max_level_error", number(r.max_level_error)},
         {"asymmetry", number(r.asymmetry)},
         {"concavity_margin", number(r.concavity_margin)},
         {"claims", claims_json(r.claims)},
         {"pass", r.pass}};
  return j.dump(indent);
}

}  // namespace revolv
