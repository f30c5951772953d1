#include "mbennett/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mbennett {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

template <class S>
S convert(const Rational& x) {
  if constexpr (ScalarTraits<S>::kExact) {
    return x;
  } else {
    return x.get_d();
  }
}

template <class S>
Quaternion<S> convert(const Quaternion<Rational>& q) {
  return {convert<S>(q.w), convert<S>(q.x), convert<S>(q.y), convert<S>(q.z)};
}

template <class S>
ExtParam<S> convert(const ExtParam<Rational>& p) {
  return p.is_inf() ? ExtParam<S>() : ExtParam<S>(convert<S>(p.value()));
}

ExtParam<double> to_double_param(const ExtParam<Rational>& p) { return convert<double>(p); }

template <class S>
struct Built {
  MechanismSpec<S> spec;
  std::optional<Dualization<S>> dualization;
};

template <class S>
Built<S> build_from_seed(const Seed& seed, double tol) {
  Built<S> out;
  switch (seed.mode) {
    case SeedMode::kPrimal:
      out.spec = MechanismSpec<S>::from_pair(
          alt_factorize(convert<S>(seed.h), convert<S>(seed.m), convert<S>(seed.n), tol));
      break;
    case SeedMode::kDual: {
      const DualSeed<S> ds{{convert<S>(seed.h), convert<S>(seed.h_d)},
                           {convert<S>(seed.m), convert<S>(seed.m_d)},
                           convert<S>(seed.n)};
      out.dualization = dualize_factorization(ds, tol);
      out.spec = MechanismSpec<S>::from_pair(out.dualization->pair);
      break;
    }
    case SeedMode::kCanonical: {
      std::array<S, 10> a;
      const auto r = seed.params.to_array();
      for (int i = 0; i < 10; ++i) a[i] = convert<S>(r[i]);
      out.spec = build_canonical(CanonicalParams<S>::from_array(a), tol);
      break;
    }
  }
  return out;
}

void check_mode(const Seed& seed, const Options& opts) {
  if (opts.mode && *opts.mode != seed.mode) {
    throw Error(ErrorCode::kInvalidInput, "seed mode is '" + std::string(seed_mode_name(seed.mode)) +
                                              "' but '" +
                                              std::string(seed_mode_name(*opts.mode)) +
                                              "' was requested");
  }
}

Json header(const std::string& command, const Seed& seed, Arithmetic arith) {
  return {{"version", kVersion},
          {"command", command},
          {"mode", seed_mode_name(seed.mode)},
          {"arithmetic", arithmetic_name(arith)}};
}

// Distance between two lines as unit-direction representatives, up to sign.
double line_gap(const Line<double>& a, const Line<double>& b) {
  const auto ca = normalized(a).coords();
  const auto cb = normalized(b).coords();
  double plus = 0.0, minus = 0.0;
  for (int i = 0; i < 6; ++i) {
    plus = std::max(plus, std::abs(ca[i] - cb[i]));
    minus = std::max(minus, std::abs(ca[i] + cb[i]));
  }
  return std::min(plus, minus);
}

template <class S>
Json factor_impl(const Seed& seed, const Options& opts, Arithmetic arith) {
  if (seed.mode == SeedMode::kCanonical) {
    throw Error(ErrorCode::kInvalidInput, "factor needs a primal or dual seed");
  }
  const Built<S> built = build_from_seed<S>(seed, opts.tol);
  const AltFactorizationPair<S> pair = built.spec.pair();
  Json out = header("factor", seed, arith);
  out.update(pair_to_json(pair));
  out["report"] = report_to_json(verify_alternating(pair, opts.tol));
  if (built.dualization) {
    out["dual_system"] = system_to_json(built.dualization->system, built.dualization->solution);
  }
  return out;
}

struct Candidate {
  ConfigPoint<double> point;
  Json repr;
  bool predicted = false;
};

template <class S>
ExtParam<double> to_double_ext(const ExtParam<S>& p) {
  return p.is_inf() ? ExtParam<double>() : ExtParam<double>(to_double(p.value()));
}

bool same_param(const ExtParam<double>& a, const ExtParam<double>& b) {
  if (a.is_inf() || b.is_inf()) return a.is_inf() == b.is_inf();
  return std::abs(a.value() - b.value()) <= 1e-9 * std::max(1.0, std::abs(a.value()));
}

bool same_point(const ConfigPoint<double>& a, const ConfigPoint<double>& b) {
  return same_param(a.s, b.s) && same_param(a.t, b.t);
}

template <class S>
MechanismOutput mechanism_impl(const Seed& seed, const Options& opts, Arithmetic arith) {
  const double tol = opts.tol;
  const Built<S> built = build_from_seed<S>(seed, tol);
  const MechanismSpec<S>& spec = built.spec;
  const MechanismSpec<double> spec_d = as_double(spec);
  const std::vector<ExtParam<Rational>> grid = parse_grid(opts.grid);
  const ExtParam<S> inf_s;

  MechanismOutput out;
  out.mechanism = header("mechanism", seed, arith);
  out.mechanism.update(spec_to_json(spec));

  Report report;
  Json extras;

  // Factorization and motion-polynomial conditions.
  const AltFactorizationPair<S> pair = spec.pair();
  for (auto c : verify_alternating(pair, tol).checks) {
    c.name = "factorization." + c.name;
    report.checks.push_back(c);
  }

  // Trajectory and closure on the grid.
  const BiPoly<S> left = expand(pair.left);
  const BiPoly<S> right = expand(pair.right);
  const AltFactorizationPair<double> pair_d = spec_d.pair();
  const BiPoly<double> left_d = expand(pair_d.left);
  const BiPoly<double> right_d = expand(pair_d.right);
  const AxisFrame<double> zero = as_double(zero_config_axes(spec));
  out.trajectory = Json::array();
  bool products_agree = true;
  double product_gap = 0.0;
  double closure_gap = 0.0;
  int degenerate = 0;
  for (const auto& s : grid) {
    for (const auto& t : grid) {
      Json row{{"s", ext_to_json(convert<S>(s))}, {"t", ext_to_json(convert<S>(t))}};
      const ConfigPoint<double> p{to_double_param(s), to_double_param(t)};
      const auto vl = peval(left, convert<S>(s), convert<S>(t));
      const auto vr = peval(right, convert<S>(s), convert<S>(t));
      if constexpr (ScalarTraits<S>::kExact) {
        products_agree = products_agree && vl == vr;
      } else {
        const auto a = vl.to_array();
        const auto b = vr.to_array();
        double scale = 1.0;
        for (int k = 0; k < 8; ++k) scale = std::max(scale, std::abs(a[k]));
        for (int k = 0; k < 8; ++k) product_gap = std::max(product_gap, std::abs(a[k] - b[k]) / scale);
        products_agree = product_gap <= tol;
      }
      try {
        const AxisFrame<double> f = axis_pose(spec_d, p);
        Json axes = Json::array();
        for (const auto& a : f.axes) axes.push_back(line_to_json(a));
        row["axes"] = axes;
        const auto cl = peval(left_d, p.s, p.t);
        const auto cr = peval(right_d, p.s, p.t);
        closure_gap = std::max(closure_gap, line_gap(f[AxisId::kN], act_on_line(cr, zero[AxisId::kN])));
        closure_gap =
            std::max(closure_gap, line_gap(f[AxisId::kHp], act_on_line(cl, zero[AxisId::kHp])));
      } catch (const Error& e) {
        ++degenerate;
        row["axes"] = nullptr;
        row["error"] = e.what();
      }
      out.trajectory.push_back(row);
    }
  }
  report.add("closure.products", products_agree, product_gap,
             "both factorizations evaluate to the same dual quaternion at every grid point");
  report.add("closure.axes", degenerate == 0 && closure_gap <= tol, closure_gap,
             "axis N from the left chain and H' from the right chain agree with the full "
             "product of the other factorization applied to the zero-configuration axis");

  // Chain structure: H and N' fixed, L depends on t only, M' on s only.
  {
    bool ok = true;
    const AxisFrame<S> ref = axis_pose(spec, ConfigPoint<S>{inf_s, inf_s});
    double worst = 0.0;
    for (const auto& s : grid) {
      const AxisFrame<S> s_only = axis_pose(spec, ConfigPoint<S>{convert<S>(s), inf_s});
      for (const auto& t : grid) {
        const AxisFrame<S> f = axis_pose(spec, ConfigPoint<S>{convert<S>(s), convert<S>(t)});
        const AxisFrame<S> t_only = axis_pose(spec, ConfigPoint<S>{inf_s, convert<S>(t)});
        const std::array<std::pair<const Line<S>*, const Line<S>*>, 4> cmp{
            std::pair{&f[AxisId::kH], &ref[AxisId::kH]},
            std::pair{&f[AxisId::kNp], &ref[AxisId::kNp]},
            std::pair{&f[AxisId::kL], &t_only[AxisId::kL]},
            std::pair{&f[AxisId::kMp], &s_only[AxisId::kMp]}};
        for (const auto& [a, b] : cmp) {
          ok = ok && projectively_equal(*a, *b, tol);
          if constexpr (!ScalarTraits<S>::kExact) worst = std::max(worst, line_gap(*a, *b));
        }
      }
    }
    report.add("frame.structure", ok, worst,
               "H and N' are constant, L depends only on t and M' only on s");
  }

  // DH parameters in the zero configuration.
  try {
    const DHTable dh = dh_parameters(zero, tol);
    double max_offset = 0.0, opp_d = 0.0, opp_a = 0.0;
    for (double o : dh.offsets) max_offset = std::max(max_offset, std::abs(o));
    for (int i = 0; i < 4; ++i) {
      opp_d = std::max(opp_d, std::abs(dh.pairs[i].distance - dh.pairs[i + 4].distance));
      opp_a = std::max(opp_a, std::abs(dh.pairs[i].angle - dh.pairs[i + 4].angle));
    }
    report.add("dh.offsets_zero", max_offset <= tol, max_offset, "all eight offsets vanish");
    report.add("dh.opposite_distances", opp_d <= tol, opp_d, "opposite distances are equal");
    report.add("dh.opposite_angles", opp_a <= tol, opp_a, "opposite angles are equal");
    if (spec.canonical) {
      const ClosedFormMatch m = match_closed_form(dh, as_double(dh_closed_form(*spec.canonical)), tol);
      report.add("dh.closed_form_distances", m.distance_error <= tol, m.distance_error,
                 "measured distances equal the closed-form |d1|..|d4| as multisets");
      report.add("dh.closed_form_cos2", m.cos2_error <= tol, m.cos2_error,
                 "measured squared cosines equal the closed-form values as multisets");
      if (m.assignment) extras["dh_assignment"] = *m.assignment;
    }
  } catch (const Error& e) {
    report.add("dh.table", false, 0.0, std::string("DH table unavailable: ") + e.what());
  }

  // Aligned configurations among the grid plus the predicted points.
  try {
    const auto predicted = aligned_configs(spec, tol);
    std::vector<Candidate> candidates;
    for (const auto& s : grid) {
      for (const auto& t : grid) {
        candidates.push_back({{to_double_param(s), to_double_param(t)},
                              {{"s", ext_to_json(convert<S>(s))}, {"t", ext_to_json(convert<S>(t))}},
                              false});
      }
    }
    // Exact predictions print in the seed's arithmetic, numeric ones as floats.
    const bool exact = spec.canonical.has_value();
    for (const auto& p : predicted) {
      const ConfigPoint<double> pd{to_double_ext(p.s), to_double_ext(p.t)};
      auto it = std::find_if(candidates.begin(), candidates.end(),
                             [&](const Candidate& c) { return same_point(c.point, pd); });
      if (it != candidates.end()) {
        it->predicted = true;
        continue;
      }
      candidates.push_back({pd,
                            exact ? Json{{"s", ext_to_json(p.s)}, {"t", ext_to_json(p.t)}}
                                  : Json{{"s", ext_to_json(pd.s)}, {"t", ext_to_json(pd.t)}},
                            true});
    }
    Json aligned = Json::array();
    int hits = 0, predicted_hits = 0;
    for (const auto& c : candidates) {
      bool ok = false;
      try {
        ok = frame_aligned(axis_pose(spec_d, c.point), tol);
      } catch (const Error&) {
      }
      if (!ok) continue;
      ++hits;
      if (c.predicted) ++predicted_hits;
      aligned.push_back(c.repr);
    }
    extras["aligned_points"] = aligned;
    extras["predicted_source"] = exact ? "closed form" : "numeric search";
    report.add("alignment.four_points",
               predicted.size() == 4 && hits == 4 && predicted_hits == 4, hits,
               "exactly the four predicted configurations have all eight axes on one common "
               "perpendicular");
  } catch (const Error& e) {
    report.add("alignment.four_points", false, 0.0,
               std::string("aligned configurations unavailable: ") + e.what());
  }

  // Bennett sub-mechanisms.
  std::vector<double> finite;
  for (const auto& g : grid)
    if (!g.is_inf()) finite.push_back(g.value().get_d());
  try {
    double spread = 0.0;
    for (BennettKind kind : {BennettKind::kT, BennettKind::kS}) {
      for (double v : finite) {
        const BennettRatio r = bennett_ratio(bennett_sub(spec_d, kind, v), tol);
        spread = std::max(spread, r.spread / std::max(1.0, r.value));
      }
    }
    report.add("bennett.ratio_constant", spread <= tol, spread,
               "sin(angle)/distance is the same for all four consecutive pairs of each "
               "sub-mechanism");
    if (spec_d.canonical) {
      double worst = 0.0;
      for (double v : finite) {
        const double measured = bennett_ratio(bennett_sub(spec_d, BennettKind::kT, v), tol).value;
        const double closed = std::abs(bennett_ratio_closed(*spec_d.canonical, v));
        worst = std::max(worst, std::abs(measured - closed) / std::max(closed, 1e-300));
      }
      report.add("bennett.closed_form", worst <= 1e-8, worst,
                 "the measured t-Bennett ratio equals the closed-form degree-four rational "
                 "function of s");
    }
  } catch (const Error& e) {
    report.add("bennett.ratio_constant", false, 0.0,
               std::string("Bennett ratio unavailable: ") + e.what());
  }

  out.report = header("mechanism", seed, arith);
  out.report["tol"] = tol;
  out.report["grid_size"] = grid.size();
  out.report.update(report_to_json(report));
  out.report.update(extras);
  return out;
}

template <class S>
Json dh_impl(const Seed& seed, const Options& opts, Arithmetic arith) {
  const Built<S> built = build_from_seed<S>(seed, opts.tol);
  const DHTable dh = dh_parameters(as_double(zero_config_axes(built.spec)), opts.tol);
  Json out = header("dh", seed, arith);
  Json pairs = Json::array();
  for (const auto& p : dh.pairs) {
    pairs.push_back({{"from", axis_name(p.from)},
                     {"to", axis_name(p.to)},
                     {"distance", p.distance},
                     {"angle", p.angle},
                     {"cos2", p.cos2}});
  }
  Json offsets = Json::array();
  double max_offset = 0.0;
  for (int i = 0; i < 8; ++i) {
    offsets.push_back({{"joint", axis_name(kLoopOrder[i])}, {"offset", dh.offsets[i]}});
    max_offset = std::max(max_offset, std::abs(dh.offsets[i]));
  }
  out["pairs"] = pairs;
  out["offsets"] = offsets;
  out["max_offset"] = max_offset;
  out["offsets_zero"] = max_offset <= opts.tol;
  if (built.spec.canonical) {
    const ClosedFormDH<S> c = dh_closed_form(*built.spec.canonical, opts.tol);
    const ClosedFormMatch m = match_closed_form(dh, as_double(c), opts.tol);
    Json cf;
    Json d = Json::array(), c2 = Json::array();
    for (int i = 0; i < 4; ++i) {
      d.push_back(scalar_to_json(c.distance[i]));
      c2.push_back(scalar_to_json(c.cos2[i]));
    }
    cf["distance"] = d;
    cf["cos2"] = c2;
    cf["phi"] = scalar_to_json(c.phi);
    cf["psi"] = scalar_to_json(c.psi);
    cf["multiset_match"] = m.multiset_match ? "pass" : "fail";
    cf["distance_error"] = m.distance_error;
    cf["cos2_error"] = m.cos2_error;
    if (m.assignment) {
      Json a = Json::array();
      for (int idx : *m.assignment) {
        a.push_back({axis_name(dh.pairs[idx].from), axis_name(dh.pairs[idx].to)});
      }
      cf["assignment"] = a;
    }
    out["closed_form"] = cf;
  }
  return out;
}

}  // namespace

std::vector<ExtParam<Rational>> parse_grid(const std::string& spec) {
  std::vector<ExtParam<Rational>> out;
  auto push = [&](const ExtParam<Rational>& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw Error(ErrorCode::kInvalidInput, "empty item in grid '" + spec + "'");
    if (item == "inf") {
      push(ExtParam<Rational>());
      continue;
    }
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      push(ExtParam<Rational>(ScalarTraits<Rational>::parse(item)));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos) {
      throw Error(ErrorCode::kInvalidInput, "range '" + item + "' must look like a:b:n");
    }
    const Rational a = ScalarTraits<Rational>::parse(trim(item.substr(0, c1)));
    const Rational b = ScalarTraits<Rational>::parse(trim(item.substr(c1 + 1, c2 - c1 - 1)));
    const std::string count = trim(item.substr(c2 + 1));
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(count, &used);
      if (used != count.size()) n = 0;
    } catch (const std::exception&) {
      n = 0;
    }
    if (n < 1) throw Error(ErrorCode::kInvalidInput, "range count in '" + item + "' must be >= 1");
    if (n == 1) {
      push(ExtParam<Rational>(a));
      continue;
    }
    for (int k = 0; k < n; ++k) push(ExtParam<Rational>(Rational(a + (b - a) * k / (n - 1))));
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidInput, "grid is empty");
  return out;
}

Arithmetic resolve_arithmetic(const Seed& seed, const Options& opts) {
  if (opts.arithmetic) return *opts.arithmetic;
  if (seed.arithmetic) return *seed.arithmetic;
  return Arithmetic::kRational;
}

Json run_factor(const Seed& seed, const Options& opts) {
  check_mode(seed, opts);
  const Arithmetic a = resolve_arithmetic(seed, opts);
  return a == Arithmetic::kRational ? factor_impl<Rational>(seed, opts, a)
                                    : factor_impl<double>(seed, opts, a);
}

MechanismOutput run_mechanism(const Seed& seed, const Options& opts) {
  check_mode(seed, opts);
  const Arithmetic a = resolve_arithmetic(seed, opts);
  return a == Arithmetic::kRational ? mechanism_impl<Rational>(seed, opts, a)
                                    : mechanism_impl<double>(seed, opts, a);
}

Json run_dh(const Seed& seed, const Options& opts) {
  check_mode(seed, opts);
  const Arithmetic a = resolve_arithmetic(seed, opts);
  return a == Arithmetic::kRational ? dh_impl<Rational>(seed, opts, a)
                                    : dh_impl<double>(seed, opts, a);
}

}  // namespace mbennett
