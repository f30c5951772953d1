// Acceptance gate: one PASS/FAIL line per criterion.
// Usage: acceptance <path to mbennett_cli> <fixtures dir>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mbennett/dualize.hpp"
#include "mbennett/mechanism.hpp"

using namespace mbennett;

namespace {

using R = Rational;
using QR = Quaternion<R>;
using DQR = DualQuaternion<R>;
using CPD = CanonicalParams<double>;

QR quat(long w, long x, long y, long z) { return {R(w), R(x), R(y), R(z)}; }
DQR dq(const QR& p, const QR& q = QR()) { return {p, q}; }

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << x;
  return ss.str();
}

Outcome criterion1() {
  const Clock clock;
  const AltFactorizationPair<R> p =
      alt_factorize(quat(0, 2, -1, -3), quat(-6, -2, 3, -3), quat(0, 0, -1, 0));
  bool ok = p.l() == dq(quat(0, -1, 1, 0)) && p.np() == dq(quat(0, 0, 1, 0)) &&
            p.mp() == dq(quat(-6, 2, 3, -3)) && p.lp() == dq(quat(0, -1, -1, 0)) &&
            p.hp() == dq(quat(0, -2, -1, -3));
  ok = ok && expand(p.left) == expand(p.right);
  const double t = clock.seconds();
  return {ok && t < 1.0, "coefficients exact, " + fmt(t) + " s"};
}

Outcome criterion2() {
  const Clock clock;
  const DualSeed<R> seed{dq(quat(0, 2, -1, -3), quat(0, 23, -74, 40)),
                         dq(quat(-6, -2, 3, -3), quat(0, -45, -66, -36)), quat(0, 0, -1, 0)};
  const Dualization<R> d = dualize_factorization(seed);
  const auto& p = d.pair;
  bool ok = d.solution.unique();
  ok = ok && p.l().dual == quat(0, -11, -11, 2) && p.n().dual == quat(0, -3, 0, -2) &&
       p.lp().dual == quat(0, 11, -11, -2) && p.np().dual == quat(0, -25, 0, 2);
  ok = ok && p.mp() == dq(quat(-6, 2, 3, -3), quat(0, -21, -22, -36)) &&
       p.hp() == dq(quat(0, -2, -1, -3), quat(0, -1, -118, 40));
  // Residual of every system row, recomputed from the matrix.
  int nonzero_rows = 0;
  for (int r = 0; r < d.system.matrix.rows(); ++r) {
    R acc = -d.system.rhs[r];
    for (int c = 0; c < d.system.matrix.cols(); ++c) acc += d.system.matrix(r, c) * d.solution.values[c];
    if (acc != 0) ++nonzero_rows;
  }
  ok = ok && nonzero_rows == 0 && d.system.matrix.rows() == 40;
  ok = ok && expand(p.left) == expand(p.right);
  const double t = clock.seconds();
  return {ok && t < 1.0, std::to_string(nonzero_rows) + " nonzero residual rows of 40, " + fmt(t) + " s"};
}

Outcome criterion3() {
  const Clock clock;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coeff(-9, 9);
  auto q = [&] { return quat(coeff(rng), coeff(rng), coeff(rng), coeff(rng)); };
  int verified = 0, failed = 0, rejected = 0;
  while (verified + failed < 100) {
    std::optional<AltFactorizationPair<R>> p;
    try {
      p = alt_factorize(q(), q(), q());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kHypothesisViolated && e.code() != ErrorCode::kGenericityViolated &&
          e.code() != ErrorCode::kFlipSingular) {
        throw;
      }
      ++rejected;
      continue;
    }
    if (verify_alternating(*p).all_pass()) {
      ++verified;
    } else {
      ++failed;
    }
  }
  const double t = clock.seconds();
  return {failed == 0 && t < 30.0, std::to_string(verified) + "/100 seeds verified (" +
                                       std::to_string(rejected) + " inadmissible draws skipped), " +
                                       fmt(t) + " s"};
}

// Random canonical parameters with every genericity denominator and the
// DH-relevant quantities bounded away from zero.
std::vector<MechanismSpec<double>> generic_specs(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<MechanismSpec<double>> out;
  while (static_cast<int>(out.size()) < count) {
    std::array<double, 10> a{};
    for (auto& x : a) x = u(rng);
    if (std::abs(a[0]) < 0.3 || std::abs(a[1]) < 0.3 || std::abs(a[4]) < 0.3 ||
        std::abs(a[9]) < 0.3) {
      continue;
    }
    const CPD c = CPD::from_array(a);
    bool small = false;
    for (const auto& [name, v] : canonical_denominators(c)) small = small || std::abs(v) < 1e-2;
    if (small) continue;
    try {
      const MechanismSpec<double> spec = build_canonical(c);
      if (std::abs(dh_closed_form(c).psi) < 1e-2) continue;
      dh_parameters(zero_config_axes(spec));
      out.push_back(spec);
    } catch (const Error&) {
    }
  }
  return out;
}

Outcome criterion4(const std::vector<MechanismSpec<double>>& specs) {
  double offset = 0.0, opp_d = 0.0, opp_a = 0.0, dist_err = 0.0, cos_err = 0.0;
  for (const auto& spec : specs) {
    const DHTable d = dh_parameters(zero_config_axes(spec));
    for (double o : d.offsets) offset = std::max(offset, std::abs(o));
    for (int i = 0; i < 4; ++i) {
      opp_d = std::max(opp_d, std::abs(d.pairs[i].distance - d.pairs[i + 4].distance));
      opp_a = std::max(opp_a, std::abs(d.pairs[i].angle - d.pairs[i + 4].angle));
    }
    const ClosedFormMatch m = match_closed_form(d, as_double(dh_closed_form(*spec.canonical)));
    dist_err = std::max(dist_err, m.distance_error);
    cos_err = std::max(cos_err, m.cos2_error);
  }
  const bool ok = offset < 1e-9 && opp_d <= 1e-9 && opp_a <= 1e-9 && dist_err <= 1e-9 &&
                  cos_err <= 1e-9;
  return {ok, "max offset " + fmt(offset) + ", opposite distance/angle gaps " + fmt(opp_d) + "/" +
                  fmt(opp_a) + ", closed-form multiset errors " + fmt(dist_err) + "/" +
                  fmt(cos_err)};
}

Outcome criterion5(const std::vector<MechanismSpec<double>>& specs) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int bad_specs = 0;
  double worst = 0.0;
  for (const auto& spec : specs) {
    const CPD& c = *spec.canonical;
    std::vector<ExtParam<double>> ss{ExtParam<double>(), c.n0};
    std::vector<ExtParam<double>> ts{ExtParam<double>(), c.mu};
    for (int i = 0; i < 21; ++i) {
      ss.emplace_back(u(rng));
      ts.emplace_back(u(rng));
    }
    int aligned = 0;
    bool expected_all = true;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      for (std::size_t j = 0; j < ts.size(); ++j) {
        const AxisFrame<double> f = axis_pose(spec, ConfigPoint<double>{ss[i], ts[j]});
        const AlignmentResult r = check_alignment(f.axes, 1e-9);
        const bool expected = i < 2 && j < 2;
        if (r.aligned) ++aligned;
        if (expected) {
          expected_all = expected_all && r.aligned;
          worst = std::max(worst, alignment_residual(f.axes, r.normal));
        }
      }
    }
    if (aligned != 4 || !expected_all) ++bad_specs;
  }
  return {bad_specs == 0, std::to_string(specs.size() - bad_specs) + "/" +
                              std::to_string(specs.size()) +
                              " specs with exactly the four predicted aligned points; worst "
                              "residual at them " +
                              fmt(worst)};
}

Outcome criterion6(const std::vector<MechanismSpec<double>>& specs) {
  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst_rel = 0.0, worst_spread = 0.0;
  for (const auto& spec : specs) {
    for (int k = 0; k < 20; ++k) {
      const double s = u(rng);
      const BennettRatio r = bennett_ratio(bennett_sub(spec, BennettKind::kT, s));
      const double tau = std::abs(bennett_ratio_closed(*spec.canonical, s));
      worst_rel = std::max(worst_rel, std::abs(std::abs(r.value) - tau) / tau);
      worst_spread = std::max(worst_spread, r.spread);
    }
  }
  const bool closed_ok = worst_rel <= 1e-8;
  const bool constant_ok = worst_spread <= 1e-9;
  return {closed_ok && constant_ok,
          std::string("closed-form tau(s) ") + (closed_ok ? "matches" : "does not match") +
              " the measured ratio (worst relative error " + fmt(worst_rel) +
              "); ratio constant across the four pairs " + (constant_ok ? "holds" : "fails") +
              " (worst spread " + fmt(worst_spread) + ")"};
}

template <class S>
bool structure_holds(const MechanismSpec<S>& spec, const std::vector<ExtParam<S>>& vals) {
  const ExtParam<S> inf;
  const AxisFrame<S> ref = axis_pose(spec, ConfigPoint<S>{inf, inf});
  for (const auto& s : vals) {
    for (const auto& t : vals) {
      const AxisFrame<S> f = axis_pose(spec, ConfigPoint<S>{s, t});
      const AxisFrame<S> t_only = axis_pose(spec, ConfigPoint<S>{inf, t});
      const AxisFrame<S> s_only = axis_pose(spec, ConfigPoint<S>{s, inf});
      if (!projectively_equal(f[AxisId::kH], ref[AxisId::kH], 1e-9) ||
          !projectively_equal(f[AxisId::kNp], ref[AxisId::kNp], 1e-9) ||
          !projectively_equal(f[AxisId::kL], t_only[AxisId::kL], 1e-9) ||
          !projectively_equal(f[AxisId::kMp], s_only[AxisId::kMp], 1e-9)) {
        return false;
      }
    }
  }
  return true;
}

Outcome criterion7(const std::vector<MechanismSpec<double>>& specs) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int float_ok = 0;
  for (const auto& spec : specs) {
    std::vector<ExtParam<double>> vals{ExtParam<double>()};
    for (int i = 0; i < 4; ++i) vals.emplace_back(u(rng));
    if (structure_holds(spec, vals)) ++float_ok;
  }
  std::uniform_int_distribution<long> small(-5, 5);
  int exact_ok = 0, exact_total = 0;
  auto ratio = [&] {
    R r(small(rng), 1 + std::abs(small(rng)));
    r.canonicalize();
    return r;
  };
  while (exact_total < 5) {
    std::array<R, 10> a;
    for (auto& x : a) x = ratio();
    std::optional<MechanismSpec<R>> spec;
    try {
      spec = build_canonical(CanonicalParams<R>::from_array(a));
    } catch (const Error&) {
      continue;
    }
    std::vector<ExtParam<R>> vals{ExtParam<R>()};
    for (int i = 0; i < 4; ++i) vals.emplace_back(ratio());
    ++exact_total;
    if (structure_holds(*spec, vals)) ++exact_ok;
  }
  return {float_ok == static_cast<int>(specs.size()) && exact_ok == exact_total,
          std::to_string(float_ok) + "/" + std::to_string(specs.size()) + " float specs, " +
              std::to_string(exact_ok) + "/" + std::to_string(exact_total) +
              " exact rational specs on a 5x5 grid"};
}

std::optional<std::string> capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  if (pclose(pipe) != 0) return std::nullopt;
  return out;
}

Outcome criterion8(const std::string& cli, const std::string& fixtures) {
  const std::vector<std::string> runs{
      "factor " + fixtures + "/example_primal.json",
      "factor " + fixtures + "/example_dual.json",
      "dh " + fixtures + "/canonical.json",
      "mechanism " + fixtures + "/canonical.json",
      "mechanism " + fixtures + "/example_dual.json --arithmetic float",
  };
  int identical = 0;
  for (const auto& args : runs) {
    const auto a = capture("'" + cli + "' " + args);
    const auto b = capture("'" + cli + "' " + args);
    if (a && b && !a->empty() && *a == *b) ++identical;
  }
  return {identical == static_cast<int>(runs.size()),
          std::to_string(identical) + "/" + std::to_string(runs.size()) +
              " CLI runs byte-identical on repetition"};
}

Outcome guard(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <mbennett_cli> <fixtures dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string fixtures = argv[2];
  const std::vector<MechanismSpec<double>> specs = generic_specs(10, 4242);

  const std::array<std::pair<const char*, std::function<Outcome()>>, 8> criteria{{
      {"1 primal example (exact)", criterion1},
      {"2 dual example (exact)", criterion2},
      {"3 factorization property suite", criterion3},
      {"4 DH offsets, opposites, closed forms", [&] { return criterion4(specs); }},
      {"5 four aligned configurations", [&] { return criterion5(specs); }},
      {"6 Bennett ratio vs closed-form tau(s)", [&] { return criterion6(specs); }},
      {"7 axis frame structure", [&] { return criterion7(specs); }},
      {"8 CLI determinism", [&] { return criterion8(cli, fixtures); }},
  }};
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const Outcome o = guard(run);
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << "\n";
  }
  return failures == 0 ? 0 : 1;
}
