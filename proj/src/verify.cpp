#include "tracemetric/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>

#include "tracemetric/curvature.hpp"
#include "tracemetric/errors.hpp"
#include "tracemetric/geodesics.hpp"
#include "tracemetric/isometry.hpp"
#include "tracemetric/matrix_io.hpp"
#include "tracemetric/oracle.hpp"
#include "tracemetric/sampling.hpp"

namespace tracemetric::verify {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t criterion_seed(std::uint64_t seed, int id) {
  // splitmix64 finalizer over (seed, id)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(id + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::size_t> orders_or(const Config& cfg, std::vector<std::size_t> fallback) {
  return cfg.orders.empty() ? fallback : cfg.orders;
}

std::vector<std::size_t> signatures(const Config& cfg, std::size_t n) {
  if (cfg.p) {
    if (*cfg.p > n) return {};
    return {*cfg.p};
  }
  std::vector<std::size_t> ps(n + 1);
  for (std::size_t p = 0; p <= n; ++p) ps[p] = p;
  return ps;
}

double rel_diff(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm() / b.frobenius_norm(); }

std::string num(double v) { return io::format_number(v); }

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Runs body, times it, and folds an optional runtime limit into the verdict.
CriterionResult timed(int id, std::string name, double threshold, std::optional<double> limit_seconds,
                      const std::function<void(CriterionResult&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.threshold = threshold;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.details.push_back(std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_seconds && r.seconds >= *limit_seconds) {
    r.passed = false;
    r.details.push_back("runtime limit of " + num(*limit_seconds) + " s exceeded");
  }
  return r;
}

}  // namespace

CriterionResult scalar_curvature(const Config& cfg) {
  return timed(1, "scalar-curvature", 1e-8, 10.0, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 1));
    double worst = 0.0;
    for (std::size_t n : orders_or(cfg, {2, 3, 4, 5})) {
      const double closed = scalar_closed_form(n);
      double last = 0.0;
      double worst_n = 0.0;
      for (std::size_t p : signatures(cfg, n)) {
        for (int k = 0; k < 20; ++k) {
          const ManifoldPoint q = random_point(n, p, rng);
          last = scalar_at(q, ScalarMode::summed);
          worst_n = std::max(worst_n, std::abs(last - closed));
        }
      }
      worst = std::max(worst, worst_n);
      r.details.push_back("n=" + std::to_string(n) + ": scalar " + num(last) + " vs closed form " + num(closed) +
                          " (max error " + num(worst_n) + ")");
    }
    r.measured = worst;
    r.passed = worst < r.threshold;
  });
}

CriterionResult einstein_property(const Config& cfg) {
  return timed(2, "einstein-property", 1e-10, 10.0, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 2));
    double worst = 0.0;
    for (std::size_t n : orders_or(cfg, {2, 3, 4, 5})) {
      for (std::size_t p : signatures(cfg, n)) {
        for (int k = 0; k < 10; ++k) {
          const ManifoldPoint q = random_unit_det_point(n, p, rng);
          const CurvatureReport rep = einstein_check(q, 200, rng());
          worst = std::max(worst, rep.einstein_residual);
        }
      }
    }
    r.measured = worst;
    r.passed = worst < r.threshold;
  });
}

CriterionResult slp2_sectional(const Config& cfg) {
  return timed(3, "slp2-sectional-curvature", 1e-10, std::nullopt, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 3));
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const ManifoldPoint q = random_unit_det_point(2, 2, rng);
      const SymMatrix x = project_tangent_sl(q, random_symmetric(2, rng)).value;
      const SymMatrix y = project_tangent_sl(q, random_symmetric(2, rng)).value;
      worst = std::max(worst, std::abs(sectional(q, x, y) + 0.5));
    }
    r.measured = worst;
    r.passed = worst <= r.threshold;
  });
}

CriterionResult nonpositive_sectional(const Config& cfg) {
  return timed(4, "nonpositive-sectional-curvature", 1e-12, std::nullopt, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 4));
    const std::vector<std::size_t> ns = orders_or(cfg, {2, 3, 4, 5});
    double worst = -1e300;
    for (int k = 0; k < 10000; ++k) {
      const std::size_t n = ns[static_cast<std::size_t>(k) % ns.size()];
      const ManifoldPoint q = random_spd(n, rng);
      const double s = sectional(q, random_symmetric(n, rng), random_symmetric(n, rng));
      worst = std::max(worst, s);
    }
    r.measured = worst;
    r.passed = worst <= r.threshold;
  });
}

CriterionResult geodesic_ode_agreement(const Config& cfg) {
  return timed(5, "geodesic-vs-rk4-oracle", 1e-6, 60.0, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 5));
    double worst = 0.0;
    for (std::size_t n : orders_or(cfg, {2, 3})) {
      const oracle::Chart chart(n);
      for (int k = 0; k < 50; ++k) {
        const ManifoldPoint start = random_spd(n, rng);
        // Random direction at unit speed.
        const SymMatrix raw = random_tangent(start, rng);
        const SymMatrix v = (1.0 / std::sqrt(metric_eval(start, raw, raw))) * raw;
        const Geodesic geo(start, v);
        const oracle::ODEState s0{chart.encode(start.matrix()), chart.encode(v), 0.0};
        const auto path = oracle::integrate_geodesic_path(chart, s0, 1.0, oracle::kDefaultSteps,
                                                          oracle::kDefaultStep, oracle::StepScale::relative);
        const double scale = start.matrix().frobenius_norm();
        for (std::size_t i = 0; i < path.size(); i += 10) {
          const SymMatrix closed = geodesic_at(geo, path[i].t).matrix();
          const double dev = (chart.decode(path[i].position) - closed).frobenius_norm() / scale;
          worst = std::max(worst, dev);
        }
      }
    }
    r.measured = worst;
    r.passed = worst < r.threshold;
  });
}

CriterionResult riemann_vs_oracle(const Config& cfg) {
  return timed(6, "riemann-vs-fd-oracle", 1e-4, std::nullopt, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 6));
    double worst = 0.0;
    for (std::size_t n : orders_or(cfg, {2, 3})) {
      const oracle::Chart chart(n);
      const std::size_t dim = chart.dim();
      for (int k = 0; k < 20; ++k) {
        const ManifoldPoint q = random_spd(n, rng);
        const double step = oracle::kDefaultStep * eig_sym(q.matrix()).values.front();
        const oracle::RiemannTensor fd = oracle::riemann_fd(chart, chart.encode(q.matrix()), step);
        double diff = 0.0;
        double scale = 0.0;
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t b = 0; b < dim; ++b)
            for (std::size_t c = 0; c < dim; ++c)
              for (std::size_t d = 0; d < dim; ++d) {
                const double closed =
                    riemann(q, chart.field(a), chart.field(b), chart.field(c), chart.field(d));
                diff = std::max(diff, std::abs(closed - fd(a, b, c, d)));
                scale = std::max(scale, std::abs(closed));
              }
        worst = std::max(worst, diff / scale);
      }
    }
    r.measured = worst;
    r.passed = worst < r.threshold;
  });
}

CriterionResult distance_axioms(const Config& cfg) {
  return timed(7, "distance-axioms-and-invariance", 1e-9, std::nullopt, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 7));
    const std::vector<std::size_t> ns = orders_or(cfg, {2, 3, 4, 5});
    double sym = 0.0;
    double slack = 1e300;
    for (int k = 0; k < 1000; ++k) {
      const std::size_t n = ns[static_cast<std::size_t>(k) % ns.size()];
      const ManifoldPoint a = random_spd(n, rng), c = random_spd(n, rng);
      // Every tenth triple is (nearly) collinear: b on the geodesic from a to c.
      const ManifoldPoint b = k % 10 == 0 ? geodesic_point(a, c, uniform(rng, 0.0, 1.0)) : random_spd(n, rng);
      const double ab = distance(a, b), bc = distance(b, c), ac = distance(a, c);
      sym = std::max(sym, std::abs(ab - distance(b, a)));
      slack = std::min(slack, ab + bc - ac);
    }
    double invariance = 0.0;
    for (int k = 0; k < 100; ++k) {
      const std::size_t n = ns[static_cast<std::size_t>(k) % ns.size()];
      const ManifoldPoint a = random_spd(n, rng), b = random_spd(n, rng);
      const Matrix c = random_gl(n, rng);
      const double d0 = distance(a, b);
      const double dc = distance(ManifoldPoint(congruence(c, a.matrix())), ManifoldPoint(congruence(c, b.matrix())));
      const double di = distance(ManifoldPoint(a.inverse()), ManifoldPoint(b.inverse()));
      invariance = std::max({invariance, std::abs(dc - d0), std::abs(di - d0)});
    }
    r.details.push_back("symmetry " + num(sym) + " (<= 1e-12), triangle slack " + num(slack) +
                        " (>= -1e-9), invariance " + num(invariance) + " (<= 1e-9)");
    r.measured = invariance;
    r.passed = sym <= 1e-12 && slack >= -1e-9 && invariance <= 1e-9;
  });
}

CriterionResult product_decomposition(const Config& cfg) {
  return timed(8, "product-decomposition", 1e-9, std::nullopt, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 8));
    const std::vector<std::size_t> ns = orders_or(cfg, {2, 3, 4, 5});
    double pullback = 0.0;
    double round_trip = 0.0;
    for (int k = 0; k < 500; ++k) {
      const std::size_t n = ns[static_cast<std::size_t>(k) % ns.size()];
      const ManifoldPoint a = random_spd(n, rng);
      const auto [q, x] = product_split(a);
      round_trip = std::max(round_trip, rel_diff(product_join(q, x).matrix(), a.matrix()));
      const SymMatrix w1 = project_tangent_sl(q, random_symmetric(n, rng)).value;
      const SymMatrix w2 = project_tangent_sl(q, random_symmetric(n, rng)).value;
      const double xi1 = uniform(rng, -1.0, 1.0), xi2 = uniform(rng, -1.0, 1.0);
      const ManifoldPoint image = product_join(q, x);
      const double lhs =
          metric_eval(image, product_pushforward(q, x, w1, xi1), product_pushforward(q, x, w2, xi2));
      const double rhs = metric_eval(q, w1, w2) + xi1 * xi2;
      pullback = std::max(pullback, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    r.details.push_back("pullback error " + num(pullback) + " (<= 1e-9), round trip " + num(round_trip) +
                        " (<= 1e-12)");
    r.measured = pullback;
    r.passed = pullback <= 1e-9 && round_trip <= 1e-12;
  });
}

CriterionResult geodesic_symmetry(const Config& cfg) {
  return timed(9, "geodesic-symmetry", 1e-8, std::nullopt, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 9));
    const std::vector<std::size_t> ns = orders_or(cfg, {2, 3, 4, 5});
    double reversal = 0.0;
    double fixed_point = 0.0;
    std::size_t spurious = 0;
    for (int k = 0; k < 100; ++k) {
      const std::size_t n = ns[static_cast<std::size_t>(k) % ns.size()];
      const ManifoldPoint q = random_spd(n, rng);
      const CanonicalIsometry sym = geodesic_symmetry_at(q);
      const Geodesic geo(q, random_tangent(q, rng));
      const double t = uniform(rng, 0.1, 1.5);
      reversal = std::max(reversal, rel_diff(apply(sym, geodesic_at(geo, t)).matrix(), geodesic_at(geo, -t).matrix()));

      // Fuzzed fixed-point search: random starts, each walked to the midpoint
      // of itself and its mirror image until the mirror stops moving it.
      for (int s = 0; s < 5; ++s) {
        ManifoldPoint x = random_spd(n, rng);
        if (distance(apply(sym, x), x) < 1e-6 && rel_diff(x.matrix(), q.matrix()) >= 1e-6) ++spurious;
        for (int it = 0; it < 50 && distance(apply(sym, x), x) > 1e-13; ++it) x = geometric_mean(x, apply(sym, x));
        fixed_point = std::max(fixed_point, rel_diff(x.matrix(), q.matrix()));
      }
    }
    r.details.push_back("reversal " + num(reversal) + " (<= 1e-8), fixed points found at distance " +
                        num(fixed_point) + " from Q (<= 1e-6), spurious fixed points " + std::to_string(spurious));
    r.measured = reversal;
    r.passed = reversal <= 1e-8 && fixed_point <= 1e-6 && spurious == 0;
  });
}

CriterionResult identify_round_trip(const Config& cfg) {
  return timed(10, "isometry-identification", 1e-6, 120.0, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 10));
    double worst = 0.0;
    std::size_t flag_errors = 0;
    for (std::size_t n : orders_or(cfg, {3, 4})) {
      for (int k = 0; k < 100; ++k) {
        const int a = static_cast<int>(rng() & 1U), b = static_cast<int>(rng() & 1U);
        const CanonicalIsometry truth = make_canonical(random_gl(n, rng), a, b);
        const IsometryOracle black_box = [&truth](const SymMatrix& x) { return apply(truth, ManifoldPoint(x)).matrix(); };
        const CanonicalIsometry got = identify(black_box, n, rng());
        if (got.a != truth.a || got.b != truth.b) ++flag_errors;
        worst = std::max(worst, std::min(rel_diff(got.m, truth.m), rel_diff(-got.m, truth.m)));
      }
    }

    // One perturbed output, placed among the final probe calls, must be caught.
    const std::size_t n = orders_or(cfg, {3, 4}).front();
    const CanonicalIsometry truth = make_canonical(random_gl(n, rng), 1, 0);
    const std::uint64_t seed = rng();
    std::size_t calls = 0;
    const IsometryOracle counting = [&](const SymMatrix& x) {
      ++calls;
      return apply(truth, ManifoldPoint(x)).matrix();
    };
    (void)identify(counting, n, seed);
    const std::size_t corrupt_at = calls - 7;
    std::size_t seen = 0;
    const IsometryOracle corrupted = [&](const SymMatrix& x) {
      SymMatrix out = apply(truth, ManifoldPoint(x)).matrix();
      if (seen++ == corrupt_at) out = out + (1e-3 * out.frobenius_norm()) * SymMatrix::identity(n);
      return out;
    };
    bool rejected = false;
    try {
      (void)identify(corrupted, n, seed);
    } catch (const NotAnIsometryError&) {
      rejected = true;
    }
    r.details.push_back("max M error " + num(worst) + ", flag mismatches " + std::to_string(flag_errors) +
                        ", corrupted oracle " + (rejected ? "rejected" : "ACCEPTED"));
    r.measured = worst;
    r.passed = worst <= r.threshold && flag_errors == 0 && rejected;
  });
}

CriterionResult foliation(const Config& cfg) {
  return timed(11, "polar-foliation", 1e-9, std::nullopt, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 11));
    const std::vector<std::size_t> ns = orders_or(cfg, {2, 3, 4, 5});
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const std::size_t n = ns[static_cast<std::size_t>(k) % ns.size()];
      const Matrix u = random_orthogonal(n, rng);
      const ManifoldPoint q = random_spd(n, rng);
      const Matrix start = u * q.matrix().matrix();
      const Matrix dir = q.inverse().matrix() * random_tangent(q, rng).matrix();
      for (double t : {-1.0, -0.5, 0.0, 0.3, 1.0, 2.0}) {
        const Polar pd = polar_decompose(start * expm(t * dir));
        worst = std::max(worst, (pd.u - u).frobenius_norm());
      }
    }
    r.measured = worst;
    r.passed = worst <= r.threshold;
  });
}

CriterionResult trace_inequality(const Config& cfg) {
  return timed(12, "trace-inequality", 1e-9, std::nullopt, [&](CriterionResult& r) {
    Rng rng(criterion_seed(cfg.seed, 12));
    const std::vector<std::size_t> ns = orders_or(cfg, {2, 3, 4, 5});
    double min_gap = 1e300;
    std::size_t violations = 0;
    std::size_t equality_cases = 0;
    auto check = [&](const SymMatrix& y) {
      const double n = static_cast<double>(y.order());
      const double tr = y.trace();
      const double gap = n * trace_of_product(y, y) - tr * tr;
      const double dev = (y - (tr / n) * SymMatrix::identity(y.order())).frobenius_norm();
      min_gap = std::min(min_gap, gap / std::max(1.0, tr * tr));
      if (gap < -1e-9 * std::max(1.0, tr * tr)) ++violations;
      if (std::abs(gap) <= 1e-9) {
        ++equality_cases;
        if (!(dev < 1e-6)) ++violations;
      }
    };
    for (int k = 0; k < 10000; ++k) {
      const std::size_t n = ns[static_cast<std::size_t>(k) % ns.size()];
      check(random_symmetric(n, rng, 2.0));
    }
    for (int k = 0; k < 100; ++k) {
      const std::size_t n = ns[static_cast<std::size_t>(k) % ns.size()];
      const double lambda = uniform(rng, -2.0, 2.0);
      check(lambda * SymMatrix::identity(n));
      check(lambda * SymMatrix::identity(n) + random_symmetric(n, rng, 1e-8));
    }
    r.details.push_back("min relative gap " + num(min_gap) + ", equality cases " + std::to_string(equality_cases) +
                        ", violations " + std::to_string(violations));
    r.measured = static_cast<double>(violations);
    r.threshold = 0.0;
    r.passed = violations == 0;
  });
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> table = {
      {"metric", {8, 12}},
      {"geodesic", {7, 9, 11}},
      {"curvature", {1, 2, 3, 4}},
      {"isometry", {10}},
      {"oracle", {5, 6}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}},
  };
  const auto it = table.find(suite);
  if (it == table.end()) throw ArgumentError("unknown verify suite: " + suite);
  return it->second;
}

std::vector<std::string> suite_names() { return {"metric", "geodesic", "curvature", "isometry", "oracle", "all"}; }

CriterionResult run_criterion(int id, const Config& cfg) {
  switch (id) {
    case 1: return scalar_curvature(cfg);
    case 2: return einstein_property(cfg);
    case 3: return slp2_sectional(cfg);
    case 4: return nonpositive_sectional(cfg);
    case 5: return geodesic_ode_agreement(cfg);
    case 6: return riemann_vs_oracle(cfg);
    case 7: return distance_axioms(cfg);
    case 8: return product_decomposition(cfg);
    case 9: return geodesic_symmetry(cfg);
    case 10: return identify_round_trip(cfg);
    case 11: return foliation(cfg);
    case 12: return trace_inequality(cfg);
    default: throw ArgumentError("unknown criterion id " + std::to_string(id));
  }
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const Config& cfg, unsigned jobs) {
  std::vector<CriterionResult> results(ids.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < ids.size(); ++i) results[i] = run_criterion(ids[i], cfg);
    return results;
  }
  std::size_t next = 0;
  while (next < ids.size()) {
    std::vector<std::future<CriterionResult>> batch;
    const std::size_t end = std::min(ids.size(), next + jobs);
    for (std::size_t i = next; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, [&cfg, id = ids[i]] { return run_criterion(id, cfg); }));
    }
    for (std::size_t i = next; i < end; ++i) results[i] = batch[i - next].get();
    next = end;
  }
  return results;
}

std::string format_result(const CriterionResult& r, bool with_timing) {
  std::string line = std::string(r.passed ? "PASS" : "FAIL") + " C" + std::to_string(r.id) + " " + r.name +
                     ": measured=" + num(r.measured) + " threshold=" + short_num(r.threshold);
  if (with_timing) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
    line += buf;
  }
  for (const std::string& d : r.details) line += "\n    " + d;
  return line;
}

}  // namespace tracemetric::verify
