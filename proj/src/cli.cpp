#include "tracemetric/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tracemetric/curvature.hpp"
#include "tracemetric/errors.hpp"
#include "tracemetric/geodesics.hpp"
#include "tracemetric/isometry.hpp"
#include "tracemetric/matrix_io.hpp"
#include "tracemetric/verify.hpp"

namespace tracemetric::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kVerifyFailed = 2;

std::uint64_t default_seed() {
  const char* env = std::getenv("TRACE_METRIC_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw ArgumentError(std::string("TRACE_METRIC_SEED is not an unsigned integer: ") + env);
  return v;
}

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  ManifoldPoint point(const std::string& path) {
    const io::LoadedSym loaded = io::load_symmetric(path);
    if (loaded.asymmetry > 0.0) {
      err_ << "note: " << path << " symmetrized (max asymmetry " << io::format_number(loaded.asymmetry) << ")\n";
    }
    return ManifoldPoint(loaded.matrix);
  }

  ManifoldPoint spd(const std::string& path) {
    ManifoldPoint a = point(path);
    if (!a.is_spd()) throw DomainError(path + " is not positive definite");
    return a;
  }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

IsometryWord parse_word(const std::string& spec, std::optional<std::size_t>& order) {
  IsometryWord word;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ';')) {
    token = trim(token);
    if (token == "inv") {
      word.letters.emplace_back(Inv{});
    } else if (token == "psi") {
      word.letters.emplace_back(Psi{});
    } else if (token.rfind("congr:", 0) == 0) {
      Matrix c = io::load_matrix(token.substr(6));
      if (order && *order != c.order()) throw ArgumentError("word letters have inconsistent matrix orders");
      order = c.order();
      word.letters.emplace_back(Congr(std::move(c)));
    } else {
      throw ParseError("unknown word letter '" + token + "' (expected inv, psi or congr:<path>)");
    }
  }
  if (word.letters.empty()) throw ParseError("empty isometry word");
  return word;
}

void print_isometry(std::ostream& out, const CanonicalIsometry& iso) {
  const ComponentLabel label = component_label(iso);
  out << "{\"a\": " << iso.a << ", \"b\": " << iso.b << ", \"component\": [" << label.det_sign << ", "
      << label.a << ", " << label.b << "], \"M\": " << io::to_json(iso.m) << "}\n";
}

double sign_free_error(const Matrix& got, const Matrix& want) {
  const double scale = want.frobenius_norm();
  return std::min((got - want).frobenius_norm(), (got + want).frobenius_norm()) / scale;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Session session(out, err);
  CLI::App app{"Geometry of non-singular symmetric matrices under the trace metric", "tracemetric"};
  app.require_subcommand(1);

  std::string a_path, b_path;
  auto* distance_cmd = app.add_subcommand("distance", "Riemannian distance between two SPD matrices");
  distance_cmd->add_option("A", a_path)->required();
  distance_cmd->add_option("B", b_path)->required();

  double t = 0.5;
  int steps = 0;
  auto* geodesic_cmd = app.add_subcommand("geodesic", "Point(s) on the geodesic from A to B");
  geodesic_cmd->add_option("--from", a_path)->required();
  geodesic_cmd->add_option("--to", b_path)->required();
  auto* t_opt = geodesic_cmd->add_option("--t", t, "Curve parameter");
  geodesic_cmd->add_option("--steps", steps, "Print k+1 evenly spaced points on [0,1]")
      ->check(CLI::PositiveNumber)
      ->excludes(t_opt);

  auto* mean_cmd = app.add_subcommand("mean", "Geometric mean (geodesic midpoint)");
  mean_cmd->add_option("A", a_path)->required();
  mean_cmd->add_option("B", b_path)->required();

  auto* transporter_cmd = app.add_subcommand("transporter", "SPD S with S A S = B");
  transporter_cmd->add_option("A", a_path)->required();
  transporter_cmd->add_option("B", b_path)->required();

  std::string q_path;
  bool report = false;
  auto* curvature_cmd = app.add_subcommand("curvature", "Scalar curvature at a point");
  curvature_cmd->add_option("--point", q_path)->required();
  curvature_cmd->add_flag("--report", report, "Add signature and the Einstein residual");

  std::string word_spec;
  std::size_t word_n = 0;
  auto* canon_cmd = app.add_subcommand("canonicalize", "Reduce an isometry word to normal form");
  canon_cmd->add_option("--word", word_spec, "Semicolon-separated letters: inv, psi, congr:<path>")->required();
  auto* n_word_opt = canon_cmd->add_option("--n", word_n, "Matrix order when the word has no congr letter");

  std::string family, m_path;
  std::uint64_t seed = 0;
  auto* identify_cmd = app.add_subcommand("identify", "Round-trip an isometry through black-box identification");
  identify_cmd->add_option("--family", family)->required()->check(CLI::IsMember({"congr", "inv", "psi", "inv_psi"}));
  identify_cmd->add_option("--M", m_path)->required();
  auto* identify_seed = identify_cmd->add_option("--seed", seed);

  std::string suite;
  std::size_t verify_n = 0;
  std::size_t verify_p = 0;
  unsigned jobs = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Run acceptance checks");
  verify_cmd->add_option("--suite", suite)->required()->check(CLI::IsMember(verify::suite_names()));
  auto* n_opt = verify_cmd->add_option("--n", verify_n)->check(CLI::Range(2, 8));
  auto* p_opt = verify_cmd->add_option("--p", verify_p);
  auto* verify_seed = verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (distance_cmd->parsed()) {
      out << io::format_number(distance(session.spd(a_path), session.spd(b_path))) << "\n";
    } else if (geodesic_cmd->parsed()) {
      const ManifoldPoint a = session.spd(a_path), b = session.spd(b_path);
      if (steps > 0) {
        for (int k = 0; k <= steps; ++k) {
          const double tk = static_cast<double>(k) / steps;
          out << "{\"t\": " << io::format_number(tk)
              << ", \"point\": " << io::to_json(geodesic_point(a, b, tk).matrix()) << "}\n";
        }
      } else {
        out << io::to_json(geodesic_point(a, b, t).matrix()) << "\n";
      }
    } else if (mean_cmd->parsed()) {
      out << io::to_json(geometric_mean(session.spd(a_path), session.spd(b_path)).matrix()) << "\n";
    } else if (transporter_cmd->parsed()) {
      out << io::to_json(congruence_transporter(session.spd(a_path), session.spd(b_path))) << "\n";
    } else if (curvature_cmd->parsed()) {
      const ManifoldPoint q = session.point(q_path);
      out << "scalar " << io::format_number(scalar_at(q, ScalarMode::summed)) << "\n";
      out << "closed_form " << io::format_number(scalar_closed_form(q.order())) << "\n";
      if (report) {
        out << "signature " << q.p() << " " << q.order() - q.p() << "\n";
        if (q.on_unit_det_slice()) {
          const std::uint64_t s = default_seed();
          out << "einstein_residual " << io::format_number(einstein_check(q, 200, s).einstein_residual) << "\n";
        } else {
          out << "einstein_residual n/a (|det| != 1)\n";
        }
      }
    } else if (canon_cmd->parsed()) {
      std::optional<std::size_t> order;
      if (*n_word_opt) order = word_n;
      const IsometryWord word = parse_word(word_spec, order);
      if (!order) throw ArgumentError("canonicalize: --n is required when the word has no congr letter");
      print_isometry(out, canonicalize(word, *order));
    } else if (identify_cmd->parsed()) {
      const Matrix m = io::load_matrix(m_path);
      const int a = (family == "inv" || family == "inv_psi") ? 1 : 0;
      const int b = (family == "psi" || family == "inv_psi") ? 1 : 0;
      const CanonicalIsometry truth = make_canonical(m, a, b);
      const IsometryOracle black_box = [&truth](const SymMatrix& x) {
        return apply(truth, ManifoldPoint(x)).matrix();
      };
      const CanonicalIsometry got = identify(black_box, m.order(), *identify_seed ? seed : default_seed());
      print_isometry(out, got);
      const double m_err = sign_free_error(got.m, truth.m);
      if (got.a != truth.a || got.b != truth.b || !(m_err <= 1e-6)) {
        err << "identify: round trip mismatch (flags " << got.a << got.b << " vs " << truth.a << truth.b
            << ", M error " << io::format_number(m_err) << ")\n";
        return kVerifyFailed;
      }
    } else if (verify_cmd->parsed()) {
      verify::Config cfg;
      if (*n_opt) cfg.orders = {verify_n};
      if (*p_opt) {
        if (*n_opt && verify_p > verify_n) throw ArgumentError("verify: --p must not exceed --n");
        cfg.p = verify_p;
      }
      cfg.seed = *verify_seed ? seed : default_seed();
      bool all_passed = true;
      for (const verify::CriterionResult& r : verify::run_criteria(verify::suite_criteria(suite), cfg, jobs)) {
        out << verify::format_result(r, false) << "\n";
        if (!r.passed) {
          all_passed = false;
          err << "verify: criterion C" << r.id << " (" << r.name << ") failed\n";
        }
      }
      return all_passed ? kOk : kVerifyFailed;
    }
  } catch (const NotAnIsometryError& e) {
    err << "error: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace tracemetric::cli
