#include "emn/cli.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "emn/density.hpp"
#include "emn/heights.hpp"
#include "emn/local_analysis.hpp"
#include "emn/report.hpp"
#include "emn/saturation.hpp"

namespace emn {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  long precision_bits = 128;
  long series_terms = 40;
  std::uint64_t factor_effort = kDefaultFactorEffort;
  unsigned workers = 1;
  std::string json_path;
  std::string generators_path;

  HeightOptions heights() const {
    return {static_cast<mpfr_prec_t>(precision_bits), static_cast<unsigned>(series_terms), factor_effort};
  }
};

Integer positive(const std::string& text, const char* what) {
  Integer v;
  if (text.empty() || v.set_str(text, 10) != 0 || v <= 0)
    throw UsageError(std::string(what) + " must be a positive integer, got '" + text + "'");
  return v;
}

Rational rational_arg(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw UsageError(std::string(what) + " must be an integer or a/b, got '" + text + "'");
  }
}

// Runs job(t) for t = from..to, `workers` at a time; results in parameter order.
std::vector<CurveReport> run_range(const Integer& from, const Integer& to, unsigned workers,
                                   const std::function<CurveReport(const Integer&)>& job) {
  if (to < from) throw UsageError("--to must be >= --from");
  const Integer span = to - from + 1;
  if (!span.fits_ulong_p() || span.get_ui() > 10'000'000) throw UsageError("range too large");
  const std::size_t count = span.get_ui();
  std::vector<CurveReport> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) out[i] = job(from + static_cast<unsigned long>(i));
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < std::max(1u, workers); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

// A computation error inside one curve's pipeline fails that curve only.
CurveReport guarded(const Integer& m, const Integer& n, const std::function<CurveReport()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    CurveReport r{m, n, {}};
    r.checks.push_back({"error", Status::Fail, {{"error", e.what()}}});
    return r;
  }
}

int emit(const std::vector<CurveReport>& reports, const RunConfig& cfg, std::ostream& out) {
  write_summary(out, reports);
  if (cfg.json_path == "-") {
    write_report(out, reports);
  } else if (!cfg.json_path.empty()) {
    std::ofstream f(cfg.json_path);
    if (!f) throw UsageError("cannot write " + cfg.json_path);
    write_report(f, reports);
  }
  return exit_code(reports);
}

void curve_info(const Curve& c, const RunConfig& cfg, std::ostream& out) {
  out << c.label() << ": y^2 = x^3 + (" << c.a4 << ") x + " << c.a6 << "\n";
  out << "c4 = " << c.c4 << ", c6 = " << c.c6 << "\n";
  out << "disc = " << c.disc << "\n";
  try {
    out << "disc factorization = " << factor(c.disc, cfg.factor_effort).to_string() << "\n";
    out << "global minimal = " << (is_global_minimal(c, cfg.factor_effort) ? "yes" : "no") << "\n";
    const SquarefreeCheck sq = squarefree_condition(c, cfg.factor_effort);
    out << "square-free condition = " << (sq.holds ? "holds" : "fails") << " (" << sq.certificate() << ")\n";
  } catch (const IncompleteFactorization& e) {
    out << "disc factorization incomplete, cofactor " << e.cofactor() << "\n";
  }
  const RootBounds rb = real_root_bounds(c, static_cast<mpfr_prec_t>(cfg.precision_bits));
  out << "real roots = " << rb.root_count << "\n";
  for (const auto& b : rb.roots) out << "  in [" << b.lo.to_double() << ", " << b.hi.to_double() << "]\n";
  const NamedPoints np = named_points(c);
  out << "P0 = " << np.p0.to_string() << ", P+1 = " << np.pplus1.to_string() << ", P-1 = " << np.pminus1.to_string();
  if (np.p2) out << ", P2 = " << np.p2->to_string();
  out << "\n";
}

void reduction_table(const Curve& c, const RunConfig& cfg, std::ostream& out) {
  std::vector<Integer> primes{2, 3};
  for (const auto& pp : factor(c.disc, cfg.factor_effort).factors)
    if (pp.prime > 3) primes.push_back(pp.prime);
  out << c.label() << "\n";
  for (const auto& p : primes) {
    const KodairaType t = kodaira_type(c, p);
    out << "  p = " << p << ": " << t.to_string() << ", v_p(disc) = " << valuation(c.disc, p);
    if (p <= 3) out << " (by shift: " << kodaira_type_by_shift(c, p).to_string() << ")";
    out << "\n";
  }
}

ArchStrategy parse_strategy(const std::string& text) {
  if (text == "modified") return ArchStrategy::modified();
  if (text == "standard") return ArchStrategy::standard();
  if (text.rfind("shift:", 0) == 0) return ArchStrategy::shifted(rational_arg(text.substr(6), "--strategy shift"));
  throw UsageError("--strategy must be modified, standard or shift:<q>");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic of the curves y^2 = x^3 - m^2 x + n^2", "emn"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--prec", cfg.precision_bits, "working precision in bits")->check(CLI::Range(64L, 1L << 20));
  app.add_option("--terms", cfg.series_terms, "minimum Tate series terms")->check(CLI::Range(8L, 100000L));
  app.add_option("--factor-effort", cfg.factor_effort, "trial divisions plus rho iterations per factorization");
  app.add_option("--workers", cfg.workers, "threads for range commands")->check(CLI::Range(1u, 1024u));
  app.add_option("--json", cfg.json_path, "write line-delimited JSON records here ('-' for stdout)");

  std::string m_arg, n_arg, x_arg, y_arg, p_arg, strategy_arg, from_arg, to_arg, family_arg = "e1n";
  std::size_t primes_arg = 60;
  std::uint64_t census_x = 1000;

  auto* curve = app.add_subcommand("curve", "curve data");
  curve->require_subcommand(1);
  auto* info = curve->add_subcommand("info", "model, discriminant, roots, named points");
  info->add_option("--m", m_arg)->required();
  info->add_option("--n", n_arg)->required();

  auto* reduction = app.add_subcommand("reduction", "Kodaira types at 2, 3 and the primes dividing disc");
  reduction->add_option("--m", m_arg)->required();
  reduction->add_option("--n", n_arg)->required();

  auto* height = app.add_subcommand("height", "canonical height of a point");
  height->add_option("--m", m_arg)->required();
  height->add_option("--n", n_arg)->required();
  height->add_option("--x", x_arg)->required();
  height->add_option("--y", y_arg)->required();
  height->add_option("--strategy", strategy_arg, "modified, standard or shift:<q>");

  auto* verify = app.add_subcommand("verify", "basis-extension pipelines");
  verify->require_subcommand(1);
  auto* e1n = verify->add_subcommand("e1n", "{P0, P-1} on E_{1,n}");
  auto* em1 = verify->add_subcommand("em1", "{P0, P-1, P2} on E_{m,1}");
  for (auto* sub : {e1n, em1}) {
    sub->add_option("--from", from_arg);
    sub->add_option("--to", to_arg);
    sub->add_option("--generators", cfg.generators_path, "Mordell-Weil generators, one 'x y' per line");
  }
  e1n->add_option("--n", n_arg);
  em1->add_option("--m", m_arg);

  auto* remark = app.add_subcommand("remark12", "exact relations on E_{1,1}, E_{3,1}, E_{7,1}, E_{24,1}");

  auto* density = app.add_subcommand("density", "square-free density computations");
  density->require_subcommand(1);
  auto* kappa = density->add_subcommand("kappa", "Euler product lower bound");
  auto* census = density->add_subcommand("census", "count square-free members up to x");
  auto* omega = density->add_subcommand("omega", "roots of D modulo p^2");
  for (auto* sub : {kappa, census, omega})
    sub->add_option("--family", family_arg, "e1n or em1")->check(CLI::IsMember({"e1n", "em1"}, CLI::ignore_case));
  kappa->add_option("--primes", primes_arg, "K: product over p_3 .. p_K")->check(CLI::Range(3ul, 100000ul));
  census->add_option("--x", census_x)->check(CLI::Range(1ull, 100000000ull));
  omega->add_option("--p", p_arg)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*info) {
      curve_info(make_curve(positive(m_arg, "--m"), positive(n_arg, "--n")), cfg, out);
      return 0;
    }
    if (*reduction) {
      reduction_table(make_curve(positive(m_arg, "--m"), positive(n_arg, "--n")), cfg, out);
      return 0;
    }
    if (*height) {
      const Curve c = make_curve(positive(m_arg, "--m"), positive(n_arg, "--n"));
      const Point p(rational_arg(x_arg, "--x"), rational_arg(y_arg, "--y"));
      if (!contains(c, p)) throw UsageError(p.to_string() + " is not on " + c.label());
      const HeightContext ctx(c, cfg.heights());
      const ArchStrategy s = strategy_arg.empty() ? ctx.default_strategy() : parse_strategy(strategy_arg);
      const HeightValue h = canonical_height(ctx, p, s);
      const Interval v = h.value(static_cast<mpfr_prec_t>(cfg.precision_bits));
      out << "curve    " << c.label() << "\npoint    " << p.to_string() << "\nstrategy " << s.to_string()
          << "\nh        " << v.mid_string(30) << "\nradius   " << v.radius() << "\nenclosure " << v.to_string(30)
          << "\nexact    " << h.exact_string() << "\narch     " << h.arch.mid_string(30) << "\n";
      return 0;
    }
    if (*e1n || *em1) {
      const bool is_e1n = static_cast<bool>(*e1n);
      const std::string& single = is_e1n ? n_arg : m_arg;
      if (single.empty() == (from_arg.empty() || to_arg.empty()))
        throw UsageError(std::string("give either ") + (is_e1n ? "--n" : "--m") + " or both --from and --to");
      if (!single.empty() && !(from_arg.empty() && to_arg.empty()))
        throw UsageError("--from/--to cannot be combined with a single parameter");
      VerifyOptions opts;
      opts.heights = cfg.heights();
      if (!cfg.generators_path.empty()) {
        if (single.empty()) throw UsageError("--generators needs a single curve");
        opts.generators = read_generator_file(cfg.generators_path);
      }
      const Integer from = positive(single.empty() ? from_arg : single, is_e1n ? "--n" : "--m");
      const Integer to = single.empty() ? positive(to_arg, "--to") : from;
      const auto reports = run_range(from, to, cfg.workers, [&](const Integer& t) {
        return is_e1n ? guarded(1, t, [&] { return verify_e1n(t, opts); })
                      : guarded(t, 1, [&] { return verify_em1(t, opts); });
      });
      return emit(reports, cfg, out);
    }
    if (*remark) return emit({check_remark_relations()}, cfg, out);
    const Family fam = parse_family(family_arg);
    if (*kappa) {
      const KappaBound kb = kappa_lower_bound(fam, primes_arg, static_cast<mpfr_prec_t>(cfg.precision_bits));
      const bool above = kb.lower() > Rational(Integer(97), Integer(100));
      out << "family  " << to_string(fam) << "\nprimes  p_3 .. p_" << kb.primes << "\nproduct "
          << kb.product.mid_string(12) << "\ntail    " << kb.tail.to_string(12) << "\nbound   "
          << kb.bound.to_string(12) << "\n> 0.97  " << (above ? "yes" : "no") << "\n";
      CurveReport r;
      r.checks.push_back({"kappa " + to_string(fam),
                          above ? Status::Pass : Status::Fail,
                          {{"primes", kb.primes},
                           {"product", kb.product.to_string(20)},
                           {"tail", kb.tail.to_string(20)},
                           {"bound", kb.bound.to_string(20)}}});
      if (!cfg.json_path.empty()) emit({r}, cfg, out);
      return exit_code({r});
    }
    if (*census) {
      const std::uint64_t count = squarefree_census(fam, census_x, cfg.workers, cfg.factor_effort);
      out << "family " << to_string(fam) << "\nx      " << census_x << "\ncount  " << count << "\nratio  "
          << static_cast<double>(count) / static_cast<double>(census_x) << "\n";
      return 0;
    }
    if (*omega) {
      const Integer p = positive(p_arg, "--p");
      if (!p.fits_ulong_p()) throw DomainError("--p too large");
      const unsigned w = omega_count(fam, p.get_ui());
      out << "omega(" << p << ") = " << w << " (bound " << omega_bound(fam) << ")\n";
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace emn
