#include "cli/commands.hpp"

#include <cmath>
#include <sstream>

#include "aet/coefficients.hpp"
#include "aet/constants.hpp"
#include "aet/decomposition.hpp"
#include "aet/io.hpp"
#include "aet/volterra.hpp"

namespace aet::cli {

namespace {

ConstantsOptions constants_options(const RunConfig& cfg) {
  ConstantsOptions options;
  options.prime_cutoff = cfg.prime_cutoff;
  options.a1_cutoff = cfg.a1_cutoff;
  if (cfg.a1_mode) options.a1_mode = *cfg.a1_mode;
  return options;
}

TotientTable table_for(const RunConfig& cfg) {
  return load_or_build_table(cfg.product, cfg.table_size(), cfg.numeric_mode(), cfg.cache_dir);
}

Report new_report(const RunConfig& cfg) {
  Report report;
  report.command = std::string(to_string(cfg.command));
  report.spec_hash = spec_hash(cfg.product);
  report.mode = cfg.numeric_mode();
  return report;
}

template <class T>
Cell x_cell(const Rational& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x;
  } else {
    return x.get_d();
  }
}

template <class T>
RealOf<T> x_value(const Rational& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x;
  } else {
    return x.get_d();
  }
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_applicable:
      break;
  }
  return "not-applicable";
}

SummaryEntry bounded(std::string key, const ValueWithBound& v) {
  return {std::move(key), v.value, v.bound, v.kind};
}

Report run_constants(const RunConfig& cfg) {
  Report report = new_report(cfg);
  report.columns = {"name", "value", "bound", "kind"};
  const auto& spec = cfg.product;

  const ValueWithBound c = c_constant(spec, cfg.prime_cutoff);
  A1Mode a1_mode = spec.kind() == ProductKind::custom ? A1Mode::partial_sums : A1Mode::closed_form;
  if (cfg.a1_mode) a1_mode = *cfg.a1_mode;
  const ValueWithBound a1 = a1_constant(spec, a1_mode, cfg.a1_cutoff);
  const ValueWithBound a2{Complex(2.0) * c.value, 2.0 * c.bound, c.kind};

  std::vector<SummaryEntry> entries = {bounded("C_F", c), bounded("A1", a1), bounded("A2", a2)};
  if (spec.kind() == ProductKind::dirichlet && !spec.character().is_principal) {
    entries.push_back(bounded("L1", l_value(spec.character(), 1.0)));
    entries.push_back(bounded("L2", l_value(spec.character(), 2.0)));
  }
  for (const auto& e : entries) {
    report.rows.push_back({e.key, e.value, *e.bound, std::string(to_string(*e.kind))});
  }
  report.summary = std::move(entries);
  return report;
}

template <class T>
Report run_table(const RunConfig& cfg) {
  Report report = new_report(cfg);
  report.columns = {"n", "alpha", "phi", "cumulative"};
  const TotientTable table = table_for(cfg);
  const auto alpha = table.coefficients().values<T>();
  const auto phi = table.phi_values<T>();
  const auto cumulative = table.cumulative_values<T>();
  for (std::size_t n = 1; n < alpha.size(); ++n) {
    report.rows.push_back({static_cast<std::int64_t>(n), alpha[n], phi[n], cumulative[n]});
  }
  report.summary.push_back({"N", static_cast<std::int64_t>(table.size()), {}, {}});
  return report;
}

template <class T>
Report run_error_term(const RunConfig& cfg) {
  Report report = new_report(cfg);
  const bool symmetric = cfg.convention == Convention::symmetric;
  report.columns = {"x", symmetric ? "E2" : "E", "bound"};
  const TotientTable table = table_for(cfg);
  const ValueWithBound c = c_constant(cfg.product, cfg.prime_cutoff);
  Bounded<T> c_f{T{}, c.bound, c.kind};
  if constexpr (std::is_same_v<T, Rational>) {
    if (c.value.imag() != 0.0) throw Error(ErrorCode::ModeUnavailable, "C(F) is not real");
    c_f.value = to_rational(c.value.real());
  } else {
    c_f.value = c.value;
  }
  for (const auto& x : cfg.xs) {
    const Bounded<T> e = error_term<T>(table, c_f, x_value<T>(x), cfg.convention);
    report.rows.push_back({x_cell<T>(x), e.value, e.bound});
  }
  report.summary.push_back({"C_F", c.value, c.bound, c.kind});
  return report;
}

template <class T>
Report run_decompose(const RunConfig& cfg) {
  Report report = new_report(cfg);
  report.columns = {"x", "E2", "x_f1", "half_g1", "residual", "exact_verdict"};
  const TotientTable table = table_for(cfg);
  const Constants<T> constants =
      constants_as<T>(compute_constants(cfg.product, constants_options(cfg)));
  std::vector<RealOf<T>> xs;
  for (const auto& x : cfg.xs) xs.push_back(x_value<T>(x));
  const auto rows = decompose_batch<T>(xs, table, constants);
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    report.rows.push_back({x_cell<T>(cfg.xs[i]), r.e2.value, r.arithmetic_part.value,
                           r.analytic_part.value, r.residual,
                           std::string(verdict_name(r.exact_verdict))});
    const double size = Field<T>::magnitude(r.residual);
    worst = std::max(worst, size);
    if constexpr (std::is_same_v<T, Rational>) {
      if (r.exact_verdict != Verdict::pass) report.passed = false;
    } else {
      if (!(size <= r.combined_bound())) report.passed = false;
    }
  }
  report.summary.push_back({"max_abs_residual", worst, {}, {}});
  report.summary.push_back({"all_pass", report.passed, {}, {}});
  return report;
}

Report run_verify_identity(const RunConfig& cfg) {
  Report report = new_report(cfg);
  report.columns = {"x", "lhs", "rhs", "verdict"};
  const TotientTable table = table_for(cfg);
  std::int64_t failures = 0;
  for (const auto& x : cfg.xs) {
    const auto identity = reduced_identity<Rational>(x, table);
    const bool ok = identity.holds();
    failures += ok ? 0 : 1;
    report.rows.push_back({x, identity.lhs, identity.rhs, std::string(ok ? "pass" : "fail")});
  }
  report.passed = failures == 0;
  report.summary.push_back({"checked", static_cast<std::int64_t>(cfg.xs.size()), {}, {}});
  report.summary.push_back({"failures", failures, {}, {}});
  return report;
}

Report run_volterra(const RunConfig& cfg) {
  Report report = new_report(cfg);
  report.columns = {"x", "F1", "E2", "residual"};
  const TotientTable table = table_for(cfg);
  const Constants<Complex> constants = compute_constants(cfg.product, constants_options(cfg));
  const auto x_max = table.size();
  const F1Function f1(table.coefficients(), constants, x_max);
  const E2Function e2f(table, constants.c_f, x_max);
  const PiecewiseFunction e2{[&](double x) { return e2f(x); },
                             [&](double x) { return e2f.left_limit(x); },
                             [&](double x) { return e2f.right_limit(x); }};
  const std::function<Complex(double)> f1_fn = [&](double x) { return f1(x); };

  const SolutionFamily member{f1_fn, cfg.A};
  const ResidualReport member_report = residual(member, e2, cfg.X, cfg.h);
  report.summary.push_back({"member_A", cfg.A, {}, {}});
  report.summary.push_back({"member_sup_residual", member_report.sup, {}, {}});
  report.summary.push_back({"member_argmax", member_report.argmax, {}, {}});

  if (!cfg.anchor) {
    for (std::size_t i = 0; i < member_report.points.size(); ++i) {
      const double x = member_report.points[i];
      report.rows.push_back({x, member(x), member_report.e2[i], member_report.residuals[i]});
    }
    report.passed = member_report.sup <= cfg.tolerance;
    return report;
  }

  Anchor anchor{cfg.anchor->x, {}};
  anchor.value = cfg.anchor->value ? *cfg.anchor->value : (f1(anchor.x) + cfg.A) * anchor.x;
  const GridFunction solution = solve_from_e2(e2, cfg.X, cfg.h, anchor);
  const ResidualReport solved = residual(solution, e2);
  for (std::size_t i = 0; i < solved.points.size(); ++i) {
    report.rows.push_back(
        {solved.points[i], solution.values[i], solved.e2[i], solved.residuals[i]});
  }
  report.passed = solved.sup <= cfg.tolerance;
  report.summary.push_back({"anchor_x", anchor.x, {}, {}});
  report.summary.push_back({"anchor_value", anchor.value, {}, {}});
  report.summary.push_back({"sup_residual", solved.sup, {}, {}});
  report.summary.push_back({"argmax", solved.argmax, {}, {}});
  report.summary.push_back({"fitted_A", fit_family_parameter(solution, f1_fn), {}, {}});

  GridFunction difference = solution;
  for (std::size_t i = 0; i < difference.points.size(); ++i) {
    difference.values[i] -= difference.points[i] * f1(difference.points[i]);
  }
  try {
    const ProbeResult probe = homogeneous_probe(difference, cfg.tolerance);
    report.summary.push_back({"probe_A", probe.A, {}, {}});
    report.summary.push_back({"probe_deviation", probe.deviation, {}, {}});
    report.summary.push_back({"probe_residual", probe.residual, {}, {}});
  } catch (const Error& error) {
    if (error.code() != ErrorCode::NotHomogeneous) throw;
    report.summary.push_back({"probe", std::string("not-homogeneous"), {}, {}});
    report.passed = false;
  }
  return report;
}

Report run_growth(const RunConfig& cfg) {
  Report report = new_report(cfg);
  report.columns = {"x", "ratio"};
  const TotientTable table = table_for(cfg);
  const ValueWithBound c = c_constant(cfg.product, cfg.prime_cutoff);
  const auto X = static_cast<std::uint64_t>(cfg.X);
  const GrowthReport scan = growth_scan(table, c, X, cfg.samples ? cfg.samples : X);
  for (const auto& sample : scan.samples) report.rows.push_back({sample.x, sample.ratio});
  report.summary.push_back({"sup", scan.sup, {}, {}});
  report.summary.push_back({"argmax", scan.argmax, {}, {}});
  return report;
}

Report run_series_check(const RunConfig& cfg) {
  Report report = new_report(cfg);
  report.columns = {"s", "N", "lhs", "lhs_bound", "rhs", "rhs_bound", "difference",
                    "combined_bound", "within_bound"};
  const SeriesIdentityReport r = series_identity_check(cfg.product, cfg.s, cfg.table_size());
  report.rows.push_back({r.s, static_cast<std::int64_t>(r.truncation), r.lhs.value, r.lhs.bound,
                         r.rhs.value, r.rhs.bound, r.difference, r.combined_bound,
                         r.within_bound});
  report.passed = r.within_bound;
  report.summary.push_back({"lhs", r.lhs.value, r.lhs.bound, r.lhs.kind});
  report.summary.push_back({"rhs", r.rhs.value, r.rhs.bound, r.rhs.kind});
  return report;
}

template <template <class> class Fn>
Report by_mode(const RunConfig& cfg) {
  if (cfg.numeric_mode() == NumericMode::exact) return Fn<Rational>::run(cfg);
  return Fn<Complex>::run(cfg);
}

template <class T>
struct TableCmd {
  static Report run(const RunConfig& cfg) { return run_table<T>(cfg); }
};
template <class T>
struct ErrorTermCmd {
  static Report run(const RunConfig& cfg) { return run_error_term<T>(cfg); }
};
template <class T>
struct DecomposeCmd {
  static Report run(const RunConfig& cfg) { return run_decompose<T>(cfg); }
};

}  // namespace

int exit_code(ErrorCode code) {
  if (code == ErrorCode::UsageError) return kExitUsage;
  return 10 + static_cast<int>(code);
}

Report run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::constants:
      return run_constants(cfg);
    case Command::table:
      return by_mode<TableCmd>(cfg);
    case Command::error_term:
      return by_mode<ErrorTermCmd>(cfg);
    case Command::decompose:
      return by_mode<DecomposeCmd>(cfg);
    case Command::verify_identity:
      return run_verify_identity(cfg);
    case Command::volterra:
      return run_volterra(cfg);
    case Command::growth:
      return run_growth(cfg);
    case Command::series_check:
      return run_series_check(cfg);
  }
  throw Error(ErrorCode::UsageError, "unknown command");
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const std::optional<std::string>& cache_env) {
  try {
    const RunConfig cfg = parse_config(args, cache_env);
    const Report report = run_command(cfg);
    emit_report(report, cfg.format, cfg.output, out);
    if (!report.passed) {
      err << "verification failed\n";
      return kExitVerificationFailed;
    }
    return kExitOk;
  } catch (const HelpRequested& help) {
    out << help.text;
    return kExitOk;
  } catch (const Error& error) {
    err << "error: " << error.what() << '\n';
    return exit_code(error.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return exit_code(ErrorCode::OutOfMemory);
  }
}

}  // namespace aet::cli
