#include "extvol_cli/dispatch.hpp"

#include "extvol_cli/io.hpp"

#include <extvol/error.hpp>
#include <extvol/torus_invariants.hpp>

#include <CLI11.hpp>

#include <functional>
#include <map>
#include <numbers>
#include <ostream>

namespace extvol::cli {
namespace {

constexpr int kDefaultN = 256;
constexpr int kDefaultQ = 256;
constexpr int kDefaultCoeffBound = 3;

struct Options {
  std::string output = "json";
  std::uint64_t seed = 0;
  double tolerance = 0.0;

  std::string lattice, cls, siegel, lattice2, class2;
  std::string base, base2, transform, dilation;
  std::string field = "const";
  std::vector<double> tau;
  double tau_re = 0.0, tau_im = 1.0, rho = 1.0;
  int grid = kDefaultN;
  int quadrature = kDefaultQ;
  int coeff_bound = kDefaultCoeffBound;
  int degree = 3;
  double lo = 0.5, hi = 2.0;
  int extent_margin = 1;
  int max_iter = 1000;
  int n = 0;
  int samples = 1000;
  std::uint64_t mc_samples = 1'000'000;
  int trials = 100;
  double d = 0.0;
  double c = 0.0;
  double eps_max = 0.1;
  double probe_amplitude = 0.0;
  long long p = 0, q = 0;
  bool list_classes = false;
};

struct Outcome {
  Json body;
  int status = kExitOk;
  std::string failure;  // set when status is kExitVerificationFailed
};

struct Context {
  const Options& o;
  const CLI::App* sub;
  bool has_seed;
  bool has_tolerance;

  bool given(const std::string& name) const { return sub->count(name) > 0; }
};

using Handler = std::function<Outcome(const Context&)>;

const std::vector<CommandInfo> kCommands = {
    {"torus mu",
     {"real_generator_matrix", "covolume", "period_matrix", "from_siegel", "omega_volume_class",
      "is_totally_real", "phase", "extremal_volume", "product_lattice", "product_class"},
     false,
     true},
    {"torus mu-prime", {"mu_prime"}, false, false},
    {"torus systole",
     {"enumerate_classes", "complex_systole", "lagrange_gauss_shortest", "systolic_ratio"},
     false,
     true},
    {"torus reduce",
     {"reduce_tau", "is_in_fundamental_domain", "mu_pair", "translate_reduce_siegel"},
     false,
     false},
    {"torus verify-bound", {"verify_polarized_bound", "polarized_mu_and_bound"}, true, false},
    {"reinhardt mu", {"log_volume", "reinhardt_mu", "product_base"}, false, false},
    {"reinhardt verify-invariance", {"monomial_pushforward", "dilation_pushforward"}, false, false},
    {"elliptic mu", {"elliptic_bundle_mu"}, false, false},
    {"length ratio", {"area", "len_class", "ratio"}, false, false},
    {"verify loewner", {"loewner_check"}, false, true},
    {"verify minimality",
     {"verify_minimality", "cycle_omega_volume_1d", "surface_omega_volume_2d"},
     true,
     true},
};

ComplexLattice lattice_input(const Context& ctx) {
  const bool has_lattice = ctx.given("--lattice");
  if (has_lattice == ctx.given("--siegel")) throw InputError("exactly one of --lattice or --siegel is required");
  if (has_lattice) return parse_lattice(load_json(ctx.o.lattice, "lattice"), "lattice");
  const SiegelPoint point = parse_siegel(load_json(ctx.o.siegel, "siegel"), "siegel");
  return from_siegel(point);
}

DecomposableClass class_input(const std::string& text, const std::string& root) {
  return parse_class(load_json(text, root), root);
}

Complex tau_input(const Options& o) { return {o.tau.at(0), o.tau.at(1)}; }

double tr_tol(const Context& ctx) { return ctx.has_tolerance ? ctx.o.tolerance : kDefaultTrTolerance; }

void require_seed(const Context& ctx, const std::string& why) {
  if (!ctx.has_seed) throw InputError("--seed is required " + why);
}

ConformalField field_input(const Context& ctx) {
  const Options& o = ctx.o;
  const Complex tau{o.tau_re, o.tau_im};
  if (o.field == "const") return ConformalField::constant(tau, o.grid, o.rho);
  if (o.field == "trig") {
    require_seed(ctx, "for a generated field");
    return ConformalField::trigonometric(tau, o.grid, TrigFieldSpec{o.seed, o.degree, o.lo, o.hi});
  }
  return parse_field(load_json(o.field, "field"), "field");
}

Outcome torus_mu(const Context& ctx) {
  ComplexLattice lattice = lattice_input(ctx);
  DecomposableClass cls = class_input(ctx.o.cls, "class");
  const bool product = ctx.given("--lattice2") || ctx.given("--class2");
  if (product) {
    if (!ctx.given("--lattice2") || !ctx.given("--class2")) {
      throw InputError("--lattice2 and --class2 must be given together");
    }
    lattice = product_lattice(lattice, parse_lattice(load_json(ctx.o.lattice2, "lattice2"), "lattice2"));
    cls = product_class(cls, class_input(ctx.o.class2, "class2"));
  }
  const double tol = tr_tol(ctx);
  Outcome r;
  r.body["mu"] = extremal_volume(lattice, cls, tol);
  r.body["covolume"] = covolume(lattice);
  r.body["omega_volume"] = omega_volume_class(lattice, cls);
  const bool tr = is_totally_real(lattice, cls, tol);
  r.body["totally_real"] = tr;
  if (!tr) r.body["marker"] = "non-TR";
  r.body["phase"] = tr ? Json(phase(lattice, cls, tol)) : Json(nullptr);
  r.body["tr_tol"] = tol;
  r.body["period_matrix"] = to_json(Eigen::MatrixXcd(period_matrix(lattice, cls)));
  r.body["real_generator_matrix"] = to_json(Eigen::MatrixXd(real_generator_matrix(lattice)));
  if (product || ctx.given("--siegel")) {
    r.body["lattice"] = to_json(lattice);
    r.body["class"] = to_json(cls);
  }
  return r;
}

Outcome torus_mu_prime(const Context& ctx) {
  const ComplexLattice lattice = lattice_input(ctx);
  const DecomposableClass cls = class_input(ctx.o.cls, "class");
  Outcome r;
  r.body["mu_prime"] = mu_prime(lattice, cls);
  return r;
}

Outcome torus_systole(const Context& ctx) {
  const ComplexLattice lattice = lattice_input(ctx);
  SystoleOptions opts;
  opts.coeff_bound = ctx.o.coeff_bound;
  opts.tr_tol = tr_tol(ctx);
  const SystoleResult s = complex_systole(lattice, opts);
  Outcome r;
  r.body["value"] = s.value;
  r.body["witness"] = to_json(s.witness);
  r.body["certified"] = s.certified;
  r.body["ratio"] = systolic_ratio(lattice, opts);
  r.body["coeff_bound"] = opts.coeff_bound;
  r.body["box_limited"] = true;
  if (lattice.dimension() == 1) {
    const ShortestVector v = lagrange_gauss_shortest(lattice);
    r.body["lagrange_gauss"] = Json{{"vector", to_json(v.vector)}, {"length", v.length}, {"p", v.p}, {"q", v.q}};
  }
  if (ctx.o.list_classes) {
    const ClassEnumeration e = enumerate_classes(lattice, opts.coeff_bound);
    Json classes = Json::array();
    for (const DecomposableClass& c : e.classes) classes.push_back(to_json(c.coeffs()));
    r.body["classes"] = std::move(classes);
  }
  return r;
}

Outcome torus_reduce(const Context& ctx) {
  const bool has_tau = ctx.given("--tau");
  if (has_tau == ctx.given("--siegel")) throw InputError("exactly one of --tau or --siegel is required");
  Outcome r;
  if (has_tau) {
    const ReductionTrace trace = reduce_tau(tau_input(ctx.o), ctx.o.max_iter);
    r.body = to_json(trace);
    r.body["in_fundamental_domain"] = is_in_fundamental_domain(trace.final_tau);
    const MuPair mp = mu_pair(trace.final_tau);
    r.body["mu_pair"] = Json{{"mu_alpha", mp.mu_alpha}, {"mu_alpha_prime", mp.mu_alpha_prime}};
    return r;
  }
  const SiegelPoint point = parse_siegel(load_json(ctx.o.siegel, "siegel"), "siegel");
  r.body["point"] = to_json(translate_reduce_siegel(point));
  return r;
}

Outcome torus_verify_bound(const Context& ctx) {
  const Options& o = ctx.o;
  Outcome r;
  if (ctx.given("--siegel")) {
    if (!ctx.given("--d")) throw InputError("--d is required");
    const SiegelPoint point = parse_siegel(load_json(o.siegel, "siegel"), "siegel");
    const PolarizedBound b = polarized_mu_and_bound(point, o.d);
    r.body["mu"] = b.mu;
    r.body["bound_ok"] = b.bound_ok;
    r.body["d"] = o.d;
    if (!b.bound_ok) {
      r.status = kExitVerificationFailed;
      r.failure = "1/det B exceeds d";
      r.body["witness"] = to_json(point);
    }
    return r;
  }
  require_seed(ctx, "for torus verify-bound");
  if (!ctx.given("--n")) throw InputError("--n is required");
  double d = o.d;
  if (!ctx.given("--d")) {
    if (o.n != 1) throw InputError("--d is required for n >= 2");
    d = kHexagonalBound;
  }
  const BoundReport report = verify_polarized_bound(o.n, o.samples, o.seed, o.coeff_bound, d);
  r.body = to_json(report);
  if (report.violations > 0 || report.polarization_violations > 0) {
    r.status = kExitVerificationFailed;
    r.failure = "systolic bound violated";
  }
  return r;
}

LogBase base_input(const std::string& text, const std::string& root) {
  return parse_log_base(load_json(text, root), root);
}

Outcome reinhardt_mu_cmd(const Context& ctx) {
  LogBase base = base_input(ctx.o.base, "base");
  if (ctx.given("--base2")) base = product_base(base, base_input(ctx.o.base2, "base2"));
  const VolumeEstimate v = log_volume(base);
  Outcome r;
  r.body["mu"] = reinhardt_mu(base);
  r.body["log_volume"] = v.value;
  r.body["stderr"] = v.standard_error;
  r.body["exact"] = base.is_box_list();
  r.body["n"] = base.dimension();
  return r;
}

Outcome reinhardt_verify_invariance(const Context& ctx) {
  const Options& o = ctx.o;
  const LogBase before = base_input(o.base, "base");
  if (!ctx.given("--transform") && !ctx.given("--dilation")) {
    throw InputError("at least one of --transform or --dilation is required");
  }
  LogBase after = before;
  if (ctx.given("--transform")) {
    const IntMatrix u = parse_int_matrix(load_json(o.transform, "transform"), "transform");
    MonteCarloConfig mc{o.mc_samples, o.seed};
    if (before.is_box_list() && u.rows() == u.cols() && !is_signed_permutation(u)) {
      require_seed(ctx, "when the transform needs Monte-Carlo sampling");
    }
    after = monomial_pushforward(after, u, mc);
  }
  if (ctx.given("--dilation")) {
    const Json j = load_json(o.dilation, "dilation");
    if (!j.is_array()) throw InputError("dilation: expected an array of [re, im] pairs");
    std::vector<Complex> a;
    for (std::size_t i = 0; i < j.size(); ++i) a.push_back(parse_complex(j[i], "dilation[" + std::to_string(i) + "]"));
    after = dilation_pushforward(after, a);
  }
  const InvarianceCheck c = compare_log_volumes(before, after);
  Outcome r;
  r.body["before"] = Json{{"log_volume", c.before.value}, {"stderr", c.before.standard_error}, {"mu", c.mu_before}};
  r.body["after"] = Json{{"log_volume", c.after.value}, {"stderr", c.after.standard_error}, {"mu", c.mu_after}};
  r.body["tolerance"] = c.tolerance;
  r.body["ok"] = c.ok;
  if (!c.ok) {
    r.status = kExitVerificationFailed;
    r.failure = "logarithmic volume changed under the transformation";
    r.body["witness"] = Json{{"bbox_after", to_json(after.bounding_box())},
                             {"difference", c.after.value - c.before.value}};
  }
  return r;
}

Outcome elliptic_mu(const Context& ctx) {
  Outcome r;
  r.body["mu"] = elliptic_bundle_mu(ctx.o.c, tau_input(ctx.o));
  return r;
}

Outcome length_ratio(const Context& ctx) {
  const ConformalField field = field_input(ctx);
  const CurveClass cls{ctx.o.p, ctx.o.q};
  const LengthOptions lo{ctx.o.extent_margin};
  Outcome r;
  r.body["len"] = len_class(field, cls, lo);
  r.body["area"] = area(field);
  r.body["ratio"] = ratio(field, cls, lo);
  r.body["N"] = field.resolution();
  return r;
}

Outcome verify_loewner(const Context& ctx) {
  const ConformalField field = field_input(ctx);
  const double tol = ctx.has_tolerance ? ctx.o.tolerance : kGridRatioTolerance;
  const LoewnerReport report = loewner_check(field, ctx.o.coeff_bound, tol, LengthOptions{ctx.o.extent_margin});
  Outcome r;
  r.body = to_json(report);
  r.body["N"] = field.resolution();
  if (!report.ok) {
    r.status = kExitVerificationFailed;
    r.failure = "min ratio exceeds the Loewner bound";
    r.body["witness"] = Json{{"p", report.minimizer.p}, {"q", report.minimizer.q}, {"ratio", report.min_ratio}};
  }
  return r;
}

Outcome verify_minimality_cmd(const Context& ctx) {
  const Options& o = ctx.o;
  require_seed(ctx, "for verify minimality");
  const ComplexLattice lattice = lattice_input(ctx);
  const DecomposableClass cls = class_input(o.cls, "class");
  MinimalityOptions mo;
  mo.trials = o.trials;
  mo.seed = o.seed;
  mo.eps_max = o.eps_max;
  mo.quadrature = o.quadrature;
  mo.degree = o.degree;
  if (ctx.has_tolerance) mo.margin_tol = o.tolerance;
  const MinimalityReport report = verify_minimality(lattice, cls, mo);
  Outcome r;
  r.body = to_json(report);
  r.body["Q"] = mo.quadrature;
  r.body["margin_tol"] = mo.margin_tol;
  if (ctx.given("--probe-amplitude")) {
    Rng rng(derive_seed(o.seed, ~std::uint64_t{0}));
    double value = 0.0;
    if (lattice.dimension() == 1) {
      value = cycle_omega_volume_1d(
          PerturbedCycle1D{lattice, cls, TrigCurve::random(rng, o.degree).scaled(o.probe_amplitude), o.quadrature});
    } else {
      value = surface_omega_volume_2d(
          PerturbedTorus2D{lattice, cls, TrigSurface::random(rng, o.degree), o.probe_amplitude, o.quadrature});
    }
    r.body["probe"] = Json{{"amplitude", o.probe_amplitude}, {"value", value}};
  }
  if (report.violations > 0) {
    r.status = kExitVerificationFailed;
    r.failure = "perturbed volume below the flat value";
  }
  return r;
}

void table_lines(std::ostream& out, const std::string& prefix, const Json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      table_lines(out, prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
    }
    return;
  }
  out << prefix << ": " << dump(j) << '\n';
}

Json defaults_header() {
  return Json{{"N", kDefaultN}, {"Q", kDefaultQ}, {"coeff_bound", kDefaultCoeffBound}, {"tr_tol", kDefaultTrTolerance}};
}

}  // namespace

const std::vector<CommandInfo>& command_table() { return kCommands; }

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Extremal volumes of complex tori, Reinhardt domains and conformal fields", "extvol"};
  app.require_subcommand(1);
  app.add_option("--output", o.output, "json or table")->check(CLI::IsMember({"json", "table"}));
  CLI::Option* seed_opt = app.add_option("--seed", o.seed, "master seed for stochastic commands");
  CLI::Option* tol_opt = app.add_option("--tolerance", o.tolerance, "tolerance override");

  std::map<std::string, std::pair<CLI::App*, Handler>> leaves;
  std::map<std::string, CLI::App*> groups;
  auto leaf = [&](const std::string& path, const std::string& help, Handler h) {
    const auto space = path.find(' ');
    const std::string group = path.substr(0, space);
    CLI::App*& g = groups[group];
    if (!g) {
      g = app.add_subcommand(group, group + " commands");
      g->require_subcommand(1);
      g->fallthrough();
    }
    CLI::App* sub = g->add_subcommand(path.substr(space + 1), help);
    sub->fallthrough();
    leaves[path] = {sub, std::move(h)};
    return sub;
  };

  auto lattice_opts = [&](CLI::App* s) {
    s->add_option("--lattice", o.lattice, "lattice JSON or file");
    s->add_option("--siegel", o.siegel, "Siegel point JSON or file");
  };
  auto field_opts = [&](CLI::App* s) {
    s->add_option("--field", o.field, "const, trig, or field JSON / file");
    s->add_option("--tau-re", o.tau_re, "real part of tau");
    s->add_option("--tau-im", o.tau_im, "imaginary part of tau");
    s->add_option("--N", o.grid, "grid resolution")->check(CLI::PositiveNumber);
    s->add_option("--rho", o.rho, "value of a constant field");
    s->add_option("--degree", o.degree, "trigonometric degree")->check(CLI::PositiveNumber);
    s->add_option("--lo", o.lo, "minimum of a trig field");
    s->add_option("--hi", o.hi, "maximum of a trig field");
    s->add_option("--extent-margin", o.extent_margin, "extra fundamental domains around the target")->check(CLI::NonNegativeNumber);
  };

  CLI::App* s = leaf("torus mu", "extremal volume of a class", torus_mu);
  lattice_opts(s);
  s->add_option("--class", o.cls, "class coefficients JSON or file")->required();
  s->add_option("--lattice2", o.lattice2, "second factor of a product torus");
  s->add_option("--class2", o.class2, "class in the second factor");

  s = leaf("torus mu-prime", "volume-form supremum without the totally real gate", torus_mu_prime);
  lattice_opts(s);
  s->add_option("--class", o.cls, "class coefficients JSON or file")->required();

  s = leaf("torus systole", "complex systole over the coefficient box", torus_systole);
  lattice_opts(s);
  s->add_option("--coeff-bound", o.coeff_bound, "coefficient box bound")->check(CLI::PositiveNumber);
  s->add_flag("--list-classes", o.list_classes, "also list the enumerated classes");

  s = leaf("torus reduce", "modular or Siegel reduction", torus_reduce);
  s->add_option("--tau", o.tau, "tau as RE IM")->expected(2);
  s->add_option("--siegel", o.siegel, "Siegel point JSON or file");
  s->add_option("--max-iter", o.max_iter, "iteration cap")->check(CLI::PositiveNumber);

  s = leaf("torus verify-bound", "sampled systolic bound check", torus_verify_bound);
  s->add_option("--n", o.n, "complex dimension")->check(CLI::Range(1, 2));
  s->add_option("--samples", o.samples, "number of random Siegel points")->check(CLI::PositiveNumber);
  s->add_option("--coeff-bound", o.coeff_bound, "coefficient box bound")->check(CLI::PositiveNumber);
  s->add_option("--d", o.d, "bound to check against");
  s->add_option("--siegel", o.siegel, "evaluate a single Siegel point");

  s = leaf("reinhardt mu", "extremal volume of a Reinhardt base", reinhardt_mu_cmd);
  s->add_option("--base", o.base, "log-base JSON or file")->required();
  s->add_option("--base2", o.base2, "second factor of a product");

  s = leaf("reinhardt verify-invariance", "log-volume invariance under monomial maps and dilations",
           reinhardt_verify_invariance);
  s->add_option("--base", o.base, "log-base JSON or file")->required();
  s->add_option("--transform", o.transform, "integer matrix U");
  s->add_option("--dilation", o.dilation, "[[re, im], ...]");
  s->add_option("--samples", o.mc_samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);

  s = leaf("elliptic mu", "principal elliptic bundle", elliptic_mu);
  s->add_option("--c", o.c, "dilation constant")->required();
  s->add_option("--tau", o.tau, "tau as RE IM")->expected(2)->required();

  s = leaf("length ratio", "grid extremal-length ratio of a curve class", length_ratio);
  field_opts(s);
  s->add_option("--p", o.p, "first class coefficient")->required();
  s->add_option("--q", o.q, "second class coefficient")->required();

  s = leaf("verify loewner", "Loewner inequality over primitive classes", verify_loewner);
  field_opts(s);
  s->add_option("--coeff-bound", o.coeff_bound, "coefficient box bound")->check(CLI::PositiveNumber);

  s = leaf("verify minimality", "Omega-volume of perturbed flat cycles", verify_minimality_cmd);
  lattice_opts(s);
  s->add_option("--class", o.cls, "class coefficients JSON or file")->required();
  s->add_option("--trials", o.trials, "number of perturbations")->check(CLI::PositiveNumber);
  s->add_option("--eps-max", o.eps_max, "largest perturbation amplitude")->check(CLI::NonNegativeNumber);
  s->add_option("--Q", o.quadrature, "quadrature points per direction")->check(CLI::PositiveNumber);
  s->add_option("--degree", o.degree, "perturbation degree")->check(CLI::PositiveNumber);
  s->add_option("--probe-amplitude", o.probe_amplitude, "evaluate one perturbation of this amplitude")->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  for (const CommandInfo& info : kCommands) {
    auto& [sub, handler] = leaves.at(info.path);
    if (!sub->parsed()) continue;
    Context ctx{o, sub, seed_opt->count() > 0, tol_opt->count() > 0};
    Outcome result;
    try {
      if (ctx.has_tolerance && !info.takes_tolerance) {
        throw InputError("--tolerance does not apply to " + info.path);
      }
      result = handler(ctx);
    } catch (const InputError& e) {
      err << "error: " << e.what() << '\n';
      return kExitInputError;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitInputError;
    }

    Json doc;
    doc["command"] = info.path;
    doc["defaults"] = defaults_header();
    if (ctx.has_seed) doc["seed"] = o.seed;
    for (auto it = result.body.begin(); it != result.body.end(); ++it) doc[it.key()] = it.value();
    if (o.output == "json") {
      out << dump(doc) << '\n';
    } else {
      const Json& h = doc["defaults"];
      out << "# " << info.path << "  defaults: N=" << dump(h["N"]) << " Q=" << dump(h["Q"])
          << " coeff_bound=" << dump(h["coeff_bound"]) << " tr_tol=" << dump(h["tr_tol"]) << '\n';
      doc.erase("command");
      doc.erase("defaults");
      table_lines(out, "", doc);
    }
    if (result.status == kExitVerificationFailed) err << "verification failed: " << result.failure << '\n';
    return result.status;
  }
  err << "error: no command given\n";
  return kExitInputError;
}

}  // namespace extvol::cli
