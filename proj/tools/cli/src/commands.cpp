#include "egren_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "egren/amplitude.hpp"
#include "egren/error.hpp"
#include "egren/extend.hpp"
#include "egren/graph.hpp"
#include "egren/hadamard.hpp"
#include "egren/hopf.hpp"
#include "egren/partition.hpp"
#include "egren/renorm.hpp"
#include "egren/zforest.hpp"
#include "egren_cli/documents.hpp"

namespace egren::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int d = 4;
  int order = 2;
  int zeta_symbols = laurent::kMaxZetaIndex;
  double tolerance = 1e-6;
  std::uint64_t seed = 1;
  std::string format = "text";
};

class Report {
 public:
  void put(const std::string& key, const Json& value) {
    json_[key] = value;
    lines_.emplace_back(key, render(value));
  }
  void put(const std::string& key, long value) { put(key, Json(value)); }
  void put(const std::string& key, int value) { put(key, Json(value)); }
  void put(const std::string& key, bool value) { put(key, Json(value)); }
  void put(const std::string& key, const char* value) { put(key, Json(value)); }
  void put(const std::string& key, double value) {
    json_[key] = round15(value);
    lines_.emplace_back(key, format15(value));
  }
  void put_series(const std::string& key, const laurent::Series& s) {
    json_[key] = to_json(s);
    lines_.emplace_back(key, s.to_string());
  }
  // Text lines without a key.
  void text(const std::string& line) { lines_.emplace_back("", line); }

  void write(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      out << json_.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : lines_) out << (k.empty() ? "" : k + ": ") << v << "\n";
  }

 private:
  static std::string render(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_string(); })) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get<std::string>();
      return s;
    }
    return v.dump();
  }

  Json json_ = Json::object();
  std::vector<std::pair<std::string, std::string>> lines_;
};

void check_symbols(const laurent::Series& s, const Globals& g) {
  for (int j = g.zeta_symbols + 1; j <= laurent::kMaxZetaIndex; ++j)
    if (s.max_degree(laurent::zeta_slot(j)) > 0)
      fail(Errc::UnsupportedArgument, "result needs zeta(" + std::to_string(j) + "), above --zeta-symbols " +
                                          std::to_string(g.zeta_symbols));
}

void put_series(Report& r, const std::string& key, const laurent::Series& s, const Globals& g) {
  check_symbols(s, g);
  r.put_series(key, s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GraphInput {
  std::string sp;
  std::string graph;
  std::string graph_file;

  void add(CLI::App* app) {
    app->add_option("--sp", sp, "series-parallel expression, e.g. P(S(e,e),e)");
    app->add_option("--graph", graph, "graph document (JSON text)");
    app->add_option("--graph-file", graph_file, "graph document file");
  }

  bool given() const { return !sp.empty() || !graph.empty() || !graph_file.empty(); }

  std::optional<amplitude::SPGraph> sp_graph() const {
    if (sp.empty()) return std::nullopt;
    return amplitude::sp_parse(sp);
  }

  GraphDocument document() const {
    int n = !sp.empty() + !graph.empty() + !graph_file.empty();
    if (n != 1) throw UsageError("give exactly one of --sp, --graph, --graph-file");
    if (!sp.empty()) {
      auto g = amplitude::sp_parse(sp);
      return from_graph(g.graph, g.rho);
    }
    return parse_graph_document(graph.empty() ? read_file(graph_file) : graph);
  }
};

laurent::Series default_value() { return laurent::Series::monomial(-1, laurent::Coeff(1)); }

// ---------------------------------------------------------------- graph

void cmd_graph(const std::string& action, const GraphInput& in, int ext, const std::string& v0, bool restricted,
               const Globals& g, Report& r) {
  GraphDocument doc = in.document();
  graph::Graph gr = to_graph(doc);
  if (action == "show") {
    r.put("document", to_json(doc));
  } else if (action == "div") {
    auto dv = graph::divergence_degree(gr, g.d, ext);
    r.put("degree", dv.degree);
    r.put("classification", dv.classification);
  } else if (action == "loops") {
    auto ln = graph::loop_numbers(gr);
    r.put("components", ln.components);
    r.put("loops", ln.loops);
  } else if (action == "cohomology") {
    int base = v0.empty() ? gr.vertices().front() : vertex_id(doc, v0);
    auto cd = graph::relative_coordinates(gr, base);
    r.put("base_vertex", doc.vertices[static_cast<std::size_t>(base - 1)]);
    r.put("incidence_rank", cd.incidence_rank);
    r.put("betti", cd.betti);
    Json coords = Json::array();
    for (const auto& c : cd.coordinates) coords.push_back(c.to_string());
    r.put("coordinates", coords);
    r.put("incidence", Json(cd.incidence));
  } else if (action == "coproduct") {
    auto terms = hopf::graph_coproduct(gr);
    r.put("count", static_cast<long>(terms.size()));
    Json arr = Json::array();
    for (const auto& t : terms) {
      Json e;
      e["partition"] = t.partition.to_string();
      e["quotient"] = to_json(from_graph(t.quotient));
      e["multiplicity"] = t.multiplicity;
      arr.push_back(e);
      r.text(t.partition.to_string() + " x" + std::to_string(t.multiplicity) + "  quotient " + t.quotient.to_string());
    }
    r.put("terms", arr);
  } else if (action == "zforests") {
    auto fs = zforest::zimmermann_forests(gr, restricted, g.d);
    auto cands = zforest::forest_candidates(gr, restricted, g.d);
    long maximal = std::count_if(fs.begin(), fs.end(), [&](const zforest::ZForest& u) { return zforest::is_maximal(u, cands); });
    r.put("restricted", restricted);
    r.put("total", static_cast<long>(fs.size()));
    r.put("maximal", maximal);
  }
}

// ------------------------------------------------------- partitions/forests

void cmd_partitions(int n, bool list, Report& r) {
  auto ps = partition::enumerate_partitions(n);
  r.put("n", n);
  r.put("count", static_cast<long>(ps.size()));
  if (list) {
    Json arr = Json::array();
    for (const auto& p : ps) arr.push_back(p.to_string());
    r.put("partitions", arr);
  }
}

void cmd_forests(int n, bool list, int sample, const Globals& g, Report& r) {
  auto fs = partition::enumerate_eg_forests(n);
  long full = std::count_if(fs.begin(), fs.end(), [](const auto& f) { return f.full(); });
  long maximal = std::count_if(fs.begin(), fs.end(), [](const auto& f) { return f.maximal(); });
  r.put("n", n);
  r.put("total", static_cast<long>(fs.size()));
  r.put("full", full);
  r.put("normal", static_cast<long>(fs.size()) - full);
  r.put("maximal", maximal);
  if (list) {
    Json arr = Json::array();
    for (const auto& f : fs) arr.push_back(f.to_string());
    r.put("forests", arr);
  }
  if (sample > 0) {
    std::vector<partition::EGForest> normal;
    for (const auto& f : fs)
      if (f.normal()) normal.push_back(f);
    if (normal.empty()) fail(Errc::ParamDomain, "no normal forests to sample");
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<std::size_t> pick(0, normal.size() - 1);
    long ok = 0;
    for (int i = 0; i < sample; ++i) {
      const auto& f = normal[pick(rng)];
      auto back = partition::interleave(partition::decompose_normal_forest(f));
      ok += std::find(back.begin(), back.end(), f) != back.end();
    }
    r.put("sampled", sample);
    r.put("round_trips", ok);
  }
}

// ------------------------------------------------------------ hadamard

void cmd_hadamard(const std::string& variant, const std::string& norm, double m, double mu, double zeta, double z2re,
                  double z2im, bool residue, bool alpha_limit, const Globals& g, Report& r) {
  hadamard::cplx z2(z2re, z2im);
  if (residue) {
    auto rep = hadamard::residue_check(g.d, m, z2, mu);
    r.put("lhs_re", rep.lhs.real());
    r.put("lhs_im", rep.lhs.imag());
    r.put("rhs_re", rep.rhs.real());
    r.put("rhs_im", rep.rhs.imag());
    r.put("agree", std::abs(rep.lhs - rep.rhs) <= g.tolerance * std::max(1.0, std::abs(rep.rhs)));
    return;
  }
  if (alpha_limit) {
    double v = hadamard::alpha_quotient_limit(m, mu);
    r.put("alpha_quotient_limit", v);
    r.put("half_log_squared", 0.5 * std::pow(std::log(m / mu), 2));
    return;
  }
  hadamard::HadamardParams p;
  p.d = g.d;
  p.m = m;
  p.mu = mu;
  p.zeta = zeta;
  p.z2 = z2;
  p.normalization = norm == "two-pi-squared" ? hadamard::Normalization::TwoPiSquared : hadamard::Normalization::Standard;
  static const std::map<std::string, hadamard::Variant> variants{{"odd", hadamard::Variant::OddUnique},
                                                                  {"even-regularized", hadamard::Variant::EvenRegularized},
                                                                  {"even-limit", hadamard::Variant::EvenLimit},
                                                                  {"wightman", hadamard::Variant::Wightman}};
  auto v = hadamard::hadamard_eval(p, variants.at(variant));
  r.put("variant", variant);
  r.put("re", v.real());
  r.put("im", v.imag());
}

// --------------------------------------------------------------- extend

struct ExtendArgs {
  double beta = -1;
  int lambda = -2;  // -2: use the divergence degree
  double w_width = 1;
  double f_width = 1;
  std::vector<double> f_poly{1};
  double degree = 0;
  std::string a = "1";
  std::string k = "1";
  std::string a_gamma = "1";
  bool control = false;
};

void cmd_extend(const std::string& action, const ExtendArgs& x, const Globals& g, Report& r) {
  using namespace extend;
  TestFunction f = TestFunction::gaussian_poly(x.f_poly, x.f_width);
  if (action == "eval") {
    PowerKernel u = PowerKernel::power(x.beta);
    int lambda = x.lambda == -2 ? std::max(-1, u.divergence()) : x.lambda;
    WFamily w = lambda < 0 ? WFamily(-1, {}) : WFamily::standard(lambda, x.w_width);
    r.put("lambda", lambda);
    r.put("value", extend_eval(u, w, f));
  } else if (action == "probe") {
    r.put("scaling_degree", scaling_probe(PowerKernel::power(x.beta), f, geometric_grid(1e-3, 1e-1, 10)));
  } else if (action == "euler") {
    r.put("residual", euler_residual(PowerKernel::power(x.beta), x.degree, f));
  } else if (action == "ms") {
    auto res = analytic_ms_1d(parse_rational(x.a), parse_rational(x.k), f, g.order);
    if (res.series) put_series(r, "series", *res.series, g);
    put_series(r, "pp", res.pp, g);
    r.put("ms_value", res.ms_value);
    r.put("w_ms_check", res.w_ms_check);
    r.put("agree", std::fabs(res.ms_value - res.w_ms_check) <= g.tolerance);
  } else if (action == "redundant") {
    auto rep = renorm::redundant_projection_check(parse_rational(x.a), parse_rational(x.a_gamma), parse_rational(x.k),
                                                  {0.1, 0.05, 0.025, 0.0125}, x.control);
    Json pts = Json::array();
    for (const auto& p : rep.points) {
      Json e;
      e["zeta"] = round15(p.zeta);
      e["lhs"] = round15(p.lhs);
      e["rhs"] = round15(p.rhs);
      e["residual"] = round15(p.residual);
      pts.push_back(e);
      r.text("zeta " + format15(p.zeta) + "  residual " + format15(p.residual));
    }
    r.put("points", pts);
    r.put("fitted_order", rep.fitted_order);
    r.put("unsubtracted", rep.unsubtracted);
  }
}

// ------------------------------------------------------------ amplitude

void cmd_amplitude(const GraphInput& in, const std::string& source, const std::string& sink, const Globals& g,
                   Report& r) {
  amplitude::ClosedFormAmplitude cf;
  if (auto sp = in.sp_graph(); sp && in.graph.empty() && in.graph_file.empty()) {
    cf = amplitude::sp_reduce(*sp, g.d);
  } else {
    GraphDocument doc = in.document();
    if (source.empty() || sink.empty()) throw UsageError("--source and --sink are required with a graph document");
    auto red = amplitude::reduce_two_terminal(to_graph(doc), multipliers_of(doc), vertex_id(doc, source),
                                              vertex_id(doc, sink), g.d);
    if (!red) fail(Errc::NotSeriesParallel, "graph is not series-parallel between the terminals");
    cf = *red;
  }
  auto pairing = amplitude::evaluate_pairing(cf, g.order);
  r.put("closed_form", cf.to_string());
  r.put("exact_power", to_string(pairing.exact_power));
  put_series(r, "series", pairing.series, g);
}

// --------------------------------------------------------------- renorm

void cmd_renorm(const GraphInput& in, int toy, const std::string& value, const std::string& what, const Globals& g,
                Report& r) {
  std::unique_ptr<renorm::AmplitudeProvider> provider;
  if (toy > 0) {
    if (in.given()) throw UsageError("--toy excludes graph input");
    laurent::Series v = value.empty() ? default_value() : parse_series_document(value);
    provider = std::make_unique<renorm::ScalarToy>(renorm::ScalarToy::uniform(toy, v));
  } else {
    if (in.sp.empty()) throw UsageError("renorm needs --sp or --toy");
    auto m = std::make_unique<renorm::SPModel>(amplitude::sp_parse(in.sp), g.d, g.order);
    r.put("provider", m->describe());
    r.put("infrared_safe", m->infrared_safe());
    r.put("logarithmic_subdivergences", m->logarithmic_subdivergences());
    provider = std::move(m);
  }
  if (toy > 0) r.put("provider", provider->describe());
  if (what == "counterterms") {
    auto z = renorm::bph_counterterms(*provider);
    Json arr = Json::array();
    for (const auto& [mask, s] : z) {
      if (partition::popcount(mask) < 2) continue;
      check_symbols(s, g);
      Json e;
      e["block"] = partition::mask_to_string(mask);
      e["counterterm"] = to_json(s);
      arr.push_back(e);
      r.text(partition::mask_to_string(mask) + ": " + s.to_string());
    }
    r.put("counterterms", arr);
    return;
  }
  laurent::Series s;
  if (what == "forest") s = renorm::forest_formula(*provider);
  else if (what == "prepared") s = renorm::prepared_amplitude(*provider);
  else s = renorm::bph_assembly(*provider, renorm::bph_counterterms(*provider));
  s = s.truncated(g.order);
  put_series(r, "series", s, g);
  put_series(r, "principal_part", s.pp(), g);
}

// ----------------------------------------------------------------- hopf

void cmd_hopf(const std::string& action, int n, const std::string& value, const Globals& g, Report& r) {
  if (n < 1) fail(Errc::ParamDomain, "--n must be >= 1");
  if (action == "coproduct") {
    r.put("coproduct", hopf::to_string(hopf::coproduct(hopf::gen(n))));
  } else if (action == "antipode") {
    r.put("antipode", hopf::antipode_A(hopf::gen(n)).to_string());
  } else if (action == "antipode-c") {
    r.put("antipode_c", hopf::antipode_AC(n).to_string());
  } else if (action == "check") {
    auto a = hopf::convolution(hopf::identity_map(), hopf::antipode_map(), hopf::Product::Odot, n);
    auto c = hopf::convolution(hopf::identity_map(), hopf::antipode_c_map(), hopf::Product::Comp, n);
    auto e = hopf::unit_counit_map()(n);
    r.put("id_conv_antipode", a.to_string());
    r.put("id_comp_antipode_c", c.to_string());
    r.put("unit_counit", e.to_string());
  } else if (action == "counterterms") {
    laurent::Series v = value.empty() ? default_value() : parse_series_document(value);
    auto z = hopf::counterterms(hopf::uniform_rules(n, v), n);
    Json arr = Json::array();
    for (std::size_t k = 0; k < z.size(); ++k) {
      check_symbols(z[k], g);
      arr.push_back(to_json(z[k]));
      r.text("Z" + std::to_string(k + 1) + " = " + z[k].to_string());
    }
    r.put("counterterms", arr);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"egren: Epstein-Glaser renormalization laboratory"};
  app.name("egren");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--d", g.d, "spacetime dimension")->capture_default_str();
  app.add_option("--order", g.order, "truncation order in zeta")->capture_default_str()->check(CLI::Range(0, 12));
  app.add_option("--zeta-symbols", g.zeta_symbols, "largest zeta(j) allowed in results")
      ->capture_default_str()
      ->check(CLI::Range(2, laurent::kMaxZetaIndex));
  app.add_option("--tolerance", g.tolerance, "agreement tolerance for numeric checks")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--format", g.format, "output format")->capture_default_str()->check(CLI::IsMember({"json", "text"}));

  auto sub = [&](const std::string& name, const std::string& desc) {
    auto* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  std::string action;
  GraphInput gin;
  int ext = 0;
  std::string v0;
  bool restricted = false;
  auto* gcmd = sub("graph", "graph invariants: show | div | loops | cohomology | coproduct | zforests");
  gcmd->add_option("action", action)->required()->check(CLI::IsMember({"show", "div", "loops", "cohomology", "coproduct", "zforests"}));
  gin.add(gcmd);
  gcmd->add_option("--ext", ext, "external derivative count")->capture_default_str();
  gcmd->add_option("--v0", v0, "base vertex name for cohomology");
  gcmd->add_flag("--restricted", restricted, "restricted Zimmermann forests");

  int n = 0;
  bool list = false;
  int sample = 0;
  auto* pcmd = sub("partitions", "set partitions of {1..n}");
  pcmd->add_option("--n", n)->required()->check(CLI::Range(1, partition::kDefaultCap));
  pcmd->add_flag("--list", list);
  auto* fcmd = sub("forests", "Epstein-Glaser forests on {1..n}");
  fcmd->add_option("--n", n)->required()->check(CLI::Range(1, partition::kForestCap));
  fcmd->add_flag("--list", list);
  fcmd->add_option("--sample", sample, "check decompose/interleave on this many random normal forests")
      ->check(CLI::NonNegativeNumber);

  std::string variant = "wightman", norm = "standard";
  double m = 1, mu = 1, zeta = 0, z2re = -1, z2im = 0;
  bool residue = false, alpha_limit = false;
  auto* hcmd = sub("hadamard", "Hadamard parametrices and the two-point function");
  hcmd->add_option("--variant", variant)->capture_default_str()->check(CLI::IsMember({"odd", "even-regularized", "even-limit", "wightman"}));
  hcmd->add_option("--normalization", norm)->capture_default_str()->check(CLI::IsMember({"standard", "two-pi-squared"}));
  hcmd->add_option("--m", m)->capture_default_str();
  hcmd->add_option("--mu", mu)->capture_default_str();
  hcmd->add_option("--zeta", zeta)->capture_default_str();
  hcmd->add_option("--z2", z2re, "real part of z^2")->capture_default_str();
  hcmd->add_option("--z2-imag", z2im, "imaginary part of z^2")->capture_default_str();
  hcmd->add_flag("--residue", residue, "compare the residue at zeta = 0 with the even limit");
  hcmd->add_flag("--alpha-limit", alpha_limit, "difference-quotient limit of alpha");

  ExtendArgs ex;
  auto* ecmd = sub("extend", "one-dimensional extensions: eval | probe | euler | ms | redundant");
  ecmd->add_option("action", action)->required()->check(CLI::IsMember({"eval", "probe", "euler", "ms", "redundant"}));
  ecmd->add_option("--beta", ex.beta, "kernel exponent of |x|^beta")->capture_default_str();
  ecmd->add_option("--lambda", ex.lambda, "subtraction order (default: degree of divergence)");
  ecmd->add_option("--w-width", ex.w_width, "Gaussian width of the W family")->capture_default_str();
  ecmd->add_option("--f-width", ex.f_width, "Gaussian width of the test function")->capture_default_str();
  ecmd->add_option("--f-poly", ex.f_poly, "polynomial coefficients of the test function")->delimiter(',');
  ecmd->add_option("--degree", ex.degree, "Euler degree D")->capture_default_str();
  ecmd->add_option("--a", ex.a, "exponent a of |x|^(-a - k zeta)")->capture_default_str();
  ecmd->add_option("--k", ex.k, "zeta slope k")->capture_default_str();
  ecmd->add_option("--a-gamma", ex.a_gamma, "inner exponent for the redundant check")->capture_default_str();
  ecmd->add_flag("--control", ex.control, "negative control for the redundant check");

  std::string source, sink;
  auto* acmd = sub("amplitude", "closed-form amplitude of a series-parallel graph");
  GraphInput ain;
  ain.add(acmd);
  acmd->add_option("--source", source);
  acmd->add_option("--sink", sink);

  int toy = 0;
  std::string value, what = "forest";
  auto* rcmd = sub("renorm", "forest formula, prepared amplitude and counterterms");
  GraphInput rin;
  rcmd->add_option("--sp", rin.sp, "series-parallel expression");
  rcmd->add_option("--toy", toy, "scalar toy model on {1..n}")->check(CLI::Range(1, partition::kForestCap));
  rcmd->add_option("--value", value, "series document for the toy values f_k, k >= 2 (default 1/zeta)");
  rcmd->add_option("--what", what)->capture_default_str()->check(CLI::IsMember({"forest", "prepared", "counterterms", "assembly"}));

  auto* ocmd = sub("hopf", "Faa di Bruno Hopf algebra: coproduct | antipode | antipode-c | check | counterterms");
  ocmd->add_option("action", action)->required()->check(CLI::IsMember({"coproduct", "antipode", "antipode-c", "check", "counterterms"}));
  ocmd->add_option("--n", n, "generator index")->required();
  ocmd->add_option("--value", value, "series document for the uniform rule (default 1/zeta)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  Report r;
  try {
    if (gcmd->parsed()) cmd_graph(action, gin, ext, v0, restricted, g, r);
    else if (pcmd->parsed()) cmd_partitions(n, list, r);
    else if (fcmd->parsed()) cmd_forests(n, list, sample, g, r);
    else if (hcmd->parsed()) cmd_hadamard(variant, norm, m, mu, zeta, z2re, z2im, residue, alpha_limit, g, r);
    else if (ecmd->parsed()) cmd_extend(action, ex, g, r);
    else if (acmd->parsed()) cmd_amplitude(ain, source, sink, g, r);
    else if (rcmd->parsed()) cmd_renorm(rin, toy, value, what, g, r);
    else if (ocmd->parsed()) cmd_hopf(action, n, value, g, r);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  if (gcmd->parsed() && action == "show" && g.format == "json") {
    out << serialize(gin.document());
    return kExitOk;
  }
  r.write(out, g.format);
  return kExitOk;
}

}  // namespace egren::cli
