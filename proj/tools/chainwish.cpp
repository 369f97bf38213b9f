// chainwish: sampling, evaluation and checks for Wishart families on chains.
//
// Exit codes: 0 ok, 1 verification failed, 2 parameter outside its domain,
// 3 I/O or format error, 4 no parameter conversion exists, 5 missing-data
// pattern not monotone, 6 no pivot separates the missing-data prefixes and
// suffixes.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "chainwish/chain_graph.hpp"
#include "chainwish/io.hpp"
#include "chainwish/letac_massam.hpp"
#include "chainwish/missing_data.hpp"
#include "chainwish/verify_suite.hpp"
#include "chainwish/wishart_p.hpp"
#include "chainwish/wishart_q.hpp"

namespace cw = chainwish;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kDomain = 2, kIo = 3, kNoConversion = 4, kNonMonotone = 5, kNoPivot = 6 };

struct ExitError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ExitError{kIo, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json band_json(const cw::TridiagSym& y) { return json::parse(cw::to_json(y)); }
json band_json(const cw::IncompleteSym& x) { return json::parse(cw::to_json(x)); }

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CHAINWISH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ExitError{kIo, std::string("CHAINWISH_SEED is not an unsigned integer: ") + env};
    }
  }
  return cw::kDefaultSeed;
}

const char* natural_key(const std::string& family) { return family == "q" ? "y" : "x"; }

cw::FamilyParams load_params(const std::string& path, const std::string& family) {
  return cw::params_from_json(read_file(path), natural_key(family));
}

// Point files hold one band matrix, or {"points": [...]} for moments.
std::vector<std::string> load_points(const std::string& path) {
  const json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw cw::FormatError("malformed JSON in " + path);
  std::vector<std::string> out;
  if (j.is_object() && j.contains("points")) {
    for (const auto& p : j.at("points")) out.push_back(p.dump());
  } else {
    out.push_back(j.dump());
  }
  return out;
}

int cmd_sample(const std::string& family, const std::string& params_path, long count, std::uint64_t seed,
               const std::string& out_path, bool use_sigma) {
  const cw::FamilyParams fp = load_params(params_path, family);
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw ExitError{kIo, "cannot write " + out_path};
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  const int n = fp.shape.size();
  std::vector<std::string> meta{"chainwish sample family=" + family + (use_sigma ? " (quadratic construction)" : ""),
                                "seed=" + std::to_string(seed) + " count=" + std::to_string(count),
                                "params=" + cw::params_to_json(fp, natural_key(family))};
  cw::Rng rng = cw::make_stream(seed, 0);
  if (family == "q") {
    const cw::TridiagSym y(fp.diag, fp.off);
    if (use_sigma) {
      if (!fp.sigma) throw cw::FormatError("--sigma needs a \"sigma\" entry in the parameter file");
      const auto q = cw::QuadraticSampler::from_sigma(*fp.sigma, fp.shape.pivot(), y);
      cw::write_sample_header(out, meta, n);
      for (long i = 0; i < count; ++i) cw::write_sample_row(out, q.sample(rng).coords());
    } else {
      const cw::WishartQ w(fp.shape, y);
      cw::write_sample_header(out, meta, n);
      for (long i = 0; i < count; ++i) cw::write_sample_row(out, w.sample(rng).coords());
    }
  } else {
    if (use_sigma) throw ExitError{kDomain, "--sigma applies to the q family only"};
    const cw::WishartP w(fp.shape, cw::IncompleteSym(fp.diag, fp.off));
    cw::write_sample_header(out, meta, n);
    for (long i = 0; i < count; ++i) cw::write_sample_row(out, w.sample(rng).coords());
  }
  if (!out) throw ExitError{kIo, "write failed"};
  return kOk;
}

json eval_q(const std::string& what, const cw::FamilyParams& fp, const std::vector<std::string>& points) {
  const cw::TridiagSym y(fp.diag, fp.off);
  const auto point = [&]() -> const std::string& {
    if (points.empty()) throw ExitError{kIo, "--point is required for " + what};
    return points.front();
  };
  json r{{"what", what}, {"family", "q"}};
  if (what == "inverse-mean") {
    const cw::IncompleteSym m = cw::incomplete_from_json(point());
    r["y"] = band_json(cw::inverse_mean_q(fp.shape, m));
    return r;
  }
  if (what == "variance" && !points.empty()) {
    const cw::IncompleteSym m = cw::incomplete_from_json(point());
    cw::require_Q(m, "variance: mean");
    r["operator"] = matrix_json(cw::variance_q(fp.shape, m).matrix);
    return r;
  }
  const cw::WishartQ w(fp.shape, y);
  if (what == "density") {
    r["log_density"] = w.log_density(cw::incomplete_from_json(point()));
  } else if (what == "laplace") {
    r["log_laplace"] = w.log_laplace(cw::tridiag_from_json(point()));
  } else if (what == "mean") {
    r["mean"] = band_json(w.mean());
  } else if (what == "variance") {
    r["operator"] = matrix_json(w.covariance().matrix);
    r["coordinate_covariance"] = matrix_json(cw::coordinate_covariance(w.covariance()));
  } else if (what == "moment") {
    std::vector<cw::TridiagSym> zs;
    for (const auto& p : points) zs.push_back(cw::tridiag_from_json(p));
    if (zs.empty()) throw ExitError{kIo, "--point is required for moment"};
    r["moment"] = w.moment(zs);
  }
  return r;
}

json eval_p(const std::string& what, const cw::FamilyParams& fp, const std::vector<std::string>& points) {
  const cw::WishartP w(fp.shape, cw::IncompleteSym(fp.diag, fp.off));
  const auto point = [&]() -> const std::string& {
    if (points.empty()) throw ExitError{kIo, "--point is required for " + what};
    return points.front();
  };
  json r{{"what", what}, {"family", "p"}};
  if (what == "density") {
    r["log_density"] = w.log_density(cw::tridiag_from_json(point()));
  } else if (what == "laplace") {
    r["log_laplace"] = w.log_laplace(cw::incomplete_from_json(point()));
  } else if (what == "mean") {
    r["mean"] = band_json(w.mean());
  } else if (what == "variance") {
    r["operator"] = matrix_json(w.covariance().matrix);
    r["coordinate_covariance"] = matrix_json(cw::coordinate_covariance(w.covariance()));
  } else if (what == "moment") {
    std::vector<cw::IncompleteSym> xs;
    for (const auto& p : points) xs.push_back(cw::incomplete_from_json(p));
    if (xs.empty()) throw ExitError{kIo, "--point is required for moment"};
    r["moment"] = w.moment(xs);
  } else if (what == "inverse-mean") {
    throw ExitError{kDomain, "inverse-mean is available for the q family only"};
  }
  return r;
}

int cmd_eval(const std::string& what, const std::string& family, const std::string& params_path,
             const std::string& point_path) {
  const cw::FamilyParams fp = load_params(params_path, family);
  const auto points = point_path.empty() ? std::vector<std::string>{} : load_points(point_path);
  std::cout << (family == "q" ? eval_q(what, fp, points) : eval_p(what, fp, points)).dump(2) << '\n';
  return kOk;
}

int cmd_orders(int n) {
  const cw::ChainGraph g(n);
  json elim = json::array();
  for (const auto& o : cw::enumerate_eliminating_orders(g)) elim.push_back({{"order", o.sequence()}, {"M", o.max_vertex()}});
  json perfect = json::array();
  if (n >= 2)
    for (const auto& o : cw::enumerate_perfect_clique_orders(g)) {
      json cliques = json::array();
      for (int k = 1; k <= static_cast<int>(o.sequence().size()); ++k) {
        const auto c = o.clique(k);
        cliques.push_back({c.first, c.last});
      }
      json entry{{"cliques", cliques}};
      entry["first_separator"] = o.sequence().size() >= 2 ? json(cw::first_separator(o)) : json(nullptr);
      perfect.push_back(entry);
    }
  std::cout << json{{"n", n}, {"eliminating_orders", elim}, {"perfect_clique_orders", perfect}}.dump(2) << '\n';
  return kOk;
}

int cmd_lm_convert(const std::string& direction, const std::string& path) {
  const std::string text = read_file(path);
  if (direction == "to-shape") {
    const cw::HParams h = cw::hparams_from_json(text);
    const auto shapes = cw::h_to_shape_all(h);
    if (shapes.empty())
      throw ExitError{kNoConversion,
                      "no interior pivot M has its equality pattern satisfied by (alpha, beta); "
                      "these H parameters are not a power function of any shape"};
    json all = json::array();
    for (const auto& p : shapes)
      all.push_back({{"M", p.pivot()}, {"s", vector_json(p.s())}, {"in_Q_domain", p.in_Q_domain()},
                     {"satisfies_bounds", cw::satisfies_bounds(h, p.pivot())}});
    std::cout << json{{"M", shapes.front().pivot()}, {"s", vector_json(shapes.front().s())}, {"candidates", all}}.dump(2)
              << '\n';
  } else {
    const json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("M") || !j.contains("s")) throw cw::FormatError("expected {\"M\": .., \"s\": [..]}");
    Eigen::VectorXd s(static_cast<Eigen::Index>(j.at("s").size()));
    for (std::size_t i = 0; i < j.at("s").size(); ++i) s[static_cast<Eigen::Index>(i)] = j.at("s")[i].get<double>();
    const cw::ShapeParams p(j.at("M").get<int>(), s);
    if (p.pivot() == 1 || p.pivot() == p.size())
      throw ExitError{kNoConversion,
                      "M = " + std::to_string(p.pivot()) +
                          " is an end vertex: its power function has n-1 diagonal exponents while H(alpha, beta) "
                          "only has n-2, so the end-pivot family is strictly larger than the H family"};
    std::cout << json::parse(cw::hparams_to_json(cw::shape_to_h(p))).dump(2) << '\n';
  }
  return kOk;
}

int cmd_missing_stat(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ExitError{kIo, "cannot open " + path};
  const cw::MissingStatistic st = cw::missing_statistic(cw::missing_from_csv(in));
  json r{{"M", st.pivot},
         {"sigma", vector_json(st.sigma)},
         {"s", vector_json(st.shape.s())},
         {"in_Q_domain", st.shape.in_Q_domain()},
         {"T", band_json(st.total)}};
  std::cout << r.dump(2) << '\n';
  return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, long samples, const std::string& json_path,
               const std::string& mutate) {
  cw::VerifyOptions opt;
  opt.seed = seed;
  opt.samples = samples;
  if (!mutate.empty()) {
    if (mutate != "mean-sign") throw ExitError{kIo, "unknown mutation " + mutate};
    opt.mutate_mean_sign = true;
  }
  const auto results = cw::run_verification(suite, opt);
  std::cout << cw::results_table(results);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw ExitError{kIo, "cannot write " + json_path};
    out << cw::results_json(results, opt) << '\n';
  }
  for (const auto& r : results)
    if (!r.passed) return kVerifyFailed;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wishart families on chain graphs: sampling, evaluation and verification"};
  app.require_subcommand(1);

  std::string family = "q", params, point, out, what, direction, file, suite = "all", json_out, mutate;
  long count = 1000, samples = 20000;
  int n = 3;
  bool use_sigma = false;
  std::uint64_t seed = 0;

  auto* sample = app.add_subcommand("sample", "draw from a Q- or P-family law");
  sample->add_option("--family", family)->check(CLI::IsMember({"q", "p"}));
  sample->add_option("--params", params, "parameter JSON")->required();
  sample->add_option("-n,--count", count)->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "defaults to $CHAINWISH_SEED");
  sample->add_option("-o,--out", out, "CSV output (stdout if omitted)");
  sample->add_flag("--sigma", use_sigma, "use the quadratic construction with the \"sigma\" counts");

  auto* eval = app.add_subcommand("eval", "evaluate density, Laplace transform, mean, inverse mean, variance or moment");
  eval->add_option("what", what)
      ->required()
      ->check(CLI::IsMember({"density", "laplace", "mean", "inverse-mean", "variance", "moment"}));
  eval->add_option("--family", family)->check(CLI::IsMember({"q", "p"}));
  eval->add_option("--params", params)->required();
  eval->add_option("--point", point, "band JSON, or {\"points\": [...]} for moment");

  auto* orders = app.add_subcommand("orders", "list eliminating and perfect clique orders");
  orders->add_option("n", n)->required()->check(CLI::Range(1, 30));

  auto* lm = app.add_subcommand("lm-convert", "convert between H(alpha, beta) and (M, s)");
  lm->add_option("direction", direction)->required()->check(CLI::IsMember({"to-shape", "to-h"}));
  lm->add_option("file", file)->required();

  auto* missing = app.add_subcommand("missing-stat", "sufficient statistic of monotone missing data (CSV)");
  missing->add_option("file", file)->required();

  auto* verify = app.add_subcommand("verify", "run the Monte Carlo verification battery");
  verify->add_option("--suite", suite)->check(CLI::IsMember(cw::verification_suites()));
  verify->add_option("--seed", seed, "defaults to $CHAINWISH_SEED");
  verify->add_option("--samples", samples)->check(CLI::Range(2L, 100000000L));
  verify->add_option("--json", json_out, "write the JSON report here");
  verify->add_option("--mutate", mutate)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIo;
  }

  try {
    const auto seed_or_default = [&](CLI::App* cmd) { return cmd->count("--seed") ? seed : default_seed(); };
    if (*sample) return cmd_sample(family, params, count, seed_or_default(sample), out, use_sigma);
    if (*eval) return cmd_eval(what, family, params, point);
    if (*orders) return cmd_orders(n);
    if (*lm) return cmd_lm_convert(direction, file);
    if (*missing) return cmd_missing_stat(file);
    if (*verify) return cmd_verify(suite, seed_or_default(verify), samples, json_out, mutate);
  } catch (const ExitError& e) {
    std::cerr << "chainwish: " << e.message << '\n';
    return e.code;
  } catch (const cw::DomainError& e) {
    std::cerr << "chainwish: " << e.what() << '\n';
    return kDomain;
  } catch (const cw::NonMonotonePattern& e) {
    std::cerr << "chainwish: " << e.what() << '\n';
    return kNonMonotone;
  } catch (const cw::NoConsistentPivot& e) {
    std::cerr << "chainwish: " << e.what() << '\n';
    return kNoPivot;
  } catch (const cw::FormatError& e) {
    std::cerr << "chainwish: " << e.what() << '\n';
    return kIo;
  } catch (const cw::DimensionError& e) {
    std::cerr << "chainwish: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "chainwish: " << e.what() << '\n';
    return kDomain;
  }
  return kOk;
}
