#include "cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "codim1/detail/random.hpp"

namespace codim1::cli {

namespace {

using Complex = std::complex<double>;

std::string at(const std::string& where, const std::string& what) { return where + ": " + what; }

Json to_json(const Integer& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) return v.str();
  return v.convert_to<long long>();
}

Json to_json(const LatticeVector& v) {
  Json out = Json::array();
  for (const auto& c : v.coords()) out.push_back(to_json(c));
  return out;
}

Json to_json(const SupportSet& s) {
  Json out = Json::array();
  for (const auto& p : s) out.push_back(to_json(p));
  return out;
}

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return to_json(*v);
}

Json to_json(const Classification& c) {
  Json out;
  out["verdict"] = std::string(to_string(c.verdict));
  out["reason"] = std::string(to_string(c.reason));
  out["u"] = optional_json(c.u);
  out["v"] = optional_json(c.v);
  out["l2_points"] = optional_json(c.l2_points);
  out["predicted_count"] = c.predicted_count ? Json(*c.predicted_count) : Json(nullptr);
  out["dependent_witness"] = c.dependent_witness ? Json(*c.dependent_witness) : Json(nullptr);
  return out;
}

Json to_json(const PolynomialMap<Complex>& f) {
  Json out = Json::array();
  for (const auto& comp : f.components()) {
    Json terms = Json::array();
    for (const auto& [e, c] : comp.terms()) terms.push_back({{"exponent", to_json(e)}, {"coefficient", to_json(c)}});
    out.push_back(std::move(terms));
  }
  return out;
}

Json base_report(const std::string& command, const std::string& digest) {
  Json r;
  r["tool_version"] = kToolVersion;
  r["command"] = command;
  r["input_digest"] = "sha256:" + digest;
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(at(path, "cannot open file"));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LatticeVector parse_exponent(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) throw InputError(at(where, "exponent must be an array of integers"));
  if (j.size() != n) {
    throw InputError(at(where, "expected " + std::to_string(n) + " coordinates, got " + std::to_string(j.size())));
  }
  std::vector<Integer> coords;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw InputError(at(where + "[" + std::to_string(i) + "]", "not an integer"));
    const long long c = j[i].get<long long>();
    if (c < 0) throw InputError(at(where + "[" + std::to_string(i) + "]", "exponent entries must be non-negative"));
    coords.emplace_back(c);
  }
  return LatticeVector(std::move(coords));
}

Complex parse_complex(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(at(where, "complex numbers are written as [re, im]"));
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::size_t positive_size(const Json& root, const char* key) {
  if (!root.contains(key) || !root[key].is_number_integer() || root[key].get<long long>() < 1) {
    throw InputError(at(key, "must be a positive integer"));
  }
  return root[key].get<std::size_t>();
}

SupportSet checked_support(std::size_t n, std::vector<LatticeVector> pts, const std::string& where) {
  try {
    return SupportSet(n, std::move(pts));
  } catch (const Error& e) {
    throw InputError(at(where, e.what()));
  }
}

Json lemma_case(const LatticePolytope& a, const LatticePolytope& b) {
  return {{"A", to_json(a.generators())}, {"B", to_json(b.generators())}};
}

std::vector<LatticeVector> random_generators(std::mt19937_64& rng, std::size_t dim, int max_coord, bool segment) {
  double space = 1.0;
  for (std::size_t i = 0; i < dim; ++i) space *= max_coord + 1;
  std::uniform_int_distribution<int> count_dist(1, 6);
  const std::size_t count = std::min<std::size_t>(segment ? 2 : count_dist(rng), static_cast<std::size_t>(space));
  std::uniform_int_distribution<int> coord(0, max_coord);
  std::vector<LatticeVector> pts;
  while (pts.size() < count) {
    std::vector<Integer> c(dim);
    for (auto& x : c) x = coord(rng);
    LatticeVector p(std::move(c));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return pts;
}

struct LemmaOutcome {
  LemmaCheck check;
  bool inequality_ok = true;
  std::optional<bool> iff_ok;
};

LemmaOutcome run_lemma_case(const LatticePolytope& a, const LatticePolytope& b) {
  LemmaOutcome out;
  out.check = lemma_difr2_check(a, b);
  out.inequality_ok = out.check.sigma + 1 >= out.check.alpha + out.check.beta;
  if (out.check.alpha >= 2 && out.check.beta >= 2) out.iff_ok = out.check.equality == out.check.sum_in_line;
  return out;
}

}  // namespace

PolytopeCollection ProblemFile::collection() const {
  std::vector<SupportSet> sets;
  for (std::size_t i = 0; i < supports.size(); ++i) {
    sets.push_back(checked_support(n, supports[i], "supports[" + std::to_string(i) + "]"));
  }
  try {
    return PolytopeCollection::from_supports(n, sets);
  } catch (const Error& e) {
    throw InputError(at("supports", e.what()));
  }
}

PolynomialMap<Complex> ProblemFile::map() const {
  if (!coefficients) throw InputError(at("coefficients", "missing; this command needs concrete coefficients"));
  std::vector<SparsePolynomial<Complex>> comps;
  for (std::size_t i = 0; i < k; ++i) {
    SparsePolynomial<Complex> p(n);
    for (std::size_t j = 0; j < supports[i].size(); ++j) p.add_term(supports[i][j], (*coefficients)[i][j]);
    comps.push_back(std::move(p));
  }
  return PolynomialMap<Complex>(n, std::move(comps));
}

ProblemFile parse_problem(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("top level must be a JSON object");

  ProblemFile pf;
  pf.digest = sha256_hex(text);
  pf.n = positive_size(root, "n");
  pf.k = positive_size(root, "k");
  if (!root.contains("supports") || !root["supports"].is_array()) throw InputError(at("supports", "missing or not an array"));
  const Json& sup = root["supports"];
  if (sup.size() != pf.k) {
    throw InputError(at("supports", "expected " + std::to_string(pf.k) + " lists, got " + std::to_string(sup.size())));
  }
  for (std::size_t i = 0; i < pf.k; ++i) {
    const std::string where = "supports[" + std::to_string(i) + "]";
    if (!sup[i].is_array() || sup[i].empty()) throw InputError(at(where, "must be a nonempty array of exponents"));
    std::vector<LatticeVector> pts;
    for (std::size_t j = 0; j < sup[i].size(); ++j) {
      pts.push_back(parse_exponent(sup[i][j], pf.n, where + "[" + std::to_string(j) + "]"));
    }
    checked_support(pf.n, pts, where);
    pf.supports.push_back(std::move(pts));
  }

  if (root.contains("coefficients") && !root["coefficients"].is_null()) {
    const Json& co = root["coefficients"];
    if (!co.is_array() || co.size() != pf.k) throw InputError(at("coefficients", "expected " + std::to_string(pf.k) + " lists"));
    std::vector<std::vector<Complex>> coeffs;
    for (std::size_t i = 0; i < pf.k; ++i) {
      const std::string where = "coefficients[" + std::to_string(i) + "]";
      if (!co[i].is_array() || co[i].size() != pf.supports[i].size()) {
        throw InputError(at(where, "must have one entry per exponent in supports[" + std::to_string(i) + "]"));
      }
      std::vector<Complex> row;
      for (std::size_t j = 0; j < co[i].size(); ++j) {
        row.push_back(parse_complex(co[i][j], where + "[" + std::to_string(j) + "]"));
      }
      coeffs.push_back(std::move(row));
    }
    pf.coefficients = std::move(coeffs);
  }
  return pf;
}

ProblemFile load_problem(const std::string& path) { return parse_problem(read_file(path)); }

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("'" + text + "': expected comma-separated real numbers");
    }
  }
  if (parts.empty() || parts.size() % 2 != 0) throw InputError("'" + text + "': expected re,im pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < parts.size(); i += 2) out.emplace_back(parts[i], parts[i + 1]);
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

CommandResult cmd_classify(const std::string& path) {
  CommandResult res;
  try {
    const ProblemFile pf = load_problem(path);
    const auto cls = classify(pf.collection());
    res.report = base_report("classify", pf.digest);
    res.report["classification"] = to_json(cls);
    res.report["diagnostics"] = Json::array();
  } catch (const InputError& e) {
    res.exit_code = kInputError;
    res.error = e.what();
  } catch (const Error& e) {
    res.exit_code = kInputError;
    res.error = e.what();
  }
  return res;
}

CommandResult cmd_solve(const std::string& path, const SolveFlags& flags) {
  CommandResult res;
  try {
    const ProblemFile pf = load_problem(path);
    const PolytopeCollection coll = pf.collection();
    const auto cls = classify(coll);
    res.report = base_report("solve", pf.digest);
    res.report["classification"] = to_json(cls);
    Json diagnostics = Json::array();

    if (cls.verdict != Verdict::NonemptyC1) {
      diagnostics.push_back("solving skipped: verdict " + std::string(to_string(cls.verdict)) + " (" +
                            std::string(to_string(cls.reason)) + ")");
      res.report["c1"] = nullptr;
      res.report["diagnostics"] = diagnostics;
      return res;
    }

    const bool from_file = pf.coefficients.has_value();
    const PolynomialMap<Complex> f = from_file ? pf.map() : sample_generic(coll, flags.seed);
    const auto c1 = compute_C1(f, *cls.u, *cls.v, {flags.samples, flags.tol, flags.seed, 1e-8});

    Json c1j;
    c1j["coefficients_source"] = from_file ? "file" : "generic";
    c1j["seed"] = flags.seed;
    c1j["samples"] = flags.samples;
    c1j["tol"] = flags.tol;
    Json points = Json::array();
    bool all_verified = true;
    for (const auto& p : c1.points) {
      points.push_back({{"kappa", Json::array({to_json(p.kappa1), to_json(p.kappa2)})},
                        {"t0", to_json(p.t0)},
                        {"multiplicity", p.multiplicity},
                        {"residual", p.residual},
                        {"verified", p.verified}});
      all_verified = all_verified && p.verified;
    }
    c1j["points"] = points;
    c1j["count"] = c1.points.size();
    c1j["predicted_count"] = *cls.predicted_count;
    c1j["match"] = c1.points.size() == *cls.predicted_count;
    c1j["all_verified"] = all_verified;
    c1j["map"] = to_json(f);
    res.report["c1"] = c1j;

    for (const auto& w : c1.warnings) diagnostics.push_back("warning: " + w);
    if (c1.points.size() < *cls.predicted_count) {
      diagnostics.push_back("warning: found " + std::to_string(c1.points.size()) + " points, fewer than the generic count " +
                            std::to_string(*cls.predicted_count) + "; the coefficients are not generic");
    }
    if (!all_verified) diagnostics.push_back("warning: some points failed fiber verification");
    res.report["diagnostics"] = diagnostics;
  } catch (const InputError& e) {
    res = {kInputError, nullptr, e.what()};
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::UnalignedExponent  ? kStructuralMismatch
                     : e.kind() == ErrorKind::RetriesExhausted ? kPropertyViolation
                                                               : kInputError;
    res = {code, nullptr, e.what()};
  }
  return res;
}

CommandResult cmd_verify(const std::string& path, const VerifyFlags& flags) {
  CommandResult res;
  try {
    const ProblemFile pf = load_problem(path);
    const auto f = pf.map();
    if (flags.kappa.size() != pf.k) {
      throw InputError(at("--kappa", "expected " + std::to_string(pf.k) + " complex entries, got " +
                                         std::to_string(flags.kappa.size())));
    }
    const auto cls = classify(pf.collection());
    res.report = base_report("verify", pf.digest);
    res.report["classification"] = to_json(cls);
    if (!cls.u) {
      return {kStructuralMismatch, nullptr,
              "no binomial direction: Delta_1 does not lie on a line through the origin (" +
                  std::string(to_string(cls.reason)) + ")"};
    }
    const auto check = verify_codim1(f, flags.kappa, BinomialFactor(*cls.u, flags.t0), flags.samples, flags.tol, flags.seed);
    Json kappa = Json::array();
    for (const auto& z : flags.kappa) kappa.push_back(to_json(z));
    res.report["verify"] = {{"kappa", kappa},   {"t0", to_json(flags.t0)},        {"u", to_json(*cls.u)},
                            {"samples", flags.samples}, {"tol", flags.tol},        {"seed", flags.seed},
                            {"pass", check.pass},       {"max_residual", check.max_residual}};
    res.report["diagnostics"] = Json::array();
    if (!check.pass) res.exit_code = kPropertyViolation;
  } catch (const InputError& e) {
    res = {kInputError, nullptr, e.what()};
  } catch (const Error& e) {
    res = {kInputError, nullptr, e.what()};
  }
  return res;
}

CommandResult cmd_lemma_fuzz(const LemmaFuzzFlags& flags) {
  CommandResult res;
  try {
    std::vector<std::pair<LatticePolytope, LatticePolytope>> pairs;
    std::string digest_source;
    std::size_t dim = flags.dim;

    if (flags.input) {
      digest_source = read_file(*flags.input);
      Json root;
      try {
        root = Json::parse(digest_source);
      } catch (const nlohmann::json::parse_error& e) {
        throw InputError(at(*flags.input, std::string("malformed JSON: ") + e.what()));
      }
      if (!root.contains("pairs") || !root["pairs"].is_array() || root["pairs"].empty()) {
        throw InputError(at("pairs", "missing or empty"));
      }
      const Json& first = root["pairs"][0];
      if (!first.contains("A") || !first["A"].is_array() || first["A"].empty() || !first["A"][0].is_array()) {
        throw InputError(at("pairs[0].A", "must be a nonempty array of points"));
      }
      dim = first["A"][0].size();
      for (std::size_t i = 0; i < root["pairs"].size(); ++i) {
        const Json& pr = root["pairs"][i];
        std::vector<SupportSet> sets;
        for (const char* key : {"A", "B"}) {
          const std::string where = "pairs[" + std::to_string(i) + "]." + key;
          if (!pr.contains(key) || !pr[key].is_array() || pr[key].empty()) throw InputError(at(where, "must be a nonempty array"));
          std::vector<LatticeVector> pts;
          for (std::size_t j = 0; j < pr[key].size(); ++j) {
            pts.push_back(parse_exponent(pr[key][j], dim, where + "[" + std::to_string(j) + "]"));
          }
          sets.push_back(checked_support(dim, std::move(pts), where));
        }
        pairs.emplace_back(LatticePolytope(sets[0]), LatticePolytope(sets[1]));
      }
    } else {
      if (flags.trials < 1) throw InputError(at("--trials", "must be at least 1"));
      if (flags.dim < 1 || flags.dim > 4) throw InputError(at("--dim", "must be between 1 and 4"));
      if (flags.max_coord < 1 || flags.max_coord > 10) throw InputError(at("--max-coord", "must be between 1 and 10"));
      std::ostringstream os;
      os << "lemma-fuzz trials=" << flags.trials << " dim=" << flags.dim << " max-coord=" << flags.max_coord
         << " seed=" << flags.seed << " segments=" << flags.segments;
      digest_source = os.str();
      for (std::size_t t = 0; t < flags.trials; ++t) {
        std::mt19937_64 rng(detail::split_seed(flags.seed, t));
        SupportSet a(dim, random_generators(rng, dim, flags.max_coord, flags.segments));
        SupportSet b(dim, random_generators(rng, dim, flags.max_coord, flags.segments));
        pairs.emplace_back(LatticePolytope(std::move(a)), LatticePolytope(std::move(b)));
      }
    }

    // Trials are independent; workers take interleaved indices and results
    // are assembled in trial order.
    std::vector<LemmaOutcome> outcomes(pairs.size());
    const std::size_t workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < pairs.size(); i += workers) outcomes[i] = run_lemma_case(pairs[i].first, pairs[i].second);
      });
    }
    for (auto& th : pool) th.join();

    std::size_t inequality_passes = 0, equality_cases = 0, collinear_cases = 0, iff_checks = 0, iff_passes = 0;
    Json violations = Json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      inequality_passes += o.inequality_ok;
      equality_cases += o.check.equality;
      collinear_cases += o.check.sum_in_line;
      if (o.iff_ok) {
        ++iff_checks;
        iff_passes += *o.iff_ok;
      }
      if (!o.inequality_ok || (o.iff_ok && !*o.iff_ok)) {
        Json v = lemma_case(pairs[i].first, pairs[i].second);
        v["trial"] = i;
        v["failed"] = o.inequality_ok ? "iff" : "inequality";
        v["sigma"] = o.check.sigma;
        v["alpha"] = o.check.alpha;
        v["beta"] = o.check.beta;
        violations.push_back(v);
      }
    }

    res.report = base_report("lemma-fuzz", sha256_hex(digest_source));
    res.report["classification"] = nullptr;
    Json lemma;
    lemma["trials"] = pairs.size();
    lemma["dim"] = dim;
    lemma["max_coord"] = flags.input ? Json(nullptr) : Json(flags.max_coord);
    lemma["seed"] = flags.seed;
    lemma["segments"] = flags.segments;
    lemma["inequality_checks"] = outcomes.size();
    lemma["inequality_passes"] = inequality_passes;
    lemma["equality_cases"] = equality_cases;
    lemma["collinear_cases"] = collinear_cases;
    lemma["iff_checks"] = iff_checks;
    lemma["iff_passes"] = iff_passes;
    lemma["violations"] = violations;
    res.report["lemma"] = lemma;
    res.report["diagnostics"] = Json::array();
    if (!violations.empty()) {
      res.exit_code = kPropertyViolation;
      res.error = std::to_string(violations.size()) + " lemma assertion(s) violated";
    }
  } catch (const InputError& e) {
    res = {kInputError, nullptr, e.what()};
  } catch (const Error& e) {
    res = {kInputError, nullptr, e.what()};
  }
  return res;
}

namespace {

std::string format_double(double d) {
  if (!std::isfinite(d)) return "null";
  if (d == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

void render(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        render(value, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? ", " : ",\n";
        if (!flat) out += pad;
        render(j[i], out, depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string render_report(const Json& report) {
  std::string out;
  render(report, out, 0);
  out += "\n";
  return out;
}

}  // namespace codim1::cli
