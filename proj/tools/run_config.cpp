#include "run_config.hpp"

#include "parallel.hpp"
#include "pointer_sim/envariance.hpp"
#include "pointer_sim/measurement.hpp"
#include "pointer_sim/oracle.hpp"
#include "pointer_sim/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

namespace psim::cli {

namespace {

// ------------- parsing helpers -------------

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

const json& require(const json& cfg, const std::string& key) {
  auto it = cfg.find(key);
  if (it == cfg.end()) fail("missing required key \"" + key + "\"");
  return *it;
}

double as_number(const json& j, const std::string& key) {
  if (!j.is_number()) fail("\"" + key + "\" must be a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail("\"" + key + "\" must be a number or an [re, im] pair");
}

double as_beta(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf")
    return std::numeric_limits<double>::infinity();
  if (j.is_number()) return j.get<double>();
  fail("\"beta\" must be a positive number or \"inf\"");
}

json beta_to_json(double beta) {
  if (std::isinf(beta)) return "inf";
  return beta;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

void reject_unknown(const json& cfg, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) fail("unknown key \"" + it.key() + "\" in " + where);
  }
}

// ------------- shared config fragments -------------

struct TimesCfg {
  bool explicit_list = false;
  std::vector<double> values;
  double start = 0.0, stop = 10.0;
  int count = 101;

  static TimesCfg parse(const json& cfg) {
    TimesCfg t;
    if (!cfg.contains("times")) {
      t.rebuild();
      return t;
    }
    const json& j = cfg.at("times");
    if (j.is_array()) {
      t.explicit_list = true;
      for (const auto& v : j) t.values.push_back(as_number(v, "times[]"));
      if (t.values.empty()) fail("\"times\" must not be empty");
      if (!std::is_sorted(t.values.begin(), t.values.end())) fail("\"times\" must be sorted");
      if (t.values.front() < 0.0) fail("\"times\" must be nonnegative");
      return t;
    }
    if (j.is_object()) {
      reject_unknown(j, {"start", "stop", "count"}, "times");
      t.start = j.contains("start") ? as_number(j.at("start"), "start") : 0.0;
      t.stop = j.contains("stop") ? as_number(j.at("stop"), "stop") : 10.0;
      t.count = j.contains("count") ? j.at("count").get<int>() : 101;
      if (t.count < 1 || t.stop < t.start || t.start < 0.0)
        fail("\"times\" needs 0 <= start <= stop and count >= 1");
      t.rebuild();
      return t;
    }
    fail("\"times\" must be an array or {start, stop, count}");
  }

  void rebuild() {
    if (explicit_list) return;
    values.clear();
    for (int i = 0; i < count; ++i)
      values.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  }

  json to_json() const {
    if (explicit_list) return values;
    return json{{"start", start}, {"stop", stop}, {"count", count}};
  }
};

BathSpec parse_bath(const json& cfg, BathSpec fallback) {
  if (!cfg.contains("bath")) return fallback;
  const json& j = cfg.at("bath");
  if (!j.is_object()) fail("\"bath\" must be an object");
  std::string kind = j.contains("kind") ? j.at("kind").get<std::string>()
                                        : (j.contains("modes") ? "discrete" : "ohmic");
  double beta = j.contains("beta") ? as_beta(j.at("beta"))
                                   : std::numeric_limits<double>::infinity();
  if (kind == "ohmic") {
    reject_unknown(j, {"kind", "eta", "omega_c", "beta"}, "bath");
    double eta = j.contains("eta") ? as_number(j.at("eta"), "eta") : 1.0;
    double omega_c = j.contains("omega_c") ? as_number(j.at("omega_c"), "omega_c") : 1.0;
    return BathSpec::ohmic(eta, omega_c, beta);
  }
  if (kind == "discrete") {
    reject_unknown(j, {"kind", "modes", "beta"}, "bath");
    std::vector<BathMode> modes;
    for (const auto& m : require(j, "modes")) {
      if (!m.is_object()) fail("bath modes must be objects");
      reject_unknown(m, {"omega", "g"}, "bath.modes[]");
      modes.push_back({as_number(require(m, "omega"), "omega"),
                       as_complex(require(m, "g"), "g")});
    }
    return BathSpec::discrete(std::move(modes), beta);
  }
  fail("bath \"kind\" must be \"ohmic\" or \"discrete\"");
}

json bath_to_json(const BathSpec& spec) {
  json j;
  if (spec.kind == BathSpec::Kind::ohmic) {
    j["kind"] = "ohmic";
    j["eta"] = spec.eta;
    j["omega_c"] = spec.omega_c;
  } else {
    j["kind"] = "discrete";
    json modes = json::array();
    for (const auto& m : spec.modes)
      modes.push_back(json{{"omega", m.omega}, {"g", complex_to_json(m.g)}});
    j["modes"] = modes;
  }
  j["beta"] = beta_to_json(spec.beta);
  return j;
}

// Configs may carry rounded values; renormalize unless already at unit norm,
// so canonicalized amplitudes survive a round-trip bit-exactly.
std::pair<Complex, Complex> normalize_pair(Complex a, Complex b, const char* what) {
  double norm = std::sqrt(std::norm(a) + std::norm(b));
  if (!(norm > 0.0) || !std::isfinite(norm))
    fail(std::string(what) + " must have positive finite norm");
  if (std::abs(norm - 1.0) <= 1e-12) return {a, b};
  return {a / norm, b / norm};
}

std::pair<Complex, Complex> parse_pair_amplitudes(const json& cfg) {
  Complex a = as_complex(require(cfg, "a"), "a");
  Complex b = as_complex(require(cfg, "b"), "b");
  return normalize_pair(a, b, "(a, b)");
}

// ------------- output formatting -------------

std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) fail("\"matrix\" must be 4x4");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim) fail("\"matrix\" must be 4x4");
    for (int c = 0; c < dim; ++c) m(r, c) = as_complex(j[r][c], "matrix");
  }
  return m;
}

// ------------- per-command parsed configs -------------

struct PremeasureCfg {
  Complex a, b;
  double g = 1.0;
  int n_odd = 1;
  bool has_free = false;
  double free_dt = 0.0, free_omega0 = 1.0;

  static PremeasureCfg parse(const json& cfg) {
    reject_unknown(cfg, {"a", "b", "g", "n_odd", "free"}, "premeasure config");
    PremeasureCfg p;
    std::tie(p.a, p.b) = parse_pair_amplitudes(cfg);
    if (cfg.contains("g")) p.g = as_number(cfg.at("g"), "g");
    if (cfg.contains("n_odd")) p.n_odd = cfg.at("n_odd").get<int>();
    if (cfg.contains("free")) {
      const json& f = cfg.at("free");
      reject_unknown(f, {"dt", "omega0"}, "free");
      p.has_free = true;
      p.free_dt = as_number(require(f, "dt"), "dt");
      p.free_omega0 = as_number(require(f, "omega0"), "omega0");
    }
    return p;
  }

  json to_json() const {
    json j{{"a", complex_to_json(a)}, {"b", complex_to_json(b)}, {"g", g}, {"n_odd", n_odd}};
    if (has_free) j["free"] = json{{"dt", free_dt}, {"omega0", free_omega0}};
    return j;
  }
};

struct DecohereCfg {
  Complex a, b;
  double omega0 = 0.1;
  BathSpec bath = BathSpec::ohmic(1.0, 1.0, std::numeric_limits<double>::infinity());
  TimesCfg times;

  static DecohereCfg parse(const json& cfg) {
    reject_unknown(cfg, {"a", "b", "omega0", "bath", "times"}, "decohere config");
    DecohereCfg d;
    if (cfg.contains("a") || cfg.contains("b")) {
      std::tie(d.a, d.b) = parse_pair_amplitudes(cfg);
    } else {
      d.a = d.b = 1.0 / std::sqrt(2.0);
    }
    if (cfg.contains("omega0")) d.omega0 = as_number(cfg.at("omega0"), "omega0");
    d.bath = parse_bath(cfg, d.bath);
    d.times = TimesCfg::parse(cfg);
    return d;
  }

  json to_json() const {
    return json{{"a", complex_to_json(a)},     {"b", complex_to_json(b)},
                {"omega0", omega0},            {"bath", bath_to_json(bath)},
                {"times", times.to_json()}};
  }
};

struct OracleCfg {
  Complex a, b;
  double omega0 = 0.1;
  std::vector<BathMode> modes;
  double beta = 1.0;
  bool auto_n_max = true;
  std::vector<int> n_max;  // per mode when not auto
  double adequacy = 1e-6;
  int dim_cap = 16384;
  double tolerance = 1e-4;
  std::string method = "auto";
  TimesCfg times;

  static OracleCfg parse(const json& cfg) {
    reject_unknown(cfg,
                   {"a", "b", "omega0", "bath", "n_max", "adequacy", "dim_cap", "tolerance",
                    "method", "times"},
                   "oracle config");
    OracleCfg o;
    if (cfg.contains("a") || cfg.contains("b")) {
      std::tie(o.a, o.b) = parse_pair_amplitudes(cfg);
    } else {
      o.a = o.b = 1.0 / std::sqrt(2.0);
    }
    if (cfg.contains("omega0")) o.omega0 = as_number(cfg.at("omega0"), "omega0");
    BathSpec spec = parse_bath(cfg, BathSpec::discrete({}, 1.0));
    if (spec.kind != BathSpec::Kind::discrete) fail("oracle needs a discrete bath");
    if (spec.modes.empty()) fail("oracle needs at least one bath mode");
    o.modes = spec.modes;
    o.beta = spec.beta;
    if (cfg.contains("n_max")) {
      const json& n = cfg.at("n_max");
      if (n.is_string() && n.get<std::string>() == "auto") {
        o.auto_n_max = true;
      } else if (n.is_number_integer()) {
        o.auto_n_max = false;
        o.n_max.assign(o.modes.size(), n.get<int>());
      } else if (n.is_array()) {
        o.auto_n_max = false;
        for (const auto& v : n) o.n_max.push_back(v.get<int>());
        if (o.n_max.size() != o.modes.size()) fail("\"n_max\" list must match mode count");
      } else {
        fail("\"n_max\" must be \"auto\", an integer, or a list");
      }
    }
    if (cfg.contains("adequacy")) o.adequacy = as_number(cfg.at("adequacy"), "adequacy");
    if (cfg.contains("dim_cap")) o.dim_cap = cfg.at("dim_cap").get<int>();
    if (cfg.contains("tolerance")) o.tolerance = as_number(cfg.at("tolerance"), "tolerance");
    if (cfg.contains("method")) o.method = cfg.at("method").get<std::string>();
    if (o.method != "auto" && o.method != "full" && o.method != "factorized")
      fail("\"method\" must be \"auto\", \"full\", or \"factorized\"");
    o.times = TimesCfg::parse(cfg);
    return o;
  }

  TruncatedBath bath() const {
    TruncatedBath b;
    if (auto_n_max) {
      b = TruncatedBath::adequate(modes, beta, adequacy);
    } else {
      b.modes = modes;
      b.beta = beta;
      b.n_max = n_max;
      b.adequacy = adequacy;
    }
    b.dim_cap = dim_cap;
    return b;
  }

  ExactPropagator::Method resolved_method(const TruncatedBath& b) const {
    if (method == "full") return ExactPropagator::Method::full;
    if (method == "factorized") return ExactPropagator::Method::factorized;
    return 4L * b.bath_dim() <= b.dim_cap ? ExactPropagator::Method::full
                                          : ExactPropagator::Method::factorized;
  }

  json to_json() const {
    json j{{"a", complex_to_json(a)},
           {"b", complex_to_json(b)},
           {"omega0", omega0},
           {"bath", bath_to_json(BathSpec::discrete(modes, beta))},
           {"adequacy", adequacy},
           {"dim_cap", dim_cap},
           {"tolerance", tolerance},
           {"method", method},
           {"times", times.to_json()}};
    if (auto_n_max)
      j["n_max"] = "auto";
    else
      j["n_max"] = n_max;
    return j;
  }
};

struct ScanCfg {
  // State forms: decohered diagonal from (a,b); bath-evolved (a,b); raw matrix.
  enum class Form { decohered, evolved, matrix } form = Form::decohered;
  Complex a, b;
  double omega0 = 0.1;
  BathSpec bath = BathSpec::ohmic(1.0, 1.0, std::numeric_limits<double>::infinity());
  double t = 0.0;
  Matrix matrix;
  bool random = false;
  int theta_count = 10, phi_count = 10, random_count = 100;
  unsigned seed = 0;
  double unique_tol = 1e-8;

  static ScanCfg parse(const json& cfg) {
    reject_unknown(cfg, {"state", "grid", "seed", "unique_tol"}, "scan config");
    ScanCfg s;
    const json& state = require(cfg, "state");
    if (state.contains("matrix")) {
      reject_unknown(state, {"matrix"}, "state");
      s.form = Form::matrix;
      s.matrix = matrix_from_json(state.at("matrix"), 4);
    } else {
      std::tie(s.a, s.b) = parse_pair_amplitudes(state);
      bool decohered = state.contains("decohered") && state.at("decohered").get<bool>();
      if (decohered) {
        reject_unknown(state, {"a", "b", "decohered"}, "state");
        s.form = Form::decohered;
      } else {
        reject_unknown(state, {"a", "b", "decohered", "omega0", "bath", "t"}, "state");
        s.form = Form::evolved;
        if (state.contains("omega0")) s.omega0 = as_number(state.at("omega0"), "omega0");
        s.bath = parse_bath(state, s.bath);
        s.t = state.contains("t") ? as_number(state.at("t"), "t") : 0.0;
      }
    }
    if (cfg.contains("grid")) {
      const json& g = cfg.at("grid");
      if (g.contains("random_count")) {
        reject_unknown(g, {"random_count"}, "grid");
        s.random = true;
        s.random_count = g.at("random_count").get<int>();
      } else {
        reject_unknown(g, {"theta_count", "phi_count"}, "grid");
        if (g.contains("theta_count")) s.theta_count = g.at("theta_count").get<int>();
        if (g.contains("phi_count")) s.phi_count = g.at("phi_count").get<int>();
      }
    }
    if (cfg.contains("seed")) s.seed = cfg.at("seed").get<unsigned>();
    if (cfg.contains("unique_tol")) s.unique_tol = as_number(cfg.at("unique_tol"), "unique_tol");
    return s;
  }

  DensityOperator state() const {
    switch (form) {
      case Form::decohered: {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = std::norm(a);
        m(3, 3) = std::norm(b);
        return validate_density(m, {2, 2});
      }
      case Form::evolved: {
        JointState psi({2, 2}, (Vector(4) << a, 0.0, 0.0, b).finished());
        return evolve_density(pure_density(psi), omega0, bath, t);
      }
      case Form::matrix:
        return validate_density(matrix, {2, 2});
    }
    fail("unreachable state form");
  }

  json to_json() const {
    json state;
    switch (form) {
      case Form::decohered:
        state = json{{"a", complex_to_json(a)}, {"b", complex_to_json(b)}, {"decohered", true}};
        break;
      case Form::evolved:
        state = json{{"a", complex_to_json(a)},
                     {"b", complex_to_json(b)},
                     {"decohered", false},
                     {"omega0", omega0},
                     {"bath", bath_to_json(bath)},
                     {"t", t}};
        break;
      case Form::matrix:
        state = json{{"matrix", matrix_to_json(matrix)}};
        break;
    }
    json grid = random ? json{{"random_count", random_count}}
                       : json{{"theta_count", theta_count}, {"phi_count", phi_count}};
    return json{{"state", state}, {"grid", grid}, {"seed", seed}, {"unique_tol", unique_tol}};
  }
};

struct EnvarianceCfg {
  Complex c0, c1;
  double swap_phase = 0.0;
  bool counts_given = false;
  int count_a = 1, count_b = 1;
  bool approx_given = false;
  double approx_p = 0.0;  // defaults to |c0|^2
  long approx_cap = 10000;

  static EnvarianceCfg parse(const json& cfg) {
    reject_unknown(cfg, {"c0", "c1", "swap_phase", "counts", "approx"}, "envariance config");
    EnvarianceCfg e;
    e.c0 = as_complex(require(cfg, "c0"), "c0");
    e.c1 = as_complex(require(cfg, "c1"), "c1");
    std::tie(e.c0, e.c1) = normalize_pair(e.c0, e.c1, "(c0, c1)");
    if (cfg.contains("swap_phase")) e.swap_phase = as_number(cfg.at("swap_phase"), "swap_phase");
    if (cfg.contains("counts")) {
      const json& c = cfg.at("counts");
      reject_unknown(c, {"a", "b"}, "counts");
      e.counts_given = true;
      e.count_a = require(c, "a").get<int>();
      e.count_b = require(c, "b").get<int>();
    }
    if (cfg.contains("approx")) {
      const json& a = cfg.at("approx");
      reject_unknown(a, {"p", "cap"}, "approx");
      e.approx_given = true;
      e.approx_p = a.contains("p") ? as_number(a.at("p"), "p") : std::norm(e.c0);
      if (a.contains("cap")) e.approx_cap = a.at("cap").get<long>();
    }
    return e;
  }

  json to_json() const {
    json j{{"c0", complex_to_json(c0)},
           {"c1", complex_to_json(c1)},
           {"swap_phase", swap_phase}};
    if (counts_given) j["counts"] = json{{"a", count_a}, {"b", count_b}};
    if (approx_given) j["approx"] = json{{"p", approx_p}, {"cap", approx_cap}};
    return j;
  }
};

// Smallest exact branch counts for probability p, if any with a+b <= 1024.
std::optional<std::pair<int, int>> exact_counts(double p) {
  for (int total = 2; total <= 1024; ++total) {
    int a = static_cast<int>(std::lround(p * total));
    if (a < 1 || a >= total) continue;
    if (std::abs(double(a) / total - p) <= 1e-9) return std::make_pair(a, total - a);
  }
  return std::nullopt;
}

}  // namespace

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1 + std::count(text.begin(), text.begin() + std::min(text.size(), e.byte), '\n');
    throw std::invalid_argument("config: parse error at line " + std::to_string(line) + ": " +
                                e.what());
  }
}

CommandResult cmd_premeasure(const json& cfg) {
  PremeasureCfg p = PremeasureCfg::parse(cfg);
  Complex a = p.a, b = p.b;
  if (p.has_free) std::tie(a, b) = free_evolve(a, b, p.free_dt, p.free_omega0);
  PremeasurementConfig pm{p.g, p.n_odd};
  JointState out = premeasure(a, b, pm);
  double tau = tau_pm(p.g, p.n_odd);
  json doc{{"tau_pm", tau},
           {"amplitudes", json::array()},
           {"unitary", matrix_to_json(premeasurement_unitary(p.g, tau))}};
  for (int i = 0; i < 4; ++i) doc["amplitudes"].push_back(complex_to_json(out.amplitudes(i)));
  return {dump(doc), 0};
}

CommandResult cmd_decohere(const json& cfg) {
  DecohereCfg d = DecohereCfg::parse(cfg);
  JointState psi({2, 2}, (Vector(4) << d.a, 0.0, 0.0, d.b).finished());
  DensityOperator rho0 = pure_density(psi);

  const int n = static_cast<int>(d.times.values.size());
  std::vector<std::string> rows(n);
  parallel_for(n, [&](int i) {
    const double t = d.times.values[i];
    const double i1_value = i1(d.bath, t);
    DensityOperator rho = evolve_density(rho0, d.omega0, d.bath, t);
    const Complex r14 = rho.matrix(0, 3);
    rows[i] = fmt12(t) + "," + fmt12(i1_value) + "," + fmt12(r14.real()) + "," +
              fmt12(r14.imag()) + "," + fmt12(std::abs(r14)) + "," +
              fmt12(rho.matrix(0, 0).real()) + "," + fmt12(rho.matrix(3, 3).real()) + "\n";
  });

  std::string csv = "t,I1,re_rho14,im_rho14,abs_rho14,pop_pp,pop_mm\n";
  for (const auto& r : rows) csv += r;
  return {csv, 0};
}

CommandResult cmd_oracle(const json& cfg) {
  OracleCfg o = OracleCfg::parse(cfg);
  TruncatedBath bath = o.bath();
  JointState psi({2, 2}, (Vector(4) << o.a, 0.0, 0.0, o.b).finished());
  OracleReport report = compare_analytic(pure_density(psi), bath, o.omega0,
                                         o.times.values, o.resolved_method(bath));
  std::string csv = "t,max_abs_diff,truncation_bound\n";
  bool exceeded = false;
  for (size_t i = 0; i < report.times.size(); ++i) {
    csv += fmt12(report.times[i]) + "," + fmt12(report.max_abs_diff[i]) + "," +
           fmt12(report.truncation_bound) + "\n";
    if (report.max_abs_diff[i] > o.tolerance) exceeded = true;
  }
  return {csv, exceeded ? 4 : 0};
}

CommandResult cmd_scan(const json& cfg, std::optional<unsigned> seed_override) {
  ScanCfg s = ScanCfg::parse(cfg);
  if (seed_override) s.seed = *seed_override;
  DensityOperator rho = s.state();
  std::vector<BasisCandidate> grid = s.random
                                         ? random_grid(s.random_count, s.seed)
                                         : default_grid(s.theta_count, s.phi_count);

  ScanReport report = pointer_scan(rho, grid, s.unique_tol);

  json entries = json::array();
  for (const auto& e : report.entries)
    entries.push_back(json{{"label", e.candidate.label},
                           {"theta", e.candidate.theta},
                           {"phi", e.candidate.phi},
                           {"norm", e.norm}});
  const auto& best = report.entries[report.minimizer];
  json doc{{"entries", entries},
           {"minimizer", json{{"index", report.minimizer},
                              {"label", best.candidate.label},
                              {"theta", best.candidate.theta},
                              {"phi", best.candidate.phi},
                              {"norm", best.norm}}},
           {"margin", report.margin},
           {"unique", report.unique}};
  return {dump(doc), 0};
}

CommandResult cmd_envariance(const json& cfg) {
  EnvarianceCfg e = EnvarianceCfg::parse(cfg);
  JointState psi({2, 2}, (Vector(4) << e.c0, 0.0, 0.0, e.c1).finished());
  SchmidtDecomposition schmidt = schmidt_decompose(psi);
  Matrix u_s = swap_system(e.swap_phase, schmidt.basis_s);
  Matrix u_a = counter_swap(e.swap_phase, std::arg(schmidt.coefficients[0]),
                            std::arg(schmidt.coefficients[1]), schmidt.basis_a);
  double residual = reversal_residual(psi, u_s, u_a);

  json doc{{"schmidt_moduli",
            json::array({std::abs(schmidt.coefficients[0]), std::abs(schmidt.coefficients[1])})},
           {"swap_phase", e.swap_phase},
           {"reversal_residual", residual},
           {"envariant", residual < 1e-10}};

  std::optional<std::pair<int, int>> counts;
  if (e.counts_given)
    counts = std::make_pair(e.count_a, e.count_b);
  else
    counts = exact_counts(std::norm(e.c0));
  if (counts) {
    FineGrainedState fg = fine_grain(e.c0, e.c1, counts->first, counts->second);
    auto [p0, p1] = born_by_counting(fg);
    doc["counts"] = json{{"a", counts->first}, {"b", counts->second}};
    doc["born"] = json{{"p0", p0}, {"p1", p1}};
  }
  if (e.approx_given) {
    RationalApprox approx = rational_approx(e.approx_p, e.approx_cap);
    doc["rational"] = json{{"a", approx.a}, {"b", approx.b}, {"gap", approx.gap}};
  }
  return {dump(doc), 0};
}

json canonical_config(const std::string& command, const json& cfg) {
  if (command == "premeasure") return PremeasureCfg::parse(cfg).to_json();
  if (command == "decohere") return DecohereCfg::parse(cfg).to_json();
  if (command == "oracle") return OracleCfg::parse(cfg).to_json();
  if (command == "scan") return ScanCfg::parse(cfg).to_json();
  if (command == "envariance") return EnvarianceCfg::parse(cfg).to_json();
  throw std::invalid_argument("canonical_config: unknown command " + command);
}

}  // namespace psim::cli
