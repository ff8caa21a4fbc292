#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "checks.hpp"
#include "qtau/qtau.hpp"

using json = nlohmann::ordered_json;
using namespace qtau;

namespace {

enum Exit { ok = 0, verify_fail = 1, bad_input = 2, nonconverged = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw option strings; filled from the config file first, then overwritten by flags.
using Raw = std::map<std::string, std::string>;

const std::vector<std::string> kKeys = {
    "q",   "t",         "sigma",   "s0",       "sinf",  "S2",     "method", "k",
    "mu",  "max-boxes", "max-q",   "modes",    "samples", "tol",  "out",    "format",
    "suite", "t-start", "t-end",   "n-points", "fn",    "z",      "u",      "p",
    "n",   "kb"};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Raw read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  Raw r;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto e = line.find('=');
    if (e == std::string::npos)
      throw InputError("config line " + std::to_string(no) + ": expected key = value");
    std::string key = trim(line.substr(0, e)), val = trim(line.substr(e + 1));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw InputError("config line " + std::to_string(no) + ": unknown key '" + key + "'");
    if (val.empty()) throw InputError("config line " + std::to_string(no) + ": empty value");
    r[key] = val;
  }
  return r;
}

// "re", "im i", or "re+im i" / "re-im i"; "i" alone means 1.
cplx parse_complex(const std::string& key, const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (c != ' ') s += c;
  static const std::string num = R"(([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?|[0-9]+\.))";
  static const std::regex real_only("^([+-]?" + num.substr(1, num.size() - 2) + ")$");
  static const std::regex imag_only("^([+-]?)" + num + "?[ij]$");
  static const std::regex both("^([+-]?" + num.substr(1, num.size() - 2) + ")([+-])" + num +
                               "?[ij]$");
  std::smatch m;
  auto d = [&](const std::string& x) { return std::stod(x); };
  if (std::regex_match(s, m, real_only)) return d(m[1]);
  if (std::regex_match(s, m, imag_only)) {
    double v = m[2].matched ? d(m[2]) : 1.0;
    return cplx(0.0, m[1] == "-" ? -v : v);
  }
  if (std::regex_match(s, m, both)) {
    double v = m[3].matched ? d(m[3]) : 1.0;
    return cplx(d(m[1]), m[2] == "-" ? -v : v);
  }
  throw InputError("--" + key + ": cannot parse '" + s0 + "' as a number");
}

double parse_real(const std::string& key, const std::string& s) {
  cplx c = parse_complex(key, s);
  if (c.imag() != 0.0) throw InputError("--" + key + " must be real");
  return c.real();
}

int parse_int(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw InputError("--" + key + ": expected an integer, got '" + s + "'");
  return v;
}

struct Cfg {
  Raw raw;

  bool has(const std::string& k) const { return raw.count(k) > 0; }
  std::string str(const std::string& k, const std::string& def) const {
    return has(k) ? raw.at(k) : def;
  }
  cplx c(const std::string& k, cplx def) const { return has(k) ? parse_complex(k, raw.at(k)) : def; }
  double r(const std::string& k, double def) const { return has(k) ? parse_real(k, raw.at(k)) : def; }
  int i(const std::string& k, int def) const { return has(k) ? parse_int(k, raw.at(k)) : def; }

  std::string format() const {
    std::string f = str("format", "json");
    if (f != "json" && f != "csv") throw InputError("--format must be json or csv");
    return f;
  }
};

struct Run {
  MonodromyInput m;
  cplx q, sigma, t;
  std::optional<cplx> s0, sinf, S2;
  std::string method;
  int k;
  Sector mu;
  SeriesCutoff cut;
  int modes;
  WidomOptions wo;
  std::optional<double> tol;
};

MonodromyInput monodromy(const Cfg& c, cplx q, cplx sigma, std::optional<cplx>& s0,
                         std::optional<cplx>& sinf, std::optional<cplx>& S2) {
  bool has_s = c.has("s0") || c.has("sinf");
  if (has_s && c.has("S2")) throw InputError("give either --s0 and --sinf or --S2, not both");
  if (c.has("S2")) {
    S2 = c.c("S2", 0.0);
    return MonodromyInput::from_S2(q, sigma, *S2);
  }
  if (has_s && !(c.has("s0") && c.has("sinf")))
    throw InputError("--s0 and --sinf must be given together");
  s0 = c.c("s0", 1.3);
  sinf = c.c("sinf", 0.8);
  return MonodromyInput::from_s(q, sigma, *s0, *sinf);
}

Run build_run(const Cfg& c) {
  cplx q = c.c("q", 0.4), sigma = c.c("sigma", 0.17);
  std::optional<cplx> s0, sinf, S2;
  MonodromyInput m = monodromy(c, q, sigma, s0, sinf, S2);
  Run r{m, q, sigma, c.c("t", 0.05), s0, sinf, S2, c.str("method", "series"), c.i("k", -2),
        Sector::zero, {}, c.i("modes", 16), {}, std::nullopt};
  if (r.method != "series" && r.method != "fredholm" && r.method != "widom")
    throw InputError("--method must be series, fredholm or widom");
  if (r.k < -2 || r.k > 2) throw InputError("--k must lie in -2..2");
  std::string mu = c.str("mu", "0");
  if (mu == "half" || mu == "1/2" || mu == "0.5") r.mu = Sector::half;
  else if (mu != "0") throw InputError("--mu must be 0 or half");
  r.cut.max_boxes = c.i("max-boxes", r.cut.max_boxes);
  r.cut.max_Q = c.i("max-q", r.cut.max_Q);
  if (r.cut.max_boxes < 0 || r.cut.max_Q < 0) throw InputError("cutoffs must be nonnegative");
  if (c.has("tol")) {
    r.tol = c.r("tol", 0.0);
    if (!(*r.tol > 0.0)) throw InputError("--tol must be positive");
    r.cut.adaptive = true;
    r.cut.rel_tol = *r.tol;
  }
  if (c.has("modes")) r.wo.modes = r.modes;
  r.wo.samples = c.i("samples", r.wo.samples);
  if (r.modes < 1 || r.wo.modes < 1 || r.wo.samples < 8) throw InputError("modes/samples too small");
  if (r.t == cplx(0.0)) throw InputError("--t must be nonzero");
  return r;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json params_json(const Run& r) {
  json p;
  p["q"] = cjson(r.q);
  p["t"] = cjson(r.t);
  p["sigma"] = cjson(r.sigma);
  if (r.s0) p["s0"] = cjson(*r.s0);
  if (r.sinf) p["sinf"] = cjson(*r.sinf);
  p["S2"] = cjson(r.m.S2());
  p["k"] = r.k;
  p["mu"] = r.mu == Sector::zero ? "0" : "half";
  return p;
}

TauValue eval_tau(const Run& r) {
  if (r.method == "series") {
    if (r.mu == Sector::zero) return tau_series_k(r.m, r.t, r.k, r.cut);
    return tau_T(r.k, r.mu, r.m.S2(), r.m.u(), r.t, r.m.q, r.cut);
  }
  if (r.mu != Sector::zero) throw DomainError("determinant pipelines compute the mu = 0 tau only");
  if (r.method == "fredholm") {
    if (r.k > 0) throw DomainError("fredholm supports k in {-2, -1, 0}");
    TauValue v = det_fredholm(r.m, r.t, -r.k, r.modes, r.tol.has_value(), r.tol.value_or(1e-12));
    return v;
  }
  if (r.k != -2) throw DomainError("widom computes the k = -2 tau only");
  return widom_fft_det(r.m, r.t, r.wo);
}

std::string g17(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {}
  std::ostream& stream() { return buf_; }
  // Writes everything at once so failures leave no partial file.
  void flush() {
    if (path_.empty()) {
      std::cout << buf_.str();
      std::cout.flush();
      return;
    }
    std::ofstream f(path_);
    if (!f) throw InputError("cannot open output file: " + path_);
    f << buf_.str();
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

void emit_record(Output& out, const std::string& fmt, const json& rec) {
  if (fmt == "json") {
    out.stream() << rec.dump(2) << "\n";
    return;
  }
  std::vector<std::string> keys, vals;
  for (auto it = rec.begin(); it != rec.end(); ++it) {
    if (it.value().is_object() || it.value().is_array()) continue;
    keys.push_back(it.key());
    if (it.value().is_number_float()) vals.push_back(g17(it.value().get<double>()));
    else if (it.value().is_string()) vals.push_back(it.value().get<std::string>());
    else vals.push_back(it.value().dump());
  }
  for (std::size_t i = 0; i < keys.size(); ++i) out.stream() << (i ? "," : "") << keys[i];
  out.stream() << "\n";
  for (std::size_t i = 0; i < vals.size(); ++i) out.stream() << (i ? "," : "") << vals[i];
  out.stream() << "\n";
}

int cmd_tau(const Cfg& c) {
  Run r = build_run(c);
  std::string fmt = c.format();
  TauValue v = eval_tau(r);
  json rec;
  rec["value_re"] = v.value.real();
  rec["value_im"] = v.value.imag();
  rec["est_error"] = v.est_error;
  rec["method"] = r.method;
  json cut;
  if (r.method == "series") {
    cut["max_boxes"] = v.cutoff_used.max_boxes;
    cut["max_q"] = v.cutoff_used.max_Q;
  } else {
    cut["modes"] = v.modes;
    if (r.method == "widom") cut["samples"] = v.samples;
  }
  rec["cutoff"] = cut;
  rec["params"] = params_json(r);
  Output out(c.str("out", ""));
  emit_record(out, fmt, rec);
  out.flush();
  return ok;
}

double painleve_residual(cplx gm, cplx g0, cplx gp, cplx t) {
  return std::abs(gp * gm * (g0 * g0 + 1.0) - (g0 * g0 + t));
}

int cmd_g(const Cfg& c) {
  Run r = build_run(c);
  std::string fmt = c.format();
  const QBase& q = r.m.q;
  auto g = [&](cplx s) { return g_transcendent(r.m.S2(), r.m.u(), s, q, r.cut); };
  cplx g0 = g(r.t);
  double res = painleve_residual(g(r.t / q.value()), g0, g(q.value() * r.t), r.t);
  json rec;
  rec["g_re"] = g0.real();
  rec["g_im"] = g0.imag();
  rec["painleve_residual"] = res;
  rec["params"] = params_json(r);
  Output out(c.str("out", ""));
  emit_record(out, fmt, rec);
  out.flush();
  return ok;
}

int cmd_verify(const Cfg& c) {
  checks::Options o;
  if (c.has("tol")) o.tol_override = c.r("tol", 0.0);
  std::string suite = c.str("suite", "all");
  if (suite != "all" &&
      std::find(checks::suite_names().begin(), checks::suite_names().end(), suite) ==
          checks::suite_names().end())
    throw InputError("unknown suite '" + suite + "'");
  std::string fmt = c.format();
  checks::Report rep = checks::run_suite(suite, o);
  Output out(c.str("out", ""));
  if (fmt == "json") {
    json a = json::array();
    for (const auto& k : rep)
      a.push_back({{"name", k.name},
                   {"residual", std::isfinite(k.residual) ? json(k.residual) : json("inf")},
                   {"tolerance", k.tol},
                   {"mode", k.mode == checks::Mode::above ? "above"
                            : k.mode == checks::Mode::exact ? "exact" : "below"},
                   {"pass", k.pass},
                   {"detail", k.detail}});
    out.stream() << json{{"suite", suite}, {"pass", checks::all_pass(rep)}, {"checks", a}}.dump(2)
                 << "\n";
  } else {
    out.stream() << "name,residual,tolerance,mode,pass\n";
    for (const auto& k : rep)
      out.stream() << k.name << "," << g17(k.residual) << "," << g17(k.tol) << ","
                   << (k.mode == checks::Mode::above ? "above"
                       : k.mode == checks::Mode::exact ? "exact" : "below")
                   << "," << (k.pass ? "PASS" : "FAIL") << "\n";
  }
  out.flush();
  return checks::all_pass(rep) ? ok : verify_fail;
}

int cmd_scan(const Cfg& c) {
  Run r = build_run(c);
  std::string fmt = c.format();
  double a = c.r("t-start", 0.01), b = c.r("t-end", 0.2);
  int n = c.i("n-points", 32);
  if (!(a > 0.0 && a < b && b < 1.0) && !(n == 1 && a > 0.0 && a < 1.0))
    throw InputError("scan needs 0 < t-start < t-end < 1");
  if (n < 1) throw InputError("--n-points must be positive");
  if (!c.has("max-boxes")) r.cut.max_boxes = 18;
  r.cut.adaptive = false;
  const QBase& q = r.m.q;
  const cplx qv = q.value();
  // Both sector series are built once and evaluated at every t.
  const TauSeries A(-2, Sector::zero, r.m.S2(), r.m.u(), q, r.cut);
  const TauSeries B(-2, Sector::half, r.m.S2(), r.m.u(), q, r.cut);
  auto g = [&](cplx s) {
    cplx h = B.eval(s).value;
    if (h == cplx(0.0)) throw DomainError("T_1/2 vanishes");
    return -I_UNIT * cpow(s, 0.25) * A.eval(s).value / h;
  };
  struct Row {
    double t;
    std::optional<std::string> err;
    cplx T0, Th, g;
    double pres = 0.0, bres = 0.0;
  };
  std::vector<Row> rows(n);
  int failed = 0;
  for (int j = 0; j < n; ++j) {
    Row& w = rows[j];
    w.t = n == 1 ? a : a * std::pow(b / a, double(j) / (n - 1));
    try {
      w.T0 = A.eval(w.t).value;
      w.Th = B.eval(w.t).value;
      w.g = g(w.t);
      w.pres = painleve_residual(g(w.t / qv), w.g, g(qv * w.t), w.t);
      cplx lhs = (1.0 - w.t) * A.eval(qv * w.t).value * A.eval(w.t / qv).value;
      w.bres = std::abs(lhs - w.T0 * w.T0 + std::sqrt(w.t) * w.Th * w.Th) / std::abs(w.T0 * w.T0);
      if (!std::isfinite(w.pres) || !std::isfinite(w.bres)) throw NonconvergenceError("non-finite row");
    } catch (const std::exception& e) {
      w.err = e.what();
      ++failed;
    }
  }
  Output out(c.str("out", ""));
  const char* cols[] = {"t",    "tau0_re", "tau0_im",           "tau_half_re",      "tau_half_im",
                        "g_re", "g_im",    "painleve_residual", "bilinear_residual"};
  if (fmt == "csv") {
    for (const char* k : cols) out.stream() << k << ",";
    out.stream() << "error\n";
    for (const auto& w : rows) {
      out.stream() << g17(w.t);
      if (w.err) {
        for (int i = 0; i < 8; ++i) out.stream() << ",";
        std::string e = *w.err;
        std::replace(e.begin(), e.end(), ',', ';');
        out.stream() << "," << e << "\n";
        continue;
      }
      for (double v : {w.T0.real(), w.T0.imag(), w.Th.real(), w.Th.imag(), w.g.real(), w.g.imag(),
                       w.pres, w.bres})
        out.stream() << "," << g17(v);
      out.stream() << ",\n";
    }
  } else {
    json a = json::array();
    for (const auto& w : rows) {
      json o;
      o["t"] = w.t;
      if (w.err) {
        o["error"] = *w.err;
      } else {
        double v[] = {w.T0.real(), w.T0.imag(), w.Th.real(), w.Th.imag(), w.g.real(), w.g.imag(),
                      w.pres,      w.bres};
        for (int i = 0; i < 8; ++i) o[cols[i + 1]] = v[i];
      }
      a.push_back(o);
    }
    out.stream() << json{{"params", params_json(r)}, {"rows", a}}.dump(2) << "\n";
  }
  out.flush();
  return failed * 10 > n ? nonconverged : ok;
}

int cmd_special(const Cfg& c) {
  std::string fn = c.str("fn", "");
  std::string fmt = c.format();
  cplx q = c.c("q", 0.4), z = c.c("z", 0.5), u = c.c("u", 0.5), p = c.c("p", 0.3);
  int n = c.i("n", 0), kb = c.i("kb", 0);
  const QBase Q(q);
  cplx v;
  if (fn == "qpoch") v = c.has("n") ? qpoch_finite(z, Q, n) : qpoch_inf(z, Q);
  else if (fn == "qpoch2") v = qpoch2_inf(z, QBase(p), Q);
  else if (fn == "theta") v = theta(z, Q);
  else if (fn == "theta1") v = theta1(z, Q);
  else if (fn == "theta_partial") v = theta_partial(u, Q);
  else if (fn == "qbessel") v = qbessel_j(kb, u, z, Q);
  else if (fn == "elliptic_gamma") v = elliptic_gamma(z, p, q);
  else if (fn == "elliptic_dilog") v = elliptic_dilog(z, Q);
  else
    throw InputError("--fn must be one of qpoch, qpoch2, theta, theta1, theta_partial, qbessel, "
                     "elliptic_gamma, elliptic_dilog");
  json rec;
  rec["fn"] = fn;
  rec["value_re"] = v.real();
  rec["value_im"] = v.imag();
  Output out(c.str("out", ""));
  emit_record(out, fmt, rec);
  out.flush();
  return ok;
}

void print_error(const std::string& fmt, const std::string& kind, const std::string& msg) {
  if (fmt == "csv") std::cout << "error,kind\n\"" << msg << "\"," << kind << "\n";
  else std::cout << json{{"error", msg}, {"kind", kind}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Painleve III3 tau functions: series, Fredholm and Widom determinants"};
  app.require_subcommand(1);
  Raw flags;
  std::string config;
  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Cfg&);
  };
  const Sub subs[] = {{"tau", "evaluate tau", cmd_tau},
                      {"g", "evaluate the transcendent g(t)", cmd_g},
                      {"verify", "run an identity suite", cmd_verify},
                      {"scan", "tabulate tau, g and residuals over t", cmd_scan},
                      {"special", "evaluate a special function", cmd_special}};
  std::map<std::string, CLI::App*> apps;
  std::map<std::string, std::string> store;
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("--config", config, "flat key = value file; flags take precedence");
    for (const auto& k : kKeys) {
      if (k == "suite" && std::string(s.name) == "verify") {
        sc->add_option("suite,--suite", store[k],
                       "special|linsys|combinatorics|crosscheck|bilinear|connection|all");
        continue;
      }
      sc->add_option("--" + k, store[k]);
    }
    apps[s.name] = sc;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : bad_input;
  }
  std::string fmt_hint = "json";
  try {
    Cfg cfg;
    if (!config.empty()) cfg.raw = read_config(config);
    for (const auto& [k, v] : store)
      if (!v.empty()) cfg.raw[k] = v;
    if (cfg.has("format")) fmt_hint = cfg.str("format", "json") == "csv" ? "csv" : "json";
    for (const auto& s : subs)
      if (apps[s.name]->parsed()) return s.fn(cfg);
  } catch (const InputError& e) {
    print_error(fmt_hint, "input", e.what());
    return bad_input;
  } catch (const DomainError& e) {
    print_error(fmt_hint, "domain", e.what());
    return bad_input;
  } catch (const ResonanceError& e) {
    print_error(fmt_hint, "resonance", e.what());
    return bad_input;
  } catch (const NonconvergenceError& e) {
    print_error(fmt_hint, "nonconvergence", e.what());
    return nonconverged;
  } catch (const std::invalid_argument& e) {
    print_error(fmt_hint, "input", e.what());
    return bad_input;
  } catch (const std::out_of_range& e) {
    print_error(fmt_hint, "input", e.what());
    return bad_input;
  }
  return bad_input;
}
