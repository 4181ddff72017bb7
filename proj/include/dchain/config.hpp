#pragma once
// Experiment description files: flat "dotted.key = value" lines, '#' comments.
// The loader reports every problem it can find in one pass (parse errors,
// unknown keys, out-of-range values) rather than stopping at the first, and
// the same struct drives the simulator, the validator, and the output layer.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dchain/model.hpp"
#include "dchain/pulse.hpp"
#include "dchain/state_prep.hpp"

namespace dchain {

// Bad experiment file or bad parameters; the command line maps this (and any
// std::invalid_argument) to a validation failure, distinct from numeric_error.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- experiment description ----

struct ElectronPacket {
  double u = 0.0;      // packet center (site units, may be fractional)
  double sigma = 1.0;  // packet width
  double k = 0.0;      // packet momentum
  cplx w_a{1.0, 0.0};  // band weights of the product packet
  cplx w_b{0.0, 0.0};
};

struct InitSpec {
  enum class Kind { product, entangled, dressed };
  Kind kind = Kind::product;
  ElectronPacket electron;
  PhotonPrep photon;   // product: photon factor of the state
  int level = 0;       // entangled/dressed: photon level n of the block
  int phase_sign = 1;  // entangled: relative sign of the b component
  int branch = 1;      // dressed: 1 = upper, 2 = lower
  double phi0 = 0.0;   // dressed: initial field phase
  bool window = true;  // dressed: apply the gaussian envelope
};

struct EvolveSpec {
  double dt = 0.0;  // 0 -> automatic
  double t_end = 0.0;
  long long stride = 1;
  bool check_every_step = false;
};

struct ExperimentConfig {
  int schema = 0;
  std::string label;
  std::vector<std::string> claims;
  ChainConfig chain;
  InitSpec init;
  EvolveSpec evolve;
  std::optional<Envelope> pulse;  // absent -> constant coupling chain.g
  bool analytic_overlay = false;  // emit dressed-band reference curves
};

// ---- parsing helpers ----

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

inline bool parse_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtoll(s.c_str(), &end, 10);
  return end == s.c_str() + s.size();
}

inline bool parse_cplx(const std::string& s, cplx& out) {
  const size_t comma = s.find(',');
  double re = 0.0, im = 0.0;
  if (comma == std::string::npos) {
    if (!parse_double(trim(s), re)) return false;
  } else {
    if (!parse_double(trim(s.substr(0, comma)), re)) return false;
    if (!parse_double(trim(s.substr(comma + 1)), im)) return false;
  }
  out = cplx(re, im);
  return true;
}

inline bool parse_bool(const std::string& s, bool& out) {
  if (s == "1" || s == "true" || s == "yes") return out = true, true;
  if (s == "0" || s == "false" || s == "no") return out = false, true;
  return false;
}

struct ConfigEntry {
  std::string key, value;
  int line = 0;
  bool used = false;
};

// Accumulates every complaint; the loader throws once at the end.
struct KvReader {
  std::string source;
  std::vector<ConfigEntry> entries;
  std::vector<std::string> errs;

  void fail(int line, const std::string& what) {
    errs.push_back(source + ":" + std::to_string(line) + ": " + what);
  }
  void fail(const std::string& what) { errs.push_back(source + ": " + what); }

  ConfigEntry* find(const std::string& key) {
    ConfigEntry* hit = nullptr;
    for (auto& e : entries) {
      if (e.key != key) continue;
      e.used = true;
      if (hit)
        fail(e.line, "duplicate key '" + key + "'");
      else
        hit = &e;
    }
    return hit;
  }

  bool has_prefix(const std::string& prefix) const {
    for (const auto& e : entries)
      if (e.key.rfind(prefix, 0) == 0) return true;
    return false;
  }

  std::optional<std::string> str(const std::string& key) {
    if (ConfigEntry* e = find(key)) return e->value;
    return std::nullopt;
  }

  std::optional<double> num_opt(const std::string& key) {
    ConfigEntry* e = find(key);
    if (!e) return std::nullopt;
    double v = 0.0;
    if (!parse_double(e->value, v)) {
      fail(e->line, "key '" + key + "': expected a number, got '" + e->value + "'");
      return std::nullopt;
    }
    return v;
  }

  double num(const std::string& key, double dflt) { return num_opt(key).value_or(dflt); }

  long long integer(const std::string& key, long long dflt) {
    ConfigEntry* e = find(key);
    if (!e) return dflt;
    long long v = 0;
    if (!parse_int(e->value, v)) {
      fail(e->line, "key '" + key + "': expected an integer, got '" + e->value + "'");
      return dflt;
    }
    return v;
  }

  cplx cnum(const std::string& key, cplx dflt) {
    ConfigEntry* e = find(key);
    if (!e) return dflt;
    cplx v;
    if (!parse_cplx(e->value, v)) {
      fail(e->line, "key '" + key + "': expected re[,im], got '" + e->value + "'");
      return dflt;
    }
    return v;
  }

  bool flag(const std::string& key, bool dflt) {
    ConfigEntry* e = find(key);
    if (!e) return dflt;
    bool v = dflt;
    if (!parse_bool(e->value, v))
      fail(e->line, "key '" + key + "': expected 0/1/true/false, got '" + e->value + "'");
    return v;
  }
};

// Splits a "key = value" stream ('#' comments) into entries, collecting
// malformed-line complaints in the reader.
inline KvReader read_kv(std::istream& in, const std::string& source) {
  KvReader r;
  r.source = source;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      r.fail(lineno, "expected 'key = value', got '" + line + "'");
      continue;
    }
    ConfigEntry e;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = lineno;
    if (e.key.empty())
      r.fail(lineno, "empty key");
    else
      r.entries.push_back(std::move(e));
  }
  return r;
}

}  // namespace detail

// ---- loader ----

inline ExperimentConfig load_config(std::istream& in, const std::string& source) {
  detail::KvReader r = detail::read_kv(in, source);

  ExperimentConfig cfg;
  cfg.schema = static_cast<int>(r.integer("schema", 0));
  if (cfg.schema != 1) r.fail("'schema = 1' is required");

  if (auto v = r.str("label")) {
    cfg.label = *v;
    const bool ok = !cfg.label.empty() &&
                    cfg.label.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                                                "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                                "0123456789_.-") == std::string::npos;
    if (!ok) r.fail("'label' must be a non-empty filename-safe token");
  } else {
    r.fail("'label' is required");
  }
  for (auto& e : r.entries)
    if (e.key == "claim") {
      e.used = true;
      cfg.claims.push_back(e.value);
    }

  cfg.chain.n_sites = static_cast<int>(r.integer("chain.sites", 0));
  cfg.chain.n_max = static_cast<int>(r.integer("chain.n_max", 0));
  cfg.chain.t_a = r.cnum("chain.t_a", cplx(0.0, 0.0));
  cfg.chain.t_b = r.cnum("chain.t_b", cplx(0.0, 0.0));
  cfg.chain.g = r.num("chain.g", 0.0);
  cfg.chain.omega_b = r.num("chain.omega_b", 0.0);
  cfg.chain.delta_eps = r.num("chain.delta_eps", 0.0);
  for (const auto& e : check(cfg.chain)) r.fail("chain: " + e);

  // -- initial state --
  InitSpec& init = cfg.init;
  if (auto v = r.str("init.kind")) {
    if (*v == "product")
      init.kind = InitSpec::Kind::product;
    else if (*v == "entangled")
      init.kind = InitSpec::Kind::entangled;
    else if (*v == "dressed")
      init.kind = InitSpec::Kind::dressed;
    else
      r.fail("init.kind must be product, entangled, or dressed (got '" + *v + "')");
  }
  const auto u = r.num_opt("init.electron.u");
  const auto sigma = r.num_opt("init.electron.sigma");
  init.electron.k = r.num("init.electron.k", 0.0);
  init.electron.w_a = r.cnum("init.electron.w_a", cplx(1.0, 0.0));
  init.electron.w_b = r.cnum("init.electron.w_b", cplx(0.0, 0.0));
  init.level = static_cast<int>(r.integer("init.level", 0));
  init.phase_sign = static_cast<int>(r.integer("init.phase_sign", 1));
  init.branch = static_cast<int>(r.integer("init.branch", 1));
  init.phi0 = r.num("init.phi0", 0.0);
  init.window = r.flag("init.window", true);
  if (auto v = r.str("init.photon.kind")) {
    if (*v == "vacuum")
      init.photon.kind = PhotonPrep::Kind::vacuum;
    else if (*v == "fock")
      init.photon.kind = PhotonPrep::Kind::fock;
    else if (*v == "coherent")
      init.photon.kind = PhotonPrep::Kind::coherent;
    else
      r.fail("init.photon.kind must be vacuum, fock, or coherent (got '" + *v + "')");
  }
  init.photon.n = static_cast<int>(r.integer("init.photon.n", 0));
  init.photon.mean = r.num("init.photon.mean", 0.0);

  const bool needs_packet = init.kind != InitSpec::Kind::dressed || init.window;
  if (needs_packet) {
    if (!u) r.fail("'init.electron.u' is required for this init.kind");
    if (!sigma) r.fail("'init.electron.sigma' is required for this init.kind");
  }
  init.electron.u = u.value_or(0.0);
  init.electron.sigma = sigma.value_or(1.0);
  if (u && cfg.chain.n_sites >= 2 && !(*u >= 0.0 && *u < cfg.chain.n_sites))
    r.fail("init.electron.u must lie in [0, chain.sites)");
  if (sigma && !(*sigma > 0.0)) r.fail("init.electron.sigma must be positive");

  switch (init.kind) {
    case InitSpec::Kind::product:
      if (std::abs(init.electron.w_a) == 0.0 && std::abs(init.electron.w_b) == 0.0)
        r.fail("init.electron.w_a and w_b cannot both vanish");
      if (init.photon.kind == PhotonPrep::Kind::fock &&
          (init.photon.n < 0 || init.photon.n > cfg.chain.n_max))
        r.fail("init.photon.n must lie in [0, chain.n_max]");
      if (init.photon.kind == PhotonPrep::Kind::coherent && !(init.photon.mean >= 0.0))
        r.fail("init.photon.mean must be non-negative");
      break;
    case InitSpec::Kind::entangled:
      if (init.phase_sign != 1 && init.phase_sign != -1)
        r.fail("init.phase_sign must be 1 or -1");
      if (init.level < 0 || init.level >= cfg.chain.n_max)
        r.fail("init.level must lie in [0, chain.n_max) so the b component fits");
      break;
    case InitSpec::Kind::dressed:
      if (init.branch != 1 && init.branch != 2) r.fail("init.branch must be 1 or 2");
      if (init.level < 0 || init.level >= cfg.chain.n_max)
        r.fail("init.level must lie in [0, chain.n_max) so the b component fits");
      if (std::imag(cfg.chain.t_a) != 0.0 || std::imag(cfg.chain.t_b) != 0.0)
        r.fail("init.kind = dressed requires real tunneling amplitudes");
      break;
  }

  // -- evolution --
  cfg.evolve.dt = r.num("evolve.dt", 0.0);
  cfg.evolve.t_end = r.num("evolve.t_end", 0.0);
  cfg.evolve.stride = r.integer("evolve.stride", 1);
  cfg.evolve.check_every_step = r.flag("evolve.check_every_step", false);
  if (!(cfg.evolve.t_end > 0.0)) r.fail("'evolve.t_end' must be set and positive");
  if (cfg.evolve.dt < 0.0) r.fail("evolve.dt must be non-negative (0 = automatic)");
  if (cfg.evolve.stride < 1) r.fail("evolve.stride must be at least 1");

  // -- optional pulse --
  if (r.has_prefix("pulse.")) {
    Envelope env;
    if (auto v = r.str("pulse.shape")) {
      if (*v == "constant")
        env.shape = Envelope::Shape::constant;
      else if (*v == "gaussian")
        env.shape = Envelope::Shape::gaussian;
      else if (*v == "raised_cosine")
        env.shape = Envelope::Shape::raised_cosine;
      else
        r.fail("pulse.shape must be constant, gaussian, or raised_cosine (got '" + *v + "')");
    } else {
      r.fail("'pulse.shape' is required when any pulse.* key is present");
    }
    if (auto v = r.num_opt("pulse.peak"))
      env.peak = *v;
    else
      r.fail("'pulse.peak' is required when any pulse.* key is present");
    env.center = r.num("pulse.center", 0.0);
    env.width = r.num("pulse.width", 1.0);
    env.start = r.num("pulse.start", 0.0);
    env.duration = r.num("pulse.duration", 1.0);
    for (const auto& e : check(env)) r.fail("pulse: " + e);
    cfg.pulse = env;
  }

  cfg.analytic_overlay = r.flag("output.analytic_overlay", false);
  if (cfg.analytic_overlay && init.kind != InitSpec::Kind::dressed)
    r.fail("output.analytic_overlay requires init.kind = dressed");

  for (const auto& e : r.entries)
    if (!e.used) r.fail(e.line, "unknown key '" + e.key + "'");

  if (!r.errs.empty()) {
    std::string msg = source + ": invalid experiment file:";
    for (const auto& e : r.errs) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  return load_config(in, path);
}

// ---- state construction and advisory checks ----

inline StateVector build_initial_state(const ExperimentConfig& cfg) {
  const GaussianSpec pack{cfg.init.electron.u, cfg.init.electron.sigma, cfg.init.electron.k};
  switch (cfg.init.kind) {
    case InitSpec::Kind::product:
      switch (cfg.init.photon.kind) {
        case PhotonPrep::Kind::vacuum:
          return vacuum_product_state(cfg.chain, pack, pack, cfg.init.electron.w_a,
                                      cfg.init.electron.w_b);
        case PhotonPrep::Kind::fock:
          return fock_product_state(cfg.chain, pack, pack, cfg.init.electron.w_a,
                                    cfg.init.electron.w_b, cfg.init.photon.n);
        case PhotonPrep::Kind::coherent:
          return coherent_product_state(cfg.chain, pack, pack, cfg.init.electron.w_a,
                                        cfg.init.electron.w_b, cfg.init.photon.mean);
      }
      break;
    case InitSpec::Kind::entangled:
      return entangled_fock_state(cfg.chain, cfg.init.level, cfg.init.electron.u,
                                  cfg.init.electron.sigma, cfg.init.phase_sign);
    case InitSpec::Kind::dressed:
      return dressed_eigenstate(cfg.chain, cfg.init.level, cfg.init.branch, cfg.init.phi0,
                                cfg.init.window ? std::optional<GaussianSpec>(pack)
                                                : std::nullopt);
  }
  throw ConfigError("build_initial_state: unreachable init kind");
}

// Non-fatal observations about a loaded experiment (truncation, envelope
// speed). The simulator prints these and records them in the run metadata.
inline std::vector<std::string> config_warnings(const ExperimentConfig& cfg) {
  std::vector<std::string> warn;
  if (cfg.init.kind == InitSpec::Kind::product &&
      cfg.init.photon.kind == PhotonPrep::Kind::coherent) {
    const double tail = poisson_tail_mass(cfg.init.photon.mean, cfg.chain.n_max);
    if (tail > 1e-6) {
      std::ostringstream os;
      os << "photon ladder truncated: Poisson mass " << tail << " above n_max = "
         << cfg.chain.n_max << " (suggest n_max >= " << suggested_n_max(cfg.init.photon.mean)
         << ")";
      warn.push_back(os.str());
    }
  }
  if (cfg.pulse) {
    const double cycle = 2.0 * M_PI;  // one optical period in normalized time
    double support = 0.0;
    if (cfg.pulse->shape == Envelope::Shape::gaussian) support = 2.0 * cfg.pulse->width;
    if (cfg.pulse->shape == Envelope::Shape::raised_cosine) support = cfg.pulse->duration;
    if (support > 0.0 && support < 5.0 * cycle) {
      std::ostringstream os;
      os << "pulse support " << support << " is shorter than five carrier cycles; the"
         << " slow-envelope description becomes questionable";
      warn.push_back(os.str());
    }
  }
  return warn;
}

}  // namespace dchain
