#include "dirac/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace dirac::cli {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + " must be finite");
  return d;
}

double positive(const json& j, const char* key, double fallback, const std::string& where) {
  const double d = number(j, key, fallback, where);
  if (!(d > 0.0)) throw ConfigError(where + "." + key + " must be positive");
  return d;
}

std::uint64_t unsigned_int(const json& j, const char* key, std::uint64_t fallback,
                           const std::string& where) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<long long>() < 0)) {
    throw ConfigError(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + " must be an array of numbers");
    out.push_back(x.get<double>());
    if (!std::isfinite(out.back())) throw ConfigError(where + " entries must be finite");
  }
  return out;
}

std::vector<double> parse_poly1d(const json& v, const std::string& where) {
  check_keys(v, {"type", "coeffs"}, where);
  if (!v.contains("type") || v.at("type") != "poly") {
    throw ConfigError(where + ".type must be \"poly\"");
  }
  if (!v.contains("coeffs")) throw ConfigError(where + ".coeffs is required");
  return numbers(v.at("coeffs"), where + ".coeffs");
}

MultiPolynomial parse_multipoly(const json& v, std::size_t n_vars, const std::string& where) {
  check_keys(v, {"type", "terms"}, where);
  if (!v.contains("type") || v.at("type") != "poly") {
    throw ConfigError(where + ".type must be \"poly\"");
  }
  if (!v.contains("terms") || !v.at("terms").is_array()) {
    throw ConfigError(where + ".terms must be an array");
  }
  std::vector<Monomial> terms;
  for (std::size_t i = 0; i < v.at("terms").size(); ++i) {
    const auto& t = v.at("terms")[i];
    const std::string w = where + ".terms[" + std::to_string(i) + "]";
    check_keys(t, {"coeff", "powers"}, w);
    Monomial m;
    m.coeff = number(t, "coeff", 1.0, w);
    if (!t.contains("powers") || !t.at("powers").is_array() || t.at("powers").size() != n_vars) {
      throw ConfigError(w + ".powers must list " + std::to_string(n_vars) + " exponents");
    }
    for (const auto& p : t.at("powers")) {
      if (!p.is_number_unsigned()) throw ConfigError(w + ".powers must be non-negative integers");
      m.powers.push_back(p.get<unsigned>());
    }
    terms.push_back(std::move(m));
  }
  return {n_vars, std::move(terms)};
}

void parse_params(const json& j, Scenario& s) {
  const json params = j.contains("params") ? j.at("params") : json::object();
  const std::string w = "params";
  switch (s.model) {
    case ModelKind::klauder: {
      check_keys(params, {"alpha", "k", "hbar", "potential"}, w);
      s.klauder.alpha = positive(params, "alpha", 1.0, w);
      s.klauder.hbar = positive(params, "hbar", 1.0, w);
      if (params.contains("k")) {
        const auto& k = params.at("k");
        if (k.is_number()) {
          s.klauder.k0 = k.get<double>();
          s.klauder.k1 = 0.0;
        } else {
          const auto ramp = numbers(k, "params.k");
          if (ramp.size() != 2) throw ConfigError("params.k must be a number or [k0, k1]");
          s.klauder.k0 = ramp[0];
          s.klauder.k1 = ramp[1];
        }
      }
      if (params.contains("potential")) {
        s.klauder.potential = parse_poly1d(params.at("potential"), "params.potential");
      }
      break;
    }
    case ModelKind::particle: {
      check_keys(params, {"mass", "dim"}, w);
      s.particle.mass = positive(params, "mass", 1.0, w);
      s.particle.dim = unsigned_int(params, "dim", 3, w);
      if (s.particle.dim < 1) throw ConfigError("params.dim must be at least 1");
      break;
    }
    case ModelKind::maxwell: {
      check_keys(params, {"side", "spacing"}, w);
      s.maxwell.side = unsigned_int(params, "side", 2, w);
      s.maxwell.spacing = positive(params, "spacing", 1.0, w);
      if (s.maxwell.side < 2 || s.maxwell.side > 8) {
        throw ConfigError("params.side must be between 2 and 8");
      }
      break;
    }
    case ModelKind::custom: {
      check_keys(params, {"n_pairs", "hamiltonian", "constraints"}, w);
      s.custom.n_pairs = unsigned_int(params, "n_pairs", 1, w);
      if (s.custom.n_pairs < 1) throw ConfigError("params.n_pairs must be at least 1");
      const std::size_t n = 2 * s.custom.n_pairs;
      if (params.contains("hamiltonian")) {
        s.custom.hamiltonian = parse_multipoly(params.at("hamiltonian"), n, "params.hamiltonian");
      }
      if (params.contains("constraints")) {
        const auto& cs = params.at("constraints");
        if (!cs.is_array()) throw ConfigError("params.constraints must be an array");
        if (cs.size() > n) throw ConfigError("params.constraints has more than 2N entries");
        for (std::size_t i = 0; i < cs.size(); ++i) {
          s.custom.constraints.push_back(
              parse_multipoly(cs[i], n, "params.constraints[" + std::to_string(i) + "]"));
        }
      }
      break;
    }
  }
}

void parse_flow(const json& f, Scenario& s) {
  check_keys(f,
             {"kind", "x0", "reduced", "x", "p", "tau0", "multiplier", "mode", "amplitude"},
             "flow");
  FlowConfig flow;
  if (f.contains("kind")) {
    const auto& k = f.at("kind");
    if (k == "poisson") {
      flow.kind = FlowKind::poisson;
    } else if (k == "dirac") {
      flow.kind = FlowKind::dirac;
    } else if (k == "gauge") {
      flow.kind = FlowKind::gauge;
    } else {
      throw ConfigError("flow.kind must be \"poisson\", \"dirac\" or \"gauge\"");
    }
  }
  if (f.contains("x0")) flow.x0 = numbers(f.at("x0"), "flow.x0");
  if (f.contains("reduced")) {
    flow.reduced = numbers(f.at("reduced"), "flow.reduced");
    if (flow.reduced.size() != 2) throw ConfigError("flow.reduced must be [phi, p_phi]");
  }
  if (f.contains("x")) flow.x = numbers(f.at("x"), "flow.x");
  if (f.contains("p")) flow.p = numbers(f.at("p"), "flow.p");
  flow.tau0 = number(f, "tau0", 0.0, "flow");
  flow.multiplier = number(f, "multiplier", 1.0, "flow");
  flow.amplitude = number(f, "amplitude", 1.0, "flow");
  if (f.contains("mode")) {
    if (!f.at("mode").is_number_integer()) throw ConfigError("flow.mode must be an integer");
    flow.mode = f.at("mode").get<int>();
  }

  switch (s.model) {
    case ModelKind::klauder:
      if (flow.kind == FlowKind::gauge) {
        if (flow.x0.size() != 4) throw ConfigError("gauge flow needs flow.x0 = [x, y, p_x, p_y]");
      } else if (flow.x0.empty() == flow.reduced.empty()) {
        throw ConfigError("klauder flow needs exactly one of flow.x0 or flow.reduced");
      } else if (!flow.x0.empty() && flow.x0.size() != 4) {
        throw ConfigError("flow.x0 must be [r, phi, p_r, p_phi]");
      }
      break;
    case ModelKind::particle:
      if (flow.kind != FlowKind::dirac) throw ConfigError("particle flows are dirac flows");
      if (flow.x.empty()) flow.x.assign(s.particle.dim, 0.0);
      if (flow.p.empty()) flow.p.assign(s.particle.dim, 0.0);
      if (flow.x.size() != s.particle.dim || flow.p.size() != s.particle.dim) {
        throw ConfigError("flow.x and flow.p need " + std::to_string(s.particle.dim) + " entries");
      }
      break;
    case ModelKind::maxwell:
      break;
    case ModelKind::custom:
      if (flow.x0.size() != 2 * s.custom.n_pairs) {
        throw ConfigError("flow.x0 needs " + std::to_string(2 * s.custom.n_pairs) + " entries");
      }
      if (flow.kind == FlowKind::gauge) throw ConfigError("custom models have no gauge flow");
      break;
  }
  s.flow = std::move(flow);
}

void parse_integrator(const json& j, Scenario& s) {
  check_keys(j, {"dt", "steps", "record_every", "projection", "t0"}, "integrator");
  s.integrator.dt = positive(j, "dt", 1e-3, "integrator");
  s.integrator.steps = unsigned_int(j, "steps", 1000, "integrator");
  s.integrator.record_every = unsigned_int(j, "record_every", 1, "integrator");
  s.integrator.t0 = number(j, "t0", 0.0, "integrator");
  if (j.contains("projection")) {
    const auto& p = j.at("projection");
    if (p.is_string() && p == "none") {
      s.integrator.projection.reset();
    } else {
      check_keys(p, {"tol", "max_iter"}, "integrator.projection");
      NewtonProjection np;
      np.tol = positive(p, "tol", 1e-12, "integrator.projection");
      np.max_iter = static_cast<int>(unsigned_int(p, "max_iter", 10, "integrator.projection"));
      s.integrator.projection = np;
    }
  }
  try {
    s.integrator.validate();
  } catch (const UsageError& e) {
    throw ConfigError(e.what());
  }
}

void parse_quantum(const json& j, Scenario& s) {
  check_keys(j, {"m_max", "modes", "state", "times", "panels", "intervals"}, "quantum");
  QuantumConfig q;
  const double hbar = s.klauder.hbar;
  if (j.contains("state") == j.contains("modes")) {
    throw ConfigError("quantum block needs exactly one of 'state' or 'modes'");
  }
  try {
    if (j.contains("state")) {
      q.state = CircleState::from_json(j.at("state").dump());
      if (std::abs(q.state.hbar() - hbar) > 0.0) {
        throw ConfigError("quantum.state.hbar differs from params.hbar");
      }
    } else {
      const auto m_max = static_cast<int>(unsigned_int(j, "m_max", 64, "quantum"));
      std::vector<Complex> c(static_cast<std::size_t>(2 * m_max + 1));
      const auto& modes = j.at("modes");
      if (!modes.is_array()) throw ConfigError("quantum.modes must be an array of [m, re, im]");
      for (const auto& entry : modes) {
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
            !entry[1].is_number() || !entry[2].is_number()) {
          throw ConfigError("quantum.modes entries must be [m, re, im]");
        }
        const int m = entry[0].get<int>();
        if (m < -m_max || m > m_max) {
          throw ConfigError("quantum mode " + std::to_string(m) + " outside the window");
        }
        c[static_cast<std::size_t>(m + m_max)] += Complex(entry[1].get<double>(), entry[2].get<double>());
      }
      q.state = CircleState(m_max, std::move(c), hbar);
    }
    q.state = normalize(q.state);
  } catch (const ConfigError&) {
    throw;
  } catch (const UsageError& e) {
    throw ConfigError(std::string("quantum state: ") + e.what());
  }

  if (j.contains("times")) {
    const auto& t = j.at("times");
    if (t.is_array()) {
      q.times = numbers(t, "quantum.times");
    } else {
      check_keys(t, {"start", "stop", "count"}, "quantum.times");
      const double a = number(t, "start", 0.0, "quantum.times");
      const double b = number(t, "stop", 10.0, "quantum.times");
      const auto n = unsigned_int(t, "count", 11, "quantum.times");
      for (std::uint64_t i = 0; i < n; ++i) {
        q.times.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
      }
    }
  } else {
    for (int i = 0; i <= 10; ++i) q.times.push_back(i);
  }
  if (q.times.empty()) throw ConfigError("quantum.times is empty");
  q.panels = unsigned_int(j, "panels", 4096, "quantum");
  q.intervals = unsigned_int(j, "intervals", 4096, "quantum");
  if (q.panels == 0 || q.intervals == 0) throw ConfigError("quadrature counts must be positive");
  s.quantum = std::move(q);
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::klauder: return "klauder";
    case ModelKind::particle: return "particle";
    case ModelKind::maxwell: return "maxwell";
    case ModelKind::custom: return "custom";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  check_keys(j, {"model", "seed", "samples", "params", "flow", "integrator", "quantum", "output"},
             "scenario");
  Scenario s;
  if (!j.contains("model") || !j.at("model").is_string()) {
    throw ConfigError("scenario.model is required");
  }
  const auto model = j.at("model").get<std::string>();
  if (model == "klauder") {
    s.model = ModelKind::klauder;
  } else if (model == "particle") {
    s.model = ModelKind::particle;
  } else if (model == "maxwell") {
    s.model = ModelKind::maxwell;
  } else if (model == "custom") {
    s.model = ModelKind::custom;
  } else {
    throw ConfigError("unknown model '" + model + "'");
  }
  s.seed = unsigned_int(j, "seed", 1, "scenario");
  s.samples = unsigned_int(j, "samples", 10, "scenario");
  parse_params(j, s);
  if (j.contains("flow")) parse_flow(j.at("flow"), s);
  if (j.contains("integrator")) parse_integrator(j.at("integrator"), s);
  if (j.contains("quantum")) {
    if (s.model != ModelKind::klauder) throw ConfigError("quantum block needs the klauder model");
    parse_quantum(j.at("quantum"), s);
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    check_keys(o, {"path", "format"}, "output");
    if (o.contains("path")) {
      if (!o.at("path").is_string()) throw ConfigError("output.path must be a string");
      s.output.path = o.at("path").get<std::string>();
    }
    if (o.contains("format")) {
      if (o.at("format") != "csv" && o.at("format") != "json") {
        throw ConfigError("output.format must be \"csv\" or \"json\"");
      }
      s.output.format = o.at("format").get<std::string>();
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

KlauderModel Scenario::klauder_model() const {
  return {klauder.alpha, klauder.k0, klauder.k1, klauder.hbar, Polynomial1D(klauder.potential)};
}

RelativisticParticle Scenario::particle_model() const { return {particle.mass, particle.dim}; }

LatticeMaxwell Scenario::maxwell_model() const { return LatticeMaxwell(maxwell.side, maxwell.spacing); }

ChartPtr Scenario::custom_chart() const { return make_canonical_chart(custom.n_pairs); }

}  // namespace dirac::cli
