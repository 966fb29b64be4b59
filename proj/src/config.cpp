#include "apdg/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "apdg/error.hpp"

namespace apdg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double to_number(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("expected a number, got an empty value");
  if (t == "pi") return std::numbers::pi;
  if (t == "2pi") return 2.0 * std::numbers::pi;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
    throw ConfigError("not a finite number: '" + t + "'");
  return v;
}

int to_int(const std::string& text) {
  const double v = to_number(text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("not an integer: '" + trim(text) + "'");
  return static_cast<int>(v);
}

std::string number_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::map<std::string, int>& function_arity() {
  static const std::map<std::string, int> arity{
      {"zero", 0}, {"constant", 1}, {"polynomial", -1}, {"step", 3}, {"sine", 3}, {"cosine", 3}};
  return arity;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"scheme", {"order"}},
      {"model", {"velocity", "epsilon"}},
      {"mesh", {"x_left", "x_right", "cells", "segments"}},
      {"boundary", {"kind", "f_left", "f_right", "penalty"}},
      {"material", {"sigma_s", "sigma_a", "source", "sigma_m"}},
      {"initial", {"rho", "g"}},
      {"time", {"final_time", "dt", "unconditional_factor"}},
      {"output", {"points_per_cell"}},
      {"reference", {"solver", "dx", "dt_factor"}},
  };
  return s;
}

struct MeshKeys {
  std::optional<double> left, right;
  std::optional<int> cells;
  std::optional<std::vector<MeshSegment>> segments;
};

std::vector<MeshSegment> parse_segments(const std::string& text) {
  std::vector<MeshSegment> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto w = words(item);
    if (w.size() != 3) throw ConfigError("mesh segment needs 'left right cells', got '" + trim(item) + "'");
    out.push_back({to_number(w[0]), to_number(w[1]), to_int(w[2])});
  }
  if (out.empty()) throw ConfigError("mesh.segments is empty");
  return out;
}

void set_value(RunConfig& c, MeshKeys& mesh, const std::string& section, const std::string& key,
               const std::string& value) {
  if (section == "scheme") {
    c.order = to_int(value);
  } else if (section == "model") {
    if (key == "velocity") c.velocity = value;
    else c.epsilon = to_number(value);
  } else if (section == "mesh") {
    if (key == "x_left") mesh.left = to_number(value);
    else if (key == "x_right") mesh.right = to_number(value);
    else if (key == "cells") mesh.cells = to_int(value);
    else mesh.segments = parse_segments(value);
  } else if (section == "boundary") {
    if (key == "kind") {
      if (value == "periodic") c.boundary = BoundaryKind::periodic;
      else if (value == "inflow") c.boundary = BoundaryKind::inflow;
      else throw ConfigError("boundary.kind must be periodic or inflow");
    } else if (key == "f_left") {
      c.f_left = to_number(value);
    } else if (key == "f_right") {
      c.f_right = to_number(value);
    } else {
      c.penalty = to_number(value);
    }
  } else if (section == "material") {
    if (key == "sigma_m") {
      if (value == "auto") c.sigma_m.reset();
      else c.sigma_m = to_number(value);
    } else {
      FunctionSpec f = FunctionSpec::parse(value);
      (key == "sigma_s" ? c.sigma_s : key == "sigma_a" ? c.sigma_a : c.source) = f;
    }
  } else if (section == "initial") {
    if (key == "rho") c.rho0 = FunctionSpec::parse(value);
    else c.g0 = KineticSpec::parse(value);
  } else if (section == "time") {
    if (key == "final_time") {
      c.final_time = to_number(value);
    } else if (key == "unconditional_factor") {
      c.dt.unconditional_factor = to_number(value);
    } else {
      const auto w = words(value);
      if (w.size() == 1 && w[0] == "cfl") {
        c.dt.kind = DtPolicy::Kind::cfl;
      } else if (w.size() == 2 && w[0] == "fixed") {
        c.dt.kind = DtPolicy::Kind::fixed;
        c.dt.value = to_number(w[1]);
      } else {
        throw ConfigError("time.dt must be 'cfl' or 'fixed <value>'");
      }
    }
  } else if (section == "output") {
    c.points_per_cell = to_int(value);
  } else {
    if (key == "solver") {
      if (value == "none") c.reference.solver = ReferenceSettings::Solver::none;
      else if (value == "kinetic") c.reference.solver = ReferenceSettings::Solver::kinetic;
      else if (value == "diffusion") c.reference.solver = ReferenceSettings::Solver::diffusion;
      else throw ConfigError("reference.solver must be none, kinetic or diffusion");
    } else if (key == "dx") {
      c.reference.dx = to_number(value);
    } else {
      c.reference.dt_factor = to_number(value);
    }
  }
}

void finish_mesh(RunConfig& c, const MeshKeys& m) {
  const bool simple = m.left || m.right || m.cells;
  if (m.segments && simple) throw ConfigError("mesh: give either segments or x_left/x_right/cells, not both");
  if (m.segments) {
    c.segments = *m.segments;
  } else if (simple) {
    if (c.segments.size() != 1) c.segments = {{0.0, 1.0, 10}};
    MeshSegment& s = c.segments.front();
    if (m.left) s.left = *m.left;
    if (m.right) s.right = *m.right;
    if (m.cells) s.cells = *m.cells;
  }
}

const char* solver_name(ReferenceSettings::Solver s) {
  switch (s) {
    case ReferenceSettings::Solver::kinetic: return "kinetic";
    case ReferenceSettings::Solver::diffusion: return "diffusion";
    default: return "none";
  }
}

}  // namespace

FunctionSpec FunctionSpec::parse(const std::string& text) {
  const auto w = words(text);
  if (w.empty()) throw ConfigError("empty function value");
  const auto it = function_arity().find(w[0]);
  if (it == function_arity().end())
    throw ConfigError("unknown function '" + w[0] + "' (zero, constant, polynomial, step, sine, cosine)");
  FunctionSpec f{w[0], {}};
  for (std::size_t i = 1; i < w.size(); ++i) f.params.push_back(to_number(w[i]));
  const int n = static_cast<int>(f.params.size());
  if (it->second >= 0 && n != it->second)
    throw ConfigError("function '" + w[0] + "' takes " + std::to_string(it->second) + " parameters, got " +
                      std::to_string(n));
  if (it->second < 0 && n == 0) throw ConfigError("polynomial needs at least one coefficient");
  return f;
}

std::string FunctionSpec::to_string() const {
  std::string s = kind;
  for (double p : params) s += " " + number_text(p);
  return s;
}

ScalarFunction FunctionSpec::to_function() const {
  const std::vector<double> p = params;
  if (kind == "zero") return [](double) { return 0.0; };
  if (kind == "constant") return [c = p[0]](double) { return c; };
  if (kind == "polynomial")
    return [p](double x) {
      double s = 0.0;
      for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
      return s;
    };
  if (kind == "step") return [p](double x) { return x <= p[0] ? p[1] : p[2]; };
  if (kind == "sine") return [p](double x) { return p[0] * std::sin(p[1] * x + p[2]); };
  if (kind == "cosine") return [p](double x) { return p[0] * std::cos(p[1] * x + p[2]); };
  throw ConfigError("unknown function kind '" + kind + "'");
}

KineticSpec KineticSpec::parse(const std::string& text) {
  const std::string t = trim(text);
  if (t == "zero") return {};
  const std::string head = "v_times";
  if (t.compare(0, head.size(), head) != 0) throw ConfigError("initial.g must be 'zero' or 'v_times <function>'");
  return {false, FunctionSpec::parse(t.substr(head.size()))};
}

std::string KineticSpec::to_string() const { return zero ? "zero" : "v_times " + factor.to_string(); }

KineticFunction KineticSpec::to_function() const {
  if (zero) return [](double, double) { return 0.0; };
  return [f = factor.to_function()](double x, double v) { return v * f(x); };
}

bool RunConfig::operator==(const RunConfig& o) const {
  auto same_segments = [&] {
    if (segments.size() != o.segments.size()) return false;
    for (std::size_t i = 0; i < segments.size(); ++i)
      if (segments[i].left != o.segments[i].left || segments[i].right != o.segments[i].right ||
          segments[i].cells != o.segments[i].cells)
        return false;
    return true;
  };
  return order == o.order && velocity == o.velocity && epsilon == o.epsilon && same_segments() &&
         boundary == o.boundary && f_left == o.f_left && f_right == o.f_right && penalty == o.penalty &&
         sigma_s == o.sigma_s && sigma_a == o.sigma_a && source == o.source && sigma_m == o.sigma_m &&
         rho0 == o.rho0 && g0 == o.g0 && final_time == o.final_time && dt.kind == o.dt.kind &&
         dt.value == o.dt.value && dt.unconditional_factor == o.dt.unconditional_factor &&
         points_per_cell == o.points_per_cell && reference == o.reference;
}

RunConfig parse_run_config(const std::string& text) { return parse_run_config(text, RunConfig{}); }

RunConfig parse_run_config(const std::string& text, RunConfig c) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::set<std::string> seen;
  MeshKeys mesh;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(number) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    if (section.empty()) throw ConfigError(where + "key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!schema().at(section).count(key)) throw ConfigError(where + "unknown key '" + key + "' in [" + section + "]");
    if (!seen.insert(section + "." + key).second) throw ConfigError(where + "duplicate key " + section + "." + key);
    try {
      set_value(c, mesh, section, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + section + "." + key + ": " + e.what());
    }
  }
  finish_mesh(c, mesh);
  validate(c);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string format_run_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[scheme]\norder = " << c.order << "\n\n";
  out << "[model]\nvelocity = " << c.velocity << "\nepsilon = " << number_text(c.epsilon) << "\n\n";
  out << "[mesh]\n";
  if (c.segments.size() == 1) {
    out << "x_left = " << number_text(c.segments[0].left) << "\nx_right = " << number_text(c.segments[0].right)
        << "\ncells = " << c.segments[0].cells << "\n\n";
  } else {
    out << "segments = ";
    for (std::size_t i = 0; i < c.segments.size(); ++i)
      out << (i ? ", " : "") << number_text(c.segments[i].left) << ' ' << number_text(c.segments[i].right) << ' '
          << c.segments[i].cells;
    out << "\n\n";
  }
  out << "[boundary]\nkind = " << (c.boundary == BoundaryKind::periodic ? "periodic" : "inflow")
      << "\nf_left = " << number_text(c.f_left) << "\nf_right = " << number_text(c.f_right)
      << "\npenalty = " << number_text(c.penalty) << "\n\n";
  out << "[material]\nsigma_s = " << c.sigma_s.to_string() << "\nsigma_a = " << c.sigma_a.to_string()
      << "\nsource = " << c.source.to_string() << "\nsigma_m = " << (c.sigma_m ? number_text(*c.sigma_m) : "auto")
      << "\n\n";
  out << "[initial]\nrho = " << c.rho0.to_string() << "\ng = " << c.g0.to_string() << "\n\n";
  out << "[time]\nfinal_time = " << number_text(c.final_time) << "\ndt = "
      << (c.dt.kind == DtPolicy::Kind::cfl ? std::string("cfl") : "fixed " + number_text(c.dt.value))
      << "\nunconditional_factor = " << number_text(c.dt.unconditional_factor) << "\n\n";
  out << "[output]\npoints_per_cell = " << c.points_per_cell << "\n\n";
  out << "[reference]\nsolver = " << solver_name(c.reference.solver) << "\ndx = " << number_text(c.reference.dx)
      << "\ndt_factor = " << number_text(c.reference.dt_factor) << "\n";
  return out.str();
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto dot = assignment.find('.');
  const auto eq = assignment.find('=');
  if (dot == std::string::npos || eq == std::string::npos || dot > eq)
    throw ConfigError("override must look like section.key=value, got '" + assignment + "'");
  const std::string text = "[" + trim(assignment.substr(0, dot)) + "]\n" + assignment.substr(dot + 1) + "\n";
  config = parse_run_config(text, config);
}

void validate(const RunConfig& c) {
  if (c.order < 1 || c.order > 3) throw ConfigError("scheme.order must be 1, 2 or 3");
  make_quadrature(c.velocity);
  if (!(c.epsilon > 0.0)) throw ConfigError("model.epsilon must be positive");
  if (c.segments.empty()) throw ConfigError("mesh: no segments");
  for (std::size_t i = 0; i < c.segments.size(); ++i) {
    const MeshSegment& s = c.segments[i];
    if (!(s.right > s.left) || s.cells < 1) throw ConfigError("mesh: every segment needs right > left and cells >= 1");
    if (i > 0 && s.left != c.segments[i - 1].right) throw ConfigError("mesh: segments must be contiguous");
  }
  int cells = 0;
  for (const MeshSegment& s : c.segments) cells += s.cells;
  if (c.boundary == BoundaryKind::periodic && cells < 2) throw ConfigError("mesh: periodic meshes need 2 cells");
  if (c.penalty < 0.0) throw ConfigError("boundary.penalty must be non-negative");
  if (c.sigma_m && *c.sigma_m < 0.0) throw ConfigError("material.sigma_m must be non-negative");
  if (c.final_time < 0.0) throw ConfigError("time.final_time must be non-negative");
  if (c.dt.kind == DtPolicy::Kind::fixed && !(c.dt.value > 0.0)) throw ConfigError("time.dt fixed value must be positive");
  if (!(c.dt.unconditional_factor > 0.0)) throw ConfigError("time.unconditional_factor must be positive");
  if (c.points_per_cell < 1 || c.points_per_cell > 20) throw ConfigError("output.points_per_cell must be in 1..20");
  if (!(c.reference.dx > 0.0) || !(c.reference.dt_factor > 0.0))
    throw ConfigError("reference.dx and reference.dt_factor must be positive");
}

VelocityQuadrature make_quadrature(const std::string& velocity) {
  if (velocity == "slab16") return VelocityQuadrature::slab(16);
  if (velocity == "telegraph") return VelocityQuadrature::telegraph();
  throw ConfigError("model.velocity must be slab16 or telegraph, got '" + velocity + "'");
}

ProblemSpec to_problem(const RunConfig& c) {
  validate(c);
  ProblemSpec p;
  p.order = c.order;
  p.quadrature = make_quadrature(c.velocity);
  p.segments = c.segments;
  p.coefficients.sigma_s = c.sigma_s.to_function();
  p.coefficients.sigma_a = c.sigma_a.to_function();
  p.coefficients.source = c.source.to_function();
  p.coefficients.epsilon = c.epsilon;
  p.coefficients.sigma_m = c.sigma_m;
  p.boundary = c.boundary == BoundaryKind::periodic
                   ? BoundaryCondition::periodic()
                   : BoundaryCondition::with_inflow(InflowData::isotropic(c.f_left, c.f_right, c.penalty));
  p.rho0 = c.rho0.to_function();
  p.g0 = c.g0.to_function();
  p.final_time = c.final_time;
  p.dt = c.dt;
  return p;
}

}  // namespace apdg
