#include "apdg/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "apdg/error.hpp"
#include "apdg/kernels.hpp"

namespace apdg {

namespace {

int step_count(const FDGrid& g) {
  if (!(g.dt > 0.0)) throw ConfigError("reference grid: dt must be positive");
  if (g.final_time < 0.0) throw ConfigError("reference grid: negative final time");
  if (g.final_time == 0.0) return 0;
  return static_cast<int>(std::ceil(g.final_time / g.dt - 1e-9));
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end()); }

// FNV-1a, 64 bit: stable across runs and platforms with IEEE doubles.
class Digest {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
  }
  void number(double x) { bytes(&x, sizeof x); }
  void text(const std::string& s) { bytes(s.data(), s.size()); }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
    return buf;
  }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

void digest_grid(Digest& d, const FDGrid& g) {
  for (double x : {g.left, g.right, g.dx, g.dt, g.final_time}) d.number(x);
}

template <typename Solve>
ReferenceSolution through_cache(const std::string& key, const std::filesystem::path& dir, Solve solve) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / (key + ".csv");
  ReferenceSolution s;
  if (read_reference(path, key, s)) return s;
  s = solve();
  write_reference(path, key, s);
  return s;
}

}  // namespace

int FDGrid::intervals() const {
  if (!(dx > 0.0) || !(right > left)) throw ConfigError("reference grid: need dx > 0 and right > left");
  const double n = (right - left) / dx;
  const double rounded = std::round(n);
  if (rounded < 2 || std::abs(n - rounded) > 1e-9 * n) throw ConfigError("reference grid: dx must divide the domain");
  return static_cast<int>(rounded);
}

double interpolate(const std::vector<double>& x, const std::vector<double>& values, double at) {
  if (x.empty() || x.size() != values.size()) throw std::invalid_argument("interpolate: bad table");
  if (at <= x.front()) return values.front();
  if (at >= x.back()) return values.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double t = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return (1.0 - t) * values[i - 1] + t * values[i];
}

ReferenceSolution kinetic_fd(const KineticFDProblem& problem, bool keep_f) {
  const FDGrid& grid = problem.grid;
  const int n = grid.intervals();
  const int steps = step_count(grid);
  const double dt = steps > 0 ? grid.final_time / steps : grid.dt;
  const double eps = problem.coefficients.epsilon;
  const VelocityQuadrature& quad = problem.quadrature;
  const int nv = quad.size();
  const bool periodic = problem.boundary.kind == BoundaryKind::periodic;
  const std::size_t width = static_cast<std::size_t>(n) + 2;  // ghost, nodes, ghost

  ReferenceSolution s;
  s.x.resize(n);
  std::vector<double> relax(n), absorb(n), src(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.left + (i + 0.5) * grid.dx;
    s.x[i] = x;
    const double ss = problem.coefficients.sigma_s(x);
    const double sa = problem.coefficients.sigma_a(x);
    if (ss < 0.0 || sa < 0.0) throw ConfigError("kinetic_fd: negative cross section");
    relax[i] = dt * ss / (eps * eps);
    absorb[i] = dt * sa;
    src[i] = dt * problem.coefficients.source(x);
  }
  const double courant = dt * quad.v_inf() / (eps * grid.dx);
  const double bound = courant + max_of(relax) + max_of(absorb);
  if (bound > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "kinetic_fd: dt = " << dt << " violates the positivity bound (dt |v|/(eps dx) = " << courant
        << ", dt sigma_s/eps^2 = " << max_of(relax) << ", total " << bound << " > 1)";
    throw ConfigError(msg.str());
  }

  std::vector<double> cur(width * nv), next(width * nv);
  for (int l = 0; l < nv; ++l)
    for (int i = 0; i < n; ++i) cur[l * width + 1 + i] = problem.initial_f(s.x[i], quad.node(l));

  std::vector<double> rho(n);
  auto moment = [&](const std::vector<double>& f) {
    std::fill(rho.begin(), rho.end(), 0.0);
    for (int l = 0; l < nv; ++l) kernels::accumulate_moment(n, quad.weight(l), f.data() + l * width + 1, rho.data());
  };

  for (int step = 0; step < steps; ++step) {
    const double t = step * dt;
    for (int l = 0; l < nv; ++l) {
      double* row = cur.data() + l * width;
      if (periodic) {
        row[0] = row[n];
        row[n + 1] = row[1];
      } else {
        const double v = quad.node(l);
        row[0] = v >= 0.0 ? problem.boundary.inflow.f_left(v, t) : row[1];
        row[n + 1] = v < 0.0 ? problem.boundary.inflow.f_right(v, t) : row[n];
      }
    }
    moment(cur);
    double total = 0.0;
    for (double r : rho) total += r;
    if (!std::isfinite(total)) throw SolverError("kinetic_fd: non-finite solution at step " + std::to_string(step));
    for (int l = 0; l < nv; ++l) {
      const double v = quad.node(l);
      const double* row = cur.data() + l * width;
      const double* up = v >= 0.0 ? row : row + 2;
      kernels::upwind_relax_row(n, row + 1, up, dt * std::abs(v) / (eps * grid.dx), relax.data(), absorb.data(),
                                rho.data(), src.data(), next.data() + l * width + 1);
    }
    std::swap(cur, next);
  }

  moment(cur);
  s.rho = rho;
  s.current.assign(n, 0.0);
  for (int l = 0; l < nv; ++l)
    kernels::accumulate_moment(n, quad.weight(l) * quad.node(l) / eps, cur.data() + l * width + 1, s.current.data());
  for (double r : s.rho)
    if (!std::isfinite(r)) throw SolverError("kinetic_fd: non-finite solution at step " + std::to_string(steps));
  if (keep_f) {
    s.f.resize(nv);
    for (int l = 0; l < nv; ++l) s.f[l].assign(cur.begin() + l * width + 1, cur.begin() + l * width + 1 + n);
  }
  s.steps = steps;
  s.dt = dt;
  s.t = steps * dt;
  return s;
}

ReferenceSolution diffusion_fd(const DiffusionFDProblem& problem) {
  const FDGrid& grid = problem.grid;
  const int n = grid.intervals();
  const int steps = step_count(grid);
  const double dt = steps > 0 ? grid.final_time / steps : grid.dt;
  const bool periodic = problem.boundary == BoundaryKind::periodic;
  const MaterialCoefficients& c = problem.coefficients;
  const double dx = grid.dx;

  // unknowns: periodic nodes 0..n-1; Dirichlet interior nodes 1..n-1
  const int first = periodic ? 0 : 1;
  const int count = periodic ? n : n - 1;
  std::vector<double> kl(count), kr(count), absorb(count), src(count), sigma_half;
  for (int j = 0; j < count; ++j) {
    const double x = grid.left + (first + j) * dx;
    const double sl = c.sigma_s(x - 0.5 * dx);
    const double sr = c.sigma_s(x + 0.5 * dx);
    const double sa = c.sigma_a(x);
    if (!(sl > 0.0) || !(sr > 0.0)) throw ConfigError("diffusion_fd: sigma_s must be positive");
    if (sa < 0.0) throw ConfigError("diffusion_fd: negative absorption");
    sigma_half.push_back(std::min(sl, sr));
    kl[j] = 1.0 / sl;
    kr[j] = 1.0 / sr;
    absorb[j] = dt * sa;
    src[j] = dt * c.source(x);
  }
  const double limit = 0.25 * dx * dx * min_of(sigma_half) / problem.v_sq;
  if (dt > limit * (1.0 + 1e-12) || max_of(absorb) > 1.0) {
    std::ostringstream msg;
    msg << "diffusion_fd: dt = " << dt << " exceeds 0.25 dx^2 min sigma_s / <v^2> = " << limit;
    throw ConfigError(msg.str());
  }
  const double coef = dt * problem.v_sq / (dx * dx);

  // periodic layout: ghost, nodes 0..n-1, ghost; Dirichlet layout: nodes 0..n
  const std::size_t width = periodic ? n + 2 : n + 1;
  const std::size_t offset = 1;
  std::vector<double> cur(width), next(width);
  for (int j = 0; j < count; ++j) cur[offset + j] = problem.initial_rho(grid.left + (first + j) * dx);
  if (!periodic) {
    cur[0] = next[0] = problem.rho_left;
    cur[n] = next[n] = problem.rho_right;
  }
  for (int step = 0; step < steps; ++step) {
    if (periodic) {
      cur[0] = cur[n];
      cur[n + 1] = cur[1];
    }
    kernels::diffusion_row(count, cur.data() + offset, kl.data(), kr.data(), coef, absorb.data(), src.data(),
                           next.data() + offset);
    if (!std::isfinite(next[offset + count / 2]) || !std::isfinite(next[offset]))
      throw SolverError("diffusion_fd: non-finite solution at step " + std::to_string(step));
    std::swap(cur, next);
  }

  ReferenceSolution s;
  const int nodes = periodic ? n : n + 1;
  s.x.resize(nodes);
  s.rho.resize(nodes);
  s.current.resize(nodes);
  auto value = [&](int i) {
    if (periodic) return cur[1 + ((i % n) + n) % n];
    return cur[i];
  };
  for (int i = 0; i < nodes; ++i) {
    s.x[i] = grid.left + i * dx;
    s.rho[i] = value(i);
  }
  for (double r : s.rho)
    if (!std::isfinite(r)) throw SolverError("diffusion_fd: non-finite solution at step " + std::to_string(steps));
  for (int i = 0; i < nodes; ++i) {
    double slope;
    if (periodic || (i > 0 && i < n)) slope = (value(i + 1) - value(i - 1)) / (2.0 * dx);
    else if (i == 0) slope = (value(1) - value(0)) / dx;
    else slope = (value(n) - value(n - 1)) / dx;
    s.current[i] = -problem.v_sq / c.sigma_s(s.x[i]) * slope;
  }
  s.steps = steps;
  s.dt = dt;
  s.t = steps * dt;
  return s;
}

std::string cache_key(const KineticFDProblem& p) {
  Digest d;
  d.text("kinetic_fd/1");
  digest_grid(d, p.grid);
  d.number(p.coefficients.epsilon);
  d.text(p.quadrature.name());
  for (int l = 0; l < p.quadrature.size(); ++l) {
    d.number(p.quadrature.node(l));
    d.number(p.quadrature.weight(l));
  }
  const bool periodic = p.boundary.kind == BoundaryKind::periodic;
  d.text(periodic ? "periodic" : "inflow");
  const int n = p.grid.intervals();
  for (int i = 0; i < n; ++i) {
    const double x = p.grid.left + (i + 0.5) * p.grid.dx;
    d.number(p.coefficients.sigma_s(x));
    d.number(p.coefficients.sigma_a(x));
    d.number(p.coefficients.source(x));
    for (int l = 0; l < p.quadrature.size(); ++l) d.number(p.initial_f(x, p.quadrature.node(l)));
  }
  if (!periodic)
    for (double t : {0.0, 0.5 * p.grid.final_time, p.grid.final_time})
      for (int l = 0; l < p.quadrature.size(); ++l) {
        d.number(p.boundary.inflow.f_left(p.quadrature.node(l), t));
        d.number(p.boundary.inflow.f_right(p.quadrature.node(l), t));
      }
  return d.hex();
}

std::string cache_key(const DiffusionFDProblem& p) {
  Digest d;
  d.text("diffusion_fd/1");
  digest_grid(d, p.grid);
  d.number(p.v_sq);
  const bool periodic = p.boundary == BoundaryKind::periodic;
  d.text(periodic ? "periodic" : "dirichlet");
  if (!periodic) {
    d.number(p.rho_left);
    d.number(p.rho_right);
  }
  const int n = p.grid.intervals();
  for (int i = 0; i <= n; ++i) {
    const double x = p.grid.left + i * p.grid.dx;
    d.number(p.coefficients.sigma_s(x - 0.5 * p.grid.dx));
    d.number(p.coefficients.sigma_s(x));
    d.number(p.coefficients.sigma_a(x));
    d.number(p.coefficients.source(x));
    d.number(p.initial_rho(x));
  }
  return d.hex();
}

ReferenceSolution kinetic_fd_cached(const KineticFDProblem& problem, const std::filesystem::path& dir) {
  return through_cache(cache_key(problem), dir, [&] { return kinetic_fd(problem); });
}

ReferenceSolution diffusion_fd_cached(const DiffusionFDProblem& problem, const std::filesystem::path& dir) {
  return through_cache(cache_key(problem), dir, [&] { return diffusion_fd(problem); });
}

void write_reference(const std::filesystem::path& path, const std::string& key, const ReferenceSolution& s) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write reference cache " + tmp.string());
    char buf[160];
    out << "# apdg reference v1\n# key=" << key << '\n';
    std::snprintf(buf, sizeof buf, "# steps=%d dt=%.17g t=%.17g\n", s.steps, s.dt, s.t);
    out << buf << "x,rho,j\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.x[i], s.rho[i], s.current[i]);
      out << buf;
    }
    if (!out) throw std::runtime_error("cannot write reference cache " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

bool read_reference(const std::filesystem::path& path, const std::string& key, ReferenceSolution& s) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != "# apdg reference v1") return false;
  if (!std::getline(in, line) || line != "# key=" + key) return false;
  if (!std::getline(in, line)) return false;
  ReferenceSolution r;
  if (std::sscanf(line.c_str(), "# steps=%d dt=%lf t=%lf", &r.steps, &r.dt, &r.t) != 3) return false;
  if (!std::getline(in, line) || line != "x,rho,j") return false;
  while (std::getline(in, line)) {
    double x, rho, j;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &rho, &j) != 3) return false;
    r.x.push_back(x);
    r.rho.push_back(rho);
    r.current.push_back(j);
  }
  if (r.x.empty()) return false;
  s = std::move(r);
  return true;
}

}  // namespace apdg
