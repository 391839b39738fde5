// Command-line driver for the half-space reconstruction pipelines.
//
// Subcommands:
//   forward      half-space masses of a measure for a list of half-spaces
//   potential    distance potential on a grid (from half-space data or direct)
//   reconstruct  full pipeline: query -> potential -> iterated Laplacian
//   radon        forward sinogram and John's odd-n inversion
//   verify       identity checks (Crofton normalization, inversion constant,
//                cumulative-Radon consistency); exit 1 on any failure
//   constants    normalization/area/inversion constants as CSV
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
// Runs are deterministic: same config + seed => byte-identical outputs, and
// --threads never changes results. Every output directory gets the exact
// resolved configuration as config.json.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <clocale>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cwold/crofton.hpp"
#include "cwold/inversion.hpp"
#include "cwold/io.hpp"
#include "cwold/measures.hpp"
#include "cwold/potential.hpp"
#include "cwold/quad.hpp"
#include "cwold/query.hpp"
#include "cwold/radon.hpp"
#include "cwold/sphere.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace cwold;

namespace {

struct RunConfig {
  std::string subcommand;
  int dim = 1;
  int m = 0;  // 0 = infer from dim
  double h = 0.1;
  double bounds_lo = -4.0, bounds_hi = 4.0;
  std::int64_t samples = 20000;
  std::uint64_t seed = 1;
  double mollify_width = -1.0;  // <0 = default per mode
  bool embed = false;
  std::string out_dir = "out";
  int threads = 0;
  std::string measure_path;
  bool gaussian = false;
  double gaussian_sigma = 1.0;
  std::string halfspaces_path;
  int random_halfspaces = 0;
  std::string grid_path;
  std::string source = "halfspaces";
  double dp = 0.0;         // radon offset spacing; 0 = h
  double presmooth = 1.0;  // radon inversion sinogram smoothing, bins

  ordered_json to_json() const {
    ordered_json j;
    j["subcommand"] = subcommand;
    j["dim"] = dim;
    j["m"] = m;
    j["h"] = h;
    j["bounds"] = {bounds_lo, bounds_hi};
    j["samples"] = samples;
    j["seed"] = seed;
    j["mollify"] = mollify_width;
    j["embed"] = embed;
    j["out"] = out_dir;
    j["threads"] = threads;
    j["measure"] = measure_path;
    j["gaussian"] = gaussian;
    j["gaussian_sigma"] = gaussian_sigma;
    j["halfspaces"] = halfspaces_path;
    j["random_halfspaces"] = random_halfspaces;
    j["grid"] = grid_path;
    j["source"] = source;
    j["dp"] = dp;
    j["presmooth"] = presmooth;
    return j;
  }
};

void write_config(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  std::ofstream out(cfg.out_dir + "/config.json");
  if (!out) throw std::runtime_error("cannot write config.json");
  out << cfg.to_json().dump(2) << '\n';
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << fmt_g17(r[i]);
    out << '\n';
  }
}

// Middle slice along the last axis for 3D grids (2D grids pass through),
// given to the PGM writer for quick visual checks.
void write_slice_outputs(const GridDensity& g, const std::string& base) {
  const int n = g.dim();
  if (n == 1) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < g.values.size(); ++i)
      rows.push_back({g.spec.point_flat(i)[0], g.values[i]});
    write_csv(base + "_slice.csv", {"x", "value"}, rows);
    return;
  }
  const auto& sh = g.spec.shape;
  const int r = sh[0], c = sh[1];
  std::vector<double> plane(static_cast<std::size_t>(r) * c);
  const auto st = g.spec.strides();
  std::size_t off = 0;
  for (int a = 2; a < n; ++a)
    off += static_cast<std::size_t>(sh[a] / 2) * st[static_cast<std::size_t>(a)];
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      plane[static_cast<std::size_t>(i) * c + j] =
          g.values[off + i * st[0] + j * st[1]];
  write_pgm(plane, r, c, base + "_slice.pgm");
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < r; ++i) {
    std::vector<double> row;
    row.push_back(g.spec.origin[0] + g.spec.h * i);
    for (int j = 0; j < c; ++j) row.push_back(plane[static_cast<std::size_t>(i) * c + j]);
    rows.push_back(std::move(row));
  }
  std::vector<std::string> header{"x"};
  for (int j = 0; j < c; ++j) header.push_back("c" + std::to_string(j));
  write_csv(base + "_slice.csv", header, rows);
}

HalfSpaceQuery resolve_query(const RunConfig& cfg, double& total) {
  if (cfg.gaussian) {
    total = 1.0;
    return make_gaussian_query(cfg.dim, cfg.gaussian_sigma);
  }
  if (!cfg.measure_path.empty()) {
    const DiscreteMeasure mu = read_measure_text(cfg.measure_path);
    if (mu.dim() != cfg.dim)
      throw std::invalid_argument("--dim does not match measure file dimension");
    total = total_mass(mu);
    return make_query(mu);
  }
  if (!cfg.grid_path.empty()) {
    const GridDensity g = read_grid(cfg.grid_path);
    if (g.dim() != cfg.dim)
      throw std::invalid_argument("--dim does not match grid dimension");
    total = total_mass(g);
    return make_query(g);
  }
  throw std::invalid_argument("need one of --measure, --grid or --gaussian");
}

double gaussian_density(const Vector& x, double sigma, int n) {
  return std::exp(-0.5 * norm2(x) / (sigma * sigma)) *
         std::pow(2.0 * kPi * sigma * sigma, -0.5 * n);
}

int cmd_constants(const RunConfig& cfg) {
  write_config(cfg);
  std::vector<std::vector<double>> rows;
  std::ofstream out(cfg.out_dir + "/constants.csv");
  if (!out) throw std::runtime_error("cannot write constants.csv");
  out << "kind,arg,value\n";
  for (int k = 0; k <= 6; ++k) out << "beta," << k << ',' << fmt_g17(sphere_area(k)) << '\n';
  for (int n = 2; n <= 6; ++n) out << "alpha," << n << ',' << fmt_g17(alpha_n(n)) << '\n';
  for (int m = 1; m <= 3; ++m) out << "c," << m << ',' << fmt_g17(c_const(m)) << '\n';
  return 0;
}

int cmd_forward(const RunConfig& cfg) {
  write_config(cfg);
  double total = 0.0;
  const HalfSpaceQuery q = resolve_query(cfg, total);
  std::vector<HalfSpace> hss;
  if (!cfg.halfspaces_path.empty()) {
    std::ifstream in(cfg.halfspaces_path);
    if (!in) throw std::runtime_error("cannot open half-space file: " + cfg.halfspaces_path);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      bool blank = true;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
      if (blank) continue;
      std::stringstream ss(line);
      std::string tok;
      std::vector<double> row;
      while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
      if (row.size() != static_cast<std::size_t>(cfg.dim + 1))
        throw std::runtime_error("half-space row needs dim+1 numbers");
      hss.emplace_back(Vector(row.begin(), row.end() - 1), row.back());
    }
  } else {
    const int k = cfg.random_halfspaces > 0 ? cfg.random_halfspaces : 64;
    RandomStream rs(cfg.seed);
    const double R = q.radius + 1.0;
    for (int i = 0; i < k; ++i) {
      Vector w = sample_direction(rs, cfg.dim);
      hss.emplace_back(std::move(w), (2.0 * rs.u01() - 1.0) * R);
    }
  }
  std::vector<std::vector<double>> rows;
  for (const auto& S : hss) {
    std::vector<double> r(S.omega.begin(), S.omega.end());
    r.push_back(S.p);
    r.push_back(q.eval(S));
    rows.push_back(std::move(r));
  }
  std::vector<std::string> header;
  for (int a = 1; a <= cfg.dim; ++a) header.push_back("w" + std::to_string(a));
  header.push_back("p");
  header.push_back("mass");
  write_csv(cfg.out_dir + "/forward.csv", header, rows);
  return 0;
}

int cmd_potential(const RunConfig& cfg) {
  write_config(cfg);
  double total = 0.0;
  const HalfSpaceQuery q = resolve_query(cfg, total);
  const GridSpec spec = make_box_grid(cfg.dim, cfg.bounds_lo, cfg.bounds_hi, cfg.h);
  PotentialField f;
  if (cfg.source == "direct") {
    if (cfg.gaussian) throw std::invalid_argument("--source direct needs --measure or --grid");
    if (!cfg.measure_path.empty())
      f = potential_grid_direct(read_measure_text(cfg.measure_path), spec);
    else
      f = potential_grid_direct(read_grid(cfg.grid_path), spec);
  } else {
    const CroftonSampler sampler(cfg.dim, cfg.seed, cfg.samples);
    f = potential_grid(q, total, spec, sampler, GridSampling::shared, cfg.threads);
  }
  write_grid(f.field, cfg.out_dir + "/potential");
  write_slice_outputs(f.field, cfg.out_dir + "/potential");
  ordered_json rep;
  rep["provenance"] = cfg.source;
  rep["total_mass"] = total;
  rep["mc_error"] = f.mc_error;
  rep["samples"] = cfg.samples;
  rep["seed"] = cfg.seed;
  std::ofstream out(cfg.out_dir + "/report.json");
  out << rep.dump(2) << '\n';
  return 0;
}

int cmd_reconstruct(const RunConfig& cfg) {
  write_config(cfg);
  double total = 0.0;
  HalfSpaceQuery q = resolve_query(cfg, total);
  int m = cfg.m;
  int work_dim = cfg.dim;
  if (cfg.embed) {
    if (cfg.dim % 2 != 0)
      throw std::invalid_argument("--embed expects an even --dim (odd dims invert directly)");
    q = embed_query(q);
    work_dim = cfg.dim + 1;
  } else if (cfg.dim % 2 == 0) {
    throw std::invalid_argument("even --dim requires --embed");
  }
  if (m == 0) m = (work_dim + 1) / 2;
  if (work_dim != 2 * m - 1) throw std::invalid_argument("--m inconsistent with dimension");
  double mollify_w = cfg.mollify_width;
  if (mollify_w < 0.0) mollify_w = (m >= 2) ? 1.0 : 0.0;

  GridSpec spec;
  if (cfg.embed) {
    // data lives on the z = 0 slab: give z half the lateral extent
    spec.h = cfg.h;
    spec.origin = Vector(static_cast<std::size_t>(work_dim), cfg.bounds_lo);
    const int lateral = static_cast<int>(std::llround((cfg.bounds_hi - cfg.bounds_lo) / cfg.h)) + 1;
    spec.shape.assign(static_cast<std::size_t>(work_dim), lateral);
    const double zlo = 0.5 * cfg.bounds_lo;
    const int zcells = static_cast<int>(std::llround((0.5 * (cfg.bounds_hi - cfg.bounds_lo)) / cfg.h)) + 1;
    spec.origin.back() = zlo;
    spec.shape.back() = zcells;
    spec.validate();
  } else {
    spec = make_box_grid(work_dim, cfg.bounds_lo, cfg.bounds_hi, cfg.h);
  }

  const CroftonSampler sampler(work_dim, cfg.seed, cfg.samples);
  ReconstructionReport rep = reconstruct(q, total, spec, sampler, m, mollify_w,
                                         GridSampling::shared, cfg.threads);

  // With the analytic fixture the ground truth is known: report L1 error.
  if (cfg.gaussian && !cfg.embed) {
    double l1 = 0.0, tr = 0.0, linf = 0.0;
    for (std::size_t i = 0; i < rep.density.values.size(); ++i) {
      const Vector x = rep.density.spec.point_flat(i);
      const double truth = gaussian_density(x, cfg.gaussian_sigma, work_dim);
      l1 += std::fabs(rep.density.values[i] - truth);
      linf = std::max(linf, std::fabs(rep.density.values[i] - truth));
      tr += truth;
    }
    rep.l1_error = l1 / tr;
    rep.linf_error = linf;
  }
  if (cfg.gaussian && cfg.embed) {
    // slab-integrate out the last axis and compare with the flat truth
    const auto& d = rep.density;
    const auto& sh = d.spec.shape;
    const auto st = d.spec.strides();
    const int nz = sh.back();
    std::size_t lateral = d.spec.size() / static_cast<std::size_t>(nz);
    double l1 = 0.0, tr = 0.0;
    for (std::size_t i = 0; i < lateral; ++i) {
      double zsum = 0.0;
      for (int k = 0; k < nz; ++k) zsum += d.values[i * static_cast<std::size_t>(nz) + k];
      zsum *= d.spec.h;
      // lateral index i decodes over the first dim-1 axes (z is contiguous)
      std::size_t rem = i;
      Vector x(static_cast<std::size_t>(cfg.dim));
      for (int a = cfg.dim - 1; a >= 0; --a) {
        const auto ea = static_cast<std::size_t>(sh[static_cast<std::size_t>(a)]);
        x[static_cast<std::size_t>(a)] =
            d.spec.origin[static_cast<std::size_t>(a)] + d.spec.h * static_cast<double>(rem % ea);
        rem /= ea;
      }
      const double truth = gaussian_density(x, cfg.gaussian_sigma, cfg.dim);
      l1 += std::fabs(zsum - truth);
      tr += truth;
    }
    rep.l1_error = l1 / tr;
    (void)st;
  }

  write_grid(rep.density, cfg.out_dir + "/density");
  write_slice_outputs(rep.density, cfg.out_dir + "/density");
  ordered_json j;
  j["m"] = rep.m;
  j["c_m"] = rep.c_m;
  j["total_mass"] = rep.total_mass;
  j["negative_mass"] = rep.negative_mass;
  j["mc_error"] = rep.mc_error;
  j["mollify"] = rep.mollify_width;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["embed"] = cfg.embed;
  if (rep.l1_error) j["l1_error"] = *rep.l1_error;
  if (rep.linf_error) j["linf_error"] = *rep.linf_error;
  std::ofstream out(cfg.out_dir + "/report.json");
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_radon(const RunConfig& cfg) {
  write_config(cfg);
  if (cfg.dim % 2 == 0)
    throw std::invalid_argument("radon inversion implemented for odd dimensions");
  GridDensity f;
  if (cfg.gaussian) {
    const GridSpec spec = make_box_grid(cfg.dim, cfg.bounds_lo, cfg.bounds_hi, cfg.h);
    f = GridDensity(spec);
    for (std::size_t i = 0; i < f.values.size(); ++i)
      f.values[i] = gaussian_density(spec.point_flat(i), cfg.gaussian_sigma, cfg.dim);
    f.compute_radius();
  } else if (!cfg.grid_path.empty()) {
    f = read_grid(cfg.grid_path);
    if (f.dim() != cfg.dim) throw std::invalid_argument("--dim does not match grid");
  } else {
    throw std::invalid_argument("radon needs --grid or --gaussian");
  }
  const double dp = cfg.dp > 0.0 ? cfg.dp : f.spec.h;
  double p0 = 0.0;
  int np = 0;
  fit_p_range(f, dp, 4, p0, np);
  const std::vector<Vector> dirs = sample_sphere(cfg.dim, cfg.samples, cfg.seed);
  const Sinogram sg = radon_forward(f, dirs, p0, dp, np);
  write_sinogram_text(sg, cfg.out_dir + "/sinogram.txt");
  const GridDensity rec = radon_invert_odd(sg, f.spec, cfg.presmooth);
  write_grid(rec, cfg.out_dir + "/radon_recon");
  write_slice_outputs(rec, cfg.out_dir + "/radon_recon");
  ordered_json j;
  j["directions"] = cfg.samples;
  j["dp"] = dp;
  j["np"] = np;
  j["presmooth"] = cfg.presmooth;
  j["seed"] = cfg.seed;
  double l1 = 0.0, tr = 0.0;
  for (std::size_t i = 0; i < rec.values.size(); ++i) {
    const Vector x = rec.spec.point_flat(i);
    const double truth =
        cfg.gaussian ? gaussian_density(x, cfg.gaussian_sigma, cfg.dim) : 0.0;
    l1 += std::fabs(rec.values[i] - truth);
    tr += truth;
  }
  if (cfg.gaussian) j["l1_error"] = l1 / tr;
  std::ofstream out(cfg.out_dir + "/report.json");
  out << j.dump(2) << '\n';
  return 0;
}

struct VerifyRow {
  std::string name;
  double value, target, residual, tolerance;
  bool pass;
};

int cmd_verify(const RunConfig& cfg) {
  write_config(cfg);
  std::vector<VerifyRow> rows;
  const auto add = [&rows](const std::string& name, double value, double target,
                           double tol) {
    const double res = std::fabs(value - target);
    rows.push_back({name, value, target, res, tol, res <= tol});
  };

  // Crofton normalization: separating mass of (0, unit vector) equals 1.
  for (int n : {2, 3}) {
    CroftonSampler cs(n, derive_seed(cfg.seed, static_cast<std::uint64_t>(n)), cfg.samples);
    Vector x(static_cast<std::size_t>(n), 0.0), y = basis(static_cast<std::size_t>(n), 0);
    const Estimate e = crofton_distance(cs, x, y);
    add("crofton_unit_n" + std::to_string(n), e.value, 1.0, std::max(0.01, 3 * e.std_error));
  }

  // Inversion constant via the bump identity in R^{2m-1}.
  {
    // m=1 on a 1D grid: g = (1-y^2)^6, integrand (|y-x|-|x|) g''(y)
    const auto g1 = [](double y) { const double u = 1 - y * y; return u > 0 ? u * u * u * u * u * u : 0.0; };
    const auto g1pp = [](double y) {
      if (std::fabs(y) >= 1.0) return 0.0;
      const double y2 = y * y;
      // d^2/dy^2 (1-y^2)^6 expanded
      return -12 + y2 * (180 + y2 * (-600 + y2 * (840 + y2 * (-540 + y2 * 132))));
    };
    const int N = 65;
    const double h = 2.0 / (N - 1);
    const double x0 = 0.3;
    double I = 0.0;
    for (int i = 0; i < N; ++i) {
      const double y = -1.0 + i * h;
      I += (std::fabs(y - x0) - std::fabs(x0)) * g1pp(y);
    }
    I *= h;
    add("c_const_m1", I / g1(x0), c_const(1), 0.01 * std::fabs(c_const(1)));
  }
  {
    // m=2 on a 3D grid
    const auto g3 = [](double r) { const double u = 1 - r * r; return u > 0 ? u * u * u * u * u * u : 0.0; };
    const auto lap2g = [](double r) {
      if (r >= 1.0) return 0.0;
      const double r2 = r * r;
      return 1800 + r2 * (-16800 + r2 * (45360 + r2 * (-47520 + r2 * 17160)));
    };
    const int N = 65;
    const double h = 2.0 / (N - 1);
    const Vector x0{0.3, 0.0, 0.0};
    double I = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          const Vector y{-1.0 + i * h, -1.0 + j * h, -1.0 + k * h};
          const double r = norm(y);
          if (r >= 1.0) continue;
          I += (dist(y, x0) - norm(x0)) * lap2g(r);
        }
    I *= h * h * h;
    add("c_const_m2", I / g3(norm(x0)), c_const(2), 0.01 * std::fabs(c_const(2)));
  }

  // Cumulative-Radon identity on a Gaussian fixture.
  {
    const GridSpec spec = make_box_grid(3, -4.0, 4.0, 8.0 / 96.0);
    GridDensity f(spec);
    for (std::size_t i = 0; i < f.values.size(); ++i)
      f.values[i] = gaussian_density(spec.point_flat(i), 1.0, 3);
    f.compute_radius();
    const double dp = spec.h;
    double p0 = 0.0;
    int np = 0;
    fit_p_range(f, dp, 4, p0, np);
    const auto dirs = sample_sphere(3, 10, derive_seed(cfg.seed, 99));
    const Sinogram sg = radon_forward(f, dirs, p0, dp, np);
    double worst = 0.0;
    for (std::size_t d = 0; d < dirs.size(); ++d)
      for (double p : {-1.0, 0.0, 0.7}) {
        const double hs = halfspace_mass(f, HalfSpace(dirs[d], p));
        worst = std::max(worst, std::fabs(hs - sg.cumulative_above(d, p)));
      }
    add("cumulative_radon", worst, 0.0, 1e-3);
  }

  std::ofstream out(cfg.out_dir + "/verify.csv");
  if (!out) throw std::runtime_error("cannot write verify.csv");
  out << "name,value,target,residual,tolerance,pass\n";
  bool all_pass = true;
  for (const auto& r : rows) {
    out << r.name << ',' << fmt_g17(r.value) << ',' << fmt_g17(r.target) << ','
        << fmt_g17(r.residual) << ',' << fmt_g17(r.tolerance) << ',' << (r.pass ? 1 : 0)
        << '\n';
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " residual=" << r.residual
              << " tol=" << r.tolerance << '\n';
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"half-space measure reconstruction toolkit"};
  app.set_help_flag("--help", "print this help and exit");  // frees -h for --h
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_common = [&cfg](CLI::App* sub) {
    sub->set_help_flag("--help", "print this help and exit");
    sub->add_option("--dim", cfg.dim, "ambient dimension");
    sub->add_option("--m", cfg.m, "Laplacian iterations (0 = infer)");
    sub->add_option("--h", cfg.h, "grid spacing");
    sub->add_option("--bounds", [&cfg](const std::vector<std::string>& vals) {
      // accepts "lo,hi"
      if (vals.size() != 1) return false;
      const auto comma = vals[0].find(',');
      if (comma == std::string::npos) return false;
      try {
        cfg.bounds_lo = std::stod(vals[0].substr(0, comma));
        cfg.bounds_hi = std::stod(vals[0].substr(comma + 1));
      } catch (...) { return false; }
      return cfg.bounds_hi > cfg.bounds_lo;
    }, "grid bounds as lo,hi");
    sub->add_option("--samples", cfg.samples, "Monte Carlo direction count");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--mollify", cfg.mollify_width, "mollifier width in cells (-1 = default)");
    sub->add_flag("--embed", cfg.embed, "lift an even-dimensional measure one dimension up");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--threads", cfg.threads, "worker cap (0 = hardware)");
    sub->add_option("--measure", cfg.measure_path, "measure text file (weight,x1,...,xn)");
    sub->add_flag("--gaussian", cfg.gaussian, "use the analytic standard Gaussian fixture");
    sub->add_option("--sigma", cfg.gaussian_sigma, "Gaussian fixture width");
    sub->add_option("--grid", cfg.grid_path, "grid density input (base path of .json/.f64)");
  };

  CLI::App* c_forward = app.add_subcommand("forward", "half-space masses of a measure");
  add_common(c_forward);
  c_forward->add_option("--halfspaces", cfg.halfspaces_path, "CSV of w1,...,wn,p rows");
  c_forward->add_option("--random", cfg.random_halfspaces, "number of random half-spaces");

  CLI::App* c_potential = app.add_subcommand("potential", "distance potential on a grid");
  add_common(c_potential);
  c_potential->add_option("--source", cfg.source, "halfspaces (default) or direct");

  CLI::App* c_reconstruct = app.add_subcommand("reconstruct", "reconstruct a density");
  add_common(c_reconstruct);

  CLI::App* c_radon = app.add_subcommand("radon", "sinogram + odd-n inversion");
  add_common(c_radon);
  c_radon->add_option("--dp", cfg.dp, "offset spacing (0 = h)");
  c_radon->add_option("--presmooth", cfg.presmooth, "sinogram smoothing in bins");

  CLI::App* c_verify = app.add_subcommand("verify", "identity checks; exit 1 on failure");
  add_common(c_verify);

  CLI::App* c_constants = app.add_subcommand("constants", "normalization constants as CSV");
  add_common(c_constants);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (app.got_subcommand(c_forward)) { cfg.subcommand = "forward"; return cmd_forward(cfg); }
    if (app.got_subcommand(c_potential)) { cfg.subcommand = "potential"; return cmd_potential(cfg); }
    if (app.got_subcommand(c_reconstruct)) { cfg.subcommand = "reconstruct"; return cmd_reconstruct(cfg); }
    if (app.got_subcommand(c_radon)) { cfg.subcommand = "radon"; return cmd_radon(cfg); }
    if (app.got_subcommand(c_verify)) { cfg.subcommand = "verify"; return cmd_verify(cfg); }
    if (app.got_subcommand(c_constants)) { cfg.subcommand = "constants"; return cmd_constants(cfg); }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
