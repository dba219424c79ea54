#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stk/fbc.hpp"
#include "stk/io.hpp"
#include "stk/kernel.hpp"
#include "stk/parallel.hpp"
#include "stk/pde.hpp"

namespace {

using namespace stk;

SectionChoice parse_section(const std::string& s) {
  if (s == "new") return SectionChoice::NewSection;
  if (s == "zero") return SectionChoice::ZeroSection;
  throw CLI::ValidationError("--section must be 'new' or 'zero'");
}

// Pearson correlation; with nonuniform weights it becomes the correlation
// under the weight distribution. The headline comparison weights entries by
// the oracle density itself: the coarse orientation sampling cannot hold the
// analytic kernel's transverse tails, and an unweighted comparison mostly
// measures that discretization gap rather than the approximation quality.
double pearson(const std::vector<double>& a, const std::vector<double>& b,
               const std::vector<double>* weights = nullptr) {
  const std::size_t n = a.size();
  double total = 0.0, ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights ? (*weights)[i] : 1.0;
    total += w;
    ma += w * a[i];
    mb += w * b[i];
  }
  ma /= total; mb /= total;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights ? (*weights)[i] : 1.0;
    cov += w * (a[i] - ma) * (b[i] - mb);
    va += w * (a[i] - ma) * (a[i] - ma);
    vb += w * (b[i] - mb) * (b[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

int cmd_kernel(double d33, double d44, double t, int radius, int level,
               const std::string& section, const std::string& out) {
  const DiffusionParams p{d33, d44, t};
  p.validate();
  const SphereSampling sphere = icosphere(level);
  if (radius < 1) radius = choose_radius(p, parse_section(section), 1.0);
  const KernelTable k =
      build_kernel_table(p, parse_section(section), radius, sphere, 1.0);
  double maxval = 0.0;
  for (double v : k.values) maxval = std::max(maxval, v);
  write_kernel_table(out, k);
  std::printf("radius=%d orientations=%d entries=%zu pre_norm_mass=%.17g max=%.17g\n",
              k.radius, sphere.size(), k.values.size(), k.mass, maxval);
  return 0;
}

int cmd_enhance(const std::string& in, double d33, double d44, double t,
                int radius, const std::string& section, bool periodic,
                const std::string& out) {
  const DiffusionParams p{d33, d44, t};
  p.validate();
  const FodField u = read_fodf(in);
  if (radius < 1) radius = choose_radius(p, parse_section(section), u.grid.spacing);
  const FodField w = enhance(u, p, radius, parse_section(section),
                             periodic ? Boundary::Periodic : Boundary::Zero);
  write_fodf(out, w);
  std::printf("radius=%d input_mass=%.17g output_mass=%.17g\n", radius,
              u.mass(), w.mass());
  return 0;
}

int cmd_symmetry_report(double d33, const std::vector<double>& ts,
                        const std::vector<double>& d44s, int grid, int level) {
  const SphereSampling sphere = icosphere(level);
  const int radius = grid / 2;
  std::printf("t\td44\tasym_new\tasym_zero\n");
  for (double t : ts) {
    for (double d44 : d44s) {
      const DiffusionParams p{d33, d44, t};
      p.validate();
      const double an = asymmetry_sum(radius, sphere, p, SectionChoice::NewSection);
      const double az = asymmetry_sum(radius, sphere, p, SectionChoice::ZeroSection);
      std::printf("%.17g\t%.17g\t%.17g\t%.17g\n", t, d44, an, az);
    }
  }
  return 0;
}

int cmd_fbc(const std::string& tracto, double d33, double d44, double t,
            int window, double threshold, bool have_threshold,
            const std::string& mode, const std::string& scores,
            const std::string& filtered) {
  const DiffusionParams p{d33, d44, t};
  p.validate();
  const Tractogram tr = read_tractogram(tracto);
  const auto density = fiber_density(tr, p);
  const FbcResult result = fbc_scores(tr, density, window);

  std::ofstream os(scores);
  if (!os) throw IoError("cannot open for writing: " + scores);
  os.precision(17);
  os << "fiber\traw_fbc\tnormalized_fbc\tmin_local_fbc\n";
  for (std::size_t fi = 0; fi < tr.fibers.size(); ++fi) {
    double minloc = result.local_fbc[fi][0];
    for (double v : result.local_fbc[fi]) minloc = std::min(minloc, v);
    os << fi << '\t' << result.fiber_fbc[fi] << '\t'
       << result.fiber_fbc_normalized[fi] << '\t' << minloc << '\n';
  }
  if (!os) throw IoError("write failed: " + scores);

  if (!filtered.empty()) {
    if (!have_threshold)
      throw CLI::ValidationError("--filtered requires --threshold");
    const FilterMode fm = mode == "per_point_min" ? FilterMode::PerPointMin
                                                  : FilterMode::PerFiber;
    write_tractogram(filtered, filter_tractogram(tr, result, threshold, fm));
  }
  std::printf("fibers=%zu points=%lld\n", tr.fibers.size(),
              static_cast<long long>(tr.n_total()));
  return 0;
}

int cmd_oracle(double d33, double d44, double t, double dt, int grid,
               int level, const std::string& section) {
  const DiffusionParams p{d33, d44, t};
  p.validate();
  const SphereSampling sphere = icosphere(level);
  const int radius = grid / 2;
  const GridSpec gs{grid, grid, grid, 1.0};
  const LbOperator lb = build_lb_operator(sphere);

  EvolutionConfig cfg = make_config(p, gs.spacing, lb, Boundary::Periodic);
  if (dt > 0.0) {
    cfg.dt = dt;
    cfg.steps = std::max(1, static_cast<int>(std::llround(t / dt)));
  }
  const FodField imp = impulse_response(p, gs, sphere, cfg);

  const KernelTable analytic =
      build_kernel_table(p, parse_section(section), radius, sphere, gs.spacing);
  const int j0 = nearest_index(sphere, Vec3(0, 0, 1));
  const int c = grid / 2;
  std::vector<double> a, b;
  for (int oz = -radius; oz <= radius; ++oz)
    for (int oy = -radius; oy <= radius; ++oy)
      for (int ox = -radius; ox <= radius; ++ox)
        for (int i = 0; i < sphere.size(); ++i) {
          a.push_back(analytic.at(analytic.offset_index(ox, oy, oz), i, j0));
          b.push_back(imp.at(c + ox, c + oy, c + oz, i));
        }
  const double corr = pearson(a, b, &b);
  const double corr_raw = pearson(a, b);

  double num = 0.0, den = 0.0, suma2 = 0.0, sumb2 = 0.0, sumab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    suma2 += a[i] * a[i];
    sumb2 += b[i] * b[i];
    sumab += a[i] * b[i];
  }
  // relative L2 after optimal scaling of the analytic table onto the oracle
  const double scale = sumab / suma2;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (scale * a[i] - b[i]) * (scale * a[i] - b[i]);
    den += b[i] * b[i];
  }
  const double rel_l2 = std::sqrt(num / den);

  // Convolution consistency: the table assembled from impulse responses must
  // reproduce the evolution itself on a random field.
  const KernelTable pde_table = build_table_from_impulse(p, sphere, radius, gs.spacing);
  FodField u(gs, sphere);
  std::uint64_t state = 0x243f6a8885a308d3ull;
  for (auto& v : u.values) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    v = double(state >> 11) / double(1ull << 53);
  }
  const FodField via_conv = shift_twist_convolve(pde_table, u, Boundary::Periodic);
  const FodField via_pde = evolve(u, p, cfg);
  double rnum = 0.0, rden = 0.0;
  for (std::size_t i = 0; i < via_conv.values.size(); ++i) {
    rnum += (via_conv.values[i] - via_pde.values[i]) *
            (via_conv.values[i] - via_pde.values[i]);
    rden += via_pde.values[i] * via_pde.values[i];
  }
  const double residual = std::sqrt(rnum / rden);

  std::printf("pearson=%.17g\tpearson_unweighted=%.17g\trel_l2=%.17g\t"
              "conv_residual=%.17g\tdt=%.17g\tsteps=%d\n",
              corr, corr_raw, rel_l2, residual, cfg.dt, cfg.steps);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale-space kernels on R^3 x S^2: kernel tables, shift-twist "
               "enhancement, PDE oracle and fiber-to-bundle coherence"};
  app.require_subcommand(1);
  int nthreads = 0;
  app.add_option("--threads", nthreads, "worker threads (default: all cores)");

  double d33 = 1.0, d44 = 0.02, t = 2.0, dt = 0.0, threshold = 0.0;
  int radius = 0, level = 1, grid = 5, window = 5;
  std::string section = "new", out, in, tracto, scores, filtered, mode = "per_fiber";
  std::vector<double> ts{1.0, 2.0, 4.0}, d44s{0.01, 0.02, 0.04};
  bool periodic = false;

  auto* kern = app.add_subcommand("kernel", "tabulate a kernel and write it");
  kern->add_option("--d33", d33);
  kern->add_option("--d44", d44);
  kern->add_option("--t", t);
  kern->add_option("--radius", radius, "truncation radius (0 = auto)");
  kern->add_option("--sphere-level", level);
  kern->add_option("--section", section)->check(CLI::IsMember({"new", "zero"}));
  kern->add_option("--out", out)->required();

  auto* enh = app.add_subcommand("enhance", "shift-twist convolve an FOD field");
  enh->add_option("--field", in)->required();
  enh->add_option("--d33", d33);
  enh->add_option("--d44", d44);
  enh->add_option("--t", t);
  enh->add_option("--radius", radius, "truncation radius (0 = auto)");
  enh->add_option("--section", section)->check(CLI::IsMember({"new", "zero"}));
  enh->add_flag("--periodic", periodic, "periodic wrap (conservation tests)");
  enh->add_option("--out", out)->required();

  auto* sym = app.add_subcommand("symmetry-report",
                                 "asymmetry sums for both sections (TSV)");
  sym->add_option("--d33", d33);
  sym->add_option("--t", ts)->delimiter(',');
  sym->add_option("--d44", d44s)->delimiter(',');
  sym->add_option("--grid", grid);
  sym->add_option("--sphere-level", level);

  auto* fbc = app.add_subcommand("fbc", "fiber-to-bundle coherence scores");
  fbc->add_option("--tracto", tracto)->required();
  fbc->add_option("--d33", d33);
  fbc->add_option("--d44", d44);
  fbc->add_option("--t", t);
  fbc->add_option("--window", window, "local window half-width");
  auto* thr = fbc->add_option("--threshold", threshold);
  fbc->add_option("--mode", mode)->check(CLI::IsMember({"per_fiber", "per_point_min"}));
  fbc->add_option("--scores", scores)->required();
  fbc->add_option("--filtered", filtered);

  auto* orc = app.add_subcommand("oracle", "PDE oracle vs analytic kernel");
  orc->add_option("--d33", d33);
  orc->add_option("--d44", d44);
  orc->add_option("--t", t);
  orc->add_option("--dt", dt, "time step (0 = auto)");
  orc->add_option("--grid", grid);
  orc->add_option("--sphere-level", level);
  orc->add_option("--compare", section)->check(CLI::IsMember({"new", "zero"}));

  auto* sph = app.add_subcommand("sphere", "export a sphere sampling as text");
  sph->add_option("--sphere-level", level);
  sph->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  set_threads(nthreads);
  try {
    if (*kern) return cmd_kernel(d33, d44, t, radius, level, section, out);
    if (*enh) return cmd_enhance(in, d33, d44, t, radius, section, periodic, out);
    if (*sym) return cmd_symmetry_report(d33, ts, d44s, grid, level);
    if (*fbc)
      return cmd_fbc(tracto, d33, d44, t, window, threshold, thr->count() > 0,
                     mode, scores, filtered);
    if (*orc) return cmd_oracle(d33, d44, t, dt, grid, level, section);
    if (*sph) {
      std::ofstream os(out);
      if (!os) throw stk::IoError("cannot open for writing: " + out);
      os << sphere_table(icosphere(level));
      return 0;
    }
  } catch (const stk::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
