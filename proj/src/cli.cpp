#include "se1p/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>

#include "se1p/direct.hpp"
#include "se1p/estimate.hpp"
#include "se1p/parallel.hpp"
#include "se1p/quadtheory.hpp"
#include "se1p/realspace.hpp"
#include "se1p/solver.hpp"

namespace se1p {

namespace {

struct Common {
  std::string out;
  int threads = 0;
};

struct ParamFlags {
  std::optional<double> tol;
  double xi = 0;
  std::optional<int> M, P, nl;
  std::optional<double> sl, s0, rc;
};

struct SystemFlags {
  std::string path;
  std::size_t n = 100;
  std::vector<double> box = {1, 1, 1};
  std::uint64_t seed = 1;
};

Vec3 to_box(const std::vector<double>& b) { return {b[0], b[1], b[2]}; }

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "write output to this file instead of stdout");
  app->add_option("--threads", c.threads, "worker threads (0: SE1P_THREADS or 1)")->check(CLI::NonNegativeNumber);
}

void add_params(CLI::App* app, ParamFlags& f, bool need_xi = true) {
  auto* xi = app->add_option("--xi", f.xi, "Ewald splitting parameter")->check(CLI::PositiveNumber);
  if (need_xi) xi->required();
  app->add_option("--tol", f.tol, "target rms error; selects all other parameters");
  app->add_option("--M", f.M, "grid points along the periodic direction");
  app->add_option("--P", f.P, "Gaussian support points");
  app->add_option("--nl", f.nl, "number of locally upsampled k3 modes");
  app->add_option("--sl", f.sl, "upsampling factor for the local modes");
  app->add_option("--s0", f.s0, "upsampling factor for the k3=0 mode");
  app->add_option("--rc", f.rc, "real-space cutoff");
}

void add_system(CLI::App* app, SystemFlags& s) {
  app->add_option("--system", s.path, "particle file (default: generated from --n --box --seed)");
  app->add_option("--n", s.n, "particles to generate when no --system is given");
  app->add_option("--box", s.box, "box lengths L1 L2 L3")->expected(3);
  app->add_option("--seed", s.seed, "generator seed");
}

ParticleSystem get_system(const SystemFlags& s) {
  if (!s.path.empty()) return load_system(s.path);
  return gen_uniform(s.n, to_box(s.box), s.seed);
}

SolverParams build_params(const ParamFlags& f, const Vec3& box, double Q, std::ostream* warn = nullptr) {
  if (f.tol) {
    SelectOptions opt;
    opt.nl = f.nl;
    auto p = select_params(*f.tol, f.xi, Q, box, opt);
    double rc_max = std::min({box[2] / 2, box[0], box[1]});
    if (!f.rc && warn && p.rc > rc_max) {
      double Lvol = std::cbrt(box[0] * box[1] * box[2]);
      *warn << "warning: selected rc=" << p.rc << " exceeds " << rc_max << "; clamped (real-space estimate "
            << est_real_trunc(f.xi, rc_max, Q, Lvol) << "), raise xi to keep the tolerance\n";
      p.rc = rc_max;
    }
    if (!f.M && !f.P && !f.sl && !f.s0 && !f.rc) return p;
    int M = f.M.value_or(p.M);
    return make_params_s(box, f.xi, f.rc.value_or(p.rc), M, f.P.value_or(p.P), f.nl.value_or(std::min(p.nl, M / 2 - 1)),
                         f.sl.value_or(p.sl()), f.s0.value_or(p.s0()));
  }
  if (!f.M || !f.P || !f.rc) throw InputError("give --tol, or all of --M --P --rc");
  int nl = f.nl.value_or(std::max(0, std::min(static_cast<int>(std::lround(*f.M / 10.0)), *f.M / 2 - 1)));
  return make_params_s(box, f.xi, *f.rc, *f.M, *f.P, nl, f.sl.value_or(2.0), f.s0.value_or(2.5));
}

// Holds either the caller's stream or a file opened from --out.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InputError("cannot open " + path + " for writing");
    os_ = file_.get();
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void print_params(std::ostream& os, const SolverParams& p) {
  os << std::setprecision(10);
  os << "M=" << p.M << "\nP=" << p.P << "\nMtilde=" << p.Mtilde << "\nnl=" << p.nl << "\nsl=" << p.sl()
     << "\nSl=" << p.Sl << "\ns0=" << p.s0() << "\nS0=" << p.S0 << "\nrc=" << p.rc << "\nxi=" << p.xi
     << "\nh=" << p.h << "\neta=" << p.eta << "\nR=" << p.R << '\n';
}

double force_rms(const std::vector<Vec3>& f, const std::vector<Vec3>& ref, bool relative) {
  double e = 0, r = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int d = 0; d < 3; ++d) {
      e += (f[i][d] - ref[i][d]) * (f[i][d] - ref[i][d]);
      r += ref[i][d] * ref[i][d];
    }
  return relative ? std::sqrt(e / r) : std::sqrt(e / (3.0 * f.size()));
}

unsigned parse_terms(const std::string& t) {
  if (t == "all") return kAllTerms;
  if (t == "real") return kRealTerm;
  if (t == "kspace") return kKSpaceTerm;
  if (t == "zero") return kZeroModeTerm;
  if (t == "fourier") return kFourierTerms;
  throw InputError("unknown --terms value " + t);
}

std::vector<double> range(double from, double to, double step) {
  if (!(step > 0) || to < from) throw InputError("sweep range needs --from <= --to and --step > 0");
  std::vector<double> v;
  for (int i = 0;; ++i) {
    double x = from + i * step;
    if (x > to + 1e-9 * std::abs(step)) break;
    v.push_back(x);
  }
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Singly periodic spectral Ewald summation"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand help for all subcommands");

  Common common;
  ParamFlags pf;
  SystemFlags sf;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a uniform neutral system");
  add_common(gen, common);
  gen->add_option("--n", sf.n, "number of particles (even)")->required();
  gen->add_option("--box", sf.box, "box lengths L1 L2 L3")->expected(3)->required();
  gen->add_option("--seed", sf.seed, "generator seed");

  // params
  double q2 = 1;
  auto* params = app.add_subcommand("params", "select solver parameters for a tolerance");
  add_common(params, common);
  add_params(params, pf);
  params->add_option("--box", sf.box, "box lengths L1 L2 L3")->expected(3)->required();
  params->add_option("--q2", q2, "sum of squared charges")->check(CLI::PositiveNumber);

  // solve
  bool no_forces = false, subtract_mean = false;
  auto* solve_cmd = app.add_subcommand("solve", "potentials, forces and energy by the spectral method");
  add_common(solve_cmd, common);
  add_params(solve_cmd, pf);
  add_system(solve_cmd, sf);
  solve_cmd->add_flag("--no-forces", no_forces, "skip forces");
  solve_cmd->add_flag("--subtract-mean", subtract_mean, "neutralize by removing the mean charge (off the method's assumptions)");

  // direct
  std::optional<int> layers, kinf;
  std::string terms = "all";
  auto* direct_cmd = app.add_subcommand("direct", "reference Ewald sum evaluated pairwise");
  add_common(direct_cmd, common);
  add_system(direct_cmd, sf);
  direct_cmd->add_option("--xi", pf.xi, "Ewald splitting parameter")->required()->check(CLI::PositiveNumber);
  direct_cmd->add_option("--layers", layers, "periodic images per side in the real-space sum");
  direct_cmd->add_option("--kinf", kinf, "largest |k3| index in the k-space sum");
  direct_cmd->add_option("--terms", terms, "all, real, kspace, zero or fourier");
  direct_cmd->add_flag("--no-forces", no_forces, "skip forces");

  // verify
  std::string report = "csv";
  auto* verify = app.add_subcommand("verify", "compare the spectral solve with the direct sum");
  add_common(verify, common);
  add_params(verify, pf);
  add_system(verify, sf);
  verify->add_option("--report", report, "csv or kv")->check(CLI::IsMember({"csv", "kv"}));

  // bench
  std::vector<std::size_t> sizes = {1000, 2000, 4000};
  double density = 1000;
  int reps = 1;
  auto* bench = app.add_subcommand("bench", "stage timings at fixed density");
  add_common(bench, common);
  bench->add_option("--n", sizes, "particle counts");
  bench->add_option("--density", density, "particles per unit volume (cubic boxes)")->check(CLI::PositiveNumber);
  bench->add_option("--xi", pf.xi, "Ewald splitting parameter")->required()->check(CLI::PositiveNumber);
  bench->add_option("--tol", pf.tol, "target rms error")->required();
  bench->add_option("--reps", reps, "repetitions; the fastest is reported")->check(CLI::PositiveNumber);
  bench->add_option("--seed", sf.seed, "generator seed");

  // quadcheck
  std::vector<double> k3s = {1, 2, 3}, hs = {0.3, 0.5, 1};
  double alpha = 0.1, C = 1;
  auto* quad = app.add_subcommand("quadcheck", "trapezoidal-rule errors against their closed forms");
  add_common(quad, common);
  quad->add_option("--k3", k3s, "k3 values");
  quad->add_option("--steps", hs, "step sizes h");
  quad->add_option("--alpha", alpha, "Gaussian exponent")->check(CLI::PositiveNumber);
  quad->add_option("--C", C, "constant of the 2D heuristic");

  // sweep
  std::string kind = "P", quantity = "potential";
  std::optional<double> from, to, step;
  auto* sweep = app.add_subcommand("sweep", "error against one parameter, with the matching estimate");
  add_common(sweep, common);
  add_params(sweep, pf);
  add_system(sweep, sf);
  sweep->add_option("--kind", kind, "P, sl, rc or kinf (kinf counts modes |n| < kinf)")
      ->check(CLI::IsMember({"P", "sl", "rc", "kinf"}));
  sweep->add_option("--quantity", quantity, "potential or force (P and sl sweeps)")
      ->check(CLI::IsMember({"potential", "force"}));
  sweep->add_option("--from", from, "first value");
  sweep->add_option("--to", to, "last value");
  sweep->add_option("--step", step, "increment");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    int threads = resolve_threads(common.threads);
    Sink sink(common.out, out);
    std::ostream& os = *sink;
    os << std::setprecision(17);

    if (*gen) {
      write_system(os, gen_uniform(sf.n, to_box(sf.box), sf.seed));
    } else if (*params) {
      print_params(os, build_params(pf, to_box(sf.box), q2));
    } else if (*solve_cmd) {
      auto sys = get_system(sf);
      auto p = build_params(pf, sys.box(), sys.q2(), &err);
      Solver solver(p, threads);
      SolveOptions opt;
      opt.forces = !no_forces;
      opt.subtract_mean_charge = subtract_mean;
      auto res = solver.solve(sys, opt);
      write_results_csv(os, res);
      const auto& t = solver.last_times();
      err << "M=" << p.M << " P=" << p.P << " nl=" << p.nl << " Sl=" << p.Sl << " S0=" << p.S0 << " rc=" << p.rc
          << " time=" << t.total() << "s\n";
    } else if (*direct_cmd) {
      auto sys = get_system(sf);
      auto cfg = DirectConfig::converged(pf.xi, sys.box());
      cfg.threads = threads;
      if (layers) cfg.image_layers = *layers;
      if (kinf) cfg.kinf = *kinf;
      unsigned mask = parse_terms(terms);
      Results res;
      res.potential = direct_potential(sys, cfg, mask);
      if (!no_forces) res.force = direct_force(sys, cfg, mask);
      res.energy = energy_of(sys, res.potential);
      write_results_csv(os, res);
    } else if (*verify) {
      auto sys = get_system(sf);
      auto p = build_params(pf, sys.box(), sys.q2(), &err);
      auto res = Solver(p, threads).solve(sys);
      auto cfg = DirectConfig::converged(p.xi, sys.box());
      cfg.threads = threads;
      auto ref_real = direct_real(sys, cfg);
      auto ref_four = direct_potential(sys, cfg, kFourierTerms);
      std::vector<double> ref_total(sys.size());
      for (std::size_t i = 0; i < sys.size(); ++i)
        ref_total[i] = ref_real[i] + ref_four[i] + self_term(sys.charges()[i], p.xi);
      auto ref_force = direct_force(sys, cfg, kAllTerms);

      const double Q = sys.q2();
      const auto& b = sys.box();
      double est_r = est_real_trunc(p.xi, p.rc, Q, std::cbrt(b[0] * b[1] * b[2]));
      double est_f = est_fourier_trunc(p.xi, p.M / 2.0, Q, b[2]) + std::sqrt(Q * p.xi) * est_approx(p.P);
      struct Row {
        const char* term;
        double abs, rel, est;
      };
      std::vector<Row> rows = {
          {"real", rms_error(res.breakdown.real, ref_real, false), rms_error(res.breakdown.real, ref_real, true), est_r},
          {"fourier", rms_error(res.breakdown.fourier, ref_four, false), rms_error(res.breakdown.fourier, ref_four, true),
           est_f},
          {"total", rms_error(res.potential, ref_total, false), rms_error(res.potential, ref_total, true),
           std::hypot(est_r, est_f)},
          {"force", force_rms(res.force, ref_force, false), force_rms(res.force, ref_force, true), NAN},
      };
      if (report == "csv") {
        os << "# schema=1\nterm,rms_abs,rms_rel,estimate\n";
        for (const auto& r : rows) {
          os << r.term << ',' << r.abs << ',' << r.rel << ',';
          if (!std::isnan(r.est)) os << r.est;
          os << '\n';
        }
      } else {
        for (const auto& r : rows) {
          os << r.term << "_abs=" << r.abs << '\n' << r.term << "_rel=" << r.rel << '\n';
          if (!std::isnan(r.est)) os << r.term << "_estimate=" << r.est << '\n';
        }
      }
    } else if (*bench) {
      os << "# schema=1\nN,L,M,P,nl,Sl,S0,grid,fft,scale,gather,real,total,fft_flops\n";
      for (std::size_t n : sizes) {
        double L = std::cbrt(double(n) / density);
        auto sys = gen_uniform(n, {L, L, L}, sf.seed);
        auto p = select_params(*pf.tol, pf.xi, sys.q2(), sys.box());
        Solver solver(p, threads);
        StageTimes best;
        double best_total = INFINITY;
        for (int r = 0; r < reps; ++r) {
          solver.solve(sys);
          if (solver.last_times().total() < best_total) {
            best = solver.last_times();
            best_total = best.total();
          }
        }
        os << n << ',' << L << ',' << p.M << ',' << p.P << ',' << p.nl << ',' << p.Sl << ',' << p.S0 << ','
           << best.grid << ',' << best.fft << ',' << best.scale << ',' << best.gather << ',' << best.real << ','
           << best.total() << ',' << solver.last_fft_stats().flops() << '\n';
      }
    } else if (*quad) {
      os << "# schema=1\ndim,h,k3,measured,estimate\n";
      for (double k3 : k3s)
        for (double h : hs) {
          auto a = trapz_error_1d(k3, alpha, h);
          os << "1," << h << ',' << k3 << ',' << a.measured << ',' << a.estimate << '\n';
          auto b = trapz_error_2d(k3, alpha, h, 0, C);
          os << "2," << h << ',' << k3 << ',' << b.measured << ',' << b.estimate << '\n';
        }
    } else if (*sweep) {
      auto sys = get_system(sf);
      const double Q = sys.q2(), xi = pf.xi;
      const auto& b = sys.box();
      os << "# schema=1\nkind,value,measured,estimate\n";
      if (kind == "P" || kind == "sl") {
        if (!pf.M) throw InputError("P and sl sweeps need --M");
        int M = *pf.M;
        int nl = pf.nl.value_or(M / 2 - 1);
        bool force = quantity == "force";
        auto cfg = DirectConfig::converged(xi, b);
        cfg.threads = threads;
        std::vector<double> ref_phi;
        std::vector<Vec3> ref_f;
        if (force)
          ref_f = direct_force(sys, cfg, kFourierTerms);
        else
          ref_phi = direct_potential(sys, cfg, kFourierTerms);
        auto values = kind == "P" ? range(from.value_or(4), to.value_or(std::min(24, M)), step.value_or(2))
                                  : range(from.value_or(1), to.value_or(4), step.value_or(0.5));
        for (double v : values) {
          int P = kind == "P" ? static_cast<int>(std::lround(v)) : pf.P.value_or(M / 2);
          double sl = kind == "sl" ? v : pf.sl.value_or(4);
          auto p = make_params_s(b, xi, 1, M, P, nl, sl, pf.s0.value_or(std::max(2.5, sl)));
          auto r = Solver(p, threads).fourier(sys, force);
          double m = force ? force_rms(r.force, ref_f, true) : rms_error(r.potential, ref_phi, false);
          double e = force ? est_approx(P) : std::sqrt(Q * xi) * est_approx(P);
          os << kind << ',' << v << ',' << m << ',' << e << '\n';
        }
      } else if (kind == "rc") {
        auto cfg = DirectConfig::converged(xi, b);
        cfg.threads = threads;
        auto ref = direct_real(sys, cfg);
        double Lvol = std::cbrt(b[0] * b[1] * b[2]);
        for (double rc : range(from.value_or(0.1), to.value_or(b[2] / 2), step.value_or(0.05))) {
          double m = rms_error(real_potential(sys, xi, rc, threads), ref, false);
          os << "rc," << rc << ',' << m << ',' << est_real_trunc(xi, rc, Q, Lvol) << '\n';
        }
      } else {
        auto cfg = DirectConfig::converged(xi, b);
        cfg.threads = threads;
        auto kmax = range(from.value_or(2), to.value_or(30), step.value_or(1));
        cfg.kinf = std::max(cfg.kinf, static_cast<int>(kmax.back()) + 10);
        auto ref = direct_kspace(sys, cfg);
        for (double k : kmax) {
          auto c = cfg;
          c.kinf = static_cast<int>(std::lround(k)) - 1;
          double m = c.kinf < 1 ? rms_error(std::vector<double>(sys.size(), 0.0), ref, false)
                                : rms_error(direct_kspace(sys, c), ref, false);
          os << "kinf," << k << ',' << m << ',' << est_fourier_trunc(xi, k, Q, b[2]) << '\n';
        }
      }
    }
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace se1p
