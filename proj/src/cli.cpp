#include "geokit/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "geokit/analysis.hpp"
#include "geokit/cc_metric.hpp"
#include "geokit/curves.hpp"
#include "geokit/embeddings.hpp"
#include "geokit/error.hpp"
#include "geokit/grid_map.hpp"
#include "geokit/grushin.hpp"
#include "geokit/heis.hpp"
#include "geokit/io.hpp"

namespace geokit::cli {

namespace {

using Report = std::vector<std::pair<std::string, double>>;

struct RunConfig
{
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
};

/// Owns the destination stream; everything is written through one sink.
class Sink
{
public:
  Sink(const RunConfig & cfg, std::ostream & fallback) : format_(cfg.format), os_(&fallback)
  {
    if (!cfg.out_path.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.out_path);
      if (!*file_) { throw DomainError("cannot open output file '" + cfg.out_path + "'"); }
      os_ = file_.get();
    }
  }

  void scalar(const std::string & name, double v)
  {
    if (format_ == "json") {
      nlohmann::ordered_json j;
      j[name] = v;
      *os_ << j.dump() << '\n';
    } else {
      *os_ << format_number(v) << '\n';
    }
  }

  void report(const Report & rows)
  {
    if (format_ == "json") {
      nlohmann::ordered_json j;
      for (const auto & [k, v] : rows) { j[k] = v; }
      *os_ << j.dump(2) << '\n';
    } else {
      *os_ << "name,value\n";
      for (const auto & [k, v] : rows) { *os_ << k << ',' << format_number(v) << '\n'; }
    }
  }

  void table(const std::vector<std::string> & header, const std::vector<std::vector<double>> & rows)
  {
    if (format_ == "json") {
      nlohmann::ordered_json j;
      j["columns"] = header;
      j["rows"]    = rows;
      *os_ << j.dump() << '\n';
    } else {
      write_csv(*os_, header, rows);
    }
  }

private:
  std::string format_;
  std::ostream * os_;
  std::unique_ptr<std::ofstream> file_;
};

void add_common(CLI::App * sub, RunConfig & cfg)
{
  sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

HeisPoint parse_heis(const std::string & text, int n, const char * flag)
{
  auto v = parse_reals(text);
  if (v.size() != static_cast<std::size_t>(2 * n + 1)) {
    throw DomainError(fmt::format("{} needs {} coordinates for n = {}", flag, 2 * n + 1, n));
  }
  return HeisPoint(n, std::move(v));
}

std::pair<double, double> parse_plane(const std::string & text, const char * flag)
{
  const auto v = parse_reals(text);
  if (v.size() != 2) { throw DomainError(fmt::format("{} needs 2 coordinates", flag)); }
  return {v[0], v[1]};
}

SphereMap sphere_map(const std::string & name)
{
  return name == "cayley" ? cayley_map() : legendrian_map();
}

TargetMetric target_metric(const std::string & name)
{
  if (name == "cc") { return TargetMetric::cc; }
  if (name == "euclidean") { return TargetMetric::euclidean; }
  return TargetMetric::koranyi;
}

/// Sphere points for `embed`: pole-first equal angles on S^1, lattice on S^2,
/// seeded random above. Cayley samples are shifted half a step off the pole.
std::vector<SpherePoint> embed_points(int n, int samples, bool half_shift, std::uint64_t seed)
{
  if (n == 1) {
    std::vector<SpherePoint> pts;
    for (int i = 0; i < samples; ++i) {
      const double theta = 2 * std::numbers::pi * (i + (half_shift ? 0.5 : 0.0)) / samples;
      pts.push_back(SpherePoint::normalized({std::cos(theta), std::sin(theta)}));
    }
    return pts;
  }
  if (n == 2) { return sphere_lattice(2, samples); }
  return sphere_random(n, samples, seed);
}

}  // namespace

int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"geokit: sub-Riemannian geometry of the Heisenberg groups and the Grushin plane"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<void(Sink &)> action;

  // dist
  auto * dist = app.add_subcommand("dist", "distance between two points");
  add_common(dist, cfg);
  std::string metric, p_text, q_text;
  int n = 1, segments = 64, restarts = 8, max_iter = 200;
  double tol = 1e-12;
  dist->add_option("--metric", metric)->required()->check(CLI::IsMember({"koranyi", "cc", "grushin"}));
  dist->add_option("--n", n)->check(CLI::Range(1, 64))->capture_default_str();
  dist->add_option("--p", p_text)->required();
  dist->add_option("--q", q_text)->required();
  dist->add_option("--tol", tol)->check(CLI::PositiveNumber)->capture_default_str();
  dist->add_option("--K", segments, "collocation segments (grushin)")->check(CLI::Range(2, 4096))->capture_default_str();
  dist->add_option("--restarts", restarts)->check(CLI::Range(1, 1024))->capture_default_str();
  dist->add_option("--max-iter", max_iter, "phase-solve iteration cap (cc)")->check(CLI::Range(1, 100000))->capture_default_str();
  dist->callback([&] {
    action = [&](Sink & sink) {
      if (metric == "grushin") {
        CCSolverConfig c;
        c.controls_per_path = segments;
        c.restarts          = restarts;
        c.seed              = cfg.seed;
        sink.scalar("distance", grushin_dist(parse_plane(p_text, "--p"), parse_plane(q_text, "--q"), c));
        return;
      }
      const auto p = parse_heis(p_text, n, "--p");
      const auto q = parse_heis(q_text, n, "--q");
      if (metric == "koranyi") {
        sink.scalar("distance", koranyi_dist(p, q));
      } else {
        CCSolverConfig c;
        c.tol      = tol;
        c.max_iter = max_iter;
        sink.scalar("distance", cc_dist(p, q, c));
      }
    };
  });

  // scan
  auto * scan = app.add_subcommand("scan", "comparability or bi-Lipschitz distortion scans");
  add_common(scan, cfg);
  std::string scan_kind, scan_map = "legendrian", scan_metric = "koranyi";
  int scan_n = 1, scan_samples = 10000;
  scan->add_option("--kind", scan_kind)->required()->check(CLI::IsMember({"comparability", "bilip"}));
  scan->add_option("--n", scan_n)->check(CLI::Range(1, 64))->capture_default_str();
  scan->add_option("--samples", scan_samples)->check(CLI::Range(2, 100000000))->capture_default_str();
  scan->add_option("--map", scan_map)->check(CLI::IsMember({"legendrian", "cayley"}))->capture_default_str();
  scan->add_option("--metric", scan_metric)->check(CLI::IsMember({"koranyi", "cc", "euclidean"}))->capture_default_str();
  scan->callback([&] {
    action = [&](Sink & sink) {
      if (scan_kind == "comparability") {
        const auto r = comparability_scan(ScanBox::unit(scan_n), scan_samples, cfg.seed);
        sink.report({{"c_low", r.c_low},
                     {"c_high", r.c_high},
                     {"c_root", r.c_root},
                     {"koranyi_min", r.koranyi_min},
                     {"koranyi_max", r.koranyi_max},
                     {"pairs", r.pairs}});
      } else {
        const auto r =
            bilip_estimate(sphere_map(scan_map), scan_n, target_metric(scan_metric), scan_samples, cfg.seed);
        sink.report({{"lower", r.lower}, {"upper", r.upper}, {"samples", r.samples}});
      }
    };
  });

  // lift
  auto * lift = app.add_subcommand("lift", "horizontal lift of a planar curve");
  add_common(lift, cfg);
  std::string in_path;
  int circle = 0;
  double t0 = 0;
  auto * in_opt = lift->add_option("--in", in_path, "CSV s,x1,y1,...")->check(CLI::ExistingFile);
  lift->add_option("--circle", circle, "lift the unit circle with this many samples")
      ->check(CLI::Range(2, 100000000))
      ->excludes(in_opt);
  lift->add_option("--t0", t0)->capture_default_str();
  lift->callback([&] {
    action = [&](Sink & sink) {
      SampledCurve planar = [&] {
        if (circle > 0) {
          std::vector<double> params;
          std::vector<std::vector<double>> pts;
          for (int i = 0; i < circle; ++i) {
            const double s = 2 * std::numbers::pi * i / (circle - 1);
            params.push_back(s);
            pts.push_back(i + 1 == circle ? std::vector<double>{1.0, 0.0}
                                          : std::vector<double>{std::cos(s), std::sin(s)});
          }
          return SampledCurve(std::move(params), std::move(pts), true);
        }
        if (in_path.empty()) { throw DomainError("lift needs --in or --circle"); }
        std::ifstream is(in_path);
        return read_curve_csv(is);
      }();
      if (planar.dim() % 2 != 0) { throw DomainError("lift: planar curve must have an even number of coordinates"); }
      const auto lifted = horizontal_lift(planar, t0);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < lifted.size(); ++i) {
        std::vector<double> row{lifted.params()[i]};
        row.insert(row.end(), lifted.point(i).begin(), lifted.point(i).end());
        rows.push_back(std::move(row));
      }
      sink.table(curve_header(lifted.dim()), rows);
    };
  });

  // embed
  auto * embed = app.add_subcommand("embed", "sample a horizontal embedding of S^n");
  add_common(embed, cfg);
  std::string embed_kind;
  int embed_n = 1, embed_samples = 256;
  embed->add_option("--kind", embed_kind)->required()->check(CLI::IsMember({"cayley", "legendrian"}));
  embed->add_option("--n", embed_n)->check(CLI::Range(1, 64))->capture_default_str();
  embed->add_option("--samples", embed_samples)->check(CLI::Range(1, 100000000))->capture_default_str();
  embed->callback([&] {
    action = [&](Sink & sink) {
      const bool cayley = embed_kind == "cayley";
      std::vector<std::string> header;
      if (cayley) {
        for (int j = 1; j <= embed_n; ++j) { header.push_back(fmt::format("u{}", j)); }
      } else {
        for (int j = 0; j <= embed_n; ++j) { header.push_back(fmt::format("x{}", j)); }
      }
      for (int j = 1; j <= embed_n; ++j) {
        header.push_back(fmt::format("x{}", j));
        header.push_back(fmt::format("y{}", j));
      }
      header.emplace_back("t");

      std::vector<std::vector<double>> rows;
      for (const auto & p : embed_points(embed_n, embed_samples, cayley, cfg.seed)) {
        std::vector<double> row;
        HeisPoint image(embed_n);
        if (cayley) {
          const double top = p[static_cast<std::size_t>(embed_n)];
          if (top >= 1 - 1e-12) { continue; }
          std::vector<double> u(static_cast<std::size_t>(embed_n));
          for (int j = 0; j < embed_n; ++j) { u[j] = p[j] / (1 - top); }
          image = cayley_phi(u);
          row   = u;
        } else {
          image = legendrian_F(p);
          row.assign(p.coords().begin(), p.coords().end());
        }
        row.insert(row.end(), image.coords().begin(), image.coords().end());
        rows.push_back(std::move(row));
      }
      sink.table(header, rows);
    };
  });

  // check
  auto * check = app.add_subcommand("check", "numerical checks of horizontality, eikonal, rank and Stokes identities");
  add_common(check, cfg);
  std::string check_kind, check_map = "legendrian", stokes_case = "identity", grid_out;
  int check_n = 1, check_samples = 1000;
  double check_h = 1.0 / 64, check_eps = 1.0 / 8, rank_tol = 1e-6;
  std::string eik_p, eik_q;
  check->add_option("--kind", check_kind)->required()->check(CLI::IsMember({"contact", "eikonal", "rank", "stokes"}));
  check->add_option("--map", check_map)->check(CLI::IsMember({"legendrian", "cayley"}))->capture_default_str();
  check->add_option("--case", stokes_case, "stokes test map")
      ->check(CLI::IsMember({"identity", "radial", "closed"}))
      ->capture_default_str();
  check->add_option("--n", check_n)->check(CLI::Range(1, 64))->capture_default_str();
  check->add_option("--samples", check_samples)->check(CLI::Range(1, 100000000))->capture_default_str();
  check->add_option("--h", check_h)->check(CLI::PositiveNumber)->capture_default_str();
  check->add_option("--eps", check_eps)->check(CLI::PositiveNumber)->capture_default_str();
  check->add_option("--tol", rank_tol)->check(CLI::PositiveNumber)->capture_default_str();
  check->add_option("--p", eik_p, "eikonal point");
  check->add_option("--q", eik_q, "eikonal base point (default: origin)");
  check->add_option("--grid-out", grid_out, "write the sampled grid (CSV plus .json sidecar)");
  check->callback([&] {
    action = [&](Sink & sink) {
      if (check_kind == "contact") {
        const auto g = compose_on_grid(sphere_map(check_map), check_n, check_h, check_eps);
        if (!grid_out.empty()) {
          std::ofstream csv(grid_out);
          std::ofstream json(grid_out + ".json");
          if (!csv || !json) { throw DomainError("cannot open '" + grid_out + "'"); }
          write_grid_csv(csv, g);
          json << grid_sidecar_json(g);
        }
        sink.report({{"contact_residual", contact_residual(g)},
                     {"contact_residual_relative", contact_residual_relative(g)},
                     {"nodes", static_cast<double>(g.present_count())}});
      } else if (check_kind == "eikonal") {
        if (eik_p.empty()) { throw DomainError("check --kind eikonal needs --p"); }
        const auto p = parse_heis(eik_p, check_n, "--p");
        const auto q = eik_q.empty() ? HeisPoint(check_n) : parse_heis(eik_q, check_n, "--q");
        sink.scalar("gradient_norm", eikonal_check(q, p, check_h));
      } else if (check_kind == "rank") {
        // Points of R^{n+1} in the shell 1/4 <= |u| <= 1, mapped by psi(u / |u|).
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::vector<std::vector<double>> pts;
        while (pts.size() < static_cast<std::size_t>(check_samples)) {
          std::vector<double> u(static_cast<std::size_t>(check_n + 1));
          double u2 = 0;
          for (double & c : u) {
            c = uni(rng);
            u2 += c * c;
          }
          if (u2 >= 1.0 / 16 && u2 <= 1.0) { pts.push_back(std::move(u)); }
        }
        const SphereMap psi = sphere_map(check_map);
        const EuclideanMap f = [psi](std::span<const double> u) { return psi(SpherePoint::normalized(cavitation(u))); };
        const auto r = rank_check(f, pts, rank_tol);
        Report rep{{"max_rank", r.max_rank}};
        for (std::size_t i = 1; i < r.max_ratio.size(); ++i) {
          rep.emplace_back(fmt::format("max_sigma{}_ratio", i + 1), r.max_ratio[i]);
        }
        sink.report(rep);
      } else {
        if (check_h > 0.5) { throw DomainError("--h must be at most 0.5 for stokes"); }
        const Polynomial x{{{1.0, {1, 0}}}};
        const Polynomial y{{{1.0, {0, 1}}}};
        const Polynomial zero{};
        PlaneMap g = [](std::span<const double> u) { return std::vector<double>(u.begin(), u.end()); };
        OneForm omega{{zero, x}};
        if (stokes_case == "radial") {
          g = [](std::span<const double> u) {
            const double r = std::hypot(u[0], u[1]);
            return std::vector<double>{r * u[0], r * u[1]};
          };
        } else if (stokes_case == "closed") {
          g = [](std::span<const double> u) {
            return std::vector<double>{u[0] + 0.3 * u[1] * u[1], u[1] + 0.2 * u[0] * u[1]};
          };
          omega = OneForm{{x, y}};
        }
        const auto s = stokes_check(g, 2, omega, check_h);
        sink.report({{"boundary", s.boundary}, {"interior", s.interior}, {"gap", std::abs(s.boundary - s.interior)}});
      }
    };
  });

  // energy
  auto * energy = app.add_subcommand("energy", "horizontal Sobolev energy of psi o (x / |x|)");
  add_common(energy, cfg);
  std::string energy_map = "legendrian";
  int energy_n = 1, annuli = 0;
  double energy_p = 0, energy_eps = 1.0 / 16, energy_h = 1.0 / 256, contact_tol = 0.1;
  energy->add_option("--map", energy_map)->check(CLI::IsMember({"legendrian", "cayley"}))->capture_default_str();
  energy->add_option("--n", energy_n)->check(CLI::Range(1, 8))->capture_default_str();
  energy->add_option("--p", energy_p)->required()->check(CLI::Range(1.0, 1e6));
  energy->add_option("--eps", energy_eps)->check(CLI::PositiveNumber)->capture_default_str();
  energy->add_option("--h", energy_h)->check(CLI::PositiveNumber)->capture_default_str();
  energy->add_option("--annuli", annuli, "report the dyadic shells 2^-i > |x| >= 2^-(i+1)")
      ->check(CLI::Range(1, 60));
  energy->add_option("--contact-tol", contact_tol, "bound on the relative contact residual")->check(CLI::PositiveNumber)->capture_default_str();
  energy->callback([&] {
    action = [&](Sink & sink) {
      if (annuli > 0 && std::ldexp(1.0, -annuli) < energy_eps * (1 - 1e-12)) {
        throw DomainError("--annuli reaches below the puncture radius --eps");
      }
      const auto g = compose_on_grid(sphere_map(energy_map), energy_n, energy_h, energy_eps);
      if (annuli == 0) {
        sink.scalar("energy", horizontal_energy(g, energy_p, contact_tol));
        return;
      }
      std::vector<double> radii;
      for (int i = 0; i <= annuli; ++i) { radii.push_back(std::ldexp(1.0, -i)); }
      radii.front() = 1.0 + 1e-9;  // close the outer shell on the unit sphere
      const auto e = annular_energies(g, energy_p, radii, contact_tol);
      std::vector<std::vector<double>> rows;
      for (int i = 0; i < annuli; ++i) { rows.push_back({std::ldexp(1.0, -i), radii[i + 1], e[i]}); }
      sink.table({"r_outer", "r_inner", "energy"}, rows);
    };
  });

  // grushin
  auto * grushin = app.add_subcommand("grushin", "Grushin plane geodesics, curvature and distance");
  add_common(grushin, cfg);
  grushin->require_subcommand(1);
  int gm = 1, gsign = 1, gsamples = 100;
  double gy1 = 1, gx = 1, gh = 1e-3;
  std::string gp, gq;
  auto * geo = grushin->add_subcommand("geodesic", "sample a geodesic from (0,0) to (0,y1) as t,x,y");
  add_common(geo, cfg);
  geo->add_option("--m", gm)->check(CLI::Range(1, 1000000))->capture_default_str();
  geo->add_option("--y1", gy1)->check(CLI::PositiveNumber)->capture_default_str();
  geo->add_option("--sign", gsign)->check(CLI::IsMember({-1, 1}))->capture_default_str();
  geo->add_option("--samples", gsamples)->check(CLI::Range(2, 100000000))->capture_default_str();
  geo->callback([&] {
    action = [&](Sink & sink) {
      const auto c = grushin_geodesic_curve({gm, gy1, gsign}, gsamples);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < c.size(); ++i) { rows.push_back({c.params()[i], c.point(i)[0], c.point(i)[1]}); }
      sink.table({"t", "x", "y"}, rows);
    };
  });
  auto * curv = grushin->add_subcommand("curvature", "Gauss curvature at abscissa x");
  add_common(curv, cfg);
  curv->add_option("--x", gx)->required();
  curv->add_option("--h", gh, "finite-difference step for the Brioschi check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  curv->callback([&] {
    action = [&](Sink & sink) {
      const double k = grushin_curvature(gx);
      const double b = brioschi_curvature([](double, double) { return 1.0; },
                                          [](double x, double) { return 1.0 / (x * x); }, gx, 0.0, gh);
      sink.report({{"curvature", k}, {"brioschi", b}});
    };
  });
  auto * gdist = grushin->add_subcommand("dist", "sub-Riemannian distance");
  add_common(gdist, cfg);
  gdist->add_option("--p", gp)->required();
  gdist->add_option("--q", gq)->required();
  gdist->add_option("--K", segments)->check(CLI::Range(2, 4096))->capture_default_str();
  gdist->add_option("--restarts", restarts)->check(CLI::Range(1, 1024))->capture_default_str();
  gdist->callback([&] {
    action = [&](Sink & sink) {
      CCSolverConfig c;
      c.controls_per_path = segments;
      c.restarts          = restarts;
      c.seed              = cfg.seed;
      sink.scalar("distance", grushin_dist(parse_plane(gp, "--p"), parse_plane(gq, "--q"), c));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Sink sink(cfg, out);
    action(sink);
  } catch (const UnconvergedError & e) {
    err << "error: " << e.what() << " (best bound " << format_number(e.best_bound()) << ")\n";
    return 3;
  } catch (const DomainError & e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace geokit::cli
