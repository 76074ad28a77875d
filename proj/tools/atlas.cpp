// Command line front end: verification suites plus direct access to the
// orbit, cotangent, product, exterior-power, and graph constructions.
// Matrices are exchanged as JSON arrays of rows with [re, im] entries.

#include <CLI11.hpp>

#include <atlas/harness.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

using atlas::cmat;
using atlas::cplx;
using atlas::cvec;
using atlas::json;

struct GeometryOpts {
  int n = 3;
  std::vector<int> theta;
};

void add_geometry(CLI::App* cmd, GeometryOpts& g) {
  cmd->add_option("--n", g.n, "matrix size n of sl(n, C)")
      ->check(CLI::Range(2, 8));
  cmd->add_option("--theta", g.theta,
                  "1-based simple-root indices collapsed by the "
                  "characteristic element");
}

atlas::Characteristic characteristic_of(const GeometryOpts& g) {
  return atlas::characteristic_from_theta(atlas::make_theta(g.n, g.theta));
}

struct IoOpts {
  std::string input;
  std::string output;
};

void add_io(CLI::App* cmd, IoOpts& io, bool need_input = true) {
  auto* in = cmd->add_option("--input", io.input, "input JSON file");
  if (need_input) in->required();
  cmd->add_option("--output", io.output,
                  "output JSON file (stdout when omitted)");
}

void emit(const IoOpts& io, const json& j) {
  if (io.output.empty())
    std::cout << j.dump(2) << "\n";
  else
    atlas::save_json_file(io.output, j);
}

atlas::CotangentPoint point_from_json(const json& j) {
  atlas::CotangentPoint xi;
  xi.base = atlas::matrix_from_json(j.at("base"));
  xi.w = atlas::matrix_from_json(j.at("w"));
  return xi;
}

json point_to_json(const atlas::CotangentPoint& xi) {
  return json{{"base", atlas::to_json(xi.base)}, {"w", atlas::to_json(xi.w)}};
}

atlas::RepElement element_from_json(const json& j) {
  atlas::RepElement el;
  el.v = atlas::vector_from_json(j.at("v"));
  el.eps = atlas::vector_from_json(j.at("eps"));
  return el;
}

json pair_to_json(const atlas::FlagPair& p) {
  return json{{"first", atlas::to_json(p.first)},
              {"second", atlas::to_json(p.second)}};
}

// Streams one JSON line per finished check, then a summary line; writes the
// full report to report_path when given. Returns the process exit code.
int run_and_stream(const atlas::SuiteConfig& cfg,
                   const std::string& report_path) {
  const atlas::Report report =
      atlas::run_suite(cfg, [](const atlas::CheckResult& c) {
        std::cout << atlas::check_to_json(c).dump() << "\n";
      });
  std::size_t failures = 0;
  for (const atlas::CheckResult& c : report.checks)
    if (!c.pass) ++failures;
  const json summary = {{"all_pass", report.all_pass},
                        {"calibrated_sign", report.calibrated_sign},
                        {"checks", report.checks.size()},
                        {"failures", failures}};
  std::cout << summary.dump() << "\n";
  if (!report_path.empty())
    atlas::save_json_file(report_path, atlas::report_to_json(report));
  return report.all_pass ? 0 : 2;
}

void add_suite_options(CLI::App* cmd, atlas::SuiteConfig& cfg,
                       std::string& report_path) {
  cmd->add_option("--k", cfg.k, "exterior power degree")
      ->check(CLI::Range(1, 7));
  cmd->add_option("--samples", cfg.samples, "samples per randomized check")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "base seed for all sample streams");
  cmd->add_option("--tol-exact", cfg.tol_exact,
                  "tolerance for identities that hold to roundoff");
  cmd->add_option("--tol-fd", cfg.tol_fd,
                  "tolerance for finite-difference comparisons");
  cmd->add_option("--report", report_path, "write the full JSON report here");
}

double angle_from(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  return angle(rng);
}

double line_distance(const cvec& a, const cvec& b) {
  const cvec ua = a / a.norm();
  const cvec ub = b / b.norm();
  return (ua * ua.adjoint() - ub * ub.adjoint()).norm();
}

cvec plus_eigenline(const cmat& x) {
  Eigen::SelfAdjointEigenSolver<cmat> es(x);
  return es.eigenvectors().col(x.rows() - 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical atlas of adjoint orbits of sl(n, C)"};
  app.require_subcommand(1);
  int exit_code = 0;

  // verify: the full randomized suite runner.
  atlas::SuiteConfig verify_cfg;
  std::string verify_report;
  std::vector<std::string> verify_suites = {"all"};
  GeometryOpts verify_geom;
  {
    auto* v = app.add_subcommand("verify", "run the verification suites");
    add_geometry(v, verify_geom);
    add_suite_options(v, verify_cfg, verify_report);
    v->add_option("--suite", verify_suites,
                  "suite names, or 'all' (repeatable)");
    v->callback([&] {
      verify_cfg.n = verify_geom.n;
      verify_cfg.theta = verify_geom.theta;
      verify_cfg.suites = verify_suites;
      exit_code = run_and_stream(verify_cfg, verify_report);
    });
  }

  // orbit: factorization and projection.
  auto* orbit = app.add_subcommand("orbit", "orbit factorization and fibration");
  orbit->require_subcommand(1);
  GeometryOpts orbit_geom;
  IoOpts orbit_fact_io, orbit_proj_io;
  {
    auto* f = orbit->add_subcommand(
        "factorize", "split Y into unitary frame and nilpotent part");
    add_geometry(f, orbit_geom);
    add_io(f, orbit_fact_io);
    f->callback([&] {
      const atlas::Characteristic ch = characteristic_of(orbit_geom);
      const cmat y =
          atlas::matrix_from_json(atlas::load_json_file(orbit_fact_io.input));
      const atlas::OrbitPoint pt = atlas::factorize(ch, y);
      emit(orbit_fact_io,
           json{{"k", atlas::to_json(pt.k)}, {"x", atlas::to_json(pt.x)}});
    });
    auto* p = orbit->add_subcommand(
        "project", "project Y onto the isospectral flag point");
    add_geometry(p, orbit_geom);
    add_io(p, orbit_proj_io);
    p->callback([&] {
      const atlas::Characteristic ch = characteristic_of(orbit_geom);
      const cmat y =
          atlas::matrix_from_json(atlas::load_json_file(orbit_proj_io.input));
      emit(orbit_proj_io, atlas::to_json(atlas::project_pi(ch, y)));
    });
  }

  // cotangent: bundle splitting, moment map, flows, suite.
  auto* cot = app.add_subcommand("cotangent", "cotangent bundle of the flag");
  cot->require_subcommand(1);
  GeometryOpts cot_geom;
  IoOpts cot_iota_io, cot_mu_io, cot_flow_io;
  std::string flow_direction;
  double flow_t = 1.0, flow_dt = 1e-3;
  atlas::SuiteConfig cot_cfg;
  std::string cot_report;
  {
    auto* i = cot->add_subcommand(
        "iota", "split an orbit point into base and momentum");
    add_geometry(i, cot_geom);
    add_io(i, cot_iota_io);
    i->callback([&] {
      const atlas::Characteristic ch = characteristic_of(cot_geom);
      const cmat y =
          atlas::matrix_from_json(atlas::load_json_file(cot_iota_io.input));
      emit(cot_iota_io, point_to_json(atlas::iota(ch, y)));
    });

    auto* m = cot->add_subcommand("mu", "moment map of a bundle point");
    add_geometry(m, cot_geom);
    add_io(m, cot_mu_io);
    m->callback([&] {
      const atlas::AlgebraCtx ctx = atlas::make_algebra(cot_geom.n);
      const atlas::Characteristic ch = characteristic_of(cot_geom);
      const atlas::CotangentPoint xi =
          point_from_json(atlas::load_json_file(cot_mu_io.input));
      emit(cot_mu_io, atlas::to_json(atlas::mu(ctx, ch, xi)));
    });

    auto* f = cot->add_subcommand(
        "flow", "integrate the generator field of a direction");
    add_geometry(f, cot_geom);
    add_io(f, cot_flow_io);
    f->add_option("--direction", flow_direction,
                  "JSON file with the algebra direction")
        ->required();
    f->add_option("--t", flow_t, "flow time");
    f->add_option("--dt", flow_dt, "integrator step")
        ->check(CLI::PositiveNumber);
    f->callback([&] {
      const atlas::AlgebraCtx ctx = atlas::make_algebra(cot_geom.n);
      const atlas::Characteristic ch = characteristic_of(cot_geom);
      const atlas::CotangentPoint xi =
          point_from_json(atlas::load_json_file(cot_flow_io.input));
      const cmat z =
          atlas::matrix_from_json(atlas::load_json_file(flow_direction));
      emit(cot_flow_io,
           point_to_json(atlas::flow(ctx, ch, z, xi, flow_t, flow_dt)));
    });

    auto* v = cot->add_subcommand("verify", "run the cotangent suite");
    add_geometry(v, cot_geom);
    add_suite_options(v, cot_cfg, cot_report);
    v->callback([&] {
      cot_cfg.n = cot_geom.n;
      cot_cfg.theta = cot_geom.theta;
      cot_cfg.suites = {"cotangent"};
      exit_code = run_and_stream(cot_cfg, cot_report);
    });
  }

  // product: pairs of dual flags.
  auto* prod = app.add_subcommand("product", "products of dual flag manifolds");
  prod->require_subcommand(1);
  GeometryOpts prod_geom;
  IoOpts prod_embed_io, prod_trans_io, prod_res_io;
  {
    auto* e = prod->add_subcommand(
        "embed", "orbit of the pair of coordinate flags under g");
    add_geometry(e, prod_geom);
    add_io(e, prod_embed_io);
    e->callback([&] {
      const atlas::Characteristic ch = characteristic_of(prod_geom);
      const cmat g =
          atlas::matrix_from_json(atlas::load_json_file(prod_embed_io.input));
      emit(prod_embed_io, pair_to_json(atlas::embed(ch, g)));
    });

    auto* t = prod->add_subcommand(
        "transversal", "test a flag pair for transversality");
    add_io(t, prod_trans_io);
    t->callback([&] {
      const json j = atlas::load_json_file(prod_trans_io.input);
      atlas::FlagPair p;
      p.first = atlas::flag_from_json(j.at("first"));
      p.second = atlas::flag_from_json(j.at("second"));
      emit(prod_trans_io, json{{"transversal", atlas::transversal(p)}});
    });

    auto* r = prod->add_subcommand(
        "residual", "holomorphy residual of the pair map at an orbit point");
    add_geometry(r, prod_geom);
    add_io(r, prod_res_io);
    r->callback([&] {
      const atlas::AlgebraCtx ctx = atlas::make_algebra(prod_geom.n);
      const atlas::Characteristic ch = characteristic_of(prod_geom);
      const cmat y =
          atlas::matrix_from_json(atlas::load_json_file(prod_res_io.input));
      emit(prod_res_io,
           json{{"residual",
                 atlas::product_complex_structure_residual(ctx, ch, y)}});
    });
  }

  // rep: exterior-power model.
  auto* repc = app.add_subcommand("rep", "exterior-power realization");
  repc->require_subcommand(1);
  int rep_n = 3, rep_k = 1;
  IoOpts rep_moment_io, rep_height_io, rep_phi_io;
  std::string rep_height_h;
  atlas::SuiteConfig rep_cfg;
  std::string rep_report;
  auto add_rep_nk = [&](CLI::App* cmd) {
    cmd->add_option("--n", rep_n, "matrix size")->check(CLI::Range(2, 8));
    cmd->add_option("--k", rep_k, "exterior power degree")
        ->check(CLI::Range(1, 7));
  };
  {
    auto* m = repc->add_subcommand("moment", "moment map of a model element");
    add_rep_nk(m);
    add_io(m, rep_moment_io);
    m->callback([&] {
      const atlas::AlgebraCtx ctx = atlas::make_algebra(rep_n);
      const atlas::ExteriorRep rep = atlas::make_exterior_rep(rep_n, rep_k);
      const atlas::RepElement el =
          element_from_json(atlas::load_json_file(rep_moment_io.input));
      emit(rep_moment_io, atlas::to_json(atlas::moment_rep(ctx, rep, el)));
    });

    auto* h = repc->add_subcommand(
        "height", "pairing of an element against a traceless H");
    add_rep_nk(h);
    add_io(h, rep_height_io);
    h->add_option("--cartan", rep_height_h,
                  "JSON file with H (default: the fundamental element)");
    h->callback([&] {
      const atlas::AlgebraCtx ctx = atlas::make_algebra(rep_n);
      const atlas::ExteriorRep rep = atlas::make_exterior_rep(rep_n, rep_k);
      const atlas::RepElement el =
          element_from_json(atlas::load_json_file(rep_height_io.input));
      const cmat h_mat =
          rep_height_h.empty()
              ? cmat(atlas::fundamental_h(ctx, rep_k))
              : atlas::matrix_from_json(atlas::load_json_file(rep_height_h));
      const cplx val = atlas::height_rep(rep, el, h_mat);
      emit(rep_height_io, json{{"height", {val.real(), val.imag()}}});
    });

    auto* p = repc->add_subcommand(
        "phi", "projective line pair of a model element");
    add_rep_nk(p);
    add_io(p, rep_phi_io);
    p->callback([&] {
      const atlas::ExteriorRep rep = atlas::make_exterior_rep(rep_n, rep_k);
      const atlas::RepElement el =
          element_from_json(atlas::load_json_file(rep_phi_io.input));
      const atlas::RepLines lines = atlas::phi(rep, el);
      emit(rep_phi_io, json{{"v_line", atlas::to_json(cmat(lines.v))},
                            {"eps_line", atlas::to_json(cmat(lines.eps))}});
    });

    auto* v = repc->add_subcommand("verify", "run the model suite");
    v->add_option("--n", rep_n, "matrix size")->check(CLI::Range(2, 8));
    add_suite_options(v, rep_cfg, rep_report);
    v->callback([&] {
      rep_cfg.n = rep_n;
      rep_cfg.suites = {"rep"};
      exit_code = run_and_stream(rep_cfg, rep_report);
    });
  }

  // lagrangian: graph submanifolds of the twisted flips.
  auto* lag = app.add_subcommand("lagrangian", "graphs of the twisted flips");
  lag->require_subcommand(1);
  GeometryOpts lag_geom;
  IoOpts lag_res_io, lag_anti_io, lag_iso_io, lag_fix_io;
  int lag_samples = 20;
  std::uint64_t lag_seed = 42;
  bool lag_twisted = false;
  auto add_sampling = [&](CLI::App* cmd) {
    cmd->add_option("--samples", lag_samples, "sampled base points")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", lag_seed, "seed for the sample stream");
  };
  {
    auto* r = lag->add_subcommand(
        "residual", "largest violation of the graph Lagrangean condition");
    add_geometry(r, lag_geom);
    add_sampling(r);
    r->add_flag("--twisted", lag_twisted,
                "use a seeded random twisted flip instead of the plain one");
    add_io(r, lag_res_io, false);
    r->callback([&] {
      const atlas::Characteristic ch = characteristic_of(lag_geom);
      atlas::GraphSpec spec = atlas::identity_graph_spec(lag_geom.n);
      if (lag_twisted) {
        auto rng = atlas::sample_rng(lag_seed, "cli/twisted-spec", 0);
        cmat m = cmat::Identity(lag_geom.n, lag_geom.n);
        for (int i = 0; i < lag_geom.n; ++i)
          m(i, i) = std::exp(cplx(0.0, angle_from(rng)));
        spec = atlas::make_graph_spec(atlas::haar_su(rng, lag_geom.n),
                                      atlas::haar_su(rng, lag_geom.n), m);
      }
      const double res =
          atlas::lagrangian_residual(ch, spec, lag_samples, lag_seed);
      emit(lag_res_io, json{{"residual", res}, {"twisted", lag_twisted}});
    });

    auto* a = lag->add_subcommand(
        "antiholo", "largest violation of anti-holomorphy of the flip");
    add_geometry(a, lag_geom);
    add_sampling(a);
    add_io(a, lag_anti_io, false);
    a->callback([&] {
      const atlas::Characteristic ch = characteristic_of(lag_geom);
      emit(lag_anti_io,
           json{{"residual",
                 atlas::antiholomorphy_residual(ch, lag_samples, lag_seed)}});
    });

    auto* i = lag->add_subcommand(
        "isometry", "largest violation of the flip isometry");
    add_geometry(i, lag_geom);
    add_sampling(i);
    add_io(i, lag_iso_io, false);
    i->callback([&] {
      const atlas::Characteristic ch = characteristic_of(lag_geom);
      emit(lag_iso_io,
           json{{"residual",
                 atlas::isometry_residual(ch, lag_samples, lag_seed)}});
    });

    auto* f = lag->add_subcommand(
        "fixed-points",
        "fixed lines of the rotation and the torus-twisted flip on the "
        "2-sphere");
    add_io(f, lag_fix_io, false);
    f->callback([&] {
      const cmat wt = atlas::representative(atlas::WeylElement{{1, 0}});
      const double isq = 1.0 / std::sqrt(2.0);
      std::vector<cvec> rot_lines(2, cvec(2)), flip_lines(2, cvec(2));
      rot_lines[0] << cplx(isq, 0.0), cplx(0.0, isq);
      rot_lines[1] << cplx(isq, 0.0), cplx(0.0, -isq);
      flip_lines[0] << cplx(isq, 0.0), cplx(isq, 0.0);
      flip_lines[1] << cplx(isq, 0.0), cplx(-isq, 0.0);
      cmat m = cmat::Zero(2, 2);
      m(0, 0) = cplx(0.0, 1.0);
      m(1, 1) = cplx(0.0, -1.0);
      const atlas::GraphSpec twisted = atlas::make_graph_spec(
          cmat(cmat::Identity(2, 2)), cmat(cmat::Identity(2, 2)), m);
      json out;
      out["rotation_fixed_lines"] = json::array();
      out["rotation_confirmed"] = json::array();
      for (const cvec& xi : rot_lines) {
        out["rotation_fixed_lines"].push_back(atlas::to_json(cmat(xi)));
        out["rotation_confirmed"].push_back(
            line_distance(cvec(wt * xi), xi) <= 1e-9);
      }
      out["twisted_flip_fixed_lines"] = json::array();
      out["twisted_flip_confirmed"] = json::array();
      for (const cvec& xi : flip_lines) {
        const cmat moved =
            atlas::graph_map(twisted, atlas::hermitian_of_line_sl2(xi));
        out["twisted_flip_fixed_lines"].push_back(atlas::to_json(cmat(xi)));
        out["twisted_flip_confirmed"].push_back(
            line_distance(plus_eigenline(moved), xi) <= 1e-9);
      }
      emit(lag_fix_io, out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return exit_code;
}
