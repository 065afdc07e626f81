// Command-line front end: one subcommand per module, JSON reports on stdout
// (CSV for sweeps), diagnostics on stderr. Exit codes: 0 success,
// 2 validation error, 3 numerical/convergence error, 4 resource-guard error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <quermass/bounds.hpp>
#include <quermass/ellipsoid.hpp>
#include <quermass/errors.hpp>
#include <quermass/grassmann.hpp>
#include <quermass/json_io.hpp>
#include <quermass/lattice.hpp>
#include <quermass/mean_curvature.hpp>
#include <quermass/mvee.hpp>
#include <quermass/rng.hpp>
#include <quermass/steiner_fit.hpp>

namespace {

using namespace quermass;

constexpr int kSchemaVersion = 1;

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

Ellipsoidd make_ellipsoid(const std::vector<double>& axes, const std::vector<double>& frame,
                          const std::vector<double>& center) {
  const Eigen::Index n = static_cast<Eigen::Index>(axes.size());
  if (n == 0) throw validation_error("an ellipsoid needs --axes with at least one entry");
  Eigen::VectorXd a = to_vector(axes);
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(n, n);
  if (!frame.empty()) {
    if (static_cast<Eigen::Index>(frame.size()) != n * n) {
      throw validation_error("--frame needs dim*dim row-major entries");
    }
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) f(i, j) = frame[static_cast<std::size_t>(i * n + j)];
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  if (!center.empty()) {
    if (static_cast<Eigen::Index>(center.size()) != n) {
      throw validation_error("--center needs dim entries");
    }
    c = to_vector(center);
  }
  return Ellipsoidd(std::move(a), std::move(f), std::move(c));
}

void echo_common(JsonBuf& j, const std::string& command) {
  j.kv("schema_version", kSchemaVersion);
  j.kv("command", command);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw validation_error("cannot open output file: " + out_path);
    f << text << "\n";
  }
}

struct CommonOpts {
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out_path, "write the report to a file instead of stdout");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

// ---------------------------------------------------------------- measures
struct MeasuresOpts {
  std::vector<double> axes, frame, center, box;
  double ball = 0;
  int dim = 0;
  double rel_tol = 1e-8;
  std::string method = "auto";
  long long samples = 200000;
  std::uint64_t seed = 0;
  CommonOpts common;
};

int run_measures(const MeasuresOpts& o) {
  JsonBuf j;
  j.begin_object();
  echo_common(j, "measures");
  j.key("config_echo").begin_object();
  j.kv("method", o.method);
  j.kv("rel_tol", o.rel_tol);
  j.kv("samples", o.samples);
  j.kv("seed", o.seed);
  j.end_object();

  const int given = (!o.axes.empty()) + (!o.box.empty()) + (o.ball > 0);
  if (given != 1) {
    throw validation_error("measures: give exactly one of --axes, --box, --ball");
  }

  std::optional<MeanCurvaturesd> result;
  if (o.ball > 0) {
    if (o.dim < 2) throw validation_error("measures --ball needs --dim >= 2");
    if (o.method == "steiner") {
      auto probe = probe_from_ball<double>(o.dim, o.ball);
      result = steiner_fit_mean_curvatures(probe, o.dim, o.samples, o.seed);
    } else {
      result = sphere_mean_curvatures<double>(o.ball, o.dim);
    }
  } else if (!o.box.empty()) {
    const Boxd b(to_vector(o.box));
    if (o.method == "steiner") {
      auto probe = probe_from_box(b);
      result = steiner_fit_mean_curvatures(probe, b.dim(), o.samples, o.seed);
    } else {
      result = box_mean_curvatures(b);
    }
  } else {
    const Ellipsoidd e = make_ellipsoid(o.axes, o.frame, o.center);
    if (o.method == "steiner") {
      auto probe = probe_from_ellipsoid(e);
      result = steiner_fit_mean_curvatures(probe, e.dim(), o.samples, o.seed);
    } else {
      result = ellipsoid_mean_curvatures_quadrature(e, o.rel_tol);
    }
  }
  j.key("result");
  write_json(j, *result);
  j.end_object();
  emit(j.str(), o.common.out_path);
  return 0;
}

// ------------------------------------------------------------------ bounds
struct BoundsOpts {
  std::vector<double> axes, frame, center;
  int index = -1;
  CommonOpts common;
};

int run_bounds(const BoundsOpts& o) {
  const Ellipsoidd e = make_ellipsoid(o.axes, o.frame, o.center);
  JsonBuf j;
  j.begin_object();
  echo_common(j, "bounds");
  j.key("config_echo").begin_object();
  j.kv("index", o.index);
  j.end_object();
  j.key("result");
  if (o.index >= 0) {
    write_json(j, pinch_bounds(e, o.index));
  } else {
    j.begin_array();
    for (int i = 0; i < e.dim(); ++i) write_json(j, pinch_bounds(e, i));
    j.end_array();
  }
  j.end_object();
  emit(j.str(), o.common.out_path);
  return 0;
}

// -------------------------------------------------------------------- tube
struct TubeOpts {
  std::vector<double> axes, frame, center;
  double rho = 0;
  CommonOpts common;
};

int run_tube(const TubeOpts& o) {
  const Ellipsoidd e = make_ellipsoid(o.axes, o.frame, o.center);
  const auto poly = tube_polynomial(e);
  JsonBuf j;
  j.begin_object();
  echo_common(j, "tube");
  j.key("config_echo").begin_object();
  j.kv("rho", o.rho);
  j.end_object();
  j.key("result").begin_object();
  j.key("polynomial");
  write_json(j, poly);
  j.kv("f_at_rho", poly.evaluate(o.rho));
  j.kv("f_integral_to_rho", poly.integral(o.rho));
  j.key("area_bounds");
  write_json(j, tube_area_bounds(e, o.rho));
  j.key("volume_bounds");
  write_json(j, tube_volume_bounds(e, o.rho));
  j.end_object();
  j.end_object();
  emit(j.str(), o.common.out_path);
  return 0;
}

// --------------------------------------------------------------- grassmann
struct GrassmannOpts {
  std::vector<double> axes, frame, center, axes2, frame2;
  int r_flat = 1;
  long long trials = 100000;
  std::uint64_t seed = 0;
  CommonOpts common;
};

int run_grassmann(const GrassmannOpts& o) {
  const Ellipsoidd e1 = make_ellipsoid(o.axes, o.frame, o.center);
  JsonBuf j;
  j.begin_object();
  echo_common(j, "grassmann");
  j.key("config_echo").begin_object();
  j.kv("r_flat", o.r_flat);
  j.kv("trials", o.trials);
  j.kv("seed", o.seed);
  j.end_object();
  j.key("result");
  if (o.axes2.empty()) {
    write_json(j, flat_hit_fraction(e1, o.r_flat, o.trials, o.seed));
  } else {
    const Ellipsoidd e2 = make_ellipsoid(o.axes2, o.frame2, o.center);
    write_json(j, hit_measure_ratio(e1, e2, o.r_flat, o.trials, o.seed));
  }
  j.end_object();
  emit(j.str(), o.common.out_path);
  return 0;
}

// ----------------------------------------------------------------- lattice
struct LatticeOpts {
  std::vector<double> axes, frame, center;
  int dim = 0;
  double budget = 1e9;
  CommonOpts common;
};

int run_lattice(const LatticeOpts& o) {
  const Ellipsoidd e = make_ellipsoid(o.axes, o.frame, o.center);
  if (o.dim > 0 && o.dim != e.dim()) {
    throw validation_error("lattice: --dim disagrees with the length of --axes");
  }
  JsonBuf j;
  j.begin_object();
  echo_common(j, "lattice");
  j.key("config_echo").begin_object();
  j.kv("budget", o.budget);
  j.end_object();
  j.key("result");
  write_json(j, lattice_discrepancy(e, o.budget));
  j.end_object();
  emit(j.str(), o.common.out_path);
  return 0;
}

// -------------------------------------------------------------------- john
struct JohnOpts {
  std::string points_path;
  bool symmetric = false;
  double epsilon = 1e-9;
  CommonOpts common;
};

int run_john(const JohnOpts& o) {
  const Eigen::MatrixXd pts = read_points(o.points_path);
  const JohnSandwich s = john_sandwich(pts, o.symmetric, o.epsilon);
  JsonBuf j;
  j.begin_object();
  echo_common(j, "john");
  j.key("config_echo").begin_object();
  j.kv("points", o.points_path);
  j.kv("symmetric", o.symmetric);
  j.kv("epsilon", o.epsilon);
  j.end_object();
  j.key("result");
  write_json(j, s);
  j.end_object();
  emit(j.str(), o.common.out_path);
  return 0;
}

// ------------------------------------------------------------------- sweep
struct SweepOpts {
  std::string mode = "dilation";
  std::vector<double> axes, frame, center;
  double lambda_min = 1.0, lambda_max = 50.0, lambda_step = 1.0;
  int dim = 2;
  int count = 10;
  std::uint64_t seed = 0;
  double axis_min = 0.1, axis_max = 10.0;
  double budget = 1e9;
  CommonOpts common;
};

Ellipsoidd random_ellipsoid(int dim, double axis_min, double axis_max, CounterRng& rng) {
  Eigen::VectorXd a(dim);
  for (int i = 0; i < dim; ++i) {
    a[i] = std::exp(rng.uniform(std::log(axis_min), std::log(axis_max)));
  }
  return Ellipsoidd(a, rng.haar_rotation(dim), Eigen::VectorXd::Zero(dim));
}

void csv_report_row(std::string& out, const LatticeReport& r) {
  out += std::to_string(r.count) + "," + format_double(r.volume) + "," +
         format_double(r.discrepancy) + "," + format_double(r.tube_value) + "," +
         format_double(r.ratio) + "," + format_double(r.tube_value_half);
}

int run_sweep(const SweepOpts& o) {
  std::string csv;
  JsonBuf j;
  const bool json_mode = o.common.format == "json";
  if (json_mode) {
    j.begin_object();
    echo_common(j, "sweep");
    j.key("config_echo").begin_object();
    j.kv("mode", o.mode);
    j.kv("seed", o.seed);
    j.end_object();
    j.key("result").begin_array();
  }
  if (o.mode == "dilation") {
    const Ellipsoidd base = make_ellipsoid(o.axes, o.frame, o.center);
    if (!(o.lambda_min > 0 && o.lambda_max >= o.lambda_min && o.lambda_step > 0)) {
      throw validation_error("sweep: need 0 < --lambda-min <= --lambda-max and --lambda-step > 0");
    }
    csv = "lambda,count,volume,discrepancy,f_sqrt_n,ratio,f_half_sqrt_n\n";
    for (double lam = o.lambda_min; lam <= o.lambda_max + 1e-12; lam += o.lambda_step) {
      const auto rep = lattice_discrepancy(base.scaled(lam), o.budget);
      if (json_mode) {
        j.begin_object();
        j.kv("lambda", lam);
        j.key("report");
        write_json(j, rep);
        j.end_object();
      } else {
        csv += format_double(lam) + ",";
        csv_report_row(csv, rep);
        csv += "\n";
      }
    }
  } else if (o.mode == "random") {
    if (o.dim < 2) throw validation_error("sweep random: need --dim >= 2");
    csv = "id,axes,count,volume,discrepancy,f_sqrt_n,ratio,f_half_sqrt_n\n";
    for (int id = 0; id < o.count; ++id) {
      CounterRng rng(o.seed, static_cast<std::uint64_t>(id));
      const Ellipsoidd e = random_ellipsoid(o.dim, o.axis_min, o.axis_max, rng);
      const auto rep = lattice_discrepancy(e, o.budget);
      if (json_mode) {
        j.begin_object();
        j.kv("id", id);
        j.key("ellipsoid");
        write_json(j, e);
        j.key("report");
        write_json(j, rep);
        j.end_object();
      } else {
        std::string axes_field;
        for (int i = 0; i < o.dim; ++i) {
          if (i) axes_field += ";";
          axes_field += format_double(e.semi_axes()[i]);
        }
        csv += std::to_string(id) + "," + axes_field + ",";
        csv_report_row(csv, rep);
        csv += "\n";
      }
    }
  } else {
    throw validation_error("sweep: --mode must be dilation or random");
  }
  if (json_mode) {
    j.end_array();
    j.end_object();
    emit(j.str(), o.common.out_path);
  } else {
    if (!csv.empty() && csv.back() == '\n') csv.pop_back();
    emit(csv, o.common.out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convex-geometry measures of ellipsoids and boxes"};
  app.require_subcommand(1);

  MeasuresOpts mo;
  auto* measures = app.add_subcommand("measures", "integral mean curvature vector of a body");
  measures->add_option("--axes", mo.axes, "ellipsoid semi-axes")->delimiter(',');
  measures->add_option("--frame", mo.frame, "row-major orthonormal frame")->delimiter(',');
  measures->add_option("--center", mo.center, "body center")->delimiter(',');
  measures->add_option("--box", mo.box, "box side lengths")->delimiter(',');
  measures->add_option("--ball", mo.ball, "ball radius");
  measures->add_option("--dim", mo.dim, "dimension (with --ball)");
  measures->add_option("--rel-tol", mo.rel_tol, "quadrature relative tolerance");
  measures->add_option("--method", mo.method, "auto | steiner")
      ->check(CLI::IsMember({"auto", "steiner"}));
  measures->add_option("--samples", mo.samples, "Monte Carlo samples (steiner)");
  measures->add_option("--seed", mo.seed, "random seed");
  add_common(measures, mo.common);

  BoundsOpts bo;
  auto* bounds = app.add_subcommand("bounds", "two-sided symmetric-function bounds on M_i");
  bounds->add_option("--axes", bo.axes, "ellipsoid semi-axes")->required()->delimiter(',');
  bounds->add_option("--frame", bo.frame, "row-major orthonormal frame")->delimiter(',');
  bounds->add_option("--center", bo.center, "body center")->delimiter(',');
  bounds->add_option("--index", bo.index, "curvature index i (default: all)");
  add_common(bounds, bo.common);

  TubeOpts to;
  auto* tube = app.add_subcommand("tube", "equidistant-surface area/volume bounds");
  tube->add_option("--axes", to.axes, "ellipsoid semi-axes")->required()->delimiter(',');
  tube->add_option("--frame", to.frame, "row-major orthonormal frame")->delimiter(',');
  tube->add_option("--center", to.center, "body center")->delimiter(',');
  tube->add_option("--rho", to.rho, "tube radius")->required();
  add_common(tube, to.common);

  GrassmannOpts go;
  auto* grassmann = app.add_subcommand("grassmann", "invariant-measure flat-hit statistics");
  grassmann->add_option("--axes", go.axes, "first ellipsoid semi-axes")->required()->delimiter(',');
  grassmann->add_option("--frame", go.frame, "frame of the first ellipsoid")->delimiter(',');
  grassmann->add_option("--center", go.center, "shared center")->delimiter(',');
  grassmann->add_option("--axes2", go.axes2, "second ellipsoid semi-axes (ratio mode)")
      ->delimiter(',');
  grassmann->add_option("--frame2", go.frame2, "frame of the second ellipsoid")->delimiter(',');
  grassmann->add_option("--r-flat", go.r_flat, "flat dimension r");
  grassmann->add_option("--trials", go.trials, "Monte Carlo trials");
  grassmann->add_option("--seed", go.seed, "random seed");
  add_common(grassmann, go.common);

  LatticeOpts lo;
  auto* lattice = app.add_subcommand("lattice", "integer-lattice count and discrepancy");
  lattice->add_option("--axes", lo.axes, "ellipsoid semi-axes")->required()->delimiter(',');
  lattice->add_option("--frame", lo.frame, "row-major orthonormal frame")->delimiter(',');
  lattice->add_option("--center", lo.center, "body center")->delimiter(',');
  lattice->add_option("--dim", lo.dim, "dimension cross-check");
  lattice->add_option("--budget", lo.budget, "candidate-point budget");
  add_common(lattice, lo.common);

  JohnOpts jo;
  auto* john = app.add_subcommand("john", "minimum-volume enclosing ellipsoid and sandwich");
  john->add_option("--points", jo.points_path, "points file (JSON array or CSV)")->required();
  john->add_flag("--symmetric", jo.symmetric, "assert central symmetry of the body");
  john->add_option("--epsilon", jo.epsilon, "relative optimality tolerance");
  add_common(john, jo.common);

  SweepOpts so;
  auto* sweep = app.add_subcommand("sweep", "batch lattice studies (CSV by default)");
  sweep->add_option("--mode", so.mode, "dilation | random");
  sweep->add_option("--axes", so.axes, "base ellipsoid semi-axes (dilation)")->delimiter(',');
  sweep->add_option("--frame", so.frame, "row-major orthonormal frame")->delimiter(',');
  sweep->add_option("--center", so.center, "body center")->delimiter(',');
  sweep->add_option("--lambda-min", so.lambda_min, "first dilation factor");
  sweep->add_option("--lambda-max", so.lambda_max, "last dilation factor");
  sweep->add_option("--lambda-step", so.lambda_step, "dilation step");
  sweep->add_option("--dim", so.dim, "dimension (random mode)");
  sweep->add_option("--count", so.count, "number of random ellipsoids");
  sweep->add_option("--seed", so.seed, "random seed");
  sweep->add_option("--axis-min", so.axis_min, "smallest random semi-axis");
  sweep->add_option("--axis-max", so.axis_max, "largest random semi-axis");
  sweep->add_option("--budget", so.budget, "candidate-point budget");
  so.common.format = "csv";
  add_common(sweep, so.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*measures) return run_measures(mo);
    if (*bounds) return run_bounds(bo);
    if (*tube) return run_tube(to);
    if (*grassmann) return run_grassmann(go);
    if (*lattice) return run_lattice(lo);
    if (*john) return run_john(jo);
    if (*sweep) return run_sweep(so);
  } catch (const quermass::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const quermass::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 4;
  } catch (const quermass::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
