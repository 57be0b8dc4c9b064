#include "cli.hpp"

#include "ribbonpatch/examples.hpp"
#include "ribbonpatch/io.hpp"
#include "ribbonpatch/mesh_generators.hpp"
#include "ribbonpatch/patch.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace ribbonpatch::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Invalid configuration detected after parsing (exit code 2).
struct BadConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::string mesh, ribbons, sides, out = ".";
  std::string mass = "lumped";
  std::string boundary_mass = "consistent";
  std::string s_extension = "clamp-linear";
  std::string solver = "direct";
  std::string gradient = "area-weighted";
  std::string normals = "consistent";
  double tolerance = 1e-10;
  double cg_tolerance = 1e-12;
  double corner_tolerance = 1e-9;
  bool dump_matrices = false;

  int side = -1, row = -1, column = -1;

  std::string analytic_case;
  int levels = 2;
  int base_cells = 12;
  int refine_factor = 4;

  int resolution = 0;
};

// ---------------------------------------------------------------- output

// Fixed precision for diagnostics so reruns are byte-identical and small
// floating-point noise does not leak into golden files.
double rounded(double value, int digits = 9) {
  if (!std::isfinite(value))
    return value;
  return std::stod(io::format_double(value, digits));
}

void write_file(const fs::path &path, const std::function<void(std::ostream &)> &body) {
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw Error("cannot write " + path.string());
  body(file);
  if (!file)
    throw Error("failed writing " + path.string());
}

void write_json(const fs::path &path, const json &doc) {
  write_file(path, [&](std::ostream &o) { o << doc.dump(2) << '\n'; });
}

void write_scalar_csv(const fs::path &path, const std::string &column, const Eigen::VectorXd &values) {
  write_file(path, [&](std::ostream &o) {
    o << "vertex," << column << '\n';
    for (Eigen::Index i = 0; i < values.size(); ++i)
      o << i << ',' << io::format_double(values[i]) << '\n';
  });
}

fs::path prepare_output(const JobConfig &cfg) {
  fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

json error_json(const std::string &kind, const std::string &message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}};
}

// ---------------------------------------------------------------- options

PatchOptions patch_options(const JobConfig &cfg) {
  PatchOptions o;
  o.system.lumped_mass = cfg.mass == "lumped";
  o.system.lumped_boundary_mass = cfg.boundary_mass == "lumped";
  o.system.solver = cfg.solver == "cg" ? LinearSolver::ConjugateGradient : LinearSolver::Direct;
  o.system.residual_tolerance = cfg.tolerance;
  o.system.cg_tolerance = cfg.cg_tolerance;
  o.param.s_extension = cfg.s_extension == "nearest" ? SExtension::Nearest : SExtension::ClampLinear;
  o.param.gradient = cfg.gradient == "boundary-faces" ? GradientMethod::BoundaryFaces : GradientMethod::AreaWeighted;
  o.param.normals = cfg.normals == "unit" ? NormalKind::Unit : NormalKind::Consistent;
  o.param.lumped_boundary_mass = o.system.lumped_boundary_mass;
  o.corner_tolerance = cfg.corner_tolerance;
  return o;
}

json options_json(const JobConfig &cfg) {
  return json{{"mass", cfg.mass},
              {"boundary_mass", cfg.boundary_mass},
              {"s_extension", cfg.s_extension},
              {"solver", cfg.solver},
              {"gradient", cfg.gradient},
              {"normals", cfg.normals},
              {"tolerance", cfg.tolerance},
              {"corner_tolerance", cfg.corner_tolerance}};
}

void require_inputs(const JobConfig &cfg) {
  if (cfg.mesh.empty())
    throw BadConfig("--mesh is required");
  if (cfg.ribbons.empty())
    throw BadConfig("--ribbons is required");
  for (const auto *path : {&cfg.mesh, &cfg.ribbons, &cfg.sides})
    if (!path->empty() && !fs::is_regular_file(*path))
      throw BadConfig("input file does not exist: " + *path);
}

// Mesh, ribbons and side assignment, validated and oriented.
PatchProblem load_problem(const JobConfig &cfg) {
  TriMesh mesh = io::load_off(cfg.mesh);
  io::RibbonSet ribbons = io::load_ribbons(cfg.ribbons);
  SideAssignment assignment;
  if (!cfg.sides.empty())
    assignment = io::load_side_assignment(cfg.sides, mesh.vertex_count());
  else if (!ribbons.loops.empty())
    assignment = assign_sides_from_corners(mesh, ribbons.loops);
  else
    throw MeshError(MeshError::Kind::SideAssignment,
                    "no side assignment: give --sides or list loop corners in the ribbon file");
  return prepare_problem(mesh, std::move(assignment), std::move(ribbons.sides));
}

json mesh_json(const TriMesh &mesh) {
  auto q = mesh_quality(mesh);
  return json{{"vertices", mesh.vertex_count()},
              {"triangles", mesh.triangle_count()},
              {"boundary_loops", mesh.boundary_loops().size()},
              {"boundary_vertices", mesh.boundary_vertices().size()},
              {"area", rounded(mesh.total_area())},
              {"quality",
               {{"min_angle_deg", rounded(q.min_angle_deg)},
                {"max_angle_deg", rounded(q.max_angle_deg)},
                {"obtuse_triangles", q.obtuse_triangles},
                {"min_edge", rounded(q.min_edge)},
                {"max_edge", rounded(q.max_edge)}}}};
}

json field_stats(const Eigen::VectorXd &values) {
  return json{{"min", rounded(values.minCoeff())},
              {"max", rounded(values.maxCoeff())},
              {"mean", rounded(values.mean())}};
}

// Residuals sit at rounding-error level; three digits are enough and keep
// the diagnostics stable.
json residual_json(double residual, double tolerance) {
  return json{{"residual", rounded(residual, 3)}, {"within_tolerance", residual <= tolerance}};
}

void dump_matrices(const fs::path &dir, const BiharmonicSystem &system) {
  auto dump = [&](const char *name, const SparseMatrix &m) {
    write_file(dir / name, [&](std::ostream &o) { io::write_triplets(o, m); });
  };
  dump("L.txt", system.stiffness());
  dump("M.txt", system.mass());
  dump("N.txt", system.boundary_mass());
  if (system.reduced_operator().size() > 0)
    dump("reduced.txt", system.reduced_operator());
}

// ---------------------------------------------------------------- commands

int cmd_build(const JobConfig &cfg, std::ostream &out) {
  require_inputs(cfg);
  PatchBuilder builder(load_problem(cfg), patch_options(cfg));
  PatchResult result = builder.build();
  const auto &d = result.diagnostics;
  const TriMesh &mesh = builder.mesh();

  Eigen::VectorXd interior_h(mesh.interior_vertices().size());
  for (size_t k = 0; k < mesh.interior_vertices().size(); ++k)
    interior_h[k] = result.mean_curvature[mesh.interior_vertices()[k]];
  double limit = result.mean_curvature.cwiseAbs().maxCoeff();
  std::vector<io::Rgb> colors;
  for (Eigen::Index i = 0; i < result.mean_curvature.size(); ++i)
    colors.push_back(io::diverging_color(result.mean_curvature[i], limit));

  json corners = json::array();
  for (const auto &c : d.corners)
    corners.push_back({{"vertex", c.vertex},
                       {"side_in", c.side_in},
                       {"side_out", c.side_out},
                       {"position_gap", rounded(c.position_gap, 3)},
                       {"derivative_gap", rounded(c.derivative_gap)}});

  json diag{{"command", "build"},
            {"mesh", mesh_json(mesh)},
            {"sides", builder.layout().side_count()},
            {"options", options_json(cfg)},
            {"solver", residual_json(d.solver_residual, cfg.tolerance)},
            {"bbox_diagonal", rounded(d.bbox_diagonal)},
            {"planarity", rounded(d.planarity, 3)},
            {"boundary_position_error", rounded(d.boundary_position_error, 3)},
            {"normal_derivative_mismatch", rounded(d.normal_derivative_mismatch)},
            {"mean_curvature", field_stats(result.mean_curvature)},
            {"mean_curvature_interior", field_stats(interior_h)},
            {"corners", corners},
            {"warnings", d.warnings}};

  fs::path dir = prepare_output(cfg);
  write_file(dir / "patch.ply",
             [&](std::ostream &o) { io::write_ply(o, result.surface_positions, mesh.triangles(), colors); });
  write_scalar_csv(dir / "curvature.csv", "mean_curvature", result.mean_curvature);
  write_json(dir / "diagnostics.json", diag);
  if (cfg.dump_matrices)
    dump_matrices(dir, builder.system());

  out << "patch: " << mesh.vertex_count() << " vertices, residual " << io::format_double(d.solver_residual, 3)
      << ", planarity " << io::format_double(d.planarity, 3) << '\n';
  for (const auto &w : d.warnings)
    out << "warning: " << w << '\n';
  return Success;
}

int cmd_blend(const JobConfig &cfg, std::ostream &out) {
  require_inputs(cfg);
  PatchBuilder builder(load_problem(cfg), patch_options(cfg));
  const auto &ribbons = builder.ribbons();
  if (cfg.side < 0 || cfg.side >= static_cast<int>(ribbons.size()))
    throw BadConfig("side " + std::to_string(cfg.side) + " out of range [0, " + std::to_string(ribbons.size()) +
                     ")");
  const Ribbon &ribbon = ribbons[cfg.side];
  if (cfg.row < 0 || cfg.row >= ribbon.rows() || cfg.column < 0 || cfg.column >= ribbon.columns())
    throw BadConfig("control point (" + std::to_string(cfg.row) + ", " + std::to_string(cfg.column) +
                     ") out of range for a " + std::to_string(ribbon.rows()) + " x " +
                     std::to_string(ribbon.columns()) + " net");
  // Rows are given in the ribbon file's orientation.
  int row = builder.side_reversed(cfg.side) ? ribbon.rows() - 1 - cfg.row : cfg.row;

  auto ids = builder.control_points();
  Eigen::MatrixXd fields = builder.blend_fields(ids);
  auto selected = std::find_if(ids.begin(), ids.end(), [&](const ControlPointId &id) {
    return id.side == cfg.side && id.row == row && id.column == cfg.column;
  });
  Eigen::VectorXd field = fields.col(selected - ids.begin());
  double sum_error = (fields.rowwise().sum().array() - 1.0).abs().maxCoeff();

  double limit = field.cwiseAbs().maxCoeff();
  std::vector<io::Rgb> colors;
  int negative = 0;
  for (Eigen::Index i = 0; i < field.size(); ++i) {
    colors.push_back(io::sign_split_color(field[i], limit));
    negative += field[i] < 0.0;
  }

  // The field drawn over the domain, lifted by its value.
  const TriMesh &mesh = builder.mesh();
  PointMatrix lifted(mesh.vertex_count(), 3);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    lifted.row(v) << mesh.vertex(v).x(), mesh.vertex(v).y(), field[v];

  json diag{{"command", "blend"},
            {"control_point", {{"side", cfg.side}, {"row", cfg.row}, {"column", cfg.column}}},
            {"mesh", mesh_json(mesh)},
            {"options", options_json(cfg)},
            {"field", field_stats(field)},
            {"negative", field.minCoeff() < 0.0},
            {"negative_vertices", negative},
            {"control_points", ids.size()},
            {"partition_of_unity_error", rounded(sum_error, 3)},
            {"warnings", builder.warnings()}};

  std::string stem = "blend_s" + std::to_string(cfg.side) + "_r" + std::to_string(cfg.row) + "_c" +
                     std::to_string(cfg.column);
  fs::path dir = prepare_output(cfg);
  write_file(dir / (stem + ".ply"), [&](std::ostream &o) { io::write_ply(o, lifted, mesh.triangles(), colors); });
  write_scalar_csv(dir / (stem + ".csv"), "blend", field);
  write_json(dir / (stem + ".json"), diag);

  out << stem << ": min " << io::format_double(field.minCoeff(), 6) << ", max "
      << io::format_double(field.maxCoeff(), 6) << ", max |sum - 1| " << io::format_double(sum_error, 3) << '\n';
  return Success;
}

int cmd_param(const JobConfig &cfg, std::ostream &out) {
  require_inputs(cfg);
  PatchBuilder builder(load_problem(cfg), patch_options(cfg));
  if (cfg.side < 0 || cfg.side >= builder.layout().side_count())
    throw BadConfig("side " + std::to_string(cfg.side) + " out of range [0, " +
                     std::to_string(builder.layout().side_count()) + ")");
  const SideParam &p = builder.params()[cfg.side];

  fs::path dir = prepare_output(cfg);
  std::string stem = "param_side" + std::to_string(cfg.side);
  write_file(dir / (stem + ".csv"), [&](std::ostream &o) {
    o << "vertex,s,h\n";
    for (Eigen::Index v = 0; v < p.s_field.size(); ++v)
      o << v << ',' << io::format_double(p.s_field[v]) << ',' << io::format_double(p.h_field[v]) << '\n';
  });
  write_file(dir / (stem + "_boundary.csv"), [&](std::ostream &o) {
    o << "vertex,s,dn_s,dn_h\n";
    for (size_t k = 0; k < p.vertices.size(); ++k)
      o << p.vertices[k] << ',' << io::format_double(p.s[k]) << ',' << io::format_double(p.dn_s[k]) << ','
        << io::format_double(p.dn_h[k]) << '\n';
  });
  out << stem << ": " << p.vertices.size() << " side vertices\n";
  return Success;
}

int cmd_convergence(const JobConfig &cfg, std::ostream &out) {
  std::function<double(const Vec2 &)> exact;
  std::function<Vec2(const Vec2 &)> gradient;
  const bool linear = cfg.analytic_case == "linear";
  if (linear) {
    exact = [](const Vec2 &p) { return 1.0 + 2.0 * p.x() - 3.0 * p.y(); };
    gradient = [](const Vec2 &) { return Vec2(2.0, -3.0); };
  } else {
    exact = [](const Vec2 &p) { return p.squaredNorm(); };
    gradient = [](const Vec2 &p) { return Vec2(2.0 * p); };
  }
  const PatchOptions opts = patch_options(cfg);

  struct Level {
    int cells = 0, triangles = 0, vertices = 0;
    double h = 0.0, error = 0.0, residual = 0.0;
  };
  std::vector<Level> levels;
  int cells = cfg.base_cells;
  for (int k = 0; k <= cfg.levels; ++k, cells *= cfg.refine_factor) {
    TriMesh mesh = generators::unit_square(cells);
    BiharmonicSystem system(mesh, opts.system);
    auto normals = boundary_normals(mesh, opts.param);
    const auto &boundary = mesh.boundary_vertices();
    Eigen::MatrixXd u0(boundary.size(), 1), d0(boundary.size(), 1);
    for (size_t i = 0; i < boundary.size(); ++i) {
      const Vec2 &p = mesh.vertex(boundary[i]);
      u0(i, 0) = exact(p);
      d0(i, 0) = gradient(p).dot(normals[i]);
    }
    MixedSolution solution = system.solve_columns(u0, d0);
    Level level{cells, mesh.triangle_count(), mesh.vertex_count(), 1.0 / cells, 0.0, solution.residual};
    for (int v : mesh.interior_vertices())
      level.error = std::max(level.error, std::abs(solution.u(v, 0) - exact(mesh.vertex(v))));
    levels.push_back(level);
  }

  fs::path dir = prepare_output(cfg);
  write_file(dir / "convergence.csv", [&](std::ostream &o) {
    o << "level,cells,triangles,vertices,h,max_interior_error,order\n";
    for (size_t k = 0; k < levels.size(); ++k) {
      const auto &l = levels[k];
      o << k << ',' << l.cells << ',' << l.triangles << ',' << l.vertices << ',' << io::format_double(l.h) << ','
        << io::format_double(l.error) << ',';
      if (k > 0 && !linear)
        o << io::format_double(std::log(levels[k - 1].error / l.error) / std::log(levels[k - 1].h / l.h));
      o << '\n';
    }
  });

  for (size_t k = 0; k < levels.size(); ++k)
    out << "level " << k << ": " << levels[k].triangles << " triangles, max interior error "
        << io::format_double(levels[k].error, 6) << '\n';

  if (linear) {
    for (const auto &l : levels)
      if (l.error > 1e-8)
        throw SolverError("linear case not reproduced: error " + io::format_double(l.error, 3), l.residual);
    return Success;
  }
  for (size_t k = 1; k < levels.size(); ++k)
    if (!(levels[k].error < levels[k - 1].error))
      throw SolverError("error did not decrease from level " + std::to_string(k - 1) + " to " + std::to_string(k),
                        levels[k].residual);
  if (levels.size() > 1) {
    double order = std::log(levels.front().error / levels.back().error) / std::log(levels.front().h / levels.back().h);
    out << "estimated order " << io::format_double(order, 4) << '\n';
  }
  return Success;
}

int cmd_examples(const JobConfig &cfg, std::ostream &out) {
  struct Named {
    const char *name;
    examples::ExampleInput input;
  };
  int r = cfg.resolution;
  std::vector<Named> all;
  all.push_back({"vertex_blend", examples::vertex_blend(r > 0 ? r : 8)});
  all.push_back({"notched_pentagon", examples::notched_pentagon(r > 0 ? r : 8)});
  all.push_back({"multiply_connected", examples::multiply_connected(r > 0 ? 5 * r : 20)});
  all.push_back({"flat_square", examples::flat_square(r > 0 ? r : 10)});

  fs::path dir = prepare_output(cfg);
  for (const auto &e : all) {
    write_file(dir / (std::string(e.name) + ".off"), [&](std::ostream &o) { io::write_off(o, e.input.mesh); });
    write_file(dir / (std::string(e.name) + ".json"), [&](std::ostream &o) { io::write_ribbons(o, e.input.ribbons); });
    out << e.name << ": " << e.input.mesh.vertex_count() << " vertices, " << e.input.ribbons.sides.size()
        << " sides\n";
  }
  return Success;
}

// ---------------------------------------------------------------- parsing

void add_solver_options(CLI::App &cmd, JobConfig &cfg) {
  cmd.add_option("--mass", cfg.mass, "Mass matrix")->check(CLI::IsMember({"lumped", "consistent"}));
  cmd.add_option("--boundary-mass", cfg.boundary_mass, "Boundary mass matrix")
      ->check(CLI::IsMember({"consistent", "lumped"}));
  cmd.add_option("--solver", cfg.solver, "Linear solver")->check(CLI::IsMember({"direct", "cg"}));
  cmd.add_option("--tolerance", cfg.tolerance, "Maximum relative residual")->check(CLI::PositiveNumber);
  cmd.add_option("--cg-tolerance", cfg.cg_tolerance, "Conjugate gradient tolerance")->check(CLI::PositiveNumber);
  cmd.add_option("--normals", cfg.normals, "Boundary normal for derivative data")
      ->check(CLI::IsMember({"consistent", "unit"}));
  cmd.add_option("-o,--out", cfg.out, "Output directory");
}

void add_patch_options(CLI::App &cmd, JobConfig &cfg) {
  cmd.add_option("-m,--mesh", cfg.mesh, "Domain mesh (OFF)");
  cmd.add_option("-r,--ribbons", cfg.ribbons, "Ribbon file (JSON)");
  cmd.add_option("--sides", cfg.sides, "Side assignment sidecar (JSON)");
  cmd.add_option("--s-extension", cfg.s_extension, "Extension of s to the other sides")
      ->check(CLI::IsMember({"clamp-linear", "nearest"}));
  cmd.add_option("--gradient", cfg.gradient, "Vertex gradient estimate")
      ->check(CLI::IsMember({"area-weighted", "boundary-faces"}));
  cmd.add_option("--corner-tolerance", cfg.corner_tolerance, "Allowed corner gap, relative to the control nets")
      ->check(CLI::NonNegativeNumber);
  add_solver_options(cmd, cfg);
}

// Values from a JSON config file for options not given on the command line.
void apply_config(CLI::App &cmd, const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw BadConfig("cannot read config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw BadConfig(std::string("config file: ") + e.what());
  }
  if (!doc.is_object())
    throw BadConfig("config file must hold a JSON object");
  for (const auto &[key, value] : doc.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    CLI::Option *opt = cmd.get_option_no_throw("--" + name);
    if (opt == nullptr || name == "config")
      throw BadConfig("unknown config key '" + key + "' for " + cmd.get_name());
    if (opt->count() > 0)
      continue;
    if (value.is_string())
      opt->add_result(value.get<std::string>());
    else if (value.is_boolean())
      opt->add_result(value.get<bool>() ? "true" : "false");
    else if (value.is_number())
      opt->add_result(value.dump());
    else
      throw BadConfig("config key '" + key + "' must be a string, number or boolean");
    opt->run_callback();
  }
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  JobConfig cfg;
  std::string config_path;

  CLI::App app("Biharmonic multi-sided surface patches from ribbon boundary data", "ribbonpatch");
  app.require_subcommand(1);

  auto *build = app.add_subcommand("build", "Build a patch; writes patch.ply, curvature.csv, diagnostics.json");
  add_patch_options(*build, cfg);
  build->add_flag("--dump-matrices", cfg.dump_matrices, "Also write L, M, N and the reduced operator");

  auto *blend = app.add_subcommand("blend", "Blend field of one ribbon control point");
  add_patch_options(*blend, cfg);
  blend->add_option("--side", cfg.side, "Side index");
  blend->add_option("--row", cfg.row, "Control point index along s");
  blend->add_option("--col", cfg.column, "Control point index along h (0: boundary row)");

  auto *param = app.add_subcommand("param", "Harmonic parameterization of one side");
  add_patch_options(*param, cfg);
  param->add_option("--side", cfg.side, "Side index");

  auto *convergence = app.add_subcommand("convergence", "Refinement study on the unit square");
  convergence->add_option("--case", cfg.analytic_case, "Analytic solution")
      ->check(CLI::IsMember({"linear", "quadratic-biharmonic"}));
  convergence->add_option("--levels", cfg.levels, "Number of refinements")->check(CLI::Range(0, 6));
  convergence->add_option("--base", cfg.base_cells, "Cells per side of the coarsest mesh")
      ->check(CLI::PositiveNumber);
  convergence->add_option("--factor", cfg.refine_factor, "Refinement factor per level")->check(CLI::Range(2, 8));
  add_solver_options(*convergence, cfg);

  auto *generate = app.add_subcommand("examples", "Write the example meshes and ribbon files");
  generate->add_option("-o,--out", cfg.out, "Output directory");
  generate->add_option("--resolution", cfg.resolution, "Mesh resolution (0: defaults)")
      ->check(CLI::NonNegativeNumber);

  for (auto *cmd : {build, blend, param, convergence})
    cmd->add_option("--config", config_path, "JSON file with option values; command-line flags take precedence");

  try {
    app.parse(argc, argv);
    CLI::App *cmd = app.get_subcommands().front();
    if (!config_path.empty())
      apply_config(*cmd, config_path);

    if (cmd == build)
      return cmd_build(cfg, out);
    if (cmd == blend) {
      if (cfg.side < 0 || cfg.row < 0 || cfg.column < 0)
        throw BadConfig("blend needs --side, --row and --col");
      return cmd_blend(cfg, out);
    }
    if (cmd == param) {
      if (cfg.side < 0)
        throw BadConfig("param needs a non-negative --side");
      return cmd_param(cfg, out);
    }
    if (cmd == convergence) {
      if (cfg.analytic_case.empty())
        throw BadConfig("convergence needs --case linear|quadratic-biharmonic");
      return cmd_convergence(cfg, out);
    }
    return cmd_examples(cfg, out);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return Success;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return Success;
  } catch (const CLI::ParseError &e) {
    err << error_json("usage", e.what()).dump() << '\n';
    return UsageError;
  } catch (const BadConfig &e) {
    err << error_json("usage", e.what()).dump() << '\n';
    return UsageError;
  } catch (const MeshError &e) {
    err << error_json(MeshError::kind_name(e.kind()), e.what()).dump() << '\n';
  } catch (const RibbonError &e) {
    err << error_json("ribbon", e.what()).dump() << '\n';
  } catch (const SolverError &e) {
    json doc = error_json("solver", e.what());
    doc["error"]["residual"] = e.residual();
    err << doc.dump() << '\n';
  } catch (const std::exception &e) {
    err << error_json("pipeline", e.what()).dump() << '\n';
  }
  return PipelineFailure;
}

} // namespace ribbonpatch::cli
