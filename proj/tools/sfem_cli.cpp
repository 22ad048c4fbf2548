// Command-line front end: patch test, cantilever beam, convergence studies and a shape-function demo.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sfem/benchmarks.hpp"
#include "sfem/error.hpp"
#include "sfem/shapefn.hpp"
#include "sfem/svg_plot.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::vector<std::string> schemes{"wachspress"};
  int k = 4;
  int quadrature = 0;
  std::string split = "edge12-edge34";
  double alpha = 0.0;
  std::uint64_t seed = 1;
  std::string output_dir;
};

sfem::SplitOrientation parse_split(const std::string& s) {
  if (s == "edge12-edge34") return sfem::SplitOrientation::Edge12To34;
  if (s == "edge23-edge41") return sfem::SplitOrientation::Edge23To41;
  throw UsageError("unknown split orientation '" + s + "'");
}

sfem::Scheme scheme_or_usage(const std::string& s) {
  try {
    return sfem::parse_scheme(s);
  } catch (const sfem::Error&) {
    throw UsageError("unknown scheme '" + s + "' (wachspress, averaged, lagrange)");
  }
}

sfem::StiffnessSettings settings_for(const CommonOptions& o, const std::string& scheme) {
  sfem::StiffnessSettings s;
  s.scheme = scheme_or_usage(scheme);
  s.subcells = o.k;
  s.quadrature = o.quadrature;
  s.orientation = parse_split(o.split);
  return s;
}

std::vector<double> parse_doubles(const std::string& text, char sep = ',') {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + item + "'");
    }
  }
  return out;
}

fs::path prepare_output_dir(const CommonOptions& o) {
  std::string dir = o.output_dir;
  if (dir.empty()) {
    const char* env = std::getenv("SFEM_OUTPUT_DIR");
    dir = env ? env : "sfem_out";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw UsageError("cannot write " + path.string());
}

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string meta_common(const std::string& command, const CommonOptions& o) {
  std::ostringstream m;
  m << "command " << command << '\n';
  m << "schemes " << join(o.schemes) << '\n';
  m << "k " << o.k << '\n';
  m << "sc2q4_split " << o.split << '\n';
  for (const auto& s : o.schemes)
    m << "quadrature_points_per_segment " << s << ' ' << settings_for(o, s).effective_quadrature() << '\n';
  m << "alpha_ir " << sfem::format17(o.alpha) << '\n';
  m << "rng mt19937_64 top-53-bit uniform [0,1), interior nodes in id order, x draw then y draw\n";
  return m.str();
}

// ---------------------------------------------------------------------------

int run_patch(const CommonOptions& o, int n, bool distorted) {
  const auto settings = settings_for(o, o.schemes.front());
  sfem::PatchTestConfig config;
  config.n = n > 0 ? n : (distorted ? 3 : 2);
  config.alpha_ir = distorted ? (o.alpha > 0.0 ? o.alpha : 0.4) : 0.0;
  config.seed = o.seed;
  const auto result = sfem::run_patch_test(settings, config);
  const double tolerance = distorted ? 1e-9 : 1e-10;
  std::cout << "patch test " << o.schemes.front() << " SC" << o.k << "Q4 " << config.n << 'x' << config.n
            << " alpha_ir=" << config.alpha_ir << " max_error=" << sfem::format17(result.max_error)
            << (result.max_error < tolerance ? " PASS" : " FAIL") << '\n';
  return result.max_error < tolerance ? 0 : kExitNumerical;
}

int run_beam_command(const CommonOptions& o, double mesh_index) {
  const sfem::TimoshenkoBeam beam;
  const auto settings = settings_for(o, o.schemes.front());
  const fs::path dir = prepare_output_dir(o);
  const sfem::Mesh mesh = sfem::beam_mesh(beam, mesh_index, o.alpha, o.seed, o.k);
  const auto run = sfem::run_beam(beam, settings, mesh);

  sfem::ConvergenceRecord rec{o.schemes.front(), o.k, o.alpha, o.alpha > 0.0 ? o.seed : 0, mesh_index,
                              2 * mesh.nodes.size(), run.solution.strain_energy, run.energy_norm_error};
  write_file(dir / "beam.csv", sfem::to_csv({rec}));
  std::ostringstream mesh_text;
  sfem::write_mesh(mesh_text, mesh);
  write_file(dir / "mesh.txt", mesh_text.str());
  std::ostringstream meta;
  meta << meta_common("beam", o) << "seed " << rec.seed << '\n'
       << "mesh_index " << sfem::format17(mesh_index) << '\n'
       << "essential_bc exact displacement on all x=0 nodes, both components\n"
       << "energy_norm no 1/2 factor\n";
  for (const auto& w : run.warnings) meta << "warning " << w << '\n';
  write_file(dir / "meta.txt", meta.str());

  std::cout << "strain_energy " << sfem::format17(rec.strain_energy) << " (exact " << sfem::kBeamExactStrainEnergy
            << ")\nenergy_norm_error " << sfem::format17(rec.energy_norm_error) << '\n';
  return 0;
}

int run_convergence(const CommonOptions& o, int seed_count, const std::string& indices_text) {
  const sfem::TimoshenkoBeam beam;
  const auto indices = parse_doubles(indices_text);
  if (seed_count < 1) throw UsageError("--seeds must be at least 1");
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < seed_count; ++i) seeds.push_back(o.seed + static_cast<std::uint64_t>(i));
  const fs::path dir = prepare_output_dir(o);

  std::vector<sfem::ConvergenceRecord> all;
  std::vector<sfem::PlotSeries> series;
  std::ostringstream meta;
  meta << meta_common("convergence", o);
  meta << "seeds";
  for (auto s : seeds) meta << ' ' << s;
  meta << "\nmesh_indices " << indices_text << '\n'
       << "essential_bc exact displacement on all x=0 nodes, both components\n"
       << "energy_norm no 1/2 factor\n"
       << "plot median energy-norm error across seeds per mesh index\n";
  for (const auto& name : o.schemes) {
    const auto study = sfem::run_convergence_study(beam, settings_for(o, name), o.alpha, seeds, indices);
    all.insert(all.end(), study.records.begin(), study.records.end());
    sfem::PlotSeries s;
    s.label = name + " SC" + std::to_string(o.k) + "Q4";
    for (const auto& r : sfem::median_by_mesh_index(study.records)) s.points.emplace_back(r.mesh_index, r.energy_norm_error);
    char buf[64];
    std::snprintf(buf, sizeof buf, "rate %.3f (r2 %.4f)", study.fit.slope, study.fit.r_squared);
    s.annotation = buf;
    series.push_back(std::move(s));
    meta << "rate " << name << ' ' << sfem::format17(study.fit.slope) << " r2 " << sfem::format17(study.fit.r_squared)
         << '\n';
    for (const auto& line : study.log) meta << "retry " << line << '\n';
    std::cout << name << " SC" << o.k << "Q4 alpha_ir=" << o.alpha << " rate=" << study.fit.slope
              << " r2=" << study.fit.r_squared << '\n';
  }
  write_file(dir / "convergence.csv", sfem::to_csv(all));
  char title[96];
  std::snprintf(title, sizeof title, "Cantilever beam, SC%dQ4, alpha_ir = %.2f", o.k, o.alpha);
  write_file(dir / "convergence.svg", sfem::render_loglog_svg(title, "mesh index", "energy-norm error", series));
  write_file(dir / "meta.txt", meta.str());
  std::cout << "wrote " << (dir / "convergence.csv").string() << ", convergence.svg, meta.txt\n";
  return 0;
}

sfem::Quad parse_quad(const std::string& text) {
  if (text == "parallelogram") return {{{0, 0}, {1, 0}, {1.5, 1}, {0.5, 1}}};
  if (text == "square") return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  const auto v = parse_doubles(text);
  if (v.size() != 8) throw UsageError("--quad needs 'parallelogram', 'square' or eight comma-separated numbers");
  return {{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}}};
}

std::string format_values(const sfem::ShapeValues& n) {
  std::ostringstream s;
  s << '(';
  for (int i = 0; i < 4; ++i) s << (i ? ", " : "") << sfem::format17(n[i]);
  s << ')';
  return s.str();
}

int run_shapefn_demo(const CommonOptions& o, const std::string& quad_text, const std::string& point_text) {
  const sfem::Quad quad = parse_quad(quad_text);
  const auto pv = parse_doubles(point_text);
  if (pv.size() != 2) throw UsageError("--point needs x,y");
  const sfem::Point2 p{pv[0], pv[1]};
  const auto attempt = [&](const char* label, auto&& eval) {
    try {
      const auto values = eval();
      std::cout << label << ' ' << format_values(values) << '\n';
    } catch (const sfem::Error& e) {
      std::cout << label << " error: " << e.what() << '\n';
    }
  };
  attempt("wachspress", [&] { return sfem::WachspressBasis(quad).values(p); });
  attempt("averaged  ", [&] { return sfem::AveragedBasis(quad, o.k, parse_split(o.split)).values(p); });
  attempt("lagrange  ", [&] { return sfem::LagrangeBasis(quad).values(p); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smoothed finite elements with Wachspress, averaged and non-mapped Lagrange shape functions"};
  app.require_subcommand(1);
  CommonOptions opts;

  const auto add_common = [&opts](CLI::App* cmd, bool multi_scheme) {
    if (multi_scheme)
      cmd->add_option("--scheme", opts.schemes, "wachspress | averaged | lagrange (repeatable)");
    else
      cmd->add_option("--scheme", opts.schemes, "wachspress | averaged | lagrange")->expected(1);
    cmd->add_option("--k", opts.k, "smoothing cells per element")->check(CLI::IsMember({1, 2, 4}));
    cmd->add_option("--quadrature", opts.quadrature, "Gauss points per cell-boundary segment (0 = scheme default)")
        ->check(CLI::Range(0, 4));
    cmd->add_option("--split", opts.split, "SC2Q4 cut: edge12-edge34 | edge23-edge41");
    cmd->add_option("--alpha", opts.alpha, "irregularity factor alpha_ir")->check(CLI::Range(0.0, 0.5));
    cmd->add_option("--seed", opts.seed, "distortion seed (first seed for --seeds)");
    cmd->add_option("--output-dir", opts.output_dir, "output directory (default $SFEM_OUTPUT_DIR or ./sfem_out)");
  };

  auto* patch = app.add_subcommand("patch-test", "linear patch test");
  add_common(patch, false);
  bool distorted = false;
  int patch_n = 0;
  patch->add_flag("--distorted", distorted, "distort interior nodes (alpha_ir 0.4 unless --alpha is given)");
  patch->add_option("--n", patch_n, "elements per side (default 2 regular, 3 distorted)");

  auto* beam = app.add_subcommand("beam", "single cantilever-beam solve");
  add_common(beam, false);
  double mesh_index = 4.0;
  beam->add_option("--mesh-index", mesh_index, "elements along x per unit length");

  auto* conv = app.add_subcommand("convergence", "energy-norm convergence study on the cantilever beam");
  add_common(conv, true);
  int seed_count = 3;
  std::string indices = "0.5,1,2,4";
  conv->add_option("--seeds", seed_count, "number of distortion seeds (irregular meshes)");
  conv->add_option("--mesh-indices", indices, "comma-separated ascending mesh indices");

  auto* demo = app.add_subcommand("shapefn-demo", "evaluate all three schemes at one point");
  std::string quad_text = "parallelogram", point_text = "0.25,0.5";
  demo->add_option("--quad", quad_text, "parallelogram | square | x1,y1,x2,y2,x3,y3,x4,y4");
  demo->add_option("--point", point_text, "x,y");
  demo->add_option("--k", opts.k, "subdivision for the averaged scheme")->check(CLI::IsMember({1, 2, 4}));
  demo->add_option("--split", opts.split, "SC2Q4 cut: edge12-edge34 | edge23-edge41");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (opts.schemes.empty()) opts.schemes = {"wachspress"};

  try {
    if (*patch) return run_patch(opts, patch_n, distorted);
    if (*beam) return run_beam_command(opts, mesh_index);
    if (*conv) return run_convergence(opts, seed_count, indices);
    if (*demo) return run_shapefn_demo(opts, quad_text, point_text);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sfem::Error& e) {
    std::cerr << "error";
    if (e.element() >= 0) std::cerr << " (element " << e.element() << ")";
    std::cerr << ": " << e.what() << '\n';
    return e.kind() == sfem::ErrorKind::InvalidArgument ? kExitUsage : kExitNumerical;
  }
  return kExitUsage;
}
