#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsspline/builtin_functions.hpp"
#include "wsspline/error.hpp"
#include "wsspline/global_space.hpp"
#include "wsspline/io.hpp"
#include "wsspline/local_basis.hpp"
#include "wsspline/sampling.hpp"
#include "wsspline/verification.hpp"
#include "wsspline/ws_split.hpp"

using namespace wsspline;

namespace {

enum exit_code { ok = 0, verify_failed = 1, bad_input = 2, degenerate = 3, dim_mismatch = 4, hash_mismatch = 5 };

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse:
    case ErrorKind::invalid_argument:
      return bad_input;
    case ErrorKind::dimension_mismatch:
      return dim_mismatch;
    case ErrorKind::hash_mismatch:
      return hash_mismatch;
    default:
      return degenerate;
  }
}

Triangle triangle_from(const std::vector<double>& v) {
  if (v.empty()) return Triangle({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
  return Triangle({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]});
}

Triangulation mesh_from(const std::string& path, const std::vector<double>& tri) {
  if (!path.empty()) return io::read_mesh_file(path);
  return single_triangle_mesh(triangle_from(tri));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::invalid_argument, "cannot write " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::parse, "cannot read " + path);
  return f;
}

struct SplitArgs {
  std::string mesh;
  std::vector<double> triangle;
  int degree = 3;
  std::string out;
  std::string format = "csv";
};

int cmd_split(const SplitArgs& a) {
  const Triangulation mesh = mesh_from(a.mesh, a.triangle);
  std::vector<std::unique_ptr<WsSplit>> splits;
  for (int t = 0; t < mesh.n_triangles(); ++t) splits.push_back(std::make_unique<WsSplit>(mesh.geometry(t), a.degree));
  const WsSplit& s0 = *splits.front();
  std::cout << "interior lines: " << s0.interior_lines().size() << ", vertices: " << s0.vertices().size()
            << ", dim: " << ws_dimension(a.degree) << '\n';
  std::cout << "cells: " << s0.cell_count() << '\n';
  if (mesh.n_triangles() > 1) std::cout << "triangles: " << mesh.n_triangles() << '\n';
  if (a.out.empty()) return ok;
  if (a.format == "svg") {
    std::vector<const WsSplit*> ptrs;
    for (const auto& s : splits) ptrs.push_back(s.get());
    auto f = open_out(a.out + ".svg");
    io::write_split_svg(f, ptrs);
    return ok;
  }
  for (size_t t = 0; t < splits.size(); ++t) {
    const std::string stem = splits.size() == 1 ? a.out : a.out + "_t" + std::to_string(t + 1);
    auto fv = open_out(stem + "_vertices.csv");
    io::write_split_vertices_csv(fv, *splits[t]);
    auto fc = open_out(stem + "_cells.csv");
    io::write_split_cells_csv(fc, *splits[t]);
  }
  return ok;
}

struct TableArgs {
  std::vector<double> triangle;
  std::string what;
  std::string basis = "B";
};

int cmd_basis_table(const TableArgs& a) {
  const LocalBasis lb(triangle_from(a.triangle));
  auto g = io::format_17g;
  std::ostream& out = std::cout;
  if (a.what == "weights") {
    out << "i,weight\n";
    for (int i = 0; i < n_basis; ++i) out << i + 1 << ',' << g(lb.weights()[i]) << '\n';
  } else if (a.what == "domain-points") {
    out << "i,b1,b2,b3,x,y\n";
    const auto& bary = domain_points_bary();
    for (int i = 0; i < n_basis; ++i) {
      const Point& p = lb.domain_points()[i];
      out << i + 1 << ',' << g(bary[i].b1) << ',' << g(bary[i].b2) << ',' << g(bary[i].b3) << ',' << g(p.x) << ','
          << g(p.y) << '\n';
    }
  } else if (a.what == "hermite-matrix") {
    const Eigen::MatrixXd m = lb.hermite_matrix(a.basis == "B-tilde" ? BasisTag::b_tilde : BasisTag::b);
    out << "i";
    for (int j = 0; j < m.cols(); ++j) out << ",rho" << j + 1;
    out << '\n';
    for (int i = 0; i < m.rows(); ++i) {
      out << i + 1;
      for (int j = 0; j < m.cols(); ++j) out << ',' << g(m(i, j));
      out << '\n';
    }
  } else {
    out << "i";
    for (int k = 1; k <= 6; ++k) out << ",x" << k << ",y" << k;
    out << '\n';
    for (int i = 0; i < n_basis; ++i) {
      out << i + 1;
      const KnotMultiset km = lb.knots(i);
      for (const Point& p : km.knots()) out << ',' << g(p.x) << ',' << g(p.y);
      out << '\n';
    }
  }
  return ok;
}

struct FitArgs {
  std::string mesh;
  std::string hermite;
  std::string sample_fn;
  uint64_t seed = 1;
  std::string out;
};

int cmd_fit(const FitArgs& a) {
  const SplineSpace space(io::read_mesh_file(a.mesh));
  std::unique_ptr<GlobalSpline> s;
  if (!a.hermite.empty()) {
    auto f = open_in(a.hermite);
    const io::HermiteInput in = io::read_hermite(f, space.mesh());
    s = std::make_unique<GlobalSpline>(in.is_mds ? space.propagate(in.mds) : space.fit(in.nodal));
  } else {
    s = std::make_unique<GlobalSpline>(space.fit(builtin_function(a.sample_fn, a.seed)));
  }
  std::cout << "max smoothness residual: " << io::format_shortest(space.max_smoothness_residual(*s)) << '\n';
  if (!a.out.empty()) {
    auto f = open_out(a.out);
    io::write_spline(f, *s);
  }
  return ok;
}

struct SampleArgs {
  std::string spline;
  std::string mesh;
  int grid = 21;
  std::string format = "csv";
  std::string output;
};

void write_obj(std::ostream& out, const GlobalSpline& s, const std::vector<GridSample>& pts, int n) {
  auto f = io::format_shortest;
  out << "o surface\n";
  std::map<std::pair<int, int>, size_t> at;
  for (size_t k = 0; k < pts.size(); ++k) {
    at[{pts[k].i, pts[k].j}] = k + 1;
    out << "v " << f(pts[k].x) << ' ' << f(pts[k].y) << ' ' << f(pts[k].value) << '\n';
  }
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      auto a = at.find({i, j}), b = at.find({i + 1, j}), c = at.find({i + 1, j + 1}), d = at.find({i, j + 1});
      if (a == at.end() || b == at.end() || c == at.end() || d == at.end()) continue;
      out << "f " << a->second << ' ' << b->second << ' ' << c->second << ' ' << d->second << '\n';
    }
  }
  out << "o control_net\n";
  size_t base = pts.size();
  for (int t = 0; t < s.space().mesh().n_triangles(); ++t) {
    const ControlNet net = s.space().basis(t).control_net(s.coeffs()[t]);
    for (int i = 0; i < n_basis; ++i) {
      out << "v " << f(net.sites[i].x) << ' ' << f(net.sites[i].y) << ' ' << f(net.heights[i]) << '\n';
    }
    for (const auto& face : *net.faces) {
      out << 'f';
      for (int v : face) out << ' ' << base + v + 1;
      out << '\n';
    }
    base += n_basis;
  }
}

int cmd_sample(const SampleArgs& a) {
  const SplineSpace space(io::read_mesh_file(a.mesh));
  auto fin = open_in(a.spline);
  const GlobalSpline s = io::read_spline(fin, space);
  const std::vector<GridSample> pts = sample_grid(s, a.grid);
  std::ofstream file;
  if (!a.output.empty()) file = open_out(a.output);
  std::ostream& out = a.output.empty() ? std::cout : file;
  if (a.format == "obj") {
    write_obj(out, s, pts, a.grid);
  } else {
    out << "x,y,s\n";
    for (const auto& p : pts) {
      out << io::format_shortest(p.x) << ',' << io::format_shortest(p.y) << ',' << io::format_shortest(p.value) << '\n';
    }
  }
  return ok;
}

struct VerifyArgs {
  std::string mesh;
  std::vector<double> triangle;
  uint64_t seed = 1;
  bool break_coefficient = false;
};

int cmd_verify(const VerifyArgs& a) {
  const Triangulation mesh = mesh_from(a.mesh, a.triangle);
  VerifyOptions opt;
  opt.seed = a.seed;
  opt.break_coefficient = a.break_coefficient;
  bool all = true;
  for (const SuiteResult& r : run_verification(mesh, opt)) {
    all = all && r.pass;
    std::cout << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " max residual " << io::format_shortest(r.residual)
              << " (limit " << io::format_shortest(r.tolerance) << ")";
    if (!r.note.empty()) std::cout << ", " << r.note;
    std::cout << '\n';
  }
  return all ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simplex spline tools for Wang-Shi split meshes"};
  app.require_subcommand(1);

  SplitArgs sa;
  auto* split = app.add_subcommand("split", "Build the WS_d arrangement of a triangle or mesh");
  auto* sm = split->add_option("--mesh", sa.mesh, "Mesh file");
  split->add_option("--triangle", sa.triangle, "x1 y1 x2 y2 x3 y3")->expected(6)->excludes(sm);
  split->add_option("--degree", sa.degree, "Split degree")->check(CLI::Range(1, 8));
  split->add_option("--out", sa.out, "Output prefix");
  split->add_option("--format", sa.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));

  TableArgs ta;
  auto* table = app.add_subcommand("basis-table", "Dump local basis data as CSV");
  table->add_option("--triangle", ta.triangle, "x1 y1 x2 y2 x3 y3")->expected(6);
  table->add_option("--what", ta.what, "weights, domain-points, hermite-matrix or knots")
      ->required()
      ->check(CLI::IsMember({"weights", "domain-points", "hermite-matrix", "knots"}));
  table->add_option("--basis", ta.basis, "B or B-tilde")->check(CLI::IsMember({"B", "B-tilde"}));

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Fit a global spline from Hermite data or a builtin function");
  fit->add_option("--mesh", fa.mesh, "Mesh file")->required();
  auto* fh = fit->add_option("--hermite", fa.hermite, "Hermite or mds record file");
  auto* fs = fit->add_option("--sample-fn", fa.sample_fn, "Builtin function")->check(CLI::IsMember(builtin_names()));
  fh->excludes(fs);
  fit->add_option("--seed", fa.seed, "Seed for the random cubic");
  fit->add_option("--out", fa.out, "Spline output file");

  SampleArgs pa;
  auto* sample = app.add_subcommand("sample", "Evaluate a spline on a grid");
  sample->add_option("--spline", pa.spline, "Spline file")->required();
  sample->add_option("--mesh", pa.mesh, "Mesh file")->required();
  sample->add_option("--grid", pa.grid, "Points per axis")->check(CLI::Range(2, 100000));
  sample->add_option("--out", pa.format, "csv or obj")->check(CLI::IsMember({"csv", "obj"}));
  sample->add_option("--output", pa.output, "Output file (default standard output)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  auto* vm = verify->add_option("--mesh", va.mesh, "Mesh file");
  verify->add_option("--triangle", va.triangle, "x1 y1 x2 y2 x3 y3")->expected(6)->excludes(vm);
  verify->add_option("--seed", va.seed, "Random seed");
  verify->add_flag("--break-coefficient", va.break_coefficient, "Perturb one C2 target coefficient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bad_input;
  }

  try {
    if (*split) return cmd_split(sa);
    if (*table) return cmd_basis_table(ta);
    if (*fit) {
      if (fa.hermite.empty() && fa.sample_fn.empty()) {
        std::cerr << "fit: one of --hermite or --sample-fn is required\n";
        return bad_input;
      }
      return cmd_fit(fa);
    }
    if (*sample) return cmd_sample(pa);
    if (*verify) return cmd_verify(va);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bad_input;
  }
  return ok;
}
