#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vemsf/errors.hpp"
#include "vemsf/mesh_generators.hpp"
#include "vemsf/studies.hpp"

namespace {

vemsf::ReportFormat parse_format(const std::string& f) {
  return f == "table" ? vemsf::ReportFormat::table : vemsf::ReportFormat::csv;
}

void print_patch_summary(const vemsf::StudyReport& r) {
  std::cout << r.name << " (k=" << r.k << ")\n";
  for (const auto& l : r.levels)
    std::cout << "  " << l.label << ": Linf=" << l.errors.linf << " L2=" << l.errors.l2 << " energy=" << l.errors.energy
              << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilization-free serendipity VEM for plane elasticity"};
  app.require_subcommand(1);

  // eigen
  auto* eigen = app.add_subcommand("eigen", "element-eigenvalue sweeps");
  int eig_k = 2, eig_ell = 3, eig_nmax = 16, eig_sides = 0;
  std::string eig_family = "regular", eig_out;
  eigen->add_option("--k", eig_k, "method order")->required()->check(CLI::IsMember({2, 3}));
  eigen->add_option("--ell", eig_ell, "strain projection order")->required()->check(CLI::Range(0, 12));
  eigen->add_option("--family", eig_family, "regular | perturbed | inserted")
      ->required()
      ->check(CLI::IsMember({"regular", "perturbed", "inserted"}));
  eigen->add_option("--nmax", eig_nmax, "largest vertex or node count")->check(CLI::Range(3, 64));
  eigen->add_option("--sides", eig_sides, "polygon size for the perturbed family (default 2*ell)");
  eigen->add_option("--out", eig_out, "CSV output path (stdout when omitted)");

  // patch
  auto* patch = app.add_subcommand("patch", "patch tests on 16-element meshes");
  int patch_k = 2;
  bool patch_eq = false;
  std::uint64_t patch_seed = 1;
  std::string patch_out;
  patch->add_option("--k", patch_k, "method order")->required()->check(CLI::IsMember({2, 3}));
  patch->add_flag("--equilibrium", patch_eq, "equilibrium (Neumann) patch test on the bar");
  patch->add_option("--seed", patch_seed, "mesh seed");
  patch->add_option("--out", patch_out, "CSV output path");

  // converge
  auto* conv = app.add_subcommand("converge", "refinement study");
  std::string conv_study, conv_out, conv_format = "table";
  int conv_k = 2, conv_levels = 3;
  std::uint64_t conv_seed = 1;
  std::vector<int> conv_ladder;
  conv->add_option("--study", conv_study, "manufactured1 | manufactured2 | beam | beam_nonconvex | plate_hole")
      ->required()
      ->check(CLI::IsMember({"manufactured1", "manufactured2", "beam", "beam_nonconvex", "plate_hole"}));
  conv->add_option("--k", conv_k, "method order")->required()->check(CLI::IsMember({2, 3}));
  conv->add_option("--levels", conv_levels, "number of refinement levels")->required();
  conv->add_option("--seed", conv_seed, "mesh seed");
  conv->add_option("--ladder", conv_ladder, "override the refinement ladder");
  conv->add_option("--out", conv_out, "CSV output path (CSV on stdout when omitted)");
  conv->add_option("--format", conv_format, "stdout format when --out is given")->check(CLI::IsMember({"csv", "table"}));

  // mesh
  auto* mesh = app.add_subcommand("mesh", "generate and write a mesh");
  std::string mesh_family, mesh_out;
  vemsf::MeshParams mp;
  std::uint64_t mesh_seed = 0;
  mesh->add_option("--family", mesh_family, "mesh family")
      ->required()
      ->check(CLI::IsMember({"uniform", "voronoi_random", "voronoi_lloyd", "nonconvex_split", "regular_ngon",
                             "grid_with_inserted_nodes"}));
  mesh->add_option("--out", mesh_out, "mesh file path")->required();
  mesh->add_option("--nx", mp.nx);
  mesh->add_option("--ny", mp.ny);
  mesh->add_option("--seeds", mp.seeds);
  mesh->add_option("--lloyd", mp.lloyd_iterations);
  mesh->add_option("--sides", mp.sides);
  mesh->add_option("--radius", mp.circumradius);
  mesh->add_option("--nodes", mp.central_nodes);
  mesh->add_option("--min-lines", mp.min_boundary_lines);
  mesh->add_option("--seed", mesh_seed);
  mesh->add_option("--box", [&mp](const std::vector<std::string>& v) {
    if (v.size() != 4) return false;
    mp.domain = {std::stod(v[0]), std::stod(v[1]), std::stod(v[2]), std::stod(v[3])};
    return true;
  }, "x0 y0 x1 y1")->expected(4);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eigen) {
      vemsf::EigenStudyConfig cfg;
      cfg.k = eig_k;
      cfg.ell = eig_ell;
      cfg.family = vemsf::parse_eigen_family(eig_family);
      cfg.nmax = eig_nmax;
      cfg.sides = eig_sides;
      const auto spectra = vemsf::run_eigen_studies(cfg);
      if (eig_out.empty())
        vemsf::emit_spectra(spectra, std::cout);
      else
        vemsf::emit_spectra(spectra, eig_out);
    } else if (*patch) {
      const auto rep = vemsf::run_patch_tests(patch_k, patch_eq, patch_seed);
      print_patch_summary(rep);
      if (!patch_out.empty()) vemsf::emit_report(rep, patch_out);
    } else if (*conv) {
      const auto rep =
          vemsf::run_convergence(vemsf::parse_convergence_study(conv_study), conv_k, conv_levels, conv_seed, conv_ladder);
      if (conv_out.empty()) {
        vemsf::emit_report(rep, std::cout);
      } else {
        vemsf::emit_report(rep, conv_out);
        vemsf::emit_report(rep, std::cout, parse_format(conv_format));
      }
    } else if (*mesh) {
      const auto m = vemsf::generate_mesh(vemsf::parse_mesh_family(mesh_family), mp, mesh_seed);
      vemsf::write_mesh(m, mesh_out);
      std::cout << "wrote " << m.num_cells() << " cells, " << m.num_vertices() << " vertices to " << mesh_out << '\n';
    }
  } catch (const vemsf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
