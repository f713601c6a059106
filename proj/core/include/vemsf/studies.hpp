#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vemsf/eigenanalysis.hpp"
#include "vemsf/fields.hpp"
#include "vemsf/mesh_generators.hpp"
#include "vemsf/system.hpp"

namespace vemsf {

struct LevelRecord {
  int level = 0;
  std::string label;  // mesh family or resolution parameter
  int n_elems = 0;
  int n_dofs = 0;
  double h = 0.0;  // 1 / sqrt(n_dofs)
  ErrorNorms errors;
  double seconds = 0.0;
};

struct StudyReport {
  std::string name;
  int k = 0;
  std::string mesh_family;
  std::vector<LevelRecord> levels;
  /// rate_l2[i] is the slope between levels i and i+1.
  std::vector<double> rate_l2;
  std::vector<double> rate_energy;
  double wall_seconds = 0.0;
  /// Free-form parameters recorded with the output (seed counts, seeds, ...).
  std::map<std::string, std::string> parameters;
};

/// Solves a benchmark on one mesh and measures its errors.
LevelRecord solve_benchmark(const Benchmark& bench, const PolygonalMesh& mesh, int k, EllPolicy policy = {});

/// Mesh parameters for a Voronoi mesh suited to order k: k = 3 meshes merge
/// triangles away after a few reseeding attempts, and short edges collapse.
MeshParams voronoi_params(const Box& domain, int seeds, int k, int lloyd_iterations);

/// The 16-element meshes of the patch tests (uniform, voronoi_random,
/// voronoi_lloyd and, for the displacement tests, nonconvex_split).
std::vector<std::pair<std::string, PolygonalMesh>> patch_meshes(const Box& domain, int k, bool include_nonconvex,
                                                                std::uint64_t seed);

/// One record per mesh family; level labels name the family.
StudyReport run_patch_tests(int k, bool equilibrium, std::uint64_t seed = 1);

enum class ConvergenceStudy { manufactured1, manufactured2, beam, beam_nonconvex, plate_hole };

std::string to_string(ConvergenceStudy study);
/// Throws InvalidParameterError for unknown names.
ConvergenceStudy parse_convergence_study(const std::string& name);

/// Default refinement ladder (seed counts, grid sizes or plate resolutions).
/// The nonconvex beam ladder depends on k: k=2 is pre-asymptotic in L2 below
/// 16x128 cells, and k=3 reaches the double-precision floor at 32x256.
std::vector<int> default_ladder(ConvergenceStudy study, int k = 2);

/// Meshes level `level` of a study ladder.
PolygonalMesh study_mesh(ConvergenceStudy study, int ladder_value, int k, std::uint64_t seed);

/// Runs the first `levels` entries of `ladder` (default ladder when empty).
StudyReport run_convergence(ConvergenceStudy study, int k, int levels, std::uint64_t seed = 1,
                            std::vector<int> ladder = {});

enum class EigenFamily { regular, perturbed, inserted };

std::string to_string(EigenFamily family);
EigenFamily parse_eigen_family(const std::string& name);

struct EigenStudyConfig {
  int k = 2;
  int ell = 3;
  EigenFamily family = EigenFamily::regular;
  /// regular: largest n; inserted: largest central node count; perturbed: unused.
  int nmax = 16;
  /// perturbed: polygon size (default 2k + 2, the hexagon/octagon of the study).
  int sides = 0;
};

std::vector<SpectrumReport> run_eigen_studies(const EigenStudyConfig& config);

// ---- output ----

enum class ReportFormat { csv, table };

inline constexpr const char* kConvergenceCsvHeader = "level,n_elems,n_dofs,linf,l2,energy,rate_l2,rate_energy";
inline constexpr const char* kEigenCsvHeader =
    "family,n_or_delta,k,ell,zero_count,spurious_count,lambda_min_nonzero,lambda_max";

/// CSV: one row per level, 17 significant digits; the rate columns of row i
/// hold the slope from level i-1 to i and are empty on the first row.
void emit_report(const StudyReport& report, std::ostream& out, ReportFormat format = ReportFormat::csv);
void emit_report(const StudyReport& report, const std::string& path, ReportFormat format = ReportFormat::csv);

void emit_spectra(const std::vector<SpectrumReport>& spectra, std::ostream& out);
void emit_spectra(const std::vector<SpectrumReport>& spectra, const std::string& path);

/// Parses a convergence CSV written by emit_report (levels and rates).
StudyReport parse_report_csv(std::istream& in);

}  // namespace vemsf
