#pragma once

#include <string>
#include <vector>

#include "vemsf/element.hpp"

namespace vemsf {

inline constexpr double kZeroEigenvalueThreshold = 1e-8;

struct SpectrumReport {
  std::string family;
  /// Vertex count, perturbation delta (relative to h_E) or central node count.
  double parameter = 0.0;
  int num_vertices = 0;
  int k = 0;
  int ell = 0;
  Vector eigenvalues;  // ascending
  int zero_count = 0;
  int spurious_count = 0;
  double lambda_min_nonzero = 0.0;
  double lambda_max = 0.0;
  /// Non-empty when the element could not be built (e.g. a non-simple polygon).
  std::string error;
};

/// Full symmetric eigen-decomposition; eigenvalues below threshold * lambda_max
/// count as zero.
SpectrumReport element_spectrum(const Matrix& K, double threshold = kZeroEigenvalueThreshold);

/// Material used by the sweeps: E = 1, nu = 0.3, plane stress.
MaterialMatrix eigen_study_material();

/// Regular n-gons with circumradius 1 for n in [n_min, n_max]; entries with
/// k >= n are skipped.
std::vector<SpectrumReport> sweep_regular(int k, int ell, int n_min, int n_max);

/// Regular n-gon with one coordinate of vertex 0 shifted by delta * h_E for
/// each delta (y is tangential at vertex 0). Geometry failures are recorded
/// in the report.
std::vector<SpectrumReport> sweep_perturbed(int k, int ell, int sides, const std::vector<double>& deltas,
                                            Axis component = Axis::y);

/// Default relative perturbations {0, 1e-3, 1e-2, 0.05, 0.1, 0.2}.
std::vector<double> default_perturbations();

/// 3x3 grid whose central cell carries 4..max_nodes nodes; each report holds
/// the largest spurious count over all cells.
std::vector<SpectrumReport> sweep_inserted_nodes(int k, int ell, int max_nodes);

}  // namespace vemsf
