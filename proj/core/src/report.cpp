#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "vemsf/errors.hpp"
#include "vemsf/studies.hpp"

namespace vemsf {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

}  // namespace

void emit_report(const StudyReport& r, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::csv) {
    out << kConvergenceCsvHeader << '\n';
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
      const auto& l = r.levels[i];
      out << l.level << ',' << l.n_elems << ',' << l.n_dofs << ',' << num(l.errors.linf) << ',' << num(l.errors.l2) << ','
          << num(l.errors.energy) << ',';
      if (i > 0 && i - 1 < r.rate_l2.size()) out << num(r.rate_l2[i - 1]);
      out << ',';
      if (i > 0 && i - 1 < r.rate_energy.size()) out << num(r.rate_energy[i - 1]);
      out << '\n';
    }
    return;
  }
  out << r.name << "  k=" << r.k << "  mesh=" << r.mesh_family;
  for (const auto& [key, value] : r.parameters) out << "  " << key << "=" << value;
  out << "\n";
  out << std::left << std::setw(6) << "level" << std::setw(16) << "mesh" << std::right << std::setw(8) << "elems"
      << std::setw(9) << "dofs" << std::setw(12) << "Linf" << std::setw(12) << "L2" << std::setw(12) << "energy"
      << std::setw(9) << "rate_L2" << std::setw(9) << "rate_a" << std::setw(9) << "sec" << '\n';
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    const auto& l = r.levels[i];
    out << std::left << std::setw(6) << l.level << std::setw(16) << l.label << std::right << std::setw(8) << l.n_elems
        << std::setw(9) << l.n_dofs << std::scientific << std::setprecision(3) << std::setw(12) << l.errors.linf
        << std::setw(12) << l.errors.l2 << std::setw(12) << l.errors.energy << std::fixed << std::setprecision(2);
    if (i > 0 && i - 1 < r.rate_l2.size())
      out << std::setw(9) << r.rate_l2[i - 1] << std::setw(9) << r.rate_energy[i - 1];
    else
      out << std::setw(9) << "-" << std::setw(9) << "-";
    out << std::setw(9) << l.seconds << std::defaultfloat << '\n';
  }
  out << "wall time " << std::fixed << std::setprecision(2) << r.wall_seconds << " s" << std::defaultfloat << '\n';
}

void emit_report(const StudyReport& r, const std::string& path, ReportFormat format) {
  auto out = open_out(path);
  emit_report(r, out, format);
}

void emit_spectra(const std::vector<SpectrumReport>& spectra, std::ostream& out) {
  out << kEigenCsvHeader << '\n';
  for (const auto& s : spectra) {
    out << s.family << ',' << num(s.parameter) << ',' << s.k << ',' << s.ell << ',';
    if (!s.error.empty()) {
      out << ",,,\n";
      continue;
    }
    out << s.zero_count << ',' << s.spurious_count << ',' << num(s.lambda_min_nonzero) << ',' << num(s.lambda_max) << '\n';
  }
}

void emit_spectra(const std::vector<SpectrumReport>& spectra, const std::string& path) {
  auto out = open_out(path);
  emit_spectra(spectra, out);
}

StudyReport parse_report_csv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line) || line != kConvergenceCsvHeader) throw ParseError(line_no, "missing convergence CSV header");
  StudyReport r;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.push_back("");
    if (f.size() != 8) throw ParseError(line_no, "expected 8 fields");
    try {
      LevelRecord l;
      l.level = std::stoi(f[0]);
      l.n_elems = std::stoi(f[1]);
      l.n_dofs = std::stoi(f[2]);
      l.h = l.n_dofs > 0 ? 1.0 / std::sqrt(static_cast<double>(l.n_dofs)) : 0.0;
      l.errors = {std::stod(f[3]), std::stod(f[4]), std::stod(f[5])};
      r.levels.push_back(l);
      if (!f[6].empty()) r.rate_l2.push_back(std::stod(f[6]));
      if (!f[7].empty()) r.rate_energy.push_back(std::stod(f[7]));
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "malformed number");
    }
  }
  return r;
}

}  // namespace vemsf
