#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sphcs/error.hpp"
#include "sphcs/harness.hpp"

namespace sphcs {

void export_result(const PhaseDiagramResult& result, std::ostream& os, ExportFormat format) {
  std::ostringstream buf;
  if (format == ExportFormat::kCsv) {
    buf << "s,m,frequency\n";
    char freq[32];
    for (std::size_t j = 0; j < result.s_values.size(); ++j) {
      for (std::size_t i = 0; i < result.m_values.size(); ++i) {
        // Shortest round-trip decimal.
        *std::to_chars(freq, freq + sizeof freq - 1, result.frequency(j, i)).ptr = '\0';
        buf << result.s_values[j] << ',' << result.m_values[i] << ',' << freq << '\n';
      }
    }
  } else {
    // Black (0) is full success.
    buf << "P2\n" << result.s_values.size() << ' ' << result.m_values.size() << "\n255\n";
    for (std::size_t r = result.m_values.size(); r-- > 0;) {
      for (std::size_t j = 0; j < result.s_values.size(); ++j) {
        if (j > 0) buf << ' ';
        buf << static_cast<int>(std::lround(255.0 * (1.0 - result.frequency(j, r))));
      }
      buf << '\n';
    }
  }
  os << buf.str();
}

void export_result(const PhaseDiagramResult& result, const std::filesystem::path& path,
                   ExportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  export_result(result, out, format);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

PhaseDiagramResult read_phase_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("s,m,frequency", 0) != 0) {
    throw ParameterError("phase CSV: missing header `s,m,frequency`");
  }
  struct Row {
    std::size_t s, m;
    double f;
  };
  std::vector<Row> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Row r{};
    char c1 = 0, c2 = 0;
    std::istringstream in(line);
    if (!(in >> r.s >> c1 >> r.m >> c2 >> r.f) || c1 != ',' || c2 != ',') {
      throw ParameterError("phase CSV: malformed row '" + line + "'");
    }
    rows.push_back(r);
  }
  PhaseDiagramResult result;
  auto position = [](std::vector<std::size_t>& grid, std::size_t v) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] == v) return i;
    }
    grid.push_back(v);
    return grid.size() - 1;
  };
  for (const Row& r : rows) {
    position(result.s_values, r.s);
    position(result.m_values, r.m);
  }
  result.frequencies.assign(result.m_values.size(),
                            std::vector<double>(result.s_values.size(), 0.0));
  for (const Row& r : rows) {
    result.frequencies[position(result.m_values, r.m)][position(result.s_values, r.s)] = r.f;
  }
  return result;
}

}  // namespace sphcs
