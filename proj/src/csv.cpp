#include "ocpd/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ocpd {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_stream_csv(const std::string& path, const std::vector<Vec>& stream,
                      const std::string& config_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("stream csv: cannot write " + path);
  if (!config_comment.empty()) out << "# " << config_comment << "\n";
  const std::size_t dim = stream.empty() ? 1 : stream.front().size();
  out << "t";
  for (std::size_t i = 0; i < dim; ++i) out << ",x_" << i;
  out << "\n";
  for (std::size_t t = 0; t < stream.size(); ++t) {
    out << (t + 1);
    for (double v : stream[t]) out << "," << format_double(v);
    out << "\n";
  }
}

std::vector<Vec> read_stream_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("stream csv: cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  // Header: first non-comment line, "t,x_0,...".
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.empty() || cells[0] != "t")
      throw std::runtime_error("stream csv: expected header starting with 't' at line " +
                               std::to_string(lineno));
    dim = cells.size() - 1;
    break;
  }
  if (dim == 0) throw std::runtime_error("stream csv: missing or empty header in " + path);
  std::vector<Vec> stream;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != dim + 1)
      throw std::runtime_error("stream csv: wrong column count at line " +
                               std::to_string(lineno));
    Vec x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      try {
        std::size_t consumed = 0;
        x[i] = std::stod(cells[i + 1], &consumed);
        if (consumed != cells[i + 1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw std::runtime_error("stream csv: parse error at line " + std::to_string(lineno));
      }
    }
    stream.push_back(std::move(x));
  }
  return stream;
}

}  // namespace ocpd
