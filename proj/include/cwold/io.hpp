// File formats.
//  - Discrete measures: text, one `weight,x1,...,xn` record per line, '#'
//    starts a comment, blank lines ignored.
//  - Grids: a JSON header {dim, origin, h, shape, data} next to a raw
//    little-endian float64 file in row-major order.
//  - Sinograms: text matrix with header line `ndirs,np,p0,dp`; each
//    following line is one direction: its unit-vector coordinates, then the
//    np samples.
//  - Tables: comma-separated with a header row. Floats print with %.17g so
//    reruns are byte-identical.
#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cwold/grid.hpp"
#include "cwold/measures.hpp"
#include "cwold/radon.hpp"
#include "cwold/vec.hpp"

namespace cwold {

inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline DiscreteMeasure read_measure_text(std::istream& in) {
  std::vector<Vector> pts;
  std::vector<double> wts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
    if (blank) continue;
    std::stringstream ss(line);
    std::vector<double> row;
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        row.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::runtime_error("measure parse error at line " + std::to_string(lineno));
      }
    }
    if (row.size() < 2)
      throw std::runtime_error("measure record needs weight and coordinates at line " +
                               std::to_string(lineno));
    if (!pts.empty() && row.size() - 1 != pts.front().size())
      throw std::runtime_error("inconsistent dimension at line " + std::to_string(lineno));
    wts.push_back(row[0]);
    pts.emplace_back(row.begin() + 1, row.end());
  }
  if (pts.empty()) throw std::runtime_error("empty measure file");
  return DiscreteMeasure(std::move(pts), std::move(wts));
}

inline DiscreteMeasure read_measure_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file: " + path);
  return read_measure_text(in);
}

inline void write_measure_text(const DiscreteMeasure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write measure file: " + path);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out << fmt_g17(mu.weights[i]);
    for (double c : mu.points[i]) out << ',' << fmt_g17(c);
    out << '\n';
  }
}

// Grid pair: <base>.json + <base>.f64. Doubles are written verbatim; this
// code targets little-endian hosts (checked at startup by the CLI).
inline void write_grid(const GridDensity& g, const std::string& base) {
  const std::string data_name = base.substr(base.find_last_of('/') + 1) + ".f64";
  nlohmann::ordered_json j;
  j["dim"] = g.dim();
  j["origin"] = g.spec.origin;
  j["h"] = g.spec.h;
  j["shape"] = g.spec.shape;
  j["data"] = data_name;
  std::ofstream hdr(base + ".json");
  if (!hdr) throw std::runtime_error("cannot write grid header: " + base + ".json");
  hdr << j.dump(2) << '\n';
  std::ofstream raw(base + ".f64", std::ios::binary);
  if (!raw) throw std::runtime_error("cannot write grid data: " + base + ".f64");
  raw.write(reinterpret_cast<const char*>(g.values.data()),
            static_cast<std::streamsize>(g.values.size() * sizeof(double)));
}

inline GridDensity read_grid(const std::string& base) {
  std::ifstream hdr(base + ".json");
  if (!hdr) throw std::runtime_error("cannot open grid header: " + base + ".json");
  nlohmann::json j;
  try {
    hdr >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("grid header parse error: ") + e.what());
  }
  GridSpec spec;
  spec.origin = j.at("origin").get<Vector>();
  spec.h = j.at("h").get<double>();
  spec.shape = j.at("shape").get<std::vector<int>>();
  spec.validate();
  std::ifstream raw(base + ".f64", std::ios::binary);
  if (!raw) throw std::runtime_error("cannot open grid data: " + base + ".f64");
  std::vector<double> vals(spec.size());
  raw.read(reinterpret_cast<char*>(vals.data()),
           static_cast<std::streamsize>(vals.size() * sizeof(double)));
  if (static_cast<std::size_t>(raw.gcount()) != vals.size() * sizeof(double))
    throw std::runtime_error("grid data truncated: " + base + ".f64");
  return GridDensity(std::move(spec), std::move(vals));
}

inline void write_sinogram_text(const Sinogram& sg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sinogram: " + path);
  out << sg.directions.size() << ',' << sg.np << ',' << fmt_g17(sg.p0) << ','
      << fmt_g17(sg.dp) << '\n';
  for (std::size_t d = 0; d < sg.directions.size(); ++d) {
    bool first = true;
    for (double c : sg.directions[d]) {
      out << (first ? "" : ",") << fmt_g17(c);
      first = false;
    }
    for (int k = 0; k < sg.np; ++k) out << ',' << fmt_g17(sg.at(d, k));
    out << '\n';
  }
}

inline Sinogram read_sinogram_text(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sinogram: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty sinogram file");
  Sinogram sg;
  std::size_t ndirs = 0;
  {
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> head;
    while (std::getline(ss, tok, ',')) head.push_back(std::stod(tok));
    if (head.size() != 4) throw std::runtime_error("bad sinogram header");
    ndirs = static_cast<std::size_t>(head[0]);
    sg.np = static_cast<int>(head[1]);
    sg.p0 = head[2];
    sg.dp = head[3];
  }
  sg.values.reserve(ndirs * static_cast<std::size_t>(sg.np));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
    if (row.size() != static_cast<std::size_t>(dim + sg.np))
      throw std::runtime_error("bad sinogram row length");
    sg.directions.emplace_back(row.begin(), row.begin() + dim);
    sg.values.insert(sg.values.end(), row.begin() + dim, row.end());
  }
  if (sg.directions.size() != ndirs) throw std::runtime_error("sinogram row count mismatch");
  return sg;
}

// Binary 8-bit PGM (P5), min-max scaled; rows = first index, cols = second.
inline void write_pgm(const std::vector<double>& vals, int rows, int cols,
                      const std::string& path) {
  if (vals.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw std::invalid_argument("write_pgm: size mismatch");
  double lo = vals[0], hi = vals[0];
  for (double v : vals) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write pgm: " + path);
  out << "P5\n" << cols << ' ' << rows << "\n255\n";
  std::vector<unsigned char> bytes(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    bytes[i] = static_cast<unsigned char>(255.0 * (vals[i] - lo) / span + 0.5);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace cwold
