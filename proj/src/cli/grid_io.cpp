#include "alphaleak/grid_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace alphaleak::cli {
namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Line> content_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    lines.push_back({number, std::move(t)});
  }
  return lines;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& field, const std::string& source, std::size_t line, std::size_t col) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    fail(source, line, "column " + std::to_string(col + 1) + ": '" + field + "' is not a number");
  }
  return v;
}

struct RawGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> cells;
  std::size_t last_line = 0;
};

RawGrid read_grid(std::istream& in, const std::string& source) {
  const auto lines = content_lines(in);
  if (lines.empty()) fail(source, 0, "empty file");
  std::size_t i = 0;
  if (split(lines[i].text, ',') != std::vector<std::string>{"nx", "ny"}) {
    fail(source, lines[i].number, "expected header 'nx,ny'");
  }
  ++i;
  if (i >= lines.size()) fail(source, lines.back().number, "missing dimensions line");
  const auto dims = split(lines[i].text, ',');
  if (dims.size() != 2) fail(source, lines[i].number, "dimensions line needs two integers");
  RawGrid g;
  for (std::size_t d = 0; d < 2; ++d) {
    char* end = nullptr;
    const long v = std::strtol(dims[d].c_str(), &end, 10);
    if (dims[d].empty() || end != dims[d].c_str() + dims[d].size() || v <= 0) {
      fail(source, lines[i].number, std::string(d == 0 ? "nx" : "ny") + " must be a positive integer");
    }
    (d == 0 ? g.nx : g.ny) = static_cast<std::size_t>(v);
  }
  ++i;
  if (lines.size() - i != g.nx) {
    fail(source, lines.back().number,
         "expected " + std::to_string(g.nx) + " rows, found " + std::to_string(lines.size() - i));
  }
  for (; i < lines.size(); ++i) {
    const auto fields = split(lines[i].text, ',');
    if (fields.size() != g.ny) {
      fail(source, lines[i].number,
           "expected " + std::to_string(g.ny) + " columns, found " + std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) g.cells.push_back(parse_real(fields[c], source, lines[i].number, c));
    g.last_line = lines[i].number;
  }
  return g;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return in;
}

}  // namespace

JointDistribution read_joint_csv(std::istream& in, const std::string& source) {
  RawGrid g = read_grid(in, source);
  try {
    return JointDistribution(g.nx, g.ny, std::move(g.cells));
  } catch (const std::invalid_argument& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Event read_event_csv(std::istream& in, const std::string& source) {
  RawGrid g = read_grid(in, source);
  std::vector<bool> cells;
  cells.reserve(g.cells.size());
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    if (g.cells[k] != 0.0 && g.cells[k] != 1.0) {
      throw ParseError(source + ": cell (" + std::to_string(k / g.ny) + "," + std::to_string(k % g.ny) +
                       ") must be 0 or 1");
    }
    cells.push_back(g.cells[k] == 1.0);
  }
  return Event(g.nx, g.ny, std::move(cells));
}

JointDistribution read_joint_file(const std::string& path) {
  auto in = open(path);
  return read_joint_csv(in, path);
}

Event read_event_file(const std::string& path) {
  auto in = open(path);
  return read_event_csv(in, path);
}

void write_joint_csv(std::ostream& out, const JointDistribution& joint) {
  out << "nx,ny\n" << joint.nx() << ',' << joint.ny() << '\n';
  char buf[40];
  for (std::size_t x = 0; x < joint.nx(); ++x) {
    for (std::size_t y = 0; y < joint.ny(); ++y) {
      std::snprintf(buf, sizeof buf, "%.17g", joint(x, y));
      out << (y ? "," : "") << buf;
    }
    out << '\n';
  }
}

void write_event_csv(std::ostream& out, const Event& event) {
  out << "nx,ny\n" << event.nx() << ',' << event.ny() << '\n';
  for (std::size_t x = 0; x < event.nx(); ++x) {
    for (std::size_t y = 0; y < event.ny(); ++y) out << (y ? "," : "") << (event.contains(x, y) ? 1 : 0);
    out << '\n';
  }
}

}  // namespace alphaleak::cli
