#pragma once

// Dense CSV grids for joints and events:
//
//   nx,ny
//   2,2
//   0.4,0.1
//   0.1,0.4
//
// Row-major, one line per x. Blank lines and lines starting with '#' are
// ignored. Event cells must be 0 or 1.

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "alphaleak/bounds.hpp"
#include "alphaleak/distribution.hpp"

namespace alphaleak::cli {

// Message carries "source:line: detail".
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

JointDistribution read_joint_csv(std::istream& in, const std::string& source = "<joint>");
Event read_event_csv(std::istream& in, const std::string& source = "<event>");
JointDistribution read_joint_file(const std::string& path);
Event read_event_file(const std::string& path);

// Values written with 17 significant digits so they round-trip.
void write_joint_csv(std::ostream& out, const JointDistribution& joint);
void write_event_csv(std::ostream& out, const Event& event);

}  // namespace alphaleak::cli
