#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cyclewalk/arc_graph.hpp"
#include "cyclewalk/evolution.hpp"

namespace cyclewalk {

// Malformed or inconsistent state file.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateHeader {
  GraphKind kind;
  std::int32_t radius;
};

// Reads only the graph/radius fields, so the caller can size a window first.
StateHeader peek_state_header(const std::string& path);

struct LoadedState {
  WalkState state;        // normalized
  double norm_before;     // norm divided out during loading
};

// Loads a state file into `space`, which must be of the file's graph kind and
// at least its radius.  Entries address arcs as {cell, coin} on the chain and
// {coin} / {tail, moving} on the tailed graph; duplicates are rejected.
LoadedState read_state(const std::string& path, const ArcSpace& space);

void write_state(const std::string& path, const WalkState& st);

// Round-trip-exact decimal rendering (17 significant digits).
std::string format_double(double v);

}  // namespace cyclewalk
