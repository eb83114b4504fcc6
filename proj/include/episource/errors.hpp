#pragma once

#include <stdexcept>
#include <string>

namespace episource {

// The input graph has the wrong shape for the requested operation
// (disconnected, not a tree, not unicyclic, ...).
class topology_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource bound (enumeration cap, vertex cap) would be exceeded.
class cap_exceeded_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace episource
