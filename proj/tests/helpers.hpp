#pragma once

#include <string>

#include "thermocone/error.hpp"
#include "thermocone/system.hpp"

// Code of the thermocone::Error of type E thrown by f, or "" if none was.
template <typename E, typename F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.code();
  }
  return "";
}

inline thermocone::HamiltonianSpec qubit() {
  return thermocone::HamiltonianSpec({{0.0, 1}, {1.0, 1}});
}
