#pragma once

#include <sullivan/io.hpp>

#include <string>

inline std::string fixturePath(const std::string& name) {
  return std::string(SULLIVAN_FIXTURE_DIR) + "/" + name;
}

inline sullivan::Cdga fixture(const std::string& name) {
  return sullivan::loadCdga(fixturePath(name + ".cdga"));
}
