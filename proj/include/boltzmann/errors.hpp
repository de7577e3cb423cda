#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace boltzmann {

/// Time integration produced a non-finite value.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(std::int64_t step_index, const std::string& what)
      : std::runtime_error(what)
      , step_index_(step_index)
  {
  }

  std::int64_t step_index() const { return step_index_; }

 private:
  std::int64_t step_index_;
};

/// Moments are undefined because the field carries no positive mass.
class DegenerateMomentsError : public std::domain_error {
 public:
  DegenerateMomentsError(double rho, const std::string& what)
      : std::domain_error(what)
      , rho_(rho)
  {
  }

  double rho() const { return rho_; }

 private:
  double rho_;
};

/// A kernel table cache file failed its integrity check.
class TableChecksumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace boltzmann
