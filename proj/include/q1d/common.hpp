#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace q1d {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double PI = 3.14159265358979323846;

// Thrown when an argument lies outside an operation's stated domain.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown on tensor/basis shape mismatches.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown on malformed or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative solve fails to converge.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const char* version_string() { return "quasi1d 0.1.0"; }

}  // namespace q1d
