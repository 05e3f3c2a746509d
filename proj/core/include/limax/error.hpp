#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace limax {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or non-finite input, bad parameters, unknown names.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NotInCmFrame : public Error {
 public:
  NotInCmFrame(double position_defect, double momentum_defect)
      : Error("state is not in the center-of-mass frame (|sum r| = " +
              std::to_string(position_defect) +
              ", |sum p| = " + std::to_string(momentum_defect) + ")"),
        position_defect_(position_defect),
        momentum_defect_(momentum_defect) {}

  double position_defect() const { return position_defect_; }
  double momentum_defect() const { return momentum_defect_; }

 private:
  double position_defect_;
  double momentum_defect_;
};

class NotAChoreography : public Error {
 public:
  NotAChoreography(double residual_plus, double residual_minus)
      : Error("initial state does not satisfy the four-body choreography "
              "conditions (residual +: " + std::to_string(residual_plus) +
              ", residual -: " + std::to_string(residual_minus) + ")"),
        residual_plus_(residual_plus),
        residual_minus_(residual_minus) {}

  double residual_plus() const { return residual_plus_; }
  double residual_minus() const { return residual_minus_; }

 private:
  double residual_plus_;
  double residual_minus_;
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(std::size_t step)
      : Error("non-finite state encountered at integration step " +
              std::to_string(step)),
        step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace limax
