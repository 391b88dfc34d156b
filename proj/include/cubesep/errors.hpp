#pragma once

#include <stdexcept>
#include <string>

namespace cubesep {

// Adaptive integration exhausted its subdivision budget before reaching the
// requested tolerance. Carries the best estimate computed so far and the
// error bound actually achieved.
class quadrature_error : public std::runtime_error {
  public:
    quadrature_error(const std::string& what, double best_estimate, double achieved_error)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          achieved_error_(achieved_error) {}

    double best_estimate() const { return best_estimate_; }
    double achieved_error() const { return achieved_error_; }

  private:
    double best_estimate_;
    double achieved_error_;
};

}  // namespace cubesep
