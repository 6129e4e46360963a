#pragma once

#include <exception>
#include <mutex>

#include "confball/exec.hpp"

namespace confball {

/// Runs body(i) for i in [0, count), under OpenMP when exec is parallel.
/// Exceptions cannot cross an OpenMP region, so the first one is captured and
/// rethrown after the loop. body must write only to slot i.
template <class Body>
void for_each_index(int count, Exec exec, Body&& body) {
  std::exception_ptr error;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel && count > 1)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(guard);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace confball
