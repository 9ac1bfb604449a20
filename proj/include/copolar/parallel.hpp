#pragma once

// Sample-parallel map used by every audit. The serial path is the reference:
// the OpenMP path evaluates the same closure per index into preallocated slots,
// so results are bit-identical and reductions stay in index order.

#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "copolar/error.hpp"

namespace copolar {

enum class Exec { serial, openmp };

template <class R>
struct SampleOutcome {
  std::optional<R> value;
  std::string error;  // set when the sample threw
  std::optional<ErrorKind> kind;
};

namespace detail {

template <class R, class F>
SampleOutcome<R> run_one(F& fn, std::size_t i) {
  SampleOutcome<R> out;
  try {
    out.value = fn(i);
  } catch (const Error& e) {
    out.error = e.what();
    out.kind = e.kind();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace detail

template <class R, class F>
std::vector<SampleOutcome<R>> map_samples(std::size_t count, F&& fn, Exec exec = Exec::openmp) {
  std::vector<SampleOutcome<R>> out(count);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = detail::run_one<R>(fn, i);
    return out;
  }
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = detail::run_one<R>(fn, static_cast<std::size_t>(i));
  return out;
}

}  // namespace copolar
