#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "jetkernel/kernel.hpp"

namespace jetkernel {

inline constexpr const char* kToolVersion = "0.1.0";

struct ExperimentReport {
  std::string kind;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();

  /// Adds schema_version and the environment stamp (tool version, field
  /// surrogate note). Contains nothing run-dependent, so reruns are byte-identical.
  nlohmann::json to_json() const;
};

/// "degree,dim,stabilized" with one row per scanned degree; stabilized is 1
/// from stabilized_at onwards.
std::string dims_csv(const KernelReport& report);

/// Kernel scan summary: dims, stabilized_at, flags, note and (optionally) bases.
nlohmann::json kernel_report_json(const KernelReport& report, bool include_bases);
nlohmann::json certificate_json(const ZeroKernelCertificate& cert);
std::string scalar_json(const Scalar& s);

void write_report(const std::filesystem::path& path, const ExperimentReport& report);

/// Worker count from JETKERNEL_THREADS (unset or 0 = hardware concurrency).
std::size_t thread_count();

/// fn(0..n-1) on up to thread_count() threads; results stay in index order.
/// The first exception (by index) is rethrown after all workers finish.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace jetkernel
