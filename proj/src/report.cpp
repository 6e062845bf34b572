#include "jetkernel/report.hpp"

#include <cstdlib>
#include <sstream>

#include "jetkernel/document.hpp"

namespace jetkernel {

nlohmann::json ExperimentReport::to_json() const {
  return {{"schema_version", kSchemaVersion},
          {"kind", kind},
          {"inputs", inputs},
          {"results", results},
          {"environment",
           {{"tool", "jetkernel"},
            {"version", kToolVersion},
            {"field_surrogate",
             "exact arithmetic over Q (GMP rationals) or F_p stands in for an uncountable base field; "
             "'very general' is sampled by seeded integer coefficients"}}}};
}

std::string dims_csv(const KernelReport& report) {
  std::ostringstream out;
  out << "degree,dim,stabilized\n";
  for (std::size_t n = 0; n < report.dims.size(); ++n) {
    const bool stable = report.stabilized_at && n >= *report.stabilized_at;
    out << n << ',' << report.dims[n] << ',' << (stable ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string scalar_json(const Scalar& s) {
  if (!s.field().is_rational()) return s.to_string();
  const mpq_class& q = s.rational();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

nlohmann::json kernel_report_json(const KernelReport& report, bool include_bases) {
  nlohmann::json j = {{"field", report.field.name()},
                      {"max_degree", report.max_degree},
                      {"plateau", report.plateau},
                      {"dims", report.dims},
                      {"stabilized_at", nullptr},
                      {"inclusions_verified", report.inclusions_verified},
                      {"soundness_verified", report.soundness_verified},
                      {"note", report.note}};
  if (report.stabilized_at) j["stabilized_at"] = *report.stabilized_at;
  if (include_bases && !report.bases.empty()) {
    nlohmann::json top = nlohmann::json::array();
    for (const auto& v : report.bases.back()) {
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& p : v.entries()) entries.push_back(p.to_string());
      top.push_back(entries);
    }
    j["basis_at_max_degree"] = top;
  }
  return j;
}

nlohmann::json certificate_json(const ZeroKernelCertificate& cert) {
  return {{"degree", cert.degree},
          {"row_indices", cert.row_indices},
          {"col_indices", cert.col_indices},
          {"minor_value", scalar_json(cert.minor_value)}};
}

void write_report(const std::filesystem::path& path, const ExperimentReport& report) {
  write_file_atomic(path, report.to_json().dump(2) + "\n");
}

std::size_t thread_count() {
  if (const char* env = std::getenv("JETKERNEL_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace jetkernel
