#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jetkernel/families.hpp"
#include "jetkernel/jets.hpp"
#include "jetkernel/kernel.hpp"

namespace jetkernel {

// ---------------------------------------------------------------- sample builders

/// r nonzero polynomials of degree <= coef_degree with coefficients in [-bound, bound].
std::vector<Poly> sample_diagonal(std::size_t nvars, std::size_t r, std::size_t coef_degree, std::uint64_t seed,
                                  std::uint64_t index, long bound = 10);

/// Member of any family mode; TriangularUnit draws its diagonal with sample_diagonal.
MatrixOperator sample_family_member(FamilyMode mode, std::size_t r, std::size_t nvars, std::size_t order,
                                    std::size_t coef_degree, std::uint64_t seed, std::uint64_t index, long bound = 10,
                                    std::optional<std::uint64_t> jitter_seed = std::nullopt);

/// Polynomial of degree <= degree, dense in the monomials, coefficients in [-bound, bound].
Poly sample_poly(const FieldSpec& field, std::size_t nvars, std::size_t degree, SeededRng& rng, long bound);
PolyVec sample_vector(const FieldSpec& field, std::size_t nvars, std::size_t r, std::size_t degree, SeededRng& rng,
                      long bound);

/// Shape of sample `index` when sweeping r in 1..r_max and nvars in 1..nvars_max.
struct SampleShape {
  std::size_t r = 1;
  std::size_t nvars = 1;
};
SampleShape sweep_shape(std::uint64_t index, std::size_t r_max, std::size_t nvars_max);

/// One "[ a , b ]" string per row, for embedding operators in reports.
std::vector<std::string> format_operator_lines(const MatrixOperator& op);

// ---------------------------------------------------------------- experiments

struct Outcome {
  /// False when a verification suite found a counterexample.
  bool passed = true;
  std::size_t failures = 0;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::string summary;
};

struct SuiteConfig {
  std::string suite;
  std::size_t samples = 0;
  std::uint64_t seed = 7;
  long bound = 10;
  std::size_t r = 0;
  std::size_t nvars = 0;
  std::optional<std::size_t> order;
  std::size_t coef_degree = 2;
  std::optional<std::size_t> nmax;
  std::vector<std::uint64_t> primes;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Fills suite-specific defaults (sample counts, shapes, degrees, primes).
SuiteConfig with_defaults(SuiteConfig config);

/// Runs one named suite; see suite_names().
/// Throws std::invalid_argument for an unknown suite name.
Outcome run_suite(const SuiteConfig& config);

struct FamilyScanConfig {
  FamilyMode mode = FamilyMode::Universal;
  std::size_t r = 2;
  std::size_t nvars = 1;
  std::size_t order = 2;
  std::size_t coef_degree = 2;
  std::size_t samples = 50;
  std::uint64_t seed = 7;
  long bound = 10;
  std::size_t nmax = 25;
  std::size_t plateau = 3;
  std::optional<std::uint64_t> jitter_seed;
};

/// Kernel scans over seeded family members; zero kernels carry a certificate
/// at nmax, nonzero ones the kernel basis at nmax.
Outcome scan_family(const FamilyScanConfig& config);

/// Kernel dimensions of each operator at `degree` over Q and over F_p for each
/// prime; fails when some good prime gives a smaller dimension than Q.
Outcome modp_study(const std::vector<MatrixOperator>& ops, std::size_t degree, const std::vector<std::uint64_t>& primes);

/// One-variable constant-kernel triangular operators (d^[1] diagonal, r cycling
/// through 1..3) with integer coefficients; the default mod-p study input.
std::vector<MatrixOperator> modp_default_operators(std::size_t samples, std::uint64_t seed, long bound);

/// A o D for a seeded unitriangular A (degree <= a_degree entries), with the
/// kernel of D up to nmax transported through A^-1 and checked.
Outcome conjugation_study(const MatrixOperator& op, std::uint64_t seed, std::size_t a_degree, std::size_t nmax);

/// Dimension table of base + t * direction at degree n for t in t_values.
Outcome semicontinuity_study(const MatrixOperator& base, const MatrixOperator& direction,
                             const std::vector<Scalar>& t_values, std::size_t degree);

}  // namespace jetkernel
