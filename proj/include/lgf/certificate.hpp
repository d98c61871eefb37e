#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lgf {

// Creative-telescoping certificate files:
//
//   # lgf-cert d=<d> integrate=<v>[,<v>...]
//   annihilator            (optional, repeatable: first-order operators that
//   <operator>              define the function instead of the fcc integrand)
//   telescoper
//   <operator>
//   delta <v>
//   <operator>
//
// Variables are x1..xd and z. Every line inside a block is a complete operator
// expression and the block is the sum of its lines, so arbitrarily large
// certificates are checked line by line without holding a block in memory.
struct CertificateReport {
  int dimension = 0;
  std::vector<std::string> integration_variables;
  bool custom_function = false;  // annihilator blocks were given
  long operator_lines = 0;
  bool holds = false;
  // Leading term of the residual numerator when the identity fails.
  std::string first_failing_term;
  // Numeric evaluation at random rational points, independent of the
  // symbolic route; points that hit a pole of some line are skipped.
  int spot_points = 0;
  bool spot_check_agrees = true;
};

// Throws ValidationError for malformed input (with the line number).
CertificateReport verify_certificate(std::istream& is, std::optional<int> expected_dimension = std::nullopt,
                                     int spot_points = 5);
CertificateReport verify_certificate_file(const std::string& path,
                                          std::optional<int> expected_dimension = std::nullopt,
                                          int spot_points = 5);

}  // namespace lgf
