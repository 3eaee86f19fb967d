#include "pachsel/certificate.hpp"

#include "pachsel/errors.hpp"
#include "pachsel/hypergraph.hpp"
#include "pachsel/predicates.hpp"

namespace pachsel::selection {

std::string to_string(VerificationMode mode) {
  return mode == VerificationMode::Exhaustive ? "exhaustive" : "arrangement";
}

VerificationReport verify_certificate(const LabeledPointSet& set, const PachCertificate& cert, VerificationMode mode) {
  VerificationReport report;
  report.mode = mode;
  const std::size_t d = set.dim();
  if (cert.y.size() != d + 1 || cert.p.dim() != d) {
    report.message = "certificate does not match the point set dimension";
    return report;
  }
  for (std::size_t i = 0; i <= d; ++i) {
    for (std::size_t k = 0; k < cert.y[i].size(); ++k) {
      if (cert.y[i][k] >= set.size(i)) {
        report.message = "index " + std::to_string(cert.y[i][k]) + " out of range for color " + std::to_string(i);
        return report;
      }
      if (k > 0 && cert.y[i][k] <= cert.y[i][k - 1]) {
        report.message = "indices of color " + std::to_string(i) + " are not strictly increasing";
        return report;
      }
    }
    if (cert.y[i].empty()) report.warnings.push_back("Y_" + std::to_string(i) + " is empty; containment is vacuous");
  }

  if (mode == VerificationMode::Exhaustive) {
    std::vector<const Point*> verts(d + 1);
    for_each_tuple(cert.y, [&](std::span<const std::size_t> idx) {
      ++report.total;
      for (std::size_t c = 0; c <= d; ++c) verts[c] = &set.color(c)[idx[c]];
      if (geometry::point_in_simplex(cert.p, verts, geometry::SimplexMode::Closed))
        ++report.contained;
      else if (!report.witness)
        report.witness = std::vector<std::size_t>(idx.begin(), idx.end());
    });
    report.fraction = report.total == 0 ? Rational(1)
                                        : Rational(mpz_class(std::to_string(report.contained)),
                                                   mpz_class(std::to_string(report.total)));
    report.fraction.canonicalize();
    report.passed = report.contained == report.total;
    if (!report.passed) {
      report.message = "p is outside the rainbow simplex (";
      for (std::size_t c = 0; c <= d; ++c) report.message += (c ? "," : "") + std::to_string((*report.witness)[c]);
      report.message += ")";
    }
    return report;
  }

  std::vector<std::vector<Point>> y_points(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t k : cert.y[i]) y_points[i].push_back(set.color(i)[k]);
  try {
    const auto arr = arrangements::HyperplaneArrangement::build(cert.arrangement.hyperplanes());
    const auto result = arrangements::separation_dichotomy(cert.p, arr, y_points);
    report.passed = result.branch == arrangements::Branch::Inside;
    if (!report.passed) report.message = "p is outside the central simplex of the arrangement";
  } catch (const Error& e) {
    report.message = e.what();
  }
  report.fraction = report.passed ? Rational(1) : Rational(0);
  return report;
}

}  // namespace pachsel::selection
