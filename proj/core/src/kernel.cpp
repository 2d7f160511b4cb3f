#include "afc/kernel.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "afc/errors.hpp"

namespace afc {

void AmcKernel::validate(double tol) const {
  const int n = size();
  if (transient.rows() != n || transient.cols() != n) {
    throw NumericalError("kernel shape mismatch");
  }
  for (int i = 0; i < n; ++i) {
    double sum = leak(i);
    if (leak(i) < -tol || leak(i) > 1.0 + tol) {
      throw NumericalError("leak out of [0,1] at row " + std::to_string(i));
    }
    for (int j = 0; j < n; ++j) {
      const double q = transient(i, j);
      if (q < -tol || q > 1.0 + tol) {
        throw NumericalError("transient entry out of [0,1] at (" +
                             std::to_string(i) + "," + std::to_string(j) +
                             ")");
      }
      sum += q;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw NumericalError("row " + std::to_string(i) +
                           " does not sum to 1 (sum=" + std::to_string(sum) +
                           ")");
    }
  }
}

std::uint64_t AmcKernel::content_hash() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](const double* data, std::size_t count) {
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < count * sizeof(double); ++i) {
      h ^= bytes[i];
      h *= 0x100000001B3ULL;
    }
  };
  mix(transient.data(), static_cast<std::size_t>(transient.size()));
  mix(leak.data(), static_cast<std::size_t>(leak.size()));
  return h;
}

void write_kernel_csv(const AmcKernel& kernel, std::ostream& out) {
  const int n = kernel.size();
  char buf[64];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", kernel.transient(i, j));
      out << buf << ',';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", kernel.leak(i));
    out << buf << '\n';
  }
}

AmcKernel read_kernel_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      row.push_back(std::stod(cell));
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  AmcKernel kernel{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n + 1) {
      throw ConfigError("kernel CSV row " + std::to_string(i + 1) +
                        " has wrong column count");
    }
    for (int j = 0; j < n; ++j) {
      kernel.transient(i, j) = rows[i][j];
    }
    kernel.leak(i) = rows[i][n];
  }
  return kernel;
}

}  // namespace afc
