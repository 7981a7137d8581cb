#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace majam {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Point2 = Eigen::Vector2d;
using Point3 = Eigen::Vector3d;

// Thrown whenever two operands disagree on shape.
class DimensionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

inline void require_dims(bool ok, const std::string& what)
{
    if (!ok) throw DimensionError("dimension mismatch: " + what);
}

} // namespace majam
