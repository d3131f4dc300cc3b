#pragma once

#include <complex>

#include <Eigen/Dense>

namespace phaseless {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Element of H = C^n.
using ComplexVector = Eigen::VectorXcd;
/// Element of the realification H_R = R^{2n}, laid out as (Re x | Im x).
using RealifiedVector = Eigen::VectorXd;
/// Length-m list of real measurements.
using MeasurementVector = Eigen::VectorXd;

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

}  // namespace phaseless
