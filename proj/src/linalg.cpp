#include "jetvar/linalg.hpp"

#include <Eigen/Dense>
#include <limits>

namespace jv {

double condition_number(const std::vector<double>& a, int n) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(a.data(), n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    double smin = svd.singularValues()(n - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return svd.singularValues()(0) / smin;
}

std::vector<double> solve(const std::vector<double>& a, const std::vector<double>& b, int n) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(a.data(), n, n);
    Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
    Eigen::VectorXd x = m.fullPivLu().solve(rhs);
    return std::vector<double>(x.data(), x.data() + n);
}

}  // namespace jv
