#pragma once
// Free inverse and implicit function computation.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "freenc/oracle.hpp"
#include "freenc/series.hpp"

namespace freenc {

// Degree-one action on the letter space: row and column order x_1 (, x_1^*),
// x_2, ... The starred rows are the involution of the plain rows.
struct LinearPart {
  std::vector<Letter> letters;
  Eigen::MatrixXcd matrix;
};
LinearPart linear_part(const SeriesTuple& f);

// H with F o H = id and H o F = id up to degree D. Throws SingularError when
// the linear part has |det| <= 1e-10 and DomainError for nonzero constants.
SeriesTuple formal_inverse(const SeriesTuple& f, std::size_t D);

// Real coordinates of a tuple: entries row-major per component, followed by
// imaginary parts for complex tuples.
Eigen::VectorXd to_coordinates(const MatTuple& x, bool complex);
MatTuple from_coordinates(const Eigen::VectorXd& v, std::size_t g, std::size_t n, bool complex);
// Jacobian in real coordinates, assembled along the structural directions.
Eigen::MatrixXd real_jacobian(const FreeMapOracle& f, const MatTuple& x, bool complex);

struct NewtonOptions {
  double tol = 1e-10;
  std::size_t maxit = 50;
  std::size_t max_halvings = 20;
  double max_condition = 1e14;
  bool trust_radius = true;
};

struct NewtonStep {
  double residual = 0.0;
  double step = 0.0;
};

struct NewtonTrace {
  std::vector<NewtonStep> iterates;
  bool converged = false;
  MatTuple x;
  double condition = 1.0;      // condition of the last Jacobian
  double trust_radius = 0.0;   // largest tested r with ||I - J0^-1 J|| < 1/2
  std::string message;
};

// Solves f(X) = Y by damped Newton from x0 (zero when omitted).
NewtonTrace newton_invert(const FreeMapOracle& f, const MatTuple& y, const MatTuple& x0,
                          const NewtonOptions& opts = {});
NewtonTrace newton_invert(const FreeMapOracle& f, const MatTuple& y, const NewtonOptions& opts = {});

// f has nx + ny variables (x first) and ny outputs. Formal mode returns h
// with f(x, h(x)) = 0 up to degree D, via the augmented map (x, y) -> (x, f).
SeriesTuple implicit_solve(const SeriesTuple& f, std::size_t nx, std::size_t D);
// Numeric mode solves f(xhat, y) = 0 for y from y0.
NewtonTrace implicit_solve(const FreeMapOracle& f, std::size_t nx, const MatTuple& xhat, const MatTuple& y0,
                           const NewtonOptions& opts = {});

struct InjectivityReport {
  bool applicable = false;   // f(X1) = f(X2) with X1 != X2
  double value_gap = 0.0;    // ||f(X1) - f(X2)||
  double offdiag_image = 0.0;  // ||Df(X1+X2)(E)|| / ||E|| for E = [[0,D],[D,0]], D = X1 - X2
  double min_singular_value = 0.0;  // of the Jacobian at X1 (+) X2
  std::string note;
};
InjectivityReport injectivity_check(const FreeMapOracle& f, const MatTuple& x1, const MatTuple& x2,
                                    double tol = 1e-8);

}  // namespace freenc
