#pragma once
// Scripted experiments reproducing the worked examples.

#include <cstdint>
#include <string>
#include <vector>

#include "freenc/mateval.hpp"
#include "freenc/ncpoly.hpp"

namespace freenc {

struct DemoCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct DemoReport {
  std::string name;
  std::vector<std::string> lines;
  std::vector<DemoCheck> checks;

  bool passed() const;
};

struct DemoOptions {
  std::size_t n = 3;         // nonuniform level parameter
  std::size_t m = 3;         // cont: exponent 1/m
  std::size_t k = 1;         // ck: exponent k + 1/2
  std::uint64_t seed = 0;
  std::size_t count = 50;    // roundtrip sample size
};

std::vector<std::string> demo_names();
// Throws Error for unknown names.
DemoReport run_demo(const std::string& name, const DemoOptions& opts = {});

// Random polynomial in g variables with at least one term of degree `degree`.
NCPoly random_ncpoly(std::size_t g, std::size_t degree, Involution mode, Rng& rng,
                     std::size_t max_terms = 6);

// Central difference quotient of order j at 0 along x, step h:
// sum_i (-1)^i C(j,i) f((j/2 - i) h x) / h^j.
double central_difference_quotient(const class FreeMapOracle& f, const MatTuple& x, int order, double h);

}  // namespace freenc
