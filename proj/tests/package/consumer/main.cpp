#include <cmath>
#include <cstdio>

#include "nfield/grid.hpp"
#include "nfield/kernels.hpp"

int main() {
  const nfield::GridSpec s(5, 64);
  const auto k = nfield::sample_kernel(nfield::DoGParams::canonical(), s);
  const double mu0 = nfield::constants(nfield::DoGParams::canonical()).mu_0;
  std::printf("mu_0 %g, kernel L1 %.3f\n", mu0, nfield::norm(k, nfield::Norm::L1));
  return std::abs(mu0 - 2.0) < 1e-12 ? 0 : 1;
}
