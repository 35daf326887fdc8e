// Right multiplication by separable phases e^{I phi(x)}, phi(x) = sum_a phi_a(x_a).
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "clcst/grid.hpp"

namespace clcst::detail {

/// e^{i sum_a phi(a, t_a)} at every lattice point, where t_a is the sample
/// position on axis a (spatial coordinate or scaled frequency).
std::vector<std::complex<double>> separable_phase(const GridSignal& f,
                                                  const std::function<double(int, double)>& phi);

/// out += scale * f * (cos + I sin) pointwise, with the per-point phases above.
void apply_phase_right(const GridSignal& f, const std::vector<std::complex<double>>& phase, double scale,
                       GridSignal& out);

}  // namespace clcst::detail
