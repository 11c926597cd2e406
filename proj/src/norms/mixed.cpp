#include <cmath>
#include <vector>

#include "fsl/common/error.hpp"
#include "fsl/norms/norms.hpp"

namespace fsl {

int lattice_axis(const std::vector<double>& e, int dim, int* sign) {
  if (static_cast<int>(e.size()) != dim) throw InvalidArgument("direction has wrong dimension");
  int axis = -1;
  for (int d = 0; d < dim; ++d) {
    const double c = e[d];
    if (std::abs(std::abs(c) - 1.0) < 1e-12) {
      if (axis >= 0) throw InvalidArgument("mixed norms need a lattice-axis direction");
      axis = d;
      if (sign) *sign = c > 0 ? 1 : -1;
    } else if (std::abs(c) > 1e-12) {
      throw InvalidArgument("mixed norms need a lattice-axis direction");
    }
  }
  if (axis < 0) throw InvalidArgument("mixed norms need a lattice-axis direction");
  return axis;
}

double mixed_norm(const Trajectory& u, const MixedNormSpec& spec) {
  const Grid& g = u.grid;
  if (!(spec.p >= 1.0) || !(spec.q >= 1.0)) throw InvalidArgument("mixed norm exponents must be >= 1");
  if (u.values.size() != g.size() * u.frames) throw InvalidArgument("trajectory frames do not match the grid");
  const int axis = lattice_axis(spec.e, g.dim());
  const int m = g.points();
  std::size_t stride = 1;
  for (int d = axis + 1; d < g.dim(); ++d) stride *= static_cast<std::size_t>(m);

  const bool qinf = std::isinf(spec.q);
  std::vector<double> acc(m, 0.0);
  const std::size_t block = g.size();
  const std::size_t outer = block / (stride * static_cast<std::size_t>(m));
  for (std::size_t f = 0; f < u.frames; ++f) {
    const Complex* row = u.values.data() + f * block;
    for (std::size_t o = 0; o < outer; ++o)
      for (int c = 0; c < m; ++c) {
        const Complex* line = row + (o * m + c) * stride;
        double& slot = acc[c];
        if (qinf) {
          double best = 0.0;
          for (std::size_t i = 0; i < stride; ++i) best = std::max(best, std::norm(line[i]));
          slot = std::max(slot, std::sqrt(best));
        } else if (spec.q == 2.0) {
          for (std::size_t i = 0; i < stride; ++i) slot += std::norm(line[i]);
        } else {
          for (std::size_t i = 0; i < stride; ++i) slot += std::pow(std::abs(line[i]), spec.q);
        }
      }
  }
  const double w = std::pow(g.dx(), g.dim() - 1) * u.dt;
  if (!qinf)
    for (auto& a : acc) a = std::pow(a * w, 1.0 / spec.q);

  if (std::isinf(spec.p)) {
    double best = 0.0;
    for (double a : acc) best = std::max(best, a);
    return best;
  }
  double sum = 0.0;
  for (double a : acc) sum += std::pow(a, spec.p);
  return std::pow(sum * g.dx(), 1.0 / spec.p);
}

}  // namespace fsl
