#include "lansa/errors.hpp"
#include "lansa/forward.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"

namespace lansa {

SpectralField bilinear_B(const SpectralField& u, const SpectralField& v, double alpha) {
  require_same_space(u.grid(), v.grid(), "bilinear_B");
  require_solenoidal(u, "bilinear_B(u)");
  require_solenoidal(v, "bilinear_B(v)");

  const ProductGrid pg(u.grid());
  const SpectralField m = apply_helmholtz(v, alpha);
  const GridVector uu = pg.vector(u);
  const GridVector mm = pg.vector(m);
  const GridTensor du = pg.gradient(u);
  const GridTensor dm = pg.gradient(m);

  GridVector out;
  for (int j = 0; j < 3; ++j) {
    auto& o = out.c[j];
    o.assign(pg.size(), 0.0);
    for (int i = 0; i < 3; ++i) {
      const auto& ui = uu.c[i];
      const auto& dmj_i = dm(j, i);  // d_i m_j
      const auto& mi = mm.c[i];
      const auto& dui_j = du(i, j);  // d_j u_i
      for (std::size_t p = 0; p < o.size(); ++p) o[p] += ui[p] * dmj_i[p] + dui_j[p] * mi[p];
    }
  }
  return pg.field(out);
}

SpectralField linearized_Bu(const SpectralField& u_hat, const SpectralField& w, double alpha) {
  return bilinear_B(u_hat, w, alpha) + bilinear_B(w, u_hat, alpha);
}

}  // namespace lansa
