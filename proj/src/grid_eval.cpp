#include "deltaprop/grid_eval.hpp"

namespace deltaprop::grid_eval {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) v[i] = lo + i * h;
  return v;
}

namespace {

template <bool Parallel>
std::vector<kernels::KernelMatrix> kernel_grid_impl(
    const KernelFn& kernel, const std::vector<double>& xs,
    const std::vector<double>& xps, const std::vector<double>& ts) {
  const long nx = static_cast<long>(xs.size());
  const long nxp = static_cast<long>(xps.size());
  const long nt = static_cast<long>(ts.size());
  std::vector<kernels::KernelMatrix> out(nx * nxp * nt);
#pragma omp parallel for schedule(dynamic, 16) if (Parallel)
  for (long idx = 0; idx < nx * nxp * nt; ++idx) {
    const long it = idx / (nx * nxp);
    const long ix = (idx / nxp) % nx;
    const long ixp = idx % nxp;
    out[idx] = kernel(xs[ix], ts[it], xps[ixp], 0.0);
  }
  return out;
}

template <bool Parallel>
std::vector<dynamics::Spinor> field_grid_impl(const FieldFn& field,
                                              const std::vector<double>& xs,
                                              double t) {
  std::vector<dynamics::Spinor> out(xs.size());
#pragma omp parallel for schedule(dynamic, 64) if (Parallel)
  for (long i = 0; i < static_cast<long>(xs.size()); ++i) {
    out[i] = field(xs[i], t);
  }
  return out;
}

}  // namespace

std::vector<kernels::KernelMatrix> kernel_grid(const KernelFn& kernel,
                                               const std::vector<double>& xs,
                                               const std::vector<double>& xps,
                                               const std::vector<double>& ts) {
  return kernel_grid_impl<true>(kernel, xs, xps, ts);
}

std::vector<kernels::KernelMatrix> kernel_grid_serial(
    const KernelFn& kernel, const std::vector<double>& xs,
    const std::vector<double>& xps, const std::vector<double>& ts) {
  return kernel_grid_impl<false>(kernel, xs, xps, ts);
}

std::vector<dynamics::Spinor> field_grid(const FieldFn& field,
                                         const std::vector<double>& xs,
                                         double t) {
  return field_grid_impl<true>(field, xs, t);
}

std::vector<dynamics::Spinor> field_grid_serial(const FieldFn& field,
                                               const std::vector<double>& xs,
                                               double t) {
  return field_grid_impl<false>(field, xs, t);
}

}  // namespace deltaprop::grid_eval
