#ifndef DELTAPROP_GRID_EVAL_HPP
#define DELTAPROP_GRID_EVAL_HPP

#include <functional>
#include <vector>

#include "deltaprop/dynamics.hpp"
#include "deltaprop/kernels.hpp"

namespace deltaprop::grid_eval {

/// Evaluation grids are embarrassingly parallel; every routine here comes
/// in an OpenMP flavour and a serial reference flavour that runs the
/// identical loop body.  Results are bitwise identical.

using KernelFn =
    std::function<kernels::KernelMatrix(double x, double t, double xp, double tp)>;
using FieldFn = std::function<dynamics::Spinor(double x, double t)>;

std::vector<double> linspace(double lo, double hi, int n);

/// Kernel over the product grid xs x xps x ts, flattened with t slowest,
/// then x, then xp; each point carries n*n complex entries.
std::vector<kernels::KernelMatrix> kernel_grid(const KernelFn& kernel,
                                               const std::vector<double>& xs,
                                               const std::vector<double>& xps,
                                               const std::vector<double>& ts);
std::vector<kernels::KernelMatrix> kernel_grid_serial(
    const KernelFn& kernel, const std::vector<double>& xs,
    const std::vector<double>& xps, const std::vector<double>& ts);

std::vector<dynamics::Spinor> field_grid(const FieldFn& field,
                                         const std::vector<double>& xs,
                                         double t);
std::vector<dynamics::Spinor> field_grid_serial(const FieldFn& field,
                                                const std::vector<double>& xs,
                                                double t);

}  // namespace deltaprop::grid_eval

#endif
