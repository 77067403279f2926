#include "sphqi/matrix_kernel.hpp"

namespace sphqi {

Mat3 eval_div(const ZonalKernel& k, const UnitVector3& x,
              const UnitVector3& y) {
  const ZonalTensors zt = zonal_tensors(x, y);
  const ScalarKernelValues v = kernel_values(k, zt.t);
  return v.cq * zt.Qt + v.kappa * zt.R;
}

Mat3 eval_curl(const ZonalKernel& k, const UnitVector3& x,
               const UnitVector3& y) {
  const ZonalTensors zt = zonal_tensors(x, y);
  const ScalarKernelValues v = kernel_values(k, zt.t);
  return v.cq * zt.Vt + v.kappa * zt.W;
}

MatrixKernelEval eval_combined(const ZonalKernel& k, const UnitVector3& x,
                               const UnitVector3& y) {
  const ZonalTensors zt = zonal_tensors(x, y);
  const ScalarKernelValues v = kernel_values(k, zt.t);
  MatrixKernelEval e;
  e.div = v.cq * zt.Qt + v.kappa * zt.R;
  e.curl = v.cq * zt.Vt + v.kappa * zt.W;
  e.combined = e.div + e.curl;
  return e;
}

}  // namespace sphqi
