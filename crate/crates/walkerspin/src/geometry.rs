//! A Walker metric bundled with the frame data every analysis needs.

use crate::curvature::{walker_curvature_components, CurvatureSpinors};
use crate::spin::{walker_closed_form, SpinCoefficients};
use crate::walker::{assemble_metric, christoffel, walker_tetrad, Christoffel, MetricTensor, Tetrad, WalkerMetric};

#[derive(Clone, Debug)]
pub struct WalkerGeometry {
    pub metric: WalkerMetric,
    pub tensor: MetricTensor,
    pub christoffel: Christoffel,
    pub tetrad: Tetrad,
    pub coefficients: SpinCoefficients,
    pub curvature: CurvatureSpinors,
}

impl WalkerGeometry {
    pub fn new(w: WalkerMetric) -> WalkerGeometry {
        let tensor = assemble_metric(&w);
        let christoffel = christoffel(&tensor);
        WalkerGeometry {
            tetrad: walker_tetrad(&w),
            coefficients: walker_closed_form(&w),
            curvature: walker_curvature_components(&w),
            metric: w,
            tensor,
            christoffel,
        }
    }
}
