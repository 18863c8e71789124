//! The weight `V`, the approximate functional equation at `s = 1/2`, and
//! sanity evaluations for `s > 1`.

pub mod afe;
pub mod quadrature;
pub mod series;
pub mod tail;
pub mod weight;

pub use afe::{afe_central_value, balanced_y, AfeSettings, LEvaluator, LValueRecord};
pub use series::{euler_product, series_at_s, SeriesValue};
pub use tail::TailModel;
pub use weight::{certify_weight, v_weight, v_weight_contour, ContourValue, QuadratureParams, WeightCertificate};
