//! GARCH(1,1) volatility modelling with a signed-metric extension.
//!
//! The crate has five layers:
//!
//! * [`series`] — price ingestion, returns, sample moments;
//! * [`garch`] — the classical GARCH(1,1) filter, Gaussian QMLE and simulator;
//! * [`minkowski`] — the metric-coefficient flow that relaxes σ² > 0, with
//!   regime classification, shock extraction and light-cone membership;
//! * [`stylized`] — volatility-clustering diagnostics: absolute-return
//!   autocorrelation, power-law fitting and the Minkowski embedding of the
//!   ACF curve;
//! * [`dynamics`] — numerical checks of the integrable-systems layer: the
//!   Nahm flow on su(2) triples, Lax-polynomial isospectrality, sine-Gordon
//!   kinks in supply/demand coordinates and the Pauli trader algebra.
//!
//! Everything is a pure function over immutable values; nothing here spawns
//! threads behind your back or touches global state, so all APIs are safe to
//! call concurrently.

pub mod dynamics;
pub mod garch;
pub mod mat2;
pub mod minkowski;
mod optim;
pub mod series;
pub mod stylized;

pub use garch::{GarchFit, GarchParams, SimConfig, VariancePath};
pub use mat2::Mat2;
pub use minkowski::{MetricParams, MetricPath, Regime};
pub use series::{MomentSummary, PriceSeries, ReturnKind, ReturnSeries};
pub use stylized::{AcfCurve, MinkowskiEmbedding, PowerLawFit};
