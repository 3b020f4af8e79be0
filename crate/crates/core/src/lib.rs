//! Exact elliptic quasimap and genus-1 Gromov-Witten potentials of local
//! Calabi-Yau complete intersections in projective space.
//!
//! The pipeline runs entirely over exact rationals:
//!
//! 1. [`ifunction::expand_i`] expands the I-function in `q` and `w = 1/z`
//!    inside `Q[H]/(H^n - 1)`.
//! 2. [`invariants::initial_constants_from`] runs the `C_k` recursion and
//!    [`invariants::quasimap_potential`] assembles the closed form.
//! 3. [`wallcross::gw_potential`] applies the wall-crossing correction,
//!    inverts the mirror map, and reads off `N_d`.

pub mod error;
pub mod ifunction;
pub mod invariants;
pub mod json;
pub mod ring;
pub mod selfcheck;
pub mod series;
pub mod wallcross;

pub use error::{Error, Result};
pub use ifunction::{expand_i, extract_i0_i1, pf_check, GeometrySpec};
pub use invariants::{
    compute_ck, diagnostics, quasimap_potential, vert_loop_consistency, DiagnosticSeries,
    InitialConstants,
};
pub use ring::{HPoly, IExpansion};
pub use series::{PowerSeries, Rational};
pub use wallcross::{
    chern_coefficient, compute_report, euler_characteristic, gw_potential, mirror_map,
    nd_crosscheck, PotentialReport,
};
