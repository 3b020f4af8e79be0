//! Wall-crossing from the quasimap to the Gromov-Witten potential, the mirror
//! map, and extraction of the genus-1 invariants `N_d`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ifunction::{expand_i, extract_i0_i1, GeometrySpec};
use crate::invariants::{
    b0_worder, c1_matches_mirror, diagnostics, initial_constants_from, quasimap_potential,
    DiagnosticSeries, InitialConstants,
};
use crate::series::{int, PowerSeries, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialReport {
    pub spec: GeometrySpec,
    pub order: usize,
    pub c: InitialConstants,
    pub i0: PowerSeries,
    pub i1: PowerSeries,
    /// Quasimap potential in `q`.
    pub f_qm: PowerSeries,
    /// Gromov-Witten potential written in `q`, i.e. `F^∞(Q(q))`.
    pub f_gw_q: PowerSeries,
    pub q_of_q: PowerSeries,
    /// Inverse mirror map `q(Q)`.
    pub q_of_big_q: PowerSeries,
    /// `N_1..N_D`
    pub n_d: Vec<Rational>,
    pub chi_top: Option<Rational>,
    pub chern_coeff: Rational,
    pub diagnostics: DiagnosticSeries,
    /// Whether `C_1 = 1 + q d/dq (I_1/I_0)` held for this geometry.
    pub c1_mirror_identity: bool,
}

/// `∫_X H ∪ c_{dim X - 1}(T_X)` for `m <= 1`, zero when `m >= 2` (no
/// correction term enters there).
///
/// Integration over the total space divides by the Euler class `∏ (-l'_b H)`
/// of the fibre, and `∫_{X'}` is `∏ l_a ∫_{P^{n-1}} H^r (·)`, so the value is
/// `(∏ l_a / ∏ (-l'_b)) [H^{n-r-2+m}] (1+H)^n ∏ (1 - l'_b H) / ∏ (1 + l_a H)`.
/// For `(4,[2],[2])` this is `binom(4,2) - 4/2 - 4/2 = 2`.
pub fn chern_coefficient(spec: &GeometrySpec) -> Rational {
    if spec.m() >= 2 {
        return Rational::zero();
    }
    let degree = spec.n as i64 - spec.r() as i64 - 2 + spec.m() as i64;
    if degree < 0 {
        return Rational::zero();
    }
    let degree = degree as usize;
    let mut prefactor = Rational::one();
    for &la in &spec.l {
        prefactor *= int(la as i64);
    }
    for &lb in &spec.lp {
        prefactor /= int(-(lb as i64));
    }
    prefactor * tangent_chern_series(spec, degree).coeff(degree)
}

/// Total Chern class `(1+H)^n ∏ (1 - l'_b H) / ∏ (1 + l_a H)` of `T_X`
/// restricted to `X'`, as a series in `H`.
fn tangent_chern_series(spec: &GeometrySpec, order: usize) -> PowerSeries {
    let mut total = PowerSeries::from_i64s(&[1, 1], order).pow(spec.n);
    for &la in &spec.l {
        let factor = PowerSeries::from_i64s(&[1, la as i64], order);
        total = total.div(&factor).expect("unit constant term");
    }
    for &lb in &spec.lp {
        total = total.mul(&PowerSeries::from_i64s(&[1, -(lb as i64)], order));
    }
    total
}

/// Topological Euler characteristic of the complete intersection for `m = 0`:
/// `(∏ l_a) [H^{n-1-r}] (1+H)^n / ∏ (1 + l_a H)`. `None` when `m >= 1`.
pub fn euler_characteristic(spec: &GeometrySpec) -> Option<Rational> {
    if spec.m() >= 1 {
        return None;
    }
    let dim = spec.n as i64 - 1 - spec.r() as i64;
    if dim < 0 {
        return Some(Rational::zero());
    }
    let dim = dim as usize;
    let mut degree = Rational::one();
    for &la in &spec.l {
        degree *= int(la as i64);
    }
    Some(degree * tangent_chern_series(spec, dim).coeff(dim))
}

/// `Q(q) = q exp(I_1 / I_0)`.
pub fn mirror_map(i0: &PowerSeries, i1: &PowerSeries) -> Result<PowerSeries> {
    let ratio = i1.div(i0)?;
    let g = ratio.exp_nilconst()?;
    Ok(g.shift(1))
}

/// Applies the wall-crossing correction for the number of bundle summands `m`
/// and extracts `N_d` by inverting the mirror map.
pub fn gw_potential(
    spec: &GeometrySpec,
    c: &InitialConstants,
    i0: &PowerSeries,
    i1: &PowerSeries,
    f_qm: &PowerSeries,
    order: usize,
) -> Result<PotentialReport> {
    let chern_coeff = chern_coefficient(spec);
    let chi_top = euler_characteristic(spec);
    let i0 = i0.truncate(order);
    let i1 = i1.truncate(order);
    let f_qm = f_qm.truncate(order);

    let f_gw_q = match spec.m() {
        0 => {
            let chi = chi_top.clone().unwrap_or_else(Rational::zero);
            let log_i0 = i0.log_unit()?.scale(&(chi / int(24)));
            let ratio = i1.div(&i0)?.scale(&(chern_coeff.clone() / int(24)));
            &(&log_i0 + &ratio) + &f_qm
        }
        1 => &i1.scale(&(chern_coeff.clone() / int(24))) + &f_qm,
        _ => f_qm.clone(),
    };

    let q_of_q = mirror_map(&i0, &i1)?;
    let q_of_big_q = q_of_q.reversion()?;
    let f_of_big_q = f_gw_q.compose(&q_of_big_q)?;
    let n_d = f_of_big_q.coeffs()[1..].to_vec();

    let diagnostics = diagnostics(spec, c, order)?;
    let c1_mirror_identity = c1_matches_mirror(c, &i0, &i1)?;

    Ok(PotentialReport {
        spec: spec.clone(),
        order,
        c: c.clone(),
        i0,
        i1,
        f_qm,
        f_gw_q,
        q_of_q,
        q_of_big_q,
        n_d,
        chi_top,
        chern_coeff,
        diagnostics,
        c1_mirror_identity,
    })
}

/// Forward check `Σ_d N_d Q(q)^d = F_gw(q)`, independent of the reversion.
pub fn nd_crosscheck(f_gw_q: &PowerSeries, q_of_q: &PowerSeries, n_d: &[Rational]) -> Result<bool> {
    let order = f_gw_q.order().min(q_of_q.order());
    if n_d.len() < order {
        return Err(Error::InvalidSpec(format!(
            "need {order} invariants, got {}",
            n_d.len()
        )));
    }
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(n_d.iter().take(order).cloned());
    let generating = PowerSeries::new(coeffs);
    let forward = generating.compose(&q_of_q.truncate(order))?;
    Ok(forward == f_gw_q.truncate(order))
}

/// Full pipeline for one geometry up to `q^order`.
pub fn compute_report(spec: &GeometrySpec, order: usize) -> Result<PotentialReport> {
    spec.validate()?;
    let b0 = expand_i(spec, order, b0_worder(spec.n))?;
    let (i0, i1) = extract_i0_i1(&b0)?;
    let c = initial_constants_from(spec, &b0)?;
    let f_qm = quasimap_potential(spec, &c, order)?;
    gw_potential(spec, &c, &i0, &i1, &f_qm, order)
}
