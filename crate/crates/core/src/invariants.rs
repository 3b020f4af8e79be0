//! Initial constants `C_k`, the closed-form quasimap potential, and the
//! series `L`, `μ`, `R_0`, `Loop` behind it.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::ifunction::{expand_i, GeometrySpec};
use crate::ring::IExpansion;
use crate::series::{binomial, int, rat, PowerSeries, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialConstants {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    /// `C_0..C_{n-1}`
    pub c: Vec<PowerSeries>,
}

impl InitialConstants {
    pub fn get(&self, k: usize) -> &PowerSeries {
        &self.c[k]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosticSeries {
    pub l: PowerSeries,
    pub mu: PowerSeries,
    pub r0: PowerSeries,
    pub loop_series: PowerSeries,
    pub vert_primitive: PowerSeries,
}

/// `w`-order used for `B_0`: enough for `I_1` at `w^1` and for `n - 1`
/// recursion steps to still see `w^0`.
pub fn b0_worder(n: usize) -> usize {
    n.max(1)
}

pub fn compute_ck(spec: &GeometrySpec, order: usize) -> Result<InitialConstants> {
    let b0 = expand_i(spec, order, b0_worder(spec.n))?;
    initial_constants_from(spec, &b0)
}

/// Runs `B_k = (H + z q d/dq) B_{k-1} / C_{k-1}` starting from `B_0` and reads
/// `C_k` as the `H^k` coefficient of `B_k` at `w^0`.
pub fn initial_constants_from(spec: &GeometrySpec, b0: &IExpansion) -> Result<InitialConstants> {
    let n = spec.n;
    let mut c = Vec::with_capacity(n);
    let mut b = b0.clone();
    c.push(b.extract_hk_at_w0(0)?);
    for k in 1..n {
        let normalized = b.mul_scalar_series(&c[k - 1].invert()?);
        b = normalized.apply_h_plus_zqddq()?;
        c.push(b.extract_hk_at_w0(k)?);
    }
    Ok(InitialConstants {
        n,
        r: spec.r(),
        m: spec.m(),
        c,
    })
}

/// `(3(n-1-r-m)^2 + n - r + m - 3) / 48`, the coefficient of `-log(1 - κq)`.
pub fn discriminant_coefficient(spec: &GeometrySpec) -> Rational {
    let (n, r, m) = (spec.n as i64, spec.r() as i64, spec.m() as i64);
    let e = n - 1 - r - m;
    rat(3 * e * e + n - r + m - 3, 48)
}

fn log_discriminant(spec: &GeometrySpec, order: usize) -> Result<PowerSeries> {
    let mut disc = PowerSeries::one(order);
    if order >= 1 {
        disc.set_coeff(1, -spec.kappa());
    }
    disc.log_unit()
}

/// `Σ_{k=m}^{n-r-2} binom(n-r-k, 2) log C_k`
fn weighted_log_ck(spec: &GeometrySpec, c: &InitialConstants, order: usize) -> Result<PowerSeries> {
    let mut acc = PowerSeries::zero(order);
    for k in spec.ck_range() {
        let term = c.get(k).truncate(order).log_unit()?;
        acc = &acc + &term.scale(&spec.ck_weight(k));
    }
    Ok(acc)
}

/// The elliptic quasimap potential
/// `-(3(n-1-r-m)^2 + n-r+m-3)/48 · log(1 - κq) - ½ Σ_{k=m}^{n-r-2} binom(n-r-k, 2) log C_k`.
pub fn quasimap_potential(
    spec: &GeometrySpec,
    c: &InitialConstants,
    order: usize,
) -> Result<PowerSeries> {
    let disc = log_discriminant(spec, order)?.scale(&-discriminant_coefficient(spec));
    let sum = weighted_log_ck(spec, c, order)?.scale(&rat(-1, 2));
    Ok(&disc + &sum)
}

pub fn diagnostics(
    spec: &GeometrySpec,
    c: &InitialConstants,
    order: usize,
) -> Result<DiagnosticSeries> {
    let n = spec.n as i64;
    let (r, m) = (spec.r() as i64, spec.m() as i64);
    let log_disc = log_discriminant(spec, order)?;

    let log_l = log_disc.scale(&rat(-1, n));
    let l = log_l.exp_nilconst()?;
    let mu = (&l - &PowerSeries::one(order)).integrate_over_x()?;
    let log_r0 = log_l.scale(&rat(r - m + 1, 2));
    let r0 = log_r0.exp_nilconst()?;

    let inv_sum: Rational = spec
        .l
        .iter()
        .chain(&spec.lp)
        .map(|&d| rat(1, d as i64))
        .fold(Rational::zero(), |a, b| a + b);
    let e = n - 1 - r - m;
    let mu_coeff = rat(n, 24) * (int(n - 1) - int(2) * &inv_sum);
    let disc_coeff = rat(3 * e * e + n - 2, 24);
    let loop_series =
        &(&mu.scale(&mu_coeff) - &log_disc.scale(&disc_coeff)) - &weighted_log_ck(spec, c, order)?;

    let vert_mu_coeff = (int(n) * &inv_sum - binomial(n, 2)) / int(24);
    let vert_primitive = &log_r0.scale(&rat(-n, 24)) + &mu.scale(&vert_mu_coeff);

    Ok(DiagnosticSeries {
        l,
        mu,
        r0,
        loop_series,
        vert_primitive,
    })
}

/// Checks `F = vert_primitive + ½ loop` exactly to the common truncation,
/// the integrated form of `q dF/dq = Σ Vert + Σ Loop`.
pub fn vert_loop_consistency(diag: &DiagnosticSeries, potential: &PowerSeries) -> bool {
    let rhs = &diag.vert_primitive + &diag.loop_series.scale(&rat(1, 2));
    let order = rhs.order().min(potential.order());
    rhs.truncate(order) == potential.truncate(order)
}

/// Whether `C_1 = 1 + q d/dq (I_1 / I_0)` to the common truncation.
pub fn c1_matches_mirror(c: &InitialConstants, i0: &PowerSeries, i1: &PowerSeries) -> Result<bool> {
    if c.c.len() < 2 {
        return Ok(false);
    }
    let ratio = i1.div(i0)?;
    let expected = &PowerSeries::one(ratio.order()) + &ratio.qddq();
    let order = expected.order().min(c.c[1].order());
    Ok(expected.truncate(order) == c.c[1].truncate(order))
}

pub(crate) fn all_start_at_one(c: &InitialConstants) -> bool {
    c.c.iter().all(|s| s.constant_term().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> GeometrySpec {
        GeometrySpec::new(4, vec![2], vec![2]).unwrap()
    }

    fn conifold() -> GeometrySpec {
        GeometrySpec::new(2, vec![], vec![1, 1]).unwrap()
    }

    #[test]
    fn example_initial_constants() {
        let c = compute_ck(&example(), 3).unwrap();
        assert_eq!(c.c.len(), 4);
        assert_eq!(c.c[0], PowerSeries::one(3));
        assert_eq!(c.c[1], PowerSeries::from_i64s(&[1, 4, 36, 400], 3));
        assert!(all_start_at_one(&c));
    }

    #[test]
    fn conifold_initial_constants() {
        let c = compute_ck(&conifold(), 6).unwrap();
        assert_eq!(c.c, vec![PowerSeries::one(6), PowerSeries::one(6)]);
    }

    #[test]
    fn example_potential() {
        let spec = example();
        let c = compute_ck(&spec, 3).unwrap();
        let f = quasimap_potential(&spec, &c, 3).unwrap();
        assert_eq!(
            f,
            PowerSeries::new(vec![int(0), rat(-2, 3), rat(-10, 3), rat(-224, 9)])
        );
        // -(1/12) log(1 - 16q) - (1/2) log C_1
        let disc = PowerSeries::from_i64s(&[1, -16], 3).log_unit().unwrap();
        let structural = &disc.scale(&rat(-1, 12)) + &c.c[1].log_unit().unwrap().scale(&rat(-1, 2));
        assert_eq!(f, structural);
    }

    #[test]
    fn conifold_potential() {
        let spec = conifold();
        let c = compute_ck(&spec, 5).unwrap();
        let f = quasimap_potential(&spec, &c, 5).unwrap();
        let expected = PowerSeries::from_i64s(&[1, -1], 5)
            .log_unit()
            .unwrap()
            .scale(&rat(-1, 12));
        assert_eq!(f, expected);
        assert_eq!(discriminant_coefficient(&spec), rat(1, 12));
    }

    #[test]
    fn example_diagnostics() {
        let spec = example();
        let c = compute_ck(&spec, 6).unwrap();
        let diag = diagnostics(&spec, &c, 6).unwrap();
        let disc = PowerSeries::from_i64s(&[1, -16], 6);
        assert_eq!(diag.l, disc.pow_rational(&rat(-1, 4)).unwrap());
        assert_eq!(diag.r0, disc.pow_rational(&rat(-1, 8)).unwrap());
        assert!(diag.mu.constant_term().is_zero());
        assert!(diag.loop_series.constant_term().is_zero());
        // L^n (1 - κq) = 1, R0^2 = L^{r-m+1}
        assert_eq!(&diag.l.pow(4) * &disc, PowerSeries::one(6));
        assert_eq!(diag.r0.pow(2), diag.l);
    }

    #[test]
    fn consistency_holds_and_detects_perturbation() {
        let spec = GeometrySpec::new(6, vec![2], vec![2, 2]).unwrap();
        let c = compute_ck(&spec, 6).unwrap();
        let f = quasimap_potential(&spec, &c, 6).unwrap();
        let diag = diagnostics(&spec, &c, 6).unwrap();
        assert!(vert_loop_consistency(&diag, &f));

        let mut bad = c.clone();
        let c2 = bad.c[2].coeff(3) + int(1);
        bad.c[2].set_coeff(3, c2);
        let bad_diag = diagnostics(&spec, &bad, 6).unwrap();
        assert!(!vert_loop_consistency(&bad_diag, &f));
    }

    #[test]
    fn first_coefficient_formula() {
        for spec in [
            example(),
            conifold(),
            GeometrySpec::new(5, vec![5], vec![]).unwrap(),
            GeometrySpec::new(6, vec![2, 2], vec![2]).unwrap(),
        ] {
            let c = compute_ck(&spec, 3).unwrap();
            let f = quasimap_potential(&spec, &c, 3).unwrap();
            let mut expected = spec.kappa() * discriminant_coefficient(&spec);
            for k in spec.ck_range() {
                expected -= rat(1, 2) * spec.ck_weight(k) * c.c[k].coeff(1);
            }
            assert_eq!(f.coeff(1), expected, "{spec}");
            assert!(f.constant_term().is_zero());
        }
    }

    #[test]
    fn c1_identity_on_example() {
        let spec = example();
        let b0 = expand_i(&spec, 6, b0_worder(4)).unwrap();
        let c = initial_constants_from(&spec, &b0).unwrap();
        let (i0, i1) = crate::ifunction::extract_i0_i1(&b0).unwrap();
        assert!(c1_matches_mirror(&c, &i0, &i1).unwrap());
    }
}
