//! The specialized I-function `I_T|_{t=0}` with all equivariant parameters set
//! to the `n`-th roots of unity, expanded in `q` and `w = 1/z`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{HPoly, IExpansion};
use crate::series::{binomial, int, PowerSeries, Rational};

/// Total space of `⊕_b O(-l'_b)` over the complete intersection of degrees
/// `l_a` in `P^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeometrySpec {
    pub n: usize,
    pub l: Vec<u32>,
    pub lp: Vec<u32>,
}

impl GeometrySpec {
    /// Validated constructor: `n >= 2`, positive degrees, and the Calabi-Yau
    /// condition `Σ l_a + Σ l'_b = n`.
    pub fn new(n: usize, l: Vec<u32>, lp: Vec<u32>) -> Result<Self> {
        let spec = Self { n, l, lp };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidSpec(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.l.iter().chain(&self.lp).any(|&d| d == 0) {
            return Err(Error::InvalidSpec("all degrees must be positive".into()));
        }
        let sum: u64 = self.l.iter().chain(&self.lp).map(|&d| d as u64).sum();
        if sum != self.n as u64 {
            return Err(Error::InvalidSpec(format!(
                "Calabi-Yau condition fails: sum(l) + sum(lp) = {sum} but n = {}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn r(&self) -> usize {
        self.l.len()
    }

    pub fn m(&self) -> usize {
        self.lp.len()
    }

    /// `κ = ∏ l_a^{l_a} ∏ (-l'_b)^{l'_b}`; the discriminant is `1 - κ q`.
    pub fn kappa(&self) -> Rational {
        let mut acc = BigInt::one();
        for &la in &self.l {
            acc *= BigInt::from(la).pow(la);
        }
        for &lb in &self.lp {
            acc *= BigInt::from(-(lb as i64)).pow(lb);
        }
        Rational::from_integer(acc)
    }

    /// The `k` range `m..=n-r-2` summed over in the closed-form potential
    /// (empty when `m > n-r-2`).
    pub fn ck_range(&self) -> std::ops::RangeInclusive<usize> {
        let hi = self.n as i64 - self.r() as i64 - 2;
        let lo = self.m() as i64;
        if hi < lo {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        lo as usize..=hi as usize
    }

    /// `binom(n - r - k, 2)`, the weight of `log C_k`.
    pub fn ck_weight(&self, k: usize) -> Rational {
        binomial(self.n as i64 - self.r() as i64 - k as i64, 2)
    }
}

impl fmt::Display for GeometrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "(n={}, l=[{}], lp=[{}])",
            self.n,
            join(&self.l),
            join(&self.lp)
        )
    }
}

type WSeries = Vec<HPoly>;

/// `series *= (c H w + k)` in `R[w]/(w^{W+1})`.
fn mul_linear(series: &mut WSeries, c: &Rational, k: &Rational) {
    for j in (0..series.len()).rev() {
        let mut v = series[j].scale(k);
        if j > 0 && !c.is_zero() {
            v.add_scaled(&series[j - 1].mul_h(), c);
        }
        series[j] = v;
    }
}

/// Inverse of `(H w + k)^n - w^n` as a unit series in `w` (constant `k^n`).
fn inverse_denominator(n: usize, k: i64, worder: usize) -> WSeries {
    let mut p: WSeries = (0..=worder)
        .map(|i| {
            if i <= n {
                HPoly::monomial(
                    n,
                    i,
                    binomial(n as i64, i as i64) * int(k).pow((n - i) as i32),
                )
            } else {
                HPoly::zero(n)
            }
        })
        .collect();
    if n <= worder {
        let c = p[n].coeff(0) - Rational::one();
        p[n].set_coeff(0, c);
    }
    let inv0 = p[0].coeff(0).recip();
    let mut inv: WSeries = Vec::with_capacity(worder + 1);
    inv.push(HPoly::monomial(n, 0, inv0.clone()));
    for j in 1..=worder {
        let mut acc = HPoly::zero(n);
        for i in 1..=j {
            if !p[i].is_zero() {
                acc.add_assign(&p[i].mul_unchecked(&inv[j - i]));
            }
        }
        inv.push(acc.scale(&-&inv0));
    }
    inv
}

fn mul_wseries(a: &WSeries, b: &WSeries) -> WSeries {
    let n = a[0].n();
    let len = a.len().min(b.len());
    let mut out = vec![HPoly::zero(n); len];
    for (i, x) in a.iter().take(len).enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().take(len - i).enumerate() {
            if !y.is_zero() {
                out[i + j].add_assign(&x.mul_unchecked(y));
            }
        }
    }
    out
}

/// Expands `I_T|_{t=0}` to `q^qorder` and `w^worder`.
///
/// The `q^d` term is built from the `q^{d-1}` term by multiplying in the new
/// numerator factors `(l_a H w + k)`, `(-l'_b H w - k)` and the inverse of
/// `(H w + d)^n - w^n`, which is what `∏_j (H - λ_j + d z)` becomes at roots
/// of unity after pulling out `z^n`.
pub fn expand_i(spec: &GeometrySpec, qorder: usize, worder: usize) -> Result<IExpansion> {
    spec.validate()?;
    let n = spec.n;
    let mut rows: Vec<WSeries> = Vec::with_capacity(qorder + 1);
    let mut term: WSeries = vec![HPoly::zero(n); worder + 1];
    term[0] = HPoly::one(n);
    rows.push(term.clone());
    for d in 1..=qorder as i64 {
        for &la in &spec.l {
            let la = la as i64;
            for k in la * (d - 1) + 1..=la * d {
                mul_linear(&mut term, &int(la), &int(k));
            }
        }
        for &lb in &spec.lp {
            let lb = lb as i64;
            for k in lb * (d - 1)..lb * d {
                mul_linear(&mut term, &int(-lb), &int(-k));
            }
        }
        term = mul_wseries(&term, &inverse_denominator(n, d, worder));
        rows.push(term.clone());
    }
    Ok(IExpansion::from_wseries(n, 0, rows))
}

/// `I_0` (the `H^0 w^0` coefficient) and `I_1` (the `H^1 w^1` coefficient).
pub fn extract_i0_i1(expansion: &IExpansion) -> Result<(PowerSeries, PowerSeries)> {
    let n = expansion.n() as i64;
    if expansion.grade().rem_euclid(n) != 0 {
        return Err(Error::GradeMismatch(expansion.grade(), 0, expansion.n()));
    }
    let i0 = expansion.extract(0, 0)?;
    let i1 = if expansion.n() > 1 {
        expansion.extract(1 % expansion.n(), 1)?
    } else {
        PowerSeries::zero(expansion.qorder())
    };
    Ok((i0, i1))
}

/// Applies the Picard-Fuchs operator
/// `D^n - 1 - q ∏_a ∏_{m=1}^{l_a} (l_a D + m z) ∏_b ∏_{m=0}^{l'_b-1} (-l'_b D - m z)`
/// with `D = H + z q d/dq`, and reports whether the result vanishes on the
/// window that survives. Needs at least `n` orders of `w` headroom.
pub fn pf_check(spec: &GeometrySpec, expansion: &IExpansion) -> Result<bool> {
    let residual = pf_residual(spec, expansion)?;
    Ok(residual.is_zero())
}

pub fn pf_residual(spec: &GeometrySpec, expansion: &IExpansion) -> Result<IExpansion> {
    spec.validate()?;
    if expansion.n() != spec.n {
        return Err(Error::DimensionMismatch(expansion.n(), spec.n));
    }
    let mut power = expansion.clone();
    for _ in 0..spec.n {
        power = power.apply_h_plus_zqddq()?;
    }
    let mut product = expansion.clone();
    let linear = |x: &IExpansion, c: i64, m: i64| -> Result<IExpansion> {
        let lhs = x.apply_h_plus_zqddq()?.scale(&int(c));
        if m == 0 {
            return Ok(lhs);
        }
        lhs.add(&x.mul_z()?.scale(&int(m)))
    };
    for &la in &spec.l {
        for m in 1..=la as i64 {
            product = linear(&product, la as i64, m)?;
        }
    }
    for &lb in &spec.lp {
        for m in 0..lb as i64 {
            product = linear(&product, -(lb as i64), -m)?;
        }
    }
    power.sub(expansion)?.sub(&product.mul_q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn example() -> GeometrySpec {
        GeometrySpec::new(4, vec![2], vec![2]).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(GeometrySpec::new(4, vec![2], vec![3]).is_err());
        assert!(GeometrySpec::new(1, vec![1], vec![]).is_err());
        assert!(GeometrySpec::new(2, vec![0, 2], vec![]).is_err());
        assert!(GeometrySpec::new(2, vec![], vec![1, 1]).is_ok());
        let msg = GeometrySpec::new(4, vec![2], vec![3])
            .unwrap_err()
            .to_string();
        assert!(msg.contains("= 5") && msg.contains("n = 4"), "{msg}");
    }

    #[test]
    fn kappa_and_ranges() {
        assert_eq!(example().kappa(), int(16));
        let conifold = GeometrySpec::new(2, vec![], vec![1, 1]).unwrap();
        assert_eq!(conifold.kappa(), int(1));
        assert!(conifold.ck_range().is_empty());
        assert_eq!(example().ck_range(), 1..=1);
        assert_eq!(
            GeometrySpec::new(5, vec![5], vec![]).unwrap().kappa(),
            int(3125)
        );
    }

    #[test]
    fn degree_zero_slot_is_one() {
        for spec in [example(), GeometrySpec::new(5, vec![5], vec![]).unwrap()] {
            let e = expand_i(&spec, 3, 3).unwrap();
            assert_eq!(e.get(0, 0).unwrap(), &HPoly::one(spec.n));
            for j in 1..=3 {
                assert!(e.get(0, j).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn example_first_order_term() {
        let e = expand_i(&example(), 3, 2).unwrap();
        assert_eq!(e.get(1, 1).unwrap(), &HPoly::monomial(4, 1, int(4)));
        assert!(e.get(1, 0).unwrap().is_zero());
    }

    #[test]
    fn example_i1() {
        let e = expand_i(&example(), 3, 2).unwrap();
        let (i0, i1) = extract_i0_i1(&e).unwrap();
        assert_eq!(i0, PowerSeries::one(3));
        assert_eq!(
            i1,
            PowerSeries::new(vec![int(0), int(4), int(18), rat(400, 3)])
        );
    }

    #[test]
    fn two_bundles_kill_i1() {
        for spec in [
            GeometrySpec::new(2, vec![], vec![1, 1]).unwrap(),
            GeometrySpec::new(6, vec![2], vec![2, 2]).unwrap(),
        ] {
            let (i0, i1) = extract_i0_i1(&expand_i(&spec, 5, 2).unwrap()).unwrap();
            assert_eq!(i0, PowerSeries::one(5));
            assert!(i1.is_zero());
        }
    }

    #[test]
    fn quintic_i0_is_hypergeometric() {
        let spec = GeometrySpec::new(5, vec![5], vec![]).unwrap();
        let (i0, _) = extract_i0_i1(&expand_i(&spec, 3, 1).unwrap()).unwrap();
        assert_eq!(i0, PowerSeries::from_i64s(&[1, 120, 113400, 168168000], 3));
    }

    #[test]
    fn inverse_denominator_inverts() {
        let n = 3;
        let inv = inverse_denominator(n, 2, 6);
        let mut p: WSeries = vec![HPoly::one(n)];
        p.resize(7, HPoly::zero(n));
        // (H w + 2)^3 - w^3 built with mul_linear
        for _ in 0..3 {
            mul_linear(&mut p, &int(1), &int(2));
        }
        let c = p[3].coeff(0) - Rational::one();
        p[3].set_coeff(0, c);
        let prod = mul_wseries(&p, &inv);
        assert_eq!(prod[0], HPoly::one(n));
        assert!(prod[1..].iter().all(HPoly::is_zero));
    }

    #[test]
    fn pf_passes_and_detects_corruption() {
        let spec = example();
        let e = expand_i(&spec, 5, 5).unwrap();
        assert!(pf_check(&spec, &e).unwrap());
        let mut bad = e.clone();
        let slot = bad.get_mut(2, 1).unwrap();
        let c = slot.coeff(1) + int(1);
        slot.set_coeff(1, c);
        assert!(!pf_check(&spec, &bad).unwrap());
    }

    #[test]
    fn pf_needs_headroom() {
        let spec = example();
        let e = expand_i(&spec, 3, 2).unwrap();
        assert!(matches!(
            pf_check(&spec, &e),
            Err(Error::WindowExhausted(_))
        ));
    }
}
