//! Arithmetic in `R = Q[H]/(H^n - 1)` and in truncated expansions
//! `R[[q]]` with a Laurent window in `w = 1/z`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{int, PowerSeries, Rational};

/// Element of `Q[H]/(H^n - 1)`, stored densely as the coefficients of
/// `H^0..H^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPoly {
    coeffs: Vec<Rational>,
}

impl HPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "ring dimension must be positive");
        Self {
            coeffs: vec![Rational::zero(); n],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, Rational::one())
    }

    /// `c H^power`, with `power` reduced mod `n`.
    pub fn monomial(n: usize, power: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[power % n] = c;
        p
    }

    /// Reduces an ordinary polynomial in `H` with `H^n = 1`.
    pub fn from_poly(n: usize, poly: &[Rational]) -> Self {
        let mut p = Self::zero(n);
        for (a, c) in poly.iter().enumerate() {
            p.coeffs[a % n] += c;
        }
        p
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> &Rational {
        &self.coeffs[power % self.n()]
    }

    pub fn set_coeff(&mut self, power: usize, c: Rational) {
        let n = self.n();
        self.coeffs[power % n] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Cyclic convolution mod `H^n - 1`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(self.n(), other.n()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out
    }

    /// Multiplication by `H`: a cyclic shift of the coefficients.
    pub fn mul_h(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.rotate_right(1);
        Self { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    /// `self += c * other`
    pub(crate) fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }
}

/// Truncated element of `R[[q]]` with a window `w^wmin..=w^wmax`, `w = 1/z`.
///
/// Slots below `wmin` are zero; slots above `wmax` are unknown. The grade
/// shift `k0` records that `c[d][j]` only has an `H^a` component when
/// `a ≡ j + k0 (mod n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IExpansion {
    n: usize,
    qorder: usize,
    wmin: i64,
    wmax: i64,
    grade: i64,
    // table[d][j - wmin]
    table: Vec<Vec<HPoly>>,
}

impl IExpansion {
    pub fn zero(n: usize, qorder: usize, wmin: i64, wmax: i64, grade: i64) -> Self {
        assert!(wmax >= wmin, "empty w-window");
        let width = (wmax - wmin + 1) as usize;
        Self {
            n,
            qorder,
            wmin,
            wmax,
            grade,
            table: vec![vec![HPoly::zero(n); width]; qorder + 1],
        }
    }

    /// The constant expansion `1`, window `w^0..=w^wmax`.
    pub fn one(n: usize, qorder: usize, wmax: i64) -> Self {
        let mut e = Self::zero(n, qorder, 0, wmax, 0);
        e.table[0][0] = HPoly::one(n);
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn qorder(&self) -> usize {
        self.qorder
    }

    pub fn wmin(&self) -> i64 {
        self.wmin
    }

    pub fn wmax(&self) -> i64 {
        self.wmax
    }

    pub fn grade(&self) -> i64 {
        self.grade
    }

    /// Coefficient of `q^d w^j`, `None` outside the stored window.
    pub fn get(&self, d: usize, j: i64) -> Option<&HPoly> {
        if d > self.qorder || j < self.wmin || j > self.wmax {
            return None;
        }
        Some(&self.table[d][(j - self.wmin) as usize])
    }

    pub fn get_mut(&mut self, d: usize, j: i64) -> Option<&mut HPoly> {
        if d > self.qorder || j < self.wmin || j > self.wmax {
            return None;
        }
        Some(&mut self.table[d][(j - self.wmin) as usize])
    }

    /// Builds an expansion from per-degree `w`-series starting at `w^0`.
    pub(crate) fn from_wseries(n: usize, grade: i64, rows: Vec<Vec<HPoly>>) -> Self {
        let qorder = rows.len() - 1;
        let wmax = rows[0].len() as i64 - 1;
        debug_assert!(rows.iter().all(|r| r.len() as i64 == wmax + 1));
        Self {
            n,
            qorder,
            wmin: 0,
            wmax,
            grade,
            table: rows,
        }
    }

    /// True iff every stored `H^a w^j` monomial has `a ≡ j + k0 (mod n)`.
    pub fn grading_holds(&self) -> bool {
        let n = self.n as i64;
        self.table.iter().all(|row| {
            row.iter().enumerate().all(|(idx, p)| {
                let j = self.wmin + idx as i64;
                let expected = (j + self.grade).rem_euclid(n) as usize;
                p.coeffs()
                    .iter()
                    .enumerate()
                    .all(|(a, c)| a == expected || c.is_zero())
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().all(HPoly::is_zero)
    }

    /// Restriction to a smaller q-order and w-window.
    pub fn restrict(&self, qorder: usize, wmin: i64, wmax: i64) -> Self {
        assert!(qorder <= self.qorder && wmin >= self.wmin && wmax <= self.wmax);
        let lo = (wmin - self.wmin) as usize;
        let hi = (wmax - self.wmin) as usize;
        Self {
            n: self.n,
            qorder,
            wmin,
            wmax,
            grade: self.grade,
            table: self.table[..=qorder]
                .iter()
                .map(|r| r[lo..=hi].to_vec())
                .collect(),
        }
    }

    /// Multiplies every `w`-slot by the scalar series `s` (q-Cauchy product).
    pub fn mul_scalar_series(&self, s: &PowerSeries) -> Self {
        let qorder = self.qorder.min(s.order());
        let width = self.table[0].len();
        let mut table = vec![vec![HPoly::zero(self.n); width]; qorder + 1];
        for (d, row) in table.iter_mut().enumerate() {
            for e in 0..=d {
                let c = s.coeff(d - e);
                if c.is_zero() {
                    continue;
                }
                for (slot, src) in row.iter_mut().zip(&self.table[e]) {
                    slot.add_scaled(src, &c);
                }
            }
        }
        Self {
            qorder,
            table,
            ..self.clone_shape()
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|p| p.scale(c)).collect())
                .collect(),
            ..self.clone_shape()
        }
    }

    /// `(H + z q d/dq) a`: `result[d][j] = H a[d][j] + d a[d][j+1]`.
    ///
    /// The window becomes `wmin-1..=wmax-1`; the new lowest slot is dropped
    /// again when it vanishes identically.
    pub fn apply_h_plus_zqddq(&self) -> Result<Self> {
        self.check_headroom()?;
        let mut out = Self::zero(
            self.n,
            self.qorder,
            self.wmin - 1,
            self.wmax - 1,
            self.grade + 1,
        );
        for d in 0..=self.qorder {
            let dd = int(d as i64);
            for j in out.wmin..=out.wmax {
                let slot = out.get_mut(d, j).expect("inside window");
                if let Some(p) = self.get(d, j) {
                    *slot = p.mul_h();
                }
                if d > 0 {
                    if let Some(p) = self.get(d, j + 1) {
                        slot.add_scaled(p, &dd);
                    }
                }
            }
        }
        Ok(out.trim_low())
    }

    /// Multiplication by `z`: shifts every slot from `w^j` to `w^{j-1}`.
    pub fn mul_z(&self) -> Result<Self> {
        self.check_headroom()?;
        Ok(Self {
            wmin: self.wmin - 1,
            wmax: self.wmax - 1,
            grade: self.grade + 1,
            ..self.clone()
        })
    }

    /// Multiplication by `q`, keeping the q-order.
    pub fn mul_q(&self) -> Self {
        let mut out = self.clone();
        out.table.rotate_right(1);
        out.table[0] = vec![HPoly::zero(self.n); self.table[0].len()];
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    /// The q-series of the `H^k` coefficient at `w^0`.
    pub fn extract_hk_at_w0(&self, k: usize) -> Result<PowerSeries> {
        self.extract(k, 0)
    }

    /// The q-series of the `H^k` coefficient at `w^j`.
    pub fn extract(&self, k: usize, j: i64) -> Result<PowerSeries> {
        if k >= self.n || j > self.wmax {
            return Err(Error::OutOfWindow { k, j });
        }
        if j < self.wmin {
            return Ok(PowerSeries::zero(self.qorder));
        }
        let coeffs: Vec<Rational> = (0..=self.qorder)
            .map(|d| self.get(d, j).expect("inside window").coeff(k).clone())
            .collect();
        Ok(PowerSeries::new(coeffs))
    }

    fn check_headroom(&self) -> Result<()> {
        if self.wmax < 1 {
            return Err(Error::WindowExhausted(self.wmax));
        }
        Ok(())
    }

    fn clone_shape(&self) -> Self {
        Self {
            table: Vec::new(),
            ..*self
        }
    }

    fn trim_low(mut self) -> Self {
        while self.wmin < self.wmax && self.table.iter().all(|row| row[0].is_zero()) {
            for row in &mut self.table {
                row.remove(0);
            }
            self.wmin += 1;
        }
        self
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let n = self.n as i64;
        if (self.grade - other.grade).rem_euclid(n) != 0 {
            return Err(Error::GradeMismatch(self.grade, other.grade, self.n));
        }
        let qorder = self.qorder.min(other.qorder);
        let wmin = self.wmin.min(other.wmin);
        let wmax = self.wmax.min(other.wmax);
        if wmax < wmin {
            return Err(Error::WindowExhausted(wmax));
        }
        let mut out = Self::zero(self.n, qorder, wmin, wmax, self.grade);
        for d in 0..=qorder {
            for j in wmin..=wmax {
                let slot = out.get_mut(d, j).expect("inside window");
                if let Some(p) = self.get(d, j) {
                    slot.add_assign(p);
                }
                if let Some(p) = other.get(d, j) {
                    if subtract {
                        slot.sub_assign(p);
                    } else {
                        slot.add_assign(p);
                    }
                }
            }
        }
        Ok(out.trim_low())
    }
}
