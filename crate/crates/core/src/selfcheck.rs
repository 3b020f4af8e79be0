//! Built-in verification suite: the worked-example golden values plus the
//! structural properties every run should satisfy.

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::ifunction::{expand_i, extract_i0_i1, pf_check, GeometrySpec};
use crate::invariants::{
    all_start_at_one, b0_worder, compute_ck, diagnostics, quasimap_potential, vert_loop_consistency,
};
use crate::series::{binomial, int, rat, PowerSeries, Rational};
use crate::wallcross::{compute_report, euler_characteristic, nd_crosscheck};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Geometries exercised by the property checks.
pub fn property_specs() -> Vec<GeometrySpec> {
    [
        (4, vec![2], vec![2]),
        (2, vec![], vec![1, 1]),
        (5, vec![5], vec![]),
        (3, vec![], vec![3]),
        (6, vec![2, 2], vec![2]),
    ]
    .into_iter()
    .map(|(n, l, lp)| GeometrySpec::new(n, l, lp).expect("valid geometry"))
    .collect()
}

fn check(name: &str, outcome: Result<(bool, String)>) -> CheckResult {
    match outcome {
        Ok((passed, detail)) => CheckResult {
            name: name.into(),
            passed,
            detail,
        },
        Err(e) => CheckResult {
            name: name.into(),
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn series(c: &[Rational]) -> PowerSeries {
    PowerSeries::new(c.to_vec())
}

pub fn random_series(rng: &mut StdRng, order: usize, constant: Option<Rational>) -> PowerSeries {
    let mut coeffs: Vec<Rational> = (0..=order)
        .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
        .collect();
    if let Some(c) = constant {
        coeffs[0] = c;
    }
    PowerSeries::new(coeffs)
}

fn example() -> GeometrySpec {
    GeometrySpec::new(4, vec![2], vec![2]).expect("valid geometry")
}

pub fn golden_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(check(
        "example I-function: I0 = 1, I1 = sum binom(2d,d)^2/d",
        (|| {
            let e = expand_i(&example(), 8, 1)?;
            let (i0, i1) = extract_i0_i1(&e)?;
            let mut expected = vec![Rational::zero()];
            for d in 1..=8i64 {
                expected.push(binomial(2 * d, d) * binomial(2 * d, d) / int(d));
            }
            let ok = i0 == PowerSeries::one(8)
                && i1 == series(&expected)
                && i1.truncate(3) == series(&[int(0), int(4), int(18), rat(400, 3)]);
            Ok((ok, format!("I1 = {i1}")))
        })(),
    ));
    out.push(check(
        "example C1 = 1 + q d/dq I1",
        (|| {
            let b0 = expand_i(&example(), 8, b0_worder(4))?;
            let (_, i1) = extract_i0_i1(&b0)?;
            let c = compute_ck(&example(), 8)?;
            let ok = c.c[1] == &PowerSeries::one(8) + &i1.qddq()
                && c.c[1].truncate(3) == PowerSeries::from_i64s(&[1, 4, 36, 400], 3);
            Ok((ok, format!("C1 = {}", c.c[1])))
        })(),
    ));
    out.push(check(
        "example potentials, mirror map and N_d",
        (|| {
            let r = compute_report(&example(), 3)?;
            let ok = r.f_qm == series(&[int(0), rat(-2, 3), rat(-10, 3), rat(-224, 9)])
                && r.f_gw_q == series(&[int(0), rat(-1, 3), rat(-11, 6), rat(-124, 9)])
                && r.q_of_q == PowerSeries::from_i64s(&[0, 1, 4, 26], 3)
                && r.n_d == vec![rat(-1, 3), rat(-1, 2), rat(-10, 9)]
                && nd_crosscheck(&r.f_gw_q, &r.q_of_q, &r.n_d)?;
            let n: Vec<String> = r.n_d.iter().map(ToString::to_string).collect();
            Ok((ok, format!("N = [{}]", n.join(", "))))
        })(),
    ));
    out.push(check(
        "example mirror map reversion round trip (order 10)",
        (|| {
            let r = compute_report(&example(), 10)?;
            let ok = r.q_of_q.compose(&r.q_of_big_q)? == PowerSeries::variable(10)
                && nd_crosscheck(&r.f_gw_q, &r.q_of_q, &r.n_d)?;
            Ok((ok, format!("q(Q) = {}", r.q_of_big_q)))
        })(),
    ));
    out.push(check(
        "conifold N_d = 1/(12d)",
        (|| {
            let spec = GeometrySpec::new(2, vec![], vec![1, 1])?;
            let r = compute_report(&spec, 10)?;
            let ok = r.f_gw_q == r.f_qm
                && r.n_d
                    .iter()
                    .enumerate()
                    .all(|(i, nd)| *nd == rat(1, 12 * (i as i64 + 1)));
            Ok((ok, format!("F = {}", r.f_gw_q)))
        })(),
    ));
    out.push(check(
        "Euler characteristics",
        (|| {
            let chi = |n, l: Vec<u32>| {
                Ok::<_, crate::Error>(euler_characteristic(&GeometrySpec::new(n, l, vec![])?))
            };
            let values = [chi(5, vec![5])?, chi(3, vec![3])?, chi(4, vec![2, 2])?];
            let ok = values == [Some(int(-200)), Some(int(0)), Some(int(0))];
            Ok((ok, format!("{values:?}")))
        })(),
    ));
    out
}

pub fn property_checks(cases: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for spec in property_specs() {
        out.push(check(
            &format!("Picard-Fuchs annihilates I for {spec}"),
            (|| {
                let e = expand_i(&spec, 6, spec.n + 1)?;
                Ok((pf_check(&spec, &e)?, String::new()))
            })(),
        ));
        out.push(check(
            &format!("Vert/Loop identity for {spec}"),
            (|| {
                let c = compute_ck(&spec, 8)?;
                let f = quasimap_potential(&spec, &c, 8)?;
                let diag = diagnostics(&spec, &c, 8)?;
                Ok((vert_loop_consistency(&diag, &f), String::new()))
            })(),
        ));
        out.push(check(
            &format!("structure for {spec}"),
            (|| {
                let e = expand_i(&spec, 6, b0_worder(spec.n))?;
                let c = compute_ck(&spec, 6)?;
                let diag = diagnostics(&spec, &c, 6)?;
                let disc = &PowerSeries::one(6) - &PowerSeries::monomial(spec.kappa(), 1, 6);
                let ok = e.grading_holds()
                    && all_start_at_one(&c)
                    && &diag.l.pow(spec.n) * &disc == PowerSeries::one(6);
                Ok((ok, String::new()))
            })(),
        ));
    }

    let mut rng = StdRng::seed_from_u64(seed);
    let mut fails = [0usize; 3];
    for _ in 0..cases {
        let order = rng.gen_range(1..=8);
        let unit = random_series(&mut rng, order, Some(Rational::one()));
        let nil = random_series(&mut rng, order, Some(Rational::zero()));
        let exp_log = unit.log_unit().and_then(|g| g.exp_nilconst());
        let log_exp = nil.exp_nilconst().and_then(|f| f.log_unit());
        if exp_log.as_ref() != Ok(&unit) || log_exp.as_ref() != Ok(&nil) {
            fails[0] += 1;
        }
        let mut rev = nil.clone();
        if rev.coeff(1).is_zero() {
            rev.set_coeff(1, Rational::one());
        }
        let round = rev.reversion().and_then(|b| rev.compose(&b));
        if round != Ok(PowerSeries::variable(order)) {
            fails[1] += 1;
        }
        if nil.integrate_over_x().map(|f| f.qddq()).as_ref() != Ok(&nil) {
            fails[2] += 1;
        }
    }
    for (name, failed) in [
        "exp/log round trip",
        "reversion round trip",
        "integrate/qddq round trip",
    ]
    .into_iter()
    .zip(fails)
    {
        out.push(CheckResult {
            name: format!("{name} ({cases} random cases)"),
            passed: failed == 0,
            detail: format!("{failed} failures"),
        });
    }
    out
}

/// Golden values followed by property checks.
pub fn run_all() -> Vec<CheckResult> {
    let mut out = golden_checks();
    out.extend(property_checks(100, 0x5eed));
    out
}
