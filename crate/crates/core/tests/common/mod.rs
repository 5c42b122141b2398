#![allow(dead_code)]

use dcurve_core::curve::LinearCurve;
use dcurve_core::ore::gcld;
use dcurve_core::parse::{parse_diffpoly, parse_fraction, ParseOptions};
use dcurve_core::{DiffPoly, Indet, OreOp, QPoly, ScalarRat};
use num::{BigInt, BigRational};
use rand::Rng;

pub fn dp(s: &str) -> DiffPoly {
    parse_diffpoly(s, ParseOptions::default()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn frac(s: &str) -> (DiffPoly, DiffPoly) {
    parse_fraction(s, ParseOptions::default()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Polynomial in `t` of degree at most `deg` with small integer coefficients.
pub fn rand_qpoly<R: Rng>(rng: &mut R, deg: usize) -> QPoly {
    let d = rng.gen_range(0..=deg);
    QPoly::from_coeffs((0..=d).map(|_| int(rng.gen_range(-3..=3))).collect())
}

/// Mostly polynomial scalars, occasionally with a linear denominator.
pub fn rand_scalar<R: Rng>(rng: &mut R, deg: usize) -> ScalarRat {
    let num = rand_qpoly(rng, deg);
    if rng.gen_bool(0.2) {
        let den = QPoly::from_coeffs(vec![int(rng.gen_range(1..=3)), int(1)]);
        ScalarRat::new(num, den).unwrap()
    } else {
        ScalarRat::from_poly(num)
    }
}

pub fn rand_nonzero_scalar<R: Rng>(rng: &mut R, deg: usize) -> ScalarRat {
    loop {
        let s = rand_scalar(rng, deg);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Operator of degree exactly `deg` with coefficients in `Q[t]`.
pub fn rand_op_of_degree<R: Rng>(rng: &mut R, deg: usize, coeff_deg: usize) -> OreOp {
    let mut cs: Vec<ScalarRat> = (0..deg)
        .map(|_| ScalarRat::from_poly(rand_qpoly(rng, coeff_deg)))
        .collect();
    let lead = loop {
        let p = rand_qpoly(rng, coeff_deg);
        if !p.is_zero() {
            break ScalarRat::from_poly(p);
        }
    };
    cs.push(lead);
    OreOp::from_coeffs(cs)
}

pub fn rand_op<R: Rng>(rng: &mut R, max_deg: usize, coeff_deg: usize) -> OreOp {
    let d = rng.gen_range(0..=max_deg);
    rand_op_of_degree(rng, d, coeff_deg)
}

/// Random linear curve with both operators nonzero and `gcld = 1`, found
/// by rejection sampling.
pub fn rand_unirational_curve<R: Rng>(rng: &mut R) -> LinearCurve {
    rand_unirational_curve_sized(rng, 3, 2)
}

pub fn rand_unirational_curve_sized<R: Rng>(
    rng: &mut R,
    max_deg: usize,
    coeff_deg: usize,
) -> LinearCurve {
    loop {
        let l1 = rand_op(rng, max_deg, coeff_deg);
        let l2 = rand_op(rng, max_deg, coeff_deg);
        if gcld(&l1, &l2).unwrap().degree() != Some(0) {
            continue;
        }
        let a = if rng.gen_bool(0.5) {
            ScalarRat::zero()
        } else {
            rand_scalar(rng, coeff_deg)
        };
        return LinearCurve::new(l1, l2, a).unwrap();
    }
}

/// Small random polynomial in `x`, `y` and their first derivatives.
pub fn rand_small_poly<R: Rng>(rng: &mut R) -> DiffPoly {
    if rng.gen_bool(0.25) {
        return DiffPoly::zero();
    }
    let mut p = DiffPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = DiffPoly::constant(ScalarRat::from_int(rng.gen_range(-4..=4)));
        for _ in 0..rng.gen_range(0..=2) {
            let indet = if rng.gen_bool(0.5) {
                Indet::X
            } else {
                Indet::Y
            };
            term = &term * &DiffPoly::deriv(indet, rng.gen_range(0..=1));
        }
        p = &p + &term;
    }
    p
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<DiffPoly>]) -> DiffPoly {
    let n = m.len();
    if n == 0 {
        return DiffPoly::one();
    }
    let mut acc = DiffPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<DiffPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// True iff `f = c*g` for a nonzero ground-field `c`.
pub fn is_field_multiple(f: &DiffPoly, g: &DiffPoly) -> bool {
    match (f.leading_term(), g.leading_term()) {
        (Some((mf, cf)), Some((mg, cg))) if mf == mg => *f == g.scale(&(cf / cg)),
        (None, None) => true,
        _ => false,
    }
}
