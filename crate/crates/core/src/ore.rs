//! Linear differential operators `sum a_i D^i` over `Q(t)`.
//!
//! Multiplication follows the commutation rule `D*a = a*D + a'`, which makes
//! the ring noncommutative. Both one-sided Euclidean divisions exist because
//! every nonzero coefficient is invertible.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::fmt_util::format_sum;
use crate::scalar::{QPoly, ScalarRat};

/// An element of `Q(t)[D]`, coefficients stored lowest power first with a
/// nonzero leading coefficient. The zero operator has no coefficients and
/// degree `None` (negative infinity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OreOp {
    coeffs: Vec<ScalarRat>,
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl OreOp {
    pub fn zero() -> Self {
        OreOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::scalar(ScalarRat::one())
    }

    /// The derivation `D` itself.
    pub fn d() -> Self {
        Self::from_coeffs(vec![ScalarRat::zero(), ScalarRat::one()])
    }

    pub fn scalar(c: ScalarRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * D^k`.
    pub fn monomial(c: ScalarRat, k: usize) -> Self {
        let mut coeffs = vec![ScalarRat::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<ScalarRat>) -> Self {
        while coeffs.last().map_or(false, ScalarRat::is_zero) {
            coeffs.pop();
        }
        OreOp { coeffs }
    }

    pub fn coeffs(&self) -> &[ScalarRat] {
        &self.coeffs
    }

    /// Coefficient of `D^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> ScalarRat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero operator.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for nonzero operators of degree 0, i.e. units of the ring.
    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    pub fn leading_coeff(&self) -> ScalarRat {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// `c * self`: scales the coefficients.
    pub fn scale_left(&self, c: &ScalarRat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| c * a).collect())
    }

    /// `self * c`, which also perturbs the lower coefficients.
    pub fn scale_right(&self, c: &ScalarRat) -> Self {
        self * &Self::scalar(c.clone())
    }

    /// Applies the operator to a field element: `sum a_i * r^(i)`.
    pub fn apply(&self, r: &ScalarRat) -> ScalarRat {
        let mut acc = ScalarRat::zero();
        let mut deriv = r.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                deriv = deriv.derive();
            }
            if deriv.is_zero() {
                break;
            }
            if !a.is_zero() {
                acc = &acc + &(a * &deriv);
            }
        }
        acc
    }

    /// Left Euclidean division: `self = rhs * q + r` with `deg r < deg rhs`.
    pub fn lquo_lrem(&self, rhs: &OreOp) -> Result<(OreOp, OreOp)> {
        self.euclid(rhs, true)
    }

    /// Right Euclidean division: `self = q * rhs + r` with `deg r < deg rhs`.
    pub fn rquo_rrem(&self, rhs: &OreOp) -> Result<(OreOp, OreOp)> {
        self.euclid(rhs, false)
    }

    fn euclid(&self, rhs: &OreOp, left: bool) -> Result<(OreOp, OreOp)> {
        let dr = rhs.degree().ok_or(Error::DivisionByZero)?;
        let lc = rhs.leading_coeff();
        let mut quo = OreOp::zero();
        let mut rem = self.clone();
        while let Some(d) = rem.degree() {
            if d < dr {
                break;
            }
            let term = OreOp::monomial(&rem.leading_coeff() / &lc, d - dr);
            let sub = if left { rhs * &term } else { &term * rhs };
            let next = &rem - &sub;
            debug_assert!(next.degree() < rem.degree());
            rem = next;
            quo = &quo + &term;
        }
        Ok((quo, rem))
    }

    /// `self` divided on the right by the inverse of its leading coefficient.
    pub fn monic_right(&self) -> Self {
        match self.degree() {
            None => self.clone(),
            Some(_) => self.scale_right(&self.leading_coeff().inv().expect("nonzero")),
        }
    }

    /// `self` divided on the left by its leading coefficient.
    pub fn monic_left(&self) -> Self {
        match self.degree() {
            None => self.clone(),
            Some(_) => self.scale_left(&self.leading_coeff().inv().expect("nonzero")),
        }
    }
}

impl Add for &OreOp {
    type Output = OreOp;
    fn add(self, rhs: &OreOp) -> OreOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OreOp::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Neg for &OreOp {
    type Output = OreOp;
    fn neg(self) -> OreOp {
        OreOp {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &OreOp {
    type Output = OreOp;
    fn sub(self, rhs: &OreOp) -> OreOp {
        self + &(-rhs)
    }
}

// Products are formed over Z[t]: with lhs = alpha^-1 * A and
// rhs = delta^-1 * B, the middle factor delta^(n+1) * A * delta^-1 is again
// integral, so only the final coefficients need reducing.
impl Mul for &OreOp {
    type Output = OreOp;
    fn mul(self, rhs: &OreOp) -> OreOp {
        let (Some(dl), Some(_)) = (self.degree(), rhs.degree()) else {
            return OreOp::zero();
        };
        let (alpha, a) = clear_denominators(&self.coeffs);
        let (delta, b) = clear_denominators(&rhs.coeffs);
        let (mid, scale) = if delta.len() == 1 {
            (a, z_mul(&alpha, &delta))
        } else {
            let mut scale = alpha;
            for _ in 0..=dl {
                scale = z_mul(&scale, &delta);
            }
            (conjugate_by_inverse(&a, &delta), scale)
        };
        let scale = from_z(&scale);
        let coeffs = poly_op_mul(&mid, &b)
            .iter()
            .map(|c| ScalarRat::new(from_z(c), scale.clone()).expect("nonzero denominator"))
            .collect();
        OreOp::from_coeffs(coeffs)
    }
}

/// Polynomial over the integers, lowest degree first, no trailing zeros.
type ZPoly = Vec<BigInt>;

/// `(l, [l*c_i])` with `l` an integer multiple of the lcm of the
/// denominators, chosen so that every `l*c_i` is integral.
fn clear_denominators(coeffs: &[ScalarRat]) -> (ZPoly, Vec<ZPoly>) {
    let mut l = QPoly::one();
    for c in coeffs {
        let d = c.denom();
        if !d.is_one() && d != &l {
            let g = l.gcd(d);
            l = &l * &d.div_rem(&g).0;
        }
    }
    let scaled: Vec<QPoly> = coeffs
        .iter()
        .map(|c| {
            if c.denom() == &l {
                c.numer().clone()
            } else {
                c.numer() * &l.div_rem(c.denom()).0
            }
        })
        .collect();
    let m = std::iter::once(&l)
        .chain(&scaled)
        .flat_map(|p| p.coeffs())
        .fold(BigInt::one(), |acc, c| {
            num::integer::lcm(acc, c.denom().clone())
        });
    let to_z = |p: &QPoly| -> ZPoly { p.coeffs().iter().map(|c| (c * &m).to_integer()).collect() };
    (to_z(&l), scaled.iter().map(to_z).collect())
}

fn from_z(p: &ZPoly) -> QPoly {
    QPoly::from_coeffs(p.iter().cloned().map(BigRational::from_integer).collect())
}

fn z_trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(out)
}

/// `acc += k * p`.
fn z_add_scaled(acc: &mut ZPoly, p: &ZPoly, k: &BigInt) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (a, c) in acc.iter_mut().zip(p) {
        *a += c * k;
    }
    let trimmed = z_trim(std::mem::take(acc));
    *acc = trimmed;
}

fn z_derivative(p: &ZPoly) -> ZPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// `delta^(n+1) * A * delta^-1` for `A` of degree `n`, using
/// `(1/delta)^(k) = p_k / delta^(k+1)` with
/// `p_(k+1) = p_k' * delta - (k+1) * p_k * delta'`.
fn conjugate_by_inverse(a: &[ZPoly], delta: &ZPoly) -> Vec<ZPoly> {
    let n = a.len() - 1;
    let dd = z_derivative(delta);
    let mut p: Vec<ZPoly> = vec![vec![BigInt::one()]];
    for k in 0..n {
        let mut next = z_mul(&z_derivative(&p[k]), delta);
        z_add_scaled(&mut next, &z_mul(&p[k], &dd), &-BigInt::from(k + 1));
        p.push(next);
    }
    let mut pow: Vec<ZPoly> = vec![vec![BigInt::one()]];
    for _ in 0..n {
        pow.push(z_mul(pow.last().unwrap(), delta));
    }
    let mut out = vec![ZPoly::new(); n + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_empty() {
            continue;
        }
        for k in 0..=i {
            let term = z_mul(&z_mul(ai, &p[k]), &pow[n - k]);
            z_add_scaled(&mut out[i - k], &term, &binomial(i, k));
        }
    }
    out
}

/// Product of operators with coefficients in `Z[t]`.
fn poly_op_mul(a: &[ZPoly], b: &[ZPoly]) -> Vec<ZPoly> {
    let dl = a.len() - 1;
    let mut out = vec![ZPoly::new(); a.len() + b.len() - 1];
    for (j, bj) in b.iter().enumerate() {
        if bj.is_empty() {
            continue;
        }
        let mut derivs = vec![bj.clone()];
        for _ in 0..dl {
            let next = z_derivative(derivs.last().unwrap());
            derivs.push(next);
        }
        for (i, ai) in a.iter().enumerate() {
            if ai.is_empty() {
                continue;
            }
            for (k, bk) in derivs.iter().enumerate().take(i + 1) {
                if bk.is_empty() {
                    break;
                }
                z_add_scaled(&mut out[i - k + j], &z_mul(ai, bk), &binomial(i, k));
            }
        }
    }
    out
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for OreOp {
            type Output = OreOp;
            fn $m(self, rhs: OreOp) -> OreOp {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for OreOp {
    type Output = OreOp;
    fn neg(self) -> OreOp {
        -&self
    }
}

impl fmt::Display for OreOp {
    /// Descending powers of `D`, e.g. `t*D^2 + (t+1)*D + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let m = match k {
                    0 => String::new(),
                    1 => "D".to_string(),
                    _ => format!("D^{k}"),
                };
                (c.clone(), m)
            });
        write!(f, "{}", format_sum(terms))
    }
}

/// One row of the extended Euclidean trace: `r = L1*a + L2*b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EleStep {
    pub r: OreOp,
    pub a: OreOp,
    pub b: OreOp,
}

/// Output of the extended left Euclidean algorithm.
///
/// `r_last` is the last nonzero remainder `R_{n-1}`, a (non-normalized)
/// greatest common left divisor. `a_n`, `b_n` satisfy `L1*a_n + L2*b_n = 0`
/// and `a_prev`, `b_prev` satisfy `L1*a_prev + L2*b_prev = r_last`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ele {
    pub r_last: OreOp,
    pub a_n: OreOp,
    pub b_n: OreOp,
    pub a_prev: OreOp,
    pub b_prev: OreOp,
    /// Rows `0..=n` of the trace, including the initialization rows.
    pub steps: Vec<EleStep>,
    /// The left quotients `Q_1 .. Q_{n-1}`.
    pub quotients: Vec<OreOp>,
}

/// Extended left Euclidean algorithm on `(l1, l2)`.
pub fn ele(l1: &OreOp, l2: &OreOp) -> Result<Ele> {
    if l1.is_zero() && l2.is_zero() {
        return Err(Error::BothZero);
    }
    let mut steps = vec![
        EleStep {
            r: l1.clone(),
            a: OreOp::one(),
            b: OreOp::zero(),
        },
        EleStep {
            r: l2.clone(),
            a: OreOp::zero(),
            b: OreOp::one(),
        },
    ];
    let mut quotients = Vec::new();
    let mut i = 1;
    while !steps[i].r.is_zero() {
        i += 1;
        let (prev2, prev1) = (&steps[i - 2], &steps[i - 1]);
        let (q, r) = prev2.r.lquo_lrem(&prev1.r)?;
        let a = &prev2.a - &(&prev1.a * &q);
        let b = &prev2.b - &(&prev1.b * &q);
        quotients.push(q);
        steps.push(EleStep { r, a, b });
    }
    let n = i;
    Ok(Ele {
        r_last: steps[n - 1].r.clone(),
        a_n: steps[n].a.clone(),
        b_n: steps[n].b.clone(),
        a_prev: steps[n - 1].a.clone(),
        b_prev: steps[n - 1].b.clone(),
        steps,
        quotients,
    })
}

/// Monic greatest common left divisor.
pub fn gcld(l1: &OreOp, l2: &OreOp) -> Result<OreOp> {
    Ok(ele(l1, l2)?.r_last.monic_right())
}

/// Monic greatest common right divisor, via right Euclidean remainders.
pub fn gcrd(l1: &OreOp, l2: &OreOp) -> Result<OreOp> {
    if l1.is_zero() && l2.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (l1.clone(), l2.clone());
    while !b.is_zero() {
        let (_, r) = a.rquo_rrem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic_left())
}

/// Monic least common right multiple `L1*A_n`, normalized on the right.
pub fn lcrm(l1: &OreOp, l2: &OreOp) -> Result<OreOp> {
    if l1.is_zero() || l2.is_zero() {
        return Err(Error::Precondition(
            "lcrm needs two nonzero operators".into(),
        ));
    }
    let e = ele(l1, l2)?;
    Ok((l1 * &e.a_n).monic_right())
}

/// Wronskian determinant of the rows `(xi, xi', ..., xi^(n-1))`.
pub fn wronskian(elems: &[ScalarRat]) -> Result<ScalarRat> {
    if elems.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = elems.len();
    let rows: Vec<Vec<ScalarRat>> = elems
        .iter()
        .map(|xi| {
            let mut row = Vec::with_capacity(n);
            let mut d = xi.clone();
            for k in 0..n {
                if k > 0 {
                    d = d.derive();
                }
                row.push(d.clone());
            }
            row
        })
        .collect();
    Ok(field_det(rows))
}

/// Gaussian elimination over the field; used for Wronskians.
fn field_det(mut m: Vec<Vec<ScalarRat>>) -> ScalarRat {
    let n = m.len();
    let mut det = ScalarRat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return ScalarRat::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det = &det * &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let v = &m[i][j] - &(&factor * &m[k][j]);
                m[i][j] = v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> ScalarRat {
        ScalarRat::t()
    }
    fn c(n: i64) -> ScalarRat {
        ScalarRat::from_int(n)
    }
    fn op(cs: &[ScalarRat]) -> OreOp {
        OreOp::from_coeffs(cs.to_vec())
    }
    fn d() -> OreOp {
        OreOp::d()
    }

    #[test]
    fn commutation_rule() {
        let tt = OreOp::scalar(t());
        assert_eq!(&d() * &tt, op(&[c(1), t()]));
    }

    #[test]
    fn product_by_hand() {
        // (tD + t)(D + 1) = tD^2 + 2tD + t
        let lhs = op(&[t(), t()]);
        let rhs = op(&[c(1), c(1)]);
        assert_eq!(&lhs * &rhs, op(&[t(), &c(2) * &t(), t()]));
        assert!((&lhs * &OreOp::zero()).is_zero());
    }

    #[test]
    fn apply_examples() {
        let d2 = op(&[c(0), c(0), c(1)]);
        assert_eq!(d2.apply(&t().pow(3)), &c(6) * &t());
        let l = op(&[&t() + &c(1), t()]);
        assert_eq!(l.apply(&(&c(1) / &t())), c(1));
        assert!(l.apply(&ScalarRat::zero()).is_zero());
    }

    #[test]
    fn left_division_examples() {
        let d2 = op(&[c(0), c(0), c(1)]);
        assert_eq!(d2.lquo_lrem(&d()).unwrap(), (d(), OreOp::zero()));
        let l1 = op(&[&t() + &c(1), t()]);
        let l2 = op(&[c(1), c(1)]);
        assert_eq!(
            l1.lquo_lrem(&l2).unwrap(),
            (OreOp::scalar(t()), OreOp::zero())
        );
        assert_eq!(l1.lquo_lrem(&l1).unwrap(), (OreOp::one(), OreOp::zero()));
        assert_eq!(l1.lquo_lrem(&OreOp::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn right_division_examples() {
        let d2 = op(&[c(0), c(0), c(1)]);
        assert_eq!(d2.rquo_rrem(&d()).unwrap(), (d(), OreOp::zero()));
        let l1 = op(&[t(), t()]);
        let l2 = op(&[c(1), c(1)]);
        assert_eq!(
            l1.rquo_rrem(&l2).unwrap(),
            (OreOp::scalar(t()), OreOp::zero())
        );
        let inv_t = &c(1) / &t();
        let (q, r) = l2.rquo_rrem(&OreOp::scalar(t())).unwrap();
        // (D + 1) = ((t-1)/t^2 + D/t) * t
        let b = &(&t() - &c(1)) / &(&t() * &t());
        assert_eq!(q, op(&[b, inv_t]));
        assert!(r.is_zero());
    }

    #[test]
    fn ele_on_unirational_example() {
        let l1 = op(&[c(-1), c(-1)]);
        let e = ele(&l1, &d()).unwrap();
        assert!(e.r_last.is_unit());
        assert_eq!(e.a_n, d());
        assert_eq!(e.b_n, op(&[c(1), c(1)]));
        assert_eq!(e.a_prev, OreOp::one());
        assert_eq!(e.b_prev, OreOp::one());
    }

    #[test]
    fn ele_with_zero_second_argument() {
        let l = op(&[t(), c(1)]);
        let e = ele(&l, &OreOp::zero()).unwrap();
        assert_eq!(e.r_last, l);
        assert_eq!((e.a_n, e.b_n), (OreOp::zero(), OreOp::one()));
        assert_eq!((e.a_prev, e.b_prev), (OreOp::one(), OreOp::zero()));
        assert_eq!(
            ele(&OreOp::zero(), &OreOp::zero()).unwrap_err(),
            Error::BothZero
        );
    }

    #[test]
    fn gcld_examples() {
        let d2 = op(&[c(0), c(0), c(1)]);
        assert_eq!(gcld(&d2, &d()).unwrap(), d());
        let dp1 = op(&[c(1), c(1)]);
        let l2 = op(&[&t() + &c(1), t()]);
        assert_eq!(gcld(&dp1, &l2).unwrap(), dp1);
        let l1 = op(&[t(), t()]);
        assert_eq!(gcld(&l1, &dp1).unwrap(), OreOp::one());
    }

    #[test]
    fn gcrd_and_lcrm_examples() {
        let l1 = op(&[t(), t()]);
        let dp1 = op(&[c(1), c(1)]);
        assert_eq!(gcrd(&l1, &dp1).unwrap(), dp1);
        assert_eq!(gcrd(&d(), &d()).unwrap(), d());
        let m = lcrm(&l1, &dp1).unwrap();
        assert_eq!(m, op(&[t(), &c(2) * &t(), t()]).monic_right());
        assert!(m.is_monic());
        assert!(m.lquo_lrem(&l1).unwrap().1.is_zero());
        assert!(m.lquo_lrem(&dp1).unwrap().1.is_zero());
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(wronskian(&[c(1), t(), t().pow(2)]).unwrap(), c(2));
        assert!(wronskian(&[t(), &c(2) * &t()]).unwrap().is_zero());
        let inv_t = &c(1) / &t();
        assert_eq!(wronskian(&[inv_t, t()]).unwrap(), &c(2) / &t());
        assert_eq!(wronskian(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn display() {
        let l = op(&[c(1), &t() + &c(1), t()]);
        assert_eq!(l.to_string(), "t*D^2 + (t+1)*D + 1");
        assert_eq!(op(&[c(-1), c(-1)]).to_string(), "-D - 1");
        assert_eq!(OreOp::zero().to_string(), "0");
    }
}
