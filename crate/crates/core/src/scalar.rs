//! The ground differential field: rational functions in `t` over the
//! rationals, with derivation `d/dt`.
//!
//! Constants of the field are exactly the values whose numerator and
//! denominator do not involve `t`, so `Q` embeds as the degree-0 elements.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial in `t` with rational coefficients, stored
/// lowest degree first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading_coeff().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, rhs: &QPoly) -> (QPoly, QPoly) {
        let dr = rhs.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dr {
            return (QPoly::zero(), self.clone());
        }
        let lc_inv = rhs.leading_coeff().recip();
        let mut quo = vec![BigRational::zero(); rem.len() - dr];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dr] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quo[k] = c;
        }
        rem.truncate(dr);
        (QPoly::from_coeffs(quo), QPoly::from_coeffs(rem))
    }

    /// Monic gcd (zero only if both inputs are zero), computed by a
    /// primitive remainder sequence over the integers to avoid the
    /// coefficient growth of Euclid over `Q`.
    pub fn gcd(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        if self.is_constant() || rhs.is_constant() {
            return QPoly::one();
        }
        let (mut a, mut b) = (primitive_int(self), primitive_int(rhs));
        if let Some(g) = heuristic_gcd(&a, &b) {
            return QPoly::from_coeffs(g.into_iter().map(BigRational::from_integer).collect())
                .monic();
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = int_prem(&a, &b);
            if r.is_empty() {
                let coeffs = b.into_iter().map(BigRational::from_integer).collect();
                return QPoly::from_coeffs(coeffs).monic();
            }
            a = b;
            b = primitive(r);
        }
        QPoly::one()
    }

    fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
}

/// Integer coefficient vector with unit content and positive leading
/// coefficient, proportional to `p`.
fn primitive_int(p: &QPoly) -> Vec<BigInt> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| {
        num::integer::lcm(acc, c.denom().clone())
    });
    primitive(p.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect())
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v
        .iter()
        .fold(BigInt::zero(), |acc, c| num::integer::gcd(acc, c.clone()));
    let negate = v.last().is_some_and(|c| c.is_negative());
    if !content.is_one() || negate {
        let content = if negate { -content } else { content };
        for c in &mut v {
            *c /= &content;
        }
    }
    v
}

/// Gcd of primitive integer polynomials by evaluation at a large integer:
/// the integer gcd of the values, read back as symmetric base-`xi` digits,
/// is the polynomial gcd whenever its primitive part divides both inputs.
/// `None` after a few unlucky evaluation points.
fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let norm = |v: &[BigInt]| v.iter().map(|c| c.abs()).max().unwrap_or_default();
    let mut xi: BigInt = 2 * norm(a).min(norm(b)) + 29;
    let deg = a.len().max(b.len()) as u64;
    for _ in 0..6 {
        if xi.bits() * deg > 1 << 20 {
            return None;
        }
        let h = num::integer::gcd(eval_int(a, &xi), eval_int(b, &xi));
        let g = primitive(symmetric_digits(h, &xi));
        if int_divides(a, &g) && int_divides(b, &g) {
            return Some(g);
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn symmetric_digits(mut h: BigInt, xi: &BigInt) -> Vec<BigInt> {
    let half: BigInt = xi / 2;
    let mut out = Vec::new();
    while !h.is_zero() {
        let mut r = num::Integer::mod_floor(&h, xi);
        if r > half {
            r -= xi;
        }
        h = (h - &r) / xi;
        out.push(r);
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Exact division test over the integers.
fn int_divides(a: &[BigInt], g: &[BigInt]) -> bool {
    let Some(lg) = g.last() else { return false };
    if g.len() > a.len() {
        return false;
    }
    let mut r = a.to_vec();
    while r.len() >= g.len() {
        let (q, rem) = num::Integer::div_rem(r.last().unwrap(), lg);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - g.len();
        for (j, gj) in g.iter().enumerate() {
            r[shift + j] -= &q * gj;
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r.is_empty()
}

/// Pseudo-remainder of `a` by `b` over the integers, trimmed.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl QPoly {
    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for QPoly {
    /// Descending powers without spaces, e.g. `t^2-3*t+1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let tpart = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{tpart}")?;
            } else {
                write!(f, "{}*{tpart}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// An element of `Q(t)` in canonical form: coprime numerator and monic
/// denominator, with zero represented as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarRat {
    num: QPoly,
    den: QPoly,
}

impl Default for ScalarRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl ScalarRat {
    pub fn zero() -> Self {
        ScalarRat {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    /// The base variable `t`.
    pub fn t() -> Self {
        Self::from_poly(QPoly::monomial(BigRational::one(), 1))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_poly(p: QPoly) -> Self {
        ScalarRat {
            num: p,
            den: QPoly::one(),
        }
    }

    /// Builds `num/den` and normalizes it.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.leading_coeff().recip();
            return ScalarRat {
                num: num.scale(&inv),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        ScalarRat { num, den }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True iff the derivative vanishes, i.e. the value lies in `Q`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The rational value when `is_constant` holds.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_constant().then(|| self.num.leading_coeff())
    }

    /// True when `t` appears anywhere.
    pub fn involves_t(&self) -> bool {
        !self.is_constant()
    }

    pub fn is_negative(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &ScalarRat) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// `d/dt` by the quotient rule.
    pub fn derive(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        // With d = g*e and g = gcd(d, d'), (n/d)' = (n'e - n d'/g) / (d e)
        // and only factors of g can cancel.
        let dd = self.den.derivative();
        let g = self.den.gcd(&dd);
        let e = quo(&self.den, &g);
        let num = &(&self.num.derivative() * &e) - &(&self.num * &quo(&dd, &g));
        if num.is_zero() {
            return Self::zero();
        }
        let den = &self.den * &e;
        if g.is_constant() {
            return Self::monic_den(num, den);
        }
        let h = num.gcd(&g);
        if h.is_constant() {
            Self::monic_den(num, den)
        } else {
            Self::monic_den(quo(&num, &h), quo(&den, &h))
        }
    }

    /// The `k`-th derivative.
    pub fn derive_n(&self, k: usize) -> Self {
        let mut r = self.clone();
        for _ in 0..k {
            if r.is_zero() {
                break;
            }
            r = r.derive();
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales an already coprime pair so the denominator is monic.
    fn monic_den(num: QPoly, den: QPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return ScalarRat { num, den };
        }
        let inv = lc.recip();
        ScalarRat {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// A single printed factor: no top-level `+`/`-` and no `/`.
    pub(crate) fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.term_count() <= 1
    }
}

fn quo(a: &QPoly, g: &QPoly) -> QPoly {
    if g.is_one() {
        a.clone()
    } else {
        a.div_rem(g).0
    }
}

impl Add for &ScalarRat {
    type Output = ScalarRat;
    fn add(self, rhs: &ScalarRat) -> ScalarRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return ScalarRat::from_poly(&self.num + &rhs.num);
            }
            return ScalarRat::normalized(&self.num + &rhs.num, self.den.clone());
        }
        // With g = gcd(b, d): a/b + c/d = (a*d' + c*b') / (b'*d), and only
        // factors of g can cancel.
        let g = self.den.gcd(&rhs.den);
        let b1 = quo(&self.den, &g);
        let d1 = quo(&rhs.den, &g);
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return ScalarRat::zero();
        }
        let den = &b1 * &rhs.den;
        if g.is_one() {
            return ScalarRat::monic_den(num, den);
        }
        let h = num.gcd(&g);
        if h.is_one() {
            ScalarRat::monic_den(num, den)
        } else {
            ScalarRat::monic_den(quo(&num, &h), quo(&den, &h))
        }
    }
}

impl Sub for &ScalarRat {
    type Output = ScalarRat;
    fn sub(self, rhs: &ScalarRat) -> ScalarRat {
        self + &(-rhs)
    }
}

impl Neg for &ScalarRat {
    type Output = ScalarRat;
    fn neg(self) -> ScalarRat {
        ScalarRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for ScalarRat {
    type Output = ScalarRat;
    fn neg(self) -> ScalarRat {
        -&self
    }
}

impl Mul for &ScalarRat {
    type Output = ScalarRat;
    fn mul(self, rhs: &ScalarRat) -> ScalarRat {
        if self.is_zero() || rhs.is_zero() {
            return ScalarRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarRat::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel: the inputs are reduced, so only gcd(a, d) and
        // gcd(c, b) can cancel.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &quo(&self.num, &g1) * &quo(&rhs.num, &g2);
        let den = &quo(&self.den, &g2) * &quo(&rhs.den, &g1);
        ScalarRat::monic_den(num, den)
    }
}

impl Div for &ScalarRat {
    type Output = ScalarRat;
    /// Panics on division by zero; use [`ScalarRat::checked_div`] otherwise.
    fn div(self, rhs: &ScalarRat) -> ScalarRat {
        self.checked_div(rhs).expect("division by zero in Q(t)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ScalarRat {
            type Output = ScalarRat;
            fn $m(self, rhs: ScalarRat) -> ScalarRat {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for ScalarRat {
    fn from(n: i64) -> Self {
        ScalarRat::from_int(n)
    }
}

impl fmt::Display for ScalarRat {
    /// Canonical text: `(t^2+1)/(t+2)`, `1/t^2`, `-3/2`, `t+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.is_constant() {
            return write!(f, "{}", fmt_rational(&self.num.leading_coeff()));
        }
        // Clear rational coefficients so both parts print with integers.
        let lcm = self
            .num
            .coeffs
            .iter()
            .chain(self.den.coeffs.iter())
            .fold(BigInt::one(), |acc, c| {
                num::integer::lcm(acc, c.denom().clone())
            });
        let scale = BigRational::from_integer(lcm);
        let (n, d) = (self.num.scale(&scale), self.den.scale(&scale));
        let num = if n.term_count() > 1 {
            format!("({n})")
        } else {
            n.to_string()
        };
        let den = if d.term_count() > 1 || !d.leading_coeff().is_one() {
            format!("({d})")
        } else {
            d.to_string()
        };
        write!(f, "{num}/{den}")
    }
}
