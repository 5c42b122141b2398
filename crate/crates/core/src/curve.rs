//! Curve-level algorithms: unirationality and parametrization of linear
//! differential curves, properness, implicitization, inversion, Mobius
//! reparametrization and order relations.

use std::fmt;

use crate::diffpoly::{
    ord_reduced_linear_fraction, remainder_sequence_scaled, DiffPoly, Indet, Monomial, Order,
};
use crate::error::{Error, Result};
use crate::ore::{ele, gcld, gcrd, OreOp};
use crate::resultant::diff_resultant;
use crate::scalar::ScalarRat;

/// The curve `L1(x) + L2(y) + a = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCurve {
    pub l1: OreOp,
    pub l2: OreOp,
    pub a: ScalarRat,
}

impl LinearCurve {
    pub fn new(l1: OreOp, l2: OreOp, a: ScalarRat) -> Result<Self> {
        if l1.is_zero() && l2.is_zero() {
            return Err(Error::Precondition("curve must involve x or y".into()));
        }
        Ok(LinearCurve { l1, l2, a })
    }

    /// Reads `L1`, `L2`, `a` off a polynomial that is affine-linear in the
    /// derivatives of `x` and `y` with ground-field coefficients.
    pub fn from_diffpoly(f: &DiffPoly) -> Result<Self> {
        let mut c1: Vec<ScalarRat> = Vec::new();
        let mut c2: Vec<ScalarRat> = Vec::new();
        let mut a = ScalarRat::zero();
        for (m, c) in f.terms() {
            match m.factors() {
                [] => a = c.clone(),
                [(v, 1)] if v.indet != Indet::U => {
                    let slot = if v.indet == Indet::X {
                        &mut c1
                    } else {
                        &mut c2
                    };
                    if slot.len() <= v.order {
                        slot.resize(v.order + 1, ScalarRat::zero());
                    }
                    slot[v.order] = c.clone();
                }
                _ => return Err(Error::NotLinear("x, y".into())),
            }
        }
        Self::new(OreOp::from_coeffs(c1), OreOp::from_coeffs(c2), a)
    }

    pub fn to_diffpoly(&self) -> DiffPoly {
        &(&apply_to(&self.l1, Indet::X) + &apply_to(&self.l2, Indet::Y))
            + &DiffPoly::constant(self.a.clone())
    }
}

impl fmt::Display for LinearCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_diffpoly())
    }
}

/// `L(v)` as a differential polynomial.
pub fn apply_to(op: &OreOp, v: Indet) -> DiffPoly {
    DiffPoly::from_terms(op.coeffs().iter().enumerate().map(|(k, c)| {
        (
            Monomial::var(crate::diffpoly::DerivVar::new(v, k)),
            c.clone(),
        )
    }))
}

/// Operator part and constant term of a polynomial affine-linear in `u`.
fn split_affine(p: &DiffPoly) -> Result<(OreOp, ScalarRat)> {
    let (coeffs, free) = p.linear_coefficients(Indet::U)?;
    let top = coeffs.keys().next_back().copied().map_or(0, |k| k + 1);
    let mut ops = vec![ScalarRat::zero(); top];
    for (k, c) in coeffs {
        ops[k] = c
            .constant_value()
            .ok_or_else(|| Error::NotLinear("u".into()))?;
    }
    let c = free
        .constant_value()
        .ok_or_else(|| Error::NotLinear("u".into()))?;
    Ok((OreOp::from_coeffs(ops), c))
}

/// A pair of differential rational functions of `u`, each a
/// (numerator, denominator) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralRationalParam {
    pub x: (DiffPoly, DiffPoly),
    pub y: (DiffPoly, DiffPoly),
}

impl GeneralRationalParam {
    pub fn new(x: (DiffPoly, DiffPoly), y: (DiffPoly, DiffPoly)) -> Result<Self> {
        if x.1.is_zero() || y.1.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if [&x.0, &x.1, &y.0, &y.1].iter().all(|p| p.is_constant()) {
            return Err(Error::Precondition("parametrization must involve u".into()));
        }
        Ok(GeneralRationalParam { x, y })
    }

    pub fn polynomial(x: DiffPoly, y: DiffPoly) -> Result<Self> {
        Self::new((x, DiffPoly::one()), (y, DiffPoly::one()))
    }

    pub fn coords(&self) -> [&(DiffPoly, DiffPoly); 2] {
        [&self.x, &self.y]
    }

    /// Coordinate-wise cross-multiplication equality.
    pub fn cross_equal(&self, other: &GeneralRationalParam) -> bool {
        self.coords()
            .iter()
            .zip(other.coords())
            .all(|((n1, d1), (n2, d2))| &(n1 * d2) == &(n2 * d1))
    }
}

impl fmt::Display for GeneralRationalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_fraction(&self.x), fmt_fraction(&self.y))
    }
}

/// Prints `n/d` so that it reparses to the same pair.
pub fn fmt_fraction((n, d): &(DiffPoly, DiffPoly)) -> String {
    if *d == DiffPoly::one() {
        return n.to_string();
    }
    let num = if n.num_terms() > 1 {
        format!("({n})")
    } else {
        n.to_string()
    };
    let plain_den = d.num_terms() == 1
        && d.leading_term()
            .is_some_and(|(m, c)| c.is_one() && !m.is_one());
    if plain_den {
        format!("{num}/{d}")
    } else {
        format!("{num}/({d})")
    }
}

/// A parametrization whose coordinates are reduced quotients of
/// polynomials affine-linear in the derivatives of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRationalParam {
    param: GeneralRationalParam,
    m1: Order,
    m2: Order,
}

impl LinearRationalParam {
    pub fn new(x: (DiffPoly, DiffPoly), y: (DiffPoly, DiffPoly)) -> Result<Self> {
        let m1 = ord_reduced_linear_fraction(&x.0, &x.1)?;
        let m2 = ord_reduced_linear_fraction(&y.0, &y.1)?;
        let param = GeneralRationalParam::new(x, y)?;
        Ok(LinearRationalParam { param, m1, m2 })
    }

    pub fn polynomial(x: DiffPoly, y: DiffPoly) -> Result<Self> {
        Self::new((x, DiffPoly::one()), (y, DiffPoly::one()))
    }

    pub fn x(&self) -> &(DiffPoly, DiffPoly) {
        &self.param.x
    }

    pub fn y(&self) -> &(DiffPoly, DiffPoly) {
        &self.param.y
    }

    pub fn m1(&self) -> Order {
        self.m1
    }

    pub fn m2(&self) -> Order {
        self.m2
    }

    pub fn general(&self) -> &GeneralRationalParam {
        &self.param
    }

    pub fn is_polynomial(&self) -> bool {
        self.param.x.1.is_constant() && self.param.y.1.is_constant()
    }

    /// For a polynomial parametrization `(L1(u) + c1, L2(u) + c2)`, returns
    /// `[(L1, c1), (L2, c2)]`.
    pub fn operator_parts(&self) -> Result<[(OreOp, ScalarRat); 2]> {
        let part = |(n, d): &(DiffPoly, DiffPoly)| -> Result<(OreOp, ScalarRat)> {
            let d = d.constant_value().ok_or_else(|| {
                Error::Precondition("expected a polynomial parametrization".into())
            })?;
            split_affine(&n.scale(&d.inv()?))
        };
        Ok([part(&self.param.x)?, part(&self.param.y)?])
    }

    /// `f1 = x*Q1 - P1`, `f2 = y*Q2 - P2`.
    pub fn implicit_pair(&self) -> (DiffPoly, DiffPoly) {
        let f = |v: Indet, (p, q): &(DiffPoly, DiffPoly)| &(&DiffPoly::deriv(v, 0) * q) - p;
        (f(Indet::X, &self.param.x), f(Indet::Y, &self.param.y))
    }
}

impl fmt::Display for LinearRationalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.param.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperReport {
    pub resultant: DiffPoly,
    pub ord_x: Order,
    pub ord_y: Order,
    /// `(m2, m1)`: the orders `ord_x R` and `ord_y R` must match.
    pub expected: (Order, Order),
    pub proper: bool,
}

/// Parametrizes `F` by the extended left Euclidean algorithm, or returns
/// `None` when `gcld(L1, L2)` is not a unit.
pub fn ldcp(curve: &LinearCurve) -> Option<LinearRationalParam> {
    let e = ele(&curve.l1, &curve.l2).expect("curve operators are not both zero");
    if e.r_last.degree() != Some(0) {
        return None;
    }
    let c = e.r_last.coeff(0);
    let s = -&curve
        .a
        .checked_div(&c)
        .expect("R_{n-1} is a nonzero scalar");
    let coord =
        |an: &OreOp, aprev: &OreOp| &apply_to(an, Indet::U) + &DiffPoly::constant(aprev.apply(&s));
    let p = LinearRationalParam::polynomial(coord(&e.a_n, &e.a_prev), coord(&e.b_n, &e.b_prev))
        .expect("LDCP output is a valid parametrization");
    // L1 A_n + L2 B_n vanishes by construction, leaving c*s + a.
    debug_assert!((&(&c * &s) + &curve.a).is_zero());
    Some(p)
}

/// `(gcld(L1, L2) is a unit, gcld(L1, L2))`.
pub fn is_unirational(curve: &LinearCurve) -> (bool, OreOp) {
    let g = gcld(&curve.l1, &curve.l2).expect("curve operators are not both zero");
    (g.degree() == Some(0), g)
}

/// True iff `F` vanishes identically on the parametrization.
pub fn verify_on_curve(f: &DiffPoly, p: &GeneralRationalParam) -> bool {
    f.substitute_rational((&p.x.0, &p.x.1), (&p.y.0, &p.y.1))
        .is_ok_and(|(n, _)| n.is_zero())
}

/// Properness of a polynomial parametrization: the operator parts have a
/// unit greatest common right divisor.
pub fn proper_check_poly(p: &LinearRationalParam) -> Result<bool> {
    let [(l1, _), (l2, _)] = p.operator_parts()?;
    Ok(gcrd(&l1, &l2)?.degree() == Some(0))
}

/// Properness through the differential resultant of
/// `x*Q1 - P1` and `y*Q2 - P2`.
pub fn proper_check_rational(p: &LinearRationalParam) -> Result<ProperReport> {
    if p.m1.is_none() || p.m2.is_none() {
        return Err(Error::Precondition(
            "both coordinates must involve u".into(),
        ));
    }
    let (f1, f2) = p.implicit_pair();
    let resultant = diff_resultant(&f1, &f2)?;
    let ord_x = resultant.order_in(Indet::X);
    let ord_y = resultant.order_in(Indet::Y);
    let expected = (p.m2, p.m1);
    let proper = !resultant.is_zero() && (ord_x, ord_y) == expected;
    Ok(ProperReport {
        resultant,
        ord_x,
        ord_y,
        expected,
        proper,
    })
}

/// Properness against a known defining polynomial: the coordinate orders
/// must equal `ord_y F` and `ord_x F` respectively.
pub fn proper_check_via_curve(f: &DiffPoly, p: &LinearRationalParam) -> Result<bool> {
    if !verify_on_curve(f, p.general()) {
        return Err(Error::NotOnCurve);
    }
    Ok(p.m1 == f.order_in(Indet::Y) && p.m2 == f.order_in(Indet::X))
}

/// Scales `f` so that its leading coefficient is 1.
pub fn normalize(f: &DiffPoly) -> DiffPoly {
    match f.leading_term() {
        Some((_, c)) => f.scale(&c.inv().expect("nonzero leading coefficient")),
        None => DiffPoly::zero(),
    }
}

/// Implicit equation of a proper polynomial parametrization, read off the
/// end of the remainder sequence of `x - P1(u)`, `y - P2(u)`.
pub fn implicitize_poly(p: &LinearRationalParam) -> Result<LinearCurve> {
    if !proper_check_poly(p)? {
        return Err(Error::Improper(
            "operator parts share a right factor".into(),
        ));
    }
    let (f1, f2) = p.implicit_pair();
    let seq = remainder_sequence_scaled(&f1, &f2)?;
    let fl = seq.terminus();
    if fl.is_zero() {
        return Err(Error::Internal("remainder sequence ended in zero".into()));
    }
    LinearCurve::from_diffpoly(&normalize(fl))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implicitization {
    /// The `u`-free end of the remainder sequence, with leading
    /// coefficient 1.
    pub f_l: DiffPoly,
    /// The element before it, of `u`-order 0.
    pub f_prev: DiffPoly,
    pub resultant: DiffPoly,
}

/// For a proper linear rational parametrization, the implicit multiple
/// `f_l`, its predecessor and the differential resultant.
pub fn implicitize_rational(p: &LinearRationalParam) -> Result<Implicitization> {
    let report = proper_check_rational(p)?;
    if !report.proper {
        return Err(Error::Improper(improper_reason(&report)));
    }
    let (f_l, f_prev) = implicit_chain(p)?;
    Ok(Implicitization {
        f_l,
        f_prev,
        resultant: report.resultant,
    })
}

/// Terminus and penultimate element of the remainder sequence of the
/// implicit pair, assuming properness.
fn implicit_chain(p: &LinearRationalParam) -> Result<(DiffPoly, DiffPoly)> {
    let (f1, f2) = p.implicit_pair();
    let seq = remainder_sequence_scaled(&f1, &f2)?;
    let f_l = normalize(seq.terminus());
    if f_l.is_zero() {
        return Err(Error::Internal("remainder sequence ended in zero".into()));
    }
    Ok((f_l, seq.penultimate().clone()))
}

/// Human-readable reason for an improper report.
pub fn improper_reason(r: &ProperReport) -> String {
    if r.resultant.is_zero() {
        return "R=0".into();
    }
    if r.ord_x != r.expected.0 {
        format!(
            "ord_x(R)={}, expected {}",
            fmt_order(r.ord_x),
            fmt_order(r.expected.0)
        )
    } else {
        format!(
            "ord_y(R)={}, expected {}",
            fmt_order(r.ord_y),
            fmt_order(r.expected.1)
        )
    }
}

pub fn fmt_order(o: Order) -> String {
    o.map_or_else(|| "-inf".to_string(), |k| k.to_string())
}

/// The inverse map `u = -h/g`, where `g*u + h` is the element of `u`-order
/// 0 in the remainder sequence. Returns `(-h, g)` scaled so that `g` has
/// leading coefficient 1.
pub fn inversion(p: &LinearRationalParam) -> Result<(DiffPoly, DiffPoly)> {
    if !matches!((p.m1, p.m2), (Some(a), Some(b)) if a >= 1 && b >= 1) {
        return Err(Error::Precondition(
            "inversion needs both coordinate orders at least 1".into(),
        ));
    }
    // Polynomial parametrizations admit the much cheaper gcrd test.
    if p.is_polynomial() {
        if !proper_check_poly(p)? {
            return Err(Error::Improper(
                "gcrd of the operator parts is not 1".into(),
            ));
        }
    } else {
        let report = proper_check_rational(p)?;
        if !report.proper {
            return Err(Error::Improper(improper_reason(&report)));
        }
    }
    let (_, f_prev) = implicit_chain(p)?;
    let (coeffs, h) = f_prev.linear_coefficients(Indet::U)?;
    let g = match (coeffs.len(), coeffs.get(&0)) {
        (1, Some(g)) => g.clone(),
        _ => {
            return Err(Error::Internal(
                "penultimate remainder is not of u-order 0".into(),
            ))
        }
    };
    let (_, lc) = g.leading_term().expect("g is nonzero");
    let s = lc.inv()?;
    Ok(((-&h).scale(&s), g.scale(&s)))
}

/// Substitutes `u |-> (a*u + b)/(c*u + d)` into every coordinate.
pub fn mobius_apply(
    p: &GeneralRationalParam,
    a: &ScalarRat,
    b: &ScalarRat,
    c: &ScalarRat,
    d: &ScalarRat,
) -> Result<GeneralRationalParam> {
    if (&(a * d) - &(b * c)).is_zero() {
        return Err(Error::DegenerateMobius);
    }
    let u = DiffPoly::deriv(Indet::U, 0);
    let lin = |p: &ScalarRat, q: &ScalarRat| {
        &(&u * &DiffPoly::constant(p.clone())) + &DiffPoly::constant(q.clone())
    };
    let (mn, md) = (lin(a, b), lin(c, d));
    let sub = |f: &DiffPoly| f.substitute(&[(Indet::U, &mn, &md)]);
    let coord = |(n, q): &(DiffPoly, DiffPoly)| -> Result<(DiffPoly, DiffPoly)> {
        let (nn, nd) = sub(n)?;
        let (qn, qd) = sub(q)?;
        let (mut num, mut den) = (&nn * &qd, &qn * &nd);
        // Both sides carry powers of c*u + d; cancel the common ones.
        if !md.is_constant() {
            while let (Ok(n2), Ok(d2)) = (num.exact_div(&md), den.exact_div(&md)) {
                num = n2;
                den = d2;
            }
        }
        Ok((num, den))
    };
    GeneralRationalParam::new(coord(&p.x)?, coord(&p.y)?)
}

/// `ord_x F + m1 = ord_y F + m2`, `ord_x F <= m2` and `ord_y F <= m1`.
/// False whenever an order is negative infinity.
pub fn order_relation_check(f: &DiffPoly, m1: Order, m2: Order) -> bool {
    match (f.order_in(Indet::X), f.order_in(Indet::Y), m1, m2) {
        (Some(ox), Some(oy), Some(m1), Some(m2)) => ox + m1 == oy + m2 && ox <= m2 && oy <= m1,
        _ => false,
    }
}

/// `D` with `A = D(B)` as linear differential polynomials, if it exists.
pub fn ideal_membership_linear(a: &LinearCurve, b: &LinearCurve) -> Option<OreOp> {
    let (num, den) = if b.l1.is_zero() {
        (&a.l2, &b.l2)
    } else {
        (&a.l1, &b.l1)
    };
    let (d, r) = num.rquo_rrem(den).ok()?;
    if !r.is_zero() {
        return None;
    }
    let member = &d * &b.l1 == a.l1 && &d * &b.l2 == a.l2 && d.apply(&b.a) == a.a;
    if !member {
        return None;
    }
    if d.degree().is_some_and(|k| k > 0) {
        debug_assert!(
            !is_unirational(a).0,
            "A in [B] with deg D > 0 forces A non-unirational"
        );
    }
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> DiffPoly {
        DiffPoly::deriv(Indet::X, k)
    }
    fn y(k: usize) -> DiffPoly {
        DiffPoly::deriv(Indet::Y, k)
    }
    fn u(k: usize) -> DiffPoly {
        DiffPoly::deriv(Indet::U, k)
    }
    fn c(n: i64) -> DiffPoly {
        DiffPoly::constant(ScalarRat::from_int(n))
    }
    fn t() -> DiffPoly {
        DiffPoly::constant(ScalarRat::t())
    }
    fn curve(f: &DiffPoly) -> LinearCurve {
        LinearCurve::from_diffpoly(f).unwrap()
    }
    fn poly(p1: DiffPoly, p2: DiffPoly) -> LinearRationalParam {
        LinearRationalParam::polynomial(p1, p2).unwrap()
    }
    fn gpoly(p1: DiffPoly, p2: DiffPoly) -> GeneralRationalParam {
        GeneralRationalParam::polynomial(p1, p2).unwrap()
    }

    #[test]
    fn ldcp_examples() {
        let f = &x(2) - &y(1);
        assert!(ldcp(&curve(&f)).is_none());
        assert_eq!(is_unirational(&curve(&f)), (false, OreOp::d()));

        let f = &(&y(1) - &x(1)) - &x(0);
        let p = ldcp(&curve(&f)).unwrap();
        let rep = poly(u(1), &u(0) + &u(1));
        assert!(p.general().cross_equal(rep.general()));
        assert_eq!(is_unirational(&curve(&f)).0, true);

        let f = &(&(&x(1) + &x(0)) + &(&t() * &y(1))) + &(&(&t() + &c(1)) * &y(0));
        assert!(ldcp(&curve(&f)).is_none());
        assert_eq!(
            is_unirational(&curve(&f)).1,
            OreOp::from_coeffs(vec![ScalarRat::one(); 2])
        );

        let f = &(&(&t() * &x(1)) + &(&t() * &x(0))) + &(&y(1) + &y(0));
        let p = ldcp(&curve(&f)).unwrap();
        let rep = poly(
            &u(1) + &u(0),
            &(&(&c(0) - &t()) * &u(1)) + &(&(&c(1) - &t()) * &u(0)),
        );
        assert!(p.general().cross_equal(rep.general()));

        let f = &(&y(0) - &x(1)) - &t();
        let p = ldcp(&curve(&f)).unwrap();
        assert!(p.general().cross_equal(poly(u(0), &u(1) + &t()).general()));
        assert!(verify_on_curve(&f, p.general()));
    }

    #[test]
    fn degenerate_curves() {
        let f = &x(0) - &c(3);
        let p = ldcp(&curve(&f)).unwrap();
        assert!(verify_on_curve(&f, p.general()));
        assert_eq!(p.m2(), Some(0));
        assert!(proper_check_via_curve(&f, &p).unwrap());
    }

    #[test]
    fn verification_examples() {
        let f = &x(1).pow(2) - &(&c(4) * &(&x(0) * &y(0).pow(2)));
        assert!(verify_on_curve(&f, &gpoly(u(0).pow(2), u(1))));
        let f = &(&y(1) - &x(1)) - &x(0);
        let p2 =
            GeneralRationalParam::new((-&u(1), u(0).pow(2)), (&u(0) - &u(1), u(0).pow(2))).unwrap();
        assert!(verify_on_curve(&f, &p2));
        assert!(!verify_on_curve(&x(0), poly(u(0), u(0)).general()));
    }

    #[test]
    fn properness() {
        assert!(proper_check_poly(&poly(u(1), &u(0) + &u(1))).unwrap());
        assert!(!proper_check_poly(&poly(u(1), u(2))).unwrap());

        let num = &u(2) + &c(1);
        let p = LinearRationalParam::new((num.clone(), u(0)), (num, u(0))).unwrap();
        let r = proper_check_rational(&p).unwrap();
        assert!(!r.proper);
        assert_eq!((r.ord_x, r.expected.0), (Some(0), Some(2)));
        assert_eq!(improper_reason(&r), "ord_x(R)=0, expected 2");

        let r = proper_check_rational(&poly(u(1), &u(0) + &u(1))).unwrap();
        assert!(r.proper);

        let f = &(&y(1) - &x(1)) - &x(0);
        assert!(proper_check_via_curve(&f, &poly(u(1), &u(0) + &u(1))).unwrap());
        assert!(!proper_check_via_curve(&f, &poly(u(2), &u(1) + &u(2))).unwrap());
    }

    #[test]
    fn implicitization() {
        let c1 = implicitize_poly(&poly(u(1), &u(0) + &u(1))).unwrap();
        assert_eq!(c1.to_diffpoly(), &(&y(1) - &x(1)) - &x(0));
        let c2 = implicitize_poly(&poly(u(0), &u(1) + &t())).unwrap();
        assert_eq!(c2.to_diffpoly(), &(&y(0) - &x(1)) - &t());
        let c3 = implicitize_poly(&poly(u(0), u(0))).unwrap();
        assert_eq!(c3.to_diffpoly(), &y(0) - &x(0));

        let imp = implicitize_rational(&poly(u(0), &u(1) + &t())).unwrap();
        assert_eq!(imp.f_l, &(&y(0) - &x(1)) - &t());
        assert_eq!(imp.f_prev.order_in(Indet::U), Some(0));
    }

    #[test]
    fn inversion_examples() {
        let (n, d) = inversion(&poly(u(1), &u(0) + &u(1))).unwrap();
        assert_eq!((n, d), (&y(0) - &x(0), c(1)));
        assert!(inversion(&poly(u(0), &u(1) + &t())).is_err());
    }

    #[test]
    fn mobius_examples() {
        let p = poly(u(1), &u(0) + &u(1));
        let (z, o) = (ScalarRat::zero(), ScalarRat::one());
        let q = mobius_apply(p.general(), &z, &o, &o, &z).unwrap();
        let expected =
            GeneralRationalParam::new((-&u(1), u(0).pow(2)), (&u(0) - &u(1), u(0).pow(2))).unwrap();
        assert!(q.cross_equal(&expected));
        let id = mobius_apply(p.general(), &o, &z, &z, &o).unwrap();
        assert!(id.cross_equal(p.general()));
        let q = mobius_apply(&gpoly(u(0).pow(2), u(1)), &o, &o, &z, &o).unwrap();
        assert!(q.cross_equal(&gpoly((&u(0) + &c(1)).pow(2), u(1))));
        assert_eq!(
            mobius_apply(p.general(), &o, &o, &o, &o),
            Err(Error::DegenerateMobius)
        );
    }

    #[test]
    fn order_relations() {
        let f = &x(1).pow(2) - &(&c(4) * &(&x(0) * &y(0).pow(2)));
        assert!(order_relation_check(&f, Some(0), Some(1)));
        let f = &(&y(1) - &x(1)) - &x(0);
        assert!(order_relation_check(&f, Some(1), Some(1)));
        let a = &(&(&y(2) * &x(0)) + &(&y(1).pow(2) * &y(0))) - &(&y(1) * &x(1));
        assert!(order_relation_check(&a, Some(2), Some(1)));
    }

    #[test]
    fn membership() {
        let a = curve(&(&x(2) - &y(1)));
        let b = curve(&(&x(1) - &y(0)));
        assert_eq!(ideal_membership_linear(&a, &b), Some(OreOp::d()));
        let f = curve(&(&(&y(1) - &x(1)) - &x(0)));
        assert_eq!(ideal_membership_linear(&f, &f), Some(OreOp::one()));
        assert_eq!(ideal_membership_linear(&a, &f), None);
    }
}
