//! Differential polynomials in `x`, `y`, `u` and their derivatives over
//! `Q(t)`, stored sparsely.
//!
//! Besides ring arithmetic this module carries the reduction machinery used
//! by the curve algorithms: rankings, leaders, the Ritt-Kolchin remainder
//! against a single quasi-linear polynomial, and the remainder sequences
//! that eliminate `u` from a pair of polynomials linear in `u`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::fmt_util::format_sum;
use crate::scalar::ScalarRat;

/// Order of a differential polynomial in one indeterminate; `None` is
/// negative infinity (the indeterminate does not occur).
pub type Order = Option<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indet {
    X,
    Y,
    U,
}

impl Indet {
    pub const ALL: [Indet; 3] = [Indet::X, Indet::Y, Indet::U];

    pub fn name(self) -> &'static str {
        match self {
            Indet::X => "x",
            Indet::Y => "y",
            Indet::U => "u",
        }
    }

    pub fn from_name(s: &str) -> Option<Indet> {
        match s {
            "x" => Some(Indet::X),
            "y" => Some(Indet::Y),
            "u" => Some(Indet::U),
            _ => None,
        }
    }
}

impl fmt::Display for Indet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The derivative `indet^(order)`. The derived ordering (indeterminate
/// first, then order) is the canonical one used for printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivVar {
    pub indet: Indet,
    pub order: usize,
}

impl DerivVar {
    pub fn new(indet: Indet, order: usize) -> Self {
        DerivVar { indet, order }
    }

    pub fn derive(self) -> Self {
        DerivVar::new(self.indet, self.order + 1)
    }
}

impl fmt::Display for DerivVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            0..=3 => write!(f, "{}{}", self.indet, "'".repeat(self.order)),
            k => write!(f, "{}^({k})", self.indet),
        }
    }
}

/// Power product of derivatives, sorted ascending with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(DerivVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: DerivVar) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(DerivVar, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort();
        let mut merged: Vec<(DerivVar, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn factors(&self) -> &[(DerivVar, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: DerivVar) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    /// Total degree in all derivatives of `indet`.
    pub fn degree_in_indet(&self, indet: Indet) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.indet == indet)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / rhs` when `rhs` divides `self`.
    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < rhs.0.len() && rhs.0[j].0 == v {
                let f = rhs.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else if j < rhs.0.len() && rhs.0[j].0 < v {
                return None;
            } else {
                out.push((v, e));
            }
        }
        (j == rhs.0.len()).then_some(Monomial(out))
    }

    /// Splits off the power of `v`: returns `(exponent, rest)`.
    fn split(&self, v: DerivVar) -> (u32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut e = 0;
        for &(w, f) in &self.0 {
            if w == v {
                e = f;
            } else {
                rest.push((w, f));
            }
        }
        (e, Monomial(rest))
    }

    fn with_factor(&self, v: DerivVar, e: u32) -> Monomial {
        if e == 0 {
            return self.clone();
        }
        self.mul(&Monomial(vec![(v, e)]))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order; among equal degrees the larger highest
    /// variable wins.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let mut a = self.0.iter().rev();
                let mut b = other.0.iter().rev();
                loop {
                    match (a.next(), b.next()) {
                        (None, None) => return Ordering::Equal,
                        (Some(_), None) => return Ordering::Greater,
                        (None, Some(_)) => return Ordering::Less,
                        (Some((va, ea)), Some((vb, eb))) => {
                            if va != vb {
                                return va.cmp(vb);
                            }
                            if ea != eb {
                                return ea.cmp(eb);
                            }
                        }
                    }
                }
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Sparse differential polynomial: monomials mapped to nonzero `Q(t)`
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, ScalarRat>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(ScalarRat::one())
    }

    pub fn constant(c: ScalarRat) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: ScalarRat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn var(v: DerivVar) -> Self {
        Self::term(ScalarRat::one(), Monomial::var(v))
    }

    /// `indet^(order)` as a polynomial.
    pub fn deriv(indet: Indet, order: usize) -> Self {
        Self::var(DerivVar::new(indet, order))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, ScalarRat)>>(terms: I) -> Self {
        let mut p = DiffPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &ScalarRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ScalarRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for elements of the ground field (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<ScalarRat> {
        self.is_constant().then(|| {
            self.terms
                .get(&Monomial::one())
                .cloned()
                .unwrap_or_default()
        })
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &ScalarRat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &ScalarRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = DiffPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// All derivatives that occur, ascending.
    pub fn vars(&self) -> Vec<DerivVar> {
        let mut vs: Vec<DerivVar> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Largest `k` such that `indet^(k)` occurs.
    pub fn order_in(&self, indet: Indet) -> Order {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter())
            .filter(|(v, _)| v.indet == indet)
            .map(|(v, _)| v.order)
            .max()
    }

    /// Maximum over all indeterminates.
    pub fn order(&self) -> Order {
        Indet::ALL.iter().filter_map(|&i| self.order_in(i)).max()
    }

    pub fn involves(&self, indet: Indet) -> bool {
        self.order_in(indet).is_some()
    }

    pub fn degree_in(&self, v: DerivVar) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Total degree in the derivatives of `indet`.
    pub fn degree_in_indet(&self, indet: Indet) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_in_indet(indet))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `v^e` when viewed as a polynomial in `v`.
    pub fn coeff_of(&self, v: DerivVar, e: u32) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let (f, rest) = m.split(v);
            if f == e {
                out.terms.insert(rest, c.clone());
            }
        }
        out
    }

    /// Partial derivative with respect to `v`.
    pub fn partial(&self, v: DerivVar) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e == 0 {
                continue;
            }
            let k = ScalarRat::from_rational(BigRational::from_integer(BigInt::from(e)));
            out.add_term(rest.with_factor(v, e - 1), &(c * &k));
        }
        out
    }

    /// Total derivative: Leibniz rule on monomials plus the derivation of
    /// the coefficients.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let dc = c.derive();
            if !dc.is_zero() {
                out.add_term(m.clone(), &dc);
            }
            for &(v, e) in &m.0 {
                let (_, rest) = m.split(v);
                let mono = rest.with_factor(v, e - 1).with_factor(v.derive(), 1);
                let k = ScalarRat::from_rational(BigRational::from_integer(BigInt::from(e)));
                out.add_term(mono, &(c * &k));
            }
        }
        out
    }

    pub fn derive_n(&self, k: usize) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derive();
        }
        p
    }

    /// Exact division in the polynomial ring. Fails rather than truncating
    /// when `g` does not divide `self`.
    pub fn exact_div(&self, g: &DiffPoly) -> Result<DiffPoly> {
        let (gm, gc) = g.leading_term().ok_or(Error::DivisionByZero)?;
        if g.terms.len() == 1 {
            let inv = gc.inv()?;
            let mut out = DiffPoly::zero();
            for (m, c) in &self.terms {
                let q = m.div(gm).ok_or(Error::InexactDivision)?;
                out.terms.insert(q, c * &inv);
            }
            return Ok(out);
        }
        let mut rem = self.clone();
        let mut quo = DiffPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(gm).ok_or(Error::InexactDivision)?;
            let qc = rc.checked_div(gc)?;
            let step = g.mul_monomial(&qm).scale(&qc);
            quo.add_term(qm, &qc);
            rem = &rem - &step;
        }
        Ok(quo)
    }

    /// Leader, initial and separant under `ranking`.
    pub fn leader_initial_separant(
        &self,
        ranking: &Ranking,
    ) -> Result<(DerivVar, DiffPoly, DiffPoly)> {
        let leader = ranking.leader(self).ok_or(Error::ConstantInput)?;
        let d = self.degree_in(leader);
        Ok((leader, self.coeff_of(leader, d), self.partial(leader)))
    }

    /// Coefficients of a polynomial that is affine-linear in the
    /// derivatives of `indet`: returns `order -> coefficient` together with
    /// the part free of `indet`.
    pub fn linear_coefficients(
        &self,
        indet: Indet,
    ) -> Result<(BTreeMap<usize, DiffPoly>, DiffPoly)> {
        let mut coeffs: BTreeMap<usize, DiffPoly> = BTreeMap::new();
        let mut free = DiffPoly::zero();
        for (m, c) in &self.terms {
            match m.degree_in_indet(indet) {
                0 => free.add_term(m.clone(), c),
                1 => {
                    let &(v, _) = m.0.iter().find(|(v, _)| v.indet == indet).unwrap();
                    let (_, rest) = m.split(v);
                    coeffs.entry(v.order).or_default().add_term(rest, c);
                }
                _ => return Err(Error::NotLinear(indet.name().to_string())),
            }
        }
        Ok((coeffs, free))
    }

    /// Substitutes `indet |-> num/den` for each listed indeterminate and
    /// returns the cleared fraction `(N, D)`, where `D` is a product of
    /// powers of the given denominators.
    ///
    /// Derivatives use `(P/Q)^(s) = P_s / Q^(s+1)` with
    /// `P_s = P_{s-1}' Q - s P_{s-1} Q'`.
    pub fn substitute(
        &self,
        subs: &[(Indet, &DiffPoly, &DiffPoly)],
    ) -> Result<(DiffPoly, DiffPoly)> {
        struct Table {
            den: DiffPoly,
            nums: Vec<DiffPoly>,
            den_pows: Vec<DiffPoly>,
        }
        let mut tables: BTreeMap<Indet, Table> = BTreeMap::new();
        for &(indet, num, den) in subs {
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let max_order = self.order_in(indet).unwrap_or(0);
            let den_prime = den.derive();
            let mut nums = vec![num.clone()];
            for s in 1..=max_order {
                let prev = &nums[s - 1];
                let k = ScalarRat::from_int(s as i64);
                let next = &(&prev.derive() * den) - &(prev * &den_prime).scale(&k);
                nums.push(next);
            }
            tables.insert(
                indet,
                Table {
                    den: den.clone(),
                    nums,
                    den_pows: vec![DiffPoly::one()],
                },
            );
        }

        // Denominator exponent needed by each term, per indeterminate.
        let substituted: Vec<Indet> = tables.keys().copied().collect();
        let exps = |m: &Monomial| -> BTreeMap<Indet, u32> {
            let mut e = BTreeMap::new();
            for &(v, k) in &m.0 {
                if substituted.contains(&v.indet) {
                    *e.entry(v.indet).or_insert(0) += (v.order as u32 + 1) * k;
                }
            }
            e
        };
        let mut max_exp: BTreeMap<Indet, u32> = BTreeMap::new();
        for m in self.terms.keys() {
            for (i, e) in exps(m) {
                let slot = max_exp.entry(i).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        for (i, &e) in &max_exp {
            let table = tables.get_mut(i).unwrap();
            while table.den_pows.len() <= e as usize {
                let next = table.den_pows.last().unwrap() * &table.den;
                table.den_pows.push(next);
            }
        }

        let mut numer = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut part = DiffPoly::constant(c.clone());
            for &(v, k) in &m.0 {
                match tables.get(&v.indet) {
                    Some(table) => part = &part * &table.nums[v.order].pow(k),
                    None => kept.push((v, k)),
                }
            }
            let used = exps(m);
            for (i, &e) in &max_exp {
                let u = used.get(i).copied().unwrap_or(0);
                part = &part * &tables[i].den_pows[(e - u) as usize];
            }
            numer = &numer + &part.mul_monomial(&Monomial(kept));
        }
        let mut denom = DiffPoly::one();
        for (i, &e) in &max_exp {
            denom = &denom * &tables[i].den_pows[e as usize];
        }
        Ok((numer, denom))
    }

    /// `F(x = px, y = py)` as a cleared fraction; `F` vanishes on the
    /// parametrization iff the numerator is zero.
    pub fn substitute_rational(
        &self,
        px: (&DiffPoly, &DiffPoly),
        py: (&DiffPoly, &DiffPoly),
    ) -> Result<(DiffPoly, DiffPoly)> {
        self.substitute(&[(Indet::X, px.0, px.1), (Indet::Y, py.0, py.1)])
    }
}

/// Checks that `p` is affine-linear in the derivatives of `u` with
/// coefficients in the ground field.
pub fn is_affine_linear_in_u(p: &DiffPoly) -> bool {
    p.terms.keys().all(|m| match m.0.as_slice() {
        [] => true,
        [(v, 1)] => v.indet == Indet::U,
        _ => false,
    })
}

/// Order of the fraction `p/q` when both are affine-linear in `u`, after
/// rejecting unreduced (proportional) pairs. `None` when both lie in the
/// ground field.
pub fn ord_reduced_linear_fraction(p: &DiffPoly, q: &DiffPoly) -> Result<Order> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !is_affine_linear_in_u(p) || !is_affine_linear_in_u(q) {
        return Err(Error::NotLinear("u".into()));
    }
    if p.is_constant() && q.is_constant() {
        return Ok(None);
    }
    if proportional(p, q) {
        return Err(Error::NotReduced);
    }
    Ok(p.order_in(Indet::U).max(q.order_in(Indet::U)))
}

/// True iff `p = c*q` for some `c` in the ground field (`q` nonzero).
fn proportional(p: &DiffPoly, q: &DiffPoly) -> bool {
    let Some((qm, qc)) = q.leading_term() else {
        return p.is_zero();
    };
    let pc = p.terms.get(qm).cloned().unwrap_or_default();
    let ratio = &pc / qc;
    *p == q.scale(&ratio)
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for DiffPoly {
            type Output = DiffPoly;
            fn $m(self, rhs: DiffPoly) -> DiffPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl From<ScalarRat> for DiffPoly {
    fn from(c: ScalarRat) -> Self {
        DiffPoly::constant(c)
    }
}

impl fmt::Display for DiffPoly {
    /// Terms in descending graded-lex order, e.g. `-4*x*y^2 + x'^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| (c.clone(), m.to_string()));
        write!(f, "{}", format_sum(terms))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankingKind {
    /// Compare derivative orders first, then indeterminates.
    Orderly,
    /// Compare indeterminates first, then derivative orders.
    Elimination,
}

/// A ranking on derivatives; `order` lists the indeterminates from lowest
/// to highest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ranking {
    pub kind: RankingKind,
    pub order: [Indet; 3],
}

impl Ranking {
    pub fn elimination(order: [Indet; 3]) -> Self {
        Ranking {
            kind: RankingKind::Elimination,
            order,
        }
    }

    pub fn orderly(order: [Indet; 3]) -> Self {
        Ranking {
            kind: RankingKind::Orderly,
            order,
        }
    }

    /// The elimination ranking `x < y < u`.
    pub fn xyu() -> Self {
        Self::elimination([Indet::X, Indet::Y, Indet::U])
    }

    fn position(&self, i: Indet) -> usize {
        self.order
            .iter()
            .position(|&j| j == i)
            .expect("ranking covers x, y, u")
    }

    pub fn cmp_vars(&self, a: DerivVar, b: DerivVar) -> Ordering {
        let (pa, pb) = (self.position(a.indet), self.position(b.indet));
        match self.kind {
            RankingKind::Elimination => pa.cmp(&pb).then(a.order.cmp(&b.order)),
            RankingKind::Orderly => a.order.cmp(&b.order).then(pa.cmp(&pb)),
        }
    }

    /// Highest-ranked derivative occurring in `f`.
    pub fn leader(&self, f: &DiffPoly) -> Option<DerivVar> {
        f.vars().into_iter().max_by(|&a, &b| self.cmp_vars(a, b))
    }
}

/// Result of reducing `f` by a single quasi-linear `g`.
///
/// The certificate reads
/// `S^separant_power * I^initial_power * f - remainder = sum_k multipliers[k] * g^(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prem {
    pub remainder: DiffPoly,
    pub separant_power: u32,
    pub initial_power: u32,
    pub multipliers: Vec<DiffPoly>,
}

/// Ritt-Kolchin remainder of `f` with respect to `{g}`.
///
/// Each step replaces `f` by `S*f - c*w^(d-1)*g^(k)`, where `w = v^(k)` is
/// the highest proper derivative of the leader `v` still present, `c` its
/// leading coefficient and `d` its degree; the final steps use `I` and `g`
/// itself to push the degree in `v` below one.
pub fn prem(f: &DiffPoly, g: &DiffPoly, ranking: &Ranking) -> Result<Prem> {
    let (v, init, sep) = g.leader_initial_separant(ranking)?;
    if g.degree_in(v) != 1 {
        return Err(Error::Precondition(format!(
            "reducer must be linear in its leader {v}"
        )));
    }
    let mut r = f.clone();
    let mut multipliers: Vec<DiffPoly> = Vec::new();
    let mut g_derivs = vec![g.clone()];
    let (mut sp, mut ip) = (0, 0);

    let step = |r: &mut DiffPoly,
                multipliers: &mut Vec<DiffPoly>,
                k: usize,
                gk: &DiffPoly,
                factor: &DiffPoly| {
        let w = DerivVar::new(v.indet, v.order + k);
        let d = r.degree_in(w);
        let c = r.coeff_of(w, d);
        let shift = c.mul_monomial(&Monomial(if d > 1 { vec![(w, d - 1)] } else { vec![] }));
        *r = &(factor * &*r) - &(&shift * gk);
        for m in multipliers.iter_mut() {
            *m = factor * &*m;
        }
        if multipliers.len() <= k {
            multipliers.resize(k + 1, DiffPoly::zero());
        }
        multipliers[k] = &multipliers[k] + &shift;
    };

    loop {
        let k = r
            .vars()
            .into_iter()
            .filter(|w| w.indet == v.indet && w.order > v.order)
            .map(|w| w.order - v.order)
            .max();
        let Some(k) = k else { break };
        while g_derivs.len() <= k {
            let next = g_derivs.last().unwrap().derive();
            g_derivs.push(next);
        }
        let w = DerivVar::new(v.indet, v.order + k);
        while r.degree_in(w) > 0 {
            step(&mut r, &mut multipliers, k, &g_derivs[k], &sep);
            sp += 1;
        }
    }
    while r.degree_in(v) > 0 {
        step(&mut r, &mut multipliers, 0, g, &init);
        ip += 1;
    }
    Ok(Prem {
        remainder: r,
        separant_power: sp,
        initial_power: ip,
        multipliers,
    })
}

/// A chain `f_1, f_2, f_3 = prem(f_1, f_2), ...` ending at the first
/// element free of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemainderSequence {
    pub chain: Vec<DiffPoly>,
    /// True when the inputs were exchanged so that the first element has
    /// the larger `u`-order.
    pub swapped: bool,
}

impl RemainderSequence {
    /// The `u`-free last element `f_l`.
    pub fn terminus(&self) -> &DiffPoly {
        self.chain.last().expect("chain has at least two elements")
    }

    /// `f_{l-1}`.
    pub fn penultimate(&self) -> &DiffPoly {
        &self.chain[self.chain.len() - 2]
    }
}

/// Eliminates `u` from two polynomials linear in the derivatives of `u`,
/// under the elimination ranking `x < y < u`. The input of larger `u`-order
/// goes first; on ties `f2` is the first reducer.
pub fn remainder_sequence(f1: &DiffPoly, f2: &DiffPoly) -> Result<RemainderSequence> {
    sequence(f1, f2, false)
}

/// As [`remainder_sequence`], but every element is divided by its initial
/// whenever that initial lies in the ground field. Elements agree with the
/// unscaled sequence up to nonzero field multiples, and coefficient growth
/// is far smaller.
pub fn remainder_sequence_scaled(f1: &DiffPoly, f2: &DiffPoly) -> Result<RemainderSequence> {
    sequence(f1, f2, true)
}

fn sequence(f1: &DiffPoly, f2: &DiffPoly, scaled: bool) -> Result<RemainderSequence> {
    for f in [f1, f2] {
        if f.degree_in_indet(Indet::U) > 1 {
            return Err(Error::NotLinear("u".into()));
        }
    }
    if !f1.involves(Indet::U) && !f2.involves(Indet::U) {
        return Err(Error::VariableAbsent("u".into()));
    }
    let swapped = f1.order_in(Indet::U) < f2.order_in(Indet::U);
    let (a, b) = if swapped { (f2, f1) } else { (f1, f2) };
    let ranking = Ranking::xyu();
    let rescale = |f: DiffPoly| -> DiffPoly {
        if !scaled || !f.involves(Indet::U) {
            return f;
        }
        let (_, init, _) = f
            .leader_initial_separant(&ranking)
            .expect("element involves u");
        match init.constant_value() {
            Some(c) if !c.is_one() => f.scale(&c.inv().expect("initial is nonzero")),
            _ => f,
        }
    };
    let mut chain = vec![rescale(a.clone()), rescale(b.clone())];
    while chain.last().unwrap().involves(Indet::U) {
        let n = chain.len();
        let next = prem(&chain[n - 2], &chain[n - 1], &ranking)?.remainder;
        chain.push(rescale(next));
    }
    Ok(RemainderSequence { chain, swapped })
}
