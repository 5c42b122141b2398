use dcurve_core::{DiffPoly, Monomial, ScalarRat};
use num::{BigInt, BigRational, Integer, One, Zero};

/// `f = c * b^k` with `k >= 2` as large as possible, found by peeling
/// leading terms off a k-th root. `b` has leading coefficient 1 unless its
/// coefficients are rational, in which case it is made integral and
/// primitive.
pub fn perfect_power(f: &DiffPoly) -> Option<(ScalarRat, DiffPoly, u32)> {
    let (_, lc) = f.leading_term()?;
    let c = lc.clone();
    let monic = f.scale(&c.inv().ok()?);
    let deg = f.total_degree();
    let (c, b, k) = (2..=deg)
        .rev()
        .filter(|k| deg % k == 0)
        .find_map(|k| kth_root(&monic, k).map(|b| (c.clone(), b, k)))?;
    // Prefer an integral primitive base when the coefficients are rational.
    let Some(s) = integral_scale(&b) else {
        return Some((c, b, k));
    };
    let sk = ScalarRat::from_rational(s.clone()).pow(k);
    let c = c.checked_div(&sk).ok()?;
    Some((c, b.scale(&ScalarRat::from_rational(s)), k))
}

fn integral_scale(b: &DiffPoly) -> Option<BigRational> {
    let coeffs = b
        .terms()
        .map(|(_, c)| c.as_rational())
        .collect::<Option<Vec<_>>>()?;
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = coeffs
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
    Some(BigRational::new(den, num))
}

fn kth_root(f: &DiffPoly, k: u32) -> Option<DiffPoly> {
    let (lm, _) = f.leading_term()?;
    let root = monomial_root(lm, k)?;
    let mut b = DiffPoly::term(ScalarRat::one(), root.clone());
    // The leading term of f - b^k is k * root^(k-1) times the next term of b.
    let denom = (1..k).fold(Monomial::one(), |acc, _| acc.mul(&root));
    let kk = ScalarRat::from_int(k as i64);
    loop {
        let diff = f - &b.pow(k);
        let Some((m, c)) = diff.leading_term() else {
            return Some(b);
        };
        let next = m.div(&denom)?;
        if next >= root {
            return None;
        }
        let coeff = c.checked_div(&kk).ok()?;
        b = &b + &DiffPoly::term(coeff, next);
    }
}

fn monomial_root(m: &Monomial, k: u32) -> Option<Monomial> {
    let pairs = m
        .factors()
        .iter()
        .map(|&(v, e)| (e % k == 0).then_some((v, e / k)))
        .collect::<Option<Vec<_>>>()?;
    Some(Monomial::from_pairs(pairs))
}

/// `(y - x)^3`, `-2*(y - x)^3` or the expanded form when no power splits.
pub fn factored(f: &DiffPoly) -> String {
    match perfect_power(f) {
        Some((c, b, k)) => {
            let base = format!("({b})^{k}");
            if c.is_one() {
                base
            } else if (-&c).is_one() {
                format!("-{base}")
            } else if c.as_rational().is_some() {
                format!("{c}*{base}")
            } else {
                format!("({c})*{base}")
            }
        }
        None => f.to_string(),
    }
}
