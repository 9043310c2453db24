//! Polynomials and rational functions over a valued field, Newton polygons
//! (root-valuation multisets) and the region-weighted decomposition.
//!
//! Roots are never materialized: everything downstream works from the
//! multiset of valuations `u(root - beta)` read off the lower convex hull
//! of the coefficient valuations of `f(X + beta)`. The hull slopes do not
//! depend on the chosen extension of the base valuation.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldElem, TSum};
use crate::ordgroup::{ExtCut, GroupValue, Val};

/// Dense polynomial over a valued field; `coeffs[i]` multiplies `X^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(FieldElem::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(FieldElem::zero());
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly {
            coeffs: vec![FieldElem::zero()],
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(FieldElem::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![FieldElem::zero(), FieldElem::one()])
    }

    /// X - a.
    pub fn x_minus(a: &FieldElem) -> Self {
        Poly::new(vec![a.neg(), FieldElem::one()])
    }

    pub fn monomial(c: FieldElem, deg: usize) -> Self {
        let mut coeffs = vec![FieldElem::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn lead(&self) -> &FieldElem {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && *self.lead() == FieldElem::one()
    }

    pub fn add(&self, other: &Poly, f: &FieldDescriptor) -> Result<Poly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i), f)?);
        }
        Ok(Poly::new(out))
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(FieldElem::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Poly, f: &FieldDescriptor) -> Result<Poly> {
        self.add(&other.neg(), f)
    }

    pub fn mul(&self, other: &Poly, f: &FieldDescriptor) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let mut out = vec![FieldElem::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b, f)?, f)?;
            }
        }
        Ok(Poly::new(out))
    }

    pub fn scale(&self, c: &FieldElem, f: &FieldDescriptor) -> Result<Poly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(c, f)?);
        }
        Ok(Poly::new(out))
    }

    pub fn eval(&self, x: &FieldElem, f: &FieldDescriptor) -> Result<FieldElem> {
        let mut acc = FieldElem::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(x, f)?.add(a, f)?;
        }
        Ok(acc)
    }

    /// Taylor shift: the polynomial `g(X) = f(X + beta)`.
    pub fn shift(&self, beta: &FieldElem, f: &FieldDescriptor) -> Result<Poly> {
        if beta.is_zero() {
            return Ok(self.clone());
        }
        let mut acc = Poly::zero();
        let lin = Poly::new(vec![beta.clone(), FieldElem::one()]);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin, f)?.add(&Poly::constant(a.clone()), f)?;
        }
        Ok(acc)
    }

    /// The polynomial `f(a + c*X)`.
    pub fn compose_linear(
        &self,
        a: &FieldElem,
        c: &FieldElem,
        f: &FieldDescriptor,
    ) -> Result<Poly> {
        let lin = Poly::new(vec![a.clone(), c.clone()]);
        let mut acc = Poly::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&lin, f)?.add(&Poly::constant(coeff.clone()), f)?;
        }
        Ok(acc)
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, den: &Poly, f: &FieldDescriptor) -> Result<(Poly, Poly)> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.clone();
        let dd = den.degree();
        let lead_inv = den.lead().inv(f)?;
        let mut q = vec![FieldElem::zero(); self.degree().saturating_sub(dd) + 1];
        while !rem.is_zero() && rem.degree() >= dd {
            let dr = rem.degree();
            let c = rem.lead().mul(&lead_inv, f)?;
            q[dr - dd] = c.clone();
            let sub = den.mul(&Poly::monomial(c, dr - dd), f)?;
            rem = rem.sub(&sub, f)?;
            if rem.degree() == dr && !rem.is_zero() {
                // Leading terms must cancel exactly.
                return Err(Error::structural("division failed to reduce the degree"));
            }
        }
        Ok((Poly::new(q), rem))
    }

    pub fn make_monic(&self, f: &FieldDescriptor) -> Result<Poly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        self.scale(&self.lead().inv(f)?, f)
    }

    /// Number of X factors and the cofactor.
    fn strip_x(&self) -> (Poly, usize) {
        if self.is_zero() {
            return (self.clone(), 0);
        }
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        if k == 0 {
            return (self.clone(), 0);
        }
        (Poly::new(self.coeffs[k..].to_vec()), k)
    }

    /// Monic gcd over the coefficient field. Common X factors are split
    /// off first; rational-coefficient fields then go through a
    /// coprimality probe and, only when needed, a fraction-free
    /// subresultant remainder sequence in the exponent-cleared form. The
    /// direct Euclidean loop is kept for prime-field coefficients, where
    /// values stay bounded.
    pub fn gcd(&self, other: &Poly, f: &FieldDescriptor) -> Result<Poly> {
        if self.is_zero() {
            return other.make_monic(f);
        }
        if other.is_zero() {
            return self.make_monic(f);
        }
        let (a, ka) = self.strip_x();
        let (b, kb) = other.strip_x();
        let k = ka.min(kb);
        let core = if a.degree() == 0 || b.degree() == 0 {
            Poly::one()
        } else {
            match f {
                FieldDescriptor::LaurentQ(crate::fields::LaurentBase::PrimeField(_)) => {
                    a.gcd_euclid(&b, f)?
                }
                _ => prs_gcd(&a, &b, f)?,
            }
        };
        if k == 0 {
            Ok(core)
        } else {
            core.mul(&Poly::monomial(FieldElem::one(), k), f)
        }
    }

    fn gcd_euclid(&self, other: &Poly, f: &FieldDescriptor) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, f)?;
            a = b;
            b = r.make_monic(f)?;
        }
        a.make_monic(f)
    }
}

/// Polynomial in X whose coefficients are dense polynomials in u = t^(1/N).
#[derive(Debug, Clone)]
struct BiPoly {
    coeffs: Vec<crate::qpoly::QPoly>,
}

impl BiPoly {
    fn trim(mut self) -> Self {
        while self.coeffs.len() > 1
            && self
                .coeffs
                .last()
                .map(|c| crate::qpoly::is_zero(c))
                .unwrap_or(false)
        {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| crate::qpoly::is_zero(c))
    }

    fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn lead(&self) -> &crate::qpoly::QPoly {
        self.coeffs.last().unwrap()
    }

    fn primitive(mut self) -> Self {
        use crate::qpoly;
        use num::One;
        if self.is_zero() {
            return self;
        }
        let mut content: Option<qpoly::QPoly> = None;
        for c in self.coeffs.iter().filter(|c| !qpoly::is_zero(c)) {
            content = Some(match content {
                None => qpoly::trim(c.clone()),
                Some(g) => qpoly::gcd(&g, c),
            });
        }
        let content = content.unwrap();
        if qpoly::deg(&content) > 0 || !content[0].is_one() {
            for c in self.coeffs.iter_mut() {
                if !qpoly::is_zero(c) {
                    *c = qpoly::div_exact(c, &content);
                }
            }
        }
        self
    }

    /// Full pseudo-remainder `lc(den)^(deg a - deg den + 1) * a mod den`:
    /// every elimination round scales uniformly, as the subresultant
    /// recurrence requires.
    fn prem(&self, den: &BiPoly) -> BiPoly {
        use crate::qpoly;
        use num::{BigRational, Zero};
        let db = den.deg();
        let da = self.deg();
        let lc_b = den.lead().clone();
        let zero_poly = vec![BigRational::zero()];
        let mut r = self.clone().trim();
        for top in (db..=da).rev() {
            let lc_r = r.coeffs.get(top).cloned().unwrap_or_else(|| zero_poly.clone());
            let shift = top - db;
            let mut out = vec![zero_poly.clone(); top];
            for (i, c) in r.coeffs.iter().enumerate().take(top) {
                out[i] = qpoly::mul(c, &lc_b);
            }
            if !qpoly::is_zero(&lc_r) {
                for (i, c) in den.coeffs.iter().enumerate().take(db) {
                    let s = qpoly::mul(c, &lc_r);
                    out[i + shift] = qpoly::sub(&out[i + shift], &s);
                }
            }
            r = BiPoly { coeffs: out }.trim();
        }
        r
    }

    fn scale_div_exact(mut self, divisor: &crate::qpoly::QPoly) -> BiPoly {
        use crate::qpoly;
        use num::One;
        if qpoly::deg(divisor) == 0 && divisor[0].is_one() {
            return self;
        }
        for c in self.coeffs.iter_mut() {
            if !qpoly::is_zero(c) {
                *c = qpoly::div_exact(c, divisor);
            }
        }
        self
    }
}

/// Subresultant polynomial remainder sequence: remainders are divided by
/// exactly known factors, so no content computation is needed along the
/// way. Returns (an associate of) the gcd of the two inputs.
fn subresultant_gcd(a: BiPoly, b: BiPoly) -> BiPoly {
    use crate::qpoly;
    let one = qpoly::one();
    let (mut a, mut b) = if a.deg() >= b.deg() { (a, b) } else { (b, a) };
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        if b.is_zero() {
            return a;
        }
        if b.deg() == 0 {
            // A nonzero constant (in u) divides everything.
            return BiPoly {
                coeffs: vec![b.coeffs[0].clone()],
            };
        }
        let delta = a.deg() - b.deg();
        let r = a.prem(&b);
        let mut divisor = g.clone();
        for _ in 0..delta {
            divisor = qpoly::mul(&divisor, &h);
        }
        let next = if r.is_zero() {
            return b;
        } else {
            r.scale_div_exact(&divisor)
        };
        g = b.lead().clone();
        // h = h^(1-delta) * g^delta, all divisions exact.
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => {
                let mut num = g.clone();
                for _ in 1..d {
                    num = qpoly::mul(&num, &g);
                }
                let mut den = h.clone();
                for _ in 2..d {
                    den = qpoly::mul(&den, &h);
                }
                qpoly::div_exact(&num, &den)
            }
        };
        a = b;
        b = next;
    }
}

/// Coprimality probe: evaluate the u-polynomial coefficients at a few
/// rational points; whenever both leading coefficients survive and the
/// specialized gcd over Q is constant, the generic gcd is constant.
fn bipoly_coprime_probe(a: &BiPoly, b: &BiPoly) -> bool {
    use crate::qpoly;
    use num::{BigRational, Zero};
    for r in [2i64, 3, 5, 7, 11] {
        let point = num::BigRational::from_integer(r.into());
        let spec = |p: &BiPoly| -> Vec<BigRational> {
            p.coeffs.iter().map(|c| qpoly::horner(c, &point)).collect()
        };
        let sa = spec(a);
        let sb = spec(b);
        if sa.last().map(|c| c.is_zero()).unwrap_or(true)
            || sb.last().map(|c| c.is_zero()).unwrap_or(true)
        {
            continue;
        }
        let g = qpoly::gcd(&sa, &sb);
        if qpoly::deg(&g) == 0 {
            return true;
        }
        // A nontrivial specialized gcd is inconclusive; run the real
        // remainder sequence.
        return false;
    }
    false
}

/// Fraction-free gcd through the primitive remainder sequence.
fn prs_gcd(a: &Poly, b: &Poly, f: &FieldDescriptor) -> Result<Poly> {
    use num::{BigInt, BigRational, Integer, Zero};

    // Clear each polynomial to sum-only coefficients (multiply through by
    // the coefficient denominators; a scalar factor does not change the
    // gcd up to units).
    let clear_fracs = |p: &Poly| -> Result<Vec<TSum>> {
        let mut sums: Vec<TSum> = p.coeffs().iter().map(|c| c.num().clone()).collect();
        for (j, c) in p.coeffs().iter().enumerate() {
            let d = c.den();
            if d.is_one() {
                continue;
            }
            for (i, s) in sums.iter_mut().enumerate() {
                if i != j {
                    *s = s.mul(d, f)?;
                }
            }
        }
        Ok(sums)
    };
    let sums_a = clear_fracs(a)?;
    let sums_b = clear_fracs(b)?;

    // Common exponent denominator for both, per-poly minimum shift.
    let mut n = BigInt::from(1);
    for s in sums_a.iter().chain(&sums_b) {
        for (e, _) in s.iter() {
            n = n.lcm(e.denom());
        }
    }
    let to_bipoly = |sums: &[TSum]| -> BiPoly {
        let mut min: Option<BigRational> = None;
        for s in sums {
            if let Some(e) = s.min_exp() {
                min = Some(match min {
                    None => e.clone(),
                    Some(m) if *e < m => e.clone(),
                    Some(m) => m,
                });
            }
        }
        let min = min.expect("nonzero polynomial");
        let coeffs = sums
            .iter()
            .map(|s| {
                let mut v = vec![BigRational::zero()];
                for (e, c) in s.iter() {
                    let slot = ((e - &min) * BigRational::from_integer(n.clone())).to_integer();
                    let slot: usize = slot.to_string().parse().unwrap();
                    if v.len() <= slot {
                        v.resize(slot + 1, BigRational::zero());
                    }
                    v[slot] = c.clone();
                }
                v
            })
            .collect();
        BiPoly { coeffs }.trim()
    };

    let pa = to_bipoly(&sums_a);
    let pb = to_bipoly(&sums_b);
    // Coprimality certificate: specialize u to a rational point; a trivial
    // gcd there forces a trivial gcd generically.
    if bipoly_coprime_probe(&pa, &pb) {
        return Ok(Poly::one());
    }
    let x = subresultant_gcd(pa.primitive(), pb.primitive()).primitive();

    // Back to a field polynomial: slot k means t^(k/N).
    let coeffs = x
        .coeffs
        .iter()
        .map(|c| {
            let mut ts = TSum::zero();
            for (k, coef) in c.iter().enumerate() {
                if !coef.is_zero() {
                    let e = BigRational::new(BigInt::from(k), n.clone());
                    ts = ts
                        .add(&TSum::monomial(coef.clone(), e), f)
                        .expect("coefficient arithmetic");
                }
            }
            FieldElem::from_parts(ts, TSum::one(), f)
        })
        .collect::<Result<Vec<_>>>()?;
    Poly::new(coeffs).make_monic(f)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..=self.degree()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = c.fmt_signed();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let is_one = mag == "1";
            match (i, is_one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{mag}*X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{mag}*X^{i}")?,
            }
        }
        Ok(())
    }
}

/// A rational function in canonical form: gcd-reduced with a monic
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly, f: &FieldDescriptor) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den, f)?;
        let (num, den) = if g.degree() > 0 {
            (num.divrem(&g, f)?.0, den.divrem(&g, f)?.0)
        } else {
            (num, den)
        };
        let lead_inv = den.lead().inv(f)?;
        Ok(RatFunc {
            num: num.scale(&lead_inv, f)?,
            den: den.scale(&lead_inv, f)?,
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn x() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn constant(c: FieldElem) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0
    }

    pub fn add(&self, other: &RatFunc, f: &FieldDescriptor) -> Result<RatFunc> {
        let num = self
            .num
            .mul(&other.den, f)?
            .add(&other.num.mul(&self.den, f)?, f)?;
        RatFunc::new(num, self.den.mul(&other.den, f)?, f)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc, f: &FieldDescriptor) -> Result<RatFunc> {
        self.add(&other.neg(), f)
    }

    /// Cross-reduced product: both operands are canonical, so the only
    /// cancellations are between one numerator and the other denominator.
    pub fn mul(&self, other: &RatFunc, f: &FieldDescriptor) -> Result<RatFunc> {
        if self.is_zero() || other.is_zero() {
            return Ok(RatFunc::from_poly(Poly::zero()));
        }
        let g1 = self.num.gcd(&other.den, f)?;
        let g2 = other.num.gcd(&self.den, f)?;
        let na = if g1.degree() > 0 {
            self.num.divrem(&g1, f)?.0
        } else {
            self.num.clone()
        };
        let db = if g1.degree() > 0 {
            other.den.divrem(&g1, f)?.0
        } else {
            other.den.clone()
        };
        let nb = if g2.degree() > 0 {
            other.num.divrem(&g2, f)?.0
        } else {
            other.num.clone()
        };
        let da = if g2.degree() > 0 {
            self.den.divrem(&g2, f)?.0
        } else {
            self.den.clone()
        };
        let num = na.mul(&nb, f)?;
        let den = da.mul(&db, f)?;
        let lead_inv = den.lead().inv(f)?;
        Ok(RatFunc {
            num: num.scale(&lead_inv, f)?,
            den: den.scale(&lead_inv, f)?,
        })
    }

    pub fn div(&self, other: &RatFunc, f: &FieldDescriptor) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.mul(
            &RatFunc {
                num: other.den.clone(),
                den: other.num.clone(),
            },
            f,
        )
    }

    pub fn inv(&self, f: &FieldDescriptor) -> Result<RatFunc> {
        RatFunc::constant(FieldElem::one()).div(self, f)
    }

    /// Exact evaluation; an error at a pole.
    pub fn eval(&self, x: &FieldElem, f: &FieldDescriptor) -> Result<FieldElem> {
        let den = self.den.eval(x, f)?;
        if den.is_zero() {
            return Err(Error::Pole);
        }
        self.num.eval(x, f)?.div(&den, f)
    }

    /// Value of the function at a point (infinite for a zero, error for a
    /// pole).
    pub fn eval_value(&self, x: &FieldElem, f: &FieldDescriptor) -> Result<Val> {
        let den = self.den.eval(x, f)?;
        if den.is_zero() {
            return Err(Error::Pole);
        }
        let num = self.num.eval(x, f)?;
        Ok(match (num.value(f), den.value(f)) {
            (Val::Inf, _) => Val::Inf,
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a.sub(&b)),
            (_, Val::Inf) => unreachable!("nonzero denominator"),
        })
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 && self.den.is_monic() {
            if self.num.degree() == 0 {
                write!(f, "{}", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Multiset of root valuations `u(root - beta)` with multiplicities,
/// sorted increasingly (infinite entries, i.e. roots equal to the center,
/// come last). Total multiplicity equals the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootValProfile {
    entries: Vec<(Val, usize)>,
    degree: usize,
}

impl RootValProfile {
    pub fn entries(&self) -> &[(Val, usize)] {
        &self.entries
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Multiset union (profile of a product).
    pub fn union(&self, other: &RootValProfile) -> RootValProfile {
        let mut entries = self.entries.clone();
        for (v, m) in &other.entries {
            match entries.iter_mut().find(|(w, _)| w == v) {
                Some((_, m0)) => *m0 += m,
                None => entries.push((v.clone(), *m)),
            }
        }
        entries.sort_by(|(a, _), (b, _)| a.cmp_val(b));
        RootValProfile {
            entries,
            degree: self.degree + other.degree,
        }
    }
}

/// Valuations of the roots of `f` relative to the center `beta`, computed
/// from the lower convex hull of the coefficient valuations of
/// `f(X + beta)`: a hull segment of slope `-s` and horizontal length `m`
/// contributes the entry `(s, m)`.
pub fn newton_profile(
    poly: &Poly,
    beta: &FieldElem,
    f: &FieldDescriptor,
) -> Result<RootValProfile> {
    if poly.is_zero() {
        return Err(Error::precondition(
            "the zero polynomial has no Newton polygon",
        ));
    }
    let g = poly.shift(beta, f)?;
    let mut pts: Vec<(usize, GroupValue)> = Vec::new();
    let mut first_nonzero = None;
    for (i, c) in g.coeffs().iter().enumerate() {
        match c.value(f) {
            Val::Inf => continue,
            Val::Fin(v) => {
                if first_nonzero.is_none() {
                    first_nonzero = Some(i);
                }
                pts.push((i, v));
            }
        }
    }
    let i0 = first_nonzero.expect("nonzero polynomial");
    let mut entries: Vec<(Val, usize)> = Vec::new();

    // Lower hull of the points (i, v_i), i >= i0.
    let mut hull: Vec<(usize, GroupValue)> = Vec::new();
    for (i, v) in pts {
        while hull.len() >= 2 {
            let (i1, v1) = &hull[hull.len() - 2];
            let (i2, v2) = &hull[hull.len() - 1];
            // Pop when slope(p1,p2) >= slope(p2,p): (v2-v1)(i-i2) >= (v-v2)(i2-i1)
            let lhs = v2.sub(v1).scale_int((i - i2) as i64);
            let rhs = v.sub(v2).scale_int((*i2 - *i1) as i64);
            if lhs.cmp_lex(&rhs) != std::cmp::Ordering::Less {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((i, v));
    }
    for w in hull.windows(2) {
        let (i, vi) = &w[0];
        let (j, vj) = &w[1];
        let m = j - i;
        let s = vi.sub(vj).div_int(m as i64);
        entries.push((Val::Fin(s), m));
    }
    entries.sort_by(|(a, _), (b, _)| a.cmp_val(b));
    if i0 > 0 {
        entries.push((Val::Inf, i0));
    }
    Ok(RootValProfile {
        entries,
        degree: poly.degree(),
    })
}

/// Weighted root count inside the region and the value shift contributed
/// by the roots outside it.
///
/// Returns `(weighted_sum, gamma)` where `weighted_sum` counts the root
/// valuations of the numerator lying in the region at-or-above the cut
/// minus those of the denominator, and `gamma` is the value of the ratio
/// of leading coefficients plus the multiplicity-weighted sum of the
/// entries outside the region (numerator minus denominator).
pub fn s_part(
    phi: &RatFunc,
    region: &ExtCut,
    beta: &FieldElem,
    f: &FieldDescriptor,
) -> Result<(i64, GroupValue)> {
    if phi.is_zero() {
        return Err(Error::precondition("the zero function has no decomposition"));
    }
    let num_prof = newton_profile(phi.num(), beta, f)?;
    let den_prof = newton_profile(phi.den(), beta, f)?;
    let lead_num = match phi.num().lead().value(f) {
        Val::Fin(v) => v,
        Val::Inf => unreachable!("leading coefficient is nonzero"),
    };
    let lead_den = match phi.den().lead().value(f) {
        Val::Fin(v) => v,
        Val::Inf => unreachable!(),
    };
    let mut lambda: i64 = 0;
    let mut gamma = lead_num.sub(&lead_den);
    for (prof, sign) in [(&num_prof, 1i64), (&den_prof, -1i64)] {
        for (v, m) in prof.entries() {
            if region.region_contains(v) {
                lambda += sign * (*m as i64);
            } else {
                let fv = v.as_fin().expect("entries outside the region are finite");
                gamma = gamma.add(&fv.scale_int(sign * (*m as i64)));
            }
        }
    }
    Ok((lambda, gamma))
}
