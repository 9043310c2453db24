//! Concrete valued fields with exact arithmetic.
//!
//! Three families are provided: the p-adic valuation on Q, fields of
//! rational-exponent Laurent fractions k(t^Q) with the t-adic valuation
//! (k = Q, a prime field F_q, or Q regarded with an auxiliary p-adic
//! structure), and the rank-2 composite that refines the t-adic valuation
//! by the p-adic order of the leading coefficient.
//!
//! Elements are quotients of finite sums `sum c_q * t^q` with rational
//! exponents. Canonical form: the denominator has lowest exponent 0 and
//! lowest coefficient 1, and numerator/denominator are coprime. Reduction
//! is skipped when intermediate exponent denominators explode; values,
//! cross-equality and ordering are unaffected because the valuation is
//! computed from unreduced data exactly.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ordgroup::{GroupDescriptor, GroupValue, Val};
use crate::scalar::{big, fmt_rational, Scalar};

/// Coefficient field of a Laurent field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentBase {
    /// Plain rationals.
    Rationals,
    /// The prime field F_q.
    PrimeField(u32),
    /// Rationals carrying a p-adic structure (the t-adic valuation and the
    /// residue field are the same as for `Rationals`).
    PadicRationals(u32),
}

/// A concrete valued field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldDescriptor {
    /// Q with the p-adic valuation; value group Z.
    PadicQ(u32),
    /// k(t^Q) with the t-adic valuation; value group Q.
    LaurentQ(LaurentBase),
    /// Q(t^Q) valued by (t-order, p-adic order of the leading coefficient);
    /// value group Q x Z ordered lexicographically.
    Composite(u32),
}

/// Selector of a prime ideal of the valuation domain: the number of
/// trailing lexicographic coordinates collapsed by the localization.
/// `collapse = 0` selects the maximal ideal (trivial localization).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeSpec {
    pub collapse: usize,
}

impl FieldDescriptor {
    pub fn laurent_q() -> Self {
        FieldDescriptor::LaurentQ(LaurentBase::Rationals)
    }

    pub fn group(&self) -> GroupDescriptor {
        match self {
            FieldDescriptor::PadicQ(_) => GroupDescriptor::integer(),
            FieldDescriptor::LaurentQ(_) => GroupDescriptor::rational_dense(),
            FieldDescriptor::Composite(_) => GroupDescriptor::rational_then_integer(),
        }
    }

    pub fn rank(&self) -> usize {
        self.group().rank()
    }

    /// Whether the residue field of the valuation domain is infinite.
    pub fn residue_field_infinite(&self) -> bool {
        match self {
            FieldDescriptor::PadicQ(_) => false,
            FieldDescriptor::Composite(_) => false,
            FieldDescriptor::LaurentQ(LaurentBase::PrimeField(_)) => false,
            FieldDescriptor::LaurentQ(_) => true,
        }
    }

    /// Normalizes a coefficient into the base field (reduction mod q for
    /// prime-field coefficients).
    fn cnorm(&self, c: BigRational) -> Result<BigRational> {
        match self {
            FieldDescriptor::LaurentQ(LaurentBase::PrimeField(q)) => rational_mod_p(&c, *q),
            _ => Ok(c),
        }
    }

    fn cadd(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        self.cnorm(a + b)
    }

    fn cmul(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        self.cnorm(a * b)
    }

    fn cinv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldDescriptor::LaurentQ(LaurentBase::PrimeField(q)) => {
                let rep = rational_mod_p(a, *q)?;
                let inv = mod_inverse(rep.numer(), *q).ok_or(Error::DivisionByZero)?;
                Ok(BigRational::from_integer(inv))
            }
            _ => Ok(a.recip()),
        }
    }

    /// An element of the given value, used as witness for principal ideals.
    pub fn elem_of_value(&self, v: &GroupValue) -> Result<FieldElem> {
        let g = self.group();
        if !g.contains(v) {
            return Err(Error::structural(
                "no field element attains a value outside the value group",
            ));
        }
        match self {
            FieldDescriptor::PadicQ(p) => {
                let n = v.coord(0).as_rational().unwrap();
                Ok(FieldElem::from_rational(int_pow(*p, n), self)?)
            }
            FieldDescriptor::LaurentQ(_) => {
                let q = v.coord(0).as_rational().unwrap().clone();
                FieldElem::monomial(big(1), q, self)
            }
            FieldDescriptor::Composite(p) => {
                let q = v.coord(0).as_rational().unwrap().clone();
                let n = v.coord(1).as_rational().unwrap();
                FieldElem::monomial(int_pow(*p, n), q, self)
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::PadicQ(p) => write!(f, "padic:{p}"),
            FieldDescriptor::LaurentQ(LaurentBase::Rationals) => write!(f, "laurentQ"),
            FieldDescriptor::LaurentQ(LaurentBase::PrimeField(q)) => write!(f, "laurentQ:fp:{q}"),
            FieldDescriptor::LaurentQ(LaurentBase::PadicRationals(p)) => {
                write!(f, "laurentQ:padic:{p}")
            }
            FieldDescriptor::Composite(p) => write!(f, "composite:{p}"),
        }
    }
}

fn int_pow(p: u32, n: &BigRational) -> BigRational {
    debug_assert!(n.is_integer());
    let mut e = n.numer().clone();
    let base = BigRational::from_integer(BigInt::from(p));
    let mut acc = BigRational::one();
    let neg = e.is_negative();
    if neg {
        e = -e;
    }
    let mut k = BigInt::zero();
    while k < e {
        acc *= &base;
        k += 1;
    }
    if neg {
        acc.recip()
    } else {
        acc
    }
}

/// p-adic order of a nonzero rational.
pub fn padic_order(r: &BigRational, p: u32) -> BigInt {
    debug_assert!(!r.is_zero());
    int_order(r.numer(), p) - int_order(r.denom(), p)
}

fn int_order(n: &BigInt, p: u32) -> BigInt {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut ord = BigInt::zero();
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        ord += 1;
    }
    ord
}

fn rational_mod_p(c: &BigRational, q: u32) -> Result<BigRational> {
    let qb = BigInt::from(q);
    let den = c.denom().mod_floor(&qb);
    if den.is_zero() {
        return Err(Error::structural(format!(
            "denominator divisible by {q} has no meaning in F_{q}"
        )));
    }
    let num = c.numer().mod_floor(&qb);
    let inv = mod_inverse(&den, q).ok_or(Error::DivisionByZero)?;
    Ok(BigRational::from_integer((num * inv).mod_floor(&qb)))
}

fn mod_inverse(a: &BigInt, q: u32) -> Option<BigInt> {
    let qb = BigInt::from(q);
    let a = a.mod_floor(&qb);
    if a.is_zero() {
        return None;
    }
    let e = a.extended_gcd(&qb);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(&qb))
    } else {
        None
    }
}

/// A finite formal sum `sum c_q * t^q`, exponents rational, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSum {
    terms: BTreeMap<BigRational, BigRational>,
}

impl TSum {
    pub fn zero() -> Self {
        TSum {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(BigRational::zero(), c);
        }
        TSum { terms }
    }

    pub fn one() -> Self {
        TSum::constant(BigRational::one())
    }

    pub fn monomial(c: BigRational, e: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TSum { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&BigRational::zero())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<&BigRational> {
        self.terms.keys().next()
    }

    pub fn max_exp(&self) -> Option<&BigRational> {
        self.terms.keys().next_back()
    }

    /// Coefficient at the lowest exponent.
    pub fn lead_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next()
    }

    pub fn coeff(&self, e: &BigRational) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, e: BigRational, c: BigRational, f: &FieldDescriptor) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let s = f.cadd(&old, &c)?;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &TSum, f: &FieldDescriptor) -> Result<TSum> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone(), f)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> TSum {
        TSum {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &TSum, f: &FieldDescriptor) -> Result<TSum> {
        self.add(&other.neg(), f)
    }

    pub fn mul(&self, other: &TSum, f: &FieldDescriptor) -> Result<TSum> {
        let mut out = TSum::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add(e1 + e2, f.cmul(c1, c2)?, f)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational, f: &FieldDescriptor) -> Result<TSum> {
        if c.is_zero() {
            return Ok(TSum::zero());
        }
        let mut terms = BTreeMap::new();
        for (e, k) in &self.terms {
            let v = f.cmul(k, c)?;
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        Ok(TSum { terms })
    }

    /// Multiplies by t^shift.
    pub fn shift_exp(&self, shift: &BigRational) -> TSum {
        TSum {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for TSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
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
            if e.is_zero() {
                write!(f, "{}", fmt_rational(&mag))?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", fmt_rational(&mag))?;
            }
            if e.is_one() {
                write!(f, "t")?;
            } else if e.is_integer() && e.is_positive() {
                write!(f, "t^{}", e.numer())?;
            } else {
                write!(f, "t^({})", fmt_rational(e))?;
            }
        }
        Ok(())
    }
}

/// Reduction is skipped when the cleared-denominator degree would exceed
/// this; value computations do not depend on it.
const REDUCE_DEGREE_LIMIT: u64 = 4096;

/// An exact element of a concrete valued field, stored as a quotient of
/// two finite sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElem {
    num: TSum,
    den: TSum,
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            num: TSum::zero(),
            den: TSum::one(),
        }
    }

    pub fn one() -> Self {
        FieldElem {
            num: TSum::one(),
            den: TSum::one(),
        }
    }

    pub fn from_rational(c: BigRational, f: &FieldDescriptor) -> Result<Self> {
        Ok(FieldElem {
            num: TSum::constant(f.cnorm(c)?),
            den: TSum::one(),
        })
    }

    pub fn from_integer(n: i64, f: &FieldDescriptor) -> Result<Self> {
        Self::from_rational(big(n), f)
    }

    pub fn monomial(c: BigRational, e: BigRational, f: &FieldDescriptor) -> Result<Self> {
        if !e.is_zero() && matches!(f, FieldDescriptor::PadicQ(_)) {
            return Err(Error::structural(
                "the p-adic field on Q has no element t",
            ));
        }
        Ok(FieldElem {
            num: TSum::monomial(f.cnorm(c)?, e),
            den: TSum::one(),
        })
    }

    pub fn t_pow(e: BigRational, f: &FieldDescriptor) -> Result<Self> {
        Self::monomial(BigRational::one(), e, f)
    }

    pub fn from_parts(num: TSum, den: TSum, f: &FieldDescriptor) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut el = FieldElem { num, den };
        el.normalize(f)?;
        Ok(el)
    }

    pub fn num(&self) -> &TSum {
        &self.num
    }

    pub fn den(&self) -> &TSum {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self, f: &FieldDescriptor) -> Result<()> {
        if self.num.is_zero() {
            self.den = TSum::one();
            return Ok(());
        }
        self.try_reduce(f)?;
        // Denominator: lowest exponent 0, lowest coefficient 1.
        let shift = self.den.min_exp().expect("nonzero den").clone();
        if !shift.is_zero() {
            let neg = -shift;
            self.num = self.num.shift_exp(&neg);
            self.den = self.den.shift_exp(&neg);
        }
        let lead = self.den.lead_coeff().expect("nonzero den").clone();
        if !lead.is_one() {
            let inv = f.cinv(&lead)?;
            self.num = self.num.scale(&inv, f)?;
            self.den = self.den.scale(&inv, f)?;
        }
        Ok(())
    }

    fn try_reduce(&mut self, f: &FieldDescriptor) -> Result<()> {
        if self.den.num_terms() == 1 {
            // Monomial denominator divides out exactly.
            let (e, c) = {
                let (e, c) = self.den.iter().next().unwrap();
                (e.clone(), c.clone())
            };
            let inv = f.cinv(&c)?;
            self.num = self.num.scale(&inv, f)?.shift_exp(&(-e));
            self.den = TSum::one();
            return Ok(());
        }
        let Some((nu, du, n)) = clear_exponents(&self.num, &self.den) else {
            return Ok(());
        };
        let g = if matches!(f, FieldDescriptor::LaurentQ(LaurentBase::PrimeField(_))) {
            poly_gcd_u(&nu, &du, f)?
        } else {
            crate::qpoly::gcd(&nu, &du)
        };
        if poly_deg(&g) == 0 {
            return Ok(());
        }
        let nq = poly_div_exact(&nu, &g, f)?;
        let dq = poly_div_exact(&du, &g, f)?;
        self.num = poly_to_tsum(&nq, &n);
        self.den = poly_to_tsum(&dq, &n);
        Ok(())
    }

    pub fn add(&self, other: &FieldElem, f: &FieldDescriptor) -> Result<FieldElem> {
        let num = self
            .num
            .mul(&other.den, f)?
            .add(&other.num.mul(&self.den, f)?, f)?;
        let den = self.den.mul(&other.den, f)?;
        FieldElem::from_parts(num, den, f)
    }

    pub fn sub(&self, other: &FieldElem, f: &FieldDescriptor) -> Result<FieldElem> {
        self.add(&other.neg(), f)
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &FieldElem, f: &FieldDescriptor) -> Result<FieldElem> {
        FieldElem::from_parts(
            self.num.mul(&other.num, f)?,
            self.den.mul(&other.den, f)?,
        f)
    }

    pub fn div(&self, other: &FieldElem, f: &FieldDescriptor) -> Result<FieldElem> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        FieldElem::from_parts(
            self.num.mul(&other.den, f)?,
            self.den.mul(&other.num, f)?,
        f)
    }

    pub fn inv(&self, f: &FieldDescriptor) -> Result<FieldElem> {
        FieldElem::one().div(self, f)
    }

    pub fn pow(&self, k: i64, f: &FieldDescriptor) -> Result<FieldElem> {
        let mut acc = FieldElem::one();
        let base = if k < 0 { self.inv(f)? } else { self.clone() };
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base, f)?;
        }
        Ok(acc)
    }

    /// Exact equality irrespective of the reduction state.
    pub fn eq_in(&self, other: &FieldElem, f: &FieldDescriptor) -> Result<bool> {
        Ok(self.num.mul(&other.den, f)? == other.num.mul(&self.den, f)?)
    }

    /// The valuation of the element; `Val::Inf` for zero.
    pub fn value(&self, f: &FieldDescriptor) -> Val {
        if self.num.is_zero() {
            return Val::Inf;
        }
        match f {
            FieldDescriptor::PadicQ(p) => {
                let c = self.num.coeff(&BigRational::zero());
                let d = self.den.coeff(&BigRational::zero());
                let ord = padic_order(&c, *p) - padic_order(&d, *p);
                Val::Fin(GroupValue::rank1(Scalar::Rat(BigRational::from_integer(
                    ord,
                ))))
            }
            FieldDescriptor::LaurentQ(_) => {
                let v = self.num.min_exp().unwrap() - self.den.min_exp().unwrap();
                Val::Fin(GroupValue::rank1(Scalar::Rat(v)))
            }
            FieldDescriptor::Composite(p) => {
                let t = self.num.min_exp().unwrap() - self.den.min_exp().unwrap();
                let lead = padic_order(self.num.lead_coeff().unwrap(), *p)
                    - padic_order(self.den.lead_coeff().unwrap(), *p);
                Val::Fin(GroupValue::new(vec![
                    Scalar::Rat(t),
                    Scalar::Rat(BigRational::from_integer(lead)),
                ]))
            }
        }
    }

    /// Image of the value under the localization collapsing the last
    /// `sel.collapse` coordinates.
    pub fn coarsen(&self, sel: PrimeSpec, f: &FieldDescriptor) -> Result<Val> {
        let rank = f.rank();
        if sel.collapse >= rank {
            return Err(Error::structural(
                "prime selector must collapse fewer coordinates than the rank",
            ));
        }
        Ok(match self.value(f) {
            Val::Inf => Val::Inf,
            Val::Fin(v) => Val::Fin(v.truncate(rank - sel.collapse)),
        })
    }

    /// Splits the display into a sign and a magnitude, for embedding the
    /// element as a coefficient inside polynomial output. Elements that are
    /// not single monomials are parenthesized and treated as positive.
    pub fn fmt_signed(&self) -> (bool, String) {
        if self.den.is_one() && self.num.num_terms() == 1 {
            let (e, c) = self.num.iter().next().unwrap();
            let mag = TSum::monomial(c.abs(), e.clone());
            (c.is_negative(), mag.to_string())
        } else {
            (false, format!("{self}"))
        }
    }

    /// Residue of a valuation unit in the residue field.
    pub fn residue(&self, f: &FieldDescriptor) -> Result<ResidueElem> {
        match self.value(f) {
            Val::Fin(v) if v.is_zero() => {}
            _ => {
                return Err(Error::precondition(
                    "residue is defined for elements of value zero",
                ))
            }
        }
        let lead = self.num.lead_coeff().unwrap() / self.den.lead_coeff().unwrap();
        match f {
            FieldDescriptor::LaurentQ(LaurentBase::PrimeField(q)) => Ok(ResidueElem::Mod {
                rep: rational_mod_p(&lead, *q)?.numer().clone(),
                modulus: *q,
            }),
            FieldDescriptor::LaurentQ(_) => Ok(ResidueElem::Rat(lead)),
            FieldDescriptor::PadicQ(p) | FieldDescriptor::Composite(p) => Ok(ResidueElem::Mod {
                rep: rational_mod_p(&lead, *p)?.numer().clone(),
                modulus: *p,
            }),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Residue-field elements: rationals or prime-field classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidueElem {
    Rat(BigRational),
    Mod { rep: BigInt, modulus: u32 },
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueElem::Rat(r) => write!(f, "{}", fmt_rational(r)),
            ResidueElem::Mod { rep, modulus } => write!(f, "{rep} mod {modulus}"),
        }
    }
}

// Dense polynomial helpers in u = t^(1/n) used only for gcd reduction.

fn clear_exponents(a: &TSum, b: &TSum) -> Option<(Vec<BigRational>, Vec<BigRational>, BigInt)> {
    let mut n = BigInt::one();
    let mut min = BigRational::zero();
    for s in [a, b] {
        for (e, _) in s.iter() {
            n = n.lcm(e.denom());
            if *e < min {
                min = e.clone();
            }
        }
    }
    // Degrees after clearing: (e - min) * n must stay small.
    let limit = BigInt::from(REDUCE_DEGREE_LIMIT);
    for s in [a, b] {
        for (e, _) in s.iter() {
            let d = ((e - &min) * BigRational::from_integer(n.clone())).to_integer();
            if d > limit {
                return None;
            }
        }
    }
    let to_poly = |s: &TSum| {
        let deg = s
            .iter()
            .map(|(e, _)| ((e - &min) * BigRational::from_integer(n.clone())).to_integer())
            .max()
            .unwrap();
        let mut v = vec![BigRational::zero(); deg.to_string().parse::<usize>().unwrap() + 1];
        for (e, c) in s.iter() {
            let i = ((e - &min) * BigRational::from_integer(n.clone()))
                .to_integer()
                .to_string()
                .parse::<usize>()
                .unwrap();
            v[i] = c.clone();
        }
        v
    };
    Some((to_poly(a), to_poly(b), n))
}

fn poly_to_tsum(p: &[BigRational], n: &BigInt) -> TSum {
    let mut terms = BTreeMap::new();
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() {
            let e = BigRational::new(BigInt::from(i), n.clone());
            terms.insert(e, c.clone());
        }
    }
    TSum { terms }
}

fn poly_deg(p: &[BigRational]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[BigRational], b: &[BigRational], f: &FieldDescriptor) -> Result<Vec<BigRational>> {
    let db = poly_deg(b);
    let lead_inv = f.cinv(&b[db])?;
    let mut r = a.to_vec();
    while poly_deg(&r) >= db && !(poly_deg(&r) == 0 && r[0].is_zero()) {
        let dr = poly_deg(&r);
        if dr < db {
            break;
        }
        let q = f.cmul(&r[dr], &lead_inv)?;
        for i in 0..=db {
            let prod = f.cmul(&q, &b[i])?;
            r[dr - db + i] = f.cadd(&r[dr - db + i], &(-prod))?;
        }
        r = poly_trim(r);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    Ok(r)
}

fn poly_gcd_u(
    a: &[BigRational],
    b: &[BigRational],
    f: &FieldDescriptor,
) -> Result<Vec<BigRational>> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = poly_rem(&x, &y, f)?;
        x = y;
        y = r;
        // Keep coefficients small: make monic each round.
        if !(y.len() == 1 && y[0].is_zero()) {
            let inv = f.cinv(&y[poly_deg(&y)])?;
            for c in y.iter_mut() {
                *c = f.cmul(c, &inv)?;
            }
        }
    }
    let inv = f.cinv(&x[poly_deg(&x)])?;
    for c in x.iter_mut() {
        *c = f.cmul(c, &inv)?;
    }
    Ok(x)
}

fn poly_div_exact(
    a: &[BigRational],
    b: &[BigRational],
    f: &FieldDescriptor,
) -> Result<Vec<BigRational>> {
    let db = poly_deg(b);
    let da = poly_deg(a);
    let lead_inv = f.cinv(&b[db])?;
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); da.saturating_sub(db) + 1];
    while poly_deg(&r) >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = poly_deg(&r);
        if dr < db {
            break;
        }
        let c = f.cmul(&r[dr], &lead_inv)?;
        q[dr - db] = c.clone();
        for i in 0..=db {
            let prod = f.cmul(&c, &b[i])?;
            r[dr - db + i] = f.cadd(&r[dr - db + i], &(-prod))?;
        }
        r = poly_trim(r);
    }
    Ok(poly_trim(q))
}
