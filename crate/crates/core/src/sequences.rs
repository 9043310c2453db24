//! Pseudo-monotone sequences with certified structure.
//!
//! A sequence is pseudo-convergent when the values of successive
//! differences strictly increase, pseudo-divergent when they strictly
//! decrease, and pseudo-stationary when all pairwise differences share one
//! value. Certified sequences are produced by a fixed family of
//! closed-form constructors; arbitrary point lists only get finite-window
//! classification, because eventual behavior cannot be certified from
//! finite data.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldElem, PrimeSpec};
use crate::ordgroup::{
    CutPoint, CutSide, ExtCut, GroupValue, IdealCategory, IdealSpec, Tail, Val,
};
use crate::scalar::{big, Scalar};

/// Kind of a pseudo-monotone sequence. A Cauchy sequence is the
/// pseudo-convergent case whose gauge is cofinal in the value group; it is
/// tracked separately because its breadth ideal is zero and its cut sits
/// at +inf.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqKind {
    Pcv,
    Pdv,
    Pst,
    Cauchy,
}

impl SeqKind {
    pub fn is_strict(self) -> bool {
        matches!(self, SeqKind::Pcv | SeqKind::Pdv | SeqKind::Cauchy)
    }

    /// The convergent-flavored kinds (increasing gauge).
    pub fn gauge_increases(self) -> bool {
        matches!(self, SeqKind::Pcv | SeqKind::Cauchy)
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqKind::Pcv => write!(f, "pcv"),
            SeqKind::Pdv => write!(f, "pdv"),
            SeqKind::Pst => write!(f, "pst"),
            SeqKind::Cauchy => write!(f, "cauchy"),
        }
    }
}

/// Closed-form gauge laws realized by the constructor families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaugeLaw {
    /// `delta_nu = bound -/+ e_vary/(nu+1)`: approaches `bound` along the
    /// dense coordinate `vary`, from below (increasing) or above.
    ApproachRational {
        bound: GroupValue,
        vary: usize,
        from_below: bool,
    },
    /// `delta_nu = (prefix, +/-nu)`: the coordinate after the fixed prefix
    /// runs away; the cut sits at `(prefix, +/-inf)`.
    TailCoord {
        prefix: Vec<Scalar>,
        rank: usize,
        up: bool,
    },
    /// Rank-1 affine law `delta_nu = offset + slope*nu` with `slope = +/-1`
    /// (Cauchy gauges and gauges unbounded below).
    Linear { offset: BigRational, slope: i64 },
    /// `delta_nu = a + b*c_nu` with `c_nu` the continued-fraction
    /// convergents of sqrt(d) taken from one side, so that the gauge
    /// approaches the irrational position `a + b*sqrt(d)` monotonically.
    QuadApproach {
        a: BigRational,
        b: BigRational,
        d: u32,
        increasing: bool,
    },
    /// Constant gauge of a pseudo-stationary sequence.
    Constant { delta: GroupValue },
}

impl GaugeLaw {
    pub fn eval(&self, nu: u64) -> GroupValue {
        match self {
            GaugeLaw::ApproachRational {
                bound,
                vary,
                from_below,
            } => {
                let step = BigRational::new(BigInt::one(), BigInt::from(nu + 1));
                let step = if *from_below { -step } else { step };
                let mut coords = bound.coords().to_vec();
                coords[*vary] = coords[*vary].add(&Scalar::Rat(step));
                GroupValue::new(coords)
            }
            GaugeLaw::TailCoord { prefix, rank, up } => {
                let mut coords = prefix.clone();
                let n = BigRational::from_integer(BigInt::from(nu));
                coords.push(Scalar::Rat(if *up { n } else { -n }));
                while coords.len() < *rank {
                    coords.push(Scalar::zero());
                }
                GroupValue::new(coords)
            }
            GaugeLaw::Linear { offset, slope } => {
                let n = BigRational::from_integer(BigInt::from(nu));
                GroupValue::from_rational(offset + n * big(*slope))
            }
            GaugeLaw::QuadApproach {
                a, b, d, increasing, ..
            } => {
                let below_sqrt = if b.is_positive() {
                    *increasing
                } else {
                    !*increasing
                };
                let c = sqrt_convergent(*d, nu, below_sqrt);
                GroupValue::from_rational(a + b * c)
            }
            GaugeLaw::Constant { delta } => delta.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            GaugeLaw::ApproachRational { bound, .. } => bound.rank(),
            GaugeLaw::TailCoord { rank, .. } => *rank,
            GaugeLaw::Linear { .. } | GaugeLaw::QuadApproach { .. } => 1,
            GaugeLaw::Constant { delta } => delta.rank(),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, GaugeLaw::Constant { .. })
    }

    /// Least index whose gauge value lies strictly beyond `x` in the given
    /// direction (`true` = above). Returns `None` when the law never gets
    /// there (the target sits at or past the gauge's limit position).
    pub fn first_index_beyond(&self, x: &GroupValue, above: bool) -> Option<u64> {
        if !self.can_reach(x, above) {
            return None;
        }
        const CAP: u64 = 1 << 40;
        let check = |nu: u64| {
            let v = self.eval(nu);
            match v.cmp_lex(x) {
                std::cmp::Ordering::Greater => above,
                std::cmp::Ordering::Less => !above,
                std::cmp::Ordering::Equal => false,
            }
        };
        let mut hi = 1u64;
        while hi < CAP && !check(hi) {
            hi *= 2;
        }
        if !check(hi) {
            return None;
        }
        let mut lo = 0u64;
        // First index in (lo, hi] satisfying the predicate; the laws are
        // monotone so binary search applies.
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if check(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if check(lo) {
            Some(lo)
        } else {
            Some(hi)
        }
    }

    /// Whether the gauge eventually passes `x` in the given direction,
    /// decided from the law's limit position rather than by probing.
    fn can_reach(&self, x: &GroupValue, above: bool) -> bool {
        let increasing = match self {
            GaugeLaw::ApproachRational { from_below, .. } => *from_below,
            GaugeLaw::TailCoord { up, .. } => *up,
            GaugeLaw::Linear { slope, .. } => *slope > 0,
            GaugeLaw::QuadApproach { increasing, .. } => *increasing,
            GaugeLaw::Constant { delta } => {
                return match delta.cmp_lex(x) {
                    std::cmp::Ordering::Greater => above,
                    std::cmp::Ordering::Less => !above,
                    std::cmp::Ordering::Equal => false,
                };
            }
        };
        if above != increasing {
            // Moving away from the target: only the first value matters.
            let v = self.eval(0);
            return match v.cmp_lex(x) {
                std::cmp::Ordering::Greater => above,
                std::cmp::Ordering::Less => !above,
                std::cmp::Ordering::Equal => false,
            };
        }
        // Moving toward the limit: x must sit strictly on the near side.
        match self {
            GaugeLaw::ApproachRational { bound, .. } => {
                let ord = x.cmp_lex(bound);
                if increasing {
                    ord == std::cmp::Ordering::Less
                } else {
                    ord == std::cmp::Ordering::Greater
                }
            }
            GaugeLaw::TailCoord { prefix, .. } => {
                let tail = if increasing { Tail::PlusInf } else { Tail::MinusInf };
                let pos = CutPoint::with_tail(prefix.clone(), tail);
                if increasing {
                    pos.cmp_value(x) == std::cmp::Ordering::Less
                } else {
                    pos.cmp_value(x) == std::cmp::Ordering::Greater
                }
            }
            GaugeLaw::Linear { .. } => true,
            GaugeLaw::QuadApproach { a, b, d, .. } => {
                let limit = Scalar::quad(a.clone(), b.clone(), *d);
                let ord = x.coords()[0].cmp_exact(&limit);
                if increasing {
                    ord == std::cmp::Ordering::Less
                } else {
                    ord == std::cmp::Ordering::Greater
                }
            }
            GaugeLaw::Constant { .. } => unreachable!(),
        }
    }
}

/// Continued-fraction convergent of sqrt(d): index `nu` from below
/// (even-indexed convergents) or from above (odd-indexed).
fn sqrt_convergent(d: u32, nu: u64, from_below: bool) -> BigRational {
    let k = if from_below { 2 * nu } else { 2 * nu + 1 };
    let a0 = isqrt(d);
    debug_assert!(a0 * a0 != d, "d must not be a perfect square");
    let (mut m, mut den, mut a) = (0u64, 1u64, u64::from(a0));
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(a));
    let (mut k_prev, mut k_cur) = (BigInt::zero(), BigInt::one());
    for _ in 0..k {
        m = den * a - m;
        den = (u64::from(d) - m * m) / den;
        a = (u64::from(a0) + m) / den;
        let h_next = BigInt::from(a) * &h + &h_prev;
        let k_next = BigInt::from(a) * &k_cur + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k_cur, k_next);
    }
    BigRational::new(h, k_cur)
}

fn isqrt(d: u32) -> u32 {
    let mut r = 0u32;
    while (r + 1) * (r + 1) <= d {
        r += 1;
    }
    r
}

/// Closed-form term rules of the constructor families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermLaw {
    /// `s_nu = center + scale * (element of value gauge(nu))`; the scale is
    /// a unit so the differences keep the gauge values.
    PowerGauge { scale: FieldElem },
    /// `s_nu = center + nu*step`: the multipliers have pairwise unit
    /// differences, which needs the residue field to be infinite.
    ArithmeticStep { step: FieldElem },
    /// `s_nu = sum_{i<=nu} (element of value e_i)` with `e_i` strictly
    /// increasing: a pseudo-convergent sequence whose pseudo-limit (if any)
    /// lies outside the field of finite sums.
    PartialSums,
}

/// A pseudo-monotone sequence with certified structure: a closed-form term
/// rule, its gauge law, the cut the gauge determines, and the breadth
/// ideal. `center` is a certified pseudo-limit (the limit, for a Cauchy
/// sequence); constructors for limit-free sequences leave it empty and all
/// theorem-grade operations then refuse the input.
#[derive(Debug, Clone)]
pub struct PMSeq {
    field: FieldDescriptor,
    kind: SeqKind,
    center: Option<FieldElem>,
    term_law: TermLaw,
    gauge: GaugeLaw,
    cut: ExtCut,
    breadth: IdealSpec,
}

impl PMSeq {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn center(&self) -> Option<&FieldElem> {
        self.center.as_ref()
    }

    pub fn certified_center(&self) -> Result<&FieldElem> {
        self.center.as_ref().ok_or(Error::Uncertified)
    }

    pub fn gauge_law(&self) -> &GaugeLaw {
        &self.gauge
    }

    pub fn gauge_at(&self, nu: u64) -> GroupValue {
        self.gauge.eval(nu)
    }

    pub fn gauge_cut(&self) -> &ExtCut {
        &self.cut
    }

    /// The breadth ideal determined by the gauge: for an increasing gauge
    /// the values above all gauge values, for a decreasing gauge the values
    /// above some gauge value, for a constant gauge the values weakly above
    /// it, and the zero ideal for a Cauchy gauge.
    pub fn breadth_ideal(&self) -> &IdealSpec {
        &self.breadth
    }

    pub fn term(&self, nu: u64) -> Result<FieldElem> {
        let f = &self.field;
        match &self.term_law {
            TermLaw::PowerGauge { scale } => {
                let base = f.elem_of_value(&self.gauge.eval(nu))?;
                let off = base.mul(scale, f)?;
                match &self.center {
                    Some(c) => c.add(&off, f),
                    None => Ok(off),
                }
            }
            TermLaw::ArithmeticStep { step } => {
                let n = FieldElem::from_rational(BigRational::from_integer(BigInt::from(nu)), f)?;
                let off = n.mul(step, f)?;
                match &self.center {
                    Some(c) => c.add(&off, f),
                    None => Ok(off),
                }
            }
            TermLaw::PartialSums => {
                let mut acc = f.elem_of_value(&partial_sum_exponent(&self.gauge, 0))?;
                for i in 1..=nu {
                    let e = f.elem_of_value(&partial_sum_exponent(&self.gauge, i))?;
                    acc = acc.add(&e, f)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn terms(&self, from: u64, to: u64) -> Result<Vec<FieldElem>> {
        (from..to).map(|nu| self.term(nu)).collect()
    }
}

/// Term exponents of the partial-sum constructor: `e_0` sits below the
/// whole gauge, `e_i = gauge(i-1)` afterwards, so the difference values
/// reproduce the gauge exactly.
fn partial_sum_exponent(gauge: &GaugeLaw, i: u64) -> GroupValue {
    if i == 0 {
        let v = gauge.eval(0);
        let mut coords = v.coords().to_vec();
        let last = coords.len() - 1;
        coords[last] = coords[last].add(&Scalar::Rat(-BigRational::one()));
        GroupValue::new(coords)
    } else {
        gauge.eval(i - 1)
    }
}

impl fmt::Display for PMSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SeqKind::Cauchy => {
                let c = self
                    .center
                    .as_ref()
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "?".into());
                write!(f, "cauchy(limit={c}) field={}", self.field)
            }
            kind => {
                let alpha = self
                    .center
                    .as_ref()
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "?".into());
                write!(
                    f,
                    "{kind}(alpha={alpha}, breadth=\"{}\") field={}",
                    self.breadth, self.field
                )
            }
        }
    }
}

/// Default construction-audit prefix length; override with VALX_PREFIX.
pub fn default_audit_prefix() -> u64 {
    std::env::var("VALX_PREFIX")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(16)
}

/// Builds a certified sequence of the requested kind with pseudo-limit
/// `alpha` and breadth ideal exactly `ideal`.
///
/// The kind/ideal compatibility gates are: a pseudo-convergent sequence
/// needs a strictly divisorial breadth ideal, a pseudo-divergent one needs
/// a non-principal ideal (or all of K), and a pseudo-stationary one needs
/// a principal ideal together with an infinite residue field. A
/// pseudo-convergent request with zero breadth builds a Cauchy sequence.
pub fn make_sequence(
    kind: SeqKind,
    alpha: FieldElem,
    ideal: IdealSpec,
    field: FieldDescriptor,
) -> Result<PMSeq> {
    let g = field.group();
    let seq = match kind {
        SeqKind::Cauchy => {
            if !ideal.is_zero_ideal() {
                return Err(Error::precondition(
                    "a Cauchy sequence has zero breadth ideal",
                ));
            }
            build_cauchy(alpha, field)?
        }
        SeqKind::Pcv => {
            if ideal.is_zero_ideal() {
                build_cauchy(alpha, field)?
            } else {
                if ideal.is_all() {
                    return Err(Error::precondition(
                        "the breadth ideal of a pseudo-convergent sequence is bounded below; all of K cannot arise",
                    ));
                }
                let cls = ideal.classify(&g)?;
                if !cls.strictly_divisorial {
                    return Err(Error::precondition(
                        "a pseudo-convergent sequence requires a strictly divisorial breadth ideal; a multiple of the maximal ideal is realized by a pseudo-divergent sequence instead",
                    ));
                }
                build_strict(SeqKind::Pcv, alpha, ideal, field)?
            }
        }
        SeqKind::Pdv => {
            if ideal.is_zero_ideal() {
                return Err(Error::precondition(
                    "a pseudo-divergent sequence has elements of value close to its gauge; the zero ideal cannot arise",
                ));
            }
            if !ideal.is_all() {
                let cls = ideal.classify(&g)?;
                if cls.category == IdealCategory::Principal {
                    return Err(Error::precondition(
                        "the breadth ideal of a pseudo-divergent sequence is never principal",
                    ));
                }
            }
            build_strict(SeqKind::Pdv, alpha, ideal, field)?
        }
        SeqKind::Pst => {
            let cls = ideal.classify(&g)?;
            if cls.category != IdealCategory::Principal {
                return Err(Error::precondition(
                    "a pseudo-stationary sequence requires a principal breadth ideal (its pseudo-limit set is a closed ball)",
                ));
            }
            if !field.residue_field_infinite() {
                return Err(Error::precondition(format!(
                    "a pseudo-stationary sequence needs infinitely many residue classes, and the residue field of {field} is finite",
                )));
            }
            let delta = cls.witness.expect("principal ideals carry a witness");
            let step = field.elem_of_value(&delta)?;
            let cut = ExtCut::new(CutPoint::finite(delta.clone()), CutSide::Exact)?;
            PMSeq {
                field,
                kind: SeqKind::Pst,
                center: Some(alpha),
                term_law: TermLaw::ArithmeticStep { step },
                gauge: GaugeLaw::Constant { delta },
                cut,
                breadth: ideal,
            }
        }
    };
    audit(&seq, default_audit_prefix())?;
    Ok(seq)
}

fn build_cauchy(alpha: FieldElem, field: FieldDescriptor) -> Result<PMSeq> {
    let gauge = GaugeLaw::Linear {
        offset: BigRational::one(),
        slope: 1,
    };
    let scale = match field {
        FieldDescriptor::PadicQ(p) => {
            // s_nu = alpha + p^(nu+1)/(p-1): starting from alpha
            // = -1/(p-1) these are the partial sums of the geometric
            // series 1 + p + ... + p^nu.
            FieldElem::from_rational(
                BigRational::new(BigInt::one(), BigInt::from(p - 1)),
                &field,
            )?
        }
        FieldDescriptor::LaurentQ(_) => FieldElem::one(),
        FieldDescriptor::Composite(_) => {
            return Err(Error::precondition(
                "Cauchy constructors are provided for the rank-1 fields only",
            ))
        }
    };
    let cut = ExtCut::new(CutPoint::plus_inf(), CutSide::Below)?;
    Ok(PMSeq {
        field,
        kind: SeqKind::Cauchy,
        center: Some(alpha),
        term_law: TermLaw::PowerGauge { scale },
        gauge,
        cut,
        breadth: IdealSpec::zero(),
    })
}

fn build_strict(
    kind: SeqKind,
    alpha: FieldElem,
    ideal: IdealSpec,
    field: FieldDescriptor,
) -> Result<PMSeq> {
    let g = field.group();
    let rank = g.rank();
    let from_below = kind == SeqKind::Pcv;
    let side = if from_below {
        CutSide::Below
    } else {
        CutSide::Above
    };
    let bound = ideal.bound().clone();

    let (gauge, cut) = if ideal.is_all() {
        if rank != 1 {
            return Err(Error::precondition(
                "gauges unbounded below are provided for rank-1 fields only",
            ));
        }
        let gauge = GaugeLaw::Linear {
            offset: BigRational::zero(),
            slope: -1,
        };
        (gauge, ExtCut::new(CutPoint::minus_inf(), side)?)
    } else {
        match bound.tail() {
            Tail::Finite => {
                let v = bound.as_value().expect("finite bound");
                if g.contains(&v) {
                    let vary = rank - 1;
                    if g.coords()[vary].discrete {
                        return Err(Error::precondition(
                            "no strictly monotone gauge approaches an attained bound over a discrete top coordinate",
                        ));
                    }
                    let gauge = GaugeLaw::ApproachRational {
                        bound: v.clone(),
                        vary,
                        from_below,
                    };
                    (gauge, ExtCut::new(CutPoint::finite(v), side)?)
                } else {
                    // Canonical non-attained finite bounds end in a
                    // quadratic scalar.
                    if rank != 1 {
                        return Err(Error::precondition(
                            "irrational cut bounds are supported on rank-1 groups only",
                        ));
                    }
                    match v.coord(0) {
                        Scalar::Quad { a, b, d } => {
                            let gauge = GaugeLaw::QuadApproach {
                                a: a.clone(),
                                b: b.clone(),
                                d: *d,
                                increasing: from_below,
                            };
                            (gauge, ExtCut::new(CutPoint::finite(v.clone()), side)?)
                        }
                        Scalar::Rat(_) => {
                            return Err(Error::structural(
                                "non-attained rational bound survived canonicalization",
                            ))
                        }
                    }
                }
            }
            Tail::MinusInf => {
                // Value set {proj >= w}.
                let w = bound.prefix().to_vec();
                let vary = w.len() - 1;
                if g.coords()[vary].discrete {
                    return Err(Error::precondition(
                        "the projected bound must end in a dense coordinate",
                    ));
                }
                if from_below {
                    let mut full = w.clone();
                    full.resize(rank, Scalar::zero());
                    let gauge = GaugeLaw::ApproachRational {
                        bound: GroupValue::new(full),
                        vary,
                        from_below: true,
                    };
                    (gauge, ExtCut::new(bound.clone(), CutSide::Below)?)
                } else {
                    let gauge = GaugeLaw::TailCoord {
                        prefix: w,
                        rank,
                        up: false,
                    };
                    (gauge, ExtCut::new(bound.clone(), CutSide::Above)?)
                }
            }
            Tail::PlusInf => {
                // Value set {proj > w}.
                let w = bound.prefix().to_vec();
                if w.is_empty() {
                    return Err(Error::precondition(
                        "the zero ideal arises only from Cauchy sequences",
                    ));
                }
                if from_below {
                    let gauge = GaugeLaw::TailCoord {
                        prefix: w,
                        rank,
                        up: true,
                    };
                    (gauge, ExtCut::new(bound.clone(), CutSide::Below)?)
                } else {
                    let vary = w.len() - 1;
                    if g.coords()[vary].discrete {
                        return Err(Error::precondition(
                            "the projected bound must end in a dense coordinate",
                        ));
                    }
                    let mut full = w.clone();
                    full.resize(rank, Scalar::zero());
                    let gauge = GaugeLaw::ApproachRational {
                        bound: GroupValue::new(full),
                        vary,
                        from_below: false,
                    };
                    (gauge, ExtCut::new(bound.clone(), CutSide::Above)?)
                }
            }
        }
    };

    Ok(PMSeq {
        field,
        kind,
        center: Some(alpha),
        term_law: TermLaw::PowerGauge {
            scale: FieldElem::one(),
        },
        gauge,
        cut,
        breadth: ideal,
    })
}

/// A pseudo-convergent sequence built as partial sums, with no certified
/// pseudo-limit (none exists among finite sums). Only window-based
/// analysis applies to it; whether it is of algebraic or transcendental
/// type over the algebraic closure is not decided here.
pub fn make_limit_free_pcv(ideal: IdealSpec, field: FieldDescriptor) -> Result<PMSeq> {
    let probe = make_sequence(SeqKind::Pcv, FieldElem::zero(), ideal, field)?;
    if probe.kind == SeqKind::Cauchy {
        return Err(Error::precondition(
            "a Cauchy gauge forces convergence; a limit-free constructor needs a bounded gauge",
        ));
    }
    let seq = PMSeq {
        center: None,
        term_law: TermLaw::PartialSums,
        ..probe
    };
    audit(&seq, default_audit_prefix())?;
    Ok(seq)
}

/// Construction audit: checks the defining difference-value law, gauge
/// monotonicity and the pseudo-limit certificate on a prefix.
fn audit(seq: &PMSeq, prefix: u64) -> Result<()> {
    let f = &seq.field;
    let n = prefix.max(4);
    let terms = seq.terms(0, n)?;
    let gauges: Vec<GroupValue> = (0..n).map(|nu| seq.gauge_at(nu)).collect();

    // Gauge monotonicity.
    for w in gauges.windows(2) {
        let ord = w[0].cmp_lex(&w[1]);
        let ok = match seq.kind {
            SeqKind::Pcv | SeqKind::Cauchy => ord == std::cmp::Ordering::Less,
            SeqKind::Pdv => ord == std::cmp::Ordering::Greater,
            SeqKind::Pst => ord == std::cmp::Ordering::Equal,
        };
        if !ok {
            return Err(Error::Inconsistency(
                "gauge law is not monotone in the declared direction".into(),
            ));
        }
    }

    // Difference values against the gauge.
    for nu in 0..n {
        for rho in (nu + 1)..n {
            let d = terms[rho as usize].sub(&terms[nu as usize], f)?;
            let got = d.value(f);
            let expect = match seq.kind {
                SeqKind::Pcv | SeqKind::Cauchy => &gauges[nu as usize],
                SeqKind::Pdv => &gauges[rho as usize],
                SeqKind::Pst => &gauges[0],
            };
            if got != Val::Fin(expect.clone()) {
                return Err(Error::Inconsistency(format!(
                    "difference value at ({nu},{rho}) is {got}, expected {expect}"
                )));
            }
        }
    }

    // Pseudo-limit certificate.
    if let Some(center) = &seq.center {
        let mut exceptions = 0u32;
        for nu in 0..n {
            let d = center.sub(&terms[nu as usize], f)?;
            let got = d.value(f);
            let expect = match seq.kind {
                SeqKind::Pst => &gauges[0],
                _ => &gauges[nu as usize],
            };
            if got != Val::Fin(expect.clone()) {
                if seq.kind == SeqKind::Pst && exceptions == 0 && got.cmp_val(&Val::Fin(expect.clone())) == std::cmp::Ordering::Greater {
                    // A pseudo-stationary sequence may meet its limit once.
                    exceptions += 1;
                } else {
                    return Err(Error::Inconsistency(format!(
                        "pseudo-limit certificate fails at index {nu}: v = {got}, expected {expect}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Kind detected on a finite window of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrefixKind {
    Pcv,
    Pdv,
    Pst,
    None,
}

impl fmt::Display for PrefixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrefixKind::Pcv => write!(f, "pcv"),
            PrefixKind::Pdv => write!(f, "pdv"),
            PrefixKind::Pst => write!(f, "pst"),
            PrefixKind::None => write!(f, "none"),
        }
    }
}

/// Result of classifying a finite list of points: the matched kind and,
/// for the strict kinds, the forced ordering of the input indices (strict
/// sequences admit exactly one pseudo-monotone indexing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixClass {
    pub kind: PrefixKind,
    pub order: Vec<usize>,
}

/// Classifies at least three distinct points against the three defining
/// difference patterns, trying the forced reordering when the given order
/// does not already match.
pub fn classify_prefix(points: &[FieldElem], f: &FieldDescriptor) -> Result<PrefixClass> {
    if points.len() < 3 {
        return Err(Error::precondition(
            "classification needs at least three points",
        ));
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].eq_in(&points[j], f)? {
                return Err(Error::precondition(
                    "points must be pairwise distinct (a pseudo-stationary sequence consists of distinct elements)",
                ));
            }
        }
    }
    let n = points.len();
    let val = |i: usize, j: usize| -> Result<GroupValue> {
        let d = points[i].sub(&points[j], f)?;
        match d.value(f) {
            Val::Fin(v) => Ok(v),
            Val::Inf => unreachable!("points are distinct"),
        }
    };

    let identity: Vec<usize> = (0..n).collect();
    if let Some(kind) = kind_of_ordered(points, f)? {
        return Ok(PrefixClass {
            kind,
            order: identity,
        });
    }

    // Remark-style recovery: in a pseudo-convergent set the earliest
    // element is the one equidistant from all others; peel repeatedly.
    for target in [PrefixKind::Pcv, PrefixKind::Pdv] {
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut order = Vec::new();
        'peel: while remaining.len() > 1 {
            for (pos, &i) in remaining.iter().enumerate() {
                let mut vals = Vec::new();
                for &j in &remaining {
                    if i != j {
                        vals.push(val(i, j)?);
                    }
                }
                if vals.windows(2).all(|w| w[0] == w[1]) {
                    order.push(i);
                    remaining.remove(pos);
                    continue 'peel;
                }
            }
            break;
        }
        if remaining.len() == 1 {
            order.push(remaining[0]);
            if target == PrefixKind::Pdv {
                order.reverse();
            }
            let reordered: Vec<FieldElem> = order.iter().map(|&i| points[i].clone()).collect();
            if let Some(kind) = kind_of_ordered(&reordered, f)? {
                if kind == target {
                    return Ok(PrefixClass { kind, order });
                }
            }
        }
    }

    Ok(PrefixClass {
        kind: PrefixKind::None,
        order: identity,
    })
}

fn kind_of_ordered(points: &[FieldElem], f: &FieldDescriptor) -> Result<Option<PrefixKind>> {
    let n = points.len();
    let mut diff = vec![vec![None::<GroupValue>; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let d = points[i].sub(&points[j], f)?;
                diff[i][j] = d.value(f).as_fin().cloned();
            }
        }
    }
    let d = |i: usize, j: usize| diff[i][j].as_ref().unwrap();

    let mut pcv = true;
    let mut pdv = true;
    let mut pst = true;
    for nu in 0..n {
        for rho in (nu + 1)..n {
            for sigma in (rho + 1)..n {
                // v(s_rho - s_nu) vs v(s_sigma - s_rho)
                match d(rho, nu).cmp_lex(d(sigma, rho)) {
                    std::cmp::Ordering::Less => {
                        pdv = false;
                        pst = false;
                    }
                    std::cmp::Ordering::Greater => {
                        pcv = false;
                        pst = false;
                    }
                    std::cmp::Ordering::Equal => {
                        pcv = false;
                        pdv = false;
                    }
                }
            }
        }
    }
    if pst {
        // All pairwise values must agree, not only the chain triples.
        let base = d(1, 0).clone();
        for i in 0..n {
            for j in 0..n {
                if i != j && *d(i, j) != base {
                    pst = false;
                }
            }
        }
    }
    Ok(if pcv {
        Some(PrefixKind::Pcv)
    } else if pdv {
        Some(PrefixKind::Pdv)
    } else if pst {
        Some(PrefixKind::Pst)
    } else {
        None
    })
}

/// Whether `beta` is a pseudo-limit of the certified sequence: exactly
/// when `beta - alpha` lies in the breadth ideal.
pub fn is_pseudo_limit(seq: &PMSeq, beta: &FieldElem) -> Result<bool> {
    let alpha = seq.certified_center()?;
    let d = beta.sub(alpha, seq.field())?;
    Ok(seq.breadth_ideal().contains_value(&d.value(seq.field())))
}

/// Outcome of an equivalence test, with the reason spelled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equal: bool,
    pub reason: String,
}

/// Whether two certified sequences induce the same extension: kinds from
/// the same family, equal breadth value sets, and a shared pseudo-limit.
/// A pseudo-convergent and a pseudo-divergent sequence can be equivalent;
/// a strictly pseudo-monotone and a pseudo-stationary sequence never are.
pub fn equivalent(e: &PMSeq, f: &PMSeq) -> Result<Equivalence> {
    if e.field() != f.field() {
        return Err(Error::structural(
            "sequences live over different valued fields",
        ));
    }
    e.certified_center()?;
    f.certified_center()?;
    if e.kind().is_strict() != f.kind().is_strict() {
        return Ok(Equivalence {
            equal: false,
            reason: "a strictly pseudo-monotone and a pseudo-stationary sequence extend the value group and the residue field respectively; the extensions differ".into(),
        });
    }
    if e.breadth_ideal() != f.breadth_ideal() {
        return Ok(Equivalence {
            equal: false,
            reason: format!(
                "breadth ideals differ: {} vs {}",
                e.breadth_ideal(),
                f.breadth_ideal()
            ),
        });
    }
    if is_pseudo_limit(e, f.certified_center()?)? {
        Ok(Equivalence {
            equal: true,
            reason: "equal pseudo-limit sets".into(),
        })
    } else {
        Ok(Equivalence {
            equal: false,
            reason: "pseudo-limit sets are disjoint translates of the same breadth ideal".into(),
        })
    }
}

/// Behavior of a sequence under the localization collapsing trailing
/// coordinates: either a subsequence stays strictly pseudo-monotone of the
/// same kind (for the constructor gauges, the original indexing already
/// does), or the sequence becomes definitively pseudo-stationary at the
/// constant coarsened gauge value. Pseudo-stationary input always stays
/// pseudo-stationary, with breadth extended to the localization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoarsenOutcome {
    Remains {
        kind: SeqKind,
        gauge: GaugeLaw,
        breadth: IdealSpec,
        cut: ExtCut,
    },
    DefinitivelyPst {
        delta: GroupValue,
        breadth: IdealSpec,
    },
}

pub fn coarsen_sequence(seq: &PMSeq, sel: PrimeSpec) -> Result<CoarsenOutcome> {
    let rank = seq.field().rank();
    if sel.collapse >= rank {
        return Err(Error::structural(
            "prime selector must collapse fewer coordinates than the rank",
        ));
    }
    if sel.collapse == 0 {
        return Ok(CoarsenOutcome::Remains {
            kind: seq.kind(),
            gauge: seq.gauge_law().clone(),
            breadth: seq.breadth_ideal().clone(),
            cut: seq.gauge_cut().clone(),
        });
    }
    let keep = rank - sel.collapse;
    let coarse_group = seq.field().group().truncated(keep)?;

    match (seq.kind(), seq.gauge_law()) {
        (SeqKind::Pst, GaugeLaw::Constant { delta }) => {
            let d = delta.truncate(keep);
            let breadth = IdealSpec::closed_at(d.clone(), &coarse_group)?;
            let gauge = GaugeLaw::Constant { delta: d.clone() };
            let cut = ExtCut::new(CutPoint::finite(d.clone()), CutSide::Exact)?;
            let _ = (gauge, cut);
            Ok(CoarsenOutcome::Remains {
                kind: SeqKind::Pst,
                gauge: GaugeLaw::Constant { delta: d.clone() },
                breadth,
                cut: ExtCut::new(CutPoint::finite(d), CutSide::Exact)?,
            })
        }
        (kind, GaugeLaw::ApproachRational { bound, vary, from_below }) => {
            if *vary >= keep {
                // The varying coordinate is collapsed: constant image.
                let d = bound.truncate(keep);
                let breadth = IdealSpec::closed_at(d.clone(), &coarse_group)?;
                return Ok(CoarsenOutcome::DefinitivelyPst { delta: d, breadth });
            }
            let b = bound.truncate(keep);
            let gauge = GaugeLaw::ApproachRational {
                bound: b.clone(),
                vary: *vary,
                from_below: *from_below,
            };
            let side = if *from_below { CutSide::Below } else { CutSide::Above };
            let cut = if *vary + 1 == keep {
                ExtCut::new(CutPoint::finite(b.clone()), side)?
            } else {
                let tail = if *from_below { Tail::MinusInf } else { Tail::PlusInf };
                ExtCut::new(
                    CutPoint::with_tail(b.coords()[..=*vary].to_vec(), tail),
                    side,
                )?
            };
            let breadth = breadth_from_cut(kind, &cut, &coarse_group)?;
            Ok(CoarsenOutcome::Remains {
                kind,
                gauge,
                breadth,
                cut,
            })
        }
        (kind, GaugeLaw::TailCoord { prefix, up, .. }) => {
            if prefix.len() >= keep {
                let d = GroupValue::new(prefix[..keep].to_vec());
                let breadth = IdealSpec::closed_at(d.clone(), &coarse_group)?;
                return Ok(CoarsenOutcome::DefinitivelyPst { delta: d, breadth });
            }
            let gauge = GaugeLaw::TailCoord {
                prefix: prefix.clone(),
                rank: keep,
                up: *up,
            };
            let side = if *up { CutSide::Below } else { CutSide::Above };
            let tail = if *up { Tail::PlusInf } else { Tail::MinusInf };
            let cut = ExtCut::new(CutPoint::with_tail(prefix.clone(), tail), side)?;
            let breadth = breadth_from_cut(kind, &cut, &coarse_group)?;
            Ok(CoarsenOutcome::Remains {
                kind,
                gauge,
                breadth,
                cut,
            })
        }
        _ => Err(Error::precondition(
            "this gauge law lives on a rank-1 group; only the trivial localization applies",
        )),
    }
}

/// Breadth ideal read off a gauge cut: increasing gauges close exactly
/// when the cut is an attained finite position approached from below.
pub(crate) fn breadth_from_cut(
    kind: SeqKind,
    cut: &ExtCut,
    g: &crate::ordgroup::GroupDescriptor,
) -> Result<IdealSpec> {
    match kind {
        SeqKind::Cauchy => Ok(IdealSpec::zero()),
        SeqKind::Pst => IdealSpec::new(cut.point.clone(), true, g),
        SeqKind::Pcv => IdealSpec::new(cut.point.clone(), cut.point.is_finite(), g),
        SeqKind::Pdv => {
            if cut.point.prefix().is_empty() && cut.point.tail() == Tail::MinusInf {
                Ok(IdealSpec::all())
            } else {
                IdealSpec::new(cut.point.clone(), false, g)
            }
        }
    }
}

// Re-exported so the module reads naturally from call sites.
pub use crate::ordgroup::IdealSpec as Breadth;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordgroup::{int_value, pair_value, rational_value, sqrt_value};
    use crate::scalar::ratio;
    use crate::testutil::{composite5 as composite, e2, e3, e4, e5, e6, e7, f5, lq, t_pow};

    #[test]
    fn e2_matches_expected_law() {
        let seq = e2();
        assert_eq!(seq.kind(), SeqKind::Pcv);
        assert_eq!(seq.gauge_at(0), rational_value(0, 1));
        assert_eq!(seq.gauge_at(9), rational_value(9, 10));
        let f = seq.field().clone();
        let s3 = seq.term(3).unwrap();
        assert_eq!(s3, t_pow(3, 4, &f));
        assert_eq!(seq.breadth_ideal().to_string(), ">=1");
        assert_eq!(seq.gauge_cut().to_string(), "(1, below)");
    }

    #[test]
    fn e3_matches_expected_law() {
        let seq = e3();
        assert_eq!(seq.kind(), SeqKind::Pdv);
        let f = seq.field().clone();
        assert_eq!(seq.term(3).unwrap(), t_pow(1, 4, &f));
        assert_eq!(seq.breadth_ideal().to_string(), ">0");
    }

    #[test]
    fn e4_matches_expected_law() {
        let seq = e4();
        assert_eq!(seq.kind(), SeqKind::Pst);
        let f = seq.field().clone();
        let s7 = seq.term(7).unwrap();
        let expect = FieldElem::from_integer(7, &f)
            .unwrap()
            .mul(&FieldElem::t_pow(ratio(1, 1), &f).unwrap(), &f)
            .unwrap();
        assert_eq!(s7, expect);
    }

    #[test]
    fn e5_gauge_is_lower_convergents() {
        let seq = e5();
        assert_eq!(seq.gauge_at(0), rational_value(1, 1));
        assert_eq!(seq.gauge_at(1), rational_value(7, 5));
        assert_eq!(seq.gauge_at(2), rational_value(41, 29));
        let f5 = f5();
        assert_eq!(f5.gauge_at(0), rational_value(3, 2));
        assert_eq!(f5.gauge_at(1), rational_value(17, 12));
        assert_eq!(seq.breadth_ideal(), f5.breadth_ideal());
    }

    #[test]
    fn defining_inequalities_on_triples() {
        for seq in [e2(), e3(), e4(), e5(), f5()] {
            let f = seq.field().clone();
            let n = 12u64;
            let terms = seq.terms(0, n).unwrap();
            for nu in 0..n as usize {
                for rho in (nu + 1)..n as usize {
                    for sigma in (rho + 1)..n as usize {
                        let a = terms[rho].sub(&terms[nu], &f).unwrap().value(&f);
                        let b = terms[sigma].sub(&terms[rho], &f).unwrap().value(&f);
                        let ord = a.cmp_val(&b);
                        match seq.kind() {
                            SeqKind::Pcv | SeqKind::Cauchy => {
                                assert_eq!(ord, std::cmp::Ordering::Less)
                            }
                            SeqKind::Pdv => assert_eq!(ord, std::cmp::Ordering::Greater),
                            SeqKind::Pst => assert_eq!(ord, std::cmp::Ordering::Equal),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_gates_for_kinds() {
        let f = lq();
        let g = f.group();
        // pcv with a maximal-ideal multiple is rejected.
        let m = IdealSpec::open_at(int_value(0), &g).unwrap();
        let err = make_sequence(SeqKind::Pcv, FieldElem::zero(), m, f).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        // pdv with a principal ideal is rejected.
        let p = IdealSpec::closed_at(int_value(1), &g).unwrap();
        let err = make_sequence(SeqKind::Pdv, FieldElem::zero(), p.clone(), f).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        // pst over the p-adics is rejected: finite residue field.
        let fp = FieldDescriptor::PadicQ(5);
        let pz = IdealSpec::closed_at(int_value(1), &fp.group()).unwrap();
        let err = make_sequence(SeqKind::Pst, FieldElem::zero(), pz, fp).unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("residue")),
            other => panic!("unexpected error {other:?}"),
        }
        // pst with a non-principal ideal is rejected.
        let err = make_sequence(
            SeqKind::Pst,
            FieldElem::zero(),
            IdealSpec::open_at(sqrt_value(2), &g).unwrap(),
            f,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn classify_prefix_examples() {
        let f = lq();
        let pts = vec![t_pow(1, 2, &f), t_pow(2, 3, &f), t_pow(3, 4, &f)];
        assert_eq!(classify_prefix(&pts, &f).unwrap().kind, PrefixKind::Pcv);
        let pts = vec![t_pow(1, 2, &f), t_pow(1, 3, &f), t_pow(1, 4, &f)];
        assert_eq!(classify_prefix(&pts, &f).unwrap().kind, PrefixKind::Pdv);
        let t = t_pow(1, 1, &f);
        let pts: Vec<FieldElem> = (1..=3)
            .map(|k| {
                FieldElem::from_integer(k, &f)
                    .unwrap()
                    .mul(&t, &f)
                    .unwrap()
            })
            .collect();
        assert_eq!(classify_prefix(&pts, &f).unwrap().kind, PrefixKind::Pst);
        // Shuffled pcv points: a valid order is recovered (the final two
        // elements of a finite window are genuinely interchangeable).
        let pts = vec![t_pow(3, 4, &f), t_pow(1, 2, &f), t_pow(2, 3, &f)];
        let cls = classify_prefix(&pts, &f).unwrap();
        assert_eq!(cls.kind, PrefixKind::Pcv);
        assert_eq!(cls.order[0], 1);
        let reordered: Vec<FieldElem> = cls.order.iter().map(|&i| pts[i].clone()).collect();
        let again = classify_prefix(&reordered, &f).unwrap();
        assert_eq!(again.kind, PrefixKind::Pcv);
        assert_eq!(again.order, vec![0, 1, 2]);
        // Duplicates are refused.
        let pts = vec![t.clone(), t.clone(), t_pow(1, 2, &f)];
        assert!(classify_prefix(&pts, &f).is_err());
    }

    #[test]
    fn pseudo_limit_membership() {
        let seq = e2();
        let f = seq.field().clone();
        assert!(is_pseudo_limit(&seq, &FieldElem::zero()).unwrap());
        assert!(is_pseudo_limit(&seq, &t_pow(1, 1, &f)).unwrap());
        assert!(!is_pseudo_limit(&seq, &FieldElem::one()).unwrap());
    }

    #[test]
    fn lemma_last_clause_terms_vs_limits() {
        // pcv: no term is a pseudo-limit; pdv/pst: every term is.
        for seq in [e2(), e5()] {
            for nu in 0..8 {
                let s = seq.term(nu).unwrap();
                assert!(!is_pseudo_limit(&seq, &s).unwrap());
            }
        }
        for seq in [e3(), f5(), e4()] {
            for nu in 0..8 {
                let s = seq.term(nu).unwrap();
                assert!(is_pseudo_limit(&seq, &s).unwrap(), "kind {}", seq.kind());
            }
        }
    }

    #[test]
    fn equivalence_cases() {
        let f = lq();
        let g = f.group();
        let seq = e2();
        // Translating the center by an element of the breadth ideal keeps
        // the extension.
        let shifted = make_sequence(
            SeqKind::Pcv,
            t_pow(2, 1, &f),
            IdealSpec::closed_at(int_value(1), &g).unwrap(),
            f,
        )
        .unwrap();
        let eq = equivalent(&seq, &shifted).unwrap();
        assert!(eq.equal, "{}", eq.reason);
        // E2 vs E3: different breadths.
        assert!(!equivalent(&e2(), &e3()).unwrap().equal);
        // Cross-kind pair around sqrt(2).
        let eq = equivalent(&e5(), &f5()).unwrap();
        assert!(eq.equal, "{}", eq.reason);
        // Strict vs stationary never.
        assert!(!equivalent(&e2(), &e4()).unwrap().equal);
        // Equivalence is symmetric on these samples.
        assert_eq!(
            equivalent(&e5(), &f5()).unwrap().equal,
            equivalent(&f5(), &e5()).unwrap().equal
        );
    }

    #[test]
    fn e6_e7_gauges() {
        let e6 = e6();
        assert_eq!(e6.gauge_at(3), pair_value(big(1), big(3)));
        let f = e6.field().clone();
        let s2 = e6.term(2).unwrap();
        // t * 25
        let expect = FieldElem::monomial(big(25), big(1), &f).unwrap();
        assert_eq!(s2, expect);
        let e7 = e7();
        assert_eq!(e7.gauge_at(3), pair_value(ratio(3, 4), big(0)));
    }

    #[test]
    fn coarsening_dichotomy() {
        let p = PrimeSpec { collapse: 1 };
        // E6: the varying coordinate collapses; definitively stationary at 1.
        match coarsen_sequence(&e6(), p).unwrap() {
            CoarsenOutcome::DefinitivelyPst { delta, breadth } => {
                assert_eq!(delta, int_value(1));
                assert_eq!(breadth.to_string(), ">=1");
            }
            other => panic!("expected definitively-pst, got {other:?}"),
        }
        // E7: stays pseudo-convergent with the same breadth value set.
        match coarsen_sequence(&e7(), p).unwrap() {
            CoarsenOutcome::Remains { kind, breadth, .. } => {
                assert_eq!(kind, SeqKind::Pcv);
                assert_eq!(breadth.to_string(), ">=1");
            }
            other => panic!("expected remains, got {other:?}"),
        }
        // Trivial localization: everything unchanged.
        match coarsen_sequence(&e4(), PrimeSpec { collapse: 0 }).unwrap() {
            CoarsenOutcome::Remains { kind, breadth, .. } => {
                assert_eq!(kind, SeqKind::Pst);
                assert_eq!(breadth, e4().breadth_ideal().clone());
            }
            other => panic!("expected remains, got {other:?}"),
        }
        // Collapsing a rank-1 field is refused.
        assert!(coarsen_sequence(&e2(), p).is_err());
    }

    #[test]
    fn thm_breadth_transfer_on_rank2() {
        // Remains-branch iff the breadth ideal survives as the same value
        // set, iff its class over the localization is strictly divisorial.
        let p = PrimeSpec { collapse: 1 };
        let coarse = composite().group().truncated(1).unwrap();
        for (seq, expect_remains) in [(e6(), false), (e7(), true)] {
            let out = coarsen_sequence(&seq, p).unwrap();
            match (&out, expect_remains) {
                (CoarsenOutcome::Remains { breadth, .. }, true) => {
                    let cls = breadth.classify(&coarse).unwrap();
                    assert!(cls.strictly_divisorial);
                }
                (CoarsenOutcome::DefinitivelyPst { .. }, false) => {}
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn cauchy_constructors() {
        let f = FieldDescriptor::PadicQ(5);
        let limit = FieldElem::from_rational(ratio(-1, 4), &f).unwrap();
        let seq = make_sequence(SeqKind::Cauchy, limit, IdealSpec::zero(), f).unwrap();
        // s_nu = (5^(nu+1) - 1)/4 = 1 + 5 + ... + 5^nu.
        let s2 = seq.term(2).unwrap();
        assert_eq!(s2, FieldElem::from_integer(31, &f).unwrap());
        // v5(s_nu + 1/4) = nu + 1.
        for nu in 0..6 {
            let d = seq
                .term(nu)
                .unwrap()
                .sub(seq.center().unwrap(), &f)
                .unwrap();
            assert_eq!(d.value(&f), Val::Fin(int_value(nu as i64 + 1)));
        }
        // A pcv request with zero breadth builds the same thing.
        let seq2 = make_sequence(
            SeqKind::Pcv,
            FieldElem::zero(),
            IdealSpec::zero(),
            FieldDescriptor::laurent_q(),
        )
        .unwrap();
        assert_eq!(seq2.kind(), SeqKind::Cauchy);
    }

    #[test]
    fn v_infinity_sequence() {
        let f = lq();
        let seq = make_sequence(SeqKind::Pdv, FieldElem::zero(), IdealSpec::all(), f).unwrap();
        assert!(seq.breadth_ideal().is_all());
        assert_eq!(seq.gauge_at(4), int_value(-4));
        // Everything is a pseudo-limit.
        assert!(is_pseudo_limit(&seq, &FieldElem::one()).unwrap());
        assert!(is_pseudo_limit(&seq, &t_pow(-7, 2, &f)).unwrap());
    }

    #[test]
    fn limit_free_constructor_is_uncertified() {
        let f = lq();
        let ideal = IdealSpec::closed_at(int_value(1), &f.group()).unwrap();
        let seq = make_limit_free_pcv(ideal, f).unwrap();
        assert!(seq.center().is_none());
        assert!(is_pseudo_limit(&seq, &FieldElem::zero()).is_err());
        // Terms are partial sums; the difference law still matches.
        let s0 = seq.term(0).unwrap();
        let s1 = seq.term(1).unwrap();
        let d = s1.sub(&s0, &f).unwrap();
        assert_eq!(d.value(&f), Val::Fin(seq.gauge_at(0)));
    }

    #[test]
    fn first_index_beyond_probes() {
        let seq = e2();
        // Gauge 1 - 1/(nu+1) exceeds 9/10 from nu = 10.
        let n = seq
            .gauge_law()
            .first_index_beyond(&rational_value(9, 10), true)
            .unwrap();
        assert_eq!(n, 10);
        let n = seq
            .gauge_law()
            .first_index_beyond(&rational_value(0, 1), true)
            .unwrap();
        assert_eq!(n, 1);
    }
}
