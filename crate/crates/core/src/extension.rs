//! The extension valuation attached to a certified pseudo-monotone
//! sequence: the ring of rational functions whose values along the
//! sequence are eventually nonnegative.
//!
//! Values are represented as affine functionals `lambda*delta_nu + gamma`
//! over the gauge, ordered through the gauge cut; this makes membership
//! and comparisons decidable without materializing the extended value
//! group. For a constant gauge the functional folds into the base group.

use std::cmp::Ordering;
use std::fmt;

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldElem, PrimeSpec, ResidueElem};
use crate::ordgroup::{
    extval_sign, CutSide, ExtCut, GroupValue, IdealCategory, IdealSpec, Tail, Val,
};
use crate::ratfunc::{newton_profile, s_part, Poly, RatFunc};
use crate::sequences::{classify_prefix, PMSeq, PrefixKind, SeqKind};

/// A value of the extension valuation: `lambda*delta_nu + gamma`
/// eventually, ordered through the gauge cut. For an exact cut (constant
/// gauge) the functional is folded into the base group on construction,
/// so equal values have equal representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtValue {
    lambda: i64,
    gamma: GroupValue,
    cut: ExtCut,
}

impl ExtValue {
    pub fn new(lambda: i64, gamma: GroupValue, cut: ExtCut) -> Self {
        if cut.side == CutSide::Exact && lambda != 0 {
            let delta = cut.point.as_value().expect("exact cuts are finite");
            return ExtValue {
                lambda: 0,
                gamma: gamma.add(&delta.scale_int(lambda)),
                cut,
            };
        }
        ExtValue { lambda, gamma, cut }
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    pub fn gamma(&self) -> &GroupValue {
        &self.gamma
    }

    pub fn cut(&self) -> &ExtCut {
        &self.cut
    }

    /// Sign of the value: the eventual sign of the affine expression along
    /// the gauge.
    pub fn sign(&self, f: &FieldDescriptor) -> Result<i8> {
        extval_sign(self.lambda, &self.gamma, &self.cut, &f.group())
    }

    /// Membership in the extension ring (value >= 0).
    pub fn in_ring(&self, f: &FieldDescriptor) -> Result<bool> {
        Ok(self.sign(f)? >= 0)
    }

    /// Membership in the maximal ideal (value > 0).
    pub fn in_maximal_ideal(&self, f: &FieldDescriptor) -> Result<bool> {
        Ok(self.sign(f)? > 0)
    }

    pub fn add(&self, other: &ExtValue) -> ExtValue {
        debug_assert_eq!(self.cut, other.cut);
        ExtValue::new(
            self.lambda + other.lambda,
            self.gamma.add(&other.gamma),
            self.cut.clone(),
        )
    }

    pub fn sub(&self, other: &ExtValue) -> ExtValue {
        debug_assert_eq!(self.cut, other.cut);
        ExtValue::new(
            self.lambda - other.lambda,
            self.gamma.sub(&other.gamma),
            self.cut.clone(),
        )
    }

    pub fn cmp_ext(&self, other: &ExtValue, f: &FieldDescriptor) -> Result<Ordering> {
        let s = extval_sign(
            self.lambda - other.lambda,
            &self.gamma.sub(&other.gamma),
            &self.cut,
            &f.group(),
        )?;
        Ok(match s {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Whether the value lies in the base value group rather than in the
    /// extension: true exactly when no gauge multiple remains.
    pub fn in_base_group(&self) -> bool {
        self.lambda == 0
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lambda == 0 {
            write!(f, "{}", self.gamma)
        } else {
            write!(f, "{}*delta + ({})", self.lambda, self.gamma)
        }
    }
}

/// A value of the extension valuation with the infinity of the zero
/// function adjoined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtVal {
    Fin(ExtValue),
    Inf,
}

impl ExtVal {
    pub fn as_fin(&self) -> Option<&ExtValue> {
        match self {
            ExtVal::Fin(v) => Some(v),
            ExtVal::Inf => None,
        }
    }
}

/// Dominating degree of `phi` with respect to the sequence: the weighted
/// number of its critical points (zeros positive, poles negative) that are
/// pseudo-limits of the sequence. Equals the eventual slope of
/// `v(phi(s_nu))` against the gauge.
pub fn degdom(phi: &RatFunc, seq: &PMSeq) -> Result<i64> {
    let center = seq.certified_center()?;
    if phi.is_zero() {
        return Err(Error::precondition(
            "the zero function has no dominating degree",
        ));
    }
    Ok(s_part(phi, seq.gauge_cut(), center, seq.field())?.0)
}

/// The value of `phi` in the extension valuation.
pub fn v_ext(phi: &RatFunc, seq: &PMSeq) -> Result<ExtVal> {
    if phi.is_zero() {
        return Ok(ExtVal::Inf);
    }
    let center = seq.certified_center()?;
    let (lambda, gamma) = s_part(phi, seq.gauge_cut(), center, seq.field())?;
    Ok(ExtVal::Fin(ExtValue::new(
        lambda,
        gamma,
        seq.gauge_cut().clone(),
    )))
}

/// Inclusive evaluation window along a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: u64,
    pub hi: u64,
}

impl Window {
    pub fn new(lo: u64, hi: u64) -> Self {
        Window { lo, hi: hi.max(lo) }
    }

    pub fn default_window() -> Self {
        Window { lo: 8, hi: 24 }
    }

    pub fn indices(self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }

    pub fn len(self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

/// Shape of an empirical fit of the values along a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitShape {
    /// `v(phi(s_nu)) = lambda*delta_nu + gamma` on the window.
    Affine { lambda: BigRational, gamma: GroupValue },
    /// Constant values (stationary gauge); exceptional indices where a
    /// critical point meets the sequence are skipped.
    Constant { value: GroupValue },
}

/// Result of the window fit, with its certification status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeFit {
    pub fit: FitShape,
    pub certified: bool,
}

/// Least index from which the value formula is guaranteed: the gauge must
/// have passed every root valuation sitting on the wrong side of the cut.
/// `None` when that index exceeds the probing cap (the fit is then left
/// uncertified).
pub fn certification_index(phi: &RatFunc, seq: &PMSeq) -> Result<Option<u64>> {
    let center = seq.certified_center()?;
    let f = seq.field();
    if phi.is_zero() {
        return Ok(Some(0));
    }
    let region = seq.gauge_cut();
    let mut worst: Option<u64> = Some(0);
    for poly in [phi.num(), phi.den()] {
        if poly.degree() == 0 {
            continue;
        }
        let prof = newton_profile(poly, center, f)?;
        for (v, _) in prof.entries() {
            let Val::Fin(x) = v else { continue };
            let in_region = region.region_contains(v);
            // Increasing gauges must climb past out-of-region entries;
            // decreasing gauges must drop below in-region entries.
            let need = match seq.kind() {
                SeqKind::Pcv | SeqKind::Cauchy => (!in_region).then_some(true),
                SeqKind::Pdv => in_region.then_some(false),
                SeqKind::Pst => None,
            };
            if let Some(above) = need {
                match seq.gauge_law().first_index_beyond(x, above) {
                    Some(n) => {
                        worst = worst.map(|w| w.max(n));
                    }
                    None => return Ok(None),
                }
            }
        }
    }
    Ok(worst)
}

/// A window that starts past the certification index (when computable).
pub fn certified_window(phi: &RatFunc, seq: &PMSeq, len: u64) -> Result<Window> {
    let base = Window::default_window();
    let lo = match certification_index(phi, seq)? {
        Some(n0) => base.lo.max(n0 + 1),
        None => base.lo,
    };
    Ok(Window::new(lo, lo + len.max(2)))
}

/// Fits `v(phi(s_nu))` on the window against the gauge: the independent
/// oracle for the dominating degree. The fit is certified when the
/// sequence is constructor-built with a pseudo-limit, the window starts
/// past the certification index, the slope is an integer, and at least
/// three consecutive index pairs agree.
pub fn empirical_slope(phi: &RatFunc, seq: &PMSeq, window: Window) -> Result<SlopeFit> {
    if phi.is_zero() {
        return Err(Error::precondition("cannot fit the zero function"));
    }
    let f = seq.field();
    if seq.kind() == SeqKind::Pst {
        return empirical_constant(phi, seq, window);
    }

    let mut values = Vec::new();
    for nu in window.indices() {
        let s = seq.term(nu)?;
        let v = phi
            .eval_value(&s, f)
            .map_err(|_| Error::NonfiniteValueAt(nu))?;
        match v {
            Val::Fin(v) => values.push((nu, v)),
            Val::Inf => return Err(Error::NonfiniteValueAt(nu)),
        }
    }
    if values.len() < 2 {
        return Err(Error::precondition("window must contain at least two indices"));
    }

    let mut lambda: Option<BigRational> = None;
    let mut consistent = true;
    for w in values.windows(2) {
        let (nu, v0) = (&w[0].0, &w[0].1);
        let (mu, v1) = (&w[1].0, &w[1].1);
        let dv = v1.sub(v0);
        let dd = seq.gauge_at(*mu).sub(&seq.gauge_at(*nu));
        let Some(pair_lambda) = solve_ratio(&dv, &dd) else {
            consistent = false;
            continue;
        };
        match &lambda {
            None => lambda = Some(pair_lambda),
            Some(l) if *l == pair_lambda => {}
            Some(_) => consistent = false,
        }
    }
    let lambda = lambda.ok_or_else(|| {
        Error::Inconsistency("no window pair admits an affine fit against the gauge".into())
    })?;
    // gamma from the last point; constancy across the window feeds the
    // certification flag.
    let (nu_last, v_last) = values.last().unwrap();
    let gamma = v_last.sub(&seq.gauge_at(*nu_last).scale(&lambda));
    for (nu, v) in &values {
        if v.sub(&seq.gauge_at(*nu).scale(&lambda)) != gamma {
            consistent = false;
        }
    }

    let mut certified = consistent && lambda.is_integer() && values.len() >= 4;
    if certified {
        certified = match certification_index(phi, seq)? {
            Some(n0) => window.lo > n0,
            None => false,
        };
    }
    Ok(SlopeFit {
        fit: FitShape::Affine { lambda, gamma },
        certified,
    })
}

fn empirical_constant(phi: &RatFunc, seq: &PMSeq, window: Window) -> Result<SlopeFit> {
    let f = seq.field();
    let mut values: Vec<Option<GroupValue>> = Vec::new();
    for nu in window.indices() {
        let s = seq.term(nu)?;
        match phi.eval_value(&s, f) {
            Ok(Val::Fin(v)) => values.push(Some(v)),
            // A critical point meeting the sequence produces one
            // exceptional index; skip it.
            Ok(Val::Inf) | Err(Error::Pole) => values.push(None),
            Err(e) => return Err(e),
        }
    }
    let mut counts: Vec<(GroupValue, usize)> = Vec::new();
    for v in values.iter().flatten() {
        match counts.iter_mut().find(|(w, _)| w == v) {
            Some((_, c)) => *c += 1,
            None => counts.push((v.clone(), 1)),
        }
    }
    let Some((mode, freq)) = counts.into_iter().max_by_key(|(_, c)| *c) else {
        return Err(Error::Inconsistency(
            "every window index met a critical point".into(),
        ));
    };
    if freq < 3 {
        return Err(Error::Inconsistency(
            "constant fit needs at least three agreeing values; enlarge the window".into(),
        ));
    }
    // Longest consecutive run of the modal value.
    let mut run = 0usize;
    let mut best_run = 0usize;
    let mut exceptions = 0usize;
    for v in &values {
        if v.as_ref() == Some(&mode) {
            run += 1;
            best_run = best_run.max(run);
        } else {
            run = 0;
            exceptions += 1;
        }
    }
    let allowed = phi.num().degree() + phi.den().degree();
    let certified = best_run >= 3 && exceptions <= allowed;
    Ok(SlopeFit {
        fit: FitShape::Constant { value: mode },
        certified,
    })
}

/// Exact rational `q` with `dv = q * dd`, if one exists.
fn solve_ratio(dv: &GroupValue, dd: &GroupValue) -> Option<BigRational> {
    let mut q: Option<BigRational> = None;
    for i in 0..dd.rank() {
        let d = dd.coord(i).as_rational()?;
        if d.is_zero() {
            continue;
        }
        let v = dv.coord(i).as_rational()?;
        q = Some(v / d);
        break;
    }
    let q = q?;
    if dv == &dd.scale(&q) {
        Some(q)
    } else {
        None
    }
}

/// Monomial value `min_i { v(a_i) + i*delta }` of the expansion of `poly`
/// around `alpha`, with `delta` a group value.
pub fn monomial_value(
    poly: &Poly,
    alpha: &FieldElem,
    delta: &GroupValue,
    f: &FieldDescriptor,
) -> Result<Val> {
    if poly.is_zero() {
        return Ok(Val::Inf);
    }
    let g = poly.shift(alpha, f)?;
    let mut best: Option<GroupValue> = None;
    for (i, a) in g.coeffs().iter().enumerate() {
        let Val::Fin(v) = a.value(f) else { continue };
        let cand = v.add(&delta.scale_int(i as i64));
        best = Some(match best {
            None => cand,
            Some(b) if cand.cmp_lex(&b) == Ordering::Less => cand,
            Some(b) => b,
        });
    }
    Ok(Val::Fin(best.expect("nonzero polynomial")))
}

/// Monomial value with `delta` a cut position: the minimum is taken in the
/// extended group ordered through the cut.
pub fn monomial_value_cut(
    poly: &Poly,
    alpha: &FieldElem,
    cut: &ExtCut,
    f: &FieldDescriptor,
) -> Result<ExtVal> {
    if poly.is_zero() {
        return Ok(ExtVal::Inf);
    }
    let g = poly.shift(alpha, f)?;
    let mut best: Option<ExtValue> = None;
    for (i, a) in g.coeffs().iter().enumerate() {
        let Val::Fin(v) = a.value(f) else { continue };
        let cand = ExtValue::new(i as i64, v, cut.clone());
        best = Some(match best {
            None => cand,
            Some(b) => {
                if cand.cmp_ext(&b, f)? == Ordering::Less {
                    cand
                } else {
                    b
                }
            }
        });
    }
    Ok(ExtVal::Fin(best.expect("nonzero polynomial")))
}

/// Monomial value of a rational function (difference of the two
/// polynomial values).
pub fn monomial_value_ratfunc(
    phi: &RatFunc,
    alpha: &FieldElem,
    cut: &ExtCut,
    f: &FieldDescriptor,
) -> Result<ExtVal> {
    if phi.is_zero() {
        return Ok(ExtVal::Inf);
    }
    let num = monomial_value_cut(phi.num(), alpha, cut, f)?;
    let den = monomial_value_cut(phi.den(), alpha, cut, f)?;
    match (num, den) {
        (ExtVal::Fin(a), ExtVal::Fin(b)) => Ok(ExtVal::Fin(a.sub(&b))),
        _ => unreachable!("nonzero polynomials have finite values"),
    }
}

/// Image of a strictly pseudo-monotone sequence under a rational function:
/// the evaluated tail, its detected kind, and the consistency data. The
/// image is of the same kind when the dominating degree is positive, of
/// the opposite kind when negative, and strictly pseudo-monotone either
/// way; when the image is pseudo-convergent, the function itself is a
/// pseudo-limit of it, witnessed by strictly increasing values of
/// `v_E(phi(X) - phi(s_nu))`.
#[derive(Debug, Clone)]
pub struct ImageSequence {
    pub kind: PrefixKind,
    pub start: u64,
    pub terms: Vec<FieldElem>,
    pub lambda: i64,
    pub certified: bool,
}

pub fn image_sequence(phi: &RatFunc, seq: &PMSeq, len: u64) -> Result<ImageSequence> {
    if seq.kind() == SeqKind::Pst {
        return Err(Error::precondition(
            "image classification applies to strictly pseudo-monotone sequences only",
        ));
    }
    if phi.is_constant() || phi.is_zero() {
        return Err(Error::precondition(
            "the image of a sequence under a constant is not pseudo-monotone",
        ));
    }
    let f = seq.field();
    let lambda = degdom(phi, seq)?;
    let n0 = certification_index(phi, seq)?;
    let start = match n0 {
        Some(n) => n + 1,
        None => Window::default_window().lo,
    };
    let len = len.max(4);
    let terms = {
        let mut out = Vec::new();
        for nu in start..start + len {
            out.push(phi.eval(&seq.term(nu)?, f)?);
        }
        out
    };
    let cls = classify_prefix(&terms, f)?;
    let same_kind = match (seq.kind(), &cls.kind) {
        (SeqKind::Pcv | SeqKind::Cauchy, PrefixKind::Pcv) => Some(true),
        (SeqKind::Pcv | SeqKind::Cauchy, PrefixKind::Pdv) => Some(false),
        (SeqKind::Pdv, PrefixKind::Pdv) => Some(true),
        (SeqKind::Pdv, PrefixKind::Pcv) => Some(false),
        _ => None,
    };
    let Some(same) = same_kind else {
        return Err(Error::Inconsistency(format!(
            "image window classified as {:?}, expected a strict kind",
            cls.kind
        )));
    };
    if lambda > 0 && !same {
        return Err(Error::Inconsistency(
            "positive dominating degree must preserve the kind".into(),
        ));
    }
    if lambda < 0 && same {
        return Err(Error::Inconsistency(
            "negative dominating degree must flip the kind".into(),
        ));
    }
    // When the image is pseudo-convergent, phi(X) is a pseudo-limit of it:
    // v_E(phi - phi(s_nu)) strictly increases.
    if cls.kind == PrefixKind::Pcv {
        let mut prev: Option<ExtValue> = None;
        for (k, term) in terms.iter().enumerate() {
            let diff = phi.sub(&RatFunc::constant(term.clone()), f)?;
            let ExtVal::Fin(v) = v_ext(&diff, seq)? else {
                return Err(Error::Inconsistency(
                    "phi equals one of its image terms as a function".into(),
                ));
            };
            if let Some(p) = &prev {
                if v.cmp_ext(p, f)? != Ordering::Greater {
                    return Err(Error::Inconsistency(format!(
                        "pseudo-limit witness failed at image index {k}"
                    )));
                }
            }
            prev = Some(v);
        }
    }
    Ok(ImageSequence {
        kind: cls.kind,
        start,
        terms,
        lambda,
        certified: n0.is_some(),
    })
}

/// A polynomial of minimal degree among the candidates with positive
/// dominating degree, together with its extension value. The value lies
/// outside the base value group exactly when a gauge multiple remains.
#[derive(Debug, Clone)]
pub struct MinimalPolyValue {
    pub poly: Poly,
    pub value: ExtValue,
    pub outside_base_group: bool,
}

pub fn delta_e(seq: &PMSeq, candidates: &[Poly]) -> Result<MinimalPolyValue> {
    if seq.kind() == SeqKind::Pst {
        let alpha = seq.certified_center()?;
        let poly = Poly::x_minus(alpha);
        let ExtVal::Fin(value) = v_ext(&RatFunc::from_poly(poly.clone()), seq)? else {
            unreachable!("a monic linear polynomial is nonzero");
        };
        return Ok(MinimalPolyValue {
            poly,
            value,
            outside_base_group: false,
        });
    }
    for c in candidates {
        if !c.is_monic() {
            return Err(Error::precondition("candidates must be monic"));
        }
    }
    let mut best: Option<(usize, &Poly)> = None;
    for c in candidates {
        let lam = degdom(&RatFunc::from_poly(c.clone()), seq)?;
        if lam > 0 {
            match best {
                Some((deg, _)) if deg <= c.degree() => {}
                _ => best = Some((c.degree(), c)),
            }
        }
    }
    let Some((_, poly)) = best else {
        return Err(Error::NoCandidateFound);
    };
    let ExtVal::Fin(value) = v_ext(&RatFunc::from_poly(poly.clone()), seq)? else {
        unreachable!("monic candidates are nonzero");
    };
    let outside = !value.in_base_group();
    Ok(MinimalPolyValue {
        poly: poly.clone(),
        value,
        outside_base_group: outside,
    })
}

/// One of the two distinguished subsets of K attached to an extension: the
/// centers whose linear form has value outside the base group (first
/// kind), or inside it with residually transcendental normalized residue
/// (second kind).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSet {
    pub center: Option<FieldElem>,
    pub spread: Option<IdealSpec>,
}

impl LimitSet {
    pub fn empty() -> Self {
        LimitSet {
            center: None,
            spread: None,
        }
    }

    pub fn ball(center: FieldElem, spread: IdealSpec) -> Self {
        LimitSet {
            center: Some(center),
            spread: Some(spread),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.center.is_none()
    }

    pub fn is_all_of_k(&self) -> bool {
        self.spread.as_ref().map(IdealSpec::is_all).unwrap_or(false)
    }

    pub fn contains(&self, x: &FieldElem, f: &FieldDescriptor) -> Result<bool> {
        match (&self.center, &self.spread) {
            (Some(c), Some(spread)) => {
                let d = x.sub(c, f)?;
                Ok(spread.contains_value(&d.value(f)))
            }
            _ => Ok(false),
        }
    }
}

/// The two limit sets of the extension; at most one is nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimSetsReport {
    pub l1: LimitSet,
    pub l2: LimitSet,
}

/// Limit sets of the extension attached to the sequence: the pseudo-limit
/// set lands in the first set for strict kinds and in the second for
/// stationary ones.
pub fn lim_sets(seq: &PMSeq) -> Result<LimSetsReport> {
    let center = seq.certified_center()?.clone();
    let ball = LimitSet::ball(center, seq.breadth_ideal().clone());
    Ok(match seq.kind() {
        SeqKind::Pst => LimSetsReport {
            l1: LimitSet::empty(),
            l2: ball,
        },
        _ => LimSetsReport {
            l1: ball,
            l2: LimitSet::empty(),
        },
    })
}

/// A rational function over the residue field in the variable T.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueFunc {
    num: Vec<BigRational>,
    den: Vec<BigRational>,
}

impl ResidueFunc {
    fn normalize(mut num: Vec<BigRational>, mut den: Vec<BigRational>) -> Self {
        let trim = |v: &mut Vec<BigRational>| {
            while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
                v.pop();
            }
        };
        trim(&mut num);
        trim(&mut den);
        if num.iter().all(BigRational::is_zero) {
            return ResidueFunc {
                num: vec![BigRational::zero()],
                den: vec![BigRational::one()],
            };
        }
        let lead = den.last().unwrap().clone();
        if !lead.is_one() {
            for c in num.iter_mut() {
                *c /= &lead;
            }
            for c in den.iter_mut() {
                *c /= &lead;
            }
        }
        ResidueFunc { num, den }
    }

    pub fn zero() -> Self {
        ResidueFunc::normalize(vec![BigRational::zero()], vec![BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(BigRational::is_zero)
    }

    pub fn num_coeffs(&self) -> &[BigRational] {
        &self.num
    }

    pub fn den_coeffs(&self) -> &[BigRational] {
        &self.den
    }

    fn eval(&self, y: &BigRational) -> (BigRational, BigRational) {
        let horner = |p: &[BigRational]| {
            let mut acc = BigRational::zero();
            for c in p.iter().rev() {
                acc = acc * y + c;
            }
            acc
        };
        (horner(&self.num), horner(&self.den))
    }

    /// Whether the residue lies in the maximal ideal at T = y, i.e. is a
    /// rational function vanishing there.
    pub fn vanishes_at(&self, y: &BigRational) -> bool {
        let (n, d) = self.eval(y);
        n.is_zero() && !d.is_zero()
    }
}

impl fmt::Display for ResidueFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = |p: &[BigRational], f: &mut fmt::Formatter<'_>| -> fmt::Result {
            let mut first = true;
            if p.iter().all(BigRational::is_zero) {
                return write!(f, "0");
            }
            for i in (0..p.len()).rev() {
                let c = &p[i];
                if c.is_zero() {
                    continue;
                }
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
                let mag_str = crate::scalar::fmt_rational(&mag);
                match (i, mag.is_one()) {
                    (0, _) => write!(f, "{mag_str}")?,
                    (1, true) => write!(f, "T")?,
                    (1, false) => write!(f, "{mag_str}*T")?,
                    (_, true) => write!(f, "T^{i}")?,
                    (_, false) => write!(f, "{mag_str}*T^{i}")?,
                }
            }
            Ok(())
        };
        if self.den.len() == 1 && self.den[0].is_one() {
            poly(&self.num, f)
        } else {
            write!(f, "(")?;
            poly(&self.num, f)?;
            write!(f, ")/(")?;
            poly(&self.den, f)?;
            write!(f, ")")
        }
    }
}

/// Residue of a member of the extension ring of a pseudo-stationary
/// sequence, as a rational function in T over the residue field: T is the
/// residue of (X - alpha)/c where c generates the breadth ideal.
pub fn residue_in_kt(phi: &RatFunc, seq: &PMSeq) -> Result<ResidueFunc> {
    if seq.kind() != SeqKind::Pst {
        return Err(Error::precondition(
            "the residue map into k(T) is attached to pseudo-stationary sequences",
        ));
    }
    let f = seq.field();
    let alpha = seq.certified_center()?;
    let g = f.group();
    let delta = seq
        .breadth_ideal()
        .classify(&g)?
        .witness
        .expect("stationary breadth ideals are principal");
    let c = f.elem_of_value(&delta)?;

    let num_t = phi.num().compose_linear(alpha, &c, f)?;
    let den_t = phi.den().compose_linear(alpha, &c, f)?;

    let gauss = |p: &Poly| -> Option<GroupValue> {
        let mut best: Option<GroupValue> = None;
        for a in p.coeffs() {
            if let Val::Fin(v) = a.value(f) {
                best = Some(match best {
                    None => v,
                    Some(b) if v.cmp_lex(&b) == Ordering::Less => v,
                    Some(b) => b,
                });
            }
        }
        best
    };
    let m = gauss(&num_t).ok_or(Error::precondition("zero function"))?;
    let n = gauss(&den_t).expect("nonzero denominator");
    match m.sub(&n).signum() {
        -1 => {
            return Err(Error::precondition(
                "the function is not a member of the extension ring; no residue",
            ))
        }
        1 => return Ok(ResidueFunc::zero()),
        _ => {}
    }
    let unit = f.elem_of_value(&n)?;
    let reduce = |p: &Poly| -> Result<Vec<BigRational>> {
        let mut out = Vec::with_capacity(p.coeffs().len());
        for a in p.coeffs() {
            let scaled = a.div(&unit, f)?;
            match scaled.value(f) {
                Val::Inf => out.push(BigRational::zero()),
                Val::Fin(v) if v.signum() > 0 => out.push(BigRational::zero()),
                Val::Fin(_) => match scaled.residue(f)? {
                    ResidueElem::Rat(r) => out.push(r),
                    ResidueElem::Mod { .. } => {
                        return Err(Error::structural(
                            "stationary sequences live over fields with infinite residue field",
                        ))
                    }
                },
            }
        }
        Ok(out)
    };
    let num_r = reduce(&num_t)?;
    let den_r = reduce(&den_t)?;
    // Cancel common factors over the residue field.
    let (num_r, den_r) = reduce_residue_fraction(num_r, den_r);
    Ok(ResidueFunc::normalize(num_r, den_r))
}

fn reduce_residue_fraction(
    num: Vec<BigRational>,
    den: Vec<BigRational>,
) -> (Vec<BigRational>, Vec<BigRational>) {
    use crate::qpoly;
    if qpoly::is_zero(&num) {
        return (num, den);
    }
    let g = qpoly::gcd(&num, &den);
    if qpoly::deg(&g) == 0 {
        return (num, den);
    }
    (qpoly::div_exact(&num, &g), qpoly::div_exact(&den, &g))
}

/// Number of primes of the extension ring over the selected prime of the
/// base ring, with the shape certificate for the breadth ideal when the
/// fiber has two elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberTag {
    /// Br(E) = c * V_P: the localization keeps the sequence strictly
    /// pseudo-monotone.
    CVp,
    /// Br(E) = c * P: the sequence becomes definitively stationary under
    /// the localization.
    CP,
}

impl fmt::Display for FiberTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberTag::CVp => write!(f, "cV_P"),
            FiberTag::CP => write!(f, "cP"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub size: u8,
    pub tag: Option<FiberTag>,
    /// Value of the scale element c when the fiber has two primes.
    pub witness: Option<GroupValue>,
}

/// Size of the fiber of primes of the extension ring over the prime
/// selected by `sel`, decided by the shape of the breadth ideal over the
/// localization: two primes exactly when Br(E) is c*V_P or c*P, one
/// otherwise; stationary sequences never split the spectrum.
pub fn prime_fiber(seq: &PMSeq, sel: PrimeSpec) -> Result<FiberReport> {
    let rank = seq.field().rank();
    if sel.collapse >= rank {
        return Err(Error::structural(
            "prime selector must collapse fewer coordinates than the rank",
        ));
    }
    if seq.kind() == SeqKind::Pst {
        return Ok(FiberReport {
            size: 1,
            tag: None,
            witness: None,
        });
    }
    let keep = rank - sel.collapse;
    let br = seq.breadth_ideal();
    let bound = br.bound();
    if sel.collapse == 0 {
        if bound.is_finite() {
            let cls = br.classify(&seq.field().group())?;
            return Ok(match cls.category {
                IdealCategory::Principal => FiberReport {
                    size: 2,
                    tag: Some(FiberTag::CVp),
                    witness: cls.witness,
                },
                IdealCategory::MaximalMultiple => FiberReport {
                    size: 2,
                    tag: Some(FiberTag::CP),
                    witness: cls.witness,
                },
                IdealCategory::General => FiberReport {
                    size: 1,
                    tag: None,
                    witness: None,
                },
            });
        }
        return Ok(FiberReport {
            size: 1,
            tag: None,
            witness: None,
        });
    }
    // Nontrivial localization: the breadth must constrain exactly the kept
    // coordinates.
    if bound.prefix().len() == keep {
        let mut coords = bound.prefix().to_vec();
        coords.resize(rank, crate::scalar::Scalar::zero());
        let witness = GroupValue::new(coords);
        if !seq.field().group().contains(&witness) {
            return Ok(FiberReport {
                size: 1,
                tag: None,
                witness: None,
            });
        }
        let tag = match bound.tail() {
            Tail::MinusInf => Some(FiberTag::CVp),
            Tail::PlusInf => Some(FiberTag::CP),
            Tail::Finite => None,
        };
        if let Some(tag) = tag {
            return Ok(FiberReport {
                size: 2,
                tag: Some(tag),
                witness: Some(witness),
            });
        }
    }
    Ok(FiberReport {
        size: 1,
        tag: None,
        witness: None,
    })
}
