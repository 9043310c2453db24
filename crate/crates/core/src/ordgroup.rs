//! Ordered abelian value groups, cuts, and classification of the fractional
//! ideals of a valuation domain whose value set is a single cut.
//!
//! Group elements are short vectors of exact scalars ordered
//! lexicographically. A cut position may sit strictly between group
//! elements; the `ExtCut` type records the position together with a side
//! marker saying whether the interesting object (the gauge of a sequence)
//! approaches it from below, from above, or sits exactly on it.

use std::cmp::Ordering;
use std::fmt;

use num::{BigRational, One};

use crate::error::{Error, Result};
use crate::scalar::{big, Scalar};

/// Kind of scalar allowed in one coordinate of a value group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordKind {
    Rational,
    /// Rationals extended by sqrt(d).
    Quadratic(u32),
}

/// One coordinate of a group descriptor. `discrete` marks Z-like
/// coordinates; dense coordinates are Q-like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoordSpec {
    pub kind: CoordKind,
    pub discrete: bool,
}

/// Shape of a value group: rank and per-coordinate scalar kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    coords: Vec<CoordSpec>,
}

impl GroupDescriptor {
    pub fn new(coords: Vec<CoordSpec>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::structural("group rank must be at least 1"));
        }
        for c in &coords {
            if c.discrete && !matches!(c.kind, CoordKind::Rational) {
                return Err(Error::structural(
                    "a discrete coordinate must be rational (Z-like)",
                ));
            }
        }
        Ok(GroupDescriptor { coords })
    }

    /// Rank-1 dense rational group (Q).
    pub fn rational_dense() -> Self {
        GroupDescriptor {
            coords: vec![CoordSpec {
                kind: CoordKind::Rational,
                discrete: false,
            }],
        }
    }

    /// Rank-1 discrete group (Z).
    pub fn integer() -> Self {
        GroupDescriptor {
            coords: vec![CoordSpec {
                kind: CoordKind::Rational,
                discrete: true,
            }],
        }
    }

    /// Q x Z ordered lexicographically.
    pub fn rational_then_integer() -> Self {
        GroupDescriptor {
            coords: vec![
                CoordSpec {
                    kind: CoordKind::Rational,
                    discrete: false,
                },
                CoordSpec {
                    kind: CoordKind::Rational,
                    discrete: true,
                },
            ],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[CoordSpec] {
        &self.coords
    }

    /// Keeps the first `keep` coordinates (localization at the prime that
    /// collapses the remaining ones).
    pub fn truncated(&self, keep: usize) -> Result<Self> {
        if keep == 0 || keep > self.rank() {
            return Err(Error::structural("cannot truncate to an empty group"));
        }
        Ok(GroupDescriptor {
            coords: self.coords[..keep].to_vec(),
        })
    }

    /// The maximal ideal of the valuation domain is principal exactly when
    /// the group has a least positive element, i.e. the last coordinate is
    /// discrete.
    pub fn maximal_ideal_principal(&self) -> bool {
        self.coords.last().map(|c| c.discrete).unwrap_or(false)
    }

    fn scalar_in_ambient(&self, i: usize, s: &Scalar) -> bool {
        match (self.coords[i].kind, s) {
            (_, Scalar::Rat(_)) => true,
            (CoordKind::Quadratic(d), Scalar::Quad { d: d2, .. }) => d == *d2,
            (CoordKind::Rational, Scalar::Quad { .. }) => false,
        }
    }

    /// True when `s` is attainable as coordinate `i` of a group element.
    fn scalar_attained(&self, i: usize, s: &Scalar) -> bool {
        match s {
            Scalar::Rat(r) => !self.coords[i].discrete || r.is_integer(),
            Scalar::Quad { d, .. } => matches!(self.coords[i].kind, CoordKind::Quadratic(d2) if d2 == *d),
        }
    }

    pub fn conforms(&self, v: &GroupValue) -> bool {
        v.coords.len() == self.rank()
            && v.coords
                .iter()
                .enumerate()
                .all(|(i, s)| self.scalar_in_ambient(i, s))
    }

    /// Membership in the group itself, not just its divisible hull.
    pub fn contains(&self, v: &GroupValue) -> bool {
        self.conforms(v)
            && v.coords
                .iter()
                .enumerate()
                .all(|(i, s)| self.scalar_attained(i, s))
    }
}

/// An element of a value group (or of its divisible hull, when produced by
/// a Newton polygon).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupValue {
    coords: Vec<Scalar>,
}

impl GroupValue {
    pub fn new(coords: Vec<Scalar>) -> Self {
        assert!(!coords.is_empty());
        GroupValue { coords }
    }

    pub fn zero(rank: usize) -> Self {
        GroupValue {
            coords: vec![Scalar::zero(); rank],
        }
    }

    pub fn rank1(s: Scalar) -> Self {
        GroupValue { coords: vec![s] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        GroupValue::rank1(Scalar::Rat(r))
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &GroupValue) -> GroupValue {
        assert_eq!(self.rank(), other.rank());
        GroupValue {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }

    pub fn sub(&self, other: &GroupValue) -> GroupValue {
        assert_eq!(self.rank(), other.rank());
        GroupValue {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x.sub(y))
                .collect(),
        }
    }

    pub fn neg(&self) -> GroupValue {
        GroupValue {
            coords: self.coords.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> GroupValue {
        GroupValue {
            coords: self.coords.iter().map(|s| s.scale_int(k)).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> GroupValue {
        GroupValue {
            coords: self.coords.iter().map(|s| s.scale(k)).collect(),
        }
    }

    /// Division by a positive integer, landing in the divisible hull.
    pub fn div_int(&self, k: i64) -> GroupValue {
        assert!(k != 0);
        self.scale(&BigRational::new(num::BigInt::from(1), num::BigInt::from(k)))
    }

    /// Lexicographic comparison. Panics on rank mismatch; the public
    /// `compare` entry point validates first.
    pub fn cmp_lex(&self, other: &GroupValue) -> Ordering {
        assert_eq!(self.rank(), other.rank());
        for (x, y) in self.coords.iter().zip(&other.coords) {
            match x.cmp_exact(y) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Sign of the element: sign of the first nonzero coordinate.
    pub fn signum(&self) -> i8 {
        for s in &self.coords {
            let sg = s.signum();
            if sg != 0 {
                return sg;
            }
        }
        0
    }

    /// Drops the last `collapse` coordinates.
    pub fn truncate(&self, keep: usize) -> GroupValue {
        assert!(keep >= 1 && keep <= self.rank());
        GroupValue {
            coords: self.coords[..keep].to_vec(),
        }
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A value together with the formal infinity v(0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Val {
    Fin(GroupValue),
    Inf,
}

impl Val {
    pub fn as_fin(&self) -> Option<&GroupValue> {
        match self {
            Val::Fin(v) => Some(v),
            Val::Inf => None,
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Val::Inf)
    }

    pub fn cmp_val(&self, other: &Val) -> Ordering {
        match (self, other) {
            (Val::Inf, Val::Inf) => Ordering::Equal,
            (Val::Inf, Val::Fin(_)) => Ordering::Greater,
            (Val::Fin(_), Val::Inf) => Ordering::Less,
            (Val::Fin(a), Val::Fin(b)) => a.cmp_lex(b),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(v) => write!(f, "{v}"),
            Val::Inf => write!(f, "inf"),
        }
    }
}

/// Public comparison with descriptor validation.
pub fn compare(a: &GroupValue, b: &GroupValue, g: &GroupDescriptor) -> Result<Ordering> {
    if !g.conforms(a) || !g.conforms(b) {
        return Err(Error::structural(
            "value does not conform to the group descriptor",
        ));
    }
    Ok(a.cmp_lex(b))
}

/// How a cut position ends: after its finite prefix the remaining
/// coordinates are all -inf, all +inf, or absent (full-length bound).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Finite,
    MinusInf,
    PlusInf,
}

/// A cut position in (the divisible hull of) a value group, possibly with
/// infinite trailing coordinates. `[+inf]` with an empty prefix is the top
/// cut (above every element), `[-inf]` the bottom one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPoint {
    prefix: Vec<Scalar>,
    tail: Tail,
}

impl CutPoint {
    pub fn finite(v: GroupValue) -> Self {
        CutPoint {
            prefix: v.coords,
            tail: Tail::Finite,
        }
    }

    pub fn with_tail(prefix: Vec<Scalar>, tail: Tail) -> Self {
        if tail == Tail::Finite {
            assert!(!prefix.is_empty());
        }
        CutPoint { prefix, tail }
    }

    pub fn plus_inf() -> Self {
        CutPoint {
            prefix: vec![],
            tail: Tail::PlusInf,
        }
    }

    pub fn minus_inf() -> Self {
        CutPoint {
            prefix: vec![],
            tail: Tail::MinusInf,
        }
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn prefix(&self) -> &[Scalar] {
        &self.prefix
    }

    pub fn is_finite(&self) -> bool {
        self.tail == Tail::Finite
    }

    /// The bound as a group value, when it is a full-length finite vector.
    pub fn as_value(&self) -> Option<GroupValue> {
        if self.is_finite() {
            Some(GroupValue::new(self.prefix.clone()))
        } else {
            None
        }
    }

    /// Lexicographic position of a (divisible-hull) value against this cut
    /// point. Never returns `Equal` unless the point is finite full-length
    /// and coordinates agree.
    pub fn cmp_value(&self, v: &GroupValue) -> Ordering {
        // Result is the ordering of v relative to the point.
        for (i, p) in self.prefix.iter().enumerate() {
            if i >= v.rank() {
                break;
            }
            match v.coord(i).cmp_exact(p) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        match self.tail {
            Tail::Finite => Ordering::Equal,
            Tail::MinusInf => Ordering::Greater,
            Tail::PlusInf => Ordering::Less,
        }
    }

    /// Translates the cut by a group value (first coordinates only when the
    /// tail is infinite).
    pub fn shift(&self, by: &GroupValue) -> CutPoint {
        let prefix = self
            .prefix
            .iter()
            .enumerate()
            .map(|(i, s)| s.add(by.coord(i)))
            .collect();
        CutPoint {
            prefix,
            tail: self.tail,
        }
    }
}

impl fmt::Display for CutPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.prefix.iter().map(|s| s.to_string()).collect();
        match self.tail {
            Tail::Finite => {}
            Tail::MinusInf => parts.push("-inf".into()),
            Tail::PlusInf => parts.push("inf".into()),
        }
        write!(f, "{}", parts.join(","))
    }
}

/// Side marker of a cut: `Below` means the gauge approaches the bound from
/// below (pseudo-convergent), `Above` from above (pseudo-divergent),
/// `Exact` means the bound itself is the constant gauge (pseudo-stationary).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    Below,
    Exact,
    Above,
}

impl fmt::Display for CutSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutSide::Below => write!(f, "below"),
            CutSide::Exact => write!(f, "exact"),
            CutSide::Above => write!(f, "above"),
        }
    }
}

/// A cut position with its side marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtCut {
    pub point: CutPoint,
    pub side: CutSide,
}

impl ExtCut {
    pub fn new(point: CutPoint, side: CutSide) -> Result<Self> {
        if side == CutSide::Exact && !point.is_finite() {
            return Err(Error::structural(
                "an exact cut must sit on a finite group element",
            ));
        }
        Ok(ExtCut { point, side })
    }

    /// Membership of a (divisible-hull) value in the region at or above the
    /// cut. For a pseudo-convergent gauge this is the set strictly above
    /// every gauge value, for a pseudo-divergent gauge the set above some
    /// gauge value, and for a constant gauge the set weakly above it —
    /// i.e. exactly the valuations of differences beta - alpha with beta a
    /// pseudo-limit.
    pub fn region_contains(&self, x: &Val) -> bool {
        match x {
            Val::Inf => true,
            Val::Fin(v) => match self.point.cmp_value(v) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => self.side != CutSide::Above,
            },
        }
    }
}

impl fmt::Display for ExtCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.point, self.side)
    }
}

/// Eventual sign of `lambda * delta_nu + gamma` along a gauge with the
/// given cut. This is the sign function of the extension valuation.
pub fn extval_sign(lambda: i64, gamma: &GroupValue, cut: &ExtCut, g: &GroupDescriptor) -> Result<i8> {
    if !g.conforms(gamma) {
        return Err(Error::structural(
            "gamma does not conform to the group descriptor",
        ));
    }
    if cut.point.prefix().len() > g.rank()
        || (cut.point.is_finite() && cut.point.prefix().len() != g.rank())
    {
        return Err(Error::structural("malformed cut for this group"));
    }
    let prefix = cut.point.prefix();
    for (i, p) in prefix.iter().enumerate() {
        let term = p.scale_int(lambda).add(gamma.coord(i));
        let sg = term.signum();
        if sg != 0 {
            return Ok(sg);
        }
    }
    match cut.point.tail() {
        Tail::PlusInf | Tail::MinusInf if lambda != 0 => {
            let dir = if cut.point.tail() == Tail::PlusInf { 1 } else { -1 };
            Ok(dir * lambda.signum() as i8)
        }
        Tail::PlusInf | Tail::MinusInf => {
            // lambda = 0: the remaining coordinates of gamma decide.
            for i in prefix.len()..g.rank() {
                let sg = gamma.coord(i).signum();
                if sg != 0 {
                    return Ok(sg);
                }
            }
            Ok(0)
        }
        Tail::Finite => {
            // lambda * bound + gamma = 0 exactly; the side decides.
            Ok(match cut.side {
                CutSide::Above => lambda.signum() as i8,
                CutSide::Below => -lambda.signum() as i8,
                CutSide::Exact => 0,
            })
        }
    }
}

/// A fractional ideal of the valuation domain described by its value set,
/// which is a single upward-closed cut: `{v >= bound}` or `{v > bound}`.
/// `[-inf]` open is the whole field K, `[+inf]` the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    bound: CutPoint,
    closed: bool,
}

/// Category of a cut ideal: principal `cV`, multiple of the maximal ideal
/// `cM`, or anything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealCategory {
    Principal,
    MaximalMultiple,
    General,
}

impl fmt::Display for IdealCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealCategory::Principal => write!(f, "principal"),
            IdealCategory::MaximalMultiple => write!(f, "maximal_multiple"),
            IdealCategory::General => write!(f, "general"),
        }
    }
}

/// Classification of a cut ideal together with the divisoriality flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealClass {
    pub category: IdealCategory,
    pub strictly_divisorial: bool,
    pub divisorial: bool,
    /// Value of a generator (for `cV`) or of the scale factor (for `cM`).
    pub witness: Option<GroupValue>,
}

impl IdealSpec {
    /// Builds the ideal `{v >= bound}` (closed) or `{v > bound}` (open) and
    /// puts it in canonical form for the given group.
    pub fn new(bound: CutPoint, closed: bool, g: &GroupDescriptor) -> Result<Self> {
        if bound.prefix().len() > g.rank()
            || (bound.is_finite() && bound.prefix().len() != g.rank())
        {
            return Err(Error::structural("bound does not fit the group descriptor"));
        }
        for (i, s) in bound.prefix().iter().enumerate() {
            if let Scalar::Quad { d, .. } = s {
                if let CoordKind::Quadratic(d2) = g.coords()[i].kind {
                    if d2 != *d {
                        return Err(Error::structural("mismatched radicand in cut bound"));
                    }
                }
            }
        }
        Ok(Self::canonicalize(bound, closed, g))
    }

    pub fn closed_at(v: GroupValue, g: &GroupDescriptor) -> Result<Self> {
        Self::new(CutPoint::finite(v), true, g)
    }

    pub fn open_at(v: GroupValue, g: &GroupDescriptor) -> Result<Self> {
        Self::new(CutPoint::finite(v), false, g)
    }

    /// The whole field K.
    pub fn all() -> Self {
        IdealSpec {
            bound: CutPoint::minus_inf(),
            closed: false,
        }
    }

    /// The zero ideal.
    pub fn zero() -> Self {
        IdealSpec {
            bound: CutPoint::plus_inf(),
            closed: false,
        }
    }

    pub fn is_all(&self) -> bool {
        self.bound.tail() == Tail::MinusInf && self.bound.prefix().is_empty()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.bound.tail() == Tail::PlusInf && self.bound.prefix().is_empty()
    }

    pub fn bound(&self) -> &CutPoint {
        &self.bound
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    fn canonicalize(bound: CutPoint, closed: bool, g: &GroupDescriptor) -> Self {
        let rank = g.rank();
        let mut prefix: Vec<Scalar> = bound.prefix().to_vec();
        let mut tail = bound.tail();
        let mut closed = closed;

        if tail == Tail::Finite {
            // Scan for the first coordinate where the bound leaves the
            // group; the set only constrains the coordinates up to there.
            for i in 0..rank {
                if g.scalar_attained(i, &prefix[i]) {
                    continue;
                }
                match &prefix[i] {
                    Scalar::Rat(r) => {
                        // Fractional value on a discrete coordinate: the
                        // elements above it are those >= the ceiling.
                        let c = Scalar::Rat(r.ceil());
                        prefix[i] = c;
                        if i + 1 == rank {
                            closed = true;
                        } else {
                            prefix.truncate(i + 1);
                            tail = Tail::MinusInf;
                            closed = false;
                        }
                    }
                    Scalar::Quad { .. } => {
                        // Irrational position on a rational coordinate:
                        // strictly-above is the only meaning.
                        if i + 1 == rank {
                            closed = false;
                        } else {
                            prefix.truncate(i + 1);
                            tail = Tail::PlusInf;
                            closed = false;
                        }
                    }
                }
                break;
            }
        }

        if tail == Tail::Finite {
            let attained = prefix
                .iter()
                .enumerate()
                .all(|(i, s)| g.scalar_attained(i, s));
            if attained && !closed && g.coords()[rank - 1].discrete {
                // Over a group with a least positive step the open cut
                // {v > b} equals the closed cut at the successor.
                let last = prefix[rank - 1].clone();
                if let Scalar::Rat(r) = last {
                    prefix[rank - 1] = Scalar::Rat(r + BigRational::one());
                    closed = true;
                }
            }
        } else {
            closed = false;
        }

        IdealSpec {
            bound: CutPoint::with_tail(prefix, tail),
            closed,
        }
    }

    /// Membership of a valuation in the value set.
    pub fn contains_value(&self, x: &Val) -> bool {
        match x {
            Val::Inf => true,
            Val::Fin(v) => match self.bound.cmp_value(v) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => self.closed,
            },
        }
    }

    /// The translated ideal `{v >= bound + shift}` (scaling by an element
    /// of value `shift`).
    pub fn shift(&self, shift: &GroupValue, g: &GroupDescriptor) -> Result<IdealSpec> {
        IdealSpec::new(self.bound.shift(shift), self.closed, g)
    }

    /// Classification per the dichotomy: an ideal fails to be strictly
    /// divisorial exactly when it is `cM`, and fails to be divisorial
    /// exactly when it is `cM` with `M` non-principal.
    pub fn classify(&self, g: &GroupDescriptor) -> Result<IdealClass> {
        let m_principal = g.maximal_ideal_principal();
        let (category, witness) = if self.bound.is_finite() {
            let v = self.bound.as_value().expect("finite bound");
            if g.contains(&v) {
                if self.closed {
                    (IdealCategory::Principal, Some(v))
                } else {
                    (IdealCategory::MaximalMultiple, Some(v))
                }
            } else {
                (IdealCategory::General, None)
            }
        } else {
            (IdealCategory::General, None)
        };
        // I = cM for some c iff I is an open attained cut over dense M, or
        // any principal ideal when M itself is principal.
        let is_cm_form = match category {
            IdealCategory::MaximalMultiple => true,
            IdealCategory::Principal => m_principal,
            IdealCategory::General => false,
        };
        Ok(IdealClass {
            category,
            strictly_divisorial: !is_cm_form,
            divisorial: !(matches!(category, IdealCategory::MaximalMultiple) && !m_principal),
            witness,
        })
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_all() {
            write!(f, "K")
        } else if self.is_zero_ideal() {
            write!(f, "0")
        } else if self.closed {
            write!(f, ">={}", self.bound)
        } else {
            write!(f, ">{}", self.bound)
        }
    }
}

pub fn rational_value(num: i64, den: i64) -> GroupValue {
    GroupValue::from_rational(BigRational::new(
        num::BigInt::from(num),
        num::BigInt::from(den),
    ))
}

pub fn int_value(n: i64) -> GroupValue {
    GroupValue::from_rational(big(n))
}

pub fn sqrt_value(d: u32) -> GroupValue {
    GroupValue::rank1(Scalar::quad(big(0), big(1), d))
}

pub fn pair_value(a: BigRational, b: BigRational) -> GroupValue {
    GroupValue::new(vec![Scalar::Rat(a), Scalar::Rat(b)])
}
