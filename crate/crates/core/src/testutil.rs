//! Shared fixtures for the test suites: the standard sequence zoo.

use crate::fields::{FieldDescriptor, FieldElem};
use crate::ordgroup::{int_value, sqrt_value, CutPoint, IdealSpec, Tail};
use crate::scalar::{ratio, Scalar};
use crate::sequences::{make_sequence, PMSeq, SeqKind};

pub fn lq() -> FieldDescriptor {
    FieldDescriptor::laurent_q()
}

pub fn composite5() -> FieldDescriptor {
    FieldDescriptor::Composite(5)
}

pub fn t_pow(n: i64, d: i64, f: &FieldDescriptor) -> FieldElem {
    FieldElem::t_pow(ratio(n, d), f).unwrap()
}

/// Pseudo-convergent, terms t^(1-1/(nu+1)), gauge rising to 1.
pub fn e2() -> PMSeq {
    let f = lq();
    let ideal = IdealSpec::closed_at(int_value(1), &f.group()).unwrap();
    make_sequence(SeqKind::Pcv, FieldElem::zero(), ideal, f).unwrap()
}

/// Pseudo-divergent, terms t^(1/(nu+1)), gauge falling to 0.
pub fn e3() -> PMSeq {
    let f = lq();
    let ideal = IdealSpec::open_at(int_value(0), &f.group()).unwrap();
    make_sequence(SeqKind::Pdv, FieldElem::zero(), ideal, f).unwrap()
}

/// Pseudo-stationary, terms nu*t, constant gauge 1.
pub fn e4() -> PMSeq {
    let f = lq();
    let ideal = IdealSpec::closed_at(int_value(1), &f.group()).unwrap();
    make_sequence(SeqKind::Pst, FieldElem::zero(), ideal, f).unwrap()
}

/// Pseudo-convergent with gauge the lower continued-fraction convergents
/// of sqrt(2); breadth {v > sqrt(2)}.
pub fn e5() -> PMSeq {
    let f = lq();
    let ideal = IdealSpec::open_at(sqrt_value(2), &f.group()).unwrap();
    make_sequence(SeqKind::Pcv, FieldElem::zero(), ideal, f).unwrap()
}

/// Pseudo-divergent mirror of e5 (upper convergents of sqrt(2)).
pub fn f5() -> PMSeq {
    let f = lq();
    let ideal = IdealSpec::open_at(sqrt_value(2), &f.group()).unwrap();
    make_sequence(SeqKind::Pdv, FieldElem::zero(), ideal, f).unwrap()
}

/// Pseudo-convergent tower t*5^nu over the composite field, gauge (1, nu).
pub fn e6() -> PMSeq {
    let f = composite5();
    let ideal = IdealSpec::new(
        CutPoint::with_tail(vec![Scalar::from_i64(1)], Tail::PlusInf),
        false,
        &f.group(),
    )
    .unwrap();
    make_sequence(SeqKind::Pcv, FieldElem::zero(), ideal, f).unwrap()
}

/// Pseudo-convergent t^(1-1/(nu+1)) inside the composite field.
pub fn e7() -> PMSeq {
    let f = composite5();
    let ideal = IdealSpec::new(
        CutPoint::with_tail(vec![Scalar::from_i64(1)], Tail::MinusInf),
        false,
        &f.group(),
    )
    .unwrap();
    make_sequence(SeqKind::Pcv, FieldElem::zero(), ideal, f).unwrap()
}

/// The 5-adic Cauchy sequence of geometric partial sums 1 + 5 + ... + 5^nu,
/// converging to -1/4.
pub fn cauchy5() -> PMSeq {
    let f = FieldDescriptor::PadicQ(5);
    let limit = FieldElem::from_rational(ratio(-1, 4), &f).unwrap();
    make_sequence(SeqKind::Cauchy, limit, IdealSpec::zero(), f).unwrap()
}

/// Pseudo-divergent with gauge -nu; breadth all of K.
pub fn vinf() -> PMSeq {
    make_sequence(SeqKind::Pdv, FieldElem::zero(), IdealSpec::all(), lq()).unwrap()
}
