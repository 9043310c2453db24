//! Shared fixtures for the integration suites: the standard sequences,
//! built through the public parse layer, and the random corpora.

use num::BigRational;
use rand::Rng;

use valx_core::fields::{FieldDescriptor, FieldElem};
use valx_core::parse::parse_sequence;
use valx_core::ratfunc::{Poly, RatFunc};
use valx_core::scalar::big;
use valx_core::sequences::PMSeq;

pub fn e2() -> PMSeq {
    parse_sequence("pcv(alpha=0, breadth=\">=1\")", None).unwrap()
}

pub fn e3() -> PMSeq {
    parse_sequence("pdv(alpha=0, breadth=\">0\")", None).unwrap()
}

pub fn e4() -> PMSeq {
    parse_sequence("pst(alpha=0, breadth=\">=1\")", None).unwrap()
}

pub fn e5() -> PMSeq {
    parse_sequence("pcv(alpha=0, breadth=\">sqrt(2)\")", None).unwrap()
}

pub fn f5() -> PMSeq {
    parse_sequence("pdv(alpha=0, breadth=\">sqrt(2)\")", None).unwrap()
}

pub fn e6() -> PMSeq {
    parse_sequence("pcv(alpha=0, breadth=\">1,inf\") field=composite:5", None).unwrap()
}

pub fn e7() -> PMSeq {
    parse_sequence("pcv(alpha=0, breadth=\">1,-inf\") field=composite:5", None).unwrap()
}

pub fn cauchy5() -> PMSeq {
    parse_sequence("cauchy(limit=-1/4) field=padic:5", None).unwrap()
}

pub fn vinf() -> PMSeq {
    parse_sequence("pdv(alpha=0, breadth=\"K\")", None).unwrap()
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Random monomial coefficient: c * t^q (or a p-power-scaled rational over
/// the p-adic field).
pub fn random_coeff<R: Rng>(rng: &mut R, f: &FieldDescriptor) -> FieldElem {
    let c = big(rng.gen_range(-9i64..=9));
    if c == big(0) {
        return FieldElem::zero();
    }
    match f {
        FieldDescriptor::PadicQ(p) => {
            let k = rng.gen_range(-2i64..=2);
            let mut r = c;
            let pb = big(i64::from(*p));
            if k >= 0 {
                for _ in 0..k {
                    r *= pb.clone();
                }
            } else {
                for _ in 0..(-k) {
                    r /= pb.clone();
                }
            }
            FieldElem::from_rational(r, f).unwrap()
        }
        _ => {
            let e = ratio(rng.gen_range(-2i64..=4), rng.gen_range(1i64..=2));
            FieldElem::monomial(c, e, f).unwrap()
        }
    }
}

pub fn random_poly<R: Rng>(
    rng: &mut R,
    f: &FieldDescriptor,
    max_deg: usize,
    allow_zero: bool,
) -> Poly {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            if rng.gen_bool(0.25) {
                coeffs.push(FieldElem::zero());
            } else {
                coeffs.push(random_coeff(rng, f));
            }
        }
        let p = Poly::new(coeffs);
        if allow_zero || !p.is_zero() {
            return p;
        }
    }
}

/// Random rational function with monomial coefficients, degrees at most 6.
pub fn random_phi<R: Rng>(rng: &mut R, f: &FieldDescriptor) -> RatFunc {
    loop {
        let num = random_poly(rng, f, 6, false);
        let den = random_poly(rng, f, 6, false);
        let phi = RatFunc::new(num, den, f).unwrap();
        if !phi.is_zero() {
            return phi;
        }
    }
}

/// Random field element with a handful of terms.
pub fn random_elem<R: Rng>(rng: &mut R, f: &FieldDescriptor) -> FieldElem {
    let mut acc = FieldElem::zero();
    for _ in 0..rng.gen_range(0..=3) {
        acc = acc.add(&random_coeff(rng, f), f).unwrap();
    }
    acc
}
