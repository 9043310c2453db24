//! Exact scalars: rational numbers and elements of a real quadratic field
//! Q(sqrt(d)), with sign determination done purely by rational arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

/// One coordinate of a value-group element: either a rational number or
/// `a + b*sqrt(d)` with `d` a fixed square-free integer >= 2 and `b != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Quad {
        a: BigRational,
        b: BigRational,
        d: u32,
    },
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// True when `d` has no repeated prime factor.
pub fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u32;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl Scalar {
    pub fn rat(r: BigRational) -> Self {
        Scalar::Rat(r)
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rat(big(n))
    }

    /// Builds `a + b*sqrt(d)`, collapsing to a rational when `b = 0`.
    pub fn quad(a: BigRational, b: BigRational, d: u32) -> Self {
        if b.is_zero() {
            Scalar::Rat(a)
        } else {
            debug_assert!(is_square_free(d), "radicand must be square-free");
            Scalar::Quad { a, b, d }
        }
    }

    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Quad { .. } => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Quad { .. } => None,
        }
    }

    /// Exact sign: -1, 0 or +1. For `a + b*sqrt(d)` the sign is decided by
    /// the signs of `a`, `b` and of `a^2 - d*b^2`.
    pub fn signum(&self) -> i8 {
        match self {
            Scalar::Rat(r) => sign_of(r),
            Scalar::Quad { a, b, d } => {
                let sa = sign_of(a);
                let sb = sign_of(b);
                debug_assert!(sb != 0);
                if sa == 0 {
                    return sb;
                }
                if sa == sb {
                    return sa;
                }
                // a and b have opposite signs: compare a^2 with d*b^2.
                let lhs = a * a;
                let rhs = b * b * big(i64::from(*d));
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => 0,
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad { a, b, d } => Scalar::Quad {
                a: -a,
                b: -b,
                d: *d,
            },
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Rat(x), Scalar::Quad { a, b, d }) => Scalar::Quad {
                a: x + a,
                b: b.clone(),
                d: *d,
            },
            (Scalar::Quad { a, b, d }, Scalar::Rat(y)) => Scalar::Quad {
                a: a + y,
                b: b.clone(),
                d: *d,
            },
            (
                Scalar::Quad { a, b, d },
                Scalar::Quad {
                    a: a2,
                    b: b2,
                    d: d2,
                },
            ) => {
                assert_eq!(d, d2, "cannot mix distinct radicands");
                Scalar::quad(a + a2, b + b2, *d)
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    /// Multiplication by a rational factor.
    pub fn scale(&self, k: &BigRational) -> Scalar {
        if k.is_zero() {
            return Scalar::zero();
        }
        match self {
            Scalar::Rat(r) => Scalar::Rat(r * k),
            Scalar::Quad { a, b, d } => Scalar::Quad {
                a: a * k,
                b: b * k,
                d: *d,
            },
        }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self.scale(&big(k))
    }

    pub fn cmp_exact(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            // Fast path: plain rational comparison.
            (Scalar::Rat(x), Scalar::Rat(y)) => x.cmp(y),
            _ => match self.sub(other).signum() {
                -1 => Ordering::Less,
                0 => Ordering::Equal,
                _ => Ordering::Greater,
            },
        }
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Quad { a, b, d } => {
                if !a.is_zero() {
                    write!(f, "{}", fmt_rational(a))?;
                    if b.is_positive() {
                        write!(f, "+")?;
                    }
                }
                if b.abs().is_one() {
                    if b.is_negative() {
                        write!(f, "-")?;
                    }
                    write!(f, "sqrt({d})")
                } else {
                    write!(f, "{}*sqrt({})", fmt_rational(b), d)
                }
            }
        }
    }
}
