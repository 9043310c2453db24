//! Dense univariate polynomials over Q, used internally for exponent-
//! cleared Laurent arithmetic, content computations and residue fractions.

use num::{BigRational, Integer, One, Zero};

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn deg(p: &QPoly) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub(crate) fn is_zero(p: &QPoly) -> bool {
    p.iter().all(BigRational::is_zero)
}

pub(crate) fn trim(mut p: QPoly) -> QPoly {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

pub(crate) fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    if is_zero(a) || is_zero(b) {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); deg(a) + deg(b) + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x - y);
    }
    trim(out)
}

/// Remainder of Euclidean division (monic-free, over the field Q).
pub(crate) fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    debug_assert!(!is_zero(b));
    let db = deg(b);
    let mut r = trim(a.to_vec());
    while !is_zero(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let q = &r[dr] / &b[db];
        for i in 0..=db {
            let s = &q * &b[i];
            r[dr - db + i] -= s;
        }
        r = trim(r);
        if deg(&r) == dr && !is_zero(&r) {
            break;
        }
    }
    r
}

/// Exact quotient; the division must leave no remainder.
pub(crate) fn div_exact(a: &QPoly, b: &QPoly) -> QPoly {
    debug_assert!(!is_zero(b));
    let db = deg(b);
    let mut r = trim(a.to_vec());
    let mut q = vec![BigRational::zero(); deg(&r).saturating_sub(db) + 1];
    while !is_zero(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let c = &r[dr] / &b[db];
        q[dr - db] = c.clone();
        for i in 0..=db {
            let s = &c * &b[i];
            r[dr - db + i] -= s;
        }
        r = trim(r);
    }
    debug_assert!(is_zero(&r), "division was not exact");
    trim(q)
}

/// Monic gcd over Q. A modular coprimality certificate short-circuits the
/// common case; otherwise the gcd is computed by an integer primitive
/// remainder sequence, which keeps coefficient sizes controlled.
pub(crate) fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if is_zero(&a) {
        return monic(b);
    }
    if is_zero(&b) {
        return monic(a);
    }
    if deg(&a) == 0 || deg(&b) == 0 {
        return vec![BigRational::one()];
    }
    if coprime_mod_p(&a, &b) {
        return vec![BigRational::one()];
    }
    let ia = int_clear(&a);
    let ib = int_clear(&b);
    let g = int_primitive_gcd(ia, ib);
    monic(g.into_iter().map(BigRational::from_integer).collect())
}

fn monic(p: QPoly) -> QPoly {
    if is_zero(&p) {
        return p;
    }
    let inv = p[deg(&p)].clone();
    trim(p.iter().map(|c| c / &inv).collect())
}

/// Coprimality certificate: if the images mod a large prime (with both
/// leading coefficients surviving) have trivial gcd, so do the originals.
fn coprime_mod_p(a: &QPoly, b: &QPoly) -> bool {
    const PRIMES: [u64; 2] = [1_000_000_007, 998_244_353];
    'primes: for p in PRIMES {
        let Some(am) = reduce_mod(a, p) else {
            continue 'primes;
        };
        let Some(bm) = reduce_mod(b, p) else {
            continue 'primes;
        };
        if am.len() != a.len() || bm.len() != b.len() {
            // A leading coefficient vanished; the degree bound fails.
            continue 'primes;
        }
        if gcd_mod(am, bm, p) == 0 {
            return true;
        }
    }
    false
}

fn reduce_mod(p: &QPoly, m: u64) -> Option<Vec<u64>> {
    use num::BigInt;
    let mb = BigInt::from(m);
    let mut out = Vec::with_capacity(p.len());
    for c in p {
        let den = c.denom().mod_floor(&mb);
        if den.is_zero() {
            return None;
        }
        let num = c.numer().mod_floor(&mb);
        let num: u64 = num.try_into().expect("reduced");
        let den: u64 = den.try_into().expect("reduced");
        out.push(mul_mod(num, inv_mod(den, m), m));
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    Some(out)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, m: u64) -> u64 {
    // Fermat: m is prime.
    let mut base = a % m;
    let mut e = m - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Degree of the gcd over F_m.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    let degm = |p: &[u64]| p.iter().rposition(|&c| c != 0);
    loop {
        let Some(db) = degm(&b) else {
            return degm(&a).unwrap_or(0);
        };
        let Some(da) = degm(&a) else {
            return db;
        };
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // a reduced modulo b.
        let lead_inv = inv_mod(b[db], m);
        let mut r = a.clone();
        for top in (db..=da).rev() {
            let coef = mul_mod(r[top], lead_inv, m);
            if coef == 0 {
                continue;
            }
            for i in 0..=db {
                let sub = mul_mod(coef, b[i], m);
                let idx = top - db + i;
                r[idx] = (r[idx] + m - sub) % m;
            }
        }
        r.truncate(db);
        if r.is_empty() {
            r.push(0);
        }
        a = b;
        b = r;
    }
}

fn int_clear(p: &QPoly) -> Vec<num::BigInt> {
    use num::BigInt;
    let mut l = BigInt::from(1);
    for c in p {
        l = l.lcm(c.denom());
    }
    let mut out: Vec<BigInt> = p
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    // Primitive part.
    let mut content = BigInt::from(0);
    for c in &out {
        content = content.gcd(c);
    }
    if !content.is_zero() && content != BigInt::from(1) {
        for c in out.iter_mut() {
            *c /= &content;
        }
    }
    out
}

/// Primitive remainder sequence over Z.
fn int_primitive_gcd(mut a: Vec<num::BigInt>, mut b: Vec<num::BigInt>) -> Vec<num::BigInt> {
    use num::BigInt;
    let degz = |p: &Vec<BigInt>| p.iter().rposition(|c| !c.is_zero());
    let primitive = |p: &mut Vec<BigInt>| {
        let mut content = BigInt::from(0);
        for c in p.iter() {
            content = content.gcd(c);
        }
        if !content.is_zero() && content != BigInt::from(1) {
            for c in p.iter_mut() {
                *c /= &content;
            }
        }
    };
    loop {
        let Some(db) = degz(&b) else {
            return a;
        };
        let Some(da) = degz(&a) else {
            return b;
        };
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // Pseudo-remainder of a by b.
        let lead = b[db].clone();
        let mut r = a.clone();
        for top in (db..=da).rev() {
            let coef = r[top].clone();
            if coef.is_zero() {
                continue;
            }
            for (i, c) in r.iter_mut().enumerate() {
                if i != top {
                    *c *= &lead;
                }
            }
            for i in 0..=db {
                let sub = &coef * &b[i];
                let idx = top - db + i;
                if idx == top {
                    r[idx] = BigInt::from(0);
                } else {
                    r[idx] -= sub;
                }
            }
        }
        r.truncate(db);
        if r.is_empty() {
            r.push(BigInt::from(0));
        }
        primitive(&mut r);
        a = b;
        b = r;
    }
}

pub(crate) fn horner(p: &QPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn one() -> QPoly {
    vec![BigRational::one()]
}
