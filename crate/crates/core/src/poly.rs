//! Polynomial plumbing behind the cyclotomic arithmetic: exact integer
//! division for cyclotomic polynomials and extended Euclid over Q for
//! inversion modulo an irreducible polynomial.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

/// Euler totient by trial-division factorization.
pub(crate) fn totient(mut n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Divisors of `n` in ascending order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

fn x_pow_minus_one(d: u64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d as usize + 1];
    v[0] = -BigInt::one();
    v[d as usize] = BigInt::one();
    v
}

fn int_trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
}

/// Exact division of integer polynomials by a monic divisor.
/// Panics if the division is not exact; only used on cyclotomic factors,
/// where exactness is guaranteed.
fn int_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    int_trim(&mut rem);
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    if rem.len() - 1 < dd {
        panic!("inexact polynomial division");
    }
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[i + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// The M-th cyclotomic polynomial, monic with integer coefficients, computed
/// by iterated exact division of x^M - 1 by the cyclotomic polynomials of the
/// proper divisors of M.
pub(crate) fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut memo: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for d in divisors(m) {
        let mut p = x_pow_minus_one(d);
        for (&e, phi_e) in memo.range(..d) {
            if d % e == 0 {
                p = int_div_exact(&p, phi_e);
            }
        }
        memo.insert(d, p);
    }
    memo.remove(&m).unwrap()
}

// ---------------------------------------------------------------------------
// Rational polynomials (dense, low-to-high coefficients, trimmed)
// ---------------------------------------------------------------------------

pub(crate) fn rat_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    rat_trim(&mut out);
    out
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    rat_trim(&mut out);
    out
}

fn rat_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    rat_trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let dq = rem.len() - 1 - db;
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); dq + 1];
    for i in (0..=dq).rev() {
        if rem.len() <= i + db {
            continue;
        }
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    rat_trim(&mut rem);
    rat_trim(&mut quot);
    (quot, rem)
}

/// Inverse of `p` modulo `phi` over Q via extended Euclid, assuming `phi` is
/// irreducible (so every nonzero residue is invertible). Returns None only
/// for the zero polynomial.
pub(crate) fn rat_inverse_mod(
    p: &[BigRational],
    phi: &[BigRational],
) -> Option<Vec<BigRational>> {
    let mut r0 = phi.to_vec();
    let mut r1 = p.to_vec();
    rat_trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while r1.len() > 1 {
        let (q, r2) = rat_divmod(&r0, &r1);
        let t2 = rat_sub(&t0, &rat_mul(&q, &t1));
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
        if r1.is_empty() {
            // gcd(p, phi) has positive degree: impossible for irreducible phi
            // and deg p < deg phi.
            return None;
        }
    }
    let c = r1[0].clone();
    Some(t1.iter().map(|x| x / &c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    fn coeffs_i64(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn totient_matches_brute_force() {
        for n in 1..=200u64 {
            let brute = (1..=n).filter(|&a| num::integer::gcd(a, n) == 1).count() as u64;
            assert_eq!(totient(n), brute, "phi({n})");
        }
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(coeffs_i64(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(coeffs_i64(&cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(coeffs_i64(&cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(coeffs_i64(&cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(coeffs_i64(&cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(coeffs_i64(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        for m in 1..=80u64 {
            let phi = cyclotomic_poly(m);
            assert_eq!(phi.len() as u64 - 1, totient(m), "deg Phi_{m}");
            assert!(phi.last().unwrap().is_one());
        }
        assert_eq!(cyclotomic_poly(28).len() - 1, 12);
    }

    #[test]
    fn cyclotomic_divides_x_m_minus_one() {
        for m in [1u64, 4, 15, 28, 36] {
            let phi = cyclotomic_poly(m);
            // exact division must succeed
            let _ = int_div_exact(&x_pow_minus_one(m), &phi);
        }
    }

    #[test]
    fn rational_inverse_mod_quadratic() {
        // invert 1 + x modulo x^2 + 1: (1+x)(1-x)/2 = (1-x^2)/2 = 1
        let one = BigRational::one();
        let p = vec![one.clone(), one.clone()];
        let phi = vec![one.clone(), BigRational::zero(), one.clone()];
        let inv = rat_inverse_mod(&p, &phi).unwrap();
        let prod = rat_mul(&p, &inv);
        let (_, rem) = rat_divmod(&prod, &phi);
        assert_eq!(rem, vec![BigRational::one()]);
    }
}
