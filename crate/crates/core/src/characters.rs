//! Real primitive Dirichlet characters of odd squarefree modulus and their
//! Gauss sums.
//!
//! For odd squarefree k ≥ 3 there is exactly one real, nonprincipal,
//! primitive character mod k, the Jacobi symbol n ↦ (n|k). It is extended to
//! all integers by periodicity. The Gauss sum G(z,χ) = Σ_j χ(j) e^{2πijz/k}
//! is computed exactly as a cyclotomic element; the half-integer value
//! G(k/2,χ) = Σ_j χ(j)(−1)^j is an ordinary integer.

use std::sync::Arc;

use crate::cyclotomic::{CycloElement, FieldContext};
use crate::error::{Error, Result};

/// χ(−1) = +1 (even) or −1 (odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A real Dirichlet character stored as its value table over one period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    modulus: u64,
    values: Vec<i8>,
    parity: Parity,
}

/// Jacobi symbol (n|k) for odd positive k, by quadratic reciprocity.
pub fn jacobi_symbol(n: i64, k: u64) -> Result<i32> {
    if k == 0 {
        return Err(Error::InvalidParameter("jacobi symbol: k must be positive".into()));
    }
    if k % 2 == 0 {
        return Err(Error::EvenModulus(k));
    }
    let mut num = n.rem_euclid(k as i64) as u64;
    let mut den = k;
    let mut acc: i32 = 1;
    loop {
        num %= den;
        if num == 0 {
            return Ok(if den == 1 { acc } else { 0 });
        }
        while num % 2 == 0 {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                acc = -acc;
            }
        }
        if num == 1 {
            return Ok(acc);
        }
        if num % 4 == 3 && den % 4 == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut num, &mut den);
    }
}

/// True iff no square > 1 divides n.
pub fn is_squarefree(n: u64) -> bool {
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
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

impl Character {
    /// The unique real nonprincipal primitive character mod k, i.e. the
    /// Jacobi symbol (·|k). Requires k odd, squarefree, and at least 3.
    pub fn build_real_primitive(k: u64) -> Result<Character> {
        if k % 2 == 0 {
            return Err(Error::EvenModulus(k));
        }
        if k < 3 {
            return Err(Error::ModulusTooSmall(k));
        }
        if !is_squarefree(k) {
            return Err(Error::NotSquarefree(k));
        }
        let values: Vec<i8> = (0..k)
            .map(|n| jacobi_symbol(n as i64, k).map(|v| v as i8))
            .collect::<Result<_>>()?;
        let parity = match values[(k - 1) as usize] {
            1 => Parity::Even,
            -1 => Parity::Odd,
            _ => return Err(Error::Internal(format!("chi({}) = 0 mod {k}", k - 1))),
        };
        Ok(Character {
            modulus: k,
            values,
            parity,
        })
    }

    /// Ad-hoc constructor for tests (e.g. a principal character that should
    /// fail the primitivity criterion). Derives parity from the last entry.
    #[cfg(test)]
    pub(crate) fn from_raw_values(values: Vec<i8>) -> Character {
        let k = values.len() as u64;
        let parity = if values[(k - 1) as usize] >= 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        Character {
            modulus: k,
            values,
            parity,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    /// Value table over residues 0..k−1.
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// χ(n) for any integer n, by periodic extension.
    pub fn eval(&self, n: i64) -> i32 {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        self.values[r] as i32
    }
}

/// Exact Gauss sum G(n,χ) = Σ_{j=0}^{k−1} χ(j) ζ_M^{(M/k)·j·n}; requires the
/// field order to be divisible by k.
pub fn gauss_sum_exact(
    n: i64,
    chi: &Character,
    ctx: &Arc<FieldContext>,
) -> Result<CycloElement> {
    let k = chi.modulus;
    if ctx.order() % k != 0 {
        return Err(Error::OrderNotDivisible {
            divisor: k,
            order: ctx.order(),
        });
    }
    let step = (ctx.order() / k) as i64;
    let mut acc = CycloElement::zero(ctx);
    for j in 0..k as i64 {
        let v = chi.eval(j);
        if v == 0 {
            continue;
        }
        let z = CycloElement::zeta_pow(ctx, step * (j * n.rem_euclid(k as i64)));
        acc = if v > 0 { &acc + &z } else { &acc - &z };
    }
    Ok(acc)
}

/// G(k/2, χ) = Σ_{j=1}^{k−1} χ(j)(−1)^j, an integer. Vanishes for even χ.
pub fn gauss_sum_half(chi: &Character) -> i64 {
    let k = chi.modulus as i64;
    let mut acc = 0i64;
    for j in 1..k {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * chi.eval(j) as i64;
    }
    acc
}

/// Checks the factorization G(n,χ) = χ(n)·G(1,χ) for every residue n, the
/// equality that characterizes real primitive characters.
pub fn check_primitive_factorization(chi: &Character) -> Result<bool> {
    let ctx = crate::cyclotomic::make_context(chi.modulus)?;
    let g1 = gauss_sum_exact(1, chi, &ctx)?;
    for n in 0..chi.modulus as i64 {
        let lhs = gauss_sum_exact(n, chi, &ctx)?;
        let v = chi.eval(n);
        let rhs = g1.scale(&crate::cyclotomic::Rational::from_integer(v.into()));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{make_context, CycloElement};

    /// Independent Jacobi oracle: product of Legendre symbols computed by
    /// Euler's criterion over the prime factorization of k.
    fn jacobi_oracle(n: i64, k: u64) -> i32 {
        fn legendre(n: i64, p: u64) -> i32 {
            let r = n.rem_euclid(p as i64) as u64;
            if r == 0 {
                return 0;
            }
            let mut acc = 1u64;
            let mut base = r % p;
            let mut e = (p - 1) / 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            if acc == 1 {
                1
            } else {
                -1
            }
        }
        let mut result = 1i32;
        let mut m = k;
        let mut f = 3u64;
        while f * f <= m {
            while m % f == 0 {
                result *= legendre(n, f);
                m /= f;
            }
            f += 2;
        }
        if m > 1 {
            result *= legendre(n, m);
        }
        result
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_symbol(1, 7).unwrap(), 1);
        // QRs mod 7 are {1,2,4}; 3 is a non-residue
        assert_eq!(jacobi_symbol(3, 7).unwrap(), -1);
        // QRs mod 5 are {1,4}; 2 is a non-residue
        assert_eq!(jacobi_symbol(2, 5).unwrap(), -1);
        assert!(jacobi_symbol(2, 4).is_err());
        assert!(jacobi_symbol(2, 0).is_err());
    }

    #[test]
    fn jacobi_matches_oracle() {
        for k in (3..=59u64).step_by(2) {
            for n in -10..=(2 * k as i64) {
                assert_eq!(
                    jacobi_symbol(n, k).unwrap(),
                    jacobi_oracle(n, k),
                    "({n}|{k})"
                );
            }
        }
    }

    #[test]
    fn build_mod_5() {
        let chi = Character::build_real_primitive(5).unwrap();
        assert_eq!(chi.values(), &[0, 1, -1, -1, 1]);
        assert!(chi.is_even());
    }

    #[test]
    fn build_mod_7_is_odd() {
        let chi = Character::build_real_primitive(7).unwrap();
        assert!(chi.is_odd());
    }

    #[test]
    fn build_rejects_bad_moduli() {
        assert!(matches!(
            Character::build_real_primitive(9),
            Err(Error::NotSquarefree(9))
        ));
        assert!(matches!(
            Character::build_real_primitive(4),
            Err(Error::EvenModulus(4))
        ));
        assert!(matches!(
            Character::build_real_primitive(1),
            Err(Error::ModulusTooSmall(1))
        ));
    }

    #[test]
    fn character_invariants_in_range() {
        for k in (3..=59u64).step_by(2) {
            if !is_squarefree(k) {
                continue;
            }
            let chi = Character::build_real_primitive(k).unwrap();
            // zero exactly on non-units
            for n in 0..k {
                let expect_zero = num::integer::gcd(n, k) > 1;
                assert_eq!(chi.eval(n as i64) == 0, expect_zero, "chi_{k}({n})");
            }
            // complete multiplicativity
            for n in 0..k as i64 {
                for m in 0..k as i64 {
                    assert_eq!(
                        chi.eval(n * m),
                        chi.eval(n) * chi.eval(m),
                        "chi_{k}({n}*{m})"
                    );
                }
            }
            // nonprincipal
            assert!(chi.values().iter().any(|&v| v == -1), "chi_{k} principal");
            // parity flag consistent with chi(-1)
            assert_eq!(chi.eval(-1) == 1, chi.is_even());
            // factorization criterion
            assert!(check_primitive_factorization(&chi).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn parity_matches_k_mod_4_for_primes() {
        for k in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59] {
            let chi = Character::build_real_primitive(k).unwrap();
            assert_eq!(chi.is_even(), k % 4 == 1, "k = {k}");
        }
    }

    #[test]
    fn principal_character_fails_factorization() {
        let principal = Character::from_raw_values(vec![0, 1, 1, 1, 1]);
        assert!(!check_primitive_factorization(&principal).unwrap());
    }

    #[test]
    fn gauss_sum_values() {
        // G(1, chi_5) = sqrt(5); G(1, chi_7) = i*sqrt(7); G(0, chi) = 0
        let chi5 = Character::build_real_primitive(5).unwrap();
        let ctx5 = make_context(20).unwrap();
        let g5 = gauss_sum_exact(1, &chi5, &ctx5).unwrap();
        assert_eq!(g5, crate::cyclotomic::sqrt_k_element(5, &ctx5).unwrap());

        let chi7 = Character::build_real_primitive(7).unwrap();
        let ctx7 = make_context(28).unwrap();
        let g7 = gauss_sum_exact(1, &chi7, &ctx7).unwrap();
        let i = crate::cyclotomic::imaginary_unit(&ctx7).unwrap();
        let sqrt7 = crate::cyclotomic::sqrt_k_element(7, &ctx7).unwrap();
        assert_eq!(g7, &i * &sqrt7);

        assert!(gauss_sum_exact(0, &chi5, &ctx5).unwrap().is_zero());
        assert!(gauss_sum_exact(0, &chi7, &ctx7).unwrap().is_zero());
    }

    #[test]
    fn gauss_sum_squared_is_signed_k() {
        for k in [3u64, 5, 7, 11, 13, 15, 17, 19, 21, 23, 29, 33, 35, 37, 39, 41, 51, 55, 57, 59]
        {
            let chi = Character::build_real_primitive(k).unwrap();
            let ctx = make_context(4 * k).unwrap();
            let g = gauss_sum_exact(1, &chi, &ctx).unwrap();
            let expected = if chi.is_even() { k as i64 } else { -(k as i64) };
            assert_eq!(
                g.pow(2),
                CycloElement::from_integer(&ctx, expected),
                "G(chi_{k})^2"
            );
        }
    }

    #[test]
    fn gauss_sum_half_values() {
        let vals = [(7u64, 2i64), (11, -6), (19, -6), (23, 6), (5, 0), (13, 0), (17, 0), (29, 0)];
        for (k, expect) in vals {
            let chi = Character::build_real_primitive(k).unwrap();
            assert_eq!(gauss_sum_half(&chi), expect, "G({k}/2)");
        }
    }

    #[test]
    fn gauss_sum_half_vanishes_for_even_characters() {
        for k in (3..=59u64).step_by(2) {
            if !is_squarefree(k) {
                continue;
            }
            let chi = Character::build_real_primitive(k).unwrap();
            if chi.is_even() {
                assert_eq!(gauss_sum_half(&chi), 0, "k = {k}");
            }
        }
    }

    #[test]
    fn periodic_extension() {
        let chi = Character::build_real_primitive(7).unwrap();
        for n in -30..30i64 {
            assert_eq!(chi.eval(n), chi.eval(n + 7 * 13));
        }
        assert_eq!(chi.eval(8), chi.eval(1));
    }
}
