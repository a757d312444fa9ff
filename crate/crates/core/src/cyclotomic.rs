//! Exact arithmetic in cyclotomic fields Q(ζ_M).
//!
//! An element is a rational-coefficient polynomial in ζ_M = e^{2πi/M},
//! kept reduced modulo the M-th cyclotomic polynomial Φ_M. Since Φ_M is
//! irreducible over Q, the representation is canonical and the quotient is a
//! field, so sines and cosines of rational multiples of π can be divided
//! exactly. Everything the identity checks need lives here: roots of unity,
//! sin(aπ/k), cos(aπ/k), i, and √k (as a Gauss sum), together with the
//! extraction of rational and rational-multiple-of-√k values.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::poly;

/// Exact rational scalar used throughout; arbitrary-precision numerator and
/// denominator, always in lowest terms.
pub type Rational = BigRational;

static MAX_FIELD_ORDER: AtomicU64 = AtomicU64::new(2000);

/// Cap on the cyclotomic field order M accepted by [`make_context`].
/// Guards against runaway degrees from oversized parameters.
pub fn max_field_order() -> u64 {
    MAX_FIELD_ORDER.load(Ordering::Relaxed)
}

pub fn set_max_field_order(cap: u64) {
    MAX_FIELD_ORDER.store(cap, Ordering::Relaxed);
}

/// The ambient field Q(ζ_M): order, degree φ(M), minimal polynomial Φ_M, and
/// a reduction table for the monomials ζ^e with φ(M) ≤ e < M.
///
/// Immutable after construction; shared behind `Arc`.
pub struct FieldContext {
    order: u64,
    degree: usize,
    phi_int: Vec<BigInt>,
    phi_rat: Vec<Rational>,
    power_table: Vec<Vec<BigInt>>,
}

impl FieldContext {
    fn build(m: u64) -> FieldContext {
        let phi_int = poly::cyclotomic_poly(m);
        let degree = phi_int.len() - 1;
        debug_assert_eq!(degree as u64, poly::totient(m));
        let phi_rat: Vec<Rational> = phi_int
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // x^e mod Phi_M, reduced rows of length `degree`, for every exponent
        // a monomial (e < M) or a product of two reduced elements
        // (e <= 2·degree − 2) can produce.
        let table_len = (m as usize)
            .saturating_sub(degree)
            .max(degree.saturating_sub(1));
        let mut power_table: Vec<Vec<BigInt>> = Vec::with_capacity(table_len);
        if table_len > 0 {
            let base: Vec<BigInt> = phi_int[..degree].iter().map(|c| -c).collect();
            power_table.push(base.clone());
            let mut row = base.clone();
            for _ in 1..table_len {
                let top = row[degree - 1].clone();
                let mut next = vec![BigInt::zero(); degree];
                for i in (1..degree).rev() {
                    next[i] = row[i - 1].clone();
                }
                if !top.is_zero() {
                    for i in 0..degree {
                        if !base[i].is_zero() {
                            next[i] += &top * &base[i];
                        }
                    }
                }
                power_table.push(next.clone());
                row = next;
            }
        }
        FieldContext {
            order: m,
            degree,
            phi_int,
            phi_rat,
            power_table,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree of the extension, φ(M).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Φ_M, monic, low-to-high integer coefficients.
    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.phi_int
    }
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldContext(Q(zeta_{}), degree {})", self.order, self.degree)
    }
}

static CONTEXT_CACHE: Lazy<Mutex<HashMap<u64, Arc<FieldContext>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Construct (or fetch from the shared cache) the field context for Q(ζ_M).
pub fn make_context(m: u64) -> Result<Arc<FieldContext>> {
    if m == 0 {
        return Err(Error::InvalidParameter("field order must be positive".into()));
    }
    let cap = max_field_order();
    if m > cap {
        return Err(Error::FieldOrderExceeded { requested: m, cap });
    }
    if let Some(ctx) = CONTEXT_CACHE.lock().unwrap().get(&m) {
        return Ok(ctx.clone());
    }
    let built = Arc::new(FieldContext::build(m));
    let mut cache = CONTEXT_CACHE.lock().unwrap();
    Ok(cache.entry(m).or_insert(built).clone())
}

/// An exact element of Q(ζ_M): φ(M) rational coordinates with respect to the
/// power basis 1, ζ, …, ζ^{φ(M)−1}. Reduction mod Φ_M is canonical, so
/// coordinate-wise equality is field equality.
#[derive(Clone)]
pub struct CycloElement {
    ctx: Arc<FieldContext>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElement {}

impl CycloElement {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        CycloElement {
            ctx: ctx.clone(),
            coeffs: vec![Rational::zero(); ctx.degree],
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_rational(ctx, Rational::one())
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, r: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); ctx.degree];
        coeffs[0] = r;
        CycloElement {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_integer(ctx: &Arc<FieldContext>, n: i64) -> Self {
        Self::from_rational(ctx, Rational::from_integer(BigInt::from(n)))
    }

    /// ζ_M^e for any integer e (reduced mod M).
    pub fn zeta_pow(ctx: &Arc<FieldContext>, e: i64) -> Self {
        let m = ctx.order as i64;
        let e = e.rem_euclid(m) as usize;
        let mut coeffs = vec![Rational::zero(); ctx.degree];
        if e < ctx.degree {
            coeffs[e] = Rational::one();
        } else {
            for (i, c) in ctx.power_table[e - ctx.degree].iter().enumerate() {
                coeffs[i] = Rational::from_integer(c.clone());
            }
        }
        CycloElement {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// e^{2πi·num/den}; requires den | M.
    pub fn root_of_unity(ctx: &Arc<FieldContext>, num: i64, den: u64) -> Result<Self> {
        if den == 0 || ctx.order % den != 0 {
            return Err(Error::OrderNotDivisible {
                divisor: den,
                order: ctx.order,
            });
        }
        let step = (ctx.order / den) as i64;
        let num = num.rem_euclid(den as i64);
        Ok(Self::zeta_pow(ctx, num * step))
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn assert_same_ctx(&self, other: &Self) {
        assert_eq!(
            self.ctx.order, other.ctx.order,
            "cyclotomic context mismatch: order {} vs {}",
            self.ctx.order, other.ctx.order
        );
    }

    /// Checked addition; signals a context mismatch instead of panicking.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.ctx.order != other.ctx.order {
            return Err(Error::ContextMismatch(self.ctx.order, other.ctx.order));
        }
        Ok(self + other)
    }

    /// Checked multiplication; signals a context mismatch instead of panicking.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.ctx.order != other.ctx.order {
            return Err(Error::ContextMismatch(self.ctx.order, other.ctx.order));
        }
        Ok(self * other)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(&self.ctx);
        }
        CycloElement {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| if c.is_zero() { Rational::zero() } else { c * r })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact multiplicative inverse via extended Euclid against Φ_M.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.ctx.order));
        }
        let inv = poly::rat_inverse_mod(&self.coeffs, &self.ctx.phi_rat)
            .ok_or_else(|| Error::Internal("inverse of nonzero element failed".into()))?;
        let mut coeffs = inv;
        coeffs.resize(self.ctx.degree, Rational::zero());
        Ok(CycloElement {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// The constant if the element is rational, otherwise None.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Numeric embedding at ζ_M = e^{2πi/M}; cross-check only.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.ctx.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (e as f64) / m;
            let v = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::new(theta.cos(), theta.sin()) * v;
        }
        acc
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let d = self.ctx.degree;
        if d == 1 {
            return CycloElement {
                ctx: self.ctx.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce_buffer(&self.ctx, prod)
    }
}

/// Fold coefficients of degree ≥ φ(M) down through the precomputed monomial
/// reductions, producing the canonical representative.
fn reduce_buffer(ctx: &Arc<FieldContext>, mut buf: Vec<Rational>) -> CycloElement {
    let d = ctx.degree;
    for e in (d..buf.len()).rev() {
        if buf[e].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut buf[e], Rational::zero());
        let row = &ctx.power_table[e - d];
        for i in 0..d {
            if !row[i].is_zero() {
                buf[i] += &c * &Rational::from_integer(row[i].clone());
            }
        }
    }
    buf.truncate(d);
    CycloElement {
        ctx: ctx.clone(),
        coeffs: buf,
    }
}

impl std::ops::Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, other: &CycloElement) -> CycloElement {
        self.assert_same_ctx(other);
        CycloElement {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, other: &CycloElement) -> CycloElement {
        self.assert_same_ctx(other);
        CycloElement {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl std::ops::Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, other: &CycloElement) -> CycloElement {
        self.assert_same_ctx(other);
        self.mul_impl(other)
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*z^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [M={}]", self.ctx.order)
    }
}

/// cos(aπ/k) = (ζ^e + ζ^{-e})/2 with e = a·M/(2k); requires 2k | M.
pub fn from_cos(a: i64, k: u64, ctx: &Arc<FieldContext>) -> Result<CycloElement> {
    if ctx.order % (2 * k) != 0 {
        return Err(Error::OrderNotDivisible {
            divisor: 2 * k,
            order: ctx.order,
        });
    }
    let step = (ctx.order / (2 * k)) as i64;
    let e = a.rem_euclid(2 * k as i64) * step;
    let s = &CycloElement::zeta_pow(ctx, e) + &CycloElement::zeta_pow(ctx, -e);
    Ok(s.scale(&Rational::new(BigInt::one(), BigInt::from(2))))
}

/// sin(aπ/k) = (ζ^e − ζ^{-e})/(2i); requires lcm(4, 2k) | M.
pub fn from_sin(a: i64, k: u64, ctx: &Arc<FieldContext>) -> Result<CycloElement> {
    let need = num::integer::lcm(4, 2 * k);
    if ctx.order % need != 0 {
        return Err(Error::OrderNotDivisible {
            divisor: need,
            order: ctx.order,
        });
    }
    let step = (ctx.order / (2 * k)) as i64;
    let e = a.rem_euclid(2 * k as i64) * step;
    let diff = &CycloElement::zeta_pow(ctx, e) - &CycloElement::zeta_pow(ctx, -e);
    // 1/(2i) = -i/2, and -i = zeta^{3M/4}
    let minus_i = CycloElement::zeta_pow(ctx, 3 * (ctx.order as i64) / 4);
    Ok((&diff * &minus_i).scale(&Rational::new(BigInt::one(), BigInt::from(2))))
}

/// The element i = ζ^{M/4}; requires 4 | M.
pub fn imaginary_unit(ctx: &Arc<FieldContext>) -> Result<CycloElement> {
    if ctx.order % 4 != 0 {
        return Err(Error::OrderNotDivisible {
            divisor: 4,
            order: ctx.order,
        });
    }
    Ok(CycloElement::zeta_pow(ctx, ctx.order as i64 / 4))
}

/// The positive real √k, realized through the Gauss sum of the real primitive
/// character mod k: G(χ) for even χ, (−i)·G(χ) for odd χ. Requires k odd
/// squarefree and lcm(4, 2k) | M.
pub fn sqrt_k_element(k: u64, ctx: &Arc<FieldContext>) -> Result<CycloElement> {
    let need = num::integer::lcm(4, 2 * k);
    if ctx.order % need != 0 {
        return Err(Error::OrderNotDivisible {
            divisor: need,
            order: ctx.order,
        });
    }
    let chi = Character::build_real_primitive(k)?;
    let g = crate::characters::gauss_sum_exact(1, &chi, ctx)?;
    let s = if chi.is_even() {
        g
    } else {
        let minus_i = CycloElement::zeta_pow(ctx, 3 * (ctx.order as i64) / 4);
        &g * &minus_i
    };
    debug_assert!({
        let z = s.to_complex();
        z.re > 0.0 && z.im.abs() < 1e-9
    });
    Ok(s)
}

/// Extract c with x = c·√k exactly (as x·(√k)^{-1}, using (√k)^{-1} = √k/k),
/// or None if x is not a rational multiple of √k.
pub fn as_sqrt_k_multiple(x: &CycloElement, k: u64) -> Result<Option<Rational>> {
    let s = sqrt_k_element(k, x.context())?;
    let inv_s = s.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
    Ok((x * &inv_s).as_rational())
}

/// Decompose x = c·√k + t with rational c, t, or None if x is outside
/// Q + Q·√k.
pub fn decompose_quadratic(x: &CycloElement, k: u64) -> Result<Option<(Rational, Rational)>> {
    let s = sqrt_k_element(k, x.context())?;
    // Find a non-constant coordinate of sqrt(k) to solve for c.
    let j = (1..s.coeffs.len())
        .find(|&j| !s.coeffs[j].is_zero())
        .ok_or_else(|| Error::Internal("sqrt(k) element is rational".into()))?;
    let c = &x.coeffs[j] / &s.coeffs[j];
    let t = &x.coeffs[0] - &(&c * &s.coeffs[0]);
    let mut expect = s.scale(&c);
    expect.coeffs[0] += &t;
    if expect == *x {
        Ok(Some((c, t)))
    } else {
        Ok(None)
    }
}
