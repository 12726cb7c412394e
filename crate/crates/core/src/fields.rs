//! Finite fields `F_{p^m}` with deterministic, reproducible construction.
//!
//! Every extension field is represented relative to its prime field: an
//! element of `F_{p^m}` is a coefficient vector of length `m` over `F_p`,
//! reduced modulo a canonical irreducible modulus.  The modulus is the
//! lexicographically smallest monic irreducible polynomial of degree `m`
//! over `F_p`, comparing coefficient vectors constant term first.  Two
//! fields with the same `(p, m)` are therefore always the *same* field,
//! and serialized data is meaningful across runs.
//!
//! Towers are never nested: `F_{q^s}` for `q = p^m` is built as
//! `F_{p^{ms}}` together with an explicit [`Embedding`] of the base field.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Default bound on `p^m` for fields constructed through [`Field::new`].
///
/// Enumeration-style operations (listing elements, listing projective
/// points, scanning for singular points degree by degree) are only
/// feasible when the cardinality is modest; the cap makes runaway
/// requests fail fast instead of hanging.
pub const DEFAULT_CARDINALITY_CAP: u64 = 1 << 20;

// ===== integer helpers ==================================================

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_int(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo the prime `p`, by the extended Euclidean algorithm.
fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a nonunit");
    (s0.rem_euclid(p as i128)) as u64
}

/// Deterministic Miller–Rabin, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_int(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ===== raw polynomial arithmetic over F_p ===============================
//
// Used for modulus selection and for element arithmetic.  Polynomials are
// dense coefficient vectors, constant term first, not necessarily trimmed.

fn fp_deg(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    let n = fp_deg(&v).map_or(0, |d| d + 1);
    v.truncate(n);
    v
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                out[i + j] = (out[i + j] + mulmod(ai, bj, p)) % p;
            }
        }
    }
    out
}

/// Remainder of `v` modulo a monic polynomial given as a full coefficient
/// vector (leading coefficient 1 included).
fn fp_rem(mut v: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let n = f.len() - 1; // degree of f
    debug_assert_eq!(f[n], 1);
    while let Some(d) = fp_deg(&v) {
        if d < n {
            break;
        }
        let c = v[d];
        v[d] = 0;
        for j in 0..n {
            if f[j] != 0 {
                let t = mulmod(c, f[j], p);
                v[d - n + j] = (v[d - n + j] + p - t) % p;
            }
        }
    }
    v.truncate(n.max(1));
    v
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = fp_trim(a.to_vec());
    let mut b = fp_trim(b.to_vec());
    while !b.is_empty() {
        // make b monic, then reduce a by it
        let lc = *b.last().unwrap();
        if lc != 1 {
            let ilc = invmod(lc, p);
            for c in b.iter_mut() {
                *c = mulmod(*c, ilc, p);
            }
        }
        let r = fp_trim(fp_rem(a, &b, p));
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        if lc != 1 {
            let ilc = invmod(lc, p);
            for c in a.iter_mut() {
                *c = mulmod(*c, ilc, p);
            }
        }
    }
    a
}

fn fp_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base.to_vec(), f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(fp_mul(&acc, &b, p), f, p);
        }
        b = fp_rem(fp_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin irreducibility test for a monic polynomial over `F_p`, given as a
/// full coefficient vector with leading coefficient 1.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let n = (f.len() - 1) as u64;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    // chain of x^(p^i) mod f
    let x = vec![0u64, 1];
    let mut u = x.clone();
    let mut chain = Vec::with_capacity(n as usize);
    for _ in 0..n {
        u = fp_powmod(&u, p, f, p);
        chain.push(u.clone());
    }
    if fp_trim(chain[n as usize - 1].clone()) != x {
        return false;
    }
    for ell in distinct_prime_factors(n) {
        let idx = (n / ell) as usize - 1;
        let mut diff = chain[idx].clone();
        // diff = x^(p^(n/ell)) - x
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = fp_gcd(&diff, f, p);
        if fp_deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `m` over
/// `F_p`, comparing coefficient vectors constant term first.  Returns the
/// low coefficients `c_0..c_{m-1}` (leading 1 implied).
fn find_modulus(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    debug_assert!(m >= 2);
    // c_0 = 0 would make the candidate divisible by x, so start at 1.
    for c0 in 1..p {
        // remaining coefficients counted with c_1 most significant
        let mut rest = vec![0u64; m - 1];
        loop {
            let mut f = Vec::with_capacity(m + 1);
            f.push(c0);
            f.extend_from_slice(&rest);
            f.push(1);
            if fp_is_irreducible(&f, p) {
                f.pop();
                return f;
            }
            // odometer increment, last entry fastest
            let mut i = m - 1;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                rest[i] += 1;
                if rest[i] < p {
                    break;
                }
                rest[i] = 0;
                if i == 0 {
                    break;
                }
            }
            if rest.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    unreachable!("an irreducible of degree {m} over F_{p} always exists");
}

// ===== Field ============================================================

#[derive(Debug)]
struct FieldRepr {
    p: u64,
    m: u32,
    /// Low coefficients `c_0..c_{m-1}` of the monic modulus; empty iff `m == 1`.
    modulus: Vec<u64>,
    /// `p^m` when it fits in `u64`.
    cardinality: Option<u64>,
}

/// A finite field `F_{p^m}`, cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

fn field_registry() -> &'static Mutex<HashMap<(u64, u32), Field>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// Constructs `F_{p^m}` under the default cardinality cap.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        Field::with_cap(p, m, DEFAULT_CARDINALITY_CAP)
    }

    /// Constructs `F_{p^m}`, requiring `p^m <= cap`.
    pub fn with_cap(p: u64, m: u32, cap: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::Degenerate("extension degree m must be >= 1".into()));
        }
        let card = (p as u128).checked_pow(m);
        if card.map_or(true, |c| c > cap as u128) {
            return Err(Error::CardinalityCap { p, m, cap });
        }
        Ok(Field::internal(p, m))
    }

    /// Constructs `F_{p^m}` with no cardinality cap.
    ///
    /// Residue fields of singular points can be far larger than anything
    /// enumerable; the exact solver builds them through this path while
    /// the public constructors keep the cap for enumeration-style use.
    /// `p` must already be known prime.
    pub(crate) fn internal(p: u64, m: u32) -> Field {
        debug_assert!(is_prime(p));
        debug_assert!(m >= 1);
        let mut reg = field_registry().lock().unwrap();
        if let Some(f) = reg.get(&(p, m)) {
            return f.clone();
        }
        let modulus = if m == 1 { Vec::new() } else { find_modulus(p, m) };
        let cardinality = (p as u128)
            .checked_pow(m)
            .and_then(|c| u64::try_from(c).ok());
        let f = Field(Arc::new(FieldRepr {
            p,
            m,
            modulus,
            cardinality,
        }));
        reg.insert((p, m), f.clone());
        f
    }

    /// Parses a field spec: either `p^m` or a plain prime power like `9`.
    pub fn from_spec(spec: &str, cap: u64) -> Result<Field> {
        let bad = || Error::Parse(format!("invalid field spec {spec:?}"));
        if let Some((ps, ms)) = spec.split_once('^') {
            let p: u64 = ps.trim().parse().map_err(|_| bad())?;
            let m: u32 = ms.trim().parse().map_err(|_| bad())?;
            return Field::with_cap(p, m, cap);
        }
        let n: u64 = spec.trim().parse().map_err(|_| bad())?;
        if n < 2 {
            return Err(bad());
        }
        // factor n as p^m
        let mut p = n;
        let mut d = 2;
        while d * d <= p {
            if p % d == 0 {
                p = d;
                break;
            }
            d += 1;
        }
        let mut m = 0;
        let mut rest = n;
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::Parse(format!("{n} is not a prime power")));
        }
        Field::with_cap(p, m, cap)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// `p^m` when it fits in `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        self.0.cardinality
    }

    pub fn cardinality_big(&self) -> BigUint {
        BigUint::from(self.0.p).pow(self.0.m)
    }

    /// Low coefficients `c_0..c_{m-1}` of the monic modulus (empty for `m == 1`).
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Canonical spec string: `p` for prime fields, `p^m` otherwise.
    pub fn spec_string(&self) -> String {
        if self.0.m == 1 {
            format!("{}", self.0.p)
        } else {
            format!("{}^{}", self.0.p, self.0.m)
        }
    }

    /// Human-readable modulus, e.g. `t^2 + 2*t + 1`.
    pub fn modulus_string(&self) -> Option<String> {
        if self.0.m == 1 {
            return None;
        }
        let mut terms = vec![format!("t^{}", self.0.m)];
        for i in (0..self.0.modulus.len()).rev() {
            let c = self.0.modulus[i];
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}*t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}*t^{i}"),
            });
        }
        Some(terms.join(" + "))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.0.m as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The scalar `n mod p`, as an element.
    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut coeffs = vec![0; self.0.m as usize];
        coeffs[0] = n % self.0.p;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// The scalar `n mod p` for signed `n`.
    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.0.p as i128;
        let r = (n as i128).rem_euclid(p) as u64;
        self.from_u64(r)
    }

    /// The residue class of `t` (only meaningful for `m >= 2`).
    pub fn t(&self) -> FieldElement {
        let mut coeffs = vec![0; self.0.m as usize];
        if self.0.m >= 2 {
            coeffs[1] = 1;
        } else {
            coeffs[0] = 0; // t has no meaning in a prime field; return 0
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Builds an element from its integer encoding `sum c_i p^i`.
    pub fn element_from_encoding(&self, enc: u64) -> Result<FieldElement> {
        let card = self
            .cardinality()
            .ok_or_else(|| Error::Degenerate("field too large for encodings".into()))?;
        if enc >= card {
            return Err(Error::Parse(format!(
                "encoding {enc} out of range for field of size {card}"
            )));
        }
        Ok(self.element_from_counter(enc))
    }

    /// Like `element_from_encoding` but without the range check; digits of
    /// `n` base `p` fill the low coefficients.
    fn element_from_counter(&self, mut n: u64) -> FieldElement {
        let mut coeffs = vec![0; self.0.m as usize];
        let mut i = 0;
        while n > 0 && i < coeffs.len() {
            coeffs[i] = n % self.0.p;
            n /= self.0.p;
            i += 1;
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Builds an element directly from a coefficient vector over `F_p`
    /// (constant term first; shorter vectors are zero-padded).
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.m as usize {
            return Err(Error::Parse(format!(
                "coefficient vector of length {} in a degree-{} extension",
                coeffs.len(),
                self.0.m
            )));
        }
        let mut v = vec![0; self.0.m as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            v[i] = c % self.0.p;
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs: v,
        })
    }

    /// All field elements in encoding order (zero first, prime subfield
    /// as the initial `p` entries).
    ///
    /// Panics if the cardinality does not fit in `u64`; public
    /// constructors cap the cardinality long before that.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let card = self
            .cardinality()
            .expect("enumeration requested for an oversized field");
        (0..card).map(move |n| self.element_from_counter(n))
    }

    /// Uniformly random element, for randomized algorithms.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let coeffs = (0..self.0.m).map(|_| rng.gen_range(0..self.0.p)).collect();
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Degree of `self` over `sub` when `sub` embeds, else `None`.
    pub fn degree_over(&self, sub: &Field) -> Option<u32> {
        if self.0.p == sub.0.p && self.0.m % sub.0.m == 0 {
            Some(self.0.m / sub.0.m)
        } else {
            None
        }
    }

    fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }

    /// Full modulus coefficient vector, degree `m` with leading 1
    /// (single `[0, 1]`-style vector is never produced: `m == 1` gives `[?]`... )
    fn modulus_full(&self) -> Vec<u64> {
        let mut f = self.0.modulus.clone();
        f.push(1);
        f
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.m.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(F_{})", self.spec_string())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.spec_string())
    }
}

// ===== FieldElement =====================================================

/// An element of a [`Field`], stored as its coefficient vector over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Integer encoding `sum c_i p^i` (fits easily for capped fields).
    pub fn encoding(&self) -> u64 {
        let p = self.field.p() as u128;
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * p + c as u128;
        }
        u64::try_from(acc).expect("encoding requested for an oversized field")
    }

    /// Returns `FieldMismatch` unless both elements live in the same field.
    pub fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                p1: self.field.p(),
                m1: self.field.degree(),
                p2: other.field.p(),
                m2: other.field.degree(),
            })
        }
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(self * rhs)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p();
        if self.field.degree() == 1 {
            let mut out = self.clone();
            out.coeffs[0] = invmod(self.coeffs[0], p);
            return Ok(out);
        }
        // extended Euclid in F_p[x] against the modulus
        let f = self.field.modulus_full();
        let mut r0 = f;
        let mut r1 = fp_trim(self.coeffs.clone());
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while fp_deg(&r1).is_some() {
            // divide r0 by r1
            let d1 = fp_deg(&r1).unwrap();
            let lc1 = invmod(r1[d1], p);
            let mut q = vec![0u64; fp_deg(&r0).map_or(0, |d| d.saturating_sub(d1)) + 1];
            let mut rem = r0.clone();
            while let Some(d0) = fp_deg(&rem) {
                if d0 < d1 {
                    break;
                }
                let c = mulmod(rem[d0], lc1, p);
                q[d0 - d1] = c;
                for j in 0..=d1 {
                    if r1[j] != 0 {
                        let t = mulmod(c, r1[j], p);
                        rem[d0 - d1 + j] = (rem[d0 - d1 + j] + p - t) % p;
                    }
                }
            }
            let rem = fp_trim(rem);
            // s_{i+1} = s_{i-1} - q * s_i
            let qs = fp_mul(&q, &s1, p);
            let mut s2 = s0.clone();
            if s2.len() < qs.len() {
                s2.resize(qs.len(), 0);
            }
            for (j, &c) in qs.iter().enumerate() {
                s2[j] = (s2[j] + p - c) % p;
            }
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = fp_trim(s2);
        }
        // r0 is now a nonzero constant gcd (modulus irreducible)
        let d0 = fp_deg(&r0).expect("gcd with irreducible modulus is a unit");
        debug_assert_eq!(d0, 0);
        let scale = invmod(r0[0], p);
        let mut coeffs = vec![0u64; self.field.degree() as usize];
        for (j, &c) in s0.iter().enumerate() {
            coeffs[j] = mulmod(c, scale, p);
        }
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u128) -> FieldElement {
        let mut acc = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Multiplication by an `F_p` scalar.
    pub fn scalar_mul(&self, c: u64) -> FieldElement {
        let p = self.field.p();
        let c = c % p;
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x = mulmod(*x, c, p);
        }
        out
    }

    /// The Frobenius power `a^(q^j)` relative to a base field of
    /// cardinality `q`, which must be a power of the characteristic.
    pub fn frobenius(&self, q: u64, j: u32) -> FieldElement {
        let p = self.field.p();
        let mut qq = q;
        let mut i = 0u32;
        while qq > 1 {
            assert!(qq % p == 0, "frobenius base {q} is not a power of {p}");
            qq /= p;
            i += 1;
        }
        assert!(i >= 1, "frobenius base must be at least p");
        let mut out = self.clone();
        for _ in 0..i * j {
            out = out.pow(p as u128);
        }
        out
    }

    /// Order of the element under repeated application of `x -> x^q`,
    /// i.e. the degree of `F_q(a)` over `F_q`.
    pub fn degree_over_base(&self, q: u64) -> u32 {
        let mut x = self.frobenius(q, 1);
        let mut d = 1;
        while &x != self {
            x = x.frobenius(q, 1);
            d += 1;
        }
        d
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Elements are ordered by integer encoding, i.e. coefficient vectors
/// compared highest degree first.  Cross-field comparisons order by
/// `(p, m)` so that mixed collections still sort deterministically.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let k1 = (self.field.p(), self.field.degree());
        let k2 = (other.field.p(), other.field.degree());
        k1.cmp(&k2)
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // trim trailing zero coefficients: the subfield F_p prints bare
        let used = self
            .coeffs
            .iter()
            .rposition(|&c| c != 0)
            .map_or(1, |i| i + 1);
        let strs: Vec<String> = self.coeffs[..used].iter().map(|c| c.to_string()).collect();
        write!(f, "{}", strs.join(":"))
    }
}

impl FieldElement {
    /// Parses the `Display` form back into an element of `field`.
    pub fn parse(field: &Field, s: &str) -> Result<FieldElement> {
        let parts: std::result::Result<Vec<u64>, _> =
            s.split(':').map(|t| t.trim().parse::<u64>()).collect();
        let parts = parts.map_err(|_| Error::Parse(format!("bad element {s:?}")))?;
        // Display trims trailing zero coefficients, so accept short
        // vectors and pad; only more than m coefficients is malformed.
        if parts.is_empty() || parts.len() > field.degree() as usize {
            return Err(Error::Parse(format!(
                "element {s:?} has {} coefficients, field needs at most {}",
                parts.len(),
                field.degree()
            )));
        }
        if parts.iter().any(|&c| c >= field.p()) {
            return Err(Error::Parse(format!("bad element {s:?}")));
        }
        field.element_from_coeffs(&parts)
    }
}

macro_rules! bin_op {
    ($trait:ident, $fn:ident, $body:expr) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $fn(self, rhs: &FieldElement) -> FieldElement {
                assert!(
                    self.field.same(&rhs.field),
                    "field mismatch: {} vs {}",
                    self.field,
                    rhs.field
                );
                let f: fn(&FieldElement, &FieldElement) -> FieldElement = $body;
                f(self, rhs)
            }
        }
    };
}

bin_op!(Add, add, |a, b| {
    let p = a.field.p();
    let mut out = a.clone();
    for (x, y) in out.coeffs.iter_mut().zip(&b.coeffs) {
        *x = (*x + *y) % p;
    }
    out
});

bin_op!(Sub, sub, |a, b| {
    let p = a.field.p();
    let mut out = a.clone();
    for (x, y) in out.coeffs.iter_mut().zip(&b.coeffs) {
        *x = (*x + p - *y) % p;
    }
    out
});

bin_op!(Mul, mul, |a, b| {
    let p = a.field.p();
    if a.field.degree() == 1 {
        let mut out = a.clone();
        out.coeffs[0] = mulmod(a.coeffs[0], b.coeffs[0], p);
        return out;
    }
    let prod = fp_mul(&a.coeffs, &b.coeffs, p);
    let red = fp_rem(prod, &a.field.modulus_full(), p);
    let mut coeffs = vec![0u64; a.field.degree() as usize];
    let n = red.len().min(coeffs.len());
    coeffs[..n].copy_from_slice(&red[..n]);
    FieldElement {
        field: a.field.clone(),
        coeffs,
    }
});

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p();
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x = (p - *x) % p;
        }
        out
    }
}

// ===== embeddings =======================================================

// Minimal polynomial arithmetic with FieldElement coefficients, just
// enough to locate a root of the subfield modulus.  The full univariate
// machinery lives in `poly`, but `fields` stays self-contained.

fn ep_deg(v: &[FieldElement]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn ep_trim(mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    let n = ep_deg(&v).map_or(0, |d| d + 1);
    v.truncate(n);
    v
}

fn ep_mul(a: &[FieldElement], b: &[FieldElement], field: &Field) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = &out[i + j] + &(ai * bj);
            }
        }
    }
    out
}

/// Remainder modulo a monic polynomial (full coefficient vector).
fn ep_rem(mut v: Vec<FieldElement>, f: &[FieldElement]) -> Vec<FieldElement> {
    let n = f.len() - 1;
    while let Some(d) = ep_deg(&v) {
        if d < n {
            break;
        }
        let c = v[d].clone();
        let fld = c.field().clone();
        v[d] = fld.zero();
        for j in 0..n {
            if !f[j].is_zero() {
                let t = &c * &f[j];
                v[d - n + j] = &v[d - n + j] - &t;
            }
        }
    }
    v.truncate(n.max(1));
    v
}

fn ep_monic(mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    if let Some(d) = ep_deg(&v) {
        if !v[d].is_one() {
            let ilc = v[d].inv().unwrap();
            for c in v.iter_mut() {
                *c = &*c * &ilc;
            }
        }
    }
    v
}

fn ep_gcd(a: Vec<FieldElement>, b: Vec<FieldElement>) -> Vec<FieldElement> {
    let mut a = ep_trim(a);
    let mut b = ep_trim(b);
    while !b.is_empty() {
        let bm = ep_monic(b);
        let r = ep_trim(ep_rem(a, &bm));
        a = bm;
        b = r;
    }
    ep_monic(a)
}

fn ep_powmod_big(
    base: &[FieldElement],
    e: &BigUint,
    f: &[FieldElement],
    field: &Field,
) -> Vec<FieldElement> {
    let mut acc = vec![field.one()];
    let mut b = ep_rem(base.to_vec(), f);
    let mut e = e.clone();
    while e > BigUint::ZERO {
        if e.bit(0) {
            acc = ep_rem(ep_mul(&acc, &b, field), f);
        }
        b = ep_rem(ep_mul(&b, &b, field), f);
        e >>= 1;
    }
    acc
}

/// The canonical embedding of one field into another.
///
/// `F_{p^a}` embeds in `F_{p^b}` exactly when `a | b`; the generator of
/// the subfield maps to the smallest root (in element order) of the
/// subfield modulus inside the target.  The search is deterministic, so
/// repeated constructions always produce the same map.
pub struct Embedding {
    sub: Field,
    sup: Field,
    /// Powers `rho^0..rho^{a-1}` of the chosen root in the target field.
    root_powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(sub: &Field, sup: &Field) -> Result<Embedding> {
        let no = || Error::NoEmbedding {
            from_p: sub.p(),
            from_m: sub.degree(),
            to_p: sup.p(),
            to_m: sup.degree(),
        };
        if sub.p() != sup.p() || sup.degree() % sub.degree() != 0 {
            return Err(no());
        }
        if sub.degree() == 1 {
            return Ok(Embedding {
                sub: sub.clone(),
                sup: sup.clone(),
                root_powers: vec![sup.one()],
            });
        }
        if sub.same(sup) {
            let a = sub.degree() as usize;
            let mut root_powers = Vec::with_capacity(a);
            let mut pw = sup.one();
            for _ in 0..a {
                root_powers.push(pw.clone());
                pw = &pw * &sup.t();
            }
            return Ok(Embedding {
                sub: sub.clone(),
                sup: sup.clone(),
                root_powers,
            });
        }
        // modulus of the subfield, coefficients mapped to scalars of sup
        let a = sub.degree() as usize;
        let mut f: Vec<FieldElement> = sub
            .modulus_coeffs()
            .iter()
            .map(|&c| sup.from_u64(c))
            .collect();
        f.push(sup.one());
        let rho0 = first_root(&f, sup);
        // all roots are Frobenius conjugates rho0^(p^i); pick the smallest
        let mut best = rho0.clone();
        let mut r = rho0;
        for _ in 1..a {
            r = r.pow(sup.p() as u128);
            if r < best {
                best = r.clone();
            }
        }
        let mut root_powers = Vec::with_capacity(a);
        let mut pw = sup.one();
        for _ in 0..a {
            root_powers.push(pw.clone());
            pw = &pw * &best;
        }
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            root_powers,
        })
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn sup(&self) -> &Field {
        &self.sup
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        assert!(
            a.field().same(&self.sub),
            "embedding applied to an element of {}",
            a.field()
        );
        let mut acc = self.sup.zero();
        for (i, &c) in a.coeffs().iter().enumerate() {
            if c != 0 {
                acc = &acc + &self.root_powers[i].scalar_mul(c);
            }
        }
        acc
    }
}

/// Finds one root of a monic polynomial that splits completely over
/// `field`, by deterministic splitting.
fn first_root(f: &[FieldElement], field: &Field) -> FieldElement {
    let mut g = ep_monic(ep_trim(f.to_vec()));
    let p = field.p();
    let n = field.degree();
    let mut delta_counter = 0u64;
    while ep_deg(&g) != Some(1) {
        delta_counter += 1;
        assert!(delta_counter < 10_000, "root splitting failed to converge");
        let delta = field.element_from_counter(delta_counter);
        let h = if p == 2 {
            // trace splitter: sum of (delta*x)^(2^i) over i < n
            let dx = vec![field.zero(), delta];
            let mut u = ep_rem(dx, &g);
            let mut acc = u.clone();
            for _ in 1..n {
                u = ep_rem(ep_mul(&u, &u, field), &g);
                if acc.len() < u.len() {
                    acc.resize(u.len(), field.zero());
                }
                for (x, y) in acc.iter_mut().zip(&u) {
                    *x = &*x + y;
                }
            }
            ep_gcd(acc, g.clone())
        } else {
            // quadratic-character splitter: (x + delta)^((Q-1)/2) - 1
            let e = (field.cardinality_big() - 1u32) >> 1;
            let base = vec![delta, field.one()];
            let mut v = ep_powmod_big(&base, &e, &g, field);
            if v.is_empty() {
                v.push(field.zero());
            }
            v[0] = &v[0] - &field.one();
            ep_gcd(v, g.clone())
        };
        if let Some(dh) = ep_deg(&h) {
            let dg = ep_deg(&g).unwrap();
            if dh > 0 && dh < dg {
                // continue with the smaller half that still contains roots
                let other = ep_poly_div_exact(&g, &h, field);
                g = if ep_deg(&other).unwrap() < dh { other } else { h };
            }
        }
    }
    let c0 = g[0].clone();
    -&c0
}

/// Exact division of polynomials with element coefficients (panics if not exact).
fn ep_poly_div_exact(a: &[FieldElement], b: &[FieldElement], field: &Field) -> Vec<FieldElement> {
    let da = ep_deg(a).expect("division of zero");
    let db = ep_deg(b).expect("division by zero");
    assert!(da >= db);
    let mut rem = a.to_vec();
    let mut q = vec![field.zero(); da - db + 1];
    let ilc = b[db].inv().unwrap();
    for i in (0..=da - db).rev() {
        let c = &rem[db + i] * &ilc;
        if !c.is_zero() {
            q[i] = c.clone();
            for j in 0..=db {
                let t = &c * &b[j];
                rem[i + j] = &rem[i + j] - &t;
            }
        }
    }
    debug_assert!(ep_deg(&rem).is_none(), "inexact polynomial division");
    q
}
