//! Exact arithmetic in the tower GF(p) ⊆ GF(q) ⊆ GF(q^n).
//!
//! A [`FieldCtx`] fixes the whole tower: the base field GF(q) = GF(p^e) is cut
//! out of GF(p^{en}) by the Conway polynomial machinery, so representations
//! are canonical and runs are reproducible. Elements are stored as packed
//! base-p digit strings relative to the Conway power basis; log/antilog
//! tables are built automatically for orders up to 2^16, with polynomial
//! arithmetic as the fallback above that.

use crate::conway::{self, Poly};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// Orders up to this bound get log/antilog tables.
pub const TABLE_THRESHOLD: u64 = 1 << 16;
/// Hard cap on the field order q^n.
pub const MAX_ORDER: u64 = 1 << 20;

/// An element of GF(q^n), relative to some [`FieldCtx`].
///
/// The wrapped integer packs the GF(p)-coordinate vector of the element with
/// respect to the power basis of the Conway root, little-endian base p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub(crate) u32);

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// The automorphism x ↦ x^{q^k} of GF(q^n), stored as the exponent k mod n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Aut(usize);

impl Aut {
    pub fn new(k: i64, n: usize) -> Aut {
        Aut(k.rem_euclid(n as i64) as usize)
    }

    pub fn index(&self) -> usize {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0 == 0
    }

    /// Composition: x^{q^a} then x^{q^b} is x^{q^{a+b}}.
    pub fn compose(&self, other: Aut, n: usize) -> Aut {
        Aut((self.0 + other.0) % n)
    }

    pub fn inverse(&self, n: usize) -> Aut {
        Aut((n - self.0 % n) % n)
    }

    /// Quotient α/β on exponents: a - b mod n.
    pub fn quotient(&self, other: Aut, n: usize) -> Aut {
        Aut::new(self.0 as i64 - other.0 as i64, n)
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The field tower GF(p) ⊆ GF(q = p^e) ⊆ GF(q^n), immutable after construction.
pub struct FieldCtx {
    p: u64,
    e: usize,
    n: usize,
    q: u64,
    qn: u64,
    m: usize,
    conway_big: Poly,
    irr_base: Poly,
    irr_ext: Vec<Elem>,
    tables: Option<Tables>,
    zpows: Vec<Elem>,
    wpows: Vec<Elem>,
    /// m×m GF(p) matrix taking flat Conway coordinates to tower coordinates.
    flat_to_tower: Vec<u64>,
    /// m×m inverse of the above.
    tower_to_flat: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(p={}, e={}, n={})", self.p, self.e, self.n)
    }
}

/// Factor a prime power q = p^e; errors if q is not a prime power.
pub fn parse_prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut e = 0usize;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if rest != 1 {
                return Err(Error::NotPrimePower(q));
            }
            return Ok((p, e));
        }
        p += 1;
    }
    Ok((q, 1))
}

impl FieldCtx {
    /// Build the tower for GF(q^n) with q = p^e, p prime.
    pub fn new(p: u64, e: usize, n: usize) -> Result<FieldCtx> {
        if !conway::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || n == 0 {
            return Err(Error::InvalidArgument("e and n must be positive".into()));
        }
        let m = e * n;
        let mut qn: u64 = 1;
        for _ in 0..m {
            qn = qn.checked_mul(p).ok_or(Error::FieldTooLarge {
                order: u64::MAX,
                max: MAX_ORDER,
            })?;
            if qn > MAX_ORDER {
                return Err(Error::FieldTooLarge {
                    order: qn,
                    max: MAX_ORDER,
                });
            }
        }
        let q = p.pow(e as u32);

        let mut memo = HashMap::new();
        let conway_big = conway::conway(p, m, &mut memo);
        let irr_base = conway::conway(p, e, &mut memo);

        let mut ctx = FieldCtx {
            p,
            e,
            n,
            q,
            qn,
            m,
            conway_big,
            irr_base,
            irr_ext: Vec::new(),
            tables: None,
            zpows: Vec::new(),
            wpows: Vec::new(),
            flat_to_tower: Vec::new(),
            tower_to_flat: Vec::new(),
        };

        if qn <= TABLE_THRESHOLD {
            ctx.build_tables();
        }

        // z is the Conway root, primitive in GF(p^m); its first n powers form
        // the GF(q)-power basis of the extension.
        let z = ctx.generator();
        ctx.zpows = (0..n).map(|i| ctx.pow(z, i as u64)).collect();
        let w = ctx.pow(z, (qn - 1) / (q - 1));
        ctx.wpows = (0..e).map(|j| ctx.pow(w, j as u64)).collect();
        debug_assert!(ctx.scalar_poly_eval(&ctx.irr_base.clone(), w).is_zero());

        ctx.build_basis_matrices()?;
        ctx.irr_ext = ctx.min_poly_over_q(z);
        Ok(ctx)
    }

    /// Context from q = p^e directly.
    pub fn from_q(q: u64, n: usize) -> Result<FieldCtx> {
        let (p, e) = parse_prime_power(q)?;
        FieldCtx::new(p, e, n)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Field order q^n.
    pub fn order(&self) -> u64 {
        self.qn
    }
    /// Degree over the prime field, e·n.
    pub fn prime_degree(&self) -> usize {
        self.m
    }
    /// The irreducible of GF(q) over GF(p) (Conway polynomial, little-endian).
    pub fn irr_base(&self) -> &[u64] {
        &self.irr_base
    }
    /// The minimal polynomial of the extension generator over GF(q).
    pub fn irr_ext(&self) -> &[Elem] {
        &self.irr_ext
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    /// The Conway root z: a fixed generator of the multiplicative group.
    pub fn generator(&self) -> Elem {
        Elem(self.p as u32)
    }

    /// The power basis 1, z, …, z^{n-1} of GF(q^n) over GF(q).
    pub fn power_basis(&self) -> &[Elem] {
        &self.zpows
    }

    /// Embed an integer 0 ≤ v < p as the prime-field element v·1.
    pub fn from_prime_int(&self, v: u64) -> Elem {
        Elem((v % self.p) as u32)
    }

    /// All field elements in a fixed order.
    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.qn as u32).map(Elem)
    }

    pub fn nonzero_elems(&self) -> impl Iterator<Item = Elem> {
        (1..self.qn as u32).map(Elem)
    }

    /// The q elements of the base field GF(q), in a fixed order.
    pub fn subfield_elems(&self) -> Vec<Elem> {
        (0..self.q)
            .map(|v| {
                let mut acc = Elem(0);
                let mut rest = v;
                for j in 0..self.e {
                    let d = rest % self.p;
                    rest /= self.p;
                    if d != 0 {
                        acc = self.add(acc, self.scalar_mul(d, self.wpows[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn in_subfield(&self, x: Elem) -> bool {
        self.frobenius(x, 1) == x
    }

    fn digits(&self, x: Elem) -> Vec<u64> {
        let mut v = x.0 as u64;
        let mut out = vec![0u64; self.m];
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u64]) -> Elem {
        let mut v: u64 = 0;
        for &d in digits.iter().rev() {
            v = v * self.p + (d % self.p);
        }
        Elem(v as u32)
    }

    fn build_tables(&mut self) {
        let qn = self.qn as usize;
        let mut exp = vec![0u32; qn - 1];
        let mut log = vec![u32::MAX; qn];
        // iterate multiplication by x modulo the Conway polynomial
        let mut cur = vec![0u64; self.m];
        cur[0] = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            let packed = pack_digits(self.p, &cur);
            *slot = packed;
            log[packed as usize] = i as u32;
            cur = mul_by_x_mod(self.p, &cur, &self.conway_big);
        }
        self.tables = Some(Tables { exp, log });
    }

    fn build_basis_matrices(&mut self) -> Result<()> {
        let m = self.m;
        // columns are the flat digits of z^i w^j, flattened index i*e + j
        let mut cols = Vec::with_capacity(m);
        for i in 0..self.n {
            for j in 0..self.e {
                let b = self.mul(self.zpows[i], self.wpows[j]);
                cols.push(self.digits(b));
            }
        }
        let mut t = vec![0u64; m * m];
        for (c, col) in cols.iter().enumerate() {
            for r in 0..m {
                t[r * m + c] = col[r];
            }
        }
        let inv =
            invert_prime_matrix(self.p, &t, m).expect("tower basis must be invertible over GF(p)");
        self.tower_to_flat = t;
        self.flat_to_tower = inv;
        Ok(())
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.p == 2 {
            return Elem(x.0 ^ y.0);
        }
        let (mut xv, mut yv) = (x.0 as u64, y.0 as u64);
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.m {
            let s = (xv % self.p + yv % self.p) % self.p;
            out += s * mult;
            mult *= self.p;
            xv /= self.p;
            yv /= self.p;
        }
        Elem(out as u32)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        if self.p == 2 {
            return x;
        }
        let mut xv = x.0 as u64;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.m {
            let d = xv % self.p;
            out += ((self.p - d) % self.p) * mult;
            mult *= self.p;
            xv /= self.p;
        }
        Elem(out as u32)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// Multiply by a prime-field scalar 0 ≤ s < p.
    pub fn scalar_mul(&self, s: u64, x: Elem) -> Elem {
        let mut acc = Elem(0);
        for _ in 0..(s % self.p) {
            acc = self.add(acc, x);
        }
        acc
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem(0);
        }
        if let Some(t) = &self.tables {
            let lx = t.log[x.0 as usize] as u64;
            let ly = t.log[y.0 as usize] as u64;
            return Elem(t.exp[((lx + ly) % (self.qn - 1)) as usize]);
        }
        let prod = poly_mul_mod(self.p, &self.digits(x), &self.digits(y), &self.conway_big);
        self.pack(&prod)
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let lx = t.log[x.0 as usize] as u64;
            let li = (self.qn - 1 - lx) % (self.qn - 1);
            return Ok(Elem(t.exp[li as usize]));
        }
        Ok(self.pow(x, self.qn - 2))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Elem, mut k: u64) -> Elem {
        if x.0 == 0 {
            return if k == 0 { Elem(1) } else { Elem(0) };
        }
        if let Some(t) = &self.tables {
            let lx = t.log[x.0 as usize] as u64;
            let le = ((lx as u128 * k as u128) % (self.qn - 1) as u128) as u64;
            return Elem(t.exp[le as usize]);
        }
        let mut acc = Elem(1);
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// x^{q^k}; k is reduced modulo n.
    pub fn frobenius(&self, x: Elem, k: usize) -> Elem {
        let k = k % self.n;
        if k == 0 || x.0 == 0 {
            return x;
        }
        self.pow(x, self.q.pow(k as u32))
    }

    pub fn frob_aut(&self, x: Elem, a: Aut) -> Elem {
        self.frobenius(x, a.index())
    }

    /// x^{p^k}: the full automorphism group of GF(q^n), k mod e·n.
    pub fn frobenius_p(&self, x: Elem, k: usize) -> Elem {
        let k = k % self.m;
        if k == 0 || x.0 == 0 {
            return x;
        }
        self.pow(x, self.p.pow(k as u32))
    }

    /// Trace onto GF(q): x + x^q + … + x^{q^{n-1}}.
    pub fn trace(&self, x: Elem) -> Elem {
        let mut acc = Elem(0);
        let mut t = x;
        for _ in 0..self.n {
            acc = self.add(acc, t);
            t = self.frobenius(t, 1);
        }
        acc
    }

    /// Relative norm onto GF(q^{n/t}), for t dividing n.
    pub fn rel_norm(&self, x: Elem, t: usize) -> Result<Elem> {
        if t == 0 || self.n % t != 0 {
            return Err(Error::InvalidArgument(format!(
                "t = {t} does not divide n = {}",
                self.n
            )));
        }
        let s = self.n / t;
        let sub_order = self.q.pow(s as u32);
        let exponent = (self.qn - 1) / (sub_order - 1);
        Ok(self.pow(x, exponent))
    }

    /// Square root, if one exists. In characteristic 2 squaring is a
    /// bijection, so this always succeeds there.
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        if x.0 == 0 {
            return Some(Elem(0));
        }
        if self.p == 2 {
            return Some(self.pow(x, self.qn / 2));
        }
        if let Some(t) = &self.tables {
            let lx = t.log[x.0 as usize] as u64;
            if lx % 2 != 0 {
                return None;
            }
            return Some(Elem(t.exp[(lx / 2) as usize]));
        }
        // odd order without tables: Euler criterion + Tonelli-Shanks
        let half = (self.qn - 1) / 2;
        if self.pow(x, half) != Elem(1) {
            return None;
        }
        Some(self.tonelli_shanks(x))
    }

    fn tonelli_shanks(&self, x: Elem) -> Elem {
        let mut s = 0u32;
        let mut d = self.qn - 1;
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        // deterministic non-residue search over the fixed element order
        let half = (self.qn - 1) / 2;
        let nr = self
            .nonzero_elems()
            .find(|&c| self.pow(c, half) != Elem(1))
            .expect("odd-order field has a non-residue");
        let mut c = self.pow(nr, d);
        let mut t = self.pow(x, d);
        let mut r = self.pow(x, (d + 1) / 2);
        let mut m = s;
        while t != Elem(1) {
            let mut i = 0u32;
            let mut tt = t;
            while tt != Elem(1) {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            r = self.mul(r, b);
            c = self.mul(b, b);
            t = self.mul(t, c);
            m = i;
        }
        r
    }

    /// Write d as a sum of two squares s² + t² (t possibly zero).
    pub fn two_squares(&self, d: Elem) -> (Elem, Elem) {
        if let Some(s) = self.sqrt(d) {
            return (s, Elem(0));
        }
        for t in self.nonzero_elems() {
            let rest = self.sub(d, self.mul(t, t));
            if let Some(s) = self.sqrt(rest) {
                return (s, t);
            }
        }
        unreachable!("every finite-field element is a sum of two squares")
    }

    /// GF(q)-coordinates of x with respect to the power basis of the
    /// extension generator; entries lie in the base field.
    pub fn coords_q(&self, x: Elem) -> Vec<Elem> {
        let flat = self.digits(x);
        let m = self.m;
        let mut tower = vec![0u64; m];
        for r in 0..m {
            let mut acc = 0u64;
            for c in 0..m {
                acc += self.flat_to_tower[r * m + c] * flat[c];
            }
            tower[r] = acc % self.p;
        }
        (0..self.n)
            .map(|i| {
                let mut coord = Elem(0);
                for j in 0..self.e {
                    let d = tower[i * self.e + j];
                    if d != 0 {
                        coord = self.add(coord, self.scalar_mul(d, self.wpows[j]));
                    }
                }
                coord
            })
            .collect()
    }

    /// Inverse of [`coords_q`]: x = Σ c_i z^i.
    pub fn from_coords_q(&self, coords: &[Elem]) -> Elem {
        let mut acc = Elem(0);
        for (i, &c) in coords.iter().enumerate() {
            acc = self.add(acc, self.mul(c, self.zpows[i]));
        }
        acc
    }

    /// The I/O encoding: base-p packing of the flattened tower coordinates.
    pub fn encode(&self, x: Elem) -> u64 {
        let flat = self.digits(x);
        let m = self.m;
        let mut out = 0u64;
        let mut mult = 1u64;
        for r in 0..m {
            let mut acc = 0u64;
            for c in 0..m {
                acc += self.flat_to_tower[r * m + c] * flat[c];
            }
            out += (acc % self.p) * mult;
            mult *= self.p;
        }
        out
    }

    pub fn decode(&self, v: u64) -> Result<Elem> {
        if v >= self.qn {
            return Err(Error::InvalidArgument(format!(
                "element encoding {v} out of range for field of order {}",
                self.qn
            )));
        }
        let m = self.m;
        let mut tower = vec![0u64; m];
        let mut rest = v;
        for d in tower.iter_mut() {
            *d = rest % self.p;
            rest /= self.p;
        }
        let mut flat = vec![0u64; m];
        for r in 0..m {
            let mut acc = 0u64;
            for c in 0..m {
                acc += self.tower_to_flat[r * m + c] * tower[c];
            }
            flat[r] = acc % self.p;
        }
        Ok(self.pack(&flat))
    }

    /// Discrete log with respect to the fixed generator, table mode only.
    pub fn log_of(&self, x: Elem) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[x.0 as usize] as u64)
    }

    /// Evaluate a GF(p)-coefficient polynomial at a field element.
    fn scalar_poly_eval(&self, f: &Poly, x: Elem) -> Elem {
        let mut acc = Elem(0);
        for &c in f.iter().rev() {
            acc = self.mul(acc, x);
            acc = self.add(acc, self.from_prime_int(c));
        }
        acc
    }

    /// Minimal polynomial of x over GF(q): Π (X - x^{q^i}) over the distinct
    /// conjugates.
    fn min_poly_over_q(&self, x: Elem) -> Vec<Elem> {
        let mut conjugates = vec![x];
        let mut t = self.frobenius(x, 1);
        while t != x {
            conjugates.push(t);
            t = self.frobenius(t, 1);
        }
        let mut coeffs = vec![Elem(1)];
        for c in conjugates {
            // multiply by (X - c)
            let mut next = vec![Elem(0); coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], a);
                next[i] = self.sub(next[i], self.mul(a, c));
            }
            coeffs = next;
        }
        debug_assert!(coeffs.iter().all(|&c| self.in_subfield(c)));
        coeffs
    }
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

fn pack_digits(p: u64, digits: &[u64]) -> u32 {
    let mut v: u64 = 0;
    for &d in digits.iter().rev() {
        v = v * p + d;
    }
    v as u32
}

fn mul_by_x_mod(p: u64, a: &[u64], f: &Poly) -> Vec<u64> {
    let m = a.len();
    let mut out = vec![0u64; m];
    for i in (1..m).rev() {
        out[i] = a[i - 1];
    }
    let carry = a[m - 1];
    if carry != 0 {
        for i in 0..m {
            // f is monic of degree m: x^m = -Σ f_i x^i
            let sub = (carry * f[i]) % p;
            out[i] = (out[i] + p * p - sub) % p;
        }
    }
    out
}

fn poly_mul_mod(p: u64, a: &[u64], b: &[u64], f: &Poly) -> Vec<u64> {
    let m = a.len();
    let mut prod = vec![0u64; 2 * m];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce from the top using x^m = -Σ f_i x^i
    for i in (m..2 * m).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..m {
            let sub = (c * f[j]) % p;
            prod[i - m + j] = (prod[i - m + j] + p * p - sub) % p;
        }
    }
    prod.truncate(m);
    prod
}

/// Invert an m×m matrix over GF(p) (row-major u64 entries).
fn invert_prime_matrix(p: u64, a: &[u64], m: usize) -> Option<Vec<u64>> {
    let mut aug = vec![0u64; m * 2 * m];
    for r in 0..m {
        for c in 0..m {
            aug[r * 2 * m + c] = a[r * m + c];
        }
        aug[r * 2 * m + m + r] = 1;
    }
    let w = 2 * m;
    let mut row = 0;
    for col in 0..m {
        let pivot = (row..m).find(|&r| aug[r * w + col] != 0)?;
        if pivot != row {
            for c in 0..w {
                aug.swap(row * w + c, pivot * w + c);
            }
        }
        let inv = prime_inv(aug[row * w + col], p);
        for c in 0..w {
            aug[row * w + c] = (aug[row * w + c] * inv) % p;
        }
        for r in 0..m {
            if r != row && aug[r * w + col] != 0 {
                let factor = aug[r * w + col];
                for c in 0..w {
                    let sub = (factor * aug[row * w + c]) % p;
                    aug[r * w + c] = (aug[r * w + c] + p * p - sub) % p;
                }
            }
        }
        row += 1;
    }
    let mut out = vec![0u64; m * m];
    for r in 0..m {
        for c in 0..m {
            out[r * m + c] = aug[r * w + m + c];
        }
    }
    Some(out)
}

fn prime_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result * base) % p;
        }
        base = (base * base) % p;
        e >>= 1;
    }
    result
}
